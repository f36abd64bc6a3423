//! Colored finite metric spaces.

mod generate;
pub mod io;

pub use generate::{generate_instance, generate_with_sizes, GenMode};

use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense symmetric distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T = f64> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare { row, len: values.len(), n });
            }
            data.extend(values);
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_entry(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &v| acc.max_of(v))
    }

    /// `max_{q in members} d(p, q)`, zero for an empty set.
    pub fn eccentricity(&self, p: usize, members: &[usize]) -> T {
        members.iter().fold(T::zero(), |acc, &q| acc.max_of(self.get(p, q)))
    }

    /// Best center among `candidates` for `members` and its radius.
    /// Ties go to the earliest candidate.
    pub fn best_center(
        &self,
        members: &[usize],
        candidates: impl IntoIterator<Item = usize>,
    ) -> Option<(usize, T)> {
        let mut best: Option<(usize, T)> = None;
        for c in candidates {
            let r = self.eccentricity(c, members);
            match best {
                Some((_, br)) if br <= r => {}
                _ => best = Some((c, r)),
            }
        }
        best
    }

    /// Relaxes the matrix to its shortest-path closure.
    ///
    /// Repeats Floyd–Warshall sweeps until nothing changes, so the result
    /// satisfies the triangle inequality under the scalar's own `+`, rounding
    /// included.
    pub fn shortest_path_closure(&mut self) {
        let n = self.n;
        loop {
            let mut changed = false;
            for k in 0..n {
                for i in 0..n {
                    let dik = self.get(i, k);
                    for j in 0..n {
                        let via = dik + self.get(k, j);
                        if via < self.get(i, j) {
                            self.set(i, j, via);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(T) -> U) -> DistanceMatrix<U> {
        DistanceMatrix { n: self.n, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    /// Multiplies every entry by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        self.map(|v| v * factor)
    }
}

impl<T: Scalar> Index<(usize, usize)> for DistanceMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

/// A colored finite metric space: points `0..n`, 1-based group labels and
/// the pairwise distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance<T = f64> {
    groups: Vec<usize>,
    ell: usize,
    dist: DistanceMatrix<T>,
    coords: Option<Vec<[f64; 2]>>,
    ids: Option<Vec<String>>,
}

impl<T: Scalar> Instance<T> {
    /// Builds an instance; the group count is the largest label and every
    /// label in `1..=ell` must be used.
    pub fn new(groups: Vec<usize>, dist: DistanceMatrix<T>) -> Result<Self> {
        if groups.len() != dist.len() {
            return Err(Error::LengthMismatch { groups: groups.len(), n: dist.len() });
        }
        if let Some(point) = groups.iter().position(|&g| g == 0) {
            return Err(Error::ZeroGroupLabel { point });
        }
        let ell = groups.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; ell + 1];
        for &g in &groups {
            seen[g] = true;
        }
        if let Some(group) = (1..=ell).find(|&g| !seen[g]) {
            return Err(Error::EmptyGroup { group });
        }
        Ok(Self { groups, ell, dist, coords: None, ids: None })
    }

    pub fn with_coords(mut self, coords: Vec<[f64; 2]>) -> Result<Self> {
        if coords.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for {} points",
                coords.len(),
                self.len()
            )));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.len() {
            return Err(Error::InvalidInput(format!("{} ids for {} points", ids.len(), self.len())));
        }
        self.ids = Some(ids);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Number of groups.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn group_of(&self, p: usize) -> usize {
        self.groups[p]
    }

    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    pub fn dist(&self) -> &DistanceMatrix<T> {
        &self.dist
    }

    #[inline]
    pub fn d(&self, p: usize, q: usize) -> T {
        self.dist.get(p, q)
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    pub fn ids(&self) -> Option<&[String]> {
        self.ids.as_deref()
    }

    /// Points of group `g` in ascending order.
    pub fn group_members(&self, g: usize) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.groups[p] == g).collect()
    }

    /// `sizes[g - 1] = |P_g|`.
    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.ell];
        for &g in &self.groups {
            sizes[g - 1] += 1;
        }
        sizes
    }

    /// Per-group counts of an arbitrary point set, indexed like [`Self::group_sizes`].
    pub fn group_counts(&self, points: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.ell];
        for &p in points {
            counts[self.groups[p] - 1] += 1;
        }
        counts
    }

    /// Converts distances to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Instance<U> {
        Instance {
            groups: self.groups.clone(),
            ell: self.ell,
            dist: self.dist.map(|v| U::from_f64_lossy(v.to_f64_lossy())),
            coords: self.coords.clone(),
            ids: self.ids.clone(),
        }
    }

    pub fn with_dist(&self, dist: DistanceMatrix<T>) -> Result<Self> {
        let mut inst = Instance::new(self.groups.clone(), dist)?;
        inst.ids = self.ids.clone();
        Ok(inst)
    }
}

impl Instance<f64> {
    /// Euclidean instance from planar coordinates. Distances are rounded to
    /// nine decimals once and then closed under shortest paths, so the
    /// stored matrix is an exact metric in `f64` arithmetic.
    pub fn from_points(groups: Vec<usize>, coords: Vec<[f64; 2]>) -> Result<Self> {
        let dist = euclidean_matrix(&coords);
        Instance::new(groups, dist)?.with_coords(coords)
    }
}

pub(crate) fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

fn euclidean_matrix(coords: &[[f64; 2]]) -> DistanceMatrix<f64> {
    let mut dist = DistanceMatrix::from_fn(coords.len(), |i, j| {
        if i == j {
            0.0
        } else {
            let dx = coords[i][0] - coords[j][0];
            let dy = coords[i][1] - coords[j][1];
            round9(dx.hypot(dy))
        }
    });
    dist.shortest_path_closure();
    dist
}

/// Validated problem parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FairnessSpec {
    pub t: u32,
    pub k: usize,
    pub ell: usize,
}

impl FairnessSpec {
    pub fn new(t: u32, k: usize, ell: usize) -> Result<Self> {
        if t < 1 {
            return Err(Error::NonIntegralBalance(t.to_string()));
        }
        if k < 1 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        if ell < 2 {
            return Err(Error::InvalidInput("at least two groups are required".into()));
        }
        Ok(Self { t, k, ell })
    }

    pub fn two_color(t: u32, k: usize) -> Result<Self> {
        Self::new(t, k, 2)
    }
}

/// Parses a balance parameter, rejecting anything that is not a positive integer.
pub fn parse_balance(text: &str) -> Result<u32> {
    let trimmed = text.trim();
    if let Ok(t) = trimmed.parse::<u32>() {
        if t >= 1 {
            return Ok(t);
        }
        return Err(Error::NonIntegralBalance(text.to_string()));
    }
    match trimmed.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => Ok(v as u32),
        _ => Err(Error::NonIntegralBalance(text.to_string())),
    }
}

/// A single violated metric axiom.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation<T> {
    NonZeroDiagonal { p: usize, value: T },
    Negative { p: usize, q: usize, value: T },
    Asymmetric { p: usize, q: usize },
    /// `d(p, q) > d(p, via) + d(via, q) + tol`.
    Triangle { p: usize, q: usize, via: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport<T> {
    pub violations: Vec<MetricViolation<T>>,
}

impl<T> MetricReport<T> {
    pub fn is_metric(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the metric axioms within an additive tolerance.
pub fn validate_metric<T: Scalar>(dist: &DistanceMatrix<T>, tol: T) -> MetricReport<T> {
    let n = dist.len();
    let mut violations = Vec::new();
    for p in 0..n {
        let v = dist.get(p, p);
        if v > tol || v < T::zero() - tol {
            violations.push(MetricViolation::NonZeroDiagonal { p, value: v });
        }
    }
    for p in 0..n {
        for q in 0..n {
            let v = dist.get(p, q);
            if p != q && v < T::zero() - tol {
                violations.push(MetricViolation::Negative { p, q, value: v });
            }
            if p < q {
                let w = dist.get(q, p);
                if v > w + tol || w > v + tol {
                    violations.push(MetricViolation::Asymmetric { p, q });
                }
            }
        }
    }
    for p in 0..n {
        for q in (p + 1)..n {
            for via in 0..n {
                if via == p || via == q {
                    continue;
                }
                if dist.get(p, q) > dist.get(p, via) + dist.get(via, q) + tol {
                    violations.push(MetricViolation::Triangle { p, q, via });
                }
            }
        }
    }
    MetricReport { violations }
}
