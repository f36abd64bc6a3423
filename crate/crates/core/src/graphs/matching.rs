use super::BipartiteGraph;
use crate::error::{Error, Result};
use crate::scalar::{sum, Scalar};

/// A perfect matching between the two sides of a [`BipartiteGraph`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matching<T = f64> {
    /// `(left point, right point)`, sorted by left point.
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: T,
}

impl<T: Scalar> Matching<T> {
    pub fn partner_of_left(&self, p: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(a, _)| a == p).map(|&(_, b)| b)
    }
}

/// Minimum-weight perfect matching via the Hungarian method with row and
/// column potentials, `O(n^3)`.
pub fn min_weight_perfect_matching<T: Scalar>(g: &BipartiteGraph<T>) -> Result<Matching<T>> {
    let n = g.left().len();
    if n != g.right().len() {
        return Err(Error::SideMismatch { left: n, right: g.right().len() });
    }
    // 1-based arrays; column 0 is the virtual start.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        row_of[0] = row;
        let mut col0 = 0;
        let mut minv: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let i0 = row_of[col0];
            let mut delta: Option<T> = None;
            let mut col1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = g.weight(i0 - 1, j - 1) - u[i0] - v[j];
                if minv[j].is_none_or(|m| cur < m) {
                    minv[j] = Some(cur);
                    way[j] = col0;
                }
                let mj = minv[j].expect("set above");
                if delta.is_none_or(|d| mj < d) {
                    delta = Some(mj);
                    col1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= delta;
                }
            }
            col0 = col1;
            if row_of[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            row_of[col0] = row_of[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut local: Vec<(usize, usize)> = (1..=n).map(|j| (row_of[j] - 1, j - 1)).collect();
    local.sort_unstable();
    let total_weight = sum(local.iter().map(|&(i, j)| g.weight(i, j)));
    let pairs = local.iter().map(|&(i, j)| (g.left()[i], g.right()[j])).collect();
    Ok(Matching { pairs, total_weight })
}
