//! Instance files.
//!
//! * JSON: `{"n": .., "groups": [..], "dist": [[..]], "coords": [[x, y], ..], "ids": [..]}`.
//!   `dist` takes precedence over `coords` when both are present.
//! * CSV: header `id,group,x,y`; ids are mapped to dense indices in file order.

use std::collections::HashMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DistanceMatrix, Instance};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    n: usize,
    groups: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dist: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ids: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    id: String,
    group: usize,
    x: f64,
    y: f64,
}

pub fn read_json<R: Read>(reader: R) -> Result<Instance<f64>> {
    let file: InstanceFile = serde_json::from_reader(reader)?;
    if file.groups.len() != file.n {
        return Err(Error::LengthMismatch { groups: file.groups.len(), n: file.n });
    }
    let mut inst = match (file.dist, file.coords.clone()) {
        (Some(rows), _) => {
            if rows.len() != file.n {
                return Err(Error::InvalidInput(format!("dist has {} rows, n = {}", rows.len(), file.n)));
            }
            if rows.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("dist contains non-finite values".into()));
            }
            let inst = Instance::new(file.groups, DistanceMatrix::from_rows(rows)?)?;
            match file.coords {
                Some(coords) => inst.with_coords(coords)?,
                None => inst,
            }
        }
        (None, Some(coords)) => {
            if coords.len() != file.n {
                return Err(Error::InvalidInput(format!("{} coordinates, n = {}", coords.len(), file.n)));
            }
            Instance::from_points(file.groups, coords)?
        }
        (None, None) => return Err(Error::InvalidInput("instance needs `dist` or `coords`".into())),
    };
    if let Some(ids) = file.ids {
        inst = inst.with_ids(ids)?;
    }
    Ok(inst)
}

pub fn write_json<W: Write>(inst: &Instance<f64>, writer: W) -> Result<()> {
    let file = InstanceFile {
        n: inst.len(),
        groups: inst.groups().to_vec(),
        dist: Some(inst.dist().rows()),
        coords: inst.coords().map(<[_]>::to_vec),
        ids: inst.ids().map(<[_]>::to_vec),
    };
    serde_json::to_writer(writer, &file)?;
    Ok(())
}

pub fn read_csv<R: Read>(reader: R) -> Result<Instance<f64>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["id", "group", "x", "y"] {
        return Err(Error::Parse(format!("expected header `id,group,x,y`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut ids = Vec::new();
    let mut seen = HashMap::new();
    let mut groups = Vec::new();
    let mut coords = Vec::new();
    for record in rdr.deserialize() {
        let row: CsvRow = record?;
        if seen.insert(row.id.clone(), ids.len()).is_some() {
            return Err(Error::InvalidInput(format!("duplicate id `{}`", row.id)));
        }
        if !row.x.is_finite() || !row.y.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite coordinate for `{}`", row.id)));
        }
        ids.push(row.id);
        groups.push(row.group);
        coords.push([row.x, row.y]);
    }
    Instance::from_points(groups, coords)?.with_ids(ids)
}

pub fn write_csv<W: Write>(inst: &Instance<f64>, writer: W) -> Result<()> {
    let coords = inst
        .coords()
        .ok_or_else(|| Error::InvalidInput("CSV output needs planar coordinates".into()))?;
    let mut wtr = csv::Writer::from_writer(writer);
    for p in 0..inst.len() {
        let id = inst.ids().map_or_else(|| p.to_string(), |ids| ids[p].clone());
        wtr.serialize(CsvRow { id, group: inst.group_of(p), x: coords[p][0], y: coords[p][1] })?;
    }
    wtr.flush()?;
    Ok(())
}

fn is_csv(path: &Path) -> bool {
    path.extension().and_then(|e| e.to_str()).is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Reads an instance, choosing the format from the file extension.
pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance<f64>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if is_csv(path) {
        read_csv(file)
    } else {
        read_json(file)
    }
}

pub fn write_instance(inst: &Instance<f64>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    if is_csv(path) {
        write_csv(inst, &mut buf)?;
    } else {
        write_json(inst, &mut buf)?;
    }
    fs::write(path, buf)?;
    Ok(())
}
