//! JSON fiber files.
//!
//! ```json
//! { "name": "I2",
//!   "components": [ { "label": "C0", "multiplicity": 1 }, ... ],
//!   "intersections": [ [0, 1, 2] ],
//!   "self_intersections": [ -2, -2 ] }
//! ```
//!
//! Pairs are 0-based and written with `i < j`; absent pairs are 0. The reader
//! also accepts `[j, i, m]`: a pair given in only one orientation fills both
//! entries, while a pair given in both orientations fills each entry
//! separately (this is how an asymmetric matrix reaches `validate`).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use super::{derive_self_intersections, SpecialFiber};
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberFile {
    name: String,
    components: Vec<ComponentEntry>,
    #[serde(default)]
    intersections: Vec<(usize, usize, i64)>,
    #[serde(default)]
    self_intersections: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentEntry {
    label: String,
    multiplicity: i64,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

pub fn from_json_str(text: &str) -> Result<SpecialFiber> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: FiberFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let location = if path == "." || path.is_empty() {
            format!("line {} column {}", inner.line(), inner.column())
        } else {
            format!("line {} column {} ({path})", inner.line(), inner.column())
        };
        parse_err(location, inner.to_string())
    })?;

    let nu = file.components.len();
    if nu == 0 {
        return Err(parse_err(
            "components",
            "at least one component is required",
        ));
    }
    let mut labels = Vec::with_capacity(nu);
    let mut mult = Vec::with_capacity(nu);
    for (k, c) in file.components.into_iter().enumerate() {
        if c.multiplicity < 1 {
            return Err(parse_err(
                format!("components[{k}].multiplicity"),
                format!("must be at least 1, got {}", c.multiplicity),
            ));
        }
        labels.push(c.label);
        mult.push(BigInt::from(c.multiplicity));
    }

    let mut matrix = IntMatrix::zeros(nu, nu);
    let mut given: HashSet<(usize, usize)> = HashSet::new();
    for (k, &(i, j, m)) in file.intersections.iter().enumerate() {
        let loc = format!("intersections[{k}]");
        if i >= nu || j >= nu {
            return Err(parse_err(
                loc,
                format!("index out of range for {nu} components"),
            ));
        }
        if i == j {
            return Err(parse_err(
                loc,
                "diagonal entries belong in self_intersections",
            ));
        }
        if !given.insert((i, j)) {
            return Err(parse_err(loc, format!("duplicate pair ({i}, {j})")));
        }
        matrix[(i, j)] = BigInt::from(m);
        if !given.contains(&(j, i)) {
            matrix[(j, i)] = BigInt::from(m);
        }
    }

    match file.self_intersections {
        Some(diag) => {
            if diag.len() != nu {
                return Err(parse_err(
                    "self_intersections",
                    format!("has {} entries, expected {nu}", diag.len()),
                ));
            }
            for (i, x) in diag.into_iter().enumerate() {
                matrix[(i, i)] = BigInt::from(x);
            }
        }
        None => {
            let diag = derive_self_intersections(&mult, &matrix)?;
            for (i, x) in diag.into_iter().enumerate() {
                matrix[(i, i)] = x;
            }
        }
    }

    SpecialFiber::new(file.name, labels, mult, matrix)
}

fn small(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Shape(format!("{what} {x} does not fit the file format")))
}

/// Canonical serialization: keys in schema order, upper-triangle pairs only,
/// self-intersections always present, LF line endings.
pub fn to_json_string(f: &SpecialFiber) -> Result<String> {
    let quote = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let nu = f.nu();
    let m = f.matrix();
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"name\": {},", quote(f.name())).unwrap();
    writeln!(out, "  \"components\": [").unwrap();
    for (k, (label, d)) in f.labels().iter().zip(f.multiplicities()).enumerate() {
        let sep = if k + 1 < nu { "," } else { "" };
        writeln!(
            out,
            "    {{ \"label\": {}, \"multiplicity\": {} }}{sep}",
            quote(label),
            small(d, "multiplicity")?
        )
        .unwrap();
    }
    writeln!(out, "  ],").unwrap();

    let mut pairs = Vec::new();
    for i in 0..nu {
        for j in i + 1..nu {
            if !m[(i, j)].is_zero() {
                pairs.push(format!(
                    "[{i}, {j}, {}]",
                    small(&m[(i, j)], "intersection")?
                ));
            }
        }
    }
    if pairs.is_empty() {
        writeln!(out, "  \"intersections\": [],").unwrap();
    } else {
        writeln!(out, "  \"intersections\": [").unwrap();
        writeln!(out, "    {}", pairs.join(",\n    ")).unwrap();
        writeln!(out, "  ],").unwrap();
    }

    let diag = (0..nu)
        .map(|i| small(&m[(i, i)], "self-intersection").map(|x| x.to_string()))
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "  \"self_intersections\": [{}]", diag.join(", ")).unwrap();
    writeln!(out, "}}").unwrap();
    Ok(out)
}

pub fn load(path: impl AsRef<Path>) -> Result<SpecialFiber> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json_str(&text)
}

pub fn save(path: impl AsRef<Path>, f: &SpecialFiber) -> Result<()> {
    let path = path.as_ref();
    let text = to_json_string(f)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
