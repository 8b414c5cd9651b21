//! Wire format:
//! { "kind": "plain" | "degree" | "degree-rank" | "multidegree",
//!   "groups": [ { "index": [..], "basis": [["p/q", ..], ..] }, .. ] }
//! Degree indices are 1-element arrays, degree-rank 2-element, multidegree
//! any fixed arity. The ambient algebra travels separately.

use crate::filt::{Filtration, Flavor};
use crate::index::OrderingIndex;
use crate::subalgebra::Subalgebra;
use crate::FiltrationError;
use lie_core::{format_rational, parse_rational, LieAlgebra};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Serialize, Deserialize)]
struct GroupFile {
    index: Vec<usize>,
    basis: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct FiltrationFile {
    kind: String,
    groups: Vec<GroupFile>,
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Plain => "plain",
        Flavor::Degree => "degree",
        Flavor::DegreeRank => "degree-rank",
        Flavor::MultiDegree => "multidegree",
    }
}

pub fn filtration_to_json(filt: &Filtration) -> String {
    let groups = filt
        .stored()
        .iter()
        .map(|(idx, sub)| GroupFile {
            index: match idx {
                OrderingIndex::Degree(d) => vec![*d],
                OrderingIndex::DegreeRank(d, r) => vec![*d, *r],
                OrderingIndex::MultiDegree(v) => v.clone(),
            },
            basis: sub
                .basis()
                .iter()
                .map(|row| row.iter().map(format_rational).collect())
                .collect(),
        })
        .collect();
    let file = FiltrationFile {
        kind: flavor_name(filt.flavor()).to_string(),
        groups,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn filtration_from_json(
    algebra: Arc<LieAlgebra>,
    text: &str,
) -> Result<Filtration, FiltrationError> {
    let file: FiltrationFile = serde_json::from_str(text)
        .map_err(|e| FiltrationError::BadInput(format!("bad filtration JSON: {e}")))?;
    let flavor = match file.kind.as_str() {
        "plain" => Flavor::Plain,
        "degree" => Flavor::Degree,
        "degree-rank" => Flavor::DegreeRank,
        "multidegree" => Flavor::MultiDegree,
        other => {
            return Err(FiltrationError::BadInput(format!(
                "unknown filtration kind {other:?}"
            )))
        }
    };
    let mut groups = Vec::new();
    for g in file.groups {
        let index = match flavor {
            Flavor::Degree | Flavor::Plain => {
                if g.index.len() == 1 {
                    OrderingIndex::Degree(g.index[0])
                } else if flavor == Flavor::Plain && g.index.len() == 2 {
                    OrderingIndex::DegreeRank(g.index[0], g.index[1])
                } else if flavor == Flavor::Plain {
                    OrderingIndex::MultiDegree(g.index.clone())
                } else {
                    return Err(FiltrationError::BadInput(
                        "degree index must be a single number".into(),
                    ));
                }
            }
            Flavor::DegreeRank => {
                if g.index.len() != 2 {
                    return Err(FiltrationError::BadInput(
                        "degree-rank index must be a pair".into(),
                    ));
                }
                OrderingIndex::DegreeRank(g.index[0], g.index[1])
            }
            Flavor::MultiDegree => OrderingIndex::MultiDegree(g.index.clone()),
        };
        let mut rows = Vec::new();
        for row in g.basis {
            let mut parsed = Vec::new();
            for cell in row {
                parsed.push(
                    parse_rational(&cell)
                        .map_err(|e| FiltrationError::BadInput(e.to_string()))?,
                );
            }
            if parsed.len() != algebra.dim() {
                return Err(FiltrationError::BadInput(format!(
                    "basis row has length {}, ambient dimension is {}",
                    parsed.len(),
                    algebra.dim()
                )));
            }
            rows.push(parsed);
        }
        groups.push((index, Subalgebra::new(Arc::clone(&algebra), &rows)?));
    }
    Filtration::new(algebra, flavor, groups)
}
