//! JSON serialization for algebras.
//!
//! Format: `{"dim": d, "step": s, "brackets": [[i, j, k, "p/q"], ...]}` with
//! 0-based indices. Omitted entries are zero; an omitted pair (j, i) is the
//! antisymmetric completion of (i, j). Serialization is canonical (entries
//! sorted by (i, j, k), reduced fractions), so write -> read -> write is
//! byte-stable and read -> write -> read reproduces the algebra exactly.

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::rational::{format_rational, parse_rational};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    step: usize,
    brackets: Vec<(usize, usize, usize, String)>,
}

pub fn algebra_to_json(algebra: &LieAlgebra) -> String {
    let brackets = algebra
        .entries()
        .map(|(i, j, k, c)| (i, j, k, format_rational(c)))
        .collect();
    let file = AlgebraFile {
        dim: algebra.dim(),
        step: algebra.declared_step(),
        brackets,
    };
    serde_json::to_string_pretty(&file).expect("algebra serialization cannot fail")
}

pub fn algebra_from_json(text: &str) -> Result<LieAlgebra, AlgebraError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| AlgebraError::BadInput(format!("bad algebra JSON: {e}")))?;
    let mut entries = Vec::with_capacity(file.brackets.len());
    for (i, j, k, c) in file.brackets {
        let c = parse_rational(&c).map_err(AlgebraError::BadInput)?;
        entries.push((i, j, k, c));
    }
    LieAlgebra::new(file.dim, file.step, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn round_trip_is_exact_and_canonical() {
        for algebra in [
            standard::heisenberg(),
            standard::free_two_gen_step_three(),
            standard::abelian(4),
        ] {
            let text = algebra_to_json(&algebra);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(*algebra, back);
            assert_eq!(text, algebra_to_json(&back));
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(algebra_from_json("{").is_err());
        assert!(algebra_from_json(r#"{"dim": 2, "step": 1, "brackets": [[0, 1, 5, "1"]]}"#).is_err());
        assert!(algebra_from_json(r#"{"dim": 2, "step": 1, "brackets": [[0, 1, 1, "1/0"]]}"#).is_err());
    }
}
