use crate::UniversalError;
use serde::{Deserialize, Serialize};

/// Role of a generator: star generators survive everything, linear ones are
/// scaled by the power maps, petal ones are killed in the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GeneratorClass {
    Star,
    Linear,
    Petal,
}

/// Graded generator counts for the truncated free construction. The degree
/// and rank caps (s, r_star) bound which commutators survive: everything of
/// total degree above s dies, as does anything of total degree exactly s
/// built from more than r_star generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub s: usize,
    pub r_star: usize,
    pub d_star: Vec<usize>,
    pub d_lin: Vec<usize>,
    pub d_pet: Vec<usize>,
}

pub const MAX_S: usize = 5;
pub const MAX_TOTAL_GENERATORS: usize = 8;

impl GeneratorSpec {
    pub fn new(
        s: usize,
        r_star: usize,
        d_star: Vec<usize>,
        d_lin: Vec<usize>,
        d_pet: Vec<usize>,
    ) -> Result<Self, UniversalError> {
        let spec = GeneratorSpec {
            s,
            r_star,
            d_star,
            d_lin,
            d_pet,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Counts with all generators starred, for plain free constructions.
    pub fn plain(s: usize, r_star: usize, d: Vec<usize>) -> Result<Self, UniversalError> {
        let n = d.len();
        GeneratorSpec::new(s, r_star, d, vec![0; n], vec![0; n])
    }

    pub fn check(&self) -> Result<(), UniversalError> {
        if self.s == 0 {
            return Err(UniversalError::BadSpec("degree cap must be positive".into()));
        }
        if self.s > MAX_S {
            return Err(UniversalError::CapExceeded(format!(
                "degree cap {} exceeds {MAX_S}",
                self.s
            )));
        }
        if self.r_star == 0 || self.r_star > self.s {
            return Err(UniversalError::BadSpec(format!(
                "rank cap must satisfy 1 <= r <= {}, got {}",
                self.s, self.r_star
            )));
        }
        for v in [&self.d_star, &self.d_lin, &self.d_pet] {
            if v.len() != self.s {
                return Err(UniversalError::BadSpec(format!(
                    "count vectors must have length s = {}, got {}",
                    self.s,
                    v.len()
                )));
            }
        }
        if self.total_generators() == 0 {
            return Err(UniversalError::BadSpec(
                "at least one generator is required".into(),
            ));
        }
        if self.total_generators() > MAX_TOTAL_GENERATORS {
            return Err(UniversalError::CapExceeded(format!(
                "{} generators exceed {MAX_TOTAL_GENERATORS}",
                self.total_generators()
            )));
        }
        Ok(())
    }

    /// D_i = D_i^* + D_i^Lin + D_i^Pet for degree i (1-based).
    pub fn count_at(&self, degree: usize) -> usize {
        self.d_star[degree - 1] + self.d_lin[degree - 1] + self.d_pet[degree - 1]
    }

    pub fn total_generators(&self) -> usize {
        (1..=self.s).map(|i| self.count_at(i)).sum()
    }

    /// Class of generator (i, j), 1-based in both coordinates: star slots
    /// come first, then linear, then petal.
    pub fn class_of(&self, degree: usize, j: usize) -> GeneratorClass {
        let star = self.d_star[degree - 1];
        let lin = self.d_lin[degree - 1];
        if j <= star {
            GeneratorClass::Star
        } else if j <= star + lin {
            GeneratorClass::Linear
        } else {
            GeneratorClass::Petal
        }
    }

    /// Flat generator list in (degree, j) order.
    pub fn generators(&self) -> Vec<(usize, usize, GeneratorClass)> {
        let mut out = Vec::new();
        for i in 1..=self.s {
            for j in 1..=self.count_at(i) {
                out.push((i, j, self.class_of(i, j)));
            }
        }
        out
    }

    /// Positions (i, j) of the linear generators, in order.
    pub fn linear_slots(&self) -> Vec<(usize, usize)> {
        self.generators()
            .into_iter()
            .filter(|&(_, _, c)| c == GeneratorClass::Linear)
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, UniversalError> {
        let spec: GeneratorSpec = serde_json::from_str(text)
            .map_err(|e| UniversalError::BadSpec(format!("bad JSON: {e}")))?;
        spec.check()?;
        Ok(spec)
    }
}
