use crate::FiltrationError;
use serde::{Deserialize, Serialize};

/// Index into a filtration. Three shapes are supported: plain degrees,
/// degree-rank pairs ordered lexicographically, and multidegree vectors
/// ordered componentwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrderingIndex {
    Degree(usize),
    /// (d, r) with r <= d; (d', r') precedes (d, r) when d' < d, or d' = d
    /// and r' <= r.
    DegreeRank(usize, usize),
    MultiDegree(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Degree,
    DegreeRank,
    MultiDegree(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexOrder {
    LessOrEqual,
    Greater,
    Incomparable,
}

impl OrderingIndex {
    pub fn kind(&self) -> IndexKind {
        match self {
            OrderingIndex::Degree(_) => IndexKind::Degree,
            OrderingIndex::DegreeRank(_, _) => IndexKind::DegreeRank,
            OrderingIndex::MultiDegree(v) => IndexKind::MultiDegree(v.len()),
        }
    }

    pub fn zero(kind: IndexKind) -> Self {
        match kind {
            IndexKind::Degree => OrderingIndex::Degree(0),
            IndexKind::DegreeRank => OrderingIndex::DegreeRank(0, 0),
            IndexKind::MultiDegree(k) => OrderingIndex::MultiDegree(vec![0; k]),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OrderingIndex::Degree(d) => *d == 0,
            OrderingIndex::DegreeRank(d, r) => *d == 0 && *r == 0,
            OrderingIndex::MultiDegree(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// Well-formedness: degree-rank requires r <= d.
    pub fn valid(&self) -> bool {
        match self {
            OrderingIndex::DegreeRank(d, r) => r <= d,
            _ => true,
        }
    }

    pub fn compare(&self, other: &Self) -> Result<IndexOrder, FiltrationError> {
        if self.kind() != other.kind() {
            return Err(FiltrationError::VariantMismatch);
        }
        let le = self.precedes(other)?;
        let ge = other.precedes(self)?;
        Ok(if le {
            IndexOrder::LessOrEqual
        } else if ge {
            IndexOrder::Greater
        } else {
            IndexOrder::Incomparable
        })
    }

    /// True when self precedes-or-equals other in the relevant ordering.
    pub fn precedes(&self, other: &Self) -> Result<bool, FiltrationError> {
        match (self, other) {
            (OrderingIndex::Degree(a), OrderingIndex::Degree(b)) => Ok(a <= b),
            (OrderingIndex::DegreeRank(d1, r1), OrderingIndex::DegreeRank(d2, r2)) => {
                Ok(d1 < d2 || (d1 == d2 && r1 <= r2))
            }
            (OrderingIndex::MultiDegree(a), OrderingIndex::MultiDegree(b)) => {
                if a.len() != b.len() {
                    return Err(FiltrationError::VariantMismatch);
                }
                Ok(a.iter().zip(b).all(|(x, y)| x <= y))
            }
            _ => Err(FiltrationError::VariantMismatch),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FiltrationError> {
        match (self, other) {
            (OrderingIndex::Degree(a), OrderingIndex::Degree(b)) => {
                Ok(OrderingIndex::Degree(a + b))
            }
            (OrderingIndex::DegreeRank(d1, r1), OrderingIndex::DegreeRank(d2, r2)) => {
                Ok(OrderingIndex::DegreeRank(d1 + d2, r1 + r2))
            }
            (OrderingIndex::MultiDegree(a), OrderingIndex::MultiDegree(b)) => {
                if a.len() != b.len() {
                    return Err(FiltrationError::VariantMismatch);
                }
                Ok(OrderingIndex::MultiDegree(
                    a.iter().zip(b).map(|(x, y)| x + y).collect(),
                ))
            }
            _ => Err(FiltrationError::VariantMismatch),
        }
    }
}
