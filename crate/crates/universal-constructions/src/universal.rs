use crate::gens::{GeneratorClass, GeneratorSpec};
use crate::hall::HallBasis;
use crate::UniversalError;
use filtration::{Filtration, Flavor, OrderingIndex, Subalgebra};
use lie_core::{GroupElement, LieAlgebra, Rational};
use num_traits::{One, Zero};
use std::sync::Arc;

/// Per-coordinate data of the constructed algebra: which Hall element the
/// coordinate is, and how its leaves split across generator classes.
#[derive(Clone, Debug)]
pub struct BasisInfo {
    pub hall_id: usize,
    pub weight: usize,
    pub letters: usize,
    pub star_leaves: usize,
    pub linear_leaves: usize,
    pub petal_leaves: usize,
    /// Index into the spec's linear-slot list when exactly one leaf is linear.
    pub linear_slot: Option<usize>,
}

/// Free nilpotent Lie algebra on graded generators, cut down by the degree
/// cap s (everything of total degree above s vanishes) and the participant
/// cap r_star at degree exactly s, together with the degree-rank filtration
/// this grading induces.
pub struct UniversalAlgebra {
    spec: GeneratorSpec,
    hall: HallBasis,
    keep: Vec<usize>,
    position_of_hall: Vec<Option<usize>>,
    info: Vec<BasisInfo>,
    algebra: Arc<LieAlgebra>,
    filtration: Filtration,
    generator_positions: Vec<(usize, usize, usize)>,
}

pub fn build_universal(spec: &GeneratorSpec) -> Result<UniversalAlgebra, UniversalError> {
    spec.check()?;
    let gens = spec.generators();
    let weights: Vec<usize> = gens.iter().map(|&(degree, _, _)| degree).collect();
    let hall = HallBasis::new(&weights, spec.s)?;

    // survivors of the participant cap at top degree
    let keep: Vec<usize> = hall
        .elements()
        .iter()
        .filter(|e| !(e.weight == spec.s && e.letters > spec.r_star))
        .map(|e| e.id)
        .collect();
    let dim = keep.len();
    if dim > lie_core::MAX_DIM {
        return Err(UniversalError::CapExceeded(format!(
            "construction has dimension {dim}, above the arithmetic cap {}",
            lie_core::MAX_DIM
        )));
    }
    let mut position_of_hall = vec![None; hall.len()];
    for (pos, &id) in keep.iter().enumerate() {
        position_of_hall[id] = Some(pos);
    }

    let mut info = Vec::with_capacity(dim);
    for &id in &keep {
        let e = hall.element(id);
        let mut counts = [0usize; 3];
        let mut slot = None;
        for &leaf in &e.leaves {
            let (degree, j, class) = gens[leaf as usize];
            counts[class as usize] += 1;
            if class == GeneratorClass::Linear {
                slot = Some(
                    spec.linear_slots()
                        .iter()
                        .position(|&(i2, j2)| (i2, j2) == (degree, j))
                        .expect("linear leaf has a slot"),
                );
            }
        }
        info.push(BasisInfo {
            hall_id: id,
            weight: e.weight,
            letters: e.letters,
            star_leaves: counts[GeneratorClass::Star as usize],
            linear_leaves: counts[GeneratorClass::Linear as usize],
            petal_leaves: counts[GeneratorClass::Petal as usize],
            linear_slot: if counts[GeneratorClass::Linear as usize] == 1 {
                slot
            } else {
                None
            },
        });
    }

    let mut entries = Vec::new();
    for (a, &p) in keep.iter().enumerate() {
        for (b, &q) in keep.iter().enumerate().skip(a + 1) {
            for (hid, c) in hall.bracket_coordinates(p, q)? {
                if let Some(k) = position_of_hall[hid] {
                    entries.push((a, b, k, c));
                }
            }
        }
    }
    let algebra = Arc::new(LieAlgebra::new(dim, spec.s, entries)?);
    algebra.ensure_valid()?;

    // basis position of each generator, addressed by (degree, j)
    let mut generator_positions = Vec::new();
    for (g, &(degree, j, _)) in gens.iter().enumerate() {
        let pos = position_of_hall[hall.leaf_id(g as u8)].expect("generators survive");
        generator_positions.push((degree, j, pos));
    }

    let filtration = degree_rank_filtration(&algebra, &info, spec.s)?;
    filtration.ensure_valid()?;

    Ok(UniversalAlgebra {
        spec: spec.clone(),
        hall,
        keep,
        position_of_hall,
        info,
        algebra,
        filtration,
        generator_positions,
    })
}

/// The group at (d, r) is spanned by the coordinates whose total degree
/// exceeds d, or equals d with at least r participants.
fn degree_rank_filtration(
    algebra: &Arc<LieAlgebra>,
    info: &[BasisInfo],
    s: usize,
) -> Result<Filtration, UniversalError> {
    let dim = algebra.dim();
    let mut groups = Vec::new();
    for d in 0..=s {
        for r in 0..=d {
            let rows: Vec<Vec<Rational>> = info
                .iter()
                .enumerate()
                .filter(|(_, b)| b.weight > d || (b.weight == d && b.letters >= r))
                .map(|(pos, _)| unit(pos, dim))
                .collect();
            let sub = Subalgebra::new(Arc::clone(algebra), &rows)?;
            groups.push((OrderingIndex::DegreeRank(d, r), sub));
        }
    }
    Ok(Filtration::new(
        Arc::clone(algebra),
        Flavor::DegreeRank,
        groups,
    )?)
}

fn unit(pos: usize, dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[pos] = Rational::one();
    v
}

impl UniversalAlgebra {
    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn hall(&self) -> &HallBasis {
        &self.hall
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn info(&self, pos: usize) -> &BasisInfo {
        &self.info[pos]
    }

    pub fn infos(&self) -> &[BasisInfo] {
        &self.info
    }

    /// Basis position of generator (degree, j), both 1-based.
    pub fn generator_index(&self, degree: usize, j: usize) -> Option<usize> {
        self.generator_positions
            .iter()
            .find(|&&(d2, j2, _)| (d2, j2) == (degree, j))
            .map(|&(_, _, pos)| pos)
    }

    /// exp(e_{i,j}) for every generator, in (degree, j) order.
    pub fn lattice_generators(&self) -> Vec<GroupElement<Rational>> {
        self.generator_positions
            .iter()
            .map(|&(_, _, pos)| {
                GroupElement::generator(Arc::clone(&self.algebra), pos)
                    .expect("position in range")
            })
            .collect()
    }

    /// Surviving Hall ids, in basis order.
    pub fn kept_hall_ids(&self) -> &[usize] {
        &self.keep
    }

    pub fn position_of_hall(&self, hall_id: usize) -> Option<usize> {
        self.position_of_hall[hall_id]
    }

    /// Bracket words over e_{degree,j} names, one per coordinate.
    pub fn basis_names(&self) -> Vec<String> {
        let gen_names: Vec<String> = self
            .spec
            .generators()
            .iter()
            .map(|&(degree, j, _)| format!("e{degree}_{j}"))
            .collect();
        self.keep
            .iter()
            .map(|&id| self.hall.describe(id, &gen_names))
            .collect()
    }

    /// Algebra in the shared exchange format plus a name-per-coordinate
    /// sidecar and the generating counts.
    pub fn to_json(&self) -> String {
        let algebra: serde_json::Value =
            serde_json::from_str(&lie_core::algebra_to_json(&self.algebra))
                .expect("own serialization parses");
        let doc = serde_json::json!({
            "generators": serde_json::from_str::<serde_json::Value>(&self.spec.to_json())
                .expect("own serialization parses"),
            "algebra": algebra,
            "names": self.basis_names(),
        });
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}
