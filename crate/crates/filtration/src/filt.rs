use crate::index::{IndexKind, OrderingIndex};
use crate::subalgebra::Subalgebra;
use crate::FiltrationError;
use lie_core::linalg::RowSpace;
use lie_core::{LieAlgebra, Rational};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// No shape constraints beyond nesting and the commutator condition.
    Plain,
    /// Degree indices with G_0 = G_1.
    Degree,
    /// Degree-rank indices with G_(0,0) = G_(1,0) and G_(d,0) = G_(d,1).
    DegreeRank,
    /// Multidegree indices with G_0 equal to the join of the G_{e_i}.
    MultiDegree,
}

impl Flavor {
    fn admits(self, kind: IndexKind) -> bool {
        match self {
            Flavor::Plain => true,
            Flavor::Degree => kind == IndexKind::Degree,
            Flavor::DegreeRank => kind == IndexKind::DegreeRank,
            Flavor::MultiDegree => matches!(kind, IndexKind::MultiDegree(_)),
        }
    }
}

/// A family of nested rational subalgebras indexed by an ordering, with the
/// commutator condition [G_i, G_j] <= G_{i+j}. Only the finite support is
/// stored; unlisted indices read as the full group at zero and the trivial
/// subalgebra elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    algebra: Arc<LieAlgebra>,
    flavor: Flavor,
    kind: IndexKind,
    groups: BTreeMap<OrderingIndex, Subalgebra>,
}

#[derive(Clone, Debug, Default)]
pub struct FiltrationReport {
    /// Pairs (i, j) with i preceding j but G_j not inside G_i.
    pub nesting_violations: Vec<(OrderingIndex, OrderingIndex)>,
    /// Pairs (i, j) with [G_i, G_j] escaping G_{i+j}.
    pub commutator_violations: Vec<(OrderingIndex, OrderingIndex)>,
    /// Flavor-shape constraint failures, described.
    pub flavor_violations: Vec<String>,
    pub pass: bool,
}

impl FiltrationReport {
    pub fn summary(&self) -> String {
        if self.pass {
            return "filtration valid".to_string();
        }
        let mut s = String::new();
        for (i, j) in &self.nesting_violations {
            let _ = writeln!(s, "nesting: G_{j:?} not inside G_{i:?}");
        }
        for (i, j) in &self.commutator_violations {
            let _ = writeln!(s, "commutator: [G_{i:?}, G_{j:?}] escapes the target");
        }
        for v in &self.flavor_violations {
            let _ = writeln!(s, "shape: {v}");
        }
        s
    }
}

impl Filtration {
    pub fn new(
        algebra: Arc<LieAlgebra>,
        flavor: Flavor,
        groups: Vec<(OrderingIndex, Subalgebra)>,
    ) -> Result<Self, FiltrationError> {
        let mut kind: Option<IndexKind> = None;
        let mut map = BTreeMap::new();
        for (idx, sub) in groups {
            if !idx.valid() {
                return Err(FiltrationError::BadInput(format!(
                    "malformed index {idx:?}"
                )));
            }
            match kind {
                None => kind = Some(idx.kind()),
                Some(k) if k == idx.kind() => {}
                Some(_) => return Err(FiltrationError::VariantMismatch),
            }
            if *sub.ambient().as_ref() != *algebra.as_ref() {
                return Err(FiltrationError::AmbientMismatch);
            }
            map.insert(idx, sub);
        }
        let kind = kind.ok_or_else(|| {
            FiltrationError::BadInput("a filtration needs at least one group".into())
        })?;
        if !flavor.admits(kind) {
            return Err(FiltrationError::KindFlavorMismatch {
                found: kind,
                flavor,
            });
        }
        Ok(Filtration {
            algebra,
            flavor,
            kind,
            groups: map,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn indices(&self) -> impl Iterator<Item = &OrderingIndex> {
        self.groups.keys()
    }

    pub fn stored(&self) -> &BTreeMap<OrderingIndex, Subalgebra> {
        &self.groups
    }

    /// The subalgebra at an index: stored support, else full at zero and
    /// trivial above the support.
    pub fn group(&self, idx: &OrderingIndex) -> Subalgebra {
        if let Some(sub) = self.groups.get(idx) {
            return sub.clone();
        }
        if idx.is_zero() {
            Subalgebra::full(Arc::clone(&self.algebra))
        } else {
            Subalgebra::trivial(Arc::clone(&self.algebra))
        }
    }

    /// Degree of the filtration: the largest stored index with a nontrivial
    /// group, where degree-rank and multidegree indices count by total weight.
    pub fn degree(&self) -> usize {
        self.groups
            .iter()
            .filter(|(_, sub)| !sub.is_trivial())
            .map(|(idx, _)| match idx {
                OrderingIndex::Degree(d) => *d,
                OrderingIndex::DegreeRank(d, _) => *d,
                OrderingIndex::MultiDegree(v) => v.iter().sum(),
            })
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self) -> FiltrationReport {
        let mut report = FiltrationReport::default();
        // the implicit zero index participates in every check
        let mut idxs: Vec<OrderingIndex> = self.groups.keys().cloned().collect();
        let zero = OrderingIndex::zero(self.kind);
        if !self.groups.contains_key(&zero) {
            idxs.push(zero);
        }

        for i in &idxs {
            for j in &idxs {
                if i != j && i.precedes(j).unwrap_or(false) {
                    let gi = self.group(i);
                    let gj = self.group(j);
                    if !gj.is_subalgebra_of(&gi) {
                        report.nesting_violations.push((i.clone(), j.clone()));
                    }
                }
            }
        }

        for i in &idxs {
            for j in &idxs {
                if j < i {
                    continue;
                }
                let gi = self.group(i);
                let gj = self.group(j);
                match (gi.bracket_span(&gj), i.add(j)) {
                    (Ok(span), Ok(target)) => {
                        if !span.is_subspace_of(self.group(&target).space()) {
                            report.commutator_violations.push((i.clone(), j.clone()));
                        }
                    }
                    _ => report
                        .commutator_violations
                        .push((i.clone(), j.clone())),
                }
            }
        }

        self.check_flavor(&mut report);
        report.pass = report.nesting_violations.is_empty()
            && report.commutator_violations.is_empty()
            && report.flavor_violations.is_empty();
        report
    }

    fn check_flavor(&self, report: &mut FiltrationReport) {
        match self.flavor {
            Flavor::Plain => {}
            Flavor::Degree => {
                let g0 = self.group(&OrderingIndex::Degree(0));
                let g1 = self.group(&OrderingIndex::Degree(1));
                if g0 != g1 {
                    report
                        .flavor_violations
                        .push("group at 0 must equal group at 1".into());
                }
            }
            Flavor::DegreeRank => {
                let g00 = self.group(&OrderingIndex::DegreeRank(0, 0));
                let g10 = self.group(&OrderingIndex::DegreeRank(1, 0));
                if g00 != g10 {
                    report
                        .flavor_violations
                        .push("group at (0,0) must equal group at (1,0)".into());
                }
                let degrees: Vec<usize> = self
                    .groups
                    .keys()
                    .filter_map(|idx| match idx {
                        OrderingIndex::DegreeRank(d, _) if *d >= 1 => Some(*d),
                        _ => None,
                    })
                    .collect();
                for d in degrees {
                    let a = self.group(&OrderingIndex::DegreeRank(d, 0));
                    let b = self.group(&OrderingIndex::DegreeRank(d, 1));
                    if a != b {
                        report
                            .flavor_violations
                            .push(format!("group at ({d},0) must equal group at ({d},1)"));
                    }
                }
            }
            Flavor::MultiDegree => {
                let arity = match self.kind {
                    IndexKind::MultiDegree(k) => k,
                    _ => unreachable!("constructor enforces kind"),
                };
                let mut join = Subalgebra::trivial(Arc::clone(&self.algebra));
                for axis in 0..arity {
                    let mut unit = vec![0usize; arity];
                    unit[axis] = 1;
                    let g = self.group(&OrderingIndex::MultiDegree(unit));
                    match join.join(&g) {
                        Ok(j) => join = j,
                        Err(e) => {
                            report.flavor_violations.push(format!("join failed: {e}"));
                            return;
                        }
                    }
                }
                let g0 = self.group(&OrderingIndex::zero(self.kind));
                if join != g0 {
                    report.flavor_violations.push(
                        "group at 0 must be the join of the unit-index groups".into(),
                    );
                }
            }
        }
    }

    pub fn ensure_valid(&self) -> Result<(), FiltrationError> {
        let report = self.validate();
        if report.pass {
            Ok(())
        } else {
            Err(FiltrationError::Invalid(report.summary()))
        }
    }
}

/// Lower central series G = G_(1), G_(i+1) = [G, G_(i)], listed down to and
/// including the first trivial term.
pub fn lower_central_series(algebra: &Arc<LieAlgebra>) -> Result<Vec<Subalgebra>, FiltrationError> {
    algebra.ensure_valid()?;
    let mut out = vec![Subalgebra::full(Arc::clone(algebra))];
    let full = Subalgebra::full(Arc::clone(algebra));
    loop {
        let prev = out.last().unwrap();
        let span = full.bracket_span(prev)?;
        let next = Subalgebra::new(Arc::clone(algebra), span.rows())?;
        let stalled = next.dim() >= prev.dim() && !prev.is_trivial();
        let done = next.is_trivial();
        out.push(next);
        if done {
            return Ok(out);
        }
        if stalled || out.len() > algebra.dim() + 1 {
            return Err(FiltrationError::Invalid(
                "lower central series does not reach zero".into(),
            ));
        }
    }
}

/// The lower central series packaged as a degree filtration
/// (G_0 = G_1 = G, G_i = G_(i)).
pub fn lower_central_filtration(
    algebra: &Arc<LieAlgebra>,
) -> Result<Filtration, FiltrationError> {
    let series = lower_central_series(algebra)?;
    let mut groups = vec![(
        OrderingIndex::Degree(0),
        Subalgebra::full(Arc::clone(algebra)),
    )];
    for (i, sub) in series.into_iter().enumerate() {
        groups.push((OrderingIndex::Degree(i + 1), sub));
    }
    Filtration::new(Arc::clone(algebra), Flavor::Degree, groups)
}

/// Refines a degree filtration by rank: the group at (d, r) is spanned by
/// iterated brackets of the filtration's generators whose degrees sum past d,
/// or to exactly d using at least r participants.
pub fn degree_rank_from_degree(filt: &Filtration) -> Result<Filtration, FiltrationError> {
    if filt.flavor() != Flavor::Degree {
        return Err(FiltrationError::BadInput(
            "degree-rank refinement starts from a degree filtration".into(),
        ));
    }
    filt.ensure_valid()?;
    let algebra = Arc::clone(filt.algebra());
    let dim = algebra.dim();
    let s = filt.degree();

    // classes[(d, m)] = span of brackets of total degree d with m participants
    let mut classes: BTreeMap<(usize, usize), RowSpace> = BTreeMap::new();
    for d in 1..=s {
        let g = filt.group(&OrderingIndex::Degree(d));
        if !g.is_trivial() {
            let mut space = RowSpace::empty(dim);
            for row in g.basis() {
                space.insert(row);
            }
            classes.insert((d, 1), space);
        }
    }
    type BracketClass = ((usize, usize), Vec<Vec<Rational>>);
    loop {
        let snapshot: Vec<BracketClass> = classes
            .iter()
            .map(|(k, v)| (*k, v.rows().to_vec()))
            .collect();
        let mut grew = false;
        for (i, ((d1, m1), rows1)) in snapshot.iter().enumerate() {
            for ((d2, m2), rows2) in snapshot.iter().skip(i) {
                if d1 + d2 > s {
                    continue;
                }
                let key = (d1 + d2, m1 + m2);
                for a in rows1 {
                    for b in rows2 {
                        let w = algebra.bracket(a, b)?;
                        let entry = classes
                            .entry(key)
                            .or_insert_with(|| RowSpace::empty(dim));
                        if !entry.contains(&w) {
                            entry.insert(&w);
                            grew = true;
                        }
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }

    let span_where = |pred: &dyn Fn(usize, usize) -> bool| -> RowSpace {
        let mut out = RowSpace::empty(dim);
        for ((d, m), space) in &classes {
            if pred(*d, *m) {
                for row in space.rows() {
                    out.insert(row);
                }
            }
        }
        out
    };

    let mut groups = Vec::new();
    for d in 0..=s {
        for r in 0..=d {
            let space = span_where(&|dd, mm| dd > d || (dd == d && mm >= r));
            let sub = Subalgebra::new(Arc::clone(&algebra), space.rows())?;
            groups.push((OrderingIndex::DegreeRank(d, r), sub));
        }
    }
    // (0,0) shares the group of (1,0) by construction; include both
    let filt = Filtration::new(algebra, Flavor::DegreeRank, groups)?;
    filt.ensure_valid()?;
    Ok(filt)
}
