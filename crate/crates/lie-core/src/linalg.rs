//! Exact linear algebra over the rationals: row spaces in reduced echelon
//! form, kernels, and small dense solves. Canonical bases everywhere, so two
//! equal subspaces produce identical row matrices.

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

/// A subspace of Q^n held in reduced row echelon form.
///
/// Rows have strictly increasing pivot columns, unit pivots, and zeros above
/// and below each pivot, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn empty(ambient: usize) -> Self {
        RowSpace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<I>(ambient: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut s = RowSpace::empty(ambient);
        for r in rows {
            s.insert(&r);
        }
        s
    }

    pub fn full(ambient: usize) -> Self {
        let mut rows = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut r = vec![Rational::zero(); ambient];
            r[i] = Rational::one();
            rows.push(r);
        }
        RowSpace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// Residual of v after eliminating every pivot coordinate.
    /// Zero iff v lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector/ambient dimension mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = &*wi - &(&c * ri);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds v to the span. Returns true when the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = w[p].clone();
        let w: Vec<Rational> = w.into_iter().map(|x| x / &lead).collect();
        // w is already clear at every existing pivot; clear column p in the
        // existing rows and splice the new row in pivot order
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (ri, wi) in row.iter_mut().zip(&w) {
                    *ri = &*ri - &(&c * wi);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_space(&self, other: &RowSpace) -> bool {
        // canonical form makes this structural equality
        self == other
    }

    /// Span of the union.
    pub fn join(&self, other: &RowSpace) -> RowSpace {
        let mut s = self.clone();
        for r in other.rows() {
            s.insert(r);
        }
        s
    }

    /// Intersection of two row spaces.
    pub fn intersect(&self, other: &RowSpace) -> RowSpace {
        // x = a·A = b·B  <=>  (a, b) in kernel of [A^T | -B^T]
        let n = self.ambient;
        let ka = self.dim();
        let kb = other.dim();
        if ka == 0 || kb == 0 {
            return RowSpace::empty(n);
        }
        let mut m = Vec::with_capacity(n);
        for col in 0..n {
            let mut row = Vec::with_capacity(ka + kb);
            for r in &self.rows {
                row.push(r[col].clone());
            }
            for r in &other.rows {
                row.push(-r[col].clone());
            }
            m.push(row);
        }
        let null = kernel(&m);
        let mut out = RowSpace::empty(n);
        for combo in null {
            let mut v = vec![Rational::zero(); n];
            for (ci, row) in combo[..ka].iter().zip(&self.rows) {
                if !ci.is_zero() {
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi = &*vi + &(ci * ri);
                    }
                }
            }
            out.insert(&v);
        }
        out
    }

    /// Coordinates of v in this row basis, if v lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = &*wi - &(&c * ri);
                }
            }
            coords.push(c);
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Basis of { x : M x = 0 } for a dense rational matrix (rows of length n).
pub fn kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let n = m[0].len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let t = &f * p;
                    *x = &*x - &t;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for c in 0..n {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = -a[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Exact solve of M x = b (first solution in pivot order), if consistent.
pub fn solve(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    assert_eq!(rows, b.len());
    let n = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &lead;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let t = &f * p;
                    *x = &*x - &t;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    // inconsistent row 0 = nonzero?
    for row in &a {
        if row[..n].iter().all(|x| x.is_zero()) && !row[n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for c in 0..n {
        if let Some(pr) = pivot_of_col[c] {
            x[c] = a[pr][n].clone();
        }
    }
    Some(x)
}

/// Max |entry| as f64, a cheap size proxy for reporting.
pub fn sup_norm_f64(v: &[Rational]) -> f64 {
    v.iter()
        .map(|x| crate::rational::to_f64(&x.abs()))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = RowSpace::from_rows(3, vec![v(&[1, 2, 3]), v(&[2, 4, 7])]);
        let b = RowSpace::from_rows(3, vec![v(&[3, 6, 10]), v(&[1, 2, 4])]);
        assert!(a.same_space(&b));
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(&[0, 0, 1])));
        assert!(!a.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn intersection_and_join() {
        let a = RowSpace::from_rows(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = RowSpace::from_rows(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let cap = a.intersect(&b);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&v(&[0, 1, 0])));
        let cup = a.join(&b);
        assert_eq!(cup.dim(), 3);
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for x in &k {
            let dot: Rational = m[0]
                .iter()
                .zip(x)
                .map(|(a, b)| a * b)
                .fold(rat(0, 1), |acc, t| acc + t);
            assert!(dot.is_zero());
        }
        let sol = solve(&[v(&[2, 0]), v(&[0, 4])], &v(&[1, 2])).unwrap();
        assert_eq!(sol, vec![rat(1, 2), rat(1, 2)]);
        assert!(solve(&[v(&[1, 1]), v(&[1, 1])], &v(&[0, 1])).is_none());
    }

    #[test]
    fn coordinates_in_basis() {
        let a = RowSpace::from_rows(3, vec![v(&[1, 0, 1]), v(&[0, 1, 1])]);
        let c = a.coordinates(&v(&[2, 3, 5])).unwrap();
        assert_eq!(c, vec![rat(2, 1), rat(3, 1)]);
        assert!(a.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
