use crate::{NilError, Nilmanifold};
use filtration::Flavor;
use lie_core::{rat, GroupElement, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

const MAX_PIECES: u64 = 1 << 22;

/// Walks the given depth blocks of the manifold, one bump label per covered
/// position. At each level the block coordinates are shifted by lattice
/// generators into the labeled windows [j/2k, j/2k + 1/k]; the value is the
/// product of bump profiles, and the returned element is the window-adjusted
/// representative whose later coordinates define the next level. Returns
/// None when some coordinate misses its window (the piece vanishes).
pub(crate) fn walk_blocks(
    m: &Nilmanifold,
    labels: &[u32],
    blocks: &[Vec<usize>],
    two_k: u32,
    g: &GroupElement<Rational>,
) -> Result<Option<(f64, GroupElement<Rational>)>, NilError> {
    let mut h = g.clone();
    let mut value = 1.0f64;
    for block in blocks {
        let u = m.psi(&h)?;
        let mut shifts: Vec<(usize, Rational)> = Vec::new();
        for &p in block {
            let j = labels[p] as i64;
            let lo = rat(j, two_k as i64);
            let shift = (u[p].clone() - &lo).floor();
            // position inside the support [j/2k, j/2k + 1/k], scaled to (0, 2):
            // the bump rises as sin(πt/2), then falls as cos(π(t-1)/2), so two
            // adjacent bumps have squares summing to 1
            let t = (u[p].clone() - &shift) * rat(two_k as i64, 1) - rat(j, 1);
            if t <= Rational::zero() || t >= rat(2, 1) {
                return Ok(None);
            }
            value *= if t <= rat(1, 1) {
                (PI * t.to_f64().expect("profile argument") / 2.0).sin()
            } else {
                (PI * (t - rat(1, 1)).to_f64().expect("profile argument") / 2.0).cos()
            };
            if !shift.is_zero() {
                shifts.push((p, shift));
            }
        }
        for (p, s) in shifts {
            h = h.mul(&m.basis_power(p, &-s)?)?;
        }
    }
    Ok(Some((value, h)))
}

pub(crate) fn labels_from_index(
    dim: usize,
    positions: &[usize],
    two_k: u32,
    mut idx: u64,
) -> Vec<u32> {
    let mut labels = vec![0u32; dim];
    for &p in positions.iter().rev() {
        labels[p] = (idx % two_k as u64) as u32 + 1;
        idx /= two_k as u64;
    }
    labels
}

pub(crate) fn piece_count(positions: usize, two_k: u32) -> Result<u64, NilError> {
    let mut total = 1u64;
    for _ in 0..positions {
        total = total
            .checked_mul(two_k as u64)
            .filter(|&t| t <= MAX_PIECES)
            .ok_or_else(|| NilError::BadInput("too many partition pieces".into()))?;
    }
    Ok(total)
}

/// A partition of unity on G/Γ: nonnegative Γ-invariant pieces whose squares
/// sum to 1, each supported in a narrow second-kind coordinate box.
#[derive(Clone)]
pub struct Partition {
    manifold: Nilmanifold,
    two_k: u32,
    pieces: u64,
}

/// Builds the level-by-level bump partition with 2k bumps per coordinate,
/// k = ceil(1/(2ε)), so every piece is supported in a box of width
/// 1/k ≤ 2ε. Requires a degree filtration and ε ∈ (0, 1/2).
pub fn partition_of_unity(m: &Nilmanifold, epsilon: f64) -> Result<Partition, NilError> {
    if m.filtration().flavor() != Flavor::Degree {
        return Err(NilError::Precondition(
            "partition of unity needs a degree filtration".into(),
        ));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(NilError::BadInput(format!(
            "width parameter {epsilon} outside (0, 1/2)"
        )));
    }
    let k = (1.0 / (2.0 * epsilon)).ceil().max(1.0) as u32;
    let two_k = 2 * k;
    let pieces = piece_count(m.dim(), two_k)?;
    Ok(Partition {
        manifold: m.clone(),
        two_k,
        pieces,
    })
}

impl Partition {
    pub fn len(&self) -> usize {
        self.pieces as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Bumps per coordinate (2k).
    pub fn bumps_per_coordinate(&self) -> u32 {
        self.two_k
    }

    /// 1-based bump label per position; label j is supported in
    /// [j/2k, j/2k + 1/k] mod 1.
    pub fn labels(&self, idx: u64) -> Vec<u32> {
        let d = self.manifold.dim();
        let positions: Vec<usize> = (0..d).collect();
        labels_from_index(d, &positions, self.two_k, idx)
    }

    /// The support window (lo, hi) of each coordinate of a piece, in the
    /// window-adjusted second-kind chart.
    pub fn support_box(&self, idx: u64) -> Vec<(Rational, Rational)> {
        self.labels(idx)
            .iter()
            .map(|&j| {
                let lo = rat(j as i64, self.two_k as i64);
                let hi = lo.clone() + rat(2, self.two_k as i64);
                (lo, hi)
            })
            .collect()
    }

    pub fn eval_piece(&self, idx: u64, g: &GroupElement<Rational>) -> Result<f64, NilError> {
        Ok(self.eval_piece_window(idx, g)?.map_or(0.0, |(v, _)| v))
    }

    /// Value together with the window-adjusted coordinates witnessing the
    /// support box, or None when the piece vanishes at g.
    pub fn eval_piece_window(
        &self,
        idx: u64,
        g: &GroupElement<Rational>,
    ) -> Result<Option<(f64, Vec<Rational>)>, NilError> {
        if idx >= self.pieces {
            return Err(NilError::BadInput(format!("no piece {idx}")));
        }
        let labels = self.labels(idx);
        match walk_blocks(
            &self.manifold,
            &labels,
            self.manifold.blocks(),
            self.two_k,
            g,
        )? {
            None => Ok(None),
            Some((value, h)) => Ok(Some((value, self.manifold.psi(&h)?))),
        }
    }

    /// All pieces that are nonzero at g, found by walking only the covering
    /// bumps (at most two per coordinate), so the cost is the overlap count
    /// rather than the piece count.
    pub fn eval_nonzero(
        &self,
        g: &GroupElement<Rational>,
    ) -> Result<Vec<(u64, f64)>, NilError> {
        let mut out = Vec::new();
        self.walk_nonzero(0, g.clone(), 1.0, 0, &mut out)?;
        out.sort_by_key(|&(idx, _)| idx);
        Ok(out)
    }

    fn walk_nonzero(
        &self,
        block_idx: usize,
        h: GroupElement<Rational>,
        value: f64,
        partial_index: u64,
        out: &mut Vec<(u64, f64)>,
    ) -> Result<(), NilError> {
        let blocks = self.manifold.blocks();
        if block_idx == blocks.len() {
            out.push((partial_index, value));
            return Ok(());
        }
        let block = &blocks[block_idx];
        let u = self.manifold.psi(&h)?;
        let two_k = self.two_k as i64;
        // per position: the one or two covering bumps as (label, profile value, shift)
        let mut options: Vec<Vec<(u32, f64, BigInt)>> = Vec::with_capacity(block.len());
        for &p in block {
            let scaled = u[p].clone() * rat(two_k, 1);
            let i = scaled.floor().to_integer();
            let theta = (scaled - Rational::from(i.clone())).to_f64().expect("fraction");
            let mut opts = Vec::with_capacity(2);
            // label ≡ i - 1 (mod 2k): falling branch, value cos(πθ/2)
            let j_cos = label_congruent(&(i.clone() - 1), two_k);
            let shift_cos: BigInt = (i.clone() - 1 - BigInt::from(j_cos as i64)) / BigInt::from(two_k);
            opts.push((j_cos, (PI * theta / 2.0).cos(), shift_cos));
            if theta > 0.0 {
                // label ≡ i (mod 2k): rising branch, value sin(πθ/2)
                let j_sin = label_congruent(&i, two_k);
                let shift_sin: BigInt = (i - BigInt::from(j_sin as i64)) / BigInt::from(two_k);
                opts.push((j_sin, (PI * theta / 2.0).sin(), shift_sin));
            }
            options.push(opts);
        }
        let mut choice = vec![0usize; block.len()];
        loop {
            let mut val = value;
            let mut adjusted = h.clone();
            let mut idx = partial_index;
            for (slot, &p) in block.iter().enumerate() {
                let (label, profile, ref shift) = options[slot][choice[slot]];
                val *= profile;
                idx = idx * self.two_k as u64 + (label as u64 - 1);
                if !shift.is_zero() {
                    let s = Rational::from(shift.clone());
                    adjusted = adjusted.mul(&self.manifold.basis_power(p, &-s)?)?;
                }
            }
            self.walk_nonzero(block_idx + 1, adjusted, val, idx, out)?;
            let mut slot = 0;
            loop {
                if slot == choice.len() {
                    return Ok(());
                }
                choice[slot] += 1;
                if choice[slot] < options[slot].len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
        }
    }

    /// Σ_j τ_j(g)². Equals 1 up to float rounding.
    pub fn sum_of_squares(&self, g: &GroupElement<Rational>) -> Result<f64, NilError> {
        Ok(self
            .eval_nonzero(g)?
            .iter()
            .map(|&(_, v)| v * v)
            .sum())
    }
}

fn label_congruent(v: &BigInt, two_k: i64) -> u32 {
    let r = v.mod_floor(&BigInt::from(two_k)).to_u32().expect("residue fits");
    if r == 0 {
        two_k as u32
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{heisenberg_manifold, torus};
    use lie_core::rng::SplitMix64;

    #[test]
    fn four_circle_bumps_square_sum_to_one() {
        let m = torus(1);
        let part = partition_of_unity(&m, 0.25).unwrap();
        assert_eq!(part.len(), 4);
        let x = m.from_psi(&[rat(1, 10)]).unwrap();
        let sum = part.sum_of_squares(&x).unwrap();
        assert!((sum - 1.0).abs() < 1e-12);
        // only the two bumps whose windows contain 0.1 survive
        let nonzero = part.eval_nonzero(&x).unwrap();
        assert_eq!(nonzero.len(), 2);
    }

    #[test]
    fn window_test_is_exact_at_support_boundaries() {
        let m = torus(1);
        let part = partition_of_unity(&m, 0.25).unwrap();
        // ψ = 1/4 is the left endpoint of label 1 and interior for label 4
        let x = m.from_psi(&[rat(1, 4)]).unwrap();
        let labels: Vec<u32> = (0..4).map(|i| part.labels(i)[0]).collect();
        assert_eq!(labels, vec![1, 2, 3, 4]);
        assert_eq!(part.eval_piece(0, &x).unwrap(), 0.0);
        assert!((part.eval_piece(3, &x).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tree_walk_agrees_with_direct_piece_evaluation() {
        let m = heisenberg_manifold();
        let part = partition_of_unity(&m, 0.125).unwrap();
        assert_eq!(part.len(), 512);
        let mut rng = SplitMix64::new(555);
        for _ in 0..25 {
            let u: Vec<Rational> = (0..3).map(|_| rng.next_rational(20, 17)).collect();
            let x = m.from_psi(&u).unwrap();
            let nonzero = part.eval_nonzero(&x).unwrap();
            let mut total = 0.0;
            for &(idx, v) in &nonzero {
                assert_eq!(part.eval_piece(idx, &x).unwrap(), v);
                total += v * v;
            }
            assert!((total - 1.0).abs() < 1e-9);
            assert!(nonzero.len() <= 8);
        }
    }

    #[test]
    fn pieces_are_lattice_invariant() {
        let m = heisenberg_manifold();
        let part = partition_of_unity(&m, 0.125).unwrap();
        let mut rng = SplitMix64::new(777);
        for _ in 0..10 {
            let u: Vec<Rational> = (0..3).map(|_| rng.next_rational(12, 11)).collect();
            let x = m.from_psi(&u).unwrap();
            let gamma = m
                .lattice_element(&[
                    rng.next_i64(-4, 4),
                    rng.next_i64(-4, 4),
                    rng.next_i64(-4, 4),
                ])
                .unwrap();
            let shifted = x.mul(&gamma).unwrap();
            for idx in [0u64, 17, 100, 311, 511] {
                assert_eq!(
                    part.eval_piece(idx, &x).unwrap(),
                    part.eval_piece(idx, &shifted).unwrap()
                );
            }
        }
    }

    #[test]
    fn supports_stay_inside_the_advertised_box() {
        let m = heisenberg_manifold();
        let part = partition_of_unity(&m, 0.125).unwrap();
        let mut rng = SplitMix64::new(888);
        for _ in 0..10 {
            let u: Vec<Rational> = (0..3).map(|_| rng.next_rational(10, 13)).collect();
            let x = m.from_psi(&u).unwrap();
            for (idx, _) in part.eval_nonzero(&x).unwrap() {
                let (_, coords) = part.eval_piece_window(idx, &x).unwrap().unwrap();
                for ((lo, hi), c) in part.support_box(idx).iter().zip(&coords) {
                    assert!(c > lo && c < hi, "coordinate {c} outside ({lo}, {hi})");
                    assert!(hi.clone() - lo <= rat(1, 4), "box wider than 2ε");
                }
            }
        }
    }

    #[test]
    fn out_of_range_widths_are_rejected() {
        let m = torus(1);
        assert!(partition_of_unity(&m, 0.0).is_err());
        assert!(partition_of_unity(&m, 0.5).is_err());
        assert!(partition_of_unity(&m, -0.1).is_err());
    }

    #[test]
    fn fractional_part_of_one_is_zero_in_windows() {
        // ψ = 9/8 and ψ = 1/8 meet the same windows
        let m = torus(1);
        let part = partition_of_unity(&m, 0.125).unwrap();
        let x = m.from_psi(&[rat(9, 8)]).unwrap();
        let y = m.from_psi(&[rat(1, 8)]).unwrap();
        for idx in 0..part.len() as u64 {
            assert_eq!(
                part.eval_piece(idx, &x).unwrap(),
                part.eval_piece(idx, &y).unwrap()
            );
        }
    }
}
