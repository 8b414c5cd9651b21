use crate::characters::VerticalCharacter;
use crate::observe::phase_rational;
use crate::partition::{labels_from_index, piece_count, walk_blocks};
use crate::{NilError, Nilmanifold};
use filtration::Flavor;
use lie_core::{GroupElement, Rational};
use num_complex::Complex64;
use num_traits::Zero;

/// A nilcharacter: a vector-valued function on G/Γ of pointwise unit 2-norm
/// that transforms by e(η(·)) under the bottom central subgroup. Coordinates
/// are base partition pieces times the fiber phase e(ξ·ψ_fiber) read off the
/// window-adjusted representative.
pub struct Nilcharacter {
    manifold: Nilmanifold,
    frequency: VerticalCharacter,
    two_k: u32,
    pieces: u64,
}

/// Builds the nilcharacter with frequency η on the bottom group of a degree
/// filtration. The base partition uses window width 1/2 (two bumps per half,
/// 4 labels per base coordinate), so the output dimension is
/// 4^(dim G - dim G_s).
pub fn make_nilcharacter(
    m: &Nilmanifold,
    eta: &VerticalCharacter,
) -> Result<Nilcharacter, NilError> {
    if m.filtration().flavor() != Flavor::Degree {
        return Err(NilError::Precondition(
            "nilcharacters need a degree filtration".into(),
        ));
    }
    if *eta.subgroup().ambient().as_ref() != *m.algebra().as_ref()
        || !eta.subgroup().space().same_space(m.bottom().space())
    {
        return Err(NilError::BadCharacter(
            "frequency must live on the bottom filtration group".into(),
        ));
    }
    let two_k = 4;
    let base_len = m.dim() - m.bottom().dim();
    let pieces = piece_count(base_len, two_k)?;
    Ok(Nilcharacter {
        manifold: m.clone(),
        frequency: eta.clone(),
        two_k,
        pieces,
    })
}

impl Nilcharacter {
    pub fn manifold(&self) -> &Nilmanifold {
        &self.manifold
    }

    pub fn frequency(&self) -> &VerticalCharacter {
        &self.frequency
    }

    pub fn output_dim(&self) -> usize {
        self.pieces as usize
    }

    fn base_blocks(&self) -> &[Vec<usize>] {
        let blocks = self.manifold.blocks();
        &blocks[..blocks.len() - 1]
    }

    fn base_positions(&self) -> Vec<usize> {
        self.base_blocks().iter().flatten().copied().collect()
    }

    /// ξ paired with the fiber coordinates of the window-adjusted
    /// representative h.
    fn fiber_phase(&self, h: &GroupElement<Rational>) -> Result<Complex64, NilError> {
        let u = self.manifold.psi(h)?;
        let dim = self.manifold.dim();
        let mut fiber = vec![Rational::zero(); dim];
        for &p in self.manifold.blocks().last().expect("nonempty chain") {
            fiber[self.manifold.order()[p]] = u[p].clone();
        }
        Ok(phase_rational(&self.frequency.pair_log(&fiber)?))
    }

    pub fn eval(&self, g: &GroupElement<Rational>) -> Result<Vec<Complex64>, NilError> {
        let positions = self.base_positions();
        let mut out = vec![Complex64::zero(); self.pieces as usize];
        for (idx, slot) in out.iter_mut().enumerate() {
            let labels =
                labels_from_index(self.manifold.dim(), &positions, self.two_k, idx as u64);
            if let Some((value, h)) =
                walk_blocks(&self.manifold, &labels, self.base_blocks(), self.two_k, g)?
            {
                *slot = self.fiber_phase(&h)? * value;
            }
        }
        Ok(out)
    }

    /// Pointwise squared 2-norm; equals 1 up to float rounding.
    pub fn norm_sq(&self, g: &GroupElement<Rational>) -> Result<f64, NilError> {
        Ok(self.eval(g)?.iter().map(|c| c.norm_sqr()).sum())
    }

    /// Trace of χ ⊗ χ̄ at g, i.e. Σ_j χ_j(g)·conj(χ_j(g)); the constant 1 up
    /// to float rounding.
    pub fn conjugate_trace(&self, g: &GroupElement<Rational>) -> Result<Complex64, NilError> {
        let values = self.eval(g)?;
        Ok(values.iter().map(|c| c * c.conj()).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{heisenberg_manifold, torus};
    use lie_core::rat;
    use lie_core::rng::SplitMix64;

    #[test]
    fn zero_frequency_on_the_torus_is_the_constant_one() {
        let m = torus(1);
        let eta = VerticalCharacter::zero(&m, m.bottom().clone()).unwrap();
        let chi = make_nilcharacter(&m, &eta).unwrap();
        assert_eq!(chi.output_dim(), 1);
        for num in [-3i64, 0, 2, 7] {
            let g = m.from_psi(&[rat(num, 5)]).unwrap();
            let values = chi.eval(&g).unwrap();
            assert_eq!(values, vec![Complex64::new(1.0, 0.0)]);
        }
    }

    #[test]
    fn unit_frequency_on_the_line_is_the_exponential() {
        let m = torus(1);
        let eta = VerticalCharacter::new(&m, m.bottom().clone(), vec![1]).unwrap();
        let chi = make_nilcharacter(&m, &eta).unwrap();
        let g = m.from_psi(&[rat(3, 10)]).unwrap();
        let got = chi.eval(&g).unwrap()[0];
        let want = phase_rational(&rat(3, 10));
        assert!((got - want).norm() < 1e-15);
        // F(t + x) = e(t) F(x) for the full central group
        let shift = m.from_psi(&[rat(7, 16)]).unwrap();
        let shifted = chi.eval(&shift.mul(&g).unwrap()).unwrap()[0];
        let factor = phase_rational(&rat(7, 16));
        assert!((shifted - factor * got).norm() < 1e-15);
    }

    #[test]
    fn heisenberg_unit_frequency_has_sixteen_unit_norm_coordinates() {
        let m = heisenberg_manifold();
        let eta = VerticalCharacter::new(&m, m.bottom().clone(), vec![1]).unwrap();
        let chi = make_nilcharacter(&m, &eta).unwrap();
        assert_eq!(chi.output_dim(), 16);
        let mut rng = SplitMix64::new(2024);
        for _ in 0..50 {
            let u: Vec<Rational> = (0..3).map(|_| rng.next_rational(9, 14)).collect();
            let g = m.from_psi(&u).unwrap();
            assert!((chi.norm_sq(&g).unwrap() - 1.0).abs() < 1e-9);
            let trace = chi.conjugate_trace(&g).unwrap();
            assert!((trace - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn central_shifts_multiply_by_the_frequency_phase() {
        let m = heisenberg_manifold();
        let eta = VerticalCharacter::new(&m, m.bottom().clone(), vec![1]).unwrap();
        let chi = make_nilcharacter(&m, &eta).unwrap();
        let mut rng = SplitMix64::new(4096);
        for _ in 0..200 {
            let u: Vec<Rational> = (0..3).map(|_| rng.next_rational(9, 14)).collect();
            let x = m.from_psi(&u).unwrap();
            let t = rng.next_rational(6, 10);
            let shift = eta.element(&[t.clone()]).unwrap();
            let factor = phase_rational(&eta.pair(&shift).unwrap());
            let lhs = chi.eval(&shift.mul(&x).unwrap()).unwrap();
            let rhs = chi.eval(&x).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                assert!((a - factor * b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn frequencies_on_other_subgroups_are_rejected() {
        let m = heisenberg_manifold();
        let eta = VerticalCharacter::zero(&torus(1), torus(1).bottom().clone());
        assert!(eta.is_ok());
        let full = VerticalCharacter::zero(&torus(3), torus(3).bottom().clone()).unwrap();
        assert!(make_nilcharacter(&m, &full).is_err());
    }
}
