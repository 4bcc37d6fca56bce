//! The Chekhov-Fock map from cartography words to PSL₂(ℝ).
//!
//! `CHF(1) = 1`, `CHF(ρ₀w) = L·CHF(w)` and `CHF(ρ₁w) = X_{z(wε)}·CHF(w)`,
//! with
//!
//! ```text
//! X_a = [[0, -e^{a/2}], [e^{-a/2}, 0]]      L = [[0, 1], [-1, -1]]
//! ```
//!
//! Restricted to the stabilizer of ε the map is a homomorphism; its image is
//! the Fuchsian group of the labeled graph. When every shear is zero all
//! matrices are integral and evaluation is exact.

mod mobius;
mod psl2z;

use thiserror::Error;
use twofloat::TwoFloat;

use crate::cartography::{borel_face_generators, FaceLoop, Letter, Word};
use crate::ribbon_graph::{DartId, EdgeLabeling, RibbonGraph};

pub use mobius::{ExtendedReal, Mat2, Mobius, Rational, DEFAULT_TOL};
pub use psl2z::{membership_z0, psl2z_to_word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChfError {
    #[error("matrix is not parabolic")]
    NotParabolic,
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(String),
    #[error("matrix has non-integer entries")]
    NonInteger,
}

pub const L_EXACT: Mat2<i128> = Mat2::new(0, 1, -1, -1);
/// `X_0`, the order-two rotation `t ↦ -1/t`.
pub const S_EXACT: Mat2<i128> = Mat2::new(0, -1, 1, 0);

pub fn matrix_l() -> Mobius {
    Mobius::Exact(L_EXACT)
}

/// Edge-crossing matrix for shear `a`; exact for `a = 0`.
pub fn matrix_x(a: f64) -> Mobius {
    if a == 0.0 {
        Mobius::Exact(S_EXACT)
    } else {
        let (up, down) = ((a / 2.0).exp(), (-a / 2.0).exp());
        Mobius::Real(Mat2::new(0.0, -up, down, 0.0))
    }
}

#[inline]
fn l_times<T>(m: &Mat2<T>) -> Mat2<T>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Neg<Output = T>,
{
    Mat2::new(m.c, m.d, -(m.a + m.c), -(m.b + m.d))
}

/// Image of a word under `ρ₀ ↦ L`, `ρ₁ ↦ X_0`. This is `CHF` at `z ≡ 0` on
/// any graph and identifies the cartography group with PSL₂(ℤ).
pub fn modular_image(w: &Word) -> Mobius {
    let mut m = Mat2::<i128>::IDENTITY;
    for &l in w.letters().iter().rev() {
        m = match l {
            Letter::R0 => l_times(&m),
            Letter::R0Sq => l_times(&l_times(&m)),
            Letter::R1 => S_EXACT.mul(&m),
        };
    }
    Mobius::Exact(m)
}

/// Evaluates `CHF(w)` by one right-to-left pass, tracking the dart `w'ε` of
/// every suffix `w'`. Returns the matrix and the final dart `wε`.
///
/// Off `z ≡ 0` the chain is carried in double-double precision and rounded
/// once at the end. Crossings use `[[0, -u], [1/u, 0]]` with `u = e^{a/2}`,
/// so every step has determinant one to working precision and no
/// renormalization (which cancels catastrophically for large entries) is
/// needed.
pub fn chf_trace(w: &Word, g: &RibbonGraph, z: &EdgeLabeling, eps: DartId) -> (Mobius, DartId) {
    if z.is_zero() {
        return (modular_image(w), w.act(g, eps));
    }
    let one = TwoFloat::from(1.0);
    let zero = TwoFloat::from(0.0);
    let mut m = Mat2::new(one, zero, zero, one);
    let mut d = eps;
    for &l in w.letters().iter().rev() {
        match l {
            Letter::R0 => {
                m = l_times(&m);
                d = g.rho0(d);
            }
            Letter::R0Sq => {
                m = l_times(&l_times(&m));
                d = g.rho0(g.rho0(d));
            }
            Letter::R1 => {
                let up = TwoFloat::from((z.at(d) / 2.0).exp());
                let down = one / up;
                m = Mat2::new(-(m.c * up), -(m.d * up), m.a * down, m.b * down);
                d = g.rho1(d);
            }
        }
    }
    (Mobius::Real(m.map(f64::from)), d)
}

pub fn chf_eval(w: &Word, g: &RibbonGraph, z: &EdgeLabeling, eps: DartId) -> Mobius {
    chf_trace(w, g, z, eps).0
}

/// `|trace| = 2` within `tol` (exactly, for integer matrices) and not the
/// identity.
pub fn is_parabolic(m: &Mobius, tol: f64) -> bool {
    match m {
        Mobius::Exact(x) => x.trace().abs() == 2 && !x.is_projective_identity(),
        Mobius::Real(x) => (x.trace().abs() - 2.0).abs() <= tol && !m.is_projective_identity(tol),
    }
}

/// The unique boundary fixed point of a parabolic element.
pub fn parabolic_fixed_point(m: &Mobius) -> Result<ExtendedReal, ChfError> {
    parabolic_fixed_point_tol(m, DEFAULT_TOL)
}

pub fn parabolic_fixed_point_tol(m: &Mobius, tol: f64) -> Result<ExtendedReal, ChfError> {
    if !is_parabolic(m, tol) {
        return Err(ChfError::NotParabolic);
    }
    Ok(match m {
        Mobius::Exact(x) => {
            let x = if x.trace() < 0 { x.negate() } else { *x };
            if x.c == 0 {
                ExtendedReal::Infinity
            } else {
                ExtendedReal::Rational(Rational::new(x.a - x.d, 2 * x.c))
            }
        }
        Mobius::Real(x) => {
            let x = if x.trace() < 0.0 { x.negate() } else { *x };
            let scale = x.entries().iter().fold(1.0f64, |s, v| s.max(v.abs()));
            if x.c.abs() <= tol * scale {
                ExtendedReal::Infinity
            } else {
                ExtendedReal::Real((x.a - x.d) / (2.0 * x.c))
            }
        }
    })
}

impl Mobius {
    pub fn parabolic_fixed_point(&self) -> Result<ExtendedReal, ChfError> {
        parabolic_fixed_point(self)
    }
}

/// Sum of the shears along a face cycle; an edge met twice counts twice.
pub fn face_shear_sum(z: &EdgeLabeling, face: &[DartId]) -> f64 {
    face.iter().map(|&d| z.at(d)).sum()
}

/// A generator of the Fuchsian group together with the face it winds around.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub face_loop: FaceLoop,
    pub matrix: Mobius,
}

impl Generator {
    pub fn word(&self) -> &Word {
        &self.face_loop.word
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianGenerators {
    pub generators: Vec<Generator>,
    /// Whether the underlying words satisfy `γ_n ⋯ γ_1 = 1`.
    pub relation: bool,
}

impl FuchsianGenerators {
    /// `γ_n ⋯ γ_2 γ_1`.
    pub fn ordered_product(&self) -> Mobius {
        self.generators
            .iter()
            .fold(Mobius::IDENTITY, |acc, g| g.matrix.mul(&acc))
    }

    pub fn matrices(&self) -> impl Iterator<Item = &Mobius> {
        self.generators.iter().map(|g| &g.matrix)
    }

    /// Tolerance for comparing [`Self::ordered_product`] with the identity.
    /// Each rounded generator is off by about `ε‖γᵢ‖`, which the product
    /// amplifies to `ε·∏‖γᵢ‖`; below that the comparison means nothing.
    /// Zero for exact generators.
    pub fn product_tolerance(&self, tol: f64) -> f64 {
        if self.matrices().all(Mobius::is_exact) {
            return 0.0;
        }
        let size = |m: &Mobius| {
            m.to_real()
                .entries()
                .iter()
                .fold(1.0f64, |s, x| s.max(x.abs()))
        };
        let cond: f64 = self.matrices().map(size).product();
        tol.max(8.0 * f64::EPSILON * cond)
    }

    /// `γ_n ⋯ γ_1 = 1` within [`Self::product_tolerance`].
    pub fn product_is_identity(&self, tol: f64) -> bool {
        self.ordered_product()
            .is_projective_identity(self.product_tolerance(tol))
    }
}

/// `CHF` of every face generator, in the order of
/// [`borel_face_generators`].
pub fn fuchsian_generators(g: &RibbonGraph, z: &EdgeLabeling, eps: DartId) -> FuchsianGenerators {
    let faces = borel_face_generators(g, eps);
    let generators = faces
        .loops
        .into_iter()
        .map(|face_loop| Generator {
            matrix: chf_eval(&face_loop.word, g, z, eps),
            face_loop,
        })
        .collect();
    FuchsianGenerators {
        generators,
        relation: faces.relation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon_graph::builtin;

    fn exact(a: i128, b: i128, c: i128, d: i128) -> Mobius {
        Mobius::Exact(Mat2::new(a, b, c, d))
    }

    #[test]
    fn base_matrices() {
        assert_eq!(matrix_x(0.0), exact(0, -1, 1, 0));
        let l = matrix_l();
        assert_eq!(l.mul(&l).mul(&l), Mobius::IDENTITY);
        for a in [-1.5, 0.0, 0.3, 2.0] {
            let x = matrix_x(a);
            assert!((x.det() - 1.0).abs() < 1e-15);
            let sq = x.mul(&x);
            assert!(sq.is_projective_identity(1e-15), "{sq}");
            // X_a^2 is -I, not +I
            assert!((sq.to_real().a + 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn chf_of_short_words() {
        let g = builtin("theta").unwrap();
        let eps = g.base();
        let z = crate::EdgeLabeling::from_edge_values(&g, vec![0.25, -0.5, 1.0]);
        assert!(chf_eval(&Word::identity(), &g, &z, eps).is_projective_identity(0.0));
        let x = chf_eval(&Word::letter(Letter::R1), &g, &z, eps);
        assert!(x.projective_eq(&matrix_x(z.at(eps)), 1e-15));
        assert_eq!(z.at(eps), -0.5);
    }

    #[test]
    fn theta_face_word_gives_first_published_matrix() {
        // (X_0 L^2)^2 = (1 0 / 2 1)
        let r = matrix_l().mul(&matrix_l());
        let xr = matrix_x(0.0).mul(&r);
        assert_eq!(xr.mul(&xr), exact(1, 0, 2, 1));
        let g = builtin("theta").unwrap();
        let w: Word = "r1·r0^2·r1·r0^2".parse().unwrap();
        assert_eq!(
            chf_eval(&w, &g, &EdgeLabeling::zero(&g), g.base()),
            exact(1, 0, 2, 1)
        );
    }

    #[test]
    fn parabolicity() {
        assert!(is_parabolic(&exact(1, 1, 0, 1), 0.0));
        assert!(!is_parabolic(&exact(2, 1, 1, 1), 0.0));
        assert!(is_parabolic(&exact(5, -4, 4, -3), 0.0));
        assert!(!is_parabolic(&Mobius::IDENTITY, 0.0));
        assert!(!is_parabolic(&exact(-1, 0, 0, -1), 0.0));
        let near = Mobius::Real(Mat2::new(1.0 + 1e-12, 1.0, 0.0, 1.0 / (1.0 + 1e-12)));
        assert!(is_parabolic(&near, DEFAULT_TOL));
    }

    #[test]
    fn fixed_points() {
        let q = |n, d| ExtendedReal::Rational(Rational::new(n, d));
        assert_eq!(parabolic_fixed_point(&exact(1, 0, 2, 1)), Ok(q(0, 1)));
        assert_eq!(
            parabolic_fixed_point(&exact(1, -2, 0, 1)),
            Ok(ExtendedReal::Infinity)
        );
        assert_eq!(parabolic_fixed_point(&exact(7, 16, -4, -9)), Ok(q(-2, 1)));
        assert_eq!(parabolic_fixed_point(&exact(7, 4, -16, -9)), Ok(q(-1, 2)));
        assert_eq!(
            parabolic_fixed_point(&exact(2, 1, 1, 1)),
            Err(ChfError::NotParabolic)
        );
        let real = Mobius::Real(Mat2::new(-1.0, -2.0, 2.0, 3.0));
        assert_eq!(parabolic_fixed_point(&real), Ok(ExtendedReal::Real(-1.0)));
    }

    #[test]
    fn face_sums_follow_edges() {
        let g = builtin("tetrahedron").unwrap();
        let z = EdgeLabeling::from_edge_values(&g, vec![1.0, 10.0, 100.0, 1e3, 1e4, 1e5]);
        let mut sums: Vec<f64> = g.faces().iter().map(|f| face_shear_sum(&z, f)).collect();
        sums.sort_by(f64::total_cmp);
        // a+e+c, b+d+c, a+f+b, e+f+d
        let mut expect = vec![10101.0, 1110.0, 100011.0, 111000.0];
        expect.sort_by(f64::total_cmp);
        assert_eq!(sums, expect);
        assert!(g
            .faces()
            .iter()
            .all(|f| face_shear_sum(&EdgeLabeling::zero(&g), f) == 0.0));
    }

    #[test]
    fn theta_generator_matrices() {
        let g = builtin("theta").unwrap();
        let gens = fuchsian_generators(&g, &EdgeLabeling::zero(&g), g.base());
        let got: Vec<Mobius> = gens.matrices().copied().collect();
        assert_eq!(
            got,
            [exact(1, 0, 2, 1), exact(1, -2, 0, 1), exact(-1, -2, 2, 3)]
        );
        assert!(gens.relation);
        assert!(gens.ordered_product().is_projective_identity(0.0));
    }

    #[test]
    fn trace_is_twice_cosh_of_half_shear_sum() {
        // trace(X_b L^2 X_c L^2) = 2 cosh((b + c) / 2)
        let g = builtin("theta").unwrap();
        let z = EdgeLabeling::from_edge_values(&g, vec![0.7, -1.3, 0.4]);
        let gens = fuchsian_generators(&g, &z, g.base());
        for gen in &gens.generators {
            let s = face_shear_sum(&z, &gen.face_loop.face);
            let expect = 2.0 * (s / 2.0).cosh();
            assert!((gen.matrix.trace().abs() - expect).abs() < 1e-12);
        }
        assert!(gens.ordered_product().is_projective_identity(1e-12));
    }
}
