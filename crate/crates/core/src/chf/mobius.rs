use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use twofloat::TwoFloat;

pub type Rational = Ratio<i128>;

/// Default tolerance for projective comparison and trace tests in float mode.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Mat2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }
}

impl<T: Copy> Mat2<T> {
    pub fn entries(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> Mat2<U> {
        Mat2::new(f(self.a), f(self.b), f(self.c), f(self.d))
    }
}

impl<T> Mat2<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn trace(&self) -> T {
        self.a + self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn negate(&self) -> Self {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mat2<i128> {
    pub const IDENTITY: Self = Mat2::new(1, 0, 0, 1);

    pub fn det(&self) -> i128 {
        checked(
            self.a
                .checked_mul(self.d)
                .and_then(|x| self.b.checked_mul(self.c).and_then(|y| x.checked_sub(y))),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let dot = |x: i128, y: i128, z: i128, w: i128| {
            checked(
                x.checked_mul(y)
                    .and_then(|p| z.checked_mul(w).and_then(|q| p.checked_add(q))),
            )
        };
        Mat2::new(
            dot(self.a, o.a, self.b, o.c),
            dot(self.a, o.b, self.b, o.d),
            dot(self.c, o.a, self.d, o.c),
            dot(self.c, o.b, self.d, o.d),
        )
    }

    /// Representative with `c > 0`, or `c = 0` and `a > 0`.
    pub fn sign_normalized(&self) -> Self {
        if self.c < 0 || (self.c == 0 && self.a < 0) {
            self.negate()
        } else {
            *self
        }
    }

    pub fn projective_eq(&self, o: &Self) -> bool {
        self == o || *self == o.negate()
    }

    pub fn is_projective_identity(&self) -> bool {
        self.projective_eq(&Self::IDENTITY)
    }

    pub fn to_real(&self) -> Mat2<f64> {
        self.map(|x| x as f64)
    }
}

#[track_caller]
fn checked(x: Option<i128>) -> i128 {
    x.expect("integer matrix entry overflowed i128")
}

impl Mat2<f64> {
    pub const IDENTITY: Self = Mat2::new(1.0, 0.0, 0.0, 1.0);

    /// `ad - bc` with a compensated product difference.
    pub fn det(&self) -> f64 {
        let w = self.b * self.c;
        let err = (-self.b).mul_add(self.c, w);
        self.a.mul_add(self.d, -w) + err
    }

    /// Product with each entry `xy + zw` rounded once.
    pub fn mul(&self, o: &Self) -> Self {
        let dot = |x: f64, y: f64, z: f64, w: f64| {
            f64::from(TwoFloat::new_mul(x, y) + TwoFloat::new_mul(z, w))
        };
        Mat2::new(
            dot(self.a, o.a, self.b, o.c),
            dot(self.a, o.b, self.b, o.d),
            dot(self.c, o.a, self.d, o.c),
            dot(self.c, o.b, self.d, o.d),
        )
    }

    fn scale(&self) -> f64 {
        self.entries().iter().fold(1.0f64, |m, x| m.max(x.abs()))
    }

    /// Largest entrywise difference up to sign, relative to the size of the
    /// larger matrix (never below 1).
    pub fn projective_distance(&self, o: &Self) -> f64 {
        let scale = self.scale().max(o.scale());
        let err = |s: f64| {
            self.entries()
                .iter()
                .zip(o.entries())
                .fold(0.0f64, |m, (x, y)| m.max((x - s * y).abs()))
        };
        err(1.0).min(err(-1.0)) / scale
    }

    pub fn projective_eq(&self, o: &Self, tol: f64) -> bool {
        self.projective_distance(o) <= tol
    }
}

/// An element of PSL₂(ℝ), exact when all entries are integers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mobius {
    Exact(Mat2<i128>),
    Real(Mat2<f64>),
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius::Exact(Mat2::<i128>::IDENTITY);

    pub fn is_exact(&self) -> bool {
        matches!(self, Mobius::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Mat2<i128>> {
        match self {
            Mobius::Exact(m) => Some(m),
            Mobius::Real(_) => None,
        }
    }

    pub fn to_real(&self) -> Mat2<f64> {
        match self {
            Mobius::Exact(m) => m.to_real(),
            Mobius::Real(m) => *m,
        }
    }

    /// Exact integer matrix if every entry is an integer (float entries are
    /// accepted when they are integral and in range).
    pub fn to_integer(&self) -> Option<Mat2<i128>> {
        match self {
            Mobius::Exact(m) => Some(*m),
            Mobius::Real(m) => {
                let conv = |x: f64| (x.fract() == 0.0 && x.abs() < 1e30).then_some(x as i128);
                Some(Mat2::new(conv(m.a)?, conv(m.b)?, conv(m.c)?, conv(m.d)?))
            }
        }
    }

    pub fn mul(&self, o: &Mobius) -> Mobius {
        match (self, o) {
            (Mobius::Exact(x), Mobius::Exact(y)) => Mobius::Exact(x.mul(y)),
            _ => Mobius::Real(self.to_real().mul(&o.to_real())),
        }
    }

    pub fn inverse(&self) -> Mobius {
        match self {
            Mobius::Exact(m) => Mobius::Exact(m.adjugate()),
            Mobius::Real(m) => Mobius::Real(m.adjugate()),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            Mobius::Exact(m) => m.trace() as f64,
            Mobius::Real(m) => m.trace(),
        }
    }

    pub fn det(&self) -> f64 {
        match self {
            Mobius::Exact(m) => m.det() as f64,
            Mobius::Real(m) => m.det(),
        }
    }

    /// Equality in PSL₂: exact when both sides are exact, otherwise within
    /// `tol` relative to the entry size.
    pub fn projective_eq(&self, o: &Mobius, tol: f64) -> bool {
        match (self, o) {
            (Mobius::Exact(x), Mobius::Exact(y)) => x.projective_eq(y),
            _ => self.to_real().projective_eq(&o.to_real(), tol),
        }
    }

    pub fn is_projective_identity(&self, tol: f64) -> bool {
        self.projective_eq(&Mobius::IDENTITY, tol)
    }

    /// Möbius action on the boundary `ℝ ∪ {∞}`.
    pub fn apply(&self, x: &ExtendedReal) -> ExtendedReal {
        match (self, x) {
            (Mobius::Exact(m), ExtendedReal::Rational(q)) => {
                let num = Rational::from(m.a) * q + m.b;
                let den = Rational::from(m.c) * q + m.d;
                if den == Rational::from(0) {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Rational(num / den)
                }
            }
            (Mobius::Exact(m), ExtendedReal::Infinity) => {
                if m.c == 0 {
                    ExtendedReal::Infinity
                } else {
                    ExtendedReal::Rational(Rational::new(m.a, m.c))
                }
            }
            (m, x) => {
                let m = m.to_real();
                match x.to_f64() {
                    None => {
                        if m.c == 0.0 {
                            ExtendedReal::Infinity
                        } else {
                            ExtendedReal::Real(m.a / m.c)
                        }
                    }
                    Some(t) => {
                        let den = m.c * t + m.d;
                        if den == 0.0 {
                            ExtendedReal::Infinity
                        } else {
                            ExtendedReal::Real((m.a * t + m.b) / den)
                        }
                    }
                }
            }
        }
    }
}

impl From<Mat2<i128>> for Mobius {
    fn from(m: Mat2<i128>) -> Self {
        Mobius::Exact(m)
    }
}

impl From<Mat2<f64>> for Mobius {
    fn from(m: Mat2<f64>) -> Self {
        Mobius::Real(m)
    }
}

impl fmt::Display for Mobius {
    /// `[[a,b],[c,d]]`, shortest round-trip decimals in float mode.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mobius::Exact(m) => write!(f, "[[{},{}],[{},{}]]", m.a, m.b, m.c, m.d),
            Mobius::Real(m) => write!(f, "[[{},{}],[{},{}]]", m.a, m.b, m.c, m.d),
        }
    }
}

/// A point of `ℝ ∪ {∞}`: exact rational, floating real, or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Rational(Rational),
    Real(f64),
    Infinity,
}

impl ExtendedReal {
    pub fn integer(n: i128) -> Self {
        ExtendedReal::Rational(Rational::from(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinity)
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            ExtendedReal::Rational(q) => Some(*q.numer() as f64 / *q.denom() as f64),
            ExtendedReal::Real(x) => Some(*x),
            ExtendedReal::Infinity => None,
        }
    }

    /// `(p, q)` in lowest terms with `q ≥ 0`; infinity is `(1, 0)`.
    pub fn as_fraction(&self) -> Option<(i128, i128)> {
        match self {
            ExtendedReal::Rational(q) => Some((*q.numer(), *q.denom())),
            ExtendedReal::Infinity => Some((1, 0)),
            ExtendedReal::Real(_) => None,
        }
    }

    /// Total order on the boundary circle cut at `∞`: finite points in
    /// increasing order, then infinity.
    pub fn line_cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ExtendedReal::Infinity, ExtendedReal::Infinity) => Ordering::Equal,
            (ExtendedReal::Infinity, _) => Ordering::Greater,
            (_, ExtendedReal::Infinity) => Ordering::Less,
            (ExtendedReal::Rational(x), ExtendedReal::Rational(y)) => x.cmp(y),
            (x, y) => x.to_f64().unwrap().total_cmp(&y.to_f64().unwrap()),
        }
    }

    /// Compares `x` and `y` by their position on the boundary circle when it
    /// is traversed from `self` towards `+∞`, wrapping through `-∞`.
    pub fn cyclic_cmp(&self, x: &Self, y: &Self) -> Ordering {
        let key = |p: &Self| -> u8 {
            if p.line_cmp(self) == Ordering::Equal {
                0
            } else if p.line_cmp(self) == Ordering::Greater {
                1
            } else {
                2
            }
        };
        key(x).cmp(&key(y)).then_with(|| x.line_cmp(y))
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Rational(q) if *q.denom() == 1 => write!(f, "{}", q.numer()),
            ExtendedReal::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            ExtendedReal::Real(x) => write!(f, "{x}"),
            ExtendedReal::Infinity => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_determinant() {
        // (1e8+1)(1e8-1) is not representable; the naive difference gives 0
        let m = Mat2::new(1e8 + 1.0, 1e8, 1e8, 1e8 - 1.0);
        assert_eq!(m.det(), -1.0);
    }

    #[test]
    fn exact_apply() {
        let t = Mobius::Exact(Mat2::new(1, 1, 0, 1));
        assert_eq!(t.apply(&ExtendedReal::integer(3)), ExtendedReal::integer(4));
        assert_eq!(t.apply(&ExtendedReal::Infinity), ExtendedReal::Infinity);
        let s = Mobius::Exact(Mat2::new(0, -1, 1, 0));
        assert_eq!(s.apply(&ExtendedReal::integer(0)), ExtendedReal::Infinity);
        assert_eq!(s.apply(&ExtendedReal::Infinity), ExtendedReal::integer(0));
        assert_eq!(
            s.apply(&ExtendedReal::integer(2)),
            ExtendedReal::Rational(Rational::new(-1, 2))
        );
    }

    #[test]
    fn projective_comparison_ignores_sign() {
        let m = Mat2::new(1i128, 2, 3, 7);
        assert!(m.projective_eq(&m.negate()));
        let r = Mobius::Real(m.to_real().negate());
        assert!(r.projective_eq(&Mobius::Exact(m), DEFAULT_TOL));
        let off = Mobius::Real(Mat2::new(1.0, 2.0, 3.0, 7.0 + 1e-6));
        assert!(!off.projective_eq(&Mobius::Exact(m), DEFAULT_TOL));
    }

    #[test]
    fn cyclic_order_from_zero() {
        let pts = [
            ExtendedReal::Infinity,
            ExtendedReal::integer(-2),
            ExtendedReal::Rational(Rational::new(-1, 2)),
            ExtendedReal::integer(1),
            ExtendedReal::integer(0),
            ExtendedReal::integer(-1),
        ];
        let start = ExtendedReal::integer(0);
        let mut sorted = pts.to_vec();
        sorted.sort_by(|x, y| start.cyclic_cmp(x, y));
        let shown: Vec<String> = sorted.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["0", "1", "inf", "-2", "-1", "-1/2"]);
    }

    #[test]
    fn display_formats() {
        assert_eq!(
            Mobius::Exact(Mat2::new(1, 0, 2, 1)).to_string(),
            "[[1,0],[2,1]]"
        );
        assert_eq!(
            Mobius::Real(Mat2::new(0.5, 0.0, -2.0, 2.0)).to_string(),
            "[[0.5,0],[-2,2]]"
        );
        assert_eq!(
            ExtendedReal::Rational(Rational::new(-1, 2)).to_string(),
            "-1/2"
        );
    }
}
