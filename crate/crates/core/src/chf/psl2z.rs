//! Words for elements of PSL₂(ℤ) and membership in the `z ≡ 0` group.

use num_integer::Integer;

use super::{modular_image, ChfError, Mat2, Mobius};
use crate::cartography::{reduce, Letter, Word};
use crate::ribbon_graph::{DartId, RibbonGraph};

/// A reduced word whose image under `ρ₀ ↦ L`, `ρ₁ ↦ X_0` is `m` up to sign.
///
/// Runs the Euclidean algorithm on the first column with `T = (1 1 / 0 1)`
/// and `S = X_0`, then translates through `T ≡ S·L`.
pub fn psl2z_to_word(m: &Mobius) -> Result<Word, ChfError> {
    let m = m.to_integer().ok_or(ChfError::NonInteger)?;
    let det = m.det();
    if det != 1 {
        return Err(ChfError::NotUnimodular(det.to_string()));
    }
    // left multiplications applied so far, as T-powers (Some(k)) or S (None)
    let mut ops: Vec<Option<i128>> = Vec::new();
    let mut x = m;
    while x.c != 0 {
        let q = nearest_quotient(x.a, x.c);
        if q != 0 {
            x = Mat2::new(x.a - q * x.c, x.b - q * x.d, x.c, x.d);
            ops.push(Some(-q));
        }
        x = Mat2::new(-x.c, -x.d, x.a, x.b);
        ops.push(None);
    }
    // x = ±(1 n / 0 1)
    let n = x.a * x.b;

    let mut raw = Vec::new();
    for op in &ops {
        match op {
            None => raw.push(Letter::R1),
            Some(k) => push_t_power(&mut raw, -k),
        }
    }
    push_t_power(&mut raw, n);
    let w = reduce(&raw);
    debug_assert!(modular_image(&w).projective_eq(&Mobius::Exact(m), 0.0));
    Ok(w)
}

/// `q` minimizing `|a - q c|`.
fn nearest_quotient(a: i128, c: i128) -> i128 {
    let (q, r) = a.div_mod_floor(&c);
    if 2 * r.abs() > c.abs() {
        q + c.signum()
    } else {
        q
    }
}

fn push_t_power(raw: &mut Vec<Letter>, k: i128) {
    let step: &[Letter] = if k > 0 {
        &[Letter::R1, Letter::R0]
    } else {
        &[Letter::R0Sq, Letter::R1]
    };
    for _ in 0..k.unsigned_abs() {
        raw.extend_from_slice(step);
    }
}

/// Whether an integer matrix lies in the image of the stabilizer of `eps`
/// at `z ≡ 0`.
pub fn membership_z0(m: &Mobius, g: &RibbonGraph, eps: DartId) -> Result<bool, ChfError> {
    Ok(psl2z_to_word(m)?.act(g, eps) == eps)
}
