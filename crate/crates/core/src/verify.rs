//! Seeded property suites over one graph.
//!
//! Inputs of every suite are drawn sequentially from a ChaCha8 stream seeded
//! by `seed` and the suite's position, then checked with the configured
//! [`Execution`]. A report names the first failing sample so that it can be
//! replayed with the same seed.

use std::fmt;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartography::{compose, compose_all, schreier_generators, Letter, Word};
use crate::chf::{
    chf_eval, chf_trace, face_shear_sum, fuchsian_generators, is_parabolic, matrix_l, matrix_x,
    membership_z0, psl2z_to_word, Mobius,
};
use crate::exec::Execution;
use crate::net::{fundamental_domain, generate_net, IdealTriangle, NetConfig};
use crate::ribbon_graph::{DartId, EdgeLabeling, RibbonGraph};
use crate::shear_system::{parabolic_family, ParabolicFamily};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Samples per suite and labeling mode.
    pub samples: usize,
    pub tol: f64,
    /// Maximum length of the free word in the homomorphism suite.
    pub word_len: usize,
    /// Maximum length of words located in the net.
    pub net_word_len: usize,
    pub net_depth: usize,
    pub farey_depth: usize,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            tol: 1e-9,
            word_len: 20,
            net_word_len: 6,
            net_depth: 6,
            farey_depth: 5,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failure: Option<String>,
    pub seed: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS {} ({} checks, seed {})",
                self.name, self.checks, self.seed
            ),
            Some(why) => write!(f, "FAIL {}: {} (seed {})", self.name, why, self.seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn first_failure(&self) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| !s.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn rng_for(cfg: &VerifyConfig, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A uniformly chosen reduced word of exactly `len` letters.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> Word {
    let mut raw = Vec::with_capacity(len);
    for i in 0..len {
        let l = if i == 0 {
            Letter::ALL[rng.random_range(0..3)]
        } else if raw[i - 1] == Letter::R1 {
            [Letter::R0, Letter::R0Sq][rng.random_range(0..2)]
        } else {
            Letter::R1
        };
        raw.push(l);
    }
    crate::cartography::reduce(&raw)
}

fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> f64 {
    let q = rng.random_range(1..=12i64);
    let p = rng.random_range(-bound * q..=bound * q);
    p as f64 / q as f64
}

/// Shears `p/q` with `|p/q| ≤ 2` and `q ≤ 12`.
pub fn random_labeling<R: Rng>(rng: &mut R, g: &RibbonGraph) -> EdgeLabeling {
    let vals = (0..g.edge_count())
        .map(|_| random_rational(rng, 2))
        .collect();
    EdgeLabeling::from_edge_values(g, vals)
}

/// A random rational point of the parabolic family.
pub fn random_nullspace_labeling<R: Rng>(
    rng: &mut R,
    g: &RibbonGraph,
    family: &ParabolicFamily,
) -> EdgeLabeling {
    let mut vals = vec![0.0; g.edge_count()];
    for v in &family.basis {
        let c = random_rational(rng, 1);
        for (x, q) in vals.iter_mut().zip(v) {
            let q = q.numer().to_f64().unwrap_or(0.0) / q.denom().to_f64().unwrap_or(1.0);
            *x += c * q;
        }
    }
    EdgeLabeling::from_edge_values(g, vals)
}

/// Runs `check` over `inputs` and keeps the first failure in input order.
fn run_suite<T, F>(name: &'static str, cfg: &VerifyConfig, inputs: &[T], check: F) -> SuiteReport
where
    T: Sync,
    F: Fn(&T) -> Result<(), String> + Sync + Send,
{
    let results = cfg.execution.map(inputs, check);
    let failure = results
        .into_iter()
        .enumerate()
        .find_map(|(i, r)| r.err().map(|e| format!("sample {i}: {e}")));
    SuiteReport {
        name,
        checks: inputs.len(),
        failure,
        seed: cfg.seed,
    }
}

/// `CHF(w₂w₁) = CHF(w₂)·CHF(w₁)` for `w₁` in the stabilizer of `eps`, at
/// `z ≡ 0` and at random rational shears.
pub fn homomorphism(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(cfg, 1);
    let gens = schreier_generators(g, eps);
    let mut inputs = Vec::new();
    for i in 0..2 * cfg.samples {
        let len = rng.random_range(0..=cfg.word_len);
        let w2 = random_word(&mut rng, len);
        let k = rng.random_range(0..=5usize);
        let factors: Vec<Word> = (0..k)
            .map(|_| {
                let f = &gens[rng.random_range(0..gens.len())];
                if rng.random_bool(0.5) {
                    f.inverse()
                } else {
                    f.clone()
                }
            })
            .collect();
        let w1 = compose_all(factors.iter().rev());
        let z = if i % 2 == 0 {
            EdgeLabeling::zero(g)
        } else {
            random_labeling(&mut rng, g)
        };
        inputs.push((w2, w1, z));
    }
    run_suite("homomorphism", cfg, &inputs, |(w2, w1, z)| {
        if w1.act(g, eps) != eps {
            return Err(format!("{w1} does not fix the base dart"));
        }
        let lhs = chf_eval(&compose(w2, w1), g, z, eps);
        let rhs = chf_eval(w2, g, z, eps).mul(&chf_eval(w1, g, z, eps));
        if lhs.projective_eq(&rhs, cfg.tol) {
            Ok(())
        } else {
            Err(format!("w2 = {w2}, w1 = {w1}: {lhs} vs {rhs}"))
        }
    })
}

/// Words, for the net suites, paired with a labeling (every other one zero).
fn net_inputs(g: &RibbonGraph, cfg: &VerifyConfig, suite: u64) -> Vec<(Word, EdgeLabeling)> {
    let mut rng = rng_for(cfg, suite);
    (0..2 * cfg.samples)
        .map(|i| {
            let len = rng.random_range(0..=cfg.net_word_len);
            let w = random_word(&mut rng, len);
            let z = if i % 2 == 0 {
                EdgeLabeling::zero(g)
            } else {
                random_labeling(&mut rng, g)
            };
            (w, z)
        })
        .collect()
}

fn carried_t0(m: &Mobius) -> IdealTriangle {
    IdealTriangle::new(IdealTriangle::t0().vertices.map(|v| m.apply(&v)))
}

fn net_config(depth: usize) -> NetConfig {
    NetConfig {
        max_depth: depth.max(crate::net::DEFAULT_MAX_DEPTH),
        execution: Execution::Sequential,
    }
}

/// `CHF(w)⁻¹·T₀` is a triangle of the net of depth `net_depth`, and the
/// side `CHF(w)⁻¹·[0,∞]` of that triangle carries the label `z(wε)`.
pub fn net_membership(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> [SuiteReport; 2] {
    let inputs = net_inputs(g, cfg, 2);
    let ncfg = net_config(cfg.net_depth);
    let located = cfg.execution.map(&inputs, |(w, z)| {
        let (m, d) = chf_trace(w, g, z, eps);
        let carrier = m.inverse();
        let net = generate_net(g, z, eps, cfg.net_depth, &ncfg).map_err(|e| e.to_string())?;
        let t = carried_t0(&carrier);
        let node = net
            .find(&t, cfg.tol)
            .ok_or_else(|| format!("w = {w}: triangle {t} not in the net"))?;
        let side = (
            carrier.apply(&crate::ExtendedReal::integer(0)),
            carrier.apply(&crate::ExtendedReal::Infinity),
        );
        Ok::<_, String>((
            node.side_index(&side.0, &side.1, cfg.tol),
            node.dual_labels,
            z.at(d),
            w.clone(),
        ))
    });
    let membership = run_suite("net-membership", cfg, &located, |r| {
        r.as_ref().map(|_| ()).map_err(Clone::clone)
    });
    let fact = run_suite("dual-labels", cfg, &located, |r| match r {
        Err(_) => Ok(()),
        Ok((None, _, _, w)) => Err(format!(
            "w = {w}: image of the base side is not a side of the net triangle"
        )),
        Ok((Some(j), labels, want, w)) => {
            if labels[*j] == *want {
                Ok(())
            } else {
                Err(format!(
                    "w = {w}: dual label {} but z(wε) = {want}",
                    labels[*j]
                ))
            }
        }
    });
    [membership, fact]
}

/// `|tr γ| = 2·cosh(s/2)` for every face generator, `s` the face's shear sum,
/// and parabolicity on the parabolic family.
pub fn trace_cosh(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> [SuiteReport; 2] {
    let mut rng = rng_for(cfg, 3);
    let family = parabolic_family(g);
    let generic: Vec<EdgeLabeling> = (0..cfg.samples)
        .map(|_| random_labeling(&mut rng, g))
        .collect();
    let special: Vec<EdgeLabeling> = (0..cfg.samples)
        .map(|_| random_nullspace_labeling(&mut rng, g, &family))
        .collect();
    let cosh = run_suite("trace-cosh", cfg, &generic, |z| {
        for gen in fuchsian_generators(g, z, eps).generators {
            let want = 2.0 * (face_shear_sum(z, &gen.face_loop.face) / 2.0).cosh();
            let got = gen.matrix.trace().abs();
            if (got - want).abs() > cfg.tol {
                return Err(format!(
                    "face word {}: |tr| = {got}, 2cosh = {want}",
                    gen.word()
                ));
            }
        }
        Ok(())
    });
    let parabolic = run_suite("nullspace-parabolic", cfg, &special, |z| {
        for gen in fuchsian_generators(g, z, eps).generators {
            if !is_parabolic(&gen.matrix, cfg.tol) {
                return Err(format!(
                    "face word {}: trace {} on {:?}",
                    gen.word(),
                    gen.matrix.trace(),
                    z.edge_values()
                ));
            }
        }
        Ok(())
    });
    [cosh, parabolic]
}

/// At `z ≡ 0`: integer matrices of determinant 1 that decode back to their
/// word, the base relations, generators in the group, and the size of the
/// fundamental domain.
pub fn integer_mode(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(cfg, 4);
    let words: Vec<Word> = (0..cfg.samples)
        .map(|_| {
            let len = rng.random_range(0..=cfg.word_len);
            random_word(&mut rng, len)
        })
        .collect();
    let zero = EdgeLabeling::zero(g);
    let mut report = run_suite("integer-mode", cfg, &words, |w| {
        let m = chf_eval(w, g, &zero, eps);
        let e = m
            .as_exact()
            .ok_or_else(|| format!("w = {w}: {m} is not an integer matrix"))?;
        if e.det() != 1 {
            return Err(format!("w = {w}: det {m} = {}", e.det()));
        }
        let back = psl2z_to_word(&m).map_err(|err| format!("w = {w}: {err}"))?;
        if &back != w {
            return Err(format!("w = {w}: decodes to {back}"));
        }
        Ok(())
    });
    let mut fail = |msg: String| {
        if report.failure.is_none() {
            report.failure = Some(msg);
        }
    };
    let l = matrix_l();
    if !l.mul(&l).mul(&l).is_projective_identity(0.0) {
        fail("L^3 is not the identity".into());
    }
    let x = matrix_x(0.0);
    if !x.mul(&x).is_projective_identity(0.0) {
        fail("X_0^2 is not the identity".into());
    }
    for gen in fuchsian_generators(g, &zero, eps).generators {
        match membership_z0(&gen.matrix, g, eps) {
            Ok(true) => {}
            Ok(false) => fail(format!("generator {} is not in the group", gen.matrix)),
            Err(err) => fail(format!("generator {}: {err}", gen.matrix)),
        }
    }
    let fd = fundamental_domain(g, &zero, eps);
    let marked: std::collections::HashSet<_> = fd.iter().map(|n| n.marked_key()).collect();
    if fd.len() != g.dart_count() || marked.len() != g.dart_count() {
        fail(format!(
            "fundamental domain has {} nodes, {} distinct, expected {}",
            fd.len(),
            marked.len(),
            g.dart_count()
        ));
    }
    report.checks += 3 + g.face_count();
    report
}

/// `γₙ⋯γ₁ = 1` for the face generators, exactly at `z ≡ 0` and on the
/// parabolic family within the conditioned tolerance. Only checked when the face loops multiply to the identity word,
/// which holds in genus 0.
pub fn product_relation(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(cfg, 5);
    let family = parabolic_family(g);
    let mut labelings = vec![EdgeLabeling::zero(g)];
    labelings.extend((1..cfg.samples).map(|_| random_nullspace_labeling(&mut rng, g, &family)));
    let relation = crate::cartography::borel_face_generators(g, eps).relation;
    if !relation {
        return SuiteReport {
            name: "product-relation",
            checks: 0,
            failure: None,
            seed: cfg.seed,
        };
    }
    run_suite("product-relation", cfg, &labelings, |z| {
        let gens = fuchsian_generators(g, z, eps);
        if gens.product_is_identity(cfg.tol) {
            Ok(())
        } else {
            Err(format!(
                "product {} on {:?}",
                gens.ordered_product(),
                z.edge_values()
            ))
        }
    })
}

/// Every triangle of the `z ≡ 0` net is a Farey triangle.
pub fn farey(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> SuiteReport {
    let zero = EdgeLabeling::zero(g);
    let ncfg = NetConfig {
        execution: cfg.execution,
        ..net_config(cfg.farey_depth)
    };
    let net = match generate_net(g, &zero, eps, cfg.farey_depth, &ncfg) {
        Ok(n) => n,
        Err(e) => {
            return SuiteReport {
                name: "farey",
                checks: 0,
                failure: Some(e.to_string()),
                seed: cfg.seed,
            }
        }
    };
    run_suite("farey", cfg, &net.nodes, |n| match n.triangle.is_farey() {
        Some(true) => Ok(()),
        Some(false) => Err(format!("triangle {} is not unimodular", n.triangle)),
        None => Err(format!("triangle {} has inexact vertices", n.triangle)),
    })
}

pub fn run_all(g: &RibbonGraph, eps: DartId, cfg: &VerifyConfig) -> VerifyReport {
    let mut suites = vec![homomorphism(g, eps, cfg)];
    suites.extend(net_membership(g, eps, cfg));
    suites.extend(trace_cosh(g, eps, cfg));
    suites.push(integer_mode(g, eps, cfg));
    suites.push(product_relation(g, eps, cfg));
    suites.push(farey(g, eps, cfg));
    VerifyReport { suites }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon_graph::builtin;

    #[test]
    fn random_words_are_reduced_and_of_requested_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in 0..30 {
            let w = random_word(&mut rng, len);
            assert_eq!(w.len(), len);
        }
    }

    #[test]
    fn nullspace_labelings_have_zero_face_sums() {
        let g = builtin("tetrahedron").unwrap();
        let family = parabolic_family(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let z = random_nullspace_labeling(&mut rng, &g, &family);
            for face in g.faces() {
                assert!(face_shear_sum(&z, &face).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn theta_passes_everything() {
        let g = builtin("theta").unwrap();
        let cfg = VerifyConfig {
            samples: 30,
            ..VerifyConfig::default()
        };
        let report = run_all(&g, g.base(), &cfg);
        assert!(report.passed(), "{report}");
        assert_eq!(report.suites.len(), 8);
    }

    #[test]
    fn modes_agree() {
        let g = builtin("quotient411").unwrap();
        let seq = VerifyConfig {
            samples: 20,
            execution: Execution::Sequential,
            ..VerifyConfig::default()
        };
        let par = VerifyConfig {
            execution: Execution::Parallel,
            ..seq
        };
        assert_eq!(run_all(&g, g.base(), &seq), run_all(&g, g.base(), &par));
    }
}
