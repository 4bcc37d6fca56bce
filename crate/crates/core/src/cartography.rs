//! Words in the cartography group `⟨ρ₀, ρ₁ | ρ₀³ = ρ₁² = 1⟩` and their
//! action on the darts of a trivalent ribbon graph.
//!
//! Words are products read left to right and act right to left: in
//! `r1·r0^2` the rotation is applied first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chf::{modular_image, ExtendedReal};
use crate::ribbon_graph::{DartId, RibbonGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// ρ₀
    R0,
    /// ρ₀²
    R0Sq,
    /// ρ₁
    R1,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::R0, Letter::R0Sq, Letter::R1];

    fn rotation(self) -> u8 {
        match self {
            Letter::R0 => 1,
            Letter::R0Sq => 2,
            Letter::R1 => 0,
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::R0 => Letter::R0Sq,
            Letter::R0Sq => Letter::R0,
            Letter::R1 => Letter::R1,
        }
    }

    #[inline]
    pub fn act(self, g: &RibbonGraph, d: DartId) -> DartId {
        match self {
            Letter::R0 => g.rho0(d),
            Letter::R0Sq => g.rho0(g.rho0(d)),
            Letter::R1 => g.rho1(d),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::R0 => "r0",
            Letter::R0Sq => "r0^2",
            Letter::R1 => "r1",
        })
    }
}

/// A reduced word: no two adjacent rotation letters and no `r1·r1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self` raised to a nonnegative power.
    pub fn pow(&self, k: usize) -> Word {
        let mut raw = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            raw.extend_from_slice(&self.0);
        }
        reduce(&raw)
    }

    /// `w⁻¹ · self · w`
    pub fn conjugate_by(&self, w: &Word) -> Word {
        compose_all([&w.inverse(), self, w])
    }

    /// Applies the word to a dart, innermost (rightmost) letter first.
    pub fn act(&self, g: &RibbonGraph, d: DartId) -> DartId {
        self.0.iter().rev().fold(d, |d, l| l.act(g, d))
    }
}

/// Normal form of an arbitrary letter sequence.
pub fn reduce(raw: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &l in raw {
        push_reduced(&mut out, l);
    }
    Word(out)
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    match l {
        Letter::R1 => {
            if out.last() == Some(&Letter::R1) {
                out.pop();
            } else {
                out.push(Letter::R1);
            }
        }
        rot => {
            let mut k = rot.rotation();
            if let Some(&prev) = out.last() {
                if prev != Letter::R1 {
                    out.pop();
                    k = (k + prev.rotation()) % 3;
                }
            }
            match k {
                0 => {}
                1 => out.push(Letter::R0),
                _ => out.push(Letter::R0Sq),
            }
        }
    }
}

/// The product `w2 · w1` in normal form (`w1` acts first).
pub fn compose(w2: &Word, w1: &Word) -> Word {
    let mut out = w2.0.clone();
    for &l in &w1.0 {
        push_reduced(&mut out, l);
    }
    Word(out)
}

/// Left-to-right product of several words.
pub fn compose_all<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
    let mut out = Vec::new();
    for w in words {
        for &l in &w.0 {
            push_reduced(&mut out, l);
        }
    }
    Word(out)
}

pub fn act(w: &Word, d: DartId, g: &RibbonGraph) -> DartId {
    w.act(g, d)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid letter `{0}` (expected r0, r0^2 or r1)")]
    InvalidLetter(String),
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts the serialized form (`r1·r0^2`, `1`); `*` and whitespace
    /// also separate letters. The result is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::identity());
        }
        let mut raw = Vec::new();
        for tok in s.split(|c: char| c == '·' || c == '*' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            raw.push(match tok {
                "r0" => Letter::R0,
                "r0^2" => Letter::R0Sq,
                "r1" => Letter::R1,
                "1" => continue,
                other => return Err(WordError::InvalidLetter(other.to_string())),
            });
        }
        Ok(reduce(&raw))
    }
}

/// For every dart `d`, a word `w_d` with `w_d · eps = d`, found by
/// breadth-first search trying `r0`, `r0^2`, `r1` in that order. A dart
/// reached by `r1` brings the other two darts of its vertex along, so the
/// words form a spanning tree of the vertices and `w_{ρ₀d} = r0·w_d` within
/// each vertex. Indexed by dart; [`discovery_order`] gives the search order.
pub fn coset_representatives(g: &RibbonGraph, eps: DartId) -> Vec<Word> {
    let (reps, _) = bfs(g, eps);
    reps
}

/// Darts in the order the coset search reaches them, starting with `eps`.
pub fn discovery_order(g: &RibbonGraph, eps: DartId) -> Vec<DartId> {
    bfs(g, eps).1
}

fn bfs(g: &RibbonGraph, eps: DartId) -> (Vec<Word>, Vec<DartId>) {
    let mut reps: Vec<Option<Word>> = vec![None; g.dart_count()];
    reps[eps.0] = Some(Word::identity());
    let mut order = vec![eps];
    let mut queue = VecDeque::from([eps]);
    while let Some(d) = queue.pop_front() {
        for l in Letter::ALL {
            let next = l.act(g, d);
            if reps[next.0].is_some() {
                continue;
            }
            let w = compose(&Word::letter(l), reps[d.0].as_ref().unwrap());
            // settle the whole vertex of `next` from it, so every vertex is
            // entered across exactly one edge
            let around =
                [Letter::R0, Letter::R0Sq].map(|r| (r.act(g, next), compose(&Word::letter(r), &w)));
            reps[next.0] = Some(w);
            order.push(next);
            queue.push_back(next);
            for (n, wn) in around {
                if reps[n.0].is_none() {
                    reps[n.0] = Some(wn);
                    order.push(n);
                    queue.push_back(n);
                }
            }
        }
    }
    let reps = reps
        .into_iter()
        .map(|w| w.expect("graph is connected"))
        .collect();
    (reps, order)
}

/// The boundary loop of one face, conjugated back to the base dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLoop {
    /// Face cycle starting at its entry dart.
    pub face: Vec<DartId>,
    /// Dart of the face reached first by the coset search.
    pub entry: DartId,
    /// `w_entry⁻¹ · (r1·r0^2)^k · w_entry` for a face of degree `k`.
    pub word: Word,
}

/// One stabilizer element per face, in product-relation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceGenerators {
    pub loops: Vec<FaceLoop>,
    /// True when `loops[n-1] ⋯ loops[1] · loops[0]` reduces to the identity.
    pub relation: bool,
}

impl FaceGenerators {
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.loops.iter().map(|l| &l.word)
    }

    /// `γ_n ⋯ γ_2 γ_1` as a reduced word.
    pub fn ordered_product(&self) -> Word {
        self.loops
            .iter()
            .fold(Word::identity(), |acc, l| compose(&l.word, &acc))
    }
}

/// Face generators of the stabilizer of `eps`.
///
/// Faces start in coset-search order of their entry darts (so the face of
/// `eps` comes first). They are then arranged by the cyclic order of their
/// cusps on the boundary of the upper half-plane, starting from the first
/// face's cusp and running through increasing reals to `∞`. That order is
/// kept when it makes the ordered product trivial, which is always the case
/// on the builtin planar graphs; otherwise the search order is kept and
/// [`FaceGenerators::relation`] is false.
pub fn borel_face_generators(g: &RibbonGraph, eps: DartId) -> FaceGenerators {
    let (reps, order) = bfs(g, eps);
    let mut rank = vec![0; g.dart_count()];
    for (i, d) in order.iter().enumerate() {
        rank[d.0] = i;
    }
    let face_loop = Word(vec![Letter::R1, Letter::R0Sq]);
    let mut loops: Vec<FaceLoop> = g
        .faces()
        .into_iter()
        .map(|face| {
            let at = (0..face.len()).min_by_key(|&i| rank[face[i].0]).unwrap();
            let mut face = face;
            face.rotate_left(at);
            let entry = face[0];
            let word = face_loop.pow(face.len()).conjugate_by(&reps[entry.0]);
            FaceLoop { face, entry, word }
        })
        .collect();
    loops.sort_by_key(|l| rank[l.entry.0]);

    let cusps: Vec<ExtendedReal> = loops
        .iter()
        .map(|l| {
            modular_image(&l.word)
                .parabolic_fixed_point()
                .expect("face loops are parabolic")
        })
        .collect();
    let first = cusps[0];
    let mut cyclic: Vec<usize> = (0..loops.len()).collect();
    cyclic.sort_by(|&i, &j| first.cyclic_cmp(&cusps[i], &cusps[j]).then(i.cmp(&j)));
    let candidate: Vec<FaceLoop> = cyclic.iter().map(|&i| loops[i].clone()).collect();
    let trial = FaceGenerators {
        loops: candidate,
        relation: true,
    };
    if trial.ordered_product().is_identity() {
        return trial;
    }
    let mut fallback = FaceGenerators {
        loops,
        relation: false,
    };
    fallback.relation = fallback.ordered_product().is_identity();
    fallback
}

/// Schreier generators `w_{s·d}⁻¹ · s · w_d` of the stabilizer of `eps`, for
/// every dart `d` (in id order) and `s ∈ {r0, r1}`, without identities or
/// repeats.
pub fn schreier_generators(g: &RibbonGraph, eps: DartId) -> Vec<Word> {
    let reps = coset_representatives(g, eps);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in g.darts() {
        for s in [Letter::R0, Letter::R1] {
            let w = schreier_word(g, &reps, d, s);
            if !w.is_identity() && seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    out
}

fn schreier_word(g: &RibbonGraph, reps: &[Word], d: DartId, s: Letter) -> Word {
    let next = s.act(g, d);
    compose_all([&reps[next.0].inverse(), &Word::letter(s), &reps[d.0]])
}

/// Rewrites a stabilizer element as a product of Schreier generators by
/// walking it through the coset table. Returns the factors in application
/// order (first factor acts first), or `None` when `w` does not fix `eps`.
pub fn schreier_rewrite(g: &RibbonGraph, eps: DartId, w: &Word) -> Option<Vec<Word>> {
    let reps = coset_representatives(g, eps);
    let mut d = eps;
    let mut factors = Vec::new();
    for &l in w.letters().iter().rev() {
        let steps: &[Letter] = match l {
            Letter::R0Sq => &[Letter::R0, Letter::R0],
            Letter::R0 => &[Letter::R0],
            Letter::R1 => &[Letter::R1],
        };
        for &s in steps {
            let f = schreier_word(g, &reps, d, s);
            if !f.is_identity() {
                factors.push(f);
            }
            d = s.act(g, d);
        }
    }
    (d == eps).then_some(factors)
}

/// Whether the stabilizer of `eps` is normal, i.e. it fixes every dart.
pub fn is_regular(g: &RibbonGraph, eps: DartId) -> bool {
    schreier_generators(g, eps)
        .iter()
        .all(|w| g.darts().all(|d| w.act(g, d) == d))
}

pub const DEFAULT_MONODROMY_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartographyError {
    #[error("monodromy group has more than {0} elements")]
    ClosureBound(usize),
}

/// Order of the permutation group generated by `rho0` and `rho1`, by
/// brute-force closure. Fails once more than `bound` elements are found.
pub fn monodromy_order(g: &RibbonGraph, bound: usize) -> Result<usize, CartographyError> {
    let n = g.dart_count();
    let gens: Vec<Vec<u32>> = [g.rho0_table(), g.rho1_table()]
        .iter()
        .map(|t| t.iter().map(|d| d.0 as u32).collect())
        .collect();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for s in &gens {
            let q: Vec<u32> = p.iter().map(|&i| s[i as usize]).collect();
            if !seen.contains(&q) {
                if seen.len() >= bound {
                    return Err(CartographyError::ClosureBound(bound));
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    Ok(seen.len())
}
