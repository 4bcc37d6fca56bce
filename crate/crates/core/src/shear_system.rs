//! The linear system saying every face generator is parabolic: the shears
//! around each face sum to zero.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ribbon_graph::{DartId, RibbonGraph};

/// Face-by-edge incidence matrix with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceEdgeMatrix {
    /// One row per face of [`RibbonGraph::faces`], one column per edge.
    pub rows: Vec<Vec<i64>>,
    pub faces: Vec<Vec<DartId>>,
    pub edge_names: Vec<String>,
}

impl FaceEdgeMatrix {
    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    /// `Σ_e m[f][e]·z_e = 0`, one line per face, each edge in its own
    /// column.
    pub fn equations(&self) -> Vec<String> {
        let term = |k: i64, name: &str| match k {
            0 => String::new(),
            1 => name.to_string(),
            k => format!("{k}{name}"),
        };
        let widths: Vec<usize> = (0..self.edge_count())
            .map(|e| {
                self.rows
                    .iter()
                    .map(|r| term(r[e], &self.edge_names[e]).len())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        self.rows
            .iter()
            .map(|row| {
                let mut line = String::new();
                let mut seen = false;
                let mut first = true;
                for (e, (&k, name)) in row.iter().zip(&self.edge_names).enumerate() {
                    if widths[e] == 0 {
                        continue;
                    }
                    let sep = if first {
                        ""
                    } else if seen && k != 0 {
                        " + "
                    } else {
                        "   "
                    };
                    first = false;
                    let _ = write!(line, "{sep}{:<w$}", term(k, name), w = widths[e]);
                    seen |= k != 0;
                }
                format!("{} = 0", line.trim_end())
            })
            .collect()
    }
}

pub fn build_system(g: &RibbonGraph) -> FaceEdgeMatrix {
    let faces = g.faces();
    let rows = faces
        .iter()
        .map(|face| {
            let mut row = vec![0i64; g.edge_count()];
            for &d in face {
                row[g.edge_of(d)] += 1;
            }
            row
        })
        .collect();
    FaceEdgeMatrix {
        rows,
        faces,
        edge_names: (0..g.edge_count()).map(|e| g.edge_name(e)).collect(),
    }
}

/// Integer reduced row echelon form: every pivot column is zero outside its
/// pivot row, rows are primitive with positive pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub columns: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.columns)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Fraction-free Gauss-Jordan elimination.
pub fn echelon(rows: &[Vec<i64>], columns: usize) -> Echelon {
    echelon_big(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
        columns,
    )
}

fn echelon_big(mut m: Vec<Vec<BigInt>>, columns: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..columns {
        let Some(p) = (next..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next, p);
        if m[next][col].is_negative() {
            for x in m[next].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = m[next].clone();
        let pv = pivot_row[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pv - &factor * y;
            }
            primitive(row);
        }
        primitive(&mut m[next]);
        pivots.push(col);
        next += 1;
    }
    m.truncate(next);
    Echelon {
        rows: m,
        pivots,
        columns,
    }
}

/// Basis of `{z : m·z = 0}` over ℚ, one vector per free column (that
/// coordinate 1, the other free coordinates 0).
pub fn nullspace(m: &FaceEdgeMatrix) -> Vec<Vec<BigRational>> {
    nullspace_of(&echelon(&m.rows, m.edge_count()))
}

fn nullspace_of(ech: &Echelon) -> Vec<Vec<BigRational>> {
    ech.free_columns()
        .into_iter()
        .map(|free| {
            let mut v = vec![BigRational::zero(); ech.columns];
            v[free] = BigRational::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = BigRational::new(-row[free].clone(), row[p].clone());
            }
            v
        })
        .collect()
}

/// The space of shears making every face generator parabolic.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicFamily {
    pub system: FaceEdgeMatrix,
    pub echelon: Echelon,
    pub basis: Vec<Vec<BigRational>>,
    /// Edges forced to zero, equalities between edges and the remaining
    /// linear constraints, or the single line `only solution a = b = ... = 0`.
    pub relations: Vec<String>,
}

impl ParabolicFamily {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Line-oriented exact output:
    ///
    /// ```text
    /// edges a b c
    /// row 0 1 1
    /// rank 3
    /// nullity 0
    /// basis 1 -1/2 0
    /// ```
    pub fn to_machine_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "edges {}", self.system.edge_names.join(" "));
        for row in &self.system.rows {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "row {}", cells.join(" "));
        }
        let _ = writeln!(out, "rank {}", self.echelon.rank());
        let _ = writeln!(out, "nullity {}", self.dimension());
        for v in &self.basis {
            let cells: Vec<String> = v.iter().map(format_rational).collect();
            let _ = writeln!(out, "basis {}", cells.join(" "));
        }
        out
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `Σ c_e·x_e` with the first coefficient positive.
fn linear_form(coefs: &[BigInt], names: &[&str]) -> String {
    let flip = coefs
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    let mut out = String::new();
    for (c, name) in coefs.iter().zip(names) {
        let c = if flip { -c } else { c.clone() };
        if c.is_zero() {
            continue;
        }
        let sign = match (out.is_empty(), c.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        let mag = c.abs();
        out.push_str(sign);
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(name);
    }
    out
}

/// Clears denominators, keeping the direction.
fn integral(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    v.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// Describes the solution space: edges forced to zero, classes of edges
/// equal on every solution, then the linear constraints left between one
/// representative per class.
fn relations(basis: &[Vec<BigRational>], names: &[String]) -> Vec<String> {
    if basis.is_empty() {
        return vec![format!("only solution {} = 0", names.join(" = "))];
    }
    let column = |e: usize| basis.iter().map(|v| v[e].clone()).collect::<Vec<_>>();
    let mut out = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for e in 0..names.len() {
        let col = column(e);
        if col.iter().all(Zero::is_zero) {
            out.push(format!("{} = 0", names[e]));
        } else if let Some(&r) = reps.iter().find(|&&r| column(r) == col) {
            out.push(format!("{} = {}", names[r], names[e]));
        } else {
            reps.push(e);
        }
    }
    // constraints c with Σ c_r·v_r = 0 for every basis vector v
    let projected: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|v| integral(&reps.iter().map(|&r| v[r].clone()).collect::<Vec<_>>()))
        .collect();
    let rep_names: Vec<&str> = reps.iter().map(|&r| names[r].as_str()).collect();
    for c in nullspace_of(&echelon_big(projected, reps.len())) {
        out.push(format!("{} = 0", linear_form(&integral(&c), &rep_names)));
    }
    out
}

pub fn parabolic_family(g: &RibbonGraph) -> ParabolicFamily {
    let system = build_system(g);
    let ech = echelon(&system.rows, system.edge_count());
    let basis = nullspace_of(&ech);
    let relations = relations(&basis, &system.edge_names);
    ParabolicFamily {
        system,
        echelon: ech,
        basis,
        relations,
    }
}
