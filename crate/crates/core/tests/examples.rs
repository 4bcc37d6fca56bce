//! Published generator lists reproduced exactly at zero shear.

use dessin::chf::{membership_z0, Mat2};
use dessin::shear_system::parabolic_family;
use dessin::{builtin, fuchsian_generators, EdgeLabeling, ExtendedReal, Mobius};

fn exact(a: i128, b: i128, c: i128, d: i128) -> Mobius {
    Mobius::Exact(Mat2::new(a, b, c, d))
}

fn q(p: i128, r: i128) -> ExtendedReal {
    ExtendedReal::Rational(dessin::chf::Rational::new(p, r))
}

/// Matches `expected` against the generators as a multiset, up to sign.
fn assert_same_matrices(name: &str, expected: &[Mobius]) -> Vec<ExtendedReal> {
    let g = builtin(name).unwrap();
    let gens = fuchsian_generators(&g, &EdgeLabeling::zero(&g), g.base());
    assert_eq!(gens.generators.len(), expected.len(), "{name}");
    let mut unused: Vec<&Mobius> = gens.matrices().collect();
    for m in expected {
        let i = unused
            .iter()
            .position(|x| x.projective_eq(m, 0.0))
            .unwrap_or_else(|| panic!("{name}: {m} missing from {unused:?}"));
        unused.remove(i);
    }
    assert!(gens.relation, "{name}");
    assert!(gens.ordered_product().is_projective_identity(0.0), "{name}");
    gens.matrices()
        .map(|m| m.parabolic_fixed_point().unwrap())
        .collect()
}

fn sorted(mut v: Vec<ExtendedReal>) -> Vec<ExtendedReal> {
    v.sort_by(|a, b| a.line_cmp(b));
    v
}

#[test]
fn theta() {
    let fixed = assert_same_matrices(
        "theta",
        &[exact(1, 0, 2, 1), exact(1, -2, 0, 1), exact(-1, -2, 2, 3)],
    );
    assert_eq!(sorted(fixed), [q(-1, 1), q(0, 1), ExtendedReal::Infinity]);
}

#[test]
fn tetrahedron() {
    let fixed = assert_same_matrices(
        "tetrahedron",
        &[
            exact(1, -3, 0, 1),
            exact(2, 3, -3, -4),
            exact(1, 0, 3, 1),
            exact(4, -3, 3, -2),
        ],
    );
    assert_eq!(
        sorted(fixed),
        [q(-1, 1), q(0, 1), q(1, 1), ExtendedReal::Infinity]
    );
    let fam = parabolic_family(&builtin("tetrahedron").unwrap());
    assert_eq!(fam.dimension(), 2);
    assert_eq!(fam.relations, ["a = d", "b = e", "c = f", "a + b + c = 0"]);
}

#[test]
fn cube() {
    let published = [
        exact(1, 0, 4, 1),
        exact(5, -4, 4, -3),
        exact(1, -4, 0, 1),
        exact(7, 16, -4, -9),
        exact(3, 4, -4, -5),
        exact(7, 4, -16, -9),
    ];
    let fixed = assert_same_matrices("cube", &published);
    assert_eq!(
        sorted(fixed),
        [
            q(-2, 1),
            q(-1, 1),
            q(-1, 2),
            q(0, 1),
            q(1, 1),
            ExtendedReal::Infinity
        ]
    );
    let g = builtin("cube").unwrap();
    let alpha = exact(1, 1, 0, 1);
    assert!(!membership_z0(&alpha, &g, g.base()).unwrap());
    for m in &published {
        let conj = alpha.mul(m).mul(&alpha.inverse());
        assert!(membership_z0(&conj, &g, g.base()).unwrap(), "{conj}");
    }
}

#[test]
fn quotient_by_the_cube_automorphism() {
    let g = builtin("quotient411").unwrap();
    assert_eq!(g.case_label(), "<3,3|4,1,1>");
    assert_eq!(g.genus(), 0);
    for m in [exact(1, 1, 0, 1), exact(1, 0, 4, 1)] {
        assert!(membership_z0(&m, &g, g.base()).unwrap(), "{m}");
    }
    let gens = fuchsian_generators(&g, &EdgeLabeling::zero(&g), g.base());
    assert!(gens.ordered_product().is_projective_identity(0.0));
}
