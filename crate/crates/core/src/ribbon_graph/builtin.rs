//! Example graphs shipped with the library.
//!
//! Dart numbering is the declaration order of the files under `data/`; each
//! file documents its base dart.

use super::{parse_graph, GraphError, RibbonGraph};

pub const BUILTIN_NAMES: [&str; 5] = [
    "theta",
    "tetrahedron",
    "cube",
    "quotient411",
    "twisted_theta",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "theta" => include_str!("../../data/theta.graph"),
        "tetrahedron" => include_str!("../../data/tetrahedron.graph"),
        "cube" => include_str!("../../data/cube.graph"),
        "quotient411" => include_str!("../../data/quotient411.graph"),
        "twisted_theta" => include_str!("../../data/twisted_theta.graph"),
        _ => return None,
    })
}

/// Returns the builtin graph called `name`.
///
/// | name            | darts | case label                         | base |
/// |-----------------|-------|------------------------------------|------|
/// | `theta`         | 6     | `<3,3\|2,2,2>`                     | `B`  |
/// | `tetrahedron`   | 12    | `<3,3,3,3\|3,3,3,3>`               | `A`  |
/// | `cube`          | 24    | `<3,3,3,3,3,3,3,3\|4,4,4,4,4,4>`   | `A`  |
/// | `quotient411`   | 6     | `<3,3\|4,1,1>`                     | `A`  |
/// | `twisted_theta` | 6     | `<3,3\|6>` (genus 1)               | `A`  |
pub fn builtin(name: &str) -> Result<RibbonGraph, GraphError> {
    let text = source(name).ok_or_else(|| GraphError::UnknownBuiltin(name.to_string()))?;
    Ok(parse_graph(text).expect("builtin graph files are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_is_an_error() {
        assert_eq!(
            builtin("dodecahedron").unwrap_err(),
            GraphError::UnknownBuiltin("dodecahedron".into())
        );
    }

    #[test]
    fn bases_match_documentation() {
        let bases = ["B", "A", "A", "A", "A"];
        for (name, base) in BUILTIN_NAMES.iter().zip(bases) {
            let g = builtin(name).unwrap();
            assert_eq!(g.dart_name(g.base()), base, "{name}");
        }
    }
}
