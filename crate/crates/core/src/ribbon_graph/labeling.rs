use super::{DartId, GraphError, RibbonGraph};

/// Real shear coordinates on the unoriented edges of a graph.
///
/// Stored per edge; querying either dart of an edge returns the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLabeling {
    per_edge: Vec<f64>,
    dart_edge: Vec<usize>,
}

impl EdgeLabeling {
    /// The all-zero labeling.
    pub fn zero(g: &RibbonGraph) -> Self {
        Self::from_edge_values(g, vec![0.0; g.edge_count()])
    }

    /// Values indexed by edge, in the graph's edge declaration order.
    pub fn from_edge_values(g: &RibbonGraph, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), g.edge_count(), "one value per edge");
        EdgeLabeling {
            per_edge: values,
            dart_edge: g.darts().map(|d| g.edge_of(d)).collect(),
        }
    }

    #[inline]
    pub fn at(&self, d: DartId) -> f64 {
        self.per_edge[self.dart_edge[d.0]]
    }

    pub fn edge_value(&self, e: usize) -> f64 {
        self.per_edge[e]
    }

    pub fn edge_values(&self) -> &[f64] {
        &self.per_edge
    }

    /// True when every shear is exactly zero; such labelings are evaluated
    /// with exact integer matrices.
    pub fn is_zero(&self) -> bool {
        self.per_edge.iter().all(|&v| v == 0.0)
    }
}

/// Parses `<dart> <real>` lines. Either dart of an edge may be used; edges
/// not mentioned default to 0.
pub fn parse_labeling(text: &str, g: &RibbonGraph) -> Result<EdgeLabeling, GraphError> {
    let mut values: Vec<Option<f64>> = vec![None; g.edge_count()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let column = raw.find(fields[0]).unwrap_or(0) + 1;
        let syntax = |message: String| GraphError::Syntax {
            line: lineno + 1,
            column,
            message,
        };
        if fields.len() != 2 {
            return Err(syntax("expected `<dart> <value>`".into()));
        }
        let dart = g
            .dart_by_name(fields[0])
            .ok_or_else(|| syntax(format!("unknown dart `{}`", fields[0])))?;
        let value = parse_value(fields[1])
            .ok_or_else(|| syntax(format!("invalid number `{}`", fields[1])))?;
        if !value.is_finite() {
            return Err(syntax(format!("shear must be finite, got `{}`", fields[1])));
        }
        let e = g.edge_of(dart);
        match values[e] {
            Some(prev) if prev != value => {
                return Err(GraphError::ConflictingLabel(g.edge_name(e)))
            }
            _ => values[e] = Some(value),
        }
    }
    Ok(EdgeLabeling::from_edge_values(
        g,
        values.into_iter().map(|v| v.unwrap_or(0.0)).collect(),
    ))
}

/// A decimal or a fraction `p/q`.
fn parse_value(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (p.parse::<f64>().ok()?, q.parse::<f64>().ok()?);
            (q != 0.0).then(|| p / q)
        }
        None => s.parse().ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon_graph::builtin;

    #[test]
    fn either_dart_of_an_edge_sets_the_value() {
        let g = builtin("theta").unwrap();
        let z = parse_labeling("A' 0.5\nC -1.25 # comment\n", &g).unwrap();
        assert_eq!(z.edge_values(), &[0.5, 0.0, -1.25]);
        for d in g.darts() {
            assert_eq!(z.at(d), z.at(g.rho1(d)));
        }
        assert!(!z.is_zero());
        assert!(EdgeLabeling::zero(&g).is_zero());
    }

    #[test]
    fn fractions_are_accepted() {
        let g = builtin("theta").unwrap();
        let z = parse_labeling(
            "A -3/4
B 1/3
",
            &g,
        )
        .unwrap();
        assert_eq!(z.edge_values(), &[-0.75, 1.0 / 3.0, 0.0]);
        assert!(parse_labeling(
            "A 1/0
", &g
        )
        .is_err());
    }

    #[test]
    fn rejects_bad_lines() {
        let g = builtin("theta").unwrap();
        assert!(matches!(
            parse_labeling("Q 1\n", &g),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_labeling("A 1\nA x\n", &g),
            Err(GraphError::Syntax { line: 2, .. })
        ));
        assert_eq!(
            parse_labeling("A 1\nA' 2\n", &g),
            Err(GraphError::ConflictingLabel("a".into()))
        );
    }
}
