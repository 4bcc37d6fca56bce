use std::fmt::Write as _;
use std::path::Path;

use dessin::cartography::{is_regular, monodromy_order, DEFAULT_MONODROMY_BOUND};
use dessin::chf::parabolic_fixed_point_tol;
use dessin::net::{fundamental_domain, generate_net, write_svg, NetConfig, SvgWindow};
use dessin::ribbon_graph::{parse_labeling, BUILTIN_NAMES};
use dessin::shear_system::parabolic_family;
use dessin::verify::{run_all, VerifyConfig, VerifyReport};
use dessin::{
    builtin, fuchsian_generators, parse_graph, EdgeLabeling, GraphError, Mobius, RibbonGraph,
};

use crate::{CliError, CommandConfig, GraphSource, LabelSource};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

struct Loaded {
    name: String,
    graph: RibbonGraph,
    z: EdgeLabeling,
}

fn load(cfg: &CommandConfig) -> Result<Loaded, CliError> {
    let (name, graph) = match &cfg.graph {
        GraphSource::Builtin(b) => {
            let g = builtin(b).map_err(|e| match e {
                GraphError::UnknownBuiltin(_) => {
                    CliError::Invalid(format!("{e} (available: {})", BUILTIN_NAMES.join(", ")))
                }
                other => other.into(),
            })?;
            (b.clone(), g)
        }
        GraphSource::Path(p) => (p.display().to_string(), parse_graph(&read(p)?)?),
    };
    let graph = match &cfg.base {
        None => graph,
        Some(b) => {
            let d = graph
                .dart_by_name(b)
                .ok_or_else(|| GraphError::UnknownDart(b.clone()))?;
            graph.with_base(d)
        }
    };
    let z = match &cfg.labeling {
        LabelSource::Zero => EdgeLabeling::zero(&graph),
        LabelSource::Path(p) => parse_labeling(&read(p)?, &graph)?,
    };
    Ok(Loaded { name, graph, z })
}

pub fn cmd_info(cfg: &CommandConfig) -> Result<String, CliError> {
    let Loaded { name, graph: g, .. } = load(cfg)?;
    let mut out = String::new();
    let _ = writeln!(out, "graph: {name}");
    let _ = writeln!(out, "vertices: {}", g.vertex_count());
    let _ = writeln!(out, "edges: {}", g.edge_count());
    let _ = writeln!(out, "faces: {}", g.face_count());
    let _ = writeln!(out, "darts: {}", g.dart_count());
    let _ = writeln!(out, "case: {}", g.case_label());
    let _ = writeln!(out, "genus: {}", g.genus());
    let _ = writeln!(out, "base: {}", g.dart_name(g.base()));
    let regular = if is_regular(&g, g.base()) {
        "regular"
    } else {
        "irregular"
    };
    let _ = writeln!(out, "regularity: {regular}");
    match monodromy_order(&g, DEFAULT_MONODROMY_BOUND) {
        Ok(n) => {
            let _ = writeln!(out, "monodromy order: {n}");
        }
        Err(e) => {
            let _ = writeln!(out, "monodromy order: {e}");
        }
    }
    Ok(out)
}

fn trace_text(m: &Mobius) -> String {
    match m.as_exact() {
        Some(e) => e.trace().to_string(),
        None => m.trace().to_string(),
    }
}

pub fn cmd_generators(cfg: &CommandConfig) -> Result<String, CliError> {
    let Loaded { name, graph: g, z } = load(cfg)?;
    let gens = fuchsian_generators(&g, &z, g.base());
    let mut out = String::new();
    let _ = writeln!(out, "graph: {name}");
    let _ = writeln!(
        out,
        "shears: {}",
        if z.is_zero() { "zero" } else { "given" }
    );
    for (i, gen) in gens.generators.iter().enumerate() {
        let face: Vec<&str> = gen.face_loop.face.iter().map(|&d| g.dart_name(d)).collect();
        let _ = writeln!(out, "g{}: face ({})", i + 1, face.join(" "));
        let _ = writeln!(out, "  word: {}", gen.word());
        let _ = writeln!(out, "  matrix: {}", gen.matrix);
        let _ = writeln!(out, "  trace: {}", trace_text(&gen.matrix));
        match parabolic_fixed_point_tol(&gen.matrix, cfg.tol) {
            Ok(p) => {
                let _ = writeln!(out, "  parabolic: yes\n  fixed point: {p}");
            }
            Err(_) => {
                let _ = writeln!(out, "  parabolic: no");
            }
        }
    }
    let n = gens.generators.len();
    let product: Vec<String> = (1..=n).rev().map(|i| format!("g{i}")).collect();
    let lhs = product.join("·");
    if gens.relation {
        let ok = gens.product_is_identity(cfg.tol);
        let _ = writeln!(
            out,
            "relation: {lhs} = 1 {}",
            if ok { "OK" } else { "FAILED" }
        );
    } else {
        let _ = writeln!(
            out,
            "relation: none, the face loops do not multiply to 1 on a genus {} surface",
            g.genus()
        );
    }
    Ok(out)
}

pub fn cmd_system(cfg: &CommandConfig) -> Result<String, CliError> {
    let Loaded { name, graph: g, .. } = load(cfg)?;
    let family = parabolic_family(&g);
    let mut out = String::new();
    let _ = writeln!(out, "graph: {name}");
    let _ = writeln!(out, "system:");
    for eq in family.system.equations() {
        let _ = writeln!(out, "  {eq}");
    }
    let _ = writeln!(out, "rank: {}", family.echelon.rank());
    let _ = writeln!(out, "dimension: {}", family.dimension());
    let _ = writeln!(out, "solutions:");
    for rel in &family.relations {
        let _ = writeln!(out, "  {rel}");
    }
    if let Some(p) = &cfg.out {
        write(p, &family.to_machine_text())?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetOutput {
    pub triangles: String,
    pub svg: Option<String>,
    pub summary: String,
}

/// Writes the triangle list to `--out` (or into the summary) and the drawing
/// to `--svg`.
pub fn cmd_net(cfg: &CommandConfig) -> Result<NetOutput, CliError> {
    let Loaded { graph: g, z, .. } = load(cfg)?;
    let net = generate_net(&g, &z, g.base(), cfg.depth, &NetConfig::default())?;
    let triangles = net.triangle_list();
    let domain = fundamental_domain(&g, &z, g.base());
    let mut summary = format!(
        "# {} triangles to depth {}; fundamental domain of {} marked triangles\n",
        net.len(),
        cfg.depth,
        domain.len()
    );
    match &cfg.out {
        Some(p) => write(p, &triangles)?,
        None => summary.push_str(&triangles),
    }
    let svg = match &cfg.svg {
        Some(p) => {
            let window = SvgWindow {
                fill_by_depth: cfg.fill,
                ..SvgWindow::default()
            };
            write_svg(&net.nodes, &window, p)?;
            Some(read(p)?)
        }
        None => None,
    };
    Ok(NetOutput {
        triangles,
        svg,
        summary,
    })
}

pub fn cmd_verify(cfg: &CommandConfig) -> Result<VerifyReport, CliError> {
    let Loaded { graph: g, .. } = load(cfg)?;
    let vcfg = VerifyConfig {
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        ..VerifyConfig::default()
    };
    Ok(run_all(&g, g.base(), &vcfg))
}
