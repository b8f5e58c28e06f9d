//! Instance generation: graph file plus a JSON sidecar that pins down the
//! exact spec and generator identity, so instances are reproducible.

use std::fs;
use std::path::Path;

use sumcolor::gen::{generate, Family, GenSpec, WeightModel, GENERATOR_ID};
use sumcolor::graph::write_graph;

use super::{handle_dump_lp, Globals};
use crate::args::FamilyArg;
use crate::Failure;

pub fn run(
    g: &Globals,
    family: FamilyArg,
    n: usize,
    param: f64,
    weights: &str,
    out: &Path,
) -> Result<(), Failure> {
    handle_dump_lp(g, None)?;
    let spec = GenSpec {
        family: parse_family(family, param)?,
        n,
        weights: parse_weights(weights)?,
        seed: g.seed,
    };
    let graph = generate(&spec).map_err(|e| Failure::Usage(e.to_string()))?;

    fs::write(out, write_graph(&graph))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
    let sidecar_path = sidecar_of(out);
    let sidecar = sidecar_json(&spec, graph.vertex_count(), graph.edge_count());
    fs::write(
        &sidecar_path,
        serde_json::to_string_pretty(&sidecar).expect("static shape"),
    )
    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", sidecar_path.display())))?;

    if g.json {
        let doc = serde_json::json!({
            "file": out.display().to_string(),
            "sidecar": sidecar_path.display().to_string(),
            "spec": sidecar,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
    } else {
        println!(
            "wrote {} ({} vertices, {} edges) and {}",
            out.display(),
            graph.vertex_count(),
            graph.edge_count(),
            sidecar_path.display()
        );
    }
    Ok(())
}

/// `foo.g` pairs with `foo.g.json`: appending keeps the mapping one-to-one
/// whatever the original extension.
fn sidecar_of(out: &Path) -> std::path::PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    std::path::PathBuf::from(name)
}

pub fn parse_family(family: FamilyArg, param: f64) -> Result<Family, Failure> {
    let int_param = |label: &str| -> Result<usize, Failure> {
        if param.fract() != 0.0 || !(1.0..=1e6).contains(&param) {
            return Err(Failure::Usage(format!(
                "--param {param} must be a positive integer for {label}"
            )));
        }
        Ok(param as usize)
    };
    Ok(match family {
        FamilyArg::Ktree => Family::KTree {
            k: int_param("ktree")?,
        },
        FamilyArg::Interval => Family::Interval { density: param },
        FamilyArg::Subtree => Family::SubtreeIntersection {
            max_subtree: int_param("subtree")?,
        },
    })
}

pub fn parse_weights(text: &str) -> Result<WeightModel, Failure> {
    if text == "unit" {
        return Ok(WeightModel::Unit);
    }
    if let Some(max) = text.strip_prefix("uniform:") {
        let max: u64 = max
            .parse()
            .map_err(|_| Failure::Usage(format!("bad uniform weight bound in {text:?}")))?;
        return Ok(WeightModel::UniformInt { max });
    }
    if let Some(cap) = text.strip_prefix("exp:") {
        let cap_exponent: u32 = cap
            .parse()
            .map_err(|_| Failure::Usage(format!("bad exponent cap in {text:?}")))?;
        return Ok(WeightModel::ExponentialLike { cap_exponent });
    }
    Err(Failure::Usage(format!(
        "unknown weight model {text:?}; expected unit, uniform:<MAX>, or exp:<CAP_EXPONENT>"
    )))
}

pub fn family_name(family: &Family) -> &'static str {
    match family {
        Family::KTree { .. } => "ktree",
        Family::Interval { .. } => "interval",
        Family::SubtreeIntersection { .. } => "subtree",
    }
}

pub fn weights_name(weights: &WeightModel) -> String {
    match weights {
        WeightModel::Unit => "unit".into(),
        WeightModel::UniformInt { max } => format!("uniform:{max}"),
        WeightModel::ExponentialLike { cap_exponent } => format!("exp:{cap_exponent}"),
    }
}

pub fn sidecar_json(spec: &GenSpec, vertices: usize, edges: usize) -> serde_json::Value {
    let param = match &spec.family {
        Family::KTree { k } => serde_json::json!(k),
        Family::Interval { density } => serde_json::json!(crate::fmt::sig9(*density)),
        Family::SubtreeIntersection { max_subtree } => serde_json::json!(max_subtree),
    };
    serde_json::json!({
        "generator": GENERATOR_ID,
        "family": family_name(&spec.family),
        "param": param,
        "n": spec.n,
        "weights": weights_name(&spec.weights),
        "seed": spec.seed,
        "vertices": vertices,
        "edges": edges,
    })
}
