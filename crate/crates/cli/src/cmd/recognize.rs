//! Chordality decision with certificates on both sides.

use std::path::Path;

use sumcolor::chordal::recognize_chordal;

use super::{join_ids, load_graph, report_not_chordal, Globals};
use crate::Failure;

pub fn run(g: &Globals, file: &Path) -> Result<(), Failure> {
    let graph = load_graph(file)?;
    super::handle_dump_lp(g, None)?;
    match recognize_chordal(&graph) {
        Ok(peo) => {
            let order: Vec<usize> = peo.order().iter().map(|&v| v + 1).collect();
            if g.json {
                let doc = serde_json::json!({ "chordal": true, "peo": order });
                println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
            } else {
                println!("chordal: true");
                println!("peo: {}", join_ids(&order));
            }
            Ok(())
        }
        Err(cert) => Err(report_not_chordal(g.json, &cert)),
    }
}
