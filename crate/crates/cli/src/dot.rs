//! Graphviz output for verified witnesses. Homs are solid edges and hets
//! are dashed.

use std::fmt::Write as _;

use hetcat_core::het::{AdjunctionWitness, BrainFunctorWitness};

use crate::error::CliError;
use crate::spec::Scenario;

const HOM: &str = "style=solid";
const HET: &str = "style=dashed";

fn edge(s: &mut String, from: &str, to: &str, label: &str, style: &str) {
    writeln!(s, "  {from} -> {to} [label=\"{label}\", {style}];").unwrap();
}

/// The adjunctive square: `x`, `F(x)`, `a`, `G(a)` with `η_x` and `ε_a` on
/// two sides, the two homs on the others and a het on the diagonal.
pub fn adjunction_square(name: &str, w: &AdjunctionWitness) -> String {
    let bm = w.left.bimodule.as_ref();
    let triples: usize = w.bijections.iter().map(|b| b.triples.len()).sum();
    let mut s = String::new();
    writeln!(s, "digraph adjunction {{").unwrap();
    writeln!(
        s,
        "  label=\"{name}: {} object pairs, {} hets, {triples} correspondences\";",
        w.bijections.len(),
        bm.het_count()
    )
    .unwrap();
    writeln!(s, "  node [shape=plaintext];").unwrap();
    writeln!(s, "  subgraph cluster_src {{").unwrap();
    writeln!(s, "    label=\"source ({} objects)\";", bm.src().object_count()).unwrap();
    writeln!(s, "    x [label=\"x\"];").unwrap();
    writeln!(s, "    Ga [label=\"G(a)\"];").unwrap();
    writeln!(s, "  }}").unwrap();
    writeln!(s, "  subgraph cluster_tgt {{").unwrap();
    writeln!(s, "    label=\"target ({} objects)\";", bm.tgt().object_count()).unwrap();
    writeln!(s, "    Fx [label=\"F(x)\"];").unwrap();
    writeln!(s, "    a [label=\"a\"];").unwrap();
    writeln!(s, "  }}").unwrap();
    edge(&mut s, "x", "Fx", "eta_x", HET);
    edge(&mut s, "Fx", "a", "g", HOM);
    edge(&mut s, "x", "Ga", "m", HOM);
    edge(&mut s, "Ga", "a", "eps_a", HET);
    edge(&mut s, "x", "a", "h", HET);
    writeln!(s, "}}").unwrap();
    s
}

/// The butterfly: `B(x)` in the middle, a perception wing
/// (`x ⇢ B(x) → a`, `x ⇢ a`) and an action wing (`a' → B(x) ⇢ x`, `a' ⇢ x`).
pub fn brain_butterfly(name: &str, w: &BrainFunctorWitness) -> String {
    let mut s = String::new();
    writeln!(s, "digraph brain {{").unwrap();
    writeln!(
        s,
        "  label=\"{name}: {} environment objects, {} organism objects, {} perception hets, {} action hets\";",
        w.het_in.src().object_count(),
        w.het_in.tgt().object_count(),
        w.het_in.het_count(),
        w.het_out.het_count()
    )
    .unwrap();
    writeln!(s, "  rankdir=LR;").unwrap();
    writeln!(s, "  node [shape=plaintext];").unwrap();
    writeln!(s, "  x_in [label=\"x\"];").unwrap();
    writeln!(s, "  a [label=\"a\"];").unwrap();
    writeln!(s, "  Bx [label=\"B(x)\"];").unwrap();
    writeln!(s, "  a2 [label=\"a'\"];").unwrap();
    writeln!(s, "  x_out [label=\"x\"];").unwrap();
    edge(&mut s, "x_in", "Bx", "eta_x", HET);
    edge(&mut s, "Bx", "a", "g", HOM);
    edge(&mut s, "x_in", "a", "perceive", HET);
    edge(&mut s, "a2", "Bx", "m", HOM);
    edge(&mut s, "Bx", "x_out", "eps_x", HET);
    edge(&mut s, "a2", "x_out", "act", HET);
    writeln!(s, "}}").unwrap();
    s
}

pub fn render_diagram(scenario: &Scenario) -> Result<String, CliError> {
    match scenario {
        Scenario::Adjunction { name, witness } => Ok(adjunction_square(name, witness)),
        Scenario::Brain { name, witness } => Ok(brain_butterfly(name, witness)),
        Scenario::Semi(_) => Err(CliError::UnsupportedWitness(
            "a single semi-adjunction has no diagram; use an adjunction or brain scenario".into(),
        )),
    }
}
