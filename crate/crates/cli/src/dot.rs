//! Graphviz rendering.

use std::fmt::Write as _;

use crate::format::Model;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// DOT text for a model. Marked states are double circles, transitions on
/// uncontrollable events are dashed. An empty generator gives an empty
/// digraph.
pub fn to_dot(model: &Model, name: &str) -> String {
    let g = &model.generator;
    let t = g.table();
    let label = |s: usize| match &model.names {
        Some(names) => names[s].clone(),
        None => s.to_string(),
    };
    let mut out = format!("digraph {} {{\n", quote(name));
    if let Some(init) = g.initial() {
        out.push_str("  rankdir=LR;\n");
        out.push_str("  __start [shape=point, label=\"\"];\n");
        for s in 0..g.num_states() {
            let shape = if g.is_marked(s) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  s{s} [shape={shape}, label={}];", quote(&label(s)));
        }
        let _ = writeln!(out, "  __start -> s{init};");
        for s in 0..g.num_states() {
            for &(e, d) in g.transitions(s) {
                let style = if t.is_controllable(e) {
                    ""
                } else {
                    ", style=dashed"
                };
                let _ = writeln!(out, "  s{s} -> s{d} [label={}{style}];", quote(t.name(e)));
            }
        }
    }
    out.push_str("}\n");
    out
}
