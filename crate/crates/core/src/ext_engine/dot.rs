use super::radical::LoewyLayer;

/// Renders Loewy layers as a DOT digraph with an arrow from every entry to
/// every entry of the next layer.
pub fn loewy_dot(name: &str, layers: &[LoewyLayer]) -> String {
    loewy_dot_with(name, layers, |_, _| true)
}

/// Like [`loewy_dot`], drawing only the arrows accepted by `edge(upper, lower)`.
pub fn loewy_dot_with(name: &str, layers: &[LoewyLayer], edge: impl Fn(&str, &str) -> bool) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=TB;\n", escape(name));
    for (k, layer) in layers.iter().enumerate() {
        out.push_str("  { rank=same;");
        for j in 0..layer.len() {
            out.push_str(&format!(" n{k}_{j};"));
        }
        out.push_str(" }\n");
        for (j, label) in layer.iter().enumerate() {
            out.push_str(&format!("  n{k}_{j} [label=\"{}\"];\n", escape(label)));
        }
    }
    for k in 1..layers.len() {
        for (i, up) in layers[k - 1].iter().enumerate() {
            for (j, low) in layers[k].iter().enumerate() {
                if edge(up, low) {
                    out.push_str(&format!("  n{}_{i} -> n{k}_{j};\n", k - 1));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
