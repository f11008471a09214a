//! Text renderings of a tree and of prefix traces.

use std::fmt::Write as _;

use crate::group::{AnyElement, AnyGroup};
use crate::tree::{AccumulateTrace, SouthwestTree, Turn};

/// Geometry header, the tree drawn sideways (children indented under their
/// parent, left child first), then the flat array with phantom slots empty.
pub fn render_ascii(tree: &SouthwestTree<AnyGroup>) -> String {
    let geo = tree.geometry();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "southwest tree: group={} n={} root={} height={} nodes={} phantoms={}",
        tree.group(),
        geo.len(),
        geo.root_index(),
        geo.root_height(),
        geo.node_count(),
        geo.phantom_count()
    );
    out.push('\n');
    draw_node(tree, geo.root_index(), geo.root_left(), "", "", &mut out);
    out.push('\n');
    out.push_str(&render_array(tree));
    out
}

fn node_label(tree: &SouthwestTree<AnyGroup>, index: usize) -> String {
    match tree.as_slice().get(index - 1) {
        Some(v) => format!("{index} = {v}"),
        None => format!("{index} (phantom)"),
    }
}

fn draw_node(
    tree: &SouthwestTree<AnyGroup>,
    index: usize,
    left: usize,
    lead: &str,
    child_lead: &str,
    out: &mut String,
) {
    let _ = writeln!(out, "{lead}{}", node_label(tree, index));
    if left == 1 {
        return;
    }
    let children = [(index - left, "├── ", "│   "), (index - 1, "└── ", "    ")];
    for (child, branch, cont) in children {
        draw_node(
            tree,
            child,
            left >> 1,
            &format!("{child_lead}{branch}"),
            &format!("{child_lead}{cont}"),
            out,
        );
    }
}

/// Two aligned rows: one-based indices over stored values, phantom slots
/// shown without a value.
pub fn render_array(tree: &SouthwestTree<AnyGroup>) -> String {
    let geo = tree.geometry();
    let values: Vec<String> = (1..=geo.node_count())
        .map(|i| {
            tree.as_slice()
                .get(i - 1)
                .map(ToString::to_string)
                .unwrap_or_default()
        })
        .collect();
    let mut index_row = String::from("index |");
    let mut value_row = String::from("value |");
    for (i, v) in values.iter().enumerate() {
        let idx = (i + 1).to_string();
        let width = idx.len().max(v.len());
        let _ = write!(index_row, " {idx:>width$}");
        let _ = write!(value_row, " {v:>width$}");
    }
    format!("{}\n{}\n", index_row, value_row.trim_end())
}

/// Graphviz rendering; phantom nodes are dashed and carry no value.
pub fn render_dot(tree: &SouthwestTree<AnyGroup>) -> String {
    let geo = tree.geometry();
    let mut out = String::from("digraph southwest {\n  node [shape=box];\n");
    let mut stack = vec![(geo.root_index(), geo.root_left())];
    let mut lines = Vec::new();
    while let Some((index, left)) = stack.pop() {
        match tree.as_slice().get(index - 1) {
            Some(v) => lines.push(format!("  n{index} [label=\"{index}\\n{v}\"];")),
            None => lines.push(format!("  n{index} [label=\"{index}\", style=dashed];")),
        }
        if left > 1 {
            lines.push(format!("  n{index} -> n{} [label=L];", index - left));
            lines.push(format!("  n{index} -> n{} [label=R];", index - 1));
            stack.push((index - 1, left >> 1));
            stack.push((index - left, left >> 1));
        }
    }
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

/// Turn sequence, visited nodes (phantoms starred), contributions and
/// the final value.
pub fn render_trace(trace: &AccumulateTrace<AnyElement>, tree: &SouthwestTree<AnyGroup>) -> String {
    let mut out = String::new();
    let turns: Vec<&str> = trace
        .turns()
        .iter()
        .map(|t| match t {
            Turn::Left => "L",
            Turn::Right => "R",
        })
        .collect();
    let visited: Vec<String> = trace
        .steps
        .iter()
        .map(|s| {
            if s.phantom {
                format!("{}*", s.node)
            } else {
                s.node.to_string()
            }
        })
        .collect();
    let _ = writeln!(out, "accumulate({}) over n={}", trace.count, tree.len());
    let _ = writeln!(out, "decisions: [{}]", turns.join(","));
    let _ = writeln!(out, "visited: {}  (* = phantom)", visited.join(" "));
    out.push_str("contributions:\n");
    for entry in &trace.contributions {
        let _ = writeln!(
            out,
            "  node {} covers [{}..{}] = {}",
            entry.node,
            entry.range.start(),
            entry.range.end(),
            tree.as_slice()[entry.node - 1]
        );
    }
    let _ = writeln!(out, "total: {}", trace.value);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::WrappingAdd;

    fn demo() -> SouthwestTree<AnyGroup> {
        let init = [1, 3, 5, 7, 9, 11, 13, 15, 17]
            .map(AnyElement::Int)
            .to_vec();
        SouthwestTree::build(AnyGroup::WrappingAdd(WrappingAdd), init).unwrap()
    }

    #[test]
    fn array_view_of_demo() {
        let text = render_array(&demo());
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[0], "index | 1 2 3 4 5  6  7  8  9 10 11 12 13 14 15");
        assert_eq!(rows[1], "value | 1 3 9 7 9 27 49 15 17");
    }

    #[test]
    fn ascii_tree_marks_phantoms() {
        let text = render_ascii(&demo());
        assert!(text.contains("phantoms=6"));
        assert!(text.lines().any(|l| l == "15 (phantom)"));
        assert!(text.contains("├── 7 = 49"));
        assert_eq!(text.matches("(phantom)").count(), 6);
    }

    #[test]
    fn dot_marks_phantoms() {
        let text = render_dot(&demo());
        assert_eq!(text.matches("style=dashed").count(), 6);
        assert!(text.contains("n7 [label=\"7\\n49\"];"));
        assert!(text.contains("n15 -> n7 [label=L];"));
    }

    #[test]
    fn trace_text() {
        let tree = demo();
        let text = render_trace(&tree.trace(5).unwrap(), &tree);
        assert!(text.contains("decisions: [L,R,R]"));
        assert!(text.contains("node 3 covers [1..3] = 9"));
        assert!(text.contains("total: 25"));
        let text = render_trace(&tree.trace(9).unwrap(), &tree);
        assert!(text.contains("visited: 15* 14* 10* 9 "));
    }
}
