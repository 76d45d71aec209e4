//! Text, JSON and LaTeX renderings of a supercharacter theory.

use std::fmt::Write as _;

use serde_json::json;

use super::SupercharacterTheory;
use crate::group::Group;

fn node_name(th: &SupercharacterTheory, node: usize) -> String {
    format!("N{} [{}]", node, th.lattice.node_label(node))
}

fn element_list(g: &Group, elements: &[usize]) -> String {
    let names: Vec<String> = elements.iter().map(|&x| g.label(x)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn render_text(g: &Group, th: &SupercharacterTheory) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "lattice: {} nodes; {} superclasses",
        th.lattice.len(),
        th.superclasses.len()
    )
    .unwrap();
    s.push_str("superclasses:\n");
    for (k, sc) in th.superclasses.iter().enumerate() {
        writeln!(
            s,
            "  K{} = {}°: {}",
            k + 1,
            node_name(th, sc.node),
            element_list(g, &sc.elements)
        )
        .unwrap();
    }
    if let Some(parts) = &th.char_parts {
        s.push_str("character parts:\n");
        for (k, p) in parts.iter().enumerate() {
            let names: Vec<String> = p
                .irreducibles
                .iter()
                .map(|i| format!("chi{}", i + 1))
                .collect();
            writeln!(
                s,
                "  X{} = {}•: {{{}}}",
                k + 1,
                node_name(th, p.node),
                names.join(", ")
            )
            .unwrap();
        }
    }
    s.push_str("supercharacter table:\n");
    let cells: Vec<Vec<String>> = th
        .table
        .iter()
        .map(|row| row.iter().map(|v| v.to_string()).collect())
        .collect();
    let header: Vec<String> = (1..=th.superclasses.len())
        .map(|k| format!("K{k}"))
        .collect();
    let row_names: Vec<String> = th.rows.iter().map(|&n| format!("N{n}•")).collect();
    let name_w = row_names.iter().map(String::len).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..header.len())
        .map(|c| {
            cells
                .iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap()
        })
        .collect();
    write!(s, "  {:name_w$}", "").unwrap();
    for (h, w) in header.iter().zip(&col_w) {
        write!(s, "  {h:>w$}").unwrap();
    }
    s.push('\n');
    for (name, row) in row_names.iter().zip(&cells) {
        write!(s, "  {name:name_w$}").unwrap();
        for (v, w) in row.iter().zip(&col_w) {
            write!(s, "  {v:>w$}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn render_json(th: &SupercharacterTheory) -> serde_json::Value {
    let mut v = json!({
        "superclasses": th.superclasses.iter().map(|s| json!({
            "N": s.node,
            "elements": s.elements,
        })).collect::<Vec<_>>(),
        "rows": th.rows,
        "table": th.table,
    });
    if let Some(parts) = &th.char_parts {
        v["char_parts"] = parts
            .iter()
            .map(|p| json!({"N": p.node, "irreducibles": p.irreducibles}))
            .collect();
    }
    v
}

/// An `array` with one row per supercharacter and one column per superclass.
pub fn render_latex(th: &SupercharacterTheory) -> String {
    let mut s = String::new();
    let cols = th.superclasses.len();
    writeln!(s, "\\begin{{array}}{{c|{}}}", "c".repeat(cols)).unwrap();
    let header: Vec<String> = th
        .superclasses
        .iter()
        .map(|sc| format!("N_{{{}}}^\\circ", sc.node))
        .collect();
    writeln!(s, " & {} \\\\", header.join(" & ")).unwrap();
    s.push_str("\\hline\n");
    for (&n, row) in th.rows.iter().zip(&th.table) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(
            s,
            "\\chi^{{N_{{{n}}}^\\bullet}} & {} \\\\",
            cells.join(" & ")
        )
        .unwrap();
    }
    s.push_str("\\end{array}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lattice::DEFAULT_MAX_LATTICE;
    use crate::nsct::build_nsct;

    #[test]
    fn renders_are_stable() {
        let g = catalog::c3xc4();
        let gens = [
            g.normal_closure(&[4]).unwrap(),
            g.normal_closure(&[3]).unwrap(),
        ];
        let th = build_nsct(&g, &gens, None, DEFAULT_MAX_LATTICE).unwrap();
        let text = render_text(&g, &th);
        assert!(text.contains("K2 = N1 [3]°: {g, g^2}"), "{text}");
        assert_eq!(
            text,
            render_text(
                &g,
                &build_nsct(&g, &gens, None, DEFAULT_MAX_LATTICE).unwrap()
            )
        );
        let latex = render_latex(&th);
        assert!(latex.starts_with("\\begin{array}{c|cccc}"));
        assert_eq!(latex.matches("\\\\").count(), 5);
        let j = render_json(&th);
        assert_eq!(j["table"][0][0], 1);
        assert_eq!(j["table"][3][0], 6);
        assert!(j.get("char_parts").is_none());
    }
}
