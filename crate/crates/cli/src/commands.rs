use std::fmt::Write as _;
use std::path::Path;

use anyhow::anyhow;
use serde_json::json;

use nsct_core::chartab::{
    check_idempotents, dixon_character_table, write_character_table, CharacterTable,
};
use nsct_core::cyclotomic::format_cyc;
use nsct_core::elements::Partition;
use nsct_core::group::{Group, NormalSubgroup};
use nsct_core::lattice::NormalLattice;
use nsct_core::nsct::render::{render_json, render_latex, render_text};
use nsct_core::nsct::{
    build_nsct, faithful_partition, finest_by_closure, finest_by_idempotents,
    finest_by_table_grouping, finest_theory, verify_sct, NsctError, SupercharacterTheory,
};

use crate::input::{load_group, load_table, parse_spec, LoadedGroup, TableLoadError};
use crate::{Failure, Format, GlobalOpts, Method, TableSource};

type CmdResult = Result<String, Failure>;

fn group(opts: &GlobalOpts, path: &Path) -> Result<LoadedGroup, Failure> {
    let loaded = load_group(path, opts.max_order, opts.seed)?;
    if let Some(r) = &loaded.relabeling {
        eprintln!("note: identity moved to index 0; relabeling old->new {r:?}");
    }
    Ok(loaded)
}

fn table(
    opts: &GlobalOpts,
    g: &Group,
    src: &TableSource,
) -> Result<Option<CharacterTable>, Failure> {
    if src.no_table {
        return Ok(None);
    }
    match &src.chartab {
        Some(path) => load_table(path, g).map(Some).map_err(|e| match e {
            TableLoadError::Input(e) => Failure::Input(e),
            TableLoadError::Invalid(m) => Failure::Verification(format!("{m}\n")),
        }),
        None => dixon(opts, g).map(Some),
    }
}

fn dixon(opts: &GlobalOpts, g: &Group) -> Result<CharacterTable, Failure> {
    dixon_character_table(g, opts.max_table_order).map_err(|e| Failure::Input(anyhow!(e)))
}

fn subgroups(
    opts: &GlobalOpts,
    g: &Group,
    specs: &[String],
) -> Result<Vec<NormalSubgroup>, Failure> {
    let mut out = Vec::new();
    for s in specs {
        out.extend(parse_spec(g, s, opts.max_lattice)?);
    }
    Ok(out)
}

fn theory_error(e: NsctError) -> Failure {
    match e {
        NsctError::ConsistencyFailure(m) => {
            Failure::Verification(format!("consistency failure: {m}\n"))
        }
        other => Failure::Input(anyhow!(other)),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn render_theory(
    opts: &GlobalOpts,
    g: &Group,
    th: &SupercharacterTheory,
    t: Option<&CharacterTable>,
) -> Result<String, Failure> {
    Ok(match opts.format {
        Format::Text => {
            let mut s = render_text(g, th);
            if let Some(t) = t {
                s.push_str("verification:\n");
                for line in verify_sct(g, th, t).to_text().lines() {
                    writeln!(s, "  {line}").unwrap();
                }
            }
            s
        }
        Format::Json => pretty(&render_json(th)),
        Format::Latex => render_latex(th),
        Format::Dot => th.lattice.to_dot(),
    })
}

pub fn info(opts: &GlobalOpts, path: &Path) -> CmdResult {
    let loaded = group(opts, path)?;
    let g = &loaded.group;
    let normal = g
        .all_normal_subgroups(opts.max_lattice)
        .map_err(|e| anyhow!(e))?;
    let classes = g.conjugacy_classes();
    let v = json!({
        "order": g.order(),
        "exponent": g.exponent(),
        "classes": classes.len(),
        "normal_subgroups": normal.len(),
        "abelian": g.is_abelian(),
        "relabeling": loaded.relabeling,
    });
    Ok(match opts.format {
        Format::Json => pretty(&v),
        _ => {
            let mut s = format!(
                "order: {}\nexponent: {}\nconjugacy classes: {}\nnormal subgroups: {}\nabelian: {}\n",
                g.order(),
                g.exponent(),
                classes.len(),
                normal.len(),
                g.is_abelian()
            );
            if let Some(r) = &loaded.relabeling {
                writeln!(s, "relabeling (old -> new): {r:?}").unwrap();
            }
            s
        }
    })
}

pub fn nsct(opts: &GlobalOpts, path: &Path, specs: &[String], src: &TableSource) -> CmdResult {
    let g = group(opts, path)?.group;
    let gens = subgroups(opts, &g, specs)?;
    let t = table(opts, &g, src)?;
    let th = build_nsct(&g, &gens, t.as_ref(), opts.max_lattice).map_err(theory_error)?;
    render_theory(opts, &g, &th, t.as_ref())
}

fn partition_text(g: &Group, p: &Partition, prefix: &str) -> String {
    let mut s = String::new();
    for (k, part) in p.parts().iter().enumerate() {
        let names: Vec<String> = part.iter().map(|&x| g.label(x)).collect();
        writeln!(s, "  {prefix}{}: {{{}}}", k + 1, names.join(", ")).unwrap();
    }
    s
}

fn char_partition_text(p: &Partition) -> String {
    let mut s = String::new();
    for (k, part) in p.parts().iter().enumerate() {
        let names: Vec<String> = part.iter().map(|&i| format!("chi{}", i + 1)).collect();
        writeln!(s, "  X{}: {{{}}}", k + 1, names.join(", ")).unwrap();
    }
    s
}

pub fn finest(opts: &GlobalOpts, path: &Path, method: Method, src: &TableSource) -> CmdResult {
    let g = group(opts, path)?.group;
    let needs_table = method != Method::Closure;
    let t = if needs_table || !src.no_table {
        table(opts, &g, src)?
    } else {
        None
    };
    if needs_table && t.is_none() {
        return Err(Failure::Input(anyhow!(
            "--method {method:?} needs a character table"
        )));
    }
    let json_mode = opts.format == Format::Json;
    match method {
        Method::Closure => {
            let p = finest_by_closure(&g);
            Ok(if json_mode {
                pretty(&json!({"method": "closure", "superclasses": p.parts()}))
            } else {
                format!(
                    "superclasses (normal closure fibres):\n{}",
                    partition_text(&g, &p, "K")
                )
            })
        }
        Method::Idempotents => {
            let p = finest_by_idempotents(t.as_ref().unwrap());
            Ok(if json_mode {
                pretty(&json!({"method": "idempotents", "superclasses": p.parts()}))
            } else {
                format!(
                    "superclasses (idempotent supports):\n{}",
                    partition_text(&g, &p, "K")
                )
            })
        }
        Method::Grouping => {
            let tg = finest_by_table_grouping(t.as_ref().unwrap());
            Ok(if json_mode {
                pretty(&json!({
                    "method": "grouping",
                    "superclasses": tg.elements.parts(),
                    "char_parts": tg.characters.parts(),
                }))
            } else {
                format!(
                    "superclasses (table grouping):\n{}character parts (table grouping):\n{}",
                    partition_text(&g, &tg.elements, "K"),
                    char_partition_text(&tg.characters)
                )
            })
        }
        Method::All => finest_all(opts, &g, t.as_ref().unwrap()),
    }
}

fn finest_all(opts: &GlobalOpts, g: &Group, t: &CharacterTable) -> CmdResult {
    let closure = finest_by_closure(g);
    let idem = finest_by_idempotents(t);
    let grouping = finest_by_table_grouping(t);
    let th = finest_theory(g, Some(t), opts.max_lattice, opts.max_lattice).map_err(theory_error)?;
    let theory_parts = th.char_partition().expect("table attached");
    let faithful = faithful_partition(g, t).map_err(|e| anyhow!(e))?;
    let faithful_pairs: Vec<(NormalSubgroup, Vec<usize>)> = faithful
        .into_iter()
        .map(|p| (p.kernel, p.irreducibles))
        .collect();
    let mut theory_pairs: Vec<(NormalSubgroup, Vec<usize>)> = th
        .char_parts
        .as_ref()
        .unwrap()
        .iter()
        .map(|p| (th.lattice.node(p.node).clone(), p.irreducibles.clone()))
        .collect();
    theory_pairs.sort();
    let checks = [
        ("closure = idempotents", closure == idem),
        ("closure = table grouping", closure == grouping.elements),
        (
            "closure = lattice superclasses",
            closure == th.superclass_partition(),
        ),
        (
            "table grouping rows = character parts",
            grouping.characters == theory_parts,
        ),
        (
            "faithful partition = character parts",
            faithful_pairs == theory_pairs,
        ),
    ];
    let agreed = checks.iter().all(|c| c.1);
    let out = if opts.format == Format::Json {
        let mut v = render_json(&th);
        v["agreement"] = checks
            .iter()
            .map(|(k, ok)| json!({"check": k, "passed": ok}))
            .collect();
        pretty(&v)
    } else {
        let mut s = String::from("agreement:\n");
        for (k, ok) in &checks {
            writeln!(s, "  {}  {k}", if *ok { "pass" } else { "FAIL" }).unwrap();
        }
        s + &render_theory(opts, g, &th, Some(t))?
    };
    if agreed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

pub fn lattice(opts: &GlobalOpts, path: &Path, specs: &[String], dot: bool) -> CmdResult {
    let g = group(opts, path)?.group;
    let gens = subgroups(opts, &g, specs)?;
    let l = NormalLattice::generate(&g, &gens, opts.max_lattice).map_err(|e| anyhow!(e))?;
    if dot || opts.format == Format::Dot {
        return Ok(l.to_dot());
    }
    Ok(match opts.format {
        Format::Json => pretty(&l.to_json()),
        Format::Latex => return Err(anyhow!("lattice output supports text, json and dot").into()),
        _ => {
            let mut s = format!("{} nodes\n", l.len());
            for i in 0..l.len() {
                writeln!(s, "  N{i}: {}", l.node_label(i)).unwrap();
            }
            s.push_str("covering pairs:\n");
            for &(a, b) in l.hasse() {
                writeln!(s, "  N{a} < N{b}").unwrap();
            }
            s.push_str("mobius:\n");
            for row in l.mobius_rows() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                writeln!(s, "  {}", cells.join(" ")).unwrap();
            }
            s
        }
    })
}

fn table_text(g: &Group, t: &CharacterTable) -> String {
    let cl = t.classes();
    let r = t.num_classes();
    let mut grid: Vec<Vec<String>> = vec![
        std::iter::once("class".to_string())
            .chain((1..=r).map(|c| c.to_string()))
            .collect(),
        std::iter::once("rep".to_string())
            .chain(cl.reps.iter().map(|&x| g.label(x)))
            .collect(),
        std::iter::once("size".to_string())
            .chain(cl.sizes.iter().map(|s| s.to_string()))
            .collect(),
    ];
    for (i, row) in t.values().iter().enumerate() {
        grid.push(
            std::iter::once(format!("chi{}", i + 1))
                .chain(row.iter().map(format_cyc))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..=r)
        .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap())
        .collect();
    let mut s = format!("order {}, conductor {}\n", t.group_order(), t.conductor());
    for (k, row) in grid.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:>w$}"))
            .collect();
        writeln!(s, "{}", cells.join("  ")).unwrap();
        if k == 2 {
            writeln!(s, "{}", "-".repeat(widths.iter().sum::<usize>() + 2 * r)).unwrap();
        }
    }
    s
}

pub fn chartab(
    opts: &GlobalOpts,
    path: &Path,
    check: Option<&Path>,
    idempotents: bool,
) -> CmdResult {
    let g = group(opts, path)?.group;
    let (t, mut out) = match check {
        Some(file) => match load_table(file, &g) {
            Ok(t) => {
                let msg = format!(
                    "{}: valid character table ({} irreducibles, conductor {})\n",
                    file.display(),
                    t.num_classes(),
                    t.conductor()
                );
                (t, msg)
            }
            Err(TableLoadError::Invalid(m)) => return Err(Failure::Verification(format!("{m}\n"))),
            Err(TableLoadError::Input(e)) => return Err(Failure::Input(e)),
        },
        None => {
            let t = dixon(opts, &g)?;
            let out = match opts.format {
                Format::Json => write_character_table(&t),
                Format::Text => table_text(&g, &t),
                _ => return Err(anyhow!("character tables render as text or json").into()),
            };
            (t, out)
        }
    };
    if idempotents {
        match check_idempotents(&g, &t) {
            Ok(rep) => writeln!(
                out,
                "idempotents: {} products and {} class sums verified",
                rep.products_checked, rep.class_sums_checked
            )
            .unwrap(),
            Err(nsct_core::chartab::ChartabError::GroupTooLarge { order, limit }) => {
                return Err(Failure::Input(anyhow!(
                    "idempotent check is limited to order {limit}; group has order {order}"
                )))
            }
            Err(e) => return Err(Failure::Verification(format!("{out}idempotents: {e}\n"))),
        }
    }
    Ok(out)
}
