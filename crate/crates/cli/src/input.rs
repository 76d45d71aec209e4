//! Group files and `--subgroups` strings.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use nsct_core::chartab::{parse_character_table, CharacterTable, ChartabError};
use nsct_core::group::{Group, NormalSubgroup};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GroupFile {
    Cayley {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Unitriangular {
        n: usize,
        p: u32,
    },
}

pub struct LoadedGroup {
    pub group: Group,
    /// `relabeling[old] = new`, present when the identity was moved.
    pub relabeling: Option<Vec<usize>>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))
}

fn json_context(path: &Path, e: serde_json::Error) -> anyhow::Error {
    anyhow!(
        "{}: line {} column {}: {e}",
        path.display(),
        e.line(),
        e.column()
    )
}

pub fn load_group(path: &Path, max_order: usize, seed: u64) -> Result<LoadedGroup> {
    let text = read(path)?;
    let file: GroupFile = serde_json::from_str(&text).map_err(|e| json_context(path, e))?;
    let ctx = || format!("{}", path.display());
    match file {
        GroupFile::Cayley {
            order,
            table,
            labels,
        } => {
            if table.len() != order {
                bail!(
                    "{}: order {order} but the table has {} rows",
                    path.display(),
                    table.len()
                );
            }
            if order > max_order {
                bail!(
                    "{}: order {order} exceeds the cap {max_order}",
                    path.display()
                );
            }
            let cg = nsct_core::Group::from_cayley_seeded(&table, seed).with_context(ctx)?;
            let moved = !cg.is_identity_relabeling();
            let mut group = cg.group;
            if let Some(labels) = labels {
                if labels.len() != order {
                    bail!(
                        "{}: {} labels for {order} elements",
                        path.display(),
                        labels.len()
                    );
                }
                let mut relabeled = labels.clone();
                for (old, &new) in cg.relabeling.iter().enumerate() {
                    relabeled[new] = labels[old].clone();
                }
                group = group.with_labels(relabeled);
            }
            Ok(LoadedGroup {
                group,
                relabeling: moved.then_some(cg.relabeling),
            })
        }
        GroupFile::Permutations { degree, generators } => Ok(LoadedGroup {
            group: Group::from_permutations(degree, &generators, max_order).with_context(ctx)?,
            relabeling: None,
        }),
        GroupFile::Unitriangular { n, p } => Ok(LoadedGroup {
            group: Group::unitriangular(n, p, max_order).with_context(ctx)?,
            relabeling: None,
        }),
    }
}

/// Error raised while reading a character table file. Invariant violations
/// are kept apart so they can be reported as verification failures.
pub enum TableLoadError {
    Input(anyhow::Error),
    Invalid(String),
}

pub fn load_table(path: &Path, g: &Group) -> std::result::Result<CharacterTable, TableLoadError> {
    let text = read(path).map_err(TableLoadError::Input)?;
    parse_character_table(g, &text).map_err(|e| match e {
        ChartabError::InvariantViolation(m) => {
            TableLoadError::Invalid(format!("{}: invariant violation: {m}", path.display()))
        }
        other => TableLoadError::Input(anyhow!("{}: {other}", path.display())),
    })
}

/// Parses `gen:3,5`, `pattern:(1,2),(1,3)` or `all`.
pub fn parse_spec(g: &Group, spec: &str, max_subgroups: usize) -> Result<Vec<NormalSubgroup>> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(g.all_normal_subgroups(max_subgroups)?);
    }
    if let Some(rest) = spec.strip_prefix("gen:") {
        let mut elems = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let x: usize = tok
                .parse()
                .map_err(|_| anyhow!("subgroup spec '{spec}': '{tok}' is not an element index"))?;
            if x >= g.order() {
                bail!(
                    "subgroup spec '{spec}': element {x} out of range 0..{}",
                    g.order()
                );
            }
            elems.push(x);
        }
        return Ok(vec![g.normal_closure(&elems)?]);
    }
    if let Some(rest) = spec.strip_prefix("pattern:") {
        let positions =
            parse_positions(rest).map_err(|m| anyhow!("subgroup spec '{spec}': {m}"))?;
        return Ok(vec![g
            .pattern_subgroup(&positions)
            .with_context(|| format!("subgroup spec '{spec}'"))?]);
    }
    bail!("subgroup spec '{spec}': expected 'gen:…', 'pattern:…' or 'all'")
}

fn parse_positions(text: &str) -> std::result::Result<Vec<(usize, usize)>, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    loop {
        let inner = rest.strip_prefix('(').ok_or("expected '('")?;
        let close = inner.find(')').ok_or("expected ')'")?;
        let (i, j) = inner[..close].split_once(',').ok_or("expected 'i,j'")?;
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| format!("'{s}' is not a position index"))
        };
        out.push((parse(i)?, parse(j)?));
        rest = &inner[close + 1..];
        if rest.is_empty() {
            return Ok(out);
        }
        rest = rest
            .strip_prefix(',')
            .ok_or("expected ',' between positions")?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsct_core::catalog;

    #[test]
    fn positions() {
        assert_eq!(
            parse_positions("(1,2), (1,3)").unwrap(),
            vec![(1, 2), (1, 3)]
        );
        assert_eq!(parse_positions("").unwrap(), vec![]);
        assert!(parse_positions("(1,2)(1,3)").is_err());
        assert!(parse_positions("(1,x)").is_err());
    }

    #[test]
    fn specs() {
        let g = catalog::symmetric3();
        let t = (0..6).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(
            parse_spec(&g, &format!("gen:{t}"), 100).unwrap()[0].order(),
            6
        );
        assert_eq!(parse_spec(&g, "all", 100).unwrap().len(), 3);
        assert!(parse_spec(&g, "gen:9", 100).is_err());
        assert!(parse_spec(&g, "pattern:(1,2)", 100).is_err());
        let u = catalog::unitriangular(4, 2);
        assert_eq!(parse_spec(&u, "pattern:(1,4)", 100).unwrap()[0].order(), 2);
        assert!(parse_spec(&u, "pattern:(2,3)", 100).is_err());
        assert!(parse_spec(&u, "bogus", 100).is_err());
    }
}
