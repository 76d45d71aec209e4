//! JSON character-table files.
//!
//! ```text
//! {"order": n, "conductor": m,
//!  "classes": [{"rep": g, "size": s}, ...],
//!  "chars": [["1", "1", "E(3)", ...], ...]}
//! ```
//!
//! Class representatives are element indices of the accompanying group.
//! Columns may be listed in any class order; they are permuted into the
//! canonical order on reading.

use serde::{Deserialize, Serialize};

use super::{CharacterTable, ChartabError};
use crate::cyclotomic::{format_cyc, parse_cyc};
use crate::group::Group;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassEntry {
    pub rep: usize,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub conductor: u32,
    pub classes: Vec<ClassEntry>,
    pub chars: Vec<Vec<String>>,
}

fn violation(msg: String) -> ChartabError {
    ChartabError::InvariantViolation(msg)
}

impl TableFile {
    pub fn from_table(t: &CharacterTable) -> Self {
        let cl = t.classes();
        TableFile {
            order: t.group_order(),
            conductor: t.conductor(),
            classes: cl
                .reps
                .iter()
                .zip(&cl.sizes)
                .map(|(&rep, &size)| ClassEntry { rep, size })
                .collect(),
            chars: t
                .values()
                .iter()
                .map(|row| row.iter().map(format_cyc).collect())
                .collect(),
        }
    }

    pub fn into_table(self, g: &Group) -> Result<CharacterTable, ChartabError> {
        let n = g.order();
        if self.order != n {
            return Err(violation(format!(
                "order {} != group order {n}",
                self.order
            )));
        }
        let exp = g.exponent() as u32;
        if self.conductor != exp {
            return Err(violation(format!(
                "conductor {} != group exponent {exp}",
                self.conductor
            )));
        }
        let classes = g.conjugacy_classes();
        let r = classes.len();
        if self.classes.len() != r {
            return Err(violation(format!(
                "{} classes listed, group has {r}",
                self.classes.len()
            )));
        }
        // column c of the file holds canonical class perm[c]
        let mut perm = Vec::with_capacity(r);
        let mut seen = vec![false; r];
        for (c, entry) in self.classes.iter().enumerate() {
            if entry.rep >= n {
                return Err(violation(format!(
                    "class {}: rep {} out of range",
                    c + 1,
                    entry.rep
                )));
            }
            let k = classes.class_of[entry.rep];
            if std::mem::replace(&mut seen[k], true) {
                return Err(violation(format!(
                    "class {}: rep {} repeats a class",
                    c + 1,
                    entry.rep
                )));
            }
            if classes.sizes[k] != entry.size {
                return Err(violation(format!(
                    "class {}: size {} but the class of {} has {} elements",
                    c + 1,
                    entry.size,
                    entry.rep,
                    classes.sizes[k]
                )));
            }
            perm.push(k);
        }
        let mut rows = Vec::with_capacity(self.chars.len());
        for (i, row) in self.chars.iter().enumerate() {
            if row.len() != r {
                return Err(violation(format!(
                    "row {} has {} entries, expected {r}",
                    i + 1,
                    row.len()
                )));
            }
            let mut out = vec![None; r];
            for (c, lit) in row.iter().enumerate() {
                let v = parse_cyc(lit).map_err(|e| {
                    ChartabError::Parse(format!("row {}, column {}: {e}", i + 1, c + 1))
                })?;
                out[perm[c]] = Some(v);
            }
            rows.push(out.into_iter().map(Option::unwrap).collect());
        }
        CharacterTable::from_rows(g, classes, rows)
    }
}

pub fn parse_character_table(g: &Group, text: &str) -> Result<CharacterTable, ChartabError> {
    let file: TableFile =
        serde_json::from_str(text).map_err(|e| ChartabError::Parse(e.to_string()))?;
    file.into_table(g)
}

pub fn write_character_table(t: &CharacterTable) -> String {
    let mut s = serde_json::to_string_pretty(&TableFile::from_table(t)).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::chartab::{dixon_character_table, DEFAULT_MAX_ORDER};

    #[test]
    fn trivial_group_file() {
        let g = catalog::trivial();
        let t = parse_character_table(
            &g,
            r#"{"order":1,"conductor":1,"classes":[{"rep":0,"size":1}],"chars":[["1"]]}"#,
        )
        .unwrap();
        assert_eq!(t.num_classes(), 1);
        assert!(t.value(0, 0).is_one());
    }

    #[test]
    fn hand_written_c3_matches_dixon() {
        let g = catalog::cyclic(3);
        // classes listed out of canonical order, rows in arbitrary order
        let text = r#"{"order":3,"conductor":3,
            "classes":[{"rep":2,"size":1},{"rep":0,"size":1},{"rep":1,"size":1}],
            "chars":[["E(3)","1","E(3)^2"],["1","1","1"],["E(3)^2","1","E(3)"]]}"#;
        let t = parse_character_table(&g, text).unwrap();
        let d = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(t.values(), d.values());
        assert_eq!(write_character_table(&t), write_character_table(&d));
    }

    #[test]
    fn round_trip() {
        let g = catalog::quaternion8();
        let d = dixon_character_table(&g, DEFAULT_MAX_ORDER).unwrap();
        let text = write_character_table(&d);
        let t = parse_character_table(&g, &text).unwrap();
        assert_eq!(t.values(), d.values());
        assert_eq!(write_character_table(&t), text);
    }

    #[test]
    fn bad_files() {
        let g = catalog::cyclic(3);
        let deg = r#"{"order":3,"conductor":3,
            "classes":[{"rep":0,"size":1},{"rep":1,"size":1},{"rep":2,"size":1}],
            "chars":[["1","1","1"],["1","1","1"],["2","1","1"]]}"#;
        assert!(matches!(
            parse_character_table(&g, deg),
            Err(ChartabError::InvariantViolation(_))
        ));
        let lit = deg.replace("\"2\"", "\"E(3\"");
        assert!(
            matches!(parse_character_table(&g, &lit), Err(ChartabError::Parse(m)) if m.contains("row 3, column 1"))
        );
        let cond = deg.replace("\"conductor\":3", "\"conductor\":6");
        assert!(
            matches!(parse_character_table(&g, &cond), Err(ChartabError::InvariantViolation(m)) if m.contains("conductor"))
        );
    }
}
