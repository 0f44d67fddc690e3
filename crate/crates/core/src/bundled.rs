// SPDX-License-Identifier: Apache-2.0

//! Example spaces shipped with the crate.
//!
//! A space file is a graph in the `v`/`e` format with optional metadata
//! comments `# name:`, `# description:` and `# expect: cat0|not-cat0`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;

const SOURCES: &[(&str, &str)] = &[
    ("plane", include_str!("../spaces/plane.space")),
    ("kale2.5pi", include_str!("../spaces/kale2.5pi.space")),
    ("kale3pi", include_str!("../spaces/kale3pi.space")),
    ("cone1.5pi", include_str!("../spaces/cone1.5pi.space")),
    ("quadrantplane", include_str!("../spaces/quadrantplane.space")),
    ("openbook3", include_str!("../spaces/openbook3.space")),
    ("tripod", include_str!("../spaces/tripod.space")),
    ("bhv-t4", include_str!("../spaces/bhv-t4.space")),
];

#[derive(Debug, Clone)]
pub struct SpaceBundle {
    pub name: String,
    pub description: String,
    /// Declared verdict of the CAT(1) check on the directions, if any.
    pub expect_cat0: Option<bool>,
    pub graph: MetricGraph,
    /// The file contents, including any configuration records.
    pub source: String,
}

impl SpaceBundle {
    pub fn parse(default_name: &str, text: &str) -> Result<Self> {
        let mut name = default_name.to_string();
        let mut description = String::new();
        let mut expect_cat0 = None;
        for (lineno, line) in text.lines().enumerate() {
            let Some(comment) = line.trim().strip_prefix('#') else {
                continue;
            };
            let Some((key, value)) = comment.split_once(':') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "name" => name = value.to_string(),
                "description" => description = value.to_string(),
                "expect" => {
                    expect_cat0 = Some(match value {
                        "cat0" => true,
                        "not-cat0" => false,
                        other => {
                            return Err(Error::Parse {
                                line: lineno + 1,
                                message: format!("unknown expectation `{other}`"),
                            })
                        }
                    })
                }
                _ => {}
            }
        }
        Ok(SpaceBundle {
            name,
            description,
            expect_cat0,
            graph: MetricGraph::parse(text)?,
            source: text.to_string(),
        })
    }

    /// Whether the validation verdict agrees with the declared one.
    pub fn verdict_matches(&self) -> bool {
        self.expect_cat0.is_none_or(|e| e == self.graph.validate_cat1().pass)
    }
}

pub fn names() -> Vec<&'static str> {
    SOURCES.iter().map(|s| s.0).collect()
}

pub fn all() -> Vec<SpaceBundle> {
    SOURCES
        .iter()
        .map(|(name, text)| SpaceBundle::parse(name, text).expect("bundled spaces parse"))
        .collect()
}

/// Bundled spaces whose cone is CAT(0).
pub fn cat0() -> Vec<SpaceBundle> {
    all().into_iter().filter(|b| b.graph.validate_cat1().pass).collect()
}

pub fn get(name: &str) -> Result<SpaceBundle> {
    let name = name.strip_suffix(".space").unwrap_or(name);
    SOURCES
        .iter()
        .find(|s| s.0 == name)
        .map(|(name, text)| SpaceBundle::parse(name, text).expect("bundled spaces parse"))
        .ok_or_else(|| Error::Unknown {
            kind: "space",
            name: name.to_string(),
        })
}

/// Loads a space from a file, falling back to the bundled space of the
/// same name (with or without the `.space` suffix) when no such file exists.
pub fn load(arg: &str) -> Result<SpaceBundle> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfiguration(format!("cannot read {arg}: {e}")))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return SpaceBundle::parse(stem, &text);
    }
    let base = path.file_name().and_then(|s| s.to_str()).unwrap_or(arg);
    get(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn verdicts_match_metadata() {
        for b in all() {
            assert!(b.expect_cat0.is_some(), "{}", b.name);
            assert!(b.verdict_matches(), "{}", b.name);
        }
        assert_eq!(cat0().len(), all().len() - 1);
    }

    #[test]
    fn names_agree_with_metadata() {
        for b in all() {
            assert_eq!(get(&b.name).unwrap().name, b.name);
        }
        assert!(get("kale2.5pi.space").is_ok());
        assert!(matches!(get("torus"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn girths() {
        assert_eq!(get("cone1.5pi").unwrap().graph.girth(), 1.5 * PI);
        assert_eq!(get("openbook3").unwrap().graph.girth(), 2.0 * PI);
        assert_eq!(get("bhv-t4").unwrap().graph.girth(), 2.5 * PI);
        assert_eq!(get("tripod").unwrap().graph.girth(), f64::INFINITY);
    }

    #[test]
    fn serialization_round_trips() {
        for b in all() {
            let again = MetricGraph::parse(&b.graph.to_text()).unwrap();
            assert_eq!(again.to_text(), b.graph.to_text(), "{}", b.name);
        }
    }

    #[test]
    fn rejects_unknown_expectation() {
        assert!(SpaceBundle::parse("x", "# expect: maybe\nv o\ne e0 o o 2pi\n").is_err());
    }
}
