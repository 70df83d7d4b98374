use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Q;

/// An arrow `name: source -> target`. Vertices are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One summand `coefficient * path` of a relation.
///
/// `path` is written right-to-left like composition of functions: `["b", "a"]`
/// means "first `a`, then `b`", so `target(a) = source(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Q,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<Term>,
}

/// A quiver together with generators of an admissible ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub max_path_length: Option<usize>,
}

/// A relation resolved against the quiver: arrow indices in traversal
/// order (first-applied arrow first), common endpoints 0-based.
#[derive(Clone, Debug)]
pub(crate) struct ResolvedRelation {
    pub terms: Vec<(Q, Vec<usize>)>,
    pub source: usize,
    pub target: usize,
}

impl ResolvedRelation {
    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }
}

impl Relation {
    pub fn monomial<S: AsRef<str>>(path: &[S]) -> Self {
        Relation {
            terms: vec![Term {
                coefficient: Q::from_integer(1.into()),
                path: path.iter().map(|s| s.as_ref().to_string()).collect(),
            }],
        }
    }
}

impl QuiverPresentation {
    pub fn new(vertex_count: usize) -> Self {
        QuiverPresentation {
            vertex_count,
            arrows: Vec::new(),
            relations: Vec::new(),
            max_path_length: None,
        }
    }

    pub fn with_arrow(mut self, name: &str, source: usize, target: usize) -> Self {
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self
    }

    pub fn with_relation(mut self, relation: Relation) -> Self {
        self.relations.push(relation);
        self
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Sum of the lengths of every relation path.
    pub fn total_relation_length(&self) -> usize {
        self.relations
            .iter()
            .flat_map(|r| r.terms.iter())
            .map(|t| t.path.len())
            .sum()
    }

    pub fn path_length_bound(&self) -> usize {
        self.max_path_length
            .unwrap_or(self.vertex_count + self.total_relation_length() + 2)
    }

    /// Check the structural invariants and resolve relation paths into
    /// traversal-ordered arrow indices.
    pub(crate) fn resolve(&self) -> Result<Vec<ResolvedRelation>> {
        if self.vertex_count == 0 {
            return Err(Error::InvalidPresentation {
                token: "vertices 0".into(),
                message: "a quiver needs at least one vertex".into(),
            });
        }
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for a in &self.arrows {
            if !is_identifier(&a.name) {
                return Err(Error::InvalidPresentation {
                    token: a.name.clone(),
                    message: "arrow names must be identifiers".into(),
                });
            }
            if seen.insert(&a.name, 0).is_some() {
                return Err(Error::InvalidPresentation {
                    token: a.name.clone(),
                    message: "duplicate arrow name".into(),
                });
            }
            for v in [a.source, a.target] {
                if v == 0 || v > self.vertex_count {
                    return Err(Error::InvalidPresentation {
                        token: a.name.clone(),
                        message: format!("vertex {v} outside 1..={}", self.vertex_count),
                    });
                }
            }
        }
        if self.max_path_length == Some(0) {
            return Err(Error::InvalidPresentation {
                token: "max_path_length 0".into(),
                message: "path length bound must be positive".into(),
            });
        }

        let mut out = Vec::with_capacity(self.relations.len());
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut terms: Vec<(Q, Vec<usize>)> = Vec::new();
            let mut ends: Option<(usize, usize)> = None;
            for t in &rel.terms {
                if t.path.len() < 2 {
                    return Err(Error::Admissibility {
                        relation: ri + 1,
                        path: t.path.join("*"),
                    });
                }
                let traversal = self.traversal(&t.path)?;
                let s = self.arrows[traversal[0]].source - 1;
                let e = self.arrows[*traversal.last().unwrap()].target - 1;
                match ends {
                    None => ends = Some((s, e)),
                    Some(prev) if prev != (s, e) => {
                        return Err(Error::InvalidPresentation {
                            token: t.path.join("*"),
                            message: format!("relation {} mixes non-parallel paths", ri + 1),
                        })
                    }
                    _ => {}
                }
                if t.coefficient.is_zero() {
                    continue;
                }
                match terms.iter_mut().find(|(_, p)| *p == traversal) {
                    Some((c, _)) => *c += &t.coefficient,
                    None => terms.push((t.coefficient.clone(), traversal)),
                }
            }
            terms.retain(|(c, _)| !c.is_zero());
            let Some((source, target)) = ends else {
                return Err(Error::InvalidPresentation {
                    token: format!("relation {}", ri + 1),
                    message: "empty relation".into(),
                });
            };
            out.push(ResolvedRelation {
                terms,
                source,
                target,
            });
        }
        Ok(out)
    }

    /// Arrow indices of a written path in the order they are applied.
    pub(crate) fn traversal(&self, written: &[String]) -> Result<Vec<usize>> {
        let mut idx = Vec::with_capacity(written.len());
        for name in written.iter().rev() {
            let i = self
                .arrow_index(name)
                .ok_or_else(|| Error::InvalidPresentation {
                    token: name.clone(),
                    message: "unknown arrow".into(),
                })?;
            idx.push(i);
        }
        for w in idx.windows(2) {
            let (first, then) = (&self.arrows[w[0]], &self.arrows[w[1]]);
            if first.target != then.source {
                return Err(Error::InvalidPresentation {
                    token: written.join("*"),
                    message: format!(
                        "`{}*{}` is not composable: {} ends at {} but {} starts at {}",
                        then.name, first.name, first.name, first.target, then.name, then.source
                    ),
                });
            }
        }
        Ok(idx)
    }

    /// Arrows reversed and relation words read backwards: a presentation of
    /// the opposite algebra.
    pub fn opposite(&self) -> QuiverPresentation {
        QuiverPresentation {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self.reversed_relations(),
            max_path_length: self.max_path_length,
        }
    }

    /// Same quiver, relation words reinterpreted under left-to-right
    /// composition. Used to pin down the file-format semantics.
    pub fn with_flipped_composition(&self) -> QuiverPresentation {
        QuiverPresentation {
            relations: self.reversed_relations(),
            ..self.clone()
        }
    }

    fn reversed_relations(&self) -> Vec<Relation> {
        self.relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|t| Term {
                        coefficient: t.coefficient.clone(),
                        path: t.path.iter().rev().cloned().collect(),
                    })
                    .collect(),
            })
            .collect()
    }

    /// Disjoint union of quivers with relations (product of algebras).
    /// Arrows of `other` are suffixed with `_2` when their names clash.
    pub fn disjoint_union(&self, other: &QuiverPresentation) -> QuiverPresentation {
        let shift = self.vertex_count;
        let rename = |n: &str| {
            if self.arrow_index(n).is_some() {
                format!("{n}_2")
            } else {
                n.to_string()
            }
        };
        let mut out = self.clone();
        out.vertex_count += other.vertex_count;
        out.max_path_length = None;
        for a in &other.arrows {
            out.arrows.push(Arrow {
                name: rename(&a.name),
                source: a.source + shift,
                target: a.target + shift,
            });
        }
        for r in &other.relations {
            out.relations.push(Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|t| Term {
                        coefficient: t.coefficient.clone(),
                        path: t.path.iter().map(|n| rename(n)).collect(),
                    })
                    .collect(),
            });
        }
        out
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}
