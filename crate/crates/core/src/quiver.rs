//! Quivers, paths and relations.
//!
//! Composition convention: the path `a*b` traverses `a` first, then `b`.
//! Consequently a path has the source of its first arrow and the target of
//! its last. Morphism composition `g∘f` applies `f` first; arrow composition
//! is written in diagram order throughout.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::ParseError;
use crate::field::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, ParseError> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(ParseError::DuplicateLabel(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut out = Vec::new();
        for (label, s, t) in arrows {
            let src = *vertex_index
                .get(&s)
                .ok_or_else(|| ParseError::UnknownVertex(s.clone()))?;
            let dst = *vertex_index
                .get(&t)
                .ok_or_else(|| ParseError::UnknownVertex(t.clone()))?;
            if src == dst {
                return Err(ParseError::BadRelation(format!(
                    "loop arrow `{label}` is not supported"
                )));
            }
            if vertex_index.contains_key(&label) || arrow_index.insert(label.clone(), out.len()).is_some() {
                return Err(ParseError::DuplicateLabel(label));
            }
            out.push(Arrow { label, src, dst });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrow(&self, label: &str) -> Option<usize> {
        self.arrow_index.get(label).copied()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.src == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.dst == v)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.dst] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for (_, a) in self.arrows_from(v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    queue.push(a.dst);
                }
            }
        }
        seen == n
    }

    /// Same vertices, all arrows reversed. Labels are preserved.
    pub fn reversed(&self) -> Quiver {
        Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| {
                    (
                        a.label.clone(),
                        self.vertices[a.dst].clone(),
                        self.vertices[a.src].clone(),
                    )
                })
                .collect(),
        )
        .expect("reversal preserves well-formedness")
    }
}

/// A path: a (possibly empty) composable arrow sequence with an explicit
/// source vertex. The empty path at `v` is the idempotent `e_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            arrows: Vec::new(),
        }
    }

    pub fn of_arrow(q: &Quiver, a: usize) -> Self {
        Path {
            source: q.arrows()[a].src,
            arrows: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.source, |&a| q.arrows()[a].dst)
    }

    /// `self` then `other`; `None` when targets do not match.
    pub fn compose(&self, q: &Quiver, other: &Path) -> Option<Path> {
        if self.target(q) != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            arrows,
        })
    }

    /// Checks the arrow sequence is genuinely composable.
    pub fn is_well_formed(&self, q: &Quiver) -> bool {
        let mut at = self.source;
        for &a in &self.arrows {
            if q.arrows()[a].src != at {
                return false;
            }
            at = q.arrows()[a].dst;
        }
        true
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            format!("e_{}", q.vertices()[self.source])
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows()[a].label.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Degree-lexicographic order: by length, then by arrow sequence, then by
    /// source (the source only matters for trivial paths).
    pub fn deglex(&self, other: &Path) -> std::cmp::Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

/// A linear combination of parallel paths (shared source and target), each of
/// length at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn validate(&self, q: &Quiver) -> Result<(), ParseError> {
        if self.terms.is_empty() {
            return Err(ParseError::BadRelation("empty relation".into()));
        }
        let (s0, t0) = {
            let p = &self.terms[0].1;
            (p.source, p.target(q))
        };
        for (_, p) in &self.terms {
            if !p.is_well_formed(q) {
                return Err(ParseError::BadRelation("non-composable path".into()));
            }
            if p.len() < 2 {
                return Err(ParseError::BadRelation(
                    "relation paths must have length >= 2".into(),
                ));
            }
            if p.source != s0 || p.target(q) != t0 {
                return Err(ParseError::BadRelation(
                    "paths in one relation must share source and target".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let neg = crate::field::scalar_is_negative(c);
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !mag.is_one() {
                out.push_str(&format!("{} ", mag));
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn a2() -> Quiver {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into())],
        )
        .unwrap()
    }

    #[test]
    fn path_composition_follows_diagram_order() {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
            ],
        )
        .unwrap();
        let a = Path::of_arrow(&q, 0);
        let b = Path::of_arrow(&q, 1);
        let ab = a.compose(&q, &b).unwrap();
        assert_eq!(ab.source, 0);
        assert_eq!(ab.target(&q), 2);
        assert!(b.compose(&q, &a).is_none());
        assert_eq!(ab.display(&q), "a*b");
    }

    #[test]
    fn acyclicity() {
        assert!(a2().is_acyclic());
        let cyc = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        )
        .unwrap();
        assert!(!cyc.is_acyclic());
        assert!(cyc.reversed().vertex(&"1".to_string()).is_some());
    }

    #[test]
    fn loops_rejected() {
        let r = Quiver::new(
            vec!["1".into()],
            vec![("a".into(), "1".into(), "1".into())],
        );
        assert!(r.is_err());
    }
}
