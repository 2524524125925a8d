//! Quivers (finite directed graphs with named vertices and arrows) and
//! morphisms between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Per-vertex nonnegative dimensions, indexed by vertex declaration order.
pub type DimVector = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite directed graph; loops and parallel arrows are allowed.
///
/// Equality is structural (vertex names, arrow names, endpoints); the
/// quiver's own display name is just a label.
#[derive(Clone, Debug)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new(name: &str, vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Arc<Self>> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let mut arrow_names = HashMap::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (i, (name, tail, head)) in arrows.into_iter().enumerate() {
            if arrow_names.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate arrow `{name}`")));
            }
            let t = *index
                .get(&tail)
                .ok_or_else(|| Error::Invalid(format!("arrow `{name}` uses unknown vertex `{tail}`")))?;
            let h = *index
                .get(&head)
                .ok_or_else(|| Error::Invalid(format!("arrow `{name}` uses unknown vertex `{head}`")))?;
            built.push(Arrow { name, tail: t, head: h });
        }
        Ok(Arc::new(Quiver {
            name: name.to_string(),
            vertices,
            arrows: built,
        }))
    }

    /// Convenience constructor from string slices.
    pub fn build(name: &str, vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<Self> {
        Quiver::new(
            name,
            vertices.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(a, t, h)| (a.to_string(), t.to_string(), h.to_string()))
                .collect(),
        )
        .expect("static quiver data is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Connectivity of the underlying undirected graph. The empty quiver
    /// counts as disconnected.
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected components as sorted lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for a in &self.arrows {
                    for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = count;
                            stack.push(y);
                        }
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (v, c) in comp.into_iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Same vertices, all arrows reversed.
    pub fn opposite(&self) -> Arc<Quiver> {
        Arc::new(Quiver {
            name: format!("{}^op", self.name),
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    tail: a.head,
                    head: a.tail,
                })
                .collect(),
        })
    }
}

/// A map of quivers: vertices to vertices and arrows to arrows, compatible
/// with heads and tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverMorphism {
    source: Arc<Quiver>,
    target: Arc<Quiver>,
    vertex_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

impl QuiverMorphism {
    pub fn new(
        source: Arc<Quiver>,
        target: Arc<Quiver>,
        vertex_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.num_vertices() || arrow_map.len() != source.num_arrows() {
            return Err(Error::Invalid(
                "morphism must map every source vertex and arrow".into(),
            ));
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.num_vertices()) {
            return Err(Error::Invalid(format!("vertex image {v} out of range")));
        }
        if let Some(&a) = arrow_map.iter().find(|&&a| a >= target.num_arrows()) {
            return Err(Error::Invalid(format!("arrow image {a} out of range")));
        }
        for (b, &img) in arrow_map.iter().enumerate() {
            let src = source.arrow(b);
            let dst = target.arrow(img);
            if vertex_map[src.tail] != dst.tail || vertex_map[src.head] != dst.head {
                return Err(Error::Invalid(format!(
                    "arrow `{}` maps to `{}` but endpoints do not match",
                    src.name, dst.name
                )));
            }
        }
        Ok(QuiverMorphism {
            source,
            target,
            vertex_map,
            arrow_map,
        })
    }

    /// Identity morphism of a quiver.
    pub fn identity(q: Arc<Quiver>) -> Self {
        QuiverMorphism {
            vertex_map: (0..q.num_vertices()).collect(),
            arrow_map: (0..q.num_arrows()).collect(),
            source: q.clone(),
            target: q,
        }
    }

    /// Builds a morphism from vertex/arrow name pairs.
    pub fn from_names(
        source: Arc<Quiver>,
        target: Arc<Quiver>,
        vertex_pairs: &[(&str, &str)],
        arrow_pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut vertex_map = vec![usize::MAX; source.num_vertices()];
        for (x, y) in vertex_pairs {
            let xi = source
                .vertex_index(x)
                .ok_or_else(|| Error::Invalid(format!("unknown source vertex `{x}`")))?;
            let yi = target
                .vertex_index(y)
                .ok_or_else(|| Error::Invalid(format!("unknown target vertex `{y}`")))?;
            vertex_map[xi] = yi;
        }
        let mut arrow_map = vec![usize::MAX; source.num_arrows()];
        for (a, b) in arrow_pairs {
            let ai = source
                .arrow_index(a)
                .ok_or_else(|| Error::Invalid(format!("unknown source arrow `{a}`")))?;
            let bi = target
                .arrow_index(b)
                .ok_or_else(|| Error::Invalid(format!("unknown target arrow `{b}`")))?;
            arrow_map[ai] = bi;
        }
        if vertex_map.contains(&usize::MAX) || arrow_map.contains(&usize::MAX) {
            return Err(Error::Invalid("morphism leaves a vertex or arrow unmapped".into()));
        }
        QuiverMorphism::new(source, target, vertex_map, arrow_map)
    }

    pub fn source(&self) -> &Arc<Quiver> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Quiver> {
        &self.target
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn arrow_image(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }

    /// Source vertices mapping to `v`, in source declaration order.
    pub fn vertex_fiber(&self, v: usize) -> Vec<usize> {
        (0..self.source.num_vertices())
            .filter(|&y| self.vertex_map[y] == v)
            .collect()
    }

    /// Composite `g ∘ f` where `f: Q1 -> Q2` is `self` and `g: Q2 -> Q3`.
    pub fn then(&self, g: &QuiverMorphism) -> Result<QuiverMorphism> {
        if self.target.as_ref() != g.source.as_ref() {
            return Err(Error::QuiverMismatch(
                "cannot compose: inner target differs from outer source".into(),
            ));
        }
        QuiverMorphism::new(
            self.source.clone(),
            g.target.clone(),
            self.vertex_map.iter().map(|&v| g.vertex_map[v]).collect(),
            self.arrow_map.iter().map(|&a| g.arrow_map[a]).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn a3() -> Arc<Quiver> {
        Quiver::build("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")])
    }

    #[test]
    fn connectivity() {
        assert!(a3().is_connected());
        let two_loops = Quiver::build(
            "LL",
            &["x", "y"],
            &[("a", "x", "x"), ("b", "y", "y")],
        );
        assert!(!two_loops.is_connected());
        assert_eq!(two_loops.components(), vec![vec![0], vec![1]]);
        let empty = Quiver::build("E", &[], &[]);
        assert!(!empty.is_connected());
    }

    #[test]
    fn rejects_bad_arrows() {
        let r = Quiver::new(
            "bad",
            vec!["1".into()],
            vec![("a".into(), "1".into(), "2".into())],
        );
        assert!(r.is_err());
    }

    #[test]
    fn morphism_compatibility_checked() {
        let q = a3();
        let loopq = Quiver::build("L", &["v"], &[("l", "v", "v")]);
        // collapse everything onto the loop
        let m = QuiverMorphism::new(q.clone(), loopq.clone(), vec![0, 0, 0], vec![0, 0]).unwrap();
        assert_eq!(m.vertex_fiber(0), vec![0, 1, 2]);
        // incompatible: arrow endpoints disagree with vertex map
        let q2 = Quiver::build("B", &["1", "2"], &[("a", "1", "2")]);
        let bad = QuiverMorphism::new(q2.clone(), q2.clone(), vec![0, 0], vec![0]);
        assert!(bad.is_err());
    }

    #[test]
    fn composition() {
        let q = a3();
        let id = QuiverMorphism::identity(q.clone());
        let c = id.then(&id).unwrap();
        assert_eq!(c, id);
    }

    #[test]
    fn opposite_reverses() {
        let q = a3();
        let op = q.opposite();
        assert_eq!(op.arrow(0).tail, q.arrow(0).head);
        assert_eq!(op.arrow(0).head, q.arrow(0).tail);
    }
}
