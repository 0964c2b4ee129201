//! Finite quivers, paths and cycle analysis.
//!
//! A quiver may carry an *open frontier*: vertices at which the ambient
//! (possibly infinite) quiver continues beyond the finite data. An open-in
//! vertex receives arrows that are not listed, an open-out vertex emits
//! arrows that are not listed. Computations use the frontier to refuse
//! certificates that the truncation cannot justify.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    open_in: Vec<usize>,
    open_out: Vec<usize>,
    vindex: HashMap<String, usize>,
    aindex: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, o: &Quiver) -> bool {
        self.vertices == o.vertices
            && self.arrows == o.arrows
            && self.open_in == o.open_in
            && self.open_out == o.open_out
    }
}

/// A path `α_n ⋯ α_1`, stored in written order (the first entry is the last
/// arrow applied). A trivial path has no arrows and `start == end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(x: usize) -> Path {
        Path { start: x, end: x, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Cycle analysis of the finite quiver data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverAnalysis {
    pub acyclic: bool,
    pub infinite_forward_path: bool,
    pub infinite_backward_path: bool,
    pub strongly_locally_finite: bool,
    /// True when the quiver declares open vertices; the flags above then
    /// describe only the finite data, not the ambient quiver.
    pub open_frontier: bool,
    pub caveat: String,
}

impl QuiverAnalysis {
    /// Whether the ambient quiver has an infinite path with a starting point:
    /// `None` when the finite data cannot decide.
    pub fn forward_status(&self, open_out: bool) -> Option<bool> {
        if self.infinite_forward_path {
            Some(true)
        } else if open_out {
            None
        } else {
            Some(false)
        }
    }

    pub fn backward_status(&self, open_in: bool) -> Option<bool> {
        if self.infinite_backward_path {
            Some(true)
        } else if open_in {
            None
        } else {
            Some(false)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    name: String,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize, Default)]
struct OpenJson {
    #[serde(default, rename = "in")]
    open_in: Vec<String>,
    #[serde(default, rename = "out")]
    open_out: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    open: Option<OpenJson>,
}

impl Quiver {
    /// Build a quiver from labels and `(name, from, to)` triples.
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        Quiver::from_parts(
            vertices.iter().map(|s| s.to_string()).collect(),
            arrows.iter().map(|(n, f, t)| (n.to_string(), f.to_string(), t.to_string())).collect(),
        )
    }

    pub fn from_parts(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut aindex = HashMap::new();
        let mut out = Vec::new();
        for (i, (name, from, to)) in arrows.into_iter().enumerate() {
            if aindex.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow {name:?}")));
            }
            let f = *vindex.get(&from).ok_or_else(|| Error::UnknownVertex(from.clone()))?;
            let t = *vindex.get(&to).ok_or_else(|| Error::UnknownVertex(to.clone()))?;
            out.push(Arrow { name, from: f, to: t });
        }
        Ok(Quiver { vertices, arrows: out, open_in: Vec::new(), open_out: Vec::new(), vindex, aindex })
    }

    /// Declare open vertices (see the module docs).
    pub fn with_open(mut self, open_in: &[&str], open_out: &[&str]) -> Result<Quiver> {
        let mut i = open_in.iter().map(|v| self.vertex(v)).collect::<Result<Vec<_>>>()?;
        let mut o = open_out.iter().map(|v| self.vertex(v)).collect::<Result<Vec<_>>>()?;
        i.sort_unstable();
        i.dedup();
        o.sort_unstable();
        o.dedup();
        self.open_in = i;
        self.open_out = o;
        Ok(self)
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

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.vertices[x]
    }

    pub fn open_in(&self) -> &[usize] {
        &self.open_in
    }

    pub fn open_out(&self) -> &[usize] {
        &self.open_out
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vindex.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.aindex.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    /// Same vertices, every arrow reversed under the same name, frontier
    /// sides swapped. Applying it twice gives back identical data.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), from: a.to, to: a.from })
                .collect(),
            open_in: self.open_out.clone(),
            open_out: self.open_in.clone(),
            vindex: self.vindex.clone(),
            aindex: self.aindex.clone(),
        }
    }

    /// Build a path from arrow names in written order, checking composability.
    pub fn path(&self, names: &[&str]) -> Result<Path> {
        let idx = names.iter().map(|n| self.arrow_index(n)).collect::<Result<Vec<_>>>()?;
        self.path_from_indices(idx)
    }

    pub fn path_from_indices(&self, arrows: Vec<usize>) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::InvalidRelation("empty path needs a vertex".into()));
        }
        for w in arrows.windows(2) {
            if self.arrows[w[0]].from != self.arrows[w[1]].to {
                return Err(Error::InvalidRelation(format!(
                    "{} cannot follow {}",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                )));
            }
        }
        Ok(Path {
            start: self.arrows[*arrows.last().unwrap()].from,
            end: self.arrows[arrows[0]].to,
            arrows,
        })
    }

    /// Arrow names of a path in written order.
    pub fn path_names(&self, p: &Path) -> Vec<String> {
        p.arrows.iter().map(|&a| self.arrows[a].name.clone()).collect()
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertices[p.start])
        } else {
            self.path_names(p).join("")
        }
    }

    /// The reversed path in the opposite quiver.
    pub fn reverse_path(p: &Path) -> Path {
        let mut arrows = p.arrows.clone();
        arrows.reverse();
        Path { start: p.end, end: p.start, arrows }
    }

    /// All paths of the given length from `x` to `y`, ordered
    /// lexicographically by arrow-name sequence.
    pub fn paths(&self, length: usize, x: usize, y: usize) -> Result<Vec<Path>> {
        if x >= self.vertex_count() || y >= self.vertex_count() {
            return Err(Error::UnknownVertex(format!("index {}", x.max(y))));
        }
        let mut out = Vec::new();
        // Grow applied-order sequences from x.
        let mut frontier: Vec<(usize, Vec<usize>)> = vec![(x, Vec::new())];
        for _ in 0..length {
            let mut next = Vec::new();
            for (v, seq) in frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.from == v {
                        let mut s = seq.clone();
                        s.push(ai);
                        next.push((a.to, s));
                    }
                }
            }
            frontier = next;
        }
        for (v, mut seq) in frontier {
            if v == y {
                seq.reverse();
                out.push(Path { start: x, end: y, arrows: seq });
            }
        }
        out.sort_by(|a, b| self.path_names(a).cmp(&self.path_names(b)));
        Ok(out)
    }

    pub fn paths_by_label(&self, length: usize, x: &str, y: &str) -> Result<Vec<Path>> {
        self.paths(length, self.vertex(x)?, self.vertex(y)?)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0; n]; n];
        for ar in &self.arrows {
            a[ar.from][ar.to] += 1;
        }
        a
    }

    fn has_cycle(&self) -> bool {
        // Iterative three-colour depth-first search in declaration order.
        let n = self.vertex_count();
        let mut colour = vec![0u8; n];
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|v| self.arrows.iter().filter(|a| a.from == v).map(|a| a.to).collect())
            .collect();
        for root in 0..n {
            if colour[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            colour[root] = 1;
            while let Some((v, i)) = stack.pop() {
                if i < succ[v].len() {
                    stack.push((v, i + 1));
                    let w = succ[v][i];
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    colour[v] = 2;
                }
            }
        }
        false
    }

    /// Cycle analysis. On finite data both infinite-path flags coincide with
    /// the presence of an oriented cycle, and strong local finiteness with
    /// acyclicity; the report says so.
    pub fn analyze(&self) -> QuiverAnalysis {
        let cyc = self.has_cycle();
        let open = !self.open_in.is_empty() || !self.open_out.is_empty();
        let mut caveat = String::from(
            "finite quiver data: infinite paths exist exactly when there is an oriented cycle",
        );
        if open {
            caveat.push_str("; open frontier declared, flags describe the listed part only");
        }
        QuiverAnalysis {
            acyclic: !cyc,
            infinite_forward_path: cyc,
            infinite_backward_path: cyc,
            strongly_locally_finite: !cyc,
            open_frontier: open,
            caveat,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let open = if self.open_in.is_empty() && self.open_out.is_empty() {
            None
        } else {
            Some(OpenJson {
                open_in: self.open_in.iter().map(|&v| self.vertices[v].clone()).collect(),
                open_out: self.open_out.iter().map(|&v| self.vertices[v].clone()).collect(),
            })
        };
        let q = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    from: self.vertices[a.from].clone(),
                    to: self.vertices[a.to].clone(),
                })
                .collect(),
            open,
        };
        serde_json::to_value(q).expect("quiver serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Quiver> {
        let q: QuiverJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::parse("quiver", e.to_string()))?;
        let quiver = Quiver::from_parts(
            q.vertices,
            q.arrows.into_iter().map(|a| (a.name, a.from, a.to)).collect(),
        )?;
        match q.open {
            None => Ok(quiver),
            Some(o) => {
                let i: Vec<&str> = o.open_in.iter().map(String::as_str).collect();
                let out: Vec<&str> = o.open_out.iter().map(String::as_str).collect();
                quiver.with_open(&i, &out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix_a() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2")]).unwrap()
    }

    #[test]
    fn opposite_reverses() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let o = q.opposite();
        assert_eq!(o.arrow(0).from, 1);
        assert_eq!(o.arrow(0).to, 0);
        assert_eq!(o.opposite(), q);
        let e = Quiver::new(&["1"], &[]).unwrap();
        assert_eq!(e.opposite(), e);
        let a = fix_a().opposite();
        assert_eq!((a.arrow(0).from, a.arrow(0).to), (0, 0));
        assert_eq!((a.arrow(1).from, a.arrow(1).to), (1, 0));
    }

    #[test]
    fn path_enumeration() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let p = q.paths_by_label(1, "1", "2").unwrap();
        assert_eq!(p.len(), 1);
        let a = fix_a();
        let p = a.paths_by_label(2, "1", "2").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(a.format_path(&p[0]), "ba");
        assert!(a.paths_by_label(3, "2", "1").unwrap().is_empty());
        assert!(a.paths_by_label(1, "1", "9").is_err());
    }

    #[test]
    fn analysis_flags() {
        let b = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap().analyze();
        assert!(b.acyclic && !b.infinite_forward_path && b.strongly_locally_finite);
        let a = fix_a().analyze();
        assert!(!a.acyclic && a.infinite_forward_path && a.infinite_backward_path);
    }

    #[test]
    fn json_round_trip() {
        let q = fix_a().with_open(&["2"], &[]).unwrap();
        let v = q.to_json();
        assert_eq!(Quiver::from_json(&v).unwrap(), q);
        assert!(Quiver::new(&["1"], &[("a", "1", "3")]).is_err());
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
    }
}
