//! Simply laced graphs with invertible edge parameters, paths and their
//! contraction calculus, spanning trees and a cycle basis of H₁(Γ).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalars::{parse_laurent, LaurentPoly, Scalar};
use crate::Result;

/// A simply laced graph: no loops, no multi-edges, one invertible parameter
/// `s_uv = s_vu` per edge. Vertices are opaque strings mapped to dense
/// indices in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
    params: BTreeMap<(usize, usize), LaurentPoly>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, Option<LaurentPoly>)>) -> Result<Graph> {
        let mut names: Vec<String> = vertices;
        names.sort();
        names.dedup();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut adj = vec![BTreeSet::new(); names.len()];
        let mut params = BTreeMap::new();
        for (u, v, s) in edges {
            let iu = *index
                .get(u.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{u}`")))?;
            let iv = *index
                .get(v.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{v}`")))?;
            if iu == iv {
                return Err(Error::InvalidGraph(format!("loop at vertex `{u}`")));
            }
            let key = (iu.min(iv), iu.max(iv));
            if params.contains_key(&key) {
                return Err(Error::InvalidGraph(format!("multi-edge between `{u}` and `{v}`")));
            }
            let param = match s {
                Some(p) => p,
                None => LaurentPoly::var(&default_param_name(&names[key.0], &names[key.1])),
            };
            if param.as_unit().is_none() {
                return Err(Error::InvalidGraph(format!(
                    "edge parameter for `{u}`-`{v}` must be an invertible monomial, got `{param}`"
                )));
            }
            adj[iu].insert(iv);
            adj[iv].insert(iu);
            params.insert(key, param);
        }
        Ok(Graph { names, adj, params })
    }

    /// Build from a table keyed by ordered vertex pairs; both orientations
    /// must be present and agree (`s_uv = s_vu`).
    pub fn from_directed_table(
        vertices: Vec<String>,
        table: &BTreeMap<(String, String), LaurentPoly>,
    ) -> Result<Graph> {
        let mut edges: BTreeMap<(String, String), LaurentPoly> = BTreeMap::new();
        for ((u, v), s) in table {
            let key = (u.clone().min(v.clone()), u.clone().max(v.clone()));
            let reverse = table.get(&(v.clone(), u.clone())).ok_or_else(|| {
                Error::InvalidGraph(format!("missing reverse parameter for `{v}`-`{u}`"))
            })?;
            if reverse != s {
                return Err(Error::InvalidGraph(format!(
                    "asymmetric edge parameters: s({u},{v}) != s({v},{u})"
                )));
            }
            edges.insert(key, s.clone());
        }
        Graph::new(
            vertices,
            edges.into_iter().map(|((u, v), s)| (u, v, Some(s))).collect(),
        )
    }

    /// Path graph A_n with vertices 1..n.
    pub fn path_graph(n: usize, param: Option<Scalar>) -> Graph {
        let names: Vec<String> = (1..=n).map(|i| number_name(i, n)).collect();
        let edges = (1..n)
            .map(|i| {
                (
                    number_name(i, n),
                    number_name(i + 1, n),
                    param.clone().map(LaurentPoly::constant),
                )
            })
            .collect();
        Graph::new(names, edges).expect("path graph is valid")
    }

    /// Cyclic graph C_n; `params[i]` is s_{i,i+1} with the wrap-around edge last.
    pub fn cycle_graph(n: usize, params: Option<&[Scalar]>) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidGraph("cyclic graph needs at least 3 vertices".into()));
        }
        if let Some(ps) = params {
            if ps.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "expected {n} edge parameters, got {}",
                    ps.len()
                )));
            }
        }
        let names: Vec<String> = (1..=n).map(|i| number_name(i, n)).collect();
        let mut edges = Vec::new();
        for i in 1..=n {
            let j = if i == n { 1 } else { i + 1 };
            let s = params.map(|ps| LaurentPoly::constant(ps[i - 1].clone()));
            edges.push((number_name(i, n), number_name(j, n), s));
        }
        Graph::new(names, edges)
    }

    /// Γ_m(n): m rows of n vertices, edges exactly between different rows.
    pub fn gamma_m_n(m: usize, n: usize, param: Option<Scalar>) -> Graph {
        let name = |r: usize, c: usize| format!("r{}c{}", number_name(r + 1, m), number_name(c + 1, n));
        let mut vertices = Vec::new();
        for r in 0..m {
            for c in 0..n {
                vertices.push(name(r, c));
            }
        }
        let mut edges = Vec::new();
        for r1 in 0..m {
            for r2 in (r1 + 1)..m {
                for c1 in 0..n {
                    for c2 in 0..n {
                        edges.push((name(r1, c1), name(r2, c2), param.clone().map(LaurentPoly::constant)));
                    }
                }
            }
        }
        Graph::new(vertices, edges).expect("gamma graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.params.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .map_err(|_| Error::InvalidGraph(format!("unknown vertex `{name}`")))
    }

    pub fn name_of(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.params.keys().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The edge parameter s_uv (= s_vu).
    pub fn param(&self, u: usize, v: usize) -> Result<&LaurentPoly> {
        self.params.get(&(u.min(v), u.max(v))).ok_or_else(|| {
            Error::InvalidGraph(format!("no edge between `{}` and `{}`", self.names[u], self.names[v]))
        })
    }

    /// All edge parameters as constant scalars; errors when any is symbolic.
    pub fn scalar_params(&self) -> Result<BTreeMap<(usize, usize), Scalar>> {
        let mut out = BTreeMap::new();
        for (k, p) in &self.params {
            let c = p.as_constant().ok_or_else(|| {
                Error::Unsupported(format!(
                    "edge parameter `{p}` is symbolic; a specialized scalar is required"
                ))
            })?;
            out.insert(*k, c);
        }
        Ok(out)
    }

    /// A tail is a vertex of valency 1.
    pub fn has_tail(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.degree(v) == 1)
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().1
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.component_count() == 1
    }

    fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            id[start] = next;
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if id[w] == usize::MAX {
                        id[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        (id, next)
    }

    pub fn validate_path(&self, p: &Path) -> Result<()> {
        for v in &p.verts {
            if *v >= self.vertex_count() {
                return Err(Error::InvalidPath(format!("vertex index {v} out of range")));
            }
        }
        for w in p.verts.windows(2) {
            if w[0] != w[1] && !self.adjacent(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "consecutive vertices `{}`, `{}` are neither equal nor adjacent",
                    self.names[w[0]], self.names[w[1]]
                )));
            }
        }
        Ok(())
    }

    /// The unique contracted path in the fixed-endpoint homotopy class of
    /// `p`, together with the number of cancelled traversal pairs per edge:
    /// the monomial relating the two words is `∏ s_e^{2·q_e}`.
    pub fn contract(&self, p: &Path) -> Result<(Path, BTreeMap<(usize, usize), i64>)> {
        self.validate_path(p)?;
        let mut stack: Vec<usize> = Vec::with_capacity(p.verts.len());
        for &v in &p.verts {
            if stack.last() == Some(&v) {
                continue; // stay step
            }
            if stack.len() >= 2 && stack[stack.len() - 2] == v {
                stack.pop(); // backtrack cancels the last edge pair
                continue;
            }
            stack.push(v);
        }
        let contracted = Path::new(stack);
        let mut q = BTreeMap::new();
        let before = p.edge_multiplicities();
        let after = contracted.edge_multiplicities();
        for (e, m) in before {
            let diff = m - after.get(&e).copied().unwrap_or(0);
            debug_assert!(diff >= 0 && diff % 2 == 0);
            if diff > 0 {
                q.insert(e, diff / 2);
            }
        }
        Ok((contracted, q))
    }

    /// The coefficient `∏ s_e^{2 q_e}` attached to a contraction.
    pub fn contraction_coefficient(&self, q: &BTreeMap<(usize, usize), i64>) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for ((u, v), k) in q {
            let s = self.param(*u, *v)?;
            acc = acc.mul(&s.pow(2 * k)?);
        }
        Ok(acc)
    }

    /// All contracted paths of edge length ≤ `max_len`, the empty path
    /// included, in (length, vertex-sequence) order.
    pub fn enumerate_contracted_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::empty()];
        let mut current: Vec<usize> = Vec::new();
        for start in 0..self.vertex_count() {
            current.push(start);
            self.extend_contracted(&mut current, max_len, &mut out);
            current.pop();
        }
        out.sort_by(|a, b| (a.edge_len(), &a.verts).cmp(&(b.edge_len(), &b.verts)));
        out
    }

    fn extend_contracted(&self, current: &mut Vec<usize>, max_len: usize, out: &mut Vec<Path>) {
        out.push(Path::new(current.clone()));
        if current.len() > max_len {
            return;
        }
        let last = *current.last().unwrap();
        let two_back = current.len().checked_sub(2).map(|i| current[i]);
        for w in self.adj[last].clone() {
            if Some(w) == two_back {
                continue;
            }
            current.push(w);
            self.extend_contracted(current, max_len, out);
            current.pop();
        }
    }

    /// BFS spanning forest from the lexicographically smallest vertex of
    /// each component; non-tree edges oriented small → large index carry the
    /// fundamental cycles.
    pub fn cycle_basis(&self) -> CycleBasis {
        let n = self.vertex_count();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut tree_edges = BTreeSet::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        depth[w] = depth[v] + 1;
                        tree_edges.insert((v.min(w), v.max(w)));
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut generators = Vec::new();
        for &(u, v) in self.params.keys() {
            if tree_edges.contains(&(u, v)) {
                continue;
            }
            // closed path: the oriented edge u→v, then back through the tree
            let back = tree_path(&parent, &depth, v, u);
            let mut verts = vec![u];
            verts.extend(back.verts);
            generators.push(CycleGenerator { edge: (u, v), cycle: Path::new(verts) });
        }
        CycleBasis { tree_edges, generators, parent, depth }
    }
}

fn default_param_name(u: &str, v: &str) -> String {
    format!("s_{u}_{v}")
}

fn number_name(i: usize, n: usize) -> String {
    let width = n.to_string().len();
    format!("{i:0width$}")
}

/// A path: a vertex sequence where consecutive vertices are equal or
/// adjacent; the empty sequence is allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn empty() -> Self {
        Path { verts: Vec::new() }
    }

    pub fn new(verts: Vec<usize>) -> Self {
        Path { verts }
    }

    pub fn from_names(g: &Graph, names: &[&str]) -> Result<Self> {
        let verts = names.iter().map(|n| g.index_of(n)).collect::<Result<Vec<_>>>()?;
        let p = Path::new(verts);
        g.validate_path(&p)?;
        Ok(p)
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.verts.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.verts.last().copied()
    }

    /// Number of edge steps (stay steps do not count).
    pub fn edge_len(&self) -> usize {
        self.verts.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn is_closed(&self) -> bool {
        !self.is_empty() && self.first() == self.last()
    }

    /// Reversal γ̂.
    pub fn reverse(&self) -> Path {
        Path { verts: self.verts.iter().rev().copied().collect() }
    }

    pub fn is_contracted(&self) -> bool {
        let v = &self.verts;
        for i in 0..v.len() {
            if i + 1 < v.len() && v[i] == v[i + 1] {
                return false;
            }
            if i + 2 < v.len() && v[i] == v[i + 2] {
                return false;
            }
        }
        true
    }

    /// Edge steps in order, as ordered vertex pairs.
    pub fn edge_steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.verts.windows(2).filter(|w| w[0] != w[1]).map(|w| (w[0], w[1]))
    }

    fn edge_multiplicities(&self) -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for (a, b) in self.edge_steps() {
            *out.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        out
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph: g }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.path.verts.iter().map(|&v| self.graph.name_of(v)).collect();
        write!(f, "[{}]", names.join(","))
    }
}

fn tree_path(parent: &[Option<usize>], depth: &[usize], from: usize, to: usize) -> Path {
    // ascend both endpoints to their lowest common ancestor
    let (mut a, mut b) = (from, to);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].expect("vertex below root has a parent");
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].expect("vertex below root has a parent");
        right.push(b);
    }
    while a != b {
        a = parent[a].expect("distinct vertices at equal depth have parents");
        b = parent[b].expect("distinct vertices at equal depth have parents");
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    Path::new(left)
}

/// Spanning forest plus one oriented generator per non-tree edge; the
/// generators carry their fundamental cycles and form a basis of H₁(Γ, Z).
#[derive(Debug, Clone)]
pub struct CycleBasis {
    pub tree_edges: BTreeSet<(usize, usize)>,
    pub generators: Vec<CycleGenerator>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CycleGenerator {
    /// Oriented small → large vertex index.
    pub edge: (usize, usize),
    /// Fundamental cycle: starts with the oriented edge, closes through the tree.
    pub cycle: Path,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Unique reduced path between two vertices inside the spanning forest
    /// (the vertices must share a component).
    pub fn tree_path(&self, from: usize, to: usize) -> Path {
        tree_path(&self.parent, &self.depth, from, to)
    }

    /// Signed crossing numbers of a path over every generator edge: +1 per
    /// traversal in the small→large orientation, −1 per reverse traversal.
    pub fn signed_crossings(&self, p: &Path) -> Vec<i64> {
        let index: BTreeMap<(usize, usize), usize> =
            self.generators.iter().enumerate().map(|(i, g)| (g.edge, i)).collect();
        let mut out = vec![0i64; self.generators.len()];
        for (a, b) in p.edge_steps() {
            let key = (a.min(b), a.max(b));
            if let Some(&i) = index.get(&key) {
                out[i] += if (a, b) == key { 1 } else { -1 };
            }
        }
        out
    }

    /// Variable name for each generator: `x` when there is a single one,
    /// `x1`, `x2`, … otherwise.
    pub fn var_names(&self) -> Vec<String> {
        if self.generators.len() == 1 {
            vec!["x".to_string()]
        } else {
            (1..=self.generators.len()).map(|i| format!("x{i}")).collect()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    u: String,
    v: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
}

impl Graph {
    pub fn from_json(text: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(text)?;
        let edges = file
            .edges
            .into_iter()
            .map(|e| {
                let s = e.s.map(|lit| parse_laurent(&lit)).transpose()?;
                Ok((e.u, e.v, s))
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::new(file.vertices, edges)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            vertices: self.names.clone(),
            edges: self
                .params
                .iter()
                .map(|((u, v), s)| EdgeFile {
                    u: self.names[*u].clone(),
                    v: self.names[*v].clone(),
                    s: Some(format!("{s}")),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_edge() -> Graph {
        Graph::path_graph(2, None)
    }

    #[test]
    fn contract_examples() {
        let g = one_edge();
        // (1,2,1) → ((1), q_12 = 1)
        let p = Path::from_names(&g, &["1", "2", "1"]).unwrap();
        let (c, q) = g.contract(&p).unwrap();
        assert_eq!(c.verts(), &[0]);
        assert_eq!(q.get(&(0, 1)), Some(&1));
        // (1,1,1) → ((1), no exponents)
        let p = Path::from_names(&g, &["1", "1", "1"]).unwrap();
        let (c, q) = g.contract(&p).unwrap();
        assert_eq!(c.verts(), &[0]);
        assert!(q.is_empty());
        // (1,2,3,2,1) in 1–2–3 → ((1), q_12 = q_23 = 1)
        let g3 = Graph::path_graph(3, None);
        let p = Path::from_names(&g3, &["1", "2", "3", "2", "1"]).unwrap();
        let (c, q) = g3.contract(&p).unwrap();
        assert_eq!(c.verts(), &[0]);
        assert_eq!(q.get(&(0, 1)), Some(&1));
        assert_eq!(q.get(&(1, 2)), Some(&1));
    }

    #[test]
    fn contract_is_idempotent() {
        let g = Graph::cycle_graph(4, None).unwrap();
        let p = Path::from_names(&g, &["1", "2", "2", "3", "2", "1", "4"]).unwrap();
        let (c, _) = g.contract(&p).unwrap();
        assert!(c.is_contracted());
        let (c2, q2) = g.contract(&c).unwrap();
        assert_eq!(c, c2);
        assert!(q2.is_empty());
    }

    #[test]
    fn reversal_duality() {
        let g = Graph::cycle_graph(5, None).unwrap();
        let p = Path::from_names(&g, &["1", "2", "3", "2", "1", "5"]).unwrap();
        let (c, q) = g.contract(&p).unwrap();
        let (cr, qr) = g.contract(&p.reverse()).unwrap();
        assert_eq!(cr, c.reverse());
        assert_eq!(q, qr);
    }

    #[test]
    fn invalid_path_rejected() {
        let g = Graph::path_graph(3, None);
        let p = Path::new(vec![0, 2]);
        assert!(g.contract(&p).is_err());
    }

    #[test]
    fn enumerate_one_edge() {
        let g = one_edge();
        let paths = g.enumerate_contracted_paths(1);
        assert_eq!(paths.len(), 5);
        assert!(paths[0].is_empty());
    }

    #[test]
    fn enumerate_tree_full() {
        // a tree with n vertices has n²+1 contracted paths in total
        for n in 2..=6 {
            let g = Graph::path_graph(n, None);
            let paths = g.enumerate_contracted_paths(n - 1);
            assert_eq!(paths.len(), n * n + 1, "path graph on {n} vertices");
        }
    }

    #[test]
    fn enumerate_edgeless() {
        let g = Graph::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        let paths = g.enumerate_contracted_paths(3);
        assert_eq!(paths.len(), 3); // empty + two trivial paths
    }

    #[test]
    fn cycle_basis_ranks() {
        let c5 = Graph::cycle_graph(5, None).unwrap();
        assert_eq!(c5.cycle_basis().rank(), 1);
        let tree = Graph::path_graph(6, None);
        assert_eq!(tree.cycle_basis().rank(), 0);
        let g23 = Graph::gamma_m_n(2, 3, None);
        assert_eq!(g23.vertex_count(), 6);
        assert_eq!(g23.edge_count(), 9);
        assert_eq!(g23.cycle_basis().rank(), 4);
    }

    #[test]
    fn fundamental_cycles_are_closed_and_valid() {
        let g = Graph::gamma_m_n(2, 3, None);
        let basis = g.cycle_basis();
        for gen in &basis.generators {
            assert!(gen.cycle.is_closed());
            g.validate_path(&gen.cycle).unwrap();
            assert_eq!(gen.cycle.first(), Some(gen.edge.0));
            let crossings = basis.signed_crossings(&gen.cycle);
            // a fundamental cycle crosses its own edge once, the others never
            for (other, c) in basis.generators.iter().zip(crossings) {
                assert_eq!(c, if other.edge == gen.edge { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn tails() {
        assert!(Graph::path_graph(3, None).has_tail());
        assert!(!Graph::cycle_graph(4, None).unwrap().has_tail());
        let single = Graph::new(vec!["a".into()], vec![]).unwrap();
        assert!(!single.has_tail());
    }

    #[test]
    fn asymmetric_table_rejected() {
        let mut table = BTreeMap::new();
        table.insert(("1".to_string(), "2".to_string()), LaurentPoly::constant(Scalar::from_i64(2)));
        table.insert(("2".to_string(), "1".to_string()), LaurentPoly::constant(Scalar::from_i64(3)));
        let err = Graph::from_directed_table(vec!["1".into(), "2".into()], &table);
        assert!(err.is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = Graph::cycle_graph(3, Some(&[Scalar::from_i64(1), Scalar::ratio(1, 2), Scalar::from_i64(3)]))
            .unwrap();
        let text = g.to_json();
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(g, back);
        // default symbolic parameter
        let h = Graph::from_json(r#"{"vertices":["1","2"],"edges":[{"u":"1","v":"2"}]}"#).unwrap();
        assert_eq!(format!("{}", h.param(0, 1).unwrap()), "s_1_2");
    }

    #[test]
    fn non_unit_param_rejected() {
        let p = LaurentPoly::var("x").add(&LaurentPoly::one());
        let err = Graph::new(vec!["1".into(), "2".into()], vec![("1".into(), "2".into(), Some(p))]);
        assert!(err.is_err());
    }
}
