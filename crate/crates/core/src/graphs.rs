//! Form graphs, t-equivalence, brute-force canonical forms, and line graphs of
//! multigraphs together with root reconstruction and the boundary maps of a
//! root.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::field::{FieldMatrix, FieldVector};
use crate::symplectic::SymplecticSpace;

/// Adjacency rows are single words.
pub const MAX_VERTICES: usize = 64;

/// Largest graph accepted by [`FormGraph::canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Simple undirected graph on at most 64 vertices, one adjacency word per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormGraph {
    n: usize,
    adj: Vec<u64>,
}

impl FormGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "form graphs are limited to {MAX_VERTICES} vertices");
        Self { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return invalid(format!("graphs are limited to {MAX_VERTICES} vertices"));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return invalid(format!("bad edge ({u}, {v}) for {n} vertices"));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// `G(S)`: vertices are spanning-set positions, edges where `ω(s_u, s_v) ≠ 0`.
    pub fn from_space(sp: &SymplecticSpace) -> Result<Self> {
        let m = sp.spanning_set().len();
        if m > MAX_VERTICES {
            return Err(Error::Unsupported(format!(
                "spanning sets above {MAX_VERTICES} vectors"
            )));
        }
        let gram = sp.spanning_gram();
        let mut g = Self::empty(m);
        for u in 0..m {
            for v in 0..u {
                if gram.get(u, v) != 0 {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbor_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adjacent(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// GF(2) Gram matrix of the sigma-game form on this graph.
    pub fn gram(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(2, self.n, self.n);
        for (u, v) in self.edges() {
            m.set(u, v, 1);
            m.set(v, u, 1);
        }
        m
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            out.push((0..self.n).filter(|&v| comp >> v & 1 == 1).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edge_count() == self.n - 1
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().take(i) {
                if self.adjacent(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    /// Replaces basis vector `j` with `s_i + s_j` (requires `i ~ j`), acting on
    /// the graph alone: `j`'s neighbourhood becomes `N(i) Δ N(j)` minus `j`.
    pub fn t_move(&self, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= self.n || j >= self.n || !self.adjacent(i, j) {
            return invalid(format!("t-move needs adjacent vertices, got ({i}, {j})"));
        }
        let row = (self.adj[i] ^ self.adj[j]) & !(1 << j);
        let mut g = self.clone();
        for v in 0..self.n {
            if v != j {
                g.set_edge(v, j, row >> v & 1 == 1);
            }
        }
        Ok(g)
    }

    /// Lexicographically smallest upper-triangle bit string over all vertex
    /// permutations. Bits are listed column by column: (0,1), (0,2), (1,2),
    /// (0,3), ... so every prefix only involves the first few positions, which
    /// lets the search cut branches whose prefix already exceeds the best.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        self.canonical_labelling().map(|(cf, _)| cf)
    }

    /// Canonical form together with the permutation `order` such that
    /// position `k` of the canonical graph is vertex `order[k]`.
    pub fn canonical_labelling(&self) -> Result<(CanonicalForm, Vec<usize>)> {
        if self.n > MAX_CANONICAL_VERTICES {
            return Err(Error::Unsupported(format!(
                "canonical forms above {MAX_CANONICAL_VERTICES} vertices"
            )));
        }
        let total = self.n * self.n.saturating_sub(1) / 2;
        let mut search = CanonSearch {
            g: self,
            total,
            best: None,
            order: Vec::with_capacity(self.n),
        };
        search.place(0, 0, 0);
        let (bits, order) = search.best.unwrap_or((0, Vec::new()));
        Ok((CanonicalForm { n: self.n, bits }, order))
    }

    /// Whether some six vertices induce the E6 tree.
    pub fn contains_induced_e6(&self) -> bool {
        let target = e6_graph().canonical_form().expect("six vertices");
        subsets(self.n, 6).any(|set| {
            let h = self.induced(&set);
            h.is_connected() && h.edge_count() == 5 && h.canonical_form().ok() == Some(target)
        })
    }
}

struct CanonSearch<'a> {
    g: &'a FormGraph,
    total: usize,
    best: Option<(u64, Vec<usize>)>,
    order: Vec<usize>,
}

impl CanonSearch<'_> {
    fn place(&mut self, used: u64, bits: u64, len: usize) {
        let k = self.order.len();
        if k == self.g.n {
            if self.best.as_ref().is_none_or(|(b, _)| bits < *b) {
                self.best = Some((bits, self.order.clone()));
            }
            return;
        }
        for v in 0..self.g.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut b = bits;
            for &u in &self.order {
                b = b << 1 | self.g.adjacent(u, v) as u64;
            }
            let l = len + k;
            if let Some((best, _)) = &self.best {
                if b > best >> (self.total - l) {
                    continue;
                }
            }
            self.order.push(v);
            self.place(used | 1 << v, b, l);
            self.order.pop();
        }
    }
}

/// Isomorphism-invariant encoding of a small graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

impl CanonicalForm {
    /// The graph whose upper-triangle string is exactly this encoding.
    pub fn to_graph(&self) -> FormGraph {
        let total = self.n * self.n.saturating_sub(1) / 2;
        let mut g = FormGraph::empty(self.n);
        let mut idx = 0;
        for k in 1..self.n {
            for j in 0..k {
                idx += 1;
                if self.bits >> (total - idx) & 1 == 1 {
                    g.set_edge(j, k, true);
                }
            }
        }
        g
    }
}

/// E6: the path 0-1-2-3-4 with vertex 5 hanging off the middle.
pub fn e6_graph() -> FormGraph {
    FormGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).expect("valid edges")
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let masks: Box<dyn Iterator<Item = u64>> = if k > n {
        Box::new(std::iter::empty())
    } else {
        Box::new((0u64..1 << n).filter(move |m| m.count_ones() as usize == k))
    };
    masks.map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

/// All graphs on `n` vertices up to isomorphism, as canonical forms in
/// ascending order. Built by adding one vertex at a time to every class on
/// `n - 1` vertices with every possible neighbourhood.
pub fn enumerate_graphs(n: usize) -> Result<Vec<CanonicalForm>> {
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::Unsupported(format!(
            "graph enumeration above {MAX_CANONICAL_VERTICES} vertices"
        )));
    }
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(FormGraph::empty(0).canonical_form()?);
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for cf in &level {
            let base = cf.to_graph();
            for nbrs in 0u64..1 << (m - 1) {
                let mut g = FormGraph::empty(m);
                for (u, v) in base.edges() {
                    g.set_edge(u, v, true);
                }
                for u in 0..m - 1 {
                    if nbrs >> u & 1 == 1 {
                        g.set_edge(u, m - 1, true);
                    }
                }
                next.insert(g.canonical_form()?);
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// Connected graphs on `n` vertices up to isomorphism, as canonical representatives.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<FormGraph>> {
    Ok(enumerate_graphs(n)?
        .into_iter()
        .map(|cf| cf.to_graph())
        .filter(FormGraph::is_connected)
        .collect())
}

/// Replaces `basis[j]` with `basis[i] + basis[j]`; requires `ω(s_i, s_j) = 1`
/// over GF(2).
pub fn t_move(sp: &SymplecticSpace, basis: &[FieldVector], i: usize, j: usize) -> Result<Vec<FieldVector>> {
    if sp.p() != 2 {
        return invalid("t-moves are defined over GF(2)");
    }
    if i == j || i >= basis.len() || j >= basis.len() {
        return invalid(format!("bad t-move indices ({i}, {j})"));
    }
    if sp.omega(&basis[i], &basis[j]) != 1 {
        return invalid(format!("basis vectors {i} and {j} are not adjacent"));
    }
    let mut out = basis.to_vec();
    out[j] = basis[i].add(&basis[j]);
    Ok(out)
}

/// Result of a t-equivalence closure search.
#[derive(Clone, Debug)]
pub struct TClosure {
    pub classes: BTreeSet<CanonicalForm>,
    /// False when the state budget ran out before the search finished.
    pub complete: bool,
}

impl TClosure {
    pub fn graphs(&self) -> impl Iterator<Item = FormGraph> + '_ {
        self.classes.iter().map(CanonicalForm::to_graph)
    }
}

/// Isomorphism classes of all graphs t-equivalent to `g`, by breadth-first
/// search over t-moves with canonical-form deduplication.
pub fn t_equivalence_closure(g: &FormGraph, max_states: usize) -> Result<TClosure> {
    if !g.is_connected() {
        return invalid("t-equivalence closure expects a connected graph");
    }
    let start = g.canonical_form()?;
    let mut classes = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(cf) = queue.pop_front() {
        let h = cf.to_graph();
        for (u, v) in h.edges() {
            for (i, j) in [(u, v), (v, u)] {
                let next = h.t_move(i, j)?.canonical_form()?;
                if classes.contains(&next) {
                    continue;
                }
                if classes.len() >= max_states {
                    return Ok(TClosure {
                        classes,
                        complete: false,
                    });
                }
                classes.insert(next);
                queue.push_back(next);
            }
        }
    }
    Ok(TClosure {
        classes,
        complete: true,
    })
}

/// Orthogonal type straight from the definition: some t-equivalent graph is a
/// tree with an induced E6. Only meaningful when the closure completes.
pub fn orthogonal_type_by_definition(g: &FormGraph, max_states: usize) -> Result<Option<bool>> {
    let closure = t_equivalence_closure(g, max_states)?;
    let found = closure.graphs().any(|h| h.is_tree() && h.contains_induced_e6());
    Ok((found || closure.complete).then_some(found))
}

/// Multigraph without loops; parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u == v || u >= vertices || v >= vertices {
                return invalid(format!("bad multigraph edge ({u}, {v})"));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Vertices are the edges; two are adjacent when they share exactly one endpoint.
    pub fn line_graph(&self) -> Result<FormGraph> {
        let m = self.edges.len();
        if m > MAX_VERTICES {
            return invalid(format!("line graphs are limited to {MAX_VERTICES} vertices"));
        }
        let mut g = FormGraph::empty(m);
        for i in 0..m {
            for j in 0..i {
                if shared_endpoints(self.edges[i], self.edges[j]) == 1 {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        self.bfs_tree().0.iter().all(|&seen| seen)
    }

    /// BFS from vertex 0: visited flags and the indices of tree edges in
    /// discovery order.
    fn bfs_tree(&self) -> (Vec<bool>, Vec<usize>) {
        let mut seen = vec![false; self.vertices];
        let mut tree = Vec::new();
        if self.vertices == 0 {
            return (seen, tree);
        }
        let mut incident = vec![Vec::new(); self.vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push((e, v));
            incident[v].push((e, u));
        }
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &(e, w) in &incident[u] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(e);
                    queue.push_back(w);
                }
            }
        }
        (seen, tree)
    }

    /// Boundary map `∂` (|V|×|E|, each edge to the sum of its endpoints), its
    /// adjoint `δ = ∂ᵀ` (|E|×|V|, a vertex configuration `y` to the functional
    /// `e ↦ y_u + y_v`), and the edges of a BFS spanning tree rooted at 0.
    pub fn root_graph_maps(&self) -> Result<RootMaps> {
        if !self.is_connected() {
            return invalid("root multigraph must be connected");
        }
        let mut boundary = FieldMatrix::zeros(2, self.vertices, self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            boundary.set(u, e, 1);
            boundary.set(v, e, 1);
        }
        let coboundary = boundary.transpose();
        let mut spanning_tree_edges = self.bfs_tree().1;
        spanning_tree_edges.sort_unstable();
        Ok(RootMaps {
            boundary,
            coboundary,
            spanning_tree_edges,
        })
    }
}

fn shared_endpoints(a: (usize, usize), b: (usize, usize)) -> usize {
    (a.0 == b.0 || a.0 == b.1) as usize + (a.1 == b.0 || a.1 == b.1) as usize
}

#[derive(Clone, Debug)]
pub struct RootMaps {
    pub boundary: FieldMatrix,
    pub coboundary: FieldMatrix,
    pub spanning_tree_edges: Vec<usize>,
}

/// Either the graph is of orthogonal type or it is the line graph of the
/// given root, whose edge `i` corresponds to vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphClass {
    OrthogonalType,
    LineGraph(Multigraph),
}

/// Classifies a connected graph by attempting root reconstruction.
pub fn classify(g: &FormGraph) -> Result<GraphClass> {
    if !g.is_connected() {
        return invalid("classification expects a connected graph");
    }
    Ok(match recognize_root_multigraph(g) {
        Some(root) => GraphClass::LineGraph(root),
        None => GraphClass::OrthogonalType,
    })
}

/// Finds a connected multigraph whose line graph is `g`, with root edge `i`
/// playing the role of vertex `i`. `None` when no such multigraph exists.
pub fn recognize_root_multigraph(g: &FormGraph) -> Option<Multigraph> {
    all_root_multigraphs(g, 1).into_iter().next()
}

/// Enumerates root multigraphs of a connected graph, up to `limit` of them.
///
/// Vertices are visited in BFS order. Each one is assigned an endpoint pair
/// sharing exactly one endpoint with its BFS parent, the other endpoint being
/// either a root vertex already in use or the next fresh label; the
/// assignment must agree with `g` on every pair assigned so far. Fresh labels
/// are handed out in order and the first child of the start vertex always
/// shares endpoint 0, so no two results differ by a mere relabelling of the
/// root's vertices.
pub fn all_root_multigraphs(g: &FormGraph, limit: usize) -> Vec<Multigraph> {
    let n = g.n();
    if n == 0 {
        return vec![Multigraph {
            vertices: 0,
            edges: Vec::new(),
        }];
    }
    if !g.is_connected() || limit == 0 {
        return Vec::new();
    }
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut seen = 1u64;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for v in g.neighbors(u) {
            if seen >> v & 1 == 0 {
                seen |= 1 << v;
                parent[v] = u;
                order.push(v);
            }
        }
    }
    let mut search = RootSearch {
        g,
        order: &order,
        parent: &parent,
        pairs: vec![(0, 0); n],
        limit,
        found: Vec::new(),
    };
    search.pairs[0] = (0, 1);
    search.extend(1, 2);
    search.found
}

struct RootSearch<'a> {
    g: &'a FormGraph,
    order: &'a [usize],
    parent: &'a [usize],
    pairs: Vec<(usize, usize)>,
    limit: usize,
    found: Vec<Multigraph>,
}

impl RootSearch<'_> {
    fn extend(&mut self, idx: usize, fresh: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if idx == self.order.len() {
            self.found.push(Multigraph {
                vertices: fresh,
                edges: self.pairs.clone(),
            });
            return;
        }
        let v = self.order[idx];
        let (a, b) = self.pairs[self.parent[v]];
        let shared: &[usize] = if idx == 1 { &[a] } else { &[a, b] };
        for &s in shared {
            for c in 0..=fresh {
                if c == a || c == b {
                    continue;
                }
                let pair = (s.min(c), s.max(c));
                if self.consistent(idx, v, pair) {
                    self.pairs[v] = pair;
                    self.extend(idx + 1, if c == fresh { fresh + 1 } else { fresh });
                    if self.found.len() >= self.limit {
                        return;
                    }
                }
            }
        }
    }

    fn consistent(&self, idx: usize, v: usize, pair: (usize, usize)) -> bool {
        self.order[..idx]
            .iter()
            .all(|&u| (shared_endpoints(self.pairs[u], pair) == 1) == self.g.adjacent(u, v))
    }
}

/// Multiset of edge endpoint pairs, for comparing roots up to edge order.
pub fn multigraph_signature(m: &Multigraph) -> BTreeMap<(usize, usize), usize> {
    let mut sig = BTreeMap::new();
    for &(u, v) in &m.edges {
        *sig.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }
    sig
}
