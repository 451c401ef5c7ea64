//! Gain graphs: simple undirected graphs whose oriented edges carry
//! unit-complex gains, with the reverse orientation carrying the conjugate.
//!
//! Gains are stored once per undirected edge in canonical `(u, v)` order with
//! `u < v`; querying the opposite orientation returns the conjugate, so the
//! inverse-gain constraint holds by construction.

use num_complex::Complex64;
use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Modulus slack accepted on input gains before rejection. Inputs inside the
/// slack are renormalized onto the unit circle, so decimal text entry of
/// irrational gains like (1+i)/sqrt(2) survives.
pub const GAIN_INPUT_TOL: f64 = 1e-6;

/// Tolerance on |switched gain - 1| used by the balance decision.
pub const BALANCE_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Gain
// ---------------------------------------------------------------------------

/// A unit-modulus complex scalar attached to an oriented edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gain(Complex64);

impl Gain {
    /// Validates that `z` lies on the unit circle within [`GAIN_INPUT_TOL`]
    /// and renormalizes it exactly onto the circle.
    pub fn new(z: Complex64) -> Result<Self> {
        let modulus = z.norm();
        if (modulus - 1.0).abs() > GAIN_INPUT_TOL {
            return Err(Error::NonUnitGain(modulus));
        }
        Ok(Gain(z / modulus))
    }

    /// The gain `1` (trivial).
    pub fn one() -> Self {
        Gain(Complex64::new(1.0, 0.0))
    }

    /// Unit complex number with the given angle in radians.
    pub fn from_angle(theta: f64) -> Self {
        Gain(Complex64::from_polar(1.0, theta))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// Gain of the reversed orientation (the inverse, which is the conjugate
    /// on the unit circle).
    pub fn conj(&self) -> Self {
        Gain(self.0.conj())
    }
}

impl std::ops::Neg for Gain {
    type Output = Gain;
    fn neg(self) -> Gain {
        Gain(-self.0)
    }
}

impl std::ops::Mul for Gain {
    type Output = Gain;
    fn mul(self, rhs: Gain) -> Gain {
        Gain(self.0 * rhs.0)
    }
}

// ---------------------------------------------------------------------------
// GainGraph
// ---------------------------------------------------------------------------

/// An undirected edge in canonical orientation `u < v` with its stored gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub gain: Gain,
}

/// A complex-unit gain graph: a simple undirected graph together with a
/// unit-modulus gain on each oriented edge, the reverse orientation carrying
/// the conjugate.
#[derive(Debug, Clone)]
pub struct GainGraph {
    n: usize,
    edges: Vec<Edge>,
    /// Adjacency lists: `adj[u]` holds `(neighbor, edge index)`.
    adj: Vec<Vec<(usize, usize)>>,
}

impl GainGraph {
    /// Builds a gain graph from an edge list. Edges may be given in either
    /// orientation; they are canonicalized to `u < v`, conjugating the gain
    /// when flipped. Rejects self-loops, duplicates, out-of-range indices,
    /// and non-unit gains.
    pub fn build(n: usize, edge_list: &[(usize, usize, Complex64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, z) in edge_list {
            if a >= n {
                return Err(Error::BadIndex { index: a, n });
            }
            if b >= n {
                return Err(Error::BadIndex { index: b, n });
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let gain = Gain::new(z)?;
            let (u, v, gain) = if a < b {
                (a, b, gain)
            } else {
                (b, a, gain.conj())
            };
            edges.push(Edge { u, v, gain });
        }
        edges.sort_by_key(|e| (e.u, e.v));
        for w in edges.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(Error::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, idx));
            adj[e.v].push((e.u, idx));
        }
        Ok(GainGraph { n, edges, adj })
    }

    /// Builds a graph whose gains are already validated [`Gain`]s.
    pub fn from_gains(n: usize, edge_list: &[(usize, usize, Gain)]) -> Result<Self> {
        let raw: Vec<(usize, usize, Complex64)> = edge_list
            .iter()
            .map(|&(u, v, g)| (u, v, g.value()))
            .collect();
        Self::build(n, &raw)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical orientation, sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `u` with the index of the connecting edge.
    pub fn neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.adj[u]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::BadIndex {
                index: v,
                n: self.n,
            });
        }
        Ok(self.adj[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|a| a.len()).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].iter().any(|&(w, _)| w == v)
    }

    /// Gain of the oriented edge `u -> v`, or `None` if not adjacent.
    /// The stored canonical gain is returned for `u < v` and its conjugate
    /// for `u > v`.
    pub fn gain(&self, u: usize, v: usize) -> Option<Complex64> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let &(_, idx) = self.adj[u].iter().find(|&&(w, _)| w == v)?;
        let e = &self.edges[idx];
        if u == e.u {
            Some(e.gain.value())
        } else {
            Some(e.gain.conj().value())
        }
    }

    /// Multiplies every gain by -1 (the graph written `-Phi`). Involution.
    pub fn negate(&self) -> GainGraph {
        self.map_gains(|g| -g)
    }

    /// The underlying graph as a gain graph with all gains 1, written `(G, 1)`.
    pub fn underlying(&self) -> GainGraph {
        self.map_gains(|_| Gain::one())
    }

    fn map_gains(&self, f: impl Fn(Gain) -> Gain) -> GainGraph {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.gain = f(e.gain);
        }
        out
    }

    /// True when the same vertex set and edge set (ignoring gains) coincide.
    pub fn same_underlying(&self, other: &GainGraph) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(other.edges.iter())
                .all(|(a, b)| a.u == b.u && a.v == b.v)
    }

    /// Connectivity of the underlying graph by breadth-first traversal.
    /// The empty graph and a single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Two-coloring of the underlying graph when bipartite, `None` otherwise.
    /// Depends only on the underlying graph, never on gains.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &(w, _) in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Applies a switching function: the gain of `u -> v` becomes
    /// `zeta(u)^-1 * gain(u, v) * zeta(v)`.
    pub fn apply_switching(&self, zeta: &SwitchingFunction) -> Result<GainGraph> {
        if zeta.len() != self.n {
            return Err(Error::MissingVertexValue {
                expected: self.n,
                got: zeta.len(),
            });
        }
        let mut out = self.clone();
        for e in &mut out.edges {
            e.gain = zeta.get(e.u).conj() * e.gain * zeta.get(e.v);
        }
        Ok(out)
    }

    /// Removes the undirected edge `{u, v}`.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<GainGraph> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !self.has_edge(a, b) {
            return Err(Error::EdgeNotPresent(u, v));
        }
        let kept: Vec<(usize, usize, Gain)> = self
            .edges
            .iter()
            .filter(|e| !(e.u == a && e.v == b))
            .map(|e| (e.u, e.v, e.gain))
            .collect();
        GainGraph::from_gains(self.n, &kept)
    }

    /// Induced subgraph on `vertices`, reindexed to `0..vertices.len()` in
    /// the given order. Indices must be distinct and in range.
    pub fn induced(&self, vertices: &[usize]) -> Result<GainGraph> {
        let mut map = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            if old >= self.n {
                return Err(Error::BadIndex {
                    index: old,
                    n: self.n,
                });
            }
            map[old] = new;
        }
        let edges: Vec<(usize, usize, Gain)> = self
            .edges
            .iter()
            .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
            .map(|e| (map[e.u], map[e.v], e.gain))
            .collect();
        GainGraph::from_gains(vertices.len(), &edges)
    }

    /// Vertices with nonzero degree, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// Spanning-forest switching propagation: `zeta` making every tree edge
    /// switch to gain 1, the BFS parents, and the tree-edge marks.
    fn spanning_switch(&self) -> (Vec<Gain>, Vec<Option<usize>>, Vec<bool>) {
        let mut zeta = vec![Gain::one(); self.n];
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut visited = vec![false; self.n];
        let mut tree_edge = vec![false; self.edges.len()];

        for root in 0..self.n {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(w, idx) in &self.adj[u] {
                    if !visited[w] {
                        visited[w] = true;
                        parent[w] = Some(u);
                        tree_edge[idx] = true;
                        // Tree edge u -> w switches to 1 when
                        // zeta(w) = conj(gain(u, w)) * zeta(u).
                        let g = Gain::new(self.gain(u, w).unwrap()).unwrap();
                        zeta[w] = g.conj() * zeta[u];
                        queue.push_back(w);
                    }
                }
            }
        }
        (zeta, parent, tree_edge)
    }

    /// Decides balance. When balanced the witness is a switching function
    /// `zeta` with `apply_switching(self, zeta)` equal to `(G, 1)`; when
    /// unbalanced it is a cycle whose gain differs from 1.
    ///
    /// Per component: a BFS spanning tree is rooted with `zeta(root) = 1`
    /// and propagated so every tree edge switches to gain 1; each non-tree
    /// edge is then checked against [`BALANCE_TOL`].
    pub fn balance(&self) -> Balance {
        let one = Complex64::new(1.0, 0.0);
        let (zeta, parent, tree_edge) = self.spanning_switch();
        for (idx, e) in self.edges.iter().enumerate() {
            if tree_edge[idx] {
                continue;
            }
            let switched = zeta[e.u].conj().value() * e.gain.value() * zeta[e.v].value();
            if (switched - one).norm() > BALANCE_TOL {
                let cycle = self.fundamental_cycle(e.u, e.v, &parent);
                return Balance::Unbalanced(cycle);
            }
        }
        Balance::Balanced(SwitchingFunction::from_gains(zeta))
    }

    pub fn is_balanced(&self) -> bool {
        matches!(self.balance(), Balance::Balanced(_))
    }

    /// Quantitative distance from balance: the largest |switched gain - 1|
    /// over non-tree edges. Zero for forests and balanced graphs (up to
    /// rounding); the graph is balanced iff this stays within
    /// [`BALANCE_TOL`].
    pub fn imbalance(&self) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        let (zeta, _, tree_edge) = self.spanning_switch();
        self.edges
            .iter()
            .enumerate()
            .filter(|(idx, _)| !tree_edge[*idx])
            .map(|(_, e)| {
                (zeta[e.u].conj().value() * e.gain.value() * zeta[e.v].value() - one).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Cycle closed by the non-tree edge `{u, v}`: tree path from `u` to `v`
    /// plus the edge back.
    fn fundamental_cycle(&self, u: usize, v: usize, parent: &[Option<usize>]) -> Cycle {
        let path_to_root = |mut x: usize| {
            let mut path = vec![x];
            while let Some(p) = parent[x] {
                path.push(p);
                x = p;
            }
            path
        };
        let pu = path_to_root(u);
        let pv = path_to_root(v);
        // Strip the common tail above the lowest common ancestor.
        let mut iu = pu.len();
        let mut iv = pv.len();
        while iu > 0 && iv > 0 && pu[iu - 1] == pv[iv - 1] {
            iu -= 1;
            iv -= 1;
        }
        // u .. lca .. v, then the closing edge v -> u.
        let mut verts: Vec<usize> = pu[..=iu].to_vec();
        verts.extend(pv[..iv].iter().rev());
        Cycle::new(self, &verts).expect("fundamental cycle is a valid cycle")
    }

    /// Switching equivalence: `self ~ other` iff the edgewise-ratio graph
    /// (same edges, gain `g1 * conj(g2)`) is balanced. Requires the same
    /// underlying graph.
    pub fn switching_equivalent(&self, other: &GainGraph) -> Result<bool> {
        if !self.same_underlying(other) {
            return Err(Error::DifferentUnderlyingGraph);
        }
        let ratio_edges: Vec<(usize, usize, Gain)> = self
            .edges
            .iter()
            .zip(other.edges.iter())
            .map(|(a, b)| (a.u, a.v, a.gain * b.gain.conj()))
            .collect();
        let ratio = GainGraph::from_gains(self.n, &ratio_edges)?;
        Ok(ratio.is_balanced())
    }

    /// Product of the oriented gains along the cycle's stored traversal.
    /// The real part is independent of the traversal orientation.
    pub fn cycle_gain(&self, cycle: &Cycle) -> Result<Complex64> {
        cycle.validate(self)?;
        let verts = cycle.vertices();
        let mut product = Complex64::new(1.0, 0.0);
        for i in 0..verts.len() {
            let u = verts[i];
            let v = verts[(i + 1) % verts.len()];
            product *= self
                .gain(u, v)
                .ok_or_else(|| Error::NotACycle(format!("({u}, {v}) not an edge")))?;
        }
        Ok(product)
    }
}

/// Outcome of the balance decision with its witness.
#[derive(Debug, Clone)]
pub enum Balance {
    /// A switching function carrying the graph onto `(G, 1)`.
    Balanced(SwitchingFunction),
    /// A cycle whose gain differs from 1.
    Unbalanced(Cycle),
}

// ---------------------------------------------------------------------------
// SwitchingFunction
// ---------------------------------------------------------------------------

/// A unit-complex value per vertex; switching transforms the gain of
/// `u -> v` into `zeta(u)^-1 * gain * zeta(v)`.
#[derive(Debug, Clone)]
pub struct SwitchingFunction {
    values: Vec<Gain>,
}

impl SwitchingFunction {
    pub fn identity(n: usize) -> Self {
        SwitchingFunction {
            values: vec![Gain::one(); n],
        }
    }

    pub fn from_gains(values: Vec<Gain>) -> Self {
        SwitchingFunction { values }
    }

    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let values = values
            .into_iter()
            .map(Gain::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(SwitchingFunction { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> Gain {
        self.values[v]
    }

    pub fn gains(&self) -> &[Gain] {
        &self.values
    }
}

// ---------------------------------------------------------------------------
// Cycle
// ---------------------------------------------------------------------------

/// A simple cycle stored in canonical form: minimal vertex first, and of the
/// two traversal directions the one whose second vertex is smaller than its
/// last. This fixes both rotation and reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Validates `vertices` as a simple cycle of `g` (length >= 3, distinct,
    /// consecutive vertices adjacent, last adjacent to first) and stores the
    /// canonical form.
    pub fn new(g: &GainGraph, vertices: &[usize]) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::NotACycle(format!("length {} < 3", vertices.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in vertices {
            if v >= g.vertex_count() {
                return Err(Error::BadIndex {
                    index: v,
                    n: g.vertex_count(),
                });
            }
            if !seen.insert(v) {
                return Err(Error::NotACycle(format!("repeated vertex {v}")));
            }
        }
        for i in 0..vertices.len() {
            let u = vertices[i];
            let v = vertices[(i + 1) % vertices.len()];
            if !g.has_edge(u.min(v), u.max(v)) {
                return Err(Error::NotACycle(format!("({u}, {v}) not an edge")));
            }
        }
        Ok(Self::canonicalize(vertices))
    }

    /// Canonical form without adjacency validation. Used where the caller
    /// guarantees cycle-ness (internal enumeration).
    pub(crate) fn canonicalize(vertices: &[usize]) -> Self {
        let len = vertices.len();
        let min_pos = (0..len).min_by_key(|&i| vertices[i]).unwrap();
        let rotated: Vec<usize> = (0..len).map(|i| vertices[(min_pos + i) % len]).collect();
        let canonical = if rotated[1] <= rotated[len - 1] {
            rotated
        } else {
            // Reverse, keeping the minimal vertex first.
            let mut rev = rotated;
            rev[1..].reverse();
            rev
        };
        Cycle {
            vertices: canonical,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of vertices (equal to the number of edges). Never below 3.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    fn validate(&self, g: &GainGraph) -> Result<()> {
        for i in 0..self.vertices.len() {
            let u = self.vertices[i];
            let v = self.vertices[(i + 1) % self.vertices.len()];
            if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u.min(v), u.max(v)) {
                return Err(Error::NotACycle(format!("({u}, {v}) not an edge")));
            }
        }
        Ok(())
    }
}
