//! Cycle, elementary-subgraph, and dissection-subgraph enumeration, and the
//! combinatorial determinant / characteristic-polynomial coefficient
//! formulas they feed.
//!
//! An elementary subgraph is a vertex-disjoint union of single edges and
//! cycles; a dissection subgraph additionally allows isolated vertices.
//! Enumeration precomputes all cycles once and assembles disjoint unions by
//! backtracking over (edge | cycle) components with a vertex-occupancy
//! bitmask. Exponential, which is fine at the n <= 12 scale the formulas
//! accept, and easy to check against a brute-force generator.

use crate::error::{Error, Result};
use crate::graph::{Cycle, GainGraph};
use crate::poly::{CharPolyCoeffs, PolyBasis};

/// The coefficient formulas refuse graphs above this size rather than run
/// unbounded time.
pub const MAX_FORMULA_VERTICES: usize = 12;

// ---------------------------------------------------------------------------
// Cycle enumeration
// ---------------------------------------------------------------------------

/// All simple cycles of length >= 3, each once, in canonical form.
///
/// DFS rooted at each vertex in turn; paths may only visit vertices larger
/// than the root, so every cycle is discovered exactly at its minimal
/// vertex, and requiring the second vertex to be smaller than the last kills
/// the reflected traversal.
pub fn enumerate_cycles(g: &GainGraph) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut cycles = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        cycle_dfs(g, start, &mut path, &mut on_path, &mut cycles);
        path.pop();
        on_path[start] = false;
    }
    cycles
}

fn cycle_dfs(
    g: &GainGraph,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    cycles: &mut Vec<Cycle>,
) {
    let u = *path.last().unwrap();
    for &(w, _) in g.neighbors(u) {
        if w == start {
            if path.len() >= 3 && path[1] < path[path.len() - 1] {
                cycles.push(Cycle::canonicalize(path));
            }
        } else if w > start && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            cycle_dfs(g, start, path, on_path, cycles);
            path.pop();
            on_path[w] = false;
        }
    }
}

// ---------------------------------------------------------------------------
// Subgraph types
// ---------------------------------------------------------------------------

/// Vertex-disjoint union of single edges and cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementarySubgraph {
    /// Matching edges as canonical `(u, v)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Cycles in canonical form, sorted.
    pub cycles: Vec<Cycle>,
}

impl ElementarySubgraph {
    pub fn vertex_count(&self) -> usize {
        2 * self.edges.len() + self.cycles.iter().map(|c| c.len()).sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() + self.cycles.iter().map(|c| c.len()).sum::<usize>()
    }

    pub fn component_count(&self) -> usize {
        self.edges.len() + self.cycles.len()
    }

    /// Rank `r(H) = n_H - p(H)`.
    pub fn rank(&self) -> usize {
        self.vertex_count() - self.component_count()
    }

    /// Corank `s(H) = m_H - n_H + p(H)`; equals the number of cycles.
    pub fn corank(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut verts: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .chain(
                self.cycles
                    .iter()
                    .flat_map(|c| c.vertices().iter().copied()),
            )
            .collect();
        verts.sort_unstable();
        verts
    }

    /// Product of the real parts of the cycle gains; empty product is 1.
    pub fn real_cycle_gain_product(&self, g: &GainGraph) -> Result<f64> {
        let mut product = 1.0;
        for c in &self.cycles {
            product *= g.cycle_gain(c)?.re;
        }
        Ok(product)
    }
}

/// Vertex-disjoint union of isolated vertices, single edges, and cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionSubgraph {
    pub isolated: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub cycles: Vec<Cycle>,
}

impl DissectionSubgraph {
    pub fn vertex_count(&self) -> usize {
        self.isolated.len() + self.elementary_part().vertex_count()
    }

    pub fn component_count(&self) -> usize {
        self.isolated.len() + self.edges.len() + self.cycles.len()
    }

    /// Rank `r(H) = n_H - p(H)`; isolated vertices cancel out.
    pub fn rank(&self) -> usize {
        self.vertex_count() - self.component_count()
    }

    /// Corank, which equals the cycle count on dissection graphs.
    pub fn corank(&self) -> usize {
        self.cycles.len()
    }

    /// Number of odd cycles.
    pub fn odd_cycle_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_odd()).count()
    }

    /// Product of the full-graph degrees over the vertices that are not
    /// isolated in this subgraph; empty product is 1.
    pub fn degree_product(&self, g: &GainGraph) -> f64 {
        let degrees = g.degrees();
        self.elementary_part()
            .vertices()
            .iter()
            .map(|&v| degrees[v] as f64)
            .product()
    }

    fn elementary_part(&self) -> ElementarySubgraph {
        ElementarySubgraph {
            edges: self.edges.clone(),
            cycles: self.cycles.clone(),
        }
    }

    pub fn real_cycle_gain_product(&self, g: &GainGraph) -> Result<f64> {
        self.elementary_part().real_cycle_gain_product(g)
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

#[derive(Clone)]
enum Component {
    Edge((usize, usize)),
    Cyc(Cycle),
}

fn components_with_masks(g: &GainGraph) -> Vec<(u64, Component)> {
    let mut comps: Vec<(u64, Component)> = g
        .edges()
        .iter()
        .map(|e| ((1u64 << e.u) | (1u64 << e.v), Component::Edge((e.u, e.v))))
        .collect();
    for c in enumerate_cycles(g) {
        let mask = c.vertices().iter().fold(0u64, |m, &v| m | (1u64 << v));
        comps.push((mask, Component::Cyc(c)));
    }
    comps
}

/// All elementary subgraphs covering exactly `k` vertices. For `k = 0` this
/// is the single empty subgraph.
pub fn enumerate_elementary(g: &GainGraph, k: usize) -> Vec<ElementarySubgraph> {
    enumerate_elementary_by_size(g)
        .into_iter()
        .nth(k)
        .unwrap_or_default()
}

/// Elementary subgraphs grouped by covered-vertex count, index 0..=n.
pub(crate) fn enumerate_elementary_by_size(g: &GainGraph) -> Vec<Vec<ElementarySubgraph>> {
    let n = g.vertex_count();
    let comps = components_with_masks(g);
    let mut by_size: Vec<Vec<ElementarySubgraph>> = vec![Vec::new(); n + 1];
    let mut chosen: Vec<usize> = Vec::new();

    fn assemble(comps: &[(u64, Component)], chosen: &[usize]) -> ElementarySubgraph {
        let mut edges = Vec::new();
        let mut cycles = Vec::new();
        for &i in chosen {
            match &comps[i].1 {
                Component::Edge(e) => edges.push(*e),
                Component::Cyc(c) => cycles.push(c.clone()),
            }
        }
        edges.sort_unstable();
        cycles.sort();
        ElementarySubgraph { edges, cycles }
    }

    fn recurse(
        comps: &[(u64, Component)],
        from: usize,
        mask: u64,
        covered: usize,
        max: usize,
        chosen: &mut Vec<usize>,
        by_size: &mut [Vec<ElementarySubgraph>],
    ) {
        by_size[covered].push(assemble(comps, chosen));
        for i in from..comps.len() {
            let (cmask, _) = &comps[i];
            let extra = cmask.count_ones() as usize;
            if covered + extra > max || (mask & cmask) != 0 {
                continue;
            }
            chosen.push(i);
            recurse(
                comps,
                i + 1,
                mask | cmask,
                covered + extra,
                max,
                chosen,
                by_size,
            );
            chosen.pop();
        }
    }

    recurse(&comps, 0, 0, 0, n, &mut chosen, &mut by_size);
    by_size
}

/// All dissection subgraphs on exactly `k` vertices: elementary subgraphs on
/// at most `k` vertices padded with isolated vertices.
pub fn enumerate_dissection(g: &GainGraph, k: usize) -> Vec<DissectionSubgraph> {
    let n = g.vertex_count();
    let by_size = enumerate_elementary_by_size(g);
    let mut out = Vec::new();
    for (j, group) in by_size.iter().enumerate().take(k.min(n) + 1) {
        for elem in group {
            let covered = elem.vertices();
            let free: Vec<usize> = (0..n).filter(|v| !covered.contains(v)).collect();
            for iso in combinations(&free, k - j) {
                out.push(DissectionSubgraph {
                    isolated: iso,
                    edges: elem.edges.clone(),
                    cycles: elem.cycles.clone(),
                });
            }
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k > items.len() {
        return Vec::new();
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(
        items: &[usize],
        from: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in from..=items.len().saturating_sub(needed) {
            current.push(items[i]);
            recurse(items, i + 1, k, current, out);
            current.pop();
        }
    }
    recurse(items, 0, k, &mut current, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut value = 1.0;
    for i in 0..k {
        value = value * (n - i) as f64 / (i + 1) as f64;
    }
    value
}

fn guard_scale(g: &GainGraph) -> Result<()> {
    let n = g.vertex_count();
    if n > MAX_FORMULA_VERTICES {
        return Err(Error::GraphTooLarge {
            n,
            max: MAX_FORMULA_VERTICES,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Determinant and coefficient formulas
// ---------------------------------------------------------------------------

/// Determinant of the adjacency matrix by the spanning-elementary-subgraph
/// sum: `sum_H (-1)^r(H) 2^s(H) prod_C Re(gain(C))`.
pub fn det_adjacency(g: &GainGraph) -> Result<f64> {
    guard_scale(g)?;
    let spanning = enumerate_elementary(g, g.vertex_count());
    let mut det = 0.0;
    for h in &spanning {
        det += signed_weight(h.rank(), h.corank()) * h.real_cycle_gain_product(g)?;
    }
    Ok(det)
}

fn signed_weight(rank: usize, corank: usize) -> f64 {
    let sign = if rank.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * (1u64 << corank) as f64
}

/// Coefficients `a_k` of the adjacency characteristic polynomial from
/// elementary subgraphs on `k` vertices:
/// `(-1)^k a_k = sum_H (-1)^r(H) 2^s(H) prod_C Re(gain(C))`.
pub fn adjacency_coeffs(g: &GainGraph) -> Result<CharPolyCoeffs> {
    guard_scale(g)?;
    let n = g.vertex_count();
    let by_size = enumerate_elementary_by_size(g);
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, group) in by_size.iter().enumerate() {
        let mut sum = 0.0;
        for h in group {
            sum += signed_weight(h.rank(), h.corank()) * h.real_cycle_gain_product(g)?;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * sum);
    }
    Ok(CharPolyCoeffs::new(PolyBasis::Adjacency, coeffs))
}

/// Coefficients `c_k` of the normalized-Laplacian characteristic polynomial
/// in the `(x - 1)` basis, from elementary subgraphs on `k` vertices with
/// the full-graph degree product in the denominator.
pub fn norm_lap_c_coeffs(g: &GainGraph) -> Result<CharPolyCoeffs> {
    guard_scale(g)?;
    if let Some(v) = g.degrees().iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let n = g.vertex_count();
    let degrees = g.degrees();
    let by_size = enumerate_elementary_by_size(g);
    let mut coeffs = Vec::with_capacity(n + 1);
    for group in &by_size {
        let mut sum = 0.0;
        for h in group {
            let degree_product: f64 = h.vertices().iter().map(|&v| degrees[v] as f64).product();
            sum += signed_weight(h.rank(), h.corank()) * h.real_cycle_gain_product(g)?
                / degree_product;
        }
        coeffs.push(sum);
    }
    Ok(CharPolyCoeffs::new(PolyBasis::XMinusOne, coeffs))
}

/// Coefficients `b_k` of the normalized-Laplacian characteristic polynomial
/// in powers of `x`, from dissection subgraphs on `k` vertices:
/// `(-1)^k b_k = sum_H (-1)^(r+o) (2^s / D_H) prod_C Re(gain(C))`.
///
/// Isolated vertices change none of the factors, so each elementary core on
/// `j` vertices is counted `C(n - j, k - j)` times instead of materializing
/// the padded subgraphs.
pub fn norm_lap_b_coeffs(g: &GainGraph) -> Result<CharPolyCoeffs> {
    guard_scale(g)?;
    if let Some(v) = g.degrees().iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let n = g.vertex_count();
    let degrees = g.degrees();
    let by_size = enumerate_elementary_by_size(g);
    // Per-size sums over elementary cores.
    let mut core_sum = vec![0.0; n + 1];
    for (j, subgraphs) in by_size.iter().enumerate() {
        for h in subgraphs {
            let odd = h.cycles.iter().filter(|c| c.is_odd()).count();
            let sign = if (h.rank() + odd) % 2 == 0 { 1.0 } else { -1.0 };
            let degree_product: f64 = h.vertices().iter().map(|&v| degrees[v] as f64).product();
            core_sum[j] +=
                sign * (1u64 << h.corank()) as f64 * h.real_cycle_gain_product(g)? / degree_product;
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let sum: f64 = core_sum
            .iter()
            .enumerate()
            .take(k + 1)
            .map(|(j, &core)| binomial(n - j, k - j) * core)
            .sum();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * sum);
    }
    Ok(CharPolyCoeffs::new(PolyBasis::X, coeffs))
}

/// `b_k` evaluated by materializing every dissection subgraph. Quadratic
/// amounts of padding make this the slow route; it exists to cross-check
/// the binomial shortcut.
pub fn norm_lap_b_coeffs_by_dissection(g: &GainGraph) -> Result<CharPolyCoeffs> {
    guard_scale(g)?;
    if let Some(v) = g.degrees().iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let n = g.vertex_count();
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut sum = 0.0;
        for h in enumerate_dissection(g, k) {
            let sign = if (h.rank() + h.odd_cycle_count()) % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            sum += sign * (1u64 << h.corank()) as f64 * h.real_cycle_gain_product(g)?
                / h.degree_product(g);
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.push(sign * sum);
    }
    Ok(CharPolyCoeffs::new(PolyBasis::X, coeffs))
}
