//! Undirected simple graphs with bit-parallel adjacency rows, and the
//! primitives the cut machinery is built on.

use std::collections::VecDeque;

use crate::bitset::{words_for, VertexSet};
use crate::error::{domain, Result};

/// Undirected simple graph on vertices `0..order`.
///
/// Adjacency is kept both as sorted lists and as one bitset row per vertex.
#[derive(Clone, Debug)]
pub struct Graph {
    order: usize,
    words: usize,
    adj: Vec<Vec<u32>>,
    rows: Vec<u64>,
}

impl Graph {
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            if u >= order || v >= order {
                return Err(domain!("edge ({u},{v}) outside 0..{order}"));
            }
            if u == v {
                return Err(domain!("self-loop at {u}"));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_lists(adj))
    }

    /// Builds from symmetric sorted adjacency lists.
    pub(crate) fn from_lists(adj: Vec<Vec<u32>>) -> Self {
        let order = adj.len();
        let words = words_for(order).max(1);
        let mut rows = vec![0u64; order * words];
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                let v = v as usize;
                rows[u * words + (v >> 6)] |= 1 << (v & 63);
            }
        }
        Graph { order, words, adj, rows }
    }

    pub fn complete(order: usize) -> Self {
        let adj = (0..order)
            .map(|u| (0..order as u32).filter(|&v| v as usize != u).collect())
            .collect();
        Self::from_lists(adj)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&u| u as usize)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.row(u)[v >> 6] >> (v & 63) & 1 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.neighbors(u).filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|l| l.len() + 1 == self.order)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.order)
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.capacity() != self.order {
            return Err(domain!(
                "vertex set sized for {} vertices, graph has {}",
                s.capacity(),
                self.order
            ));
        }
        Ok(())
    }

    /// `N(X) \ X`.
    pub fn open_neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.order);
        for v in x.iter() {
            for u in self.neighbors(v) {
                if !x.contains(u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices`; the i-th new vertex is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![u32::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<u32> = self
                    .neighbors(v)
                    .filter_map(|u| (index[u] != u32::MAX).then_some(index[u]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph::from_lists(adj)
    }
}

/// Connected components of `G - removed`, each sorted, ordered by least vertex.
pub fn components(g: &Graph, removed: &VertexSet) -> Result<Vec<Vec<usize>>> {
    g.check_set(removed)?;
    let mut seen = removed.clone();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..g.order() {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start);
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for v in g.neighbors(u) {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    Ok(out)
}

/// Outcome of checking whether `S` is an h-cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HCutVerdict {
    /// `G - S` is disconnected and every survivor has degree at least h.
    Cut { components: Vec<Vec<usize>> },
    /// `G - S` has fewer than two components.
    Connected { remaining: usize },
    /// `G - S` is disconnected but `vertex` keeps only `degree < h` neighbors.
    LowDegree { vertex: usize, degree: usize },
}

impl HCutVerdict {
    pub fn is_cut(&self) -> bool {
        matches!(self, HCutVerdict::Cut { .. })
    }
}

/// Tests whether `s` is an h-super vertex-cut of `g`.
pub fn is_h_cut(g: &Graph, s: &VertexSet, h: usize) -> Result<HCutVerdict> {
    let comps = components(g, s)?;
    if comps.len() < 2 {
        return Ok(HCutVerdict::Connected {
            remaining: comps.iter().map(Vec::len).sum(),
        });
    }
    if h > 0 {
        for comp in &comps {
            for &v in comp {
                let degree = g.neighbors(v).filter(|&u| !s.contains(u)).count();
                if degree < h {
                    return Ok(HCutVerdict::LowDegree { vertex: v, degree });
                }
            }
        }
    }
    Ok(HCutVerdict::Cut { components: comps })
}

/// Unit-capacity flow network on split vertices: `x_in = 2x`, `x_out = 2x + 1`.
struct SplitNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl SplitNetwork {
    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let mut net = SplitNetwork {
            head: vec![Vec::new(); 2 * g.order()],
            to: Vec::new(),
            cap: Vec::new(),
        };
        let big = g.order() as u32;
        for x in 0..g.order() {
            let c = if x == s || x == t { big } else { 1 };
            net.arc(2 * x, 2 * x + 1, c);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, big);
            net.arc(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut queue = VecDeque::from([source]);
        let mut reached = vec![false; self.head.len()];
        reached[source] = true;
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for &e in &self.head[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !reached[b] {
                    reached[b] = true;
                    via[b] = e;
                    queue.push_back(b);
                }
            }
        }
        if !reached[sink] {
            return false;
        }
        let mut b = sink;
        while b != source {
            let e = via[b];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            b = self.to[e ^ 1];
        }
        true
    }
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths for
/// nonadjacent `s != t`, stopping early once `limit` paths are found.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> Result<usize> {
    if s >= g.order() || t >= g.order() || s == t {
        return Err(domain!("invalid terminal pair ({s},{t})"));
    }
    if g.has_edge(s, t) {
        return Err(domain!("terminals {s},{t} are adjacent"));
    }
    let mut net = SplitNetwork::new(g, s, t);
    let mut flow = 0;
    while flow < limit && net.augment(2 * s + 1, 2 * t) {
        flow += 1;
    }
    Ok(flow)
}

/// Classical vertex connectivity `κ(G)`; `order - 1` for complete graphs.
///
/// Fixes a minimum-degree vertex `v` and takes the least local connectivity
/// over `v` paired with each non-neighbor, and over nonadjacent pairs of
/// neighbors of `v` (which covers minimum cuts that contain `v`).
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    if g.order() == 0 {
        return Err(domain!("vertex connectivity of the empty graph"));
    }
    if g.is_complete() {
        return Ok(g.order() - 1);
    }
    if components(g, &g.empty_set())?.len() > 1 {
        return Ok(0);
    }
    let v = (0..g.order()).min_by_key(|&v| g.degree(v)).unwrap();
    let mut best = g.degree(v);
    for w in 0..g.order() {
        if w != v && !g.has_edge(v, w) {
            best = best.min(local_connectivity(g, v, w, best)?);
        }
    }
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) {
                best = best.min(local_connectivity(g, x, y, best)?);
            }
        }
    }
    Ok(best)
}

/// Length of a shortest cycle through edge `{u, v}`: one plus the distance
/// from `u` to `v` in `G - {u,v}`. `None` when `{u, v}` is a bridge.
pub fn shortest_cycle_through_edge(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    if !g.has_edge(u, v) {
        return Err(domain!("({u},{v}) is not an edge"));
    }
    let mut dist = vec![usize::MAX; g.order()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(a) = queue.pop_front() {
        for b in g.neighbors(a) {
            if a == u && b == v {
                continue;
            }
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                if b == v {
                    return Ok(Some(dist[b] + 1));
                }
                queue.push_back(b);
            }
        }
    }
    Ok(None)
}
