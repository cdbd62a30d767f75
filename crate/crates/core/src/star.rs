//! The (n,k)-star graph `S(n,k)` and its structural decompositions.
//!
//! A vertex `p1 p2 ... pk` is joined to
//! - `pi p2 ... p(i-1) p1 p(i+1) ... pk` for `2 <= i <= k` (swap-edge, or i-edge), and
//! - `a p2 ... pk` for every symbol `a` not in `p` (unswap-edge).

use std::fmt;

use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::permutation::{self, KPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// Swap of the first symbol with position `i` (`2 <= i <= k`).
    Swap(u8),
    Unswap,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeKind::Swap(i) => write!(f, "swap:{i}"),
            EdgeKind::Unswap => f.write_str("unswap"),
        }
    }
}

/// Neighbors of `p` in `S(n,k)`, generated without building the graph.
/// Swap-neighbors come first (by position), then unswap-neighbors by new symbol.
pub fn neighbor_labels(p: &KPermutation) -> impl Iterator<Item = (KPermutation, EdgeKind)> + '_ {
    let swaps = (2..=p.k()).map(move |i| {
        let mut s = p.symbols().to_vec();
        s.swap(0, i - 1);
        (KPermutation::from_raw(p.n(), s), EdgeKind::Swap(i as u8))
    });
    let unswaps = p.unused().into_iter().map(move |a| {
        let mut s = p.symbols().to_vec();
        s[0] = a;
        (KPermutation::from_raw(p.n(), s), EdgeKind::Unswap)
    });
    swaps.chain(unswaps)
}

/// Common suffix `p2 ... pk` identifying the clique `V_alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliqueId {
    n: u8,
    suffix: Vec<u8>,
}

impl CliqueId {
    pub fn new(n: usize, suffix: Vec<u8>) -> Result<Self> {
        if !suffix.is_empty() {
            KPermutation::new(n, suffix.clone())?;
        }
        Ok(CliqueId { n: n as u8, suffix })
    }

    /// Parses `"4,5"`; the empty string denotes the single clique of `S(n,1)`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return CliqueId::new(n, Vec::new());
        }
        let p = KPermutation::parse(n, text)?;
        CliqueId::new(n, p.symbols().to_vec())
    }

    pub fn suffix(&self) -> &[u8] {
        &self.suffix
    }
}

impl fmt::Display for CliqueId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.suffix.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `S^{t:i}`: the vertices whose t-th bit is `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgraphId {
    pub t: usize,
    pub i: usize,
}

#[derive(Clone, Debug)]
pub struct StarGraph {
    n: usize,
    k: usize,
    labels: Vec<KPermutation>,
    graph: Graph,
    /// Per vertex, `(neighbor, kind)` sorted by neighbor.
    kinds: Vec<Vec<(u32, EdgeKind)>>,
}

impl StarGraph {
    pub fn build(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k + 1 > n {
            return Err(domain!("S(n,k) needs 1 <= k <= n-1, got n={n}, k={k}"));
        }
        let labels = permutation::enumerate(n, k)?;
        let kinds: Vec<Vec<(u32, EdgeKind)>> = labels
            .iter()
            .map(|p| {
                let mut l: Vec<(u32, EdgeKind)> = neighbor_labels(p)
                    .map(|(q, kind)| (q.rank() as u32, kind))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        let adj = kinds
            .iter()
            .map(|l| l.iter().map(|&(v, _)| v).collect())
            .collect();
        Ok(StarGraph {
            n,
            k,
            labels,
            graph: Graph::from_lists(adj),
            kinds,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn label(&self, v: usize) -> &KPermutation {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[KPermutation] {
        &self.labels
    }

    pub fn vertex(&self, p: &KPermutation) -> Result<usize> {
        if p.n() != self.n || p.k() != self.k {
            return Err(domain!("{p} is not a vertex of S({},{})", self.n, self.k));
        }
        Ok(p.rank() as usize)
    }

    pub fn parse_vertex(&self, text: &str) -> Result<usize> {
        self.vertex(&KPermutation::parse(self.n, text)?)
    }

    pub fn neighbors_with_kind(&self, v: usize) -> impl Iterator<Item = (usize, EdgeKind)> + '_ {
        self.kinds[v].iter().map(|&(u, k)| (u as usize, k))
    }

    pub fn edge_kind(&self, u: usize, v: usize) -> Option<EdgeKind> {
        let l = &self.kinds[u];
        l.binary_search_by_key(&(v as u32), |&(w, _)| w)
            .ok()
            .map(|i| l[i].1)
    }

    /// Edges `(u, v, kind)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.neighbors_with_kind(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, kind)| (u, v, kind))
        })
    }

    pub fn swap_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors_with_kind(v)
            .filter(|(_, k)| matches!(k, EdgeKind::Swap(_)))
            .map(|(u, _)| u)
    }

    pub fn clique_of(&self, v: usize) -> CliqueId {
        CliqueId {
            n: self.n as u8,
            suffix: self.labels[v].symbols()[1..].to_vec(),
        }
    }

    /// Members of `V_alpha`, ascending (by first symbol).
    pub fn clique_members(&self, c: &CliqueId) -> Result<Vec<usize>> {
        if c.n as usize != self.n || c.suffix.len() + 1 != self.k {
            return Err(domain!(
                "clique {c:?} does not index a clique of S({},{})",
                self.n,
                self.k
            ));
        }
        let used = c.suffix.iter().fold(0u64, |m, &s| m | 1 << (s - 1));
        Ok((1..=self.n as u8)
            .filter(|a| used >> (a - 1) & 1 == 0)
            .map(|a| {
                let mut s = vec![a];
                s.extend_from_slice(&c.suffix);
                KPermutation::from_raw(self.n, s).rank() as usize
            })
            .collect())
    }

    /// All clique identifiers in lexicographic order of the suffix.
    pub fn cliques(&self) -> Vec<CliqueId> {
        if self.k == 1 {
            return vec![CliqueId { n: self.n as u8, suffix: Vec::new() }];
        }
        permutation::enumerate(self.n, self.k - 1)
            .expect("k-1 within range")
            .into_iter()
            .map(|p| CliqueId {
                n: self.n as u8,
                suffix: p.symbols().to_vec(),
            })
            .collect()
    }

    fn check_subgraph(&self, s: SubgraphId) -> Result<()> {
        if self.k < 2 || s.t < 2 || s.t > self.k || s.i < 1 || s.i > self.n {
            return Err(domain!(
                "subgraph (t={}, i={}) needs 2 <= t <= k={} and 1 <= i <= n={}",
                s.t,
                s.i,
                self.k,
                self.n
            ));
        }
        Ok(())
    }

    /// Vertices of `S^{t:i}`, ascending.
    pub fn subgraph(&self, s: SubgraphId) -> Result<Vec<usize>> {
        self.check_subgraph(s)?;
        Ok((0..self.order())
            .filter(|&v| self.labels[v].bit(s.t) as usize == s.i)
            .collect())
    }

    /// Label in `S(n-1,k-1)` of a vertex of `S^{t:i}`: drop position `t`
    /// and rename symbols above `i` down by one.
    pub fn relabel_into_smaller(&self, s: SubgraphId, v: usize) -> Result<KPermutation> {
        self.check_subgraph(s)?;
        let p = &self.labels[v];
        if p.bit(s.t) as usize != s.i {
            return Err(domain!("{p} is not in S^{{{}:{}}}", s.t, s.i));
        }
        let i = s.i as u8;
        let out = p
            .symbols()
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos + 1 != s.t)
            .map(|(_, &x)| if x > i { x - 1 } else { x })
            .collect();
        KPermutation::new(self.n - 1, out)
    }

    /// Edges between `S^{t:i}` and `S^{t:j}` as `(u in i-side, v in j-side)`,
    /// sorted by `u`.
    pub fn cross_edges(&self, t: usize, i: usize, j: usize) -> Result<Vec<(usize, usize)>> {
        self.check_subgraph(SubgraphId { t, i })?;
        self.check_subgraph(SubgraphId { t, i: j })?;
        if i == j {
            return Err(domain!("cross edges need distinct subgraphs, got i = j = {i}"));
        }
        let mut out = Vec::new();
        for u in self.subgraph(SubgraphId { t, i })? {
            for v in self.graph.neighbors(u) {
                if self.labels[v].bit(t) as usize == j {
                    out.push((u, v));
                }
            }
        }
        Ok(out)
    }

    /// One line per edge, `u<TAB>v<TAB>kind`, sorted by vertex order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v, kind) in self.edges() {
            out.push_str(&format!("{}\t{}\t{}\n", self.labels[u], self.labels[v], kind));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"S({},{})\" {{\n", self.n, self.k);
        for v in 0..self.order() {
            out.push_str(&format!("  \"{}\";\n", self.labels[v]));
        }
        for (u, v, kind) in self.edges() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [kind=\"{}\"];\n",
                self.labels[u], self.labels[v], kind
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// The star graph `S_n` on all `n!` permutations, adjacent by swapping
/// position 1 with position `i`.
#[derive(Clone, Debug)]
pub struct ReferenceStar {
    pub n: usize,
    pub labels: Vec<KPermutation>,
    pub graph: Graph,
}

pub fn reference_star(n: usize) -> Result<ReferenceStar> {
    if n < 2 {
        return Err(domain!("reference star graph needs n >= 2, got {n}"));
    }
    let labels = permutation::enumerate(n, n)?;
    let mut edges = Vec::new();
    for (u, p) in labels.iter().enumerate() {
        for i in 2..=n {
            let mut s = p.symbols().to_vec();
            s.swap(0, i - 1);
            let v = KPermutation::from_raw(n, s).rank() as usize;
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Ok(ReferenceStar {
        n,
        graph: Graph::from_edges(labels.len(), edges)?,
        labels,
    })
}

/// Maps each vertex of `S(n,n-1)` to the full permutation obtained by
/// appending its missing symbol; returns reference-star vertex IDs.
pub fn iso_to_reference(g: &StarGraph) -> Result<Vec<usize>> {
    if g.k + 1 != g.n {
        return Err(domain!("iso_to_reference needs k = n-1, got S({},{})", g.n, g.k));
    }
    Ok(g.labels
        .iter()
        .map(|p| {
            let mut s = p.symbols().to_vec();
            s.extend(p.unused());
            KPermutation::from_raw(g.n, s).rank() as usize
        })
        .collect())
}

/// Checks that `map` is a bijection carrying every edge of `g` onto an edge
/// of `reference` with equal edge counts. Returns the number of edges mapped.
pub fn check_adjacency_preserving(g: &Graph, reference: &Graph, map: &[usize]) -> std::result::Result<usize, String> {
    if g.order() != reference.order() || map.len() != g.order() {
        return Err(format!("orders differ: {} vs {}", g.order(), reference.order()));
    }
    let mut hit = vec![false; reference.order()];
    for &m in map {
        if m >= reference.order() || std::mem::replace(&mut hit[m], true) {
            return Err(format!("map is not injective at image {m}"));
        }
    }
    if g.size() != reference.size() {
        return Err(format!("edge counts differ: {} vs {}", g.size(), reference.size()));
    }
    let mut mapped = 0;
    for (u, v) in g.edges() {
        if !reference.has_edge(map[u], map[v]) {
            return Err(format!("edge ({u},{v}) maps to non-edge ({},{})", map[u], map[v]));
        }
        mapped += 1;
    }
    Ok(mapped)
}
