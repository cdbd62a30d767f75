//! Projection of a minimum h-cut onto the subgraphs `S^{t:i}`.
//!
//! For a minimum h-cut `S` with component `X` and the rest `Y`, each
//! subgraph `S^{t:i}` receives the parts `X_i`, `Y_i`, `S_i`, from which
//! the index sets `J = {i : X_i != ∅}`, `J' = {i ∈ J : Y_i != ∅}` and
//! `T = {i : Y_i != ∅}` are formed. The analysis checks that `S_i` is an
//! (h-1)-cut of `S^{t:i}` for `i ∈ J'`, that `J ∪ T` covers every symbol,
//! and that `|S| >= |J'| · κ_s^(h-1)(S(n-1,k-1))`.

use super::{smallest, theorem_value, SearchResult};
use crate::bitset::VertexSet;
use crate::error::{domain, Result};
use crate::graph::{components, is_h_cut};
use crate::star::{StarGraph, SubgraphId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionPart {
    pub i: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub s: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionAnalysis {
    pub t: usize,
    pub h: usize,
    pub cut_size: usize,
    /// The component used as `X`: the smallest one, least vertex on ties.
    pub x: Vec<usize>,
    pub parts: Vec<ProjectionPart>,
    pub j: Vec<usize>,
    pub j_prime: Vec<usize>,
    pub t_set: Vec<usize>,
    /// For each `i ∈ J'`, whether `S_i` is an (h-1)-cut of `S^{t:i}`.
    pub subcuts: Vec<(usize, bool)>,
    pub subcuts_hold: bool,
    pub covers_all_symbols: bool,
    /// `|J'| · κ_s^(h-1)(S(n-1,k-1))`, using the closed form.
    pub projected_lower_bound: usize,
    pub lower_bound_holds: bool,
}

impl ProjectionAnalysis {
    pub fn all_hold(&self) -> bool {
        self.subcuts_hold && self.covers_all_symbols && self.lower_bound_holds
    }
}

/// Projects the certified minimum cut of `result` along position `t`.
///
/// Requires `3 <= k <= n-1`, `1 <= h <= n-k`, `2 <= t <= k`, and a result
/// whose value is certified minimal by exhaustive enumeration.
pub fn cut_projection(g: &StarGraph, result: &SearchResult, t: usize) -> Result<ProjectionAnalysis> {
    let (n, k, h) = (g.n(), g.k(), result.h);
    if k < 3 || k + 1 > n || h < 1 || h + k > n {
        return Err(domain!("projection needs 3 <= k <= n-1 and 1 <= h <= n-k, got n={n}, k={k}, h={h}"));
    }
    if t < 2 || t > k {
        return Err(domain!("projection position t={t} outside 2..={k}"));
    }
    let cert = match (&result.certificate, result.is_certified()) {
        (Some(c), true) if c.valid => c,
        _ => return Err(domain!("projection needs a certified minimum {h}-cut")),
    };

    let order = g.order();
    let cut = cert.cut_set(order);
    let comps = components(g.graph(), &cut)?;
    let x = smallest(&comps).clone();
    let xs = VertexSet::from_iter(order, x.iter().copied());

    let mut parts = Vec::with_capacity(n);
    let mut subcuts = Vec::new();
    for i in 1..=n {
        let verts = g.subgraph(SubgraphId { t, i })?;
        let mut part = ProjectionPart { i, x: Vec::new(), y: Vec::new(), s: Vec::new() };
        for &v in &verts {
            if cut.contains(v) {
                part.s.push(v);
            } else if xs.contains(v) {
                part.x.push(v);
            } else {
                part.y.push(v);
            }
        }
        if !part.x.is_empty() && !part.y.is_empty() {
            let sub = g.graph().induced(&verts);
            let local = VertexSet::from_iter(
                verts.len(),
                verts.iter().enumerate().filter(|(_, &v)| cut.contains(v)).map(|(a, _)| a),
            );
            subcuts.push((i, is_h_cut(&sub, &local, h - 1)?.is_cut()));
        }
        parts.push(part);
    }

    let j: Vec<usize> = parts.iter().filter(|p| !p.x.is_empty()).map(|p| p.i).collect();
    let t_set: Vec<usize> = parts.iter().filter(|p| !p.y.is_empty()).map(|p| p.i).collect();
    let j_prime: Vec<usize> = j.iter().copied().filter(|i| t_set.contains(i)).collect();
    let covers_all_symbols = (1..=n).all(|i| j.contains(&i) || t_set.contains(&i));
    let projected_lower_bound = j_prime.len() * theorem_value(n - 1, k - 1, h - 1)?;

    Ok(ProjectionAnalysis {
        t,
        h,
        cut_size: cert.size(),
        x,
        parts,
        subcuts_hold: subcuts.iter().all(|&(_, ok)| ok),
        subcuts,
        covers_all_symbols,
        lower_bound_holds: cert.size() >= projected_lower_bound,
        projected_lower_bound,
        j,
        j_prime,
        t_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::{kappa_super_exact, SearchOptions};

    #[test]
    fn projection_5_3_h1() {
        let g = StarGraph::build(5, 3).unwrap();
        let r = kappa_super_exact(g.graph(), 1, None, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, Some(5));
        for t in 2..=3 {
            let p = cut_projection(&g, &r, t).unwrap();
            assert!(p.covers_all_symbols);
            assert!(p.subcuts_hold);
            assert!(p.lower_bound_holds);
            assert!(p.j_prime.len() <= 1);
            let covered: usize = p.parts.iter().map(|q| q.x.len() + q.y.len() + q.s.len()).sum();
            assert_eq!(covered, 60);
        }
    }

    #[test]
    fn projection_preconditions() {
        let g = StarGraph::build(4, 2).unwrap();
        let r = kappa_super_exact(g.graph(), 1, None, &SearchOptions::default()).unwrap();
        assert!(cut_projection(&g, &r, 2).is_err());

        let g = StarGraph::build(5, 3).unwrap();
        let r = kappa_super_exact(g.graph(), 1, None, &SearchOptions::default()).unwrap();
        assert!(cut_projection(&g, &r, 4).is_err());
        let mut uncertified = r.clone();
        uncertified.exhaustive_below = 0;
        assert!(cut_projection(&g, &uncertified, 2).is_err());
    }
}
