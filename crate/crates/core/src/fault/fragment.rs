//! Upper bounds on κ_s^(h) from small connected fragments.
//!
//! For a connected `X` whose induced minimum degree is at least h, the set
//! `N(X)` is a candidate h-cut. The bound is never claimed to be exact.

use super::CutCertificate;
use crate::bitset::VertexSet;
use crate::error::{domain, Result};
use crate::graph::{is_h_cut, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentBound {
    pub value: usize,
    pub fragment: Vec<usize>,
    pub certificate: CutCertificate,
}

/// Minimum `|N(X)|` over connected `X` with `|X| <= max_fragment` such that
/// `N(X)` validates as an h-cut. `None` when no fragment qualifies.
pub fn kappa_super_upper(g: &Graph, h: usize, max_fragment: usize) -> Result<Option<FragmentBound>> {
    if max_fragment < h + 1 {
        return Err(domain!("max_fragment={max_fragment} must be at least h+1={}", h + 1));
    }
    let mut best: Option<FragmentBound> = None;
    for_each_connected_set(g, max_fragment, &mut |sub| consider(g, h, sub, &mut best))?;
    Ok(best)
}

/// Visits every connected vertex set of size `1..=max` exactly once
/// (ESU enumeration rooted at the least vertex of each set).
pub(crate) fn for_each_connected_set<F>(g: &Graph, max: usize, f: &mut F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    let mut sub = Vec::with_capacity(max);
    for v in 0..g.order() {
        sub.push(v);
        let ext: Vec<usize> = g.neighbors(v).filter(|&u| u > v).collect();
        extend(g, max, &mut sub, ext, v, f)?;
        sub.pop();
    }
    Ok(())
}

fn extend<F>(g: &Graph, max: usize, sub: &mut Vec<usize>, mut ext: Vec<usize>, root: usize, f: &mut F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    f(sub)?;
    if sub.len() == max {
        return Ok(());
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for u in g.neighbors(w) {
            // exclusive neighborhood: not in or next to the current set
            if u > root && !sub.contains(&u) && !next.contains(&u) && !sub.iter().any(|&s| g.has_edge(s, u)) {
                next.push(u);
            }
        }
        sub.push(w);
        extend(g, max, sub, next, root, f)?;
        sub.pop();
    }
    Ok(())
}

fn consider(g: &Graph, h: usize, sub: &[usize], best: &mut Option<FragmentBound>) -> Result<()> {
    let min_internal = sub
        .iter()
        .map(|&a| sub.iter().filter(|&&b| g.has_edge(a, b)).count())
        .min()
        .unwrap_or(0);
    if min_internal < h {
        return Ok(());
    }
    let x = VertexSet::from_iter(g.order(), sub.iter().copied());
    let cut = g.open_neighborhood(&x);
    if best.as_ref().is_some_and(|b| b.value <= cut.len()) || cut.len() + sub.len() >= g.order() {
        return Ok(());
    }
    if is_h_cut(g, &cut, h)?.is_cut() {
        let mut fragment = sub.to_vec();
        fragment.sort_unstable();
        *best = Some(FragmentBound {
            value: cut.len(),
            certificate: CutCertificate::from_cut(g, &cut, h)?,
            fragment,
        });
    }
    Ok(())
}
