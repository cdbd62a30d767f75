//! h-super vertex cuts of (n,k)-star graphs: the closed-form value, the
//! explicit clique-based construction, an exact certified search, an
//! upper-bound heuristic, and the projection analysis of minimum cuts.

mod fragment;
mod projection;
mod search;

pub use fragment::{kappa_super_upper, FragmentBound};
pub use projection::{cut_projection, ProjectionAnalysis, ProjectionPart};
pub use search::{
    binomial, colex_rank, colex_unrank, kappa_super_exact, Budget, CertificateSource, SearchOptions,
    SearchResult,
};

use crate::bitset::VertexSet;
use crate::error::{domain, Error, Result};
use crate::graph::{is_h_cut, Graph, HCutVerdict};
use crate::star::{CliqueId, StarGraph};

/// `n + h(k-2) - 1`, defined for `2 <= k <= n-1` and `0 <= h <= n-k`.
pub fn theorem_value(n: usize, k: usize, h: usize) -> Result<usize> {
    if k < 2 || k + 1 > n || h + k > n {
        return Err(Error::OutOfTheoremDomain { n, k, h });
    }
    Ok(n + h * (k - 2) - 1)
}

pub fn in_theorem_domain(n: usize, k: usize, h: usize) -> bool {
    theorem_value(n, k, h).is_ok()
}

/// Independently published values outside the closed form's domain:
/// `κ_s^(2)(S_n) = 6(n-3)` for `n >= 4`, where `S_n = S(n,n-1)`.
pub fn known_reference_value(n: usize, k: usize, h: usize) -> Option<usize> {
    (k + 1 == n && h == 2 && n >= 4).then(|| 6 * (n - 3))
}

/// A vertex set claimed to be an h-cut, with a witness component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCertificate {
    pub h: usize,
    /// Sorted vertex IDs of `S`.
    pub cut: Vec<usize>,
    /// Sorted vertex IDs of a component `X` of `G - S`.
    pub witness: Vec<usize>,
    pub valid: bool,
}

impl CutCertificate {
    /// Validates `cut` against `g`; the witness is the smallest component
    /// of `G - S` (ties go to the component holding the least vertex).
    pub fn from_cut(g: &Graph, cut: &VertexSet, h: usize) -> Result<Self> {
        let verdict = is_h_cut(g, cut, h)?;
        let witness = match &verdict {
            HCutVerdict::Cut { components } => smallest(components).clone(),
            _ => Vec::new(),
        };
        Ok(CutCertificate {
            h,
            cut: cut.to_vec(),
            witness,
            valid: verdict.is_cut(),
        })
    }

    pub fn size(&self) -> usize {
        self.cut.len()
    }

    pub fn cut_set(&self, order: usize) -> VertexSet {
        VertexSet::from_iter(order, self.cut.iter().copied())
    }
}

pub(crate) fn smallest(components: &[Vec<usize>]) -> &Vec<usize> {
    // components are ordered by least vertex, so min_by_key keeps the first tie
    components.iter().min_by_key(|c| c.len()).expect("at least one component")
}

/// The clique-based h-cut: for `X` of `h+1` vertices of the clique `V_alpha`,
/// `S` is the rest of the clique plus every swap-neighbor of `X`.
pub fn construct_cut(g: &StarGraph, alpha: &CliqueId, x: &[usize], h: usize) -> Result<CutCertificate> {
    let (n, k) = (g.n(), g.k());
    let expected = theorem_value(n, k, h)?;
    if x.len() != h + 1 {
        return Err(domain!("|X| = {} but the construction needs h+1 = {}", x.len(), h + 1));
    }
    let members = g.clique_members(alpha)?;
    let mut xs = VertexSet::new(g.order());
    for &v in x {
        if !members.contains(&v) {
            return Err(domain!("vertex {} is not in clique {alpha}", g.label(v)));
        }
        if !xs.insert(v) {
            return Err(domain!("vertex {} repeated in X", g.label(v)));
        }
    }

    let mut cut = VertexSet::new(g.order());
    for &v in &members {
        if !xs.contains(v) {
            cut.insert(v);
        }
    }
    for &v in x {
        for u in g.swap_neighbors(v) {
            if !cut.insert(u) || members.contains(&u) {
                return Err(Error::Inconsistent(format!(
                    "swap-neighbor {} of X is shared or lies in the clique",
                    g.label(u)
                )));
            }
        }
    }
    if cut.len() != expected {
        return Err(Error::Inconsistent(format!(
            "constructed cut has {} vertices, expected {expected}",
            cut.len()
        )));
    }

    let verdict = is_h_cut(g.graph(), &cut, h)?;
    let HCutVerdict::Cut { components } = verdict else {
        return Err(Error::Inconsistent(format!("constructed set is not an {h}-cut: {verdict:?}")));
    };
    let mut witness: Vec<usize> = x.to_vec();
    witness.sort_unstable();
    if !components.contains(&witness) {
        return Err(Error::Inconsistent("X is not a component of G - S".into()));
    }
    Ok(CutCertificate {
        h,
        cut: cut.to_vec(),
        witness,
        valid: true,
    })
}

/// [`construct_cut`] on the lexicographically first clique and its first
/// `h+1` members.
pub fn default_cut(g: &StarGraph, h: usize) -> Result<CutCertificate> {
    theorem_value(g.n(), g.k(), h)?;
    let alpha = g.cliques().into_iter().next().expect("nonempty");
    let members = g.clique_members(&alpha)?;
    construct_cut(g, &alpha, &members[..(h + 1).min(members.len())], h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::StarGraph;

    #[test]
    fn theorem_values() {
        assert_eq!(theorem_value(5, 3, 1).unwrap(), 5);
        for n in 3..9 {
            for h in 0..=n - 2 {
                assert_eq!(theorem_value(n, 2, h).unwrap(), n - 1);
            }
            for k in 2..n {
                if k < n {
                    assert_eq!(theorem_value(n, k, 1).unwrap(), n + k - 3);
                }
            }
        }
        assert!(matches!(theorem_value(4, 3, 2), Err(Error::OutOfTheoremDomain { .. })));
        assert!(theorem_value(4, 4, 0).is_err());
        assert!(theorem_value(4, 1, 0).is_err());
    }

    #[test]
    fn reference_values() {
        assert_eq!(known_reference_value(4, 3, 2), Some(6));
        assert_eq!(known_reference_value(5, 4, 2), Some(12));
        assert_eq!(known_reference_value(5, 3, 2), None);
    }

    #[test]
    fn construct_5_3_h1() {
        let g = StarGraph::build(5, 3).unwrap();
        let alpha = CliqueId::parse(5, "4,5").unwrap();
        let x = [g.parse_vertex("1,4,5").unwrap(), g.parse_vertex("2,4,5").unwrap()];
        let cert = construct_cut(&g, &alpha, &x, 1).unwrap();
        assert_eq!(cert.size(), 5);
        let names: Vec<String> = cert.cut.iter().map(|&v| g.label(v).to_string()).collect();
        for want in ["3,4,5", "4,1,5", "5,4,1", "4,2,5", "5,4,2"] {
            assert!(names.contains(&want.to_string()), "{want} missing from {names:?}");
        }
        assert!(cert.valid);
    }

    #[test]
    fn construct_h0_is_neighborhood() {
        let g = StarGraph::build(6, 3).unwrap();
        let v = g.parse_vertex("2,5,1").unwrap();
        let cert = construct_cut(&g, &g.clique_of(v), &[v], 0).unwrap();
        let mut nbrs: Vec<usize> = g.graph().neighbors(v).collect();
        nbrs.sort_unstable();
        assert_eq!(cert.cut, nbrs);
        assert_eq!(cert.witness, vec![v]);
    }

    #[test]
    fn construct_rejects_bad_input() {
        let g = StarGraph::build(5, 3).unwrap();
        let alpha = CliqueId::parse(5, "4,5").unwrap();
        let a = g.parse_vertex("1,4,5").unwrap();
        let other = g.parse_vertex("1,2,3").unwrap();
        assert!(construct_cut(&g, &alpha, &[a], 1).is_err());
        assert!(construct_cut(&g, &alpha, &[a, other], 1).is_err());
        assert!(construct_cut(&g, &alpha, &[a, a], 1).is_err());
        assert!(construct_cut(&g, &alpha, &[a, a, a, a], 3).is_err());
    }

    #[test]
    fn default_cut_sizes_up_to_7() {
        for n in 3..=7 {
            for k in 2..n {
                for h in 0..=n - k {
                    let g = StarGraph::build(n, k).unwrap();
                    let cert = default_cut(&g, h).unwrap();
                    assert_eq!(cert.size(), theorem_value(n, k, h).unwrap());
                }
            }
        }
    }
}
