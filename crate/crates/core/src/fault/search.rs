//! Exact h-super connectivity by exhaustive subset enumeration.
//!
//! Sizes are tried in increasing order. Within one size the m-subsets are
//! visited in colexicographic order of their vertex IDs, split into
//! contiguous rank ranges that run in parallel; the reported certificate is
//! always the colex-first hit, independent of scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::CutCertificate;
use crate::bitset::VertexSet;
use crate::error::{domain, Error, Result};
use crate::graph::{components, Graph};

/// Resource limits for one search. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Budget {
    pub max_duration: Option<Duration>,
    pub max_candidates: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub workers: usize,
    /// Sizes below this are taken as already excluded (e.g. by `κ(G)`).
    pub lower_bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateSource {
    Search,
    Hint,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub h: usize,
    /// Certified minimum, or `None` when no h-cut was found.
    pub value: Option<usize>,
    pub certificate: Option<CutCertificate>,
    pub certificate_source: Option<CertificateSource>,
    /// Every candidate of size `< exhaustive_below` has been excluded.
    pub exhaustive_below: usize,
    pub lower_bound: usize,
    /// Size of a known h-cut when the search could not finish.
    pub upper_bound: Option<usize>,
    /// Candidates in colex order up to and including the certificate, or
    /// the number examined when the budget ran out.
    pub candidates: u64,
    pub elapsed: Duration,
    pub budget_hit: bool,
}

impl SearchResult {
    /// True when `value` is proven minimal by the enumeration frontier.
    pub fn is_certified(&self) -> bool {
        self.value.is_some_and(|v| v == self.exhaustive_below) && !self.budget_hit
    }
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Colex rank of an ascending combination: `sum C(c_i, i+1)`.
pub fn colex_rank(combo: &[usize]) -> u64 {
    combo
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1).unwrap_or(u64::MAX))
        .sum()
}

/// Inverse of [`colex_rank`] for combinations of size `m`.
pub fn colex_unrank(mut rank: u64, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for i in (0..m).rev() {
        let mut c = i;
        while binomial(c + 1, i + 1).is_some_and(|b| b <= rank) {
            c += 1;
        }
        rank -= binomial(c, i + 1).unwrap_or(0);
        out[i] = c;
    }
    out
}

/// Advances to the colex successor within `0..n`; false at the end.
fn colex_next(combo: &mut [usize], n: usize) -> bool {
    let m = combo.len();
    for i in 0..m {
        let limit = if i + 1 < m { combo[i + 1] } else { n };
        if combo[i] + 1 < limit {
            combo[i] += 1;
            for (j, c) in combo[..i].iter_mut().enumerate() {
                *c = j;
            }
            return true;
        }
    }
    false
}

/// Per-worker scratch for the candidate test.
struct Checker<'g> {
    g: &'g Graph,
    h: usize,
    words: usize,
    connected: bool,
    full: Vec<u64>,
    low: Vec<u64>,
    alive: Vec<u64>,
    visited: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
    targets: Vec<u64>,
    loss: Vec<u32>,
    touched: Vec<usize>,
}

impl<'g> Checker<'g> {
    fn new(g: &'g Graph, h: usize, connected: bool) -> Self {
        let words = g.words();
        let full = VertexSet::full(g.order());
        let mut full_words = full.words().to_vec();
        full_words.resize(words, 0);
        let mut low = vec![0u64; words];
        for v in 0..g.order() {
            if g.degree(v) < h {
                low[v >> 6] |= 1 << (v & 63);
            }
        }
        Checker {
            g,
            h,
            words,
            connected,
            full: full_words,
            low,
            alive: vec![0; words],
            visited: vec![0; words],
            frontier: vec![0; words],
            next: vec![0; words],
            targets: vec![0; words],
            loss: vec![0; g.order()],
            touched: Vec::new(),
        }
    }

    /// Whether removing `combo` leaves a disconnected graph of minimum
    /// degree at least h. Degrees are checked first.
    fn is_cut(&mut self, combo: &[usize]) -> bool {
        let w = self.words;
        self.alive.copy_from_slice(&self.full);
        for &s in combo {
            self.alive[s >> 6] &= !(1u64 << (s & 63));
        }

        if self.h > 0 {
            if (0..w).any(|i| self.low[i] & self.alive[i] != 0) {
                return false;
            }
            for &s in combo {
                for v in self.g.neighbors(s) {
                    if self.alive[v >> 6] >> (v & 63) & 1 == 1 {
                        if self.loss[v] == 0 {
                            self.touched.push(v);
                        }
                        self.loss[v] += 1;
                    }
                }
            }
            let mut ok = true;
            for &v in &self.touched {
                if self.g.degree(v) - (self.loss[v] as usize) < self.h {
                    ok = false;
                }
                self.loss[v] = 0;
            }
            self.touched.clear();
            if !ok {
                return false;
            }
        }

        // In a connected graph every component of G - S meets N(S), so it
        // suffices to reach all of N(S) \ S from one of its vertices.
        if self.connected && !combo.is_empty() {
            self.targets.iter_mut().for_each(|t| *t = 0);
            for &s in combo {
                for (t, r) in self.targets.iter_mut().zip(self.g.row(s)) {
                    *t |= r;
                }
            }
            for (t, a) in self.targets.iter_mut().zip(&self.alive) {
                *t &= a;
            }
        } else {
            self.targets.copy_from_slice(&self.alive);
        }

        let Some(start) = first_bit(&self.targets) else {
            return false;
        };
        self.visited.iter_mut().for_each(|x| *x = 0);
        self.visited[start >> 6] |= 1 << (start & 63);
        self.frontier.copy_from_slice(&self.visited);
        loop {
            if (0..w).all(|i| self.targets[i] & !self.visited[i] == 0) {
                return false;
            }
            self.next.iter_mut().for_each(|x| *x = 0);
            for i in 0..w {
                let mut bits = self.frontier[i];
                while bits != 0 {
                    let v = i * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (nx, r) in self.next.iter_mut().zip(self.g.row(v)) {
                        *nx |= r;
                    }
                }
            }
            let mut grew = false;
            for i in 0..w {
                let fresh = self.next[i] & self.alive[i] & !self.visited[i];
                self.frontier[i] = fresh;
                self.visited[i] |= fresh;
                grew |= fresh != 0;
            }
            if !grew {
                return true;
            }
        }
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Candidate accounting shared by all workers.
struct Shared {
    started: Instant,
    budget: Budget,
    used: AtomicU64,
    exhausted: AtomicBool,
    best_chunk: AtomicUsize,
}

impl Shared {
    /// Grants up to `want` candidates; 0 once the budget is spent.
    fn reserve(&self, want: u64) -> u64 {
        if self.exhausted.load(Ordering::Relaxed) {
            return 0;
        }
        if let Some(limit) = self.budget.max_duration {
            if self.started.elapsed() >= limit {
                self.exhausted.store(true, Ordering::Relaxed);
                return 0;
            }
        }
        match self.budget.max_candidates {
            None => {
                self.used.fetch_add(want, Ordering::Relaxed);
                want
            }
            Some(limit) => {
                let mut cur = self.used.load(Ordering::Relaxed);
                loop {
                    if cur >= limit {
                        self.exhausted.store(true, Ordering::Relaxed);
                        return 0;
                    }
                    let grant = want.min(limit - cur);
                    match self.used.compare_exchange_weak(cur, cur + grant, Ordering::Relaxed, Ordering::Relaxed) {
                        Ok(_) => return grant,
                        Err(actual) => cur = actual,
                    }
                }
            }
        }
    }
}

enum ChunkOutcome {
    Hit(u64, Vec<usize>),
    Clean,
    Aborted,
    Skipped,
}

const RESERVE_BLOCK: u64 = 1024;

fn scan_chunk(checker: &mut Checker, shared: &Shared, chunk: usize, start: u64, len: u64, m: usize) -> ChunkOutcome {
    if shared.best_chunk.load(Ordering::Relaxed) < chunk {
        return ChunkOutcome::Skipped;
    }
    let n = checker.g.order();
    let mut combo = colex_unrank(start, m);
    let mut granted = 0u64;
    for offset in 0..len {
        if granted == 0 {
            if shared.best_chunk.load(Ordering::Relaxed) < chunk {
                return ChunkOutcome::Skipped;
            }
            granted = shared.reserve(RESERVE_BLOCK.min(len - offset));
            if granted == 0 {
                return ChunkOutcome::Aborted;
            }
        }
        granted -= 1;
        if checker.is_cut(&combo) {
            shared.best_chunk.fetch_min(chunk, Ordering::Relaxed);
            return ChunkOutcome::Hit(start + offset, combo);
        }
        colex_next(&mut combo, n);
    }
    ChunkOutcome::Clean
}

/// Minimum h-cut size of `g` by exhaustive enumeration.
///
/// With a valid `hint`, only sizes below the hint are enumerated; if none
/// of them holds an h-cut the hint is returned as the certified minimum.
/// Running out of budget yields a partial result, never an error.
pub fn kappa_super_exact(
    g: &Graph,
    h: usize,
    hint: Option<&CutCertificate>,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let started = Instant::now();
    let order = g.order();
    if let Some(hint) = hint {
        if hint.h != h {
            return Err(domain!("hint is an {}-cut, search is for h={h}", hint.h));
        }
        let checked = CutCertificate::from_cut(g, &hint.cut_set(order), h)?;
        if !checked.valid {
            return Err(domain!("hint of size {} is not an {h}-cut", hint.size()));
        }
    }
    let connected = components(g, &g.empty_set())?.len() <= 1;
    let shared = Shared {
        started,
        budget: opts.budget,
        used: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
        best_chunk: AtomicUsize::new(usize::MAX),
    };
    let pool = (opts.workers > 0)
        .then(|| rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build())
        .transpose()
        .map_err(|e| Error::Io(e.to_string()))?;
    let threads = pool
        .as_ref()
        .map_or_else(rayon::current_num_threads, |p| p.current_num_threads());

    let mut result = SearchResult {
        h,
        value: None,
        certificate: None,
        certificate_source: None,
        exhaustive_below: opts.lower_bound,
        lower_bound: opts.lower_bound,
        upper_bound: hint.map(CutCertificate::size),
        candidates: 0,
        elapsed: Duration::ZERO,
        budget_hit: false,
    };

    let last = match hint {
        Some(c) => c.size().saturating_sub(1).min(order.saturating_sub(2)),
        None => order.saturating_sub(2),
    };
    let end = if order >= 2 { last + 1 } else { 0 };

    for m in opts.lower_bound..end {
        let Some(total) = binomial(order, m) else {
            result.budget_hit = true;
            result.candidates = shared.used.load(Ordering::Relaxed);
            result.elapsed = started.elapsed();
            return Ok(result);
        };
        let chunk_len = (total / (threads as u64 * 32)).clamp(RESERVE_BLOCK, 1 << 18).min(total.max(1));
        let chunks = total.div_ceil(chunk_len) as usize;
        shared.best_chunk.store(usize::MAX, Ordering::Relaxed);
        let run = || {
            (0..chunks)
                .into_par_iter()
                .map_init(
                    || Checker::new(g, h, connected),
                    |checker, c| {
                        let start = c as u64 * chunk_len;
                        let len = chunk_len.min(total - start);
                        scan_chunk(checker, &shared, c, start, len, m)
                    },
                )
                .collect::<Vec<_>>()
        };
        let outcomes = match &pool {
            Some(p) => p.install(run),
            None => run(),
        };
        for outcome in outcomes {
            match outcome {
                ChunkOutcome::Clean => {}
                ChunkOutcome::Hit(rank, combo) => {
                    let cert = CutCertificate::from_cut(g, &VertexSet::from_iter(order, combo), h)?;
                    if !cert.valid {
                        return Err(Error::Inconsistent(format!(
                            "fast check accepted a non-{h}-cut at size {m}, rank {rank}"
                        )));
                    }
                    result.value = Some(m);
                    result.exhaustive_below = m;
                    result.certificate = Some(cert);
                    result.certificate_source = Some(CertificateSource::Search);
                    result.upper_bound = Some(m);
                    result.candidates += rank + 1;
                    result.elapsed = started.elapsed();
                    return Ok(result);
                }
                ChunkOutcome::Aborted | ChunkOutcome::Skipped => {
                    result.exhaustive_below = m;
                    result.budget_hit = true;
                    result.candidates = shared.used.load(Ordering::Relaxed);
                    result.elapsed = started.elapsed();
                    return Ok(result);
                }
            }
        }
        result.candidates += total;
        result.exhaustive_below = m + 1;
    }

    match hint {
        Some(c) => {
            result.value = Some(c.size());
            result.exhaustive_below = c.size();
            result.certificate = Some(c.clone());
            result.certificate_source = Some(CertificateSource::Hint);
        }
        None => result.exhaustive_below = result.exhaustive_below.max(order),
    }
    result.elapsed = started.elapsed();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::default_cut;
    use crate::graph::is_h_cut;
    use crate::star::StarGraph;

    fn exact(g: &Graph, h: usize) -> SearchResult {
        kappa_super_exact(g, h, None, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(60, 5), Some(5_461_512));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(1000, 500), None);
    }

    #[test]
    fn colex_order_roundtrip() {
        let n = 9;
        for m in 0..=4 {
            let mut combo: Vec<usize> = (0..m).collect();
            let total = binomial(n, m).unwrap();
            for r in 0..total {
                assert_eq!(colex_rank(&combo), r);
                assert_eq!(colex_unrank(r, m), combo);
                let more = colex_next(&mut combo, n);
                assert_eq!(more, r + 1 < total);
            }
        }
    }

    #[test]
    fn fast_check_agrees_with_reference_check() {
        let g = StarGraph::build(4, 2).unwrap();
        let gr = g.graph();
        for h in 0..=3 {
            let mut checker = Checker::new(gr, h, true);
            for m in 0..=4 {
                for r in 0..binomial(12, m).unwrap() {
                    let combo = colex_unrank(r, m);
                    let s = VertexSet::from_iter(12, combo.iter().copied());
                    let want = is_h_cut(gr, &s, h).unwrap().is_cut();
                    assert_eq!(checker.is_cut(&combo), want, "h={h} combo={combo:?}");
                }
            }
        }
    }

    #[test]
    fn fast_check_on_disconnected_graph() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = exact(&g, 0);
        assert_eq!(r.value, Some(0));
        let r = exact(&g, 1);
        assert_eq!(r.value, Some(0));
        let r = exact(&g, 2);
        assert_eq!(r.value, None);
    }

    #[test]
    fn small_values() {
        let g = StarGraph::build(4, 2).unwrap();
        let r = exact(g.graph(), 1);
        assert_eq!(r.value, Some(3));
        assert!(r.is_certified());

        let r = exact(&Graph::complete(5), 0);
        assert_eq!(r.value, None);
        assert_eq!(r.exhaustive_below, 5);
    }

    #[test]
    fn hint_short_circuits() {
        let g = StarGraph::build(5, 3).unwrap();
        let hint = default_cut(&g, 1).unwrap();
        let r = kappa_super_exact(g.graph(), 1, Some(&hint), &SearchOptions::default()).unwrap();
        assert_eq!(r.value, Some(5));
        assert_eq!(r.exhaustive_below, 5);
        assert_eq!(r.certificate_source, Some(CertificateSource::Hint));
        assert!(kappa_super_exact(g.graph(), 2, Some(&hint), &SearchOptions::default()).is_err());
    }

    #[test]
    fn zero_candidate_budget() {
        let g = StarGraph::build(4, 2).unwrap();
        let opts = SearchOptions {
            budget: Budget { max_candidates: Some(0), ..Budget::default() },
            ..SearchOptions::default()
        };
        let r = kappa_super_exact(g.graph(), 1, None, &opts).unwrap();
        assert!(r.budget_hit);
        assert_eq!(r.value, None);
        assert_eq!(r.exhaustive_below, 0);
    }

    #[test]
    fn partial_candidate_budget_reports_frontier() {
        let g = StarGraph::build(4, 2).unwrap();
        // sizes 0..=2 hold 1 + 12 + 66 candidates
        let opts = SearchOptions {
            budget: Budget { max_candidates: Some(79), ..Budget::default() },
            ..SearchOptions::default()
        };
        let r = kappa_super_exact(g.graph(), 1, None, &opts).unwrap();
        assert!(r.budget_hit);
        assert_eq!(r.exhaustive_below, 3);
        assert_eq!(r.candidates, 79);

        let r = kappa_super_exact(g.graph(), 1, None, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, Some(3));
        assert_eq!(r.candidates, 80);
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let g = StarGraph::build(5, 3).unwrap();
        let base = kappa_super_exact(g.graph(), 1, None, &SearchOptions { workers: 1, ..Default::default() }).unwrap();
        for workers in [2, 3] {
            let r = kappa_super_exact(g.graph(), 1, None, &SearchOptions { workers, ..Default::default() }).unwrap();
            assert_eq!(r.value, base.value);
            assert_eq!(r.certificate, base.certificate);
            assert_eq!(r.candidates, base.candidates);
        }
    }
}
