//! k-permutations of `{1..n}`, the vertex labels of the (n,k)-star graph.
//!
//! Vertices are identified by their rank in lexicographic order of the raw
//! symbol sequence. Symbols are 1-based everywhere.

use std::fmt;

use crate::error::{domain, Result};

/// Largest alphabet accepted; symbols are stored as `u8`.
pub const MAX_N: usize = 64;

/// A sequence of `k` pairwise distinct symbols drawn from `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPermutation {
    n: u8,
    symbols: Vec<u8>,
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(domain!("alphabet size n={n} must lie in 1..={MAX_N}"));
    }
    if k == 0 || k > n {
        return Err(domain!("length k={k} must satisfy 1 <= k <= n={n}"));
    }
    Ok(())
}

/// Falling factorial `a (a-1) ... (a-b+1)`, i.e. `a!/(a-b)!`.
pub(crate) fn falling(a: usize, b: usize) -> Option<u64> {
    if b > a {
        return Some(0);
    }
    (a - b + 1..=a).try_fold(1u64, |acc, x| acc.checked_mul(x as u64))
}

/// Number of k-permutations of `{1..n}`: `n!/(n-k)!`.
pub fn count(n: usize, k: usize) -> Result<u64> {
    check_nk(n, k)?;
    falling(n, k).ok_or_else(|| domain!("count({n},{k}) overflows u64"))
}

impl KPermutation {
    pub fn new(n: usize, symbols: Vec<u8>) -> Result<Self> {
        check_nk(n, symbols.len())?;
        let mut seen = 0u64;
        for &s in &symbols {
            if s == 0 || s as usize > n {
                return Err(domain!("symbol {s} outside 1..={n}"));
            }
            let bit = 1u64 << (s - 1);
            if seen & bit != 0 {
                return Err(domain!("symbol {s} repeated"));
            }
            seen |= bit;
        }
        Ok(KPermutation { n: n as u8, symbols })
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn from_raw(n: usize, symbols: Vec<u8>) -> Self {
        debug_assert!(KPermutation::new(n, symbols.clone()).is_ok());
        KPermutation { n: n as u8, symbols }
    }

    /// The first permutation in lexicographic order, `1,2,...,k`.
    pub fn identity(n: usize, k: usize) -> Result<Self> {
        check_nk(n, k)?;
        Ok(KPermutation::from_raw(n, (1..=k as u8).collect()))
    }

    /// Parses the comma-separated textual form, e.g. `"3,1,2"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let symbols = text
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| crate::error::Error::Parse(format!("bad symbol {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        KPermutation::new(n, symbols)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// The `i`-th bit, 1-based as in `p_1 p_2 ... p_k`.
    pub fn bit(&self, i: usize) -> u8 {
        self.symbols[i - 1]
    }

    /// Symbols of `{1..n}` not used by this permutation, ascending.
    pub fn unused(&self) -> Vec<u8> {
        let used = self.used_mask();
        (1..=self.n).filter(|s| used >> (s - 1) & 1 == 0).collect()
    }

    fn used_mask(&self) -> u64 {
        self.symbols.iter().fold(0, |m, &s| m | 1 << (s - 1))
    }

    /// Position in lexicographic order of all k-permutations of `{1..n}`.
    pub fn rank(&self) -> u64 {
        let (n, k) = (self.n(), self.k());
        let mut used = 0u64;
        let mut r = 0u64;
        for (i, &s) in self.symbols.iter().enumerate() {
            let below = (s - 1) as u32;
            let smaller_free = below - (used & ((1u64 << below) - 1)).count_ones();
            r += smaller_free as u64 * falling(n - i - 1, k - i - 1).unwrap_or(0);
            used |= 1 << (s - 1);
        }
        r
    }

    /// Lexicographic successor, or `None` for the last permutation.
    pub fn successor(&self) -> Option<KPermutation> {
        let n = self.n;
        let k = self.k();
        let mut prefix_used = self.used_mask();
        for i in (0..k).rev() {
            let cur = self.symbols[i];
            prefix_used &= !(1u64 << (cur - 1));
            let Some(next) = (cur + 1..=n).find(|s| prefix_used >> (s - 1) & 1 == 0) else {
                continue;
            };
            let mut out = self.symbols[..i].to_vec();
            out.push(next);
            let mut used = prefix_used | 1 << (next - 1);
            for _ in i + 1..k {
                let s = (1..=n).find(|s| used >> (s - 1) & 1 == 0)?;
                used |= 1 << (s - 1);
                out.push(s);
            }
            return Some(KPermutation::from_raw(n as usize, out));
        }
        None
    }
}

/// Inverse of [`KPermutation::rank`].
pub fn unrank(n: usize, k: usize, r: u64) -> Result<KPermutation> {
    let total = count(n, k)?;
    if r >= total {
        return Err(domain!("rank {r} out of range for count({n},{k}) = {total}"));
    }
    let mut free: Vec<u8> = (1..=n as u8).collect();
    let mut rest = r;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let block = falling(n - i - 1, k - i - 1).unwrap_or(1);
        let idx = (rest / block) as usize;
        rest %= block;
        out.push(free.remove(idx));
    }
    Ok(KPermutation::from_raw(n, out))
}

/// Every k-permutation of `{1..n}` in strictly increasing lexicographic order.
pub fn enumerate(n: usize, k: usize) -> Result<Vec<KPermutation>> {
    let total = count(n, k)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = Some(KPermutation::identity(n, k)?);
    while let Some(p) = cur {
        cur = p.successor();
        out.push(p);
    }
    debug_assert_eq!(out.len() as u64, total);
    Ok(out)
}

impl fmt::Display for KPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPermutation({self})")
    }
}
