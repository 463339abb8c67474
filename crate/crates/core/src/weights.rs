//! Weight combinatorics: compositions of `r` into `n` parts, the folding map
//! onto orthogonal weights, its fibers, dominance, and the signed-permutation
//! action of the hyperoctahedral group.
//!
//! Throughout, `i' = n+1-i` is the reversal index and `l = ⌊n/2⌋`. The
//! folding map sends `(λ_1, …, λ_n)` to `(λ_1-λ_{1'}, …, λ_l-λ_{l'})`; for
//! odd `n` it also carries the middle entry mod 2, which is determined by the
//! rest, so set-level operations key on the integer entries alone.

use std::fmt;
use std::str::FromStr;

use num::BigUint;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("index {0} is out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("weight {0} is not in the image for n = {1}, r = {2}")]
    NotInImage(String, usize, usize),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("signs must be +1 or -1")]
    BadSign,
    #[error("cannot parse {0:?}")]
    ParseError(String),
}

/// A sequence of non-negative parts; an element of Λ(n,r) when the parts sum
/// to `r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    /// The sum of the parts.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for Composition {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| WeightError::ParseError(s.to_string()))?;
        if parts.is_empty() {
            return Err(WeightError::ParseError(s.to_string()));
        }
        Ok(Composition::new(parts))
    }
}

/// An orthogonal weight: `l` integer entries, plus a mod-2 component exactly
/// when it folds an odd number of parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OrthWeight {
    entries: Vec<i64>,
    parity: Option<u8>,
}

impl OrthWeight {
    pub fn new(entries: Vec<i64>) -> Self {
        OrthWeight {
            entries,
            parity: None,
        }
    }

    pub fn with_parity(entries: Vec<i64>, parity: u8) -> Self {
        OrthWeight {
            entries,
            parity: Some(parity % 2),
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn l(&self) -> usize {
        self.entries.len()
    }

    pub fn parity(&self) -> Option<u8> {
        self.parity
    }

    /// `|ξ_1| + … + |ξ_l|`.
    pub fn abs_sum(&self) -> usize {
        self.entries.iter().map(|e| e.unsigned_abs() as usize).sum()
    }

    /// `ξ_1 + … + ξ_l`.
    pub fn entry_sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// True when the entries are weakly decreasing and non-negative.
    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
            && self.entries.last().is_none_or(|&e| e >= 0)
    }
}

impl fmt::Display for OrthWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", strs.join(","))?;
        if let Some(p) = self.parity {
            write!(f, ";parity={p}")?;
        }
        Ok(())
    }
}

impl FromStr for OrthWeight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError::ParseError(s.to_string());
        let (body, parity) = match s.split_once(';') {
            None => (s, None),
            Some((body, tail)) => {
                let p = tail
                    .trim()
                    .strip_prefix("parity=")
                    .and_then(|v| v.trim().parse::<u8>().ok())
                    .ok_or_else(bad)?;
                if p > 1 {
                    return Err(bad());
                }
                (body, Some(p))
            }
        };
        let entries = body
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        Ok(OrthWeight { entries, parity })
    }
}

/// An element of the hyperoctahedral group `{±1}^l ⋊ S_l`: a permutation of
/// the entry positions combined with per-position sign flips.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPermutation {
    perm: Permutation,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(l: usize) -> Self {
        SignedPermutation {
            perm: Permutation::identity(l),
            signs: vec![1; l],
        }
    }

    pub fn new(perm: Permutation, signs: Vec<i8>) -> Result<Self, WeightError> {
        if signs.len() != perm.degree() {
            return Err(WeightError::LengthMismatch {
                expected: perm.degree(),
                got: signs.len(),
            });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(WeightError::BadSign);
        }
        Ok(SignedPermutation { perm, signs })
    }

    /// The generator negating entry `i` (1-based).
    pub fn entry_negation(l: usize, i: usize) -> Result<Self, WeightError> {
        if i == 0 || i > l {
            return Err(WeightError::IndexOutOfRange(i, l));
        }
        let mut signs = vec![1; l];
        signs[i - 1] = -1;
        Ok(SignedPermutation {
            perm: Permutation::identity(l),
            signs,
        })
    }

    /// The generator permuting entries without sign changes.
    pub fn entry_permutation(perm: Permutation) -> Self {
        let l = perm.degree();
        SignedPermutation {
            perm,
            signs: vec![1; l],
        }
    }

    pub fn l(&self) -> usize {
        self.perm.degree()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Group law chosen so that `apply(a.compose(b), ξ) = apply(a, apply(b, ξ))`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.l(), other.l(), "degree mismatch");
        let perm = other.perm.then(&self.perm);
        let self_inv = self.perm.inverse();
        let signs = (1..=self.l())
            .map(|i| self.signs[i - 1] * other.signs[self_inv.apply(i) - 1])
            .collect();
        SignedPermutation { perm, signs }
    }
}

/// All of Λ(n,r) in lexicographic order; count `C(n+r-1, r)`.
pub fn enumerate_compositions(n: usize, r: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut parts = vec![0usize; n];
    fill_compositions(&mut parts, 0, r, &mut out);
    out
}

fn fill_compositions(parts: &mut Vec<usize>, pos: usize, remaining: usize, out: &mut Vec<Composition>) {
    if pos == parts.len() {
        if remaining == 0 {
            out.push(Composition::new(parts.clone()));
        }
        return;
    }
    if pos == parts.len() - 1 {
        parts[pos] = remaining;
        out.push(Composition::new(parts.clone()));
        parts[pos] = 0;
        return;
    }
    for v in 0..=remaining {
        parts[pos] = v;
        fill_compositions(parts, pos + 1, remaining - v, out);
        parts[pos] = 0;
    }
}

/// The occurrence-count weight of a multi-index with entries in `1..=n`.
pub fn weight_of(indices: &[usize], n: usize) -> Result<Composition, WeightError> {
    let mut parts = vec![0usize; n];
    for &i in indices {
        if i == 0 || i > n {
            return Err(WeightError::IndexOutOfRange(i, n));
        }
        parts[i - 1] += 1;
    }
    Ok(Composition::new(parts))
}

/// Folds a composition onto an orthogonal weight: entry `i` is
/// `λ_i - λ_{i'}`; for odd `n` the middle part contributes the parity bit.
pub fn pi_map(lambda: &Composition) -> OrthWeight {
    let n = lambda.n();
    let l = n / 2;
    let parts = lambda.parts();
    let entries: Vec<i64> = (0..l)
        .map(|i| parts[i] as i64 - parts[n - 1 - i] as i64)
        .collect();
    if n % 2 == 1 {
        OrthWeight::with_parity(entries, (parts[l] % 2) as u8)
    } else {
        OrthWeight::new(entries)
    }
}

/// Is `xi` in the image of the fold on Λ(n,r)? For even `n` the absolute
/// entry sum must be `≤ r` with the same parity as `r`; for odd `n` only
/// `≤ r` is needed, and a stored parity bit must match the determined value.
pub fn in_image(xi: &OrthWeight, n: usize, r: usize) -> bool {
    if xi.l() != n / 2 {
        return false;
    }
    let t = xi.abs_sum();
    if t > r {
        return false;
    }
    if n % 2 == 0 {
        xi.parity().is_none() && (r - t) % 2 == 0
    } else {
        match xi.parity() {
            None => true,
            Some(p) => p as i64 == (r as i64 - xi.entry_sum()).rem_euclid(2),
        }
    }
}

/// Validates membership in the image and fills in the determined parity bit
/// for odd `n` when it was left off.
pub fn normalize_weight(xi: &OrthWeight, n: usize, r: usize) -> Result<OrthWeight, WeightError> {
    if !in_image(xi, n, r) {
        return Err(WeightError::NotInImage(xi.to_string(), n, r));
    }
    if n % 2 == 1 && xi.parity().is_none() {
        let parity = (r as i64 - xi.entry_sum()).rem_euclid(2) as u8;
        Ok(OrthWeight::with_parity(xi.entries().to_vec(), parity))
    } else {
        Ok(xi.clone())
    }
}

/// The image of Λ(n,r) under the fold, in lexicographic order.
pub fn image_weights(n: usize, r: usize) -> Vec<OrthWeight> {
    let l = n / 2;
    let odd = n % 2 == 1;
    let mut out = Vec::new();
    let totals: Vec<usize> = if odd {
        (0..=r).collect()
    } else {
        (0..=r).filter(|t| (r - t) % 2 == 0).collect()
    };
    for total in totals {
        for comp in enumerate_compositions(l, total) {
            let support: Vec<usize> = (0..l).filter(|&i| comp.parts()[i] > 0).collect();
            for mask in 0..(1u32 << support.len()) {
                let mut entries: Vec<i64> = comp.parts().iter().map(|&p| p as i64).collect();
                for (bit, &pos) in support.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        entries[pos] = -entries[pos];
                    }
                }
                if odd {
                    let parity = ((r as i64 - entries.iter().sum::<i64>()).rem_euclid(2)) as u8;
                    out.push(OrthWeight::with_parity(entries, parity));
                } else {
                    out.push(OrthWeight::new(entries));
                }
            }
        }
    }
    out.sort();
    out
}

/// The members of the fiber over `xi`, built constructively: place `|ξ_i|`
/// at position `i` or `i'` according to sign, then distribute the slack `s`
/// symmetrically (for even `n`) or symmetrically plus a middle remainder
/// (for odd `n`). Sorted lexicographically.
pub fn fiber(xi: &OrthWeight, n: usize, r: usize) -> Result<Vec<Composition>, WeightError> {
    if !in_image(xi, n, r) {
        return Err(WeightError::NotInImage(xi.to_string(), n, r));
    }
    let l = n / 2;
    let mut mu = vec![0usize; n];
    for (i, &e) in xi.entries().iter().enumerate() {
        if e > 0 {
            mu[i] = e as usize;
        } else if e < 0 {
            mu[n - 1 - i] = (-e) as usize;
        }
    }
    let slack = r - xi.abs_sum();
    let mut out = Vec::new();
    if n % 2 == 0 {
        let s = slack / 2;
        for nu in enumerate_compositions(l, s) {
            let mut parts = mu.clone();
            for i in 0..l {
                parts[i] += nu.parts()[i];
                parts[n - 1 - i] += nu.parts()[i];
            }
            out.push(Composition::new(parts));
        }
    } else {
        for t in 0..=slack / 2 {
            for nu in enumerate_compositions(l, t) {
                let mut parts = mu.clone();
                for i in 0..l {
                    parts[i] += nu.parts()[i];
                    parts[n - 1 - i] += nu.parts()[i];
                }
                parts[l] = slack - 2 * t;
                out.push(Composition::new(parts));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The unique weakly-decreasing non-negative weight in the orbit of `xi`
/// under signed permutations: sort the absolute values.
pub fn dominant_representative(xi: &OrthWeight) -> OrthWeight {
    let mut entries: Vec<i64> = xi.entries().iter().map(|e| e.abs()).collect();
    entries.sort_unstable_by(|a, b| b.cmp(a));
    OrthWeight {
        entries,
        parity: xi.parity(),
    }
}

/// Acts on the entries by the signed permutation: position `i` goes to
/// position `(i)σ` and picks up the sign there. The parity component is
/// untouched (it only depends on the entries mod 2).
pub fn signed_perm_apply(w: &SignedPermutation, xi: &OrthWeight) -> Result<OrthWeight, WeightError> {
    if w.l() != xi.l() {
        return Err(WeightError::LengthMismatch {
            expected: xi.l(),
            got: w.l(),
        });
    }
    let mut entries = vec![0i64; xi.l()];
    for i in 1..=xi.l() {
        let j = w.perm().apply(i);
        entries[j - 1] = w.signs()[j - 1] as i64 * xi.entries()[i - 1];
    }
    Ok(OrthWeight {
        entries,
        parity: xi.parity(),
    })
}

/// `C(n, k)` exactly.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Dimension of the permutation module for `lambda`: the multinomial
/// coefficient counting multi-indices of that weight.
pub fn dim_m(lambda: &Composition) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let mut placed = 0usize;
    for &part in lambda.parts() {
        placed += part;
        acc *= binomial(placed, part);
    }
    acc
}

/// Dimension of the summand for `xi`: the sum of `dim_m` over its fiber.
pub fn dim_n(xi: &OrthWeight, n: usize, r: usize) -> Result<BigUint, WeightError> {
    let mut acc = BigUint::from(0u32);
    for lambda in fiber(xi, n, r)? {
        acc += dim_m(&lambda);
    }
    Ok(acc)
}
