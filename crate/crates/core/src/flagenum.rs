//! Chain weights, the ab-index, flag vectors, the cd-index and the
//! Zaslavsky invariants of a quasi-graded poset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ncpoly::{self, a_minus_b_pow, Ab, AbPolynomial, AbWord, CdPolynomial, Word};
use crate::poset::{EulerianFailure, QuasiGradedPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("poset is not Eulerian: interval [{}, {}] sums to {}", .0.lower, .0.upper, .0.sum)]
    NotEulerian(EulerianFailure),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("no Euler characteristic given for '{0}'")]
    MissingEulerData(String),
}

/// `wt(c) = (a−b)^{ρ(x0,x1)−1} b (a−b)^{ρ(x1,x2)−1} b ⋯ (a−b)^{ρ(x_{k−1},x_k)−1}`
/// for a chain `0̂ = x0 < x1 < ⋯ < xk = 1̂` given by element indices.
pub fn chain_weight(p: &QuasiGradedPoset, chain: &[usize]) -> Result<AbPolynomial, FlagError> {
    if chain.len() < 2 {
        return Err(FlagError::InvalidChain("needs at least 0̂ and 1̂".into()));
    }
    if chain[0] != p.bottom() || chain[chain.len() - 1] != p.top() {
        return Err(FlagError::InvalidChain("must run from 0̂ to 1̂".into()));
    }
    let mut w = AbPolynomial::one();
    for (i, pair) in chain.windows(2).enumerate() {
        if !p.lt(pair[0], pair[1]) {
            return Err(FlagError::InvalidChain(format!(
                "'{}' is not below '{}'",
                p.id(pair[0]),
                p.id(pair[1])
            )));
        }
        if i > 0 {
            w = &w * &ncpoly::b();
        }
        w = &w * &a_minus_b_pow(p.rank(pair[1]) - p.rank(pair[0]) - 1);
    }
    Ok(w)
}

/// Powers of `(a − b)` up to `n`, shared by the recursions.
fn powers(n: usize) -> Vec<AbPolynomial> {
    let step = a_minus_b_pow(1);
    let mut out = vec![AbPolynomial::one()];
    for i in 1..=n {
        out.push(&out[i - 1] * &step);
    }
    out
}

/// `Ψ([x,1̂])` for every `x`, by
/// `Ψ([x,1̂]) = ζ̄(x,1̂)(a−b)^{ρ(x,1̂)−1} + Σ_{x<y<1̂} ζ̄(x,y)(a−b)^{ρ(x,y)−1} b Ψ([y,1̂])`.
/// The entry at `1̂` is zero.
pub fn ab_index_to_top(p: &QuasiGradedPoset) -> Vec<AbPolynomial> {
    let n = p.len();
    let top = p.top();
    let pw = powers(p.poset_rank());
    let b = ncpoly::b();
    let mut psi = vec![AbPolynomial::zero(); n];
    for x in (0..top).rev() {
        let mut acc = pw[p.rank(top) - p.rank(x) - 1].scale(&p.zeta_value(x, top));
        for y in p.strictly_above(x).filter(|&y| y != top) {
            let z = p.zeta_value(x, y);
            if z.is_zero() || psi[y].is_zero() {
                continue;
            }
            let head = &pw[p.rank(y) - p.rank(x) - 1].scale(&z) * &b;
            acc += &(&head * &psi[y]);
        }
        psi[x] = acc;
    }
    psi
}

/// `Ψ([0̂,y])` for every `y`; the entry at `0̂` is zero.
pub fn ab_index_from_bottom(p: &QuasiGradedPoset) -> Vec<AbPolynomial> {
    let n = p.len();
    let bot = p.bottom();
    let pw = powers(p.poset_rank());
    let b = ncpoly::b();
    let mut psi = vec![AbPolynomial::zero(); n];
    for y in 1..n {
        let mut acc = pw[p.rank(y) - 1].scale(&p.zeta_value(bot, y));
        for x in p.strictly_below(y).filter(|&x| x != bot) {
            let z = p.zeta_value(x, y);
            if z.is_zero() || psi[x].is_zero() {
                continue;
            }
            let tail = &b * &pw[p.rank(y) - p.rank(x) - 1].scale(&z);
            acc += &(&psi[x] * &tail);
        }
        psi[y] = acc;
    }
    psi
}

/// `Ψ(P) = Σ_c ζ̄(c) wt(c)`. Zero for the one-element poset.
pub fn ab_index(p: &QuasiGradedPoset) -> AbPolynomial {
    if p.len() == 1 {
        return AbPolynomial::zero();
    }
    ab_index_to_top(p).swap_remove(p.bottom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagKind {
    F,
    H,
}

/// A flag vector indexed by subsets of `{1, …, n}` encoded as bitmasks
/// (bit `i − 1` for rank `i`), where `n = ρ(P) − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVector {
    pub kind: FlagKind,
    pub n: usize,
    pub entries: Vec<BigInt>,
}

impl FlagVector {
    pub fn get(&self, ranks: &[usize]) -> BigInt {
        let mask = ranks.iter().fold(0usize, |m, &r| m | 1 << (r - 1));
        self.entries[mask].clone()
    }

    pub fn subset(mask: usize) -> Vec<usize> {
        (0..usize::BITS as usize)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }
}

/// `f̄(S)`: the ζ̄-weighted count of chains `0̂ < x1 < ⋯ < 1̂` whose rank set is `S`.
pub fn flag_f_vector(p: &QuasiGradedPoset) -> FlagVector {
    let rho = p.poset_rank();
    let n = rho.saturating_sub(1);
    let bot = p.bottom();
    let top = p.top();
    let mut entries = vec![BigInt::zero(); 1 << n];
    if p.len() == 1 {
        return FlagVector {
            kind: FlagKind::F,
            n,
            entries,
        };
    }
    for (mask, entry) in entries.iter_mut().enumerate() {
        // Weighted chain counts ending at each element, extended rank by rank.
        let mut weights: Vec<(usize, BigInt)> = vec![(bot, BigInt::one())];
        for r in FlagVector::subset(mask) {
            let mut next = Vec::new();
            for y in (0..p.len()).filter(|&y| p.rank(y) == r) {
                let mut s = BigInt::zero();
                for (x, w) in &weights {
                    if p.lt(*x, y) {
                        s += w * p.zeta_value(*x, y);
                    }
                }
                if !s.is_zero() {
                    next.push((y, s));
                }
            }
            weights = next;
        }
        let mut s = BigInt::zero();
        for (x, w) in &weights {
            if p.lt(*x, top) {
                s += w * p.zeta_value(*x, top);
            }
        }
        *entry = s;
    }
    FlagVector {
        kind: FlagKind::F,
        n,
        entries,
    }
}

/// `h̄(S) = Σ_{T⊆S} (−1)^{|S−T|} f̄(T)`.
pub fn flag_h_vector(p: &QuasiGradedPoset) -> FlagVector {
    let f = flag_f_vector(p);
    let mut h = f.entries.clone();
    for bit in 0..f.n {
        for mask in 0..h.len() {
            if mask >> bit & 1 == 1 {
                let lower = h[mask ^ (1 << bit)].clone();
                h[mask] -= lower;
            }
        }
    }
    FlagVector {
        kind: FlagKind::H,
        n: f.n,
        entries: h,
    }
}

/// `Ψ = Σ_S h̄(S) u_S` with `u_S = u1⋯un`, `ui = b` iff `i ∈ S`.
pub fn ab_index_via_flag(p: &QuasiGradedPoset) -> AbPolynomial {
    if p.len() == 1 {
        return AbPolynomial::zero();
    }
    let h = flag_h_vector(p);
    AbPolynomial::from_terms(h.entries.iter().enumerate().map(|(mask, c)| {
        let w: AbWord = (0..h.n)
            .map(|i| if mask >> i & 1 == 1 { Ab::B } else { Ab::A })
            .collect();
        (w, c.clone())
    }))
}

/// The cd-index of an Eulerian quasi-graded poset.
pub fn cd_index(p: &QuasiGradedPoset) -> Result<CdPolynomial, FlagError> {
    if let Some(f) = p.eulerian_check().failure {
        return Err(FlagError::NotEulerian(f));
    }
    ncpoly::collapse_to_cd(&ab_index(p)).map_err(|e| {
        FlagError::Internal(format!("Eulerian poset with non-cd ab-index: {e}"))
    })
}

/// Euler characteristics keyed by element id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EulerData {
    values: BTreeMap<String, BigInt>,
}

impl EulerData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: impl Into<String>, chi: impl Into<BigInt>) {
        self.values.insert(id.into(), chi.into());
    }

    pub fn get(&self, id: &str) -> Option<&BigInt> {
        self.values.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BigInt)> {
        self.values.iter()
    }
}

impl<S: Into<String>, V: Into<BigInt>> FromIterator<(S, V)> for EulerData {
    fn from_iter<I: IntoIterator<Item = (S, V)>>(iter: I) -> Self {
        let mut d = EulerData::new();
        for (s, v) in iter {
            d.insert(s, v);
        }
        d
    }
}

fn signed_term(p: &QuasiGradedPoset, x: usize) -> BigInt {
    let bot = p.bottom();
    let t = p.mobius(bot, x).cloned().unwrap_or_default() * p.zeta_value(x, p.top());
    if p.rank(x) % 2 == 0 {
        t
    } else {
        -t
    }
}

/// `Z = Σ_x (−1)^{ρ(x)} μ̄(0̂,x) ζ̄(x,1̂)`.
pub fn zaslavsky_z(p: &QuasiGradedPoset) -> BigInt {
    (0..p.len()).map(|x| signed_term(p, x)).sum()
}

/// `Z_M = Σ_x (−1)^{ρ(x)} μ̄(0̂,x) ζ̄(x,1̂) χ(x)`.
pub fn zaslavsky_zm(p: &QuasiGradedPoset, chi: &EulerData) -> Result<BigInt, FlagError> {
    let mut s = BigInt::zero();
    for x in 0..p.len() {
        let c = chi
            .get(p.id(x))
            .ok_or_else(|| FlagError::MissingEulerData(p.id(x).to_string()))?;
        s += signed_term(p, x) * c;
    }
    Ok(s)
}

/// All words of length `n` over {a, b}, in canonical order.
pub fn ab_words(n: usize) -> impl Iterator<Item = AbWord> {
    (0..1usize << n).map(move |bits| {
        (0..n)
            .map(|i| if bits >> (n - 1 - i) & 1 == 1 { Ab::B } else { Ab::A })
            .collect::<Word<Ab>>()
    })
}
