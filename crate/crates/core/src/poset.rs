//! Finite quasi-graded posets `(P, ρ, ζ̄)`.
//!
//! A poset is described by a [`PosetData`] (element ids with ranks, cover or
//! order relations, and optional non-classical zeta values). [`PosetData::validate`]
//! reports every violated axiom; [`PosetData::build`] produces an immutable
//! [`QuasiGradedPoset`] with the order matrix and `μ̄` computed up front.
//!
//! Internally elements are indexed in a linear extension sorted by rank, so
//! index 0 is always `0̂` and the last index is `1̂`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementData {
    pub id: String,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaEntry {
    pub from: String,
    pub to: String,
    #[serde(with = "crate::io::bigint")]
    pub value: BigInt,
}

/// The plain description of a quasi-graded poset, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PosetData {
    pub elements: Vec<ElementData>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zeta: Vec<ZetaEntry>,
}

/// A violated poset axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    DuplicateId(String),
    UnknownId(String),
    Cycle(String, String),
    NoUniqueMinimum(Vec<String>),
    NoUniqueMaximum(Vec<String>),
    RankOfMinimum(usize),
    RankNotStrict { lower: String, upper: String },
    DiagonalZeta { id: String, value: BigInt },
    ZetaOnIncomparable { from: String, to: String },
    DuplicateZeta { from: String, to: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "poset has no elements"),
            Violation::DuplicateId(id) => write!(f, "duplicate element id '{id}'"),
            Violation::UnknownId(id) => write!(f, "unknown element id '{id}'"),
            Violation::Cycle(x, y) => write!(f, "order relation has a cycle through '{x}' and '{y}'"),
            Violation::NoUniqueMinimum(ids) => {
                write!(f, "no unique minimum (minimal elements: {})", ids.join(", "))
            }
            Violation::NoUniqueMaximum(ids) => {
                write!(f, "no unique maximum (maximal elements: {})", ids.join(", "))
            }
            Violation::RankOfMinimum(r) => write!(f, "rank of minimum is {r}, expected 0"),
            Violation::RankNotStrict { lower, upper } => {
                write!(f, "rank not strictly increasing: '{lower}' < '{upper}'")
            }
            Violation::DiagonalZeta { id, value } => {
                write!(f, "diagonal zeta at '{id}' is {value}, expected 1")
            }
            Violation::ZetaOnIncomparable { from, to } => {
                write!(f, "zeta given on incomparable pair ('{from}', '{to}')")
            }
            Violation::DuplicateZeta { from, to } => {
                write!(f, "zeta given twice for ('{from}', '{to}')")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("invalid poset: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("no element with id '{0}'")]
    UnknownElement(String),
    #[error("elements '{0}' and '{1}' are not comparable")]
    NotComparable(String, String),
    #[error("cannot merge '{x}' and '{y}': {reason}")]
    NotMergeable { x: String, y: String, reason: String },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// A function on comparable pairs, stored densely; `None` off the order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceFunction {
    n: usize,
    values: Vec<Option<BigInt>>,
}

impl IncidenceFunction {
    fn new(n: usize) -> Self {
        IncidenceFunction {
            n,
            values: vec![None; n * n],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Option<&BigInt> {
        self.values[x * self.n + y].as_ref()
    }

    fn set(&mut self, x: usize, y: usize, v: BigInt) {
        self.values[x * self.n + y] = Some(v);
    }
}

impl PosetData {
    /// Lists every violated axiom; an empty list means [`PosetData::build`] succeeds.
    pub fn validate(&self) -> Vec<Violation> {
        match self.analyze() {
            Ok(_) => Vec::new(),
            Err(v) => v,
        }
    }

    pub fn build(&self) -> Result<QuasiGradedPoset, PosetError> {
        let (ids, ranks, le, zeta) = self.analyze().map_err(PosetError::Invalid)?;
        Ok(QuasiGradedPoset::from_parts(ids, ranks, le, zeta))
    }

    #[allow(clippy::type_complexity)]
    fn analyze(
        &self,
    ) -> Result<(Vec<String>, Vec<usize>, Vec<bool>, IncidenceFunction), Vec<Violation>> {
        let mut violations = Vec::new();
        let n = self.elements.len();
        if n == 0 {
            return Err(vec![Violation::Empty]);
        }
        let mut index = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if index.insert(e.id.as_str(), i).is_some() {
                violations.push(Violation::DuplicateId(e.id.clone()));
            }
        }
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (lo, up) in &self.covers {
            match (index.get(lo.as_str()), index.get(up.as_str())) {
                (Some(&i), Some(&j)) => le[i * n + j] = true,
                (a, b) => {
                    if a.is_none() {
                        violations.push(Violation::UnknownId(lo.clone()));
                    }
                    if b.is_none() {
                        violations.push(Violation::UnknownId(up.clone()));
                    }
                }
            }
        }
        transitive_closure(&mut le, n);

        let ids: Vec<String> = self.elements.iter().map(|e| e.id.clone()).collect();
        let ranks: Vec<usize> = self.elements.iter().map(|e| e.rank).collect();
        let mut cyclic = false;
        for i in 0..n {
            for j in i + 1..n {
                if le[i * n + j] && le[j * n + i] {
                    violations.push(Violation::Cycle(ids[i].clone(), ids[j].clone()));
                    cyclic = true;
                }
            }
        }
        if !cyclic {
            let minimal: Vec<usize> = (0..n)
                .filter(|&j| (0..n).all(|i| i == j || !le[i * n + j]))
                .collect();
            let maximal: Vec<usize> = (0..n)
                .filter(|&i| (0..n).all(|j| i == j || !le[i * n + j]))
                .collect();
            if minimal.len() != 1 {
                violations.push(Violation::NoUniqueMinimum(
                    minimal.iter().map(|&i| ids[i].clone()).collect(),
                ));
            } else if ranks[minimal[0]] != 0 {
                violations.push(Violation::RankOfMinimum(ranks[minimal[0]]));
            }
            if maximal.len() != 1 {
                violations.push(Violation::NoUniqueMaximum(
                    maximal.iter().map(|&i| ids[i].clone()).collect(),
                ));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && le[i * n + j] && ranks[i] >= ranks[j] {
                        violations.push(Violation::RankNotStrict {
                            lower: ids[i].clone(),
                            upper: ids[j].clone(),
                        });
                    }
                }
            }
        }

        let mut zeta = IncidenceFunction::new(n);
        for i in 0..n {
            for j in 0..n {
                if le[i * n + j] {
                    zeta.set(i, j, BigInt::one());
                }
            }
        }
        let mut seen = BTreeSet::new();
        for entry in &self.zeta {
            let (Some(&i), Some(&j)) = (index.get(entry.from.as_str()), index.get(entry.to.as_str()))
            else {
                for id in [&entry.from, &entry.to] {
                    if !index.contains_key(id.as_str()) {
                        violations.push(Violation::UnknownId(id.clone()));
                    }
                }
                continue;
            };
            if !seen.insert((i, j)) {
                violations.push(Violation::DuplicateZeta {
                    from: entry.from.clone(),
                    to: entry.to.clone(),
                });
            }
            if i == j {
                if !entry.value.is_one() {
                    violations.push(Violation::DiagonalZeta {
                        id: entry.from.clone(),
                        value: entry.value.clone(),
                    });
                }
            } else if !le[i * n + j] {
                violations.push(Violation::ZetaOnIncomparable {
                    from: entry.from.clone(),
                    to: entry.to.clone(),
                });
            } else {
                zeta.set(i, j, entry.value.clone());
            }
        }
        if violations.is_empty() {
            Ok((ids, ranks, le, zeta))
        } else {
            Err(violations)
        }
    }
}

fn transitive_closure(le: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// A validated quasi-graded poset. Immutable; `μ̄` is computed on construction.
#[derive(Debug, Clone)]
pub struct QuasiGradedPoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    ranks: Vec<usize>,
    le: Vec<bool>,
    zeta: IncidenceFunction,
    mobius: IncidenceFunction,
}

impl QuasiGradedPoset {
    /// Reorders the given (already valid) data by rank and computes caches.
    fn from_parts(
        ids: Vec<String>,
        ranks: Vec<usize>,
        le: Vec<bool>,
        zeta: IncidenceFunction,
    ) -> Self {
        let n = ids.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&i| ranks[i]);
        let mut new_le = vec![false; n * n];
        let mut new_zeta = IncidenceFunction::new(n);
        for (a, &i) in perm.iter().enumerate() {
            for (b, &j) in perm.iter().enumerate() {
                new_le[a * n + b] = le[i * n + j];
                if let Some(v) = zeta.get(i, j) {
                    new_zeta.set(a, b, v.clone());
                }
            }
        }
        let ids: Vec<String> = perm.iter().map(|&i| ids[i].clone()).collect();
        let ranks: Vec<usize> = perm.iter().map(|&i| ranks[i]).collect();
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut p = QuasiGradedPoset {
            ids,
            index,
            ranks,
            le: new_le,
            zeta: new_zeta,
            mobius: IncidenceFunction::new(n),
        };
        p.mobius = p.compute_mobius();
        p
    }

    // μ̄(x,y) = −Σ_{x≤z<y} μ̄(x,z) ζ̄(z,y), one lower endpoint at a time.
    fn compute_mobius(&self) -> IncidenceFunction {
        let n = self.len();
        let mut mu = IncidenceFunction::new(n);
        for x in 0..n {
            mu.set(x, x, BigInt::one());
            for y in x + 1..n {
                if !self.le(x, y) {
                    continue;
                }
                let mut s = BigInt::zero();
                for z in x..y {
                    if let (Some(m), Some(zt)) = (mu.get(x, z), self.zeta.get(z, y)) {
                        s += m * zt;
                    }
                }
                mu.set(x, y, -s);
            }
        }
        mu
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// `ρ(P) = ρ(1̂)`.
    pub fn poset_rank(&self) -> usize {
        self.ranks[self.top()]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.le[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    /// `ζ̄(x,y)`, or `None` when `x ≰ y`.
    pub fn zeta(&self, x: usize, y: usize) -> Option<&BigInt> {
        self.zeta.get(x, y)
    }

    /// `ζ̄(x,y)` with zero off the order relation.
    pub fn zeta_value(&self, x: usize, y: usize) -> BigInt {
        self.zeta.get(x, y).cloned().unwrap_or_default()
    }

    pub fn mobius(&self, x: usize, y: usize) -> Option<&BigInt> {
        self.mobius.get(x, y)
    }

    pub fn mobius_function(&self) -> &IncidenceFunction {
        &self.mobius
    }

    pub fn zeta_function(&self) -> &IncidenceFunction {
        &self.zeta
    }

    pub fn is_classical(&self) -> bool {
        self.zeta.values.iter().flatten().all(|v| v.is_one())
    }

    /// Elements strictly above `x`, in index order.
    pub fn strictly_above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (x + 1..self.len()).filter(move |&y| self.le(x, y))
    }

    /// Elements strictly below `y`, in index order.
    pub fn strictly_below(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..y).filter(move |&x| self.le(x, y))
    }

    /// Covering pairs of the order.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.strictly_above(x) {
                if !(x + 1..y).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The description this poset would be rebuilt from: covers plus every
    /// non-unit zeta value.
    pub fn to_data(&self) -> PosetData {
        let n = self.len();
        let mut zeta = Vec::new();
        for x in 0..n {
            for y in self.strictly_above(x) {
                let v = self.zeta_value(x, y);
                if !v.is_one() {
                    zeta.push(ZetaEntry {
                        from: self.ids[x].clone(),
                        to: self.ids[y].clone(),
                        value: v,
                    });
                }
            }
        }
        PosetData {
            elements: (0..n)
                .map(|i| ElementData {
                    id: self.ids[i].clone(),
                    rank: self.ranks[i],
                })
                .collect(),
            covers: self
                .cover_relations()
                .into_iter()
                .map(|(x, y)| (self.ids[x].clone(), self.ids[y].clone()))
                .collect(),
            zeta,
        }
    }

    /// Builds a poset on a subset of elements with new ranks and zeta.
    fn restrict(
        &self,
        keep: &[usize],
        rank: impl Fn(usize) -> usize,
        zeta: impl Fn(usize, usize) -> BigInt,
    ) -> QuasiGradedPoset {
        let m = keep.len();
        let mut le = vec![false; m * m];
        let mut z = IncidenceFunction::new(m);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.le(i, j) {
                    le[a * m + b] = true;
                    z.set(a, b, if i == j { BigInt::one() } else { zeta(i, j) });
                }
            }
        }
        QuasiGradedPoset::from_parts(
            keep.iter().map(|&i| self.ids[i].clone()).collect(),
            keep.iter().map(|&i| rank(i)).collect(),
            le,
            z,
        )
    }

    /// The interval `[x,y]` with rank `ρ_x(w) = ρ(w) − ρ(x)` and restricted zeta.
    pub fn interval(&self, x: usize, y: usize) -> Result<QuasiGradedPoset, PosetError> {
        if !self.le(x, y) {
            return Err(PosetError::NotComparable(
                self.ids[x].clone(),
                self.ids[y].clone(),
            ));
        }
        let keep: Vec<usize> = (x..=y).filter(|&w| self.le(x, w) && self.le(w, y)).collect();
        let base = self.ranks[x];
        Ok(self.restrict(&keep, |w| self.ranks[w] - base, |i, j| self.zeta_value(i, j)))
    }

    pub fn interval_by_id(&self, x: &str, y: &str) -> Result<QuasiGradedPoset, PosetError> {
        self.interval(self.index_of(x)?, self.index_of(y)?)
    }

    /// `ρ*(x) = ρ(x,1̂)`, `ζ̄*(x,y) = ζ̄(y,x)`, order reversed.
    pub fn dual(&self) -> QuasiGradedPoset {
        let n = self.len();
        let top = self.poset_rank();
        let mut le = vec![false; n * n];
        let mut z = IncidenceFunction::new(n);
        for x in 0..n {
            for y in 0..n {
                if self.le(y, x) {
                    le[x * n + y] = true;
                    z.set(x, y, self.zeta_value(y, x));
                }
            }
        }
        QuasiGradedPoset::from_parts(
            self.ids.clone(),
            self.ranks.iter().map(|r| top - r).collect(),
            le,
            z,
        )
    }

    /// Adjoins a new minimum `new_id` of rank 0 below everything, shifting
    /// ranks up by one; the new zeta values are all 1.
    pub fn adjoin_min(&self, new_id: &str) -> Result<QuasiGradedPoset, PosetError> {
        if self.index.contains_key(new_id) {
            return Err(PosetError::Invalid(vec![Violation::DuplicateId(
                new_id.to_string(),
            )]));
        }
        let n = self.len();
        let m = n + 1;
        let mut le = vec![false; m * m];
        let mut z = IncidenceFunction::new(m);
        for y in 0..m {
            le[y] = true;
            z.set(0, y, BigInt::one());
        }
        for x in 0..n {
            for y in 0..n {
                if self.le(x, y) {
                    le[(x + 1) * m + y + 1] = true;
                    z.set(x + 1, y + 1, self.zeta_value(x, y));
                }
            }
        }
        let mut ids = vec![new_id.to_string()];
        ids.extend(self.ids.iter().cloned());
        let mut ranks = vec![0];
        ranks.extend(self.ranks.iter().map(|r| r + 1));
        Ok(QuasiGradedPoset::from_parts(ids, ranks, le, z))
    }

    /// Replaces two equivalent elements by one element `"x|y"`.
    ///
    /// Requires equal rank, incomparability, identical strict up-sets and equal
    /// zeta values into each upper element. The merged element keeps the
    /// common upward zeta and gets `ζ̄(u,z) = ζ̄(u,x) + ζ̄(u,y)` downward.
    pub fn merge_equivalent(&self, x: usize, y: usize) -> Result<QuasiGradedPoset, PosetError> {
        let fail = |reason: &str| PosetError::NotMergeable {
            x: self.ids[x].clone(),
            y: self.ids[y].clone(),
            reason: reason.to_string(),
        };
        if x == y {
            return Err(fail("same element"));
        }
        if self.le(x, y) || self.le(y, x) {
            return Err(fail("elements are comparable"));
        }
        if self.ranks[x] != self.ranks[y] {
            return Err(fail("ranks differ"));
        }
        let ux: Vec<usize> = self.strictly_above(x).collect();
        let uy: Vec<usize> = self.strictly_above(y).collect();
        if ux != uy {
            return Err(fail("strict up-sets differ"));
        }
        if ux.iter().any(|&v| self.zeta(x, v) != self.zeta(y, v)) {
            return Err(fail("zeta values to upper elements differ"));
        }
        let merged_id = format!("{}|{}", self.ids[x], self.ids[y]);
        if self.index.contains_key(&merged_id) {
            return Err(fail("merged id already in use"));
        }

        // New element takes x's slot; y is dropped.
        let keep: Vec<usize> = (0..self.len()).filter(|&w| w != y).collect();
        let m = keep.len();
        let mut le = vec![false; m * m];
        let mut z = IncidenceFunction::new(m);
        let below = |u: usize, w: usize| {
            if w == x {
                self.le(u, x) || self.le(u, y)
            } else {
                self.le(u, w)
            }
        };
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                let rel = if i == x && j == x {
                    true
                } else if i == x {
                    self.le(x, j)
                } else {
                    below(i, j)
                };
                if !rel {
                    continue;
                }
                le[a * m + b] = true;
                let v = if i == j {
                    BigInt::one()
                } else if j == x {
                    self.zeta_value(i, x) + self.zeta_value(i, y)
                } else {
                    self.zeta_value(i, j)
                };
                z.set(a, b, v);
            }
        }
        let ids = keep
            .iter()
            .map(|&i| if i == x { merged_id.clone() } else { self.ids[i].clone() })
            .collect();
        let ranks = keep.iter().map(|&i| self.ranks[i]).collect();
        Ok(QuasiGradedPoset::from_parts(ids, ranks, le, z))
    }

    pub fn merge_by_id(&self, x: &str, y: &str) -> Result<QuasiGradedPoset, PosetError> {
        self.merge_equivalent(self.index_of(x)?, self.index_of(y)?)
    }

    /// Checks `Σ_{x≤y≤z} (−1)^{ρ(x,y)} ζ̄(x,y) ζ̄(y,z) = 0` on every `x < z`.
    pub fn eulerian_check(&self) -> EulerianReport {
        let n = self.len();
        for x in 0..n {
            for z in self.strictly_above(x) {
                let mut s = BigInt::zero();
                for y in x..=z {
                    if let (Some(a), Some(b)) = (self.zeta(x, y), self.zeta(y, z)) {
                        let t = a * b;
                        if (self.ranks[y] - self.ranks[x]) % 2 == 0 {
                            s += t;
                        } else {
                            s -= t;
                        }
                    }
                }
                if !s.is_zero() {
                    return EulerianReport {
                        failure: Some(EulerianFailure {
                            lower: self.ids[x].clone(),
                            upper: self.ids[z].clone(),
                            sum: s,
                        }),
                    };
                }
            }
        }
        EulerianReport { failure: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianFailure {
    pub lower: String,
    pub upper: String,
    pub sum: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianReport {
    /// The first interval (in index order) whose alternating sum is nonzero.
    pub failure: Option<EulerianFailure>,
}

impl EulerianReport {
    pub fn is_eulerian(&self) -> bool {
        self.failure.is_none()
    }
}

/// Convenience constructor used by tests and examples: elements as
/// `(id, rank)`, covers as id pairs, classical zeta.
pub fn classical(elements: &[(&str, usize)], covers: &[(&str, &str)]) -> PosetData {
    PosetData {
        elements: elements
            .iter()
            .map(|&(id, rank)| ElementData {
                id: id.to_string(),
                rank,
            })
            .collect(),
        covers: covers
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        zeta: Vec::new(),
    }
}

impl PosetData {
    /// Sets a non-classical zeta value (builder style).
    pub fn with_zeta(mut self, from: &str, to: &str, value: impl Into<BigInt>) -> Self {
        self.zeta.push(ZetaEntry {
            from: from.to_string(),
            to: to.to_string(),
            value: value.into(),
        });
        self
    }
}
