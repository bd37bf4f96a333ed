//! Intersection posets of manifold arrangements and the cd-index of the
//! stratification they induce.
//!
//! The arrangement lives in a closed carrier manifold of dimension
//! `carrier_dim`, which is the boundary of an `n = carrier_dim + 1`
//! dimensional manifold `M`. Three independent routes compute `Ψ(T)`:
//! the closed form ([`cd_index_main`]), the chain sum over `P̂`
//! ([`cd_index_chainsum`]), and the cd-index of the face poset `Q`
//! ([`build_q`]).

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flagenum::{self, ab_index, ab_index_from_bottom, zaslavsky_z, zaslavsky_zm, EulerData, FlagError};
use crate::ncpoly::{
    self, a_minus_b_pow, c2_minus_2d, collapse_to_cd, AbPolynomial, Cd, CdPolynomial, CdWord,
    OddCoefficient,
};
use crate::operators::{h_prime, omega};
use crate::poset::{ElementData, PosetData, PosetError, QuasiGradedPoset, Violation, ZetaEntry};

fn default_true() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementElement {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// `None` marks the empty set.
    pub dim: Option<usize>,
    #[serde(with = "crate::io::bigint")]
    pub euler: BigInt,
}

/// The file form of an intersection poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementData {
    pub carrier_dim: usize,
    #[serde(with = "crate::io::bigint")]
    pub carrier_euler: BigInt,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub carrier_compact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_manifold_dim: Option<usize>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "opt_bigint"
    )]
    pub ambient_manifold_euler: Option<BigInt>,
    pub elements: Vec<ArrangementElement>,
    pub covers: Vec<(String, String)>,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "crate::io::bigint")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.clone().map(Wrap).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementViolation {
    Poset(Violation),
    MissingEmpty,
    SeveralEmpty(Vec<String>),
    EmptyNotMaximum(String),
    DimTooLarge { id: String, dim: usize },
    CarrierDim { id: String, dim: Option<usize> },
    RankMismatch { id: String, rank: usize, expected: usize },
    OddDimensionalEuler { id: String, dim: usize, euler: BigInt },
    EmptyEuler(BigInt),
    CarrierEuler { element: BigInt, header: BigInt },
    AmbientDim { given: usize, expected: usize },
}

impl fmt::Display for ArrangementViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ArrangementViolation::*;
        match self {
            Poset(v) => write!(f, "{v}"),
            MissingEmpty => write!(f, "the empty set is not an element"),
            SeveralEmpty(ids) => write!(f, "several empty-set elements: {}", ids.join(", ")),
            EmptyNotMaximum(id) => write!(f, "empty set '{id}' is not the maximum"),
            DimTooLarge { id, dim } => write!(f, "'{id}' has dimension {dim} above the carrier"),
            CarrierDim { id, dim } => match dim {
                Some(d) => write!(f, "minimum '{id}' has dimension {d}, expected the carrier dimension"),
                None => write!(f, "minimum '{id}' is the empty set"),
            },
            RankMismatch { id, rank, expected } => {
                write!(f, "rank of '{id}' is {rank}, expected {expected} from its dimension")
            }
            OddDimensionalEuler { id, dim, euler } => write!(
                f,
                "odd-dimensional Euler characteristic: '{id}' has dimension {dim} and Euler characteristic {euler}"
            ),
            EmptyEuler(e) => write!(f, "Euler characteristic of the empty set is {e}, expected 0"),
            CarrierEuler { element, header } => write!(
                f,
                "carrier Euler characteristic {header} differs from the minimum's {element}"
            ),
            AmbientDim { given, expected } => {
                write!(f, "ambient manifold dimension {given}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("invalid intersection poset: {}", join(.0))]
    Invalid(Vec<ArrangementViolation>),
    #[error("not a spherical arrangement: '{id}' has dimension {dim} and Euler characteristic {euler}")]
    NotSpherical { id: String, dim: usize, euler: BigInt },
    #[error("not a toric arrangement: {0}")]
    NotToric(String),
    #[error("toric formula needs a torus of dimension at least 2, got {0}")]
    TorusDimensionTooSmall(usize),
    #[error("the carrier is not a closed manifold with the empty set on top")]
    NotClosed,
    #[error("Euler characteristic of the bounded manifold is not given")]
    MissingManifoldEuler,
    #[error("a manifold of odd dimension has half the Euler characteristic of its boundary: got {given}, boundary has {boundary}")]
    ManifoldEuler { given: BigInt, boundary: BigInt },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("internal consistency failure: routes disagree (main: {main}; chain sum: {chainsum}; Q: {q})")]
    RouteDisagreement {
        main: CdPolynomial,
        chainsum: CdPolynomial,
        q: CdPolynomial,
    },
    #[error("internal consistency failure: {0}")]
    Odd(#[from] OddCoefficient),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl ArrangementError {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            ArrangementError::Internal(_)
                | ArrangementError::RouteDisagreement { .. }
                | ArrangementError::Odd(_)
                | ArrangementError::Flag(FlagError::Internal(_))
        )
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl ArrangementData {
    fn expected_rank(&self, dim: Option<usize>) -> usize {
        match dim {
            Some(d) => self.carrier_dim.saturating_sub(d),
            None => self.carrier_dim + 1,
        }
    }

    /// The underlying poset description, ranks derived from dimensions.
    pub fn poset_data(&self) -> PosetData {
        PosetData {
            elements: self
                .elements
                .iter()
                .map(|e| ElementData {
                    id: e.id.clone(),
                    rank: e.rank.unwrap_or_else(|| self.expected_rank(e.dim)),
                })
                .collect(),
            covers: self.covers.clone(),
            zeta: Vec::new(),
        }
    }

    pub fn validate(&self) -> Vec<ArrangementViolation> {
        match self.analyze() {
            Ok(_) => Vec::new(),
            Err(v) => v,
        }
    }

    pub fn build(&self) -> Result<IntersectionPoset, ArrangementError> {
        self.analyze().map_err(ArrangementError::Invalid)
    }

    fn analyze(&self) -> Result<IntersectionPoset, Vec<ArrangementViolation>> {
        use ArrangementViolation as V;
        let mut out = Vec::new();
        for e in &self.elements {
            let expected = self.expected_rank(e.dim);
            if let Some(d) = e.dim {
                if d > self.carrier_dim {
                    out.push(V::DimTooLarge { id: e.id.clone(), dim: d });
                }
                if self.carrier_compact && d % 2 == 1 && !e.euler.is_zero() {
                    out.push(V::OddDimensionalEuler {
                        id: e.id.clone(),
                        dim: d,
                        euler: e.euler.clone(),
                    });
                }
            } else if !e.euler.is_zero() {
                out.push(V::EmptyEuler(e.euler.clone()));
            }
            if let Some(r) = e.rank {
                if r != expected {
                    out.push(V::RankMismatch {
                        id: e.id.clone(),
                        rank: r,
                        expected,
                    });
                }
            }
        }
        let empties: Vec<&ArrangementElement> =
            self.elements.iter().filter(|e| e.dim.is_none()).collect();
        match empties.len() {
            0 if self.carrier_compact => out.push(V::MissingEmpty),
            0 => {}
            1 => {}
            _ => out.push(V::SeveralEmpty(empties.iter().map(|e| e.id.clone()).collect())),
        }
        if let Some(d) = self.ambient_manifold_dim {
            if d != self.carrier_dim + 1 {
                out.push(V::AmbientDim {
                    given: d,
                    expected: self.carrier_dim + 1,
                });
            }
        }
        let poset = match self.poset_data().build() {
            Ok(p) => Some(p),
            Err(PosetError::Invalid(vs)) => {
                out.extend(vs.into_iter().map(V::Poset));
                None
            }
            Err(e) => unreachable!("build only reports violations: {e}"),
        };
        let Some(poset) = poset else {
            return Err(out);
        };
        let by_id: HashMap<&str, &ArrangementElement> =
            self.elements.iter().map(|e| (e.id.as_str(), e)).collect();
        let top = by_id[poset.id(poset.top())];
        if empties.len() == 1 && top.dim.is_some() {
            out.push(V::EmptyNotMaximum(empties[0].id.clone()));
        }
        let bottom = by_id[poset.id(poset.bottom())];
        if bottom.dim != Some(self.carrier_dim) {
            out.push(V::CarrierDim {
                id: bottom.id.clone(),
                dim: bottom.dim,
            });
        }
        if bottom.euler != self.carrier_euler {
            out.push(V::CarrierEuler {
                element: bottom.euler.clone(),
                header: self.carrier_euler.clone(),
            });
        }
        if !out.is_empty() {
            return Err(out);
        }
        let dims = poset.ids().iter().map(|id| by_id[id.as_str()].dim).collect();
        let chi = self
            .elements
            .iter()
            .map(|e| (e.id.clone(), e.euler.clone()))
            .collect();
        Ok(IntersectionPoset {
            poset,
            dims,
            chi,
            carrier_dim: self.carrier_dim,
            carrier_compact: self.carrier_compact,
            manifold_euler: self.ambient_manifold_euler.clone(),
        })
    }
}

/// A validated intersection poset: classical zeta, per-element dimension
/// and Euler characteristic, `∅` as the maximum.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    poset: QuasiGradedPoset,
    dims: Vec<Option<usize>>,
    chi: EulerData,
    carrier_dim: usize,
    carrier_compact: bool,
    manifold_euler: Option<BigInt>,
}

impl IntersectionPoset {
    pub fn poset(&self) -> &QuasiGradedPoset {
        &self.poset
    }

    /// Dimension of element `i`; `None` for `∅`.
    pub fn dim(&self, i: usize) -> Option<usize> {
        self.dims[i]
    }

    pub fn euler(&self, i: usize) -> &BigInt {
        self.chi.get(self.poset.id(i)).expect("total Euler data")
    }

    pub fn euler_data(&self) -> &EulerData {
        &self.chi
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_dim
    }

    /// `n = dim M`, one more than the carrier.
    pub fn manifold_dim(&self) -> usize {
        self.carrier_dim + 1
    }

    pub fn manifold_euler(&self) -> Option<&BigInt> {
        self.manifold_euler.as_ref()
    }

    pub fn with_manifold_euler(mut self, chi: impl Into<BigInt>) -> Self {
        self.manifold_euler = Some(chi.into());
        self
    }

    pub fn to_data(&self) -> ArrangementData {
        let p = &self.poset;
        let d = p.to_data();
        ArrangementData {
            carrier_dim: self.carrier_dim,
            carrier_euler: self.euler(p.bottom()).clone(),
            carrier_compact: self.carrier_compact,
            ambient_manifold_dim: None,
            ambient_manifold_euler: self.manifold_euler.clone(),
            elements: (0..p.len())
                .map(|i| ArrangementElement {
                    id: p.id(i).to_string(),
                    rank: None,
                    dim: self.dims[i],
                    euler: self.euler(i).clone(),
                })
                .collect(),
            covers: d.covers,
        }
    }

    /// True when `χ(x) = 1 + (−1)^{dim x}` on every non-empty element.
    pub fn spherical_violation(&self) -> Option<ArrangementError> {
        for i in 0..self.poset.len() {
            if let Some(d) = self.dims[i] {
                let want = if d % 2 == 0 { 2 } else { 0 };
                if *self.euler(i) != BigInt::from(want) {
                    return Some(ArrangementError::NotSpherical {
                        id: self.poset.id(i).to_string(),
                        dim: d,
                        euler: self.euler(i).clone(),
                    });
                }
            }
        }
        None
    }

    fn require_closed(&self) -> Result<(), ArrangementError> {
        if self.carrier_compact && self.dims[self.poset.top()].is_none() {
            Ok(())
        } else {
            Err(ArrangementError::NotClosed)
        }
    }

    fn resolve_manifold_euler(&self, chi_m: Option<&BigInt>) -> Result<BigInt, ArrangementError> {
        self.require_closed()?;
        let chi = chi_m
            .or(self.manifold_euler.as_ref())
            .cloned()
            .ok_or(ArrangementError::MissingManifoldEuler)?;
        let boundary = self.euler(self.poset.bottom());
        if self.manifold_dim() % 2 == 1 && &(&chi * 2) != boundary {
            return Err(ArrangementError::ManifoldEuler {
                given: chi,
                boundary: boundary.clone(),
            });
        }
        Ok(chi)
    }
}

/// `χ(carrier − ∪ N_i) = Z_M(P; χ)`.
pub fn complement_euler(p: &IntersectionPoset) -> BigInt {
    zaslavsky_zm(&p.poset, &p.chi).expect("Euler data is total")
}

/// Id of the stratum `x°` in `Q`.
pub fn stratum_id(id: &str) -> String {
    format!("{id}°")
}

/// Id of the top element `M` of `Q`.
pub const MANIFOLD_ID: &str = "M";

/// The face poset `Q`: elements `x°` for `x ∈ P` plus the manifold `M`,
/// order reversed, `ρ_Q(x°) = dim x + 1`, `ρ_Q(∅°) = 0`, `ρ_Q(M) = n + 1`, and
/// `ζ̄_Q(y°,M) = 1`, `ζ̄_Q(y°,x°) = Z([x,y])`, `ζ̄_Q(∅°,x°) = Z_M([x,1̂]; χ)`,
/// `ζ̄_Q(∅°,M) = χ(M)`.
pub fn build_q(p: &IntersectionPoset, chi_m: Option<&BigInt>) -> Result<QuasiGradedPoset, ArrangementError> {
    let chi_m = p.resolve_manifold_euler(chi_m)?;
    let poset = &p.poset;
    let n = p.manifold_dim();
    let top = poset.top();
    let mut data = PosetData::default();
    for i in 0..poset.len() {
        data.elements.push(ElementData {
            id: stratum_id(poset.id(i)),
            rank: p.dims[i].map_or(0, |d| d + 1),
        });
    }
    data.elements.push(ElementData {
        id: MANIFOLD_ID.to_string(),
        rank: n + 1,
    });
    let mut entry = |from: usize, to: &str, value: BigInt| {
        if !value.is_one() {
            data.zeta.push(ZetaEntry {
                from: stratum_id(poset.id(from)),
                to: to.to_string(),
                value,
            });
        }
    };
    for (x, y) in poset.cover_relations() {
        data.covers.push((stratum_id(poset.id(y)), stratum_id(poset.id(x))));
    }
    data.covers.push((stratum_id(poset.id(poset.bottom())), MANIFOLD_ID.to_string()));
    for y in 0..top {
        for x in poset.strictly_below(y) {
            entry(y, &stratum_id(poset.id(x)), zaslavsky_z(&poset.interval(x, y)?));
        }
    }
    for x in 0..top {
        let zm = zaslavsky_zm(&poset.interval(x, top)?, &p.chi)?;
        entry(top, &stratum_id(poset.id(x)), zm);
    }
    entry(top, MANIFOLD_ID, chi_m);
    data.build().map_err(|e| ArrangementError::Internal(format!("Q is not a valid poset: {e}")))
}

fn halve(p: &CdPolynomial) -> Result<CdPolynomial, ArrangementError> {
    Ok(p.halve()?)
}

fn collapse(p: &AbPolynomial) -> Result<CdPolynomial, ArrangementError> {
    collapse_to_cd(p).map_err(|e| ArrangementError::Internal(e.to_string()))
}

/// The closed form:
/// `Ψ(T)* = χ(M)·[(c²−2d)^{n/2} or c(c²−2d)^{(n−1)/2}]
///        + Σ_{0̂<x<1̂, dim x even} ½ω(a·Ψ([0̂,x])·b)·(c²−2d)^{dim x/2}·χ(x)`.
pub fn cd_index_main(p: &IntersectionPoset, chi_m: Option<&BigInt>) -> Result<CdPolynomial, ArrangementError> {
    let chi_m = p.resolve_manifold_euler(chi_m)?;
    let poset = &p.poset;
    let n = p.manifold_dim();
    let e = c2_minus_2d();
    let mut total = if n % 2 == 0 {
        e.pow(n / 2)
    } else {
        &CdPolynomial::letter(Cd::C) * &e.pow((n - 1) / 2)
    }
    .scale(&chi_m);
    let lower = ab_index_from_bottom(poset);
    let (a, b) = (ncpoly::a(), ncpoly::b());
    for x in 1..poset.top() {
        let Some(d) = p.dims[x] else { continue };
        let chi = p.euler(x);
        if d % 2 == 1 || chi.is_zero() {
            continue;
        }
        let w = omega(&(&(&a * &lower[x]) * &b));
        let term = &halve(&w)? * &e.pow(d / 2);
        total += &term.scale(chi);
    }
    Ok(total.star())
}

/// The chain sum over `P̂ = P ∪ {−1̂}`:
/// `Ψ(T)* = χ(M)(a−b)^n + Σ Z([x1,x2])⋯Z([x_{k−2},x_{k−1}])·Z_M([x_{k−1},∅]; χ)·wt(c)`,
/// summed over chains `−1̂ < x1 < ⋯ < x_{k−1} < ∅` by explicit enumeration.
pub fn cd_index_chainsum(p: &IntersectionPoset, chi_m: Option<&BigInt>) -> Result<CdPolynomial, ArrangementError> {
    let chi_m = p.resolve_manifold_euler(chi_m)?;
    let poset = &p.poset;
    let top = poset.top();
    let n = p.manifold_dim();
    let m = poset.len();
    let mut z = vec![BigInt::zero(); m * m];
    for x in 0..top {
        for y in poset.strictly_above(x).filter(|&y| y != top) {
            z[x * m + y] = zaslavsky_z(&poset.interval(x, y)?);
        }
    }
    let mut zm = vec![BigInt::zero(); m];
    for (x, v) in zm.iter_mut().enumerate().take(top) {
        *v = zaslavsky_zm(&poset.interval(x, top)?, &p.chi)?;
    }
    // Ranks in P̂ are one more than in P.
    let hat = |x: usize| poset.rank(x) + 1;
    let mut total = a_minus_b_pow(n).scale(&chi_m);
    let mut chain = Vec::new();
    for x1 in 0..top {
        chain.push(x1);
        extend_chains(poset, &z, &zm, &hat, &mut chain, BigInt::one(), &mut total);
        chain.pop();
    }
    Ok(collapse(&total)?.star())
}

fn extend_chains(
    poset: &QuasiGradedPoset,
    z: &[BigInt],
    zm: &[BigInt],
    hat: &dyn Fn(usize) -> usize,
    chain: &mut Vec<usize>,
    weight: BigInt,
    total: &mut AbPolynomial,
) {
    let m = poset.len();
    let top = poset.top();
    let last = *chain.last().expect("non-empty chain");
    let closing = &weight * &zm[last];
    if !closing.is_zero() {
        let mut wt = a_minus_b_pow(hat(chain[0]) - 1);
        let mut prev = chain[0];
        for &x in chain[1..].iter().chain(std::iter::once(&top)) {
            wt = &(&wt * &ncpoly::b()) * &a_minus_b_pow(hat(x) - hat(prev) - 1);
            prev = x;
        }
        *total += &wt.scale(&closing);
    }
    for y in poset.strictly_above(last).filter(|&y| y != top) {
        let w = &weight * &z[last * m + y];
        if w.is_zero() {
            continue;
        }
        chain.push(y);
        extend_chains(poset, z, zm, hat, chain, w, total);
        chain.pop();
    }
}

/// `Ψ(T)` via the three routes, with the face poset `Q`.
#[derive(Debug, Clone)]
pub struct StratificationResult {
    pub cd_index: CdPolynomial,
    pub main: CdPolynomial,
    pub chainsum: CdPolynomial,
    pub q_route: CdPolynomial,
    pub q_poset: QuasiGradedPoset,
}

/// Runs every route, checks Eulerianness of `Q`, route agreement and the
/// divisibility property; any failure is an internal consistency error.
pub fn stratify(p: &IntersectionPoset, chi_m: Option<&BigInt>) -> Result<StratificationResult, ArrangementError> {
    let main = cd_index_main(p, chi_m)?;
    let chainsum = cd_index_chainsum(p, chi_m)?;
    let q_poset = build_q(p, chi_m)?;
    let q_route = match flagenum::cd_index(&q_poset) {
        Ok(q) => q,
        Err(FlagError::NotEulerian(f)) => {
            return Err(ArrangementError::Internal(format!(
                "Q is not Eulerian at [{}, {}] (sum {})",
                f.lower, f.upper, f.sum
            )))
        }
        Err(e) => return Err(e.into()),
    };
    if main != chainsum || main != q_route {
        return Err(ArrangementError::RouteDisagreement {
            main,
            chainsum,
            q: q_route,
        });
    }
    divisibility_check(&main).map_err(|v| ArrangementError::Internal(v.to_string()))?;
    Ok(StratificationResult {
        cd_index: main.clone(),
        main,
        chainsum,
        q_route,
        q_poset,
    })
}

/// `Ψ(T) = ω(a·Ψ(P))*` for a spherical arrangement bounding a ball.
pub fn spherical_cd_index(p: &IntersectionPoset) -> Result<CdPolynomial, ArrangementError> {
    p.require_closed()?;
    if let Some(e) = p.spherical_violation() {
        return Err(e);
    }
    Ok(omega(&(&ncpoly::a() * &ab_index(&p.poset))).star())
}

/// Checks the toric pattern: a torus `Tⁿ` with `n ≥ 2`, `χ = 0` on every
/// element of positive dimension (the carrier included), and every point
/// element a single point. The closed form sums over coatoms without their
/// Euler characteristics, so grouped points (`χ > 1`) would be undercounted.
pub fn toric_violation(p: &IntersectionPoset) -> Option<ArrangementError> {
    if let Err(e) = p.require_closed() {
        return Some(e);
    }
    if p.carrier_dim() < 2 {
        return Some(ArrangementError::TorusDimensionTooSmall(p.carrier_dim()));
    }
    for i in 0..p.poset.len() {
        if let Some(d) = p.dims[i] {
            if d > 0 && !p.euler(i).is_zero() {
                return Some(ArrangementError::NotToric(format!(
                    "'{}' has dimension {d} and Euler characteristic {}",
                    p.poset.id(i),
                    p.euler(i)
                )));
            }
            if d == 0 && !p.euler(i).is_one() {
                return Some(ArrangementError::NotToric(format!(
                    "point element '{}' has {} points; split it into one element per point",
                    p.poset.id(i),
                    p.euler(i)
                )));
            }
        }
    }
    None
}

/// `Ψ(T) = ½·ω(a·H′(Ψ(P))·b)*` for a toric arrangement in `Tⁿ = ∂(B² × T^{n−1})`.
pub fn toric_cd_index(p: &IntersectionPoset) -> Result<CdPolynomial, ArrangementError> {
    if let Some(e) = toric_violation(p) {
        return Err(e);
    }
    let inner = &(&ncpoly::a() * &h_prime(&ab_index(&p.poset))) * &ncpoly::b();
    Ok(halve(&omega(&inner))?.star())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coefficient {coefficient} of {word} is not divisible by 2^{}", .d_count - 1)]
pub struct DivisibilityViolation {
    pub word: CdWord,
    pub coefficient: BigInt,
    pub d_count: usize,
}

/// Every coefficient of a word with `k ≥ 1` letters `d` must be divisible by `2^{k−1}`.
pub fn divisibility_check(q: &CdPolynomial) -> Result<(), DivisibilityViolation> {
    for (w, c) in q.terms() {
        let k = w.count(Cd::D);
        if k == 0 {
            continue;
        }
        let modulus = BigInt::one() << (k - 1);
        if !c.is_multiple_of(&modulus) {
            return Err(DivisibilityViolation {
                word: w.clone(),
                coefficient: c.clone(),
                d_count: k,
            });
        }
    }
    Ok(())
}
