//! Oracles, fixtures and poset generators shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's own recursions: chains
//! are enumerated one by one and the Möbius function is inverted from the
//! other side.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cdindex::arrangements::{ArrangementData, ArrangementElement, IntersectionPoset};
use cdindex::geometry::{AffineSubspace, SubspaceArrangement};
use cdindex::ncpoly::{Ab, AbPolynomial, AbWord, Word};
use cdindex::poset::{classical, ElementData, PosetData, QuasiGradedPoset, ZetaEntry};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

/// Every chain `0̂ = x0 < x1 < ⋯ < xk = 1̂`, as index lists.
pub fn all_chains(p: &QuasiGradedPoset) -> Vec<Vec<usize>> {
    fn go(p: &QuasiGradedPoset, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().unwrap();
        if last == p.top() {
            out.push(chain.clone());
            return;
        }
        for y in 0..p.len() {
            if p.lt(last, y) {
                chain.push(y);
                go(p, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    if p.len() > 1 {
        go(p, &mut vec![p.bottom()], &mut out);
    }
    out
}

/// `(a − b)^{g1−1} b (a − b)^{g2−1} b ⋯` expanded word by word: each gap
/// contributes a block where every letter is `a` (sign +) or `b` (sign −).
pub fn oracle_weight(gaps: &[usize]) -> AbPolynomial {
    let mut terms: Vec<(Vec<Ab>, i64)> = vec![(Vec::new(), 1)];
    for (i, &g) in gaps.iter().enumerate() {
        if i > 0 {
            for t in terms.iter_mut() {
                t.0.push(Ab::B);
            }
        }
        for _ in 0..g - 1 {
            let mut next = Vec::new();
            for (w, c) in &terms {
                let mut wa = w.clone();
                wa.push(Ab::A);
                next.push((wa, *c));
                let mut wb = w.clone();
                wb.push(Ab::B);
                next.push((wb, -*c));
            }
            terms = next;
        }
    }
    AbPolynomial::from_terms(terms.into_iter().map(|(w, c)| (Word::new(w), BigInt::from(c))))
}

/// `Ψ` by brute-force chain enumeration.
pub fn oracle_ab_index(p: &QuasiGradedPoset) -> AbPolynomial {
    let mut total = AbPolynomial::zero();
    for chain in all_chains(p) {
        let mut z = BigInt::one();
        let mut gaps = Vec::new();
        for w in chain.windows(2) {
            z *= p.zeta_value(w[0], w[1]);
            gaps.push(p.rank(w[1]) - p.rank(w[0]));
        }
        total += &oracle_weight(&gaps).scale(&z);
    }
    total
}

/// `μ̄(x,y)` from the right-hand recursion `μ̄(x,y) = −Σ_{x<z≤y} ζ̄(x,z) μ̄(z,y)`.
pub fn oracle_mobius(p: &QuasiGradedPoset, x: usize, y: usize) -> BigInt {
    let n = p.len();
    let mut mu = vec![BigInt::zero(); n];
    mu[y] = BigInt::one();
    for z in (0..y).rev() {
        if !(p.le(x, z) && p.le(z, y)) {
            continue;
        }
        let mut s = BigInt::zero();
        for w in z + 1..=y {
            if p.le(z, w) && p.le(w, y) {
                s += p.zeta_value(z, w) * &mu[w];
            }
        }
        mu[z] = -s;
    }
    mu[x].clone()
}

/// `Σ_x (−1)^{ρ(x)} μ̄(0̂,x) ζ̄(x,1̂) f(x)` with the oracle Möbius function.
pub fn oracle_zaslavsky(p: &QuasiGradedPoset, f: impl Fn(usize) -> BigInt) -> BigInt {
    let mut s = BigInt::zero();
    for x in 0..p.len() {
        let t = oracle_mobius(p, 0, x) * p.zeta_value(x, p.top()) * f(x);
        if p.rank(x) % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Builds a bounded poset from strict relations on `k` inner elements
/// (`rel[i][j]` means `i < j`, transitively closed, natural labelling),
/// with ranks given by height plus optional extra gaps.
pub fn bounded_from_relation(k: usize, rel: &[Vec<bool>], gaps: &[usize]) -> PosetData {
    let mut rank = vec![1usize; k];
    for j in 0..k {
        for i in 0..j {
            if rel[i][j] {
                rank[j] = rank[j].max(rank[i] + 1);
            }
        }
        rank[j] += gaps.get(j).copied().unwrap_or(0);
        // Keep ranks strictly increasing along relations after the gap.
        for i in 0..j {
            if rel[i][j] && rank[j] <= rank[i] {
                rank[j] = rank[i] + 1;
            }
        }
    }
    let top_rank = rank.iter().copied().max().unwrap_or(0) + 1 + gaps.get(k).copied().unwrap_or(0);
    let mut data = PosetData::default();
    data.elements.push(ElementData { id: "0".into(), rank: 0 });
    for (i, r) in rank.iter().enumerate() {
        data.elements.push(ElementData { id: format!("p{i}"), rank: *r });
    }
    data.elements.push(ElementData { id: "1".into(), rank: top_rank });
    for i in 0..k {
        data.covers.push(("0".into(), format!("p{i}")));
        data.covers.push((format!("p{i}"), "1".into()));
        for j in 0..k {
            if rel[i][j] {
                data.covers.push((format!("p{i}"), format!("p{j}")));
            }
        }
    }
    if k == 0 {
        data.covers.push(("0".into(), "1".into()));
    }
    data
}

/// All naturally labelled strict partial orders on `k` points.
pub fn natural_orders(k: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..k).all(|i| {
            (0..k).all(|j| (0..k).all(|l| !(rel[i][j] && rel[j][l]) || rel[i][l]))
        });
        if transitive {
            out.push(rel);
        }
    }
    out
}

/// The exhaustive corpus: every bounded poset with at most `max_elements`
/// elements (up to natural labelling), ranks by height.
pub fn exhaustive_corpus(max_elements: usize) -> Vec<QuasiGradedPoset> {
    let mut out = Vec::new();
    for k in 0..=max_elements.saturating_sub(2) {
        for rel in natural_orders(k) {
            out.push(bounded_from_relation(k, &rel, &[]).build().unwrap());
        }
    }
    out
}

/// A random bounded poset on `k` inner elements with random rank gaps and,
/// when `weighted`, random zeta values in `[-3, 3]`.
pub fn random_poset<R: Rng>(rng: &mut R, k: usize, weighted: bool) -> QuasiGradedPoset {
    let mut rel = vec![vec![false; k]; k];
    let density: f64 = rng.gen_range(0.1..0.7);
    for j in 0..k {
        for i in 0..j {
            if rng.gen_bool(density) {
                rel[i][j] = true;
            }
        }
    }
    for l in 0..k {
        for i in 0..k {
            for j in 0..k {
                if rel[i][l] && rel[l][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let gaps: Vec<usize> = (0..=k).map(|_| if rng.gen_bool(0.25) { 1 } else { 0 }).collect();
    let mut data = bounded_from_relation(k, &rel, &gaps);
    if weighted {
        let p = data.build().unwrap();
        for x in 0..p.len() {
            for y in p.strictly_above(x) {
                let v: i64 = rng.gen_range(-3..=3);
                if v != 1 {
                    data.zeta.push(ZetaEntry {
                        from: p.id(x).to_string(),
                        to: p.id(y).to_string(),
                        value: v.into(),
                    });
                }
            }
        }
    }
    data.build().unwrap()
}

pub fn boolean_lattice(n: usize) -> QuasiGradedPoset {
    let mut data = PosetData::default();
    let name = |s: usize| format!("s{s}");
    for s in 0..1usize << n {
        data.elements.push(ElementData {
            id: name(s),
            rank: s.count_ones() as usize,
        });
        for i in 0..n {
            if s >> i & 1 == 0 {
                data.covers.push((name(s), name(s | 1 << i)));
            }
        }
    }
    data.build().unwrap()
}

/// Rank `n + 1` butterfly: two elements in each middle rank, all
/// comparabilities between ranks.
pub fn butterfly(n: usize) -> QuasiGradedPoset {
    let mut data = PosetData::default();
    data.elements.push(ElementData { id: "0".into(), rank: 0 });
    for r in 1..=n {
        for s in ["x", "y"] {
            data.elements.push(ElementData { id: format!("{s}{r}"), rank: r });
            let below: Vec<String> = if r == 1 {
                vec!["0".into()]
            } else {
                vec![format!("x{}", r - 1), format!("y{}", r - 1)]
            };
            for b in below {
                data.covers.push((b, format!("{s}{r}")));
            }
        }
    }
    data.elements.push(ElementData { id: "1".into(), rank: n + 1 });
    if n == 0 {
        data.covers.push(("0".into(), "1".into()));
    } else {
        data.covers.push((format!("x{n}"), "1".into()));
        data.covers.push((format!("y{n}"), "1".into()));
    }
    data.build().unwrap()
}

/// Face lattice of a triangle: vertices, edges, bounds.
pub fn triangle() -> QuasiGradedPoset {
    classical(
        &[("0", 0), ("v1", 1), ("v2", 1), ("v3", 1), ("e12", 2), ("e13", 2), ("e23", 2), ("1", 3)],
        &[
            ("0", "v1"),
            ("0", "v2"),
            ("0", "v3"),
            ("v1", "e12"),
            ("v2", "e12"),
            ("v1", "e13"),
            ("v3", "e13"),
            ("v2", "e23"),
            ("v3", "e23"),
            ("e12", "1"),
            ("e13", "1"),
            ("e23", "1"),
        ],
    )
    .build()
    .unwrap()
}

fn el(id: &str, dim: Option<usize>, euler: i64) -> ArrangementElement {
    ArrangementElement {
        id: id.into(),
        rank: None,
        dim,
        euler: euler.into(),
    }
}

fn covers(c: &[(&str, &str)]) -> Vec<(String, String)> {
    c.iter().map(|&(a, b)| (a.into(), b.into())).collect()
}

fn closed(carrier_dim: usize, carrier_euler: i64, chi_m: i64, elements: Vec<ArrangementElement>, cv: &[(&str, &str)]) -> IntersectionPoset {
    ArrangementData {
        carrier_dim,
        carrier_euler: carrier_euler.into(),
        carrier_compact: true,
        ambient_manifold_dim: None,
        ambient_manifold_euler: Some(chi_m.into()),
        elements,
        covers: covers(cv),
    }
    .build()
    .unwrap()
}

/// Circles `x = 0` and `y = 0` on `S²` meeting in `S⁰_z`, and the points
/// `S⁰_d` where the line `x = y = z` meets the sphere.
pub fn running_example() -> IntersectionPoset {
    closed(
        2,
        2,
        1,
        vec![
            el("S2", Some(2), 2),
            el("x=0", Some(1), 0),
            el("y=0", Some(1), 0),
            el("z", Some(0), 2),
            el("d", Some(0), 2),
            el("empty", None, 0),
        ],
        &[
            ("S2", "x=0"),
            ("S2", "y=0"),
            ("x=0", "z"),
            ("y=0", "z"),
            ("S2", "d"),
            ("z", "empty"),
            ("d", "empty"),
        ],
    )
}

/// The same arrangement with the two poles and the two points of `S⁰_d`
/// kept as separate elements.
pub fn running_example_split() -> IntersectionPoset {
    closed(
        2,
        2,
        1,
        vec![
            el("S2", Some(2), 2),
            el("x=0", Some(1), 0),
            el("y=0", Some(1), 0),
            el("p1", Some(0), 1),
            el("p2", Some(0), 1),
            el("a", Some(0), 1),
            el("b", Some(0), 1),
            el("empty", None, 0),
        ],
        &[
            ("S2", "x=0"),
            ("S2", "y=0"),
            ("x=0", "p1"),
            ("y=0", "p1"),
            ("x=0", "p2"),
            ("y=0", "p2"),
            ("S2", "a"),
            ("S2", "b"),
            ("p1", "empty"),
            ("p2", "empty"),
            ("a", "empty"),
            ("b", "empty"),
        ],
    )
}

/// Two closed curves on `S²` crossing in `2k` points grouped into `k`
/// zero-spheres: 2 atoms, `k` coatoms each above both atoms.
pub fn two_k_curves(k: usize) -> IntersectionPoset {
    let mut elements = vec![el("S2", Some(2), 2), el("C1", Some(1), 0), el("C2", Some(1), 0)];
    let names: Vec<String> = (1..=k).map(|i| format!("q{i}")).collect();
    for n in &names {
        elements.push(el(n, Some(0), 2));
    }
    elements.push(el("empty", None, 0));
    let mut cv: Vec<(String, String)> = vec![("S2".into(), "C1".into()), ("S2".into(), "C2".into())];
    for n in &names {
        cv.push(("C1".into(), n.clone()));
        cv.push(("C2".into(), n.clone()));
        cv.push((n.clone(), "empty".into()));
    }
    if k == 0 {
        cv.push(("C1".into(), "empty".into()));
        cv.push(("C2".into(), "empty".into()));
    }
    ArrangementData {
        carrier_dim: 2,
        carrier_euler: 2.into(),
        carrier_compact: true,
        ambient_manifold_dim: None,
        ambient_manifold_euler: Some(1.into()),
        elements,
        covers: cv,
    }
    .build()
    .unwrap()
}

/// Two circles on `T²` meeting in one point.
pub fn toric_two_circles() -> IntersectionPoset {
    closed(
        2,
        0,
        0,
        vec![
            el("T2", Some(2), 0),
            el("C1", Some(1), 0),
            el("C2", Some(1), 0),
            el("p", Some(0), 1),
            el("empty", None, 0),
        ],
        &[("T2", "C1"), ("T2", "C2"), ("C1", "p"), ("C2", "p"), ("p", "empty")],
    )
}

/// A single circle in `T²`.
pub fn toric_single_circle() -> IntersectionPoset {
    closed(
        2,
        0,
        0,
        vec![el("T2", Some(2), 0), el("C", Some(1), 0), el("empty", None, 0)],
        &[("T2", "C"), ("C", "empty")],
    )
}

/// Empty arrangement on `S²` bounding the ball.
pub fn empty_sphere() -> IntersectionPoset {
    closed(2, 2, 1, vec![el("S2", Some(2), 2), el("empty", None, 0)], &[("S2", "empty")])
}

/// Two great circles on `S²`, their two crossing points as one `S⁰`.
pub fn two_great_circles() -> IntersectionPoset {
    closed(
        2,
        2,
        1,
        vec![
            el("S2", Some(2), 2),
            el("C1", Some(1), 0),
            el("C2", Some(1), 0),
            el("S0", Some(0), 2),
            el("empty", None, 0),
        ],
        &[("S2", "C1"), ("S2", "C2"), ("C1", "S0"), ("C2", "S0"), ("S0", "empty")],
    )
}

/// A point `p` and a circle `C` through it on `S²`, plus a second point `q`
/// off the circle, with arbitrary even-dimensional Euler data; used to stress
/// the general main theorem away from the spherical pattern.
pub fn mixed_surface() -> IntersectionPoset {
    closed(
        2,
        2,
        1,
        vec![
            el("S2", Some(2), 2),
            el("C", Some(1), 0),
            el("p", Some(0), 1),
            el("q", Some(0), 1),
            el("empty", None, 0),
        ],
        &[("S2", "C"), ("C", "p"), ("S2", "q"), ("p", "empty"), ("q", "empty")],
    )
}

pub fn rational(n: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}

/// Complete flag `V1 ⊂ ⋯ ⊂ V_{n−1}` in `ℝⁿ`, `V_i` spanned by the first `i`
/// coordinate vectors.
pub fn linear_flag(n: usize) -> SubspaceArrangement {
    let subspaces = (1..n)
        .map(|i| {
            let rows: Vec<Vec<i64>> = (i..n)
                .map(|j| (0..n).map(|c| i64::from(c == j)).collect())
                .collect();
            let b = vec![0; rows.len()];
            AffineSubspace::from_integers(&rows, &b)
        })
        .collect();
    SubspaceArrangement::new(n, subspaces)
}

/// Complete flag of rational affine subspaces `V0 ⊂ ⋯ ⊂ V_{n−1}` in `ℝⁿ`,
/// shifted off the lattice so the construction is not purely linear.
pub fn affine_flag(n: usize) -> SubspaceArrangement {
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let subspaces = (0..n)
        .map(|i| {
            let rows: Vec<Vec<num_rational::BigRational>> = (i..n)
                .map(|j| (0..n).map(|c| rational(i64::from(c == j))).collect())
                .collect();
            let b = vec![half.clone(); rows.len()];
            AffineSubspace::new(rows, b)
        })
        .collect();
    SubspaceArrangement::new(n, subspaces)
}

/// `m` hyperplanes in general position in `ℝᵈ`: normals on the moment curve.
pub fn generic_hyperplanes(m: usize, d: usize) -> SubspaceArrangement {
    let subspaces = (1..=m as i64)
        .map(|t| {
            let normal: Vec<i64> = (0..d as u32).map(|e| t.pow(e)).collect();
            AffineSubspace::from_integers(&[normal], &[t.pow(d as u32)])
        })
        .collect();
    SubspaceArrangement::new(d, subspaces)
}

/// `m` central hyperplanes in general position in `ℝᵈ`.
pub fn central_generic_hyperplanes(m: usize, d: usize) -> SubspaceArrangement {
    let subspaces = (1..=m as i64)
        .map(|t| {
            let normal: Vec<i64> = (0..d as u32).map(|e| t.pow(e)).collect();
            AffineSubspace::from_integers(&[normal], &[0])
        })
        .collect();
    SubspaceArrangement::new(d, subspaces)
}

pub fn line(a: i64, b: i64, c: i64) -> AffineSubspace {
    AffineSubspace::from_integers(&[vec![a, b]], &[c])
}

/// Planar line arrangements, generic and degenerate.
pub fn line_fixtures() -> Vec<(&'static str, SubspaceArrangement)> {
    let arr = |ls: Vec<AffineSubspace>| SubspaceArrangement::new(2, ls);
    vec![
        ("one line", arr(vec![line(1, 0, 0)])),
        ("two crossing", arr(vec![line(1, 0, 0), line(0, 1, 0)])),
        ("two parallel", arr(vec![line(1, 0, 0), line(1, 0, 1)])),
        ("three generic", arr(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 1)])),
        ("three concurrent", arr(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 0)])),
        ("two parallel and a transversal", arr(vec![line(1, 0, 0), line(1, 0, 1), line(0, 1, 0)])),
        ("three parallel", arr(vec![line(1, 0, 0), line(1, 0, 1), line(1, 0, 2)])),
        ("grid 2x2", arr(vec![line(1, 0, 0), line(1, 0, 1), line(0, 1, 0), line(0, 1, 1)])),
        ("four generic", arr(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 3), line(1, -1, 1)])),
        ("four concurrent", arr(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 0), line(1, -1, 0)])),
        ("star and a line", arr(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 0), line(1, 1, 5)])),
        ("duplicate line", arr(vec![line(1, 0, 0), line(2, 0, 0), line(0, 1, 0)])),
        ("triangle with medians through one vertex", arr(vec![line(0, 1, 0), line(1, 0, 0), line(1, 1, 4), line(1, -1, 0)])),
        ("five generic", arr(vec![line(1, 0, 0), line(0, 1, 0), line(1, 1, 3), line(1, -1, 1), line(2, 1, 7)])),
    ]
}

/// Central arrangements used for the sphere-complement checks.
pub fn central_fixtures() -> Vec<(&'static str, SubspaceArrangement)> {
    let h = |v: &[i64]| AffineSubspace::from_integers(&[v.to_vec()], &[0]);
    vec![
        ("two planes in R3", SubspaceArrangement::new(3, vec![h(&[1, 0, 0]), h(&[0, 1, 0])])),
        ("coordinate planes in R3", SubspaceArrangement::new(3, vec![h(&[1, 0, 0]), h(&[0, 1, 0]), h(&[0, 0, 1])])),
        (
            "planes and a line in R3",
            SubspaceArrangement::new(
                3,
                vec![
                    h(&[1, 0, 0]),
                    h(&[0, 1, 0]),
                    AffineSubspace::from_integers(&[vec![1, -1, 0], vec![0, 1, -1]], &[0, 0]),
                ],
            ),
        ),
        ("braid arrangement A3", SubspaceArrangement::new(
            3,
            vec![h(&[1, -1, 0]), h(&[1, 0, -1]), h(&[0, 1, -1])],
        )),
        ("four generic planes in R3", central_generic_hyperplanes(4, 3)),
        ("three lines in R2", SubspaceArrangement::new(2, vec![h(&[1, 0]), h(&[0, 1]), h(&[1, 1])])),
        ("complete flag in R4", linear_flag(4)),
        ("five generic hyperplanes in R4", central_generic_hyperplanes(5, 4)),
        ("two lines in R3", SubspaceArrangement::new(
            3,
            vec![
                AffineSubspace::from_integers(&[vec![1, 0, 0], vec![0, 1, 0]], &[0, 0]),
                AffineSubspace::from_integers(&[vec![0, 1, 0], vec![0, 0, 1]], &[0, 0]),
            ],
        )),
    ]
}

/// Merges equivalent elements until none remain, top rank first.
pub fn merge_all(mut p: QuasiGradedPoset) -> QuasiGradedPoset {
    'outer: loop {
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(p.rank(i)));
        for &x in &order {
            for &y in &order {
                if x < y {
                    if let Ok(q) = p.merge_equivalent(x, y) {
                        p = q;
                        continue 'outer;
                    }
                }
            }
        }
        return p;
    }
}

/// The face poset of the Whitney stratification of the ball induced by the
/// running example, with the link Euler characteristics as zeta values.
pub fn running_face_poset() -> QuasiGradedPoset {
    let mut data = classical(
        &[
            ("0", 0),
            ("a", 1),
            ("N", 1),
            ("S", 1),
            ("b", 1),
            ("e1", 2),
            ("e2", 2),
            ("e3", 2),
            ("e4", 2),
            ("A", 3),
            ("D1", 3),
            ("D2", 3),
            ("B", 3),
            ("1", 4),
        ],
        &[
            ("0", "a"),
            ("0", "N"),
            ("0", "S"),
            ("0", "b"),
            ("N", "e1"),
            ("N", "e2"),
            ("N", "e3"),
            ("N", "e4"),
            ("S", "e1"),
            ("S", "e2"),
            ("S", "e3"),
            ("S", "e4"),
            ("e1", "A"),
            ("e1", "D1"),
            ("e2", "A"),
            ("e2", "D2"),
            ("e4", "D2"),
            ("e4", "B"),
            ("e3", "B"),
            ("e3", "D1"),
            ("a", "A"),
            ("b", "B"),
            ("A", "1"),
            ("D1", "1"),
            ("D2", "1"),
            ("B", "1"),
        ],
    );
    for (f, t) in [("0", "A"), ("0", "B"), ("a", "A"), ("b", "B")] {
        data = data.with_zeta(f, t, 0);
    }
    data.build().unwrap()
}

pub fn word_from_bits(n: usize, bits: u32) -> AbWord {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { Ab::B } else { Ab::A })
        .collect()
}

pub fn id_set(p: &QuasiGradedPoset) -> BTreeSet<String> {
    p.ids().iter().cloned().collect()
}
