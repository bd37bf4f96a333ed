//! Exact rational linear algebra and the constructions of intersection
//! posets from rational affine subspace arrangements: the flat lattice in
//! `ℝⁿ`, its trace on the unit sphere, and its image in the torus `ℝⁿ/ℤⁿ`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangements::{ArrangementData, ArrangementElement, ArrangementError, IntersectionPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("subspace {0} has no points")]
    InconsistentSubspace(usize),
    #[error("subspace {0} is the whole space")]
    NotProper(usize),
    #[error("subspace {index}: expected {expected} columns, found {found}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("subspace {0}: right-hand side has the wrong length")]
    RhsMismatch(usize),
    #[error("subspace {0} does not pass through the origin")]
    NotCentral(usize),
    #[error("subspace {0} is a point; spheres need central subspaces of dimension at least 1")]
    PointSubspace(usize),
    #[error("region counting needs lines in the plane")]
    NotLineArrangement,
    #[error("toric intersections of unequal dimension")]
    NonPureIntersection,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

/// A dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        RationalMatrix { cols, rows }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (RationalMatrix::new(self.cols, m), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// `{x : A x = b}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSubspace {
    #[serde(rename = "A", with = "crate::io::rational::matrix")]
    pub a: Vec<Vec<BigRational>>,
    #[serde(with = "crate::io::rational::vec")]
    pub b: Vec<BigRational>,
}

/// Canonical form of a non-empty affine subspace: RREF rows of `[A | b]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Flat {
    rows: Vec<Vec<BigRational>>,
}

impl Flat {
    fn whole() -> Self {
        Flat { rows: Vec::new() }
    }

    /// `None` when the system is inconsistent.
    fn from_rows(n: usize, rows: Vec<Vec<BigRational>>) -> Option<Flat> {
        let (m, pivots) = RationalMatrix::new(n + 1, rows).rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        Some(Flat { rows: m.rows })
    }

    fn dim(&self, n: usize) -> usize {
        n - self.rows.len()
    }

    fn meet(&self, other: &Flat, n: usize) -> Option<Flat> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Flat::from_rows(n, rows)
    }

    fn is_central(&self, n: usize) -> bool {
        self.rows.iter().all(|r| r[n].is_zero())
    }
}

impl AffineSubspace {
    pub fn new(a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> Self {
        AffineSubspace { a, b }
    }

    /// Integer constraint rows with right-hand side.
    pub fn from_integers(a: &[Vec<i64>], b: &[i64]) -> Self {
        let q = |x: i64| BigRational::from_integer(x.into());
        AffineSubspace {
            a: a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            b: b.iter().map(|&x| q(x)).collect(),
        }
    }

    /// The hyperplane `normal · x = offset`.
    pub fn hyperplane(normal: Vec<BigRational>, offset: BigRational) -> Self {
        AffineSubspace {
            a: vec![normal],
            b: vec![offset],
        }
    }

    fn augmented(&self) -> Vec<Vec<BigRational>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(r, c)| {
                let mut row = r.clone();
                row.push(c.clone());
                row
            })
            .collect()
    }

    /// `dim = n − rank A` when consistent.
    pub fn dim(&self, n: usize) -> Option<usize> {
        Flat::from_rows(n, self.augmented()).map(|f| f.dim(n))
    }

    /// A rational point of the subspace, free coordinates set to zero.
    pub fn particular_solution(&self, n: usize) -> Option<Vec<BigRational>> {
        let f = Flat::from_rows(n, self.augmented())?;
        Some(particular(&f, n))
    }
}

fn particular(f: &Flat, n: usize) -> Vec<BigRational> {
    let mut p = vec![BigRational::zero(); n];
    for row in &f.rows {
        let c = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        p[c] = row[n].clone();
    }
    p
}

/// A family of affine subspaces of `ℝⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceArrangement {
    pub ambient: usize,
    pub subspaces: Vec<AffineSubspace>,
}

/// The subspace file format is the arrangement itself.
pub type SubspaceData = SubspaceArrangement;

impl SubspaceArrangement {
    pub fn new(ambient: usize, subspaces: Vec<AffineSubspace>) -> Self {
        SubspaceArrangement { ambient, subspaces }
    }

    fn flats(&self) -> Result<Vec<Flat>, GeometryError> {
        let n = self.ambient;
        let mut out = Vec::new();
        for (i, s) in self.subspaces.iter().enumerate() {
            for row in &s.a {
                if row.len() != n {
                    return Err(GeometryError::DimensionMismatch {
                        index: i,
                        expected: n,
                        found: row.len(),
                    });
                }
            }
            if s.b.len() != s.a.len() {
                return Err(GeometryError::RhsMismatch(i));
            }
            let f = Flat::from_rows(n, s.augmented()).ok_or(GeometryError::InconsistentSubspace(i))?;
            if f.rows.is_empty() {
                return Err(GeometryError::NotProper(i));
            }
            out.push(f);
        }
        Ok(out)
    }
}

/// Closure of the generators under intersection, with the generator index
/// set `I(F) = {i : F ⊆ V_i}` of each flat. Order: `G ⊆ F` iff `I(F) ⊆ I(G)`.
struct FlatLattice {
    flats: Vec<(Flat, BTreeSet<usize>)>,
    has_empty: bool,
}

fn flat_lattice(n: usize, gens: &[Flat]) -> FlatLattice {
    let mut seen: BTreeMap<Flat, usize> = BTreeMap::new();
    let mut flats: Vec<Flat> = Vec::new();
    let mut has_empty = false;
    let mut push = |f: Flat, flats: &mut Vec<Flat>| {
        if !seen.contains_key(&f) {
            seen.insert(f.clone(), flats.len());
            flats.push(f);
        }
    };
    push(Flat::whole(), &mut flats);
    let mut i = 0;
    while i < flats.len() {
        let f = flats[i].clone();
        for g in gens {
            match f.meet(g, n) {
                Some(h) => push(h, &mut flats),
                None => has_empty = true,
            }
        }
        i += 1;
    }
    let flats = flats
        .into_iter()
        .map(|f| {
            let set = gens
                .iter()
                .enumerate()
                .filter(|(_, g)| f.meet(g, n).as_ref() == Some(&f))
                .map(|(i, _)| i)
                .collect();
            (f, set)
        })
        .collect();
    FlatLattice { flats, has_empty }
}

fn index_name(set: &BTreeSet<usize>, gens: &[Flat], flat: &Flat) -> String {
    if let Some(i) = gens.iter().position(|g| g == flat) {
        return format!("V{}", i + 1);
    }
    set.iter()
        .map(|i| format!("V{}", i + 1))
        .collect::<Vec<_>>()
        .join("&")
}

pub const EMPTY_ID: &str = "empty";

fn all_relations(sets: &[&BTreeSet<usize>], ids: &[String]) -> Vec<(String, String)> {
    let mut covers = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(b) {
                covers.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    covers
}

/// The intersection poset of the flats in `ℝⁿ` (carrier not compact):
/// `ρ = codimension`, `χ = 1` on non-empty flats, `∅` on top when some
/// intersection is empty.
pub fn intersection_lattice(arr: &SubspaceArrangement) -> Result<IntersectionPoset, GeometryError> {
    let n = arr.ambient;
    let gens = arr.flats()?;
    let lat = flat_lattice(n, &gens);
    let mut ids = Vec::new();
    let mut elements = Vec::new();
    for (k, (f, set)) in lat.flats.iter().enumerate() {
        let id = if k == 0 {
            format!("R^{n}")
        } else {
            index_name(set, &gens, f)
        };
        elements.push(ArrangementElement {
            id: id.clone(),
            rank: None,
            dim: Some(f.dim(n)),
            euler: BigInt::one(),
        });
        ids.push(id);
    }
    let sets: Vec<&BTreeSet<usize>> = lat.flats.iter().map(|(_, s)| s).collect();
    let mut covers = all_relations(&sets, &ids);
    if lat.has_empty {
        elements.push(ArrangementElement {
            id: EMPTY_ID.into(),
            rank: None,
            dim: None,
            euler: BigInt::zero(),
        });
        covers.extend(ids.iter().map(|id| (id.clone(), EMPTY_ID.to_string())));
    }
    Ok(ArrangementData {
        carrier_dim: n,
        carrier_euler: BigInt::one(),
        carrier_compact: false,
        ambient_manifold_dim: None,
        ambient_manifold_euler: None,
        elements,
        covers,
    }
    .build()?)
}

/// The trace of a central arrangement on `S^{n−1}`, bounding the ball:
/// dimensions drop by one, the origin becomes `∅`, `χ(x) = 1 + (−1)^{dim x}`.
pub fn spherize(arr: &SubspaceArrangement) -> Result<IntersectionPoset, GeometryError> {
    let n = arr.ambient;
    let gens = arr.flats()?;
    for (i, g) in gens.iter().enumerate() {
        if !g.is_central(n) {
            return Err(GeometryError::NotCentral(i));
        }
        if g.dim(n) == 0 {
            return Err(GeometryError::PointSubspace(i));
        }
    }
    let lat = flat_lattice(n, &gens);
    let chi = |d: usize| BigInt::from(if d % 2 == 0 { 2 } else { 0 });
    let mut ids = Vec::new();
    let mut elements = Vec::new();
    let mut origin = None;
    for (k, (f, set)) in lat.flats.iter().enumerate() {
        let d = f.dim(n);
        let id = if d == 0 {
            origin = Some(k);
            EMPTY_ID.to_string()
        } else if k == 0 {
            format!("S^{}", n - 1)
        } else {
            index_name(set, &gens, f)
        };
        elements.push(ArrangementElement {
            id: id.clone(),
            rank: None,
            dim: d.checked_sub(1),
            euler: d.checked_sub(1).map_or(BigInt::zero(), chi),
        });
        ids.push(id);
    }
    let sets: Vec<&BTreeSet<usize>> = lat.flats.iter().map(|(_, s)| s).collect();
    let mut covers = all_relations(&sets, &ids);
    if origin.is_none() {
        elements.push(ArrangementElement {
            id: EMPTY_ID.into(),
            rank: None,
            dim: None,
            euler: BigInt::zero(),
        });
        covers.extend(ids.iter().map(|id| (id.clone(), EMPTY_ID.to_string())));
    }
    Ok(ArrangementData {
        carrier_dim: n - 1,
        carrier_euler: chi(n - 1),
        carrier_compact: true,
        ambient_manifold_dim: Some(n),
        ambient_manifold_euler: Some(BigInt::one()),
        elements,
        covers,
    }
    .build()?)
}

/// Integer matrix with a diagonal form `P·M·Q = D`; `Q⁻¹` is kept as well.
#[derive(Debug, Clone)]
pub struct DiagonalForm {
    pub p: Vec<Vec<BigInt>>,
    pub q: Vec<Vec<BigInt>>,
    pub q_inv: Vec<Vec<BigInt>>,
    /// Nonzero diagonal entries `d_1, …, d_r`, all positive.
    pub diagonal: Vec<BigInt>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form by unimodular row and column operations.
pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> DiagonalForm {
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut p = identity(rows);
    let mut q = identity(cols);
    let mut q_inv = identity(cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        p.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in q.iter_mut() {
                row.swap(t, bj);
            }
            q_inv.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let f = a[i][t].div_floor(&a[t][t]);
            for j in 0..cols {
                let v = &f * &a[t][j];
                a[i][j] -= v;
            }
            for j in 0..rows {
                let v = &f * &p[t][j];
                p[i][j] -= v;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let f = a[t][j].div_floor(&a[t][t]);
            for row in a.iter_mut() {
                let v = &f * &row[t];
                row[j] -= v;
            }
            for row in q.iter_mut() {
                let v = &f * &row[t];
                row[j] -= v;
            }
            // Inverse column operation acts on the rows of Q⁻¹.
            let (head, tail) = q_inv.split_at_mut(j);
            for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                *x += &f * y;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in p[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(a[t][t].clone());
        t += 1;
    }
    // Make each entry divide the next: (d_i, d_j) → (gcd, lcm) by
    // unimodular 2×2 operations on rows and columns i, j.
    let r = diagonal.len();
    for i in 0..r {
        for j in i + 1..r {
            let (di, dj) = (diagonal[i].clone(), diagonal[j].clone());
            if dj.is_multiple_of(&di) {
                continue;
            }
            let e = di.extended_gcd(&dj);
            let (g, s, u) = (e.gcd, e.x, e.y);
            let (ai, aj) = (&di / &g, &dj / &g);
            // rows: [s, u; −aj, ai]
            let (pi, pj) = (p[i].clone(), p[j].clone());
            for k in 0..rows {
                p[i][k] = &s * &pi[k] + &u * &pj[k];
                p[j][k] = -&aj * &pi[k] + &ai * &pj[k];
            }
            // columns: [1, −u·aj; 1, s·ai]
            for row in q.iter_mut() {
                let (x, y) = (row[i].clone(), row[j].clone());
                row[i] = &x + &y;
                row[j] = -&u * &aj * &x + &s * &ai * &y;
            }
            // inverse columns act on rows of Q⁻¹: [s·ai, u·aj; −1, 1]
            let (qi, qj) = (q_inv[i].clone(), q_inv[j].clone());
            for k in 0..cols {
                q_inv[i][k] = &s * &ai * &qi[k] + &u * &aj * &qj[k];
                q_inv[j][k] = &qj[k] - &qi[k];
            }
            diagonal[i] = g;
            diagonal[j] = &di / &diagonal[i] * &dj;
        }
    }
    DiagonalForm {
        p,
        q,
        q_inv,
        diagonal,
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn is_integer(x: &BigRational) -> bool {
    x.is_integer()
}

/// A translate of a subtorus: `{y ∈ Tⁿ : L y ≡ v (mod 1)}` with the rows of
/// `L` a basis of a saturated lattice, so the set is connected.
#[derive(Debug, Clone)]
struct Coset {
    rows: Vec<Vec<BigInt>>,
    offset: Vec<BigRational>,
}

impl Coset {
    fn whole() -> Self {
        Coset {
            rows: Vec::new(),
            offset: Vec::new(),
        }
    }

    fn dim(&self, n: usize) -> usize {
        n - self.rows.len()
    }

    fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    /// A point of the coset.
    fn point(&self, n: usize) -> Vec<BigRational> {
        let mut rows = self.rational_rows();
        for (r, v) in rows.iter_mut().zip(&self.offset) {
            r.push(v.clone());
        }
        particular(&Flat::from_rows(n, rows).expect("saturated rows are independent"), n)
    }

    fn satisfied_by(&self, y: &[BigRational]) -> bool {
        self.rows.iter().zip(&self.offset).all(|(r, v)| {
            let s: BigRational = r
                .iter()
                .zip(y)
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum();
            is_integer(&(s - v))
        })
    }

    fn contained_in(&self, other: &Coset, n: usize) -> bool {
        let mut stacked = self.rational_rows();
        stacked.extend(other.rational_rows());
        RationalMatrix::new(n, stacked).rank() == self.rows.len()
            && other.satisfied_by(&self.point(n))
    }

    fn same_set(&self, other: &Coset, n: usize) -> bool {
        self.rows.len() == other.rows.len() && self.contained_in(other, n)
    }
}

/// Connected components of `{y : M y ≡ v (mod 1)}`.
fn solve_congruence(m: &[Vec<BigInt>], v: &[BigRational], n: usize) -> Vec<Coset> {
    if m.is_empty() {
        return vec![Coset::whole()];
    }
    let form = smith_normal_form(m, n);
    let w: Vec<BigRational> = form
        .p
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum()
        })
        .collect();
    let r = form.diagonal.len();
    if w[r..].iter().any(|x| !is_integer(x)) {
        return Vec::new();
    }
    let rows: Vec<Vec<BigInt>> = form.q_inv[..r].to_vec();
    // y'_i = (w_i + k_i)/d_i for k_i in 0..d_i.
    let mut offsets: Vec<Vec<BigRational>> = vec![Vec::new()];
    for i in 0..r {
        let d = &form.diagonal[i];
        let mut next = Vec::new();
        for o in &offsets {
            let mut k = BigInt::zero();
            while &k < d {
                let mut o2 = o.clone();
                o2.push(frac(&((&w[i] + BigRational::from_integer(k.clone())) / BigRational::from_integer(d.clone()))));
                next.push(o2);
                k += 1;
            }
        }
        offsets = next;
    }
    offsets
        .into_iter()
        .map(|offset| Coset {
            rows: rows.clone(),
            offset,
        })
        .collect()
}

fn meet_cosets(a: &Coset, b: &Coset, n: usize) -> Vec<Coset> {
    let mut rows = a.rows.clone();
    rows.extend(b.rows.iter().cloned());
    let mut v = a.offset.clone();
    v.extend(b.offset.iter().cloned());
    solve_congruence(&rows, &v, n)
}

/// Image of `{x : A x = b}` in `Tⁿ`: one connected coset.
fn coset_of(f: &Flat, n: usize) -> Coset {
    // Clear denominators row by row, then saturate via the diagonal form.
    let int_rows: Vec<Vec<BigInt>> = f
        .rows
        .iter()
        .map(|row| {
            let l = row[..n]
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row[..n]
                .iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let form = smith_normal_form(&int_rows, n);
    let r = form.diagonal.len();
    let rows: Vec<Vec<BigInt>> = form.q_inv[..r].to_vec();
    let p = particular(f, n);
    let offset = rows
        .iter()
        .map(|row| {
            frac(
                &row.iter()
                    .zip(&p)
                    .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                    .sum::<BigRational>(),
            )
        })
        .collect();
    Coset { rows, offset }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToricMode {
    /// Components on the same generators together, split only where
    /// needed to keep each component in a single element.
    #[default]
    Grouped,
    /// One element per connected component.
    PerComponent,
}

struct ToricSet {
    components: Vec<Coset>,
    gens: BTreeSet<usize>,
}

fn set_contained(a: &[Coset], b: &[Coset], n: usize) -> bool {
    a.iter().all(|x| b.iter().any(|y| x.contained_in(y, n)))
}

/// Every connected component of every intersection of generators, the
/// whole torus first.
fn toric_components(gens: &[Coset], n: usize) -> Result<Vec<Coset>, GeometryError> {
    let mut comps = vec![Coset::whole()];
    let mut i = 0;
    while i < comps.len() {
        for gc in gens {
            let pieces = meet_cosets(&comps[i], gc, n);
            if let Some(first) = pieces.first() {
                let d0 = first.dim(n);
                if pieces.iter().any(|c| c.dim(n) != d0) {
                    return Err(GeometryError::NonPureIntersection);
                }
            }
            for c in pieces {
                if !comps.iter().any(|e| e.same_set(&c, n)) {
                    comps.push(c);
                }
            }
        }
        i += 1;
    }
    Ok(comps)
}

// Groups components lying on exactly the same generators, then splits
// groups until each one sits wholly inside, or wholly outside, every
// component of every other group. Each component then belongs to one
// element and the order is reverse inclusion of whole elements.
fn group_components(comps: &[Coset], gens_of: &[BTreeSet<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut key: Vec<usize> = Vec::with_capacity(comps.len());
    let mut seen: Vec<&BTreeSet<usize>> = Vec::new();
    for g in gens_of {
        let k = match seen.iter().position(|s| *s == g) {
            Some(k) => k,
            None => {
                seen.push(g);
                seen.len() - 1
            }
        };
        key.push(k);
    }
    let above: Vec<Vec<usize>> = (0..comps.len())
        .map(|c| {
            (0..comps.len())
                .filter(|&d| d != c && comps[c].contained_in(&comps[d], n) && !comps[d].same_set(&comps[c], n))
                .collect()
        })
        .collect();
    loop {
        let signature: Vec<(usize, BTreeSet<usize>)> = (0..comps.len())
            .map(|c| (key[c], above[c].iter().map(|&d| key[d]).collect()))
            .collect();
        let mut classes: Vec<&(usize, BTreeSet<usize>)> = Vec::new();
        let next: Vec<usize> = signature
            .iter()
            .map(|s| match classes.iter().position(|t| *t == s) {
                Some(k) => k,
                None => {
                    classes.push(s);
                    classes.len() - 1
                }
            })
            .collect();
        let stable = classes.len() == key.iter().collect::<BTreeSet<_>>().len();
        key = next;
        if stable {
            break;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for c in 0..comps.len() {
        match groups.iter_mut().find(|g| key[g[0]] == key[c]) {
            Some(g) => g.push(c),
            None => groups.push(vec![c]),
        }
    }
    groups
}

/// The image of a rational affine arrangement in the torus `ℝⁿ/ℤⁿ`, which
/// bounds `B² × Tⁿ⁻¹`. Points carry their component count as `χ`; every
/// positive-dimensional element has `χ = 0`.
pub fn torify(arr: &SubspaceArrangement, mode: ToricMode) -> Result<IntersectionPoset, GeometryError> {
    let n = arr.ambient;
    let gens: Vec<Coset> = arr.flats()?.iter().map(|f| coset_of(f, n)).collect();
    let comps = toric_components(&gens, n)?;
    let gens_of: Vec<BTreeSet<usize>> = comps
        .iter()
        .map(|c| (0..gens.len()).filter(|&g| c.contained_in(&gens[g], n)).collect())
        .collect();
    let groups = match mode {
        ToricMode::Grouped => group_components(&comps, &gens_of, n),
        ToricMode::PerComponent => (0..comps.len()).map(|c| vec![c]).collect(),
    };
    let sets: Vec<ToricSet> = groups
        .iter()
        .map(|g| ToricSet {
            components: g.iter().map(|&c| comps[c].clone()).collect(),
            gens: gens_of[g[0]].clone(),
        })
        .collect();

    let mut ids = Vec::new();
    let mut counter: BTreeMap<String, usize> = BTreeMap::new();
    let mut totals: BTreeMap<String, usize> = BTreeMap::new();
    let base: Vec<String> = sets
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if k == 0 {
                format!("T^{n}")
            } else {
                s.gens.iter().map(|g| format!("V{}", g + 1)).collect::<Vec<_>>().join("&")
            }
        })
        .collect();
    for b in &base {
        *totals.entry(b.clone()).or_default() += 1;
    }
    let mut elements = Vec::new();
    for (k, s) in sets.iter().enumerate() {
        let id = if totals[&base[k]] > 1 {
            let c = counter.entry(base[k].clone()).or_default();
            *c += 1;
            format!("{}#{}", base[k], c)
        } else {
            base[k].clone()
        };
        let d = s.components[0].dim(n);
        elements.push(ArrangementElement {
            id: id.clone(),
            rank: None,
            dim: Some(d),
            euler: if d == 0 {
                BigInt::from(s.components.len())
            } else {
                BigInt::zero()
            },
        });
        ids.push(id);
    }
    let mut covers = Vec::new();
    for (a, sa) in sets.iter().enumerate() {
        for (b, sb) in sets.iter().enumerate() {
            if a != b && set_contained(&sb.components, &sa.components, n) {
                covers.push((ids[a].clone(), ids[b].clone()));
            }
        }
    }
    elements.push(ArrangementElement {
        id: EMPTY_ID.into(),
        rank: None,
        dim: None,
        euler: BigInt::zero(),
    });
    covers.extend(ids.iter().map(|id| (id.clone(), EMPTY_ID.to_string())));
    Ok(ArrangementData {
        carrier_dim: n,
        carrier_euler: BigInt::zero(),
        carrier_compact: true,
        ambient_manifold_dim: Some(n + 1),
        // B² × T^{n−1}; only the disc itself (n = 1) has nonzero χ.
        ambient_manifold_euler: Some(BigInt::from(u8::from(n == 1))),
        elements,
        covers,
    }
    .build()?)
}

/// Number of regions cut out of the plane by affine lines: with `L`
/// distinct lines, `V` distinct crossing points and `k_ℓ` points on line
/// `ℓ`, the Euler formula gives `1 + L + Σ k_ℓ − V`.
pub fn region_count_oracle(arr: &SubspaceArrangement) -> Result<BigInt, GeometryError> {
    if arr.ambient != 2 {
        return Err(GeometryError::NotLineArrangement);
    }
    let mut lines: Vec<Flat> = Vec::new();
    for f in arr.flats()? {
        if f.dim(2) != 1 {
            return Err(GeometryError::NotLineArrangement);
        }
        if !lines.contains(&f) {
            lines.push(f);
        }
    }
    let mut points: BTreeSet<Flat> = BTreeSet::new();
    let mut on_line = vec![BTreeSet::new(); lines.len()];
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = lines[i].meet(&lines[j], 2) {
                on_line[i].insert(p.clone());
                on_line[j].insert(p.clone());
                points.insert(p);
            }
        }
    }
    let k: usize = on_line.iter().map(|s| s.len()).sum();
    Ok(BigInt::from(1 + lines.len() + k) - BigInt::from(points.len()))
}
