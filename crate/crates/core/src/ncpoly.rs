//! Integer polynomials in non-commuting variables.
//!
//! Two free algebras are used throughout the crate: `Z<a,b>`, where the
//! ab-index of a poset lives, and `Z<c,d>` with `c = a + b` and
//! `d = ab + ba`, where the cd-index lives. Both are modelled by the generic
//! [`Poly`] over a two-letter alphabet implementing [`Letter`].

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A letter of one of the two alphabets.
pub trait Letter: Copy + Ord + Eq + Hash + fmt::Debug + 'static {
    /// All letters in canonical order.
    const ALPHABET: &'static [Self];
    /// Print words letter by letter (`a*a`) instead of collapsing runs (`c^2`).
    const SPELL_OUT: bool;

    fn symbol(self) -> char;
    fn degree(self) -> usize;

    fn from_symbol(c: char) -> Option<Self> {
        Self::ALPHABET.iter().copied().find(|l| l.symbol() == c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ab {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cd {
    C,
    D,
}

impl Letter for Ab {
    const ALPHABET: &'static [Self] = &[Ab::A, Ab::B];
    const SPELL_OUT: bool = true;

    fn symbol(self) -> char {
        match self {
            Ab::A => 'a',
            Ab::B => 'b',
        }
    }

    fn degree(self) -> usize {
        1
    }
}

impl Letter for Cd {
    const ALPHABET: &'static [Self] = &[Cd::C, Cd::D];
    const SPELL_OUT: bool = false;

    fn symbol(self) -> char {
        match self {
            Cd::C => 'c',
            Cd::D => 'd',
        }
    }

    fn degree(self) -> usize {
        match self {
            Cd::C => 1,
            Cd::D => 2,
        }
    }
}

/// A monomial. Words are ordered by degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word<L> {
    letters: Vec<L>,
}

pub type AbWord = Word<Ab>;
pub type CdWord = Word<Cd>;

impl<L: Letter> Word<L> {
    pub fn new(letters: Vec<L>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    /// The subword `letters[range]`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Word {
            letters: self.letters[range].to_vec(),
        }
    }

    pub fn count(&self, letter: L) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }
}

impl<L: Letter> PartialOrd for Word<L> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Letter> Ord for Word<L> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl<L: Letter> FromIterator<L> for Word<L> {
    fn from_iter<I: IntoIterator<Item = L>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

impl<L: Letter> fmt::Display for Word<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        if L::SPELL_OUT {
            for (i, l) in self.letters.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{}", l.symbol())?;
            }
            return Ok(());
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{}", l.symbol())?;
            } else {
                write!(f, "{}^{}", l.symbol(), j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// An integer linear combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<L> {
    terms: BTreeMap<Word<L>, BigInt>,
}

pub type AbPolynomial = Poly<Ab>;
pub type CdPolynomial = Poly<Cd>;

impl<L: Letter> Default for Poly<L> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<L: Letter> Poly<L> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(Word::empty(), c.into())
    }

    pub fn letter(l: L) -> Self {
        Self::monomial(Word::new(vec![l]), BigInt::one())
    }

    pub fn word(w: Word<L>) -> Self {
        Self::monomial(w, BigInt::one())
    }

    pub fn monomial(w: Word<L>, coeff: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(w, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word<L>, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<L>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word<L>) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, w: Word<L>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Degree when every term has the same degree; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|w| w.degree());
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Self> {
        let mut parts: BTreeMap<usize, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            parts
                .entry(w.degree())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        parts
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Reverses every word.
    pub fn star(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }

    /// Exact division of every coefficient by two.
    pub fn halve(&self) -> Result<Self, OddCoefficient> {
        let two = BigInt::from(2);
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let (q, r) = c.div_rem(&two);
            if !r.is_zero() {
                return Err(OddCoefficient {
                    word: w.to_string(),
                    coefficient: c.clone(),
                });
            }
            out.insert(w.clone(), q);
        }
        Ok(Poly { terms: out })
    }

    /// Applies a linear map given on words.
    pub fn map_linear<M: Letter>(&self, mut f: impl FnMut(&Word<L>) -> Poly<M>) -> Poly<M> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            let image = f(w);
            for (v, d) in image.terms {
                out.add_term(v, d * c);
            }
        }
        out
    }
}

impl<L: Letter> fmt::Display for Poly<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl<L: Letter> AddAssign<&Poly<L>> for Poly<L> {
    fn add_assign(&mut self, rhs: &Poly<L>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl<L: Letter> SubAssign<&Poly<L>> for Poly<L> {
    fn sub_assign(&mut self, rhs: &Poly<L>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl<L: Letter> Add for &Poly<L> {
    type Output = Poly<L>;
    fn add(self, rhs: &Poly<L>) -> Poly<L> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<L: Letter> Add for Poly<L> {
    type Output = Poly<L>;
    fn add(mut self, rhs: Poly<L>) -> Poly<L> {
        self += &rhs;
        self
    }
}

impl<L: Letter> Sub for &Poly<L> {
    type Output = Poly<L>;
    fn sub(self, rhs: &Poly<L>) -> Poly<L> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<L: Letter> Sub for Poly<L> {
    type Output = Poly<L>;
    fn sub(mut self, rhs: Poly<L>) -> Poly<L> {
        self -= &rhs;
        self
    }
}

impl<L: Letter> Neg for &Poly<L> {
    type Output = Poly<L>;
    fn neg(self) -> Poly<L> {
        Poly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl<L: Letter> Neg for Poly<L> {
    type Output = Poly<L>;
    fn neg(self) -> Poly<L> {
        -&self
    }
}

impl<L: Letter> Mul for &Poly<L> {
    type Output = Poly<L>;
    fn mul(self, rhs: &Poly<L>) -> Poly<L> {
        let mut out = Poly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &rhs.terms {
                out.add_term(u.concat(v), c * d);
            }
        }
        out
    }
}

impl<L: Letter> Mul for Poly<L> {
    type Output = Poly<L>;
    fn mul(self, rhs: Poly<L>) -> Poly<L> {
        &self * &rhs
    }
}

/// A coefficient that had to be halved exactly but was odd.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("odd coefficient {coefficient} on {word} where an even one was required")]
pub struct OddCoefficient {
    pub word: String,
    pub coefficient: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ab-polynomial is not in the cd-subalgebra (degree {degree} part)")]
pub struct NotInCdAlgebra {
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

// Shorthands for the recurring ab-polynomials.

pub fn a() -> AbPolynomial {
    Poly::letter(Ab::A)
}

pub fn b() -> AbPolynomial {
    Poly::letter(Ab::B)
}

/// `(a - b)^n`.
pub fn a_minus_b_pow(n: usize) -> AbPolynomial {
    (&a() - &b()).pow(n)
}

/// `c^2 - 2d`, the cd-form of `(a - b)^2`.
pub fn c2_minus_2d() -> CdPolynomial {
    let c = Poly::letter(Cd::C);
    let d = Poly::letter(Cd::D);
    &(&c * &c) - &d.scale(&BigInt::from(2))
}

/// The homomorphism `c -> a + b`, `d -> ab + ba`.
pub fn expand_cd(p: &CdPolynomial) -> AbPolynomial {
    let c_image = &a() + &b();
    let d_image = &(&a() * &b()) + &(&b() * &a());
    p.map_linear(|w| {
        w.letters()
            .iter()
            .fold(AbPolynomial::one(), |acc, l| match l {
                Cd::C => &acc * &c_image,
                Cd::D => &acc * &d_image,
            })
    })
}

/// Rewrites an ab-polynomial in terms of `c` and `d`, one homogeneous
/// component at a time.
pub fn collapse_to_cd(p: &AbPolynomial) -> Result<CdPolynomial, NotInCdAlgebra> {
    let mut out = CdPolynomial::zero();
    for (degree, part) in p.homogeneous_parts() {
        let q = collapse_homogeneous(&part, degree).ok_or(NotInCdAlgebra { degree })?;
        out += &q;
    }
    Ok(out)
}

// Every homogeneous p of degree n >= 1 decomposes uniquely as
// p = (a + b) X + (ab + ba) Y. Writing p = a pa + b pb gives
// pa - pb = (b - a) Y and X = pa - b Y; p lies in the cd-algebra exactly when
// the decomposition exists and X, Y do recursively.
fn collapse_homogeneous(p: &AbPolynomial, n: usize) -> Option<CdPolynomial> {
    if p.is_zero() {
        return Some(CdPolynomial::zero());
    }
    if n == 0 {
        return Some(CdPolynomial::constant(p.coeff(&Word::empty())));
    }
    let (pa, pb) = split_first(p);
    let diff = &pa - &pb;
    let y = if n >= 2 {
        let (da, db) = split_first(&diff);
        if !(&da + &db).is_zero() {
            return None;
        }
        db
    } else {
        if !diff.is_zero() {
            return None;
        }
        AbPolynomial::zero()
    };
    let x = &pa - &(&b() * &y);
    let qx = collapse_homogeneous(&x, n - 1)?;
    let mut out = &CdPolynomial::letter(Cd::C) * &qx;
    if n >= 2 {
        let qy = collapse_homogeneous(&y, n - 2)?;
        out += &(&CdPolynomial::letter(Cd::D) * &qy);
    }
    Some(out)
}

/// Splits `p = a * pa + b * pb`; constant terms are dropped.
fn split_first(p: &AbPolynomial) -> (AbPolynomial, AbPolynomial) {
    let mut pa = AbPolynomial::zero();
    let mut pb = AbPolynomial::zero();
    for (w, c) in p.terms() {
        match w.letters().first() {
            Some(Ab::A) => pa.add_term(w.slice(1..w.len()), c.clone()),
            Some(Ab::B) => pb.add_term(w.slice(1..w.len()), c.clone()),
            None => {}
        }
    }
    (pa, pb)
}

/// An element of `Z<a,b> ⊗ Z<a,b>`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AbTensor {
    terms: BTreeMap<(AbWord, AbWord), BigInt>,
}

impl AbTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(AbWord, AbWord), &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, left: AbWord, right: AbWord, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `p ⊗ q`.
    pub fn tensor(p: &AbPolynomial, q: &AbPolynomial) -> Self {
        let mut out = Self::zero();
        for (u, c) in p.terms() {
            for (v, d) in q.terms() {
                out.add_term(u.clone(), v.clone(), c * d);
            }
        }
        out
    }

    /// `(p ⊗ 1) · self`, i.e. left-multiplies the first slot.
    pub fn mul_left(&self, p: &AbPolynomial) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            for (w, d) in p.terms() {
                out.add_term(w.concat(u), v.clone(), c * d);
            }
        }
        out
    }

    /// `self · (1 ⊗ q)`, i.e. right-multiplies the second slot.
    pub fn mul_right(&self, q: &AbPolynomial) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            for (w, d) in q.terms() {
                out.add_term(u.clone(), v.concat(w), c * d);
            }
        }
        out
    }
}

impl AddAssign<&AbTensor> for AbTensor {
    fn add_assign(&mut self, rhs: &AbTensor) {
        for ((u, v), c) in &rhs.terms {
            self.add_term(u.clone(), v.clone(), c.clone());
        }
    }
}

impl fmt::Display for AbTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((u, v), c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{u} ⊗ {v}")?;
        }
        Ok(())
    }
}

/// `Δ(u1⋯uk) = Σ_i u1⋯u(i-1) ⊗ u(i+1)⋯uk`, extended linearly; `Δ(1) = 0`.
pub fn coproduct(p: &AbPolynomial) -> AbTensor {
    let mut out = AbTensor::zero();
    for (w, c) in p.terms() {
        for i in 0..w.len() {
            out.add_term(w.slice(0..i), w.slice(i + 1..w.len()), c.clone());
        }
    }
    out
}

impl<L: Letter> FromStr for Poly<L> {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::<L>::new(s).parse()
    }
}

struct Parser<'s, L> {
    src: &'s str,
    pos: usize,
    _letters: std::marker::PhantomData<L>,
}

impl<'s, L: Letter> Parser<'s, L> {
    fn new(src: &'s str) -> Self {
        Parser {
            src,
            pos: 0,
            _letters: std::marker::PhantomData,
        }
    }

    fn err(&self, message: impl Into<String>) -> ParsePolyError {
        ParsePolyError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        rest[..len].parse().ok()
    }

    fn parse(mut self) -> Result<Poly<L>, ParsePolyError> {
        let mut out = Poly::zero();
        let mut negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            Some(_) => false,
            None => return Err(self.err("empty input")),
        };
        loop {
            let (w, c) = self.term()?;
            out.add_term(w, if negative { -c } else { c });
            match self.bump() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(ch) => return Err(self.err(format!("unexpected '{ch}'"))),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Word<L>, BigInt), ParsePolyError> {
        let coeff = self.number();
        let mut letters = Vec::new();
        let mut need_factor = false;
        if coeff.is_some() && self.peek() == Some('*') {
            self.bump();
            need_factor = true;
        }
        loop {
            match self.peek() {
                Some(ch) if L::from_symbol(ch).is_some() => {
                    self.bump();
                    let l = L::from_symbol(ch).expect("checked above");
                    let mut reps = 1usize;
                    if self.peek() == Some('^') {
                        self.bump();
                        let e = self.number().ok_or_else(|| self.err("expected exponent"))?;
                        reps = usize::try_from(e).map_err(|_| self.err("exponent too large"))?;
                    }
                    letters.extend(std::iter::repeat(l).take(reps));
                    need_factor = false;
                    if self.peek() == Some('*') {
                        self.bump();
                        need_factor = true;
                    }
                }
                _ => break,
            }
        }
        if need_factor {
            return Err(self.err("expected a variable after '*'"));
        }
        if coeff.is_none() && letters.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok((Word::new(letters), coeff.unwrap_or_else(BigInt::one)))
    }
}
