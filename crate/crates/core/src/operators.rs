//! Linear operators on `Z<a,b>`: κ, λ̄, η, φ, ω, G, H′ and η_M.
//!
//! All operators are defined on words and extended linearly.

use num_bigint::BigInt;
use num_traits::One;

use crate::flagenum::{zaslavsky_zm, EulerData, FlagError};
use crate::ncpoly::{a_minus_b_pow, Ab, AbPolynomial, AbWord, Cd, CdPolynomial, CdWord, Poly, Word};
use crate::poset::QuasiGradedPoset;

fn algebra_map(p: &AbPolynomial, image_a: &AbPolynomial, image_b: &AbPolynomial) -> AbPolynomial {
    p.map_linear(|w| {
        let mut acc = AbPolynomial::one();
        for l in w.letters() {
            let img = match l {
                Ab::A => image_a,
                Ab::B => image_b,
            };
            if img.is_zero() {
                return AbPolynomial::zero();
            }
            acc = &acc * img;
        }
        acc
    })
}

/// The algebra map `a ↦ a − b`, `b ↦ 0`.
pub fn kappa(p: &AbPolynomial) -> AbPolynomial {
    algebra_map(p, &a_minus_b_pow(1), &AbPolynomial::zero())
}

/// The algebra map `a ↦ 0`, `b ↦ a − b`.
pub fn lambda_bar(p: &AbPolynomial) -> AbPolynomial {
    algebra_map(p, &AbPolynomial::zero(), &a_minus_b_pow(1))
}

/// `b^m a^k` splits as `(m, k)`; any other word gives `None`.
fn b_then_a(w: &[Ab]) -> Option<usize> {
    let m = w.iter().take_while(|&&l| l == Ab::B).count();
    w[m..].iter().all(|&l| l == Ab::A).then_some(w.len())
}

fn eta_word(w: &[Ab]) -> AbPolynomial {
    match b_then_a(w) {
        Some(len) => a_minus_b_pow(len).scale(&BigInt::from(2)),
        None => AbPolynomial::zero(),
    }
}

/// `η(b^m a^k) = 2(a−b)^{m+k}`, zero on every other word.
pub fn eta(p: &AbPolynomial) -> AbPolynomial {
    p.map_linear(|w| eta_word(w.letters()))
}

fn kappa_word(w: &[Ab]) -> AbPolynomial {
    if w.contains(&Ab::B) {
        AbPolynomial::zero()
    } else {
        a_minus_b_pow(w.len())
    }
}

// The k-ary coproduct splits a word into blocks separated by removed
// letters; F[i] collects every such split of the prefix of length i, the
// first block under κ and later ones under η, joined by b.
fn phi_prefixes(w: &[Ab]) -> Vec<AbPolynomial> {
    let b = crate::ncpoly::b();
    let mut f: Vec<AbPolynomial> = Vec::with_capacity(w.len() + 1);
    for i in 0..=w.len() {
        let mut acc = kappa_word(&w[..i]);
        for j in 0..i {
            let e = eta_word(&w[j + 1..i]);
            if e.is_zero() || f[j].is_zero() {
                continue;
            }
            acc += &(&(&f[j] * &b) * &e);
        }
        f.push(acc);
    }
    f
}

/// `φ = Σ_k φ_k` with `φ_k(w) = Σ κ(w₍₁₎) b η(w₍₂₎) b ⋯ b η(w₍ₖ₎)`.
pub fn phi(p: &AbPolynomial) -> AbPolynomial {
    p.map_linear(|w| phi_prefixes(w.letters()).pop().expect("non-empty"))
}

fn omega_word(w: &AbWord) -> (CdWord, BigInt) {
    let l = w.letters();
    let mut out = Vec::new();
    let mut coeff = BigInt::one();
    let mut i = 0;
    while i < l.len() {
        if l[i] == Ab::A && l.get(i + 1) == Some(&Ab::B) {
            out.push(Cd::D);
            coeff *= 2;
            i += 2;
        } else {
            out.push(Cd::C);
            i += 1;
        }
    }
    (Word::new(out), coeff)
}

/// Replaces every factor `ab` by `2d` and every other letter by `c`.
pub fn omega(p: &AbPolynomial) -> CdPolynomial {
    let mut out = CdPolynomial::zero();
    for (w, c) in p.terms() {
        let (v, k) = omega_word(w);
        out.add_term(v, k * c);
    }
    out
}

/// `G(w) = φ(w) b + Σ φ(w₍₁₎) b λ̄(w₍₂₎) (a − b)`, in ab-form.
pub fn g_op(p: &AbPolynomial) -> AbPolynomial {
    let b = crate::ncpoly::b();
    let amb = a_minus_b_pow(1);
    p.map_linear(|w| {
        let l = w.letters();
        let f = phi_prefixes(l);
        let mut acc = &f[l.len()] * &b;
        for i in 0..l.len() {
            let rest = lambda_bar(&Poly::word(w.slice(i + 1..l.len())));
            if rest.is_zero() {
                continue;
            }
            acc += &(&(&(&f[i] * &b) * &rest) * &amb);
        }
        acc
    })
}

/// Drops the last letter of every word; `H′(1) = 0`.
pub fn h_prime(p: &AbPolynomial) -> AbPolynomial {
    let mut out = AbPolynomial::zero();
    for (w, c) in p.terms() {
        if !w.is_empty() {
            out.add_term(w.slice(0..w.len() - 1), c.clone());
        }
    }
    out
}

/// `η_M(Ψ(P)) = Z_M(P; χ) (a − b)^{ρ(P)−1}`.
pub fn eta_m(p: &QuasiGradedPoset, chi: &EulerData) -> Result<AbPolynomial, FlagError> {
    let z = zaslavsky_zm(p, chi)?;
    if p.poset_rank() == 0 {
        return Ok(AbPolynomial::zero());
    }
    Ok(a_minus_b_pow(p.poset_rank() - 1).scale(&z))
}

/// The named operators exposed to the command line.
pub fn apply_named(name: &str, p: &AbPolynomial) -> Option<OperatorOutput> {
    Some(match name {
        "kappa" => OperatorOutput::Ab(kappa(p)),
        "lambda" | "lambda-bar" => OperatorOutput::Ab(lambda_bar(p)),
        "eta" => OperatorOutput::Ab(eta(p)),
        "phi" => OperatorOutput::Ab(phi(p)),
        "omega" => OperatorOutput::Cd(omega(p)),
        "g" => OperatorOutput::Ab(g_op(p)),
        "h-prime" => OperatorOutput::Ab(h_prime(p)),
        "star" => OperatorOutput::Ab(p.star()),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorOutput {
    Ab(AbPolynomial),
    Cd(CdPolynomial),
}
