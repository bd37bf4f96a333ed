mod common;

use cdindex::flagenum::{ab_index, zaslavsky_z, zaslavsky_zm, EulerData};
use cdindex::geometry::spherize;
use cdindex::ncpoly::{a, a_minus_b_pow, b, expand_cd, Ab, AbPolynomial, AbWord, Word};
use cdindex::operators::{eta, eta_m, g_op, h_prime, kappa, lambda_bar, omega, phi};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_poly(w: &[Ab]) -> AbPolynomial {
    AbPolynomial::word(Word::new(w.to_vec()))
}

fn oracle_kappa(w: &[Ab]) -> AbPolynomial {
    if w.contains(&Ab::B) {
        AbPolynomial::zero()
    } else {
        a_minus_b_pow(w.len())
    }
}

fn oracle_eta(w: &[Ab]) -> AbPolynomial {
    let m = w.iter().take_while(|&&l| l == Ab::B).count();
    if w[m..].iter().all(|&l| l == Ab::A) {
        a_minus_b_pow(w.len()).scale(&2.into())
    } else {
        AbPolynomial::zero()
    }
}

/// φ on one word from its definition: delete any set of positions, cut the
/// word there, apply κ to the first piece and η to the rest, joined by `b`.
fn oracle_phi_word(w: &[Ab]) -> AbPolynomial {
    let n = w.len();
    let mut total = AbPolynomial::zero();
    for mask in 0u32..1 << n {
        let mut pieces: Vec<&[Ab]> = Vec::new();
        let mut start = 0;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                pieces.push(&w[start..i]);
                start = i + 1;
            }
        }
        pieces.push(&w[start..]);
        let mut term = oracle_kappa(pieces[0]);
        for piece in &pieces[1..] {
            term = &(&term * &b()) * &oracle_eta(piece);
        }
        total += &term;
    }
    total
}

fn d_expanded() -> AbPolynomial {
    "a*b + b*a".parse().unwrap()
}

fn word_strategy(max: usize) -> impl Strategy<Value = AbWord> {
    prop::collection::vec(any::<bool>(), 0..=max)
        .prop_map(|v| v.into_iter().map(|x| if x { Ab::B } else { Ab::A }).collect())
}

fn poly_strategy(max: usize) -> impl Strategy<Value = AbPolynomial> {
    prop::collection::vec((word_strategy(max), -3i64..=3), 1..5)
        .prop_map(|ts| AbPolynomial::from_terms(ts.into_iter().map(|(w, c)| (w, BigInt::from(c)))))
}

#[test]
fn small_values() {
    let p = |s: &str| -> AbPolynomial { s.parse().unwrap() };
    assert_eq!(kappa(&p("a*b")), AbPolynomial::zero());
    assert_eq!(kappa(&p("a*a")), a_minus_b_pow(2));
    assert_eq!(lambda_bar(&p("a + b")), p("a - b"));
    assert_eq!(eta(&p("b*a")), a_minus_b_pow(2).scale(&2.into()));
    assert_eq!(eta(&p("a*b")), AbPolynomial::zero());
    assert_eq!(phi(&AbPolynomial::one()), AbPolynomial::one());
    assert_eq!(phi(&a()), p("a + b"));
    assert_eq!(phi(&b()), p("2*b"));
    assert_eq!(phi(&p("a*b")), p("2*a*b + 2*b*a"));
    assert_eq!(g_op(&AbPolynomial::one()), b());
    assert_eq!(omega(&p("a*b*a")), "2*d*c".parse().unwrap());
    assert_eq!(omega(&p("b*b")), "c^2".parse().unwrap());
    assert_eq!(h_prime(&p("a*b + 3*b*a")), p("a + 3*b"));
}

#[test]
fn phi_matches_its_definition_on_all_short_words() {
    for n in 0..=7 {
        for bits in 0..1u32 << n {
            let w = word_from_bits(n, bits);
            assert_eq!(phi(&AbPolynomial::word(w.clone())), oracle_phi_word(w.letters()), "{w}");
        }
    }
    let p: AbPolynomial = "2*a*b*b - a*a + 3*b*a*b*a".parse().unwrap();
    assert_eq!(phi(&p), p.map_linear(|w| oracle_phi_word(w.letters())));
}

#[test]
fn poset_lemmas_on_random_classical_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let k = rng.gen_range(1..=7);
        let p = random_poset(&mut rng, k, false);
        let rho = p.poset_rank();
        let psi = ab_index(&p);
        let base = a_minus_b_pow(rho - 1);
        assert_eq!(kappa(&psi), base);
        let mu = oracle_mobius(&p, p.bottom(), p.top());
        let sign = if rho % 2 == 0 { mu } else { -mu };
        assert_eq!(lambda_bar(&psi), base.scale(&sign));
        let z = oracle_zaslavsky(&p, |_| 1.into());
        assert_eq!(eta(&psi), base.scale(&z));
    }
}

#[test]
fn eta_lemma_on_random_weighted_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let k = rng.gen_range(1..=7);
        let p = random_poset(&mut rng, k, true);
        let base = a_minus_b_pow(p.poset_rank() - 1);
        let psi = ab_index(&p);
        assert_eq!(eta(&psi), base.scale(&oracle_zaslavsky(&p, |_| 1.into())));
        assert_eq!(kappa(&psi), base.scale(&p.zeta_value(p.bottom(), p.top())));
    }
}

#[test]
fn eta_m_is_the_weighted_zaslavsky_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let k = rng.gen_range(1..=6);
        let p = random_poset(&mut rng, k, true);
        let chi: EulerData = (0..p.len())
            .map(|i| (p.id(i).to_string(), BigInt::from(rng.gen_range(-3..=3))))
            .collect();
        let z = oracle_zaslavsky(&p, |x| chi.get(p.id(x)).unwrap().clone());
        assert_eq!(zaslavsky_zm(&p, &chi).unwrap(), z);
        assert_eq!(eta_m(&p, &chi).unwrap(), a_minus_b_pow(p.poset_rank() - 1).scale(&z));
    }
}

#[test]
fn spherical_euler_data_reduces_eta_m_to_eta() {
    for (name, arr) in central_fixtures() {
        let sp = spherize(&arr).unwrap();
        let p = sp.poset();
        for x in 0..p.len() {
            let iv = p.interval(x, p.top()).unwrap();
            if iv.len() < 2 {
                continue;
            }
            let chi: EulerData = (0..iv.len())
                .map(|i| {
                    let orig = p.index_of(iv.id(i)).unwrap();
                    (iv.id(i).to_string(), sp.euler(orig).clone())
                })
                .collect();
            assert_eq!(zaslavsky_zm(&iv, &chi).unwrap(), zaslavsky_z(&iv), "{name} at {}", p.id(x));
            assert_eq!(eta_m(&iv, &chi).unwrap(), eta(&ab_index(&iv)), "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn phi_of_a_prefix_is_the_peak_image(v in poly_strategy(7)) {
        let av = &a() * &v;
        prop_assert_eq!(phi(&av), expand_cd(&omega(&av)));
    }

    #[test]
    fn g_of_a_prefix(v in poly_strategy(6)) {
        let av = &a() * &v;
        let rhs = expand_cd(&omega(&(&av * &b()))).halve().unwrap();
        prop_assert_eq!(g_op(&av), rhs);
    }

    #[test]
    fn g_of_an_a_suffix(w in poly_strategy(6)) {
        let lhs = g_op(&(&w * &a()));
        let rhs = phi(&(&(&w * &a()) * &b())).halve().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_of_an_ab_suffix(v in poly_strategy(6)) {
        let lhs = phi(&(&(&v * &a()) * &b()));
        prop_assert_eq!(lhs, &phi(&v) * &d_expanded().scale(&2.into()));
    }

    #[test]
    fn phi_appends_c_off_peaks(w in word_strategy(7), last in any::<bool>()) {
        let x = if last { Ab::B } else { Ab::A };
        // v has no constant term: φ(b) = 2b while φ(1)·c = a + b.
        prop_assume!(!w.is_empty());
        let ends_in_ab = x == Ab::B && w.letters().last() == Some(&Ab::A);
        prop_assume!(!ends_in_ab);
        let vx = &AbPolynomial::word(w.clone()) * &to_poly(&[x]);
        prop_assert_eq!(phi(&vx), &phi(&AbPolynomial::word(w)) * &(&a() + &b()));
    }

    #[test]
    fn kappa_and_lambda_are_multiplicative(p in poly_strategy(4), q in poly_strategy(4)) {
        let pq = &p * &q;
        prop_assert_eq!(kappa(&pq), &kappa(&p) * &kappa(&q));
        prop_assert_eq!(lambda_bar(&pq), &lambda_bar(&p) * &lambda_bar(&q));
    }

    #[test]
    fn h_prime_inverts_right_multiplication(p in poly_strategy(6)) {
        prop_assert_eq!(h_prime(&(&p * &a())), p.clone());
        prop_assert_eq!(h_prime(&(&p * &b())), p);
    }
}
