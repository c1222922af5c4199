//! Randomized spot checks beyond the exhaustive bound: the structural
//! laws on larger signatures, sampled rather than enumerated, with fixed
//! seeds.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use relbrace::posets::contraction;
use relbrace::rbr::{
    compose_at, differential, random_basis_element, FormalSum,
};
use relbrace::rs::{self, in_t21, normal_form};
use relbrace::trees::{Grading, Signature};

#[test]
fn d_squared_on_large_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for sig_text in ["cccccc;c", "cccco;o", "cccoo;o", "ccccc;o"] {
        let sig = Signature::parse(sig_text).unwrap();
        for _ in 0..60 {
            let e = random_basis_element(&sig, &mut rng);
            let dd = differential(&differential(&FormalSum::from_element(e.clone())));
            assert!(dd.is_zero(), "d^2({e}) != 0 over {sig}");
        }
    }
}

#[test]
fn leibniz_on_large_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let outer = Signature::parse("ccoc;o").unwrap();
    let closed = Signature::parse("ccc;c").unwrap();
    let open = Signature::parse("cc;o").unwrap();
    for _ in 0..30 {
        let a = random_basis_element(&outer, &mut rng);
        let slot = rng.gen_range(1..=4);
        let b = match outer.input(slot).unwrap() {
            relbrace::trees::Color::Closed => random_basis_element(&closed, &mut rng),
            relbrace::trees::Color::Open => random_basis_element(&open, &mut rng),
        };
        let fa = FormalSum::from_element(a.clone());
        let fb = FormalSum::from_element(b.clone());
        let lhs = differential(&compose_at(&fa, slot, &fb).unwrap());
        let sign = if a.degree(Grading::Lambda) % 2 == 0 { 1 } else { -1 };
        let mut rhs = compose_at(&differential(&fa), slot, &fb).unwrap();
        rhs.add(&compose_at(&fa, slot, &differential(&fb)).unwrap().scaled(sign));
        assert_eq!(lhs, rhs, "Leibniz fails at ({a}) o_{slot} ({b})");
    }
}

#[test]
fn contraction_is_constant_on_classes() {
    // The contraction of any representative agrees with that of the
    // normal form, which makes the limit-cell index posets well defined.
    for n in 1..=4 {
        for sig in relbrace::rbr::signatures_with_inputs(n) {
            for e in relbrace::rbr::enumerate_basis(&sig, None) {
                if !in_t21(e.word()) {
                    continue;
                }
                let nf = normal_form(&e).unwrap();
                assert_eq!(
                    contraction(&e),
                    contraction(nf.representative()),
                    "contraction differs across the class of {e}"
                );
            }
        }
    }
}

#[test]
fn projection_chain_map_on_large_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    for sig_text in ["ccccc;c", "cccco;o"] {
        let sig = Signature::parse(sig_text).unwrap();
        for _ in 0..40 {
            let e = random_basis_element(&sig, &mut rng);
            let fe = FormalSum::from_element(e.clone());
            let lhs = rs::phi(&differential(&fe));
            let rhs = rs::differential_rs(&rs::phi(&fe));
            assert_eq!(lhs, rhs, "projection chain map fails at {e}");
        }
    }
}
