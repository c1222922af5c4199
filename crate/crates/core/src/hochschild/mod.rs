//! Concrete deformation complexes of affine actions, the brace action of
//! the tree operad on them, Hochschild cohomology of the bundled
//! examples, and the confluence check for the presenting rewriting
//! system.

pub mod action;
pub mod braces;
pub mod classical;
pub mod cochain;
pub mod field;
pub mod koszul;

pub use action::{
    dual_numbers, end_plus_product, truncated_polynomials, upper_triangular_on_plane,
    ActionReport, AffineAction, Algebra, EndPlusElt,
};
pub use braces::{
    brace_eval, brace_eval_sum, generators_up_to, verify_action_law, verify_appendix_relations,
    DefArg, LawOutcome,
};
pub use classical::{Classical, ClassicalCochain, Coefficients};
pub use cochain::{Cochain, DefContext, DefElement, MaurerCartan, McObstruction, Target};
pub use field::{Field, K};
pub use koszul::{koszul_confluence_check, CriticalPairOutcome};

use crate::homology::{DegreeSummary, HomologySummary};

/// Cohomology dimensions of the classical Hochschild complex over the
/// chosen coefficients, reported in the homology summary format; over a
/// field there is no torsion.
pub fn hochschild_homology(
    action: &AffineAction,
    coeffs: Coefficients,
    max_degree: usize,
) -> HomologySummary {
    let classical = Classical::new(action);
    let dims = classical.cohomology_dims(coeffs, max_degree);
    HomologySummary {
        entries: dims
            .into_iter()
            .enumerate()
            .map(|(degree, betti)| DegreeSummary {
                degree: degree as i64,
                betti,
                torsion: Vec::new(),
            })
            .collect(),
    }
}

/// Compares the closed-part differential of the deformation complex with
/// the independently written bar differential on a full basis. The two
/// agree up to the sign of the suspension regrading, which alternates
/// with the arity.
pub fn two_oracle_closed_differential(action: &AffineAction, max_arity: usize) -> LawOutcome {
    let ctx = DefContext::new(action.clone(), max_arity + 1);
    let mc = ctx.mc_element();
    let classical = Classical::new(action);
    let dim_a = action.algebra.dim;
    let mut samples = 0;
    for m in 1..=max_arity {
        // The regrading sign between the suspended and the bar complex.
        let epsilon = if (m as i64 - 1) % 2 == 0 { 1 } else { -1 };
        let size = dim_a.pow(m as u32) * dim_a;
        for col in 0..size {
            let mut suspended = ctx.zero_cochain(Target::Closed);
            {
                let data = suspended.component_mut(m);
                data[col] = ctx.field().one();
            }
            let d_susp = ctx.d_closed(&mc, &suspended);
            let mut bar = classical.zero_cochain(Coefficients::AlgebraItself, m);
            bar.data[col] = ctx.field().one();
            let d_bar = classical.differential(&bar);
            let expected: Vec<K> = d_bar
                .data
                .iter()
                .map(|x| x.mul(&ctx.field().from_i64(epsilon)))
                .collect();
            let got: Vec<K> = match d_susp.component(m + 1) {
                Some(data) => data.to_vec(),
                None => vec![ctx.field().zero(); dim_a.pow((m + 1) as u32) * dim_a],
            };
            samples += 1;
            if got != expected {
                return LawOutcome {
                    name: "two_oracle_closed_differential".into(),
                    passed: false,
                    samples,
                    witness: Some(format!("arity {m}, basis column {col}")),
                };
            }
            // No other arity may appear.
            if d_susp.arities().any(|a| a != m + 1) {
                return LawOutcome {
                    name: "two_oracle_closed_differential".into(),
                    passed: false,
                    samples,
                    witness: Some(format!("stray component at arity {m}, column {col}")),
                };
            }
        }
    }
    LawOutcome {
        name: "two_oracle_closed_differential".into(),
        passed: true,
        samples,
        witness: None,
    }
}

/// Degreewise rank bookkeeping of the mapping cone: the dimension of the
/// deformation complex in each degree is the sum of the closed part and
/// the shifted open part, so the Euler characteristics match over any
/// truncation window.
pub fn euler_characteristic_check(action: &AffineAction, bound: usize) -> LawOutcome {
    let dim_a = action.algebra.dim;
    let dim_end = action.dim_v + action.dim_v * action.dim_v;
    let closed_dim = |m: usize| dim_a.pow(m as u32) * dim_a;
    let open_dim = |m: usize| dim_a.pow(m as u32) * dim_end;
    let mut chi_def = 0i64;
    let mut chi_closed = 0i64;
    let mut chi_open_shifted = 0i64;
    let mut samples = 0;
    for d in -(bound as i64)..=1 {
        let mut dim_def = 0usize;
        let closed_arity = 1 - d;
        if (1..=bound as i64).contains(&closed_arity) {
            dim_def += closed_dim(closed_arity as usize);
            chi_closed += sign(d) * closed_dim(closed_arity as usize) as i64;
        }
        let open_arity = -d;
        if (0..=bound as i64).contains(&open_arity) {
            dim_def += open_dim(open_arity as usize);
            // The open part sits shifted one degree down in the cone.
            chi_open_shifted += sign(d + 1) * open_dim(open_arity as usize) as i64;
        }
        chi_def += sign(d) * dim_def as i64;
        samples += 1;
    }
    let passed = chi_def == chi_closed - chi_open_shifted;
    LawOutcome {
        name: "euler_characteristic_cone".into(),
        passed,
        samples,
        witness: (!passed).then(|| {
            format!("chi(def) = {chi_def}, chi(closed) = {chi_closed}, chi(open shifted) = {chi_open_shifted}")
        }),
    }
}

fn sign(d: i64) -> i64 {
    if d % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The whistle-induced map on cohomology in low degrees: it sends classes
/// to classes and respects cup products on computed representatives.
pub fn whistle_algebra_map_check(action: &AffineAction, max_degree: usize) -> LawOutcome {
    let classical = Classical::new(action);
    let mut samples = 0;
    for p in 0..=max_degree {
        for q in 0..=max_degree - p {
            let zp = classical.cocycle_basis(Coefficients::AlgebraItself, p);
            let zq = classical.cocycle_basis(Coefficients::AlgebraItself, q);
            for a in &zp {
                for b in &zq {
                    samples += 1;
                    let cup_then_push = classical.whistle_push(&classical.cup(a, b));
                    let push_then_cup =
                        classical.cup(&classical.whistle_push(a), &classical.whistle_push(b));
                    // Both are cocycles; compare as cohomology classes.
                    if !classical.cohomologous(&cup_then_push, &push_then_cup) {
                        return LawOutcome {
                            name: "whistle_algebra_map".into(),
                            passed: false,
                            samples,
                            witness: Some(format!("degrees ({p}, {q})")),
                        };
                    }
                }
            }
        }
    }
    LawOutcome {
        name: "whistle_algebra_map".into(),
        passed: true,
        samples,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_oracle_agreement_for_bundled_actions() {
        for action in [
            dual_numbers(Field::Q),
            truncated_polynomials(Field::Q, 3),
            upper_triangular_on_plane(Field::Q),
            dual_numbers(Field::Fp(101)),
        ] {
            let outcome = two_oracle_closed_differential(&action, 3);
            assert!(outcome.passed, "{:?}", outcome.witness);
        }
    }

    #[test]
    fn hochschild_dims_of_dual_numbers() {
        let action = dual_numbers(Field::Q);
        let h = hochschild_homology(&action, Coefficients::AlgebraItself, 4);
        assert_eq!(h.betti(0), 2);
        for n in 1..=4 {
            assert_eq!(h.betti(n), 1, "degree {n}");
        }
    }

    #[test]
    fn euler_bookkeeping() {
        for action in [dual_numbers(Field::Q), upper_triangular_on_plane(Field::Fp(101))] {
            let outcome = euler_characteristic_check(&action, 4);
            assert!(outcome.passed, "{:?}", outcome.witness);
        }
    }

    #[test]
    fn whistle_map_checks() {
        for action in [
            dual_numbers(Field::Q),
            truncated_polynomials(Field::Q, 3),
            upper_triangular_on_plane(Field::Q),
        ] {
            let outcome = whistle_algebra_map_check(&action, 2);
            assert!(outcome.passed, "{:?}", outcome.witness);
        }
    }

    #[test]
    fn differential_assembles_as_a_cone() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let ctx = DefContext::new(dual_numbers(Field::Fp(101)), 4);
        let mc = ctx.mc_element();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let mut psi = DefElement::zero(ctx.field(), ctx.dim_a(), ctx.dim_v());
            let closed_arity = rng.gen_range(1..=3usize);
            psi.closed = ctx.random_cochain(&mut rng, Target::Closed, closed_arity);
            let open_arity = closed_arity - 1;
            psi.open = ctx.random_cochain(&mut rng, Target::Open, open_arity);
            let full = ctx.differential(&mc, &psi);
            let cone_closed = ctx.d_closed(&mc, &psi.closed);
            let cone_open = ctx
                .compose(&mc.0.open, &psi.closed)
                .add(&ctx.d_open(&mc, &psi.open));
            assert_eq!(full.closed, cone_closed);
            assert_eq!(full.open, cone_open);
        }
    }
}
