//! Evaluation of the brace operad on a concrete deformation complex: a
//! tree acts as nested brace insertions with the Maurer-Cartan parts at
//! its neutral vertices, a word as the convolution of its trees, and the
//! whole assignment is a map of differential graded operads. The latter
//! is what the verification below samples.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::rbr::{self, FormalSum, GeneratorKind};
use crate::trees::{BasisElement, Color, Grading, Tree, TreeError, VertexKind};

use super::cochain::{Cochain, DefContext, MaurerCartan, Target};


/// One argument of a tree evaluation, matched to the color of its slot.
#[derive(Debug, Clone)]
pub enum DefArg {
    Closed(Cochain),
    Open(Cochain),
}

impl DefArg {
    fn cochain(&self) -> &Cochain {
        match self {
            DefArg::Closed(c) | DefArg::Open(c) => c,
        }
    }

    /// Degree of a homogeneous argument.
    fn degree(&self) -> i64 {
        let c = self.cochain();
        let mut degs: Vec<i64> = c
            .arities()
            .map(|m| Cochain::component_degree(c.target, m))
            .collect();
        degs.dedup();
        assert!(degs.len() <= 1, "arguments must be homogeneous");
        degs.pop().unwrap_or(0)
    }
}

/// Evaluates a basis tree or word on arguments indexed by label.
pub fn brace_eval(
    ctx: &DefContext,
    mc: &MaurerCartan,
    g: &BasisElement,
    args: &[DefArg],
) -> Result<Cochain, TreeError> {
    let sig = g.signature();
    if args.len() != sig.arity() {
        return Err(TreeError::Domain(format!(
            "expected {} arguments, got {}",
            sig.arity(),
            args.len()
        )));
    }
    for (i, arg) in args.iter().enumerate() {
        let ok = match sig.input(i + 1).unwrap() {
            Color::Closed => matches!(arg, DefArg::Closed(_)),
            Color::Open => matches!(arg, DefArg::Open(_)),
        };
        if !ok {
            return Err(TreeError::ColorMismatch { slot: i + 1 });
        }
    }
    // Koszul routing: arguments are consumed in the planar order of their
    // labels; crossings against label order cost signs.
    let planar = planar_labels(g);
    let mut sign = ctx.field().one();
    for i in 0..planar.len() {
        for j in i + 1..planar.len() {
            if planar[i] > planar[j] {
                let di = args[planar[i] - 1].degree();
                let dj = args[planar[j] - 1].degree();
                if (di * dj) % 2 != 0 {
                    sign = sign.mul(&ctx.field().from_i64(-1));
                }
            }
        }
    }
    // Routing across the word: each tree's operation jumps over the
    // arguments consumed by the trees before it.
    let mut value: Option<Cochain> = None;
    let mut consumed = 0i64;
    for tree in &g.word().trees {
        let op_deg = -(neutral_count(tree) as i64);
        if (op_deg * consumed) % 2 != 0 {
            sign = sign.mul(&ctx.field().from_i64(-1));
        }
        let v = eval_tree(ctx, mc, tree, args)?;
        consumed += args_degree(tree, args);
        value = Some(match value {
            None => v,
            Some(acc) => ctx.convolve(&acc, &v),
        });
    }
    Ok(value.expect("nonempty word").scale(&sign))
}

fn neutral_count(t: &Tree) -> usize {
    usize::from(t.kind.is_neutral()) + t.children.iter().map(neutral_count).sum::<usize>()
}

fn args_degree(t: &Tree, args: &[DefArg]) -> i64 {
    let own = t
        .kind
        .label()
        .map(|l| args[l as usize - 1].degree())
        .unwrap_or(0);
    own + t.children.iter().map(|c| args_degree(c, args)).sum::<i64>()
}

fn planar_labels(g: &BasisElement) -> Vec<usize> {
    fn walk(t: &Tree, out: &mut Vec<usize>) {
        if let Some(l) = t.kind.label() {
            out.push(l as usize);
        }
        for c in &t.children {
            walk(c, out);
        }
    }
    let mut out = Vec::new();
    for t in &g.word().trees {
        walk(t, &mut out);
    }
    out
}

fn eval_tree(
    ctx: &DefContext,
    mc: &MaurerCartan,
    t: &Tree,
    args: &[DefArg],
) -> Result<Cochain, TreeError> {
    let children: Vec<Cochain> = t
        .children
        .iter()
        .map(|c| eval_tree(ctx, mc, c, args))
        .collect::<Result<_, _>>()?;
    // The base argument, when labeled, is consumed before the child
    // operations; each child operation then jumps over it and over the
    // arguments of its left siblings.
    let (base, mut consumed) = match t.kind {
        VertexKind::RoundNeutral => (mc.0.closed.clone(), 0),
        VertexKind::SquareNeutral => (mc.0.open.clone(), 0),
        VertexKind::Closed(l) | VertexKind::Open(l) => {
            let arg = &args[l as usize - 1];
            (arg.cochain().clone(), arg.degree())
        }
    };
    let mut sign = ctx.field().one();
    for child in &t.children {
        let op_deg = -(neutral_count(child) as i64);
        if (op_deg * consumed) % 2 != 0 {
            sign = sign.mul(&ctx.field().from_i64(-1));
        }
        consumed += args_degree(child, args);
    }
    let refs: Vec<&Cochain> = children.iter().collect();
    Ok(ctx.braces(&base, &refs).scale(&sign))
}

/// Linear extension over a formal sum.
pub fn brace_eval_sum(
    ctx: &DefContext,
    mc: &MaurerCartan,
    sum: &FormalSum,
    args: &[DefArg],
) -> Result<Cochain, TreeError> {
    let target = match sum.signature().output() {
        Color::Closed => Target::Closed,
        Color::Open => Target::Open,
    };
    let mut out = ctx.zero_cochain(target);
    for (e, c) in sum.terms() {
        let v = brace_eval(ctx, mc, e, args)?;
        out = out.add(&v.scale(&ctx.field().from_i64(c)));
    }
    Ok(out)
}

fn d_value(ctx: &DefContext, mc: &MaurerCartan, v: &Cochain) -> Cochain {
    match v.target {
        Target::Closed => ctx.d_closed(mc, v),
        Target::Open => ctx.d_open(mc, v),
    }
}

fn d_arg(ctx: &DefContext, mc: &MaurerCartan, a: &DefArg) -> DefArg {
    match a {
        DefArg::Closed(c) => DefArg::Closed(ctx.d_closed(mc, c)),
        DefArg::Open(c) => DefArg::Open(ctx.d_open(mc, c)),
    }
}

/// One verified law with a counterexample seed on failure.
#[derive(Debug, Clone, Serialize)]
pub struct LawOutcome {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub witness: Option<String>,
}

/// Random homogeneous arguments matching the signature of `g`.
fn random_args(ctx: &DefContext, g: &BasisElement, rng: &mut ChaCha8Rng) -> Vec<DefArg> {
    g.signature()
        .inputs()
        .iter()
        .map(|c| match c {
            Color::Closed => {
                let arity = rng.gen_range(1..=ctx.bound.min(3));
                DefArg::Closed(ctx.random_cochain(rng, Target::Closed, arity))
            }
            Color::Open => {
                let arity = rng.gen_range(0..=ctx.bound.min(2));
                DefArg::Open(ctx.random_cochain(rng, Target::Open, arity))
            }
        })
        .collect()
}

/// Checks the chain-map law for the action of one generator on random
/// argument tuples: the differential of the evaluated tree equals the
/// evaluated differential plus the signed sum over differentiated
/// arguments.
pub fn verify_action_law(
    ctx: &DefContext,
    g: &BasisElement,
    samples: usize,
    seed: u64,
) -> LawOutcome {
    let mc = ctx.mc_element();
    let dg = rbr::differential(&FormalSum::from_element(g.clone()));
    let g_sign = ctx
        .field()
        .from_i64(if g.degree(Grading::Lambda) % 2 == 0 { 1 } else { -1 });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sample in 0..samples {
        let args = random_args(ctx, g, &mut rng);
        let value = brace_eval(ctx, &mc, g, &args).expect("well-typed arguments");
        let lhs = d_value(ctx, &mc, &value);
        let mut rhs = brace_eval_sum(ctx, &mc, &dg, &args).expect("well-typed arguments");
        let mut running = ctx.field().one();
        for i in 0..args.len() {
            let mut modified: Vec<DefArg> = args.to_vec();
            modified[i] = d_arg(ctx, &mc, &args[i]);
            let term = brace_eval(ctx, &mc, g, &modified).expect("well-typed arguments");
            rhs = rhs.add(&term.scale(&g_sign.mul(&running)));
            if args[i].degree() % 2 != 0 {
                running = running.mul(&ctx.field().from_i64(-1));
            }
        }
        if lhs != rhs {
            return LawOutcome {
                name: format!("action_chain_map({g})"),
                passed: false,
                samples: sample + 1,
                witness: Some(format!("seed {seed}, sample {sample}")),
            };
        }
    }
    LawOutcome {
        name: format!("action_chain_map({g})"),
        passed: true,
        samples,
        witness: None,
    }
}

/// Every generator with at most `max_inputs` inputs.
pub fn generators_up_to(max_inputs: usize) -> Vec<BasisElement> {
    let mut out = Vec::new();
    out.push(rbr::generator(GeneratorKind::IdClosed).unwrap());
    out.push(rbr::generator(GeneratorKind::IdOpen).unwrap());
    if max_inputs >= 2 {
        out.push(rbr::generator(GeneratorKind::MuOpen).unwrap());
    }
    for k in 2..=max_inputs {
        out.push(rbr::generator(GeneratorKind::Partial(k)).unwrap());
    }
    for k in 1..=max_inputs {
        out.push(rbr::generator(GeneratorKind::G(k)).unwrap());
    }
    for k in 0..max_inputs {
        out.push(rbr::generator(GeneratorKind::M(k)).unwrap());
    }
    for k in 0..max_inputs {
        out.push(rbr::generator(GeneratorKind::Gamma(k)).unwrap());
    }
    out
}

/// The chain-map law for every generator with at most four inputs; this
/// realizes the four generating-operation identities at sampled points.
/// Generators are sharded across workers with one seed each; the report
/// order is by generator, so the merge is deterministic.
pub fn verify_appendix_relations(
    ctx: &DefContext,
    samples: usize,
    seed: u64,
) -> Vec<LawOutcome> {
    use rayon::prelude::*;
    generators_up_to(4)
        .into_par_iter()
        .enumerate()
        .map(|(i, g)| verify_action_law(ctx, &g, samples, seed.wrapping_add(i as u64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::action::dual_numbers;
    use super::super::field::Field;
    use super::*;

    fn ctx() -> DefContext {
        DefContext::new(dual_numbers(Field::Fp(101)), 4)
    }

    #[test]
    fn single_brace_is_circle_product() {
        let ctx = ctx();
        let mc = ctx.mc_element();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m11 = rbr::generator(GeneratorKind::M(1)).unwrap();
        for _ in 0..20 {
            let arity_tmp = rng.gen_range(1..=3);
            let x = ctx.random_cochain(&mut rng, Target::Closed, arity_tmp);
            let arity_tmp = rng.gen_range(1..=3);
            let y = ctx.random_cochain(&mut rng, Target::Closed, arity_tmp);
            let via_tree = brace_eval(
                &ctx,
                &mc,
                &m11,
                &[DefArg::Closed(x.clone()), DefArg::Closed(y.clone())],
            )
            .unwrap();
            assert_eq!(via_tree, ctx.compose(&x, &y));
        }
    }

    #[test]
    fn mu_open_is_the_associative_convolution() {
        let ctx = ctx();
        let mc = ctx.mc_element();
        let mu = rbr::generator(GeneratorKind::MuOpen).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let arity_tmp = rng.gen_range(0..=2);
            let a = ctx.random_cochain(&mut rng, Target::Open, arity_tmp);
            let arity_tmp = rng.gen_range(0..=2);
            let b = ctx.random_cochain(&mut rng, Target::Open, arity_tmp);
            let arity_tmp = rng.gen_range(0..=2);
            let c = ctx.random_cochain(&mut rng, Target::Open, arity_tmp);
            let ab = brace_eval(
                &ctx,
                &mc,
                &mu,
                &[DefArg::Open(a.clone()), DefArg::Open(b.clone())],
            )
            .unwrap();
            assert_eq!(ab, ctx.convolve(&a, &b));
            let abc1 = ctx.convolve(&ab, &c);
            let abc2 = ctx.convolve(&a, &ctx.convolve(&b, &c));
            assert_eq!(abc1, abc2);
        }
    }

    #[test]
    fn g1_is_whistle_insertion() {
        let ctx = ctx();
        let mc = ctx.mc_element();
        let g1 = rbr::generator(GeneratorKind::G(1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let arity_tmp = rng.gen_range(1..=3);
            let y = ctx.random_cochain(&mut rng, Target::Closed, arity_tmp);
            let via_tree = brace_eval(&ctx, &mc, &g1, &[DefArg::Closed(y.clone())]).unwrap();
            assert_eq!(via_tree, ctx.compose(&mc.0.open, &y));
        }
    }

    #[test]
    fn gamma_one_blow_up_acts_as_two_sided_whistle_multiplication() {
        // The differential of the one-input whistle corolla, computed in
        // the tree operad, evaluates to the difference of the two
        // convolution orders.
        let ctx = ctx();
        let mc = ctx.mc_element();
        let gamma = rbr::generator(GeneratorKind::Gamma(1)).unwrap();
        let d = rbr::differential(&FormalSum::from_element(gamma));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let arity_tmp = rng.gen_range(0..=2);
            let x = ctx.random_cochain(&mut rng, Target::Open, arity_tmp);
            let arity_tmp = rng.gen_range(1..=3);
            let y = ctx.random_cochain(&mut rng, Target::Closed, arity_tmp);
            let via_trees = brace_eval_sum(
                &ctx,
                &mc,
                &d,
                &[DefArg::Open(x.clone()), DefArg::Closed(y.clone())],
            )
            .unwrap();
            let whistle_y = ctx.compose(&mc.0.open, &y);
            let dx = x
                .arities()
                .next()
                .map(|m| Cochain::component_degree(Target::Open, m))
                .unwrap_or(0);
            let dy = y
                .arities()
                .next()
                .map(|m| Cochain::component_degree(Target::Closed, m))
                .unwrap_or(0);
            // Left term: the whistle operation jumps over the open
            // argument. Right term: crossing sign for the reversed word.
            let route = ctx.field().from_i64(if dx % 2 == 0 { 1 } else { -1 });
            let cross = ctx
                .field()
                .from_i64(if (dx * dy) % 2 == 0 { 1 } else { -1 });
            let expected = ctx
                .convolve(&x, &whistle_y)
                .scale(&route)
                .sub(&ctx.convolve(&whistle_y, &x).scale(&cross));
            assert_eq!(via_trees, expected);
        }
    }

    #[test]
    fn chain_map_law_for_small_generators() {
        let ctx = ctx();
        for g in generators_up_to(3) {
            let outcome = verify_action_law(&ctx, &g, 25, 99);
            assert!(outcome.passed, "{} failed: {:?}", outcome.name, outcome.witness);
        }
    }
}
