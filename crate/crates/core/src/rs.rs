//! The relative surjections operad: normal forms for trees whose neutral
//! round vertices are binary and neutral square vertices unary, the
//! simplicial differential, composition, and the projection morphism from
//! the brace operad.
//!
//! Classes are keyed by a normal-form representative: round-round
//! reassociations are oriented toward right combs, and a square vertex
//! over a round vertex splits into a word. Each oriented rewrite step
//! carries a sign (a fixed minus times the determinant-transport parity),
//! so the projection is a chain map; signed confluence is asserted by
//! test, not assumed.

use std::collections::{BTreeMap, BTreeSet};

use crate::idtree::{reorder_sign, IdNode, IdWord};
use crate::rbr::{self, FormalSum};
use crate::trees::{validate, BasisElement, Signature, TreeError, VertexKind, Word};

/// A basis class of the relative surjections operad, stored as its
/// normal-form representative. No determinant is carried.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSBasis(BasisElement);

impl RSBasis {
    pub fn representative(&self) -> &BasisElement {
        &self.0
    }

    pub fn signature(&self) -> &Signature {
        self.0.signature()
    }

    /// Lambda degree: minus the number of neutral vertices; constant on
    /// the class since the relations are homogeneous.
    pub fn degree(&self) -> i64 {
        self.0.degree(crate::trees::Grading::Lambda)
    }
}

impl std::fmt::Display for RSBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A finite integer combination of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsSum {
    signature: Signature,
    terms: BTreeMap<RSBasis, i64>,
}

impl RsSum {
    pub fn zero(signature: Signature) -> RsSum {
        RsSum { signature, terms: BTreeMap::new() }
    }

    pub fn from_class(c: RSBasis) -> RsSum {
        let mut s = RsSum::zero(c.signature().clone());
        s.add_term(c, 1);
        s
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RSBasis, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &RSBasis) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: RSBasis, c: i64) {
        if c == 0 {
            return;
        }
        if let Some(v) = self.terms.get_mut(&e) {
            *v += c;
            if *v == 0 {
                self.terms.remove(&e);
            }
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn add(&mut self, other: &RsSum) {
        for (e, c) in other.terms() {
            self.add_term(e.clone(), c);
        }
    }

    pub fn scaled(&self, k: i64) -> RsSum {
        let mut out = RsSum::zero(self.signature.clone());
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<_> = self
            .terms()
            .map(|(e, c)| serde_json::json!({ "coeff": c, "element": e.representative().to_string() }))
            .collect();
        serde_json::Value::Array(items)
    }
}

/// Whether every neutral round vertex is binary and every neutral square
/// vertex unary.
pub fn in_t21(w: &Word) -> bool {
    fn ok(t: &crate::trees::Tree) -> bool {
        let here = match t.kind {
            VertexKind::RoundNeutral => t.children.len() == 2,
            VertexKind::SquareNeutral => t.children.len() == 1,
            _ => true,
        };
        here && t.children.iter().all(ok)
    }
    w.trees.iter().all(ok)
}

/// A rewrite site: either a round-round reassociation or a word split of
/// a square vertex over a round vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Redex {
    /// Reassociate at the round neutral vertex with this id.
    RightComb(u32),
    /// Split the word tree whose square neutral root has this id.
    WordSplit(u32),
}

pub(crate) fn redexes(w: &IdWord) -> Vec<Redex> {
    let mut out = Vec::new();
    fn walk(n: &IdNode, out: &mut Vec<Redex>) {
        if n.kind == VertexKind::RoundNeutral
            && n.children.first().map(|c| c.kind) == Some(VertexKind::RoundNeutral)
        {
            out.push(Redex::RightComb(n.id));
        }
        for c in &n.children {
            walk(c, out);
        }
    }
    for t in &w.trees {
        if t.kind == VertexKind::SquareNeutral
            && t.children.len() == 1
            && t.children[0].kind == VertexKind::RoundNeutral
        {
            out.push(Redex::WordSplit(t.id));
        }
        walk(t, &mut out);
    }
    out
}

/// Applies one rewrite step, returning the transported determinant sign.
pub(crate) fn apply_redex(w: &IdWord, redex: Redex) -> (IdWord, i64) {
    let before = w.canonical_odd();
    let after = match redex {
        Redex::RightComb(id) => {
            fn rewrite(n: &IdNode, id: u32) -> IdNode {
                if n.id == id {
                    // (a (b t1 t2) t3) -> (a t1 (b t2 t3)), ids kept.
                    let b = &n.children[0];
                    debug_assert_eq!(b.kind, VertexKind::RoundNeutral);
                    let t1 = b.children[0].clone();
                    let t2 = b.children[1].clone();
                    let t3 = n.children[1].clone();
                    return IdNode {
                        kind: VertexKind::RoundNeutral,
                        id: n.id,
                        children: vec![
                            t1,
                            IdNode {
                                kind: VertexKind::RoundNeutral,
                                id: b.id,
                                children: vec![t2, t3],
                            },
                        ],
                    };
                }
                IdNode {
                    kind: n.kind,
                    id: n.id,
                    children: n.children.iter().map(|c| rewrite(c, id)).collect(),
                }
            }
            IdWord {
                trees: w.trees.iter().map(|t| rewrite(t, id)).collect(),
            }
        }
        Redex::WordSplit(id) => {
            let mut trees = Vec::new();
            for t in &w.trees {
                if t.id == id {
                    // (s (r t1 t2)) -> (s t1)(s t2); the square keeps its
                    // id, the round vertex becomes the second square.
                    let r = &t.children[0];
                    trees.push(IdNode {
                        kind: VertexKind::SquareNeutral,
                        id: t.id,
                        children: vec![r.children[0].clone()],
                    });
                    trees.push(IdNode {
                        kind: VertexKind::SquareNeutral,
                        id: r.id,
                        children: vec![r.children[1].clone()],
                    });
                } else {
                    trees.push(t.clone());
                }
            }
            IdWord { trees }
        }
    };
    let sign = -reorder_sign(&before, &after.canonical_odd());
    (after, sign)
}

fn normal_form_word(w: &Word) -> (Word, i64) {
    let mut word = IdWord::from_word(w);
    let mut sign = 1i64;
    loop {
        let rs = redexes(&word);
        let Some(&r) = rs.first() else { break };
        let (next, s) = apply_redex(&word, r);
        word = next;
        sign *= s;
    }
    (word.strip(), sign)
}

/// The unique normal form of the class of `e`, which must lie in the
/// binary/unary tree set.
pub fn normal_form(e: &BasisElement) -> Result<RSBasis, TreeError> {
    Ok(normal_form_signed(e)?.0)
}

/// Normal form together with the sign relating the canonical determinant
/// of `e` to that of the representative.
pub fn normal_form_signed(e: &BasisElement) -> Result<(RSBasis, i64), TreeError> {
    if !in_t21(e.word()) {
        return Err(TreeError::Domain(format!(
            "{e} has a neutral vertex of the wrong arity"
        )));
    }
    let (word, sign) = normal_form_word(e.word());
    let rep = validate(word, e.signature())?;
    Ok((RSBasis(rep), sign))
}

/// The projection morphism: kills basis elements outside the
/// binary/unary set and rewrites the rest to their class.
pub fn phi(a: &FormalSum) -> RsSum {
    let mut out = RsSum::zero(a.signature().clone());
    for (e, c) in a.terms() {
        if in_t21(e.word()) {
            let (cls, sign) = normal_form_signed(e).expect("membership checked");
            out.add_term(cls, c * sign);
        }
    }
    out
}

/// The differential, defined on normal forms as the projection of the
/// brace-operad differential.
pub fn differential_rs(a: &RsSum) -> RsSum {
    let mut out = RsSum::zero(a.signature().clone());
    for (cls, c) in a.terms() {
        let d = rbr::differential(&FormalSum::from_element(cls.0.clone()));
        out.add(&phi(&d).scaled(c));
    }
    out
}

/// Composition of classes: compose representatives, discard terms outside
/// the binary/unary set, and normalize.
pub fn compose_rs(a: &RsSum, slot: usize, b: &RsSum) -> Result<RsSum, TreeError> {
    let out_sig = a.signature().splice(slot, b.signature())?;
    let mut out = RsSum::zero(out_sig);
    for (ca, ka) in a.terms() {
        for (cb, kb) in b.terms() {
            let composed = rbr::compose_basis(&ca.0, slot, &cb.0)?;
            out.add(&phi(&composed).scaled(ka * kb));
        }
    }
    Ok(out)
}

/// Complete enumeration of the classes over a signature, optionally
/// filtered by Lambda degree, in a deterministic order.
pub fn enumerate_basis_rs(sig: &Signature, degree: Option<i64>) -> Vec<RSBasis> {
    let mut seen = BTreeSet::new();
    for e in rbr::enumerate_basis(sig, degree) {
        if in_t21(e.word()) {
            seen.insert(normal_form(&e).expect("membership checked"));
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|c| (c.0.word().neutral_count(), c.0.to_string()));
    out
}

/// The unsigned one-step faces of a class: every blow-up component of a
/// representative that stays in the binary/unary set, as classes.
pub fn faces(cls: &RSBasis) -> Vec<RSBasis> {
    let mut out = BTreeSet::new();
    let e = &cls.0;
    for idx in 0..rbr::vertex_count(e) {
        for (term, _) in rbr::blow_up_components(e, idx) {
            if in_t21(term.word()) {
                out.insert(normal_form(&term).expect("membership checked"));
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbr::{
        compose_at, differential, enumerate_basis, generator, signatures_with_inputs,
        GeneratorKind,
    };
    use crate::trees::parse;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn sig(s: &str) -> Signature {
        Signature::parse(s).unwrap()
    }

    fn elem(text: &str, s: &str) -> BasisElement {
        parse(text, &sig(s)).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let e = elem("(s (n c1 c2))", "cc;o");
        assert_eq!(
            normal_form(&e).unwrap().representative().to_string(),
            "(s c1) (s c2)"
        );
        let left = elem("(n (n c1 c2) c3)", "ccc;c");
        assert_eq!(
            normal_form(&left).unwrap().representative().to_string(),
            "(n c1 (n c2 c3))"
        );
        // Fixed points are their own normal forms.
        let fixed = elem("(n c1 (n c2 c3))", "ccc;c");
        assert_eq!(normal_form(&fixed).unwrap().representative(), &fixed);
        assert!(normal_form(&elem("(n c1 c2 c3)", "ccc;c")).is_err());
    }

    #[test]
    fn normal_form_is_idempotent_and_confluent_with_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            for s in signatures_with_inputs(n) {
                for e in enumerate_basis(&s, None) {
                    if !in_t21(e.word()) {
                        continue;
                    }
                    let (nf, sign) = normal_form_signed(&e).unwrap();
                    let (nf2, sign2) = normal_form_signed(nf.representative()).unwrap();
                    assert_eq!(nf2, nf);
                    assert_eq!(sign2, 1);
                    // Random rewrite orders reach the same signed result.
                    for _ in 0..4 {
                        let mut word = IdWord::from_word(e.word());
                        let mut acc = 1i64;
                        loop {
                            let rs = redexes(&word);
                            if rs.is_empty() {
                                break;
                            }
                            let r = rs[rng.gen_range(0..rs.len())];
                            let (next, s) = apply_redex(&word, r);
                            word = next;
                            acc *= s;
                        }
                        assert_eq!(word.strip(), nf.representative().word().clone());
                        assert_eq!(acc, sign, "sign differs for {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn relations_are_degree_homogeneous() {
        // Every rewrite step preserves the neutral-vertex count.
        for n in 1..=4 {
            for s in signatures_with_inputs(n) {
                for e in enumerate_basis(&s, None) {
                    if !in_t21(e.word()) {
                        continue;
                    }
                    let nf = normal_form(&e).unwrap();
                    assert_eq!(
                        nf.representative().word().neutral_count(),
                        e.word().neutral_count()
                    );
                }
            }
        }
    }

    #[test]
    fn enumerate_rs_examples() {
        let cc = enumerate_basis_rs(&sig("cc;c"), Some(-1));
        assert_eq!(cc.len(), 2);
        let oo = enumerate_basis_rs(&sig("oo;o"), None);
        assert_eq!(oo.len(), 2);
        let co = enumerate_basis_rs(&sig("c;o"), None);
        assert_eq!(co.len(), 1);
        assert_eq!(co[0].representative().to_string(), "(s c1)");
    }

    #[test]
    fn differential_of_m11_class() {
        let m = normal_form(&generator(GeneratorKind::M(1)).unwrap()).unwrap();
        let d = differential_rs(&RsSum::from_class(m));
        assert_eq!(d.len(), 2);
        let a = normal_form(&elem("(n c1 c2)", "cc;c")).unwrap();
        let b = normal_form(&elem("(n c2 c1)", "cc;c")).unwrap();
        assert_eq!(d.coeff(&a), -1);
        assert_eq!(d.coeff(&b), -1);
    }

    #[test]
    fn differential_of_g1_class() {
        let g = normal_form(&generator(GeneratorKind::G(1)).unwrap()).unwrap();
        assert!(differential_rs(&RsSum::from_class(g)).is_zero());
    }

    #[test]
    fn d_squared_rs_small() {
        for n in 1..=3 {
            for s in signatures_with_inputs(n) {
                for cls in enumerate_basis_rs(&s, None) {
                    let dd = differential_rs(&differential_rs(&RsSum::from_class(cls.clone())));
                    assert!(dd.is_zero(), "d^2{cls} != 0");
                }
            }
        }
    }

    #[test]
    fn figure_composition_with_mu_open() {
        // Whistle over one closed input composed with the open product.
        let a = RsSum::from_class(normal_form(&elem("(o1 c2)", "oc;o")).unwrap());
        let mu = RsSum::from_class(
            normal_form(&generator(GeneratorKind::MuOpen).unwrap()).unwrap(),
        );
        let result = compose_rs(&a, 1, &mu).unwrap();
        assert_eq!(result.len(), 2);
        let t1 = normal_form(&elem("(o1 c3) o2", "ooc;o")).unwrap();
        let t2 = normal_form(&elem("o1 (o2 c3)", "ooc;o")).unwrap();
        assert_eq!(result.coeff(&t1), 1);
        assert_eq!(result.coeff(&t2), 1);
    }

    #[test]
    fn compose_with_identity() {
        let idc = RsSum::from_class(normal_form(&generator(GeneratorKind::IdClosed).unwrap()).unwrap());
        let m = RsSum::from_class(normal_form(&generator(GeneratorKind::M(1)).unwrap()).unwrap());
        for slot in 1..=2 {
            assert_eq!(compose_rs(&m, slot, &idc).unwrap(), m);
        }
    }

    #[test]
    fn phi_on_generators() {
        let p2 = generator(GeneratorKind::Partial(2)).unwrap();
        let f = phi(&FormalSum::from_element(p2.clone()));
        assert_eq!(f.len(), 1);
        assert_eq!(f.coeff(&normal_form(&p2).unwrap()), 1);
        let p3 = generator(GeneratorKind::Partial(3)).unwrap();
        assert!(phi(&FormalSum::from_element(p3)).is_zero());
    }

    #[test]
    fn phi_is_a_chain_map_small() {
        for n in 1..=3 {
            for s in signatures_with_inputs(n) {
                for e in enumerate_basis(&s, None) {
                    let fe = FormalSum::from_element(e.clone());
                    let lhs = phi(&differential(&fe));
                    let rhs = differential_rs(&phi(&fe));
                    assert_eq!(lhs, rhs, "chain map fails at {e}");
                }
            }
        }
    }

    #[test]
    fn phi_respects_composition_samples() {
        let cases = [
            ("(o1 c2)", "oc;o", 1usize, "(s c1 c2)", "cc;o"),
            ("(c1 c2)", "cc;c", 1, "(c1 c2)", "cc;c"),
            ("(n c1 c2)", "cc;c", 2, "(c1 c2)", "cc;c"),
            ("(s c1) (o3 c2)", "cco;o", 3, "o1 o2", "oo;o"),
            ("(o1 c2)", "oc;o", 2, "(n c1 c2)", "cc;c"),
        ];
        for (ta, sa, slot, tb, sb) in cases {
            let a = elem(ta, sa);
            let b = elem(tb, sb);
            let fa = FormalSum::from_element(a.clone());
            let fb = FormalSum::from_element(b.clone());
            let lhs = phi(&compose_at(&fa, slot, &fb).unwrap());
            let rhs = compose_rs(&phi(&fa), slot, &phi(&fb)).unwrap();
            assert_eq!(lhs, rhs, "phi compose fails at ({ta}) o_{slot} ({tb})");
        }
    }

    #[test]
    fn faces_of_m12() {
        let m = normal_form(&generator(GeneratorKind::M(2)).unwrap()).unwrap();
        let f = faces(&m);
        assert_eq!(f.len(), 3);
    }
}
