//! The dg-operad of relative braces in the closed-suspension convention.
//!
//! Basis elements are the trees and words of [`crate::trees`]; the
//! differential blows vertices up into two, and composition substitutes a
//! word for a labeled vertex, summing over nondecreasing maps from the
//! vertex inputs to the angles of the substituted word. All determinant
//! bookkeeping is normalized to canonical vertex order, so coefficients
//! carry every reordering sign.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::idtree::{reorder_sign, IdNode, IdWord};
use crate::trees::{
    validate, BasisElement, Color, Grading, Signature, Tree, TreeError, VertexKind,
    Word,
};

/// A finite integer combination of basis elements over one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    signature: Signature,
    terms: BTreeMap<BasisElement, i64>,
}

impl FormalSum {
    pub fn zero(signature: Signature) -> FormalSum {
        FormalSum { signature, terms: BTreeMap::new() }
    }

    pub fn from_element(e: BasisElement) -> FormalSum {
        let mut s = FormalSum::zero(e.signature().clone());
        s.add_term(e, 1);
        s
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, i64)> {
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

    pub fn coeff(&self, e: &BasisElement) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: BasisElement, c: i64) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(e.signature(), &self.signature);
        if let Some(v) = self.terms.get_mut(&e) {
            *v += c;
            if *v == 0 {
                self.terms.remove(&e);
            }
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn add(&mut self, other: &FormalSum) {
        for (e, c) in other.terms() {
            self.add_term(e.clone(), c);
        }
    }

    pub fn scaled(&self, k: i64) -> FormalSum {
        let mut out = FormalSum::zero(self.signature.clone());
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn sub(&mut self, other: &FormalSum) {
        self.add(&other.scaled(-1));
    }

    /// The common Lambda degree of all terms, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|e| e.degree(Grading::Lambda));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Serialization used by the CLI: a JSON array of coefficient/element pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<_> = self
            .terms()
            .map(|(e, c)| {
                serde_json::json!({ "coeff": c, "element": e.to_string() })
            })
            .collect();
        serde_json::Value::Array(items)
    }
}

/// The generators of the operad, as named corollas and words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Round neutral corolla with `k >= 2` closed inputs.
    Partial(usize),
    /// Square neutral corolla with `k >= 1` closed inputs.
    G(usize),
    /// Closed root with `k >= 0` closed inputs.
    M(usize),
    /// Open root with `k >= 0` closed inputs.
    Gamma(usize),
    IdClosed,
    IdOpen,
    /// The word of two open identities.
    MuOpen,
}

/// Builds the corolla or word of a generator with its standard labeling.
pub fn generator(kind: GeneratorKind) -> Result<BasisElement, TreeError> {
    let closed = |l: u32| Tree::leaf(VertexKind::Closed(l));
    let (word, sig) = match kind {
        GeneratorKind::Partial(k) => {
            if k < 2 {
                return Err(TreeError::Domain(format!("Partial({k}) needs k >= 2")));
            }
            let children = (1..=k as u32).map(closed).collect();
            (
                Word::single(Tree::node(VertexKind::RoundNeutral, children)),
                Signature::new(vec![Color::Closed; k], Color::Closed)?,
            )
        }
        GeneratorKind::G(k) => {
            if k < 1 {
                return Err(TreeError::Domain(format!("G({k}) needs k >= 1")));
            }
            let children = (1..=k as u32).map(closed).collect();
            (
                Word::single(Tree::node(VertexKind::SquareNeutral, children)),
                Signature::new(vec![Color::Closed; k], Color::Open)?,
            )
        }
        GeneratorKind::M(k) => {
            let children = (2..=k as u32 + 1).map(closed).collect();
            (
                Word::single(Tree::node(VertexKind::Closed(1), children)),
                Signature::new(vec![Color::Closed; k + 1], Color::Closed)?,
            )
        }
        GeneratorKind::Gamma(k) => {
            let children = (2..=k as u32 + 1).map(closed).collect();
            let mut inputs = vec![Color::Open];
            inputs.extend(vec![Color::Closed; k]);
            (
                Word::single(Tree::node(VertexKind::Open(1), children)),
                Signature::new(inputs, Color::Open)?,
            )
        }
        GeneratorKind::IdClosed => (
            Word::single(closed(1)),
            Signature::new(vec![Color::Closed], Color::Closed)?,
        ),
        GeneratorKind::IdOpen => (
            Word::single(Tree::leaf(VertexKind::Open(1))),
            Signature::new(vec![Color::Open], Color::Open)?,
        ),
        GeneratorKind::MuOpen => (
            Word::new(vec![
                Tree::leaf(VertexKind::Open(1)),
                Tree::leaf(VertexKind::Open(2)),
            ]),
            Signature::new(vec![Color::Open, Color::Open], Color::Open)?,
        ),
    };
    validate(word, &sig)
}

/// One blow-up of a single vertex: the new word, the equation sign, and
/// the two replacement vertices in wedge order.
struct RawBlowUp {
    word: IdWord,
    sign: i64,
    v1: (u32, VertexKind),
    v2: (u32, VertexKind),
}

fn subtree_blow_ups(node: &IdNode, target: u32, fresh: &mut u32, out: &mut Vec<RawBlowUp>) {
    // Collect blow-ups of `target` inside the tree rooted at `node`,
    // expressed as replacement subtrees. Word-level splits are handled by
    // the caller since they change the word length.
    if node.id == target {
        let k = node.children.len();
        let d = &node.children;
        match node.kind {
            VertexKind::RoundNeutral => {
                // Inner splits with both new round vertices at least binary.
                for i in 1..=k {
                    for j in 1..=k.saturating_sub(2) {
                        if i + j > k {
                            break;
                        }
                        let id1 = bump(fresh);
                        let id2 = bump(fresh);
                        let inner = IdNode {
                            kind: VertexKind::RoundNeutral,
                            id: id2,
                            children: d[i - 1..i + j].to_vec(),
                        };
                        let mut children = d[..i - 1].to_vec();
                        children.push(inner);
                        children.extend_from_slice(&d[i + j..]);
                        out.push(RawBlowUp {
                            word: IdWord {
                                trees: vec![IdNode { kind: VertexKind::RoundNeutral, id: id1, children }],
                            },
                            sign: -1,
                            v1: (id1, VertexKind::RoundNeutral),
                            v2: (id2, VertexKind::RoundNeutral),
                        });
                    }
                }
            }
            VertexKind::Closed(label) => {
                // Inner splits: the closed vertex stays at the bottom.
                for i in 1..=k {
                    for j in 1..=k {
                        if i + j > k {
                            break;
                        }
                        let id1 = bump(fresh);
                        let id2 = bump(fresh);
                        let inner = IdNode {
                            kind: VertexKind::RoundNeutral,
                            id: id2,
                            children: d[i - 1..i + j].to_vec(),
                        };
                        let mut children = d[..i - 1].to_vec();
                        children.push(inner);
                        children.extend_from_slice(&d[i + j..]);
                        out.push(RawBlowUp {
                            word: IdWord {
                                trees: vec![IdNode { kind: VertexKind::Closed(label), id: id1, children }],
                            },
                            sign: 1,
                            v1: (id1, VertexKind::Closed(label)),
                            v2: (id2, VertexKind::RoundNeutral),
                        });
                    }
                }
                // Cyclic splits: an arc through the output moves a prefix
                // and a suffix of the inputs below the vertex, onto a new
                // round neutral root. The pair (a, b) leaves children
                // a+1..b-1 on the closed vertex; (0, k+1) is excluded
                // because the new root would have a single input.
                for a in 0..=k {
                    for b in a + 1..=k + 1 {
                        if (a, b) == (0, k + 1) {
                            continue;
                        }
                        let id1 = bump(fresh);
                        let id2 = bump(fresh);
                        let closed = IdNode {
                            kind: VertexKind::Closed(label),
                            id: id2,
                            children: d[a..b - 1].to_vec(),
                        };
                        let mut children = d[..a].to_vec();
                        children.push(closed);
                        children.extend_from_slice(&d[b - 1..]);
                        out.push(RawBlowUp {
                            word: IdWord {
                                trees: vec![IdNode { kind: VertexKind::RoundNeutral, id: id1, children }],
                            },
                            sign: -1,
                            v1: (id1, VertexKind::RoundNeutral),
                            v2: (id2, VertexKind::Closed(label)),
                        });
                    }
                }
            }
            VertexKind::Open(_) | VertexKind::SquareNeutral => {
                // Inner splits only; word splits are produced by the caller.
                let (sign, keep) = match node.kind {
                    VertexKind::Open(_) => (1, node.kind),
                    _ => (-1, VertexKind::SquareNeutral),
                };
                for i in 1..=k {
                    for j in 1..=k {
                        if i + j > k {
                            break;
                        }
                        let id1 = bump(fresh);
                        let id2 = bump(fresh);
                        let inner = IdNode {
                            kind: VertexKind::RoundNeutral,
                            id: id2,
                            children: d[i - 1..i + j].to_vec(),
                        };
                        let mut children = d[..i - 1].to_vec();
                        children.push(inner);
                        children.extend_from_slice(&d[i + j..]);
                        out.push(RawBlowUp {
                            word: IdWord {
                                trees: vec![IdNode { kind: keep, id: id1, children }],
                            },
                            sign,
                            v1: (id1, keep),
                            v2: (id2, VertexKind::RoundNeutral),
                        });
                    }
                }
            }
        }
        return;
    }
    for (ci, child) in node.children.iter().enumerate() {
        let mut local = Vec::new();
        subtree_blow_ups(child, target, fresh, &mut local);
        for mut raw in local {
            debug_assert_eq!(raw.word.trees.len(), 1);
            let replacement = raw.word.trees.pop().expect("single tree");
            let mut children = node.children.clone();
            children[ci] = replacement;
            out.push(RawBlowUp {
                word: IdWord {
                    trees: vec![IdNode { kind: node.kind, id: node.id, children }],
                },
                sign: raw.sign,
                v1: raw.v1,
                v2: raw.v2,
            });
        }
    }
}

fn bump(fresh: &mut u32) -> u32 {
    let id = *fresh;
    *fresh += 1;
    id
}

fn word_blow_ups(word: &IdWord, target: u32) -> Vec<RawBlowUp> {
    let mut fresh = word.max_id() + 1;
    let mut out = Vec::new();
    for (ti, tree) in word.trees.iter().enumerate() {
        // Blow-ups that stay inside one tree.
        let mut local = Vec::new();
        subtree_blow_ups(tree, target, &mut fresh, &mut local);
        for mut raw in local {
            let replacement = raw.word.trees.pop().expect("single tree");
            let mut trees = word.trees.clone();
            trees[ti] = replacement;
            out.push(RawBlowUp { word: IdWord { trees }, sign: raw.sign, v1: raw.v1, v2: raw.v2 });
        }
        // Word splits at a square-shaped root.
        if tree.id == target {
            let k = tree.children.len();
            let d = &tree.children;
            match tree.kind {
                VertexKind::Open(label) => {
                    // Right splits: the open root keeps a prefix, a new
                    // square neutral root takes the nonempty suffix.
                    for i in 0..k {
                        let id1 = bump(&mut fresh);
                        let id2 = bump(&mut fresh);
                        let first = IdNode {
                            kind: VertexKind::Open(label),
                            id: id1,
                            children: d[..i].to_vec(),
                        };
                        let second = IdNode {
                            kind: VertexKind::SquareNeutral,
                            id: id2,
                            children: d[i..].to_vec(),
                        };
                        let mut trees = word.trees.clone();
                        trees.splice(ti..=ti, [first, second]);
                        out.push(RawBlowUp {
                            word: IdWord { trees },
                            sign: 1,
                            v1: (id1, VertexKind::Open(label)),
                            v2: (id2, VertexKind::SquareNeutral),
                        });
                    }
                    // Left splits: a new square neutral root takes the
                    // nonempty prefix.
                    for i in 1..=k {
                        let id1 = bump(&mut fresh);
                        let id2 = bump(&mut fresh);
                        let first = IdNode {
                            kind: VertexKind::SquareNeutral,
                            id: id1,
                            children: d[..i].to_vec(),
                        };
                        let second = IdNode {
                            kind: VertexKind::Open(label),
                            id: id2,
                            children: d[i..].to_vec(),
                        };
                        let mut trees = word.trees.clone();
                        trees.splice(ti..=ti, [first, second]);
                        out.push(RawBlowUp {
                            word: IdWord { trees },
                            sign: -1,
                            v1: (id1, VertexKind::SquareNeutral),
                            v2: (id2, VertexKind::Open(label)),
                        });
                    }
                }
                VertexKind::SquareNeutral => {
                    // Word splits into two square neutral trees, both parts
                    // nonempty.
                    for i in 1..k {
                        let id1 = bump(&mut fresh);
                        let id2 = bump(&mut fresh);
                        let first = IdNode {
                            kind: VertexKind::SquareNeutral,
                            id: id1,
                            children: d[..i].to_vec(),
                        };
                        let second = IdNode {
                            kind: VertexKind::SquareNeutral,
                            id: id2,
                            children: d[i..].to_vec(),
                        };
                        let mut trees = word.trees.clone();
                        trees.splice(ti..=ti, [first, second]);
                        out.push(RawBlowUp {
                            word: IdWord { trees },
                            sign: -1,
                            v1: (id1, VertexKind::SquareNeutral),
                            v2: (id2, VertexKind::SquareNeutral),
                        });
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Every admissible blow-up of the vertex at canonical position
/// `vertex_index`, with the sign it carries in the differential of a word
/// whose determinant is in canonical order (the Koszul prefix over the
/// preceding vertices is not included).
pub fn blow_up_components(e: &BasisElement, vertex_index: usize) -> Vec<(BasisElement, i64)> {
    let word = IdWord::from_word(e.word());
    let canonical = word.canonical();
    let Some(&(target, _)) = canonical.get(vertex_index) else {
        return Vec::new();
    };
    blow_ups_of(e, &word, &canonical, target)
}

fn blow_ups_of(
    e: &BasisElement,
    word: &IdWord,
    canonical: &[(u32, VertexKind)],
    target: u32,
) -> Vec<(BasisElement, i64)> {
    let mut out = Vec::new();
    for raw in word_blow_ups(word, target) {
        // Wedge in formula order: the old canonical list with the target
        // replaced by its two new vertices, restricted to odd vertices.
        let mut formula = Vec::new();
        for &(id, kind) in canonical {
            if id == target {
                if raw.v1.1.is_neutral() {
                    formula.push(raw.v1.0);
                }
                if raw.v2.1.is_neutral() {
                    formula.push(raw.v2.0);
                }
            } else if kind.is_neutral() {
                formula.push(id);
            }
        }
        let target_order = raw.word.canonical_odd();
        let sign = raw.sign * reorder_sign(&formula, &target_order);
        let element = validate(raw.word.strip(), e.signature()).expect("blow-up stays valid");
        out.push((element, sign));
    }
    out
}

/// Vertex count of a basis element, for iterating blow-up positions.
pub fn vertex_count(e: &BasisElement) -> usize {
    e.word().vertex_count()
}

/// The differential: sum over vertices of their blow-ups with the Koszul
/// prefix over the preceding odd vertices; degree -1 in the Lambda
/// convention.
pub fn differential(a: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero(a.signature().clone());
    for (e, c) in a.terms() {
        let word = IdWord::from_word(e.word());
        let canonical = word.canonical();
        let mut odd_before = 0i64;
        for &(id, kind) in &canonical {
            let prefix = if odd_before % 2 == 0 { 1 } else { -1 };
            for (element, sign) in blow_ups_of(e, &word, &canonical, id) {
                out.add_term(element, c * prefix * sign);
            }
            if kind.is_neutral() {
                odd_before += 1;
            }
        }
    }
    out
}

/// Angles of an id-word, as `(host id, position)` in global order.
fn id_angles(word: &IdWord) -> Vec<(u32, usize)> {
    fn walk(n: &IdNode, out: &mut Vec<(u32, usize)>) {
        out.push((n.id, 0));
        for (i, c) in n.children.iter().enumerate() {
            walk(c, out);
            out.push((n.id, i + 1));
        }
    }
    let mut out = Vec::new();
    for t in &word.trees {
        walk(t, &mut out);
    }
    out
}

fn nondecreasing_maps(len: usize, choices: usize) -> Vec<Vec<usize>> {
    // All nondecreasing sequences of `len` values in 0..choices.
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(len: usize, choices: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for v in start..choices {
            current.push(v);
            rec(len, choices, v, current, out);
            current.pop();
        }
    }
    rec(len, choices, 0, &mut current, &mut out);
    out
}

fn insert_grafts(node: &IdNode, grafts: &HashMap<(u32, usize), Vec<IdNode>>) -> IdNode {
    let mut children = Vec::new();
    for (i, c) in node.children.iter().enumerate() {
        if let Some(extra) = grafts.get(&(node.id, i)) {
            children.extend(extra.iter().cloned());
        }
        children.push(insert_grafts(c, grafts));
    }
    if let Some(extra) = grafts.get(&(node.id, node.children.len())) {
        children.extend(extra.iter().cloned());
    }
    IdNode { kind: node.kind, id: node.id, children }
}

/// Partial composition `a o_slot b` of basis elements: substitute `b` for
/// the vertex labeled by `slot`, distribute its former inputs over the
/// angles of `b` in every nondecreasing way, and normalize determinants.
pub fn compose_basis(
    a: &BasisElement,
    slot: usize,
    b: &BasisElement,
) -> Result<FormalSum, TreeError> {
    let color = a
        .signature()
        .input(slot)
        .ok_or(TreeError::UnknownSlot { slot })?;
    if color != b.signature().output() {
        return Err(TreeError::ColorMismatch { slot });
    }
    let out_sig = a.signature().splice(slot, b.signature())?;
    let arity_b = b.signature().arity();

    let mut a_word = IdWord::from_word(a.word());
    let offset = a_word.max_id() + 1;
    let mut b_word = IdWord::from_word(b.word());
    for t in &mut b_word.trees {
        fn shift(n: &mut IdNode, by: u32) {
            n.id += by;
            for c in &mut n.children {
                shift(c, by);
            }
        }
        shift(t, offset);
    }

    // Relabel: a's labels above the slot shift by |b|-1, b's labels by slot-1.
    let slot_u = slot as u32;
    let shift_a = (arity_b as u32).wrapping_sub(1);
    a_word.relabel(&|k| match k {
        VertexKind::Closed(l) if l > slot_u => VertexKind::Closed(l.wrapping_add(shift_a)),
        VertexKind::Open(l) if l > slot_u => VertexKind::Open(l.wrapping_add(shift_a)),
        other => other,
    });
    b_word.relabel(&|k| match k {
        VertexKind::Closed(l) => VertexKind::Closed(l + slot_u - 1),
        VertexKind::Open(l) => VertexKind::Open(l + slot_u - 1),
        other => other,
    });

    // After relabeling, the substituted vertex still carries the slot label.
    let want = match color {
        Color::Closed => VertexKind::Closed(slot_u),
        Color::Open => VertexKind::Open(slot_u),
    };
    let target = a_word.find_label(want).ok_or(TreeError::UnknownSlot { slot })?;

    // Odd vertices of a (minus the even target) followed by those of b.
    let mut formula: Vec<u32> = a_word.canonical_odd();
    formula.extend(b_word.canonical_odd());

    let angles = id_angles(&b_word);
    let inputs = collect_children(&a_word, target);
    let maps = nondecreasing_maps(inputs.len(), angles.len());

    let mut out = FormalSum::zero(out_sig.clone());
    for f in maps {
        let mut grafts: HashMap<(u32, usize), Vec<IdNode>> = HashMap::new();
        for (child, &angle_idx) in inputs.iter().zip(&f) {
            let (host, pos) = angles[angle_idx];
            grafts.entry((host, pos)).or_default().push(child.clone());
        }
        let grafted = IdWord {
            trees: b_word.trees.iter().map(|t| insert_grafts(t, &grafts)).collect(),
        };
        let spliced = splice_at(&a_word, target, grafted);
        let sign = reorder_sign(&formula, &spliced.canonical_odd());
        let element = validate(spliced.strip(), &out_sig)?;
        out.add_term(element, sign);
    }
    Ok(out)
}

fn collect_children(word: &IdWord, target: u32) -> Vec<IdNode> {
    fn walk(n: &IdNode, target: u32) -> Option<Vec<IdNode>> {
        if n.id == target {
            return Some(n.children.clone());
        }
        n.children.iter().find_map(|c| walk(c, target))
    }
    word.trees
        .iter()
        .find_map(|t| walk(t, target))
        .expect("target vertex present")
}

fn splice_at(a: &IdWord, target: u32, replacement: IdWord) -> IdWord {
    // If the target is the root of a tree, the replacement word is spliced
    // into the word; otherwise it must be a single tree and replaces the
    // vertex in place.
    fn subst(n: &IdNode, target: u32, single: &Option<IdNode>) -> IdNode {
        if n.id == target {
            return single.clone().expect("internal vertex needs a single tree");
        }
        IdNode {
            kind: n.kind,
            id: n.id,
            children: n.children.iter().map(|c| subst(c, target, single)).collect(),
        }
    }
    let mut trees = Vec::new();
    let single = if replacement.trees.len() == 1 {
        Some(replacement.trees[0].clone())
    } else {
        None
    };
    for t in &a.trees {
        if t.id == target {
            trees.extend(replacement.trees.iter().cloned());
        } else {
            fn contains(n: &IdNode, target: u32) -> bool {
                n.id == target || n.children.iter().any(|c| contains(c, target))
            }
            if contains(t, target) {
                trees.push(subst(t, target, &single));
            } else {
                trees.push(t.clone());
            }
        }
    }
    IdWord { trees }
}

/// Bilinear extension of [`compose_basis`].
pub fn compose_at(a: &FormalSum, slot: usize, b: &FormalSum) -> Result<FormalSum, TreeError> {
    let color = a
        .signature()
        .input(slot)
        .ok_or(TreeError::UnknownSlot { slot })?;
    if color != b.signature().output() {
        return Err(TreeError::ColorMismatch { slot });
    }
    let out_sig = a.signature().splice(slot, b.signature())?;
    let mut out = FormalSum::zero(out_sig);
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let part = compose_basis(ea, slot, eb)?;
            out.add(&part.scaled(ca * cb));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Basis enumeration.
// ---------------------------------------------------------------------------

/// Complete, duplicate-free enumeration of the basis of the given
/// signature, optionally filtered by Lambda degree, in a deterministic
/// order.
pub fn enumerate_basis(sig: &Signature, degree: Option<i64>) -> Vec<BasisElement> {
    let mut words: Vec<Word> = Vec::new();
    match sig.output() {
        Color::Closed => {
            if sig.inputs().iter().all(|c| *c == Color::Closed) {
                let labels = sig.closed_labels();
                let mut memo = HashMap::new();
                for t in closed_trees(&labels, &mut memo) {
                    words.push(Word::single(t));
                }
            }
        }
        Color::Open => {
            let closed = sig.closed_labels();
            let open = sig.open_labels();
            words = open_words(&closed, &open);
        }
    }
    let mut out: BTreeSet<BasisElement> = BTreeSet::new();
    for w in words {
        if let Some(d) = degree {
            if -(w.neutral_count() as i64) != d {
                continue;
            }
        }
        let e = validate(w, sig).expect("enumeration produces valid words");
        out.insert(e);
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort_by_key(|e| (e.word().neutral_count(), e.to_string()));
    v
}

type TreeMemo = HashMap<Vec<u32>, Vec<Tree>>;

/// All round-vertex trees whose closed labels are exactly `labels`.
fn closed_trees(labels: &[u32], memo: &mut TreeMemo) -> Vec<Tree> {
    if let Some(hit) = memo.get(labels) {
        return hit.clone();
    }
    let mut out = Vec::new();
    if !labels.is_empty() {
        // Closed root carrying one of the labels.
        for (i, &l) in labels.iter().enumerate() {
            let mut rest = labels.to_vec();
            rest.remove(i);
            for forest in forests(&rest, 0, memo) {
                out.push(Tree::node(VertexKind::Closed(l), forest));
            }
        }
        // Round neutral root with at least two subtrees.
        for forest in forests(labels, 2, memo) {
            out.push(Tree::node(VertexKind::RoundNeutral, forest));
        }
    }
    memo.insert(labels.to_vec(), out.clone());
    out
}

/// Ordered sequences of at least `min_trees` round trees partitioning `labels`.
fn forests(labels: &[u32], min_trees: usize, memo: &mut TreeMemo) -> Vec<Vec<Tree>> {
    if labels.is_empty() {
        return if min_trees == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let n = labels.len();
    // Choose the label set of the first subtree: any nonempty subset.
    for mask in 1u32..(1 << n) {
        let (first, rest): (Vec<u32>, Vec<u32>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &l) in labels.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    a.push(l);
                } else {
                    b.push(l);
                }
            }
            (a, b)
        };
        // Tails first: a full-set head with more trees still required would
        // recurse forever.
        let tails = forests(&rest, min_trees.saturating_sub(1), memo);
        if tails.is_empty() {
            continue;
        }
        let heads = closed_trees(&first, memo);
        for head in &heads {
            for tail in &tails {
                let mut f = Vec::with_capacity(1 + tail.len());
                f.push(head.clone());
                f.extend(tail.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

/// All words for an open output over the given closed/open label sets.
fn open_words(closed: &[u32], open: &[u32]) -> Vec<Word> {
    let mut memo = HashMap::new();
    let seqs = open_word_seqs(closed, open, &mut memo);
    seqs.into_iter().map(Word::new).collect()
}

fn open_word_seqs(closed: &[u32], open: &[u32], memo: &mut TreeMemo) -> Vec<Vec<Tree>> {
    let mut out = Vec::new();
    let n = closed.len();
    // The first tree uses a closed subset and possibly one open label.
    for mask in 0u32..(1 << n) {
        let (first_cl, rest_cl): (Vec<u32>, Vec<u32>) = {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &l) in closed.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    a.push(l);
                } else {
                    b.push(l);
                }
            }
            (a, b)
        };
        let child_forests = |min: usize, memo: &mut TreeMemo| forests(&first_cl, min, memo);
        // Open-labeled root: every open label may start the word.
        for (oi, &ol) in open.iter().enumerate() {
            let mut rest_open = open.to_vec();
            rest_open.remove(oi);
            for forest in child_forests(0, memo) {
                let head = Tree::node(VertexKind::Open(ol), forest.clone());
                if rest_open.is_empty() && rest_cl.is_empty() {
                    out.push(vec![head]);
                } else {
                    for tail in open_word_seqs(&rest_cl, &rest_open, memo) {
                        let mut w = vec![head.clone()];
                        w.extend(tail);
                        out.push(w);
                    }
                }
            }
        }
        // Square neutral root: needs at least one child.
        if !first_cl.is_empty() {
            for forest in child_forests(1, memo) {
                let head = Tree::node(VertexKind::SquareNeutral, forest);
                if open.is_empty() && rest_cl.is_empty() {
                    out.push(vec![head]);
                } else {
                    for tail in open_word_seqs(&rest_cl, open, memo) {
                        let mut w = vec![head.clone()];
                        w.extend(tail);
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

/// A uniformly-shaped random basis element, for spot checks beyond the
/// exhaustive bound.
pub fn random_basis_element(sig: &Signature, rng: &mut impl rand::Rng) -> BasisElement {
    fn random_round_tree(labels: &[u32], rng: &mut impl rand::Rng) -> Tree {
        debug_assert!(!labels.is_empty());
        if labels.len() == 1 && rng.gen_bool(0.6) {
            return Tree::leaf(VertexKind::Closed(labels[0]));
        }
        let neutral = labels.len() >= 2 && rng.gen_bool(0.4);
        if neutral {
            let blocks = random_partition(labels, 2, rng);
            let children = blocks.iter().map(|b| random_round_tree(b, rng)).collect();
            Tree::node(VertexKind::RoundNeutral, children)
        } else {
            let pick = rng.gen_range(0..labels.len());
            let mut rest = labels.to_vec();
            let root = rest.remove(pick);
            let children = if rest.is_empty() {
                Vec::new()
            } else {
                random_partition(&rest, 1, rng)
                    .iter()
                    .map(|b| random_round_tree(b, rng))
                    .collect()
            };
            Tree::node(VertexKind::Closed(root), children)
        }
    }
    fn random_partition(labels: &[u32], min_blocks: usize, rng: &mut impl rand::Rng) -> Vec<Vec<u32>> {
        let mut shuffled = labels.to_vec();
        for i in (1..shuffled.len()).rev() {
            let j = rng.gen_range(0..=i);
            shuffled.swap(i, j);
        }
        let max_blocks = shuffled.len();
        let blocks = rng.gen_range(min_blocks..=max_blocks.max(min_blocks));
        let blocks = blocks.min(max_blocks);
        // Random composition of the shuffled labels into the blocks.
        let mut cuts: Vec<usize> = (1..shuffled.len()).collect();
        for i in (1..cuts.len()).rev() {
            let j = rng.gen_range(0..=i);
            cuts.swap(i, j);
        }
        let mut chosen: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
        chosen.sort_unstable();
        chosen.push(shuffled.len());
        let mut out = Vec::new();
        let mut start = 0;
        for end in chosen {
            out.push(shuffled[start..end].to_vec());
            start = end;
        }
        out
    }
    let word = match sig.output() {
        Color::Closed => Word::single(random_round_tree(&sig.closed_labels(), rng)),
        Color::Open => {
            let open = sig.open_labels();
            let closed = sig.closed_labels();
            // Distribute closed labels over open-rooted trees and a few
            // square-neutral trees, then shuffle the word order.
            let mut shuffled = closed.clone();
            for i in (1..shuffled.len()).rev() {
                let j = rng.gen_range(0..=i);
                shuffled.swap(i, j);
            }
            let squares = if shuffled.is_empty() {
                0
            } else {
                rng.gen_range(0..=shuffled.len().min(2))
            };
            let mut trees = Vec::new();
            let mut remaining: &[u32] = &shuffled;
            for s in 0..squares {
                let left_for_squares = squares - s;
                let max_take = remaining.len() - (left_for_squares - 1);
                let take = rng.gen_range(1..=max_take);
                let (block, rest) = remaining.split_at(take);
                remaining = rest;
                let children = random_partition(block, 1, rng)
                    .iter()
                    .map(|b| random_round_tree(b, rng))
                    .collect();
                trees.push(Tree::node(VertexKind::SquareNeutral, children));
            }
            // Remaining closed labels are shared among the open roots.
            let mut per_open: Vec<Vec<u32>> = vec![Vec::new(); open.len()];
            for &l in remaining {
                let i = rng.gen_range(0..open.len().max(1));
                if open.is_empty() {
                    // No open root to host it: put it under another square.
                    let children = vec![random_round_tree(&[l], rng)];
                    trees.push(Tree::node(VertexKind::SquareNeutral, children));
                } else {
                    per_open[i].push(l);
                }
            }
            for (i, &ol) in open.iter().enumerate() {
                let children = if per_open[i].is_empty() {
                    Vec::new()
                } else {
                    random_partition(&per_open[i], 1, rng)
                        .iter()
                        .map(|b| random_round_tree(b, rng))
                        .collect()
                };
                trees.push(Tree::node(VertexKind::Open(ol), children));
            }
            for i in (1..trees.len()).rev() {
                let j = rng.gen_range(0..=i);
                trees.swap(i, j);
            }
            Word::new(trees)
        }
    };
    validate(word, sig).expect("random construction is valid")
}

/// All signatures with `n` inputs in a deterministic order.
pub fn signatures_with_inputs(n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    if n >= 1 {
        out.push(Signature::new(vec![Color::Closed; n], Color::Closed).unwrap());
        for mask in 0u32..(1 << n) {
            let inputs: Vec<Color> = (0..n)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        Color::Open
                    } else {
                        Color::Closed
                    }
                })
                .collect();
            out.push(Signature::new(inputs, Color::Open).unwrap());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Structural verification.
// ---------------------------------------------------------------------------

/// Outcome of one verified law, with a witness on failure.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub max_inputs: usize,
    pub checks: Vec<CheckOutcome>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Exhaustive verification of the dg-operad laws up to `max_inputs`:
/// d squared vanishes, the Leibniz rule, both associativity shapes, and
/// equivariance of composition.
pub fn verify_operad_axioms(max_inputs: usize) -> AxiomReport {
    let mut checks = Vec::new();
    checks.push(check_d_squared(max_inputs));
    checks.push(check_leibniz(max_inputs.min(3)));
    checks.push(check_associativity(2));
    checks.push(check_equivariance(3));
    AxiomReport { max_inputs, checks }
}

pub fn check_d_squared(max_inputs: usize) -> CheckOutcome {
    let mut sigs = Vec::new();
    for n in 1..=max_inputs {
        sigs.extend(signatures_with_inputs(n));
    }
    let results: Vec<(usize, Option<String>)> = sigs
        .par_iter()
        .map(|sig| {
            let basis = enumerate_basis(sig, None);
            let count = basis.len();
            for e in basis {
                let dd = differential(&differential(&FormalSum::from_element(e.clone())));
                if !dd.is_zero() {
                    return (count, Some(format!("d^2({e}) != 0 over {sig}")));
                }
            }
            (count, None)
        })
        .collect();
    let checked: usize = results.iter().map(|(c, _)| c).sum();
    let witness = results.into_iter().find_map(|(_, w)| w);
    CheckOutcome {
        name: "d_squared_zero".into(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

pub fn check_leibniz(max_inputs: usize) -> CheckOutcome {
    let mut pairs = Vec::new();
    for na in 1..=max_inputs {
        for sig_a in signatures_with_inputs(na) {
            for slot in 1..=na {
                let color = sig_a.input(slot).unwrap();
                for nb in 1..=max_inputs {
                    for sig_b in signatures_with_inputs(nb) {
                        if sig_b.output() == color {
                            pairs.push((sig_a.clone(), slot, sig_b));
                        }
                    }
                }
            }
        }
    }
    let outcomes: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|(sig_a, slot, sig_b)| {
            let basis_a = enumerate_basis(sig_a, None);
            let basis_b = enumerate_basis(sig_b, None);
            let mut count = 0;
            for a in &basis_a {
                let fa = FormalSum::from_element(a.clone());
                let da = differential(&fa);
                let sign = if a.degree(Grading::Lambda) % 2 == 0 { 1 } else { -1 };
                for b in &basis_b {
                    let fb = FormalSum::from_element(b.clone());
                    let lhs = differential(&compose_at(&fa, *slot, &fb).unwrap());
                    let mut rhs = compose_at(&da, *slot, &fb).unwrap();
                    rhs.add(&compose_at(&fa, *slot, &differential(&fb)).unwrap().scaled(sign));
                    if lhs != rhs {
                        return Err(format!("Leibniz fails at ({a}) o_{slot} ({b})"));
                    }
                    count += 1;
                }
            }
            Ok(count)
        })
        .collect();
    let mut checked = 0;
    let mut witness = None;
    for o in outcomes {
        match o {
            Ok(c) => checked += c,
            Err(w) => {
                witness = Some(w);
                break;
            }
        }
    }
    CheckOutcome {
        name: "leibniz".into(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

pub fn check_associativity(max_inputs: usize) -> CheckOutcome {
    // Exhaustive over small triples: both the nested and the disjoint
    // reassociation, with the Koszul sign in the disjoint case.
    let mut checked = 0;
    let mut witness = None;
    let mut sigs = Vec::new();
    for n in 1..=max_inputs {
        sigs.extend(signatures_with_inputs(n));
    }
    'outer: for sig_a in &sigs {
        let basis_a = enumerate_basis(sig_a, None);
        for a in &basis_a {
            let fa = FormalSum::from_element(a.clone());
            for sig_b in &sigs {
                for sig_c in &sigs {
                    for i in 1..=sig_a.arity() {
                        if sig_a.input(i) != Some(sig_b.output()) {
                            continue;
                        }
                        for b in enumerate_basis(sig_b, None) {
                            let fb = FormalSum::from_element(b.clone());
                            let ab = compose_at(&fa, i, &fb).unwrap();
                            // Nested: plug c into the b-part of a o_i b.
                            for j in 1..=sig_b.arity() {
                                if sig_b.input(j) != Some(sig_c.output()) {
                                    continue;
                                }
                                for c in enumerate_basis(sig_c, None) {
                                    let fc = FormalSum::from_element(c.clone());
                                    let lhs = compose_at(&ab, i + j - 1, &fc).unwrap();
                                    let bc = compose_at(&fb, j, &fc).unwrap();
                                    let rhs = compose_at(&fa, i, &bc).unwrap();
                                    checked += 1;
                                    if lhs != rhs {
                                        witness = Some(format!(
                                            "nested associativity fails: ({a}) o_{i} ({b}) o_{j} ({c})"
                                        ));
                                        break 'outer;
                                    }
                                }
                            }
                            // Disjoint: plug c into a later input of a.
                            for j in i + 1..=sig_a.arity() {
                                if sig_a.input(j) != Some(sig_c.output()) {
                                    continue;
                                }
                                for c in enumerate_basis(sig_c, None) {
                                    let fc = FormalSum::from_element(c.clone());
                                    let lhs =
                                        compose_at(&ab, j + sig_b.arity() - 1, &fc).unwrap();
                                    let ac = compose_at(&fa, j, &fc).unwrap();
                                    let rhs = compose_at(&ac, i, &fb).unwrap();
                                    let s = if (b.degree(Grading::Lambda)
                                        * c.degree(Grading::Lambda))
                                        % 2
                                        == 0
                                    {
                                        1
                                    } else {
                                        -1
                                    };
                                    checked += 1;
                                    if lhs != rhs.scaled(s) {
                                        witness = Some(format!(
                                            "disjoint associativity fails: ({a}), ({b}) at {i}, ({c}) at {j}"
                                        ));
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    CheckOutcome {
        name: "associativity".into(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

pub fn check_equivariance(max_inputs: usize) -> CheckOutcome {
    // (a sigma) o_i (b tau) = (a o_{sigma(i)} b) (sigma o_i tau).
    let mut checked = 0;
    let mut witness = None;
    let mut sigs = Vec::new();
    for n in 1..=max_inputs.min(3) {
        sigs.extend(signatures_with_inputs(n));
    }
    'outer: for sig_a in &sigs {
        let na = sig_a.arity();
        for a in enumerate_basis(sig_a, None) {
            for sigma in permutations(na) {
                let asig = crate::trees::sigma_action(&a, &sigma).unwrap();
                let fa = FormalSum::from_element(asig.clone());
                for i in 1..=na {
                    let color = asig.signature().input(i).unwrap();
                    for sig_b in &sigs {
                        if sig_b.output() != color || sig_b.arity() > 2 {
                            continue;
                        }
                        let nb = sig_b.arity();
                        for b in enumerate_basis(sig_b, None) {
                            for tau in permutations(nb) {
                                let btau = crate::trees::sigma_action(&b, &tau).unwrap();
                                let fb = FormalSum::from_element(btau);
                                let lhs = compose_at(&fa, i, &fb).unwrap();
                                let ab = compose_at(
                                    &FormalSum::from_element(a.clone()),
                                    sigma[i - 1],
                                    &FormalSum::from_element(b.clone()),
                                )
                                .unwrap();
                                let block = block_permutation(&sigma, i, &tau);
                                let mut rhs = FormalSum::zero(lhs.signature().clone());
                                for (e, c) in ab.terms() {
                                    let moved = crate::trees::sigma_action(e, &block).unwrap();
                                    rhs.add_term(moved, c);
                                }
                                checked += 1;
                                if lhs != rhs {
                                    witness = Some(format!(
                                        "equivariance fails: a={a} sigma={sigma:?} i={i} b={b} tau={tau:?}"
                                    ));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    CheckOutcome {
        name: "equivariance".into(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

/// Composition of permutations for the colored-operad reindexing law:
/// substitute `tau` (on `m` letters) into position `i` of `sigma`.
pub fn block_permutation(sigma: &[usize], i: usize, tau: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let m = tau.len();
    let target = sigma[i - 1];
    let stretch = |v: usize| -> usize {
        if v < target {
            v
        } else if v == target {
            unreachable!()
        } else {
            v + m - 1
        }
    };
    let mut out = Vec::with_capacity(n + m - 1);
    for pos in 1..=n {
        if pos == i {
            for &t in tau {
                out.push(target + t - 1);
            }
        } else {
            out.push(stretch(sigma[pos - 1]));
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (1..=n).collect();
    heap_permute(&mut items, n, &mut out);
    out.sort();
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse;

    fn sig(s: &str) -> Signature {
        Signature::parse(s).unwrap()
    }

    fn elem(text: &str, s: &str) -> BasisElement {
        parse(text, &sig(s)).unwrap()
    }

    fn d(e: &BasisElement) -> FormalSum {
        differential(&FormalSum::from_element(e.clone()))
    }

    #[test]
    fn generators_match_their_words() {
        assert_eq!(generator(GeneratorKind::Partial(2)).unwrap().to_string(), "(n c1 c2)");
        assert_eq!(generator(GeneratorKind::G(2)).unwrap().to_string(), "(s c1 c2)");
        assert_eq!(generator(GeneratorKind::M(2)).unwrap().to_string(), "(c1 c2 c3)");
        assert_eq!(generator(GeneratorKind::Gamma(1)).unwrap().to_string(), "(o1 c2)");
        assert_eq!(generator(GeneratorKind::MuOpen).unwrap().to_string(), "o1 o2");
        assert_eq!(generator(GeneratorKind::IdClosed).unwrap().to_string(), "c1");
        let p2 = generator(GeneratorKind::Partial(2)).unwrap();
        assert_eq!(p2.degree(Grading::Standard), 0);
        let mu = generator(GeneratorKind::MuOpen).unwrap();
        assert_eq!(mu.degree(Grading::Standard), 0);
        assert!(generator(GeneratorKind::Partial(1)).is_err());
        assert!(generator(GeneratorKind::G(0)).is_err());
    }

    #[test]
    fn partial_two_has_no_blow_up() {
        let e = generator(GeneratorKind::Partial(2)).unwrap();
        assert!(blow_up_components(&e, 0).is_empty());
    }

    #[test]
    fn differential_of_partial_three() {
        let e = generator(GeneratorKind::Partial(3)).unwrap();
        let de = d(&e);
        assert_eq!(de.len(), 2);
        assert_eq!(de.coeff(&elem("(n c1 (n c2 c3))", "ccc;c")), -1);
        assert_eq!(de.coeff(&elem("(n (n c1 c2) c3)", "ccc;c")), -1);
    }

    #[test]
    fn differential_of_m11() {
        let e = generator(GeneratorKind::M(1)).unwrap();
        let de = d(&e);
        assert_eq!(de.len(), 2);
        assert_eq!(de.coeff(&elem("(n c1 c2)", "cc;c")), -1);
        assert_eq!(de.coeff(&elem("(n c2 c1)", "cc;c")), -1);
    }

    #[test]
    fn differential_of_g() {
        assert!(d(&generator(GeneratorKind::G(1)).unwrap()).is_zero());
        let de = d(&generator(GeneratorKind::G(2)).unwrap());
        assert_eq!(de.len(), 2);
        assert_eq!(de.coeff(&elem("(s (n c1 c2))", "cc;o")), -1);
        assert_eq!(de.coeff(&elem("(s c1) (s c2)", "cc;o")), -1);
    }

    #[test]
    fn blow_up_of_gamma_one() {
        let e = generator(GeneratorKind::Gamma(1)).unwrap();
        let de = d(&e);
        assert_eq!(de.len(), 2);
        assert_eq!(de.coeff(&elem("o1 (s c2)", "oc;o")), 1);
        assert_eq!(de.coeff(&elem("(s c2) o1", "oc;o")), -1);
    }

    #[test]
    fn hexagon_boundary_of_m12() {
        // The codimension-one faces of the 2-dimensional cyclohedron.
        let e = generator(GeneratorKind::M(2)).unwrap();
        let de = d(&e);
        assert_eq!(de.len(), 6);
        assert_eq!(de.coeff(&elem("(c1 (n c2 c3))", "ccc;c")), 1);
        for t in [
            "(n c1 c2 c3)",
            "(n (c1 c2) c3)",
            "(n c2 c1 c3)",
            "(n c2 (c1 c3))",
            "(n c2 c3 c1)",
        ] {
            assert_eq!(de.coeff(&elem(t, "ccc;c")), -1, "face {t}");
        }
    }

    #[test]
    fn composition_with_identities() {
        let idc = FormalSum::from_element(generator(GeneratorKind::IdClosed).unwrap());
        let ido = FormalSum::from_element(generator(GeneratorKind::IdOpen).unwrap());
        for g in [
            GeneratorKind::Partial(3),
            GeneratorKind::M(2),
            GeneratorKind::G(2),
            GeneratorKind::Gamma(2),
            GeneratorKind::MuOpen,
        ] {
            let a = FormalSum::from_element(generator(g).unwrap());
            let sig_a = a.signature().clone();
            for slot in 1..=sig_a.arity() {
                let unit = match sig_a.input(slot).unwrap() {
                    Color::Closed => &idc,
                    Color::Open => &ido,
                };
                assert_eq!(compose_at(&a, slot, unit).unwrap(), a, "a o id at {slot}");
            }
            let out_unit = match sig_a.output() {
                Color::Closed => &idc,
                Color::Open => &ido,
            };
            assert_eq!(compose_at(out_unit, 1, &a).unwrap(), a, "id o a");
        }
    }

    #[test]
    fn five_term_composition() {
        // A whistle over one closed input composed with a square corolla.
        let a = elem("(o1 c2)", "oc;o");
        let b = elem("(s c1 c2)", "cc;o");
        let result = compose_at(
            &FormalSum::from_element(a),
            1,
            &FormalSum::from_element(b),
        )
        .unwrap();
        assert_eq!(result.len(), 5);
        for t in [
            "(s c3 c1 c2)",
            "(s (c1 c3) c2)",
            "(s c1 c3 c2)",
            "(s c1 (c2 c3))",
            "(s c1 c2 c3)",
        ] {
            assert_eq!(result.coeff(&elem(t, "ccc;o")), 1, "term {t}");
        }
    }

    #[test]
    fn four_term_composition_with_determinant() {
        // Both words carry one square neutral vertex; the composition
        // produces four summands whose wedge reorders to canonical order
        // with a global minus sign.
        let a = elem("(o1 c2) (s c3)", "occ;o");
        let b = elem("o1 (s c2)", "oc;o");
        let result = compose_at(
            &FormalSum::from_element(a),
            1,
            &FormalSum::from_element(b),
        )
        .unwrap();
        assert_eq!(result.len(), 4);
        for t in [
            "(o1 c3) (s c2) (s c4)",
            "o1 (s c3 c2) (s c4)",
            "o1 (s (c2 c3)) (s c4)",
            "o1 (s c2 c3) (s c4)",
        ] {
            assert_eq!(result.coeff(&elem(t, "occc;o")), -1, "term {t}");
        }
    }

    #[test]
    fn enumerate_small_bases() {
        assert_eq!(enumerate_basis(&sig("c;c"), None).len(), 1);
        let cc = enumerate_basis(&sig("cc;c"), Some(0));
        assert_eq!(cc.len(), 2);
        let co = enumerate_basis(&sig("c;o"), None);
        assert_eq!(co.len(), 1);
        assert_eq!(co[0].to_string(), "(s c1)");
        assert_eq!(enumerate_basis(&sig("oo;o"), None).len(), 2);
    }

    #[test]
    fn degree_zero_count_matches_catalan_oracle() {
        // Independent oracle: n! times the planar rooted tree count.
        fn planar_trees(n: usize) -> usize {
            // Planar rooted trees on n vertices: the (n-1)st Catalan
            // number, by the root-decomposition recurrence.
            let mut c = vec![0usize; n];
            c[0] = 1;
            for i in 1..n {
                let mut s = 0;
                for j in 0..i {
                    s += c[j] * c[i - 1 - j];
                }
                c[i] = s;
            }
            c[n - 1]
        }
        for n in 1..=4 {
            let s = Signature::new(vec![Color::Closed; n], Color::Closed).unwrap();
            let count = enumerate_basis(&s, Some(0)).len();
            let factorial: usize = (1..=n).product();
            assert_eq!(count, factorial * planar_trees(n), "n={n}");
        }
    }

    #[test]
    fn d_squared_small() {
        for n in 1..=3 {
            for s in signatures_with_inputs(n) {
                for e in enumerate_basis(&s, None) {
                    let dd = differential(&d(&e));
                    assert!(dd.is_zero(), "d^2({e}) != 0 over {s}");
                }
            }
        }
    }

    #[test]
    fn leibniz_spot_check() {
        let a = generator(GeneratorKind::Partial(3)).unwrap();
        let b = generator(GeneratorKind::Partial(2)).unwrap();
        let fa = FormalSum::from_element(a.clone());
        let fb = FormalSum::from_element(b);
        let lhs = differential(&compose_at(&fa, 1, &fb).unwrap());
        let mut rhs = compose_at(&differential(&fa), 1, &fb).unwrap();
        rhs.add(&compose_at(&fa, 1, &differential(&fb)).unwrap().scaled(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_permutation_shape() {
        assert_eq!(block_permutation(&[2, 1], 1, &[1, 2]), vec![2, 3, 1]);
        assert_eq!(block_permutation(&[2, 1], 2, &[2, 1]), vec![3, 2, 1]);
    }
}
