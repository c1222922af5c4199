//! Planar rooted trees and words of trees with four vertex kinds.
//!
//! These are the atoms of both operads in this crate. A [`Word`] is a
//! nonempty sequence of planar trees; for a closed output it is a single
//! tree of round vertices, for an open output every tree has a square root
//! (neutral or labeled) and all non-root vertices are round. Neutral
//! vertices are the homologically odd ones: the canonical determinant of a
//! [`BasisElement`] is the wedge of its vertices in canonical order
//! (bottom to top, left to right, tree by tree), and every sign produced
//! by reordering that wedge is absorbed into coefficients elsewhere.

use std::fmt;

use thiserror::Error;

/// One of the two colors of the operads: `cl` or `op`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Closed,
    Open,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Closed => write!(f, "c"),
            Color::Open => write!(f, "o"),
        }
    }
}

/// Input colors (at least one) together with the output color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    inputs: Vec<Color>,
    output: Color,
}

impl Signature {
    pub fn new(inputs: Vec<Color>, output: Color) -> Result<Self, TreeError> {
        if inputs.is_empty() {
            return Err(TreeError::EmptySignature);
        }
        Ok(Signature { inputs, output })
    }

    /// Parses strings like `"cco;o"`: input colors, a semicolon, the output color.
    pub fn parse(s: &str) -> Result<Self, TreeError> {
        let (ins, out) = s.split_once(';').ok_or_else(|| TreeError::Syntax {
            msg: format!("signature `{s}` lacks `;`"),
        })?;
        let color = |ch: char| match ch {
            'c' => Ok(Color::Closed),
            'o' => Ok(Color::Open),
            other => Err(TreeError::Syntax {
                msg: format!("unknown color `{other}`"),
            }),
        };
        let inputs = ins.chars().map(color).collect::<Result<Vec<_>, _>>()?;
        let mut outs = out.chars();
        let output = color(outs.next().ok_or_else(|| TreeError::Syntax {
            msg: "missing output color".into(),
        })?)?;
        if outs.next().is_some() {
            return Err(TreeError::Syntax {
                msg: format!("trailing characters in signature `{s}`"),
            });
        }
        Signature::new(inputs, output)
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[Color] {
        &self.inputs
    }

    pub fn output(&self) -> Color {
        self.output
    }

    /// Color of the 1-based input slot.
    pub fn input(&self, slot: usize) -> Option<Color> {
        self.inputs.get(slot - 1).copied()
    }

    /// 1-based positions carrying closed inputs.
    pub fn closed_labels(&self) -> Vec<u32> {
        self.positions_of(Color::Closed)
    }

    /// 1-based positions carrying open inputs.
    pub fn open_labels(&self) -> Vec<u32> {
        self.positions_of(Color::Open)
    }

    fn positions_of(&self, c: Color) -> Vec<u32> {
        self.inputs
            .iter()
            .enumerate()
            .filter(|(_, x)| **x == c)
            .map(|(i, _)| (i + 1) as u32)
            .collect()
    }

    pub fn closed_count(&self) -> usize {
        self.inputs.iter().filter(|c| **c == Color::Closed).count()
    }

    /// Signature of `self` with slot `slot` replaced by the inputs of `inner`.
    pub fn splice(&self, slot: usize, inner: &Signature) -> Result<Signature, TreeError> {
        let expected = self.input(slot).ok_or(TreeError::UnknownSlot { slot })?;
        if expected != inner.output {
            return Err(TreeError::ColorMismatch { slot });
        }
        let mut inputs = Vec::with_capacity(self.arity() + inner.arity() - 1);
        inputs.extend_from_slice(&self.inputs[..slot - 1]);
        inputs.extend_from_slice(&inner.inputs);
        inputs.extend_from_slice(&self.inputs[slot..]);
        Signature::new(inputs, self.output)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.inputs {
            write!(f, "{c}")?;
        }
        write!(f, ";{}", self.output)
    }
}

/// The four vertex kinds. Neutral vertices are unlabeled and odd (degree
/// -1 in the Lambda convention); labeled vertices are even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    RoundNeutral,
    Closed(u32),
    SquareNeutral,
    Open(u32),
}

impl VertexKind {
    pub fn is_neutral(self) -> bool {
        matches!(self, VertexKind::RoundNeutral | VertexKind::SquareNeutral)
    }

    pub fn is_square(self) -> bool {
        matches!(self, VertexKind::SquareNeutral | VertexKind::Open(_))
    }

    pub fn label(self) -> Option<u32> {
        match self {
            VertexKind::Closed(l) | VertexKind::Open(l) => Some(l),
            _ => None,
        }
    }
}

/// A planar rooted tree. Children are ordered left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub kind: VertexKind,
    pub children: Vec<Tree>,
}

impl Tree {
    pub fn leaf(kind: VertexKind) -> Tree {
        Tree { kind, children: Vec::new() }
    }

    pub fn node(kind: VertexKind, children: Vec<Tree>) -> Tree {
        Tree { kind, children }
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(Tree::vertex_count).sum::<usize>()
    }

    fn neutral_count(&self) -> usize {
        usize::from(self.kind.is_neutral())
            + self.children.iter().map(Tree::neutral_count).sum::<usize>()
    }

    fn for_each<'a>(&'a self, f: &mut impl FnMut(&'a Tree)) {
        f(self);
        for c in &self.children {
            c.for_each(f);
        }
    }
}

/// A nonempty word of planar trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub trees: Vec<Tree>,
}

impl Word {
    pub fn new(trees: Vec<Tree>) -> Word {
        Word { trees }
    }

    pub fn single(tree: Tree) -> Word {
        Word { trees: vec![tree] }
    }

    pub fn neutral_count(&self) -> usize {
        self.trees.iter().map(Tree::neutral_count).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(Tree::vertex_count).sum()
    }

    /// All vertex kinds, in no particular order.
    pub fn vertex_kinds(&self) -> Vec<VertexKind> {
        let mut out = Vec::new();
        for t in &self.trees {
            t.for_each(&mut |n| out.push(n.kind));
        }
        out
    }
}

/// Grading conventions: `Lambda` counts neutral vertices negatively,
/// `Standard` shifts by the closed inputs and output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Lambda,
    Standard,
}

/// A validated word together with its signature. The canonical
/// determinant (wedge of vertices in canonical order) is implicit:
/// equal elements always denote the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    word: Word,
    signature: Signature,
}

impl BasisElement {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn degree(&self, convention: Grading) -> i64 {
        let lambda = -(self.word.neutral_count() as i64);
        match convention {
            Grading::Lambda => lambda,
            Grading::Standard => {
                let out_cl = i64::from(self.signature.output() == Color::Closed);
                lambda + self.signature.closed_count() as i64 - out_cl
            }
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", encode(self))
    }
}

/// An angle of a word: a sector at `vertex` (addressed by tree index and
/// path) between consecutive children. A vertex with k children has k+1
/// angles; `position` 0 is the sector left of the first child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Angle {
    pub tree_index: usize,
    pub path: Vec<usize>,
    pub position: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("syntax error: {msg}")]
    Syntax { msg: String },
    #[error("signature must have at least one input")]
    EmptySignature,
    #[error("round neutral vertex with {found} children, needs at least 2")]
    RoundNeutralArity { found: usize },
    #[error("square neutral vertex with no children")]
    SquareNeutralArity,
    #[error("square or open vertex `{at}` not at a root position")]
    SquareNotRoot { at: String },
    #[error("closed output requires a single tree of round vertices")]
    ClosedOutputShape,
    #[error("labels {found:?} do not match the {color} positions {expected:?} of `{sig}`")]
    LabelMismatch {
        color: Color,
        found: Vec<u32>,
        expected: Vec<u32>,
        sig: String,
    },
    #[error("color mismatch at slot {slot}")]
    ColorMismatch { slot: usize },
    #[error("unknown slot {slot}")]
    UnknownSlot { slot: usize },
    #[error("signatures differ: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("permutation is not color compatible with `{sig}`")]
    ColorIncompatiblePermutation { sig: String },
    #[error("{0}")]
    Domain(String),
}

/// Canonical encoding of a word in the interchange grammar.
pub fn encode(e: &BasisElement) -> String {
    encode_word(&e.word)
}

pub fn encode_word(w: &Word) -> String {
    w.trees.iter().map(encode_tree).collect::<Vec<_>>().join(" ")
}

fn atom(kind: VertexKind) -> String {
    match kind {
        VertexKind::RoundNeutral => "n".into(),
        VertexKind::SquareNeutral => "s".into(),
        VertexKind::Closed(l) => format!("c{l}"),
        VertexKind::Open(l) => format!("o{l}"),
    }
}

pub fn encode_tree(t: &Tree) -> String {
    if t.children.is_empty() {
        atom(t.kind)
    } else {
        let inner = t
            .children
            .iter()
            .map(encode_tree)
            .collect::<Vec<_>>()
            .join(" ");
        format!("({} {})", atom(t.kind), inner)
    }
}

/// Parses the grammar and validates against `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<BasisElement, TreeError> {
    let word = parse_word(text)?;
    validate(word, sig)
}

/// Parses a word without signature validation.
pub fn parse_word(text: &str) -> Result<Word, TreeError> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let mut trees = Vec::new();
    while pos < tokens.len() {
        let (t, next) = parse_tree(&tokens, pos)?;
        trees.push(t);
        pos = next;
    }
    if trees.is_empty() {
        return Err(TreeError::Syntax { msg: "empty word".into() });
    }
    Ok(Word::new(trees))
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(VertexKind),
}

fn tokenize(text: &str) -> Result<Vec<Token>, TreeError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        match ch {
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            'n' => {
                chars.next();
                out.push(Token::Atom(VertexKind::RoundNeutral));
            }
            's' => {
                chars.next();
                out.push(Token::Atom(VertexKind::SquareNeutral));
            }
            'c' | 'o' => {
                chars.next();
                let mut digits = String::new();
                while let Some(d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(*d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let label: u32 = digits.parse().map_err(|_| TreeError::Syntax {
                    msg: format!("`{ch}` must be followed by a label"),
                })?;
                out.push(Token::Atom(if ch == 'c' {
                    VertexKind::Closed(label)
                } else {
                    VertexKind::Open(label)
                }));
            }
            other => {
                return Err(TreeError::Syntax {
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

fn parse_tree(tokens: &[Token], pos: usize) -> Result<(Tree, usize), TreeError> {
    match tokens.get(pos) {
        Some(Token::Atom(kind)) => Ok((Tree::leaf(*kind), pos + 1)),
        Some(Token::Open) => {
            let kind = match tokens.get(pos + 1) {
                Some(Token::Atom(kind)) => *kind,
                _ => {
                    return Err(TreeError::Syntax {
                        msg: "expected an atom after `(`".into(),
                    })
                }
            };
            let mut children = Vec::new();
            let mut at = pos + 2;
            loop {
                match tokens.get(at) {
                    Some(Token::Close) => {
                        if children.is_empty() {
                            return Err(TreeError::Syntax {
                                msg: "parenthesized vertex needs at least one child".into(),
                            });
                        }
                        return Ok((Tree::node(kind, children), at + 1));
                    }
                    Some(_) => {
                        let (child, next) = parse_tree(tokens, at)?;
                        children.push(child);
                        at = next;
                    }
                    None => {
                        return Err(TreeError::Syntax {
                            msg: "unbalanced parenthesis".into(),
                        })
                    }
                }
            }
        }
        Some(Token::Close) => Err(TreeError::Syntax {
            msg: "unexpected `)`".into(),
        }),
        None => Err(TreeError::Syntax {
            msg: "unexpected end of input".into(),
        }),
    }
}

/// Checks every structural invariant of `w` against `sig`.
pub fn validate(w: Word, sig: &Signature) -> Result<BasisElement, TreeError> {
    for tree in &w.trees {
        check_tree(tree, true)?;
    }
    if sig.output() == Color::Closed {
        let all_round = w.trees.len() == 1
            && w.vertex_kinds()
                .iter()
                .all(|k| matches!(k, VertexKind::RoundNeutral | VertexKind::Closed(_)));
        if !all_round {
            return Err(TreeError::ClosedOutputShape);
        }
    } else {
        // For an open output every root is square-shaped.
        for tree in &w.trees {
            if !tree.kind.is_square() {
                return Err(TreeError::SquareNotRoot {
                    at: atom(tree.kind),
                });
            }
        }
    }
    let mut closed = Vec::new();
    let mut open = Vec::new();
    for k in w.vertex_kinds() {
        match k {
            VertexKind::Closed(l) => closed.push(l),
            VertexKind::Open(l) => open.push(l),
            _ => {}
        }
    }
    closed.sort_unstable();
    open.sort_unstable();
    let expect_closed = sig.closed_labels();
    let expect_open = sig.open_labels();
    if closed != expect_closed {
        return Err(TreeError::LabelMismatch {
            color: Color::Closed,
            found: closed,
            expected: expect_closed,
            sig: sig.to_string(),
        });
    }
    if open != expect_open {
        return Err(TreeError::LabelMismatch {
            color: Color::Open,
            found: open,
            expected: expect_open,
            sig: sig.to_string(),
        });
    }
    Ok(BasisElement {
        word: w,
        signature: sig.clone(),
    })
}

fn check_tree(t: &Tree, at_root: bool) -> Result<(), TreeError> {
    match t.kind {
        VertexKind::RoundNeutral if t.children.len() < 2 => {
            return Err(TreeError::RoundNeutralArity {
                found: t.children.len(),
            })
        }
        VertexKind::SquareNeutral if t.children.is_empty() => {
            return Err(TreeError::SquareNeutralArity)
        }
        VertexKind::SquareNeutral | VertexKind::Open(_) if !at_root => {
            return Err(TreeError::SquareNotRoot { at: atom(t.kind) })
        }
        _ => {}
    }
    for c in &t.children {
        check_tree(c, false)?;
    }
    Ok(())
}

/// The ordered angle list of the word: depth-first sector order within
/// each tree, trees concatenated left to right.
pub fn angles(e: &BasisElement) -> Vec<Angle> {
    word_angles(&e.word)
}

pub fn word_angles(w: &Word) -> Vec<Angle> {
    let mut out = Vec::new();
    for (ti, tree) in w.trees.iter().enumerate() {
        tree_angles(tree, ti, &mut Vec::new(), &mut out);
    }
    out
}

fn tree_angles(t: &Tree, tree_index: usize, path: &mut Vec<usize>, out: &mut Vec<Angle>) {
    out.push(Angle {
        tree_index,
        path: path.clone(),
        position: 0,
    });
    for (i, child) in t.children.iter().enumerate() {
        path.push(i);
        tree_angles(child, tree_index, path, out);
        path.pop();
        out.push(Angle {
            tree_index,
            path: path.clone(),
            position: i + 1,
        });
    }
}

/// Right action of the symmetric group: relabel every labeled vertex
/// `l -> sigma^{-1}(l)` and permute the signature accordingly. `sigma` is
/// given one-based as the image list `sigma(1), ..., sigma(n)`.
pub fn sigma_action(e: &BasisElement, sigma: &[usize]) -> Result<BasisElement, TreeError> {
    let n = e.signature.arity();
    if !is_permutation(sigma, n) {
        return Err(TreeError::Domain(format!(
            "{sigma:?} is not a permutation of 1..={n}"
        )));
    }
    // The permuted signature; the action lands in this component.
    let inputs = (0..n).map(|i| e.signature.inputs[sigma[i] - 1]).collect();
    let new_sig = Signature::new(inputs, e.signature.output())?;
    let mut inverse = vec![0u32; n + 1];
    for (i, &s) in sigma.iter().enumerate() {
        inverse[s] = (i + 1) as u32;
    }
    let relabel = |k: VertexKind| match k {
        VertexKind::Closed(l) => VertexKind::Closed(inverse[l as usize]),
        VertexKind::Open(l) => VertexKind::Open(inverse[l as usize]),
        other => other,
    };
    let trees = e.word.trees.iter().map(|t| map_kinds(t, &relabel)).collect();
    validate(Word::new(trees), &new_sig)
}

/// Variant of [`sigma_action`] that requires the signature to be
/// preserved, i.e. the permutation to map closed slots to closed slots.
pub fn sigma_action_same_sig(
    e: &BasisElement,
    sigma: &[usize],
) -> Result<BasisElement, TreeError> {
    let n = e.signature.arity();
    if !is_permutation(sigma, n) {
        return Err(TreeError::Domain(format!(
            "{sigma:?} is not a permutation of 1..={n}"
        )));
    }
    for i in 0..n {
        if e.signature.inputs[sigma[i] - 1] != e.signature.inputs[i] {
            return Err(TreeError::ColorIncompatiblePermutation {
                sig: e.signature.to_string(),
            });
        }
    }
    sigma_action(e, sigma)
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    if sigma.len() != n {
        return false;
    }
    let mut seen = vec![false; n + 1];
    for &s in sigma {
        if s == 0 || s > n || seen[s] {
            return false;
        }
        seen[s] = true;
    }
    true
}

fn map_kinds(t: &Tree, f: &impl Fn(VertexKind) -> VertexKind) -> Tree {
    Tree {
        kind: f(t.kind),
        children: t.children.iter().map(|c| map_kinds(c, f)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        Signature::parse(s).unwrap()
    }

    #[test]
    fn parse_corolla() {
        let e = parse("(c1 c2 c3)", &sig("ccc;c")).unwrap();
        assert_eq!(encode(&e), "(c1 c2 c3)");
        assert_eq!(e.degree(Grading::Lambda), 0);
        assert_eq!(e.degree(Grading::Standard), 2);
    }

    #[test]
    fn parse_identity() {
        let e = parse("c1", &sig("c;c")).unwrap();
        assert_eq!(encode(&e), "c1");
        let o = parse("o1", &sig("o;o")).unwrap();
        assert_eq!(encode(&o), "o1");
    }

    #[test]
    fn parse_two_tree_word() {
        let e = parse("(s c1) (o3 c2)", &sig("cco;o")).unwrap();
        assert_eq!(e.degree(Grading::Lambda), -1);
        assert_eq!(encode(&e), "(s c1) (o3 c2)");
    }

    #[test]
    fn roundtrip_nested() {
        let text = "(s (n c1 (c2 c4)) c3) o5";
        let s = sig("cccco;o");
        let e = parse(text, &s).unwrap();
        assert_eq!(parse(&encode(&e), &s).unwrap(), e);
    }

    #[test]
    fn validate_errors() {
        assert!(matches!(
            parse("(n c1)", &sig("c;c")),
            Err(TreeError::RoundNeutralArity { found: 1 })
        ));
        assert!(matches!(
            parse("(c1 (s c2))", &sig("cc;c")),
            Err(TreeError::SquareNotRoot { .. })
        ));
        assert!(matches!(
            parse("(c1 c2) (s c3)", &sig("ccc;c")),
            Err(TreeError::ClosedOutputShape)
        ));
        // Square vertex below the root of an open word.
        assert!(matches!(
            parse("(o1 (s c2))", &sig("oc;o")),
            Err(TreeError::SquareNotRoot { .. })
        ));
        assert!(matches!(
            parse("(c1 c2)", &sig("ccc;c")),
            Err(TreeError::LabelMismatch { .. })
        ));
    }

    #[test]
    fn degree_conventions() {
        // Partial corolla: Lambda -1, Standard k-2.
        for k in 2..=5 {
            let atoms: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
            let text = format!("(n {})", atoms.join(" "));
            let s = sig(&format!("{};c", "c".repeat(k)));
            let e = parse(&text, &s).unwrap();
            assert_eq!(e.degree(Grading::Lambda), -1);
            assert_eq!(e.degree(Grading::Standard), k as i64 - 2);
        }
        // M_{1,k} corolla: Lambda 0, Standard k.
        for k in 1..=4 {
            let atoms: Vec<String> = (2..=k + 1).map(|i| format!("c{i}")).collect();
            let text = format!("(c1 {})", atoms.join(" "));
            let s = sig(&format!("{};c", "c".repeat(k + 1)));
            let e = parse(&text, &s).unwrap();
            assert_eq!(e.degree(Grading::Lambda), 0);
            assert_eq!(e.degree(Grading::Standard), k as i64);
        }
    }

    #[test]
    fn angle_counts() {
        let idc = parse("c1", &sig("c;c")).unwrap();
        assert_eq!(angles(&idc).len(), 1);
        for k in 2..=5 {
            let atoms: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
            let e = parse(
                &format!("(n {})", atoms.join(" ")),
                &sig(&format!("{};c", "c".repeat(k))),
            )
            .unwrap();
            // A corolla with k inputs has k+1 root angles plus one per leaf.
            assert_eq!(angles(&e).len(), 2 * k + 1);
        }
        // Word of two one-input square trees: 4 angles, first tree first.
        let w = parse("(s c1) (s c2)", &sig("cc;o")).unwrap();
        let a = word_angles(w.word());
        assert_eq!(a.len(), 6);
        assert!(a[..3].iter().all(|x| x.tree_index == 0));
        assert!(a[3..].iter().all(|x| x.tree_index == 1));
    }

    #[test]
    fn angle_total_is_children_plus_vertices() {
        let e = parse("(s (n c1 (c2 c4)) c3) o5", &sig("cccco;o")).unwrap();
        let vertices = e.word().vertex_count();
        let children: usize = vertices - e.word().trees.len();
        assert_eq!(angles(&e).len(), children + vertices);
    }

    #[test]
    fn sigma_relabels() {
        let e = parse("(c1 c2 c3)", &sig("ccc;c")).unwrap();
        let swapped = sigma_action_same_sig(&e, &[2, 1, 3]).unwrap();
        assert_eq!(encode(&swapped), "(c2 c1 c3)");
        let id = sigma_action_same_sig(&e, &[1, 2, 3]).unwrap();
        assert_eq!(id, e);
    }

    #[test]
    fn sigma_is_right_action() {
        let e = parse("(c1 (n c2 c3) c4)", &sig("cccc;c")).unwrap();
        let sigmas = [[2, 3, 1, 4], [4, 1, 3, 2], [1, 4, 2, 3]];
        for s in &sigmas {
            for t in &sigmas {
                let st: Vec<usize> = (0..4).map(|i| s[t[i] - 1]).collect();
                let lhs = sigma_action(&sigma_action(&e, s).unwrap(), t).unwrap();
                let rhs = sigma_action(&e, &st).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs.degree(Grading::Lambda), e.degree(Grading::Lambda));
            }
        }
    }

    #[test]
    fn color_incompatible_permutation_rejected() {
        let e = parse("(s c1) (o3 c2)", &sig("cco;o")).unwrap();
        assert!(matches!(
            sigma_action_same_sig(&e, &[3, 2, 1]),
            Err(TreeError::ColorIncompatiblePermutation { .. })
        ));
        // The general action is still defined and lands in the permuted component.
        let moved = sigma_action(&e, &[3, 2, 1]).unwrap();
        assert_eq!(moved.signature().to_string(), "occ;o");
        assert_eq!(encode(&moved), "(s c3) (o1 c2)");
    }
}
