//! Nested-interval combinatorics and the poset structure of the two
//! operads' basis sets: down-sets under iterated blow-ups, the
//! correspondence between nested families and faces of associahedra,
//! cyclohedra and simplices, the contraction map, and the cells of the
//! cellular decompositions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::homology::{ChainComplexZ, IntegerMatrix};
use crate::rbr::{self, FormalSum};
use crate::rs::{self, RSBasis, RsSum};
use crate::trees::{
    validate, BasisElement, Color, Grading, Signature, Tree, TreeError, VertexKind, Word,
};

// ---------------------------------------------------------------------------
// Ground sets and intervals.
// ---------------------------------------------------------------------------

/// Ground sets over which nested families are enumerated. Linear sets are
/// encoded by their size; the marked points are the first (and last)
/// positions. The cyclic set is `{0, ..., n}` with `0` the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroundSet {
    /// `{1 < ... < n}`.
    Plain(usize),
    /// `{left < 1 < ... < n}`, the input set of a square neutral vertex.
    LeftMarked(usize),
    /// `{left < 1 < ... < n < right}`, the input set of an open vertex.
    Interval(usize),
    /// `S(n) = {0, 1, ..., n}` with the cyclic order.
    Cyclic(usize),
}

impl GroundSet {
    /// Number of points.
    pub fn size(self) -> usize {
        match self {
            GroundSet::Plain(n) => n,
            GroundSet::LeftMarked(n) => n + 1,
            GroundSet::Interval(n) => n + 2,
            GroundSet::Cyclic(n) => n + 1,
        }
    }

    pub fn is_cyclic(self) -> bool {
        matches!(self, GroundSet::Cyclic(_))
    }
}

/// A strict interval: for a linear ground set the positions `start..=end`
/// (never a singleton nor the whole set); for the cyclic set the run from
/// `start` to `end`, where runs with the same underlying set but
/// different endpoints are distinct objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    fn points_linear(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    /// Underlying point set of a cyclic run from `start` to `end`.
    fn points_cyclic(&self, m: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = self.start;
        loop {
            out.push(p);
            if p == self.end {
                break;
            }
            p = (p + 1) % m;
        }
        out
    }

    /// Edge labels (source points) crossed by the cyclic run.
    fn edges_cyclic(&self, m: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut p = self.start;
        while p != self.end {
            out.insert(p);
            p = (p + 1) % m;
        }
        out
    }

    fn len_cyclic(&self, m: usize) -> usize {
        (self.end + m - self.start) % m + 1
    }
}

/// All strict intervals of a ground set.
pub fn strict_intervals(ground: GroundSet) -> Vec<Interval> {
    let m = ground.size();
    let mut out = Vec::new();
    if ground.is_cyclic() {
        for start in 0..m {
            for end in 0..m {
                if start != end {
                    out.push(Interval { start, end });
                }
            }
        }
    } else {
        for start in 0..m {
            for end in start + 1..m {
                if !(start == 0 && end == m - 1) {
                    out.push(Interval { start, end });
                }
            }
        }
    }
    out
}

/// Containment of intervals: point-set containment in the linear case,
/// run containment (edge sets) in the cyclic case.
pub fn contains(ground: GroundSet, outer: &Interval, inner: &Interval) -> bool {
    if ground.is_cyclic() {
        let m = ground.size();
        outer.edges_cyclic(m).is_superset(&inner.edges_cyclic(m))
    } else {
        outer.start <= inner.start && inner.end <= outer.end
    }
}

/// Whether two strict intervals may coexist in a nested family: disjoint
/// underlying sets, or one contained in the other as a run.
pub fn compatible(ground: GroundSet, a: &Interval, b: &Interval) -> bool {
    if a == b {
        return true;
    }
    if ground.is_cyclic() {
        let m = ground.size();
        let pa: BTreeSet<usize> = a.points_cyclic(m).into_iter().collect();
        let pb: BTreeSet<usize> = b.points_cyclic(m).into_iter().collect();
        if pa.is_disjoint(&pb) {
            return true;
        }
        contains(ground, a, b) || contains(ground, b, a)
    } else {
        if a.end < b.start || b.end < a.start {
            return true;
        }
        contains(ground, a, b) || contains(ground, b, a)
    }
}

/// A pairwise-nested set of strict intervals over one ground set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NestedFamily {
    pub ground: GroundSet,
    pub members: BTreeSet<Interval>,
}

impl NestedFamily {
    pub fn new(ground: GroundSet, members: BTreeSet<Interval>) -> Result<NestedFamily, TreeError> {
        let f = NestedFamily { ground, members };
        if !f.is_nested() {
            return Err(TreeError::Domain("family is not nested".into()));
        }
        Ok(f)
    }

    pub fn empty(ground: GroundSet) -> NestedFamily {
        NestedFamily { ground, members: BTreeSet::new() }
    }

    pub fn is_nested(&self) -> bool {
        let v: Vec<_> = self.members.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !compatible(self.ground, v[i], v[j]) {
                    return false;
                }
            }
        }
        true
    }

    fn point_set(&self, i: &Interval) -> BTreeSet<usize> {
        if self.ground.is_cyclic() {
            i.points_cyclic(self.ground.size()).into_iter().collect()
        } else {
            i.points_linear().collect()
        }
    }

    fn member_len(&self, i: &Interval) -> usize {
        if self.ground.is_cyclic() {
            i.len_cyclic(self.ground.size())
        } else {
            i.end - i.start + 1
        }
    }

    /// The restrictive condition: every member has two points, or differs
    /// from another member by a member or by a single point.
    pub fn is_restrictive(&self) -> bool {
        let sets: BTreeMap<&Interval, BTreeSet<usize>> = self
            .members
            .iter()
            .map(|m| (m, self.point_set(m)))
            .collect();
        let all_sets: BTreeSet<&BTreeSet<usize>> = sets.values().collect();
        self.members.iter().all(|a| {
            if self.member_len(a) == 2 {
                return true;
            }
            self.members.iter().any(|b| {
                if a == b {
                    return false;
                }
                let diff: BTreeSet<usize> = sets[a].difference(&sets[b]).copied().collect();
                diff.len() == 1 || (!diff.is_empty() && all_sets.contains(&diff))
            })
        })
    }

    /// The subfamily of members maximal for containment.
    pub fn maximal_members(&self) -> NestedFamily {
        let members = self
            .members
            .iter()
            .filter(|a| {
                !self
                    .members
                    .iter()
                    .any(|b| b != *a && contains(self.ground, b, a))
            })
            .cloned()
            .collect();
        NestedFamily { ground: self.ground, members }
    }

    /// A restrictive completion: adds strict sub-intervals of members
    /// until the restrictive condition holds. The result depends on
    /// choices, but its class under maximal-member extraction does not.
    pub fn completion(&self) -> Option<NestedFamily> {
        fn violating(f: &NestedFamily) -> Option<Interval> {
            f.members
                .iter()
                .find(|a| {
                    f.member_len(a) > 2 && {
                        let fa = f.point_set(a);
                        !f.members.iter().any(|b| {
                            if *a == b {
                                return false;
                            }
                            let diff: BTreeSet<usize> =
                                fa.difference(&f.point_set(b)).copied().collect();
                            diff.len() == 1
                                || (!diff.is_empty()
                                    && f.members.iter().any(|c| f.point_set(c) == diff))
                        })
                    }
                })
                .copied()
        }
        fn go(f: NestedFamily, depth: usize) -> Option<NestedFamily> {
            let Some(a) = violating(&f) else { return Some(f) };
            if depth > 64 {
                return None;
            }
            let m = f.ground.size();
            // Candidate moves: drop one end of the offending run.
            let shrunk = if f.ground.is_cyclic() {
                vec![
                    Interval { start: (a.start + 1) % m, end: a.end },
                    Interval { start: a.start, end: (a.end + m - 1) % m },
                ]
            } else {
                vec![
                    Interval { start: a.start + 1, end: a.end },
                    Interval { start: a.start, end: a.end - 1 },
                ]
            };
            for c in shrunk {
                if c.start == c.end {
                    continue;
                }
                if f.members.iter().all(|b| compatible(f.ground, &c, b)) {
                    let mut members = f.members.clone();
                    members.insert(c);
                    if let Some(done) = go(NestedFamily { ground: f.ground, members }, depth + 1) {
                        return Some(done);
                    }
                }
            }
            // Fall back to an interior split into two compatible halves.
            let points: Vec<usize> = if f.ground.is_cyclic() {
                a.points_cyclic(m)
            } else {
                a.points_linear().collect()
            };
            for cut in 1..points.len() - 1 {
                let left = Interval { start: points[0], end: points[cut] };
                let right = Interval { start: points[cut], end: points[points.len() - 1] };
                let halves = [left, right];
                if halves.iter().all(|h| {
                    h.start != h.end && f.members.iter().all(|b| compatible(f.ground, h, b))
                }) && compatible(f.ground, &left, &right)
                {
                    let mut members = f.members.clone();
                    members.insert(left);
                    members.insert(right);
                    if let Some(done) = go(NestedFamily { ground: f.ground, members }, depth + 1) {
                        return Some(done);
                    }
                }
            }
            None
        }
        go(self.clone(), 0)
    }
}

/// Complete enumeration of nested families, optionally restricted to the
/// restrictive ones.
pub fn enumerate_nested(ground: GroundSet, restrictive: bool) -> Vec<NestedFamily> {
    let intervals = strict_intervals(ground);
    let mut out = Vec::new();
    let mut chosen: Vec<Interval> = Vec::new();
    fn rec(
        ground: GroundSet,
        intervals: &[Interval],
        from: usize,
        chosen: &mut Vec<Interval>,
        out: &mut Vec<NestedFamily>,
    ) {
        out.push(NestedFamily {
            ground,
            members: chosen.iter().cloned().collect(),
        });
        for i in from..intervals.len() {
            let cand = intervals[i];
            if chosen.iter().all(|c| compatible(ground, c, &cand)) {
                chosen.push(cand);
                rec(ground, intervals, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(ground, &intervals, 0, &mut chosen, &mut out);
    if restrictive {
        out.retain(NestedFamily::is_restrictive);
    }
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Poset structure of the tree bases.
// ---------------------------------------------------------------------------

/// The full down-set of `e` under iterated blow-up components.
pub fn down_set(e: &BasisElement) -> BTreeSet<BasisElement> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(e.clone());
    queue.push_back(e.clone());
    while let Some(x) = queue.pop_front() {
        for idx in 0..rbr::vertex_count(&x) {
            for (y, _) in rbr::blow_up_components(&x, idx) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen
}

/// Reachability in the blow-up order: `a <= b` when `a` is an iterated
/// blow-up of `b`.
pub fn leq_t(a: &BasisElement, b: &BasisElement) -> Result<bool, TreeError> {
    if a.signature() != b.signature() {
        return Err(TreeError::SignatureMismatch {
            left: a.signature().to_string(),
            right: b.signature().to_string(),
        });
    }
    Ok(down_set(b).contains(a))
}

/// The full down-set of a class under the simplicial face maps.
pub fn down_set_tas(cls: &RSBasis) -> BTreeSet<RSBasis> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(cls.clone());
    queue.push_back(cls.clone());
    while let Some(x) = queue.pop_front() {
        for y in rs::faces(&x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn leq_tas(a: &RSBasis, b: &RSBasis) -> Result<bool, TreeError> {
    if a.signature() != b.signature() {
        return Err(TreeError::SignatureMismatch {
            left: a.signature().to_string(),
            right: b.signature().to_string(),
        });
    }
    Ok(down_set_tas(b).contains(a))
}

/// An explicit finite poset with a dimension function, as exported by the
/// command-line front end.
#[derive(Debug, Clone, Serialize)]
pub struct FacePoset {
    pub elements: Vec<String>,
    pub leq: Vec<(usize, usize)>,
    pub dims: Vec<usize>,
}

impl FacePoset {
    /// Numbers of faces per dimension, starting at dimension zero.
    pub fn fvector(&self) -> Vec<usize> {
        let maxdim = self.dims.iter().copied().max().unwrap_or(0);
        let mut f = vec![0usize; maxdim + 1];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    fn check_axioms(&self) -> bool {
        let n = self.elements.len();
        let mut rel = vec![vec![false; n]; n];
        for &(a, b) in &self.leq {
            rel[a][b] = true;
        }
        for i in 0..n {
            if !rel[i][i] {
                return false;
            }
            for j in 0..n {
                if rel[i][j] && rel[j][i] && i != j {
                    return false;
                }
                for k in 0..n {
                    if rel[i][j] && rel[j][k] && !rel[i][k] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The face poset of the down-set of `e`, with dimensions normalized so
/// the deepest blow-ups have dimension zero.
pub fn face_poset(e: &BasisElement) -> FacePoset {
    let elements: Vec<BasisElement> = down_set(e).into_iter().collect();
    let max_neutral = elements
        .iter()
        .map(|x| x.word().neutral_count())
        .max()
        .unwrap_or(0);
    let sets: Vec<BTreeSet<BasisElement>> = elements.iter().map(down_set).collect();
    let mut leq = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, set_b) in sets.iter().enumerate() {
            if set_b.contains(a) {
                leq.push((i, j));
            }
        }
    }
    let dims = elements
        .iter()
        .map(|x| max_neutral - x.word().neutral_count())
        .collect();
    let poset = FacePoset {
        elements: elements.iter().map(|x| x.to_string()).collect(),
        leq,
        dims,
    };
    assert!(poset.check_axioms(), "down-set relation is a poset");
    poset
}

/// The face poset of the class down-set of `cls`.
pub fn face_poset_tas(cls: &RSBasis) -> FacePoset {
    let elements: Vec<RSBasis> = down_set_tas(cls).into_iter().collect();
    let max_neutral = elements
        .iter()
        .map(|x| x.representative().word().neutral_count())
        .max()
        .unwrap_or(0);
    let sets: Vec<BTreeSet<RSBasis>> = elements.iter().map(down_set_tas).collect();
    let mut leq = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, set_b) in sets.iter().enumerate() {
            if set_b.contains(a) {
                leq.push((i, j));
            }
        }
    }
    let dims = elements
        .iter()
        .map(|x| max_neutral - x.representative().word().neutral_count())
        .collect();
    let poset = FacePoset {
        elements: elements.iter().map(|x| x.representative().to_string()).collect(),
        leq,
        dims,
    };
    assert!(poset.check_axioms(), "class down-set relation is a poset");
    poset
}

// ---------------------------------------------------------------------------
// Contraction.
// ---------------------------------------------------------------------------

/// Merges adjacent neutral vertices (round with round into round, round
/// under square into square) and juxtaposed square neutral roots, until
/// stable.
pub fn contraction(e: &BasisElement) -> BasisElement {
    let word = contract_word(e.word());
    validate(word, e.signature()).expect("contraction preserves validity")
}

fn contract_word(w: &Word) -> Word {
    let mut trees: Vec<Tree> = w.trees.iter().map(contract_tree).collect();
    // Merge runs of square neutral roots.
    let mut merged: Vec<Tree> = Vec::new();
    for t in trees.drain(..) {
        if t.kind == VertexKind::SquareNeutral
            && merged.last().map(|p: &Tree| p.kind) == Some(VertexKind::SquareNeutral)
        {
            merged.last_mut().unwrap().children.extend(t.children);
        } else {
            merged.push(t);
        }
    }
    Word::new(merged)
}

fn contract_tree(t: &Tree) -> Tree {
    let mut node = Tree {
        kind: t.kind,
        children: t.children.iter().map(contract_tree).collect(),
    };
    if node.kind.is_neutral() {
        // Absorb round neutral children.
        let mut children = Vec::new();
        for c in node.children {
            if c.kind == VertexKind::RoundNeutral {
                children.extend(c.children);
            } else {
                children.push(c);
            }
        }
        node.children = children;
    }
    node
}

// ---------------------------------------------------------------------------
// The bijections onto down-sets of the round corolla.
// ---------------------------------------------------------------------------

/// Which side the fresh unit leaf is grafted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaturalVariant {
    Left,
    Right,
}

const UNIT_LEFT: u32 = 0;
const UNIT_RIGHT: u32 = u32::MAX;

fn is_square_word(e: &BasisElement) -> bool {
    e.signature().output() == Color::Open
        && e.signature().inputs().iter().all(|c| *c == Color::Closed)
        && e.word().trees.iter().all(|t| t.kind == VertexKind::SquareNeutral)
}

/// Turns one square-rooted tree into a round-rooted tree with a unit
/// leaf grafted as the first or last input.
fn lift_tree(t: &Tree, variant: NaturalVariant) -> Tree {
    let unit = Tree::leaf(VertexKind::Closed(match variant {
        NaturalVariant::Left => UNIT_LEFT,
        NaturalVariant::Right => UNIT_RIGHT,
    }));
    let mut children = t.children.clone();
    match variant {
        NaturalVariant::Left => children.insert(0, unit),
        NaturalVariant::Right => children.push(unit),
    }
    Tree::node(VertexKind::RoundNeutral, children)
}

/// Replaces the unique childless vertex labeled `label` by `sub`.
fn graft_at_unit(t: &Tree, label: u32, sub: &Tree) -> Tree {
    if t.kind == VertexKind::Closed(label) && t.children.is_empty() {
        return sub.clone();
    }
    Tree {
        kind: t.kind,
        children: t.children.iter().map(|c| graft_at_unit(c, label, sub)).collect(),
    }
}

fn fold_word(trees: &[Tree], variant: NaturalVariant) -> Tree {
    match variant {
        NaturalVariant::Left => {
            // Fold right to left, grafting each tree into the unit of the
            // one after it.
            let mut acc = lift_tree(trees.last().expect("nonempty word"), variant);
            for t in trees[..trees.len() - 1].iter().rev() {
                let lifted = lift_tree(t, variant);
                acc = graft_at_unit(&acc, UNIT_LEFT, &lifted);
            }
            acc
        }
        NaturalVariant::Right => {
            let mut acc = lift_tree(&trees[0], variant);
            for t in &trees[1..] {
                let lifted = lift_tree(t, variant);
                acc = graft_at_unit(&acc, UNIT_RIGHT, &lifted);
            }
            acc
        }
    }
}

fn relabel_tree(t: &Tree, f: &impl Fn(u32) -> u32) -> Tree {
    Tree {
        kind: match t.kind {
            VertexKind::Closed(l) => VertexKind::Closed(f(l)),
            VertexKind::Open(l) => VertexKind::Open(f(l)),
            k => k,
        },
        children: t.children.iter().map(|c| relabel_tree(c, f)).collect(),
    }
}

/// The poset bijection from words of square neutral rooted trees into the
/// down-set of the round corolla on one more input. The unit leaf becomes
/// label 1 (left variant, shifting the old labels up) or label n+1
/// (right variant, labels unchanged).
pub fn natural_map(e: &BasisElement, variant: NaturalVariant) -> Result<BasisElement, TreeError> {
    if !is_square_word(e) {
        return Err(TreeError::Domain(format!(
            "{e} is not a word of square neutral rooted trees"
        )));
    }
    let n = e.signature().arity() as u32;
    let folded = fold_word(&e.word().trees, variant);
    let relabeled = match variant {
        NaturalVariant::Left => relabel_tree(&folded, &|l| if l == UNIT_LEFT { 1 } else { l + 1 }),
        NaturalVariant::Right => {
            relabel_tree(&folded, &|l| if l == UNIT_RIGHT { n + 1 } else { l })
        }
    };
    let sig = Signature::new(vec![Color::Closed; n as usize + 1], Color::Closed)?;
    validate(Word::single(relabeled), &sig)
}

/// Inverse of [`natural_map`].
pub fn natural_map_inverse(
    e: &BasisElement,
    variant: NaturalVariant,
) -> Result<BasisElement, TreeError> {
    let n = e.signature().arity() as u32 - 1;
    if e.signature().output() != Color::Closed || e.word().trees.len() != 1 {
        return Err(TreeError::Domain(format!("{e} is not in the image")));
    }
    // Undo the relabeling so the unit carries its reserved label again.
    let tree = match variant {
        NaturalVariant::Left => relabel_tree(&e.word().trees[0], &|l| {
            if l == 1 {
                UNIT_LEFT
            } else {
                l - 1
            }
        }),
        NaturalVariant::Right => relabel_tree(&e.word().trees[0], &|l| {
            if l == n + 1 {
                UNIT_RIGHT
            } else {
                l
            }
        }),
    };
    let trees = unfold_tree(&tree, variant)?;
    let sig = Signature::new(vec![Color::Closed; n as usize], Color::Open)?;
    validate(Word::new(trees), &sig)
}

fn unfold_tree(t: &Tree, variant: NaturalVariant) -> Result<Vec<Tree>, TreeError> {
    if t.kind != VertexKind::RoundNeutral || t.children.is_empty() {
        return Err(TreeError::Domain("expected a round neutral root".into()));
    }
    match variant {
        NaturalVariant::Left => {
            let first = &t.children[0];
            let this = Tree::node(VertexKind::SquareNeutral, t.children[1..].to_vec());
            if first.kind == VertexKind::Closed(UNIT_LEFT) && first.children.is_empty() {
                Ok(vec![this])
            } else {
                let mut rest = unfold_tree(first, variant)?;
                rest.push(this);
                Ok(rest)
            }
        }
        NaturalVariant::Right => {
            let last = t.children.last().expect("nonempty");
            let this = Tree::node(
                VertexKind::SquareNeutral,
                t.children[..t.children.len() - 1].to_vec(),
            );
            if last.kind == VertexKind::Closed(UNIT_RIGHT) && last.children.is_empty() {
                Ok(vec![this])
            } else {
                let mut rest = vec![this];
                rest.extend(unfold_tree(last, variant)?);
                Ok(rest)
            }
        }
    }
}

/// The poset bijection from the down-set of the open corolla into the
/// down-set of the round corolla on two more inputs: the open root
/// becomes round neutral with unit leaves as first and last inputs, and
/// the flanking square words are folded in.
pub fn flat_map(e: &BasisElement) -> Result<BasisElement, TreeError> {
    let sig = e.signature();
    let n = sig.arity() - 1;
    let gamma_shape = sig.output() == Color::Open
        && sig.input(1) == Some(Color::Open)
        && (2..=sig.arity()).all(|i| sig.input(i) == Some(Color::Closed));
    if !gamma_shape {
        return Err(TreeError::Domain(format!(
            "{e} does not have an open input in the first slot"
        )));
    }
    let trees = &e.word().trees;
    let open_pos = trees
        .iter()
        .position(|t| matches!(t.kind, VertexKind::Open(_)))
        .expect("one open root");
    let (left, rest) = trees.split_at(open_pos);
    let (open_tree, right) = rest.split_first().expect("open tree present");
    // The lifted open root with both unit leaves.
    let mut children = vec![Tree::leaf(VertexKind::Closed(UNIT_LEFT))];
    children.extend(open_tree.children.iter().cloned());
    children.push(Tree::leaf(VertexKind::Closed(UNIT_RIGHT)));
    let mut acc = Tree::node(VertexKind::RoundNeutral, children);
    if !right.is_empty() {
        let folded = fold_word(right, NaturalVariant::Right);
        acc = graft_at_unit(&acc, UNIT_RIGHT, &folded);
    }
    if !left.is_empty() {
        let folded = fold_word(left, NaturalVariant::Left);
        acc = graft_at_unit(&acc, UNIT_LEFT, &folded);
    }
    let relabeled = relabel_tree(&acc, &|l| {
        if l == UNIT_LEFT {
            1
        } else if l == UNIT_RIGHT {
            n as u32 + 2
        } else {
            l
        }
    });
    let target = Signature::new(vec![Color::Closed; n + 2], Color::Closed)?;
    validate(Word::single(relabeled), &target)
}

/// Inverse of [`flat_map`].
pub fn flat_map_inverse(e: &BasisElement) -> Result<BasisElement, TreeError> {
    let m = e.signature().arity();
    if e.signature().output() != Color::Closed || e.word().trees.len() != 1 || m < 2 {
        return Err(TreeError::Domain(format!("{e} is not in the image")));
    }
    let n = m - 2;
    let tree = relabel_tree(&e.word().trees[0], &|l| {
        if l == 1 {
            UNIT_LEFT
        } else if l == m as u32 {
            UNIT_RIGHT
        } else {
            l
        }
    });
    if tree.kind != VertexKind::RoundNeutral {
        return Err(TreeError::Domain("expected a round neutral root".into()));
    }
    let first = tree.children.first().expect("nonempty");
    let last = tree.children.last().expect("nonempty");
    let left_words = if first.kind == VertexKind::Closed(UNIT_LEFT) && first.children.is_empty() {
        Vec::new()
    } else {
        unfold_tree(first, NaturalVariant::Left)?
    };
    let right_words = if last.kind == VertexKind::Closed(UNIT_RIGHT) && last.children.is_empty() {
        Vec::new()
    } else {
        unfold_tree(last, NaturalVariant::Right)?
    };
    let middle = Tree::node(
        VertexKind::Open(1),
        tree.children[1..tree.children.len() - 1].to_vec(),
    );
    let mut trees = left_words;
    trees.push(middle);
    trees.extend(right_words);
    let mut inputs = vec![Color::Open];
    inputs.extend(vec![Color::Closed; n]);
    let sig = Signature::new(inputs, Color::Open)?;
    validate(Word::new(trees), &sig)
}

// ---------------------------------------------------------------------------
// The bijection from nested cyclic families onto the closed corolla
// down-set.
// ---------------------------------------------------------------------------

/// Builds the tree of a nested family over the cyclic set: the empty
/// family gives the corolla, arcs through the output stack neutral
/// vertices below the closed root (innermost arc at the tree root), and
/// the remaining intervals group inputs above.
pub fn upsilon(family: &NestedFamily) -> Result<BasisElement, TreeError> {
    let GroundSet::Cyclic(n) = family.ground else {
        return Err(TreeError::Domain("upsilon needs a cyclic ground set".into()));
    };
    if !family.is_nested() {
        return Err(TreeError::Domain("family is not nested".into()));
    }
    let m = n + 1;
    let members: Vec<Interval> = family.members.iter().cloned().collect();
    let zero_arcs: Vec<Interval> = {
        let mut arcs: Vec<Interval> = members
            .iter()
            .filter(|a| a.points_cyclic(m).contains(&0))
            .cloned()
            .collect();
        // Through-zero arcs form a chain; sort them innermost first.
        arcs.sort_by_key(|a| a.len_cyclic(m));
        arcs.sort_by_key(|a| a.edges_cyclic(m).len());
        arcs
    };
    let linear: Vec<Interval> = members
        .iter()
        .filter(|a| !a.points_cyclic(m).contains(&0))
        .cloned()
        .collect();

    // Host of a point: the smallest member containing it, or the closed
    // root when none does.
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Host {
        Member(Interval),
        Root,
    }
    let smallest_containing = |pred: &dyn Fn(&Interval) -> bool| -> Option<Interval> {
        members
            .iter()
            .filter(|c| pred(c))
            .min_by_key(|c| c.edges_cyclic(m).len())
            .cloned()
    };
    let host_of_point = |p: usize| -> Host {
        smallest_containing(&|c| c.points_cyclic(m).contains(&p))
            .map(Host::Member)
            .unwrap_or(Host::Root)
    };
    let host_of_member = |a: &Interval| -> Host {
        smallest_containing(&|c| c != a && contains(family.ground, c, a))
            .map(Host::Member)
            .unwrap_or(Host::Root)
    };

    // Children of each host, keyed for planar order: a point sits at twice
    // its value, a member block at twice its least value, and the special
    // block toward the root just after the end of the enclosing arc.
    #[derive(Clone, Debug)]
    enum Item {
        Leaf(usize),
        Block(Interval),
        Special,
    }
    let mut children: BTreeMap<Host, Vec<(usize, Item)>> = BTreeMap::new();
    for p in 1..=n {
        children
            .entry(host_of_point(p))
            .or_default()
            .push((2 * p, Item::Leaf(p)));
    }
    for a in &linear {
        children
            .entry(host_of_member(a))
            .or_default()
            .push((2 * a.start, Item::Block(*a)));
    }
    // The chain of through-zero arcs: the innermost is the tree root, the
    // outermost holds the closed root. The special child of each link is
    // the next link (or the closed root), positioned after the end of the
    // link's own arc.
    for (i, arc) in zero_arcs.iter().enumerate() {
        let key = 2 * arc.end + 1;
        children
            .entry(Host::Member(*arc))
            .or_default()
            .push((key, Item::Special));
        let _ = i;
    }

    fn build(
        host: Host,
        n: usize,
        zero_arcs: &[Interval],
        children: &BTreeMap<Host, Vec<(usize, Item)>>,
        chain_pos: usize,
    ) -> Tree {
        let kind = match host {
            Host::Root => VertexKind::Closed(1),
            Host::Member(_) => VertexKind::RoundNeutral,
        };
        let mut items: Vec<(usize, Item)> =
            children.get(&host).cloned().unwrap_or_default();
        items.sort_by_key(|(k, _)| *k);
        let subtrees = items
            .into_iter()
            .map(|(_, item)| match item {
                Item::Leaf(p) => Tree::leaf(VertexKind::Closed(p as u32 + 1)),
                Item::Block(b) => build(Host::Member(b), n, zero_arcs, children, usize::MAX),
                Item::Special => {
                    if chain_pos + 1 < zero_arcs.len() {
                        build(
                            Host::Member(zero_arcs[chain_pos + 1]),
                            n,
                            zero_arcs,
                            children,
                            chain_pos + 1,
                        )
                    } else {
                        build(Host::Root, n, zero_arcs, children, usize::MAX)
                    }
                }
            })
            .collect();
        Tree { kind, children: subtrees }
    }

    let root = if zero_arcs.is_empty() {
        build(Host::Root, n, &zero_arcs, &children, usize::MAX)
    } else {
        build(Host::Member(zero_arcs[0]), n, &zero_arcs, &children, 0)
    };
    let sig = Signature::new(vec![Color::Closed; n + 1], Color::Closed)?;
    validate(Word::single(root), &sig)
}

// ---------------------------------------------------------------------------
// Cells of the cellular decompositions.
// ---------------------------------------------------------------------------

/// Which cell complex to assemble.
#[derive(Debug, Clone)]
pub enum CellTarget {
    /// The subcomplex spanned by the down-set of a basis element.
    DownSet(BasisElement),
    /// The class down-set with the quotient differential.
    Theta(RSBasis),
    /// The union of the down-sets of the contractions of every class
    /// below the given one.
    ThetaInf(RSBasis),
}

/// The chain complex of a cell, with the ambient differential restricted.
pub fn cell_complex(target: &CellTarget) -> ChainComplexZ {
    match target {
        CellTarget::DownSet(e) => {
            let elements: Vec<BasisElement> = down_set(e).into_iter().collect();
            rbr_subcomplex(&elements)
        }
        CellTarget::Theta(cls) => {
            let elements: Vec<RSBasis> = down_set_tas(cls).into_iter().collect();
            rs_subcomplex(&elements)
        }
        CellTarget::ThetaInf(cls) => {
            let mut elements: BTreeSet<BasisElement> = BTreeSet::new();
            for below in down_set_tas(cls) {
                let contracted = contraction(below.representative());
                elements.extend(down_set(&contracted));
            }
            let elements: Vec<BasisElement> = elements.into_iter().collect();
            rbr_subcomplex(&elements)
        }
    }
}

fn rbr_subcomplex(elements: &[BasisElement]) -> ChainComplexZ {
    let max_neutral = elements
        .iter()
        .map(|e| e.word().neutral_count())
        .max()
        .unwrap_or(0);
    let min_degree = -(max_neutral as i64);
    let mut by_degree: Vec<Vec<BasisElement>> = vec![Vec::new(); max_neutral + 1];
    for e in elements {
        let idx = (e.degree(Grading::Lambda) - min_degree) as usize;
        by_degree[idx].push(e.clone());
    }
    let labels = by_degree
        .iter()
        .map(|b| b.iter().map(|e| e.to_string()).collect())
        .collect();
    let mut boundaries = Vec::new();
    for i in 0..by_degree.len() {
        let rows = if i == 0 { 0 } else { by_degree[i - 1].len() };
        let mut mat = IntegerMatrix::zeros(rows, by_degree[i].len());
        if i > 0 {
            let index: BTreeMap<&BasisElement, usize> = by_degree[i - 1]
                .iter()
                .enumerate()
                .map(|(r, e)| (e, r))
                .collect();
            for (col, e) in by_degree[i].iter().enumerate() {
                let de = rbr::differential(&FormalSum::from_element(e.clone()));
                for (term, coeff) in de.terms() {
                    let row = *index
                        .get(term)
                        .expect("down-sets are closed under the differential");
                    mat.set(row, col, BigInt::from(coeff));
                }
            }
        }
        boundaries.push(mat);
    }
    ChainComplexZ::new(min_degree, labels, boundaries).expect("restricted differential squares to zero")
}

fn rs_subcomplex(elements: &[RSBasis]) -> ChainComplexZ {
    let max_neutral = elements
        .iter()
        .map(|e| e.representative().word().neutral_count())
        .max()
        .unwrap_or(0);
    let min_degree = -(max_neutral as i64);
    let mut by_degree: Vec<Vec<RSBasis>> = vec![Vec::new(); max_neutral + 1];
    for e in elements {
        let idx = (e.degree() - min_degree) as usize;
        by_degree[idx].push(e.clone());
    }
    let labels = by_degree
        .iter()
        .map(|b| {
            b.iter()
                .map(|e| e.representative().to_string())
                .collect()
        })
        .collect();
    let mut boundaries = Vec::new();
    for i in 0..by_degree.len() {
        let rows = if i == 0 { 0 } else { by_degree[i - 1].len() };
        let mut mat = IntegerMatrix::zeros(rows, by_degree[i].len());
        if i > 0 {
            let index: BTreeMap<&RSBasis, usize> = by_degree[i - 1]
                .iter()
                .enumerate()
                .map(|(r, e)| (e, r))
                .collect();
            for (col, e) in by_degree[i].iter().enumerate() {
                let de = rs::differential_rs(&RsSum::from_class(e.clone()));
                for (term, coeff) in de.terms() {
                    let row = *index
                        .get(term)
                        .expect("class down-sets are closed under the differential");
                    mat.set(row, col, BigInt::from(coeff));
                }
            }
        }
        boundaries.push(mat);
    }
    ChainComplexZ::new(min_degree, labels, boundaries).expect("restricted differential squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::is_contractible;
    use crate::rbr::{generator, GeneratorKind};
    use crate::rs::normal_form;
    use crate::trees::parse;

    fn sig(s: &str) -> Signature {
        Signature::parse(s).unwrap()
    }

    fn elem(text: &str, s: &str) -> BasisElement {
        parse(text, &sig(s)).unwrap()
    }

    fn catalan(n: usize) -> usize {
        let mut c = vec![0usize; n + 1];
        c[0] = 1;
        for i in 1..=n {
            c[i] = (0..i).map(|j| c[j] * c[i - 1 - j]).sum();
        }
        c[n]
    }

    fn binomial(n: usize, k: usize) -> usize {
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![1];
            for w in row.windows(2) {
                next.push(w[0] + w[1]);
            }
            next.push(1);
            row = next;
        }
        row[k]
    }

    fn little_schroeder(n: usize) -> usize {
        // a(1) = 1, a(2) = 3, (n+1)a(n) = 3(2n-1)a(n-1) - (n-2)a(n-2).
        let mut a = vec![0usize; n.max(2) + 1];
        a[1] = 1;
        a[2] = 3;
        for i in 3..=n.max(2) {
            a[i] = (3 * (2 * i - 1) * a[i - 1] - (i - 2) * a[i - 2]) / (i + 1);
        }
        a[n]
    }

    #[test]
    fn leq_basics() {
        let p3 = generator(GeneratorKind::Partial(3)).unwrap();
        assert!(leq_t(&p3, &p3).unwrap());
        let face = elem("(n c1 (n c2 c3))", "ccc;c");
        assert!(leq_t(&face, &p3).unwrap());
        assert!(!leq_t(&p3, &face).unwrap());
        let p2 = generator(GeneratorKind::Partial(2)).unwrap();
        assert!(matches!(
            leq_t(&p2, &p3),
            Err(TreeError::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn associahedron_counts() {
        for n in 2..=7 {
            let d = down_set(&generator(GeneratorKind::Partial(n)).unwrap());
            let vertices = d
                .iter()
                .filter(|e| e.word().neutral_count() == n - 1)
                .count();
            assert_eq!(vertices, catalan(n - 1), "vertices of K_{n}");
            assert_eq!(d.len(), little_schroeder(n - 1), "faces of K_{n}");
        }
    }

    #[test]
    fn cyclohedron_counts() {
        for n in 1..=5 {
            let d = down_set(&generator(GeneratorKind::M(n)).unwrap());
            let vertices = d
                .iter()
                .filter(|e| e.word().neutral_count() == n)
                .count();
            assert_eq!(vertices, binomial(2 * n, n), "vertices of W_{n}");
        }
    }

    #[test]
    fn nest_counts_match_down_sets() {
        assert_eq!(enumerate_nested(GroundSet::Cyclic(1), false).len(), 3);
        let nest2 = enumerate_nested(GroundSet::Cyclic(2), false);
        assert_eq!(nest2.len(), 13);
        assert_eq!(down_set(&generator(GeneratorKind::M(2)).unwrap()).len(), 13);
    }

    #[test]
    fn maximal_nested_family_counts() {
        // Maximal linear families are counted by the Catalan numbers.
        for n in 2..=7 {
            let fams = enumerate_nested(GroundSet::Plain(n), false);
            let max_size = fams.iter().map(|f| f.members.len()).max().unwrap();
            let maximal = fams.iter().filter(|f| f.members.len() == max_size).count();
            assert_eq!(maximal, catalan(n - 1), "plain({n})");
        }
        // Maximal cyclic families are counted by central binomials.
        for n in 1..=5 {
            let fams = enumerate_nested(GroundSet::Cyclic(n), false);
            let max_size = fams.iter().map(|f| f.members.len()).max().unwrap();
            let maximal = fams.iter().filter(|f| f.members.len() == max_size).count();
            assert_eq!(maximal, binomial(2 * n, n), "cyclic({n})");
        }
    }

    #[test]
    fn upsilon_examples() {
        let empty = NestedFamily::empty(GroundSet::Cyclic(2));
        assert_eq!(
            upsilon(&empty).unwrap(),
            generator(GeneratorKind::M(2)).unwrap()
        );
        // The inner interval [1,2] groups the two inputs above the root.
        let fam = NestedFamily::new(
            GroundSet::Cyclic(2),
            [Interval { start: 1, end: 2 }].into_iter().collect(),
        )
        .unwrap();
        assert_eq!(upsilon(&fam).unwrap(), elem("(c1 (n c2 c3))", "ccc;c"));
    }

    #[test]
    fn upsilon_nested_pair_at_seven() {
        // One arc through the output and one inner interval: the arc
        // stacks a neutral root below the closed vertex, the interval
        // groups four inputs above it.
        let fam = NestedFamily::new(
            GroundSet::Cyclic(7),
            [Interval { start: 0, end: 2 }, Interval { start: 4, end: 7 }]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let expected = elem("(n c2 c3 (c1 c4 (n c5 c6 c7 c8)))", "cccccccc;c");
        assert_eq!(upsilon(&fam).unwrap(), expected);
    }

    #[test]
    fn upsilon_is_an_order_isomorphism() {
        for n in 1..=3usize {
            let fams = enumerate_nested(GroundSet::Cyclic(n), false);
            let dset = down_set(&generator(GeneratorKind::M(n)).unwrap());
            assert_eq!(fams.len(), dset.len(), "cardinality at n={n}");
            let images: Vec<BasisElement> =
                fams.iter().map(|f| upsilon(f).unwrap()).collect();
            let unique: BTreeSet<_> = images.iter().cloned().collect();
            assert_eq!(unique.len(), images.len(), "injective at n={n}");
            assert!(images.iter().all(|t| dset.contains(t)));
            // Order: reverse inclusion of families matches blow-up order.
            for (i, f) in fams.iter().enumerate() {
                for (j, g) in fams.iter().enumerate() {
                    let finer = g.members.is_superset(&f.members);
                    let le = leq_t(&images[j], &images[i]).unwrap();
                    assert_eq!(finer, le, "order mismatch at n={n}, {i} vs {j}");
                }
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let w = elem("(s c1) (s c2 (n c3 c4))", "cccc;o");
        assert_eq!(contraction(&w), elem("(s c1 c2 c3 c4)", "cccc;o"));
        let fixed = elem("(s c1 (c2 c3)) (o5 c4)", "cccco;o");
        assert_eq!(contraction(&fixed), fixed);
        // Contraction undoes an inner round split.
        for k in 3..=4 {
            let p = generator(GeneratorKind::Partial(k)).unwrap();
            for idx in 0..rbr::vertex_count(&p) {
                for (face, _) in rbr::blow_up_components(&p, idx) {
                    assert_eq!(contraction(&face), p);
                }
            }
        }
    }

    #[test]
    fn contraction_is_idempotent() {
        for n in 1..=4 {
            for s in rbr::signatures_with_inputs(n) {
                for e in rbr::enumerate_basis(&s, None) {
                    let c = contraction(&e);
                    assert_eq!(contraction(&c), c, "c not idempotent at {e}");
                }
            }
        }
    }

    #[test]
    fn natural_map_examples() {
        let g1 = elem("(s c1)", "c;o");
        assert_eq!(
            natural_map(&g1, NaturalVariant::Left).unwrap(),
            elem("(n c1 c2)", "cc;c")
        );
        assert_eq!(
            natural_map(&g1, NaturalVariant::Right).unwrap(),
            elem("(n c1 c2)", "cc;c")
        );
        let word = elem("(s c1) (s c2)", "cc;o");
        assert_eq!(
            natural_map(&word, NaturalVariant::Left).unwrap(),
            elem("(n (n c1 c2) c3)", "ccc;c")
        );
        assert_eq!(
            natural_map(&word, NaturalVariant::Right).unwrap(),
            elem("(n c1 (n c2 c3))", "ccc;c")
        );
    }

    #[test]
    fn natural_map_is_an_order_isomorphism() {
        for n in 1..=3 {
            let domain = down_set(&generator(GeneratorKind::G(n)).unwrap());
            let target = down_set(&generator(GeneratorKind::Partial(n + 1)).unwrap());
            for variant in [NaturalVariant::Left, NaturalVariant::Right] {
                let images: BTreeMap<&BasisElement, BasisElement> = domain
                    .iter()
                    .map(|e| (e, natural_map(e, variant).unwrap()))
                    .collect();
                let unique: BTreeSet<_> = images.values().cloned().collect();
                assert_eq!(unique.len(), domain.len());
                assert_eq!(unique.len(), target.len(), "bijective onto the target");
                assert!(images.values().all(|t| target.contains(t)));
                for e in &domain {
                    assert_eq!(
                        &natural_map_inverse(&images[e], variant).unwrap(),
                        e,
                        "inverse fails"
                    );
                }
                for a in &domain {
                    for b in &domain {
                        let lhs = leq_t(a, b).unwrap();
                        let rhs = leq_t(&images[a], &images[b]).unwrap();
                        assert_eq!(lhs, rhs, "order mismatch under natural map");
                    }
                }
            }
        }
    }

    #[test]
    fn natural_map_commutes_with_contraction() {
        for n in 1..=3 {
            // All square words on n inputs, not only the corolla down-set.
            let s = Signature::new(vec![Color::Closed; n], Color::Open).unwrap();
            for e in rbr::enumerate_basis(&s, None) {
                if !e
                    .word()
                    .trees
                    .iter()
                    .all(|t| t.kind == VertexKind::SquareNeutral)
                {
                    continue;
                }
                let lhs = contraction(&natural_map(&e, NaturalVariant::Left).unwrap());
                let rhs = natural_map(&contraction(&e), NaturalVariant::Left).unwrap();
                assert_eq!(lhs, rhs, "contraction square fails at {e}");
                // Both bijections invert on the full square-word set.
                for variant in [NaturalVariant::Left, NaturalVariant::Right] {
                    let image = natural_map(&e, variant).unwrap();
                    assert_eq!(natural_map_inverse(&image, variant).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn flat_map_examples() {
        for n in 0..=2 {
            let gamma = generator(GeneratorKind::Gamma(n)).unwrap();
            assert_eq!(
                flat_map(&gamma).unwrap(),
                generator(GeneratorKind::Partial(n + 2)).unwrap()
            );
        }
    }

    #[test]
    fn flat_map_is_an_order_isomorphism() {
        for n in 0..=2 {
            let domain = down_set(&generator(GeneratorKind::Gamma(n)).unwrap());
            let target = down_set(&generator(GeneratorKind::Partial(n + 2)).unwrap());
            let images: BTreeMap<&BasisElement, BasisElement> = domain
                .iter()
                .map(|e| (e, flat_map(e).unwrap()))
                .collect();
            let unique: BTreeSet<_> = images.values().cloned().collect();
            assert_eq!(unique.len(), domain.len());
            assert_eq!(unique.len(), target.len());
            assert!(images.values().all(|t| target.contains(t)));
            for e in &domain {
                assert_eq!(&flat_map_inverse(&images[e]).unwrap(), e);
            }
            for a in &domain {
                for b in &domain {
                    assert_eq!(
                        leq_t(a, b).unwrap(),
                        leq_t(&images[a], &images[b]).unwrap(),
                        "order mismatch under flat map"
                    );
                }
            }
        }
    }

    #[test]
    fn simplex_class_counts() {
        for n in 1..=6 {
            let m = normal_form(&generator(GeneratorKind::M(n)).unwrap()).unwrap();
            let d = down_set_tas(&m);
            assert_eq!(d.len(), (1 << (n + 1)) - 1, "faces of the {n}-simplex");
        }
    }

    #[test]
    fn theta_of_m12_is_contractible_rank_seven() {
        let m = normal_form(&generator(GeneratorKind::M(2)).unwrap()).unwrap();
        let c = cell_complex(&CellTarget::Theta(m));
        assert_eq!(c.total_rank(), 7);
        assert!(is_contractible(&c));
    }

    #[test]
    fn down_set_of_partial4_is_contractible_rank_eleven() {
        let p = generator(GeneratorKind::Partial(4)).unwrap();
        let c = cell_complex(&CellTarget::DownSet(p));
        assert_eq!(c.total_rank(), 11);
        assert!(is_contractible(&c));
    }

    #[test]
    fn theta_inf_of_m12_is_contractible() {
        let m = normal_form(&generator(GeneratorKind::M(2)).unwrap()).unwrap();
        let c = cell_complex(&CellTarget::ThetaInf(m));
        assert!(is_contractible(&c));
    }

    #[test]
    fn fvector_of_m12() {
        let p = face_poset(&generator(GeneratorKind::M(2)).unwrap());
        assert_eq!(p.fvector(), vec![6, 6, 1]);
    }

    #[test]
    fn leq_tas_one_step_faces() {
        let m = normal_form(&generator(GeneratorKind::M(2)).unwrap()).unwrap();
        for f in rs::faces(&m) {
            assert!(leq_tas(&f, &m).unwrap());
        }
        assert_eq!(down_set_tas(&m).len(), 7);
    }

    #[test]
    fn maximal_extraction_is_idempotent() {
        for ground in [GroundSet::Plain(4), GroundSet::Cyclic(3), GroundSet::Interval(2)] {
            for f in enumerate_nested(ground, false) {
                let m1 = f.maximal_members();
                assert_eq!(m1.maximal_members(), m1);
            }
        }
    }

    #[test]
    fn completion_preserves_maximal_members() {
        for ground in [GroundSet::Plain(5), GroundSet::Cyclic(3), GroundSet::Interval(3)] {
            for f in enumerate_nested(ground, false) {
                let completed = f.completion().expect("completion exists");
                assert!(completed.is_restrictive(), "not restrictive for {f:?}");
                assert!(completed.members.is_superset(&f.members));
                assert_eq!(
                    completed.maximal_members(),
                    f.maximal_members(),
                    "maximal members changed for {f:?}"
                );
            }
        }
    }

    #[test]
    fn left_marked_completion_example() {
        // {[lft,3]} over I(n) completes to a restrictive family.
        let ground = GroundSet::Interval(4);
        let fam = NestedFamily::new(
            ground,
            [Interval { start: 0, end: 3 }].into_iter().collect(),
        )
        .unwrap();
        assert!(!fam.is_restrictive());
        let done = fam.completion().unwrap();
        assert!(done.is_restrictive());
        assert_eq!(done.maximal_members(), fam.maximal_members());
    }

    #[test]
    fn restrictive_enumeration_is_a_subset() {
        let all = enumerate_nested(GroundSet::Plain(4), false);
        let restr = enumerate_nested(GroundSet::Plain(4), true);
        assert!(restr.len() < all.len());
        assert!(restr.iter().all(|f| f.is_restrictive()));
    }
}
