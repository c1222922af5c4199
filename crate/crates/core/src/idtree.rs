//! Words whose vertices carry a stable identity through surgery, so that
//! determinant reorderings can be read off as permutations of the odd
//! (neutral) vertices.

use std::collections::HashMap;

use crate::trees::{Tree, VertexKind, Word};

#[derive(Debug, Clone)]
pub(crate) struct IdNode {
    pub kind: VertexKind,
    pub id: u32,
    pub children: Vec<IdNode>,
}

#[derive(Debug, Clone)]
pub(crate) struct IdWord {
    pub trees: Vec<IdNode>,
}

impl IdNode {
    pub fn strip(&self) -> Tree {
        Tree {
            kind: self.kind,
            children: self.children.iter().map(IdNode::strip).collect(),
        }
    }
}

impl IdWord {
    pub fn from_word(w: &Word) -> IdWord {
        let mut next = 0u32;
        fn build(t: &Tree, next: &mut u32) -> IdNode {
            let id = *next;
            *next += 1;
            IdNode {
                kind: t.kind,
                id,
                children: t.children.iter().map(|c| build(c, next)).collect(),
            }
        }
        IdWord {
            trees: w.trees.iter().map(|t| build(t, &mut next)).collect(),
        }
    }

    pub fn strip(&self) -> Word {
        Word::new(self.trees.iter().map(IdNode::strip).collect())
    }

    pub fn max_id(&self) -> u32 {
        fn walk(n: &IdNode, acc: &mut u32) {
            *acc = (*acc).max(n.id);
            for c in &n.children {
                walk(c, acc);
            }
        }
        let mut acc = 0;
        for t in &self.trees {
            walk(t, &mut acc);
        }
        acc
    }

    /// Canonical order: per tree, by depth from the root, then left to right.
    pub fn canonical(&self) -> Vec<(u32, VertexKind)> {
        let mut out = Vec::new();
        for t in &self.trees {
            let mut level = vec![t];
            while !level.is_empty() {
                let mut next = Vec::new();
                for n in &level {
                    out.push((n.id, n.kind));
                    next.extend(n.children.iter());
                }
                level = next;
            }
        }
        out
    }

    pub fn canonical_odd(&self) -> Vec<u32> {
        self.canonical()
            .into_iter()
            .filter(|(_, k)| k.is_neutral())
            .map(|(id, _)| id)
            .collect()
    }

    pub fn find_label(&self, want: VertexKind) -> Option<u32> {
        fn walk(n: &IdNode, want: VertexKind) -> Option<u32> {
            if n.kind == want {
                return Some(n.id);
            }
            n.children.iter().find_map(|c| walk(c, want))
        }
        self.trees.iter().find_map(|t| walk(t, want))
    }

    pub fn relabel(&mut self, f: &impl Fn(VertexKind) -> VertexKind) {
        fn walk(n: &mut IdNode, f: &impl Fn(VertexKind) -> VertexKind) {
            n.kind = f(n.kind);
            for c in &mut n.children {
                walk(c, f);
            }
        }
        for t in &mut self.trees {
            walk(t, f);
        }
    }
}

/// Parity of the permutation taking `from` to `to`; both must enumerate
/// the same set without repetition.
pub(crate) fn reorder_sign(from: &[u32], to: &[u32]) -> i64 {
    debug_assert_eq!(from.len(), to.len());
    let pos: HashMap<u32, usize> = to.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut perm: Vec<usize> = from.iter().map(|x| pos[x]).collect();
    let mut sign = 1i64;
    for i in 0..perm.len() {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    sign
}
