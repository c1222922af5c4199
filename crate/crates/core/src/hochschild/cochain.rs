//! Truncated deformation complexes of affine actions: cochains on the
//! tensor coalgebra with values in the algebra or in the affine
//! transformations of the module, the convolution and pre-Lie products,
//! Maurer-Cartan elements, and the induced differential.
//!
//! Every sign comes from one rule: transporting a map of degree d past a
//! suspended argument costs a factor of minus one to the d. With the
//! algebra concentrated in degree zero, a closed component of arity m has
//! degree 1-m and an open one degree -m.

use std::collections::BTreeMap;

use rand::Rng;

use super::action::{end_plus_product, AffineAction, EndPlusElt};
use super::field::{Field, K};

/// Where a cochain takes its values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    /// Maps into the suspended algebra; no arity-zero component.
    Closed,
    /// Maps into the affine transformations; the arity-zero component
    /// lands in the linear part.
    Open,
}

/// A multilinear cochain stored as dense coefficient tensors per arity.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub target: Target,
    pub field: Field,
    pub dim_a: usize,
    pub dim_v: usize,
    /// Arity -> flat tensor, indexed by the argument tuple then the
    /// output coordinate.
    components: BTreeMap<usize, Vec<K>>,
}

impl Cochain {
    pub fn zero(target: Target, field: Field, dim_a: usize, dim_v: usize) -> Cochain {
        Cochain { target, field, dim_a, dim_v, components: BTreeMap::new() }
    }

    pub fn out_dim(&self) -> usize {
        match self.target {
            Target::Closed => self.dim_a,
            Target::Open => self.dim_v + self.dim_v * self.dim_v,
        }
    }

    /// Degree of the arity-m component under the suspension conventions.
    pub fn component_degree(target: Target, m: usize) -> i64 {
        match target {
            Target::Closed => 1 - m as i64,
            Target::Open => -(m as i64),
        }
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn component(&self, m: usize) -> Option<&[K]> {
        self.components.get(&m).map(Vec::as_slice)
    }

    pub fn component_mut(&mut self, m: usize) -> &mut Vec<K> {
        let size = self.dim_a.pow(m as u32) * self.out_dim();
        let field = self.field;
        self.components
            .entry(m)
            .or_insert_with(|| vec![field.zero(); size])
    }

    pub fn set_entry(&mut self, m: usize, tuple: &[usize], coord: usize, value: K) {
        let idx = self.flat_index(m, tuple, coord);
        self.component_mut(m)[idx] = value;
    }

    fn flat_index(&self, m: usize, tuple: &[usize], coord: usize) -> usize {
        debug_assert_eq!(tuple.len(), m);
        let mut t = 0;
        for &i in tuple {
            t = t * self.dim_a + i;
        }
        t * self.out_dim() + coord
    }

    /// Value on a basis tuple, as output coordinates.
    pub fn eval(&self, tuple: &[usize]) -> Vec<K> {
        let m = tuple.len();
        let out = self.out_dim();
        match self.components.get(&m) {
            Some(data) => {
                let mut t = 0;
                for &i in tuple {
                    t = t * self.dim_a + i;
                }
                data[t * out..(t + 1) * out].to_vec()
            }
            None => vec![self.field.zero(); out],
        }
    }

    fn prune(&mut self) {
        self.components.retain(|_, data| data.iter().any(|x| !x.is_zero()));
    }

    pub fn is_zero(&self) -> bool {
        self.components
            .values()
            .all(|data| data.iter().all(K::is_zero))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        debug_assert_eq!(self.target, other.target);
        let mut out = self.clone();
        for (&m, data) in &other.components {
            let dst = out.component_mut(m);
            for (d, s) in dst.iter_mut().zip(data) {
                *d = d.add(s);
            }
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, k: &K) -> Cochain {
        let mut out = self.clone();
        for data in out.components.values_mut() {
            for x in data.iter_mut() {
                *x = x.mul(k);
            }
        }
        out.prune();
        out
    }

    /// Restriction to one arity.
    pub fn piece(&self, m: usize) -> Cochain {
        let mut out = Cochain::zero(self.target, self.field, self.dim_a, self.dim_v);
        if let Some(data) = self.components.get(&m) {
            if data.iter().any(|x| !x.is_zero()) {
                out.components.insert(m, data.clone());
            }
        }
        out
    }

    pub fn normalized(&self) -> Cochain {
        let mut out = self.clone();
        out.prune();
        out
    }
}

/// A pair of a closed and an open cochain: an element of the truncated
/// deformation complex.
#[derive(Debug, Clone, PartialEq)]
pub struct DefElement {
    pub closed: Cochain,
    pub open: Cochain,
}

impl DefElement {
    pub fn zero(field: Field, dim_a: usize, dim_v: usize) -> DefElement {
        DefElement {
            closed: Cochain::zero(Target::Closed, field, dim_a, dim_v),
            open: Cochain::zero(Target::Open, field, dim_a, dim_v),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.closed.is_zero() && self.open.is_zero()
    }

    pub fn add(&self, other: &DefElement) -> DefElement {
        DefElement {
            closed: self.closed.add(&other.closed),
            open: self.open.add(&other.open),
        }
    }

    pub fn sub(&self, other: &DefElement) -> DefElement {
        DefElement {
            closed: self.closed.sub(&other.closed),
            open: self.open.sub(&other.open),
        }
    }

    pub fn scale(&self, k: &K) -> DefElement {
        DefElement { closed: self.closed.scale(k), open: self.open.scale(k) }
    }

    /// Degrees of the nonzero homogeneous pieces.
    pub fn degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .closed
            .arities()
            .map(|m| Cochain::component_degree(Target::Closed, m))
            .chain(
                self.open
                    .arities()
                    .map(|m| Cochain::component_degree(Target::Open, m)),
            )
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The homogeneous piece in one degree.
    pub fn piece(&self, degree: i64) -> DefElement {
        let closed_arity = 1 - degree;
        let open_arity = -degree;
        DefElement {
            closed: if closed_arity >= 1 {
                self.closed.piece(closed_arity as usize)
            } else {
                Cochain::zero(Target::Closed, self.closed.field, self.closed.dim_a, self.closed.dim_v)
            },
            open: if open_arity >= 0 {
                self.open.piece(open_arity as usize)
            } else {
                Cochain::zero(Target::Open, self.open.field, self.open.dim_a, self.open.dim_v)
            },
        }
    }
}

/// A Maurer-Cartan element: degree -1, with the closed part vanishing on
/// single letters and the open part on the empty word. For a strict
/// affine action it is the multiplication plus the structure morphism.
#[derive(Debug, Clone)]
pub struct MaurerCartan(pub DefElement);

/// A located failure of the Maurer-Cartan equation or its support
/// conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct McObstruction {
    pub part: Target,
    pub arity: usize,
    pub tuple: Vec<usize>,
    pub what: String,
}

/// Evaluation context: the action, derived dimensions, and the arity
/// bound below which every computed component is exact.
pub struct DefContext {
    pub action: AffineAction,
    pub bound: usize,
}

impl DefContext {
    pub fn new(action: AffineAction, bound: usize) -> DefContext {
        DefContext { action, bound }
    }

    pub fn field(&self) -> Field {
        self.action.field()
    }

    pub fn dim_a(&self) -> usize {
        self.action.algebra.dim
    }

    pub fn dim_v(&self) -> usize {
        self.action.dim_v
    }

    pub fn zero_cochain(&self, target: Target) -> Cochain {
        Cochain::zero(target, self.field(), self.dim_a(), self.dim_v())
    }

    fn end_plus_from_coords(&self, coords: &[K]) -> EndPlusElt {
        let dv = self.dim_v();
        EndPlusElt {
            dim_v: dv,
            v: coords[..dv].to_vec(),
            phi: coords[dv..].to_vec(),
        }
    }

    fn coords_from_end_plus(&self, e: &EndPlusElt) -> Vec<K> {
        let mut out = e.v.clone();
        out.extend(e.phi.iter().cloned());
        out
    }

    /// The Maurer-Cartan element of the strict structure: the suspended
    /// multiplication and the assembled affine morphism.
    pub fn mc_element(&self) -> MaurerCartan {
        let mut closed = self.zero_cochain(Target::Closed);
        let dim = self.dim_a();
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.action.algebra.basis_product(i, j).to_vec();
                for (k, c) in prod.into_iter().enumerate() {
                    if !c.is_zero() {
                        closed.set_entry(2, &[i, j], k, c);
                    }
                }
            }
        }
        let mut open = self.zero_cochain(Target::Open);
        for i in 0..dim {
            let alpha = self.action.alpha(i);
            let coords = self.coords_from_end_plus(&alpha);
            for (c, val) in coords.into_iter().enumerate() {
                if !val.is_zero() {
                    open.set_entry(1, &[i], c, val);
                }
            }
        }
        MaurerCartan(DefElement { closed, open })
    }

    /// Insertion composition `outer(.., inner(..), ..)` summed over one
    /// insertion slot, with the Koszul sign for the arguments jumped over.
    /// The inner cochain must be closed.
    pub fn compose(&self, outer: &Cochain, inner: &Cochain) -> Cochain {
        assert_eq!(inner.target, Target::Closed);
        let dim = self.dim_a();
        let mut out = self.zero_cochain(outer.target);
        for j in outer.arities() {
            if j == 0 {
                continue;
            }
            for l in inner.arities() {
                let m = j + l - 1;
                if m > self.bound {
                    continue;
                }
                let inner_deg = Cochain::component_degree(Target::Closed, l);
                let result = out.component_mut(m);
                let out_dim = match outer.target {
                    Target::Closed => dim,
                    Target::Open => self.dim_v() + self.dim_v() * self.dim_v(),
                };
                for tuple_idx in 0..dim.pow(m as u32) {
                    let tuple = unrank(tuple_idx, m, dim);
                    for i in 0..j {
                        let sign = pow_sign(inner_deg, i as i64, self.field());
                        if sign.is_zero() {
                            continue;
                        }
                        let inner_val = inner.eval(&tuple[i..i + l]);
                        // Assemble the outer tuple with the middle slot
                        // running over the basis.
                        let mut outer_tuple: Vec<usize> = Vec::with_capacity(j);
                        outer_tuple.extend_from_slice(&tuple[..i]);
                        outer_tuple.push(0);
                        outer_tuple.extend_from_slice(&tuple[i + l..]);
                        for (b, coeff) in inner_val.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            outer_tuple[i] = b;
                            let outer_val = outer.eval(&outer_tuple);
                            let factor = sign.mul(coeff);
                            for (c, o) in outer_val.iter().enumerate() {
                                if !o.is_zero() {
                                    let idx = tuple_idx * out_dim + c;
                                    result[idx] = result[idx].add(&factor.mul(o));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.prune();
        out
    }

    /// Convolution of open cochains: deconcatenate, evaluate, multiply in
    /// the affine transformation algebra.
    pub fn convolve(&self, x: &Cochain, y: &Cochain) -> Cochain {
        assert_eq!(x.target, Target::Open);
        assert_eq!(y.target, Target::Open);
        let dim = self.dim_a();
        let mut out = self.zero_cochain(Target::Open);
        for i in x.arities() {
            for j in y.arities() {
                let m = i + j;
                if m > self.bound {
                    continue;
                }
                let y_deg = Cochain::component_degree(Target::Open, j);
                let sign = pow_sign(y_deg, i as i64, self.field());
                let out_dim = out.out_dim();
                let result = out.component_mut(m);
                for tuple_idx in 0..dim.pow(m as u32) {
                    let tuple = unrank(tuple_idx, m, dim);
                    let xv = self.end_plus_from_coords(&x.eval(&tuple[..i]));
                    let yv = self.end_plus_from_coords(&y.eval(&tuple[i..]));
                    let prod = end_plus_product(&xv, &yv).scale(&sign);
                    let coords = self.coords_from_end_plus(&prod);
                    for (c, val) in coords.into_iter().enumerate() {
                        if !val.is_zero() {
                            let idx = tuple_idx * out_dim + c;
                            result[idx] = result[idx].add(&val);
                        }
                    }
                }
            }
        }
        out.prune();
        out
    }

    /// Brace insertion `base{args...}`: the arguments are closed cochains
    /// plugged into the base's slots in order, at every strictly
    /// increasing choice of slots, with Koszul signs for the arguments
    /// jumped over.
    pub fn braces(&self, base: &Cochain, args: &[&Cochain]) -> Cochain {
        assert!(args.iter().all(|a| a.target == Target::Closed));
        if args.is_empty() {
            return base.normalized();
        }
        if args.iter().any(|a| a.is_zero()) {
            return self.zero_cochain(base.target);
        }
        let n = args.len();
        let mut out = self.zero_cochain(base.target);
        let arg_arities: Vec<Vec<usize>> =
            args.iter().map(|a| a.arities().collect()).collect();
        for j in base.arities() {
            if j < n {
                continue;
            }
            // Choices of one arity per argument.
            let mut arity_choice = vec![0usize; n];
            loop {
                let ls: Vec<usize> = (0..n).map(|k| arg_arities[k][arity_choice[k]]).collect();
                let m = j - n + ls.iter().sum::<usize>();
                if m <= self.bound {
                    self.braces_component(base, args, j, &ls, &mut out);
                }
                // Advance the mixed-radix counter.
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    arity_choice[k] += 1;
                    if arity_choice[k] < arg_arities[k].len() {
                        break;
                    }
                    arity_choice[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        out.prune();
        out
    }

    fn braces_component(
        &self,
        base: &Cochain,
        args: &[&Cochain],
        j: usize,
        ls: &[usize],
        out: &mut Cochain,
    ) {
        let dim = self.dim_a();
        let n = args.len();
        let m = j - n + ls.iter().sum::<usize>();
        let out_dim = out.out_dim();
        // All strictly increasing slot choices q_1 < ... < q_n in 0..j.
        let mut slots: Vec<usize> = (0..n).collect();
        loop {
            // Koszul sign: each argument jumps over everything consumed
            // by the slots before its own.
            let mut sign = self.field().one();
            {
                let mut consumed_before = vec![0usize; n];
                for (k, &q) in slots.iter().enumerate() {
                    let singles = q - k;
                    let blocks: usize = ls[..k].iter().sum();
                    consumed_before[k] = singles + blocks;
                }
                for k in 0..n {
                    let deg = Cochain::component_degree(Target::Closed, ls[k]);
                    sign = sign.mul(&pow_sign(deg, consumed_before[k] as i64, self.field()));
                }
            }
            let result = out.component_mut(m);
            for tuple_idx in 0..dim.pow(m as u32) {
                let tuple = unrank(tuple_idx, m, dim);
                // Split the tuple according to the slot layout and
                // evaluate every argument block.
                let mut arg_vals: Vec<Vec<K>> = Vec::with_capacity(n);
                {
                    let mut pos = 0;
                    let mut k = 0;
                    for q in 0..j {
                        if k < n && slots[k] == q {
                            arg_vals.push(args[k].eval(&tuple[pos..pos + ls[k]]));
                            pos += ls[k];
                            k += 1;
                        } else {
                            pos += 1;
                        }
                    }
                }
                // Sum over basis values of each argument block.
                let mut basis_choice = vec![0usize; n];
                loop {
                    let mut coeff = sign.clone();
                    for k in 0..n {
                        coeff = coeff.mul(&arg_vals[k][basis_choice[k]]);
                        if coeff.is_zero() {
                            break;
                        }
                    }
                    if !coeff.is_zero() {
                        let mut base_tuple = Vec::with_capacity(j);
                        let mut pos = 0;
                        let mut k = 0;
                        for q in 0..j {
                            if k < n && slots[k] == q {
                                base_tuple.push(basis_choice[k]);
                                pos += ls[k];
                                k += 1;
                            } else {
                                base_tuple.push(tuple[pos]);
                                pos += 1;
                            }
                        }
                        let val = base.eval(&base_tuple);
                        for (c, o) in val.iter().enumerate() {
                            if !o.is_zero() {
                                let idx = tuple_idx * out_dim + c;
                                result[idx] = result[idx].add(&coeff.mul(o));
                            }
                        }
                    }
                    // Advance the basis counter.
                    let mut k = 0;
                    loop {
                        if k == n {
                            break;
                        }
                        basis_choice[k] += 1;
                        if basis_choice[k] < dim {
                            break;
                        }
                        basis_choice[k] = 0;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                }
            }
            // Next increasing slot tuple.
            let mut k = n;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                if slots[k] + (n - k) < j {
                    slots[k] += 1;
                    for t in k + 1..n {
                        slots[t] = slots[t - 1] + 1;
                    }
                    break;
                }
                if k == 0 {
                    return;
                }
            }
        }
    }

    /// The pre-Lie product on the deformation complex.
    pub fn pre_lie(&self, a: &DefElement, b: &DefElement) -> DefElement {
        DefElement {
            closed: self.compose(&a.closed, &b.closed),
            open: self
                .compose(&a.open, &b.closed)
                .add(&self.convolve(&a.open, &b.open)),
        }
    }

    /// The graded commutator with the Maurer-Cartan element, extended
    /// from homogeneous pieces.
    pub fn differential(&self, phi: &MaurerCartan, psi: &DefElement) -> DefElement {
        let mut out = DefElement::zero(self.field(), self.dim_a(), self.dim_v());
        for d in psi.degrees() {
            let piece = psi.piece(d);
            let left = self.pre_lie(&phi.0, &piece);
            let right = self.pre_lie(&piece, &phi.0);
            let sign = self.field().from_i64(if d % 2 == 0 { -1 } else { 1 });
            out = out.add(&left.add(&right.scale(&sign)));
        }
        out
    }

    /// The closed-part differential on a closed cochain.
    pub fn d_closed(&self, phi: &MaurerCartan, y: &Cochain) -> Cochain {
        assert_eq!(y.target, Target::Closed);
        let mut out = self.zero_cochain(Target::Closed);
        for m in y.arities() {
            let piece = y.piece(m);
            let d = Cochain::component_degree(Target::Closed, m);
            let sign = self.field().from_i64(if d % 2 == 0 { -1 } else { 1 });
            out = out.add(&self.compose(&phi.0.closed, &piece));
            out = out.add(&self.compose(&piece, &phi.0.closed).scale(&sign));
        }
        out.normalized()
    }

    /// The open-part differential on an open cochain.
    pub fn d_open(&self, phi: &MaurerCartan, x: &Cochain) -> Cochain {
        assert_eq!(x.target, Target::Open);
        let mut out = self.zero_cochain(Target::Open);
        for m in x.arities() {
            let piece = x.piece(m);
            let d = Cochain::component_degree(Target::Open, m);
            let sign = self.field().from_i64(if d % 2 == 0 { -1 } else { 1 });
            out = out.add(&self.convolve(&phi.0.open, &piece));
            out = out.add(&self.compose(&piece, &phi.0.closed).scale(&sign));
            out = out.add(&self.convolve(&piece, &phi.0.open).scale(&sign));
        }
        out.normalized()
    }

    /// Checks the support conditions and the Maurer-Cartan equation up to
    /// the bound, returning the first obstruction.
    pub fn mc_check(&self, phi: &MaurerCartan) -> Result<(), McObstruction> {
        if phi.0.closed.component(1).is_some_and(|d| d.iter().any(|x| !x.is_zero())) {
            return Err(McObstruction {
                part: Target::Closed,
                arity: 1,
                tuple: Vec::new(),
                what: "closed part does not vanish on single letters".into(),
            });
        }
        if phi.0.open.component(0).is_some_and(|d| d.iter().any(|x| !x.is_zero())) {
            return Err(McObstruction {
                part: Target::Open,
                arity: 0,
                tuple: Vec::new(),
                what: "open part does not vanish on the empty word".into(),
            });
        }
        let square = self.pre_lie(&phi.0, &phi.0);
        if let Some(obs) = self.first_nonzero(&square.closed) {
            return Err(obs);
        }
        if let Some(obs) = self.first_nonzero(&square.open) {
            return Err(obs);
        }
        Ok(())
    }

    fn first_nonzero(&self, c: &Cochain) -> Option<McObstruction> {
        let dim = self.dim_a();
        for m in c.arities() {
            let data = c.component(m).unwrap();
            let out_dim = c.out_dim();
            for (idx, x) in data.iter().enumerate() {
                if !x.is_zero() {
                    return Some(McObstruction {
                        part: c.target,
                        arity: m,
                        tuple: unrank(idx / out_dim, m, dim),
                        what: format!("obstruction value {}", x.render()),
                    });
                }
            }
        }
        None
    }

    /// A random cochain with one homogeneous component.
    pub fn random_cochain(
        &self,
        rng: &mut impl Rng,
        target: Target,
        arity: usize,
    ) -> Cochain {
        let mut out = self.zero_cochain(target);
        let size = self.dim_a().pow(arity as u32) * out.out_dim();
        let data = out.component_mut(arity);
        for i in 0..size {
            data[i] = match self.field() {
                Field::Q => Field::Q.from_i64(rng.gen_range(-5..=5)),
                Field::Fp(p) => Field::Fp(p).from_i64(rng.gen_range(0..p) as i64),
            };
        }
        out.normalized()
    }
}

fn unrank(mut idx: usize, m: usize, dim: usize) -> Vec<usize> {
    let mut tuple = vec![0usize; m];
    for k in (0..m).rev() {
        tuple[k] = idx % dim;
        idx /= dim;
    }
    tuple
}

fn pow_sign(degree: i64, count: i64, field: Field) -> K {
    if (degree * count) % 2 == 0 {
        field.one()
    } else {
        field.from_i64(-1)
    }
}
