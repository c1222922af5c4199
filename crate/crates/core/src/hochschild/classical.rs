//! The classical Hochschild cochain complex of the algebra with
//! coefficients in itself or in the affine transformations of the module,
//! written independently of the suspended machinery so the two routes can
//! check each other.

use super::action::{end_plus_product, AffineAction, EndPlusElt};
use super::field::{rank, Field, K};

/// Coefficient bimodule of the complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    /// The algebra acting on itself by multiplication.
    AlgebraItself,
    /// The affine transformations, acting through the structure morphism.
    EndPlus,
}

/// A dense cochain of one arity for the classical complex.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCochain {
    pub arity: usize,
    pub coeffs: Coefficients,
    /// Flat tensor, argument tuple then output coordinate.
    pub data: Vec<K>,
}

pub struct Classical<'a> {
    pub action: &'a AffineAction,
}

impl<'a> Classical<'a> {
    pub fn new(action: &'a AffineAction) -> Classical<'a> {
        Classical { action }
    }

    fn field(&self) -> Field {
        self.action.field()
    }

    fn dim_a(&self) -> usize {
        self.action.algebra.dim
    }

    pub fn out_dim(&self, coeffs: Coefficients) -> usize {
        match coeffs {
            Coefficients::AlgebraItself => self.dim_a(),
            Coefficients::EndPlus => self.action.dim_v + self.action.dim_v * self.action.dim_v,
        }
    }

    pub fn space_dim(&self, coeffs: Coefficients, m: usize) -> usize {
        self.dim_a().pow(m as u32) * self.out_dim(coeffs)
    }

    pub fn zero_cochain(&self, coeffs: Coefficients, m: usize) -> ClassicalCochain {
        ClassicalCochain {
            arity: m,
            coeffs,
            data: vec![self.field().zero(); self.space_dim(coeffs, m)],
        }
    }

    fn module_left(&self, a: usize, n: &[K], coeffs: Coefficients) -> Vec<K> {
        match coeffs {
            Coefficients::AlgebraItself => {
                let mut unit = vec![self.field().zero(); self.dim_a()];
                unit[a] = self.field().one();
                self.action.algebra.multiply(&unit, n)
            }
            Coefficients::EndPlus => {
                let alpha = self.action.alpha(a);
                let elt = self.end_plus_from_coords(n);
                self.coords_from_end_plus(&end_plus_product(&alpha, &elt))
            }
        }
    }

    fn module_right(&self, n: &[K], a: usize, coeffs: Coefficients) -> Vec<K> {
        match coeffs {
            Coefficients::AlgebraItself => {
                let mut unit = vec![self.field().zero(); self.dim_a()];
                unit[a] = self.field().one();
                self.action.algebra.multiply(n, &unit)
            }
            Coefficients::EndPlus => {
                let alpha = self.action.alpha(a);
                let elt = self.end_plus_from_coords(n);
                self.coords_from_end_plus(&end_plus_product(&elt, &alpha))
            }
        }
    }

    fn end_plus_from_coords(&self, coords: &[K]) -> EndPlusElt {
        let dv = self.action.dim_v;
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

    pub fn eval(&self, c: &ClassicalCochain, tuple: &[usize]) -> Vec<K> {
        let out = self.out_dim(c.coeffs);
        let mut t = 0;
        for &i in tuple {
            t = t * self.dim_a() + i;
        }
        c.data[t * out..(t + 1) * out].to_vec()
    }

    /// The bar differential on one cochain.
    pub fn differential(&self, c: &ClassicalCochain) -> ClassicalCochain {
        let m = c.arity;
        let dim = self.dim_a();
        let mut out = self.zero_cochain(c.coeffs, m + 1);
        let out_dim = self.out_dim(c.coeffs);
        for tuple_idx in 0..dim.pow((m + 1) as u32) {
            let tuple = unrank(tuple_idx, m + 1, dim);
            let mut acc = vec![self.field().zero(); out_dim];
            // Left action on the first argument.
            let inner = self.eval(c, &tuple[1..]);
            for (t, x) in self.module_left(tuple[0], &inner, c.coeffs).into_iter().enumerate() {
                acc[t] = acc[t].add(&x);
            }
            // Multiply neighbours inside.
            for i in 0..m {
                let prod = self
                    .action
                    .algebra
                    .basis_product(tuple[i], tuple[i + 1])
                    .to_vec();
                let sign = self.field().from_i64(if i % 2 == 0 { -1 } else { 1 });
                for (b, coef) in prod.into_iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let mut inner_tuple = Vec::with_capacity(m);
                    inner_tuple.extend_from_slice(&tuple[..i]);
                    inner_tuple.push(b);
                    inner_tuple.extend_from_slice(&tuple[i + 2..]);
                    let val = self.eval(c, &inner_tuple);
                    for (t, x) in val.into_iter().enumerate() {
                        acc[t] = acc[t].add(&sign.mul(&coef).mul(&x));
                    }
                }
            }
            // Right action on the last argument.
            let sign = self
                .field()
                .from_i64(if (m + 1) % 2 == 0 { 1 } else { -1 });
            let front = self.eval(c, &tuple[..m]);
            for (t, x) in self
                .module_right(&front, tuple[m], c.coeffs)
                .into_iter()
                .enumerate()
            {
                acc[t] = acc[t].add(&sign.mul(&x));
            }
            for (t, x) in acc.into_iter().enumerate() {
                out.data[tuple_idx * out_dim + t] = x;
            }
        }
        out
    }

    /// The matrix of the differential from arity `m`, columns indexed by
    /// the basis cochains.
    pub fn differential_matrix(&self, coeffs: Coefficients, m: usize) -> Vec<Vec<K>> {
        let cols = self.space_dim(coeffs, m);
        let rows = self.space_dim(coeffs, m + 1);
        let mut matrix = vec![vec![self.field().zero(); cols]; rows];
        for col in 0..cols {
            let mut c = self.zero_cochain(coeffs, m);
            c.data[col] = self.field().one();
            let d = self.differential(&c);
            for (row, x) in d.data.into_iter().enumerate() {
                if !x.is_zero() {
                    matrix[row][col] = x;
                }
            }
        }
        matrix
    }

    /// Dimensions of the cohomology of the full complex in degrees
    /// `0..=max_degree`.
    pub fn cohomology_dims(&self, coeffs: Coefficients, max_degree: usize) -> Vec<usize> {
        let mut ranks = Vec::new();
        for m in 0..=max_degree {
            ranks.push(rank(self.differential_matrix(coeffs, m)));
        }
        (0..=max_degree)
            .map(|m| {
                let dim = self.space_dim(coeffs, m);
                let below = if m == 0 { 0 } else { ranks[m - 1] };
                dim - ranks[m] - below
            })
            .collect()
    }

    /// The cup product of two cochains.
    pub fn cup(&self, a: &ClassicalCochain, b: &ClassicalCochain) -> ClassicalCochain {
        assert_eq!(a.coeffs, b.coeffs);
        let m = a.arity + b.arity;
        let dim = self.dim_a();
        let mut out = self.zero_cochain(a.coeffs, m);
        let out_dim = self.out_dim(a.coeffs);
        for tuple_idx in 0..dim.pow(m as u32) {
            let tuple = unrank(tuple_idx, m, dim);
            let left = self.eval(a, &tuple[..a.arity]);
            let right = self.eval(b, &tuple[a.arity..]);
            let prod = match a.coeffs {
                Coefficients::AlgebraItself => self.action.algebra.multiply(&left, &right),
                Coefficients::EndPlus => self.coords_from_end_plus(&end_plus_product(
                    &self.end_plus_from_coords(&left),
                    &self.end_plus_from_coords(&right),
                )),
            };
            for (t, x) in prod.into_iter().enumerate() {
                out.data[tuple_idx * out_dim + t] = x;
            }
        }
        out
    }

    /// Post-composition with the structure morphism: the map induced by
    /// the whistle from algebra-valued to affine-valued cochains.
    pub fn whistle_push(&self, c: &ClassicalCochain) -> ClassicalCochain {
        assert_eq!(c.coeffs, Coefficients::AlgebraItself);
        let dim = self.dim_a();
        let m = c.arity;
        let mut out = self.zero_cochain(Coefficients::EndPlus, m);
        let out_dim = self.out_dim(Coefficients::EndPlus);
        for tuple_idx in 0..dim.pow(m as u32) {
            let tuple = unrank(tuple_idx, m, dim);
            let val = self.eval(c, &tuple);
            let mut acc = EndPlusElt::zero(self.field(), self.action.dim_v);
            for (b, coef) in val.into_iter().enumerate() {
                if !coef.is_zero() {
                    acc = acc.add(&self.action.alpha(b).scale(&coef));
                }
            }
            for (t, x) in self.coords_from_end_plus(&acc).into_iter().enumerate() {
                out.data[tuple_idx * out_dim + t] = x;
            }
        }
        out
    }

    /// A basis of the cocycles in arity `m`, as cochains.
    pub fn cocycle_basis(&self, coeffs: Coefficients, m: usize) -> Vec<ClassicalCochain> {
        let cols = self.space_dim(coeffs, m);
        let matrix = self.differential_matrix(coeffs, m);
        // Kernel by elimination over the field.
        let mut rows = matrix;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].inv().unwrap();
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].mul(&inv);
                    for cc in col..cols {
                        let d = f.mul(&rows[r][cc]);
                        rows[i][cc] = rows[i][cc].sub(&d);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut vec = vec![self.field().zero(); cols];
            vec[free] = self.field().one();
            for (pr, &pc) in pivots.iter().enumerate() {
                // Solve pivot value from the eliminated system.
                let inv = rows[pr][pc].inv().unwrap();
                let coeff = rows[pr][free].mul(&inv).neg();
                vec[pc] = coeff;
            }
            basis.push(ClassicalCochain { arity: m, coeffs, data: vec });
        }
        basis
    }

    /// Whether two cocycles are cohomologous.
    pub fn cohomologous(&self, a: &ClassicalCochain, b: &ClassicalCochain) -> bool {
        assert_eq!(a.arity, b.arity);
        assert_eq!(a.coeffs, b.coeffs);
        if a.arity == 0 {
            return a.data == b.data;
        }
        let m = a.arity - 1;
        let matrix = self.differential_matrix(a.coeffs, m);
        let columns: Vec<Vec<K>> = (0..self.space_dim(a.coeffs, m))
            .map(|c| matrix.iter().map(|row| row[c].clone()).collect())
            .collect();
        let diff: Vec<K> = a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| x.sub(y))
            .collect();
        super::field::in_span(&columns, &diff)
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
