//! Finite-dimensional associative algebras, affine actions, and the
//! algebra of affine transformations of the module.

use serde::Serialize;

use super::field::{field_from_json, scalar_from_json, Field, K};

/// An associative algebra given by structure constants over a basis,
/// concentrated in degree zero with zero differential.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `mult[i][j]` are the coordinates of the product of basis elements
    /// `i` and `j`.
    mult: Vec<Vec<Vec<K>>>,
}

impl Algebra {
    pub fn new(
        field: Field,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<K>>>,
    ) -> Result<Algebra, String> {
        let dim = basis_names.len();
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim)
            || mult.iter().flatten().any(|c| c.len() != dim)
        {
            return Err("structure constants must be dim x dim x dim".into());
        }
        Ok(Algebra { field, dim, basis_names, mult })
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[K] {
        &self.mult[i][j]
    }

    pub fn multiply(&self, x: &[K], y: &[K]) -> Vec<K> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for k in 0..self.dim {
                    out[k] = out[k].add(&c.mul(&self.mult[i][j][k]));
                }
            }
        }
        out
    }

    /// Associativity defects on basis triples, as witnesses.
    pub fn associativity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![self.field.zero(); self.dim];
            v[i] = self.field.one();
            v
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.multiply(&self.multiply(&unit(i), &unit(j)), &unit(k));
                    let rhs = self.multiply(&unit(i), &self.multiply(&unit(j), &unit(k)));
                    if lhs != rhs {
                        out.push(format!(
                            "({} {}) {} != {} ({} {})",
                            self.basis_names[i],
                            self.basis_names[j],
                            self.basis_names[k],
                            self.basis_names[i],
                            self.basis_names[j],
                            self.basis_names[k],
                        ));
                    }
                }
            }
        }
        out
    }
}

/// A pair `(v, phi)` in the affine transformation algebra of the module:
/// the product is `(v, phi) (w, psi) = (phi(w), phi psi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndPlusElt {
    pub dim_v: usize,
    /// Translation part.
    pub v: Vec<K>,
    /// Linear part, row major.
    pub phi: Vec<K>,
}

impl EndPlusElt {
    pub fn zero(field: Field, dim_v: usize) -> EndPlusElt {
        EndPlusElt {
            dim_v,
            v: vec![field.zero(); dim_v],
            phi: vec![field.zero(); dim_v * dim_v],
        }
    }

    pub fn unit(field: Field, dim_v: usize) -> EndPlusElt {
        let mut e = EndPlusElt::zero(field, dim_v);
        for i in 0..dim_v {
            e.phi[i * dim_v + i] = field.one();
        }
        e
    }

    pub fn apply(&self, w: &[K]) -> Vec<K> {
        let n = self.dim_v;
        (0..n)
            .map(|i| {
                let mut acc = self.v[i].field().zero();
                for j in 0..n {
                    acc = acc.add(&self.phi[i * n + j].mul(&w[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(K::is_zero) && self.phi.iter().all(K::is_zero)
    }

    pub fn add(&self, other: &EndPlusElt) -> EndPlusElt {
        EndPlusElt {
            dim_v: self.dim_v,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a.add(b)).collect(),
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &K) -> EndPlusElt {
        EndPlusElt {
            dim_v: self.dim_v,
            v: self.v.iter().map(|a| a.mul(k)).collect(),
            phi: self.phi.iter().map(|a| a.mul(k)).collect(),
        }
    }
}

/// The product `(v, phi) (w, psi) = (phi(w), phi psi)`.
pub fn end_plus_product(x: &EndPlusElt, y: &EndPlusElt) -> EndPlusElt {
    assert_eq!(x.dim_v, y.dim_v, "dimension mismatch");
    let n = x.dim_v;
    if n == 0 {
        return EndPlusElt { dim_v: 0, v: Vec::new(), phi: Vec::new() };
    }
    let v = x.apply(&y.v);
    let field = x.v[0].field();
    let mut phi = vec![field.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if x.phi[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                phi[i * n + j] = phi[i * n + j].add(&x.phi[i * n + k].mul(&y.phi[k * n + j]));
            }
        }
    }
    EndPlusElt { dim_v: n, v, phi }
}

/// An affine action: an algebra, a module with action matrices, and the
/// translation map.
#[derive(Debug, Clone)]
pub struct AffineAction {
    pub algebra: Algebra,
    pub dim_v: usize,
    /// Action matrix of each basis element, row major.
    pub rho: Vec<Vec<K>>,
    /// Image of each basis element under the translation map.
    pub f: Vec<Vec<K>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionReport {
    pub associative: bool,
    pub module_law: bool,
    pub translation_law: bool,
    pub morphism_into_affine: bool,
    pub witnesses: Vec<String>,
}

impl ActionReport {
    pub fn valid(&self) -> bool {
        self.associative && self.module_law && self.translation_law && self.morphism_into_affine
    }
}

impl AffineAction {
    /// The affine transformation attached to a basis element.
    pub fn alpha(&self, i: usize) -> EndPlusElt {
        EndPlusElt {
            dim_v: self.dim_v,
            v: self.f[i].clone(),
            phi: self.rho[i].clone(),
        }
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    /// Checks the three laws and that the assembled map is an algebra
    /// morphism into the affine transformations.
    pub fn validate(&self) -> ActionReport {
        let mut witnesses = Vec::new();
        let assoc = self.algebra.associativity_violations();
        let associative = assoc.is_empty();
        witnesses.extend(assoc);
        let dim = self.algebra.dim;
        let mut module_law = true;
        let mut translation_law = true;
        let mut morphism = true;
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.algebra.basis_product(i, j);
                // rho(ab) against rho(a) rho(b).
                let mut rho_ab = vec![self.field().zero(); self.dim_v * self.dim_v];
                let mut f_ab = vec![self.field().zero(); self.dim_v];
                for (k, c) in prod.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for t in 0..self.dim_v * self.dim_v {
                        rho_ab[t] = rho_ab[t].add(&c.mul(&self.rho[k][t]));
                    }
                    for t in 0..self.dim_v {
                        f_ab[t] = f_ab[t].add(&c.mul(&self.f[k][t]));
                    }
                }
                let composed = end_plus_product(&self.alpha(i), &self.alpha(j));
                if rho_ab != composed.phi {
                    module_law = false;
                    witnesses.push(format!(
                        "rho({0} {1}) != rho({0}) rho({1})",
                        self.algebra.basis_names[i], self.algebra.basis_names[j]
                    ));
                }
                if f_ab != composed.v {
                    translation_law = false;
                    witnesses.push(format!(
                        "f({0} {1}) != rho({0}) f({1})",
                        self.algebra.basis_names[i], self.algebra.basis_names[j]
                    ));
                }
                let assembled = EndPlusElt { dim_v: self.dim_v, v: f_ab, phi: rho_ab };
                if assembled != composed {
                    morphism = false;
                }
            }
        }
        ActionReport {
            associative,
            module_law,
            translation_law,
            morphism_into_affine: morphism,
            witnesses,
        }
    }

    /// Parses the JSON schema
    /// `{"field", "dim", "basis"?, "mult", "module": {"dim", "rho", "f"}}`.
    pub fn from_json(v: &serde_json::Value) -> Result<AffineAction, String> {
        let obj = v.as_object().ok_or("expected an object")?;
        let field = field_from_json(obj.get("field").ok_or("missing `field`")?)?;
        let dim = obj
            .get("dim")
            .and_then(serde_json::Value::as_u64)
            .ok_or("missing numeric `dim`")? as usize;
        let basis_names: Vec<String> = match obj.get("basis") {
            Some(serde_json::Value::Array(names)) => names
                .iter()
                .map(|n| n.as_str().map(str::to_owned).ok_or("basis names must be strings"))
                .collect::<Result<_, _>>()?,
            _ => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        if basis_names.len() != dim {
            return Err("basis names must match `dim`".into());
        }
        let mult_json = obj
            .get("mult")
            .and_then(serde_json::Value::as_array)
            .ok_or("missing `mult`")?;
        let parse_vec = |row: &serde_json::Value, len: usize| -> Result<Vec<K>, String> {
            let arr = row.as_array().ok_or("expected an array of scalars")?;
            if arr.len() != len {
                return Err(format!("expected {len} entries, found {}", arr.len()));
            }
            arr.iter().map(|x| scalar_from_json(field, x)).collect()
        };
        let mut mult = Vec::with_capacity(dim);
        for row in mult_json {
            let row = row.as_array().ok_or("`mult` must be a 3d array")?;
            if row.len() != dim {
                return Err("`mult` must be dim x dim x dim".into());
            }
            let mut out_row = Vec::with_capacity(dim);
            for cell in row {
                out_row.push(parse_vec(cell, dim)?);
            }
            mult.push(out_row);
        }
        let algebra = Algebra::new(field, basis_names, mult)?;
        let module = obj
            .get("module")
            .and_then(serde_json::Value::as_object)
            .ok_or("missing `module`")?;
        let dim_v = module
            .get("dim")
            .and_then(serde_json::Value::as_u64)
            .ok_or("module needs a numeric `dim`")? as usize;
        let rho_json = module
            .get("rho")
            .and_then(serde_json::Value::as_array)
            .ok_or("module needs `rho`")?;
        if rho_json.len() != dim {
            return Err("`rho` must have one matrix per basis element".into());
        }
        let mut rho = Vec::with_capacity(dim);
        for mat in rho_json {
            let rows = mat.as_array().ok_or("`rho` matrices must be arrays")?;
            if rows.len() != dim_v {
                return Err("`rho` matrices must be dim_v x dim_v".into());
            }
            let mut flat = Vec::with_capacity(dim_v * dim_v);
            for row in rows {
                flat.extend(parse_vec(row, dim_v)?);
            }
            rho.push(flat);
        }
        let f_json = module
            .get("f")
            .and_then(serde_json::Value::as_array)
            .ok_or("module needs `f`")?;
        if f_json.len() != dim {
            return Err("`f` must have one vector per basis element".into());
        }
        let mut f = Vec::with_capacity(dim);
        for row in f_json {
            f.push(parse_vec(row, dim_v)?);
        }
        Ok(AffineAction { algebra, dim_v, rho, f })
    }
}

/// The dual numbers acting on themselves by left multiplication, with the
/// identity as translation map.
pub fn dual_numbers(field: Field) -> AffineAction {
    truncated_polynomials(field, 2)
}

/// `k[x]/(x^e)` acting on itself by left multiplication, translation map
/// the identity.
pub fn truncated_polynomials(field: Field, e: usize) -> AffineAction {
    let zero = field.zero();
    let one = field.one();
    let mut mult = vec![vec![vec![zero.clone(); e]; e]; e];
    for i in 0..e {
        for j in 0..e {
            if i + j < e {
                mult[i][j][i + j] = one.clone();
            }
        }
    }
    let names = (0..e)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let algebra = Algebra::new(field, names, mult).expect("well formed");
    // Left multiplication matrices and the identity translation.
    let mut rho = Vec::new();
    let mut f = Vec::new();
    for i in 0..e {
        let mut m = vec![zero.clone(); e * e];
        for j in 0..e {
            if i + j < e {
                m[(i + j) * e + j] = one.clone();
            }
        }
        rho.push(m);
        let mut v = vec![zero.clone(); e];
        v[i] = one.clone();
        f.push(v);
    }
    AffineAction { algebra, dim_v: e, rho, f }
}

/// Upper triangular 2 by 2 matrices acting on the plane, the translation
/// map sending a matrix to its first column.
pub fn upper_triangular_on_plane(field: Field) -> AffineAction {
    let zero = field.zero();
    let one = field.one();
    // Basis: e11, e12, e22.
    let names = vec!["e11".into(), "e12".into(), "e22".into()];
    let dim = 3;
    let mut mult = vec![vec![vec![zero.clone(); dim]; dim]; dim];
    // e11 e11 = e11, e11 e12 = e12, e12 e22 = e12, e22 e22 = e22.
    mult[0][0][0] = one.clone();
    mult[0][1][1] = one.clone();
    mult[1][2][1] = one.clone();
    mult[2][2][2] = one.clone();
    let algebra = Algebra::new(field, names, mult).expect("well formed");
    let mat = |entries: [i64; 4]| -> Vec<K> {
        entries.iter().map(|&x| field.from_i64(x)).collect()
    };
    let rho = vec![mat([1, 0, 0, 0]), mat([0, 1, 0, 0]), mat([0, 0, 0, 1])];
    // f(a) = a e1: the first column of the matrix.
    let f = vec![
        vec![one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone()],
    ];
    AffineAction { algebra, dim_v: 2, rho, f }
}
