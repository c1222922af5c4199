//! Exact scalars: the rationals and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn zero(self) -> K {
        match self {
            Field::Q => K::Q(BigRational::zero()),
            Field::Fp(p) => K::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> K {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> K {
        match self {
            Field::Q => K::Q(BigRational::from(BigInt::from(n))),
            Field::Fp(p) => K::Fp {
                p,
                v: n.rem_euclid(p as i64) as u64,
            },
        }
    }

    pub fn is_prime_modulus(self) -> bool {
        match self {
            Field::Q => true,
            Field::Fp(p) => is_prime(p),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the ground field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum K {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl K {
    pub fn field(&self) -> Field {
        match self {
            K::Q(_) => Field::Q,
            K::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            K::Q(x) => x.is_zero(),
            K::Fp { v, .. } => *v == 0,
        }
    }

    pub fn add(&self, other: &K) -> K {
        match (self, other) {
            (K::Q(a), K::Q(b)) => K::Q(a + b),
            (K::Fp { p, v }, K::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "mixed moduli");
                K::Fp { p: *p, v: (v + w) % p }
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn sub(&self, other: &K) -> K {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> K {
        match self {
            K::Q(a) => K::Q(-a),
            K::Fp { p, v } => K::Fp { p: *p, v: (*p - *v) % *p },
        }
    }

    pub fn mul(&self, other: &K) -> K {
        match (self, other) {
            (K::Q(a), K::Q(b)) => K::Q(a * b),
            (K::Fp { p, v }, K::Fp { p: q, v: w }) => {
                assert_eq!(p, q, "mixed moduli");
                K::Fp {
                    p: *p,
                    v: ((*v as u128 * *w as u128) % *p as u128) as u64,
                }
            }
            _ => panic!("mixed fields"),
        }
    }

    pub fn inv(&self) -> Option<K> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            K::Q(a) => K::Q(a.recip()),
            K::Fp { p, v } => K::Fp { p: *p, v: mod_inv(*v, *p) },
        })
    }

    /// Renders exactly, as `a/b` over the rationals or `v` mod p.
    pub fn render(&self) -> String {
        match self {
            K::Q(a) => a.to_string(),
            K::Fp { v, .. } => v.to_string(),
        }
    }
}

fn mod_inv(v: u64, p: u64) -> u64 {
    // Extended Euclid; p is prime and v nonzero mod p.
    let (mut r0, mut r1) = (p as i128, (v % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible");
    s0.rem_euclid(p as i128) as u64
}

/// Parses the JSON field descriptor: `"Q"` or `{"p": modulus}`.
pub fn field_from_json(v: &serde_json::Value) -> Result<Field, String> {
    match v {
        serde_json::Value::String(s) if s == "Q" => Ok(Field::Q),
        serde_json::Value::Object(map) => {
            let p = map
                .get("p")
                .and_then(serde_json::Value::as_u64)
                .ok_or("field object needs a numeric `p`")?;
            let f = Field::Fp(p);
            if !f.is_prime_modulus() {
                return Err(format!("{p} is not prime"));
            }
            Ok(f)
        }
        _ => Err("field must be \"Q\" or {\"p\": prime}".into()),
    }
}

/// Parses a scalar: an integer, or `"a/b"` over the rationals.
pub fn scalar_from_json(field: Field, v: &serde_json::Value) -> Result<K, String> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64().ok_or("scalar out of range")?;
            Ok(field.from_i64(i))
        }
        serde_json::Value::String(s) if field == Field::Q => {
            let r: BigRational = s.parse().map_err(|_| format!("bad rational `{s}`"))?;
            Ok(K::Q(r))
        }
        _ => Err("scalar must be an integer (or a rational string over Q)".into()),
    }
}

/// Rank of a matrix over the field, by Gaussian elimination. Rows are
/// consumed.
pub fn rank(mut rows: Vec<Vec<K>>) -> usize {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].mul(&inv);
                for c in col..ncols {
                    let delta = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Whether `target` lies in the column span of `columns` (each of length
/// `n`), i.e. appending it does not raise the rank.
pub fn in_span(columns: &[Vec<K>], target: &[K]) -> bool {
    let n = target.len();
    let as_rows = |cols: Vec<&[K]>| -> Vec<Vec<K>> {
        (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    };
    let base: Vec<&[K]> = columns.iter().map(Vec::as_slice).collect();
    let r0 = rank(as_rows(base.clone()));
    let mut with = base;
    with.push(target);
    let r1 = rank(as_rows(with));
    r0 == r1
}
