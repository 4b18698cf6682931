//! Exact arithmetic in Z/ℓ and a little linear algebra over prime fields.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of Z/ℓ, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    pub fn new(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Residue {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Residue> {
        inverse(self.value, self.modulus).map(|v| Residue {
            value: v,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

macro_rules! residue_op {
    ($tr:ident, $method:ident, $f:expr) => {
        impl std::ops::$tr for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                assert_eq!(self.modulus, rhs.modulus, "moduli differ");
                let f: fn(u32, u32, u32) -> u32 = $f;
                Residue {
                    value: f(self.value, rhs.value, self.modulus),
                    modulus: self.modulus,
                }
            }
        }
    };
}

residue_op!(Add, add, add);
residue_op!(Sub, sub, sub);
residue_op!(Mul, mul, mul);

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: neg(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

#[inline]
pub fn add(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 + b as u64) % m as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 + m as u64 - (b % m) as u64) % m as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 * b as u64) % m as u64) as u32
}

#[inline]
pub fn neg(a: u32, m: u32) -> u32 {
    if a.is_multiple_of(m) {
        0
    } else {
        m - a % m
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multiplicative inverse mod `m`, if `a` is a unit.
pub fn inverse(a: u32, m: u32) -> Option<u32> {
    let (mut r0, mut r1) = (m as i64, (a % m) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(reduce(t0, m))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, e_p)` pairs in increasing `p`.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// p-adic valuation of `x`, with `None` standing for +∞ when `x == 0`.
pub fn valuation(x: u32, p: u32) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut x = x;
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Some(v)
}

pub(crate) fn check_modulus(ell: u32) -> Result<()> {
    if ell < 2 {
        return Err(Error::BadModulus(ell));
    }
    Ok(())
}

pub(crate) fn require_prime(ell: u32) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    Ok(())
}

/// Row echelon form over Z/p. Rows are vectors of residues; returns the
/// reduced rows and pivot columns.
fn echelon(mut rows: Vec<Vec<u32>>, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = inverse(rows[r][col], p).expect("nonzero element of a prime field");
        for x in rows[r].iter_mut() {
            *x = mul(*x, inv, p);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = sub(*x, mul(f, y, p), p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Rank of a family of vectors over Z/p.
pub fn rank_mod_prime(vectors: &[Vec<u32>], p: u32) -> usize {
    echelon(vectors.to_vec(), p).1.len()
}

/// Finds coefficients `c` with `Σ c_i · columns[i] = target` over Z/p.
pub fn solve_mod_prime(columns: &[Vec<u32>], target: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = columns.len();
    let height = target.len();
    // augmented matrix: one row per coordinate
    let rows: Vec<Vec<u32>> = (0..height)
        .map(|i| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[i] % p).collect();
            row.push(target[i] % p);
            row
        })
        .collect();
    if height == 0 {
        return Some(vec![0; n]);
    }
    let (reduced, pivots) = echelon(rows, p);
    if pivots.contains(&n) {
        return None;
    }
    let mut sol = vec![0u32; n];
    for (row, &col) in reduced.iter().zip(&pivots) {
        sol[col] = row[n];
    }
    Some(sol)
}
