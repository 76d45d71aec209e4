//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`CycNum`] stores the remainder of its representing polynomial in `ζ_m`
//! modulo the `m`-th cyclotomic polynomial `Φ_m`, i.e. coordinates in the
//! power basis `1, ζ_m, …, ζ_m^{φ(m)-1}`. Because `Φ_m` is the minimal
//! polynomial of `ζ_m`, this representation is unique for a fixed conductor,
//! so equality is a coefficient comparison.
//!
//! Values of different conductors only meet through [`CycNum::rebase`]; the
//! arithmetic operations auto-promote rational operands and reject every
//! other mismatch with [`CycError::ConductorMismatch`].

mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::{parse_cyc, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("conductor mismatch: {left} vs {right} (rebase explicitly)")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("galois exponent {r} is not coprime to conductor {m}")]
    NotCoprime { r: i64, m: u32 },
    #[error("value {0} is not rational")]
    NotRational(String),
    #[error("cannot rebase from conductor {from} to {to}: {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_m`, lowest degree first. Monic of degree `φ(m)`.
///
/// Computed as `(x^m - 1) / Π_{d | m, d < m} Φ_d(x)` by exact division.
pub fn cyclotomic_polynomial(m: u32) -> Arc<[i64]> {
    assert!(m >= 1, "cyclotomic polynomial of conductor 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    // x^m - 1
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            num = exact_monic_division(&num, &divisor);
        }
    }
    let poly: Arc<[i64]> = num.into();
    debug_assert_eq!(poly.len() as u32 - 1, euler_phi(m));
    poly_cache().lock().unwrap().insert(m, Arc::clone(&poly));
    poly
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (dn..num.len()).rev() {
        let c = rem[i];
        if c != 0 {
            quot[i - dn] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[i - dn + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Q(ζ_m)` in canonical power-basis coordinates.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(m: u32) -> Self {
        assert!(m >= 1);
        CycNum {
            conductor: m,
            coeffs: vec![BigRational::zero(); euler_phi(m) as usize],
        }
    }

    pub fn from_rational_in(q: BigRational, m: u32) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_rational_in(q, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational_in(BigRational::one(), m)
    }

    /// `ζ_m^k`, with `k` reduced mod `m`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "root of unity of conductor 0");
        let k = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(m, poly)
    }

    /// Canonicalizes an arbitrary polynomial in `ζ_m`.
    pub fn from_poly(m: u32, poly: Vec<BigRational>) -> Self {
        let phi = euler_phi(m) as usize;
        let mut folded: Vec<BigRational> = vec![BigRational::zero(); (m as usize).max(phi)];
        for (k, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                folded[k % m as usize] += c;
            }
        }
        CycNum {
            conductor: m,
            coeffs: reduce_mod_cyclotomic(folded, m),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficient of `ζ_m^k` for `0 <= k < φ(m)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Result<BigRational, CycError> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CycError::NotRational(self.to_string()))
        }
    }

    /// Rational integer value, if this is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational().ok()?;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    /// Re-expresses the value in `Q(ζ_target)`; `conductor` must divide `target`.
    /// Rational values rebase to any conductor.
    pub fn rebase(&self, target: u32) -> Result<Self, CycError> {
        if target == 0 {
            return Err(CycError::ZeroConductor);
        }
        if target == self.conductor {
            return Ok(self.clone());
        }
        if self.is_rational() {
            return Ok(Self::from_rational_in(self.coeffs[0].clone(), target));
        }
        if !target.is_multiple_of(self.conductor) {
            return Err(CycError::NotADivisor {
                from: self.conductor,
                to: target,
            });
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); step * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    fn align(&self, other: &Self) -> Result<(Self, Self), CycError> {
        if self.conductor == other.conductor {
            return Ok((self.clone(), other.clone()));
        }
        if self.is_rational() {
            return Ok((self.rebase(other.conductor)?, other.clone()));
        }
        if other.is_rational() {
            return Ok((self.clone(), other.rebase(self.conductor)?));
        }
        Err(CycError::ConductorMismatch {
            left: self.conductor,
            right: other.conductor,
        })
    }

    /// Rebases both operands to the least common conductor.
    pub fn lift_common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor.lcm(&b.conductor);
        (a.rebase(m).unwrap(), b.rebase(m).unwrap())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CycNum {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        let (a, b) = self.align(other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Ok(CycNum {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        let (a, b) = self.align(other)?;
        if a.is_rational() || b.is_rational() {
            let (s, v) = if a.is_rational() { (&a, &b) } else { (&b, &a) };
            return Ok(v.scale(&s.coeffs[0]));
        }
        let n = a.coeffs.len();
        let mut prod = vec![BigRational::zero(); (2 * n - 1).max(a.conductor as usize)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_poly(a.conductor, prod))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, by solving `a · x = 1` for the coordinates of
    /// `x`. Denominators are cleared first and the system is solved with
    /// fraction-free Gauss-Jordan elimination over the integers.
    pub fn try_inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational_in(
                self.coeffs[0].recip(),
                self.conductor,
            ));
        }
        let m = self.conductor;
        let phi = self.coeffs.len();
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let int = self.scale(&BigRational::from_integer(den.clone()));
        // aug[row] = [column j holds coordinate `row` of a·ζ^j | rhs]
        let mut aug = vec![vec![BigInt::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = int.try_mul(&Self::root_of_unity(m, j as i64))?;
            for (row, c) in col.coeffs.into_iter().enumerate() {
                aug[row][j] = c.to_integer();
            }
        }
        aug[0][phi] = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..phi {
            let piv = (k..phi)
                .find(|&r| !aug[r][k].is_zero())
                .ok_or(CycError::DivisionByZero)?;
            aug.swap(k, piv);
            let pivot_row = aug[k].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let f = std::mem::take(&mut row[k]);
                for j in (0..=phi).filter(|&j| j != k) {
                    row[j] = (&pivot_row[k] * &row[j] - &f * &pivot_row[j]) / &prev;
                }
            }
            prev = pivot_row[k].clone();
        }
        let coords = aug
            .into_iter()
            .enumerate()
            .map(|(i, row)| BigRational::new(&row[phi] * &den, row[i].clone()))
            .collect();
        Ok(Self::from_poly(m, coords))
    }

    /// Image under the automorphism `ζ_m ↦ ζ_m^r`.
    pub fn galois_power(&self, r: i64) -> Result<Self, CycError> {
        let m = self.conductor as i64;
        if r.gcd(&m) != 1 {
            return Err(CycError::NotCoprime {
                r,
                m: self.conductor,
            });
        }
        if self.is_rational() {
            return Ok(self.clone());
        }
        let r = r.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(k * r) % m as usize] += c;
            }
        }
        Ok(Self::from_poly(self.conductor, poly))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois_power(-1)
            .expect("-1 is a unit mod every conductor")
    }

    /// Total order on canonical representations: conductor, then coefficients.
    /// Only meaningful among values sharing a conductor.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn reduce_mod_cyclotomic(mut poly: Vec<BigRational>, m: u32) -> Vec<BigRational> {
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    for i in (phi..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], BigRational::zero());
        for (j, &pj) in phi_poly[..phi].iter().enumerate() {
            if pj != 0 {
                poly[i - phi + j] -= &c * BigRational::from_integer(pj.into());
            }
        }
    }
    poly.truncate(phi);
    poly.resize(phi, BigRational::zero());
    poly
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::lift_common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

// Operator forms panic on a conductor mismatch; use the `try_*` methods
// when operands come from different fields.
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders a value in the literal syntax accepted by [`parse_cyc`].
pub fn format_cyc(a: &CycNum) -> String {
    if a.is_rational() {
        return fmt_rational(&a.coeffs[0]);
    }
    let mut out = String::new();
    for (k, c) in a.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match k {
            0 => String::new(),
            1 => format!("E({})", a.conductor),
            _ => format!("E({})^{}", a.conductor, k),
        };
        if k == 0 {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
            out.push_str(&power);
        }
    }
    out
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cyc(self))
    }
}
