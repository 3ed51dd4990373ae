//! Exact arithmetic in `Q` and in cyclotomic fields `Q(ζ_M)`.
//!
//! An element of `Q(ζ_M)` is stored as its coefficient vector in the power
//! basis `1, ζ, …, ζ^{φ(M)-1}`, reduced modulo the cyclotomic polynomial
//! `Φ_M`. Reduction modulo `Φ_M` (rather than `x^M - 1`) makes the
//! representation canonical within one order, so zero tests and equality are
//! plain coefficient comparisons.
//!
//! Elements of different orders can be mixed freely through the operator
//! impls: both operands are embedded into `Q(ζ_lcm)` first. The `try_*`
//! methods are the strict variants and refuse mismatched orders.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rat = BigRational;

/// Builds the rational `n / d`.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("quantum integers are undefined at q = ±1")]
    DegenerateQ,
    #[error("malformed serialized element: {0}")]
    Malformed(String),
}

/// Per-order data: `Φ_M` and the reductions of `x^e` modulo `Φ_M`.
#[derive(Debug)]
struct CycloData {
    phi: usize,
    /// Coefficients of `Φ_M`, lowest degree first, monic.
    poly: Vec<BigInt>,
    /// `powers[e]` = coefficients of `x^e mod Φ_M` for `e < max(M, 2φ - 1)`.
    powers: Vec<Vec<BigInt>>,
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m % d == 0).collect()
}

/// Exact division of integer polynomials (lowest degree first) by a monic divisor.
fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    quot
}

fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = data(d).poly.clone();
        p = poly_div_monic(&p, &phi_d);
    }
    p
}

fn data(m: u64) -> Arc<CycloData> {
    if let Some(d) = cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return Arc::clone(d);
    }
    let poly = cyclotomic_poly(m);
    let phi = poly.len() - 1;
    let count = (m as usize).max(2 * phi).max(1);
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(count);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow term with Φ_M
        let top = cur[phi - 1].clone();
        for j in (1..phi).rev() {
            cur[j] = cur[j - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for j in 0..phi {
                cur[j] -= &top * &poly[j];
            }
        }
    }
    let entry = Arc::new(CycloData { phi, poly, powers });
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(m)
        .or_insert(entry)
        .clone()
}

/// Euler's totient, read off the degree of `Φ_M`.
pub fn totient(m: u64) -> usize {
    data(m).phi
}

/// The cyclotomic polynomial `Φ_M`, lowest degree coefficient first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    data(m).poly.clone()
}

/// An element of `Q(ζ_M)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u64,
    coeffs: Vec<Rat>,
}

impl CycNum {
    /// Builds an element from power-basis coefficients of any length; the
    /// polynomial is reduced modulo `Φ_M`.
    pub fn from_coeffs(order: u64, coeffs: &[Rat]) -> Result<Self, CycError> {
        if order == 0 {
            return Err(CycError::ZeroOrder);
        }
        let d = data(order);
        let mut out = vec![Rat::zero(); d.phi];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate_power(&d, order, e as u64, c, &mut out);
        }
        Ok(CycNum { order, coeffs: out })
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `ζ_M^k`; negative `k` wraps around.
    pub fn root(order: u64, k: i64) -> Result<Self, CycError> {
        if order == 0 {
            return Err(CycError::ZeroOrder);
        }
        let e = k.rem_euclid(order as i64) as u64;
        let d = data(order);
        let mut out = vec![Rat::zero(); d.phi];
        accumulate_power(&d, order, e, &Rat::one(), &mut out);
        Ok(CycNum { order, coeffs: out })
    }

    /// Re-expresses the element in `Q(ζ_target)`; `self.order` must divide `target`.
    pub fn embed(&self, target: u64) -> Result<Self, CycError> {
        if target == 0 {
            return Err(CycError::ZeroOrder);
        }
        if target % self.order != 0 {
            return Err(CycError::NotDivisible { from: self.order, to: target });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = target / self.order;
        let d = data(target);
        let mut out = vec![Rat::zero(); d.phi];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                accumulate_power(&d, target, e as u64 * step, c, &mut out);
            }
        }
        Ok(CycNum { order: target, coeffs: out })
    }

    fn lift_pair(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let l = a.order.lcm(&b.order);
        (a.embed(l).expect("lcm"), b.embed(l).expect("lcm"))
    }

    fn check_same(&self, other: &Self) -> Result<(), CycError> {
        if self.order != other.order {
            Err(CycError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check_same(other)?;
        Ok(self.add_same(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check_same(other)?;
        Ok(self.add_same(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check_same(other)?;
        Ok(self.mul_same(other))
    }

    fn add_same(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycNum { order: self.order, coeffs }
    }

    fn neg_ref(&self) -> Self {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = data(self.order);
        let phi = d.phi;
        if phi == 1 {
            return CycNum { order: self.order, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut prod = vec![Rat::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rat> = prod[..phi].to_vec();
        for (e, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&d.powers[e]) {
                if !p.is_zero() {
                    *o += c * Rat::from_integer(p.clone());
                }
            }
        }
        CycNum { order: self.order, coeffs: out }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_M`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(CycNum::from_rat(r.recip()).embed(self.order).expect("1 | M"));
        }
        let modulus: Vec<Rat> =
            data(self.order).poly.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let s = poly_inverse_mod(&self.coeffs, &modulus);
        CycNum::from_coeffs(self.order, &s)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one().embed(self.order).expect("1 | M");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<Self, CycError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn to_json(&self) -> CycJson {
        CycJson {
            order: self.order,
            num: self.coeffs.iter().map(|c| c.numer().to_string()).collect(),
            den: self.coeffs.iter().map(|c| c.denom().to_string()).collect(),
        }
    }

    pub fn from_json(j: &CycJson) -> Result<Self, CycError> {
        if j.num.len() != j.den.len() {
            return Err(CycError::Malformed("numerator/denominator length mismatch".into()));
        }
        let parse = |s: &str| {
            s.parse::<BigInt>().map_err(|e| CycError::Malformed(format!("{s}: {e}")))
        };
        let mut coeffs = Vec::with_capacity(j.num.len());
        for (n, d) in j.num.iter().zip(&j.den) {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(CycError::Malformed("zero denominator".into()));
            }
            coeffs.push(Rat::new(parse(n)?, d));
        }
        CycNum::from_coeffs(j.order, &coeffs)
    }
}

/// Adds `c · x^e mod Φ_M` into `out`.
fn accumulate_power(d: &CycloData, order: u64, e: u64, c: &Rat, out: &mut [Rat]) {
    let e = (e % order) as usize;
    let row = if e < d.powers.len() {
        &d.powers[e]
    } else {
        unreachable!("power table covers all residues")
    };
    for (o, p) in out.iter_mut().zip(row) {
        if !p.is_zero() {
            *o += c * Rat::from_integer(p.clone());
        }
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible polynomial `m`.
fn poly_inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    // invariant: s_i * a ≡ r_i (mod m)
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rat::zero()], vec![Rat::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant since m is irreducible and a ≢ 0
    let c = r0[0].clone();
    s0.iter().map(|x| x / &c).collect()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycNum::lift_pair(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::lift_pair(self, rhs);
        a.add_same(&b)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::lift_pair(self, rhs);
        a.add_same(&b.neg_ref())
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.order == 1 && rhs.order != 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 && self.order != 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = CycNum::lift_pair(self, rhs);
        a.mul_same(&b)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl CycNum {
    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·ζ{}", self.order)?,
                _ => write!(f, "({c})·ζ{}^{e}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON shape `{order, num, den}`; integers are decimal strings so that no
/// precision is lost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub order: u64,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        CycNum::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// `ζ_M^k` in canonical form.
pub fn cyc_root(m: u64, k: i64) -> Result<CycNum, CycError> {
    CycNum::root(m, k)
}

pub fn cyc_embed(a: &CycNum, target: u64) -> Result<CycNum, CycError> {
    a.embed(target)
}

/// Quantum integer `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`.
pub fn qint(n: i64, q: &CycNum) -> Result<CycNum, CycError> {
    let one = CycNum::one();
    if *q == one || *q == -&one {
        return Err(CycError::DegenerateQ);
    }
    let qn = q.powi(n)?;
    let qmn = q.powi(-n)?;
    let num = &qn - &qmn;
    let den = q - &q.inv()?;
    Ok(&num * &den.inv()?)
}

/// `[x]_q` for a rational exponent `x = p / d`, with `q = ζ_{2r}`.
///
/// The element lives in `Q(ζ_{2r·d'})` where `d'` is a multiple of the
/// reduced denominator of `x` supplied as `den`.
pub fn qint_rational(x: &Rat, r: u64, den: u64) -> Result<CycNum, CycError> {
    let order = 2 * r * den;
    let scaled = x * Rat::from_integer(BigInt::from(den));
    if !scaled.is_integer() {
        return Err(CycError::Malformed(format!("{x} is not in (1/{den})Z")));
    }
    let p = scaled.to_integer().to_i64().ok_or_else(|| CycError::Malformed(x.to_string()))?;
    // q^x = ζ_order^p and q = ζ_order^den
    let qx = CycNum::root(order, p)?;
    let qmx = CycNum::root(order, -p)?;
    let q = CycNum::root(order, den as i64)?;
    let qm = CycNum::root(order, -(den as i64))?;
    let num = &qx - &qmx;
    let den_v = &q - &qm;
    Ok(&num * &den_v.inv()?)
}
