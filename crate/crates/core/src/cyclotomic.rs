//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclo`] is an element of `Q(zeta_n)` stored in the Zumbroich basis of
//! its *conductor*, the smallest `n` (never `2 mod 4`) with the value inside
//! `Q(zeta_n)`. Every operation returns this normal form, so structural
//! equality is field equality, and values that happen to lie in small
//! subfields stay small even when they were produced in a large field.
//!
//! The Zumbroich basis of `Q(zeta_n)` is a `Z`-basis of `Z[zeta_n]`, so a
//! value is an algebraic integer exactly when all of its coefficients are
//! integers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed cyclotomic value: {0}")]
    Malformed(String),
}

/// An exact cyclotomic number in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    conductor: u32,
    /// Sorted by exponent; exponents are Zumbroich basis indices; no zeros.
    terms: Vec<(u32, Rational)>,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, CycloError> {
    let bad = || CycloError::Malformed(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (g, x, _) = extended_gcd(a as i64 % m as i64, m as i64);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i64) as u64
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Per-prime data used to read off the prime-power component of an exponent.
struct PrimePart {
    p: u32,
    q: u64,
    /// n / q
    cofactor: u64,
    cofactor_inv: u64,
    /// p^(a-1)
    top: u64,
}

fn prime_parts(n: u32) -> Vec<PrimePart> {
    factorize(n)
        .into_iter()
        .map(|(p, a)| {
            let q = (p as u64).pow(a);
            let cofactor = n as u64 / q;
            PrimePart {
                p,
                q,
                cofactor,
                cofactor_inv: mod_inverse(cofactor % q, q),
                top: q / p as u64,
            }
        })
        .collect()
}

impl PrimePart {
    fn top_digit(&self, k: u64) -> u64 {
        ((k % self.q) * self.cofactor_inv % self.q) / self.top
    }

    fn valid(&self, k: u64) -> bool {
        let d = self.top_digit(k);
        if self.p == 2 {
            d == 0
        } else {
            d != 0
        }
    }
}

/// Whether `zeta_n^k` belongs to the Zumbroich basis of `Q(zeta_n)`.
pub fn is_basis_exponent(n: u32, k: u32) -> bool {
    prime_parts(n).iter().all(|pp| pp.valid(k as u64))
}

/// Basis exponents of `Q(zeta_n)` in increasing order; there are `phi(n)`.
pub fn basis_exponents(n: u32) -> Vec<u32> {
    let parts = prime_parts(n);
    (0..n)
        .filter(|&k| parts.iter().all(|pp| pp.valid(k as u64)))
        .collect()
}

/// Rewrites a linear combination of `n`-th roots of unity in the basis.
fn to_basis(n: u32, mut map: BTreeMap<u32, Rational>) -> BTreeMap<u32, Rational> {
    let n64 = n as u64;
    for pp in prime_parts(n) {
        let keys: Vec<u32> = map.keys().copied().collect();
        for k in keys {
            if pp.valid(k as u64) {
                continue;
            }
            let Some(c) = map.remove(&k) else { continue };
            if c.is_zero() {
                continue;
            }
            if pp.p == 2 {
                // zeta_q^(2^(a-1)) = -1
                let k2 = ((k as u64 + n64 - (pp.top * pp.cofactor) % n64) % n64) as u32;
                *map.entry(k2).or_insert_with(Rational::zero) -= &c;
            } else {
                // 1 + zeta_p + ... + zeta_p^(p-1) = 0
                for t in 1..pp.p as u64 {
                    let k2 = ((k as u64 + t * pp.top * pp.cofactor) % n64) as u32;
                    *map.entry(k2).or_insert_with(Rational::zero) -= &c;
                }
            }
        }
    }
    map.retain(|_, c| !c.is_zero());
    map
}

/// Shrinks `(n, basis coefficients)` to the conductor of the value.
fn reduce(mut n: u32, mut map: BTreeMap<u32, Rational>) -> Cyclo {
    map.retain(|_, c| !c.is_zero());
    if map.is_empty() {
        return Cyclo::zero();
    }
    'outer: loop {
        if n == 1 {
            break;
        }
        for (p, a) in factorize(n) {
            let shrunk = if p == 2 {
                let step = if a >= 3 { 2 } else { 4 };
                if map.keys().all(|k| k % step == 0) {
                    n /= step;
                    Some(map.iter().map(|(k, c)| (k / step, c.clone())).collect())
                } else {
                    None
                }
            } else if a >= 2 {
                if map.keys().all(|k| k % p == 0) {
                    n /= p;
                    Some(map.iter().map(|(k, c)| (k / p, c.clone())).collect())
                } else {
                    None
                }
            } else {
                shrink_squarefree_prime(n, p, &map).map(|m| {
                    n /= p;
                    m
                })
            };
            if let Some(m) = shrunk {
                map = m;
                continue 'outer;
            }
        }
        break;
    }
    Cyclo {
        conductor: n,
        terms: map.into_iter().collect(),
    }
}

/// For `p || n`, `p` odd: the value lies in `Q(zeta_{n/p})` iff its
/// coefficients are constant along each fibre of the `p`-component.
fn shrink_squarefree_prime(
    n: u32,
    p: u32,
    map: &BTreeMap<u32, Rational>,
) -> Option<BTreeMap<u32, Rational>> {
    let m = (n / p) as u64;
    let p_inv = mod_inverse(p as u64 % m.max(1), m.max(1));
    let mut fibres: BTreeMap<u32, (usize, &Rational)> = BTreeMap::new();
    for (&k, c) in map {
        let j = if m == 1 { 0 } else { (k as u64 * p_inv % m) as u32 };
        match fibres.get_mut(&j) {
            Some((count, c0)) => {
                if *c0 != c {
                    return None;
                }
                *count += 1;
            }
            None => {
                fibres.insert(j, (1, c));
            }
        }
    }
    if fibres.values().any(|(count, _)| *count != (p - 1) as usize) {
        return None;
    }
    Some(fibres.into_iter().map(|(j, (_, c))| (j, -c.clone())).collect())
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclo {
            conductor: 1,
            terms: vec![(0, q)],
        }
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        Self::from_root_multiplicities(n, [(k, Rational::one())])
    }

    /// `sum c_k zeta_n^k` for arbitrary (not necessarily basis) exponents.
    pub fn from_root_multiplicities<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut map = BTreeMap::new();
        if n % 4 == 2 {
            // zeta_{2m}^k = (-1)^k zeta_m^(k(m+1)/2) for odd m
            let m = (n / 2) as i64;
            for (k, c) in terms {
                let k = k.rem_euclid(n as i64);
                let e = (k * ((m + 1) / 2)).rem_euclid(m) as u32;
                let c = if k % 2 == 1 { -c } else { c };
                *map.entry(e).or_insert_with(Rational::zero) += c;
            }
            return reduce(m as u32, to_basis(m as u32, map));
        }
        for (k, c) in terms {
            let k = k.rem_euclid(n as i64) as u32;
            *map.entry(k).or_insert_with(Rational::zero) += c;
        }
        reduce(n, to_basis(n, map))
    }

    /// Rebuilds a value from its conductor and dense basis coefficients, as
    /// stored in serialized tables.
    pub fn from_basis_coeffs(order: u32, coeffs: &[Rational]) -> Result<Self, CycloError> {
        if order == 0 || order % 4 == 2 {
            return Err(CycloError::Malformed(format!("invalid order {order}")));
        }
        let basis = basis_exponents(order);
        if basis.len() != coeffs.len() {
            return Err(CycloError::Malformed(format!(
                "order {order} needs {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        let map = basis.into_iter().zip(coeffs.iter().cloned()).collect();
        Ok(reduce(order, map))
    }

    /// The conductor; `1` for rationals.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Dense coefficients over [`basis_exponents`] of the conductor.
    pub fn basis_coeffs(&self) -> Vec<Rational> {
        let basis = basis_exponents(self.conductor);
        let mut out = vec![Rational::zero(); basis.len()];
        for (k, c) in &self.terms {
            let pos = basis.binary_search(k).expect("normal form uses basis exponents");
            out[pos] = c.clone();
        }
        out
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor != 1 {
            return None;
        }
        Some(self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    fn embed(&self, target: u32) -> BTreeMap<u32, Rational> {
        debug_assert_eq!(target % self.conductor, 0);
        let step = (target / self.conductor) as u64;
        let raw: BTreeMap<u32, Rational> = self
            .terms
            .iter()
            .map(|(k, c)| (((*k as u64 * step) % target as u64) as u32, c.clone()))
            .collect();
        if step == 1 {
            raw
        } else {
            to_basis(target, raw)
        }
    }

    /// Image under the Galois automorphism `zeta -> zeta^k`, `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor as i64;
        let k = k.rem_euclid(n);
        debug_assert_eq!(k.gcd(&n), 1, "galois exponent must be a unit");
        let map = self
            .terms
            .iter()
            .map(|(e, c)| ((((*e as i64) * k) % n) as u32, c.clone()))
            .collect();
        reduce(self.conductor, to_basis(self.conductor, map))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclo {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.scale(&Rational::from_integer(BigInt::from(v)))
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let n = self.conductor as i64;
        let mut others = Cyclo::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &Cyclo) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    /// Evaluates at `zeta_n = exp(2 pi i / n)` (display only).
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    /// Sign of a real value; `None` if the value is not real or too close to
    /// zero to be decided from its floating-point evaluation.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Some(if q.is_positive() { Ordering::Greater } else { Ordering::Less });
        }
        if !self.is_real() {
            return None;
        }
        let (re, _) = self.to_complex();
        let height: f64 = self
            .terms
            .iter()
            .map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum();
        if re.abs() > 1e-9 * (1.0 + height) {
            Some(if re > 0.0 { Ordering::Greater } else { Ordering::Less })
        } else {
            None
        }
    }

    /// A deterministic total order used for sorting table rows: by conductor,
    /// then by coefficients with larger values first (so `1` precedes `-1`).
    pub fn table_cmp(&self, other: &Cyclo) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| {
            let a = self.basis_coeffs();
            let b = other.basis_coeffs();
            for (x, y) in a.iter().zip(&b) {
                match y.cmp(x) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Cyclo>>(items: I) -> Cyclo {
        let mut acc = Cyclo::zero();
        for x in items {
            acc = &acc + x;
        }
        acc
    }
}

fn add_impl(x: &Cyclo, y: &Cyclo, negate_y: bool) -> Cyclo {
    if y.is_zero() {
        return x.clone();
    }
    if x.is_zero() {
        return if negate_y { -y } else { y.clone() };
    }
    let n = x.conductor.lcm(&y.conductor);
    let mut map = x.embed(n);
    for (k, c) in y.embed(n) {
        let e = map.entry(k).or_insert_with(Rational::zero);
        if negate_y {
            *e -= c;
        } else {
            *e += c;
        }
    }
    reduce(n, map)
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        add_impl(self, rhs, false)
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        add_impl(self, rhs, true)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q);
        }
        let n = self.conductor.lcm(&rhs.conductor);
        let (sa, sb) = ((n / self.conductor) as u64, (n / rhs.conductor) as u64);
        let mut map: BTreeMap<u32, Rational> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let k = ((*ka as u64 * sa + *kb as u64 * sb) % n as u64) as u32;
                *map.entry(k).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        reduce(n, to_basis(n, map))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_int(v)
    }
}

impl From<Rational> for Cyclo {
    fn from(q: Rational) -> Self {
        Cyclo::from_rational(q)
    }
}

impl fmt::Display for Cyclo {
    /// GAP-style notation, e.g. `-1/2*E(5)^2+E(5)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor;
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let root = match (n, k) {
                (1, _) | (_, 0) => None,
                (_, 1) => Some(format!("E({n})")),
                _ => Some(format!("E({n})^{k}")),
            };
            let neg = c.is_negative();
            if i > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = format_rational(&c.abs());
            match root {
                None => write!(f, "{mag}")?,
                Some(r) if c.abs().is_one() => write!(f, "{r}")?,
                Some(r) => write!(f, "{mag}*{r}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.conductor,
            coeffs: self.basis_coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Cyclo::from_basis_coeffs(repr.order, &coeffs).map_err(serde::de::Error::custom)
    }
}

/// `sqrt(5)` as the quadratic Gauss sum `E(5) - E(5)^2 - E(5)^3 + E(5)^4`.
pub fn sqrt5() -> Cyclo {
    Cyclo::from_root_multiplicities(
        5,
        [(1, 1), (2, -1), (3, -1), (4, 1)].map(|(k, c)| (k, Rational::from_integer(c.into()))),
    )
}
