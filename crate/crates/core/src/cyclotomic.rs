//! Exact arithmetic in the ring of cyclotomic integers `Z[zeta_N]`.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` after
//! reduction modulo the `N`-th cyclotomic polynomial, so equality and
//! integrality are decidable without floating point. Values of different
//! orders are promoted to the lcm order before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("cyclotomic order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("value {0} is not a rational integer")]
    NonIntegral(String),
}

fn check_order(n: u64) -> Result<(), CyclotomicError> {
    if n == 0 {
        Err(CyclotomicError::ZeroOrder)
    } else if n > MAX_ORDER {
        Err(CyclotomicError::OrderTooLarge(n))
    } else {
        Ok(())
    }
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
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

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

type PolyCache = RwLock<HashMap<u64, Arc<CycloPoly>>>;

/// A cached cyclotomic polynomial, with an `i64` copy for fast reduction.
#[derive(Debug)]
struct CycloPoly {
    big: Vec<BigInt>,
    small: Option<Vec<i64>>,
    sparse: Option<Vec<(usize, i64)>>,
}

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached_poly(n: u64) -> Result<Arc<CycloPoly>, CyclotomicError> {
    check_order(n)?;
    if let Some(p) = cache().read().expect("poly cache poisoned").get(&n) {
        return Ok(p.clone());
    }
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cached_poly(d)?;
        num = exact_div_monic(&num, &phi_d.big);
    }
    let small = num.iter().map(|c| c.to_i64()).collect::<Option<Vec<_>>>();
    let sparse = small.as_ref().map(|v| {
        v.iter()
            .take(v.len() - 1)
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c))
            .collect()
    });
    let poly = Arc::new(CycloPoly { big: num, small, sparse });
    cache()
        .write()
        .expect("poly cache poisoned")
        .entry(n)
        .or_insert_with(|| poly.clone());
    Ok(poly)
}

/// Quotient of `num` by the monic polynomial `den`; the remainder must vanish.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// The monic `n`-th cyclotomic polynomial, coefficients in ascending degree.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>, CyclotomicError> {
    Ok(cached_poly(n)?.big.clone())
}

/// Reduce `poly` (ascending coefficients) in place modulo the monic `phi`.
fn reduce_big(poly: &mut Vec<BigInt>, phi: &[BigInt]) {
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, pc) in phi.iter().enumerate().take(deg) {
                if !pc.is_zero() {
                    poly[i - deg + j] -= &c * pc;
                }
            }
        }
    }
    poly.resize(deg, BigInt::zero());
}

fn reduce_small(poly: &mut [i128], phi: &[i64]) -> Option<()> {
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        poly[i] = 0;
        for (j, &pc) in phi.iter().enumerate().take(deg) {
            if pc != 0 {
                let t = c.checked_mul(pc as i128)?;
                poly[i - deg + j] = poly[i - deg + j].checked_sub(t)?;
            }
        }
    }
    Some(())
}

/// An element of `Z[zeta_N]` in canonical reduced form.
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Result<Self, CyclotomicError> {
        check_order(order)?;
        Ok(Self {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order) as usize],
        })
    }

    pub fn from_int(order: u64, value: impl Into<BigInt>) -> Result<Self, CyclotomicError> {
        let mut z = Self::zero(order)?;
        z.coeffs[0] = value.into();
        Ok(z)
    }

    pub fn one(order: u64) -> Result<Self, CyclotomicError> {
        Self::from_int(order, 1)
    }

    /// `zeta_N^e`, with `e` taken modulo `N`.
    pub fn root(order: u64, e: i64) -> Result<Self, CyclotomicError> {
        check_order(order)?;
        let e = e.rem_euclid(order as i64) as usize;
        let mut counts = vec![0i64; order as usize];
        counts[e] = 1;
        Self::from_exponent_counts(order, &counts)
    }

    /// Builds `sum_e counts[e] * zeta_N^e` from a dense vector of length `N`.
    pub fn from_exponent_counts(order: u64, counts: &[i64]) -> Result<Self, CyclotomicError> {
        check_order(order)?;
        assert_eq!(counts.len(), order as usize, "counts length must equal the order");
        let phi = cached_poly(order)?;
        let deg = phi.big.len() - 1;
        if let Some(small) = &phi.small {
            let mut work: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
            if work.len() < deg {
                work.resize(deg, 0);
            }
            if reduce_small(&mut work, small).is_some() {
                return Ok(Self {
                    order,
                    coeffs: work[..deg].iter().map(|&c| BigInt::from(c)).collect(),
                });
            }
        }
        let mut work: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        reduce_big(&mut work, &phi.big);
        Ok(Self { order, coeffs: work })
    }

    /// The rational integer `sum_e counts[e] * zeta_N^e`, or `None` if the
    /// sum is not a rational integer. `counts` is used as scratch space.
    pub fn integer_from_exponent_counts(order: u64, counts: &mut [i64]) -> Result<Option<BigInt>, CyclotomicError> {
        check_order(order)?;
        assert_eq!(counts.len(), order as usize, "counts length must equal the order");
        let phi = cached_poly(order)?;
        let deg = phi.big.len() - 1;
        if let Some(sparse) = &phi.sparse {
            let backup = counts.to_vec();
            let mut ok = true;
            'outer: for i in (deg..counts.len()).rev() {
                let c = counts[i];
                if c == 0 {
                    continue;
                }
                counts[i] = 0;
                for &(j, pc) in sparse {
                    match c.checked_mul(pc).and_then(|t| counts[i - deg + j].checked_sub(t)) {
                        Some(v) => counts[i - deg + j] = v,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                let top = deg.min(counts.len());
                return Ok(counts[1..top].iter().all(|&c| c == 0).then(|| BigInt::from(counts[0])));
            }
            counts.copy_from_slice(&backup);
        }
        let v = Self::from_exponent_counts(order, counts)?;
        Ok(v.as_integer().ok())
    }

    /// `sum_j coeffs[j] * zeta_N^j`, reduced; any length is accepted.
    pub fn from_coeffs(order: u64, coeffs: Vec<BigInt>) -> Result<Self, CyclotomicError> {
        check_order(order)?;
        Ok(Self::from_unreduced(order, coeffs))
    }

    fn from_unreduced(order: u64, mut poly: Vec<BigInt>) -> Self {
        let phi = cached_poly(order).expect("order already validated");
        reduce_big(&mut poly, &phi.big);
        Self { order, coeffs: poly }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-express in `Z[zeta_M]` for a multiple `M` of the current order.
    pub fn embed(&self, target: u64) -> Result<Self, CyclotomicError> {
        check_order(target)?;
        assert!(
            target % self.order == 0,
            "cannot embed order {} into {}",
            self.order,
            target
        );
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut poly = vec![BigInt::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Ok(Self::from_unreduced(target, poly))
    }

    fn unify(&self, other: &Self) -> Result<(Self, Self), CyclotomicError> {
        if self.order == other.order {
            return Ok((self.clone(), other.clone()));
        }
        let m = self.order.lcm(&other.order);
        Ok((self.embed(m)?, other.embed(m)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        let (mut a, b) = self.unify(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        let (a, b) = self.unify(other)?;
        let n = a.coeffs.len();
        let mut prod = vec![BigInt::zero(); (2 * n).saturating_sub(1).max(1)];
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
        Ok(Self::from_unreduced(a.order, prod))
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut poly = vec![BigInt::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(n - j) % n] += c;
        }
        Self::from_unreduced(self.order, poly)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Result<BigInt, CyclotomicError> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(CyclotomicError::NonIntegral(self.to_string()))
        }
    }

    /// Numerical value at `zeta_N = exp(2 pi i / N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match self.unify(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*z")?,
                _ => write!(f, "{a}*z^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (z = zeta_{})", self.order)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("cyclotomic order overflow")
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("cyclotomic order overflow")
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Mul<i64> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, k: i64) -> Cyclotomic {
        self.scalar_mul(&BigInt::from(k))
    }
}

/// A short integer combination of roots of unity, `sum c_i zeta_N^(e_i)`,
/// kept unreduced in the group ring `Z[Z_N]`.
///
/// Character values are tabulated in this form; converting to
/// [`Cyclotomic`] performs the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    order: u64,
    terms: SmallVec<[(i64, u64); 3]>,
}

impl RootSum {
    pub fn zero(order: u64) -> Self {
        Self {
            order,
            terms: SmallVec::new(),
        }
    }

    /// `coeff * zeta_N^e`.
    pub fn term(order: u64, coeff: i64, e: i64) -> Self {
        let mut s = Self::zero(order);
        s.push(coeff, e);
        s
    }

    pub fn push(&mut self, coeff: i64, e: i64) {
        if coeff != 0 {
            let e = e.rem_euclid(self.order as i64) as u64;
            self.terms.push((coeff, e));
        }
    }

    pub fn with(mut self, coeff: i64, e: i64) -> Self {
        self.push(coeff, e);
        self
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &[(i64, u64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let mut counts = vec![0i64; self.order as usize];
        for &(c, e) in &self.terms {
            counts[e as usize] += c;
        }
        Cyclotomic::from_exponent_counts(self.order, &counts).expect("valid order")
    }
}
