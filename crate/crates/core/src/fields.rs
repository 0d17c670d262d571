//! Concrete finite-field tower `F_p < F_q < F_{q^2}` with compatible
//! primitive elements and discrete-log tables.
//!
//! Elements are encoded as integers `sum c_i p^i` for the polynomial
//! `sum c_i x^i` modulo the field's defining polynomial. Both fields are
//! built directly over `F_p`; the embedding `F_q -> F_{q^2}` is computed and
//! checked exhaustively. All arithmetic is by dense table lookup.

use thiserror::Error;

/// Largest `q` the tower will build.
pub const MAX_TOWER_Q: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("q = {0} exceeds the tower budget (q <= {MAX_TOWER_Q})")]
    BudgetExceeded(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("discrete logarithm of zero")]
    ZeroElement,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &mc) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - (lead * mc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most half.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for deg in 1..=n / 2 {
        for idx in 0..p.pow(deg as u32) {
            let mut g = digits(idx, p, deg);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `n` over `F_p`, ordered
/// by its coefficient vector read from the highest non-leading term down.
pub fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    (0..p.pow(n as u32))
        .map(|idx| {
            let mut f = digits(idx, p, n);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// A finite field `F_{p^n}` with full addition and multiplication tables.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u32,
    degree: usize,
    size: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl GaloisField {
    pub fn new(p: u32, degree: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let modulus = smallest_irreducible(p, degree);
        let size = p.pow(degree as u32);
        let n = size as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let elems: Vec<Vec<u32>> = (0..size).map(|x| digits(x, p, degree)).collect();
        for x in 0..n {
            for y in 0..n {
                let s: Vec<u32> = elems[x].iter().zip(&elems[y]).map(|(a, b)| (a + b) % p).collect();
                add[x * n + y] = undigits(&s, p) as u16;
                let mut prod = vec![0u32; 2 * degree - 1];
                for (i, a) in elems[x].iter().enumerate() {
                    for (j, b) in elems[y].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                let red = poly_rem(&prod, &modulus, p);
                mul[x * n + y] = undigits(&red, p) as u16;
            }
        }
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for x in 0..n {
            for y in 0..n {
                if add[x * n + y] == 0 {
                    neg[x] = y as u16;
                }
                if mul[x * n + y] == 1 {
                    inv[x] = y as u16;
                }
            }
        }
        Ok(Self {
            p,
            degree,
            size,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Defining polynomial, ascending coefficients, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[(x * self.size + y) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[(x * self.size + y) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize] as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.inv[x as usize] as u32)
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: u32) -> u64 {
        assert!(x != 0, "zero has no multiplicative order");
        let mut y = x;
        let mut k = 1;
        while y != 1 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// The prime-field element `c mod p`.
    pub fn from_prime(&self, c: u32) -> u32 {
        c % self.p
    }

    /// Absolute trace to `F_p`, returned as an integer in `[0, p)`.
    pub fn trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.degree {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as u64);
        }
        debug_assert!(acc < self.p, "trace must land in the prime field");
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }
}

/// `F_p < F_q < F_{q^2}` with `sigma` primitive in `F_{q^2}` and
/// `rho = sigma^(q+1)` primitive in `F_q`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    ell: usize,
    q: u32,
    small: GaloisField,
    big: GaloisField,
    rho: u32,
    sigma: u32,
    embed: Vec<u32>,
    rho_pow: Vec<u32>,
    sigma_pow: Vec<u32>,
    dlog_small: Vec<u32>,
    dlog_big: Vec<u32>,
}

impl FieldTower {
    pub fn build(p: u32, ell: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if ell == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).pow(ell as u32);
        if q > MAX_TOWER_Q as u64 {
            return Err(FieldError::BudgetExceeded(q));
        }
        let q = q as u32;
        let small = GaloisField::new(p, ell)?;
        let big = GaloisField::new(p, 2 * ell)?;
        let r = (q - 1) as u64;
        let s = (q + 1) as u64;
        let rs = r * s;

        let sigma = (1..big.size())
            .find(|&x| big.order_of(x) == rs)
            .expect("multiplicative group of a finite field is cyclic");

        // The subfield F_q inside F_{q^2} is the fixed set of x -> x^q.
        let embed = (0..big.size())
            .filter(|&b| big.pow(b, q as u64) == b)
            .find_map(|beta| {
                let map: Vec<u32> = (0..small.size())
                    .map(|x| {
                        let cs = digits(x, p, ell);
                        let mut acc = 0;
                        let mut bp = 1;
                        for c in cs {
                            acc = big.add(acc, big.mul(big.from_prime(c), bp));
                            bp = big.mul(bp, beta);
                        }
                        acc
                    })
                    .collect();
                let hom = small.elements().all(|x| {
                    small
                        .elements()
                        .all(|y| map[small.mul(x, y) as usize] == big.mul(map[x as usize], map[y as usize]))
                });
                let mut seen = vec![false; big.size() as usize];
                let injective = map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true));
                (hom && injective).then_some(map)
            })
            .expect("F_q embeds in F_{q^2}");

        let rho_big = big.pow(sigma, s);
        let rho = embed
            .iter()
            .position(|&v| v == rho_big)
            .expect("sigma^s lies in the embedded F_q") as u32;

        let mut rho_pow = Vec::with_capacity(r as usize);
        let mut dlog_small = vec![u32::MAX; small.size() as usize];
        let mut x = 1;
        for k in 0..r {
            rho_pow.push(x);
            dlog_small[x as usize] = k as u32;
            x = small.mul(x, rho);
        }
        let mut sigma_pow = Vec::with_capacity(rs as usize);
        let mut dlog_big = vec![u32::MAX; big.size() as usize];
        let mut y = 1;
        for k in 0..rs {
            sigma_pow.push(y);
            dlog_big[y as usize] = k as u32;
            y = big.mul(y, sigma);
        }
        Ok(Self {
            p,
            ell,
            q,
            small,
            big,
            rho,
            sigma,
            embed,
            rho_pow,
            sigma_pow,
            dlog_small,
            dlog_big,
        })
    }

    /// Tower for a prime power `q`.
    pub fn for_q(q: u32) -> Result<Self, FieldError> {
        let (p, ell) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::build(p, ell)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `F_q`.
    pub fn small(&self) -> &GaloisField {
        &self.small
    }

    /// `F_{q^2}`.
    pub fn big(&self) -> &GaloisField {
        &self.big
    }

    pub fn rho(&self) -> u32 {
        self.rho
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn embed(&self, x: u32) -> u32 {
        self.embed[x as usize]
    }

    /// `rho^k` in `F_q`.
    pub fn rho_pow(&self, k: i64) -> u32 {
        self.rho_pow[k.rem_euclid(self.rho_pow.len() as i64) as usize]
    }

    /// `sigma^k` in `F_{q^2}`.
    pub fn sigma_pow(&self, k: i64) -> u32 {
        self.sigma_pow[k.rem_euclid(self.sigma_pow.len() as i64) as usize]
    }

    /// Exponent `k` in `Z_r` with `rho^k = x`.
    pub fn dlog_q(&self, x: u32) -> Result<u32, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroElement);
        }
        Ok(self.dlog_small[x as usize])
    }

    /// Exponent `k` in `Z_{rs}` with `sigma^k = x`.
    pub fn dlog_q2(&self, x: u32) -> Result<u32, FieldError> {
        if x == 0 {
            return Err(FieldError::ZeroElement);
        }
        Ok(self.dlog_big[x as usize])
    }
}

/// Decompose `q = p^ell`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut m = q;
    let mut ell = 0;
    while m % p == 0 {
        m /= p;
        ell += 1;
    }
    (m == 1).then_some((p, ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn q2_tower() {
        let t = FieldTower::build(2, 1).unwrap();
        assert_eq!(t.rho(), 1);
        assert_eq!(t.big().order_of(t.sigma()), 3);
    }

    #[test]
    fn q3_tower_orders() {
        let t = FieldTower::build(3, 1).unwrap();
        let big = t.big();
        // exhaustive orders of the 8 nonzero elements of F_9
        let mut orders: Vec<u64> = (1..9).map(|x| big.order_of(x)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4, 4, 8, 8, 8, 8]);
        assert_eq!(big.order_of(t.sigma()), 8);
        assert_eq!(t.small().order_of(t.rho()), 2);
        assert_eq!(t.embed(t.rho()), big.pow(t.sigma(), 4));
    }

    #[test]
    fn q4_tower_orders() {
        let t = FieldTower::build(2, 2).unwrap();
        assert_eq!(t.big().order_of(t.sigma()), 15);
        assert_eq!(t.small().order_of(t.rho()), 3);
        assert_eq!(t.embed(t.rho()), t.big().pow(t.sigma(), 5));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldTower::build(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldTower::build(17, 1).unwrap_err(), FieldError::BudgetExceeded(17));
        assert_eq!(FieldTower::build(2, 5).unwrap_err(), FieldError::BudgetExceeded(32));
    }

    #[test]
    fn dlog_round_trips() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let t = FieldTower::for_q(q).unwrap();
            let r = (q - 1) as i64;
            let rs = r * (q as i64 + 1);
            assert_eq!(t.dlog_q(1).unwrap(), 0);
            if r > 1 {
                assert_eq!(t.dlog_q(t.rho()).unwrap(), 1);
            }
            for k in 0..r {
                assert_eq!(t.dlog_q(t.rho_pow(k)).unwrap() as i64, k);
            }
            for k in 0..rs {
                assert_eq!(t.dlog_q2(t.sigma_pow(k)).unwrap() as i64, k);
            }
            assert_eq!(t.dlog_q(0), Err(FieldError::ZeroElement));
            assert_eq!(t.dlog_q2(0), Err(FieldError::ZeroElement));
        }
    }

    #[test]
    fn group_orders_and_norm_compatibility() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let t = FieldTower::for_q(q).unwrap();
            let r = (q - 1) as u64;
            let s = (q + 1) as u64;
            assert_eq!(t.small().elements().filter(|&x| x != 0).count() as u64, r);
            assert_eq!(t.big().elements().filter(|&x| x != 0).count() as u64, r * s);
            let embedded: Vec<u32> = t.small().elements().map(|x| t.embed(x)).collect();
            for k in 0..(r * s) as i64 {
                let y = t.big().pow(t.sigma(), (s as i64 * k) as u64);
                assert!(embedded.contains(&y));
            }
            assert_eq!(t.embed(t.rho()), t.big().pow(t.sigma(), s));
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [4, 8, 9, 16] {
            let t = FieldTower::for_q(q).unwrap();
            let p = t.p() as u64;
            for f in [t.small(), t.big()] {
                for _ in 0..200 {
                    let x = rng.gen_range(0..f.size());
                    let y = rng.gen_range(0..f.size());
                    assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
                }
            }
        }
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
