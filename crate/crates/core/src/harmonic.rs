//! Convolution algebras on `G' = G x G` with `H` the diagonal copy of
//! `G = GL_2(q)`, built from enumerated elements for `q <= 3`.
//!
//! Values live in `(1/D) Z[zeta_N]` with `N = q^2 - 1`: an integer
//! numerator in the power basis modulo the `N`-th cyclotomic polynomial and
//! a positive integer denominator `D`, kept coprime to the numerator content.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::fields::is_prime;
use crate::gl2::{Gl2Error, Gl2Irrep, GroupParams};
use crate::oracle::{Gl2Oracle, Mat2, OracleError};
use crate::report::Report;
use crate::tensor::{ind_decompose, is_gelfand_triple_product, MultTable, TensorError};

/// Largest `q` for which `G x G` is enumerated.
pub const HARMONIC_MAX_Q: u64 = 3;

const MAX_PHI: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarmonicError {
    #[error("group functions live on different groups")]
    MismatchedGroup,
    #[error("q = {0} exceeds the harmonic budget (q <= {HARMONIC_MAX_Q})")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("rank of I_{pi} not certified: independent set {rank}, projection trace {trace}")]
    Uncertified { pi: String, rank: usize, trace: String },
}

/// Power-basis arithmetic in `Z[zeta_N]`.
#[derive(Debug)]
struct Ring {
    order: u64,
    phi: usize,
    /// `reduce[k]`: coordinates of `zeta^k` for `k < 2 phi - 1`.
    reduce: Vec<Vec<i128>>,
}

impl Ring {
    fn new(order: u64) -> Self {
        let z = Cyclotomic::zero(order).expect("valid order");
        let phi = z.coeffs().len();
        assert!(phi <= MAX_PHI);
        let reduce = (0..(2 * phi).saturating_sub(1))
            .map(|k| {
                let c = Cyclotomic::root(order, k as i64).expect("valid order");
                c.coeffs().iter().map(|x| x.to_i128().expect("small coefficient")).collect()
            })
            .collect();
        Self { order, phi, reduce }
    }

    fn lift(&self, c: &Cyclotomic) -> Vec<i128> {
        let c = c.embed(self.order).expect("order divides ring order");
        c.coeffs().iter().map(|x| x.to_i128().expect("small coefficient")).collect()
    }

    /// `acc += a * b`.
    fn mul_acc(&self, acc: &mut [i128], a: &[i128], b: &[i128]) {
        let phi = self.phi;
        let mut prod = [0i128; 2 * MAX_PHI];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        acc[..phi].iter_mut().zip(&prod[..phi]).for_each(|(s, &p)| *s += p);
        for k in phi..2 * phi - 1 {
            let c = prod[k];
            if c != 0 {
                for (s, &r) in acc.iter_mut().zip(&self.reduce[k]) {
                    *s += c * r;
                }
            }
        }
    }
}

/// `G x G` with multiplication table, Ad(diag G) orbits and the character
/// table of `G`.
#[derive(Debug)]
pub struct ProductGroup {
    oracle: Gl2Oracle,
    ring: Ring,
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    orbit_of: Vec<u32>,
    orbits: Vec<Vec<u32>>,
}

impl ProductGroup {
    pub fn new(q: u64) -> Result<Arc<Self>, HarmonicError> {
        if q > HARMONIC_MAX_Q {
            return Err(HarmonicError::BudgetExceeded(q));
        }
        let oracle = Gl2Oracle::new(q)?;
        let f = oracle.tower().small();
        let elems = oracle.elements();
        let n = elems.len();
        let index: HashMap<Mat2, usize> = elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mm = |a: &Mat2, b: &Mat2| -> Mat2 {
            [
                f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
                f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
                f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
                f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
            ]
        };
        let mut mul = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&mm(a, b)] as u32;
            }
        }
        let identity = index[&[1, 0, 0, 1]];
        let mut inv = vec![0u32; n];
        for i in 0..n {
            inv[i] = (0..n).find(|&j| mul[i * n + j] as usize == identity).expect("group") as u32;
        }
        // orbits of simultaneous conjugation on pairs
        let total = n * n;
        let mut orbit_of = vec![u32::MAX; total];
        let mut orbits = Vec::new();
        for start in 0..total {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = orbits.len() as u32;
            let (a, b) = (start / n, start % n);
            let mut members = Vec::new();
            for h in 0..n {
                let hi = inv[h] as usize;
                let conj = |x: usize| mul[mul[h * n + x] as usize * n + hi] as usize;
                let e = conj(a) * n + conj(b);
                if orbit_of[e] == u32::MAX {
                    orbit_of[e] = id;
                    members.push(e as u32);
                }
            }
            orbits.push(members);
        }
        let ring = Ring::new(oracle.params().rs);
        Ok(Arc::new(Self {
            oracle,
            ring,
            n,
            mul,
            inv,
            identity,
            orbit_of,
            orbits,
        }))
    }

    pub fn params(&self) -> &GroupParams {
        self.oracle.params()
    }

    /// `|G'| = |G|^2`.
    pub fn order(&self) -> usize {
        self.n * self.n
    }

    /// `|G|`, also `|H|`.
    pub fn base_order(&self) -> usize {
        self.n
    }

    /// Orbits of conjugation by the diagonal, each listed by element index.
    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.orbits
    }

    pub fn orbit_of(&self, e: usize) -> usize {
        self.orbit_of[e] as usize
    }

    /// Index of `(a, b)` in `G'`.
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.n + b
    }

    pub fn identity(&self) -> usize {
        self.pair(self.identity, self.identity)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let n = self.n;
        let a = self.mul[(x / n) * n + y / n] as usize;
        let b = self.mul[(x % n) * n + y % n] as usize;
        a * n + b
    }

    pub fn inv(&self, x: usize) -> usize {
        let n = self.n;
        self.inv[x / n] as usize * n + self.inv[x % n] as usize
    }

    fn phi(&self) -> usize {
        self.ring.phi
    }
}

/// A function `G' -> (1/D) Z[zeta_N]`.
#[derive(Debug, Clone)]
pub struct GroupFunction {
    group: Arc<ProductGroup>,
    /// `phi` power-basis coordinates per element.
    num: Vec<i128>,
    den: i128,
}

impl GroupFunction {
    pub fn zero(group: &Arc<ProductGroup>) -> Self {
        Self {
            group: group.clone(),
            num: vec![0; group.order() * group.phi()],
            den: 1,
        }
    }

    /// `scale * delta_e`.
    pub fn delta(group: &Arc<ProductGroup>, e: usize, scale: i64) -> Self {
        let mut f = Self::zero(group);
        f.num[e * group.phi()] = scale as i128;
        f
    }

    /// Indicator of an Ad(diag G) orbit.
    pub fn orbit_indicator(group: &Arc<ProductGroup>, orbit: usize) -> Self {
        let mut f = Self::zero(group);
        let phi = group.phi();
        for &e in &group.orbits[orbit] {
            f.num[e as usize * phi] = 1;
        }
        f
    }

    /// Class function of `G'` from a class function of each factor.
    pub fn from_fn(group: &Arc<ProductGroup>, mut value: impl FnMut(usize) -> Cyclotomic) -> Self {
        let mut f = Self::zero(group);
        let phi = group.phi();
        for e in 0..group.order() {
            let v = group.ring.lift(&value(e));
            f.num[e * phi..(e + 1) * phi].copy_from_slice(&v);
        }
        f
    }

    pub fn group(&self) -> &Arc<ProductGroup> {
        &self.group
    }

    pub fn denominator(&self) -> BigInt {
        BigInt::from(self.den)
    }

    /// Numerator at `e`.
    pub fn numerator(&self, e: usize) -> Cyclotomic {
        let phi = self.group.phi();
        let counts: Vec<i64> = {
            let mut c = vec![0i64; self.group.ring.order as usize];
            for (k, &x) in self.num[e * phi..(e + 1) * phi].iter().enumerate() {
                c[k] = x.to_i64().expect("numerator fits i64");
            }
            c
        };
        Cyclotomic::from_exponent_counts(self.group.ring.order, &counts).expect("valid order")
    }

    fn at(&self, e: usize) -> &[i128] {
        let phi = self.group.phi();
        &self.num[e * phi..(e + 1) * phi]
    }

    /// Support size.
    pub fn support(&self) -> usize {
        (0..self.group.order()).filter(|&e| self.at(e).iter().any(|&c| c != 0)).count()
    }

    /// Constant on every Ad(diag G) orbit.
    pub fn is_h_class_function(&self) -> bool {
        self.group.orbits.iter().all(|o| o.iter().all(|&e| self.at(e as usize) == self.at(o[0] as usize)))
    }

    /// Constant on conjugacy classes of `G'`.
    pub fn is_class_function(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|x| (0..g.order()).all(|y| self.at(g.mul(g.mul(y, x), g.inv(y))) == self.at(x)))
    }

    fn normalize(&mut self) {
        let content = self.num.iter().fold(self.den, |acc, &c| acc.gcd(&c));
        if content > 1 {
            self.num.iter_mut().for_each(|c| *c /= content);
            self.den /= content;
        }
    }

    fn same_group(&self, other: &Self) -> Result<(), HarmonicError> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(HarmonicError::MismatchedGroup)
        }
    }
}

impl PartialEq for GroupFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group)
            && self.num.iter().zip(&other.num).all(|(&a, &b)| a * other.den == b * self.den)
    }
}

/// `(f1 * f2)(x) = (1/|G'|) sum_y f1(y) f2(y^-1 x)`.
pub fn convolve(f1: &GroupFunction, f2: &GroupFunction) -> Result<GroupFunction, HarmonicError> {
    f1.same_group(f2)?;
    let g = &f1.group;
    let phi = g.phi();
    let nz = |f: &GroupFunction| -> Vec<usize> { (0..g.order()).filter(|&e| f.at(e).iter().any(|&c| c != 0)).collect() };
    let (s1, s2) = (nz(f1), nz(f2));
    let mut out = GroupFunction::zero(g);
    for &y in &s1 {
        for &z in &s2 {
            let x = g.mul(y, z);
            g.ring.mul_acc(&mut out.num[x * phi..(x + 1) * phi], f1.at(y), f2.at(z));
        }
    }
    out.den = f1.den * f2.den * g.order() as i128;
    out.normalize();
    Ok(out)
}

/// `xi_pi` scaled by `|G|` so that it is idempotent: supported on the
/// diagonal with `xi((h, h)) = |G| dim(pi) chi_pi(h^-1)`.
pub fn xi(pi: &Gl2Irrep, group: &Arc<ProductGroup>) -> Result<GroupFunction, HarmonicError> {
    let t = group.oracle.char_table();
    let i = t.irrep_index(pi).ok_or_else(|| Gl2Error::MismatchedQ {
        label: pi.to_string(),
        q: group.params().q,
    })?;
    let scale = (group.n as u64 * pi.dim(group.params())) as i128;
    let classes = group.oracle.element_classes();
    let mut f = GroupFunction::zero(group);
    let phi = group.phi();
    for h in 0..group.n {
        let v = group.ring.lift(t.value(i, classes[group.inv[h] as usize]));
        let e = group.pair(h, h);
        for (dst, x) in f.num[e * phi..(e + 1) * phi].iter_mut().zip(v) {
            *dst = x * scale;
        }
    }
    Ok(f)
}

/// A basis of `I_pi(G') = xi_pi * I(G') * xi_pi`.
#[derive(Debug, Clone)]
pub struct IPi {
    pub pi: Gl2Irrep,
    pub basis: Vec<GroupFunction>,
    /// Orbits whose projected indicators form the basis.
    pub orbits: Vec<usize>,
    /// Trace of the projection on `I(G')`, equal to its rank.
    pub trace: u64,
}

impl IPi {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Primes `p = 1 mod N` below `2^31` and a primitive `N`-th root mod `p`.
fn splitting_primes(order: u64) -> impl Iterator<Item = (u64, u64)> {
    let top = (1u64 << 31) / order;
    (1..top).rev().filter_map(move |k| {
        let p = k * order + 1;
        if !is_prime(p as u32) {
            return None;
        }
        let prime_factors: Vec<u64> = (2..=order).filter(|&l| order % l == 0 && is_prime(l as u32)).collect();
        (2..p).map(|x| mod_pow(x, (p - 1) / order, p)).find(|&w| prime_factors.iter().all(|&l| mod_pow(w, order / l, p) != 1)).map(|w| (p, w))
    })
}

/// Projects the orbit indicators, selects an independent subset by rank
/// modulo a prime splitting `zeta_N`, and certifies its size against the
/// exact trace of the projection.
pub fn build_i_pi(pi: &Gl2Irrep, group: &Arc<ProductGroup>) -> Result<IPi, HarmonicError> {
    let phi = group.phi();
    let n = group.n;
    let no = group.orbits.len();
    let dim = pi.dim(group.params()) as i128;
    let x = xi(pi, group)?;
    // eta(h) = chi_pi(h^-1) on the diagonal
    let eta: Vec<&[i128]> = (0..n).map(|h| x.at(group.pair(h, h))).collect();
    let eta_scale = n as i128 * dim;
    let reps: Vec<usize> = group.orbits.iter().map(|o| o[0] as usize).collect();
    // P(e_O) = dim^2 / |G|^2 * eta (.) e_O (.) eta, with (.) the unnormalized sum
    let projected: Vec<Vec<i128>> = (0..no)
        .into_par_iter()
        .map(|o| {
            let mut left = vec![0i128; group.order() * phi];
            for (h, eh) in eta.iter().enumerate() {
                let hd = group.pair(h, h);
                for &z in &group.orbits[o] {
                    let e = group.mul(hd, z as usize);
                    for (d, &c) in left[e * phi..(e + 1) * phi].iter_mut().zip(eh.iter()) {
                        *d += c;
                    }
                }
            }
            let mut vals = vec![0i128; no * phi];
            for (oi, &rep) in reps.iter().enumerate() {
                let acc = &mut vals[oi * phi..(oi + 1) * phi];
                for (h, eh) in eta.iter().enumerate() {
                    let hd_inv = group.pair(group.inv[h] as usize, group.inv[h] as usize);
                    let w = group.mul(rep, hd_inv);
                    group.ring.mul_acc(acc, &left[w * phi..(w + 1) * phi], eh);
                }
            }
            // eta carries the factor |G| dim twice
            vals.iter_mut().for_each(|v| *v /= eta_scale * eta_scale);
            vals
        })
        .collect();
    let den = (n * n) as i128 / (dim * dim).gcd(&((n * n) as i128));
    let num_scale = dim * dim / (dim * dim).gcd(&((n * n) as i128));

    let mut trace_counts = vec![0i128; phi];
    for (o, v) in projected.iter().enumerate() {
        for (t, &c) in trace_counts.iter_mut().zip(&v[o * phi..(o + 1) * phi]) {
            *t += c * num_scale;
        }
    }
    let integral = trace_counts[1..].iter().all(|&c| c == 0) && trace_counts[0] % den == 0 && trace_counts[0] >= 0;
    let trace_text = format!("{:?}/{}", trace_counts, den);
    if !integral {
        return Err(HarmonicError::Uncertified {
            pi: pi.to_string(),
            rank: 0,
            trace: trace_text,
        });
    }
    let trace = (trace_counts[0] / den) as u64;

    let mut last_rank = 0;
    for (p, w) in splitting_primes(group.ring.order).take(3) {
        let pows: Vec<u64> = (0..phi as u64).map(|k| mod_pow(w, k, p)).collect();
        let to_fp = |c: &[i128]| -> u64 {
            c.iter().zip(&pows).fold(0u64, |acc, (&x, &wk)| (acc + (x.rem_euclid(p as i128) as u64) * wk % p) % p)
        };
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        for (o, v) in projected.iter().enumerate() {
            let mut row: Vec<u64> = (0..no).map(|k| to_fp(&v[k * phi..(k + 1) * phi])).collect();
            for (col, prow) in &pivots {
                let c = row[*col];
                if c != 0 {
                    for (r, &pv) in row.iter_mut().zip(prow) {
                        *r = (*r + p - c * pv % p) % p;
                    }
                }
            }
            if let Some(col) = row.iter().position(|&c| c != 0) {
                let inv = mod_pow(row[col], p - 2, p);
                row.iter_mut().for_each(|r| *r = *r * inv % p);
                pivots.push((col, row));
                chosen.push(o);
            }
        }
        last_rank = chosen.len();
        if chosen.len() as u64 == trace {
            let basis = chosen
                .iter()
                .map(|&o| {
                    let v = &projected[o];
                    let mut f = GroupFunction::zero(group);
                    for e in 0..group.order() {
                        let src = group.orbit_of(e);
                        for (d, &c) in f.num[e * phi..(e + 1) * phi].iter_mut().zip(&v[src * phi..(src + 1) * phi]) {
                            *d = c * num_scale;
                        }
                    }
                    f.den = den;
                    f.normalize();
                    f
                })
                .collect();
            return Ok(IPi {
                pi: *pi,
                basis,
                orbits: chosen,
                trace,
            });
        }
    }
    Err(HarmonicError::Uncertified {
        pi: pi.to_string(),
        rank: last_rank,
        trace: trace_text,
    })
}

/// `T[x][O] = sum_{y in O} f(y^-1 x)` for each orbit representative `x`.
fn orbit_transfer(f: &GroupFunction, reps: &[usize]) -> Vec<i128> {
    let g = &f.group;
    let phi = g.phi();
    let no = g.orbits.len();
    let mut out = vec![0i128; reps.len() * no * phi];
    for (xi, &x) in reps.iter().enumerate() {
        for (o, members) in g.orbits.iter().enumerate() {
            let acc = &mut out[(xi * no + o) * phi..(xi * no + o + 1) * phi];
            for &y in members {
                let v = f.at(g.mul(g.inv(y as usize), x));
                acc.iter_mut().zip(v).for_each(|(a, &b)| *a += b);
            }
        }
    }
    out
}

/// Whether all pairs of `basis` commute under convolution. Functions
/// constant on Ad(diag G) orbits are compared at orbit representatives;
/// otherwise products are formed in full.
pub fn commutativity_check(basis: &[GroupFunction]) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    if basis.iter().any(|f| !Arc::ptr_eq(&f.group, &first.group)) {
        return false;
    }
    let g = &first.group;
    if !basis.iter().all(GroupFunction::is_h_class_function) {
        return (0..basis.len()).all(|i| {
            (i + 1..basis.len()).all(|j| convolve(&basis[i], &basis[j]).ok() == convolve(&basis[j], &basis[i]).ok())
        });
    }
    let phi = g.phi();
    let no = g.orbits.len();
    let reps: Vec<usize> = g.orbits.iter().map(|o| o[0] as usize).collect();
    let transfers: Vec<Vec<i128>> = basis.par_iter().map(|f| orbit_transfer(f, &reps)).collect();
    let vals: Vec<Vec<&[i128]>> = basis.iter().map(|f| reps.iter().map(|&r| f.at(r)).collect()).collect();
    // (f * g)(x) = sum_O f(O) T_g[x][O]
    let product_at = |fv: &[&[i128]], tg: &[i128], xi: usize| -> Vec<i128> {
        let mut acc = vec![0i128; phi];
        for (o, fo) in fv.iter().enumerate() {
            g.ring.mul_acc(&mut acc, fo, &tg[(xi * no + o) * phi..(xi * no + o + 1) * phi]);
        }
        acc
    };
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().all(|&(i, j)| {
        (0..reps.len()).all(|xi| product_at(&vals[i], &transfers[j], xi) == product_at(&vals[j], &transfers[i], xi))
    })
}

/// `sum m^2` over the constituents of the module induced from `pi` on the
/// diagonal, the dimension of `I_pi(G')` by Frobenius reciprocity.
pub fn frobenius_dim(pi: &Gl2Irrep, table: &MultTable) -> Result<u64, HarmonicError> {
    Ok(ind_decompose(pi, table)?.iter().map(|(_, m)| m * m).sum())
}

/// Every irrep at `q`: dimension of `I_pi` against `sum m^2`, commutativity
/// against multiplicity freeness, idempotency of `xi_pi`, and invariance of
/// the basis under the projection.
pub fn harmonic_suite(q: u64) -> Result<Report, HarmonicError> {
    let group = ProductGroup::new(q)?;
    let g = *group.params();
    let table = MultTable::new(g);
    let mut rep = Report::new("harmonic", q);
    rep.note(json!({"ok": true, "orbits": group.orbits().len(), "group_order": group.order()}));
    for pi in g.irreps() {
        let space = build_i_pi(&pi, &group)?;
        let want = frobenius_dim(&pi, &table)?;
        let constituents = ind_decompose(&pi, &table)?.len();
        let commutative = commutativity_check(&space.basis);
        let gelfand = is_gelfand_triple_product(&pi, &table)?;
        let x = xi(&pi, &group)?;
        let idempotent = convolve(&x, &x)? == x;
        let fixed = match space.basis.first() {
            Some(f) => convolve(&convolve(&x, f)?, &x)? == *f,
            None => true,
        };
        let ok = space.dim() as u64 == want && commutative == gelfand && idempotent && fixed;
        rep.expect(
            ok,
            json!({"ok": ok, "irrep": pi.to_string(), "dim": space.dim(), "sum_m2": want,
                "constituents": constituents, "commutative": commutative, "gelfand": gelfand,
                "xi_idempotent": idempotent, "basis_fixed": fixed}),
        );
    }
    let dim_u0 = build_i_pi(&Gl2Irrep::U(0), &group)?.dim() as u64;
    let want = q * q - 1;
    rep.expect(dim_u0 == want, json!({"ok": dim_u0 == want, "irrep": "U:0", "dim": dim_u0, "expected": want}));
    if q == 3 {
        let want = (q - 1) * (q * q - q + 1);
        for n in g.x_params() {
            let d = build_i_pi(&Gl2Irrep::X(n), &group)?.dim() as u64;
            rep.expect(d == want, json!({"ok": d == want, "irrep": format!("X:{n}"), "dim": d, "expected": want}));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_counts() {
        assert_eq!(ProductGroup::new(2).unwrap().orbits().len(), 11);
        let g3 = ProductGroup::new(3).unwrap();
        assert_eq!(g3.orbits().len(), 136);
        assert_eq!(g3.orbits().iter().map(Vec::len).sum::<usize>(), 2304);
        assert_eq!(ProductGroup::new(4).unwrap_err(), HarmonicError::BudgetExceeded(4));
    }

    #[test]
    fn unit_and_idempotents() {
        let g = ProductGroup::new(2).unwrap();
        let unit = GroupFunction::delta(&g, g.identity(), g.order() as i64);
        let f = GroupFunction::orbit_indicator(&g, 3);
        assert_eq!(convolve(&unit, &f).unwrap(), f);
        assert_eq!(convolve(&f, &unit).unwrap(), f);
        for pi in g.params().irreps() {
            let x = xi(&pi, &g).unwrap();
            assert_eq!(convolve(&x, &x).unwrap(), x);
        }
        let other = ProductGroup::new(2).unwrap();
        let h = GroupFunction::zero(&other);
        assert_eq!(convolve(&f, &h).unwrap_err(), HarmonicError::MismatchedGroup);
    }

    #[test]
    fn class_functions_convolve_to_class_functions() {
        let g = ProductGroup::new(2).unwrap();
        let t = g.oracle.char_table();
        let classes = g.oracle.element_classes().to_vec();
        let n = g.base_order();
        for (i, j) in [(0, 1), (1, 2), (2, 2)] {
            let f1 = GroupFunction::from_fn(&g, |e| t.value(i, classes[e / n]).clone());
            let f2 = GroupFunction::from_fn(&g, |e| t.value(j, classes[e % n]).clone());
            assert!(f1.is_class_function() && f2.is_class_function());
            assert!(convolve(&f1, &f2).unwrap().is_class_function());
        }
    }

    #[test]
    fn small_q_spaces() {
        let g = ProductGroup::new(2).unwrap();
        let table = MultTable::new(*g.params());
        for pi in g.params().irreps() {
            let s = build_i_pi(&pi, &g).unwrap();
            assert_eq!(s.dim() as u64, frobenius_dim(&pi, &table).unwrap());
            assert_eq!(s.dim() as u64, s.trace);
            assert!(s.basis.iter().all(GroupFunction::is_h_class_function));
            assert_eq!(commutativity_check(&s.basis), is_gelfand_triple_product(&pi, &table).unwrap());
        }
        assert_eq!(build_i_pi(&Gl2Irrep::U(0), &g).unwrap().dim(), 3);
    }

    #[test]
    fn q3_examples() {
        let g = ProductGroup::new(3).unwrap();
        let table = MultTable::new(*g.params());
        let u0 = build_i_pi(&Gl2Irrep::U(0), &g).unwrap();
        assert_eq!(u0.dim(), 8);
        assert!(commutativity_check(&u0.basis));
        let x = build_i_pi(&Gl2Irrep::X(g.params().x_params()[0]), &g).unwrap();
        assert_eq!(x.dim(), 14);
        assert!(commutativity_check(&x.basis));
        let v0 = build_i_pi(&Gl2Irrep::V(0), &g).unwrap();
        assert!(v0.dim() > ind_decompose(&Gl2Irrep::V(0), &table).unwrap().len());
        assert!(!commutativity_check(&v0.basis));
    }
}
