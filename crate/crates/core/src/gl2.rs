//! Labels, conjugacy classes and the exact character table of `GL_2(q)`.
//!
//! Irreducible characters are `U_a`, `V_a` (a in `Z_r`), `W_[a,b]` (an
//! unordered pair of distinct elements of `Z_r`) and `X_[n]` (an orbit
//! `{n, qn}` in `Z_rs` with `n != 0 mod s`). Classes are `c1(k)`, `c2(k)`,
//! `c3{k,l}` and `c4[m]` with the same parameter sets.
//!
//! Every character value is a short sum of `rs`-th roots of unity, tabulated
//! as a [`RootSum`] of order `rs`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, RootSum};
use crate::fields::prime_power;

/// Largest `q` accepted by [`GroupParams::new`].
pub const MAX_Q: u64 = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gl2Error {
    #[error("{0} is not a prime power >= 2")]
    NotPrimePower(u64),
    #[error("q = {0} exceeds the supported maximum {MAX_Q}")]
    QTooLarge(u64),
    #[error("label {label} is not valid for q = {q}")]
    MismatchedQ { label: String, q: u64 },
    #[error("label {0} names a reducible representation or degenerate class")]
    Reducible(String),
    #[error("cannot parse label {0:?}")]
    Parse(String),
}

/// All integers derived from `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    pub q: u64,
    pub p: u64,
    pub ell: u32,
    pub r: u64,
    pub s: u64,
    pub rs: u64,
    pub t: u64,
    pub d: u64,
}

impl GroupParams {
    pub fn new(q: u64) -> Result<Self, Gl2Error> {
        if q > MAX_Q {
            return Err(Gl2Error::QTooLarge(q));
        }
        let (p, ell) = prime_power(q as u32).ok_or(Gl2Error::NotPrimePower(q))?;
        let r = q - 1;
        let s = q + 1;
        Ok(Self {
            q,
            p: p as u64,
            ell: ell as u32,
            r,
            s,
            rs: r * s,
            t: q * q + q + 1,
            d: r.gcd(&3),
        })
    }

    /// `|GL_2(q)| = q s r^2`.
    pub fn group_order(&self) -> u64 {
        self.q * self.s * self.r * self.r
    }

    /// `n mod r` for `n` in `Z_rs`.
    pub fn bar(&self, n: u64) -> u64 {
        n % self.r
    }

    pub fn mod_r(&self, x: i64) -> u64 {
        x.rem_euclid(self.r as i64) as u64
    }

    pub fn mod_rs(&self, x: i64) -> u64 {
        x.rem_euclid(self.rs as i64) as u64
    }

    /// Canonical representative `min(n, qn)` of the orbit of `n` in `Z_rs`.
    pub fn canon_orbit(&self, n: i64) -> u64 {
        let n = self.mod_rs(n);
        n.min((self.q * n) % self.rs)
    }

    /// Whether `n` (mod `rs`) parametrizes an `X` irrep or `c4` class.
    pub fn is_x_param(&self, n: i64) -> bool {
        self.mod_rs(n) % self.s != 0
    }

    pub fn irrep_count(&self) -> usize {
        (self.q * self.q - 1) as usize
    }

    /// Irreps in canonical label order.
    pub fn irreps(&self) -> Vec<Gl2Irrep> {
        let r = self.r;
        let mut out = Vec::with_capacity(self.irrep_count());
        out.extend((0..r).map(Gl2Irrep::U));
        out.extend((0..r).map(Gl2Irrep::V));
        for a in 0..r {
            out.extend((a + 1..r).map(|b| Gl2Irrep::W(a, b)));
        }
        out.extend(self.x_params().into_iter().map(Gl2Irrep::X));
        out
    }

    /// Classes in canonical label order.
    pub fn classes(&self) -> Vec<Gl2Class> {
        let r = self.r;
        let mut out = Vec::with_capacity(self.irrep_count());
        out.extend((0..r).map(Gl2Class::C1));
        out.extend((0..r).map(Gl2Class::C2));
        for k in 0..r {
            out.extend((k + 1..r).map(|l| Gl2Class::C3(k, l)));
        }
        out.extend(self.x_params().into_iter().map(Gl2Class::C4));
        out
    }

    /// Canonical orbit representatives of the `X` parameter set, ascending.
    pub fn x_params(&self) -> Vec<u64> {
        (0..self.rs)
            .filter(|&n| n % self.s != 0 && self.canon_orbit(n as i64) == n)
            .collect()
    }
}

/// Irreducible representation label; canonical when `a < b` for `W` and
/// `n = min(n, qn mod rs)` for `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gl2Irrep {
    U(u64),
    V(u64),
    W(u64, u64),
    X(u64),
}

/// Conjugacy class label with the same canonical conventions as [`Gl2Irrep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gl2Class {
    C1(u64),
    C2(u64),
    C3(u64, u64),
    C4(u64),
}

/// The four irrep families, ordered `U < V < W < X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    U,
    V,
    W,
    X,
}

impl Gl2Irrep {
    pub fn family(&self) -> Family {
        match self {
            Gl2Irrep::U(_) => Family::U,
            Gl2Irrep::V(_) => Family::V,
            Gl2Irrep::W(..) => Family::W,
            Gl2Irrep::X(_) => Family::X,
        }
    }

    pub fn dim(&self, g: &GroupParams) -> u64 {
        match self {
            Gl2Irrep::U(_) => 1,
            Gl2Irrep::V(_) => g.q,
            Gl2Irrep::W(..) => g.s,
            Gl2Irrep::X(_) => g.r,
        }
    }

    pub fn dual(&self, g: &GroupParams) -> Gl2Irrep {
        let neg = |a: u64| g.mod_r(-(a as i64));
        match *self {
            Gl2Irrep::U(a) => Gl2Irrep::U(neg(a)),
            Gl2Irrep::V(a) => Gl2Irrep::V(neg(a)),
            Gl2Irrep::W(a, b) => {
                let (x, y) = (neg(a), neg(b));
                Gl2Irrep::W(x.min(y), x.max(y))
            }
            Gl2Irrep::X(n) => Gl2Irrep::X(g.canon_orbit(-(n as i64))),
        }
    }

    /// Validates residues and returns the canonical label.
    pub fn canonical(&self, g: &GroupParams) -> Result<Gl2Irrep, Gl2Error> {
        let bad = || Gl2Error::MismatchedQ {
            label: self.to_string(),
            q: g.q,
        };
        match *self {
            Gl2Irrep::U(a) | Gl2Irrep::V(a) if a >= g.r => Err(bad()),
            Gl2Irrep::U(_) | Gl2Irrep::V(_) => Ok(*self),
            Gl2Irrep::W(a, b) => {
                if a >= g.r || b >= g.r {
                    Err(bad())
                } else if a == b {
                    Err(Gl2Error::Reducible(self.to_string()))
                } else {
                    Ok(Gl2Irrep::W(a.min(b), a.max(b)))
                }
            }
            Gl2Irrep::X(n) => {
                if n >= g.rs {
                    Err(bad())
                } else if n % g.s == 0 {
                    Err(Gl2Error::Reducible(self.to_string()))
                } else {
                    Ok(Gl2Irrep::X(g.canon_orbit(n as i64)))
                }
            }
        }
    }

    /// Whether the label is already canonical for `g`.
    pub fn is_canonical(&self, g: &GroupParams) -> bool {
        self.canonical(g).is_ok_and(|c| c == *self)
    }

    /// Parses a label and canonicalizes it for `g`.
    pub fn parse(text: &str, g: &GroupParams) -> Result<Gl2Irrep, Gl2Error> {
        text.parse::<Gl2Irrep>()?.canonical(g)
    }

    fn require(&self, g: &GroupParams) -> Result<(), Gl2Error> {
        if self.is_canonical(g) {
            Ok(())
        } else {
            Err(Gl2Error::MismatchedQ {
                label: self.to_string(),
                q: g.q,
            })
        }
    }
}

impl Gl2Class {
    pub fn size(&self, g: &GroupParams) -> u64 {
        match self {
            Gl2Class::C1(_) => 1,
            Gl2Class::C2(_) => g.rs,
            Gl2Class::C3(..) => g.q * g.s,
            Gl2Class::C4(_) => g.q * g.r,
        }
    }

    pub fn canonical(&self, g: &GroupParams) -> Result<Gl2Class, Gl2Error> {
        let bad = || Gl2Error::MismatchedQ {
            label: self.to_string(),
            q: g.q,
        };
        match *self {
            Gl2Class::C1(k) | Gl2Class::C2(k) if k >= g.r => Err(bad()),
            Gl2Class::C1(_) | Gl2Class::C2(_) => Ok(*self),
            Gl2Class::C3(k, l) => {
                if k >= g.r || l >= g.r {
                    Err(bad())
                } else if k == l {
                    Err(Gl2Error::Reducible(self.to_string()))
                } else {
                    Ok(Gl2Class::C3(k.min(l), k.max(l)))
                }
            }
            Gl2Class::C4(m) => {
                if m >= g.rs {
                    Err(bad())
                } else if m % g.s == 0 {
                    Err(Gl2Error::Reducible(self.to_string()))
                } else {
                    Ok(Gl2Class::C4(g.canon_orbit(m as i64)))
                }
            }
        }
    }

    pub fn is_canonical(&self, g: &GroupParams) -> bool {
        self.canonical(g).is_ok_and(|c| c == *self)
    }

    pub fn parse(text: &str, g: &GroupParams) -> Result<Gl2Class, Gl2Error> {
        text.parse::<Gl2Class>()?.canonical(g)
    }

    fn require(&self, g: &GroupParams) -> Result<(), Gl2Error> {
        if self.is_canonical(g) {
            Ok(())
        } else {
            Err(Gl2Error::MismatchedQ {
                label: self.to_string(),
                q: g.q,
            })
        }
    }
}

fn parse_args(text: &str, body: &str, n: usize) -> Result<Vec<u64>, Gl2Error> {
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(Gl2Error::Parse(text.to_string()));
    }
    parts
        .iter()
        .map(|p| p.parse::<u64>().map_err(|_| Gl2Error::Parse(text.to_string())))
        .collect()
}

impl FromStr for Gl2Irrep {
    type Err = Gl2Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (tag, body) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Gl2Error::Parse(text.to_string()))?;
        match tag {
            "U" => Ok(Gl2Irrep::U(parse_args(text, body, 1)?[0])),
            "V" => Ok(Gl2Irrep::V(parse_args(text, body, 1)?[0])),
            "W" => {
                let v = parse_args(text, body, 2)?;
                Ok(Gl2Irrep::W(v[0], v[1]))
            }
            "X" => Ok(Gl2Irrep::X(parse_args(text, body, 1)?[0])),
            _ => Err(Gl2Error::Parse(text.to_string())),
        }
    }
}

impl FromStr for Gl2Class {
    type Err = Gl2Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (tag, body) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Gl2Error::Parse(text.to_string()))?;
        match tag {
            "c1" => Ok(Gl2Class::C1(parse_args(text, body, 1)?[0])),
            "c2" => Ok(Gl2Class::C2(parse_args(text, body, 1)?[0])),
            "c3" => {
                let v = parse_args(text, body, 2)?;
                Ok(Gl2Class::C3(v[0], v[1]))
            }
            "c4" => Ok(Gl2Class::C4(parse_args(text, body, 1)?[0])),
            _ => Err(Gl2Error::Parse(text.to_string())),
        }
    }
}

impl fmt::Display for Gl2Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gl2Irrep::U(a) => write!(f, "U:{a}"),
            Gl2Irrep::V(a) => write!(f, "V:{a}"),
            Gl2Irrep::W(a, b) => write!(f, "W:{a},{b}"),
            Gl2Irrep::X(n) => write!(f, "X:{n}"),
        }
    }
}

impl fmt::Display for Gl2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gl2Class::C1(k) => write!(f, "c1:{k}"),
            Gl2Class::C2(k) => write!(f, "c2:{k}"),
            Gl2Class::C3(k, l) => write!(f, "c3:{k},{l}"),
            Gl2Class::C4(m) => write!(f, "c4:{m}"),
        }
    }
}

/// Character value as a sum of `rs`-th roots of unity. Labels must be
/// canonical for `g`; this is not rechecked.
pub fn char_terms(pi: &Gl2Irrep, c: &Gl2Class, g: &GroupParams) -> RootSum {
    let (q, r, s) = (g.q as i64, g.r as i64, g.s as i64);
    let n_ord = g.rs;
    // alpha_a(rho^j) = zeta_rs^(s a j)
    let al = |a: u64, j: i64| s * a as i64 * j;
    match (*pi, *c) {
        (Gl2Irrep::U(a), Gl2Class::C1(k) | Gl2Class::C2(k)) => RootSum::term(n_ord, 1, al(a, 2 * k as i64)),
        (Gl2Irrep::U(a), Gl2Class::C3(k, l)) => RootSum::term(n_ord, 1, al(a, (k + l) as i64)),
        (Gl2Irrep::U(a), Gl2Class::C4(m)) => RootSum::term(n_ord, 1, al(a, m as i64)),

        (Gl2Irrep::V(a), Gl2Class::C1(k)) => RootSum::term(n_ord, q, al(a, 2 * k as i64)),
        (Gl2Irrep::V(_), Gl2Class::C2(_)) => RootSum::zero(n_ord),
        (Gl2Irrep::V(a), Gl2Class::C3(k, l)) => RootSum::term(n_ord, 1, al(a, (k + l) as i64)),
        (Gl2Irrep::V(a), Gl2Class::C4(m)) => RootSum::term(n_ord, -1, al(a, m as i64)),

        (Gl2Irrep::W(a, b), Gl2Class::C1(k)) => RootSum::term(n_ord, s, al(a + b, k as i64)),
        (Gl2Irrep::W(a, b), Gl2Class::C2(k)) => RootSum::term(n_ord, 1, al(a + b, k as i64)),
        (Gl2Irrep::W(a, b), Gl2Class::C3(k, l)) => {
            let (k, l) = (k as i64, l as i64);
            RootSum::term(n_ord, 1, al(a, k) + al(b, l)).with(1, al(a, l) + al(b, k))
        }
        (Gl2Irrep::W(..), Gl2Class::C4(_)) => RootSum::zero(n_ord),

        (Gl2Irrep::X(n), Gl2Class::C1(k)) => RootSum::term(n_ord, r, (n as i64) * s * k as i64),
        (Gl2Irrep::X(n), Gl2Class::C2(k)) => RootSum::term(n_ord, -1, (n as i64) * s * k as i64),
        (Gl2Irrep::X(_), Gl2Class::C3(..)) => RootSum::zero(n_ord),
        (Gl2Irrep::X(n), Gl2Class::C4(m)) => {
            let (n, m) = (n as i64, m as i64);
            RootSum::term(n_ord, -1, n * m).with(-1, n * q * m)
        }
    }
}

/// Exact character value `chi_pi(c)` in `Z[zeta_rs]`.
pub fn char_value(pi: &Gl2Irrep, c: &Gl2Class, g: &GroupParams) -> Result<Cyclotomic, Gl2Error> {
    pi.require(g)?;
    c.require(g)?;
    Ok(char_terms(pi, c, g).to_cyclotomic())
}

/// The full character table with label indices and lazily reduced values.
#[derive(Debug)]
pub struct CharTable {
    params: GroupParams,
    irreps: Vec<Gl2Irrep>,
    classes: Vec<Gl2Class>,
    irrep_index: HashMap<Gl2Irrep, usize>,
    class_index: HashMap<Gl2Class, usize>,
    terms: Vec<RootSum>,
    values: OnceLock<Vec<Cyclotomic>>,
}

impl CharTable {
    pub fn new(params: GroupParams) -> Self {
        let irreps = params.irreps();
        let classes = params.classes();
        let terms = irreps
            .iter()
            .flat_map(|pi| classes.iter().map(move |c| char_terms(pi, c, &params)))
            .collect();
        Self {
            irrep_index: irreps.iter().enumerate().map(|(i, p)| (*p, i)).collect(),
            class_index: classes.iter().enumerate().map(|(i, c)| (*c, i)).collect(),
            params,
            irreps,
            classes,
            terms,
            values: OnceLock::new(),
        }
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn irreps(&self) -> &[Gl2Irrep] {
        &self.irreps
    }

    pub fn classes(&self) -> &[Gl2Class] {
        &self.classes
    }

    pub fn irrep_index(&self, pi: &Gl2Irrep) -> Option<usize> {
        self.irrep_index.get(pi).copied()
    }

    pub fn class_index(&self, c: &Gl2Class) -> Option<usize> {
        self.class_index.get(c).copied()
    }

    pub fn terms(&self, i: usize, j: usize) -> &RootSum {
        &self.terms[i * self.classes.len() + j]
    }

    pub fn value(&self, i: usize, j: usize) -> &Cyclotomic {
        let vals = self
            .values
            .get_or_init(|| self.terms.iter().map(RootSum::to_cyclotomic).collect());
        &vals[i * self.classes.len() + j]
    }
}

/// `sum_e counts[e] zeta_N^e` as an integer, or `None` if it is not one.
/// `counts` is clobbered.
pub(crate) fn counts_to_integer(order: u64, counts: &mut [i64]) -> Option<i64> {
    use num_traits::ToPrimitive;
    Cyclotomic::integer_from_exponent_counts(order, counts).ok()??.to_i64()
}

/// Adds `w * prod(terms_i)` to `counts`, conjugating the factors flagged in
/// `conj`.
pub(crate) fn accumulate(counts: &mut [i64], w: i64, factors: &[(&RootSum, bool)]) {
    let n = counts.len() as u64;
    fn rec(counts: &mut [i64], n: u64, coef: i64, e: u64, rest: &[(&RootSum, bool)]) {
        match rest.split_first() {
            None => counts[e as usize] += coef,
            Some(((f, conj), tail)) => {
                for &(c, x) in f.terms() {
                    let x = if *conj { (n - x) % n } else { x };
                    rec(counts, n, coef * c, (e + x) % n, tail);
                }
            }
        }
    }
    rec(counts, n, w, 0, factors);
}
