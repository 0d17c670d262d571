//! `GL_2(q)` inside `SL_3(q)` via `g -> diag(g, det g^-1)`: class labels of
//! `SL_3(q)`, the image of each `GL_2(q)` class, three rows of the `SL_3(q)`
//! character table, and restriction multiplicities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, RootSum};
use crate::gl2::{accumulate, char_terms, counts_to_integer, Gl2Class, Gl2Error, Gl2Irrep, GroupParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl3Error {
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error("label {label} is not valid for q = {q}")]
    MismatchedQ { label: String, q: u64 },
    #[error("cannot parse label {0:?}")]
    Parse(String),
    #[error("restriction sum for {0} is not a nonnegative integer multiple of the group order")]
    NonIntegral(String),
    #[error("witness {pi} for {tau} has multiplicity {mult} < 2")]
    WitnessFailed { tau: String, pi: String, mult: u64 },
}

/// Conjugacy class label of `SL_3(q)`.
///
/// `C1..C3` take exponents `1..=d` of `omega = rho^(r/d)`; `C4`, `C5` take
/// `k` in `Z_r` with `k != 0 mod r/d`; `C6` is stored as the two smallest
/// members of `{k, l, -k-l}`; `C7` by its orbit minimum in `Z_rs`; `C8` by
/// its orbit minimum in `Z_t` under multiplication by `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl3Class {
    C1(u64),
    C2(u64),
    C3(u64, u64),
    C4(u64),
    C5(u64),
    C6(u64, u64),
    C7(u64),
    C8(u64),
}

/// The three `SL_3(q)` irreps of dimensions `qs`, `t` and `rt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl3Irrep {
    PiQS,
    PiT(u64),
    PiRT(u64),
}

fn c6_canonical(k: u64, l: u64, g: &GroupParams) -> Option<(u64, u64)> {
    let m = g.mod_r(-((k + l) as i64));
    let mut v = [k % g.r, l % g.r, m];
    v.sort_unstable();
    (v[0] != v[1] && v[1] != v[2]).then_some((v[0], v[1]))
}

fn c8_canonical(k: u64, g: &GroupParams) -> u64 {
    let t = g.t;
    let k1 = k % t;
    let k2 = k1 * g.q % t;
    let k3 = k2 * g.q % t;
    k1.min(k2).min(k3)
}

impl Sl3Class {
    pub fn canonical(&self, g: &GroupParams) -> Result<Sl3Class, Sl3Error> {
        let bad = || Sl3Error::MismatchedQ {
            label: self.to_string(),
            q: g.q,
        };
        let rd = g.r / g.d;
        let in_d = |k: u64| (1..=g.d).contains(&k);
        match *self {
            Sl3Class::C1(k) | Sl3Class::C2(k) if in_d(k) => Ok(*self),
            Sl3Class::C3(k, l) if in_d(k) && in_d(l) => Ok(*self),
            Sl3Class::C4(k) | Sl3Class::C5(k) if k < g.r && k % rd != 0 => Ok(*self),
            Sl3Class::C6(k, l) if k < g.r && l < g.r => {
                let (a, b) = c6_canonical(k, l, g).ok_or_else(bad)?;
                Ok(Sl3Class::C6(a, b))
            }
            Sl3Class::C7(k) if k < g.rs && k % g.s != 0 => Ok(Sl3Class::C7(g.canon_orbit(k as i64))),
            Sl3Class::C8(k) if k < g.t && k % (g.t / g.d) != 0 => Ok(Sl3Class::C8(c8_canonical(k, g))),
            _ => Err(bad()),
        }
    }

    pub fn is_canonical(&self, g: &GroupParams) -> bool {
        self.canonical(g).is_ok_and(|c| c == *self)
    }

    pub fn parse(text: &str, g: &GroupParams) -> Result<Sl3Class, Sl3Error> {
        text.parse::<Sl3Class>()?.canonical(g)
    }
}

impl Sl3Irrep {
    pub fn canonical(&self, g: &GroupParams) -> Result<Sl3Irrep, Sl3Error> {
        match *self {
            Sl3Irrep::PiQS => Ok(*self),
            Sl3Irrep::PiT(u) if (1..g.r).contains(&u) => Ok(*self),
            Sl3Irrep::PiRT(u) if u < g.rs && u % g.s != 0 => Ok(Sl3Irrep::PiRT(g.canon_orbit(u as i64))),
            _ => Err(Sl3Error::MismatchedQ {
                label: self.to_string(),
                q: g.q,
            }),
        }
    }

    pub fn is_canonical(&self, g: &GroupParams) -> bool {
        self.canonical(g).is_ok_and(|c| c == *self)
    }

    pub fn parse(text: &str, g: &GroupParams) -> Result<Sl3Irrep, Sl3Error> {
        text.parse::<Sl3Irrep>()?.canonical(g)
    }

    pub fn dim(&self, g: &GroupParams) -> u64 {
        match self {
            Sl3Irrep::PiQS => g.q * g.s,
            Sl3Irrep::PiT(_) => g.t,
            Sl3Irrep::PiRT(_) => g.r * g.t,
        }
    }

    /// All labels in canonical order.
    pub fn enumerate(g: &GroupParams) -> Vec<Sl3Irrep> {
        let mut out = vec![Sl3Irrep::PiQS];
        out.extend((1..g.r).map(Sl3Irrep::PiT));
        out.extend(g.x_params().into_iter().map(Sl3Irrep::PiRT));
        out
    }
}

fn split_label<'a>(text: &'a str) -> (&'a str, Option<&'a str>) {
    match text.trim().split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (text.trim(), None),
    }
}

fn nums(text: &str, body: Option<&str>, n: usize) -> Result<Vec<u64>, Sl3Error> {
    let err = || Sl3Error::Parse(text.to_string());
    let v: Vec<u64> = body
        .ok_or_else(err)?
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| err()))
        .collect::<Result<_, _>>()?;
    if v.len() == n {
        Ok(v)
    } else {
        Err(err())
    }
}

impl FromStr for Sl3Class {
    type Err = Sl3Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (tag, body) = split_label(text);
        let one = || nums(text, body, 1).map(|v| v[0]);
        let two = || nums(text, body, 2).map(|v| (v[0], v[1]));
        match tag {
            "C1" => Ok(Sl3Class::C1(one()?)),
            "C2" => Ok(Sl3Class::C2(one()?)),
            "C3" => two().map(|(a, b)| Sl3Class::C3(a, b)),
            "C4" => Ok(Sl3Class::C4(one()?)),
            "C5" => Ok(Sl3Class::C5(one()?)),
            "C6" => two().map(|(a, b)| Sl3Class::C6(a, b)),
            "C7" => Ok(Sl3Class::C7(one()?)),
            "C8" => Ok(Sl3Class::C8(one()?)),
            _ => Err(Sl3Error::Parse(text.to_string())),
        }
    }
}

impl FromStr for Sl3Irrep {
    type Err = Sl3Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match split_label(text) {
            ("piQS", None) => Ok(Sl3Irrep::PiQS),
            ("piT", body) => Ok(Sl3Irrep::PiT(nums(text, body, 1)?[0])),
            ("piRT", body) => Ok(Sl3Irrep::PiRT(nums(text, body, 1)?[0])),
            _ => Err(Sl3Error::Parse(text.to_string())),
        }
    }
}

impl fmt::Display for Sl3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl3Class::C1(k) => write!(f, "C1:{k}"),
            Sl3Class::C2(k) => write!(f, "C2:{k}"),
            Sl3Class::C3(k, l) => write!(f, "C3:{k},{l}"),
            Sl3Class::C4(k) => write!(f, "C4:{k}"),
            Sl3Class::C5(k) => write!(f, "C5:{k}"),
            Sl3Class::C6(k, l) => write!(f, "C6:{k},{l}"),
            Sl3Class::C7(k) => write!(f, "C7:{k}"),
            Sl3Class::C8(k) => write!(f, "C8:{k}"),
        }
    }
}

impl fmt::Display for Sl3Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sl3Irrep::PiQS => write!(f, "piQS"),
            Sl3Irrep::PiT(u) => write!(f, "piT:{u}"),
            Sl3Irrep::PiRT(u) => write!(f, "piRT:{u}"),
        }
    }
}

/// The `SL_3(q)` class containing `diag(g, det g^-1)` for `g` in class `c`.
pub fn embed_class(c: &Gl2Class, g: &GroupParams) -> Sl3Class {
    let rd = g.r / g.d;
    let omega_exp = |k: u64| {
        let j = (g.d * k / g.r) % g.d;
        if j == 0 {
            g.d
        } else {
            j
        }
    };
    match *c {
        Gl2Class::C1(k) if k % rd == 0 => Sl3Class::C1(omega_exp(k)),
        Gl2Class::C1(k) => Sl3Class::C4(k),
        Gl2Class::C2(k) if k % rd == 0 => Sl3Class::C2(omega_exp(k)),
        Gl2Class::C2(k) => Sl3Class::C5(k),
        Gl2Class::C3(k, l) => {
            if g.mod_r((2 * k + l) as i64) == 0 {
                Sl3Class::C4(k)
            } else if g.mod_r((2 * l + k) as i64) == 0 {
                Sl3Class::C4(l)
            } else {
                let (a, b) = c6_canonical(k, l, g).expect("distinct eigenvalues");
                Sl3Class::C6(a, b)
            }
        }
        Gl2Class::C4(m) => Sl3Class::C7(g.canon_orbit(-(m as i64))),
    }
}

/// Character value as a sum of `rs`-th roots of unity. Labels must be
/// canonical; not rechecked.
pub fn sl3_char_terms(pi: &Sl3Irrep, c: &Sl3Class, g: &GroupParams) -> RootSum {
    let n = g.rs;
    let (q, r, s, t) = (g.q as i64, g.r as i64, g.s as i64, g.t as i64);
    let rd = (g.r / g.d) as i64;
    // alpha_u(rho^k) = zeta_rs^(s u k), alpha_u(omega^k) = alpha_u(rho^(k r/d))
    let al = |u: u64, k: i64| s * u as i64 * k;
    let om = |u: u64, k: u64| al(u, k as i64 * rd);
    match (*pi, *c) {
        (Sl3Irrep::PiQS, c) => {
            let v = match c {
                Sl3Class::C1(_) => q * s,
                Sl3Class::C2(_) => q,
                Sl3Class::C3(..) | Sl3Class::C7(_) => 0,
                Sl3Class::C4(_) => s,
                Sl3Class::C5(_) => 1,
                Sl3Class::C6(..) => 2,
                Sl3Class::C8(_) => -1,
            };
            RootSum::term(n, v, 0)
        }
        (Sl3Irrep::PiT(u), c) => match c {
            Sl3Class::C1(k) => RootSum::term(n, t, om(u, k)),
            Sl3Class::C2(k) => RootSum::term(n, s, om(u, k)),
            Sl3Class::C3(k, _) => RootSum::term(n, 1, om(u, k)),
            Sl3Class::C4(k) => RootSum::term(n, s, al(u, k as i64)).with(1, al(u, -2 * k as i64)),
            Sl3Class::C5(k) => RootSum::term(n, 1, al(u, k as i64)).with(1, al(u, -2 * k as i64)),
            Sl3Class::C6(k, l) => {
                let (k, l) = (k as i64, l as i64);
                RootSum::term(n, 1, al(u, k)).with(1, al(u, l)).with(1, al(u, -k - l))
            }
            Sl3Class::C7(k) => RootSum::term(n, 1, al(u, k as i64)),
            Sl3Class::C8(_) => RootSum::zero(n),
        },
        (Sl3Irrep::PiRT(u), c) => match c {
            Sl3Class::C1(k) => RootSum::term(n, r * t, om(u, k)),
            Sl3Class::C2(k) | Sl3Class::C3(k, _) => RootSum::term(n, -1, om(u, k)),
            Sl3Class::C4(k) => RootSum::term(n, r, al(u, k as i64)),
            Sl3Class::C5(k) => RootSum::term(n, -1, al(u, k as i64)),
            Sl3Class::C6(..) | Sl3Class::C8(_) => RootSum::zero(n),
            Sl3Class::C7(k) => {
                let (u, k) = (u as i64, k as i64);
                RootSum::term(n, -1, -u * k).with(-1, -u * q * k)
            }
        },
    }
}

/// Exact value of one of the three tabulated `SL_3(q)` characters.
pub fn sl3_char_value(pi: &Sl3Irrep, c: &Sl3Class, g: &GroupParams) -> Result<Cyclotomic, Sl3Error> {
    if !pi.is_canonical(g) {
        return Err(Sl3Error::MismatchedQ {
            label: pi.to_string(),
            q: g.q,
        });
    }
    if !c.is_canonical(g) {
        return Err(Sl3Error::MismatchedQ {
            label: c.to_string(),
            q: g.q,
        });
    }
    Ok(sl3_char_terms(pi, c, g).to_cyclotomic())
}

/// `[pi restricted to GL_2(q) : tau]`.
pub fn restriction_mult(pi: &Sl3Irrep, tau: &Gl2Irrep, g: &GroupParams) -> Result<u64, Sl3Error> {
    if !pi.is_canonical(g) {
        return Err(Sl3Error::MismatchedQ {
            label: pi.to_string(),
            q: g.q,
        });
    }
    if tau.canonical(g)? != *tau {
        return Err(Gl2Error::MismatchedQ {
            label: tau.to_string(),
            q: g.q,
        }
        .into());
    }
    let mut counts = vec![0i64; g.rs as usize];
    for c in g.classes() {
        let a = sl3_char_terms(pi, &embed_class(&c, g), g);
        let b = char_terms(tau, &c, g);
        accumulate(&mut counts, c.size(g) as i64, &[(&a, false), (&b, true)]);
    }
    let order = g.group_order() as i64;
    match counts_to_integer(g.rs, &mut counts) {
        Some(v) if v >= 0 && v % order == 0 => Ok((v / order) as u64),
        _ => Err(Sl3Error::NonIntegral(format!("({pi}; {tau})"))),
    }
}

/// Full decomposition of `pi` restricted to `GL_2(q)`.
pub fn restriction_decomposition(pi: &Sl3Irrep, g: &GroupParams) -> Result<Vec<(Gl2Irrep, u64)>, Sl3Error> {
    let mut out = Vec::new();
    for tau in g.irreps() {
        let m = restriction_mult(pi, &tau, g)?;
        if m > 0 {
            out.push((tau, m));
        }
    }
    Ok(out)
}

/// An `SL_3(q)` irrep containing `tau` with multiplicity at least two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tau: String,
    pub pi: String,
    pub mult: u64,
    /// Closed-form multiplicity for this family.
    pub expected: u64,
    /// Set for `X` labels when `d = 3`: the multiplicity is `d + 1 = 4`, not two.
    pub exceeds_two_for_x: bool,
}

/// The designated witness irrep for `tau`.
pub fn witness_irrep(tau: &Gl2Irrep, g: &GroupParams) -> Sl3Irrep {
    match *tau {
        Gl2Irrep::U(0) => Sl3Irrep::PiQS,
        Gl2Irrep::U(a) => Sl3Irrep::PiT(g.mod_r(-(a as i64))),
        Gl2Irrep::V(0) => Sl3Irrep::PiRT(g.canon_orbit(-(g.r as i64))),
        Gl2Irrep::V(a) => Sl3Irrep::PiRT(g.canon_orbit(-(a as i64))),
        Gl2Irrep::W(a, b) => {
            let base = b as i64 - 2 * a as i64;
            let c = (0..g.s as i64)
                .find(|c| (base + c * g.r as i64).rem_euclid(g.s as i64) != 0)
                .expect("s > 1");
            Sl3Irrep::PiRT(g.canon_orbit(base + c * g.r as i64))
        }
        Gl2Irrep::X(n) => Sl3Irrep::PiRT(n),
    }
}

/// Closed-form multiplicity of `tau` in its witness.
pub fn witness_expected(tau: &Gl2Irrep, g: &GroupParams) -> u64 {
    match *tau {
        Gl2Irrep::U(_) => 2,
        Gl2Irrep::V(_) | Gl2Irrep::X(_) => g.d + 1,
        Gl2Irrep::W(a, b) => 1 + g.d + ((b - a) % (g.r / g.d) == 0) as u64,
    }
}

/// Certifies that `tau` does not induce multiplicity free to `SL_3(q)`.
pub fn witness_no_gelfand(tau: &Gl2Irrep, g: &GroupParams) -> Result<Witness, Sl3Error> {
    let pi = witness_irrep(tau, g);
    let mult = restriction_mult(&pi, tau, g)?;
    if mult < 2 {
        return Err(Sl3Error::WitnessFailed {
            tau: tau.to_string(),
            pi: pi.to_string(),
            mult,
        });
    }
    Ok(Witness {
        tau: tau.to_string(),
        pi: pi.to_string(),
        mult,
        expected: witness_expected(tau, g),
        exceeds_two_for_x: matches!(tau, Gl2Irrep::X(_)) && mult > 2,
    })
}
