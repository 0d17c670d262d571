//! Tensor-product multiplicities `m(pi1, pi2; pi3) = [pi1 (x) pi2 : pi3]` for
//! `GL_2(q)`, equivalently the multiplicity of `pi1 (x) pi2` in the module
//! induced from the diagonal subgroup of `GL_2(q) x GL_2(q)`.
//!
//! Two independent routes are provided: [`MultTable`] evaluates the weighted
//! class sum exactly in `Z[zeta_rs]`, and [`mult_closed`] evaluates the
//! indicator-function closed forms. The class sum is authoritative.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::cyclotomic::RootSum;
use crate::gl2::{accumulate, char_terms, counts_to_integer, CharTable, Family, Gl2Error, Gl2Irrep, GroupParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error("class sum for {0} is not a nonnegative integer multiple of the group order")]
    NonIntegral(String),
    #[error("closed form for {triple} (cell {cell}) is negative: {value}")]
    NegativeClosedForm { triple: String, cell: String, value: i64 },
    #[error("{0} does not induce multiplicity free")]
    NotMultiplicityFree(String),
}

fn triple_name(a: &Gl2Irrep, b: &Gl2Irrep, c: &Gl2Irrep) -> String {
    format!("({a}, {b}; {c})")
}

/// Turns a weighted class sum (exponent counts of order `rs`) into a
/// multiplicity.
fn finish_sum(g: &GroupParams, counts: &mut [i64], name: impl FnOnce() -> String) -> Result<u64, TensorError> {
    let order = g.group_order() as i64;
    match counts_to_integer(g.rs, counts) {
        Some(v) if v >= 0 && v % order == 0 => Ok((v / order) as u64),
        _ => Err(TensorError::NonIntegral(name())),
    }
}

/// `m(pi1, pi2; pi3)` by the class sum, without precomputed tables.
pub fn mult_sum(p1: &Gl2Irrep, p2: &Gl2Irrep, p3: &Gl2Irrep, g: &GroupParams) -> Result<u64, TensorError> {
    for p in [p1, p2, p3] {
        if !p.is_canonical(g) {
            p.canonical(g)?;
            return Err(Gl2Error::MismatchedQ {
                label: p.to_string(),
                q: g.q,
            }
            .into());
        }
    }
    let mut counts = vec![0i64; g.rs as usize];
    for c in g.classes() {
        let (t1, t2, t3) = (char_terms(p1, &c, g), char_terms(p2, &c, g), char_terms(p3, &c, g));
        accumulate(&mut counts, c.size(g) as i64, &[(&t1, false), (&t2, false), (&t3, true)]);
    }
    finish_sum(g, &mut counts, || triple_name(p1, p2, p3))
}

/// Character table plus a concurrent memo of class-sum multiplicities.
#[derive(Debug)]
pub struct MultTable {
    table: CharTable,
    memo: RwLock<HashMap<(u32, u32, u32), u64>>,
}

impl MultTable {
    pub fn new(g: GroupParams) -> Self {
        Self {
            table: CharTable::new(g),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &GroupParams {
        self.table.params()
    }

    pub fn char_table(&self) -> &CharTable {
        &self.table
    }

    pub fn irreps(&self) -> &[Gl2Irrep] {
        self.table.irreps()
    }

    pub fn index(&self, pi: &Gl2Irrep) -> Result<usize, TensorError> {
        self.table.irrep_index(pi).ok_or_else(|| {
            pi.canonical(self.params())
                .err()
                .unwrap_or(Gl2Error::MismatchedQ {
                    label: pi.to_string(),
                    q: self.params().q,
                })
                .into()
        })
    }

    /// Number of memoized triples.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo poisoned").len()
    }

    /// Memoized `m(pi1, pi2; pi3)` by the class sum.
    pub fn mult(&self, p1: &Gl2Irrep, p2: &Gl2Irrep, p3: &Gl2Irrep) -> Result<u64, TensorError> {
        let key = (self.index(p1)? as u32, self.index(p2)? as u32, self.index(p3)? as u32);
        if let Some(&m) = self.memo.read().expect("memo poisoned").get(&key) {
            return Ok(m);
        }
        let m = self.mult_idx(key.0 as usize, key.1 as usize, key.2 as usize)?;
        self.memo.write().expect("memo poisoned").insert(key, m);
        Ok(m)
    }

    /// Class-sum multiplicity by irrep indices, bypassing the memo.
    pub fn mult_idx(&self, i: usize, j: usize, k: usize) -> Result<u64, TensorError> {
        let g = *self.params();
        let t = &self.table;
        let mut counts = vec![0i64; g.rs as usize];
        for (c, cl) in t.classes().iter().enumerate() {
            accumulate(
                &mut counts,
                cl.size(&g) as i64,
                &[(t.terms(i, c), false), (t.terms(j, c), false), (t.terms(k, c), true)],
            );
        }
        finish_sum(&g, &mut counts, || {
            let irr = t.irreps();
            triple_name(&irr[i], &irr[j], &irr[k])
        })
    }

    /// `m(pi_i, pi_j; pi_k)` for every target `k`, in irrep order.
    pub fn pair_row(&self, i: usize, j: usize) -> Result<Vec<u64>, TensorError> {
        let g = *self.params();
        let t = &self.table;
        let n = g.rs;
        let products: Vec<(i64, RootSum)> = t
            .classes()
            .iter()
            .enumerate()
            .map(|(c, cl)| {
                let mut prod = RootSum::zero(n);
                for &(c1, e1) in t.terms(i, c).terms() {
                    for &(c2, e2) in t.terms(j, c).terms() {
                        prod.push(c1 * c2, (e1 + e2) as i64);
                    }
                }
                (cl.size(&g) as i64, prod)
            })
            .collect();
        let mut counts = vec![0i64; n as usize];
        (0..t.irreps().len())
            .map(|k| {
                counts.iter_mut().for_each(|c| *c = 0);
                for (c, (w, prod)) in products.iter().enumerate() {
                    accumulate(&mut counts, *w, &[(prod, false), (t.terms(k, c), true)]);
                }
                finish_sum(&g, &mut counts, || {
                    let irr = t.irreps();
                    triple_name(&irr[i], &irr[j], &irr[k])
                })
            })
            .collect()
    }
}

/// Name of the closed-form table cell used for a triple, e.g. `VX->X`.
pub fn closed_cell(p1: &Gl2Irrep, p2: &Gl2Irrep, p3: &Gl2Irrep) -> String {
    let (a, b) = if p1.family() <= p2.family() { (p1, p2) } else { (p2, p1) };
    format!("{:?}{:?}->{:?}", a.family(), b.family(), p3.family())
}

/// Signed value of the closed-form indicator expression.
pub fn mult_closed_raw(p1: &Gl2Irrep, p2: &Gl2Irrep, p3: &Gl2Irrep, g: &GroupParams) -> i64 {
    use Gl2Irrep::*;
    let (p1, p2) = if p1.family() <= p2.family() { (p1, p2) } else { (p2, p1) };
    let (q, s) = (g.q as i64, g.s as i64);
    let zr = |x: i64| g.mod_r(x) == 0;
    let zrs = |x: i64| g.mod_rs(x) == 0;
    let ind = |b: bool| b as i64;
    let same_set = |x: (i64, i64), y: (i64, i64)| {
        let (x0, x1) = (g.mod_r(x.0), g.mod_r(x.1));
        let (y0, y1) = (g.mod_r(y.0), g.mod_r(y.1));
        (x0 == y0 && x1 == y1) || (x0 == y1 && x1 == y0)
    };
    let i = |x: u64| x as i64;
    match (*p1, *p2, *p3) {
        (U(a), U(b), U(c)) => ind(zr(i(a) + i(b) - i(c))),
        (U(a), V(b), V(c)) => ind(zr(i(a) + i(b) - i(c))),
        (U(a), W(b, c), W(c2, d2)) => ind(same_set((i(a) + i(b), i(a) + i(c)), (i(c2), i(d2)))),
        (U(a), X(n), X(n2)) => ind(zrs(s * i(a) + i(n) - i(n2)) || zrs(s * i(a) + i(n) - q * i(n2))),
        (U(_), _, _) => 0,

        (V(a), V(b), t) => {
            let ab = i(a) + i(b);
            match t {
                U(c) => ind(zr(ab - i(c))),
                V(c) => ind(zr(2 * ab - 2 * i(c))),
                W(c, d) => ind(zr(2 * ab - i(c) - i(d))),
                X(n) => ind(zr(2 * ab - i(n))),
            }
        }
        (V(a), W(b, c), t) => {
            let (a, b, c) = (i(a), i(b), i(c));
            match t {
                U(_) => 0,
                V(x) => ind(zr(2 * a + b + c - 2 * i(x))),
                W(c2, d2) => ind(zr(2 * a + b + c - i(c2) - i(d2))) + ind(same_set((a + b, a + c), (i(c2), i(d2)))),
                X(n) => ind(zr(2 * a + b + c - i(n))),
            }
        }
        (V(a), X(n), t) => {
            let (a, n) = (i(a), i(n));
            match t {
                U(_) => 0,
                V(b) => ind(zr(2 * a + n - 2 * i(b))),
                W(c, d) => ind(zr(2 * a + n - i(c) - i(d))),
                X(n2) => {
                    let n2 = i(n2);
                    ind(zr(2 * a + n - n2)) - ind(zrs(s * a + n - n2)) - ind(zrs(s * a + n - q * n2))
                }
            }
        }
        (W(a, b), W(c, d), t) => {
            let (a, b, c, d) = (i(a), i(b), i(c), i(d));
            let pair = |x: i64, y: i64| ind(zr(a + c - x) && zr(b + d - y)) + ind(zr(a + d - x) && zr(b + c - y));
            match t {
                U(x) => pair(i(x), i(x)),
                V(x) => ind(zr(a + b + c + d - 2 * i(x))) + pair(i(x), i(x)),
                W(c2, d2) => {
                    let (c2, d2) = (i(c2), i(d2));
                    ind(zr(a + b + c + d - c2 - d2)) + pair(c2, d2) + pair(d2, c2)
                }
                X(n) => ind(zr(a + b + c + d - i(n))),
            }
        }
        (W(a, b), X(n), t) => {
            let abn = i(a) + i(b) + i(n);
            match t {
                U(_) => 0,
                V(x) => ind(zr(abn - 2 * i(x))),
                W(c, d) => ind(zr(abn - i(c) - i(d))),
                X(n2) => ind(zr(abn - i(n2))),
            }
        }
        (X(n), X(m), t) => {
            let (n, m) = (i(n), i(m));
            match t {
                U(a) => ind(zrs(n + m - s * i(a)) || zrs(n + q * m - s * i(a))),
                V(b) => {
                    let b = i(b);
                    ind(zr(n + m - 2 * b)) - ind(zrs(n + m - s * b)) - ind(zrs(q * n + m - s * b))
                }
                W(c, d) => ind(zr(n + m - i(c) - i(d))),
                X(n2) => {
                    let n2 = i(n2);
                    ind(zr(n + m - n2))
                        - ind(zrs(n + m - n2))
                        - ind(zrs(q * n + m - n2))
                        - ind(zrs(n + q * m - n2))
                        - ind(zrs(n + m - q * n2))
                }
            }
        }
        (V(_) | W(..) | X(_), _, _) => unreachable!("pair ordered by family"),
    }
}

/// `m(pi1, pi2; pi3)` by the closed-form indicator table. A negative
/// indicator combination is reported, never clamped.
pub fn mult_closed(p1: &Gl2Irrep, p2: &Gl2Irrep, p3: &Gl2Irrep, g: &GroupParams) -> Result<u64, TensorError> {
    let v = mult_closed_raw(p1, p2, p3, g);
    if v < 0 {
        return Err(TensorError::NegativeClosedForm {
            triple: triple_name(p1, p2, p3),
            cell: closed_cell(p1, p2, p3),
            value: v,
        });
    }
    Ok(v as u64)
}

/// A triple on which the closed form and the class sum disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub left: String,
    pub right: String,
    pub target: String,
    pub cell: String,
    pub class_sum: Option<u64>,
    pub closed: i64,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cell {}: m({}, {}; {}) class sum {:?} vs closed form {}",
            self.cell, self.left, self.right, self.target, self.class_sum, self.closed
        )
    }
}

fn check_triple(table: &MultTable, i: usize, j: usize, k: usize, sum: Option<u64>) -> Option<Discrepancy> {
    let g = table.params();
    let irr = table.irreps();
    let (a, b, c) = (&irr[i], &irr[j], &irr[k]);
    let closed = mult_closed_raw(a, b, c, g);
    (sum.map(|m| m as i64) != Some(closed)).then(|| Discrepancy {
        left: a.to_string(),
        right: b.to_string(),
        target: c.to_string(),
        cell: closed_cell(a, b, c),
        class_sum: sum,
        closed,
    })
}

/// Compares closed form against class sum on every ordered triple.
pub fn compare_all(table: &MultTable) -> Vec<Discrepancy> {
    let n = table.irreps().len();
    let mut out: Vec<Discrepancy> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|ij| {
            let (i, j) = (ij / n, ij % n);
            let row = table.pair_row(i, j);
            (0..n)
                .filter_map(|k| check_triple(table, i, j, k, row.as_ref().ok().map(|r| r[k])))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| (&a.left, &a.right, &a.target).cmp(&(&b.left, &b.right, &b.target)));
    out
}

/// Compares closed form against class sum on `samples` seeded random
/// ordered triples.
pub fn compare_sampled(table: &MultTable, samples: usize, seed: u64) -> Vec<Discrepancy> {
    let n = table.irreps().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(usize, usize, usize)> = (0..samples)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    triples
        .into_par_iter()
        .filter_map(|(i, j, k)| check_triple(table, i, j, k, table.mult_idx(i, j, k).ok()))
        .collect()
}

/// Decomposition of `pi1 (x) pi2` restricted to the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub q: u64,
    pub left: Gl2Irrep,
    pub right: Gl2Irrep,
    pub constituents: Vec<(Gl2Irrep, u64)>,
    pub dim_check: bool,
}

impl Decomposition {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "q": self.q,
            "left": self.left.to_string(),
            "right": self.right.to_string(),
            "constituents": self
                .constituents
                .iter()
                .map(|(p, m)| json!({"irrep": p.to_string(), "mult": m}))
                .collect::<Vec<_>>(),
            "dim_check": self.dim_check,
        })
    }
}

/// All constituents of `pi1 (x) pi2` by the closed form, in label order.
pub fn decompose(p1: &Gl2Irrep, p2: &Gl2Irrep, g: &GroupParams) -> Result<Decomposition, TensorError> {
    for p in [p1, p2] {
        if p.canonical(g)? != *p {
            return Err(Gl2Error::MismatchedQ {
                label: p.to_string(),
                q: g.q,
            }
            .into());
        }
    }
    let mut constituents = Vec::new();
    for p3 in g.irreps() {
        let m = mult_closed(p1, p2, &p3, g)?;
        if m > 0 {
            constituents.push((p3, m));
        }
    }
    let total: u64 = constituents.iter().map(|(p, m)| m * p.dim(g)).sum();
    Ok(Decomposition {
        q: g.q,
        left: *p1,
        right: *p2,
        dim_check: total == p1.dim(g) * p2.dim(g),
        constituents,
    })
}

/// Constituents `pi1 (x) pi2` of the module induced from `pi` on the
/// diagonal, with multiplicities, by the class sum.
pub fn ind_decompose(pi: &Gl2Irrep, table: &MultTable) -> Result<Vec<((Gl2Irrep, Gl2Irrep), u64)>, TensorError> {
    let k = table.index(pi)?;
    let irr = table.irreps();
    let n = irr.len();
    let rows: Vec<Vec<((Gl2Irrep, Gl2Irrep), u64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter_map(|j| match table.mult_idx(i, j, k) {
                    Ok(0) => None,
                    Ok(m) => Some(Ok(((irr[i], irr[j]), m))),
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Unordered family pair of a constituent `pi1 (x) pi2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairKind {
    UU,
    UV,
    UW,
    UX,
    VV,
    VW,
    VX,
    WW,
    WX,
    XX,
}

impl PairKind {
    pub fn of(a: Family, b: Family) -> PairKind {
        use Family::*;
        match (a.min(b), a.max(b)) {
            (U, U) => PairKind::UU,
            (U, V) => PairKind::UV,
            (U, W) => PairKind::UW,
            (U, X) => PairKind::UX,
            (V, V) => PairKind::VV,
            (V, W) => PairKind::VW,
            (V, X) => PairKind::VX,
            (W, W) => PairKind::WW,
            (W, X) => PairKind::WX,
            (X, X) => PairKind::XX,
            _ => unreachable!("min <= max"),
        }
    }

    /// `dim pi1 * dim pi2`.
    pub fn dim(&self, g: &GroupParams) -> u64 {
        let (q, r, s) = (g.q, g.r, g.s);
        match self {
            PairKind::UU => 1,
            PairKind::UV => q,
            PairKind::UW => s,
            PairKind::UX => r,
            PairKind::VV => q * q,
            PairKind::VW => q * s,
            PairKind::VX => q * r,
            PairKind::WW => s * s,
            PairKind::WX => r * s,
            PairKind::XX => r * r,
        }
    }
}

const INDX_KINDS: [PairKind; 7] = [
    PairKind::UX,
    PairKind::VV,
    PairKind::VW,
    PairKind::VX,
    PairKind::WW,
    PairKind::WX,
    PairKind::XX,
];

/// Constituent counts of the module induced from `X_[n]`, by pair kind.
pub fn ind_x_counts(n: u64, table: &MultTable) -> Result<BTreeMap<PairKind, u64>, TensorError> {
    let pi = Gl2Irrep::X(n);
    let mut out: BTreeMap<PairKind, u64> = INDX_KINDS.iter().map(|k| (*k, 0)).collect();
    for ((a, b), m) in ind_decompose(&pi, table)? {
        if m > 1 {
            return Err(TensorError::NotMultiplicityFree(pi.to_string()));
        }
        *out.entry(PairKind::of(a.family(), b.family())).or_insert(0) += 1;
    }
    Ok(out)
}

/// [`ind_x_counts`] regrouped by constituent dimension.
pub fn ind_x_counts_by_dim(n: u64, table: &MultTable) -> Result<BTreeMap<u64, u64>, TensorError> {
    let g = *table.params();
    let mut out = BTreeMap::new();
    for (k, c) in ind_x_counts(n, table)? {
        *out.entry(k.dim(&g)).or_insert(0) += c;
    }
    Ok(out)
}

/// Closed-form constituent counts of the module induced from `X_[n]`;
/// `n_odd` matters only for odd `q`.
pub fn ind_x_expected(g: &GroupParams, n_odd: bool) -> BTreeMap<PairKind, u64> {
    let (q, r) = (g.q, g.r);
    let vals: [u64; 7] = if q % 2 == 0 {
        let w = r * (q - 2) * (q - 2) / 4;
        [2 * r, r, r * (q - 2), r * (q - 2), w, q * r * (q - 2) / 2, w]
    } else if !n_odd {
        let w = r * (q * q + 5 - 4 * q) / 4;
        [2 * r, 2 * r, r * (q - 3), r * (q - 3), w, r * r * r / 2, w]
    } else {
        let w = r * (q * q + 3 - 4 * q) / 4;
        [2 * r, 0, r * r, r * r, w, r * (q * q - 2 * q - 1) / 2, w]
    };
    INDX_KINDS.iter().copied().zip(vals).collect()
}

/// [`ind_x_expected`] regrouped by dimension.
pub fn ind_x_expected_by_dim(g: &GroupParams, n_odd: bool) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for (k, c) in ind_x_expected(g, n_odd) {
        *out.entry(k.dim(g)).or_insert(0) += c;
    }
    out
}

/// Largest multiplicity of each target over all `(pi1, pi2)`, with a pair
/// attaining it.
pub fn max_multiplicities(table: &MultTable) -> Result<Vec<(u64, (Gl2Irrep, Gl2Irrep))>, TensorError> {
    let irr = table.irreps();
    let n = irr.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let init = || vec![(0u64, (irr[0], irr[0])); n];
    let best = pairs
        .into_par_iter()
        .try_fold(init, |mut acc, (i, j)| {
            let row = table.pair_row(i, j)?;
            for (k, m) in row.into_iter().enumerate() {
                if m > acc[k].0 {
                    acc[k] = (m, (irr[i], irr[j]));
                }
            }
            Ok::<_, TensorError>(acc)
        })
        .try_reduce(init, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    *x = y;
                }
            }
            Ok(a)
        })?;
    Ok(best)
}

/// Whether `pi` induces multiplicity free from the diagonal.
pub fn is_gelfand_triple_product(pi: &Gl2Irrep, table: &MultTable) -> Result<bool, TensorError> {
    Ok(ind_decompose(pi, table)?.iter().all(|(_, m)| *m <= 1))
}

/// All `pi` that induce multiplicity free from the diagonal.
pub fn classify_gelfand(table: &MultTable) -> Result<BTreeSet<Gl2Irrep>, TensorError> {
    let best = max_multiplicities(table)?;
    Ok(table
        .irreps()
        .iter()
        .zip(best)
        .filter(|(_, (m, _))| *m <= 1)
        .map(|(p, _)| *p)
        .collect())
}

/// Dimension of the space of spherical functions of type `pi`: the number of
/// constituents of the induced module, which must be multiplicity free.
pub fn dim_e(pi: &Gl2Irrep, table: &MultTable) -> Result<u64, TensorError> {
    let parts = ind_decompose(pi, table)?;
    if parts.iter().any(|(_, m)| *m > 1) {
        return Err(TensorError::NotMultiplicityFree(pi.to_string()));
    }
    Ok(parts.len() as u64)
}

/// True iff `dim_e(U_0)` does not divide `dim_e(pi)`, which rules out a free
/// module structure over the zonal algebra.
pub fn e_module_freeness_obstruction(pi: &Gl2Irrep, table: &MultTable) -> Result<bool, TensorError> {
    let base = dim_e(&Gl2Irrep::U(0), table)?;
    Ok(dim_e(pi, table)? % base != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(q: u64) -> MultTable {
        MultTable::new(GroupParams::new(q).unwrap())
    }

    #[test]
    fn basic_examples() {
        let g = GroupParams::new(3).unwrap();
        for a in 0..g.r {
            for b in 0..g.r {
                let ab = g.mod_r((a + b) as i64);
                assert_eq!(mult_sum(&Gl2Irrep::V(a), &Gl2Irrep::V(b), &Gl2Irrep::U(ab), &g).unwrap(), 1);
                for t in g.irreps() {
                    let m = mult_sum(&Gl2Irrep::U(a), &Gl2Irrep::U(b), &t, &g).unwrap();
                    assert_eq!(m, (t == Gl2Irrep::U(ab)) as u64);
                }
            }
        }
        for q in [4, 5, 7] {
            let g = GroupParams::new(q).unwrap();
            for (b, c) in [(0, 1), (1, 2)] {
                let w = Gl2Irrep::W(b, c);
                assert_eq!(mult_sum(&Gl2Irrep::V(0), &w, &w, &g).unwrap(), 2);
            }
        }
    }

    #[test]
    fn mult_sum_rejects_bad_labels() {
        let g = GroupParams::new(3).unwrap();
        let e = mult_sum(&Gl2Irrep::U(5), &Gl2Irrep::U(0), &Gl2Irrep::U(0), &g).unwrap_err();
        assert!(matches!(e, TensorError::Gl2(Gl2Error::MismatchedQ { .. })));
        let e = mult_sum(&Gl2Irrep::X(7), &Gl2Irrep::U(0), &Gl2Irrep::U(0), &g).unwrap_err();
        assert!(matches!(e, TensorError::Gl2(Gl2Error::MismatchedQ { .. })));
    }

    #[test]
    fn closed_examples() {
        let g = GroupParams::new(5).unwrap();
        for n in g.x_params() {
            for m in g.x_params() {
                for a in 0..g.r {
                    let v = mult_closed(&Gl2Irrep::X(n), &Gl2Irrep::X(m), &Gl2Irrep::U(a), &g).unwrap();
                    let hit = |m: u64| g.mod_rs((n + m) as i64 - (g.s * a) as i64) == 0;
                    assert_eq!(v, (hit(m) || hit(g.q * m % g.rs)) as u64);
                }
            }
        }
        assert_eq!(closed_cell(&Gl2Irrep::X(1), &Gl2Irrep::V(0), &Gl2Irrep::X(2)), "VX->X");
    }

    #[test]
    fn decompose_examples() {
        let g2 = GroupParams::new(2).unwrap();
        let d = decompose(&Gl2Irrep::V(0), &Gl2Irrep::V(0), &g2).unwrap();
        assert_eq!(
            d.constituents,
            vec![(Gl2Irrep::U(0), 1), (Gl2Irrep::V(0), 1), (Gl2Irrep::X(1), 1)]
        );
        assert!(d.dim_check);

        for q in [3, 5, 7, 9] {
            let g = GroupParams::new(q).unwrap();
            for a in 0..g.r {
                for b in 0..g.r {
                    let d = decompose(&Gl2Irrep::V(a), &Gl2Irrep::V(b), &g).unwrap();
                    assert!(d.dim_check);
                    let ab = g.mod_r((a + b) as i64);
                    let has = |p: Gl2Irrep| d.constituents.contains(&(p, 1));
                    assert!(has(Gl2Irrep::U(ab)));
                    assert!(has(Gl2Irrep::V(ab)));
                    assert!(has(Gl2Irrep::V(g.mod_r((ab + g.r / 2) as i64))));
                    let count = |f: Family| d.constituents.iter().filter(|(p, _)| p.family() == f).count() as u64;
                    assert_eq!(count(Family::U), 1);
                    assert_eq!(count(Family::V), 2);
                    assert_eq!(count(Family::W), (g.r - 2) / 2);
                    assert_eq!(count(Family::X), (g.s - 2) / 2);
                }
                for n in g.x_params() {
                    let d = decompose(&Gl2Irrep::U(a), &Gl2Irrep::X(n), &g).unwrap();
                    let target = g.canon_orbit((n + g.s * a) as i64);
                    assert_eq!(d.constituents, vec![(Gl2Irrep::X(target), 1)]);
                }
            }
        }
        let g5 = GroupParams::new(5).unwrap();
        let d = decompose(&Gl2Irrep::V(1), &Gl2Irrep::W(0, 2), &g5).unwrap();
        let js = d.to_json();
        assert_eq!(js["left"], "V:1");
        assert_eq!(js["right"], "W:0,2");
        assert_eq!(js["dim_check"], true);
    }

    #[test]
    fn closed_matches_sum_small_q() {
        for q in [2, 3, 4] {
            let t = table(q);
            let bad = compare_all(&t);
            assert!(bad.is_empty(), "q={q}: {}", bad[0]);
        }
    }

    #[test]
    fn memo_and_pair_row_agree() {
        let t = table(4);
        let irr = t.irreps().to_vec();
        let row = t.pair_row(3, 7).unwrap();
        for (k, p) in irr.iter().enumerate() {
            assert_eq!(t.mult(&irr[3], &irr[7], p).unwrap(), row[k]);
            assert_eq!(t.mult_idx(3, 7, k).unwrap(), row[k]);
        }
        assert_eq!(t.memo_len(), irr.len());
    }

    #[test]
    fn induced_from_characters() {
        for q in [2, 3, 4, 5] {
            let t = table(q);
            let g = *t.params();
            for a in 0..g.r {
                let parts = ind_decompose(&Gl2Irrep::U(a), &t).unwrap();
                assert_eq!(parts.len() as u64, q * q - 1);
                assert!(parts.iter().all(|(_, m)| *m == 1));
                let dim: u64 = parts.iter().map(|((x, y), _)| x.dim(&g) * y.dim(&g)).sum();
                assert_eq!(dim, g.group_order());
            }
            let parts = ind_decompose(&Gl2Irrep::U(0), &t).unwrap();
            for ((x, y), _) in parts {
                assert_eq!(x, y.dual(&g));
            }
        }
    }

    #[test]
    fn ind_x_counts_small() {
        let t = table(5);
        let g = *t.params();
        let counts = ind_x_counts_by_dim(2, &t).unwrap();
        let want: BTreeMap<u64, u64> = [(4, 8), (25, 8), (30, 8), (20, 8), (36, 10), (24, 32), (16, 10)].into();
        assert_eq!(counts, want);
        assert_eq!(counts.values().sum::<u64>(), 84);
        assert_eq!(ind_x_expected_by_dim(&g, false), want);
        let g4 = GroupParams::new(4).unwrap();
        assert_eq!(ind_x_expected(&g4, false)[&PairKind::WW], 3);
        for q in [3, 4, 5, 7, 8, 9] {
            let g = GroupParams::new(q).unwrap();
            for odd in [false, true] {
                let total: u64 = ind_x_expected(&g, odd).values().sum();
                assert_eq!(total, (q - 1) * (q * q - q + 1));
            }
        }
    }

    #[test]
    fn gelfand_q3() {
        let t = table(3);
        let set = classify_gelfand(&t).unwrap();
        let want: BTreeSet<Gl2Irrep> = [
            Gl2Irrep::U(0),
            Gl2Irrep::U(1),
            Gl2Irrep::X(1),
            Gl2Irrep::X(2),
            Gl2Irrep::X(5),
        ]
        .into();
        assert_eq!(set, want);
        assert!(is_gelfand_triple_product(&Gl2Irrep::U(1), &t).unwrap());
        assert!(!is_gelfand_triple_product(&Gl2Irrep::V(0), &t).unwrap());
    }

    #[test]
    fn spherical_dimensions() {
        let t = table(2);
        assert_eq!(dim_e(&Gl2Irrep::U(0), &t).unwrap(), 3);
        let t = table(3);
        assert_eq!(dim_e(&Gl2Irrep::U(0), &t).unwrap(), 8);
        assert_eq!(dim_e(&Gl2Irrep::X(1), &t).unwrap(), 14);
        assert!(e_module_freeness_obstruction(&Gl2Irrep::X(1), &t).unwrap());
        assert!(!e_module_freeness_obstruction(&Gl2Irrep::U(1), &t).unwrap());
        assert!(matches!(
            dim_e(&Gl2Irrep::V(0), &t),
            Err(TensorError::NotMultiplicityFree(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn symmetry_duality_conservation(qi in 0usize..4, i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
            let q = [4u64, 5, 7, 8][qi];
            let g = GroupParams::new(q).unwrap();
            let irr = g.irreps();
            let (a, b, c) = (irr[i % irr.len()], irr[j % irr.len()], irr[k % irr.len()]);
            let m = mult_sum(&a, &b, &c, &g).unwrap();
            prop_assert_eq!(m, mult_sum(&b, &a, &c, &g).unwrap());
            prop_assert_eq!(m, mult_sum(&a, &c.dual(&g), &b.dual(&g), &g).unwrap());
            prop_assert_eq!(m as i64, mult_closed_raw(&a, &b, &c, &g));
            let d = decompose(&a, &b, &g).unwrap();
            prop_assert!(d.dim_check);
        }
    }
}
