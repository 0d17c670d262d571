//! Brute-force verification by enumerating `GL_2(q)` as matrices over a
//! concrete field tower, plus a small generic character-table engine.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, CyclotomicError};
use crate::fields::{FieldError, FieldTower, GaloisField};
use crate::gl2::{accumulate, counts_to_integer, CharTable, Family, Gl2Class, Gl2Error, Gl2Irrep, GroupParams};
use crate::report::Report;
use crate::sl3::{embed_class, Sl3Class};
use crate::tensor::MultTable;

/// Largest `q` for full enumeration of `GL_2(q)`.
pub const ORACLE_MAX_Q: u64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error("matrix is singular")]
    Singular,
    #[error("q = {0} exceeds the oracle budget (q <= {ORACLE_MAX_Q})")]
    BudgetExceeded(u64),
    #[error("element sum for {0} is not a nonnegative integer multiple of the group order")]
    NonIntegral(String),
    #[error("invalid class map: {0}")]
    InvalidClassMap(String),
    #[error("invalid character table: {0}")]
    InvalidTable(String),
}

/// A 2x2 matrix `[a, b, c, d]` (row major) over `F_q`.
pub type Mat2 = [u32; 4];

fn det2(f: &GaloisField, m: &Mat2) -> u32 {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

fn trace2(f: &GaloisField, m: &Mat2) -> u32 {
    f.add(m[0], m[3])
}

/// Class of `g` read off from the roots of its characteristic polynomial.
pub fn classify_element(g: &Mat2, tower: &FieldTower) -> Result<Gl2Class, OracleError> {
    let params = GroupParams::new(tower.q() as u64)?;
    let f = tower.small();
    let det = det2(f, g);
    if det == 0 {
        return Err(OracleError::Singular);
    }
    let tr = trace2(f, g);
    // roots of x^2 - tr x + det in F_q
    let roots: Vec<u32> = f
        .elements()
        .filter(|&x| f.add(f.sub(f.mul(x, x), f.mul(tr, x)), det) == 0)
        .collect();
    let dl = |x: u32| tower.dlog_q(x).map(|k| k as u64);
    match roots.as_slice() {
        [x, y] => {
            let (k, l) = (dl(*x)?, dl(*y)?);
            Ok(Gl2Class::C3(k.min(l), k.max(l)))
        }
        [x] => {
            let scalar = g[1] == 0 && g[2] == 0 && g[0] == g[3];
            let k = dl(*x)?;
            Ok(if scalar { Gl2Class::C1(k) } else { Gl2Class::C2(k) })
        }
        _ => {
            let big = tower.big();
            let (trb, detb) = (tower.embed(tr), tower.embed(det));
            let root = big
                .elements()
                .find(|&x| big.add(big.sub(big.mul(x, x), big.mul(trb, x)), detb) == 0)
                .expect("irreducible quadratic splits over F_q^2");
            let m = tower.dlog_q2(root)? as i64;
            Ok(Gl2Class::C4(params.canon_orbit(m)))
        }
    }
}

/// `GL_2(q)` enumerated as matrices, each tagged with its class.
#[derive(Debug)]
pub struct Gl2Oracle {
    params: GroupParams,
    tower: FieldTower,
    elements: Vec<Mat2>,
    element_class: Vec<usize>,
    table: CharTable,
}

impl Gl2Oracle {
    pub fn new(q: u64) -> Result<Self, OracleError> {
        if q > ORACLE_MAX_Q {
            return Err(OracleError::BudgetExceeded(q));
        }
        let params = GroupParams::new(q)?;
        let tower = FieldTower::for_q(q as u32)?;
        let table = CharTable::new(params);
        let f = tower.small();
        let qq = q as u32;
        let mut elements = Vec::new();
        for idx in 0..qq.pow(4) {
            let m = [idx % qq, (idx / qq) % qq, (idx / qq / qq) % qq, idx / qq / qq / qq];
            if det2(f, &m) != 0 {
                elements.push(m);
            }
        }
        // classification depends on (trace, det, scalar) only
        let mut cache: HashMap<(u32, u32, bool), usize> = HashMap::new();
        let mut element_class = Vec::with_capacity(elements.len());
        for m in &elements {
            let key = (trace2(f, m), det2(f, m), m[1] == 0 && m[2] == 0 && m[0] == m[3]);
            let idx = match cache.get(&key) {
                Some(&i) => i,
                None => {
                    let c = classify_element(m, &tower)?;
                    let i = table
                        .class_index(&c)
                        .ok_or_else(|| OracleError::InvalidTable(format!("unknown class {c}")))?;
                    cache.insert(key, i);
                    i
                }
            };
            element_class.push(idx);
        }
        Ok(Self {
            params,
            tower,
            elements,
            element_class,
            table,
        })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn char_table(&self) -> &CharTable {
        &self.table
    }

    /// Class index (into the character table) of each element.
    pub fn element_classes(&self) -> &[usize] {
        &self.element_class
    }

    /// Element count of every class, from enumeration alone.
    pub fn class_counts(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.table.classes().len()];
        for &c in &self.element_class {
            out[c] += 1;
        }
        out
    }

    /// `(1/|G|) sum_g chi1(g) chi2(g) conj(chi3(g))` over all elements.
    pub fn elementwise_mult(&self, p1: &Gl2Irrep, p2: &Gl2Irrep, p3: &Gl2Irrep) -> Result<u64, OracleError> {
        let idx = |p: &Gl2Irrep| {
            self.table.irrep_index(p).ok_or_else(|| Gl2Error::MismatchedQ {
                label: p.to_string(),
                q: self.params.q,
            })
        };
        let (i, j, k) = (idx(p1)?, idx(p2)?, idx(p3)?);
        self.elementwise_idx(i, j, k)
            .ok_or_else(|| OracleError::NonIntegral(format!("({p1}, {p2}; {p3})")))
    }

    fn elementwise_idx(&self, i: usize, j: usize, k: usize) -> Option<u64> {
        let t = &self.table;
        let mut counts = vec![0i64; self.params.rs as usize];
        for &c in &self.element_class {
            accumulate(&mut counts, 1, &[(t.terms(i, c), false), (t.terms(j, c), false), (t.terms(k, c), true)]);
        }
        let n = self.elements.len() as i64;
        let v = counts_to_integer(self.params.rs, &mut counts)?;
        (v >= 0 && v % n == 0).then(|| (v / n) as u64)
    }
}

/// Class sizes and class-type counts from raw enumeration against the
/// closed-form sizes `1, rs, qs, qr` and counts `r, r, r(r-1)/2, qr/2`.
pub fn census(q: u64) -> Result<Report, OracleError> {
    let o = Gl2Oracle::new(q)?;
    let g = *o.params();
    let mut rep = Report::new("census", q);
    let counts = o.class_counts();
    let classes = o.char_table().classes();
    let mut by_type: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for (c, n) in classes.iter().zip(&counts) {
        let want = c.size(&g);
        if *n != want {
            rep.fail(json!({"ok": false, "class": c.to_string(), "enumerated": n, "expected": want}));
        }
        let tag = match c {
            Gl2Class::C1(_) => "c1",
            Gl2Class::C2(_) => "c2",
            Gl2Class::C3(..) => "c3",
            Gl2Class::C4(_) => "c4",
        };
        let e = by_type.entry(tag).or_insert((0, 0));
        e.0 += (*n > 0) as u64;
        e.1 += n;
    }
    let (r, s) = (g.r, g.s);
    let expect_counts = [("c1", r), ("c2", r), ("c3", r * (r - 1) / 2), ("c4", q * r / 2)];
    for (tag, want) in expect_counts {
        let (got, elems) = by_type.get(tag).copied().unwrap_or((0, 0));
        rep.expect(
            got == want,
            json!({"ok": got == want, "type": tag, "classes": got, "expected_classes": want, "elements": elems}),
        );
    }
    let total = o.elements().len() as u64;
    let want = q * s * r * r;
    rep.expect(total == want, json!({"ok": total == want, "group_order": total, "expected": want}));
    Ok(rep)
}

/// Row and column orthogonality with class sizes taken from enumeration.
pub fn orthogonality(q: u64) -> Result<Report, OracleError> {
    let o = Gl2Oracle::new(q)?;
    let g = *o.params();
    let t = o.char_table();
    let sizes = o.class_counts();
    let order = o.elements().len() as i64;
    let n = t.irreps().len();
    let mut rep = Report::new("orthogonality", q);
    let row_bad: Vec<(usize, usize)> = (0..n * n)
        .into_par_iter()
        .filter_map(|ij| {
            let (i, j) = (ij / n, ij % n);
            let mut counts = vec![0i64; g.rs as usize];
            for (c, &w) in sizes.iter().enumerate() {
                accumulate(&mut counts, w as i64, &[(t.terms(i, c), false), (t.terms(j, c), true)]);
            }
            let want = if i == j { order } else { 0 };
            (counts_to_integer(g.rs, &mut counts) != Some(want)).then_some((i, j))
        })
        .collect();
    let col_bad: Vec<(usize, usize)> = (0..n * n)
        .into_par_iter()
        .filter_map(|ab| {
            let (a, b) = (ab / n, ab % n);
            let mut counts = vec![0i64; g.rs as usize];
            for i in 0..n {
                accumulate(&mut counts, 1, &[(t.terms(i, a), false), (t.terms(i, b), true)]);
            }
            let want = if a == b { order / sizes[a] as i64 } else { 0 };
            (counts_to_integer(g.rs, &mut counts) != Some(want)).then_some((a, b))
        })
        .collect();
    for (i, j) in row_bad.iter().take(5) {
        rep.fail(json!({"ok": false, "row": [t.irreps()[*i].to_string(), t.irreps()[*j].to_string()]}));
    }
    for (a, b) in col_bad.iter().take(5) {
        rep.fail(json!({"ok": false, "column": [t.classes()[*a].to_string(), t.classes()[*b].to_string()]}));
    }
    rep.note(json!({"ok": row_bad.is_empty() && col_bad.is_empty(), "pairs_checked": 2 * n * n,
        "row_failures": row_bad.len(), "column_failures": col_bad.len()}));
    Ok(rep)
}

/// Element sums against class sums: every triple, or `samples` seeded
/// random triples.
pub fn elementwise_agreement(q: u64, samples: Option<(usize, u64)>) -> Result<Report, OracleError> {
    let o = Gl2Oracle::new(q)?;
    let mt = MultTable::new(*o.params());
    let n = mt.irreps().len();
    let triples: Vec<(usize, usize, usize)> = match samples {
        None => (0..n * n * n).map(|x| (x / (n * n), (x / n) % n, x % n)).collect(),
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect()
        }
    };
    let mut rep = Report::new("elementwise", q);
    let bad: Vec<_> = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let e = o.elementwise_idx(i, j, k);
            let s = mt.mult_idx(i, j, k).ok();
            let c = crate::tensor::mult_closed_raw(&mt.irreps()[i], &mt.irreps()[j], &mt.irreps()[k], o.params());
            (e.is_none() || e != s || e.map(|x| x as i64) != Some(c)).then_some((i, j, k, e, s, c))
        })
        .collect();
    let irr = mt.irreps();
    for (i, j, k, e, s, c) in bad.iter().take(5) {
        rep.fail(json!({"ok": false, "triple": [irr[*i].to_string(), irr[*j].to_string(), irr[*k].to_string()],
            "elementwise": e, "class_sum": s, "closed": c}));
    }
    rep.note(json!({"ok": bad.is_empty(), "triples": triples.len(), "mismatches": bad.len()}));
    Ok(rep)
}

/// Square matrices over `F_{q^2}`, row major.
fn mat_rank(f: &GaloisField, m: &mut [Vec<u32>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][col]).expect("nonzero pivot");
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = f.mul(row[col], inv);
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det3(f: &GaloisField, m: &[Vec<u32>]) -> u32 {
    let minor = |a: usize, b: usize, c: usize, d: usize| f.sub(f.mul(m[1][a], m[2][b]), f.mul(m[1][c], m[2][d]));
    let t0 = f.mul(m[0][0], minor(1, 2, 2, 1));
    let t1 = f.mul(m[0][1], minor(0, 2, 2, 0));
    let t2 = f.mul(m[0][2], minor(0, 1, 1, 0));
    f.add(f.sub(t0, t1), t2)
}

/// Eigenvalue multiset (as powers of `sigma`, sorted) and, for each distinct
/// eigenvalue, `rank(M - lambda I)`.
fn spectral_type(tower: &FieldTower, m: &[Vec<u32>]) -> (Vec<u32>, Vec<(u32, usize)>) {
    let f = tower.big();
    let tr = f.add(f.add(m[0][0], m[1][1]), m[2][2]);
    let pm = |i: usize, j: usize| f.sub(f.mul(m[i][i], m[j][j]), f.mul(m[i][j], m[j][i]));
    let c2 = f.add(f.add(pm(0, 1), pm(0, 2)), pm(1, 2));
    let det = det3(f, m);
    // x^3 - tr x^2 + c2 x - det, deflated root by root
    let mut poly = vec![f.neg(det), c2, f.neg(tr), 1u32];
    let mut eig = Vec::new();
    while poly.len() > 1 {
        let Some(root) = f.elements().find(|&x| {
            poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0
        }) else {
            break;
        };
        eig.push(root);
        let mut quot = vec![0u32; poly.len() - 1];
        let mut carry = 0;
        for i in (0..poly.len()).rev() {
            let v = f.add(poly[i], f.mul(carry, root));
            if i > 0 {
                quot[i - 1] = v;
            }
            carry = v;
        }
        poly = quot;
    }
    let mut exps: Vec<u32> = eig.iter().map(|&x| tower.dlog_q2(x).unwrap_or(u32::MAX)).collect();
    exps.sort_unstable();
    let mut distinct = eig.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut ranks: Vec<(u32, usize)> = distinct
        .iter()
        .map(|&l| {
            let mut a: Vec<Vec<u32>> = m.to_vec();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = f.sub(row[i], l);
            }
            (tower.dlog_q2(l).unwrap_or(u32::MAX), mat_rank(f, &mut a))
        })
        .collect();
    ranks.sort_unstable();
    (exps, ranks)
}

/// A representative of an `SL_3(q)` class over `F_{q^2}`; `None` for the
/// classes whose representatives need `theta` or `F_{q^3}`.
fn sl3_representative(c: &Sl3Class, tower: &FieldTower, g: &GroupParams) -> Option<Vec<Vec<u32>>> {
    let s = g.s as i64;
    let rho = |k: i64| tower.sigma_pow(s * k);
    let omega = |k: u64| rho(k as i64 * (g.r / g.d) as i64);
    let diag = |a: u32, b: u32, c: u32| vec![vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]];
    match *c {
        Sl3Class::C1(k) => Some(diag(omega(k), omega(k), omega(k))),
        Sl3Class::C2(k) => {
            let mut m = diag(omega(k), omega(k), omega(k));
            m[1][0] = 1;
            Some(m)
        }
        Sl3Class::C4(k) => Some(diag(rho(k as i64), rho(k as i64), rho(-2 * k as i64))),
        Sl3Class::C5(k) => {
            let mut m = diag(rho(k as i64), rho(k as i64), rho(-2 * k as i64));
            m[1][0] = 1;
            Some(m)
        }
        Sl3Class::C6(k, l) => Some(diag(rho(k as i64), rho(l as i64), rho(-((k + l) as i64)))),
        Sl3Class::C7(k) => {
            let k = k as i64;
            Some(diag(rho(k), tower.sigma_pow(-k), tower.sigma_pow(-(g.q as i64) * k)))
        }
        Sl3Class::C3(..) | Sl3Class::C8(_) => None,
    }
}

/// A matrix representative of a `GL_2(q)` class over `F_q`.
pub fn gl2_representative(c: &Gl2Class, tower: &FieldTower) -> Mat2 {
    let f = tower.small();
    let rho = |k: u64| tower.rho_pow(k as i64);
    match *c {
        Gl2Class::C1(k) => [rho(k), 0, 0, rho(k)],
        Gl2Class::C2(k) => [rho(k), 1, 0, rho(k)],
        Gl2Class::C3(k, l) => [rho(k), 0, 0, rho(l)],
        Gl2Class::C4(m) => {
            // companion matrix of the minimal polynomial of sigma^m
            let big = tower.big();
            let x = tower.sigma_pow(m as i64);
            let xq = big.pow(x, tower.q() as u64);
            let unembed = |v: u32| {
                f.elements()
                    .find(|&y| tower.embed(y) == v)
                    .expect("trace and norm lie in F_q")
            };
            let tr = unembed(big.add(x, xq));
            let nm = unembed(big.mul(x, xq));
            [0, f.neg(nm), 1, tr]
        }
    }
}

/// Checks every class image under `g -> diag(g, det g^-1)` against the
/// representative of its predicted `SL_3(q)` class by eigenvalue multiset
/// and Jordan structure over `F_{q^2}`.
pub fn verify_embedding(q: u64) -> Result<Report, OracleError> {
    if q > ORACLE_MAX_Q {
        return Err(OracleError::BudgetExceeded(q));
    }
    let g = GroupParams::new(q)?;
    let tower = FieldTower::for_q(q as u32)?;
    let f = tower.small();
    let big = tower.big();
    let mut rep = Report::new("embed", q);
    let mut mismatches = 0usize;
    for c in g.classes() {
        let m = gl2_representative(&c, &tower);
        let back = classify_element(&m, &tower)?;
        let det_inv = f.inv(det2(f, &m)).ok_or(OracleError::Singular)?;
        let e = |x: u32| tower.embed(x);
        let m3 = vec![
            vec![e(m[0]), e(m[1]), 0],
            vec![e(m[2]), e(m[3]), 0],
            vec![0, 0, e(det_inv)],
        ];
        let target = embed_class(&c, &g);
        let ok_det = det3(big, &m3) == 1;
        let got = spectral_type(&tower, &m3);
        let want = sl3_representative(&target, &tower, &g).map(|r| spectral_type(&tower, &r));
        let ok = back == c && ok_det && want.as_ref() == Some(&got);
        if !ok {
            mismatches += 1;
            rep.fail(json!({"ok": false, "class": c.to_string(), "classified_as": back.to_string(),
                "image": target.to_string(), "det_one": ok_det,
                "eigen_exponents": got.0, "expected_exponents": want.map(|w| w.0)}));
        }
    }
    rep.note(json!({"ok": mismatches == 0, "classes": g.classes().len(), "mismatches": mismatches}));
    Ok(rep)
}

/// Character table of an abstract finite group, given explicitly.
#[derive(Debug, Clone)]
pub struct ExplicitCharTable {
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub irrep_labels: Vec<String>,
    /// `values[i][c]`: irrep `i` on class `c`.
    pub values: Vec<Vec<Cyclotomic>>,
}

impl ExplicitCharTable {
    /// Validates shape and row orthogonality.
    pub fn new(
        class_labels: Vec<String>,
        class_sizes: Vec<u64>,
        irrep_labels: Vec<String>,
        values: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self, OracleError> {
        let nc = class_labels.len();
        if class_sizes.len() != nc || values.len() != irrep_labels.len() || values.iter().any(|r| r.len() != nc) {
            return Err(OracleError::InvalidTable("shape mismatch".into()));
        }
        let t = Self {
            class_labels,
            class_sizes,
            irrep_labels,
            values,
        };
        let order = BigInt::from(t.order());
        for i in 0..t.values.len() {
            for j in 0..t.values.len() {
                let v = t.inner_raw(&t.values[i], &t.values[j])?;
                let want = if i == j { order.clone() } else { BigInt::zero() };
                if v.as_integer().ok() != Some(want) {
                    return Err(OracleError::InvalidTable(format!(
                        "rows {} and {} are not orthonormal",
                        t.irrep_labels[i], t.irrep_labels[j]
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    /// `sum_c |c| x(c) conj(y(c))`, not divided by the order.
    fn inner_raw(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Result<Cyclotomic, OracleError> {
        let mut acc = Cyclotomic::zero(1)?;
        for ((a, b), &w) in x.iter().zip(y).zip(&self.class_sizes) {
            acc = acc.checked_add(&a.checked_mul(&b.conj())?.scalar_mul(&BigInt::from(w)))?;
        }
        Ok(acc)
    }

    /// Inner product `(1/|H|) sum_c |c| x(c) conj(y(c))` as an integer.
    pub fn multiplicity(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Result<u64, OracleError> {
        let v = self.inner_raw(x, y)?;
        let n = v.as_integer().map_err(|_| OracleError::NonIntegral(v.to_string()))?;
        let order = BigInt::from(self.order());
        if &n % &order != BigInt::zero() || n < BigInt::zero() {
            return Err(OracleError::NonIntegral(n.to_string()));
        }
        Ok((n / order).to_u64().expect("small multiplicity"))
    }
}

/// Restriction multiplicities `M[i][j] = [Res chi_i : psi_j]`, where
/// `class_map[c]` is the class of `table` containing subgroup class `c`.
pub fn generic_multiplicity(
    table: &ExplicitCharTable,
    sub: &ExplicitCharTable,
    class_map: &[usize],
) -> Result<Vec<Vec<u64>>, OracleError> {
    if class_map.len() != sub.class_labels.len() {
        return Err(OracleError::InvalidClassMap(format!(
            "{} entries for {} subgroup classes",
            class_map.len(),
            sub.class_labels.len()
        )));
    }
    if let Some(&bad) = class_map.iter().find(|&&c| c >= table.class_labels.len()) {
        return Err(OracleError::InvalidClassMap(format!("class index {bad} out of range")));
    }
    for (c, &p) in class_map.iter().enumerate() {
        if sub.class_sizes[c] > table.class_sizes[p] {
            return Err(OracleError::InvalidClassMap(format!(
                "subgroup class {} larger than {}",
                sub.class_labels[c], table.class_labels[p]
            )));
        }
    }
    table
        .values
        .iter()
        .map(|row| {
            let res: Vec<Cyclotomic> = class_map.iter().map(|&p| row[p].clone()).collect();
            sub.values.iter().map(|psi| sub.multiplicity(&res, psi)).collect()
        })
        .collect()
}

fn int(v: i64) -> Cyclotomic {
    Cyclotomic::from_int(1, v).expect("order 1")
}

/// Character table of `S_4` on classes `Id, (12), (123), (1234), (12)(34)`.
pub fn s4_table() -> ExplicitCharTable {
    let rows: [[i64; 5]; 5] = [
        [1, 1, 1, 1, 1],
        [1, -1, 1, -1, 1],
        [2, 0, -1, 0, 2],
        [3, 1, 0, -1, -1],
        [3, -1, 0, 1, -1],
    ];
    ExplicitCharTable::new(
        ["Id", "(1 2)", "(1 2 3)", "(1 2 3 4)", "(1 2)(3 4)"].map(String::from).to_vec(),
        vec![1, 6, 8, 6, 3],
        (1..=5).map(|i| format!("chi{i}")).collect(),
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
    )
    .expect("S4 table is valid")
}

/// Character table of `C_3 = <(1 2 3)>` on classes `Id, (123), (132)`.
pub fn c3_table() -> ExplicitCharTable {
    let z = |e: i64| Cyclotomic::root(3, e).expect("order 3");
    ExplicitCharTable::new(
        ["Id", "(1 2 3)", "(1 3 2)"].map(String::from).to_vec(),
        vec![1, 1, 1],
        (1..=3).map(|i| format!("psi{i}")).collect(),
        vec![vec![z(0), z(0), z(0)], vec![z(0), z(1), z(2)], vec![z(0), z(2), z(1)]],
    )
    .expect("C3 table is valid")
}

/// Class map of `C_3` into `S_4`.
pub const C3_IN_S4: [usize; 3] = [0, 2, 2];

/// The `GL_2(q)` character table as an [`ExplicitCharTable`] with class
/// sizes taken from enumeration.
pub fn gl2_explicit(o: &Gl2Oracle) -> Result<ExplicitCharTable, OracleError> {
    let t = o.char_table();
    let n = t.irreps().len();
    ExplicitCharTable::new(
        t.classes().iter().map(ToString::to_string).collect(),
        o.class_counts(),
        t.irreps().iter().map(ToString::to_string).collect(),
        (0..n).map(|i| (0..n).map(|c| t.value(i, c).clone()).collect()).collect(),
    )
}

/// The center `{rho^k I}` of `GL_2(q)` as a cyclic group with characters
/// `k -> zeta_r^(jk)`, and its class map.
pub fn gl2_center(o: &Gl2Oracle) -> (ExplicitCharTable, Vec<usize>) {
    let g = o.params();
    let r = g.r;
    let table = ExplicitCharTable::new(
        (0..r).map(|k| format!("rho^{k}")).collect(),
        vec![1; r as usize],
        (0..r).map(|j| format!("lambda{j}")).collect(),
        (0..r)
            .map(|j| (0..r).map(|k| Cyclotomic::root(r, (j * k) as i64).expect("order r")).collect())
            .collect(),
    )
    .expect("cyclic table is valid");
    let map = (0..r)
        .map(|k| o.char_table().class_index(&Gl2Class::C1(k)).expect("central class"))
        .collect();
    (table, map)
}

/// The S4 over C3 multiplicity table, the identity table of a group over
/// itself, and central characters of `GL_2(3)`.
pub fn s4_fixture() -> Result<Report, OracleError> {
    let mut rep = Report::new("s4-fixture", 0);
    let m = generic_multiplicity(&s4_table(), &c3_table(), &C3_IN_S4)?;
    let want: Vec<Vec<u64>> = vec![vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 1], vec![1, 1, 1], vec![1, 1, 1]];
    rep.expect(m == want, json!({"ok": m == want, "table": "S4/C3", "multiplicities": m}));

    let s4 = s4_table();
    let id = generic_multiplicity(&s4, &s4, &[0, 1, 2, 3, 4])?;
    let ok = id.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == (i == j) as u64));
    rep.expect(ok, json!({"ok": ok, "table": "S4/S4"}));

    let o = Gl2Oracle::new(3)?;
    let g = *o.params();
    let full = gl2_explicit(&o)?;
    let (center, map) = gl2_center(&o);
    let m = generic_multiplicity(&full, &center, &map)?;
    let mut ok = true;
    for (i, pi) in o.char_table().irreps().iter().enumerate() {
        let j = match *pi {
            Gl2Irrep::U(a) | Gl2Irrep::V(a) => g.mod_r(2 * a as i64),
            Gl2Irrep::W(a, b) => g.mod_r((a + b) as i64),
            Gl2Irrep::X(n) => g.bar(n),
        };
        for (jj, &v) in m[i].iter().enumerate() {
            ok &= v == if jj as u64 == j { pi.dim(&g) } else { 0 };
        }
    }
    rep.expect(ok, json!({"ok": ok, "table": "GL2(3)/center"}));
    Ok(rep)
}

/// Multiplicities of the additive characters of the unipotent subgroup in
/// every irrep restricted to it, by element enumeration.
pub fn bessel_check(q: u64) -> Result<Report, OracleError> {
    if q > ORACLE_MAX_Q {
        return Err(OracleError::BudgetExceeded(q));
    }
    let g = GroupParams::new(q)?;
    let tower = FieldTower::for_q(q as u32)?;
    let f = tower.small();
    let p = tower.p() as u64;
    let table = CharTable::new(g);
    let mut rep = Report::new("bessel", q);
    // u_x = [[1, x], [0, 1]]; psi_j(x) = zeta_p^Tr(j x)
    let unipotent: Vec<(u32, usize)> = f
        .elements()
        .map(|x| {
            let c = classify_element(&[1, x, 0, 1], &tower)?;
            Ok((x, table.class_index(&c).expect("valid class")))
        })
        .collect::<Result<_, OracleError>>()?;
    let psi = |j: u32, x: u32| Cyclotomic::root(p, f.trace(f.mul(j, x)) as i64).expect("order p");
    let mult = |i: usize, j: u32| -> Result<u64, OracleError> {
        let mut acc = Cyclotomic::zero(1)?;
        for &(x, c) in &unipotent {
            acc = acc.checked_add(&table.value(i, c).checked_mul(&psi(j, x).conj())?)?;
        }
        let v = acc.as_integer().map_err(|_| OracleError::NonIntegral(acc.to_string()))?;
        if &v % q != BigInt::zero() {
            return Err(OracleError::NonIntegral(v.to_string()));
        }
        Ok((v / q).to_u64().expect("small"))
    };
    let mut ones = 0u64;
    let mut nontrivial = Vec::new();
    for (i, pi) in table.irreps().iter().enumerate() {
        let m = mult(i, 1)?;
        nontrivial.push(m);
        let want = (pi.family() != Family::U) as u64;
        ones += (m == 1) as u64;
        if m != want {
            rep.fail(json!({"ok": false, "psi": "nontrivial", "irrep": pi.to_string(), "mult": m, "expected": want}));
        }
    }
    rep.note(json!({"ok": true, "psi": "nontrivial", "multiplicities": nontrivial}));
    let want_ones = q * (q - 1);
    rep.expect(ones == want_ones, json!({"ok": ones == want_ones, "multiplicity_one_rows": ones, "expected": want_ones}));
    let mut w_count = 0;
    for (i, pi) in table.irreps().iter().enumerate() {
        if pi.family() != Family::W {
            continue;
        }
        w_count += 1;
        let m = mult(i, 0)?;
        rep.expect(m == 2, json!({"ok": m == 2, "psi": "trivial", "irrep": pi.to_string(), "mult": m}));
    }
    if w_count == 0 {
        rep.note(json!({"ok": true, "psi": "trivial", "note": "no W irreps at this q; vacuous"}));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let t3 = FieldTower::for_q(3).unwrap();
        assert_eq!(classify_element(&[1, 0, 0, 1], &t3).unwrap(), Gl2Class::C1(0));
        assert_eq!(classify_element(&[0, 0, 0, 1], &t3), Err(OracleError::Singular));
        let t5 = FieldTower::for_q(5).unwrap();
        let (a, b) = (t5.rho_pow(1), t5.rho_pow(2));
        assert_eq!(classify_element(&[a, 0, 0, b], &t5).unwrap(), Gl2Class::C3(1, 2));
        // x^2 + 1 is irreducible over F_3; companion matrix [[0, -1], [1, 0]]
        let o = Gl2Oracle::new(3).unwrap();
        let c = classify_element(&[0, 2, 1, 0], &t3).unwrap();
        assert!(matches!(c, Gl2Class::C4(_)));
        let idx = o.char_table().class_index(&c).unwrap();
        assert_eq!(o.class_counts()[idx], 6);
    }

    #[test]
    fn census_small() {
        for q in [2, 3, 4, 5] {
            let r = census(q).unwrap();
            assert!(r.pass, "{:?}", r);
        }
        let o = Gl2Oracle::new(2).unwrap();
        let mut sizes = o.class_counts();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let o3 = Gl2Oracle::new(3).unwrap();
        assert_eq!(o3.class_counts(), vec![1, 1, 8, 8, 12, 6, 6, 6]);
        assert_eq!(Gl2Oracle::new(11).unwrap_err(), OracleError::BudgetExceeded(11));
    }

    #[test]
    fn representatives_classify_back() {
        for q in [2, 3, 4, 5, 7] {
            let tower = FieldTower::for_q(q as u32).unwrap();
            let g = GroupParams::new(q).unwrap();
            for c in g.classes() {
                assert_eq!(classify_element(&gl2_representative(&c, &tower), &tower).unwrap(), c);
            }
        }
    }

    #[test]
    fn orthogonality_and_embedding() {
        for q in [2, 3, 4, 5] {
            assert!(orthogonality(q).unwrap().pass);
            let r = verify_embedding(q).unwrap();
            assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn elementwise_small() {
        let r = elementwise_agreement(2, None).unwrap();
        assert!(r.pass);
        assert_eq!(r.details.last().unwrap()["triples"], 27);
        let o = Gl2Oracle::new(4).unwrap();
        let g = *o.params();
        for a in 0..g.r {
            for b in 0..g.r {
                let m = o
                    .elementwise_mult(&Gl2Irrep::V(a), &Gl2Irrep::V(b), &Gl2Irrep::U(g.mod_r((a + b) as i64)))
                    .unwrap();
                assert_eq!(m, 1);
            }
        }
    }

    #[test]
    fn fixtures() {
        let r = s4_fixture().unwrap();
        assert!(r.pass, "{:?}", r);
        let bad = generic_multiplicity(&s4_table(), &c3_table(), &[0, 2]);
        assert!(matches!(bad, Err(OracleError::InvalidClassMap(_))));
        let bad = generic_multiplicity(&s4_table(), &c3_table(), &[0, 2, 9]);
        assert!(matches!(bad, Err(OracleError::InvalidClassMap(_))));
        let broken = ExplicitCharTable::new(
            vec!["a".into(), "b".into()],
            vec![1, 1],
            vec!["x".into(), "y".into()],
            vec![vec![int(1), int(1)], vec![int(1), int(1)]],
        );
        assert!(matches!(broken, Err(OracleError::InvalidTable(_))));
    }

    #[test]
    fn bessel() {
        let r = bessel_check(3).unwrap();
        assert!(r.pass, "{:?}", r);
        let mults = &r.details.iter().find(|d| d.get("multiplicities").is_some()).unwrap()["multiplicities"];
        assert_eq!(mults, &json!([0, 0, 1, 1, 1, 1, 1, 1]));
        let r2 = bessel_check(2).unwrap();
        assert!(r2.pass);
        assert!(r2.details.iter().any(|d| d.get("note").is_some()));
    }
}
