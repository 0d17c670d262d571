//! Named verification suites, each producing one [`Report`] per `q`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::json;
use thiserror::Error;

use crate::gl2::{Gl2Error, Gl2Irrep, GroupParams};
use crate::harmonic::{harmonic_suite, HarmonicError, HARMONIC_MAX_Q};
use crate::oracle::{self, OracleError, ORACLE_MAX_Q};
use crate::report::Report;
use crate::sl3::{witness_no_gelfand, Sl3Error};
use crate::tensor::{
    classify_gelfand, compare_all, compare_sampled, dim_e, e_module_freeness_obstruction, ind_x_counts_by_dim,
    ind_x_expected_by_dim, MultTable, TensorError,
};

/// Largest `q` swept exhaustively by `tensor-agree`.
pub const EXHAUSTIVE_MAX_Q: u64 = 5;
/// Random triples per `q` above [`EXHAUSTIVE_MAX_Q`].
pub const SAMPLED_TRIPLES: usize = 10_000;
/// Random triples per `q` for the elementwise oracle at `q = 4, 5`.
pub const ELEMENTWISE_SAMPLES: usize = 1_000;
/// Largest `q` for the suites driven by the class-sum tables.
pub const TABLE_MAX_Q: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    Unknown(String),
    #[error("suite {suite} supports q <= {max}, got q = {q}")]
    QOutOfRange { suite: Suite, q: u64, max: u64 },
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sl3(#[from] Sl3Error),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Census,
    Orthogonality,
    TensorAgree,
    IndxCounts,
    Gelfand,
    Embed,
    Sl3,
    Bessel,
    S4Fixture,
    Harmonic,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Census,
        Suite::Orthogonality,
        Suite::TensorAgree,
        Suite::IndxCounts,
        Suite::Gelfand,
        Suite::Embed,
        Suite::Sl3,
        Suite::Bessel,
        Suite::S4Fixture,
        Suite::Harmonic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Census => "census",
            Suite::Orthogonality => "orthogonality",
            Suite::TensorAgree => "tensor-agree",
            Suite::IndxCounts => "indx-counts",
            Suite::Gelfand => "gelfand",
            Suite::Embed => "embed",
            Suite::Sl3 => "sl3",
            Suite::Bessel => "bessel",
            Suite::S4Fixture => "s4-fixture",
            Suite::Harmonic => "harmonic",
        }
    }

    /// `(min_q, max_q)`.
    pub fn q_range(&self) -> (u64, u64) {
        match self {
            Suite::Census | Suite::Orthogonality | Suite::Embed | Suite::Bessel => (2, ORACLE_MAX_Q),
            Suite::TensorAgree | Suite::Gelfand | Suite::Sl3 => (2, TABLE_MAX_Q),
            Suite::IndxCounts => (3, TABLE_MAX_Q),
            Suite::S4Fixture => (0, u64::MAX),
            Suite::Harmonic => (2, HARMONIC_MAX_Q),
        }
    }

    /// Whether `q` is used at all; `s4-fixture` ignores it.
    pub fn uses_q(&self) -> bool {
        *self != Suite::S4Fixture
    }

    /// Suites named by `text`: one suite, or every suite for `all`.
    pub fn parse_selector(text: &str) -> Result<Vec<Suite>, SuiteError> {
        if text == "all" {
            Ok(Self::ALL.to_vec())
        } else {
            Ok(vec![text.parse()?])
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::Unknown(s.to_string()))
    }
}

/// Runs `suite` at `q`; `seed` drives the sampled sweeps.
pub fn run_suite(suite: Suite, q: u64, seed: u64) -> Result<Report, SuiteError> {
    let (lo, hi) = suite.q_range();
    if suite.uses_q() && !(lo..=hi).contains(&q) {
        return Err(SuiteError::QOutOfRange { suite, q, max: hi });
    }
    if suite.uses_q() {
        GroupParams::new(q)?;
    }
    Ok(match suite {
        Suite::Census => oracle::census(q)?,
        Suite::Orthogonality => oracle::orthogonality(q)?,
        Suite::TensorAgree => tensor_agree(q, seed)?,
        Suite::IndxCounts => indx_counts(q)?,
        Suite::Gelfand => gelfand(q)?,
        Suite::Embed => oracle::verify_embedding(q)?,
        Suite::Sl3 => sl3_witnesses(q)?,
        Suite::Bessel => oracle::bessel_check(q)?,
        Suite::S4Fixture => oracle::s4_fixture()?,
        Suite::Harmonic => harmonic_suite(q)?,
    })
}

/// Closed form against class sum (exhaustive up to [`EXHAUSTIVE_MAX_Q`],
/// sampled above), plus the elementwise oracle where enumeration is cheap.
pub fn tensor_agree(q: u64, seed: u64) -> Result<Report, SuiteError> {
    let table = MultTable::new(GroupParams::new(q)?);
    let n = table.irreps().len();
    let mut rep = Report::new("tensor-agree", q);
    let (bad, triples) = if q <= EXHAUSTIVE_MAX_Q {
        (compare_all(&table), n * n * n)
    } else {
        (compare_sampled(&table, SAMPLED_TRIPLES, seed), SAMPLED_TRIPLES)
    };
    for d in bad.iter().take(5) {
        rep.fail(json!({"ok": false, "counterexample": d.to_string(), "cell": d.cell}));
    }
    rep.note(json!({"ok": bad.is_empty(), "method": "closed-vs-class-sum", "triples": triples,
        "exhaustive": q <= EXHAUSTIVE_MAX_Q, "mismatches": bad.len()}));
    if q <= EXHAUSTIVE_MAX_Q {
        let samples = (q > 3).then_some((ELEMENTWISE_SAMPLES, seed));
        let el = oracle::elementwise_agreement(q, samples)?;
        let ok = el.pass;
        for d in el.details {
            if ok {
                rep.note(json!({"method": "elementwise", "ok": true, "detail": d}));
            } else {
                rep.fail(json!({"method": "elementwise", "ok": d.get("ok").cloned().unwrap_or(json!(false)), "detail": d}));
            }
        }
    }
    Ok(rep)
}

/// Constituent counts by dimension of every module induced from an `X`
/// label, against the closed forms, with total `(q-1)(q^2-q+1)`.
pub fn indx_counts(q: u64) -> Result<Report, SuiteError> {
    let table = MultTable::new(GroupParams::new(q)?);
    let g = *table.params();
    let total_want = (q - 1) * (q * q - q + 1);
    let mut rep = Report::new("indx-counts", q);
    for n in g.x_params() {
        let got = ind_x_counts_by_dim(n, &table)?;
        let want = ind_x_expected_by_dim(&g, n % 2 == 1);
        let total: u64 = got.values().sum();
        let ok = got == want && total == total_want;
        rep.expect(
            ok,
            json!({"ok": ok, "irrep": Gl2Irrep::X(n).to_string(), "by_dim": got, "expected": want, "total": total}),
        );
    }
    Ok(rep)
}

/// Multiplicity-free labels against `{pi : dim pi in {1, q - 1}}`, and for
/// `q >= 3` the freeness obstruction.
pub fn gelfand(q: u64) -> Result<Report, SuiteError> {
    let table = MultTable::new(GroupParams::new(q)?);
    let g = *table.params();
    let got = classify_gelfand(&table)?;
    let want: BTreeSet<Gl2Irrep> =
        g.irreps().into_iter().filter(|p| matches!(p.dim(&g), d if d == 1 || d == q - 1)).collect();
    let mut rep = Report::new("gelfand", q);
    let names = |s: &BTreeSet<Gl2Irrep>| s.iter().map(ToString::to_string).collect::<Vec<_>>();
    let diff: BTreeSet<Gl2Irrep> = got.symmetric_difference(&want).copied().collect();
    rep.expect(
        got == want,
        json!({"ok": got == want, "gelfand": names(&got), "expected": names(&want), "difference": names(&diff)}),
    );
    if q >= 3 {
        let f = freeness(q)?;
        rep.pass &= f.pass;
        rep.details.extend(f.details);
    }
    Ok(rep)
}

/// `dim E(U_0) = q^2 - 1` does not divide `dim E(X) = (q-1)(q^2-q+1)`.
pub fn freeness(q: u64) -> Result<Report, SuiteError> {
    let table = MultTable::new(GroupParams::new(q)?);
    let g = *table.params();
    let x = Gl2Irrep::X(g.x_params()[0]);
    let du = dim_e(&Gl2Irrep::U(0), &table)?;
    let dx = dim_e(&x, &table)?;
    let obstructed = e_module_freeness_obstruction(&x, &table)?;
    let ok = du == q * q - 1 && dx == (q - 1) * (q * q - q + 1) && obstructed && dx % du != 0;
    let mut rep = Report::new("freeness", q);
    rep.expect(ok, json!({"ok": ok, "dim_e_u0": du, "dim_e_x": dx, "irrep": x.to_string(), "obstructed": obstructed}));
    Ok(rep)
}

/// A restriction multiplicity of at least two for every `GL_2(q)` irrep,
/// matching the closed-form value.
pub fn sl3_witnesses(q: u64) -> Result<Report, SuiteError> {
    let g = GroupParams::new(q)?;
    let mut rep = Report::new("sl3", q);
    let mut flagged = 0;
    for tau in g.irreps() {
        match witness_no_gelfand(&tau, &g) {
            Ok(w) => {
                flagged += w.exceeds_two_for_x as usize;
                let ok = w.mult == w.expected && w.mult >= 2;
                rep.expect(ok, json!({"ok": ok, "tau": w.tau, "witness": w.pi, "mult": w.mult,
                    "expected": w.expected, "exceeds_two_for_x": w.exceeds_two_for_x}));
            }
            Err(e) => rep.fail(json!({"ok": false, "tau": tau.to_string(), "error": e.to_string()})),
        }
    }
    rep.note(json!({"ok": true, "d": g.d, "x_labels_exceeding_two": flagged}));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_parsing() {
        assert_eq!(Suite::parse_selector("all").unwrap().len(), Suite::ALL.len());
        assert_eq!(Suite::parse_selector("tensor-agree").unwrap(), vec![Suite::TensorAgree]);
        assert!(matches!("nope".parse::<Suite>(), Err(SuiteError::Unknown(_))));
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn ranges_enforced() {
        assert!(matches!(run_suite(Suite::Harmonic, 4, 0), Err(SuiteError::QOutOfRange { .. })));
        assert!(matches!(run_suite(Suite::IndxCounts, 2, 0), Err(SuiteError::QOutOfRange { .. })));
        assert!(matches!(run_suite(Suite::Gelfand, 6, 0), Err(SuiteError::Gl2(_))));
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::TensorAgree, Suite::Gelfand, Suite::Sl3, Suite::S4Fixture, Suite::Census] {
            let r = run_suite(s, 3, 1).unwrap();
            assert!(r.pass, "{r}: {:?}", r.first_failure());
        }
        let r = freeness(4).unwrap();
        assert!(r.pass);
        let r = run_suite(Suite::Gelfand, 2, 0).unwrap();
        assert!(!r.pass);
        assert_eq!(r.details[0]["gelfand"], json!(["U:0", "V:0", "X:1"]));
        let r = run_suite(Suite::IndxCounts, 5, 0).unwrap();
        assert!(r.pass, "{:?}", r.first_failure());
    }
}
