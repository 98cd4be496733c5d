//! Lifts of tropical matrices into the series field, Kapranov-rank
//! bounding, and the built-in 6x6 example with tropical rank 4 and
//! Kapranov rank 5.
//!
//! A series matrix `L` lifts a tropical matrix `M` when the entry-wise
//! valuations of `L` equal the entries of `M` (in particular no entry of
//! `L` is zero). The rank of any lift over the series field is an upper
//! bound for the Kapranov rank of `M`; the tropical rank is a lower
//! bound. Exact Kapranov rank computation is NP-hard and out of scope.
//!
//! [`certify_rank5`] is the rank lower-bound engine for lifts of the
//! built-in matrix A. It pivots on the 2x2 subdeterminant
//! `delta_series = h33*h44 - h34*h43` (1-based indices) and its valuation
//! `delta`: depending on how `delta` compares with 1, one of the two 5x5
//! minors H25 (delete row 2, column 5) or H61 (delete row 6, column 1)
//! provably has a specific finite valuation, hence is nonzero, hence the
//! lift has rank at least 5. The trichotomy is re-verified here on the
//! exact minors rather than assumed; a violation would falsify the
//! implementation and is reported as an error.

// error payloads carry exact rationals; the size is intentional
#![allow(clippy::result_large_err)]

use std::fmt;

use thiserror::Error;

use crate::comb::SubmatrixSelector;
use crate::puiseux::{determinant, rank, PuiseuxMatrix, PuiseuxSeries, SeriesError, Valuation};
use crate::rng::SplitMix64;
use crate::trop::TropicalMatrix;
use crate::{rat, Rat, Series, SeriesMat, TropMat, Val};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("lift is {lift_rows}x{lift_cols} but base is {base_rows}x{base_cols}")]
    DimensionMismatch {
        lift_rows: usize,
        lift_cols: usize,
        base_rows: usize,
        base_cols: usize,
    },
    #[error("entry ({row},{col}) is the zero series, so its valuation is infinite")]
    ZeroEntry { row: usize, col: usize },
    #[error("entry ({row},{col}) has valuation {actual}, expected {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: Rat,
        actual: Rat,
    },
    #[error("matrix is {rows}x{cols}, expected 6x6")]
    NotSixBySix { rows: usize, cols: usize },
    #[error("not a lift of the built-in matrix A: {0}")]
    NotALiftOfA(Box<LiftError>),
    #[error("certificate trichotomy violated (delta={delta}, case {case}): expected deg {expected}, computed {actual}")]
    TrichotomyViolation {
        delta: Val,
        case: DeltaCase,
        expected: Val,
        actual: Val,
    },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn s(terms: &[(i64, i64)]) -> Series {
    Series::from_terms(terms.iter().map(|&(c, e)| (rat(c), rat(e))))
}

/// The built-in 6x6 tropical matrix A (tropical rank 4, Kapranov rank 5).
pub fn example_matrix_a() -> TropMat {
    let data: [[i64; 6]; 6] = [
        [0, 0, 4, 4, 4, 4],
        [0, 0, 2, 4, 1, 4],
        [4, 4, 0, 0, 4, 4],
        [2, 4, 0, 0, 2, 4],
        [4, 4, 4, 4, 0, 0],
        [2, 4, 1, 4, 0, 0],
    ];
    TropicalMatrix::from_rows(
        data.iter()
            .map(|row| row.iter().map(|&x| rat(x)).collect())
            .collect(),
    )
}

/// The built-in rank-5 lift M0 of [`example_matrix_a`]. Its rows sum to
/// the zero row, so its rank is at most 5.
///
/// Entry by entry (terms are `(coefficient, exponent)` pairs):
///
/// ```text
///  1      1     t^4      t^4    t^4       t^4
/// -1     -1     t^2      t^4    t         t^4
///  t^4    t^4   1-t^2    1     -t^4      -t^4
///  t^2    t^4   -1-t    -1      t^2      -t^4
/// -t^4   -t^4   -t^4    -t^4   -1-t^2     1
/// -t^2   -t^4   t       -t^4    1-t      -1
/// ```
#[rustfmt::skip]
pub fn example_lift_m0() -> SeriesMat {
    let rows: Vec<Vec<Series>> = vec![
        vec![s(&[(1, 0)]),  s(&[(1, 0)]),  s(&[(1, 4)]),           s(&[(1, 4)]),  s(&[(1, 4)]),           s(&[(1, 4)])],
        vec![s(&[(-1, 0)]), s(&[(-1, 0)]), s(&[(1, 2)]),           s(&[(1, 4)]),  s(&[(1, 1)]),           s(&[(1, 4)])],
        vec![s(&[(1, 4)]),  s(&[(1, 4)]),  s(&[(1, 0), (-1, 2)]),  s(&[(1, 0)]),  s(&[(-1, 4)]),          s(&[(-1, 4)])],
        vec![s(&[(1, 2)]),  s(&[(1, 4)]),  s(&[(-1, 0), (-1, 1)]), s(&[(-1, 0)]), s(&[(1, 2)]),           s(&[(-1, 4)])],
        vec![s(&[(-1, 4)]), s(&[(-1, 4)]), s(&[(-1, 4)]),          s(&[(-1, 4)]), s(&[(-1, 0), (-1, 2)]), s(&[(1, 0)])],
        vec![s(&[(-1, 2)]), s(&[(-1, 4)]), s(&[(1, 1)]),           s(&[(-1, 4)]), s(&[(1, 0), (-1, 1)]),  s(&[(-1, 0)])],
    ];
    PuiseuxMatrix::from_rows(rows)
}

/// Entry-wise valuations of a series matrix with no zero entries.
pub fn degree_matrix(lift: &SeriesMat) -> Result<TropMat, LiftError> {
    let mut rows = Vec::with_capacity(lift.rows());
    for i in 0..lift.rows() {
        let mut row = Vec::with_capacity(lift.cols());
        for j in 0..lift.cols() {
            match lift.get(i, j).deg() {
                Valuation::Finite(d) => row.push(d),
                Valuation::Infinity => {
                    return Err(LiftError::ZeroEntry {
                        row: i + 1,
                        col: j + 1,
                    })
                }
            }
        }
        rows.push(row);
    }
    Ok(TropicalMatrix::from_rows(rows))
}

/// Checks the lift property entry by entry, reporting the first offending
/// cell in row-major order.
pub fn check_lift(lift: &SeriesMat, base: &TropMat) -> Result<(), LiftError> {
    if lift.rows() != base.rows() || lift.cols() != base.cols() {
        return Err(LiftError::DimensionMismatch {
            lift_rows: lift.rows(),
            lift_cols: lift.cols(),
            base_rows: base.rows(),
            base_cols: base.cols(),
        });
    }
    for i in 0..lift.rows() {
        for j in 0..lift.cols() {
            match lift.get(i, j).deg() {
                Valuation::Infinity => {
                    return Err(LiftError::ZeroEntry {
                        row: i + 1,
                        col: j + 1,
                    })
                }
                Valuation::Finite(d) => {
                    if d != *base.get(i, j) {
                        return Err(LiftError::DegreeMismatch {
                            row: i + 1,
                            col: j + 1,
                            expected: base.get(i, j).clone(),
                            actual: d,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// True iff `lift` is a lift of `base`.
pub fn is_lift(lift: &SeriesMat, base: &TropMat) -> bool {
    check_lift(lift, base).is_ok()
}

/// A series matrix bundled with the tropical matrix it lifts; the lift
/// property is validated at construction and holds for the lifetime of
/// the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPair {
    base: TropMat,
    lift: SeriesMat,
}

impl LiftPair {
    pub fn new(base: TropMat, lift: SeriesMat) -> Result<Self, LiftError> {
        check_lift(&lift, &base)?;
        Ok(LiftPair { base, lift })
    }

    pub fn base(&self) -> &TropMat {
        &self.base
    }

    pub fn lift(&self) -> &SeriesMat {
        &self.lift
    }

    /// Rank of the lift over the series field, an upper bound for the
    /// Kapranov rank of the base.
    pub fn upper_bound(&self) -> Result<usize, LiftError> {
        Ok(rank(&self.lift)?)
    }
}

/// Rank of `lift` over the series field, a valid upper bound for the
/// Kapranov rank of `base`. Errors unless `lift` actually lifts `base`.
pub fn kapranov_upper_bound(base: &TropMat, lift: &SeriesMat) -> Result<usize, LiftError> {
    check_lift(lift, base)?;
    Ok(rank(lift)?)
}

/// The pivot 2x2 subdeterminant `h33*h44 - h34*h43` (1-based indices) of a
/// 6x6 series matrix.
pub fn delta_series(lift: &SeriesMat) -> Result<Series, LiftError> {
    if lift.rows() != 6 || lift.cols() != 6 {
        return Err(LiftError::NotSixBySix {
            rows: lift.rows(),
            cols: lift.cols(),
        });
    }
    let prod_diag = lift.get(2, 2) * lift.get(3, 3);
    let prod_anti = lift.get(2, 3) * lift.get(3, 2);
    Ok(&prod_diag - &prod_anti)
}

/// The valuation `delta` of [`delta_series`]; infinite when the
/// subdeterminant vanishes.
pub fn delta_of(lift: &SeriesMat) -> Result<Val, LiftError> {
    Ok(delta_series(lift)?.deg())
}

/// Which branch of the certificate's case split on `delta` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCase {
    BelowOne,
    EqualOne,
    AboveOne,
}

impl fmt::Display for DeltaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            DeltaCase::BelowOne => "lt",
            DeltaCase::EqualOne => "eq",
            DeltaCase::AboveOne => "gt",
        };
        write!(f, "{tag}")
    }
}

/// Result of [`certify_rank5`]: the case taken and the exact minor data
/// establishing rank >= 5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    /// Valuation of the pivot subdeterminant (infinite if it vanishes).
    pub delta: Val,
    /// Exact valuation of the minor deleting row 2 and column 5.
    pub deg_h25: Val,
    /// Exact valuation of the minor deleting row 6 and column 1.
    pub deg_h61: Val,
    pub case: DeltaCase,
    /// Selector of the 5x5 minor the case predicts to be nonzero.
    pub nonzero_minor: SubmatrixSelector,
    /// Always 5 when the certificate succeeds.
    pub rank_lower_bound: usize,
}

fn selector_h25() -> SubmatrixSelector {
    SubmatrixSelector::from_one_based(&[1, 3, 4, 5, 6], &[1, 2, 3, 4, 6])
}

fn selector_h61() -> SubmatrixSelector {
    SubmatrixSelector::from_one_based(&[1, 2, 3, 4, 5], &[2, 3, 4, 5, 6])
}

/// Certifies that a lift of the built-in matrix A has rank at least 5.
///
/// Computes `delta` and the exact 5x5 minors H25 and H61, then checks the
/// predicted valuation for the applicable case:
///
/// * `delta > 1` (including infinite): `deg(H25) = 3`;
/// * `delta < 1`: `deg(H25) = 2 + delta`;
/// * `delta = 1`: `deg(H61) = 2`.
///
/// A finite valuation means the minor is a nonzero series, so the lift
/// has rank at least 5.
pub fn certify_rank5(lift: &SeriesMat) -> Result<CertificateReport, LiftError> {
    let a = example_matrix_a();
    check_lift(lift, &a).map_err(|e| LiftError::NotALiftOfA(Box::new(e)))?;

    let delta = delta_of(lift)?;
    let h25 = determinant(&lift.minor_deleting(1, 4))?;
    let h61 = determinant(&lift.minor_deleting(5, 0))?;
    let deg_h25 = h25.deg();
    let deg_h61 = h61.deg();

    let one = Valuation::Finite(rat(1));
    let (case, expected, actual, nonzero_minor) = match delta.cmp(&one) {
        std::cmp::Ordering::Greater => (
            DeltaCase::AboveOne,
            Valuation::Finite(rat(3)),
            deg_h25.clone(),
            selector_h25(),
        ),
        std::cmp::Ordering::Less => {
            let d = delta.as_finite().expect("delta < 1 is finite").clone();
            (
                DeltaCase::BelowOne,
                Valuation::Finite(rat(2) + d),
                deg_h25.clone(),
                selector_h25(),
            )
        }
        std::cmp::Ordering::Equal => (
            DeltaCase::EqualOne,
            Valuation::Finite(rat(2)),
            deg_h61.clone(),
            selector_h61(),
        ),
    };
    if actual != expected {
        return Err(LiftError::TrichotomyViolation {
            delta,
            case,
            expected,
            actual,
        });
    }
    Ok(CertificateReport {
        delta,
        deg_h25,
        deg_h61,
        case,
        nonzero_minor,
        rank_lower_bound: 5,
    })
}

/// Coefficients drawn by [`random_lift`]: nonzero integers in [-5, 5].
const COEFF_POOL: [i64; 10] = [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5];

/// Deterministic-per-seed random lift of `base`.
///
/// Entry `(i, j)` is `c0 * t^(base[i][j]) + sum_k ck * t^(base[i][j] + k*step)`
/// with `1 <= k <= e`, `e <= max_extra_terms` drawn per entry and all
/// coefficients from [`COEFF_POOL`]. The leading coefficient is nonzero by
/// construction, so the result always lifts `base`.
pub fn random_lift(base: &TropMat, seed: u64, max_extra_terms: usize, step: &Rat) -> SeriesMat {
    assert!(
        step > &Rat::from_integer(0.into()),
        "exponent step must be positive"
    );
    let mut rng = SplitMix64::new(seed);
    PuiseuxMatrix::from_fn(base.rows(), base.cols(), |i, j| {
        let lead = base.get(i, j).clone();
        let extra = rng.next_below(max_extra_terms as u64 + 1) as usize;
        let mut terms = Vec::with_capacity(extra + 1);
        terms.push((rat(COEFF_POOL[rng.next_below(10) as usize]), lead.clone()));
        for k in 1..=extra {
            let c = rat(COEFF_POOL[rng.next_below(10) as usize]);
            terms.push((c, lead.clone() + rat(k as i64) * step));
        }
        PuiseuxSeries::from_terms(terms)
    })
}

/// One line of the end-to-end example checklist.
#[derive(Clone, Debug)]
pub struct ExampleCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the end-to-end reproduction of the built-in example.
#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub checks: Vec<ExampleCheck>,
}

impl ExampleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the full checklist on the built-in A and M0: the tropical rank of
/// A is 4, M0 lifts A with rank exactly 5, and the rank-5 certificate
/// holds, so the Kapranov rank of A is 5.
pub fn verify_example() -> ExampleReport {
    verify_example_for(&example_matrix_a(), &example_lift_m0())
}

/// Same checklist against caller-supplied stand-ins for A and M0 (used by
/// self-tests with deliberately corrupted data).
pub fn verify_example_for(a: &TropMat, m0: &SeriesMat) -> ExampleReport {
    let checks = vec![
        check_all_5x5_singular(a),
        check_4x4_witness(a),
        check_tropical_rank(a),
        check_lift_rank(a, m0),
        check_certificate(m0),
    ];
    ExampleReport { checks }
}

fn check_all_5x5_singular(a: &TropMat) -> ExampleCheck {
    let name = "every 5x5 submatrix of A is tropically singular";
    let result = (|| -> Result<(usize, usize), String> {
        let mut total = 0;
        let mut singular = 0;
        for (sel, sub) in crate::trop::all_square_submatrices(a, 5).map_err(|e| e.to_string())? {
            total += 1;
            if crate::trop::is_tropically_singular(&sub).map_err(|e| e.to_string())? {
                singular += 1;
            } else {
                return Err(format!("nonsingular 5x5 submatrix at {sel}"));
            }
        }
        Ok((singular, total))
    })();
    match result {
        Ok((singular, total)) => ExampleCheck {
            name,
            pass: singular == total && total > 0,
            detail: format!("{singular} of {total} singular"),
        },
        Err(detail) => ExampleCheck {
            name,
            pass: false,
            detail,
        },
    }
}

fn check_4x4_witness(a: &TropMat) -> ExampleCheck {
    let name = "the 4x4 witness submatrix has a unique minimizing permutation";
    let sel = SubmatrixSelector::from_one_based(&[1, 2, 4, 6], &[1, 4, 5, 6]);
    let result = (|| -> Result<String, String> {
        let sub = a.submatrix(&sel).map_err(|e| e.to_string())?;
        let cert = crate::trop::permanent(&sub).map_err(|e| e.to_string())?;
        let expected_witness = crate::comb::Permutation::from_one_based(&[1, 3, 2, 4]);
        if cert.value != rat(1) {
            return Err(format!("permanent is {}, expected 1", cert.value));
        }
        if cert.optimal_count() != 1 {
            return Err(format!(
                "{} optimal permutations, expected 1",
                cert.optimal_count()
            ));
        }
        if cert.witnesses[0] != expected_witness {
            return Err(format!(
                "minimizer {}, expected [1,3,2,4]",
                cert.witnesses[0]
            ));
        }
        Ok(format!(
            "value=1 unique minimizer {} at {sel}",
            cert.witnesses[0]
        ))
    })();
    match result {
        Ok(detail) => ExampleCheck {
            name,
            pass: true,
            detail,
        },
        Err(detail) => ExampleCheck {
            name,
            pass: false,
            detail,
        },
    }
}

fn check_tropical_rank(a: &TropMat) -> ExampleCheck {
    let name = "the tropical rank of A is 4";
    match crate::trop::tropical_rank(a) {
        Ok((4, sel)) => ExampleCheck {
            name,
            pass: true,
            detail: format!("rank=4 witness {sel}"),
        },
        Ok((r, _)) => ExampleCheck {
            name,
            pass: false,
            detail: format!("rank={r}, expected 4"),
        },
        Err(e) => ExampleCheck {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn check_lift_rank(a: &TropMat, m0: &SeriesMat) -> ExampleCheck {
    let name = "M0 lifts A, its rows sum to zero, and its rank is 5";
    let result = (|| -> Result<String, String> {
        check_lift(m0, a).map_err(|e| e.to_string())?;
        if !m0.row_sum().iter().all(|series| series.is_zero()) {
            return Err("row sum is not the zero vector".into());
        }
        let r = rank(m0).map_err(|e| e.to_string())?;
        if r != 5 {
            return Err(format!("rank={r}, expected 5"));
        }
        Ok("lift ok, zero row sum, rank=5".into())
    })();
    match result {
        Ok(detail) => ExampleCheck {
            name,
            pass: true,
            detail,
        },
        Err(detail) => ExampleCheck {
            name,
            pass: false,
            detail,
        },
    }
}

fn check_certificate(m0: &SeriesMat) -> ExampleCheck {
    let name = "the rank-5 certificate holds for M0";
    match certify_rank5(m0) {
        Ok(report)
            if report.delta == Valuation::Finite(rat(1))
                && report.case == DeltaCase::EqualOne
                && report.deg_h61 == Valuation::Finite(rat(2)) =>
        {
            ExampleCheck {
                name,
                pass: true,
                detail: format!(
                    "delta={} case={} deg_H61={} nonzero minor {}",
                    report.delta, report.case, report.deg_h61, report.nonzero_minor
                ),
            }
        }
        Ok(report) => ExampleCheck {
            name,
            pass: false,
            detail: format!(
                "unexpected certificate: delta={} case={} deg_H25={} deg_H61={}",
                report.delta, report.case, report.deg_h25, report.deg_h61
            ),
        },
        Err(e) => ExampleCheck {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}
