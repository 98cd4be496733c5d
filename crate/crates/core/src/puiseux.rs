//! Finite Puiseux series with exact coefficients and exponents, the
//! valuation `deg`, and exact linear algebra over the series ring.
//!
//! A series is a finite sum of terms `c * t^e` kept in canonical form:
//! strictly increasing exponents, no zero coefficients, the empty sum
//! being zero. Equality of canonical forms is therefore structural.
//!
//! The valuation of a nonzero series is its least exponent; `deg(0)` is
//! infinite. It is multiplicative (`deg(ab) = deg(a) + deg(b)`) and
//! ultrametric-like on sums (`deg(a+b) >= min(deg(a), deg(b))`, with
//! equality when the two valuations differ).
//!
//! Because every series here is a finite sum, rank is computed from
//! minors: determinants use only ring operations and exact zero tests,
//! never division.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::comb::{combinations, SubmatrixSelector};
use crate::num::ExactScalar;
use crate::trop::DEFAULT_THRESHOLD;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {n} exceeds expansion threshold {threshold}")]
    TooLarge { n: usize, threshold: usize },
    #[error("selector out of bounds for a {rows}x{cols} matrix")]
    SelectorOutOfBounds { rows: usize, cols: usize },
}

/// One term `coeff * t^exp` of a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<T> {
    pub coeff: T,
    pub exp: T,
}

/// A finite formal sum of rational powers of `t`, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PuiseuxSeries<T> {
    terms: Vec<Term<T>>,
}

impl<T: ExactScalar> PuiseuxSeries<T> {
    pub fn zero() -> Self {
        PuiseuxSeries { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, T::zero())
    }

    /// The single-term series `c * t^e` (zero if `c` is zero).
    pub fn monomial(c: T, e: T) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            PuiseuxSeries {
                terms: vec![Term { coeff: c, exp: e }],
            }
        }
    }

    /// Canonicalizes an arbitrary bag of `(coeff, exp)` pairs: terms with
    /// equal exponents are merged and zero coefficients dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (T, T)>) -> Self {
        let mut acc: BTreeMap<T, T> = BTreeMap::new();
        for (c, e) in terms {
            match acc.get_mut(&e) {
                Some(existing) => *existing += c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        PuiseuxSeries {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exp, coeff)| Term { coeff, exp })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonical term list, exponents strictly increasing.
    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    /// The lowest-exponent term, if any.
    pub fn leading(&self) -> Option<&Term<T>> {
        self.terms.first()
    }

    /// The valuation: least exponent of a nonzero term, infinite for zero.
    pub fn deg(&self) -> Valuation<T> {
        match self.terms.first() {
            Some(t) => Valuation::Finite(t.exp.clone()),
            None => Valuation::Infinity,
        }
    }
}

impl<T: ExactScalar> Add for &PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;

    fn add(self, rhs: &PuiseuxSeries<T>) -> PuiseuxSeries<T> {
        // merge of two strictly increasing term lists
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), rhs.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(ta), Some(tb)) => match ta.exp.cmp(&tb.exp) {
                    std::cmp::Ordering::Less => out.push((*a.next().unwrap()).clone()),
                    std::cmp::Ordering::Greater => out.push((*b.next().unwrap()).clone()),
                    std::cmp::Ordering::Equal => {
                        let ta = a.next().unwrap();
                        let tb = b.next().unwrap();
                        let c = ta.coeff.clone() + tb.coeff.clone();
                        if !c.is_zero() {
                            out.push(Term {
                                coeff: c,
                                exp: ta.exp.clone(),
                            });
                        }
                    }
                },
                (Some(_), None) => out.push((*a.next().unwrap()).clone()),
                (None, Some(_)) => out.push((*b.next().unwrap()).clone()),
                (None, None) => break,
            }
        }
        PuiseuxSeries { terms: out }
    }
}

impl<T: ExactScalar> Neg for &PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;

    fn neg(self) -> PuiseuxSeries<T> {
        PuiseuxSeries {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff.clone(),
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }
}

impl<T: ExactScalar> Sub for &PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;

    fn sub(self, rhs: &PuiseuxSeries<T>) -> PuiseuxSeries<T> {
        self + &(-rhs)
    }
}

impl<T: ExactScalar> Mul for &PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;

    fn mul(self, rhs: &PuiseuxSeries<T>) -> PuiseuxSeries<T> {
        let mut acc: BTreeMap<T, T> = BTreeMap::new();
        for ta in &self.terms {
            for tb in &rhs.terms {
                let e = ta.exp.clone() + tb.exp.clone();
                let c = ta.coeff.clone() * tb.coeff.clone();
                match acc.get_mut(&e) {
                    Some(existing) => *existing += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        PuiseuxSeries {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(exp, coeff)| Term { coeff, exp })
                .collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<T: ExactScalar> $trait for PuiseuxSeries<T> {
            type Output = PuiseuxSeries<T>;
            fn $method(self, rhs: PuiseuxSeries<T>) -> PuiseuxSeries<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: ExactScalar> Neg for PuiseuxSeries<T> {
    type Output = PuiseuxSeries<T>;
    fn neg(self) -> PuiseuxSeries<T> {
        -&self
    }
}

/// The value of the valuation map: a finite exponent or infinity.
///
/// `Finite(_) < Infinity`, and finite values compare by exponent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation<T> {
    Finite(T),
    Infinity,
}

impl<T: ExactScalar> Valuation<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn as_finite(&self) -> Option<&T> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl<T: ExactScalar> Add for Valuation<T> {
    type Output = Valuation<T>;

    // valuations add under multiplication of series; infinity absorbs
    fn add(self, rhs: Valuation<T>) -> Valuation<T> {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl<T: ExactScalar> Add<T> for Valuation<T> {
    type Output = Valuation<T>;

    fn add(self, rhs: T) -> Valuation<T> {
        self + Valuation::Finite(rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Valuation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// A dense rectangular matrix of Puiseux series, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<PuiseuxSeries<T>>,
}

impl<T: ExactScalar> PuiseuxMatrix<T> {
    /// Builds a matrix from rows. Panics if `rows` is empty or ragged.
    pub fn from_rows(rows: Vec<Vec<PuiseuxSeries<T>>>) -> Self {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(cols >= 1, "matrix must have at least one column");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        PuiseuxMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> PuiseuxSeries<T>,
    ) -> Self {
        assert!(rows >= 1 && cols >= 1);
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PuiseuxMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                PuiseuxSeries::one()
            } else {
                PuiseuxSeries::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PuiseuxSeries<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: PuiseuxSeries<T>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, sel: &SubmatrixSelector) -> Result<Self, SeriesError> {
        if !sel.in_bounds(self.rows, self.cols) {
            return Err(SeriesError::SelectorOutOfBounds {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Self::from_fn(sel.rows().len(), sel.cols().len(), |i, j| {
            self.get(sel.rows()[i], sel.cols()[j]).clone()
        }))
    }

    /// The submatrix obtained by deleting one row and one column (0-based).
    /// Panics unless the matrix is at least 2x2 and the indices are in range.
    pub fn minor_deleting(&self, row: usize, col: usize) -> Self {
        assert!(
            row < self.rows && col < self.cols,
            "minor indices out of range"
        );
        assert!(
            self.rows >= 2 && self.cols >= 2,
            "matrix too small for a minor"
        );
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.submatrix(&SubmatrixSelector::new(rows, cols))
            .expect("indices in range")
    }

    /// Column-wise sums over all rows, i.e. the vector whose j-th entry is
    /// the sum of column j.
    pub fn row_sum(&self) -> Vec<PuiseuxSeries<T>> {
        (0..self.cols)
            .map(|j| {
                let mut acc = PuiseuxSeries::zero();
                for i in 0..self.rows {
                    acc = &acc + self.get(i, j);
                }
                acc
            })
            .collect()
    }

    /// Entry-wise valuations.
    pub fn deg_matrix(&self) -> Vec<Vec<Valuation<T>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).deg()).collect())
            .collect()
    }
}

/// Exact determinant with the default expansion threshold.
pub fn determinant<T: ExactScalar>(m: &PuiseuxMatrix<T>) -> Result<PuiseuxSeries<T>, SeriesError> {
    determinant_with_threshold(m, DEFAULT_THRESHOLD)
}

/// Exact determinant: the full signed permutation expansion
/// `sum_sigma sign(sigma) prod_i m[i][sigma(i)]`, evaluated by Laplace
/// expansion over column subsets so each of the 2^n subproblems is
/// computed once. Ring operations only, no division.
pub fn determinant_with_threshold<T: ExactScalar>(
    m: &PuiseuxMatrix<T>,
    threshold: usize,
) -> Result<PuiseuxSeries<T>, SeriesError> {
    if !m.is_square() {
        return Err(SeriesError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > threshold {
        return Err(SeriesError::TooLarge { n, threshold });
    }

    // minor_det[mask] = det of the submatrix on rows 0..k-1 and the k
    // columns in mask, where k = popcount(mask)
    let full = 1usize << n;
    let mut minor_det: Vec<PuiseuxSeries<T>> = vec![PuiseuxSeries::zero(); full];
    minor_det[0] = PuiseuxSeries::one();
    for mask in 1..full {
        let k = mask.count_ones() as usize;
        let row = k - 1;
        let mut acc = PuiseuxSeries::zero();
        let mut pos = 0usize;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = m.get(row, j);
            if !entry.is_zero() {
                let cofactor = entry * &minor_det[mask ^ (1 << j)];
                if (row + pos).is_multiple_of(2) {
                    acc = &acc + &cofactor;
                } else {
                    acc = &acc - &cofactor;
                }
            }
            pos += 1;
        }
        minor_det[mask] = acc;
    }
    Ok(minor_det[full - 1].clone())
}

/// Rank over the series field with the default threshold.
pub fn rank<T: ExactScalar>(m: &PuiseuxMatrix<T>) -> Result<usize, SeriesError> {
    rank_with_threshold(m, DEFAULT_THRESHOLD)
}

/// Largest `r` such that some `r x r` minor is a nonzero series, found by
/// descending search with early exit. Zero matrices have rank 0.
pub fn rank_with_threshold<T: ExactScalar>(
    m: &PuiseuxMatrix<T>,
    threshold: usize,
) -> Result<usize, SeriesError> {
    let max_r = m.rows().min(m.cols());
    if max_r > threshold {
        return Err(SeriesError::TooLarge {
            n: max_r,
            threshold,
        });
    }
    for r in (1..=max_r).rev() {
        for row_set in combinations(m.rows(), r) {
            for col_set in combinations(m.cols(), r) {
                let sel = SubmatrixSelector::new(row_set.clone(), col_set);
                let sub = m.submatrix(&sel)?;
                if !determinant_with_threshold(&sub, threshold)?.is_zero() {
                    return Ok(r);
                }
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = PuiseuxSeries<i64>;

    fn s(terms: &[(i64, i64)]) -> S {
        S::from_terms(terms.iter().copied())
    }

    #[test]
    fn add_cancels() {
        // (1 - t^2) + t^2 = 1
        let a = s(&[(1, 0), (-1, 2)]);
        let b = s(&[(1, 2)]);
        assert_eq!(&a + &b, s(&[(1, 0)]));
    }

    #[test]
    fn add_merges_like_terms() {
        let t = s(&[(1, 1)]);
        assert_eq!(&t + &t, s(&[(2, 1)]));
        assert_eq!(&t + &S::zero(), t);
    }

    #[test]
    fn mul_expands() {
        // (1 + t)(1 - t) = 1 - t^2
        let a = s(&[(1, 0), (1, 1)]);
        let b = s(&[(1, 0), (-1, 1)]);
        assert_eq!(&a * &b, s(&[(1, 0), (-1, 2)]));
        assert_eq!(&a * &S::zero(), S::zero());
    }

    #[test]
    fn deg_of_zero_is_infinite() {
        assert_eq!(S::zero().deg(), Valuation::Infinity);
        assert_eq!(s(&[(1, 0), (-1, 2)]).deg(), Valuation::Finite(0));
        assert_eq!(s(&[(-1, 4)]).deg(), Valuation::Finite(4));
    }

    #[test]
    fn valuation_order_and_sum() {
        assert!(Valuation::Finite(3) < Valuation::Infinity);
        assert!(Valuation::Finite(2) < Valuation::Finite(3));
        assert_eq!(
            Valuation::Finite(2) + Valuation::Finite(3),
            Valuation::Finite(5)
        );
        assert_eq!(
            Valuation::Finite(2) + Valuation::<i64>::Infinity,
            Valuation::Infinity
        );
    }

    #[test]
    fn determinant_of_identity() {
        let id = PuiseuxMatrix::<i64>::identity(4);
        assert_eq!(determinant(&id).unwrap(), S::one());
    }

    #[test]
    fn determinant_of_equal_rows_vanishes() {
        let row = vec![s(&[(1, 0)]), s(&[(1, 0)])];
        let m = PuiseuxMatrix::from_rows(vec![row.clone(), row]);
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn determinant_2x2_signs() {
        // det [[t, 1], [1, t]] = t^2 - 1
        let m = PuiseuxMatrix::from_rows(vec![
            vec![s(&[(1, 1)]), s(&[(1, 0)])],
            vec![s(&[(1, 0)]), s(&[(1, 1)])],
        ]);
        assert_eq!(determinant(&m).unwrap(), s(&[(-1, 0), (1, 2)]));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(rank(&PuiseuxMatrix::<i64>::identity(3)).unwrap(), 3);
        let zero = PuiseuxMatrix::from_fn(2, 3, |_, _| S::zero());
        assert_eq!(rank(&zero).unwrap(), 0);
        // rank 1: second row is t times the first
        let m = PuiseuxMatrix::from_rows(vec![
            vec![s(&[(1, 0)]), s(&[(2, 0)])],
            vec![s(&[(1, 1)]), s(&[(2, 1)])],
        ]);
        assert_eq!(rank(&m).unwrap(), 1);
    }

    #[test]
    fn row_sum_shapes() {
        let id = PuiseuxMatrix::<i64>::identity(2);
        assert_eq!(id.row_sum(), vec![S::one(), S::one()]);
        let single = PuiseuxMatrix::from_rows(vec![vec![s(&[(1, 1)]), s(&[(3, 0)])]]);
        assert_eq!(single.row_sum(), vec![s(&[(1, 1)]), s(&[(3, 0)])]);
    }

    #[test]
    fn threshold_errors() {
        let big = PuiseuxMatrix::<i64>::identity(9);
        assert!(matches!(
            determinant(&big),
            Err(SeriesError::TooLarge { n: 9, threshold: 8 })
        ));
        assert!(matches!(rank(&big), Err(SeriesError::TooLarge { .. })));
        let rect = PuiseuxMatrix::from_fn(2, 3, |_, _| S::one());
        assert!(matches!(
            determinant(&rect),
            Err(SeriesError::NotSquare { .. })
        ));
    }
}
