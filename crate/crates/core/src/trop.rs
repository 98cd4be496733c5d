//! Min-plus (tropical) matrices: permanents with multiplicity, singularity,
//! and tropical rank.
//!
//! The semiring is (scalar, min, +). Entries are always finite; there is
//! no additive-identity infinity element here. The permanent of a square
//! matrix is the minimum over all permutations of the diagonal-product
//! sum, i.e. the optimal assignment value. A square matrix is tropically
//! singular when that minimum is attained by at least two permutations,
//! and the tropical rank of a rectangular matrix is the size of its
//! largest tropically nonsingular square submatrix.
//!
//! Permanents are computed by exhaustive permutation enumeration so the
//! full set of minimizers is known exactly; [`permanent_value_fast`] is an
//! assignment-solver shortcut for the value alone.

use std::fmt;

use thiserror::Error;

use crate::assignment;
use crate::comb::{combinations, Permutation, SubmatrixSelector};
use crate::num::ExactScalar;

/// Largest dimension accepted by the enumeration-based operations.
pub const DEFAULT_THRESHOLD: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {n} exceeds enumeration threshold {threshold}")]
    TooLarge { n: usize, threshold: usize },
    #[error("submatrix order {k} out of range 1..={max}")]
    OrderOutOfRange { k: usize, max: usize },
    #[error("selector out of bounds for a {rows}x{cols} matrix")]
    SelectorOutOfBounds { rows: usize, cols: usize },
}

/// Tropical addition: `min(a, b)`.
pub fn trop_add<T: ExactScalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// Tropical multiplication: `a + b`.
pub fn trop_mul<T: ExactScalar>(a: T, b: T) -> T {
    a + b
}

/// A dense rectangular matrix over the tropical semiring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: ExactScalar> TropicalMatrix<T> {
    /// Builds a matrix from rows. Panics if `rows` is empty or ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(cols >= 1, "matrix must have at least one column");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        let entries = rows.into_iter().flatten().collect();
        TropicalMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows >= 1 && cols >= 1);
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        TropicalMatrix {
            rows,
            cols,
            entries,
        }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Cuts out the submatrix named by `sel`.
    pub fn submatrix(&self, sel: &SubmatrixSelector) -> Result<Self, TropError> {
        if !sel.in_bounds(self.rows, self.cols) {
            return Err(TropError::SelectorOutOfBounds {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(Self::from_fn(sel.rows().len(), sel.cols().len(), |i, j| {
            self.get(sel.rows()[i], sel.cols()[j]).clone()
        }))
    }
}

impl<T: ExactScalar> fmt::Display for TropicalMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// The tropical permanent value together with every permutation attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermanentCertificate<T> {
    /// Minimum over all permutations of the diagonal sum.
    pub value: T,
    /// Every minimizing permutation, in lexicographic one-line order.
    pub witnesses: Vec<Permutation>,
}

impl<T> PermanentCertificate<T> {
    /// Number of permutations attaining the minimum (always >= 1).
    pub fn optimal_count(&self) -> usize {
        self.witnesses.len()
    }
}

fn require_square<T: ExactScalar>(m: &TropicalMatrix<T>) -> Result<usize, TropError> {
    if !m.is_square() {
        return Err(TropError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.rows())
}

fn require_within<T: ExactScalar>(
    m: &TropicalMatrix<T>,
    threshold: usize,
) -> Result<usize, TropError> {
    let n = require_square(m)?;
    if n > threshold {
        return Err(TropError::TooLarge { n, threshold });
    }
    Ok(n)
}

/// Tropical permanent by exhaustive enumeration of all n! permutations,
/// using the default threshold.
pub fn permanent<T: ExactScalar>(
    m: &TropicalMatrix<T>,
) -> Result<PermanentCertificate<T>, TropError> {
    permanent_with_threshold(m, DEFAULT_THRESHOLD)
}

/// Tropical permanent with an explicit enumeration threshold.
pub fn permanent_with_threshold<T: ExactScalar>(
    m: &TropicalMatrix<T>,
    threshold: usize,
) -> Result<PermanentCertificate<T>, TropError> {
    let n = require_within(m, threshold)?;
    let mut search = PermSearch {
        m,
        used: vec![false; n],
        choice: Vec::with_capacity(n),
        best: None,
        witnesses: Vec::new(),
    };
    search.descend(T::zero());
    let PermSearch {
        best, witnesses, ..
    } = search;
    Ok(PermanentCertificate {
        value: best.expect("n >= 1 so at least one permutation exists"),
        witnesses,
    })
}

struct PermSearch<'a, T: ExactScalar> {
    m: &'a TropicalMatrix<T>,
    used: Vec<bool>,
    choice: Vec<usize>,
    best: Option<T>,
    witnesses: Vec<Permutation>,
}

impl<T: ExactScalar> PermSearch<'_, T> {
    // Columns are tried in increasing order, so complete permutations are
    // visited lexicographically and the witness list needs no sorting.
    fn descend(&mut self, acc: T) {
        let n = self.m.rows();
        let row = self.choice.len();
        if row == n {
            let ord = match &self.best {
                None => std::cmp::Ordering::Less,
                Some(b) => acc.cmp(b),
            };
            match ord {
                std::cmp::Ordering::Greater => {}
                std::cmp::Ordering::Equal => {
                    self.witnesses
                        .push(Permutation::from_zero_based(self.choice.clone()));
                }
                std::cmp::Ordering::Less => {
                    self.best = Some(acc);
                    self.witnesses = vec![Permutation::from_zero_based(self.choice.clone())];
                }
            }
            return;
        }
        for col in 0..n {
            if self.used[col] {
                continue;
            }
            self.used[col] = true;
            self.choice.push(col);
            self.descend(acc.clone() + self.m.get(row, col).clone());
            self.choice.pop();
            self.used[col] = false;
        }
    }
}

/// Permanent value only, via an exact min-cost assignment solver.
///
/// Agrees with [`permanent`] on the value but does not report how many
/// permutations attain it. No dimension threshold applies.
pub fn permanent_value_fast<T: ExactScalar>(m: &TropicalMatrix<T>) -> Result<T, TropError> {
    require_square(m)?;
    let (value, _) = assignment::min_assignment(m)?;
    Ok(value)
}

/// True iff the permanent's minimum is attained by at least two permutations.
pub fn is_tropically_singular<T: ExactScalar>(m: &TropicalMatrix<T>) -> Result<bool, TropError> {
    is_tropically_singular_with_threshold(m, DEFAULT_THRESHOLD)
}

pub fn is_tropically_singular_with_threshold<T: ExactScalar>(
    m: &TropicalMatrix<T>,
    threshold: usize,
) -> Result<bool, TropError> {
    Ok(permanent_with_threshold(m, threshold)?.optimal_count() >= 2)
}

/// Tropical rank with the lexicographically smallest witness selector.
///
/// Returns the largest `r` such that some `r x r` submatrix is tropically
/// nonsingular, along with the first such selector in (rows, cols) order.
pub fn tropical_rank<T: ExactScalar>(
    m: &TropicalMatrix<T>,
) -> Result<(usize, SubmatrixSelector), TropError> {
    tropical_rank_with_threshold(m, DEFAULT_THRESHOLD)
}

pub fn tropical_rank_with_threshold<T: ExactScalar>(
    m: &TropicalMatrix<T>,
    threshold: usize,
) -> Result<(usize, SubmatrixSelector), TropError> {
    let max_r = m.rows().min(m.cols());
    if max_r > threshold {
        return Err(TropError::TooLarge {
            n: max_r,
            threshold,
        });
    }
    for r in (1..=max_r).rev() {
        for row_set in combinations(m.rows(), r) {
            for col_set in combinations(m.cols(), r) {
                let sel = SubmatrixSelector::new(row_set.clone(), col_set);
                let sub = m.submatrix(&sel)?;
                if !is_tropically_singular_with_threshold(&sub, threshold)? {
                    return Ok((r, sel));
                }
            }
        }
    }
    unreachable!("1x1 submatrices are never singular")
}

/// All `k x k` submatrices in lexicographic (rows, cols) selector order.
pub fn all_square_submatrices<'a, T: ExactScalar>(
    m: &'a TropicalMatrix<T>,
    k: usize,
) -> Result<impl Iterator<Item = (SubmatrixSelector, TropicalMatrix<T>)> + 'a, TropError> {
    let max = m.rows().min(m.cols());
    if k < 1 || k > max {
        return Err(TropError::OrderOutOfRange { k, max });
    }
    let iter = combinations(m.rows(), k).flat_map(move |row_set| {
        combinations(m.cols(), k).map(move |col_set| {
            let sel = SubmatrixSelector::new(row_set.clone(), col_set);
            let sub = m.submatrix(&sel).expect("selector built in bounds");
            (sel, sub)
        })
    });
    Ok(iter)
}
