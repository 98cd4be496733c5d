//! Permutations and submatrix selectors.
//!
//! Both types carry the deterministic orderings the rest of the crate
//! relies on: permutations compare lexicographically in one-line
//! notation, selectors compare lexicographically as (rows, cols).

use std::fmt;

/// A permutation of {0, ..., n-1} in one-line notation: `map[i]` is the
/// image of `i`.
///
/// Display is 1-based one-line notation. For reading results against
/// cycle notation:
///
/// ```text
/// cycle   one-line (in S5)
/// id      [1,2,3,4,5]
/// (23)    [1,3,2,4,5]
/// (24)    [1,4,3,2,5]
/// (243)   [1,4,2,3,5]     (2 -> 4, 4 -> 3, 3 -> 2)
/// ```
///
/// e.g. the transposition (23) in S4 prints as `[1,3,2,4]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from a 0-based one-line image vector.
    ///
    /// Panics if `map` is not a bijection on {0, .., n-1}.
    pub fn from_zero_based(map: Vec<usize>) -> Self {
        let n = map.len();
        assert!(n >= 1, "permutation must act on at least one point");
        let mut seen = vec![false; n];
        for &j in &map {
            assert!(j < n && !seen[j], "not a bijection: {:?}", map);
            seen[j] = true;
        }
        Permutation { map }
    }

    /// Builds a permutation from 1-based one-line notation, e.g. `[1,3,2,4]`.
    pub fn from_one_based(map: &[usize]) -> Self {
        Self::from_zero_based(
            map.iter()
                .map(|&j| j.checked_sub(1).expect("1-based index 0"))
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_zero_based((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Image of `i` (0-based).
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// One-line notation with 1-based entries.
    pub fn one_based(&self) -> Vec<usize> {
        self.map.iter().map(|&j| j + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, j) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "]")
    }
}

/// A choice of rows and columns cutting a submatrix out of a larger
/// matrix. Indices are 0-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubmatrixSelector {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SubmatrixSelector {
    /// Panics unless both index lists are nonempty and strictly increasing.
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        assert!(
            !rows.is_empty() && !cols.is_empty(),
            "selector must be nonempty"
        );
        assert!(
            strictly_increasing(&rows),
            "row indices must be strictly increasing"
        );
        assert!(
            strictly_increasing(&cols),
            "column indices must be strictly increasing"
        );
        SubmatrixSelector { rows, cols }
    }

    /// Builds a selector from 1-based index lists.
    pub fn from_one_based(rows: &[usize], cols: &[usize]) -> Self {
        let shift = |xs: &[usize]| {
            xs.iter()
                .map(|&i| i.checked_sub(1).expect("1-based index 0"))
                .collect()
        };
        Self::new(shift(rows), shift(cols))
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    /// True if every index fits a `rows x cols` matrix.
    pub fn in_bounds(&self, rows: usize, cols: usize) -> bool {
        self.rows.last().is_some_and(|&r| r < rows) && self.cols.last().is_some_and(|&c| c < cols)
    }

    pub fn rows_one_based(&self) -> Vec<usize> {
        self.rows.iter().map(|&i| i + 1).collect()
    }

    pub fn cols_one_based(&self) -> Vec<usize> {
        self.cols.iter().map(|&i| i + 1).collect()
    }
}

impl fmt::Display for SubmatrixSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(|&i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "rows={} cols={}", join(&self.rows), join(&self.cols))
    }
}

fn strictly_increasing(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Iterates all k-element subsets of {0, .., n-1} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        k,
        next: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        if self.k > 0 {
            // advance the rightmost index that can still move
            let mut succ = current.clone();
            let mut i = self.k;
            loop {
                if i == 0 {
                    break; // exhausted
                }
                i -= 1;
                if succ[i] < self.n - (self.k - i) {
                    succ[i] += 1;
                    for j in i + 1..self.k {
                        succ[j] = succ[j - 1] + 1;
                    }
                    self.next = Some(succ);
                    break;
                }
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_lex_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn combinations_counts() {
        assert_eq!(combinations(6, 5).count(), 6);
        assert_eq!(combinations(6, 6).count(), 1);
        assert_eq!(combinations(5, 0).count(), 1);
        assert_eq!(combinations(3, 4).count(), 0);
    }

    #[test]
    fn permutation_display_is_one_based() {
        let p = Permutation::from_one_based(&[1, 3, 2, 4]);
        assert_eq!(p.to_string(), "[1,3,2,4]");
        assert_eq!(p.apply(1), 2);
    }

    #[test]
    #[should_panic(expected = "not a bijection")]
    fn permutation_rejects_repeats() {
        Permutation::from_zero_based(vec![0, 0, 1]);
    }

    #[test]
    fn selector_display() {
        let s = SubmatrixSelector::from_one_based(&[1, 2, 4, 6], &[1, 4, 5, 6]);
        assert_eq!(s.to_string(), "rows=1,2,4,6 cols=1,4,5,6");
        assert!(s.is_square());
        assert!(s.in_bounds(6, 6));
        assert!(!s.in_bounds(5, 6));
    }

    #[test]
    fn selector_ordering_is_rows_then_cols() {
        let a = SubmatrixSelector::new(vec![0, 1], vec![2, 3]);
        let b = SubmatrixSelector::new(vec![0, 2], vec![0, 1]);
        assert!(a < b);
    }
}
