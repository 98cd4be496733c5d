//! Exact min-cost assignment (Hungarian algorithm, Jonker-Volgenant style).
//!
//! The classic O(n^3) potentials formulation, run over an exact scalar
//! instead of floats. Infinite slack is represented explicitly so that
//! edges can be forbidden without sentinel values; everything else is
//! plain ring arithmetic and comparison, so the result is exact.

use crate::comb::Permutation;
use crate::num::ExactScalar;
use crate::trop::{TropError, TropicalMatrix};

/// A slack value that may be unreachable. `Fin(_) < Inf` under the derived
/// ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slack<T> {
    Fin(T),
    Inf,
}

use Slack::{Fin, Inf};

/// Minimum-cost perfect assignment of a square matrix.
///
/// Returns the optimal value and one optimal permutation (rows to columns).
pub fn min_assignment<T: ExactScalar>(
    m: &TropicalMatrix<T>,
) -> Result<(T, Permutation), TropError> {
    min_assignment_avoiding(m, &[])
        .map(|r| r.expect("complete bipartite graph always has a perfect matching"))
}

/// Minimum-cost assignment where the edges in `forbidden` (0-based
/// `(row, col)` pairs) may not be used.
///
/// Returns `None` when no perfect matching avoids the forbidden edges.
pub fn min_assignment_avoiding<T: ExactScalar>(
    m: &TropicalMatrix<T>,
    forbidden: &[(usize, usize)],
) -> Result<Option<(T, Permutation)>, TropError> {
    if !m.is_square() {
        return Err(TropError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let cost = |i: usize, j: usize| -> Slack<T> {
        if forbidden.contains(&(i, j)) {
            Inf
        } else {
            Fin(m.get(i, j).clone())
        }
    };

    // 1-based arrays with column 0 as the virtual unmatched slot.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut matched_row = vec![0usize; n + 1]; // matched_row[j] = row assigned to col j
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![Inf; n + 1];
        let mut used = vec![false; n + 1];

        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = Inf;
            let mut j1 = 0usize;

            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = match cost(i0 - 1, j - 1) {
                    Inf => Inf,
                    Fin(c) => Fin(c - u[i0].clone() - v[j].clone()),
                };
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j].clone();
                    j1 = j;
                }
            }

            let delta = match delta {
                Inf => return Ok(None), // every augmenting path is blocked
                Fin(d) => d,
            };
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j]] += delta.clone();
                    v[j] -= delta.clone();
                } else if let Fin(x) = &mut minv[j] {
                    *x -= delta.clone();
                }
            }

            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }

        // walk the alternating path back, flipping matches
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut map = vec![usize::MAX; n];
    for j in 1..=n {
        map[matched_row[j] - 1] = j - 1;
    }
    let perm = Permutation::from_zero_based(map);
    let mut value = T::zero();
    for i in 0..n {
        value += m.get(i, perm.apply(i)).clone();
    }
    Ok(Some((value, perm)))
}
