use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cheb_values;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::{rank_of, RationalMatrix};

/// Row indices `N < N + i_1 < ... < N + i_{m-1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Selection {
    pub n: usize,
    pub offsets: Vec<usize>,
}

impl Selection {
    pub fn rows(&self) -> Vec<usize> {
        std::iter::once(self.n)
            .chain(self.offsets.iter().map(|o| self.n + o))
            .collect()
    }

    /// The square matrix with rows `(f_k(mu_1), ..., f_k(mu_m))`.
    pub fn matrix(&self, eigvals: &[Rational]) -> RationalMatrix {
        let rows = self.rows();
        let top = *rows.last().unwrap();
        let cols: Vec<Vec<Rational>> = eigvals.iter().map(|mu| cheb_values(mu, top)).collect();
        RationalMatrix::from_fn(rows.len(), eigvals.len(), |i, j| cols[j][rows[i]].clone())
    }

    pub fn det(&self, eigvals: &[Rational]) -> Rational {
        self.matrix(eigvals).det().expect("square by construction")
    }
}

pub fn default_search_bound(m: usize, n_floor: usize) -> usize {
    12 * m * (n_floor + m + 2)
}

fn check_distinct(eigvals: &[Rational]) -> Result<()> {
    if eigvals.is_empty() {
        return Err(Error::InvalidInput("no eigenvalues given".into()));
    }
    for i in 0..eigvals.len() {
        if eigvals[..i].contains(&eigvals[i]) {
            return Err(Error::RepeatedEigenvalue);
        }
    }
    Ok(())
}

struct Table {
    // cols[j][k] = f_k(mu_j)
    cols: Vec<Vec<Rational>>,
}

impl Table {
    fn new(eigvals: &[Rational], upto: usize) -> Self {
        Table {
            cols: eigvals.iter().map(|mu| cheb_values(mu, upto)).collect(),
        }
    }

    fn row(&self, k: usize, from_col: usize) -> Vec<Rational> {
        self.cols[from_col..].iter().map(|c| c[k].clone()).collect()
    }

    fn nonsingular(&self, rows: &[usize]) -> bool {
        let m = self.cols.len();
        let r: Vec<Vec<Rational>> = rows.iter().map(|&k| self.row(k, 0)).collect();
        rank_of(&r, m) == m
    }
}

/// Searches `(N, offsets)` with `N > n_floor` in order of `N + sum(offsets)`,
/// then `N`, then offsets lexicographically, keeping `N + i_{m-1}` within
/// `n_floor + search_bound`. The first nonsingular choice is returned.
pub fn select_nonsingular(
    eigvals: &[Rational],
    n_floor: usize,
    search_bound: usize,
) -> Result<Option<Selection>> {
    check_distinct(eigvals)?;
    let m = eigvals.len();
    let limit = n_floor + search_bound;
    let table = Table::new(eigvals, limit);
    for total in n_floor + 1..=m * limit {
        for n in n_floor + 1..=total.min(limit) {
            let mut found = None;
            offsets_with_sum(m - 1, total - n, 1, limit - n, &mut Vec::new(), &mut |offs| {
                let sel = Selection {
                    n,
                    offsets: offs.to_vec(),
                };
                if table.nonsingular(&sel.rows()) {
                    found = Some(sel);
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

// Strictly increasing sequences of `count` values in `[min, max]` summing to
// `sum`, in lexicographic order. Stops early once `f` returns true.
fn offsets_with_sum(
    count: usize,
    sum: usize,
    min: usize,
    max: usize,
    prefix: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if count == 0 {
        return sum == 0 && f(prefix);
    }
    // the smallest completion is min, min+1, ..., min+count-1
    let mut v = min;
    while v <= max {
        let least = count * v + count * (count - 1) / 2;
        if least > sum {
            break;
        }
        prefix.push(v);
        let done = offsets_with_sum(count - 1, sum - v, v + 1, max, prefix, f);
        prefix.pop();
        if done {
            return true;
        }
        v += 1;
    }
    false
}

/// The elimination argument made constructive.
///
/// Take the least `N > n_floor` with `f_N(mu_1) != 0`. Subtracting
/// `mu_1 R_{k-1} - R_{k-2}` from each later row `R_k` clears the first column
/// and leaves `(mu_i - mu_1) f_{k-1}(mu_i)` elsewhere (for `k >= N + 2`), so a
/// selection for `mu_2, ..., mu_m` above `N` ending at row `e` yields `m`
/// independent rows among `R_N, ..., R_{e+1}`. Those are then picked
/// greedily from `R_N` upward.
pub fn select_nonsingular_inductive(
    eigvals: &[Rational],
    n_floor: usize,
    search_bound: usize,
) -> Result<Option<Selection>> {
    check_distinct(eigvals)?;
    let limit = n_floor + search_bound;
    let table = Table::new(eigvals, limit + 2);
    let Some(rows) = inductive(&table, 0, n_floor, limit) else {
        return Ok(None);
    };
    let n = rows[0];
    Ok(Some(Selection {
        n,
        offsets: rows[1..].iter().map(|r| r - n).collect(),
    }))
}

fn inductive(table: &Table, first: usize, floor: usize, limit: usize) -> Option<Vec<usize>> {
    let m = table.cols.len() - first;
    let n = (floor + 1..=limit).find(|&k| !table.cols[first][k].is_zero())?;
    if m == 1 {
        return Some(vec![n]);
    }
    let sub = inductive(table, first + 1, n, limit)?;
    let window_end = sub.last().unwrap() + 1;
    if window_end > limit {
        return None;
    }
    let mut picked: Vec<usize> = Vec::new();
    let mut vecs: Vec<Vec<Rational>> = Vec::new();
    for k in n..=window_end {
        vecs.push(table.row(k, first));
        if rank_of(&vecs, m) > picked.len() {
            picked.push(k);
            if picked.len() == m {
                return Some(picked);
            }
        } else {
            vecs.pop();
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::cheb_values;
    use crate::exactnum::rational;

    fn mus(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    fn search(v: &[i64], floor: usize) -> Selection {
        let e = mus(v);
        select_nonsingular(&e, floor, default_search_bound(e.len(), floor))
            .unwrap()
            .unwrap()
    }

    #[test]
    fn single_eigenvalue() {
        assert_eq!(search(&[1], 0), Selection { n: 1, offsets: vec![] });
        // f_1(0) = 0, f_2(0) = -1
        assert_eq!(search(&[0], 0), Selection { n: 2, offsets: vec![] });
    }

    #[test]
    fn plus_minus_one() {
        let s = search(&[1, -1], 0);
        assert_eq!(s, Selection { n: 1, offsets: vec![3] });
        assert_eq!(s.det(&mus(&[1, -1])), rational(-2));
    }

    // Brute-force scan over pairs ordered by N + i_1, then N.
    #[test]
    fn two_and_zero_above_five() {
        let e = mus(&[2, 0]);
        let s = search(&[2, 0], 5);
        let f2 = cheb_values(&e[0], 80);
        let f0 = cheb_values(&e[1], 80);
        let mut expect = None;
        'outer: for total in 7..80 {
            for n in 6..total {
                let k = total;
                if &f2[n] * &f0[k] - &f0[n] * &f2[k] != rational(0) {
                    expect = Some(Selection { n, offsets: vec![k - n] });
                    break 'outer;
                }
            }
        }
        assert_eq!(Some(s.clone()), expect);
        assert_eq!(s, Selection { n: 6, offsets: vec![1] });
        assert_ne!(s.det(&e), rational(0));
    }

    #[test]
    fn inductive_strategy_agrees_on_nonsingularity() {
        for v in [&[1, -1][..], &[2, 0], &[2, 1, -1], &[2, 0, -2], &[3, 1, 0, -2]] {
            for floor in [0, 3, 7] {
                let e = mus(v);
                let b = default_search_bound(e.len(), floor);
                let s = select_nonsingular_inductive(&e, floor, b).unwrap().unwrap();
                assert!(s.n > floor);
                assert_ne!(s.det(&e), rational(0), "{v:?} {floor}");
                let t = select_nonsingular(&e, floor, b).unwrap().unwrap();
                assert_ne!(t.det(&e), rational(0));
            }
        }
    }

    #[test]
    fn errors_and_exhaustion() {
        assert_eq!(
            select_nonsingular(&mus(&[1, 1]), 0, 10),
            Err(Error::RepeatedEigenvalue)
        );
        assert!(select_nonsingular(&[], 0, 10).is_err());
        // f_k(0) vanishes for odd k, so a window holding only N = 1 fails.
        assert_eq!(select_nonsingular(&mus(&[0]), 0, 1).unwrap(), None);
    }
}
