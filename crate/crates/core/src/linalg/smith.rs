use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of [`smith_normal_form`]: `u · a · v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub diagonal: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t += q * s;
        }
    }
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += q · row_j
    fn add_row(&mut self, i: usize, q: &BigInt, j: usize) {
        let src = self.a[j].clone();
        axpy(&mut self.a[i], q, &src);
        let src = self.u[j].clone();
        axpy(&mut self.u[i], q, &src);
        for row in &mut self.u_inv {
            if !row[i].is_zero() {
                let t = q * &row[i];
                row[j] -= t;
            }
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, q: &BigInt, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] += t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -std::mem::take(x);
        }
        for row in &mut self.u_inv {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }
}

/// Smith normal form with transforms: `u · a · v = d`, `u`, `v` unimodular,
/// `d` diagonal with positive entries forming a divisibility chain.
///
/// Pivots are chosen of minimal absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { a: a.to_rows(), u: identity_rows(m), u_inv: identity_rows(m), v: identity_rows(n) };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_entry(&w.a, t..m, t..n) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = -(&w.a[i][t] / &w.a[t][t]);
                    w.add_row(i, &q, t);
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = -(&w.a[t][j] / &w.a[t][t]);
                    w.add_col(j, &q, t);
                }
            }
            let col_left = (t + 1..m).find(|&i| !w.a[i][t].is_zero());
            let row_left = (t + 1..n).find(|&j| !w.a[t][j].is_zero());
            if col_left.is_some() || row_left.is_some() {
                let mut best: Option<(usize, usize)> = None;
                let mut consider = |i: usize, j: usize, a: &Vec<Vec<BigInt>>| {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                };
                for i in t + 1..m {
                    consider(i, t, &w.a);
                }
                for j in t + 1..n {
                    consider(t, j, &w.a);
                }
                let (bi, bj) = best.expect("nonzero remainder");
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            let pivot = w.a[t][t].clone();
            if pivot.abs().is_one() {
                break;
            }
            let bad = (t + 1..m).find(|&i| w.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.add_row(t, &BigInt::one(), i),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.a[t][t].clone());
    }
    Smith {
        u: IntMatrix::from_rows(w.u, m),
        u_inv: IntMatrix::from_rows(w.u_inv, m),
        d: IntMatrix::from_rows(w.a, n),
        v: IntMatrix::from_rows(w.v, n),
        diagonal,
    }
}

fn min_entry(a: &[Vec<BigInt>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[i][j];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                let done = ax.is_one();
                best = Some((i, j, ax));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(3, 2));
        assert!(s.diagonal.is_empty());
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn diag_two_three() {
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular() {
        let s = check(&IntMatrix::from_i64(2, 3, &[4, 6, 8, 6, 9, 12]));
        assert_eq!(s.diagonal, vec![BigInt::from(1)]);
        let s = check(&IntMatrix::from_i64(2, 3, &[4, 6, 8, 6, 10, 12]));
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
        check(&IntMatrix::from_i64(3, 2, &[0, 4, 6, 0, 0, 10]));
    }
}
