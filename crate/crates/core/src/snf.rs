//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `left * input * right = diagonal`, with `left_inv`/`right_inv` the inverses
/// of the unimodular transforms. Diagonal entries are non-negative and each
/// divides the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal[i][i].clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    p: IntMatrix,
    pinv: IntMatrix,
    q: IntMatrix,
    qinv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.p.swap(i, j);
        for row in self.pinv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.cols {
            let d = k * &self.a[j][c];
            self.a[i][c] += d;
        }
        for c in 0..self.rows {
            let d = k * &self.p[j][c];
            self.p[i][c] += d;
        }
        for r in 0..self.rows {
            let d = k * &self.pinv[r][i];
            self.pinv[r][j] -= d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.p[i].iter_mut() {
            *x = -&*x;
        }
        for row in self.pinv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.q.iter_mut() {
            row.swap(i, j);
        }
        self.qinv.swap(i, j);
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.rows {
            let d = k * &self.a[r][j];
            self.a[r][i] += d;
        }
        for r in 0..self.cols {
            let d = k * &self.q[r][j];
            self.q[r][i] += d;
        }
        for c in 0..self.cols {
            let d = k * &self.qinv[i][c];
            self.qinv[j][c] -= d;
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                if self.a[r][c].is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if self.a[br][bc].abs() <= self.a[r][c].abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }
}

/// Computes the Smith normal form of a `rows x cols` integer matrix.
pub fn smith_normal_form(input: &IntMatrix, rows: usize, cols: usize) -> SmithForm {
    let mut w = Work {
        a: input.clone(),
        p: int_identity(rows),
        pinv: int_identity(rows),
        q: int_identity(cols),
        qinv: int_identity(cols),
        rows,
        cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((r, c)) = w.min_entry(t) else {
            break;
        };
        w.swap_rows(t, r);
        w.swap_cols(t, c);
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if w.a[r][t].is_zero() {
                    continue;
                }
                let k = w.a[r][t].div_floor(&w.a[t][t]);
                w.add_row(r, t, &-k);
                if !w.a[r][t].is_zero() {
                    clean = false;
                    w.swap_rows(t, r);
                }
            }
            for c in t + 1..cols {
                if w.a[t][c].is_zero() {
                    continue;
                }
                let k = w.a[t][c].div_floor(&w.a[t][t]);
                w.add_col(c, t, &-k);
                if !w.a[t][c].is_zero() {
                    clean = false;
                    w.swap_cols(t, c);
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide every remaining entry.
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(&w.a[r][c] % &w.a[t][t]).is_zero());
            match bad {
                Some((r, _)) => w.add_row(t, r, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithForm { diagonal: w.a, left: w.p, left_inv: w.pinv, right: w.q, right_inv: w.qinv, rank: t }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let cols = b.first().map_or(0, Vec::len);
        a.iter().map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect()).collect()
    }

    fn check(a: &IntMatrix, rows: usize, cols: usize) -> SmithForm {
        let s = smith_normal_form(a, rows, cols);
        assert_eq!(mul(&mul(&s.left, a), &s.right), s.diagonal);
        assert_eq!(mul(&s.left, &s.left_inv), int_identity(rows));
        assert_eq!(mul(&s.right, &s.right_inv), int_identity(cols));
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.diagonal[i][j].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn klein_boundary() {
        let s = check(&im(&[&[2], &[0]]), 2, 1);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2)]);
    }

    #[test]
    fn divisibility_fixup() {
        let s = check(&im(&[&[2, 0], &[0, 3]]), 2, 2);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn general_matrix() {
        let a = im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = check(&a, 3, 3);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        check(&im(&[&[0, 0], &[0, 0]]), 2, 2);
        check(&im(&[&[1, -1, 0, 0], &[-1, 1, 1, -1], &[0, 0, -1, 1]]), 3, 4);
    }
}
