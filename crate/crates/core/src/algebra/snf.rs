//! Smith normal form over `Z` with tracked unimodular transforms.
//!
//! Pivot rule: the nonzero entry of smallest absolute value in the active
//! submatrix, ties broken by row-major position. The rule is fixed so that the
//! transforms (not only the diagonal) are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` in Smith form.
///
/// The inverses are maintained alongside, so `M = U⁻¹ · D · V⁻¹` holds without
/// a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// `col[dst] += c · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.a.rows() {
            for j in k..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = w.pivot(k) else {
                break 'outer;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..rows {
                if w.a[(i, k)].is_zero() {
                    continue;
                }
                let q = &w.a[(i, k)] / &w.a[(k, k)];
                w.add_row(i, k, &-q);
                dirty |= !w.a[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if w.a[(k, j)].is_zero() {
                    continue;
                }
                let q = &w.a[(k, j)] / &w.a[(k, k)];
                w.add_col(j, k, &-q);
                dirty |= !w.a[(k, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // row and column are clear; enforce divisibility on the rest
            let offending = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&w.a[(k, k)])));
            match offending {
                Some(i) => w.add_row(k, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(k, k)].is_negative() {
            w.negate_row(k);
        }
    }

    SmithForm { u: w.u, d: w.a, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(&(&s.u_inv * &s.d) * &s.v_inv, *m);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(m.cols()));
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{f:?}");
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity_and_scalar() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check(&IntMatrix::from_rows(&[[3]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[[3]]));
    }

    #[test]
    fn all_ones_row() {
        let s = check(&IntMatrix::from_rows(&[[1, 1, 1, 1, 1, 1]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1)]);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) must become diag(1, 6)
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.invariant_factors().is_empty());
        check(&IntMatrix::zeros(0, 0));
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = IntMatrix::from_rows(&[[4, 7, 2], [2, 4, 6], [1, 0, 5]]);
        let s = check(&m);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn reconstructs_random_matrices(m in arb_matrix()) {
            let s = check(&m);
            // |det| is the product of the invariant factors
            if m.rows() == m.cols() {
                let det = m.determinant().abs();
                let prod: BigInt = if s.rank() == m.rows() {
                    s.invariant_factors().iter().product()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(det, prod);
            }
        }
    }
}
