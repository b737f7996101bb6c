//! Linear algebra over the prime field `F_p`.
//!
//! Vectors are `Vec<u64>` of canonical residues in `[0, p)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{AlgebraError, IntMatrix};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(x: u64, p: u64) -> u64 {
    // p is prime and x ≠ 0
    let e = (x as i128).extended_gcd(&(p as i128));
    e.x.rem_euclid(p as i128) as u64
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Canonical basis of the row space: nonzero rows of the RREF.
pub fn row_space(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    rref(&mut m, p);
    m
}

/// Whether `v` lies in the span of `basis` (any generating set).
pub fn in_span(basis: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let r = rank(basis, p);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext, p) == r
}

/// Null space of the residue rows, as an RREF basis.
pub fn null_space(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[f] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[r][f]) % p;
        }
        basis.push(v);
    }
    rref(&mut basis, p);
    basis
}

/// Basis of `{x ∈ F_pⁿ : M x = 0}` in reduced echelon form, rows ordered by
/// pivot column.
pub fn kernel_mod_p(m: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let rows: Vec<Vec<u64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| reduce(x, p)).collect()).collect();
    Ok(null_space(&rows, m.cols(), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by enumerating every vector of `F_pⁿ` and counting the kernel.
    fn brute_kernel_dim(rows: &[Vec<u64>], n: usize, p: u64) -> usize {
        let total = p.pow(n as u32);
        let mut count = 0u64;
        for code in 0..total {
            let x: Vec<u64> = (0..n).map(|k| code / p.pow(k as u32) % p).collect();
            if rows.iter().all(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum::<u64>() % p == 0) {
                count += 1;
            }
        }
        let mut d = 0;
        while p.pow(d) < count {
            d += 1;
        }
        d as usize
    }

    #[test]
    fn examples() {
        let ones = IntMatrix::from_rows(&[[1, 1, 1, 1, 1, 1]]);
        let k = kernel_mod_p(&ones, 3).unwrap();
        assert_eq!(k.len(), 5);
        assert!(kernel_mod_p(&IntMatrix::identity(3), 3).unwrap().is_empty());
        assert_eq!(kernel_mod_p(&ones, 4), Err(AlgebraError::NotPrime(4)));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = IntMatrix::from_rows(&[[1, 2, 0, -1], [3, -3, 1, 2]]);
        for p in [2, 3, 5, 7] {
            for v in kernel_mod_p(&m, p).unwrap() {
                for i in 0..m.rows() {
                    let s: i64 = (0..4).map(|j| reduce(&m[(i, j)], p) as i64 * v[j] as i64).sum();
                    assert_eq!(s % p as i64, 0);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn kernel_dim_matches_brute_force(
            p in prop::sample::select(vec![2u64, 3, 5]),
            entries in prop::collection::vec(-7i64..=7, 24),
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(6).map(<[i64]>::to_vec).collect();
            let m = IntMatrix::from_rows(&rows);
            let k = kernel_mod_p(&m, p).unwrap();
            let residues: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
                .collect();
            prop_assert_eq!(k.len(), brute_kernel_dim(&residues, 6, p));
            prop_assert_eq!(k.len(), 6 - rank(&residues, p));
        }
    }
}
