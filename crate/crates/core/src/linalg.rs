//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<i128>>`. Everything here is sized for a
//! handful of rows and columns; clarity and exactness over asymptotics.

use num::rational::BigRational;
use num::{BigInt, One, Zero};

pub type Mat = Vec<Vec<i128>>;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}

/// Extended gcd: (g, x, y) with a*x + b*y = g, g >= 0.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (x0, x1) = (x1, x0 - t * x1);
        (y0, y1) = (y1, y0 - t * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Inverse of `a` modulo `m` (m >= 1, gcd(a, m) = 1), in [0, m).
pub fn mod_inverse(a: i128, m: i128) -> i128 {
    if m == 1 {
        return 0;
    }
    let (g, x, _) = xgcd(a.rem_euclid(m), m);
    assert_eq!(g, 1, "mod_inverse: {a} is not a unit modulo {m}");
    x.rem_euclid(m)
}

fn row_axpy(dst: &mut [i128], c: i128, src: &[i128]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += c * s;
    }
}

/// Lower-triangular row Hermite normal form of a set of lattice generators.
///
/// The input rows generate a sublattice of Z^m (extra or dependent rows are
/// fine). The result has one row per pivot column, ordered so that the last
/// nonzero entry of row i sits strictly right of that of row i-1; pivots
/// are positive and every entry below a pivot is reduced modulo it. For a
/// full-rank square input this is the unique lower-triangular canonical
/// basis with 0 <= H[i][j] < H[j][j] for j < i.
pub fn hnf_lower(mut rows: Mat) -> Mat {
    assert!(!rows.is_empty());
    let m = rows[0].len();
    let mut pivots: Vec<(usize, Vec<i128>)> = Vec::new();
    for col in (0..m).rev() {
        // Combine every remaining row with a nonzero entry in this column
        // into a single pivot row via extended-gcd row operations.
        let mut pivot: Option<Vec<i128>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for row in rows.drain(..) {
            if row[col] == 0 {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (g, x, y) = xgcd(p[col], row[col]);
                    let (pa, pb) = (p[col] / g, row[col] / g);
                    let mut new_pivot = vec![0i128; m];
                    row_axpy(&mut new_pivot, x, &p);
                    row_axpy(&mut new_pivot, y, &row);
                    let mut zeroed = vec![0i128; m];
                    row_axpy(&mut zeroed, pa, &row);
                    row_axpy(&mut zeroed, -pb, &p);
                    debug_assert_eq!(zeroed[col], 0);
                    rest.push(zeroed);
                    pivot = Some(new_pivot);
                }
            }
        }
        rows = rest;
        if let Some(mut p) = pivot {
            if p[col] < 0 {
                for e in &mut p {
                    *e = -*e;
                }
            }
            pivots.push((col, p));
        }
    }
    for row in &rows {
        debug_assert!(row.iter().all(|&e| e == 0));
    }
    pivots.reverse(); // ascending pivot columns
    let mut h: Mat = pivots.iter().map(|(_, p)| p.clone()).collect();
    let cols: Vec<usize> = pivots.into_iter().map(|(c, _)| c).collect();
    // Reduce entries below each pivot modulo that pivot.
    for i in 0..h.len() {
        for j in (0..i).rev() {
            let c = cols[j];
            let t = h[i][c].div_euclid(h[j][c]);
            if t != 0 {
                let pivot_row = h[j].clone();
                row_axpy(&mut h[i], -t, &pivot_row);
            }
        }
    }
    h
}

/// Pivot column of each row of a matrix in `hnf_lower` form: the position
/// of the row's last nonzero entry.
pub fn hnf_pivot_columns(h: &Mat) -> Vec<usize> {
    h.iter()
        .map(|row| {
            row.iter()
                .rposition(|&e| e != 0)
                .expect("HNF rows are nonzero")
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n));
    let mut a = m.clone();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Diagonal of the Smith normal form: nonnegative, each entry dividing the
/// next, padded with zeros on rank deficiency.
pub fn smith_diagonal(mut m: Mat) -> Vec<i128> {
    let rows = m.len();
    let cols = m[0].len();
    let r = rows.min(cols);
    let mut diag = vec![0i128; r];
    for t in 0..r {
        'outer: loop {
            // Smallest-magnitude nonzero entry of the trailing block as pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            for row in &mut m {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t] / m[t][t];
                if f != 0 {
                    let pr = m[t].clone();
                    row_axpy(&mut m[i], -f, &pr);
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let f = m[t][j] / m[t][t];
                if f != 0 {
                    for row in m.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % m[t][t] != 0 {
                        let add = m[i].clone();
                        row_axpy(&mut m[t], 1, &add);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        diag[t] = m[t][t].abs();
    }
    diag
}

/// Basis of { x in Z^k : x . w ≡ 0 (mod m) }, or of the exact kernel
/// { x : x . w = 0 } when `modulus` is `None`.
///
/// Rows (w_i | e_i), plus (m | 0) in the modular case, are reduced by
/// unimodular row operations until a single row carries the gcd in the first
/// column; the tails of the zeroed rows generate the kernel.
pub fn dot_kernel_basis(w: &[i128], modulus: Option<i128>) -> Mat {
    let k = w.len();
    let mut work: Mat = Vec::with_capacity(k + 1);
    for (i, &wi) in w.iter().enumerate() {
        let mut row = vec![0i128; k + 1];
        row[0] = wi;
        row[1 + i] = 1;
        work.push(row);
    }
    if let Some(m) = modulus {
        assert!(m >= 1);
        let mut row = vec![0i128; k + 1];
        row[0] = m;
        work.push(row);
    }
    let mut pivot: Option<Vec<i128>> = None;
    let mut kernel = Vec::new();
    for row in work {
        if row[0] == 0 {
            kernel.push(row[1..].to_vec());
            continue;
        }
        match pivot.take() {
            None => pivot = Some(row),
            Some(p) => {
                let (g, x, y) = xgcd(p[0], row[0]);
                let (pa, pb) = (p[0] / g, row[0] / g);
                let mut new_pivot = vec![0i128; k + 1];
                row_axpy(&mut new_pivot, x, &p);
                row_axpy(&mut new_pivot, y, &row);
                let mut zeroed = vec![0i128; k + 1];
                row_axpy(&mut zeroed, pa, &row);
                row_axpy(&mut zeroed, -pb, &p);
                kernel.push(zeroed[1..].to_vec());
                pivot = Some(new_pivot);
            }
        }
    }
    kernel
}

/// Signed maximal minors of an n x (n+1) matrix: the vector v with
/// rows(m) . v = 0, whose gcd is the index of the row lattice in its
/// saturation.
pub fn signed_max_minors(m: &Mat) -> Vec<i128> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n + 1));
    (0..=n)
        .map(|skip| {
            let sub: Mat = m
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &e)| e)
                        .collect()
                })
                .collect();
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            sign * det(&sub)
        })
        .collect()
}

pub fn big_ratio(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational inverse of a square integer matrix; `None` if singular.
pub fn inverse_rational(m: &Mat) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&e| big_ratio(e, 1))
                .chain((0..n).map(|j| big_ratio((i == j) as i128, 1)))
                .collect()
        })
        .collect();
    gauss_jordan(&mut a, n)?;
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solve A x = b exactly for square nonsingular rational A.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().chain(std::iter::once(bi)).cloned().collect())
        .collect();
    gauss_jordan(&mut aug, n)?;
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

fn gauss_jordan(a: &mut [Vec<BigRational>], n: usize) -> Option<()> {
    for c in 0..n {
        let pivot = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, pivot);
        let inv = a[c][c].clone();
        for e in &mut a[c] {
            *e = &*e / &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (e, p) in a[r].iter_mut().zip(&pivot_row) {
                    *e = &*e - &f * p;
                }
            }
        }
    }
    Some(())
}

/// Rank by fraction-free (Bareiss) elimination over arbitrary-precision
/// integers, with column skipping for rectangular input.
pub fn rank_fraction_free(mut m: Vec<Vec<BigInt>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(r) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, r);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let t = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = t / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Ascending coefficients of the unique degree < points.len() polynomial
/// through the given points (Lagrange form, exact).
pub fn fit_polynomial(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut result = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0usize;
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            // basis *= (x - xj), in place from the top degree down
            for t in (0..=deg + 1).rev() {
                let lower = if t == 0 {
                    BigRational::zero()
                } else {
                    basis[t - 1].clone()
                };
                let cur = if t <= deg {
                    basis[t].clone()
                } else {
                    BigRational::zero()
                };
                basis[t] = lower - xj * cur;
            }
            deg += 1;
            denom *= xi - xj;
        }
        let scale = yi / &denom;
        for (r, b) in result.iter_mut().zip(&basis) {
            *r = &*r + &(&scale * b);
        }
    }
    result
}

/// Horner evaluation of ascending coefficients at x.
pub fn eval_polynomial(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_bezout() {
        for a in -20i128..=20 {
            for b in -20i128..=20 {
                let (g, x, y) = xgcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(a * x + b * y, g);
            }
        }
    }

    #[test]
    fn hnf_canonical_under_remix() {
        // Same row lattice, different generators.
        let h1 = hnf_lower(vec![vec![7, 0], vec![6, 1]]);
        let h2 = hnf_lower(vec![vec![1, -1], vec![6, 1], vec![7, 0]]);
        let h3 = hnf_lower(vec![vec![13, 1], vec![6, 1]]);
        assert_eq!(h1, vec![vec![7, 0], vec![6, 1]]);
        assert_eq!(h1, h2);
        assert_eq!(h1, h3);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_diagonal(vec![vec![1, 0], vec![0, 1]]), vec![1, 1]);
        assert_eq!(smith_diagonal(vec![vec![7, 0], vec![6, 1]]), vec![1, 7]);
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 4]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn kernel_of_congruence() {
        let basis = dot_kernel_basis(&[1, 1], Some(7));
        // Every basis row must satisfy the congruence, and the HNF of the
        // kernel must have determinant 7.
        for row in &basis {
            assert_eq!((row[0] + row[1]).rem_euclid(7), 0);
        }
        let h = hnf_lower(basis);
        assert_eq!(det(&h), 7);
    }

    #[test]
    fn exact_kernel_is_orthogonal() {
        let w = vec![1, -6, 7];
        let basis = dot_kernel_basis(&w, None);
        assert_eq!(basis.len(), 2);
        for row in &basis {
            let dot: i128 = row.iter().zip(&w).map(|(a, b)| a * b).sum();
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn minors_annihilate_rows() {
        let m = vec![vec![1, -6, 7], vec![0, 1, 1]];
        let v = signed_max_minors(&m);
        for row in &m {
            let dot: i128 = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn inverse_matches_identity() {
        let a = vec![vec![7, 6], vec![0, 1]];
        let inv = inverse_rational(&a).unwrap();
        assert_eq!(inv[0][0], big_ratio(1, 7));
        assert_eq!(inv[0][1], big_ratio(-6, 7));
        assert_eq!(inv[1][0], big_ratio(0, 1));
        assert_eq!(inv[1][1], big_ratio(1, 1));
    }

    #[test]
    fn rank_of_known_matrices() {
        let to_big = |m: Mat| -> Vec<Vec<BigInt>> {
            m.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        };
        assert_eq!(rank_fraction_free(to_big(vec![vec![4, 4, 4]])), 1);
        assert_eq!(
            rank_fraction_free(to_big(vec![vec![1, 2], vec![2, 4], vec![0, 1]])),
            2
        );
        assert_eq!(rank_fraction_free(to_big(vec![vec![0, 0], vec![0, 0]])), 0);
    }

    #[test]
    fn polynomial_fit_roundtrip() {
        // 2k^2 + 2k + 1 through k = 0, 1, 2.
        let pts: Vec<(BigRational, BigRational)> = [(0, 1), (1, 5), (2, 13)]
            .iter()
            .map(|&(x, y)| (big_ratio(x, 1), big_ratio(y, 1)))
            .collect();
        let coeffs = fit_polynomial(&pts);
        assert_eq!(
            coeffs,
            vec![big_ratio(1, 1), big_ratio(2, 1), big_ratio(2, 1)]
        );
        assert_eq!(
            eval_polynomial(&coeffs, &big_ratio(10, 1)),
            big_ratio(221, 1)
        );
    }
}
