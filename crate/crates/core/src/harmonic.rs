//! Independent brute-force computation of invariant harmonic dimensions.
//!
//! Working in complex coordinates z_j = x_j + i y_j on R^{2n}, the degree-k
//! monomials z^a zbar^b invariant under the group are those with
//! sum_j (a_j - b_j) p_j ≡ 0 (mod q). The Laplacian acts by
//!   (z^a zbar^b) -> 4 sum_j a_j b_j z^{a - e_j} zbar^{b - e_j},
//! so the invariant harmonic dimension at degree k is the kernel dimension
//! of that map restricted to the invariant bases at degrees k and k-2,
//! computed by exact fraction-free elimination. This path never touches
//! shell counts, which is what makes it an oracle for the multiplicity
//! formula.

use num::BigInt;
use thiserror::Error;

use crate::lens::LensSpace;
use crate::linalg;

/// Hard limit on the invariant basis size the oracle will eliminate.
pub const MAX_BASIS: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("invariant basis of size {basis_size} exceeds the oracle guard of {MAX_BASIS}")]
    TooLarge { basis_size: usize },
}

/// A monomial z^a zbar^b in complex coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexMonomial {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl ComplexMonomial {
    pub fn degree(&self) -> u64 {
        self.a.iter().chain(&self.b).map(|&e| e as u64).sum()
    }
}

fn phase_is_trivial(lens: &LensSpace, a: &[u32], b: &[u32]) -> bool {
    let q = lens.q() as i128;
    let dot: i128 = lens
        .params()
        .iter()
        .enumerate()
        .map(|(j, &p)| (a[j] as i128 - b[j] as i128) * p as i128)
        .sum();
    dot.rem_euclid(q) == 0
}

fn compositions(parts: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(depth: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if depth + 1 == cur.len() {
            cur[depth] = rem;
            out.push(cur.clone());
            return;
        }
        for v in 0..=rem {
            cur[depth] = v;
            rec(depth + 1, rem - v, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// All invariant degree-k monomials, in lexicographic order on (a, b).
pub fn invariant_monomials(lens: &LensSpace, k: u64) -> Vec<ComplexMonomial> {
    let n = lens.n();
    compositions(2 * n, k as u32)
        .into_iter()
        .filter_map(|exps| {
            let (a, b) = (exps[..n].to_vec(), exps[n..].to_vec());
            phase_is_trivial(lens, &a, &b).then_some(ComplexMonomial { a, b })
        })
        .collect()
}

/// The Laplacian from the invariant degree-k basis (columns) into the
/// invariant degree-(k-2) basis (rows), as an exact integer matrix.
#[derive(Debug, Clone)]
pub struct LaplacianMatrix {
    pub columns: Vec<ComplexMonomial>,
    pub rows: Vec<ComplexMonomial>,
    /// matrix[row][col], entries 4 * a_j * b_j.
    pub matrix: Vec<Vec<i64>>,
}

pub fn laplacian_matrix(lens: &LensSpace, k: u64) -> LaplacianMatrix {
    let columns = invariant_monomials(lens, k);
    let rows = if k >= 2 {
        invariant_monomials(lens, k - 2)
    } else {
        Vec::new()
    };
    let row_index: std::collections::HashMap<&ComplexMonomial, usize> =
        rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = vec![vec![0i64; columns.len()]; rows.len()];
    for (c, mono) in columns.iter().enumerate() {
        for j in 0..lens.n() {
            if mono.a[j] >= 1 && mono.b[j] >= 1 {
                let mut image = mono.clone();
                image.a[j] -= 1;
                image.b[j] -= 1;
                let r = row_index[&image];
                matrix[r][c] += 4 * mono.a[j] as i64 * mono.b[j] as i64;
            }
        }
    }
    LaplacianMatrix {
        columns,
        rows,
        matrix,
    }
}

impl LaplacianMatrix {
    /// Rank by fraction-free elimination on the dense matrix.
    pub fn rank(&self) -> usize {
        if self.rows.is_empty() || self.columns.is_empty() {
            return 0;
        }
        let big: Vec<Vec<BigInt>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        linalg::rank_fraction_free(big)
    }

    pub fn kernel_dim(&self) -> usize {
        self.columns.len() - self.rank()
    }
}

/// Dimension of the space of degree-k invariant harmonic polynomials:
/// the Laplacian kernel on the invariant basis.
///
/// The operator preserves the exponent difference d = a - b, so the matrix
/// is block diagonal over d after a permutation; each block is eliminated
/// fraction-free on its own, which keeps the exact arithmetic small. The
/// dense single-matrix route is `laplacian_matrix(..).kernel_dim()` and the
/// two agree everywhere (see tests).
pub fn invariant_harmonic_dim(lens: &LensSpace, k: u64) -> Result<u128, OracleError> {
    let n = lens.n();
    let q = lens.q() as i128;
    let p: Vec<i128> = lens.params().iter().map(|&x| x as i128).collect();

    // Difference vectors d with |d|_1 <= k, matching parity, and trivial
    // phase; each contributes a block of monomials a = m + d^+, b = m + d^-.
    let mut blocks: Vec<(Vec<i64>, u32)> = Vec::new(); // (d, r)
    let mut total_cols = 0usize;
    let mut d = vec![0i64; n];
    fn gen_d(depth: usize, rem: i64, d: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if depth == d.len() {
            out.push(d.clone());
            return;
        }
        for v in -rem..=rem {
            d[depth] = v;
            gen_d(depth + 1, rem - v.abs(), d, out);
        }
    }
    let mut all_d = Vec::new();
    gen_d(0, k as i64, &mut d, &mut all_d);
    for d in all_d {
        let norm: i64 = d.iter().map(|v| v.abs()).sum();
        if (k as i64 - norm) % 2 != 0 {
            continue;
        }
        let dot: i128 = d.iter().zip(&p).map(|(&di, &pi)| di as i128 * pi).sum();
        if dot.rem_euclid(q) != 0 {
            continue;
        }
        let r = ((k as i64 - norm) / 2) as u32;
        total_cols += compositions_len(n, r);
        blocks.push((d, r));
    }
    if total_cols > MAX_BASIS {
        return Err(OracleError::TooLarge {
            basis_size: total_cols,
        });
    }

    let mut kernel: u128 = 0;
    for (d, r) in blocks {
        let cols = compositions(n, r);
        if r == 0 {
            kernel += 1; // single monomial, mapped to zero
            continue;
        }
        let rows = compositions(n, r - 1);
        let row_index: std::collections::HashMap<&Vec<u32>, usize> =
            rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut block = vec![vec![BigInt::from(0); cols.len()]; rows.len()];
        for (c, m) in cols.iter().enumerate() {
            for j in 0..n {
                if m[j] >= 1 {
                    let mut image = m.clone();
                    image[j] -= 1;
                    let a_j = m[j] as i64 + d[j].max(0);
                    let b_j = m[j] as i64 + (-d[j]).max(0);
                    block[row_index[&image]][c] += BigInt::from(4 * a_j * b_j);
                }
            }
        }
        kernel += (cols.len() - linalg::rank_fraction_free(block)) as u128;
    }
    Ok(kernel)
}

fn compositions_len(parts: usize, total: u32) -> usize {
    // C(total + parts - 1, parts - 1)
    crate::spectrum::binomial(total as u64 + parts as u64 - 1, parts as u64 - 1) as usize
}
