//! Dimension formulas for homogeneous and harmonic polynomials, and the
//! shell-count multiplicity formula that yields full spectrum tables.
//!
//! On S^{2n-1} the eigenvalue attached to degree k is k(k + 2n - 2); the
//! multiplicity for a lens space is
//!   f(k) = sum_{r=0}^{floor(k/2)} C(r + n - 2, n - 2) * N_L(k - 2r),
//! with N_L the shell counts of the congruence lattice.

use crate::counting;
use crate::lattice::CongruenceLattice;
use crate::lens::LensSpace;

/// Binomial coefficient with u128 accumulation; panics on overflow.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial overflows u128");
        acc /= (i + 1) as u128;
    }
    acc
}

/// Number of degree-m monomials in n_vars variables: C(n_vars + m - 1, n_vars - 1).
pub fn dim_homogeneous(n_vars: u32, m: u64) -> u128 {
    assert!(n_vars >= 1);
    binomial(n_vars as u64 + m - 1, n_vars as u64 - 1)
}

/// dim H_m = dim P_m - dim P_{m-2}, with negative degrees counting zero.
pub fn dim_harmonic(n_vars: u32, m: u64) -> u128 {
    let lower = if m >= 2 {
        dim_homogeneous(n_vars, m - 2)
    } else {
        0
    };
    dim_homogeneous(n_vars, m) - lower
}

/// Spectral multiplicity of the eigenvalue k(k + 2n - 2) on the lens space.
pub fn multiplicity(lens: &LensSpace, k: u64) -> u128 {
    assert!(lens.n() >= 2, "spectral formulas need n >= 2");
    let lat = CongruenceLattice::new(lens);
    multiplicity_from_shells(lens.n(), &counting::shell_counts(&lat, k), k)
}

fn multiplicity_from_shells(n: usize, shells: &[u64], k: u64) -> u128 {
    let n = n as u64;
    (0..=k / 2)
        .map(|r| binomial(r + n - 2, n - 2) * shells[(k - 2 * r) as usize] as u128)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRow {
    pub k: u64,
    /// Eigenvalue k(k + 2n - 2) of the Laplace-Beltrami operator.
    pub lambda: u64,
    pub mult: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub lens: LensSpace,
    pub entries: Vec<SpectrumRow>,
}

/// Rows (k, k(k+2n-2), multiplicity) for k = 0..=k_max, sharing one shell
/// enumeration across all rows.
pub fn spectrum_table(lens: &LensSpace, k_max: u64) -> SpectrumTable {
    assert!(lens.n() >= 2, "spectral formulas need n >= 2");
    let n = lens.n() as u64;
    let lat = CongruenceLattice::new(lens);
    let shells = counting::shell_counts(&lat, k_max);
    let entries = (0..=k_max)
        .map(|k| SpectrumRow {
            k,
            lambda: k * (k + 2 * n - 2),
            mult: multiplicity_from_shells(lens.n(), &shells, k),
        })
        .collect();
    SpectrumTable {
        lens: lens.clone(),
        entries,
    }
}
