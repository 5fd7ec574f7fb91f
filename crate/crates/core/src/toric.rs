//! The combinatorial shadow of the toric variety attached to a lens space:
//! the integral polytope P with vertices ±q u_i, its very-ample dilate nP,
//! section dimensions of powers of the natural line bundle, the Ehrhart
//! polynomial of the q-th dilate, and the toric degree.
//!
//! Every quantity here is a lattice-point count or an exact coefficient of
//! a counting polynomial; no fan or chart data is materialized.

use num::rational::BigRational;
use num::ToPrimitive;

use crate::counting::{self, CountingError};
use crate::lattice::CongruenceLattice;
use crate::lens::LensSpace;
use crate::linalg::{self, big_ratio};

/// The integral cross-polytope q * conv{±u_1, ..., ±u_n} together with the
/// very-ampleness dilate factor n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensPolytope {
    /// 2n integer vertices: q u_1, ..., q u_n, -q u_1, ..., -q u_n.
    pub vertices: Vec<Vec<i64>>,
    pub dilate_factor: u32,
    pub q: u64,
    pub n: usize,
}

pub fn lens_polytope(lens: &LensSpace) -> LensPolytope {
    let lat = CongruenceLattice::new(lens);
    let dual = lat.dual_basis().expect("valid lattice");
    let q = lens.q();
    let n = lens.n();
    let mut vertices: Vec<Vec<i64>> = dual
        .vectors
        .iter()
        .map(|u| {
            u.iter()
                .map(|c| {
                    let v = c * big_ratio(q as i128, 1);
                    assert!(v.is_integer(), "q u_i is integral since l(u_i) | q");
                    v.to_integer().to_i64().expect("vertex entry fits i64")
                })
                .collect()
        })
        .collect();
    let negatives: Vec<Vec<i64>> = vertices
        .iter()
        .map(|v| v.iter().map(|&e| -e).collect())
        .collect();
    vertices.extend(negatives);
    LensPolytope {
        vertices,
        dilate_factor: n as u32,
        q,
        n,
    }
}

/// dim H^0(X, L^k): lattice points of the k-th dilate of the very ample
/// polytope nP, i.e. the ball count at radius k n q.
pub fn h0_dim(lens: &LensSpace, k: u64) -> u64 {
    assert!(k >= 1);
    let lat = CongruenceLattice::new(lens);
    counting::ball_count(&lat, k * lens.n() as u64 * lens.q())
}

/// Volume of a fundamental domain of the lattice: |det A| = q.
pub fn fundamental_volume(lens: &LensSpace) -> u64 {
    CongruenceLattice::new(lens).det()
}

/// Exact coefficients (ascending) of the Ehrhart polynomial of the integral
/// polytope qP': k -> #(k q P' ∩ Z^n) is a true polynomial of degree n with
/// leading coefficient 2^n q^{n-1} / n!.
pub fn ehrhart_polynomial_of_qp(lens: &LensSpace) -> Result<Vec<BigRational>, CountingError> {
    let n = lens.n() as u64;
    let q = lens.q();
    let lat = CongruenceLattice::new(lens);
    let balls = counting::ball_counts(&lat, (n + 2) * q);
    let points: Vec<(BigRational, BigRational)> = (0..=n)
        .map(|t| {
            (
                big_ratio(t as i128, 1),
                big_ratio(balls[(t * q) as usize] as i128, 1),
            )
        })
        .collect();
    let fit = linalg::fit_polynomial(&points);
    for t in [n + 1, n + 2] {
        let expected = balls[(t * q) as usize];
        let got = linalg::eval_polynomial(&fit, &big_ratio(t as i128, 1));
        if got != big_ratio(expected as i128, 1) {
            return Err(CountingError::InterpolationMismatch {
                k: t,
                expected,
                got: got.to_string(),
            });
        }
    }
    Ok(fit)
}

/// Second-highest Ehrhart coefficient of qP': half the relative boundary
/// volume of the polytope.
pub fn boundary_invariant(lens: &LensSpace) -> BigRational {
    let coeffs = ehrhart_polynomial_of_qp(lens).expect("polynomial fit is exact");
    coeffs[lens.n() - 1].clone()
}

/// Degree of the toric variety: n! times the volume of nP, computed from
/// the closed form 2^n n^n q^{n-1} and cross-checked against n! times the
/// leading coefficient of the counting polynomial of nP's dilates.
pub fn toric_degree(lens: &LensSpace) -> u64 {
    let n = lens.n() as u64;
    let q = lens.q();
    let closed: u128 = (1u128 << n) * (n as u128).pow(n as u32) * (q as u128).pow(n as u32 - 1);

    let lat = CongruenceLattice::new(lens);
    let balls = counting::ball_counts(&lat, n * n * q);
    let points: Vec<(BigRational, BigRational)> = (0..=n)
        .map(|t| {
            (
                big_ratio(t as i128, 1),
                big_ratio(balls[(t * n * q) as usize] as i128, 1),
            )
        })
        .collect();
    let fit = linalg::fit_polynomial(&points);
    let factorial: i128 = (1..=n as i128).product();
    let counted = fit[n as usize].clone() * big_ratio(factorial, 1);
    assert_eq!(
        counted,
        big_ratio(closed as i128, 1),
        "volume by counting must match the closed form"
    );
    closed.to_u64().expect("degree fits u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(lit: &str) -> LensSpace {
        lit.parse().unwrap()
    }

    #[test]
    fn polytope_vertices() {
        let p = lens_polytope(&lens("1:1,1"));
        assert_eq!(
            p.vertices,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]
        );
        assert_eq!(p.dilate_factor, 2);

        let p = lens_polytope(&lens("7:1,1"));
        assert_eq!(
            p.vertices,
            vec![vec![1, -6], vec![0, 7], vec![-1, 6], vec![0, -7]]
        );
    }

    #[test]
    fn polytope_is_centrally_symmetric_and_integral() {
        for lit in ["7:1,1", "11:1,2,3", "12:1,5,7"] {
            let p = lens_polytope(&lens(lit));
            assert_eq!(p.vertices.len(), 2 * p.n);
            for v in &p.vertices {
                let neg: Vec<i64> = v.iter().map(|&e| -e).collect();
                assert!(p.vertices.contains(&neg), "{lit}");
            }
        }
    }

    #[test]
    fn section_dimensions() {
        // Sphere, n = 2, k = 1: ball of radius 2 in Z^2.
        assert_eq!(h0_dim(&lens("1:1,1"), 1), 13);
        assert_eq!(h0_dim(&lens("1:1,1"), 2), 41);
        // Strictly increasing in k.
        let l = lens("7:1,1");
        let mut prev = 0;
        for k in 1..=5 {
            let d = h0_dim(&l, k);
            assert!(d > prev);
            prev = d;
        }
    }

    #[test]
    fn fundamental_volume_is_q() {
        for lit in ["1:1,1", "7:1,1", "11:1,2,3"] {
            let l = lens(lit);
            assert_eq!(fundamental_volume(&l), l.q());
        }
    }

    #[test]
    fn ehrhart_of_qp_examples() {
        // q = 1, n = 2: 2k^2 + 2k + 1.
        let coeffs = ehrhart_polynomial_of_qp(&lens("1:1,1")).unwrap();
        assert_eq!(
            coeffs,
            vec![big_ratio(1, 1), big_ratio(2, 1), big_ratio(2, 1)]
        );
        assert_eq!(boundary_invariant(&lens("1:1,1")), big_ratio(2, 1));

        // Leading coefficient 2^n q^{n-1} / n! and constant term 1.
        for lit in ["7:1,1", "5:1,2", "11:1,2,3", "6:1,5"] {
            let l = lens(lit);
            let n = l.n();
            let coeffs = ehrhart_polynomial_of_qp(&l).unwrap();
            let factorial: i128 = (1..=n as i128).product();
            assert_eq!(
                coeffs[n],
                big_ratio((1 << n) * (l.q() as i128).pow(n as u32 - 1), factorial),
                "{lit}"
            );
            assert_eq!(coeffs[0], big_ratio(1, 1), "{lit}: count at k = 0");
        }
    }

    #[test]
    fn toric_degrees() {
        assert_eq!(toric_degree(&lens("1:1,1")), 16);
        assert_eq!(toric_degree(&lens("7:1,1")), 112);
        assert_eq!(
            toric_degree(&lens("11:1,2,3")),
            toric_degree(&lens("11:1,2,4"))
        );
    }
}
