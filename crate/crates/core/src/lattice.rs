//! Congruence lattices of lens spaces: canonical bases, dual bases, and the
//! half-open parallelepiped data behind the Stanley generating function.
//!
//! The lattice of L(q; p) is { a in Z^n : sum_j a_j p_j ≡ 0 (mod q) }. It
//! has index q in Z^n and contains q Z^n. We store the unique basis whose
//! rows form a lower-triangular Hermite normal form; in the column
//! convention the generating matrix is its transpose.

use num::rational::BigRational;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lens::LensSpace;
use crate::linalg::{self, Mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("basis is singular")]
    SingularBasis,
    #[error("parallelepiped holds {points} integer points but the minor gcd is {minor_gcd}")]
    StanleyCountMismatch { minor_gcd: u64, points: usize },
}

/// The congruence lattice of a lens space with its canonical generating
/// matrix. `basis_rows()[i]` is the generator v_i; stacked as rows they are
/// in lower-triangular Hermite normal form (positive diagonal, zeros right
/// of it, entries under a pivot reduced modulo that pivot).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice {
    q: u64,
    p: Vec<u64>,
    basis: Vec<Vec<i64>>,
}

/// Exact dual basis u_1, ..., u_n with u_i . v_j = delta_ij, together with
/// the least positive integers l(u_i) clearing the denominators of u_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    pub vectors: Vec<Vec<BigRational>>,
    pub l: Vec<u64>,
}

/// One integer point of the half-open parallelepiped spanned by the
/// gamma_i = (l(u_i) u_i, l(u_i)), split as (coords, height) = (q_i, r_i),
/// with its exact coefficient vector in [0, 1)^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelepipedPoint {
    pub coords: Vec<i64>,
    pub height: u64,
    pub coefficients: Vec<BigRational>,
}

/// The finite invariants attached to a congruence lattice: the dual
/// denominators l(u_i), the generators gamma_i in Z^{n+1}, the integer
/// points of their half-open parallelepiped, and the gcd s of the maximal
/// minors, which must equal the number of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyData {
    pub l: Vec<u64>,
    pub gammas: Vec<Vec<i64>>,
    pub points: Vec<ParallelepipedPoint>,
    pub s: u64,
}

impl CongruenceLattice {
    pub fn new(lens: &LensSpace) -> Self {
        let q = lens.q();
        let p: Vec<u64> = lens.params().to_vec();
        let w: Vec<i128> = p.iter().map(|&x| x as i128).collect();
        let kernel = linalg::dot_kernel_basis(&w, Some(q as i128));
        let h = linalg::hnf_lower(kernel);
        let basis: Vec<Vec<i64>> = h
            .iter()
            .map(|row| row.iter().map(|&e| e as i64).collect())
            .collect();
        let lat = CongruenceLattice { q, p, basis };
        debug_assert_eq!(lat.det(), q);
        lat
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn params(&self) -> &[u64] {
        &self.p
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// Canonical generators v_i as rows (lower-triangular HNF).
    pub fn basis_rows(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// The generating matrix A in the column convention: column i is v_i.
    pub fn generating_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.basis[j][i]).collect())
            .collect()
    }

    /// |det A|, the index of the lattice in Z^n; always q.
    pub fn det(&self) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, r)| r[i] as u64)
            .product()
    }

    /// Membership by the defining congruence sum a_j p_j ≡ 0 (mod q).
    pub fn contains(&self, a: &[i64]) -> bool {
        assert_eq!(a.len(), self.n());
        let q = self.q as i128;
        let dot: i128 = a
            .iter()
            .zip(&self.p)
            .map(|(&ai, &pi)| ai as i128 * pi as i128)
            .sum();
        dot.rem_euclid(q) == 0
    }

    /// Membership by exact integer back-substitution against the triangular
    /// basis; agrees with `contains` everywhere (dual-route check).
    pub fn contains_via_basis(&self, a: &[i64]) -> bool {
        let n = self.n();
        assert_eq!(a.len(), n);
        let mut rem: Vec<i128> = a.iter().map(|&x| x as i128).collect();
        for i in (0..n).rev() {
            let d = self.basis[i][i] as i128;
            if rem[i] % d != 0 {
                return false;
            }
            let c = rem[i] / d;
            for (r, &b) in rem.iter_mut().zip(&self.basis[i][..=i]) {
                *r -= c * b as i128;
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    /// Elementary divisors of the basis; their product is q, and for lens
    /// lattices with n >= 2 the quotient Z^n / L is cyclic, so the divisors
    /// are (1, ..., 1, q).
    pub fn smith_invariants(&self) -> Vec<u64> {
        let m: Mat = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&e| e as i128).collect())
            .collect();
        let diag = linalg::smith_diagonal(m);
        let out: Vec<u64> = diag.iter().map(|&d| d as u64).collect();
        debug_assert_eq!(out.iter().product::<u64>(), self.q);
        out
    }

    /// Rows of A^{-1}, i.e. the columns of the transposed inverse of the
    /// generating matrix, with l(u_i) the lcm of the coordinate
    /// denominators. Every l(u_i) divides q since Z^n ⊆ L* ⊆ (1/q) Z^n.
    pub fn dual_basis(&self) -> Result<DualBasis, LatticeError> {
        let a: Mat = self
            .generating_matrix()
            .iter()
            .map(|r| r.iter().map(|&e| e as i128).collect())
            .collect();
        let inv = linalg::inverse_rational(&a).ok_or(LatticeError::SingularBasis)?;
        let l = inv
            .iter()
            .map(|u| {
                u.iter()
                    .fold(1i128, |acc, c| {
                        linalg::lcm(acc, c.denom().to_i128().expect("denominator fits i128"))
                    })
                    .to_u64()
                    .expect("l(u_i) fits u64")
            })
            .collect();
        Ok(DualBasis { vectors: inv, l })
    }

    /// The Stanley data: gamma_i = (l(u_i) u_i, l(u_i)), the integer points
    /// of their half-open parallelepiped, and s = gcd of the n x n minors.
    /// Fails loudly if the point count ever disagrees with s.
    pub fn stanley_data(&self) -> Result<StanleyData, LatticeError> {
        let dual = self.dual_basis()?;
        let n = self.n();
        let gammas_i128: Mat = dual
            .vectors
            .iter()
            .zip(&dual.l)
            .map(|(u, &li)| {
                let mut row: Vec<i128> = u
                    .iter()
                    .map(|c| {
                        let v = c * BigRational::from_integer(BigInt::from(li));
                        assert!(v.is_integer(), "l(u_i) u_i must be integral");
                        v.to_integer().to_i128().expect("gamma entry fits i128")
                    })
                    .collect();
                row.push(li as i128);
                row
            })
            .collect();

        let minors = linalg::signed_max_minors(&gammas_i128);
        let s = minors.iter().fold(0i128, |acc, &m| linalg::gcd(acc, m));
        assert!(s > 0, "gamma vectors must be linearly independent");

        let raw_points = half_open_points(&gammas_i128)?;
        if raw_points.len() != s as usize {
            return Err(LatticeError::StanleyCountMismatch {
                minor_gcd: s as u64,
                points: raw_points.len(),
            });
        }

        let mut points: Vec<ParallelepipedPoint> = raw_points
            .into_iter()
            .map(|(pt, coefficients)| {
                let height = pt[n];
                assert!(height >= 0, "heights are nonnegative");
                ParallelepipedPoint {
                    coords: pt[..n].iter().map(|&e| e as i64).collect(),
                    height: height as u64,
                    coefficients,
                }
            })
            .collect();
        points.sort_by(|a, b| (a.height, &a.coords).cmp(&(b.height, &b.coords)));

        Ok(StanleyData {
            l: dual.l,
            gammas: gammas_i128
                .iter()
                .map(|r| r.iter().map(|&e| e as i64).collect())
                .collect(),
            points,
            s: s as u64,
        })
    }
}

/// Integer points of the half-open parallelepiped { sum a_i g_i : 0 <= a_i < 1 }
/// spanned by the rows of `gammas` (n independent vectors in Z^n or Z^{n+1}),
/// each returned with its exact coefficient vector.
///
/// The points are coset representatives of the row lattice inside its
/// saturation, so they are enumerated through a triangular basis of the
/// quotient rather than a bounding-box scan: a box of representatives is
/// read off the column HNF and each one is reduced into the parallelepiped
/// by taking fractional parts of its exact coordinates.
/// An integer point together with its exact coefficients in the spanning
/// vectors.
pub(crate) type HalfOpenPoint = (Vec<i128>, Vec<BigRational>);

pub(crate) fn half_open_points(gammas: &Mat) -> Result<Vec<HalfOpenPoint>, LatticeError> {
    let n = gammas.len();
    let m = gammas[0].len();
    assert!(m == n || m == n + 1, "rows must live in Z^n or Z^{{n+1}}");

    // Basis of the saturation (all integer vectors of the rational row
    // span) and the coordinates of each gamma in it.
    let sat_basis: Mat = if m == n {
        (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i128).collect())
            .collect()
    } else {
        let w = linalg::signed_max_minors(gammas);
        let g = w.iter().fold(0i128, |acc, &x| linalg::gcd(acc, x));
        assert!(g > 0);
        let primitive: Vec<i128> = w.iter().map(|&x| x / g).collect();
        linalg::hnf_lower(linalg::dot_kernel_basis(&primitive, None))
    };
    assert_eq!(sat_basis.len(), n);
    let pivot_cols = linalg::hnf_pivot_columns(&sat_basis);

    // Express each gamma in the saturation basis: solve x B = gamma on the
    // pivot coordinates (a triangular nonsingular subsystem) and verify the
    // remaining coordinates exactly.
    let bt: Vec<Vec<BigRational>> = pivot_cols
        .iter()
        .map(|&c| {
            (0..n)
                .map(|j| linalg::big_ratio(sat_basis[j][c], 1))
                .collect()
        })
        .collect();
    let mut columns: Mat = Vec::with_capacity(n);
    for gamma in gammas {
        let target: Vec<BigRational> = gamma.iter().map(|&e| linalg::big_ratio(e, 1)).collect();
        let coords = solve_in_basis(&bt, &pivot_cols, &sat_basis, &target)?;
        columns.push(coords);
    }
    // Transpose: c_mat[i][j] = coordinate i of gamma_j.
    let c_mat: Mat = (0..n)
        .map(|i| (0..n).map(|j| columns[j][i]).collect())
        .collect();

    // Triangular basis of the same column lattice gives box representatives.
    let c_rows_as_lattice: Mat = (0..n)
        .map(|j| (0..n).map(|i| c_mat[i][j]).collect())
        .collect();
    let tri = linalg::hnf_lower(c_rows_as_lattice);
    let diag: Vec<i128> = (0..n).map(|i| tri[i][i]).collect();

    let c_rational: Vec<Vec<BigRational>> = c_mat
        .iter()
        .map(|r| r.iter().map(|&e| linalg::big_ratio(e, 1)).collect())
        .collect();

    let mut out = Vec::new();
    let mut rep = vec![0i128; n];
    enumerate_box(&diag, 0, &mut rep, &mut |rep| {
        let b: Vec<BigRational> = rep.iter().map(|&e| linalg::big_ratio(e, 1)).collect();
        let a = linalg::solve_rational(&c_rational, &b).expect("columns are independent");
        let frac: Vec<BigRational> = a.iter().map(|x| x - x.floor()).collect();
        // Reduced representative in saturation coordinates.
        let y: Vec<BigRational> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &c_rational[i][j] * &frac[j])
                    .fold(BigRational::zero(), |acc, v| acc + v)
            })
            .collect();
        let point: Vec<i128> = (0..m)
            .map(|coord| {
                let v: BigRational = (0..n)
                    .map(|i| &y[i] * linalg::big_ratio(sat_basis[i][coord], 1))
                    .fold(BigRational::zero(), |acc, v| acc + v);
                assert!(v.is_integer(), "reduced representative must be integral");
                v.to_integer().to_i128().expect("point entry fits i128")
            })
            .collect();
        // Exact membership check: point = sum frac_i gamma_i with frac in [0,1).
        for f in &frac {
            assert!(!f.is_negative() && f < &BigRational::one());
        }
        for coord in 0..m {
            let lhs: BigRational = (0..n)
                .map(|i| &frac[i] * linalg::big_ratio(gammas[i][coord], 1))
                .fold(BigRational::zero(), |acc, v| acc + v);
            assert_eq!(lhs, linalg::big_ratio(point[coord], 1));
        }
        out.push((point, frac));
    });
    // Distinct cosets give distinct reduced points.
    let mut seen = out.clone();
    seen.sort_by(|a, b| a.0.cmp(&b.0));
    seen.dedup_by(|a, b| a.0 == b.0);
    if seen.len() != out.len() {
        return Err(LatticeError::StanleyCountMismatch {
            minor_gcd: diag.iter().product::<i128>() as u64,
            points: seen.len(),
        });
    }
    Ok(out)
}

fn solve_in_basis(
    bt: &[Vec<BigRational>],
    pivot_cols: &[usize],
    sat_basis: &Mat,
    target: &[BigRational],
) -> Result<Vec<i128>, LatticeError> {
    let n = bt.len();
    let b: Vec<BigRational> = pivot_cols.iter().map(|&c| target[c].clone()).collect();
    let x = linalg::solve_rational(bt, &b).ok_or(LatticeError::SingularBasis)?;
    for (coord, t) in target.iter().enumerate() {
        let lhs: BigRational = (0..n)
            .map(|j| &x[j] * linalg::big_ratio(sat_basis[j][coord], 1))
            .fold(BigRational::zero(), |acc, v| acc + v);
        assert_eq!(&lhs, t, "gamma must lie in the saturation");
    }
    let ints = x
        .iter()
        .map(|c| {
            assert!(
                c.is_integer(),
                "gamma coordinates in the saturation basis are integers"
            );
            c.to_integer().to_i128().expect("fits i128")
        })
        .collect();
    Ok(ints)
}

fn enumerate_box(diag: &[i128], depth: usize, rep: &mut Vec<i128>, f: &mut impl FnMut(&[i128])) {
    if depth == diag.len() {
        f(rep);
        return;
    }
    for v in 0..diag[depth] {
        rep[depth] = v;
        enumerate_box(diag, depth + 1, rep, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_ratio;

    fn lens(lit: &str) -> LensSpace {
        lit.parse().unwrap()
    }

    #[test]
    fn sphere_lattice_is_identity() {
        let lat = CongruenceLattice::new(&lens("1:0,0"));
        assert_eq!(lat.basis_rows(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(lat.det(), 1);
    }

    #[test]
    fn canonical_bases_match_known_values() {
        let lat = CongruenceLattice::new(&lens("7:1,1"));
        assert_eq!(lat.basis_rows(), &[vec![7, 0], vec![6, 1]]);
        assert_eq!(lat.det(), 7);

        let lat = CongruenceLattice::new(&lens("5:1,2"));
        assert_eq!(lat.basis_rows(), &[vec![5, 0], vec![3, 1]]);
        assert_eq!(lat.det(), 5);
    }

    #[test]
    fn membership_routes_agree_on_a_box() {
        // Every point of the box [-2q, 2q]^n: congruence test and basis
        // back-substitution must agree.
        for lit in ["7:1,1", "5:1,2", "11:1,2,3", "1:0,0"] {
            let l = lens(lit);
            let lat = CongruenceLattice::new(&l);
            let bound = 2 * (lat.q() as i64).max(2);
            let n = lat.n();
            let mut a = vec![-bound; n];
            'grid: loop {
                assert_eq!(
                    lat.contains(&a),
                    lat.contains_via_basis(&a),
                    "{lit} disagrees at {a:?}"
                );
                let mut i = 0;
                loop {
                    if i == n {
                        break 'grid;
                    }
                    a[i] += 1;
                    if a[i] <= bound {
                        break;
                    }
                    a[i] = -bound;
                    i += 1;
                }
            }
        }
    }

    #[test]
    fn q_zn_is_contained() {
        for lit in ["7:1,1", "11:1,2,3", "13:1,5"] {
            let l = lens(lit);
            let lat = CongruenceLattice::new(&l);
            let q = lat.q() as i64;
            for i in 0..lat.n() {
                let mut e = vec![0i64; lat.n()];
                e[i] = q;
                assert!(lat.contains_via_basis(&e));
            }
        }
    }

    #[test]
    fn dual_basis_example() {
        let lat = CongruenceLattice::new(&lens("7:1,1"));
        let dual = lat.dual_basis().unwrap();
        assert_eq!(dual.vectors[0], vec![big_ratio(1, 7), big_ratio(-6, 7)]);
        assert_eq!(dual.vectors[1], vec![big_ratio(0, 1), big_ratio(1, 1)]);
        assert_eq!(dual.l, vec![7, 1]);
    }

    #[test]
    fn dual_pairing_is_kronecker() {
        for lit in ["7:1,1", "11:1,2,3", "12:1,5,7", "1:0,0"] {
            let lat = CongruenceLattice::new(&lens(lit));
            let dual = lat.dual_basis().unwrap();
            let n = lat.n();
            for i in 0..n {
                assert_eq!(lat.q() % dual.l[i], 0, "l(u_i) divides q");
                for j in 0..n {
                    let dot: BigRational = (0..n)
                        .map(|c| &dual.vectors[i][c] * big_ratio(lat.basis_rows()[j][c] as i128, 1))
                        .fold(BigRational::zero(), |acc, v| acc + v);
                    assert_eq!(dot, big_ratio((i == j) as i128, 1));
                }
            }
        }
    }

    #[test]
    fn smith_invariants_are_cyclic() {
        assert_eq!(
            CongruenceLattice::new(&lens("1:0,0")).smith_invariants(),
            vec![1, 1]
        );
        assert_eq!(
            CongruenceLattice::new(&lens("7:1,1")).smith_invariants(),
            vec![1, 7]
        );
        for lit in ["11:1,2,3", "13:1,5", "9:1,2,4,5"] {
            let lat = CongruenceLattice::new(&lens(lit));
            let mut expected = vec![1u64; lat.n() - 1];
            expected.push(lat.q());
            assert_eq!(lat.smith_invariants(), expected);
        }
    }

    #[test]
    fn stanley_data_examples() {
        // q = 1: unit parallelepiped of (e_1,1), (e_2,1) holds only the origin.
        let sd = CongruenceLattice::new(&lens("1:0,0"))
            .stanley_data()
            .unwrap();
        assert_eq!(sd.s, 1);
        assert_eq!(sd.points.len(), 1);
        assert_eq!(sd.points[0].coords, vec![0, 0]);
        assert_eq!(sd.points[0].height, 0);

        let sd = CongruenceLattice::new(&lens("7:1,1"))
            .stanley_data()
            .unwrap();
        assert_eq!(sd.gammas, vec![vec![1, -6, 7], vec![0, 1, 1]]);
        assert_eq!(sd.s as usize, sd.points.len());
        for pt in &sd.points {
            for c in &pt.coefficients {
                assert!(!c.is_negative() && c < &BigRational::one());
            }
        }
        // The origin at height zero is always present.
        assert!(sd
            .points
            .iter()
            .any(|p| p.height == 0 && p.coords.iter().all(|&c| c == 0)));
    }

    #[test]
    fn stanley_point_count_matches_minor_gcd() {
        for lit in ["1:0,0", "7:1,1", "5:1,2", "11:1,2,3", "12:1,5,7", "8:1,3"] {
            let sd = CongruenceLattice::new(&lens(lit)).stanley_data().unwrap();
            assert_eq!(sd.points.len(), sd.s as usize, "{lit}");
        }
    }

    #[test]
    fn half_open_points_nontrivial_index() {
        // Square case: gammas (1,1) and (-1,1) span an index-2 sublattice;
        // the parallelepiped holds (0,0) and (0,1) = (g1 + g2) / 2.
        let pts = half_open_points(&vec![vec![1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(pts.len(), 2);
        let coords: Vec<Vec<i128>> = pts.iter().map(|(p, _)| p.clone()).collect();
        assert!(coords.contains(&vec![0, 0]));
        assert!(coords.contains(&vec![0, 1]));
        for (_, coeffs) in &pts {
            for c in coeffs {
                assert!(!c.is_negative() && c < &BigRational::one());
            }
        }
    }

    #[test]
    fn half_open_points_rectangular_nontrivial() {
        // gammas (2, 0, 2) and (0, 1, 1): saturation is spanned by (1,0,1)
        // and (0,1,1), index 2, so two points.
        let pts = half_open_points(&vec![vec![2, 0, 2], vec![0, 1, 1]]).unwrap();
        assert_eq!(pts.len(), 2);
        let coords: Vec<Vec<i128>> = pts.iter().map(|(p, _)| p.clone()).collect();
        assert!(coords.contains(&vec![0, 0, 0]));
        assert!(coords.contains(&vec![1, 0, 1]));
    }
}
