//! Isospectrality tests with a finite rigorous certificate, the finite
//! Stanley-invariant comparison, and exhaustive search for isospectral
//! non-isometric families.
//!
//! Two lens spaces with the same q and n are isospectral iff their lattice
//! shell counts agree at every norm. The counting function is a degree-n
//! quasi-polynomial with period dividing q, so agreement of the shell
//! vectors on 0 .. q(n+1)-1 pins both quasi-polynomials completely and is
//! therefore a proof, not a heuristic. Spaces with different q or n have
//! different volumes and are separated without counting.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{self, QuasiPolynomial};
use crate::lattice::CongruenceLattice;
use crate::lens::{self, LensSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search over {candidates} parameter lists exceeds the configured bound {limit}")]
    TooManyCandidates { candidates: u128, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Isospectral,
    /// First norm with unequal shell counts, with both counts.
    NotIsospectral {
        k: u64,
        counts: (u64, u64),
    },
    /// Different q or different n: separated by volume alone.
    Trivial {
        same_q: bool,
        same_n: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsospectralityReport {
    pub verdict: Verdict,
    /// Both interpolated quasi-polynomials when the verdict is Isospectral;
    /// they are always coefficient-identical.
    pub certificate: Option<Box<(QuasiPolynomial, QuasiPolynomial)>>,
    /// Whether the multisets of dual denominators l(u_i) and parallelepiped
    /// heights r_i agree. Reported alongside the verdict, never in place of
    /// it: with canonical bases this comparison does not separate spaces
    /// that the shell vectors do.
    pub stanley_match: bool,
}

/// Number of shell samples that rigorously determine the counting
/// quasi-polynomial: n + 1 per residue class modulo q.
pub fn certificate_sample_bound(q: u64, n: usize) -> u64 {
    q * (n as u64 + 1)
}

pub fn isospectral_test(a: &LensSpace, b: &LensSpace) -> IsospectralityReport {
    let stanley_match = stanley_certificate(a, b);
    if a.q() != b.q() || a.n() != b.n() {
        return IsospectralityReport {
            verdict: Verdict::Trivial {
                same_q: a.q() == b.q(),
                same_n: a.n() == b.n(),
            },
            certificate: None,
            stanley_match,
        };
    }
    let bound = certificate_sample_bound(a.q(), a.n());
    let lat_a = CongruenceLattice::new(a);
    let lat_b = CongruenceLattice::new(b);
    let shells_a = counting::shell_counts(&lat_a, bound - 1);
    let shells_b = counting::shell_counts(&lat_b, bound - 1);
    for k in 0..bound {
        let (ca, cb) = (shells_a[k as usize], shells_b[k as usize]);
        if ca != cb {
            return IsospectralityReport {
                verdict: Verdict::NotIsospectral {
                    k,
                    counts: (ca, cb),
                },
                certificate: None,
                stanley_match,
            };
        }
    }
    let qp_a = counting::interpolate_quasipoly(&lat_a).expect("interpolation is exact");
    let qp_b = counting::interpolate_quasipoly(&lat_b).expect("interpolation is exact");
    debug_assert_eq!(qp_a, qp_b);
    IsospectralityReport {
        verdict: Verdict::Isospectral,
        certificate: Some(Box::new((qp_a, qp_b))),
        stanley_match,
    }
}

/// True iff the multisets of dual denominators l(u_i) and of parallelepiped
/// heights r_i coincide for the two lattices.
pub fn stanley_certificate(a: &LensSpace, b: &LensSpace) -> bool {
    let data = |l: &LensSpace| {
        let sd = CongruenceLattice::new(l)
            .stanley_data()
            .expect("point count matches minor gcd");
        let mut ls = sd.l.clone();
        ls.sort_unstable();
        let mut heights: Vec<u64> = sd.points.iter().map(|p| p.height).collect();
        heights.sort_unstable();
        (ls, heights)
    };
    data(a) == data(b)
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Upper bound on the number of parameter lists to enumerate; `None`
    /// leaves the search unbounded.
    pub max_candidates: Option<u64>,
}

/// A class of pairwise isospectral, pairwise non-isometric lens spaces:
/// canonical representatives sharing the full certificate shell vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsospectralBucket {
    pub members: Vec<LensSpace>,
    pub shell_vector: Vec<u64>,
}

/// Enumerates all lens spaces L(q; p) with n parameters up to isometry,
/// buckets them by the shell vector of length q(n+1), and returns the
/// buckets with at least two members. Members of one bucket are certified
/// isospectral by the sample bound and non-isometric by canonical-form
/// dedup.
pub fn search_pairs(
    q: u64,
    n: usize,
    options: &SearchOptions,
) -> Result<Vec<IsospectralBucket>, SearchError> {
    assert!(q >= 1 && n >= 2);
    let units = lens::units(q);
    let candidates = (units.len() as u128).pow(n as u32);
    if let Some(limit) = options.max_candidates {
        if candidates > limit as u128 {
            return Err(SearchError::TooManyCandidates { candidates, limit });
        }
    }

    let mut lists: Vec<Vec<u64>> = Vec::with_capacity(candidates as usize);
    let mut p = vec![0u64; n];
    fn enumerate(depth: usize, units: &[u64], p: &mut Vec<u64>, lists: &mut Vec<Vec<u64>>) {
        if depth == p.len() {
            lists.push(p.clone());
            return;
        }
        for &u in units {
            p[depth] = u;
            enumerate(depth + 1, units, p, lists);
        }
    }
    enumerate(0, &units, &mut p, &mut lists);
    let reps: BTreeSet<Vec<u64>> = lists
        .par_iter()
        .map(|p| {
            let l = LensSpace::new(q, &p.iter().map(|&x| x as i64).collect::<Vec<_>>())
                .expect("units are coprime");
            l.canonical_form().params().to_vec()
        })
        .collect();

    let reps: Vec<LensSpace> = reps
        .into_iter()
        .map(|p| LensSpace::new(q, &p.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap())
        .collect();
    let bound = certificate_sample_bound(q, n);
    let vectors: Vec<Vec<u64>> = reps
        .par_iter()
        .map(|l| counting::shell_counts(&CongruenceLattice::new(l), bound - 1))
        .collect();

    let mut buckets: BTreeMap<Vec<u64>, Vec<LensSpace>> = BTreeMap::new();
    for (l, v) in reps.into_iter().zip(vectors) {
        buckets.entry(v).or_default().push(l);
    }
    Ok(buckets
        .into_iter()
        .filter(|(_, members)| members.len() >= 2)
        .map(|(shell_vector, members)| IsospectralBucket {
            members,
            shell_vector,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum;

    fn lens(lit: &str) -> LensSpace {
        lit.parse().unwrap()
    }

    #[test]
    fn classical_pair_is_isospectral_and_not_isometric() {
        let a = lens("11:1,2,3");
        let b = lens("11:1,2,4");
        let report = isospectral_test(&a, &b);
        assert_eq!(report.verdict, Verdict::Isospectral);
        let cert = report.certificate.unwrap();
        assert_eq!(cert.0, cert.1);
        assert!(a.isometry_to(&b).is_none());
    }

    #[test]
    fn negative_pair_carries_a_witness() {
        let a = lens("5:1,1");
        let b = lens("5:1,2");
        let report = isospectral_test(&a, &b);
        // First differing shell: norm 2 holds (1,-1), (-1,1) for p=(1,1)
        // and nothing for p=(1,2).
        assert_eq!(
            report.verdict,
            Verdict::NotIsospectral {
                k: 2,
                counts: (2, 0)
            }
        );
        assert!(report.certificate.is_none());
        // The finite Stanley invariants do not separate this pair; the
        // report carries both facts side by side.
        assert!(report.stanley_match);
    }

    #[test]
    fn isometric_pairs_are_isospectral() {
        let a = lens("7:1,2");
        let b = lens("7:2,4");
        assert!(a.isometry_to(&b).is_some());
        assert_eq!(isospectral_test(&a, &b).verdict, Verdict::Isospectral);
        // Reflexive and symmetric.
        assert_eq!(isospectral_test(&a, &a).verdict, Verdict::Isospectral);
        let ab = isospectral_test(&a, &b);
        let ba = isospectral_test(&b, &a);
        assert_eq!(ab.verdict, ba.verdict);
    }

    #[test]
    fn mismatched_inputs_are_trivial() {
        let report = isospectral_test(&lens("5:1,1"), &lens("7:1,1"));
        assert_eq!(
            report.verdict,
            Verdict::Trivial {
                same_q: false,
                same_n: true
            }
        );
        let report = isospectral_test(&lens("5:1,1"), &lens("5:1,1,1"));
        assert_eq!(
            report.verdict,
            Verdict::Trivial {
                same_q: true,
                same_n: false
            }
        );
    }

    #[test]
    fn isospectral_pairs_share_spectrum_tables() {
        let a = lens("11:1,2,3");
        let b = lens("11:1,2,4");
        let k_max = 2 * a.q();
        assert_eq!(
            spectrum::spectrum_table(&a, k_max).entries,
            spectrum::spectrum_table(&b, k_max).entries
        );
    }

    #[test]
    fn stanley_certificate_examples() {
        let a = lens("11:1,2,3");
        assert!(stanley_certificate(&a, &a));
        assert!(stanley_certificate(&a, &lens("11:1,2,4")));
    }

    #[test]
    fn search_finds_the_classical_bucket() {
        let buckets = search_pairs(11, 3, &SearchOptions::default()).unwrap();
        assert_eq!(buckets.len(), 1);
        let members: Vec<String> = buckets[0].members.iter().map(|l| l.to_string()).collect();
        assert_eq!(members, vec!["11:1,2,3", "11:1,2,4"]);
        assert_eq!(buckets[0].shell_vector.len(), 44);
    }

    #[test]
    fn search_finds_nothing_small() {
        assert!(search_pairs(5, 2, &SearchOptions::default())
            .unwrap()
            .is_empty());
        assert!(search_pairs(1, 2, &SearchOptions::default())
            .unwrap()
            .is_empty());
        assert!(search_pairs(1, 3, &SearchOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn search_bound_is_enforced() {
        let opts = SearchOptions {
            max_candidates: Some(10),
        };
        assert!(matches!(
            search_pairs(11, 3, &opts),
            Err(SearchError::TooManyCandidates { .. })
        ));
    }
}
