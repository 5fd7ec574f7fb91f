//! Property tests for the structural invariants: the isometry relation is
//! an equivalence with canonical forms as class representatives, counting
//! routes agree, and Hermite forms are canonical under basis remixing.

use proptest::prelude::*;

use lensform_core::counting;
use lensform_core::lattice::CongruenceLattice;
use lensform_core::lens::LensSpace;
use lensform_core::linalg;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Strategy for a valid lens space with q <= 13 and n in 1..=3.
fn arb_lens() -> impl Strategy<Value = LensSpace> {
    (1u64..=13, 1usize..=3).prop_flat_map(|(q, n)| {
        let units: Vec<i64> = (0..q as i64).filter(|&t| gcd(t as u64, q) == 1).collect();
        prop::collection::vec(prop::sample::select(units), n)
            .prop_map(move |p| LensSpace::new(q, &p).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isometry_is_an_equivalence(a in arb_lens(), b in arb_lens(), c in arb_lens()) {
        // Reflexive, and the witness really maps a to a.
        let w = a.isometry_to(&a).unwrap();
        prop_assert_eq!(w.apply(&a), a.clone());
        // Symmetric.
        prop_assert_eq!(a.isometry_to(&b).is_some(), b.isometry_to(&a).is_some());
        // Transitive.
        if a.isometry_to(&b).is_some() && b.isometry_to(&c).is_some() {
            prop_assert!(a.isometry_to(&c).is_some());
        }
    }

    #[test]
    fn canonical_forms_classify_isometry(a in arb_lens(), b in arb_lens()) {
        let same_class = a.canonical_form() == b.canonical_form();
        let witnessed = a.isometry_to(&b).is_some();
        prop_assert_eq!(same_class, witnessed);
        // The canonical form is itself in the orbit.
        prop_assert!(a.isometry_to(&a.canonical_form()).is_some());
    }

    #[test]
    fn witnesses_map_source_to_target(a in arb_lens(), b in arb_lens()) {
        if let Some(w) = a.isometry_to(&b) {
            prop_assert_eq!(w.apply(&a), b);
        }
    }

    #[test]
    fn construction_rejects_exactly_shared_factors(
        q in 1u64..=20,
        p in prop::collection::vec(-25i64..=25, 1..=3),
    ) {
        match LensSpace::new(q, &p) {
            Ok(l) => {
                for (i, &v) in p.iter().enumerate() {
                    if q > 1 {
                        prop_assert_eq!(gcd(v.rem_euclid(q as i64) as u64, q), 1);
                        let stored = l.params()[i];
                        prop_assert!(stored >= 1 && stored < q);
                    } else {
                        prop_assert_eq!(l.params()[i], 0);
                    }
                }
            }
            Err(_) => {
                let some_shared = p
                    .iter()
                    .any(|&v| q > 1 && gcd(v.rem_euclid(q as i64) as u64, q) != 1);
                prop_assert!(some_shared || p.is_empty());
            }
        }
    }

    #[test]
    fn hnf_is_invariant_under_unimodular_remix(
        l in arb_lens(),
        ops in prop::collection::vec((0usize..6, -3i128..=3), 0..8),
    ) {
        let lat = CongruenceLattice::new(&l);
        let n = lat.n();
        let mut rows: Vec<Vec<i128>> = lat
            .basis_rows()
            .iter()
            .map(|r| r.iter().map(|&e| e as i128).collect())
            .collect();
        // Apply elementary unimodular row operations.
        for (op, c) in ops {
            let (i, j) = (op % n, (op / 2) % n);
            match op % 3 {
                0 => rows.swap(i, j),
                1 => {
                    for e in &mut rows[i] {
                        *e = -*e;
                    }
                }
                _ => {
                    if i != j {
                        let src = rows[j].clone();
                        for (d, s) in rows[i].iter_mut().zip(&src) {
                            *d += c * s;
                        }
                    }
                }
            }
        }
        let original: Vec<Vec<i128>> = lat
            .basis_rows()
            .iter()
            .map(|r| r.iter().map(|&e| e as i128).collect())
            .collect();
        prop_assert_eq!(linalg::hnf_lower(rows), original);
    }

    #[test]
    fn counting_routes_and_telescoping(l in arb_lens(), k in 0u64..=10) {
        let lat = CongruenceLattice::new(&l);
        let balls = counting::ball_counts(&lat, k.max(1));
        let shells = counting::shell_counts(&lat, k.max(1));
        for s in 1..=k.max(1) as usize {
            prop_assert_eq!(balls[s] - balls[s - 1], shells[s]);
            prop_assert!(balls[s] >= balls[s - 1]);
        }
        let k_small = k.min(3 * l.q()).min(8);
        prop_assert_eq!(
            counting::ball_count(&lat, k_small),
            counting::ball_count_via_basis(&lat, k_small)
        );
    }

    #[test]
    fn quasipoly_evaluates_to_counts(l in arb_lens()) {
        let lat = CongruenceLattice::new(&l);
        let qp = counting::interpolate_quasipoly(&lat).unwrap();
        let k_hi = (3 * l.q() + 5).min(40);
        let balls = counting::ball_counts(&lat, k_hi);
        for k in 0..=k_hi {
            prop_assert_eq!(
                qp.evaluate_integer(k),
                num::BigInt::from(balls[k as usize])
            );
        }
        let expected = counting::expected_leading_coefficient(l.n(), l.q());
        for j in 0..l.q() {
            prop_assert_eq!(qp.leading_coefficient(j), &expected);
        }
    }

    #[test]
    fn stanley_points_sit_in_the_parallelepiped(l in arb_lens()) {
        let lat = CongruenceLattice::new(&l);
        let sd = lat.stanley_data().unwrap();
        prop_assert_eq!(sd.points.len(), sd.s as usize);
        for l_i in &sd.l {
            prop_assert_eq!(l.q() % l_i, 0);
        }
        // Origin at height zero is always one of the points.
        prop_assert!(sd
            .points
            .iter()
            .any(|p| p.height == 0 && p.coords.iter().all(|&c| c == 0)));
    }
}
