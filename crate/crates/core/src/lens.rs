//! Lens-space parameters, validation, and the classical isometry test.
//!
//! A lens space L(q; p_1, ..., p_n) is the quotient of the sphere S^{2n-1}
//! by the cyclic group of order q acting by simultaneous rotations with
//! angles 2*pi*p_j/q. The action is free exactly when every p_j is coprime
//! to q. Two parameter lists give isometric quotients iff one is carried to
//! the other by a unit scaling, a coordinate permutation, and sign flips
//! modulo q; that finite orbit drives both `isometry_to` and
//! `canonical_form`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("group order q must be at least 1")]
    ZeroOrder,
    #[error("parameter list is empty")]
    EmptyParameters,
    #[error("p[{index}] = {value} is not coprime to q = {q} (common factor {factor}): the action is not free")]
    NotCoprime {
        index: usize,
        value: i64,
        q: u64,
        factor: u64,
    },
    #[error("bad token '{token}' in lens literal (expected \"q:p1,p2,...,pn\")")]
    BadToken { token: String },
}

/// Rotation parameters (q; p_1, ..., p_n) of a lens space, stored reduced
/// modulo q into [1, q-1]; for q = 1 every parameter normalizes to 0 and the
/// space is the sphere itself.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LensSpace {
    q: u64,
    p: Vec<u64>,
}

/// A witness that two parameter lists are isometric: applying the unit `t`,
/// the coordinate permutation `sigma`, and the signs `eps` to the source
/// list yields the target list modulo q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryWitness {
    pub t: u64,
    pub sigma: Vec<usize>,
    pub eps: Vec<i8>,
}

impl IsometryWitness {
    /// Image of `src` under this witness: p'[i] = eps[i] * t * p[sigma[i]].
    pub fn apply(&self, src: &LensSpace) -> LensSpace {
        assert_eq!(src.n(), self.sigma.len());
        let q = src.q as i128;
        let p = self
            .sigma
            .iter()
            .zip(&self.eps)
            .map(|(&s, &e)| {
                ((e as i128) * (self.t as i128) * (src.p[s] as i128)).rem_euclid(q) as u64
            })
            .collect();
        LensSpace { q: src.q, p }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Units modulo q, ascending; for q = 1 this is the single residue 0.
pub(crate) fn units(q: u64) -> Vec<u64> {
    (0..q.max(1)).filter(|&t| gcd_u64(t, q) == 1).collect()
}

impl LensSpace {
    pub fn new(q: u64, p: &[i64]) -> Result<Self, LensError> {
        if q == 0 {
            return Err(LensError::ZeroOrder);
        }
        if p.is_empty() {
            return Err(LensError::EmptyParameters);
        }
        let mut normalized = Vec::with_capacity(p.len());
        for (index, &value) in p.iter().enumerate() {
            let r = value.rem_euclid(q as i64) as u64;
            let factor = gcd_u64(r, q);
            if q > 1 && factor != 1 {
                return Err(LensError::NotCoprime {
                    index,
                    value,
                    q,
                    factor,
                });
            }
            normalized.push(r);
        }
        Ok(LensSpace { q, p: normalized })
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

    /// Dimension 2n - 1 of the underlying manifold.
    pub fn dim(&self) -> usize {
        2 * self.n() - 1
    }

    pub fn is_sphere(&self) -> bool {
        self.q == 1
    }

    /// n = 1 quotients are circles; spectral routines require n >= 2.
    pub fn low_dimensional(&self) -> bool {
        self.n() < 2
    }

    fn for_each_image(&self, mut f: impl FnMut(&[u64], u64, &[usize], &[i8]) -> bool) {
        let n = self.n();
        let q = self.q as i128;
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut cand = vec![0u64; n];
        let mut eps = vec![0i8; n];
        for &t in &units(self.q) {
            for sigma in &perms {
                for mask in 0..(1u32 << n) {
                    for i in 0..n {
                        eps[i] = if mask & (1 << i) == 0 { 1 } else { -1 };
                        let v = (eps[i] as i128) * (t as i128) * (self.p[sigma[i]] as i128);
                        cand[i] = v.rem_euclid(q) as u64;
                    }
                    if f(&cand, t, sigma, &eps) {
                        return;
                    }
                }
            }
        }
    }

    /// Exhaustive search over units x permutations x signs for an isometry
    /// carrying `self` to `other`. Returns `None` when q or n differ, or
    /// when the full orbit misses `other`.
    pub fn isometry_to(&self, other: &LensSpace) -> Option<IsometryWitness> {
        if self.q != other.q || self.n() != other.n() {
            return None;
        }
        let mut found = None;
        self.for_each_image(|cand, t, sigma, eps| {
            if cand == other.p.as_slice() {
                found = Some(IsometryWitness {
                    t,
                    sigma: sigma.to_vec(),
                    eps: eps.to_vec(),
                });
                true
            } else {
                false
            }
        });
        found
    }

    /// Lexicographically minimal parameter list over the full isometry
    /// orbit; two spaces are isometric iff their canonical forms are equal.
    pub fn canonical_form(&self) -> LensSpace {
        let mut best: Option<Vec<u64>> = None;
        self.for_each_image(|cand, _, _, _| {
            if best.as_deref().is_none_or(|b| cand < b) {
                best = Some(cand.to_vec());
            }
            false
        });
        LensSpace {
            q: self.q,
            p: best.expect("orbit is nonempty"),
        }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.q, self.p.iter().join(","))
    }
}

impl FromStr for LensSpace {
    type Err = LensError;

    /// Parses the literal "q:p1,p2,...,pn" used across the CLI.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |token: &str| LensError::BadToken {
            token: token.to_string(),
        };
        let (q_str, p_str) = s.split_once(':').ok_or_else(|| bad(s))?;
        let q: u64 = q_str.trim().parse().map_err(|_| bad(q_str))?;
        let mut p = Vec::new();
        for token in p_str.split(',') {
            let v: i64 = token.trim().parse().map_err(|_| bad(token))?;
            p.push(v);
        }
        LensSpace::new(q, &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_normalization() {
        let l = LensSpace::new(7, &[1, 2]).unwrap();
        assert_eq!((l.q(), l.params()), (7, &[1u64, 2][..]));
        assert_eq!(l.n(), 2);
        assert_eq!(l.dim(), 3);

        // Negative and oversized parameters reduce into [1, q-1].
        let l = LensSpace::new(7, &[-1, 9]).unwrap();
        assert_eq!(l.params(), &[6, 2]);

        // q = 1 is the sphere; everything normalizes to zero.
        let l = LensSpace::new(1, &[1, 1]).unwrap();
        assert_eq!(l.params(), &[0, 0]);
        assert!(l.is_sphere());
    }

    #[test]
    fn rejects_non_free_actions() {
        assert_eq!(
            LensSpace::new(4, &[2, 1]),
            Err(LensError::NotCoprime {
                index: 0,
                value: 2,
                q: 4,
                factor: 2
            })
        );
        assert_eq!(LensSpace::new(5, &[]), Err(LensError::EmptyParameters));
        assert_eq!(LensSpace::new(0, &[1]), Err(LensError::ZeroOrder));
        // p ≡ 0 mod q shares the factor q itself.
        assert!(matches!(
            LensSpace::new(6, &[6, 1]),
            Err(LensError::NotCoprime {
                index: 0,
                factor: 6,
                ..
            })
        ));
    }

    #[test]
    fn isometry_witness_examples() {
        let a: LensSpace = "7:1,2".parse().unwrap();
        let b: LensSpace = "7:2,4".parse().unwrap();
        let w = a.isometry_to(&b).expect("scaling by t = 2");
        assert_eq!(w.apply(&a), b);

        // Identity is always a witness to itself.
        let w = a.isometry_to(&a).unwrap();
        assert_eq!(w.apply(&a), a);

        // L(5;1,1) and L(5;1,2) are not isometric: exhausted orbit.
        let c: LensSpace = "5:1,1".parse().unwrap();
        let d: LensSpace = "5:1,2".parse().unwrap();
        assert_eq!(c.isometry_to(&d), None);

        // Mismatched q or n is trivially not isometric.
        assert_eq!(a.isometry_to(&c), None);
        let e: LensSpace = "7:1,2,3".parse().unwrap();
        assert_eq!(a.isometry_to(&e), None);
    }

    #[test]
    fn canonical_form_examples() {
        let l: LensSpace = "7:2,4".parse().unwrap();
        assert_eq!(l.canonical_form().to_string(), "7:1,2");

        let sphere: LensSpace = "1:5,9".parse().unwrap();
        assert_eq!(sphere.canonical_form().params(), &[0, 0]);

        for lit in ["11:1,2,3", "11:1,2,4"] {
            let l: LensSpace = lit.parse().unwrap();
            assert_eq!(l.canonical_form(), l, "{lit} is already minimal");
        }
    }

    #[test]
    fn literal_parse_errors_name_the_token() {
        assert_eq!(
            "7:1,x".parse::<LensSpace>(),
            Err(LensError::BadToken { token: "x".into() })
        );
        assert_eq!(
            "seven:1,2".parse::<LensSpace>(),
            Err(LensError::BadToken {
                token: "seven".into()
            })
        );
        assert!(matches!(
            "7".parse::<LensSpace>(),
            Err(LensError::BadToken { .. })
        ));
    }

    #[test]
    fn display_roundtrip() {
        for lit in ["7:1,2", "11:1,2,3", "1:0,0"] {
            let l: LensSpace = lit.parse().unwrap();
            assert_eq!(l.to_string(), lit);
        }
    }
}
