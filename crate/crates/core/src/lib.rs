//! Exact-arithmetic toolkit for lens-space spectra through lattice-point
//! counting.
//!
//! A lens space L(q; p_1, ..., p_n) determines the congruence lattice
//! { a in Z^n : sum a_j p_j ≡ 0 (mod q) }, and the Laplace-Beltrami
//! spectrum of the space is read off the l1 shell counts of that lattice.
//! This crate builds the lattice with a canonical basis, counts shells and
//! balls exactly, interpolates the counting quasi-polynomial (a finite,
//! rigorous isospectrality certificate), assembles the Stanley generating
//! series from the half-open parallelepiped data, validates the
//! multiplicity formula against an independent harmonic-polynomial kernel
//! computation, and exposes the toric section counts and degree shared by
//! isospectral spaces. All arithmetic is exact: machine integers where the
//! bounds are proven, arbitrary-precision integers and rationals elsewhere.

pub mod counting;
pub mod harmonic;
pub mod isospectral;
pub mod lattice;
pub mod lens;
pub mod linalg;
pub mod spectrum;
pub mod toric;

pub use counting::{CountingError, QuasiPolynomial, RationalSeries, SeriesMismatch, SeriesReport};
pub use harmonic::{ComplexMonomial, LaplacianMatrix, OracleError};
pub use isospectral::{
    IsospectralBucket, IsospectralityReport, SearchError, SearchOptions, Verdict,
};
pub use lattice::{CongruenceLattice, DualBasis, LatticeError, ParallelepipedPoint, StanleyData};
pub use lens::{IsometryWitness, LensError, LensSpace};
pub use spectrum::{SpectrumRow, SpectrumTable};
pub use toric::LensPolytope;
