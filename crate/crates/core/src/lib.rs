//! Frobenius summands of `R = k[F ⊗ V]^{SL(V)}` (the homogeneous coordinate ring of
//! `Gr(2, n)` up to a Veronese) and of `Fr_* O_G` in characteristic `p`.
//!
//! The crate is organised bottom-up:
//!
//! - [`char_calculus`]: characters of `SL_2` Weyl and tilting modules, digit expansions,
//!   good-filtration multiplicities and greedy tilting decomposition.
//! - [`fusion`]: the level `p-2` fusion ring, graded fusion powers and the `a`-polynomials.
//! - [`decomposition`]: the graded tilting decomposition of `S/S^p_{>0}S`, the tilting
//!   module `T`, and the summand lists for `S^{G_1}`, `R` and `Fr_* O_G`.
//! - [`hilbert`] and [`bruteforce`]: independent certification through Hilbert series and
//!   an `F_p` kernel computation.
//! - [`ncr`]: the Hom-Hilbert matrix of the candidate noncommutative resolution and its
//!   truncated inverse.
//! - [`cli`]: the `frobsum` command line front end.
//!
//! All multiplicities are exact big integers.

pub mod bruteforce;
pub mod char_calculus;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod fusion;
pub mod hilbert;
pub mod ncr;
pub mod output;
pub mod par;
pub mod params;
pub mod series;

pub use char_calculus::{TiltingMultiset, WeightChar};
pub use decomposition::{GradedTiltingDecomp, Level, SheafKind, SummandList};
pub use error::Error;
pub use fusion::SimpleGradedMultiset;
pub use params::Params;
pub use series::TruncSeries;
