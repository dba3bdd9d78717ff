//! Exact homological computations for weakly symmetric algebras with
//! radical cube zero.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rationals and rational functions in a transcendental `q`.
//! * [`linalg`]: dense exact matrices, characteristic polynomials, Sturm
//!   root counting and Perron classification of the Ext-quiver matrix `E`.
//! * [`chebyshev`]: the polynomials `f_0 = 1, f_1 = x, f_k = x f_{k-1} - f_{k-2}`
//!   evaluated at scalars and at `E`, and the block form of powers of `X`.
//! * [`modcat`]: explicit modules over the q-exterior algebra and the Double
//!   Nakayama algebras, with syzygies, Hom spaces and Ext dimensions.
//! * [`dynamics`]: dimension-vector orbits, the orthogonality defect, Perron
//!   projections and the existence verdict for ext-finite modules.
//! * [`verify`]: the self-check suites driven by the command-line tool.

pub mod chebyshev;
pub mod dynamics;
pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod modcat;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{RatFun, Rational};
pub use linalg::ExactMatrix;
