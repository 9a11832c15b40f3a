//! Wu–Ritt characteristic sets over ℚ and prime fields.
//!
//! Polynomials live in [`poly`] over coefficients from [`coeff`].
//! [`pseudo`] divides by single polynomials and by triangular sets,
//! [`triset`] orders triangular sets and extracts basic sets, [`charset`]
//! runs the characteristic-set loop and zero decomposition, and [`zeroset`]
//! checks results by enumerating points over a finite field.

pub mod charset;
pub mod coeff;
pub mod error;
pub mod io;
pub mod poly;
pub mod pseudo;
pub mod triset;
pub mod zeroset;

pub use charset::{
    characteristic_set, is_characteristic_set, prove_geometric, well_ordering_split, zero_decompose, DecomposeOptions,
    Limits,
};
pub use coeff::{Coeff, Field};
pub use error::{Error, Result};
pub use poly::{Polynomial, RankKey, VarOrder};
pub use pseudo::{pseudo_divide, set_pseudo_divide};
pub use triset::{basic_set, TriangularSet};
pub use zeroset::ZeroOracle;
