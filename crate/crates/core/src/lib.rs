//! Monomial ideals with linear quotients.
//!
//! The crate decides exchange properties of monomial generating sets,
//! searches for and verifies admissible (linear-quotients) orders, classifies
//! componentwise polymatroidal ideals in two variables, and builds explicit
//! admissible orders for componentwise polymatroidal ideals with the strong
//! exchange property.

pub mod bivariate;
pub mod error;
pub mod exchange;
pub mod ideal;
pub mod monomial;
pub mod quotients;
pub mod report;
pub mod search;
pub mod text;
pub mod veronese;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use monomial::Monomial;
