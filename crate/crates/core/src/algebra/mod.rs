//! Exact arithmetic: rationals, polynomials, rational functions, Laurent series.

pub mod biseries;
pub mod gcd;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod render;
pub mod series;
pub mod var;

pub use biseries::BiSeries;
pub use poly::{symmetrize, MPoly};
pub use rat::Rat;
pub use ratfn::RatFn;
pub use render::{parse_poly, render_poly, VarNames};
pub use series::{series_expand, SeriesError, ZSeries};
pub use var::{Monomial, VarId};
