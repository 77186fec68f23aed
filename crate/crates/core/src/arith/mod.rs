//! Exact integer/rational polynomials and the symmetric-function toolkit.

mod int_poly;
pub mod newton;
mod rat_poly;
pub mod resultant;
pub mod series;
pub mod text;

pub use int_poly::IntPoly;
pub use newton::{
    even_split, even_split_int, integral_model, poly_from_power_sums, poly_from_power_sums_int, power_sums,
    power_sums_int, trace_zero, tschirnhausen_transform, tschirnhausen_transform_int,
};
pub use rat_poly::RatPoly;
pub use resultant::{discriminant, discriminant_rat, is_square, resultant, resultant_rat};
pub use series::{EgfSeries, SeriesQ};
