//! Sparse multivariate and dense univariate polynomials, resultants, root
//! finding and local expansions at points.

mod local;
mod modgcd;
mod mpoly;
mod parse;
mod resultant;
pub(crate) mod roots;
mod upoly;

pub use local::{chart_of, has_distinct_factors, local_expansion, multiplicity, normalize_point, tangent_cone};
pub use mpoly::{default_var_names, grlex, monomials, MPoly};
pub use parse::{parse_poly, parse_poly_at};
pub use resultant::{resultant, sylvester_det};
pub use upoly::UPoly;
