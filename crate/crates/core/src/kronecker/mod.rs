mod integral;
mod orbit;
mod symmetric;
mod tower;

pub use integral::{
    ideal_integral_certs, ideal_integral_divide, ideal_integral_divide_certified, kronecker_cert,
    weighted_homogeneity_check, IntegralCert, WeightedForm,
};
pub(crate) use orbit::orbit_size;
pub use orbit::{universal_relation, UniversalRelation};
pub use symmetric::{elementary, symmetrize};
pub use tower::{SplittingTower, TowerElem};
