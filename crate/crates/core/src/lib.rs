//! Exact symbolic construction of the standard Poisson structure on the big
//! affine chart of the Grassmannian Gr(k, n), together with machine checks
//! of its invariance properties and of the cyclic symmetry of the induced
//! stratification.
//!
//! Everything is computed over the rationals with no floating point
//! anywhere: polynomial identities are verified coefficient-by-coefficient
//! and pointwise checks use exact linear algebra. All values are immutable
//! after construction and safe to share across threads; the few internally
//! parallel routines produce schedule-independent results because rational
//! arithmetic is exact.

pub mod chart;
pub mod error;
pub mod io;
pub mod matrix;
pub mod mpoly;
pub mod perm;
pub mod poisson;
pub mod rat;
pub mod sample;
pub mod strata;

pub use chart::{
    chart_differential, chart_map, chi_field, ChartDifferential, ChartPoint, Fingerprint,
    GLElement, GrassPoint, VectorField,
};
pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use mpoly::{ChartShape, MPoly, VarIndex};
pub use perm::{max_coset_reps, special_elements, Perm};
pub use poisson::{
    ad_transform_pi, build_levi_pi, build_pi, build_v, eval_bivector, pushforward_check, rank_at,
    schouten_jacobi, wedge, Bivector, RootPairSet, Trivector,
};
pub use rat::{parse_rat, rat, rat_int, Rat};
pub use sample::PointSampler;
pub use strata::{
    c_action_on_fingerprints, classify, enumerate_labels, Classification, StratumCensus,
    StratumLabel,
};
