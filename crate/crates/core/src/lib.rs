//! Exact genus-zero Gromov–Witten generating functions for zero loci of split
//! bundles in projective space.
//!
//! * [`coh`]: `H*(P^n, Q)` and ℏ-Laurent polynomials over it.
//! * [`series`]: truncated Novikov series, composition and reversion.
//! * [`mirror`]: J- and I-functions, mirror normalization, pushforward along
//!   `Y ⊂ X` and the check `i_*(J_Y) = J_E`.
//! * [`instanton`]: Yukawa coupling and instanton numbers of the quintic.
//! * [`oracle`]: Schubert calculus and torus localization.
//! * [`selftest`]: randomized property checks and cross-oracle equalities.

pub mod coh;
pub mod error;
pub mod instanton;
pub mod mirror;
pub mod oracle;
pub mod rational;
pub mod selftest;
pub mod series;

pub use coh::{coh_integrate, coh_mul, ctop_split, hl_linear_inverse, hl_mul, CohClass, HLaurent};
pub use error::{Error, Result};
pub use instanton::{
    extract_instanton, multiple_cover_sum, quintic_table, yukawa_quintic, InstantonRow,
    InstantonTable,
};
pub use mirror::{
    ed_rank, expected_dim, i_function, j_projective, normalize, pushforward,
    verify_mirror_identity, EmbeddingModel, FormTag, GeometrySpec, JSeries, Normalization,
    VerificationReport, VerificationStatus,
};
pub use rational::Rational;
pub use series::{
    exp_scalar_over_hbar, qs_add, qs_mul, scalar_compose, scalar_revert, QSeries, ScalarSeries,
};
