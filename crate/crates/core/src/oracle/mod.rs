//! Independent intersection-theory oracles for the twisted integrals
//! `∫_{M̄_{0,0}(P^n,d)} c_top(E_d)`.

pub mod localization;
pub mod schubert;

pub use localization::{
    enumerate_fixed_graphs, graph_contribution, localized_trials, twisted_integral_localized,
    FixedGraph, WeightTrial, WeightVector,
};
pub use schubert::{
    chern_top_sym, grass_integrate, lines_dimension_matches, lines_on_hypersurface, pieri_mul,
    schubert_mul, SchubertElt,
};
