//! Binary words under sticky insertions (a symbol duplicated inside its own run).

mod composition;
pub mod pairs;
mod rates;

pub use composition::{
    compositions, confusable_bruteforce, is_confusable, l1_distance, Composition, BRUTEFORCE_LIMIT,
};
pub use rates::{
    ball_rate, ball_rate_formula, beta_max, capacity_runs, critical_point_closed_form,
    gv_objective, gv_rate, gv_rho_candidates, pair_denominator, pair_direction, simple_lb_rate,
    simple_lb_rho, sp_rate, GvOptimum, StickyCriticalPoint, StickyParams,
};
