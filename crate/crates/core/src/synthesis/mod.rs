//! DNA strands synthesized along the alternating `ACGTACGT...` supersequence,
//! compared under Hamming distance.

pub mod pairs;
mod rates;
mod strand;

pub use pairs::{
    count_cost_pairs_exact, count_pairs_bruteforce, count_pairs_exact, count_words_by_time,
    count_words_exact, PairModel, SynthesisCountTable,
};
pub use rates::{
    ball_rate_upper, capacity, capacity_point, critical_point, critical_y_polynomial, delta_max,
    gv_rate, hamming_ball_exponent, pair_denominator, pair_direction, simple_lb_rate,
    y_min_polynomial, SynthesisCriticalPoint, SynthesisParams, DELTA_FULL, TAU_SATURATION,
};
pub use strand::{
    all_strands, alternating_supersequence, hamming_distance, producible_within, step_cost,
    synthesis_time, Strand, ALPHABET,
};
