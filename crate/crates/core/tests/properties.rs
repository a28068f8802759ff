use proptest::prelude::*;

use gvbound::count::CountMode;
use gvbound::numeric::entropy;
use gvbound::rate::{Flag, Flags, Rate};
use gvbound::report::{read_csv, write_csv, CurvePoint, RateCurve};
use gvbound::sticky::{self, StickyParams};
use gvbound::synthesis::{self, Strand};

const SLACK: f64 = 1e-9;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sticky_ball_between_diagonal_and_square(rho in 0.02f64..0.98, beta in 0.0f64..0.6) {
        let h = entropy(rho).unwrap();
        let t = sticky::ball_rate(&StickyParams::new(rho, beta).unwrap()).value;
        prop_assert!(t >= h - SLACK && t <= 2.0 * h + SLACK, "T = {t}, H = {h}");
    }

    #[test]
    fn sticky_ball_monotone_in_beta(rho in 0.05f64..0.95, b1 in 0.0f64..0.6, b2 in 0.0f64..0.6) {
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let at = |b| sticky::ball_rate(&StickyParams::new(rho, b).unwrap()).value;
        prop_assert!(at(lo) <= at(hi) + SLACK);
    }

    #[test]
    fn sticky_bounds_ordered(beta in 0.0f64..0.49) {
        let gv = sticky::gv_rate(beta).unwrap().rate;
        let lb = sticky::simple_lb_rate(beta).unwrap().value;
        let sp = sticky::sp_rate(beta).unwrap();
        prop_assert!(lb <= gv + SLACK && gv <= sp + SLACK && gv > 0.0 && sp <= 1.0 + SLACK);
    }

    #[test]
    fn sticky_gv_dominates_fixed_rho(beta in 0.0f64..0.49, rho in 0.02f64..0.98) {
        let best = sticky::gv_rate(beta).unwrap().rate;
        prop_assert!(sticky::gv_objective(rho, beta).unwrap() <= best + 1e-9);
    }

    #[test]
    fn synthesis_ball_between_capacity_and_double(tau in 1.2f64..3.0, delta in 0.0f64..1.0) {
        let cap = synthesis::capacity(tau).unwrap();
        let t = synthesis::ball_rate_upper(tau, delta).unwrap();
        prop_assert!(t.flags.contains(Flag::UpperBound));
        prop_assert!(t.value >= cap - SLACK && t.value <= 2.0 * cap + SLACK, "T = {}, Cap = {cap}", t.value);
    }

    #[test]
    fn synthesis_ball_monotone_in_delta(tau in 1.2f64..2.45, d1 in 0.0f64..1.0, d2 in 0.0f64..1.0) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let at = |d| synthesis::ball_rate_upper(tau, d).unwrap().value;
        prop_assert!(at(lo) <= at(hi) + 1e-8);
    }

    #[test]
    fn synthesis_bounds_ordered(tau in 1.2f64..3.0, delta in 0.0f64..1.0) {
        let cap = synthesis::capacity(tau).unwrap();
        let gv = synthesis::gv_rate(tau, delta).unwrap().value;
        let lb = synthesis::simple_lb_rate(tau, delta).unwrap().value;
        prop_assert!(0.0 <= lb && lb <= gv + SLACK && gv <= cap + SLACK);
    }

    #[test]
    fn capacity_monotone(t1 in 1.05f64..3.0, t2 in 1.05f64..3.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(synthesis::capacity(lo).unwrap() <= synthesis::capacity(hi).unwrap() + SLACK);
    }

    #[test]
    fn strand_round_trip_and_time(ranks in proptest::collection::vec(1u8..=4, 1..40)) {
        let w = Strand::from_ranks(ranks.clone()).unwrap();
        let back: Strand = w.to_string().parse().unwrap();
        prop_assert_eq!(&back, &w);
        let t = synthesis::synthesis_time(&w).unwrap() as usize;
        prop_assert!(ranks.len() <= t && t <= 4 * ranks.len());
        prop_assert!(synthesis::producible_within(&w, t));
    }

    #[test]
    fn sticky_pair_counts_symmetric(n1 in 0i64..7, n2 in 0i64..7, r in 0i64..7, s in 0i64..12) {
        let a = sticky::pairs::count_pairs_exact(n1, n2, r, s, CountMode::Exact).unwrap();
        let b = sticky::pairs::count_pairs_exact(n2, n1, r, s, CountMode::Exact).unwrap();
        prop_assert_eq!(a.exact(), b.exact());
    }

    #[test]
    fn log_mode_matches_exact(n in 1i64..14, r in 1i64..8, s in 0i64..10) {
        let exact = sticky::pairs::count_pairs_exact(n, n, r, s, CountMode::Exact).unwrap();
        let log = sticky::pairs::count_pairs_exact(n, n, r, s, CountMode::Log2).unwrap();
        let (a, b) = (exact.log2(), log.log2());
        prop_assert!((a == b) || (a - b).abs() <= 1e-9 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn csv_round_trip(values in proptest::collection::vec((-1e3f64..1e3, 0u8..32), 1..20)) {
        let curve = RateCurve {
            label: "gv".into(),
            points: values
                .iter()
                .enumerate()
                .map(|(k, &(v, mask))| {
                    let mut flags = Flags::none();
                    for (bit, flag) in Flag::ALL.iter().enumerate() {
                        if mask & (1 << bit) != 0 {
                            flags.insert(*flag);
                        }
                    }
                    CurvePoint { x: k as f64 / 8.0, rate: Rate { value: v, flags } }
                })
                .collect(),
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, "beta", std::slice::from_ref(&curve)).unwrap();
        let (_, back) = read_csv(buf.as_slice()).unwrap();
        for (p, q) in back[0].points.iter().zip(&curve.points) {
            prop_assert_eq!(p.x, q.x);
            prop_assert!((p.rate.value - q.rate.value).abs() <= 1e-11 * q.rate.value.abs().max(1.0));
            prop_assert_eq!(&p.rate.flags, &q.rate.flags);
        }
    }
}
