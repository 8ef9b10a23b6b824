use proptest::prelude::*;

use tuvals::game::{mobius_transform, zeta_transform};
use tuvals::io::{game_to_json, parse_game};
use tuvals::mechanism::{stage3_spne, Interpretation};
use tuvals::values::{
    alpha_sed, equal_division, esl_value, ksed, ksed_by_basis, ksed_by_split, ksed_by_truncation,
    shapley, sol_p,
};
use tuvals::{
    rat, Coalition, EslCoefficients, Game, GameF64, Permutation, ProbabilityVector, TuGame,
};

fn game_from(n: usize, worths: &[i64]) -> Game {
    TuGame::from_fn(n, |c| rat(worths[c.index()], 1)).unwrap()
}

fn game() -> impl Strategy<Value = Game> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(-20i64..=20, 1 << n).prop_map(move |w| game_from(n, &w))
    })
}

fn game_and_k() -> impl Strategy<Value = (Game, usize)> {
    game().prop_flat_map(|v| {
        let n = v.n();
        (Just(v), 1..=n)
    })
}

/// Zero-monotonic: singletons 0, worths nonnegative and nondecreasing in S.
fn zero_monotonic_game() -> impl Strategy<Value = Game> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(0i64..=10, 1 << n).prop_map(move |w| {
            let mut table: Vec<i64> = (0..1usize << n)
                .map(|bits| if bits.count_ones() <= 1 { 0 } else { w[bits] })
                .collect();
            for bits in 1..table.len() {
                for i in 0..n {
                    if bits & (1 << i) != 0 {
                        table[bits] = table[bits].max(table[bits & !(1 << i)]);
                    }
                }
            }
            game_from(n, &table)
        })
    })
}

proptest! {
    #[test]
    fn ksed_is_efficient((v, k) in game_and_k()) {
        prop_assert_eq!(ksed(&v, k).unwrap().total(), v.grand_worth().clone());
    }

    #[test]
    fn ksed_routes_agree((v, k) in game_and_k()) {
        let main = ksed(&v, k).unwrap();
        prop_assert_eq!(&ksed_by_truncation(&v, k).unwrap(), &main);
        prop_assert_eq!(&ksed_by_split(&v, k).unwrap(), &main);
        prop_assert_eq!(&ksed_by_basis(&v, k).unwrap(), &main);
    }

    #[test]
    fn ksed_is_linear((v, k) in game_and_k(), seed in prop::collection::vec(-20i64..=20, 32), a in -5i64..=5, b in 1i64..=5) {
        let n = v.n();
        let w = game_from(n, &seed[..1 << n]);
        let gamma = rat(a, b);
        let combined = TuGame::linear_combination(&rat(1, 1), &v, &gamma, &w).unwrap();
        let expected = &ksed(&v, k).unwrap() + &ksed(&w, k).unwrap().scaled(&gamma);
        prop_assert_eq!(ksed(&combined, k).unwrap(), expected);
    }

    #[test]
    fn ksed_is_the_dual_solidarity_value((v, k) in game_and_k()) {
        prop_assert_eq!(ksed(&v, k).unwrap(), sol_p(&v.dual(), v.n() - k).unwrap());
    }

    #[test]
    fn endpoints_collapse(v in game()) {
        prop_assert_eq!(ksed(&v, 1).unwrap(), shapley(&v));
        prop_assert_eq!(ksed(&v, v.n()).unwrap(), equal_division(&v));
    }

    #[test]
    fn ksed_is_an_esl_value((v, k) in game_and_k()) {
        let b = EslCoefficients::step(v.n(), k).unwrap();
        prop_assert_eq!(esl_value(&v, &b).unwrap(), ksed(&v, k).unwrap());
    }

    #[test]
    fn alpha_sed_is_efficient(v in game(), raw in prop::collection::vec(0u64..=4, 5)) {
        let n = v.n();
        let mut weights: Vec<u64> = raw[..n].to_vec();
        if weights.iter().all(|&w| w == 0) {
            weights[0] = 1;
        }
        let total: u64 = weights.iter().sum();
        let alpha = ProbabilityVector::over_thresholds(
            weights.iter().map(|&w| rat(w as i64, total as i64)).collect(),
        ).unwrap();
        prop_assert_eq!(alpha_sed(&v, &alpha).unwrap().total(), v.grand_worth().clone());
    }

    #[test]
    fn dual_is_an_involution(v in game()) {
        prop_assert_eq!(v.dual().dual(), v);
    }

    #[test]
    fn mobius_and_zeta_are_inverse(v in game()) {
        let mut table = v.table().to_vec();
        mobius_transform(&mut table);
        zeta_transform(&mut table);
        prop_assert_eq!(table.as_slice(), v.table());
        prop_assert_eq!(TuGame::from_dividends(v.n(), v.dividends()).unwrap(), v);
    }

    #[test]
    fn hybrid_coordinates_round_trip((v, k) in game_and_k()) {
        let coords = v.lambda_coefficients(k).unwrap();
        prop_assert_eq!(TuGame::from_lambda(v.n(), k, &coords).unwrap(), v);
    }

    #[test]
    fn game_files_round_trip(v in game()) {
        prop_assert_eq!(parse_game(&game_to_json(&v)).unwrap(), v);
    }

    #[test]
    fn float_values_track_exact_ones((v, k) in game_and_k()) {
        let approx: GameF64 = TuGame::from_fn(v.n(), |c| tuvals::Scalar::to_f64(v.worth(c))).unwrap();
        let exact = ksed(&v, k).unwrap();
        let float = ksed(&approx, k).unwrap();
        for (x, y) in exact.iter().zip(float.iter()) {
            prop_assert!((tuvals::Scalar::to_f64(x) - y).abs() < 1e-9);
        }
    }

    #[test]
    fn stage3_budget_balances(v in zero_monotonic_game(), k_seed in 0usize..4, order_seed in 0usize..24) {
        let n = v.n();
        let k = 1 + k_seed % n;
        let orders = Permutation::all(n);
        let pi = &orders[order_seed % orders.len()];
        for interp in [Interpretation::Literal, Interpretation::DualBeal] {
            let t = stage3_spne(&v, k, pi, interp).unwrap();
            prop_assert_eq!(t.payoffs.total(), v.grand_worth().clone());
            for x in t.payoffs.iter() {
                prop_assert!(*x >= rat(0, 1));
            }
        }
    }

    #[test]
    fn coalition_keys_round_trip(bits in 1u32..(1 << 8)) {
        let c = Coalition::from_bits(bits);
        prop_assert_eq!(Coalition::parse_key(&c.key(), 8).unwrap(), c);
    }
}
