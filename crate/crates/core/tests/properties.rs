//! Randomized properties of the arithmetic, mutation and counting layers.

use chamber_core::arith::laurent::var_names;
use chamber_core::arith::{Laurent, QMatrix, Q, QQ};
use chamber_core::character::{ringel_matrix, Tilting};
use chamber_core::counting::stratum_counts;
use chamber_core::rep::Rep;
use chamber_core::scenario::load_scenario;
use chamber_core::seed::{ExchangeQuiver, Seed};
use proptest::prelude::*;

fn laurent(terms: &[(Vec<i32>, i64)]) -> Laurent {
    let vars = var_names("x", 3);
    terms.iter().fold(Laurent::zero(&vars), |acc, (e, c)| acc.add(&Laurent::monomial(&vars, e.clone(), Q::from_int(*c))))
}

fn terms() -> impl Strategy<Value = Vec<(Vec<i32>, i64)>> {
    prop::collection::vec((prop::collection::vec(-2i32..3, 3), -3i64..4), 1..5)
}

/// Skew-symmetric exchange matrices of rank 1 to 5 with entries in `-2..=2`.
fn exchange_quiver() -> impl Strategy<Value = ExchangeQuiver> {
    (1usize..6).prop_flat_map(|r| (prop::collection::vec(-2i64..3, r * r), prop::collection::vec(any::<bool>(), r), 0..r)).prop_map(|(entries, mut frozen, keep)| {
        let r = frozen.len();
        let mut gamma = vec![vec![0; r]; r];
        for i in 0..r {
            for j in i + 1..r {
                gamma[i][j] = entries[i * r + j];
                gamma[j][i] = -entries[i * r + j];
            }
        }
        frozen[keep] = false;
        ExchangeQuiver::new(gamma, frozen).expect("skew-symmetric")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_product_is_commutative_and_divisible(a in terms(), b in terms()) {
        let (a, b) = (laurent(&a), laurent(&b));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn laurent_display_parses_back(a in terms()) {
        let a = laurent(&a);
        prop_assert_eq!(Laurent::parse(a.vars(), &a.to_string()).unwrap(), a);
    }

    #[test]
    fn seed_mutation_is_an_involution(q in exchange_quiver(), pick in any::<prop::sample::Index>()) {
        let s = Seed::initial(q);
        let mutable = s.quiver.mutable();
        let k = mutable[pick.index(mutable.len())];
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn matrix_inverse(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 3)) {
        let m = QMatrix::from_i64_rows(&rows, 3);
        match m.inverse(&QQ) {
            Some(inv) => prop_assert_eq!(m.mul(&QQ, &inv), QMatrix::identity(&QQ, 3)),
            None => prop_assert!(m.rank(&QQ) < 3),
        }
    }

    #[test]
    fn flag_counts_match_grassmannians_on_sums(mult in prop::collection::vec(0usize..2, 6), p in prop::sample::select(vec![2u64, 3])) {
        let s = load_scenario("A3-w0").unwrap();
        let parts: Vec<&Rep<Q>> = mult.iter().enumerate().flat_map(|(k, &m)| std::iter::repeat(s.ctx.vk(k + 1)).take(m)).collect();
        let x = Rep::direct_sum(&QQ, s.ctx.quiver(), &parts);
        let counts = stratum_counts(&s.ctx, &x, p).unwrap();
        prop_assert!(!counts.is_empty());
        for (a, (nf, ng)) in counts {
            prop_assert_eq!(nf, ng, "stratum {:?}", a);
        }
    }
}

#[test]
fn ringel_matrix_inverse_is_the_hom_matrix_transpose() {
    for name in ["A3-w0", "kronecker"] {
        let s = load_scenario(name).unwrap();
        let q = s.ctx.quiver();
        let t = Tilting::v_of(&s.ctx);
        let rm = ringel_matrix(q, &t).unwrap();
        let r = t.r();
        for i in 0..r {
            for j in 0..r {
                let hom = chamber_core::rep::hom::hom_dim(&QQ, q, &t.summands[j], &t.summands[i]) as i64;
                assert_eq!(rm.b_inverse()[i][j], hom, "{name} ({i}, {j})");
            }
        }
    }
}
