use num_bigint::BigInt;
use proptest::prelude::*;
use pseq::breedsim::*;
use pseq::charpoly::RecurrenceSpec;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn totals(cfg: &BreedConfig, n: usize) -> Vec<BigInt> {
    simulate(cfg, n).unwrap().into_iter().map(|r| r.total).collect()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| b(x)).collect()
}

#[test]
fn config_validation() {
    assert!(BreedConfig::new(0, 2, None, None).is_err());
    assert!(BreedConfig::new(1, 0, None, None).is_err());
    assert!(BreedConfig::new(1, 2, Some(0), None).is_err());
    assert!(BreedConfig::new(1, 2, None, Some(2)).is_err());
    assert!(BreedConfig::new(1, 2, None, Some(3)).is_ok());
    let mut cfg = BreedConfig::new(1, 2, None, None).unwrap();
    cfg.delta = Some(2);
    assert!(simulate(&cfg, 3).is_err());
    cfg.allow_degenerate = true;
    assert!(simulate(&cfg, 3).is_ok());
}

#[test]
fn narayana_table() {
    let cfg = BreedConfig::new(1, 3, None, None).unwrap();
    let t = totals(&cfg, 12);
    assert_eq!(t, ints(&[0, 1, 2, 3, 4, 5, 7, 10, 14, 19, 26, 36, 50]));
    assert_eq!(t[12], b(50));
}

#[test]
fn gamma_two_table() {
    let cfg = BreedConfig::new(2, 3, Some(2), None).unwrap();
    let t = totals(&cfg, 15);
    assert_eq!(t[..14].to_vec(), ints(&[0, 2, 4, 4, 4, 6, 12, 16, 16, 20, 36, 56, 64, 72]));
    assert_eq!(t[15], b(184));
}

#[test]
fn model_outputs_for_other_configs() {
    // a creature first breeds β + 1 steps after its birth, so β = 2 is a
    // third-order lag and β = 1 gives Fibonacci
    let t = totals(&BreedConfig::new(1, 2, None, None).unwrap(), 10);
    assert_eq!(t, ints(&[0, 1, 2, 3, 4, 6, 9, 13, 19, 28, 41]));
    let t = totals(&BreedConfig::new(1, 1, None, None).unwrap(), 15);
    assert_eq!(t, ints(&[0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987]));
    let t = totals(&BreedConfig::new(2, 2, Some(3), None).unwrap(), 6);
    assert_eq!(t, ints(&[0, 2, 4, 6, 8, 14, 24]));
}

#[test]
fn rabbit_pairs() {
    let rows = rabbit_rows(18).unwrap();
    let want: [(i64, i64, i64); 7] = [(1, 0, 1), (1, 0, 1), (1, 1, 2), (2, 1, 3), (3, 2, 5), (5, 3, 8), (8, 5, 13)];
    for (i, w) in want.iter().enumerate() {
        assert_eq!((rows[i].adults.clone(), rows[i].babies.clone(), rows[i].total.clone()), (b(w.0), b(w.1), b(w.2)));
    }
    assert_eq!(rows[18].total, b(4181));
    let mut cfg = BreedConfig::new(1, 1, None, None).unwrap();
    cfg.include_founder = true;
    assert_eq!(simulate(&cfg, 2).unwrap()[0].total, b(1));
}

#[test]
fn closed_form_examples() {
    assert_eq!(closed_form_a2b2g3(2, 3, 7).unwrap(), b(16));
    assert_eq!(closed_form_a2b2g3(2, 3, 2).unwrap(), b(4));
    for n in 3..30 {
        assert_eq!(closed_form_a2b2g3(1, 3, n).unwrap(), b(3));
    }
    let printed = [0, 2, 4, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48];
    for (n, &v) in printed.iter().enumerate() {
        assert_eq!(closed_form_a2b2g3(2, 3, n).unwrap(), b(v));
    }
    assert!(closed_form_a2b2g3(0, 3, 2).is_err());
    assert!(closed_form_a2b2g3(2, 0, 2).is_err());
}

#[test]
fn recurrence_extraction() {
    let cfg = BreedConfig::new(1, 3, None, None).unwrap();
    assert_eq!(recurrence_extract(&cfg, 6).unwrap(), Some(RecurrenceSpec::unit(&[1, 4]).unwrap()));
    let cfg = BreedConfig::new(1, 2, None, None).unwrap();
    assert_eq!(recurrence_extract(&cfg, 6).unwrap(), Some(RecurrenceSpec::unit(&[1, 3]).unwrap()));
    let cfg = BreedConfig::new(1, 1, None, None).unwrap();
    assert_eq!(recurrence_extract(&cfg, 6).unwrap(), Some(RecurrenceSpec::unit(&[1, 2]).unwrap()));
    // too small a window finds nothing
    let cfg = BreedConfig::new(1, 3, None, None).unwrap();
    assert_eq!(recurrence_extract(&cfg, 3).unwrap(), None);
    assert!(recurrence_extract(&BreedConfig::new(2, 2, Some(3), None).unwrap(), 6).is_err());
}

#[test]
fn b_sum_identities() {
    let rows = simulate(&BreedConfig::new(1, 1, None, None).unwrap(), 40).unwrap();
    let bs: Vec<BigInt> = rows.iter().map(|r| r.births.clone()).collect();
    for n in 1..=40 {
        assert_eq!(rows[n].total, &bs[n] + &bs[n - 1]);
        if n >= 3 {
            assert_eq!(rows[n].total, &bs[n] + &bs[n - 2] + &bs[n - 3]);
        }
    }
    for cfg in [BreedConfig::new(1, 3, None, None).unwrap(), BreedConfig::new(2, 3, Some(2), None).unwrap()] {
        let rows = simulate(&cfg, 40).unwrap();
        for n in 3..=40 {
            let s: BigInt = (n - 3..=n).map(|k| rows[k].births.clone()).sum();
            assert_eq!(rows[n].total, s);
        }
    }
}

#[test]
fn delta_regime() {
    // δ = β: creatures die before they can breed
    let mut cfg = BreedConfig::new(2, 3, None, None).unwrap();
    cfg.delta = Some(3);
    cfg.allow_degenerate = true;
    let rows = simulate(&cfg, 30).unwrap();
    assert!(rows[10..].iter().all(|r| r.births == b(0)));
    assert_eq!(rows[30].population, b(0));

    let free = simulate(&BreedConfig::new(1, 2, Some(4), None).unwrap(), 40).unwrap();
    let mortal = simulate(&BreedConfig::new(1, 2, Some(4), Some(30)).unwrap(), 40).unwrap();
    for n in 0..28 {
        assert_eq!(free[n].total, mortal[n].total, "n={n}");
    }
    assert!(mortal.iter().any(|r| r.deaths > b(0)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conservation_and_monotone(alpha in 1u32..=3, beta in 1u32..=5, gamma in prop::option::of(1u32..=6),
                                 delta in prop::option::of(1u32..=12), n in 0usize..=40) {
        let mut cfg = BreedConfig::new(alpha, beta, gamma, None).unwrap();
        cfg.delta = delta;
        cfg.allow_degenerate = true;
        let rows = simulate(&cfg, n).unwrap();
        prop_assert_eq!(rows.len(), n + 1);
        for r in &rows {
            prop_assert_eq!(&r.population, &(BigInt::from(1) + &r.cumulative - &r.deaths));
        }
        for w in rows.windows(2) {
            if delta.is_none() {
                prop_assert!(w[1].total >= w[0].total);
                if gamma.is_none() {
                    prop_assert!(w[1].total > w[0].total);
                }
            }
        }
    }
}
