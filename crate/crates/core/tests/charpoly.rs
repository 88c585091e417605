use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use pseq::charpoly::*;
use pseq::seqcore::{make_family, Family, SequenceSpec};

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
}

#[test]
fn golden_polynomial_examples() {
    assert_eq!(golden_polynomial(2).unwrap(), poly(&[-1, -1, 1]));
    assert_eq!(golden_polynomial(1).unwrap(), poly(&[-1, 1]));
    let x3 = golden_polynomial(3).unwrap();
    assert_eq!(x3, poly(&[-1, -1, -1, 1]));
    assert_eq!(x3.to_string(), "x^3 - x^2 - x - 1");
    for p in 1..10 {
        let x = golden_polynomial(p).unwrap();
        assert_eq!(x.eval_int(&BigInt::from(0)), BigInt::from(-1));
        assert_eq!(x.eval_int(&BigInt::from(1)), BigInt::from(1 - p as i64));
    }
    assert!(golden_polynomial(0).is_err());
}

#[test]
fn char_poly_examples() {
    let meru4 = RecurrenceSpec::new(vec![(BigInt::from(1), 1), (BigInt::from(1), 4)]).unwrap();
    assert_eq!(char_poly(&meru4), poly(&[-1, 0, 0, -1, 1]));
    for p in 1..8 {
        let rec = RecurrenceSpec::new((1..=p).map(|k| (BigInt::from(1), k)).collect()).unwrap();
        assert_eq!(char_poly(&rec), golden_polynomial(p).unwrap());
    }
    let spin = RecurrenceSpec::new(vec![(BigInt::from(3), 1), (BigInt::from(5), 2)]).unwrap();
    assert_eq!(char_poly(&spin), poly(&[-5, -3, 1]));
    assert!(RecurrenceSpec::new(vec![(BigInt::from(1), 2), (BigInt::from(1), 2)]).is_err());
    assert!(RecurrenceSpec::new(vec![(BigInt::from(1), 0)]).is_err());
    assert!(RecurrenceSpec::new(vec![]).is_err());
}

#[test]
fn all_roots_examples() {
    let r = all_roots(&poly(&[-1, -1, 1]), 1e-10).unwrap();
    let mut re: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
    re.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert!((re[0] + 0.618_033_988_7).abs() < 1e-9);
    assert!((re[1] - 1.618_033_988_7).abs() < 1e-9);

    let lin = all_roots(&poly(&[-1, 1]), 1e-10).unwrap();
    assert_eq!(lin.roots.len(), 1);
    assert!((lin.roots[0].re - 1.0).abs() < 1e-12);

    let r5 = all_roots(&golden_polynomial(5).unwrap(), 1e-10).unwrap();
    assert_eq!(r5.roots.len(), 5);
    let positive: Vec<_> = r5.roots.iter().filter(|z| z.im.abs() < 1e-9 && z.re > 0.0).collect();
    assert_eq!(positive.len(), 1);
    assert!((positive[0].re - 1.96595).abs() < 1e-5);
    for z in &r5.roots {
        if z.norm() > 1.5 {
            continue;
        }
        assert!(z.norm() < 1.0);
    }
    let d = r5.dominant.as_ref().unwrap();
    assert_eq!(d.decimal(5), "1.96595");
}

#[test]
fn all_roots_is_deterministic() {
    let p = golden_polynomial(12).unwrap();
    let a = all_roots(&p, 1e-10).unwrap();
    let b = all_roots(&p, 1e-10).unwrap();
    assert_eq!(a.roots, b.roots);
}

#[test]
fn root_set_csv() {
    let r = all_roots(&poly(&[-1, -1, 1]), 1e-10).unwrap();
    let mut out = Vec::new();
    r.write_csv(&mut out, 5).unwrap();
    let s = String::from_utf8(out).unwrap();
    assert!(s.starts_with("re,im,modulus\n"));
    assert_eq!(s.lines().count(), 3);
    assert!(s.contains("1.61803,0.00000,1.61803"));
}

#[test]
fn dominant_root_examples() {
    assert_eq!(dominant_root(&golden_polynomial(3).unwrap()).unwrap().decimal(5), "1.83929");
    let d17 = dominant_root(&golden_polynomial(17).unwrap()).unwrap();
    assert_eq!(d17.decimal(5), "1.99999");
    assert!(d17.to_f64() < 2.0);
    let stakhov1 = classic_polynomial(&Classic::Stakhov(1)).unwrap();
    assert_eq!(dominant_root(&stakhov1).unwrap().decimal(5), "1.61803");
    // x^2 + 1 has no real root in [1, 2]
    assert!(matches!(dominant_root(&poly(&[1, 0, 1])), Err(pseq::Error::NoSignChange { .. })));
}

#[test]
fn dominant_root_width_and_sign() {
    let x = golden_polynomial(7).unwrap();
    let d = dominant_root(&x).unwrap();
    assert!(d.width_f64() < 1e-12);
    let v = d.to_f64();
    assert!(x.eval_f64(v - 1e-12) < 0.0 && x.eval_f64(v + 1e-12) > 0.0);
}

#[test]
fn limiting_ratio_examples() {
    let g = SequenceSpec::general(vec![BigInt::from(2), BigInt::from(21)]).unwrap();
    assert!((limiting_ratio(&g, 1e-12).unwrap() - 1.61803).abs() < 1e-5);
    let one = SequenceSpec::one_seq(BigInt::from(3), BigInt::from(2)).unwrap();
    assert!((limiting_ratio(&one, 1e-6).unwrap() - 1.0).abs() < 1e-3);
    let x4 = make_family(Family::Exponent, 4).unwrap();
    assert!((limiting_ratio(&x4, 1e-12).unwrap() - 1.92756).abs() < 1e-5);
    // the constant 1-sequence converges immediately
    let c = SequenceSpec::one_seq(BigInt::from(4), BigInt::from(0)).unwrap();
    assert_eq!(limiting_ratio(&c, 1e-9).unwrap(), 1.0);
    // an arithmetic progression cannot satisfy a tiny tolerance within the cap
    let slow = SequenceSpec::one_seq(BigInt::from(0), BigInt::from(1)).unwrap();
    assert!(limiting_ratio(&slow, 1e-15).is_err());
}

#[test]
fn classic_examples() {
    let m = classic_ratio(&Classic::Metallic { p: 4, q: 1 }).unwrap();
    let v = m.dominant.as_ref().unwrap().to_f64();
    assert!((v - 4.236_067_977_5).abs() < 1e-9);
    assert!((v - (4.0 + 20f64.sqrt()) / 2.0).abs() < 1e-9);

    let w2 = classic_ratio(&Classic::Wilson(2)).unwrap();
    assert_eq!(w2.dominant.as_ref().unwrap().decimal(5), "1.46557");

    let u0 = classic_ratio(&Classic::KrcadinacUpper(0)).unwrap();
    assert_eq!(u0.dominant.as_ref().unwrap().to_f64(), 1.0);

    for p in 1..=8u32 {
        let lo = classic_ratio(&Classic::KrcadinacLower(p)).unwrap().dominant.unwrap().to_f64();
        let up = classic_ratio(&Classic::KrcadinacUpper(p)).unwrap().dominant.unwrap().to_f64();
        assert!((lo.powi(p as i32) - up).abs() < 1e-9, "p={p}");
    }
    assert!(classic_ratio(&Classic::KrcadinacLower(0)).is_err());
    assert!(classic_ratio(&Classic::Wilson(10)).is_err());
    assert!(classic_ratio(&Classic::Metallic { p: 0, q: 0 }).is_err());
}

#[test]
fn cousin_parity_facts() {
    for p in 1..=12u32 {
        let a = classic_ratio(&Classic::CousinA(p)).unwrap();
        let positive_real: Vec<f64> =
            a.roots.iter().filter(|z| z.im.abs() < 1e-7 && z.re > 0.0).map(|z| z.re).collect();
        if p % 2 == 1 {
            assert_eq!(positive_real.len(), 1, "p={p}");
            assert!((positive_real[0] - 1.0).abs() < 1e-9);
            assert_eq!(a.dominant.as_ref().unwrap().to_f64(), 1.0);
        } else {
            assert!(positive_real.is_empty(), "p={p}");
            assert!(a.dominant.is_none());
        }
        for z in &a.roots {
            assert!((z.norm() - 1.0).abs() < 1e-7);
        }
        let b = classic_ratio(&Classic::CousinB(p)).unwrap();
        let has_minus_one = b.roots.iter().any(|z| (z.re + 1.0).abs() < 1e-7 && z.im.abs() < 1e-7);
        assert_eq!(has_minus_one, p % 2 == 1, "p={p}");
        for z in &b.roots {
            assert!((z.norm() - 1.0).abs() < 1e-7);
        }
    }
}

#[test]
fn wilson_limits() {
    let expected = ["1.61803", "1.46557", "1.32472", "1.38028", "1.22074", "1.32472", "1.23651", "1.19386", "1.16730"];
    for (i, e) in expected.iter().enumerate() {
        let r = classic_ratio(&Classic::Wilson(i as u32 + 1)).unwrap();
        assert_eq!(&r.dominant.unwrap().decimal(5), e);
    }
}

#[test]
fn phi_bounds_and_monotone() {
    let mut prev = 1.0;
    for p in 2..=64 {
        let d = dominant_root(&golden_polynomial(p).unwrap()).unwrap();
        let v = d.to_f64();
        assert!(d.lower() > &BigRational::from_integer(1.into()));
        assert!(d.midpoint() < BigRational::from_integer(2.into()));
        assert!(d.upper() <= &BigRational::from_integer(2.into()));
        assert!(v > 1.0 && v < 2.0);
        if p <= 24 {
            assert!(v > prev);
        }
        prev = v;
        if p >= 18 {
            assert!(2.0 - v < 1e-5);
        }
    }
}

#[test]
fn root_geometry() {
    let mut prev_neg = 0.0;
    for p in 2..=24 {
        let r = all_roots(&golden_polynomial(p).unwrap(), 1e-10).unwrap();
        let dom = r.dominant.as_ref().unwrap().to_f64();
        for z in &r.roots {
            if (z.re - dom).abs() < 1e-8 && z.im.abs() < 1e-8 {
                continue;
            }
            assert!(z.norm() < 1.0, "p={p} root {z}");
        }
        if p % 2 == 0 {
            let neg: Vec<f64> = r.roots.iter().filter(|z| z.im.abs() < 1e-9 && z.re < 0.0).map(|z| z.re).collect();
            assert_eq!(neg.len(), 1);
            assert!(neg[0] > -1.0 && neg[0] < 0.0);
            assert!(neg[0].abs() > prev_neg);
            prev_neg = neg[0].abs();
        }
    }
}

#[test]
fn power_ratio_limits() {
    for p in 2..=5 {
        let t = make_family(Family::Exponent, p).unwrap().terms(210);
        let phi = dominant_root(&golden_polynomial(p).unwrap()).unwrap().to_f64();
        for u in 1..=3 {
            let r = big_ratio(&t[200 + u], &t[200]);
            assert!((r - phi.powi(u as i32)).abs() < 1e-6);
        }
    }
}

fn big_ratio(a: &BigInt, b: &BigInt) -> f64 {
    let scale = BigInt::from(10).pow(15);
    let q: BigInt = a * &scale / b;
    q.to_string().parse::<f64>().unwrap() / 1e15
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seed_independence(p in 2usize..=5, seeds in prop::collection::vec(1i64..1000, 5)) {
        let spec = SequenceSpec::general(seeds[..p].iter().map(|&s| BigInt::from(s)).collect()).unwrap();
        let r = limiting_ratio(&spec, 1e-13).unwrap();
        let phi = dominant_root(&golden_polynomial(p).unwrap()).unwrap().to_f64();
        prop_assert!((r - phi).abs() < 1e-9);
    }

    #[test]
    fn roots_have_small_residual(c in prop::collection::vec(-9i64..=9, 1..8)) {
        let mut coeffs: Vec<BigInt> = c.into_iter().map(BigInt::from).collect();
        coeffs.push(BigInt::from(1));
        let p = IntPolynomial::new(coeffs);
        let r = all_roots(&p, 1e-8).unwrap();
        prop_assert_eq!(r.roots.len(), p.degree());
        for z in &r.roots {
            prop_assert!(p.eval_complex(*z).norm() <= r.residual_bound);
        }
    }
}
