use num_bigint::BigInt;
use proptest::prelude::*;
use pseq::qmatrix::*;
use pseq::seqcore::{fib_lucas, make_family, Family};

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn m(rows: &[&[i64]]) -> BigIntMatrix {
    BigIntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| b(x)).collect()).collect()).unwrap()
}

#[test]
fn q_matrix_examples() {
    assert_eq!(q_matrix(2).unwrap(), m(&[&[1, 1], &[1, 0]]));
    assert_eq!(q_matrix(2).unwrap().det(), b(-1));
    assert_eq!(q_matrix(3).unwrap().det(), b(1));
    assert_eq!(q_matrix(4).unwrap().det(), b(-1));
    assert!(q_matrix(1).is_err());
    for p in 2..=10 {
        let want = if p % 2 == 0 { -1 } else { 1 };
        assert_eq!(q_matrix(p).unwrap().det(), b(want));
    }
}

#[test]
fn q_tilde_examples() {
    assert_eq!(q_tilde(&[b(1), b(1)]).unwrap(), q_matrix(2).unwrap());
    assert_eq!(q_tilde(&[b(1), b(1), b(1)]).unwrap(), q_matrix(3).unwrap());
    assert_eq!(q_tilde(&[b(2), b(0), b(3)]).unwrap().det(), b(3));
    assert!(q_tilde(&[b(1), b(0)]).is_err());
    assert!(q_tilde(&[b(1)]).is_err());
}

#[test]
fn matrix_construction_errors() {
    assert!(BigIntMatrix::from_rows(vec![vec![b(1), b(2)]]).is_err());
    assert!(BigIntMatrix::from_rows(vec![]).is_err());
    assert_eq!(BigIntMatrix::identity(3).det(), b(1));
    assert_eq!(m(&[&[2, 3], &[4, 6]]).det(), b(0));
    assert_eq!(m(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).det(), b(-3));
}

#[test]
fn mat_pow_examples() {
    let q2 = q_matrix(2).unwrap();
    assert_eq!(mat_pow(&q2, 9), m(&[&[55, 34], &[34, 21]]));
    assert_eq!(mat_pow(&q_matrix(3).unwrap(), 2), m(&[&[2, 2, 1], &[1, 1, 1], &[1, 0, 0]]));
    assert_eq!(mat_pow(&q_matrix(4).unwrap(), 2).row(0), vec![b(2), b(2), b(2), b(1)]);
    assert_eq!(mat_pow(&q2, 0), BigIntMatrix::identity(2));
    for n in 1..=60u64 {
        let want = m(&[&[0, 0], &[0, 0]]);
        let got = mat_pow(&q2, n);
        let (f1, f0, fm) = (fib_lucas(n + 1).0, fib_lucas(n).0, fib_lucas(n - 1).0);
        assert_eq!(got.rows(), vec![vec![f1, f0.clone()], vec![f0, fm]]);
        assert_ne!(got, want);
    }
}

#[test]
fn advance_state_examples() {
    let q2 = q_matrix(2).unwrap();
    assert_eq!(advance_state(&q2, &[b(1), b(0)], 9).unwrap(), vec![b(55), b(34)]);
    assert_eq!(advance_state(&q2, &[b(7), b(3)], 0).unwrap(), vec![b(7), b(3)]);
    let q3 = q_matrix(3).unwrap();
    assert_eq!(advance_state(&q3, &[b(1), b(1), b(1)], 7).unwrap()[0], b(105));
    assert!(advance_state(&q3, &[b(1)], 2).is_err());
    // any family: state (t_{p−1} … t_0) advances to (t_{n+p−1} … t_n)
    for p in 2..=5 {
        let spec = make_family(Family::Syllable, p).unwrap();
        let t = spec.terms(40);
        let seed: Vec<BigInt> = t[..p].iter().rev().cloned().collect();
        let got = advance_state(&q_matrix(p).unwrap(), &seed, 30).unwrap();
        let want: Vec<BigInt> = t[30..30 + p].iter().rev().cloned().collect();
        assert_eq!(got, want);
    }
}

#[test]
fn cassini_examples() {
    assert_eq!(cassini(9).unwrap(), b(-1));
    assert_eq!(cassini(2).unwrap(), b(1));
    assert_eq!(cassini(100).unwrap(), b(1));
    assert!(cassini(0).is_err());
    for n in 1..=500u64 {
        assert_eq!(cassini(n).unwrap(), b(if n % 2 == 0 { 1 } else { -1 }));
    }
}

#[test]
fn determinantal_examples() {
    let d = determinantal_identity(3, 2).unwrap();
    assert_eq!((d.det_of_power.clone(), d.structural.clone()), (b(1), Structural::Matches));
    let d = determinantal_identity(4, 5).unwrap();
    assert_eq!(d.det_of_power, b(-1));
    assert_eq!(d.structural_ok(), Some(true));
    let d = determinantal_identity(2, 1).unwrap();
    assert_eq!(d.det_of_power, b(-1));
    assert_eq!(d.structural, Structural::Matches);
    assert_eq!(determinantal_identity(3, 1).unwrap().structural, Structural::NotApplicable);
    assert_eq!(determinantal_identity(4, 2).unwrap().structural, Structural::NotApplicable);
    let d = determinantal_identity(5, 3).unwrap();
    assert_eq!((d.det_of_power.clone(), d.structural.clone()), (b(1), Structural::Unsupported));
    assert!(determinantal_identity(1, 3).is_err());
    assert!(determinantal_identity(3, 0).is_err());
}

#[test]
fn determinant_of_powers() {
    for p in 2..=8 {
        let base = if p % 2 == 0 { -1 } else { 1 };
        for n in 1..=100u64 {
            let d = determinantal_identity(p, n).unwrap();
            assert_eq!(d.det_of_power, b(base).pow(n as u32), "p={p} n={n}");
            assert_eq!(d.det_of_power, d.expected);
        }
    }
}

#[test]
fn structural_identifications() {
    for n in 1..=50 {
        assert_eq!(determinantal_identity(2, n).unwrap().structural_ok(), Some(true));
    }
    for n in 2..=50 {
        assert_eq!(determinantal_identity(3, n).unwrap().structural_ok(), Some(true), "p=3 n={n}");
    }
    for n in 3..=50 {
        assert_eq!(determinantal_identity(4, n).unwrap().structural_ok(), Some(true), "p=4 n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn power_multiplicativity(p in 2usize..=6, a in 0u64..=50, c in 0u64..=50) {
        let q = q_matrix(p).unwrap();
        prop_assert_eq!(mat_pow(&q, a + c), mat_pow(&q, a).mul(&mat_pow(&q, c)).unwrap());
    }

    #[test]
    fn q_tilde_determinant(coeffs in prop::collection::vec(-20i64..=20, 2..=6)) {
        prop_assume!(*coeffs.last().unwrap() != 0);
        let p = coeffs.len();
        let c: Vec<BigInt> = coeffs.iter().map(|&x| b(x)).collect();
        let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(q_tilde(&c).unwrap().det(), b(sign * coeffs[p - 1]));
    }
}
