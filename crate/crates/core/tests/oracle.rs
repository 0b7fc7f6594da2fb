use std::sync::Arc;

use num_bigint::BigInt;

use kummer_lpoly::cyclo::{frobenius_shift, jacobi_sum};
use kummer_lpoly::frobenius::{analyze, CurveParams};
use kummer_lpoly::gf::FieldSpec;
use kummer_lpoly::lfunc::lpoly_from_profile;
use kummer_lpoly::oracle::{diagonal_count_naive, lpoly_from_counts, OracleBudget};

fn field(p: u64, e: usize) -> Arc<FieldSpec> {
    FieldSpec::new(p, e, None).unwrap()
}

#[test]
fn lpoly_from_counts_matches_formula() {
    let budget = OracleBudget::default();
    for (ell, p, e, a, b) in [
        (3u64, 7u64, 1usize, 1u64, 3u64),
        (3, 5, 1, 0, 2),
        (5, 11, 1, 2, 7),
        (5, 3, 2, 1, 4),
        (7, 3, 1, 1, 2),
        (7, 29, 1, 4, 1),
        (5, 19, 1, 3, 3),
    ] {
        let f = field(p, e);
        let curve = CurveParams::new(ell, f.clone(), f.unpack(a), f.unpack(b)).unwrap();
        let formula = lpoly_from_profile(&analyze(&curve, None).unwrap(), &curve).unwrap();
        let counted = lpoly_from_counts(&curve, &budget).unwrap();
        assert_eq!(formula, counted, "l={ell} q={}", f.order());
    }
}

/// `#{x^l + y^2 = 1}` over `F_q` with `q = 1 mod l` is `q + sum_j J(chi^j, rho)`,
/// and the sum of the conjugates of `J` is `l a_l - sum_i a_i`.
#[test]
fn diagonal_count_is_q_plus_trace_of_j() {
    let budget = OracleBudget::default();
    for (ell, q) in [(3u64, 7u64), (3, 13), (5, 11), (5, 31), (7, 29), (13, 53), (11, 23)] {
        let f = field(q, 1);
        let j = jacobi_sum(&f, ell, f.gen()).unwrap();
        let terms = [(f.one(), ell), (f.one(), 2)];
        let n = diagonal_count_naive(&f, &terms, &f.one(), &budget).unwrap();
        let trace = frobenius_shift(&j, 1, ell).unwrap();
        assert_eq!(n, BigInt::from(q) + trace, "l={ell} q={q}");
    }
}

#[test]
fn diagonal_count_over_extension_field() {
    let budget = OracleBudget::default();
    // x^2 + y^2 = 1 has q - (-1)^((q-1)/2) solutions.
    for (p, e) in [(3u64, 2usize), (5, 2), (3, 3), (7, 2)] {
        let f = field(p, e);
        let terms = [(f.one(), 2), (f.one(), 2)];
        let q = f.order() as i64;
        let sign = if (q - 1) / 2 % 2 == 0 { 1 } else { -1 };
        assert_eq!(diagonal_count_naive(&f, &terms, &f.one(), &budget).unwrap(), BigInt::from(q - sign));
    }
}

#[test]
fn curve_counts_are_diagonal_counts() {
    // N_1 - 1 = #{y^l - X^2 = -kappa/4}.
    let budget = OracleBudget::default();
    let f = field(31, 1);
    for (a, b) in [(1u64, 2u64), (0, 5), (7, 30)] {
        let curve = CurveParams::new(5, f.clone(), f.from_u64(a), f.from_u64(b)).unwrap();
        let p = analyze(&curve, None).unwrap();
        let rhs = f.neg(&f.mul(&curve.kappa, &f.inv(&f.from_u64(4)).unwrap()));
        let terms = [(f.one(), 5), (f.from_i64(-1), 2)];
        let n = diagonal_count_naive(&f, &terms, &rhs, &budget).unwrap();
        assert_eq!(n + 1, p.point_count(1).unwrap());
    }
}
