//! L-polynomials `L(u) = sum c_i u^i` and class numbers `h = L(1)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde_json::{json, Value};

use crate::cyclo::big_to_json;
use crate::error::{Error, Result};
use crate::frobenius::{check_ell, CurveParams, TraceProfile};
use crate::gf::{FieldSpec, TablePolicy, DLOG_TABLE_CAP};
use crate::numth::{binomial, multiplicative_order, odd_prime_power};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPoly {
    pub g: u64,
    pub q: u64,
    /// `c_0, ..., c_{2g}`.
    pub coeffs: Vec<BigInt>,
    pub class_number: BigInt,
}

impl LPoly {
    /// `L = 1`, the rational function field case.
    pub fn trivial(q: u64) -> Self {
        LPoly { g: 0, q, coeffs: vec![BigInt::one()], class_number: BigInt::one() }
    }

    /// Newton recursion `t c_t = sum_{i=1}^t S_i c_{t-i}` for `t <= g`, then the
    /// functional equation `c_{2g-i} = q^{g-i} c_i`.
    pub fn from_power_sums(q: u64, g: u64, s: &[BigInt]) -> Result<Self> {
        if (s.len() as u64) < g {
            return Err(Error::InvalidInput(format!("need S_1..S_{g}, got {} values", s.len())));
        }
        let g_us = g as usize;
        let mut c = vec![BigInt::zero(); 2 * g_us + 1];
        c[0] = BigInt::one();
        for t in 1..=g_us {
            let mut acc = BigInt::zero();
            for i in 1..=t {
                acc += &s[i - 1] * &c[t - i];
            }
            let (quo, rem) = acc.div_rem(&BigInt::from(t));
            if !rem.is_zero() {
                return Err(Error::NonIntegralCoefficient(t));
            }
            c[t] = quo;
        }
        Ok(Self::from_lower_half(q, g, &c[..=g_us]))
    }

    /// Completes `c_0..c_g` by the functional equation.
    pub fn from_lower_half(q: u64, g: u64, lower: &[BigInt]) -> Self {
        let g_us = g as usize;
        let mut c = vec![BigInt::zero(); 2 * g_us + 1];
        c[..=g_us].clone_from_slice(&lower[..=g_us]);
        let qb = BigInt::from(q);
        for i in 0..g_us {
            c[2 * g_us - i] = qb.clone().pow((g_us - i) as u32) * &lower[i];
        }
        let mut out = LPoly { g, q, coeffs: c, class_number: BigInt::zero() };
        out.class_number = class_number(&out);
        out
    }

    /// `c_{2g-i} = q^{g-i} c_i` for all `i`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.g as usize;
        let qb = BigInt::from(self.q);
        self.coeffs.len() == 2 * g + 1
            && self.coeffs[0].is_one()
            && (0..=g).all(|i| self.coeffs[2 * g - i] == qb.clone().pow((g - i) as u32) * &self.coeffs[i])
    }

    pub fn eval(&self, u: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * u + c)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(big_to_json).collect();
        json!({
            "g": self.g,
            "q": self.q,
            "coeffs": coeffs,
            "class_number": self.class_number.to_string(),
        })
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "u")?,
                (1, false) => write!(f, "{mag}u")?,
                (_, true) => write!(f, "u^{i}")?,
                (_, false) => write!(f, "{mag}u^{i}")?,
            }
        }
        Ok(())
    }
}

pub fn lpoly_from_profile(profile: &TraceProfile, curve: &CurveParams) -> Result<LPoly> {
    if curve.genus == 0 {
        return Ok(LPoly::trivial(curve.q()));
    }
    LPoly::from_power_sums(curve.q(), curve.genus, &profile.s)
}

/// `h = sum_{i<g} (q^{g-i} + 1) c_i + c_g`, cross-checked against `L(1)`.
pub fn class_number(l: &LPoly) -> BigInt {
    let g = l.g as usize;
    let qb = BigInt::from(l.q);
    let mut h = l.coeffs[g].clone();
    for i in 0..g {
        h += (qb.clone().pow((g - i) as u32) + 1) * &l.coeffs[i];
    }
    debug_assert!(
        !l.satisfies_functional_equation() || h == l.coeffs.iter().sum::<BigInt>(),
        "h disagrees with L(1)"
    );
    h
}

/// `a_{1,l} = 2N - M`, `M = (Q-1-l)/l`, `N` the number of squares among
/// `1 - g^{l i}` for `1 <= i <= M`: the slot-`l` coefficient of `J`.
pub fn a1ell_qr(field: &FieldSpec, ell: u64) -> Result<BigInt> {
    let order = field.order();
    if (order - 1) % ell != 0 {
        return Err(Error::OrderMismatch { ell, order });
    }
    if order > DLOG_TABLE_CAP {
        return Err(Error::FieldTooLarge(format!(
            "quadratic-residue count over F_{order} exceeds the enumeration cap"
        )));
    }
    let count = (order - 1 - ell) / ell;
    let step = field.pow(field.gen(), ell);
    let one = field.one();
    let mut cur = one.clone();
    let mut squares = 0i64;
    for _ in 0..count {
        cur = field.mul(&cur, &step);
        if field.is_square(&field.sub(&one, &cur))? {
            squares += 1;
        }
    }
    Ok(BigInt::from(2 * squares - count as i64))
}

/// Closed-form L-polynomial when `m` is even, or `m = (l-1)/2` is odd
/// (`kappa_square` then selects the branch).
pub fn closed_form(ell: u64, q: u64, kappa_square: Option<bool>) -> Result<LPoly> {
    let (p, e) = odd_prime_power(q).ok_or(Error::NotPrime(q))?;
    check_ell(ell, q)?;
    let m = multiplicative_order(q % ell, ell).expect("ell does not divide q");
    let g = (ell - 1) / 2;
    if m % 2 == 0 {
        // (1 + q^{m/2} u^m)^{(l-1)/m}
        let k = (ell - 1) / m;
        let mut lower = vec![BigInt::zero(); g as usize + 1];
        for i in 0..=k {
            if i * m <= g {
                lower[(i * m) as usize] = binomial(k, i) * BigInt::from(q).pow(i * m / 2);
            }
        }
        return Ok(LPoly::from_lower_half(q, g, &lower));
    }
    if m != g || m == 1 {
        // m = 1 only reaches here for l = 3, where chi is not trivial on F_q.
        return Err(Error::UnsupportedM { ell, m });
    }
    let square = kappa_square.ok_or_else(|| {
        Error::InvalidInput(format!("m = {m} is odd: the squareness of a^2 - 4b is required"))
    })?;
    let base = FieldSpec::new(p, e, None)?;
    let ext = base_extension(&base, m)?;
    let a = a1ell_qr(&ext, ell)?;
    let f1: BigInt = BigInt::from(ell) * a + 1;
    let (cm, rem) = f1.div_rem(&BigInt::from(m));
    if !rem.is_zero() {
        return Err(Error::NonIntegralCoefficient(m as usize));
    }
    // S_m = F_{1,l} on the square class and -F_{1,l} otherwise; c_m = S_m / m.
    let cm = if square { cm } else { -cm };
    let mut lower = vec![BigInt::zero(); g as usize + 1];
    lower[0] = BigInt::one();
    lower[g as usize] = cm;
    Ok(LPoly::from_lower_half(q, g, &lower))
}

fn base_extension(base: &Arc<FieldSpec>, m: u64) -> Result<Arc<FieldSpec>> {
    if base.order().checked_pow(m as u32).is_none_or(|o| o > DLOG_TABLE_CAP) {
        return Err(Error::FieldTooLarge(format!("F_{}^{m} exceeds the enumeration cap", base.order())));
    }
    base.extension(m as usize, TablePolicy::Require)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::jacobi_sum;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn newton_ex2() {
        let s = ints(&[27, -207, 261, 5201, -68613, 1353]);
        let l = LPoly::from_power_sums(53, 6, &s).unwrap();
        assert_eq!(l.coeffs[1..=6], ints(&[27, 261, 573, -6577, -31251, 28913])[..]);
        assert_eq!(l.class_number, BigInt::from(35580222353i64));
        assert!(l.satisfies_functional_equation());
        assert_eq!(l.eval(&BigInt::one()), l.class_number);
    }

    #[test]
    fn newton_rejects_bad_traces() {
        let s = ints(&[1, 0]);
        assert!(matches!(
            LPoly::from_power_sums(7, 2, &s),
            Err(Error::NonIntegralCoefficient(2))
        ));
    }

    #[test]
    fn zero_traces() {
        let l = LPoly::from_power_sums(13, 2, &ints(&[0, 0])).unwrap();
        assert_eq!(l.coeffs, ints(&[1, 0, 0, 0, 169]));
        assert_eq!(l.class_number, BigInt::from(170));
        assert_eq!(closed_form(5, 13, None).unwrap(), l);
        assert_eq!(class_number(&LPoly::trivial(13)), BigInt::one());
    }

    #[test]
    fn closed_form_199_11() {
        let l = closed_form(199, 11, None).unwrap();
        let h: BigInt = (BigInt::from(11).pow(11u32) + BigInt::one()).pow(9u32);
        assert_eq!(l.class_number, h);
        assert_eq!(h.to_string().len(), 104);
        assert_eq!(l.coeffs[22], BigInt::from(9) * BigInt::from(11).pow(11u32));
        assert!(l.coeffs.iter().enumerate().all(|(i, c)| i % 22 == 0 || c.is_zero()));
    }

    #[test]
    fn closed_form_unsupported() {
        assert!(matches!(closed_form(31, 25, None), Err(Error::UnsupportedM { m: 3, .. })));
        assert!(matches!(closed_form(31, 125, None), Err(Error::UnsupportedM { m: 1, .. })));
        assert!(matches!(closed_form(3, 7, Some(true)), Err(Error::UnsupportedM { ell: 3, m: 1 })));
        assert!(matches!(closed_form(7, 11, None), Err(Error::InvalidInput(_))));
        assert!(matches!(closed_form(5, 25, None), Err(Error::Divisible { .. })));
    }

    #[test]
    fn a1ell_matches_jacobi_slot() {
        let f31 = FieldSpec::prime(31).unwrap();
        assert_eq!(a1ell_qr(&f31, 5).unwrap(), BigInt::from(-1));
        let f11 = FieldSpec::prime(11).unwrap();
        let f1331 = f11.extension(3, TablePolicy::Auto).unwrap();
        let j = jacobi_sum(&f1331, 7, f1331.gen()).unwrap();
        assert_eq!(&a1ell_qr(&f1331, 7).unwrap(), j.slot(7));
        // Q - 1 = 2l: a single element in T.
        let f11b = FieldSpec::prime(11).unwrap();
        let a = a1ell_qr(&f11b, 5).unwrap();
        assert!(a == BigInt::one() || a == BigInt::from(-1));
    }

    #[test]
    fn display_and_json() {
        let l = LPoly::from_lower_half(3, 1, &ints(&[1, -2]));
        assert_eq!(l.to_string(), "1 - 2u + 3u^2");
        assert_eq!(
            l.to_json().to_string(),
            r#"{"class_number":"2","coeffs":[1,-2,3],"g":1,"q":3}"#
        );
    }
}
