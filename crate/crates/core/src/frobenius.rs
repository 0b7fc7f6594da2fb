//! Frobenius traces and point counts of `y^l = x^2 + a x + b` over `F_{q^t}`.
//!
//! With `m` the order of `q` mod `l`, `J` the Jacobi sum of an order-`l`
//! character and the quadratic character of `F_{q^m}`, and
//! `F_{r,n} = l a_{r,l-rn} - sum_i a_{r,i}` read off `(-1)^(r-1) J^r`:
//!
//! ```text
//! a(q^t) = 0                       if m does not divide t
//!        = -F_{r,n}                if t = m r and a^2 - 4b is a square in F_{q^m}
//!        = (-1)^(r-1) F_{r,n}      if t = m r otherwise
//! ```
//!
//! where `chi(-(a^2-4b)/4) = z^n`. For even `m` the Jacobi sum is real and
//! `F_{r,n} = (-1)^(r-1) (l-1) q^(rm/2)`, so no field of order `q^m` is built.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::cyclo::{frobenius_shift, jacobi_sum_capped, signed_power, CharSpec, CycInt};
use crate::error::{Error, Result};
use crate::gf::{embed, FieldElem, FieldSpec, TablePolicy, DLOG_TABLE_CAP};
use crate::numth::{is_prime_u64, multiplicative_order};
use crate::parse::ElemSpec;

/// `y^l = x^2 + a x + b` over `F_q`.
#[derive(Debug, Clone)]
pub struct CurveParams {
    pub ell: u64,
    pub base_field: Arc<FieldSpec>,
    pub a: FieldElem,
    pub b: FieldElem,
    /// `a^2 - 4b`.
    pub kappa: FieldElem,
    pub genus: u64,
}

impl CurveParams {
    pub fn new(ell: u64, base_field: Arc<FieldSpec>, a: FieldElem, b: FieldElem) -> Result<Self> {
        check_ell(ell, base_field.order())?;
        base_field.check_elem(&a)?;
        base_field.check_elem(&b)?;
        let f = &base_field;
        let kappa = f.sub(&f.square(&a), &f.mul(&f.from_u64(4), &b));
        let genus = if kappa.is_zero() { 0 } else { (ell - 1) / 2 };
        Ok(CurveParams { ell, base_field, a, b, kappa, genus })
    }

    pub fn q(&self) -> u64 {
        self.base_field.order()
    }
}

pub(crate) fn check_ell(ell: u64, q: u64) -> Result<()> {
    if ell == 2 || !is_prime_u64(ell) {
        return Err(Error::NotPrime(ell));
    }
    if q % ell == 0 {
        return Err(Error::Divisible { ell, q });
    }
    Ok(())
}

pub fn genus(curve: &CurveParams) -> u64 {
    curve.genus
}

/// Tuning knobs for [`FrobeniusData`].
#[derive(Debug, Clone, Copy)]
pub struct FrobeniusOptions {
    /// Largest `q^m` for which the Jacobi sum is enumerated.
    pub jacobi_cap: u64,
    /// Build `F_{q^m}` and enumerate `J` even when `m` is even.
    pub force_enumeration: bool,
}

impl Default for FrobeniusOptions {
    fn default() -> Self {
        FrobeniusOptions { jacobi_cap: DLOG_TABLE_CAP, force_enumeration: false }
    }
}

/// Everything about `(F_q, l, chi)` that does not depend on the curve: the
/// field `F_{q^m}`, the character, and a lazily filled cache of
/// `(-1)^(r-1) J^r`. Shared by all curves over the same base field.
#[derive(Debug)]
pub struct FrobeniusData {
    base: Arc<FieldSpec>,
    ell: u64,
    m: u64,
    ext: Option<Arc<FieldSpec>>,
    chi: Option<CharSpec>,
    options: FrobeniusOptions,
    /// `powers[r - 1] = signed_power(J, r)`; `powers[0]` is `J` itself.
    powers: Mutex<Vec<CycInt>>,
}

impl FrobeniusData {
    pub fn new(base: Arc<FieldSpec>, ell: u64, char_base: Option<&ElemSpec>) -> Result<Self> {
        Self::with_options(base, ell, char_base, FrobeniusOptions::default())
    }

    /// `char_base` is resolved inside `F_{q^m}` (so `g^k` means a power of its
    /// generator); the default pins `chi(gen) = z`.
    pub fn with_options(
        base: Arc<FieldSpec>,
        ell: u64,
        char_base: Option<&ElemSpec>,
        options: FrobeniusOptions,
    ) -> Result<Self> {
        check_ell(ell, base.order())?;
        let m = multiplicative_order(base.order() % ell, ell).expect("ell does not divide q");
        let (ext, chi) = if m % 2 == 1 || options.force_enumeration {
            let ext = base.extension(m as usize, TablePolicy::Auto)?;
            let b = match char_base {
                Some(spec) => spec.resolve(&ext)?,
                None => ext.gen().clone(),
            };
            let chi = CharSpec::new(ext.clone(), ell, b)?;
            (Some(ext), Some(chi))
        } else {
            (None, None)
        };
        Ok(FrobeniusData { base, ell, m, ext, chi, options, powers: Mutex::new(Vec::new()) })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn genus(&self) -> u64 {
        (self.ell - 1) / 2
    }

    /// `F_{q^m}`, when it was built.
    pub fn extension_field(&self) -> Option<&Arc<FieldSpec>> {
        self.ext.as_ref()
    }

    pub fn char_spec(&self) -> Option<&CharSpec> {
        self.chi.as_ref()
    }

    /// True when traces come from the real-Jacobi-sum closed form.
    pub fn uses_even_closed_form(&self) -> bool {
        self.chi.is_none()
    }

    /// `(n, kappa_square)` for a nonzero `kappa` in `F_q`: `chi(-kappa/4) = z^n`
    /// and whether `kappa` is a square in `F_{q^m}`.
    pub fn class_of(&self, kappa: &FieldElem) -> Result<(u64, bool)> {
        if kappa.is_zero() {
            return Err(Error::GenusZero);
        }
        let (Some(ext), Some(chi)) = (&self.ext, &self.chi) else {
            // chi is trivial on F_q and every element of F_q is a square in F_{q^m}.
            return Ok((self.ell, true));
        };
        let k = embed(&self.base, ext, kappa)?;
        let minus_quarter = ext.neg(&ext.inv(&ext.from_u64(4))?);
        let n = chi.eval(&ext.mul(&minus_quarter, &k))?;
        Ok((n, ext.is_square(&k)?))
    }

    /// The Jacobi sum in its definitional form (coefficient sum `-1`).
    pub fn jacobi(&self) -> Result<Option<CycInt>> {
        if self.chi.is_none() {
            return Ok(None);
        }
        self.signed_power(1).map(Some)
    }

    /// `(-1)^(r-1) J^r` with slot `l-1` zero (slot form of `J` for `r = 1`).
    pub fn signed_power(&self, r: u64) -> Result<CycInt> {
        assert!(r >= 1);
        let Some(chi) = &self.chi else {
            // J = q^(m/2) is real: the constant sequence shifted to slot l.
            let mut c = CycInt::constant(self.ell as usize, self.q_pow_half(r));
            if r % 2 == 0 {
                c = c.neg();
            }
            return Ok(c);
        };
        let mut powers = self.powers.lock().expect("power cache poisoned");
        if powers.is_empty() {
            let j = jacobi_sum_capped(chi.field(), self.ell, chi.base(), self.options.jacobi_cap)?;
            powers.push(j);
        }
        while (powers.len() as u64) < r {
            let next = powers.len() as u64 + 1;
            let c = signed_power(&powers[0], next);
            powers.push(c);
        }
        Ok(powers[r as usize - 1].clone())
    }

    fn q_pow_half(&self, r: u64) -> BigInt {
        BigInt::from(self.base.order()).pow(r * self.m / 2)
    }

    /// `F_{r,n}`.
    pub fn shift(&self, r: u64, n: u64) -> Result<BigInt> {
        if self.chi.is_none() {
            if n == 0 || n > self.ell {
                return Err(Error::IndexOutOfRange(n));
            }
            let v = BigInt::from(self.ell - 1) * self.q_pow_half(r);
            return Ok(if r % 2 == 1 { v } else { -v });
        }
        frobenius_shift(&self.signed_power(r)?, r, n)
    }

    /// `a(q^t)` for a curve in class `(n, kappa_square)`.
    pub fn trace_for_class(&self, n: u64, kappa_square: bool, t: u64) -> Result<BigInt> {
        if t == 0 {
            return Err(Error::InvalidInput("t must be positive".into()));
        }
        if t % self.m != 0 {
            return Ok(BigInt::zero());
        }
        let r = t / self.m;
        let f = self.shift(r, n)?;
        Ok(if kappa_square || r % 2 == 0 { -f } else { f })
    }

    pub fn profile(self: &Arc<Self>, curve: &CurveParams) -> Result<TraceProfile> {
        if curve.ell != self.ell || *curve.base_field != *self.base {
            return Err(Error::InvalidInput("curve does not match the Frobenius data".into()));
        }
        if curve.genus == 0 {
            return Err(Error::GenusZero);
        }
        let (n, kappa_square) = self.class_of(&curve.kappa)?;
        TraceProfile::build(self.clone(), n, kappa_square)
    }
}

/// Curve-level data: `m`, `n`, squareness, and `S_1..S_g` (`S_t = -a(q^t)`).
#[derive(Debug, Clone)]
pub struct TraceProfile {
    data: Arc<FrobeniusData>,
    pub m: u64,
    pub n: u64,
    pub kappa_square: bool,
    pub jacobi: Option<CycInt>,
    /// `S_1, ..., S_g`.
    pub s: Vec<BigInt>,
    /// `F_{r,n}` for `1 <= r <= g/m`.
    pub f_values: BTreeMap<u64, BigInt>,
}

impl TraceProfile {
    fn build(data: Arc<FrobeniusData>, n: u64, kappa_square: bool) -> Result<Self> {
        let g = data.genus();
        let m = data.m;
        let mut f_values = BTreeMap::new();
        for r in 1..=g / m {
            f_values.insert(r, data.shift(r, n)?);
        }
        let s = (1..=g)
            .map(|t| data.trace_for_class(n, kappa_square, t).map(|a| -a))
            .collect::<Result<Vec<_>>>()?;
        let jacobi = data.jacobi()?;
        Ok(TraceProfile { data, m, n, kappa_square, jacobi, s, f_values })
    }

    pub fn data(&self) -> &Arc<FrobeniusData> {
        &self.data
    }

    pub fn ell(&self) -> u64 {
        self.data.ell
    }

    pub fn q(&self) -> u64 {
        self.data.base.order()
    }

    pub fn genus(&self) -> u64 {
        self.data.genus()
    }

    /// `a(q^t)`; `t` may exceed the genus.
    pub fn trace(&self, t: u64) -> Result<BigInt> {
        self.data.trace_for_class(self.n, self.kappa_square, t)
    }

    /// `N_t = q^t + 1 - a(q^t)`.
    pub fn point_count(&self, t: u64) -> Result<BigInt> {
        Ok(BigInt::from(self.q()).pow(t) + 1 - self.trace(t)?)
    }
}

/// Builds the profile of one curve; `char_base` is read in `F_{q^m}`.
pub fn analyze(curve: &CurveParams, char_base: Option<&ElemSpec>) -> Result<TraceProfile> {
    if curve.genus == 0 {
        return Err(Error::GenusZero);
    }
    let data = Arc::new(FrobeniusData::new(curve.base_field.clone(), curve.ell, char_base)?);
    data.profile(curve)
}

pub fn trace(profile: &TraceProfile, curve: &CurveParams, t: u64) -> Result<BigInt> {
    if curve.genus == 0 {
        return Err(Error::GenusZero);
    }
    profile.trace(t)
}

pub fn point_count(profile: &TraceProfile, curve: &CurveParams, t: u64) -> Result<BigInt> {
    if curve.genus == 0 {
        return Err(Error::GenusZero);
    }
    profile.point_count(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn l13_q53() -> CurveParams {
        let f = FieldSpec::prime(53).unwrap();
        CurveParams::new(13, f.clone(), f.from_u64(44), f.from_u64(23)).unwrap()
    }

    #[test]
    fn curve_validation() {
        let f = FieldSpec::prime(53).unwrap();
        assert!(matches!(
            CurveParams::new(53, f.clone(), f.one(), f.one()),
            Err(Error::Divisible { .. })
        ));
        assert!(matches!(CurveParams::new(9, f.clone(), f.one(), f.one()), Err(Error::NotPrime(9))));
        assert_eq!(genus(&l13_q53()), 6);
        let f7 = FieldSpec::prime(7).unwrap();
        let c = CurveParams::new(5, f7.clone(), f7.from_u64(2), f7.one()).unwrap();
        assert_eq!(genus(&c), 0);
        assert!(matches!(analyze(&c, None), Err(Error::GenusZero)));
    }

    #[test]
    fn l13_q53_profile() {
        let curve = l13_q53();
        let p = analyze(&curve, Some(&ElemSpec::Residue(2))).unwrap();
        assert_eq!((p.m, p.n, p.kappa_square), (1, 4, true));
        assert_eq!(p.s, ints(&[27, -207, 261, 5201, -68613, 1353]));
        assert_eq!(trace(&p, &curve, 1).unwrap(), BigInt::from(-27));
        assert_eq!(trace(&p, &curve, 13).unwrap(), BigInt::from(-808461599700i64));
        assert_eq!(point_count(&p, &curve, 1).unwrap(), BigInt::from(81));
        assert_eq!(point_count(&p, &curve, 3).unwrap(), BigInt::from(149139));
        assert_eq!(
            point_count(&p, &curve, 13).unwrap().to_string(),
            "26036721926414947795674"
        );
    }

    #[test]
    fn zero_traces_when_m_does_not_divide_t() {
        let f = FieldSpec::prime(7).unwrap();
        let curve = CurveParams::new(5, f.clone(), f.one(), f.from_u64(3)).unwrap();
        let p = analyze(&curve, None).unwrap();
        assert_eq!(p.m, 4);
        assert!(p.jacobi.is_none());
        assert!(p.trace(3).unwrap().is_zero());
        assert_eq!(p.trace(4).unwrap(), BigInt::from(-4 * 49));
    }

    #[test]
    fn even_m_matches_enumeration() {
        // q = 7, l = 5: m = 4; F_{7^4} is small enough to enumerate J.
        let f = FieldSpec::prime(7).unwrap();
        let fast = FrobeniusData::new(f.clone(), 5, None).unwrap();
        let opts = FrobeniusOptions { force_enumeration: true, ..Default::default() };
        let slow = FrobeniusData::with_options(f.clone(), 5, None, opts).unwrap();
        // kappa lies in F_q, where chi is trivial, so only n = l occurs.
        for r in 1..=4 {
            assert_eq!(fast.shift(r, 5).unwrap(), slow.shift(r, 5).unwrap(), "r={r}");
        }
        for k in 1..7 {
            assert_eq!(slow.class_of(&f.from_u64(k)).unwrap(), (5, true));
        }
    }
}
