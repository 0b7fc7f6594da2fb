//! Cyclotomic integers in the non-reduced basis `sum_{i=1}^{l} a_i z^i`
//! (`z^l = 1`), multiplicative characters, and Jacobi sums.
//!
//! Two coefficient sequences name the same cyclotomic integer exactly when
//! they differ by a constant sequence, because `1 + z + ... + z^{l-1} = 0`.
//! Equality on [`CycInt`] is defined that way.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec, DLOG_TABLE_CAP};
use crate::numth::mod_inverse_u64;

/// `sum_{i=1}^{l} a_i z^i`. Internally slot `l` is stored at index 0 so that
/// multiplication is plain cyclic convolution.
#[derive(Clone)]
pub struct CycInt {
    ell: usize,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(ell: usize) -> Self {
        CycInt { ell, coeffs: vec![BigInt::zero(); ell] }
    }

    /// The constant `c` (stored in slot `l`).
    pub fn constant(ell: usize, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(ell);
        out.coeffs[0] = c.into();
        out
    }

    /// From `(a_1, ..., a_l)`.
    pub fn from_slots<T: Into<BigInt> + Clone>(slots: &[T]) -> Self {
        let ell = slots.len();
        let mut coeffs = vec![BigInt::zero(); ell];
        for (i, a) in slots.iter().enumerate() {
            coeffs[(i + 1) % ell] = a.clone().into();
        }
        CycInt { ell, coeffs }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `a_i` for `i` in `1..=l`; `a_0` is read as `a_l`.
    pub fn slot(&self, i: usize) -> &BigInt {
        &self.coeffs[i % self.ell]
    }

    /// `(a_1, ..., a_l)`.
    pub fn slots(&self) -> Vec<BigInt> {
        (1..=self.ell).map(|i| self.slot(i).clone()).collect()
    }

    pub(crate) fn add_to_slot(&mut self, i: usize, v: i64) {
        let idx = i % self.ell;
        self.coeffs[idx] += v;
    }

    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Adds `c` to every coefficient; the value is unchanged.
    pub fn shifted(&self, c: &BigInt) -> Self {
        CycInt { ell: self.ell, coeffs: self.coeffs.iter().map(|a| a + c).collect() }
    }

    /// Representative with `a_{l-1} = 0`.
    pub fn normalized(&self) -> Self {
        let c = -self.slot(self.ell - 1).clone();
        self.shifted(&c)
    }

    pub fn neg(&self) -> Self {
        CycInt { ell: self.ell, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ell, other.ell, "mixed cyclotomic orders");
        let l = self.ell;
        let mut out = vec![BigInt::zero(); l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[(i + j) % l] += a * b;
            }
        }
        CycInt { ell: l, coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::constant(self.ell, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Complex conjugation: `z^i -> z^{l-i}`.
    pub fn conj(&self) -> Self {
        let l = self.ell;
        let coeffs = (0..l).map(|i| self.coeffs[(l - i) % l].clone()).collect();
        CycInt { ell: l, coeffs }
    }

    /// Applies `z -> z^k` for `k` prime to `l`.
    pub fn galois(&self, k: usize) -> Self {
        let l = self.ell;
        let mut coeffs = vec![BigInt::zero(); l];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[(i * k) % l] = a.clone();
        }
        CycInt { ell: l, coeffs }
    }

    /// True when all coefficients are equal, i.e. the value is zero.
    pub fn is_zero_value(&self) -> bool {
        self.coeffs.iter().all(|a| a == &self.coeffs[0])
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.slots().iter().map(big_to_json).collect();
        json!({ "ell": self.ell, "coeffs": coeffs })
    }
}

pub(crate) fn big_to_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        if self.ell != other.ell {
            return false;
        }
        let d0 = &self.coeffs[0] - &other.coeffs[0];
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a - b == d0)
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt{:?}", self.slots())
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 1..=self.ell {
            let a = self.slot(i);
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if i == self.ell {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z^{i}")?;
            } else {
                write!(f, "{mag}·z^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A multiplicative character of prime order `ell` on a finite field,
/// pinned by `chi(base) = z`.
#[derive(Debug, Clone)]
pub struct CharSpec {
    field: Arc<FieldSpec>,
    ell: u64,
    base: FieldElem,
    /// Inverse of `dlog(base)` modulo `ell`.
    base_log_inv: u64,
}

impl CharSpec {
    pub fn new(field: Arc<FieldSpec>, ell: u64, base: FieldElem) -> Result<Self> {
        field.check_elem(&base)?;
        if (field.order() - 1) % ell != 0 {
            return Err(Error::OrderMismatch { ell, order: field.order() });
        }
        let t = field.dlog(&base)? % ell;
        let base_log_inv = mod_inverse_u64(t, ell).ok_or_else(|| {
            Error::InvalidInput(format!(
                "{base:?} is an {ell}-th power, so no character of order {ell} sends it to z"
            ))
        })?;
        Ok(CharSpec { field, ell, base, base_log_inv })
    }

    /// The character with `chi(gen) = z`.
    pub fn from_generator(field: Arc<FieldSpec>, ell: u64) -> Result<Self> {
        let g = field.gen().clone();
        Self::new(field, ell, g)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn base(&self) -> &FieldElem {
        &self.base
    }

    /// `n` in `1..=ell` with `chi(x) = z^n`; `n = ell` is the trivial value.
    pub fn eval(&self, x: &FieldElem) -> Result<u64> {
        let k = self.field.dlog(x)?;
        Ok(self.exponent_from_log(k))
    }

    fn exponent_from_log(&self, k: u64) -> u64 {
        let n = (k % self.ell) * self.base_log_inv % self.ell;
        if n == 0 {
            self.ell
        } else {
            n
        }
    }
}

/// `n` with `chi(x) = z^n` for the character pinned by `spec`.
pub fn char_eval_ell(spec: &CharSpec, x: &FieldElem) -> Result<u64> {
    spec.eval(x)
}

/// `J(chi, rho) = sum_{c1 + c2 = 1} chi(c1) rho(c2)` with `chi` of order `ell`
/// (`chi(base) = z`) and `rho` quadratic, by one pass over `c1`.
pub fn jacobi_sum(field: &Arc<FieldSpec>, ell: u64, base: &FieldElem) -> Result<CycInt> {
    jacobi_sum_capped(field, ell, base, DLOG_TABLE_CAP)
}

pub fn jacobi_sum_capped(
    field: &Arc<FieldSpec>,
    ell: u64,
    base: &FieldElem,
    cap: u64,
) -> Result<CycInt> {
    if field.order() > cap || !field.has_table() {
        return Err(Error::FieldTooLarge(format!(
            "Jacobi sum over F_{} exceeds the enumeration cap {cap}",
            field.order()
        )));
    }
    let chi = CharSpec::new(field.clone(), ell, base.clone())?;
    let mut j = CycInt::zero(ell as usize);
    // packed 0 and 1 are the elements 0 and 1
    for v in 2..field.order() {
        let k = field.table_log_packed(v).expect("nonzero");
        let n = chi.exponent_from_log(k);
        let w = field.one_minus_packed(v);
        let rho = if field.table_log_packed(w).expect("c1 != 1") % 2 == 0 { 1 } else { -1 };
        j.add_to_slot(n as usize, rho);
    }
    Ok(j)
}

/// `(-1)^(r-1) J^r`, returned in the representative with `a_{l-1} = 0`.
pub fn signed_power(j: &CycInt, r: u64) -> CycInt {
    assert!(r >= 1, "signed_power needs r >= 1");
    let p = j.pow(r);
    let p = if r % 2 == 0 { p.neg() } else { p };
    p.normalized()
}

/// `l a_k - sum_i a_i` with `k = l - r n (mod l)` and `a_0 = a_l`.
pub fn frobenius_shift(c: &CycInt, r: u64, n: u64) -> Result<BigInt> {
    let l = c.ell() as u64;
    if n == 0 || n > l {
        return Err(Error::IndexOutOfRange(n));
    }
    let k = (l - (r % l) * n % l) % l;
    Ok(BigInt::from(l) * c.slot(k as usize) - c.coeff_sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }
}

/// Power sums and elementary symmetric sums of the slots.
pub(crate) struct SlotSums {
    pub sum_sq: BigInt,
    pub sum_pair: BigInt,
    pub sum_triple: BigInt,
    pub sum_cube: BigInt,
}

pub(crate) fn slot_sums(j: &CycInt) -> SlotSums {
    let a = j.slots();
    let mut sum_sq = BigInt::zero();
    let mut sum_cube = BigInt::zero();
    let mut sum_pair = BigInt::zero();
    let mut sum_triple = BigInt::zero();
    for i in 0..a.len() {
        sum_sq += &a[i] * &a[i];
        sum_cube += &a[i] * &a[i] * &a[i];
        for jx in i + 1..a.len() {
            sum_pair += &a[i] * &a[jx];
            for k in jx + 1..a.len() {
                sum_triple += &a[i] * &a[jx] * &a[k];
            }
        }
    }
    SlotSums { sum_sq, sum_pair, sum_triple, sum_cube }
}

/// Checks the algebraic identities a Jacobi sum over a field of order `q` satisfies.
/// `j` must be in the definitional representative (as returned by [`jacobi_sum`]).
pub fn identity_report(j: &CycInt, q: u64, ell: u64) -> IdentityReport {
    let mut checks = Vec::new();
    let q_big = BigInt::from(q);
    let push = |checks: &mut Vec<IdentityCheck>, name, ok: Option<bool>, detail: String| {
        let status = match ok {
            Some(true) => CheckStatus::Pass,
            Some(false) => CheckStatus::Fail,
            None => CheckStatus::Skipped,
        };
        checks.push(IdentityCheck { name, status, detail });
    };

    let sum = j.coeff_sum();
    push(&mut checks, "coefficient_sum", Some(sum == BigInt::from(-1)), format!("sum a_i = {sum}"));

    let norm = j.mul(&j.conj());
    let expected = CycInt::constant(j.ell(), q);
    let ok = norm == expected;
    let shown = if ok { q.to_string() } else { norm.to_string() };
    push(&mut checks, "absolute_value", Some(ok), format!("J conj(J) = {shown}"));

    let s = slot_sums(j);
    if ell == 5 || ell == 7 {
        // (l-1) q = (l-1) sum a^2 - 2 sum_{i<j} a_i a_j
        let lhs = BigInt::from(ell - 1) * &q_big;
        let rhs = BigInt::from(ell - 1) * &s.sum_sq - BigInt::from(2) * &s.sum_pair;
        push(
            &mut checks,
            "norm_quadratic_form",
            Some(lhs == rhs),
            format!("sum a^2 = {}, sum a_i a_j = {}", s.sum_sq, s.sum_pair),
        );
    } else {
        push(&mut checks, "norm_quadratic_form", None, "only for ell in {5, 7}".into());
    }
    if ell == 7 {
        let seven = BigInt::from(7);
        let ok = &s.sum_sq * &seven == BigInt::from(6) * &q_big + 1
            && &s.sum_pair * &seven == BigInt::from(-3) * &q_big + 3
            && (&s.sum_cube - BigInt::from(3) * &s.sum_triple) * &seven
                == BigInt::from(-9) * &q_big + 2;
        push(
            &mut checks,
            "septic_power_sums",
            Some(ok),
            format!(
                "sum a^2 = {}, sum a_i a_j = {}, sum a^3 - 3 e3 = {}",
                s.sum_sq,
                s.sum_pair,
                &s.sum_cube - BigInt::from(3) * &s.sum_triple
            ),
        );
    } else {
        push(&mut checks, "septic_power_sums", None, "only for ell = 7".into());
    }
    IdentityReport { checks }
}
