//! Brute-force counts that share nothing with the Jacobi-sum path except
//! the field representation: points on `y^l = x^2 + a x + b`, solutions of
//! diagonal equations, and L-polynomials rebuilt from raw counts.
//!
//! Arithmetic here runs on flat digit vectors with its own multiplication.
//! The counts involve no discrete logarithms; only lifting the coefficients
//! `a`, `b` from `F_q` into `F_{q^t}` goes through [`embed`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::frobenius::CurveParams;
use crate::gf::{embed, FieldElem, FieldSpec, TablePolicy};
use crate::lfunc::LPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest field that may be enumerated.
    pub max_elements: u64,
    /// Largest number of tuples a multi-variable enumeration may visit.
    pub max_pairs: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_elements: 1 << 26, max_pairs: 1 << 26 }
    }
}

impl OracleBudget {
    pub fn new(max_elements: u64, max_pairs: u64) -> Result<Self> {
        if max_elements == 0 || max_pairs == 0 {
            return Err(Error::InvalidInput("oracle caps must be positive".into()));
        }
        Ok(OracleBudget { max_elements, max_pairs })
    }
}

/// `F_p[x]/(f)` on little-endian digit slices.
#[derive(Debug, Clone)]
struct Flat {
    p: u64,
    d: usize,
    /// Low coefficients of the monic modulus.
    low: Vec<u64>,
}

impl Flat {
    fn of(field: &FieldSpec) -> Self {
        let d = field.degree();
        Flat { p: field.p(), d, low: field.modulus()[..d].to_vec() }
    }

    fn mul(&self, a: &[u64], b: &[u64], out: &mut [u64], tmp: &mut Vec<u64>) {
        let (p, d) = (self.p, self.d);
        tmp.clear();
        tmp.resize(2 * d - 1, 0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                tmp[i + j] = (tmp[i + j] + x * y) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = tmp[k];
            if c != 0 {
                for i in 0..d {
                    tmp[k - d + i] = (tmp[k - d + i] + c * (p - self.low[i])) % p;
                }
            }
        }
        out.copy_from_slice(&tmp[..d]);
    }

    fn pow(&self, a: &[u64], mut e: u64, out: &mut [u64], tmp: &mut Vec<u64>) {
        let mut base = a.to_vec();
        let mut acc = vec![0; self.d];
        acc[0] = 1;
        let mut scratch = vec![0; self.d];
        while e > 0 {
            if e & 1 == 1 {
                self.mul(&acc, &base, &mut scratch, tmp);
                acc.copy_from_slice(&scratch);
            }
            e >>= 1;
            if e > 0 {
                self.mul(&base, &base, &mut scratch, tmp);
                base.copy_from_slice(&scratch);
            }
        }
        out.copy_from_slice(&acc);
    }

    fn pack(&self, a: &[u64]) -> usize {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.p + c) as usize
    }

    /// Advances `a` to the next element in packed order.
    fn increment(&self, a: &mut [u64]) {
        for c in a.iter_mut() {
            *c += 1;
            if *c < self.p {
                return;
            }
            *c = 0;
        }
    }
}

/// `counts[v] = #{y : y^l = v}` over a field, indexed by packed element.
#[derive(Debug, Clone)]
pub struct FiberTable {
    pub ell: u64,
    counts: Vec<u32>,
}

impl FiberTable {
    pub fn get(&self, packed: usize) -> u32 {
        self.counts[packed]
    }
}

/// Enumerates `F_{q^t}` with `F_q` embedded, for point counting.
#[derive(Debug, Clone)]
pub struct PointCounter {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    flat: Flat,
    /// Digits of `X^2` for every `X` in packed order, flattened.
    squares: Vec<u8>,
}

impl PointCounter {
    pub fn new(base: &Arc<FieldSpec>, t: u64, budget: &OracleBudget) -> Result<Self> {
        let order = base
            .order()
            .checked_pow(t as u32)
            .filter(|&o| o <= budget.max_elements)
            .ok_or_else(|| {
                Error::BudgetExceeded(format!(
                    "F_{}^{t} exceeds max_elements = {}",
                    base.order(),
                    budget.max_elements
                ))
            })?;
        let ext = base.extension(t as usize, TablePolicy::Never)?;
        debug_assert_eq!(ext.order(), order);
        let flat = Flat::of(&ext);
        if flat.p > u8::MAX as u64 {
            return Err(Error::BudgetExceeded(format!("characteristic {} too large to enumerate", flat.p)));
        }
        let d = flat.d;
        let mut squares = vec![0u8; order as usize * d];
        let mut x = vec![0u64; d];
        let mut sq = vec![0u64; d];
        let mut tmp = Vec::new();
        for chunk in squares.chunks_exact_mut(d) {
            flat.mul(&x, &x, &mut sq, &mut tmp);
            for (slot, &c) in chunk.iter_mut().zip(&sq) {
                *slot = c as u8;
            }
            flat.increment(&mut x);
        }
        Ok(PointCounter { base: base.clone(), ext, flat, squares })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    /// Raises every element to the `l`-th power and tallies the images.
    pub fn fiber_table(&self, ell: u64) -> FiberTable {
        let d = self.flat.d;
        let mut counts = vec![0u32; self.ext.order() as usize];
        let mut y = vec![0u64; d];
        let mut out = vec![0u64; d];
        let mut tmp = Vec::new();
        for _ in 0..self.ext.order() {
            self.flat.pow(&y, ell, &mut out, &mut tmp);
            counts[self.flat.pack(&out)] += 1;
            self.flat.increment(&mut y);
        }
        FiberTable { ell, counts }
    }

    fn lift(&self, x: &FieldElem) -> Result<Vec<u64>> {
        Ok(embed(&self.base, &self.ext, x)?.coeffs().to_vec())
    }

    /// `#{(x, y) : y^l = x^2 + a x + b}` by direct substitution.
    pub fn affine_count(&self, fiber: &FiberTable, a: &FieldElem, b: &FieldElem) -> Result<u64> {
        let (a, b) = (self.lift(a)?, self.lift(b)?);
        let p = self.flat.p;
        let d = self.flat.d;
        let mut x = vec![0u64; d];
        let mut ax = vec![0u64; d];
        let mut v = vec![0u64; d];
        let mut tmp = Vec::new();
        let mut total = 0u64;
        for chunk in self.squares.chunks_exact(d) {
            self.flat.mul(&a, &x, &mut ax, &mut tmp);
            for i in 0..d {
                v[i] = (chunk[i] as u64 + ax[i] + b[i]) % p;
            }
            total += fiber.get(self.flat.pack(&v)) as u64;
            self.flat.increment(&mut x);
        }
        Ok(total)
    }

    /// The same count through `x = X - a/2`: `sum_X #{y : y^l = X^2 - kappa/4}`.
    /// Every curve with discriminant `kappa` has this many affine points.
    pub fn affine_count_kappa(&self, fiber: &FiberTable, kappa: &FieldElem) -> Result<u64> {
        let f = &self.base;
        let c = self.lift(&f.mul(kappa, &f.inv(&f.from_u64(4))?))?;
        let p = self.flat.p;
        let d = self.flat.d;
        let neg: Vec<u64> = c.iter().map(|&ci| (p - ci) % p).collect();
        let mut total = 0u64;
        for chunk in self.squares.chunks_exact(d) {
            let mut packed = 0u64;
            for i in (0..d).rev() {
                let mut digit = chunk[i] as u64 + neg[i];
                if digit >= p {
                    digit -= p;
                }
                packed = packed * p + digit;
            }
            total += fiber.get(packed as usize) as u64;
        }
        Ok(total)
    }
}

/// `N_t = 1 + #{(x, y) in F_{q^t}^2 : y^l = x^2 + a x + b}`; the extra point is
/// the single place at infinity, which is totally ramified.
pub fn count_points_naive(curve: &CurveParams, t: u64, budget: &OracleBudget) -> Result<BigInt> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be positive".into()));
    }
    let counter = PointCounter::new(&curve.base_field, t, budget)?;
    let fiber = counter.fiber_table(curve.ell);
    Ok(BigInt::from(counter.affine_count(&fiber, &curve.a, &curve.b)? + 1))
}

/// Number of `(x_1, ..., x_k)` with `sum c_i x_i^{e_i} = rhs`.
pub fn diagonal_count_naive(
    field: &Arc<FieldSpec>,
    terms: &[(FieldElem, u64)],
    rhs: &FieldElem,
    budget: &OracleBudget,
) -> Result<BigInt> {
    field.check_elem(rhs)?;
    if rhs.is_zero() {
        return Err(Error::ZeroRhs);
    }
    if terms.is_empty() {
        return Err(Error::InvalidInput("at least one term is required".into()));
    }
    let order = field.order();
    let visits = order.checked_pow(terms.len() as u32);
    if order > budget.max_elements || visits.is_none_or(|v| v > budget.max_pairs) {
        return Err(Error::BudgetExceeded(format!(
            "{} variables over F_{order} exceed the oracle budget",
            terms.len()
        )));
    }
    let flat = Flat::of(field);
    let d = flat.d;
    let n = order as usize;
    let mut tmp = Vec::new();
    // value histogram of c x^e for each term
    let hists: Vec<Vec<u64>> = terms
        .iter()
        .map(|(c, e)| {
            field.check_elem(c)?;
            let mut h = vec![0u64; n];
            let mut x = vec![0u64; d];
            let mut xe = vec![0u64; d];
            let mut v = vec![0u64; d];
            for _ in 0..n {
                flat.pow(&x, *e, &mut xe, &mut tmp);
                flat.mul(c.coeffs(), &xe, &mut v, &mut tmp);
                h[flat.pack(&v)] += 1;
                flat.increment(&mut x);
            }
            Ok(h)
        })
        .collect::<Result<_>>()?;
    let add = |u: usize, v: usize| -> usize {
        let (mut u, mut v) = (u as u64, v as u64);
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..d {
            out += ((u % flat.p + v % flat.p) % flat.p) * scale;
            u /= flat.p;
            v /= flat.p;
            scale *= flat.p;
        }
        out as usize
    };
    let mut acc = hists[0].clone();
    for h in &hists[1..] {
        let mut next = vec![0u64; n];
        for (u, &cu) in acc.iter().enumerate() {
            if cu == 0 {
                continue;
            }
            for (v, &cv) in h.iter().enumerate() {
                if cv != 0 {
                    next[add(u, v)] += cu * cv;
                }
            }
        }
        acc = next;
    }
    Ok(BigInt::from(acc[field.pack(rhs) as usize]))
}

/// Rebuilds `L` from `S_t = N_t - (q^t + 1)`, `t = 1..g`, with every `N_t`
/// counted by enumeration.
pub fn lpoly_from_counts(curve: &CurveParams, budget: &OracleBudget) -> Result<LPoly> {
    let q = curve.q();
    if curve.genus == 0 {
        return Ok(LPoly::trivial(q));
    }
    let s = (1..=curve.genus)
        .map(|t| {
            let n = count_points_naive(curve, t, budget)?;
            Ok(n - BigInt::from(q).pow(t) - 1)
        })
        .collect::<Result<Vec<_>>>()?;
    LPoly::from_power_sums(q, curve.genus, &s)
}
