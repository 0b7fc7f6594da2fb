//! Class-number and trace averages over the family of all curves
//! `y^l = x^2 + a x + b` with `a, b` in `F_q` and `a^2 - 4b != 0`.
//!
//! Every curve's L-polynomial depends only on its class `(n, kappa_square)`,
//! so each family needs at most `2l` L-polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};

use crate::cyclo::{slot_sums, CycInt};
use crate::error::{Error, Result};
use crate::frobenius::{check_ell, FrobeniusData};
use crate::gf::FieldSpec;
use crate::lfunc::{a1ell_qr, LPoly};
use crate::numth::multiplicative_order;
use crate::parse::ElemSpec;

/// Subfamily selector. Squareness of `a^2 - 4b` is taken in `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Split {
    All,
    Square,
    NonSquare,
}

impl Split {
    fn admits(self, square: bool) -> bool {
        match self {
            Split::All => true,
            Split::Square => square,
            Split::NonSquare => !square,
        }
    }
}

impl FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Split::All),
            "square" | "sq" => Ok(Split::Square),
            "non-square" | "nonsquare" | "non-sq" => Ok(Split::NonSquare),
            _ => Err(Error::InvalidInput(format!("unknown split '{s}'"))),
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Split::All => "all",
            Split::Square => "square",
            Split::NonSquare => "non-square",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub n: u64,
    /// Squareness in `F_{q^m}`.
    pub kappa_square: bool,
    pub lpoly: LPoly,
    pub multiplicity: u64,
}

#[derive(Debug, Clone)]
pub struct AverageReport {
    pub ell: u64,
    pub q: u64,
    pub split: Split,
    pub family_size: u64,
    pub class_table: Vec<ClassRow>,
    pub average: BigRational,
}

impl AverageReport {
    /// Class numbers of the table rows, in table order.
    pub fn class_numbers(&self) -> Vec<BigInt> {
        self.class_table.iter().map(|r| r.lpoly.class_number.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .class_table
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "kappa_square": r.kappa_square,
                    "class_number": r.lpoly.class_number.to_string(),
                    "multiplicity": r.multiplicity,
                })
            })
            .collect();
        json!({
            "ell": self.ell,
            "q": self.q,
            "split": self.split.to_string(),
            "family_size": self.family_size,
            "class_table": rows,
            "average": rational_json(&self.average),
        })
    }
}

pub fn rational_json(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

/// Renders an integer when the denominator is 1, otherwise `num/den`.
pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Per-class tally of a family, shared by the averages below.
struct Tally {
    /// `(n, square in F_{q^m}, square in F_q) -> multiplicity`
    classes: BTreeMap<(u64, bool, bool), u64>,
}

fn tally(data: &FrobeniusData) -> Result<Tally> {
    let f = data.base();
    let mut classes = BTreeMap::new();
    let four = f.from_u64(4);
    for a in f.elements() {
        let a2 = f.square(&a);
        for b in f.elements() {
            let kappa = f.sub(&a2, &f.mul(&four, &b));
            if kappa.is_zero() {
                continue;
            }
            let (n, square) = data.class_of(&kappa)?;
            *classes.entry((n, square, f.is_square(&kappa)?)).or_insert(0) += 1;
        }
    }
    Ok(Tally { classes })
}

fn class_lpoly(data: &FrobeniusData, n: u64, square: bool) -> Result<LPoly> {
    let g = data.genus();
    let s = (1..=g)
        .map(|t| data.trace_for_class(n, square, t).map(|a| -a))
        .collect::<Result<Vec<_>>>()?;
    LPoly::from_power_sums(data.base().order(), g, &s)
}

/// Average class number over the family by enumerating every `(a, b)`.
pub fn average_class_number(
    ell: u64,
    base: &Arc<FieldSpec>,
    split: Split,
    char_base: Option<&ElemSpec>,
) -> Result<AverageReport> {
    let data = FrobeniusData::new(base.clone(), ell, char_base)?;
    average_with(&data, split)
}

pub fn average_with(data: &FrobeniusData, split: Split) -> Result<AverageReport> {
    let tally = tally(data)?;
    let mut class_table = Vec::new();
    let mut total = BigInt::zero();
    let mut family_size = 0u64;
    for (&(n, kappa_square, base_square), &multiplicity) in &tally.classes {
        if !split.admits(base_square) {
            continue;
        }
        let lpoly = class_lpoly(data, n, kappa_square)?;
        total += &lpoly.class_number * multiplicity;
        family_size += multiplicity;
        class_table.push(ClassRow { n, kappa_square, lpoly, multiplicity });
    }
    if family_size == 0 {
        return Err(Error::InvalidInput(format!("the {split} subfamily is empty")));
    }
    let average = BigRational::new(total, BigInt::from(family_size));
    Ok(AverageReport {
        ell: data.ell(),
        q: data.base().order(),
        split,
        family_size,
        class_table,
        average,
    })
}

/// Average of `a(q^t)` over the family and its two subfamilies, for `m = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceAverages {
    pub all: BigRational,
    pub square: BigRational,
    pub non_square: BigRational,
}

pub fn average_trace(
    ell: u64,
    base: &Arc<FieldSpec>,
    t: u64,
    char_base: Option<&ElemSpec>,
) -> Result<TraceAverages> {
    let data = FrobeniusData::new(base.clone(), ell, char_base)?;
    if data.m() != 1 {
        return Err(Error::UnsupportedM { ell, m: data.m() });
    }
    let tally = tally(&data)?;
    let mut sums = [BigInt::zero(), BigInt::zero()];
    let mut counts = [0u64; 2];
    for (&(n, kappa_square, _), &mult) in &tally.classes {
        let a = data.trace_for_class(n, kappa_square, t)?;
        let idx = usize::from(kappa_square);
        sums[idx] += a * mult;
        counts[idx] += mult;
    }
    let avg = |s: &BigInt, c: u64| BigRational::new(s.clone(), BigInt::from(c.max(1)));
    Ok(TraceAverages {
        all: avg(&(&sums[0] + &sums[1]), counts[0] + counts[1]),
        square: avg(&sums[1], counts[1]),
        non_square: avg(&sums[0], counts[0]),
    })
}

/// Slot statistics of a septic Jacobi sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThmDData {
    pub sum_sq: BigInt,
    pub sum_pair: BigInt,
    pub sum_triple: BigInt,
    pub frak_a: BigInt,
}

/// The twenty index triples `(i, j, k)` in the sum `A`.
const FRAK_A_TRIPLES: [(usize, usize, usize); 20] = [
    (1, 2, 3),
    (1, 2, 5),
    (1, 3, 5),
    (1, 3, 6),
    (1, 4, 5),
    (1, 4, 6),
    (1, 4, 7),
    (1, 6, 7),
    (2, 3, 4),
    (2, 3, 6),
    (2, 4, 6),
    (2, 4, 7),
    (2, 5, 6),
    (2, 5, 7),
    (3, 4, 5),
    (3, 4, 7),
    (3, 5, 7),
    (3, 6, 7),
    (4, 5, 6),
    (5, 6, 7),
];

impl ThmDData {
    /// From a septic `J` in its definitional form.
    pub fn from_jacobi(j: &CycInt) -> Result<Self> {
        if j.ell() != 7 {
            return Err(Error::UnsupportedEll(j.ell() as u64));
        }
        let s = slot_sums(j);
        let frak_a = FRAK_A_TRIPLES
            .iter()
            .map(|&(i, k, l)| j.slot(i) * j.slot(k) * j.slot(l))
            .sum();
        Ok(ThmDData { sum_sq: s.sum_sq, sum_pair: s.sum_pair, sum_triple: s.sum_triple, frak_a })
    }
}

/// Closed-form averages for `l = 5, 7`.
pub fn closed_form_average(ell: u64, base: &Arc<FieldSpec>, split: Split) -> Result<BigRational> {
    if ell != 5 && ell != 7 {
        return Err(Error::UnsupportedEll(ell));
    }
    let q = base.order();
    check_ell(ell, q)?;
    let m = multiplicative_order(q % ell, ell).expect("ell does not divide q");
    let qb = BigInt::from(q);
    let q1: BigInt = &qb + 1u32;
    let int = |v: BigInt| BigRational::from_integer(v);
    if ell == 5 {
        // Both subfamilies share the family average.
        return Ok(int(if m == 4 { qb.clone().pow(2u32) + 1u32 } else { q1.clone().pow(2u32) }));
    }
    match (m, split) {
        (1 | 2, Split::All) | (2, _) => Ok(int(q1.clone().pow(3u32))),
        (3 | 6, Split::All) | (6, _) => Ok(int(qb.pow(3u32) + 1)),
        (1, _) => {
            let data = FrobeniusData::new(base.clone(), 7, None)?;
            let j = data.jacobi()?.expect("m = 1 enumerates J");
            let d = ThmDData::from_jacobi(&j)?;
            let x: BigInt = BigInt::from(7) * (BigInt::from(2) * &d.sum_triple - &d.frak_a);
            let q2 = qb.clone().pow(2u32);
            let q3 = qb.clone().pow(3u32);
            Ok(int(if split == Split::Square {
                q3 + BigInt::from(3) * q2 + 2 + x
            } else {
                q3 + BigInt::from(3) * q2 + BigInt::from(6) * &qb - x
            }))
        }
        (3, _) => {
            let ext = base.extension(3, crate::gf::TablePolicy::Auto)?;
            let a7 = a1ell_qr(&ext, 7)?;
            let third = BigRational::new(BigInt::from(7) * a7 + 1, BigInt::from(3));
            let base_val = int(qb.pow(3u32) + 1);
            // h = q^3 + 1 + S_3/3 with S_3 = F_{1,7} = 7 a_7 + 1 on the square class.
            Ok(if split == Split::Square { base_val + third } else { base_val - third })
        }
        _ => unreachable!("orders of q mod 7 divide 6"),
    }
}
