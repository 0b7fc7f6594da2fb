//! Text grammar shared by the CLI, config files and the browser demo.
//!
//! Field sizes are `p` or `p^e`. Elements are a decimal residue (`-3`, `44`),
//! a power of the field generator (`g^14`), or a coefficient list
//! (`[c0,c1,...]`, lowest degree first).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf::{FieldElem, FieldSpec};
use crate::numth::{is_prime_u64, odd_prime_power};

/// An element description not yet tied to a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemSpec {
    Residue(i64),
    GenPow(u64),
    Coeffs(Vec<i64>),
}

impl ElemSpec {
    pub fn resolve(&self, field: &FieldSpec) -> Result<FieldElem> {
        match self {
            ElemSpec::Residue(v) => Ok(field.from_i64(*v)),
            ElemSpec::GenPow(k) => Ok(field.gen_pow(*k)),
            ElemSpec::Coeffs(c) => field.from_coeffs(c),
        }
    }
}

impl FromStr for ElemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse element '{s}'"));
        if let Some(k) = s.strip_prefix("g^") {
            return k.trim().parse().map(ElemSpec::GenPow).map_err(|_| bad());
        }
        if s == "g" {
            return Ok(ElemSpec::GenPow(1));
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim())
                .filter(|c| !c.is_empty())
                .map(|c| c.parse::<i64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(ElemSpec::Coeffs(coeffs));
        }
        s.parse().map(ElemSpec::Residue).map_err(|_| bad())
    }
}

impl fmt::Display for ElemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemSpec::Residue(v) => write!(f, "{v}"),
            ElemSpec::GenPow(k) => write!(f, "g^{k}"),
            ElemSpec::Coeffs(c) => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// Parses `p` or `p^e` into `(p, e)` with `p` an odd prime.
pub fn parse_field_order(s: &str) -> Result<(u64, usize)> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse field size '{s}'"));
    let (p, e) = match s.split_once('^') {
        Some((p, e)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            e.trim().parse::<usize>().map_err(|_| bad())?,
        ),
        None => {
            let q: u64 = s.parse().map_err(|_| bad())?;
            if is_prime_u64(q) {
                (q, 1)
            } else {
                odd_prime_power(q).ok_or(Error::NotPrime(q))?
            }
        }
    };
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(bad());
    }
    Ok((p, e))
}

/// Parses `N` or `A..B` (inclusive) into a list of positive integers.
pub fn parse_t_range(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse t or range '{s}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<u64>().map_err(|_| bad())?,
            b.trim_start_matches('=').trim().parse::<u64>().map_err(|_| bad())?,
        ),
        None => {
            let t = s.parse::<u64>().map_err(|_| bad())?;
            (t, t)
        }
    };
    if lo == 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_grammar() {
        assert_eq!("44".parse::<ElemSpec>().unwrap(), ElemSpec::Residue(44));
        assert_eq!("-3".parse::<ElemSpec>().unwrap(), ElemSpec::Residue(-3));
        assert_eq!("g^14".parse::<ElemSpec>().unwrap(), ElemSpec::GenPow(14));
        assert_eq!("[1, 0,2]".parse::<ElemSpec>().unwrap(), ElemSpec::Coeffs(vec![1, 0, 2]));
        assert!("x^2".parse::<ElemSpec>().is_err());
        assert!("[1,a]".parse::<ElemSpec>().is_err());
        for s in ["44", "g^14", "[1,0,2]"] {
            assert_eq!(s.parse::<ElemSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn resolve_in_fields() {
        let f = FieldSpec::prime(53).unwrap();
        assert_eq!(ElemSpec::Residue(-9).resolve(&f).unwrap(), f.from_u64(44));
        assert_eq!(ElemSpec::GenPow(1).resolve(&f).unwrap(), f.from_u64(2));
        let f25 = FieldSpec::new(5, 2, None).unwrap();
        assert_eq!(ElemSpec::GenPow(1).resolve(&f25).unwrap(), *f25.gen());
        assert!(ElemSpec::Coeffs(vec![1, 2, 3]).resolve(&f25).is_err());
    }

    #[test]
    fn field_orders_and_ranges() {
        assert_eq!(parse_field_order("53").unwrap(), (53, 1));
        assert_eq!(parse_field_order("5^2").unwrap(), (5, 2));
        assert_eq!(parse_field_order("25").unwrap(), (5, 2));
        assert!(matches!(parse_field_order("2"), Err(Error::NotPrime(2))));
        assert!(matches!(parse_field_order("12"), Err(Error::NotPrime(12))));
        assert_eq!(parse_t_range("1..13").unwrap().len(), 13);
        assert_eq!(parse_t_range("5").unwrap(), vec![5]);
        assert!(parse_t_range("0").is_err());
        assert!(parse_t_range("4..2").is_err());
    }
}
