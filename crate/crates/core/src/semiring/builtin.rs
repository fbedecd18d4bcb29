use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Neg};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Semiring;

/// An element of a max-plus semifield: a finite value or the bottom `-∞`.
///
/// The derived order puts `NegInf` below every finite value, which is the
/// canonical order of the tropical semifield.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaxPlus<T> {
    NegInf,
    Finite(T),
}

impl<T> MaxPlus<T> {
    pub fn is_neg_inf(&self) -> bool {
        matches!(self, MaxPlus::NegInf)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            MaxPlus::NegInf => None,
            MaxPlus::Finite(x) => Some(x),
        }
    }
}

impl<T: Clone + Ord + Add<Output = T> + Neg<Output = T>> MaxPlus<T> {
    fn tropical_add(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    fn tropical_mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a.clone() + b.clone()),
            _ => MaxPlus::NegInf,
        }
    }

    fn tropical_inverse(&self) -> Option<Self> {
        self.finite().map(|a| MaxPlus::Finite(-a.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for MaxPlus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxPlus::NegInf => f.write_str("-inf"),
            MaxPlus::Finite(x) => x.fmt(f),
        }
    }
}

fn parse_max_plus<T: FromStr>(s: &str) -> Option<MaxPlus<T>> {
    let s = s.trim();
    if s == "-inf" {
        Some(MaxPlus::NegInf)
    } else {
        s.parse().ok().map(MaxPlus::Finite)
    }
}

/// The two-element idempotent semifield 𝔹 = {0, 1}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Boolean;

impl Semiring for Boolean {
    type Elem = bool;

    fn zero(&self) -> bool {
        false
    }
    fn one(&self) -> bool {
        true
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn inverse(&self, a: &bool) -> Option<bool> {
        a.then_some(true)
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn is_totally_ordered_idempotent(&self) -> bool {
        true
    }
    fn is_semifield(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        "boolean".into()
    }
    fn format_elem(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.into()
    }
    fn parse_elem(&self, s: &str) -> Option<bool> {
        match s.trim() {
            "0" | "false" => Some(false),
            "1" | "true" => Some(true),
            _ => None,
        }
    }
}

/// The tropical semifield ℚmax: exact rationals with `max` and `+`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QMax;

impl QMax {
    pub fn int(n: i64) -> MaxPlus<BigRational> {
        MaxPlus::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> MaxPlus<BigRational> {
        MaxPlus::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Semiring for QMax {
    type Elem = MaxPlus<BigRational>;

    fn zero(&self) -> Self::Elem {
        MaxPlus::NegInf
    }
    fn one(&self) -> Self::Elem {
        MaxPlus::Finite(BigRational::zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.tropical_add(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.tropical_mul(b)
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.tropical_inverse()
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn is_totally_ordered_idempotent(&self) -> bool {
        true
    }
    fn is_semifield(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        "qmax".into()
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<Self::Elem> {
        parse_max_plus(s)
    }
}

/// The tropical semifield ℤmax: integers with `max` and `+`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZMax;

impl ZMax {
    pub fn int(n: i64) -> MaxPlus<BigInt> {
        MaxPlus::Finite(BigInt::from(n))
    }
}

impl Semiring for ZMax {
    type Elem = MaxPlus<BigInt>;

    fn zero(&self) -> Self::Elem {
        MaxPlus::NegInf
    }
    fn one(&self) -> Self::Elem {
        MaxPlus::Finite(BigInt::zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.tropical_add(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.tropical_mul(b)
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        a.tropical_inverse()
    }
    fn is_idempotent(&self) -> bool {
        true
    }
    fn is_totally_ordered_idempotent(&self) -> bool {
        true
    }
    fn is_semifield(&self) -> bool {
        true
    }
    fn name(&self) -> String {
        "zmax".into()
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Option<Self::Elem> {
        parse_max_plus(s)
    }
}

/// The natural numbers with ordinary `+` and `·`. Not idempotent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Naturals;

impl Naturals {
    pub fn elem(n: u64) -> BigUint {
        BigUint::from(n)
    }
}

impl Semiring for Naturals {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }
    fn inverse(&self, a: &BigUint) -> Option<BigUint> {
        a.is_one().then(BigUint::one)
    }
    fn is_idempotent(&self) -> bool {
        false
    }
    fn is_totally_ordered_idempotent(&self) -> bool {
        false
    }
    fn is_semifield(&self) -> bool {
        false
    }
    fn name(&self) -> String {
        "nat".into()
    }
    fn format_elem(&self, a: &BigUint) -> String {
        format!("{a}")
    }
    fn parse_elem(&self, s: &str) -> Option<BigUint> {
        s.trim().parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tropical_arithmetic_is_exact() {
        let q = QMax;
        let a = QMax::ratio(1, 3);
        let b = QMax::ratio(2, 3);
        assert_eq!(q.mul(&a, &b), QMax::int(1));
        assert_eq!(q.add(&a, &b), b);
        assert_eq!(q.mul(&a, &q.zero()), q.zero());
        assert_eq!(q.add(&a, &q.zero()), a);
        assert_eq!(q.inverse(&a), Some(QMax::ratio(-1, 3)));
    }

    #[test]
    fn literals_round_trip() {
        let q = QMax;
        for lit in ["-inf", "3/4", "-7", "0"] {
            let e = q.parse_elem(lit).unwrap();
            assert_eq!(q.parse_elem(&q.format_elem(&e)), Some(e));
        }
        assert_eq!(q.parse_elem("6/8"), Some(QMax::ratio(3, 4)));
        assert_eq!(q.parse_elem("x"), None);
        assert_eq!(Boolean.parse_elem("1"), Some(true));
        assert_eq!(ZMax.parse_elem("-inf"), Some(MaxPlus::NegInf));
    }

    #[test]
    fn bottom_is_the_minimum() {
        assert!(MaxPlus::NegInf < QMax::int(-1000));
        assert!(QMax.canonical_leq(&MaxPlus::NegInf, &QMax::int(-1000)));
    }
}
