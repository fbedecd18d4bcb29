use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use super::{Boolean, MaxPlus, Naturals, QMax, Semiring, SemiringTable, ZMax};
use crate::{Error, Result};

/// A semiring chosen at run time, e.g. from a command-line tag.
#[derive(Clone, Debug)]
pub enum AnySemiring {
    Boolean,
    QMax,
    ZMax,
    Naturals,
    Table(Arc<SemiringTable>),
}

/// An element tagged with its parent semiring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Bool(bool),
    Q(MaxPlus<BigRational>),
    Z(MaxPlus<BigInt>),
    Nat(BigUint),
    Table(Arc<SemiringTable>, usize),
}

impl AnySemiring {
    /// Parses the tags `boolean`, `qmax`, `zmax` and `nat`.
    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "boolean" | "bool" | "b" => Ok(AnySemiring::Boolean),
            "qmax" => Ok(AnySemiring::QMax),
            "zmax" => Ok(AnySemiring::ZMax),
            "nat" | "naturals" => Ok(AnySemiring::Naturals),
            other => Err(Error::Invalid(format!("unknown semiring tag `{other}`"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            AnySemiring::Boolean => Boolean.name(),
            AnySemiring::QMax => QMax.name(),
            AnySemiring::ZMax => ZMax.name(),
            AnySemiring::Naturals => Naturals.name(),
            AnySemiring::Table(t) => t.name(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            AnySemiring::Boolean | AnySemiring::QMax | AnySemiring::ZMax => true,
            AnySemiring::Naturals => false,
            AnySemiring::Table(t) => t.is_idempotent(),
        }
    }

    pub fn is_totally_ordered_idempotent(&self) -> bool {
        match self {
            AnySemiring::Boolean | AnySemiring::QMax | AnySemiring::ZMax => true,
            AnySemiring::Naturals => false,
            AnySemiring::Table(t) => t.is_totally_ordered_idempotent(),
        }
    }

    pub fn parse(&self, literal: &str) -> Result<Element> {
        let bad = || Error::Invalid(format!("`{literal}` is not an element of {}", self.name()));
        Ok(match self {
            AnySemiring::Boolean => Element::Bool(Boolean.parse_elem(literal).ok_or_else(bad)?),
            AnySemiring::QMax => Element::Q(QMax.parse_elem(literal).ok_or_else(bad)?),
            AnySemiring::ZMax => Element::Z(ZMax.parse_elem(literal).ok_or_else(bad)?),
            AnySemiring::Naturals => Element::Nat(Naturals.parse_elem(literal).ok_or_else(bad)?),
            AnySemiring::Table(t) => Element::Table(t.clone(), t.parse_elem(literal).ok_or_else(bad)?),
        })
    }
}

fn mismatch(a: &Element, b: &Element) -> Error {
    Error::Incompatible(format!("{a:?} and {b:?} belong to different semirings"))
}

impl Element {
    pub fn try_add(&self, other: &Element) -> Result<Element> {
        Ok(match (self, other) {
            (Element::Bool(a), Element::Bool(b)) => Element::Bool(Boolean.add(a, b)),
            (Element::Q(a), Element::Q(b)) => Element::Q(QMax.add(a, b)),
            (Element::Z(a), Element::Z(b)) => Element::Z(ZMax.add(a, b)),
            (Element::Nat(a), Element::Nat(b)) => Element::Nat(Naturals.add(a, b)),
            (Element::Table(s, a), Element::Table(t, b)) if s.same_as(t) => {
                Element::Table(s.clone(), s.add(a, b))
            }
            _ => return Err(mismatch(self, other)),
        })
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        Ok(match (self, other) {
            (Element::Bool(a), Element::Bool(b)) => Element::Bool(Boolean.mul(a, b)),
            (Element::Q(a), Element::Q(b)) => Element::Q(QMax.mul(a, b)),
            (Element::Z(a), Element::Z(b)) => Element::Z(ZMax.mul(a, b)),
            (Element::Nat(a), Element::Nat(b)) => Element::Nat(Naturals.mul(a, b)),
            (Element::Table(s, a), Element::Table(t, b)) if s.same_as(t) => {
                Element::Table(s.clone(), s.mul(a, b))
            }
            _ => return Err(mismatch(self, other)),
        })
    }

    /// `self ≤ other` in the canonical order, i.e. `self + other = other`.
    pub fn canonical_leq(&self, other: &Element) -> Result<bool> {
        Ok(self.try_add(other)? == *other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tagged_canonical_order() {
        let q = AnySemiring::from_tag("qmax").unwrap();
        let a = q.parse("2").unwrap();
        let b = q.parse("5").unwrap();
        assert_eq!(a.canonical_leq(&b), Ok(true));
        assert_eq!(b.canonical_leq(&a), Ok(false));

        let n = AnySemiring::from_tag("nat").unwrap();
        let one = n.parse("1").unwrap();
        assert_eq!(one.canonical_leq(&one), Ok(false));
    }

    #[test]
    fn mismatched_parents_are_rejected() {
        let a = AnySemiring::QMax.parse("2").unwrap();
        let b = AnySemiring::ZMax.parse("2").unwrap();
        assert!(matches!(a.canonical_leq(&b), Err(Error::Incompatible(_))));

        let chain = Arc::new(SemiringTable::chain3());
        let boolean = Arc::new(SemiringTable::boolean());
        let x = Element::Table(chain, 1);
        let y = Element::Table(boolean, 1);
        assert!(x.try_add(&y).is_err());
        assert!(AnySemiring::from_tag("reals").is_err());
    }
}
