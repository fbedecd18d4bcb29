//! Commutative semirings, their canonical order, and structural predicates.
//!
//! A semiring is described by a context value implementing [`Semiring`];
//! elements are plain values of the associated `Elem` type. Built-in
//! semirings are zero-sized ([`Boolean`], [`QMax`], [`ZMax`], [`Naturals`]),
//! finite ones are explicit [`SemiringTable`]s.

mod builtin;
mod dynamic;
mod table;

use alloc::string::String;
use core::fmt::Debug;

pub use self::builtin::{Boolean, MaxPlus, Naturals, QMax, ZMax};
pub use self::dynamic::{AnySemiring, Element};
pub use self::table::{SemiringTable, Units};

/// A commutative semiring with exact, decidable equality.
pub trait Semiring: Clone + Debug {
    type Elem: Clone + Eq + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse, if `a` is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `x + x = x` for every `x`.
    fn is_idempotent(&self) -> bool;

    /// Idempotent, and any two elements are comparable in the canonical order.
    fn is_totally_ordered_idempotent(&self) -> bool;

    /// Every nonzero element is invertible.
    fn is_semifield(&self) -> bool;

    /// Short name used in reports.
    fn name(&self) -> String;

    /// Renders an element as a literal that [`Semiring::parse_elem`] reads back.
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;

    /// Whether `other` describes the same semiring (relevant for tables).
    fn same_as(&self, _other: &Self) -> bool {
        true
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Canonical order: `a ≤ b` iff `a + b = b`.
    fn canonical_leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.add(a, b) == *b
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    /// `a^k` for an integer `k`; negative powers need `a` to be a unit.
    fn pow(&self, a: &Self::Elem, k: i64) -> Option<Self::Elem> {
        let base = if k < 0 { self.inverse(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Some(acc)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inverse(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_leq_builtin_examples() {
        let q = QMax;
        assert!(q.canonical_leq(&QMax::int(2), &QMax::int(5)));
        assert!(!q.canonical_leq(&QMax::int(5), &QMax::int(2)));
        assert!(Boolean.canonical_leq(&false, &true));
        assert!(!Boolean.canonical_leq(&true, &false));
        let one = Naturals::elem(1);
        assert!(!Naturals.canonical_leq(&one, &one));
    }

    #[test]
    fn structural_predicates_of_builtins() {
        assert!(Boolean.is_idempotent());
        assert!(!Naturals.is_idempotent());
        assert!(QMax.is_totally_ordered_idempotent());
        assert!(ZMax.is_totally_ordered_idempotent());
        assert!(Boolean.is_totally_ordered_idempotent());
        assert!(!Naturals.is_totally_ordered_idempotent());
        assert!(QMax.is_semifield() && Boolean.is_semifield());
        assert!(!Naturals.is_semifield());
    }

    #[test]
    fn integer_powers() {
        let q = QMax;
        assert_eq!(q.pow(&QMax::int(3), -2), Some(QMax::int(-6)));
        assert_eq!(q.pow(&q.zero(), -1), None);
        assert_eq!(q.pow(&q.zero(), 0), Some(q.one()));
    }
}
