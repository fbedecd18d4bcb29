use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::Semiring;
use crate::{Error, Result};

/// A finite commutative semiring given by explicit operation tables.
///
/// Elements are the indices `0..size`. All axioms are checked exhaustively
/// by [`SemiringTable::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringTable {
    size: usize,
    zero: usize,
    one: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    label: String,
}

/// The multiplicative group of a finite semiring with its inverse map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Units {
    pub elements: Vec<usize>,
    pub inverse: BTreeMap<usize, usize>,
}

impl SemiringTable {
    pub fn new(
        size: usize,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let table = SemiringTable {
            size,
            zero,
            one,
            add,
            mul,
            label: format!("table{size}"),
        };
        table.validate()?;
        Ok(table)
    }

    /// Builds a table from closures over `0..size`.
    pub fn from_fn(
        size: usize,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let add = (0..size).map(|a| (0..size).map(|b| add(a, b)).collect()).collect();
        let mul = (0..size).map(|a| (0..size).map(|b| mul(a, b)).collect()).collect();
        Self::new(size, zero, one, add, mul)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// 𝔹 as a table: 0 = false, 1 = true.
    pub fn boolean() -> Self {
        Self::from_fn(2, 0, 1, |a, b| a | b, |a, b| a & b)
            .expect("boolean table is a semiring")
            .with_label("boolean")
    }

    /// The chain 0 < a < 1 (indices 0, 1, 2) with `max` and `min`.
    pub fn chain3() -> Self {
        Self::from_fn(3, 0, 2, usize::max, usize::min)
            .expect("three-element chain is a semiring")
            .with_label("chain3")
    }

    /// 𝔹 × 𝔹 with componentwise operations; index = 2·first + second.
    pub fn boolean_squared() -> Self {
        Self::from_fn(4, 0, 3, |a, b| a | b, |a, b| a & b)
            .expect("boolean square is a semiring")
            .with_label("boolean^2")
    }

    /// The ring ℤ/n viewed as a semiring.
    pub fn integers_mod(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("ℤ/{n} has 0 = 1")));
        }
        Ok(Self::from_fn(n, 0, 1, |a, b| (a + b) % n, |a, b| (a * b) % n)?
            .with_label(format!("z{n}")))
    }

    /// ℕ truncated to `{0, …, cap}`, every value above `cap` identified with `cap`.
    pub fn truncated_naturals(cap: usize) -> Result<Self> {
        if cap < 1 {
            return Err(Error::Invalid("truncation cap must be at least 1".into()));
        }
        Ok(
            Self::from_fn(cap + 1, 0, 1, |a, b| (a + b).min(cap), |a, b| (a * b).min(cap))?
                .with_label(format!("nat<={cap}")),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.size
    }

    /// The multiplicative group `{a : ∃b, ab = 1}` with inverses.
    pub fn units(&self) -> Units {
        let mut inverse = BTreeMap::new();
        for a in 0..self.size {
            if let Some(b) = (0..self.size).find(|&b| self.mul[a][b] == self.one) {
                inverse.insert(a, b);
            }
        }
        Units {
            elements: inverse.keys().copied().collect(),
            inverse,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        let ax = |msg: String| Err(Error::SemiringAxiom(msg));
        if n == 0 {
            return ax("empty carrier".into());
        }
        if self.zero >= n || self.one >= n {
            return ax("zero or one out of range".into());
        }
        if self.zero == self.one {
            return ax("0 = 1".into());
        }
        for (name, t) in [("add", &self.add), ("mul", &self.mul)] {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return ax(format!("{name} table is not {n}x{n}"));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return ax(format!("{name} table has an entry out of range"));
            }
        }
        let (add, mul) = (&self.add, &self.mul);
        for a in 0..n {
            if add[a][self.zero] != a {
                return ax(format!("{a} + 0 != {a}"));
            }
            if mul[a][self.one] != a {
                return ax(format!("{a} * 1 != {a}"));
            }
            if mul[a][self.zero] != self.zero {
                return ax(format!("{a} * 0 != 0"));
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return ax(format!("addition not commutative at ({a}, {b})"));
                }
                if mul[a][b] != mul[b][a] {
                    return ax(format!("multiplication not commutative at ({a}, {b})"));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return ax(format!("addition not associative at ({a}, {b}, {c})"));
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return ax(format!("multiplication not associative at ({a}, {b}, {c})"));
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return ax(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Semiring for SemiringTable {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }
    fn inverse(&self, a: &usize) -> Option<usize> {
        (0..self.size).find(|&b| self.mul[*a][b] == self.one)
    }
    fn is_idempotent(&self) -> bool {
        (0..self.size).all(|a| self.add[a][a] == a)
    }
    fn is_totally_ordered_idempotent(&self) -> bool {
        self.is_idempotent()
            && (0..self.size).all(|a| {
                (0..self.size).all(|b| self.canonical_leq(&a, &b) || self.canonical_leq(&b, &a))
            })
    }
    fn is_semifield(&self) -> bool {
        (0..self.size)
            .filter(|&a| a != self.zero)
            .all(|a| self.inverse(&a).is_some())
    }
    fn name(&self) -> String {
        self.label.clone()
    }
    fn format_elem(&self, a: &usize) -> String {
        format!("{a}")
    }
    fn parse_elem(&self, s: &str) -> Option<usize> {
        s.trim().parse().ok().filter(|&a| a < self.size)
    }
    fn same_as(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl<T: Semiring> Semiring for alloc::sync::Arc<T> {
    type Elem = T::Elem;

    fn zero(&self) -> T::Elem {
        (**self).zero()
    }
    fn one(&self) -> T::Elem {
        (**self).one()
    }
    fn add(&self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        (**self).add(a, b)
    }
    fn mul(&self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        (**self).mul(a, b)
    }
    fn inverse(&self, a: &T::Elem) -> Option<T::Elem> {
        (**self).inverse(a)
    }
    fn is_idempotent(&self) -> bool {
        (**self).is_idempotent()
    }
    fn is_totally_ordered_idempotent(&self) -> bool {
        (**self).is_totally_ordered_idempotent()
    }
    fn is_semifield(&self) -> bool {
        (**self).is_semifield()
    }
    fn name(&self) -> String {
        (**self).name()
    }
    fn format_elem(&self, a: &T::Elem) -> String {
        (**self).format_elem(a)
    }
    fn parse_elem(&self, s: &str) -> Option<T::Elem> {
        (**self).parse_elem(s)
    }
    fn same_as(&self, other: &Self) -> bool {
        alloc::sync::Arc::ptr_eq(self, other) || (**self).same_as(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn named_tables_satisfy_axioms() {
        assert_eq!(SemiringTable::boolean().size(), 2);
        assert_eq!(SemiringTable::chain3().size(), 3);
        assert_eq!(SemiringTable::boolean_squared().size(), 4);
        assert!(SemiringTable::integers_mod(5).is_ok());
        assert!(SemiringTable::truncated_naturals(3).is_ok());
    }

    #[test]
    fn idempotency_and_total_order() {
        let chain = SemiringTable::chain3();
        assert!(chain.is_idempotent());
        assert!(chain.is_totally_ordered_idempotent());
        let sq = SemiringTable::boolean_squared();
        assert!(sq.is_idempotent());
        // (1,0) and (0,1) are incomparable
        assert!(!sq.is_totally_ordered_idempotent());
        assert!(!SemiringTable::integers_mod(2).unwrap().is_idempotent());
    }

    #[test]
    fn unit_groups() {
        assert_eq!(SemiringTable::boolean().units().elements, [1]);
        assert_eq!(SemiringTable::chain3().units().elements, [2]);
        let z2 = SemiringTable::integers_mod(2).unwrap();
        assert_eq!(z2.units().elements, [1]);
        let z5 = SemiringTable::integers_mod(5).unwrap().units();
        assert_eq!(z5.elements, [1, 2, 3, 4]);
        assert_eq!(z5.inverse[&2], 3);
    }

    #[test]
    fn rejects_bad_tables() {
        // subtraction-like addition is not commutative
        let bad = SemiringTable::from_fn(2, 0, 1, |a, _| a, |a, b| a & b);
        assert!(matches!(bad, Err(Error::SemiringAxiom(_))));
        let bad = SemiringTable::new(2, 0, 0, vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 1]]);
        assert!(bad.is_err());
        // not distributive: add = max, mul = max
        let bad = SemiringTable::from_fn(3, 0, 0, usize::max, usize::max);
        assert!(bad.is_err());
        let bad = SemiringTable::from_fn(3, 0, 2, usize::max, |a, b| (a + b) % 3);
        assert!(bad.is_err());
    }
}
