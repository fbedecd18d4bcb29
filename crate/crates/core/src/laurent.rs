//! Laurent polynomials over a coefficient semiring, localization at
//! monomials, and the section spaces of the standard charts of ℙⁿ.
//!
//! All chart section spaces embed in one Laurent ring, so restriction
//! between charts is the identity on representations and a sheaf is encoded
//! by membership predicates ([`SectionSpace`], [`UnitSpace`]).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::semiring::Semiring;
use crate::{Error, Result};

/// Integer exponents of `x₀, …, xₙ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(vars: usize) -> Self {
        ExponentVector(vec![0; vars])
    }

    /// `k · eᵢ`.
    pub fn axis(vars: usize, i: usize, k: i64) -> Self {
        let mut e = vec![0; vars];
        e[i] = k;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Total degree.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn negated(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Indices with a negative exponent.
    pub fn negative_support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] < 0).collect()
    }

    /// Indices with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A finitely supported map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug)]
pub struct LaurentPoly<S: Semiring> {
    ring: S,
    vars: usize,
    terms: BTreeMap<ExponentVector, S::Elem>,
}

impl<S: Semiring> PartialEq for LaurentPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<S: Semiring> Eq for LaurentPoly<S> {}

/// Which of the two semiring operations [`poly_arith`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

pub fn poly_arith<S: Semiring>(
    a: &LaurentPoly<S>,
    b: &LaurentPoly<S>,
    op: PolyOp,
) -> Result<LaurentPoly<S>> {
    match op {
        PolyOp::Add => a.add(b),
        PolyOp::Mul => a.mul(b),
    }
}

impl<S: Semiring> LaurentPoly<S> {
    pub fn zero(ring: S, vars: usize) -> Self {
        LaurentPoly {
            ring,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: S, vars: usize, c: S::Elem) -> Self {
        Self::monomial(ring, c, ExponentVector::zeros(vars))
    }

    pub fn one(ring: S, vars: usize) -> Self {
        let one = ring.one();
        Self::constant(ring, vars, one)
    }

    pub fn monomial(ring: S, coef: S::Elem, exp: ExponentVector) -> Self {
        let vars = exp.len();
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&coef) {
            terms.insert(exp, coef);
        }
        LaurentPoly { ring, vars, terms }
    }

    /// Sums the given terms; coefficients of repeated exponents are added.
    pub fn from_terms(
        ring: S,
        vars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, S::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(ring, vars);
        for (exp, coef) in terms {
            if exp.len() != vars {
                return Err(Error::Incompatible(format!(
                    "exponent {exp:?} has {} entries, expected {vars}",
                    exp.len()
                )));
            }
            p.add_term(exp, coef);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: ExponentVector, coef: S::Elem) {
        let sum = match self.terms.get(&exp) {
            Some(old) => self.ring.add(old, &coef),
            None => coef,
        };
        if self.ring.is_zero(&sum) {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, sum);
        }
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &S::Elem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> S::Elem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&ExponentVector, &S::Elem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || !self.ring.same_as(&other.ring) {
            return Err(Error::Incompatible(format!(
                "Laurent polynomials in {} and {} variables over {} and {}",
                self.vars,
                other.vars,
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = Self::zero(self.ring.clone(), self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.plus(e2), self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.vars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), self.ring.mul(c, a));
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> Self {
        LaurentPoly {
            ring: self.ring.clone(),
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(shift), c.clone()))
                .collect(),
        }
    }

    /// Image of `p` in the localization at the monomial `x^g`, i.e. `p / x^g`.
    pub fn localize_monomial(&self, g: &ExponentVector) -> Result<Self> {
        if g.len() != self.vars {
            return Err(Error::Incompatible("monomial has the wrong number of variables".into()));
        }
        if g.entries().iter().any(|&e| e < 0) {
            return Err(Error::Invalid(format!("{g} is not a monomial of the polynomial ring")));
        }
        Ok(self.shift(&g.negated()))
    }

    /// Every term has total degree `degree`.
    pub fn is_homogeneous(&self, degree: i64) -> bool {
        self.terms.keys().all(|e| e.degree() == degree)
    }

    /// Multiplicative inverse of a monomial with invertible coefficient.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        let inv = self.ring.inverse(c)?;
        Some(Self::monomial(self.ring.clone(), inv, e.negated()))
    }
}

impl<S: Semiring> fmt::Display for LaurentPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}·{}", self.ring.format_elem(c), e)?;
        }
        Ok(())
    }
}

fn validate_tuple(vars: usize, tuple: &[usize]) -> Result<()> {
    if tuple.is_empty() {
        return Err(Error::Invalid("chart tuple is empty".into()));
    }
    if tuple.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!("chart tuple {tuple:?} is not strictly increasing")));
    }
    if *tuple.last().unwrap() >= vars {
        return Err(Error::Invalid(format!("chart tuple {tuple:?} exceeds x_{}", vars - 1)));
    }
    Ok(())
}

/// Degree-`m` sections of `O(m)` on a chart intersection `U_{i₀…i_k}` of ℙⁿ:
/// sums of monomials of total degree `m` whose exponents are nonnegative
/// outside the tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSpace {
    vars: usize,
    tuple: Vec<usize>,
    degree: i64,
}

impl SectionSpace {
    pub fn new(n: usize, tuple: &[usize], degree: i64) -> Result<Self> {
        validate_tuple(n + 1, tuple)?;
        Ok(SectionSpace {
            vars: n + 1,
            tuple: tuple.to_vec(),
            degree,
        })
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn contains_exponent(&self, e: &ExponentVector) -> bool {
        e.len() == self.vars
            && e.degree() == self.degree
            && (0..self.vars).all(|j| e.get(j) >= 0 || self.tuple.contains(&j))
    }

    pub fn contains<S: Semiring>(&self, p: &LaurentPoly<S>) -> bool {
        p.vars() == self.vars && p.terms().all(|(e, _)| self.contains_exponent(e))
    }

    /// Allowed exponents with every entry in `[-bound, bound]`.
    pub fn monomials(&self, bound: i64) -> Vec<ExponentVector> {
        let ranges: Vec<(i64, i64)> = (0..self.vars)
            .map(|j| {
                let lo = if self.tuple.contains(&j) { -bound } else { 0 };
                (lo, bound)
            })
            .collect();
        bounded_exponents(&ranges, self.degree)
    }

    /// Identity embedding into the sections of a bigger intersection.
    pub fn restrict_to<S: Semiring>(
        &self,
        p: &LaurentPoly<S>,
        target: &SectionSpace,
    ) -> Result<LaurentPoly<S>> {
        if !self.tuple.iter().all(|i| target.tuple.contains(i)) || self.degree != target.degree {
            return Err(Error::Invalid(format!(
                "cannot restrict from {:?} to {:?}",
                self.tuple, target.tuple
            )));
        }
        if !self.contains(p) {
            return Err(Error::Invalid(format!("{p} is not a section on {:?}", self.tuple)));
        }
        Ok(p.clone())
    }
}

pub fn section_space(n: usize, tuple: &[usize], m: i64) -> Result<SectionSpace> {
    SectionSpace::new(n, tuple, m)
}

/// All exponent vectors with entries in the given ranges summing to `degree`.
pub(crate) fn bounded_exponents(ranges: &[(i64, i64)], degree: i64) -> Vec<ExponentVector> {
    fn go(ranges: &[(i64, i64)], remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if cur.len() == ranges.len() {
            if remaining == 0 {
                out.push(ExponentVector::new(cur.clone()));
            }
            return;
        }
        let (lo, hi) = ranges[cur.len()];
        let rest = &ranges[cur.len() + 1..];
        let rest_lo: i64 = rest.iter().map(|r| r.0).sum();
        let rest_hi: i64 = rest.iter().map(|r| r.1).sum();
        for v in lo..=hi {
            let left = remaining - v;
            if left < rest_lo || left > rest_hi {
                continue;
            }
            cur.push(v);
            go(ranges, left, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ranges, degree, &mut Vec::new(), &mut out);
    out
}

/// A unit section `q · x^e` with `q` invertible.
#[derive(Clone, Debug)]
pub struct UnitMonomial<S: Semiring> {
    ring: S,
    coef: S::Elem,
    exp: ExponentVector,
}

impl<S: Semiring> PartialEq for UnitMonomial<S> {
    fn eq(&self, other: &Self) -> bool {
        self.coef == other.coef && self.exp == other.exp
    }
}

impl<S: Semiring> Eq for UnitMonomial<S> {}

impl<S: Semiring> UnitMonomial<S> {
    pub fn new(ring: S, coef: S::Elem, exp: ExponentVector) -> Result<Self> {
        if ring.inverse(&coef).is_none() {
            return Err(Error::NotInvertible(format!(
                "coefficient {} of {exp}",
                ring.format_elem(&coef)
            )));
        }
        Ok(UnitMonomial { ring, coef, exp })
    }

    pub fn one(ring: S, vars: usize) -> Self {
        let coef = ring.one();
        UnitMonomial {
            ring,
            coef,
            exp: ExponentVector::zeros(vars),
        }
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn coef(&self) -> &S::Elem {
        &self.coef
    }

    pub fn exp(&self) -> &ExponentVector {
        &self.exp
    }

    pub fn vars(&self) -> usize {
        self.exp.len()
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.coef) && self.exp.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        UnitMonomial {
            ring: self.ring.clone(),
            coef: self.ring.mul(&self.coef, &other.coef),
            exp: self.exp.plus(&other.exp),
        }
    }

    pub fn inverse(&self) -> Self {
        UnitMonomial {
            ring: self.ring.clone(),
            coef: self.ring.inverse(&self.coef).expect("unit coefficient"),
            exp: self.exp.negated(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        UnitMonomial {
            ring: self.ring.clone(),
            coef: self.ring.pow(&self.coef, k).expect("unit coefficient"),
            exp: self.exp.scaled(k),
        }
    }

    pub fn to_poly(&self) -> LaurentPoly<S> {
        LaurentPoly::monomial(self.ring.clone(), self.coef.clone(), self.exp.clone())
    }

    pub fn from_poly(p: &LaurentPoly<S>) -> Result<Self> {
        let (e, c) = p
            .as_monomial()
            .ok_or_else(|| Error::NotInvertible(format!("{p} is not a monomial")))?;
        Self::new(p.ring().clone(), c.clone(), e.clone())
    }
}

impl<S: Semiring> fmt::Display for UnitMonomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", self.ring.format_elem(&self.coef), self.exp)
    }
}

/// Invertible degree-0 sections on `U_{i₀…i_k}`: single monomials `q·x^e`
/// with `q` a unit, total degree 0 and `e` supported on the tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSpace {
    vars: usize,
    tuple: Vec<usize>,
}

impl UnitSpace {
    pub fn new<S: Semiring>(ring: &S, n: usize, tuple: &[usize]) -> Result<Self> {
        if !ring.is_semifield() {
            return Err(Error::Precondition(format!("{} is not a semifield", ring.name())));
        }
        validate_tuple(n + 1, tuple)?;
        Ok(UnitSpace {
            vars: n + 1,
            tuple: tuple.to_vec(),
        })
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn contains_exponent(&self, e: &ExponentVector) -> bool {
        e.len() == self.vars
            && e.degree() == 0
            && e.support().iter().all(|j| self.tuple.contains(j))
    }

    pub fn contains<S: Semiring>(&self, u: &UnitMonomial<S>) -> bool {
        self.contains_exponent(u.exp())
    }

    pub fn contains_poly<S: Semiring>(&self, p: &LaurentPoly<S>) -> bool {
        match p.as_monomial() {
            Some((e, c)) => p.ring().inverse(c).is_some() && self.contains_exponent(e),
            None => false,
        }
    }

    /// Allowed exponents with every entry in `[-bound, bound]`.
    pub fn exponents(&self, bound: i64) -> Vec<ExponentVector> {
        let ranges: Vec<(i64, i64)> = (0..self.vars)
            .map(|j| if self.tuple.contains(&j) { (-bound, bound) } else { (0, 0) })
            .collect();
        bounded_exponents(&ranges, 0)
    }
}

pub fn unit_sections<S: Semiring>(ring: &S, n: usize, tuple: &[usize]) -> Result<UnitSpace> {
    UnitSpace::new(ring, n, tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Naturals, QMax};

    fn ev(e: &[i64]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    fn q(n: i64) -> crate::semiring::MaxPlus<num_rational::BigRational> {
        QMax::int(n)
    }

    #[test]
    fn idempotent_absorption() {
        let t = LaurentPoly::monomial(QMax, q(0), ev(&[1]));
        assert_eq!(poly_arith(&t, &t, PolyOp::Add).unwrap(), t);
    }

    #[test]
    fn exponent_cancellation() {
        let a = LaurentPoly::monomial(QMax, q(2), ev(&[1]));
        let b = LaurentPoly::monomial(QMax, q(3), ev(&[-1]));
        let c = poly_arith(&a, &b, PolyOp::Mul).unwrap();
        assert_eq!(c, LaurentPoly::constant(QMax, 1, q(5)));
    }

    #[test]
    fn boolean_square_of_binomial() {
        let p = LaurentPoly::from_terms(Boolean, 1, [(ev(&[1]), true), (ev(&[0]), true)]).unwrap();
        let sq = p.mul(&p).unwrap();
        // term-by-term oracle: every pair of exponents contributes
        let mut expected = LaurentPoly::zero(Boolean, 1);
        for (e1, _) in p.terms() {
            for (e2, _) in p.terms() {
                expected = expected.add(&LaurentPoly::monomial(Boolean, true, e1.plus(e2))).unwrap();
            }
        }
        assert_eq!(sq, expected);
        let want = LaurentPoly::from_terms(
            Boolean,
            1,
            [(ev(&[2]), true), (ev(&[1]), true), (ev(&[0]), true)],
        )
        .unwrap();
        assert_eq!(sq, want);
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let p = LaurentPoly::monomial(QMax, QMax.zero(), ev(&[3]));
        assert!(p.is_zero());
        let p = LaurentPoly::from_terms(Naturals, 1, [(ev(&[1]), Naturals::elem(0))]).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn ambient_mismatch() {
        let a = LaurentPoly::one(QMax, 2);
        let b = LaurentPoly::one(QMax, 3);
        assert!(a.add(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn localization_at_monomials() {
        let p = LaurentPoly::monomial(Boolean, true, ev(&[2, 1]));
        assert_eq!(
            p.localize_monomial(&ev(&[1, 0])).unwrap(),
            LaurentPoly::monomial(Boolean, true, ev(&[1, 1]))
        );
        let one = LaurentPoly::one(Boolean, 2);
        assert_eq!(
            one.localize_monomial(&ev(&[1, 1])).unwrap(),
            LaurentPoly::monomial(Boolean, true, ev(&[-1, -1]))
        );
        let p = LaurentPoly::from_terms(Boolean, 2, [(ev(&[1, 0]), true), (ev(&[0, 1]), true)]).unwrap();
        let want =
            LaurentPoly::from_terms(Boolean, 2, [(ev(&[0, 0]), true), (ev(&[-1, 1]), true)]).unwrap();
        assert_eq!(p.localize_monomial(&ev(&[1, 0])).unwrap(), want);
        assert!(p.localize_monomial(&ev(&[-1, 0])).is_err());
    }

    #[test]
    fn section_spaces_on_charts() {
        // n = 1, U_01: all T^k with T = x1/x0
        let s = section_space(1, &[0, 1], 0).unwrap();
        for k in -3..=3 {
            assert!(s.contains_exponent(&ev(&[-k, k])));
        }
        assert_eq!(s.monomials(3).len(), 7);
        // n = 2, U_0: polynomials in x1/x0, x2/x0
        let s = section_space(2, &[0], 0).unwrap();
        assert!(s.contains_exponent(&ev(&[-2, 1, 1])));
        assert!(!s.contains_exponent(&ev(&[1, -1, 0])));
        assert!(s.monomials(4).iter().all(|e| e.get(1) >= 0 && e.get(2) >= 0));
        // n = 2, U_012: any degree-0 exponent
        let s = section_space(2, &[0, 1, 2], 0).unwrap();
        assert!(s.contains_exponent(&ev(&[3, -5, 2])));
        assert!(!s.contains_exponent(&ev(&[3, -5, 1])));
        assert!(section_space(2, &[], 0).is_err());
        assert!(section_space(2, &[1, 0], 0).is_err());
    }

    #[test]
    fn unit_section_spaces() {
        let u = unit_sections(&QMax, 1, &[0, 1]).unwrap();
        assert!(u.contains_exponent(&ev(&[2, -2])));
        let u = unit_sections(&QMax, 2, &[0]).unwrap();
        assert_eq!(u.exponents(5), [ev(&[0, 0, 0])]);
        let u = unit_sections(&QMax, 2, &[0, 1, 2]).unwrap();
        assert!(u.contains_exponent(&ev(&[1, 1, -2])));
        assert!(unit_sections(&Naturals, 1, &[0]).is_err());
        let sum = LaurentPoly::from_terms(QMax, 2, [(ev(&[0, 0]), q(0)), (ev(&[1, -1]), q(0))]).unwrap();
        assert!(!unit_sections(&QMax, 1, &[0, 1]).unwrap().contains_poly(&sum));
    }

    #[test]
    fn restriction_is_an_embedding() {
        let small = section_space(2, &[0], 0).unwrap();
        let big = section_space(2, &[0, 2], 0).unwrap();
        let p = LaurentPoly::monomial(QMax, q(1), ev(&[-1, 1, 0]));
        assert_eq!(small.restrict_to(&p, &big).unwrap(), p);
        assert!(big.restrict_to(&p, &small).is_err());
    }

    #[test]
    fn unit_monomials() {
        let u = UnitMonomial::new(QMax, q(3), ev(&[1, -1])).unwrap();
        assert!(u.mul(&u.inverse()).is_one());
        assert_eq!(u.pow(2).exp(), &ev(&[2, -2]));
        assert!(UnitMonomial::new(QMax, QMax.zero(), ev(&[0, 0])).is_err());
    }
}
