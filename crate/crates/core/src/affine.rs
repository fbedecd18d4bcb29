//! The affine side: prime ideals of finite semirings, covers of monomial
//! localizations `M[x₀, …, x_r]_g`, unit detection, and the contraction of
//! unit cocycles on unordered cochains.
//!
//! Over a totally ordered idempotent semifield `M` a family `f_i` covers
//! `Spec A` exactly when some `f_i` is a unit of `A`: in a relation
//! `g^l = Σ a_i b_i` the dominant monomial cannot cancel, so some `b_i` is a
//! monomial dividing a power of `g`. Covers are decided this way rather than
//! by search.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::cech::{face, tuples, CochainModel};
use crate::laurent::{ExponentVector, LaurentPoly, UnitMonomial};
use crate::pm_complex::PmComplex;
use crate::semiring::{Semiring, SemiringTable};
use crate::{Error, Result};

/// Largest semiring [`prime_ideals`] enumerates by default.
pub const PRIME_SEARCH_BOUND: usize = 16;

/// A prime ideal of a finite semiring, as a sorted list of elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeIdeal {
    elements: Vec<usize>,
}

impl PrimeIdeal {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}

fn member(mask: u32, a: usize) -> bool {
    mask >> a & 1 == 1
}

/// Contains 0, closed under addition, absorbing, and `1 ∉ I`.
pub fn is_ideal(s: &SemiringTable, set: &[usize]) -> bool {
    let mask = to_mask(set);
    member(mask, s.zero())
        && !member(mask, s.one())
        && set.iter().all(|&a| {
            set.iter().all(|&b| member(mask, s.add(&a, &b)))
                && s.elements().all(|r| member(mask, s.mul(&r, &a)))
        })
}

/// A proper ideal with `xy ∈ I ⟹ x ∈ I or y ∈ I`.
pub fn is_prime_ideal(s: &SemiringTable, set: &[usize]) -> bool {
    let mask = to_mask(set);
    is_ideal(s, set)
        && s.elements().all(|x| {
            s.elements()
                .all(|y| !member(mask, s.mul(&x, &y)) || member(mask, x) || member(mask, y))
        })
}

fn to_mask(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &a| m | 1 << a)
}

/// All prime ideals, ordered by size and then elementwise.
pub fn prime_ideals(s: &SemiringTable, bound: usize) -> Result<Vec<PrimeIdeal>> {
    if s.size() > bound.min(31) {
        return Err(Error::SizeGuard {
            what: "subsets of the semiring".into(),
            needed: 1u128 << s.size().min(127),
            bound,
        });
    }
    let free: Vec<usize> = s.elements().filter(|&a| a != s.zero() && a != s.one()).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << free.len() {
        let mut set: Vec<usize> = vec![s.zero()];
        set.extend(free.iter().enumerate().filter(|(k, _)| member(bits, *k)).map(|(_, &a)| a));
        set.sort_unstable();
        if is_ideal(s, &set) && is_prime_ideal(s, &set) {
            out.push(PrimeIdeal { elements: set });
        }
    }
    out.sort_by(|a, b| a.elements.len().cmp(&b.elements.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `A = M[x₀, …, x_r]_g` for a monomial `g`; elements are Laurent polynomials
/// whose negative exponents lie in the support of `g`.
#[derive(Clone, Debug)]
pub struct MonomialLocalization<S: Semiring> {
    ring: S,
    g: ExponentVector,
}

impl<S: Semiring> MonomialLocalization<S> {
    pub fn new(ring: S, g: ExponentVector) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::Invalid("no variables".into()));
        }
        if g.entries().iter().any(|&e| e < 0) {
            return Err(Error::Invalid(format!("{g} is not a monomial of the polynomial ring")));
        }
        Ok(MonomialLocalization { ring, g })
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn vars(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &ExponentVector {
        &self.g
    }

    /// `a / g^k`.
    pub fn fraction(&self, a: &LaurentPoly<S>, k: u32) -> Result<LaurentPoly<S>> {
        if a.terms().any(|(e, _)| e.entries().iter().any(|&x| x < 0)) {
            return Err(Error::Invalid(format!("{a} is not a polynomial")));
        }
        Ok(a.shift(&self.g.scaled(-i64::from(k))))
    }

    pub fn contains_exponent(&self, e: &ExponentVector) -> bool {
        e.len() == self.vars() && e.negative_support().iter().all(|&j| self.g.get(j) > 0)
    }

    pub fn contains(&self, p: &LaurentPoly<S>) -> bool {
        p.vars() == self.vars() && p.terms().all(|(e, _)| self.contains_exponent(e))
    }

    /// The inverse of `p` in `A`, if `p` is a unit: a single monomial with
    /// invertible coefficient supported on `supp(g)`.
    pub fn unit_inverse(&self, p: &LaurentPoly<S>) -> Option<LaurentPoly<S>> {
        if !self.contains(p) {
            return None;
        }
        let inv = p.monomial_inverse()?;
        self.contains(&inv).then_some(inv)
    }

    fn require_tois(&self) -> Result<()> {
        if !(self.ring.is_totally_ordered_idempotent() && self.ring.is_semifield()) {
            return Err(Error::Unsupported(format!(
                "{} is not a totally ordered idempotent semifield",
                self.ring.name()
            )));
        }
        Ok(())
    }
}

/// Outcome of deciding whether `fs` generates the unit ideal of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome<S: Semiring> {
    /// `1 = Σ h_i f_i`, with `h` nonzero only at `index`.
    Found { index: usize, h: Vec<LaurentPoly<S>> },
    /// No `f_i` is a unit, so no relation `1 = Σ h_i f_i` exists.
    NoWitness,
}

/// Decides the cover condition and returns a verified witness `h`.
pub fn cover_witness<S: Semiring>(a: &MonomialLocalization<S>, fs: &[LaurentPoly<S>]) -> Result<CoverOutcome<S>> {
    a.require_tois()?;
    if fs.is_empty() {
        return Err(Error::Invalid("empty family".into()));
    }
    for (i, f) in fs.iter().enumerate() {
        if !a.contains(f) {
            return Err(Error::Invalid(format!("f_{i} = {f} is not an element of the localization")));
        }
    }
    let zero = LaurentPoly::zero(a.ring.clone(), a.vars());
    let Some((index, inv)) = fs.iter().enumerate().find_map(|(i, f)| a.unit_inverse(f).map(|h| (i, h))) else {
        return Ok(CoverOutcome::NoWitness);
    };
    let mut h = vec![zero.clone(); fs.len()];
    h[index] = inv;
    let total = h
        .iter()
        .zip(fs)
        .try_fold(zero, |acc, (hi, fi)| acc.add(&hi.mul(fi)?))?;
    if total != LaurentPoly::one(a.ring.clone(), a.vars()) {
        return Err(Error::Decomposition("cover witness does not sum to 1".into()));
    }
    Ok(CoverOutcome::Found { index, h })
}

/// An invertible member of a covering family with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate<S: Semiring> {
    pub index: usize,
    pub inverse: LaurentPoly<S>,
}

/// The first `f_i` that is a unit of `A`; fails when `fs` does not cover.
pub fn detect_unit<S: Semiring>(a: &MonomialLocalization<S>, fs: &[LaurentPoly<S>]) -> Result<UnitCertificate<S>> {
    match cover_witness(a, fs)? {
        CoverOutcome::Found { index, h } => {
            let inverse = h[index].clone();
            if fs[index].mul(&inverse)? != LaurentPoly::one(a.ring.clone(), a.vars()) {
                return Err(Error::NotInvertible(format!("f_{index} times its inverse is not 1")));
            }
            Ok(UnitCertificate { index, inverse })
        }
        CoverOutcome::NoWitness => Err(Error::Precondition("the family does not cover Spec A".into())),
    }
}

/// A cover of `Spec A` by principal opens `D(f_i)` of monomials `f_i`.
#[derive(Clone, Debug)]
pub struct MonomialCover<S: Semiring> {
    algebra: MonomialLocalization<S>,
    charts: Vec<ExponentVector>,
}

impl<S: Semiring> MonomialCover<S> {
    /// Every `f_i` must be a monomial of `A` with invertible coefficient and
    /// at least one must be a unit of `A`.
    pub fn new(algebra: MonomialLocalization<S>, fs: &[LaurentPoly<S>]) -> Result<Self> {
        algebra.require_tois()?;
        let mut charts = Vec::new();
        for (i, f) in fs.iter().enumerate() {
            let (e, c) = f
                .as_monomial()
                .ok_or_else(|| Error::Unsupported(format!("f_{i} = {f} is not a monomial")))?;
            if algebra.ring.inverse(c).is_none() || !algebra.contains(f) {
                return Err(Error::Unsupported(format!("f_{i} = {f} is not a monomial of A")));
            }
            charts.push(e.clone());
        }
        detect_unit(&algebra, fs)?;
        Ok(MonomialCover { algebra, charts })
    }

    pub fn algebra(&self) -> &MonomialLocalization<S> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn chart(&self, i: usize) -> &ExponentVector {
        &self.charts[i]
    }

    /// `D(f_i) = Spec A`.
    pub fn is_full(&self, i: usize) -> bool {
        self.charts[i].support().iter().all(|&j| self.algebra.g.get(j) > 0)
    }

    pub fn full_charts(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_full(i)).collect()
    }

    /// Variables invertible on `D(f_{i₀}) ∩ … ∩ D(f_{i_p})`.
    pub fn invertible_vars(&self, t: &[usize]) -> Vec<bool> {
        let mut inv: Vec<bool> = (0..self.algebra.vars()).map(|j| self.algebra.g.get(j) > 0).collect();
        for &i in t {
            for j in self.charts[i].support() {
                inv[j] = true;
            }
        }
        inv
    }

    /// `u` is a unit section on the intersection indexed by `t`.
    pub fn is_unit_section(&self, t: &[usize], u: &UnitMonomial<S>) -> bool {
        let inv = self.invertible_vars(t);
        u.vars() == inv.len() && u.exp().support().iter().all(|&j| inv[j])
    }
}

/// The Čech complex of `O*` on a [`MonomialCover`] over unordered tuples,
/// written multiplicatively: the cochain "sum" is the pointwise product.
#[derive(Clone, Debug)]
pub struct AffineUnitCech<S: Semiring> {
    cover: MonomialCover<S>,
    top: usize,
    tuples: Vec<Vec<Vec<usize>>>,
}

pub type AffineUnitCochain<S> = Vec<UnitMonomial<S>>;

impl<S: Semiring> AffineUnitCech<S> {
    /// Degrees `0..=top`; the unordered model has no vanishing above the
    /// cover size, so the range is explicit.
    pub fn new(cover: MonomialCover<S>, top: usize) -> Result<Self> {
        let k = cover.len();
        let mut sizes = 1usize;
        let mut tuples_by_degree = Vec::new();
        for p in 0..=top + 1 {
            sizes = sizes
                .checked_mul(k)
                .filter(|&s| s <= crate::DEFAULT_SEARCH_BOUND)
                .ok_or_else(|| Error::SizeGuard {
                    what: format!("unordered {}-tuples", p + 1),
                    needed: (k as u128).saturating_pow(p as u32 + 1),
                    bound: crate::DEFAULT_SEARCH_BOUND,
                })?;
            tuples_by_degree.push(tuples(CochainModel::Unordered, k, p + 1));
        }
        Ok(AffineUnitCech {
            cover,
            top,
            tuples: tuples_by_degree,
        })
    }

    pub fn cover(&self) -> &MonomialCover<S> {
        &self.cover
    }

    pub fn tuples(&self, p: usize) -> &[Vec<usize>] {
        self.tuples.get(p).map_or(&[], |t| t.as_slice())
    }

    /// Position of `t` among the unordered tuples of its length.
    pub fn position(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * self.cover.len() + i)
    }

    fn one(&self) -> UnitMonomial<S> {
        UnitMonomial::one(self.cover.algebra.ring.clone(), self.cover.algebra.vars())
    }

    pub fn check_cochain(&self, p: usize, x: &[UnitMonomial<S>]) -> Result<()> {
        let ts = self.tuples(p);
        if p > self.top || x.len() != ts.len() {
            return Err(Error::Invalid(format!("not a degree {p} cochain")));
        }
        for (t, u) in ts.iter().zip(x) {
            if !self.cover.is_unit_section(t, u) {
                return Err(Error::NotInvertible(format!("{u} is not a unit on U_{t:?}")));
            }
        }
        Ok(())
    }

    fn signed_product(&self, p: usize, x: &[UnitMonomial<S>], parity: Option<usize>) -> AffineUnitCochain<S> {
        let k = self.cover.len();
        self.tuples(p + 1)
            .iter()
            .map(|s| {
                let mut acc = self.one();
                for j in 0..s.len() {
                    let f = face(s, j);
                    let xf = &x[f.iter().fold(0, |a, &i| a * k + i)];
                    acc = match parity {
                        Some(par) if j % 2 == par => acc.mul(xf),
                        Some(_) => acc,
                        None if j % 2 == 0 => acc.mul(xf),
                        None => acc.div(xf),
                    };
                }
                acc
            })
            .collect()
    }

    /// The classical differential `(dx)_s = ⊙ₖ x_{s∖k}^{(-1)^k}`.
    pub fn coboundary(&self, p: usize, x: &[UnitMonomial<S>]) -> AffineUnitCochain<S> {
        self.signed_product(p, x, None)
    }

    pub fn is_classical_cocycle(&self, p: usize, y: &[UnitMonomial<S>]) -> bool {
        self.coboundary(p, y).iter().all(UnitMonomial::is_one)
    }

    /// A random cochain with coefficients from `coef` and exponents in
    /// `[-bound, bound]` on the variables invertible on each intersection.
    pub fn random_cochain<R, F>(&self, rng: &mut R, p: usize, bound: i64, mut coef: F) -> Result<AffineUnitCochain<S>>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut R) -> S::Elem,
    {
        let ring = self.cover.algebra.ring.clone();
        self.tuples(p)
            .iter()
            .map(|t| {
                let inv = self.cover.invertible_vars(t);
                let e: Vec<i64> = inv
                    .iter()
                    .map(|&free| if free { rng.random_range(-bound..=bound) } else { 0 })
                    .collect();
                UnitMonomial::new(ring.clone(), coef(rng), ExponentVector::new(e))
            })
            .collect()
    }

    /// `x_{i₀…i_{n-1}} = y_{i i₀…i_{n-1}}` for the full chart `i`; the result
    /// is checked to satisfy `d(x) = y`.
    pub fn contract_unit_cocycle(&self, chart: usize, n: usize, y: &[UnitMonomial<S>]) -> Result<AffineUnitCochain<S>> {
        if n == 0 || n > self.top {
            return Err(Error::Invalid(format!("contraction needs 1 ≤ n ≤ {}", self.top)));
        }
        if chart >= self.cover.len() || !self.cover.is_full(chart) {
            return Err(Error::Precondition(format!("chart {chart} is not all of Spec A")));
        }
        self.check_cochain(n, y)?;
        if !self.is_classical_cocycle(n, y) {
            return Err(Error::NotCocycle(format!("y is not a cocycle in degree {n}")));
        }
        let x: AffineUnitCochain<S> = self
            .tuples(n - 1)
            .iter()
            .map(|t| {
                let mut s = vec![chart];
                s.extend_from_slice(t);
                y[self.position(&s)].clone()
            })
            .collect();
        self.check_cochain(n - 1, &x)?;
        if self.coboundary(n - 1, &x) != y {
            return Err(Error::NotCocycle(format!(
                "y fails the cocycle law through chart {chart} in degree {n}"
            )));
        }
        Ok(x)
    }
}

impl<S: Semiring> PmComplex for AffineUnitCech<S> {
    type Cochain = AffineUnitCochain<S>;

    fn top_degree(&self) -> usize {
        self.top
    }

    fn zero(&self, n: usize) -> Self::Cochain {
        vec![self.one(); self.tuples(n).len()]
    }

    fn add(&self, _n: usize, a: &Self::Cochain, b: &Self::Cochain) -> Self::Cochain {
        a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
    }

    fn d_plus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain {
        if n >= self.top {
            return Vec::new();
        }
        self.signed_product(n, x, Some(0))
    }

    fn d_minus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain {
        if n >= self.top {
            return Vec::new();
        }
        self.signed_product(n, x, Some(1))
    }
}

/// Maps each tuple of a cochain to its component, for reports.
pub fn cochain_map<S: Semiring>(cech: &AffineUnitCech<S>, p: usize, x: &[UnitMonomial<S>]) -> BTreeMap<Vec<usize>, UnitMonomial<S>> {
    cech.tuples(p).iter().cloned().zip(x.iter().cloned()).collect()
}
