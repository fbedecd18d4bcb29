//! ℙⁿ over a semifield with its standard cover `D(x₀), …, D(xₙ)`.
//!
//! Sections of `O(m)` and of `O*` on chart intersections are Laurent
//! polynomials and unit monomials in `x₀, …, xₙ` ([`SectionSpace`],
//! [`UnitSpace`]); restriction is the identity on representations. This
//! gives two symbolic ± complexes: [`ProjectiveCech`] for `O(m)` and
//! [`UnitCech`] for `O*`, where the "addition" is multiplication.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::cech::{face, tuples, CochainModel};
use crate::laurent::{ExponentVector, LaurentPoly, SectionSpace, UnitMonomial, UnitSpace};
use crate::pm_complex::{is_cocycle, rho_related, PmComplex};
use crate::semiring::Semiring;
use crate::{Error, Result};

pub type PolyCochain<S> = Vec<LaurentPoly<S>>;
pub type UnitCochain<S> = Vec<UnitMonomial<S>>;

/// Bound on level assignments enumerated per monomial by the cocycle sampler.
pub const SAMPLER_BOUND: usize = 1 << 16;

const SAMPLER_RETRIES: usize = 16;

/// `ℙⁿ_M` with its `n + 1` standard charts.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace<S: Semiring> {
    ring: S,
    n: usize,
}

impl<S: Semiring> ProjectiveSpace<S> {
    pub fn new(ring: S, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("projective space needs n ≥ 1".into()));
        }
        if !ring.is_semifield() {
            return Err(Error::Precondition(format!("{} is not a semifield", ring.name())));
        }
        Ok(ProjectiveSpace { ring, n })
    }

    pub fn ring(&self) -> &S {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> usize {
        self.n + 1
    }

    pub fn chart_count(&self) -> usize {
        self.n + 1
    }

    /// The Čech complex of `O(m)` on the standard cover.
    pub fn structure_complex(&self, m: i64) -> ProjectiveCech<S> {
        ProjectiveCech::new(self.clone(), m)
    }

    /// The multiplicative Čech complex of `O*` on the standard cover.
    pub fn unit_complex(&self) -> UnitCech<S> {
        UnitCech::new(self.clone())
    }

    fn pairs(&self) -> Vec<Vec<usize>> {
        tuples(CochainModel::Ordered, self.n + 1, 2)
    }

    fn require_tois(&self) -> Result<()> {
        if !self.ring.is_totally_ordered_idempotent() {
            return Err(Error::Precondition(format!(
                "{} is not totally ordered idempotent",
                self.ring.name()
            )));
        }
        Ok(())
    }

    fn unit(&self, coef: S::Elem, exp: ExponentVector) -> Result<UnitMonomial<S>> {
        UnitMonomial::new(self.ring.clone(), coef, exp)
    }

    fn one(&self) -> UnitMonomial<S> {
        UnitMonomial::one(self.ring.clone(), self.vars())
    }

    /// `x_i^m · x_j^{-m}`.
    fn transition(&self, i: usize, j: usize, m: i64, q: S::Elem) -> Result<UnitMonomial<S>> {
        let e = ExponentVector::axis(self.vars(), i, m).minus(&ExponentVector::axis(self.vars(), j, m));
        self.unit(q, e)
    }

    /// The transition cocycle `f_ij = x_i^m / x_j^m` of `O(m)`.
    pub fn twisting_cocycle(&self, m: i64) -> UnitCocycle<S> {
        let entries = self
            .pairs()
            .iter()
            .map(|p| self.transition(p[0], p[1], m, self.ring.one()).expect("unit"))
            .collect();
        UnitCocycle::new(self, entries).expect("twisting cocycles satisfy the cocycle law")
    }

    pub fn trivial_cocycle(&self) -> UnitCocycle<S> {
        self.twisting_cocycle(0)
    }

    /// Writes `f_ij = q_ij · x_i^d · x_j^{-d}` and checks that `d` is common
    /// to all pairs and that `q_ik = q_ij · q_jk`.
    pub fn classify_cocycle(&self, f: &UnitCocycle<S>) -> Result<CocycleClass<S>> {
        self.require_tois()?;
        self.check_same(f)?;
        let pairs = self.pairs();
        let mut degrees = Vec::with_capacity(pairs.len());
        let mut q = BTreeMap::new();
        for (p, u) in pairs.iter().zip(&f.entries) {
            let (i, j) = (p[0], p[1]);
            let d = u.exp().get(i);
            if u.exp() != &ExponentVector::axis(self.vars(), i, d).minus(&ExponentVector::axis(self.vars(), j, d)) {
                return Err(Error::Classification(format!("f_{i}{j} = {u} is not of the form q·x_i^d/x_j^d")));
            }
            degrees.push(d);
            q.insert((i, j), u.coef().clone());
        }
        let degree = degrees[0];
        for t in tuples(CochainModel::Ordered, self.n + 1, 3) {
            let (i, j, k) = (t[0], t[1], t[2]);
            let (dij, djk, dik) = (
                degrees[f.index(i, j)],
                degrees[f.index(j, k)],
                degrees[f.index(i, k)],
            );
            if dij != djk || dij != dik {
                return Err(Error::Classification(format!(
                    "inconsistent exponents on ({i},{j},{k}): {dij}, {djk}, {dik}"
                )));
            }
            if self.ring.mul(&q[&(i, j)], &q[&(j, k)]) != q[&(i, k)] {
                return Err(Error::Classification(format!("q is not multiplicative on ({i},{j},{k})")));
            }
        }
        Ok(CocycleClass { degree, q })
    }

    /// A witness `(u, v)` with `f·d⁺u·d⁻v = f′·d⁺v·d⁻u`, or a proof that the
    /// degrees differ.
    ///
    /// With `Q = q/q′`, setting `v = 1`, `u₀ = 1` and `u_j = Q₀ⱼ⁻¹` solves
    /// `Q_ij u_j = u_i` because `Q` is multiplicative.
    pub fn coboundary_witness(&self, f: &UnitCocycle<S>, g: &UnitCocycle<S>) -> Result<CoboundaryOutcome<S>> {
        let cf = self.classify_cocycle(f)?;
        let cg = self.classify_cocycle(g)?;
        if cf.degree != cg.degree {
            return Ok(CoboundaryOutcome::Distinct {
                left: cf.degree,
                right: cg.degree,
            });
        }
        let r = &self.ring;
        let mut u = vec![self.one()];
        for j in 1..=self.n {
            let ratio = r.div(&cf.q[&(0, j)], &cg.q[&(0, j)]).expect("units");
            let c = r.inverse(&ratio).expect("unit");
            u.push(self.unit(c, ExponentVector::zeros(self.vars()))?);
        }
        let v = vec![self.one(); self.n + 1];
        let complex = self.unit_complex();
        if !rho_related(&complex, 1, &f.entries, &g.entries, Some((&u, &v)))? {
            return Err(Error::Classification("constructed coboundary witness does not verify".into()));
        }
        Ok(CoboundaryOutcome::Witness { u, v })
    }

    /// `f_ij = e_i · e_j⁻¹`.
    pub fn cocycle_from_trivialization(&self, t: &Trivialization<S>) -> Result<UnitCocycle<S>> {
        if t.basis.len() != self.n + 1 {
            return Err(Error::Incompatible("trivialization has the wrong number of charts".into()));
        }
        let entries = self
            .pairs()
            .iter()
            .map(|p| t.basis[p[0]].div(&t.basis[p[1]]))
            .collect();
        UnitCocycle::new(self, entries)
    }

    /// Checks `f·d⁻₀(g) = f′·d⁺₀(g)`, i.e. `f_ij g_i = f′_ij g_j`, and that
    /// `(u, v) = (1, g)` is a `ρ¹` witness between `f` and `f′`.
    pub fn verify_rescaling(&self, f: &UnitCocycle<S>, f2: &UnitCocycle<S>, g: &[UnitMonomial<S>]) -> Result<bool> {
        self.check_same(f)?;
        self.check_same(f2)?;
        let complex = self.unit_complex();
        let g: UnitCochain<S> = g.to_vec();
        complex.check_cochain(0, &g)?;
        let lhs = complex.add(1, &f.entries, &complex.d_minus(0, &g));
        let rhs = complex.add(1, &f2.entries, &complex.d_plus(0, &g));
        if lhs != rhs {
            return Ok(false);
        }
        let ones = complex.zero(0);
        rho_related(&complex, 1, &f.entries, &f2.entries, Some((&ones, &g)))
    }

    /// Pointwise product: the transition cocycle of `L ⊗ L′`.
    pub fn tensor_cocycles(&self, f: &UnitCocycle<S>, g: &UnitCocycle<S>) -> Result<UnitCocycle<S>> {
        self.check_same(f)?;
        self.check_same(g)?;
        let entries = f.entries.iter().zip(&g.entries).map(|(a, b)| a.mul(b)).collect();
        UnitCocycle::new(self, entries)
    }

    pub fn inverse_cocycle(&self, f: &UnitCocycle<S>) -> Result<UnitCocycle<S>> {
        self.check_same(f)?;
        UnitCocycle::new(self, f.entries.iter().map(UnitMonomial::inverse).collect())
    }

    /// A cocycle of the given degree with `q₀ⱼ` drawn by `coef` and
    /// `q_jk = q₀ₖ · q₀ⱼ⁻¹`.
    pub fn random_unit_cocycle<R, F>(&self, rng: &mut R, degree: i64, mut coef: F) -> Result<UnitCocycle<S>>
    where
        R: Rng + ?Sized,
        F: FnMut(&mut R) -> S::Elem,
    {
        let q0: Vec<S::Elem> = (0..=self.n)
            .map(|j| if j == 0 { self.ring.one() } else { coef(rng) })
            .collect();
        for c in &q0 {
            if self.ring.inverse(c).is_none() {
                return Err(Error::NotInvertible(format!("coefficient {}", self.ring.format_elem(c))));
            }
        }
        let entries = self
            .pairs()
            .iter()
            .map(|p| {
                let q = self.ring.div(&q0[p[1]], &q0[p[0]]).expect("units");
                self.transition(p[0], p[1], degree, q)
            })
            .collect::<Result<Vec<_>>>()?;
        UnitCocycle::new(self, entries)
    }

    fn check_same(&self, f: &UnitCocycle<S>) -> Result<()> {
        if f.n != self.n || !f.ring.same_as(&self.ring) {
            return Err(Error::Incompatible("cocycle lives on a different projective space".into()));
        }
        Ok(())
    }
}

/// Transition functions `f_ij` for `i < j`, in lexicographic order of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCocycle<S: Semiring> {
    ring: S,
    n: usize,
    entries: Vec<UnitMonomial<S>>,
}

impl<S: Semiring> UnitCocycle<S> {
    /// Checks unit-section membership and `f_ik = f_ij · f_jk`.
    pub fn new(space: &ProjectiveSpace<S>, entries: Vec<UnitMonomial<S>>) -> Result<Self> {
        let complex = space.unit_complex();
        complex.check_cochain(1, &entries)?;
        if !is_cocycle(&complex, 1, &entries) {
            let (p, m) = (complex.d_plus(1, &entries), complex.d_minus(1, &entries));
            let bad = complex.tuples(2).iter().zip(p.iter().zip(&m)).find(|(_, (a, b))| a != b);
            let t = bad.map(|(t, _)| t.clone()).unwrap_or_default();
            return Err(Error::NotCocycle(format!("cocycle law fails on {t:?}")));
        }
        Ok(UnitCocycle {
            ring: space.ring.clone(),
            n: space.n,
            entries,
        })
    }

    /// Builds from a map `(i, j) ↦ f_ij`; every pair `i < j` must be present.
    pub fn from_map(space: &ProjectiveSpace<S>, map: &BTreeMap<(usize, usize), UnitMonomial<S>>) -> Result<Self> {
        let mut entries = Vec::new();
        for p in space.pairs() {
            let u = map
                .get(&(p[0], p[1]))
                .ok_or_else(|| Error::Invalid(format!("missing entry f_{}{}", p[0], p[1])))?;
            entries.push(u.clone());
        }
        if map.len() != entries.len() {
            return Err(Error::Invalid("entries outside the pairs i < j".into()));
        }
        Self::new(space, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[UnitMonomial<S>] {
        &self.entries
    }

    fn index(&self, i: usize, j: usize) -> usize {
        // position of (i, j) among the pairs of 0..=n
        let k = self.n + 1;
        i * k - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&UnitMonomial<S>> {
        (i < j && j <= self.n).then(|| &self.entries[self.index(i, j)])
    }

    pub fn to_map(&self) -> BTreeMap<(usize, usize), UnitMonomial<S>> {
        tuples(CochainModel::Ordered, self.n + 1, 2)
            .into_iter()
            .zip(self.entries.iter().cloned())
            .map(|(p, u)| ((p[0], p[1]), u))
            .collect()
    }
}

/// Degree and unit family of a classified cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleClass<S: Semiring> {
    pub degree: i64,
    pub q: BTreeMap<(usize, usize), S::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryOutcome<S: Semiring> {
    Witness { u: UnitCochain<S>, v: UnitCochain<S> },
    Distinct { left: i64, right: i64 },
}

impl<S: Semiring> CoboundaryOutcome<S> {
    pub fn is_witness(&self) -> bool {
        matches!(self, CoboundaryOutcome::Witness { .. })
    }
}

/// Basis sections `e_i` of an invertible sheaf on the standard charts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization<S: Semiring> {
    degree: i64,
    basis: Vec<UnitMonomial<S>>,
}

impl<S: Semiring> Trivialization<S> {
    /// Each `e_i` must be `q · x_i^m` with `q` invertible, a generator of
    /// `O(m)` over `D(x_i)`.
    pub fn new(space: &ProjectiveSpace<S>, degree: i64, basis: Vec<UnitMonomial<S>>) -> Result<Self> {
        if basis.len() != space.n + 1 {
            return Err(Error::Invalid("one basis section per chart is needed".into()));
        }
        for (i, e) in basis.iter().enumerate() {
            if e.exp() != &ExponentVector::axis(space.vars(), i, degree) {
                return Err(Error::NotInvertible(format!("e_{i} = {e} does not generate O({degree}) on D(x_{i})")));
            }
        }
        Ok(Trivialization { degree, basis })
    }

    /// `e_i = x_i^m`, the image of 1 under `a ↦ a·x_i^m`.
    pub fn standard(space: &ProjectiveSpace<S>, degree: i64) -> Self {
        let basis = (0..=space.n)
            .map(|i| space.unit(space.ring.one(), ExponentVector::axis(space.vars(), i, degree)).expect("unit"))
            .collect();
        Trivialization { degree, basis }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn basis(&self) -> &[UnitMonomial<S>] {
        &self.basis
    }

    /// `e_i ↦ g_i e_i` for units `g_i` on the charts.
    pub fn rescale(&self, space: &ProjectiveSpace<S>, g: &[UnitMonomial<S>]) -> Result<Self> {
        space.unit_complex().check_cochain(0, g)?;
        Self::new(space, self.degree, self.basis.iter().zip(g).map(|(e, g)| g.mul(e)).collect())
    }
}

/// `Pic(ℙⁿ) ≅ ℤ` through the degree of transition cocycles.
#[derive(Clone, Debug)]
pub struct PicardGroup<S: Semiring> {
    space: ProjectiveSpace<S>,
}

impl<S: Semiring> PicardGroup<S> {
    pub fn new(space: ProjectiveSpace<S>) -> Result<Self> {
        space.require_tois()?;
        Ok(PicardGroup { space })
    }

    pub fn space(&self) -> &ProjectiveSpace<S> {
        &self.space
    }

    pub fn class_of(&self, f: &UnitCocycle<S>) -> Result<i64> {
        Ok(self.space.classify_cocycle(f)?.degree)
    }

    pub fn representative(&self, m: i64) -> UnitCocycle<S> {
        self.space.twisting_cocycle(m)
    }

    pub fn combine(&self, f: &UnitCocycle<S>, g: &UnitCocycle<S>) -> Result<UnitCocycle<S>> {
        self.space.tensor_cocycles(f, g)
    }

    /// `class(f ⊗ g) = class(f) + class(g)` on every given pair.
    pub fn verify_homomorphism(&self, pairs: &[(UnitCocycle<S>, UnitCocycle<S>)]) -> Result<bool> {
        for (f, g) in pairs {
            if self.class_of(&self.combine(f, g)?)? != self.class_of(f)? + self.class_of(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The Čech ± complex of `O(m)` on the standard cover of ℙⁿ.
#[derive(Clone, Debug)]
pub struct ProjectiveCech<S: Semiring> {
    space: ProjectiveSpace<S>,
    degree: i64,
    tuples: Vec<Vec<Vec<usize>>>,
    sections: Vec<Vec<SectionSpace>>,
}

fn face_indices(tuples: &[Vec<Vec<usize>>], p: usize) -> Vec<Vec<usize>> {
    // for each (p+1)-tuple, the positions of its faces among the p-tuples
    let lookup: BTreeMap<&[usize], usize> = tuples[p]
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    tuples[p + 1]
        .iter()
        .map(|s| (0..s.len()).map(|k| lookup[face(s, k).as_slice()]).collect())
        .collect()
}

fn ordered_tuples(n: usize) -> Vec<Vec<Vec<usize>>> {
    (0..=n).map(|p| tuples(CochainModel::Ordered, n + 1, p + 1)).collect()
}

impl<S: Semiring> ProjectiveCech<S> {
    pub fn new(space: ProjectiveSpace<S>, degree: i64) -> Self {
        let tuples = ordered_tuples(space.n);
        let sections = tuples
            .iter()
            .map(|ts| ts.iter().map(|t| SectionSpace::new(space.n, t, degree).expect("ordered")).collect())
            .collect();
        ProjectiveCech {
            space,
            degree,
            tuples,
            sections,
        }
    }

    pub fn space(&self) -> &ProjectiveSpace<S> {
        &self.space
    }

    pub fn twist(&self) -> i64 {
        self.degree
    }

    pub fn tuples(&self, p: usize) -> &[Vec<usize>] {
        self.tuples.get(p).map_or(&[], |t| t.as_slice())
    }

    pub fn section_space(&self, p: usize, i: usize) -> &SectionSpace {
        &self.sections[p][i]
    }

    fn zero_poly(&self) -> LaurentPoly<S> {
        LaurentPoly::zero(self.space.ring.clone(), self.space.vars())
    }

    /// Checks that every component is a section on its intersection.
    pub fn check_cochain(&self, p: usize, x: &[LaurentPoly<S>]) -> Result<()> {
        let ts = self.tuples(p);
        if x.len() != ts.len() {
            return Err(Error::Invalid(format!(
                "degree {p} cochain has {} components, expected {}",
                x.len(),
                ts.len()
            )));
        }
        for (i, c) in x.iter().enumerate() {
            if !c.ring().same_as(&self.space.ring) || !self.sections[p][i].contains(c) {
                return Err(Error::Invalid(format!("{c} is not a section on U_{:?}", ts[i])));
            }
        }
        Ok(())
    }

    fn differential(&self, p: usize, x: &[LaurentPoly<S>], parity: usize) -> PolyCochain<S> {
        if p >= self.space.n {
            return Vec::new();
        }
        face_indices(&self.tuples, p)
            .iter()
            .map(|faces| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k % 2 == parity)
                    .fold(self.zero_poly(), |acc, (_, &f)| acc.add(&x[f]).expect("same ambient"))
            })
            .collect()
    }

    /// Assigns each monomial of `t_l` to the first face `l \ l_i` on which it
    /// is a section and returns the resulting `u`; with `v = u` this is a `ρᵖ`
    /// witness between `t` and 0 because addition is idempotent.
    pub fn vanishing_witness(&self, p: usize, t: &[LaurentPoly<S>]) -> Result<PolyCochain<S>> {
        if !self.space.ring.is_idempotent() {
            return Err(Error::Precondition(format!("{} is not idempotent", self.space.ring.name())));
        }
        if p == 0 {
            return Err(Error::Invalid("vanishing witnesses start in degree 1".into()));
        }
        if p > self.space.n {
            return Ok(Vec::new());
        }
        self.check_cochain(p, t)?;
        if !is_cocycle(self, p, &t.to_vec()) {
            return Err(Error::NotCocycle(format!("t is not a cocycle in degree {p}")));
        }
        let lower: BTreeMap<&[usize], usize> = self.tuples[p - 1]
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let mut terms: Vec<Vec<(ExponentVector, S::Elem)>> = vec![Vec::new(); self.tuples[p - 1].len()];
        for (l, tl) in self.tuples[p].iter().zip(t) {
            for (e, c) in tl.terms() {
                let target = (0..l.len())
                    .map(|k| lower[face(l, k).as_slice()])
                    .find(|&j| self.sections[p - 1][j].contains_exponent(e))
                    .ok_or_else(|| {
                        Error::Decomposition(format!("monomial {e} of t_{l:?} is a section on no face"))
                    })?;
                terms[target].push((e.clone(), c.clone()));
            }
        }
        let u: PolyCochain<S> = terms
            .into_iter()
            .map(|ts| LaurentPoly::from_terms(self.space.ring.clone(), self.space.vars(), ts))
            .collect::<Result<_>>()?;
        let t = t.to_vec();
        if !rho_related(self, p, &t, &self.zero(p), Some((&u, &u)))? {
            return Err(Error::Decomposition("witness does not verify".into()));
        }
        Ok(u)
    }

    /// A random cochain with up to `terms` monomials per component, exponents
    /// in `[-bound, bound]` and coefficients from `coefs`.
    pub fn random_cochain<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        p: usize,
        coefs: &[S::Elem],
        terms: usize,
        bound: i64,
    ) -> PolyCochain<S> {
        self.sections
            .get(p)
            .map_or(&[][..], |s| s.as_slice())
            .iter()
            .map(|space| {
                let exps = space.monomials(bound);
                let k = rng.random_range(0..=terms);
                let picked = (0..k).filter(|_| !exps.is_empty() && !coefs.is_empty()).map(|_| {
                    let e = exps[rng.random_range(0..exps.len())].clone();
                    let c = coefs[rng.random_range(0..coefs.len())].clone();
                    (e, c)
                });
                let picked: Vec<_> = picked.collect();
                LaurentPoly::from_terms(self.space.ring.clone(), self.space.vars(), picked).expect("sized")
            })
            .collect()
    }

    /// A random cocycle in degree `p`, built monomial by monomial.
    ///
    /// The cocycle condition splits over exponents, so for each of `terms`
    /// random exponents `e` the coefficients of `x^e` on the tuples where it
    /// is a section are chosen uniformly among the nonzero level assignments
    /// from `0 ∪ coefs` that satisfy `d⁺ = d⁻`.
    pub fn random_cocycle<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        p: usize,
        coefs: &[S::Elem],
        terms: usize,
        bound: i64,
    ) -> Result<PolyCochain<S>> {
        if p > self.space.n {
            return Ok(Vec::new());
        }
        let mut levels = vec![self.space.ring.zero()];
        levels.extend(coefs.iter().filter(|c| !self.space.ring.is_zero(c)).cloned());
        levels.sort();
        levels.dedup();
        let count = self.tuples[p].len();
        let mut acc = self.zero(p);
        let mut cache: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for _ in 0..terms {
            // exponents that occur in no nonzero cocycle are redrawn a few times
            let mut picked = None;
            for _ in 0..SAMPLER_RETRIES {
                let base = &self.sections[p][rng.random_range(0..count)];
                let exps = base.monomials(bound);
                if exps.is_empty() {
                    continue;
                }
                let e = exps[rng.random_range(0..exps.len())].clone();
                let admissible: Vec<usize> =
                    (0..count).filter(|&i| self.sections[p][i].contains_exponent(&e)).collect();
                if !cache.contains_key(&admissible) {
                    let valid = self.valid_assignments(p, &admissible, &levels)?;
                    cache.insert(admissible.clone(), valid);
                }
                if !cache[&admissible].is_empty() {
                    picked = Some((e, admissible));
                    break;
                }
            }
            let Some((e, admissible)) = picked else {
                continue;
            };
            let valid = &cache[&admissible];
            let choice = &valid[rng.random_range(0..valid.len())];
            let mut x = self.zero(p);
            for (&slot, &lvl) in admissible.iter().zip(choice) {
                x[slot] = LaurentPoly::monomial(self.space.ring.clone(), levels[lvl].clone(), e.clone());
            }
            acc = self.add(p, &acc, &x);
        }
        Ok(acc)
    }

    fn valid_assignments(&self, p: usize, admissible: &[usize], levels: &[S::Elem]) -> Result<Vec<Vec<usize>>> {
        let r = &self.space.ring;
        let total = crate::semimodule::checked_power(levels.len(), admissible.len(), SAMPLER_BOUND, "level assignments")?;
        let faces = if p < self.space.n { face_indices(&self.tuples, p) } else { Vec::new() };
        let mut out = Vec::new();
        let mut choice = vec![0usize; admissible.len()];
        let mut coef = vec![r.zero(); self.tuples[p].len()];
        for _ in 0..total {
            for (&slot, &lvl) in admissible.iter().zip(&choice) {
                coef[slot] = levels[lvl].clone();
            }
            let ok = faces.iter().all(|fs| {
                let side = |parity: usize| {
                    r.sum(fs.iter().enumerate().filter(|(k, _)| k % 2 == parity).map(|(_, &f)| &coef[f]))
                };
                side(0) == side(1)
            });
            if ok && choice.iter().any(|&c| c != 0) {
                out.push(choice.clone());
            }
            crate::semimodule::next_tuple(&mut choice, levels.len());
        }
        Ok(out)
    }

    /// `H⁰(ℙⁿ, O) ≅ M`; only for the untwisted structure sheaf.
    pub fn global_sections(&self) -> Result<GlobalSectionsIso<'_, S>> {
        if self.degree != 0 {
            return Err(Error::Unsupported("global sections are implemented for O_X only".into()));
        }
        Ok(GlobalSectionsIso { cech: self })
    }
}

/// Mutually inverse maps between `Z⁰ = Ȟ⁰` and the coefficient semifield.
#[derive(Clone, Copy, Debug)]
pub struct GlobalSectionsIso<'a, S: Semiring> {
    cech: &'a ProjectiveCech<S>,
}

impl<S: Semiring> GlobalSectionsIso<'_, S> {
    /// A 0-cocycle is a constant family; returns the constant.
    pub fn to_scalar(&self, u: &[LaurentPoly<S>]) -> Result<S::Elem> {
        let c = self.cech;
        c.check_cochain(0, u)?;
        if !is_cocycle(c, 0, &u.to_vec()) {
            return Err(Error::NotCocycle("not a global section".into()));
        }
        let zero = ExponentVector::zeros(c.space.vars());
        let value = u[0].coefficient(&zero);
        if u.iter().any(|p| p.term_count() > usize::from(!p.is_zero()) || p.coefficient(&zero) != value) {
            return Err(Error::Gluing("0-cocycle is not a constant family".into()));
        }
        Ok(value)
    }

    pub fn from_scalar(&self, a: &S::Elem) -> PolyCochain<S> {
        let c = self.cech;
        vec![LaurentPoly::constant(c.space.ring.clone(), c.space.vars(), a.clone()); c.space.n + 1]
    }

    /// `to ∘ from = id` on `scalars`, `from ∘ to = id` on `cocycles`, and both
    /// maps preserve sums and the action on the given samples.
    pub fn verify(&self, scalars: &[S::Elem], cocycles: &[PolyCochain<S>]) -> Result<bool> {
        let r = &self.cech.space.ring;
        for a in scalars {
            if &self.to_scalar(&self.from_scalar(a))? != a {
                return Ok(false);
            }
            for b in scalars {
                let sum = self.cech.add(0, &self.from_scalar(a), &self.from_scalar(b));
                if sum != self.from_scalar(&r.add(a, b)) {
                    return Ok(false);
                }
                let scaled: PolyCochain<S> = self.from_scalar(b).iter().map(|p| p.scale(a)).collect();
                if scaled != self.from_scalar(&r.mul(a, b)) {
                    return Ok(false);
                }
            }
        }
        for u in cocycles {
            if &self.from_scalar(&self.to_scalar(u)?) != u {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<S: Semiring> PmComplex for ProjectiveCech<S> {
    type Cochain = PolyCochain<S>;

    fn top_degree(&self) -> usize {
        self.space.n
    }

    fn zero(&self, n: usize) -> Self::Cochain {
        vec![self.zero_poly(); self.tuples(n).len()]
    }

    fn add(&self, _n: usize, a: &Self::Cochain, b: &Self::Cochain) -> Self::Cochain {
        a.iter().zip(b).map(|(x, y)| x.add(y).expect("same ambient")).collect()
    }

    fn d_plus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain {
        self.differential(n, x, 0)
    }

    fn d_minus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain {
        self.differential(n, x, 1)
    }
}

/// The ℙ¹ split of `x ∈ M[T, 1/T]` (`T = x₁/x₀`) into the part `x₀`
/// regular on `D(x₀)` (exponent of `x₀` at most 0) and the rest `x₁`.
pub fn split_p1<S: Semiring>(x: &LaurentPoly<S>) -> (LaurentPoly<S>, LaurentPoly<S>) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (e, c) in x.terms() {
        if e.get(0) <= 0 {
            a.push((e.clone(), c.clone()));
        } else {
            b.push((e.clone(), c.clone()));
        }
    }
    let mk = |ts| LaurentPoly::from_terms(x.ring().clone(), x.vars(), ts).expect("sized");
    (mk(a), mk(b))
}

/// `u = (x₀, y₁)`, `v = (y₀, x₁)` for 1-cocycles `x, y` on ℙ¹.
pub fn p1_witness<S: Semiring>(x: &LaurentPoly<S>, y: &LaurentPoly<S>) -> (PolyCochain<S>, PolyCochain<S>) {
    let (x0, x1) = split_p1(x);
    let (y0, y1) = split_p1(y);
    (vec![x0, y1], vec![y0, x1])
}

/// The multiplicative Čech ± complex of `O*` on the standard cover; the
/// cochain "sum" is the pointwise product.
#[derive(Clone, Debug)]
pub struct UnitCech<S: Semiring> {
    space: ProjectiveSpace<S>,
    tuples: Vec<Vec<Vec<usize>>>,
    units: Vec<Vec<UnitSpace>>,
}

impl<S: Semiring> UnitCech<S> {
    pub fn new(space: ProjectiveSpace<S>) -> Self {
        let tuples = ordered_tuples(space.n);
        let units = tuples
            .iter()
            .map(|ts| ts.iter().map(|t| UnitSpace::new(&space.ring, space.n, t).expect("semifield")).collect())
            .collect();
        UnitCech { space, tuples, units }
    }

    pub fn tuples(&self, p: usize) -> &[Vec<usize>] {
        self.tuples.get(p).map_or(&[], |t| t.as_slice())
    }

    pub fn check_cochain(&self, p: usize, x: &[UnitMonomial<S>]) -> Result<()> {
        let ts = self.tuples(p);
        if x.len() != ts.len() {
            return Err(Error::Invalid(format!(
                "degree {p} unit cochain has {} components, expected {}",
                x.len(),
                ts.len()
            )));
        }
        for (i, u) in x.iter().enumerate() {
            if u.vars() != self.space.vars() || !self.units[p][i].contains(u) {
                return Err(Error::NotInvertible(format!("{u} is not a unit section on U_{:?}", ts[i])));
            }
        }
        Ok(())
    }

    fn differential(&self, p: usize, x: &[UnitMonomial<S>], parity: usize) -> UnitCochain<S> {
        if p >= self.space.n {
            return Vec::new();
        }
        face_indices(&self.tuples, p)
            .iter()
            .map(|faces| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k % 2 == parity)
                    .fold(self.space.one(), |acc, (_, &f)| acc.mul(&x[f]))
            })
            .collect()
    }
}

impl<S: Semiring> PmComplex for UnitCech<S> {
    type Cochain = UnitCochain<S>;

    fn top_degree(&self) -> usize {
        self.space.n
    }

    fn zero(&self, n: usize) -> Self::Cochain {
        vec![self.space.one(); self.tuples(n).len()]
    }

    fn add(&self, _n: usize, a: &Self::Cochain, b: &Self::Cochain) -> Self::Cochain {
        a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
    }

    fn d_plus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain {
        self.differential(n, x, 0)
    }

    fn d_minus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain {
        self.differential(n, x, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pm_complex::chain_identity_at;
    use crate::semiring::{Boolean, MaxPlus, QMax};
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> MaxPlus<BigRational> {
        QMax::int(n)
    }

    fn ev(e: &[i64]) -> ExponentVector {
        ExponentVector::new(e.to_vec())
    }

    fn pn(n: usize) -> ProjectiveSpace<QMax> {
        ProjectiveSpace::new(QMax, n).unwrap()
    }

    #[test]
    fn twisting_cocycles() {
        let x = pn(2);
        let f = x.twisting_cocycle(2);
        assert_eq!(f.get(0, 1).unwrap().exp(), &ev(&[2, -2, 0]));
        assert_eq!(f.get(0, 2).unwrap().exp(), &ev(&[2, 0, -2]));
        assert_eq!(f.get(1, 2).unwrap().exp(), &ev(&[0, 2, -2]));
        assert_eq!(f.get(0, 2).unwrap(), &f.get(0, 1).unwrap().mul(f.get(1, 2).unwrap()));
        assert!(x.trivial_cocycle().entries().iter().all(UnitMonomial::is_one));
        assert_eq!(pn(1).twisting_cocycle(1).get(0, 1).unwrap().exp(), &ev(&[1, -1]));
    }

    #[test]
    fn classification_of_twists_and_constants() {
        for n in 1..=3 {
            let x = pn(n);
            for m in -3..=3 {
                let c = x.classify_cocycle(&x.twisting_cocycle(m)).unwrap();
                assert_eq!(c.degree, m);
                assert!(c.q.values().all(|v| *v == q(0)));
            }
        }
        // q01 = 2, q12 = 3, q02 = 5 is multiplicative in max-plus
        let x = pn(2);
        let mut map = BTreeMap::new();
        map.insert((0, 1), x.transition(0, 1, 1, q(2)).unwrap());
        map.insert((1, 2), x.transition(1, 2, 1, q(3)).unwrap());
        map.insert((0, 2), x.transition(0, 2, 1, q(5)).unwrap());
        let f = UnitCocycle::from_map(&x, &map).unwrap();
        assert_eq!(x.classify_cocycle(&f).unwrap().degree, 1);
        map.insert((0, 2), x.transition(0, 2, 1, q(4)).unwrap());
        assert!(matches!(UnitCocycle::from_map(&x, &map), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn coboundary_witnesses() {
        let x = pn(2);
        let f = x.twisting_cocycle(1);
        assert_eq!(
            x.coboundary_witness(&f, &f).unwrap(),
            CoboundaryOutcome::Witness {
                u: x.unit_complex().zero(0),
                v: x.unit_complex().zero(0)
            }
        );
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = x.random_unit_cocycle(&mut rng, 1, |r| q(r.random_range(-5..=5))).unwrap();
        assert!(x.coboundary_witness(&f, &g).unwrap().is_witness());
        assert_eq!(
            x.coboundary_witness(&f, &x.twisting_cocycle(2)).unwrap(),
            CoboundaryOutcome::Distinct { left: 1, right: 2 }
        );
    }

    #[test]
    fn trivializations() {
        let x = pn(2);
        for m in -2..=2 {
            let t = Trivialization::standard(&x, m);
            assert_eq!(x.cocycle_from_trivialization(&t).unwrap(), x.twisting_cocycle(m));
        }
        let t = Trivialization::standard(&x, 1);
        let g: Vec<_> = [3, -1, 4].iter().map(|&c| x.unit(q(c), ExponentVector::zeros(3)).unwrap()).collect();
        let t2 = t.rescale(&x, &g).unwrap();
        let f = x.cocycle_from_trivialization(&t).unwrap();
        let f2 = x.cocycle_from_trivialization(&t2).unwrap();
        assert_ne!(f, f2);
        assert!(x.verify_rescaling(&f, &f2, &g).unwrap());
        assert_eq!(x.classify_cocycle(&f2).unwrap().degree, 1);
        let bad = vec![x.one(); 3];
        assert!(Trivialization::new(&x, 1, bad).is_err());
    }

    #[test]
    fn tensor_and_picard() {
        let x = pn(3);
        let pic = PicardGroup::new(x.clone()).unwrap();
        let f = x.tensor_cocycles(&x.twisting_cocycle(1), &x.twisting_cocycle(-1)).unwrap();
        assert_eq!(pic.class_of(&f).unwrap(), 0);
        assert!(x.coboundary_witness(&f, &x.trivial_cocycle()).unwrap().is_witness());
        let pairs = vec![(x.twisting_cocycle(2), x.twisting_cocycle(-3))];
        assert!(pic.verify_homomorphism(&pairs).unwrap());
        let nat = crate::semiring::Naturals;
        assert!(ProjectiveSpace::new(nat, 1).is_err());
    }

    #[test]
    fn p1_example() {
        let x = pn(1);
        let c = x.structure_complex(0);
        let poly = |ts: &[(i64, i64)]| {
            LaurentPoly::from_terms(QMax, 2, ts.iter().map(|&(k, a)| (ev(&[-k, k]), q(a)))).unwrap()
        };
        let a = poly(&[(2, 3), (-1, 1), (0, 0)]);
        let b = poly(&[(1, 5), (-3, 2)]);
        let (u, v) = p1_witness(&a, &b);
        c.check_cochain(0, &u).unwrap();
        c.check_cochain(0, &v).unwrap();
        assert!(rho_related(&c, 1, &vec![a.clone()], &vec![b], Some((&u, &v))).unwrap());
        let w = c.vanishing_witness(1, &[a]).unwrap();
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn vanishing_on_sampled_cocycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let coefs = [q(0), q(1), q(-2)];
        for n in 1..=3 {
            let c = pn(n).structure_complex(0);
            for p in 1..=n {
                let mut nonzero = 0;
                for _ in 0..10 {
                    let t = c.random_cocycle(&mut rng, p, &coefs, 3, 2).unwrap();
                    assert!(is_cocycle(&c, p, &t));
                    nonzero += usize::from(t.iter().any(|x| !x.is_zero()));
                    let u = c.vanishing_witness(p, &t).unwrap();
                    assert!(rho_related(&c, p, &t, &c.zero(p), Some((&u, &u))).unwrap());
                }
                assert!(nonzero >= 5, "n={n} p={p}: {nonzero}");
            }
        }
    }

    #[test]
    fn non_cocycle_rejected() {
        let c = pn(2).structure_complex(0);
        let mut t = c.zero(1);
        t[0] = LaurentPoly::one(QMax, 3);
        assert!(matches!(c.vanishing_witness(1, &t), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn chain_identity_on_random_cochains() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = ProjectiveSpace::new(Boolean, 3).unwrap().structure_complex(1);
        for p in 0..=3 {
            for _ in 0..20 {
                let x = c.random_cochain(&mut rng, p, &[true], 3, 2);
                c.check_cochain(p, &x).unwrap();
                assert!(chain_identity_at(&c, p, &x));
            }
        }
    }

    #[test]
    fn global_sections_are_constants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = pn(2).structure_complex(0);
        let iso = c.global_sections().unwrap();
        let coefs = [q(0), q(3)];
        let zs: Vec<_> = (0..5).map(|_| c.random_cocycle(&mut rng, 0, &coefs, 4, 2).unwrap()).collect();
        assert!(iso.verify(&[q(0), q(-1), QMax.zero()], &zs).unwrap());
    }
}
