//! Cochain complexes with paired differentials `d⁺, d⁻`, their cocycles,
//! the cohomology congruence `ρⁿ` and maps induced by ±-morphisms.
//!
//! A complex lives in degrees `0..=top`; `X⁻¹` and everything above `top`
//! are the zero module.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::semimodule::{quotient, Congruence, FiniteSemimodule, SemimoduleHom, SemimoduleOps};
use crate::semiring::{Semiring, SemiringTable};
use crate::{Error, Result};

/// Operations every ± complex provides, finite or symbolic.
pub trait PmComplex {
    type Cochain: Clone + PartialEq + Debug;

    /// Highest degree with a possibly nonzero space.
    fn top_degree(&self) -> usize;
    fn zero(&self, n: usize) -> Self::Cochain;
    fn add(&self, n: usize, a: &Self::Cochain, b: &Self::Cochain) -> Self::Cochain;
    /// `d⁺ₙ : Xⁿ → Xⁿ⁺¹`.
    fn d_plus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain;
    /// `d⁻ₙ : Xⁿ → Xⁿ⁺¹`.
    fn d_minus(&self, n: usize, x: &Self::Cochain) -> Self::Cochain;
}

/// Both sides of `d⁺d⁺ + d⁻d⁻ = d⁻d⁺ + d⁺d⁻` on `x ∈ Xⁿ`.
pub fn chain_identity_sides<C: PmComplex + ?Sized>(
    c: &C,
    n: usize,
    x: &C::Cochain,
) -> (C::Cochain, C::Cochain) {
    let (p, m) = (c.d_plus(n, x), c.d_minus(n, x));
    let lhs = c.add(n + 2, &c.d_plus(n + 1, &p), &c.d_minus(n + 1, &m));
    let rhs = c.add(n + 2, &c.d_minus(n + 1, &p), &c.d_plus(n + 1, &m));
    (lhs, rhs)
}

pub fn chain_identity_at<C: PmComplex + ?Sized>(c: &C, n: usize, x: &C::Cochain) -> bool {
    let (l, r) = chain_identity_sides(c, n, x);
    l == r
}

/// Result of checking the chain identity on a set of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck<T> {
    pub tested: usize,
    pub counterexample: Option<T>,
}

impl<T> ChainCheck<T> {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn check_chain_identity_on<'a, C, I>(c: &C, n: usize, elements: I) -> ChainCheck<C::Cochain>
where
    C: PmComplex + ?Sized,
    I: IntoIterator<Item = &'a C::Cochain>,
    C::Cochain: 'a,
{
    let mut tested = 0;
    for x in elements {
        tested += 1;
        if !chain_identity_at(c, n, x) {
            return ChainCheck {
                tested,
                counterexample: Some(x.clone()),
            };
        }
    }
    ChainCheck {
        tested,
        counterexample: None,
    }
}

/// `d⁺ₙx = d⁻ₙx`.
pub fn is_cocycle<C: PmComplex + ?Sized>(c: &C, n: usize, x: &C::Cochain) -> bool {
    c.d_plus(n, x) == c.d_minus(n, x)
}

/// Verifies `x + d⁺u + d⁻v = y + d⁺v + d⁻u` for cocycles `x, y ∈ Zⁿ`.
///
/// `witness = None` stands for `u = v = 0`, the only choice when `n = 0`.
pub fn rho_related<C: PmComplex + ?Sized>(
    c: &C,
    n: usize,
    x: &C::Cochain,
    y: &C::Cochain,
    witness: Option<(&C::Cochain, &C::Cochain)>,
) -> Result<bool> {
    for (name, z) in [("x", x), ("y", y)] {
        if !is_cocycle(c, n, z) {
            return Err(Error::NotCocycle(format!("{name} is not a cocycle in degree {n}")));
        }
    }
    let Some((u, v)) = witness else {
        return Ok(x == y);
    };
    if n == 0 {
        return Err(Error::Invalid("degree 0 has no witnesses".into()));
    }
    let lhs = c.add(n, x, &c.add(n, &c.d_plus(n - 1, u), &c.d_minus(n - 1, v)));
    let rhs = c.add(n, y, &c.add(n, &c.d_plus(n - 1, v), &c.d_minus(n - 1, u)));
    Ok(lhs == rhs)
}

/// A ± complex of finite semimodules over a finite semiring.
#[derive(Clone, Debug)]
pub struct FinitePmComplex {
    ring: Arc<SemiringTable>,
    spaces: Vec<FiniteSemimodule>,
    d_plus: Vec<SemimoduleHom>,
    d_minus: Vec<SemimoduleHom>,
}

impl PmComplex for FinitePmComplex {
    type Cochain = usize;

    fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }
    fn zero(&self, n: usize) -> usize {
        self.spaces.get(n).map_or(0, |s| s.zero())
    }
    fn add(&self, n: usize, a: &usize, b: &usize) -> usize {
        self.spaces.get(n).map_or(0, |s| s.add(*a, *b))
    }
    fn d_plus(&self, n: usize, x: &usize) -> usize {
        self.d_plus.get(n).map_or(0, |d| d.apply(*x))
    }
    fn d_minus(&self, n: usize, x: &usize) -> usize {
        self.d_minus.get(n).map_or(0, |d| d.apply(*x))
    }
}

/// `Hⁿ = Zⁿ/ρⁿ` of a finite complex.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    /// Element indices of `Zⁿ ⊆ Xⁿ`, increasing.
    pub cocycles: Vec<usize>,
    /// Class index in `module` of each cocycle.
    pub class: Vec<usize>,
    /// `(u, v)` relating each cocycle to the least member of its class;
    /// `None` for class representatives and in degree 0.
    pub witness: Vec<Option<(usize, usize)>>,
    pub module: FiniteSemimodule,
}

impl Cohomology {
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.cocycles.binary_search(&x).ok().map(|i| self.class[i])
    }

    /// Least cocycle in each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.module.size()];
        for (i, &c) in self.class.iter().enumerate() {
            reps[c] = reps[c].min(self.cocycles[i]);
        }
        reps
    }

    pub fn is_zero(&self) -> bool {
        self.module.size() == 1
    }
}

impl FinitePmComplex {
    /// Validates every differential as a homomorphism and the chain identity
    /// exhaustively in every degree.
    pub fn new(
        spaces: Vec<FiniteSemimodule>,
        d_plus: Vec<SemimoduleHom>,
        d_minus: Vec<SemimoduleHom>,
    ) -> Result<Self> {
        let c = Self::from_parts(spaces, d_plus, d_minus)?;
        for n in 0..c.spaces.len() {
            let check = c.check_chain_identity(n);
            if let Some(x) = check.counterexample {
                let (l, r) = chain_identity_sides(&c, n, &x);
                return Err(Error::ChainIdentity {
                    degree: n,
                    detail: format!("element {x}: {l} != {r}"),
                });
            }
        }
        Ok(c)
    }

    /// Validates the differentials as homomorphisms but not the chain identity.
    pub fn from_parts(
        spaces: Vec<FiniteSemimodule>,
        d_plus: Vec<SemimoduleHom>,
        d_minus: Vec<SemimoduleHom>,
    ) -> Result<Self> {
        let Some(first) = spaces.first() else {
            return Err(Error::Invalid("a complex needs at least one space".into()));
        };
        let ring = first.ring().clone();
        if spaces.iter().any(|s| !s.ring().same_as(&ring)) {
            return Err(Error::Incompatible("spaces over different rings".into()));
        }
        let k = spaces.len() - 1;
        if d_plus.len() != k || d_minus.len() != k {
            return Err(Error::Invalid(format!(
                "{} spaces need {k} differentials of each sign",
                spaces.len()
            )));
        }
        for n in 0..k {
            d_plus[n].validate(&spaces[n], &spaces[n + 1])?;
            d_minus[n].validate(&spaces[n], &spaces[n + 1])?;
        }
        Ok(FinitePmComplex {
            ring,
            spaces,
            d_plus,
            d_minus,
        })
    }

    pub fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }

    pub fn space(&self, n: usize) -> Option<&FiniteSemimodule> {
        self.spaces.get(n)
    }

    pub fn spaces(&self) -> &[FiniteSemimodule] {
        &self.spaces
    }

    pub fn d_plus_hom(&self, n: usize) -> Option<&SemimoduleHom> {
        self.d_plus.get(n)
    }

    pub fn d_minus_hom(&self, n: usize) -> Option<&SemimoduleHom> {
        self.d_minus.get(n)
    }

    pub fn space_size(&self, n: usize) -> usize {
        self.spaces.get(n).map_or(1, |s| s.size())
    }

    /// Exhaustive check in degree `n`; the first failing element is reported.
    pub fn check_chain_identity(&self, n: usize) -> ChainCheck<usize> {
        let all: Vec<usize> = (0..self.space_size(n)).collect();
        check_chain_identity_on(self, n, &all)
    }

    pub fn cocycles(&self, n: usize) -> Vec<usize> {
        (0..self.space_size(n)).filter(|x| is_cocycle(self, n, x)).collect()
    }

    /// `Hⁿ` by exhaustive witness search. The relation found is checked to
    /// be a congruence before the quotient is taken.
    pub fn cohomology(&self, n: usize, bound: usize) -> Result<Cohomology> {
        let zero_module = || FiniteSemimodule::zero_module(self.ring.clone());
        let Some(space) = self.spaces.get(n) else {
            return Ok(Cohomology {
                degree: n,
                cocycles: vec![0],
                class: vec![0],
                witness: vec![None],
                module: zero_module(),
            });
        };
        let cocycles = self.cocycles(n);
        let (z, _) = space.submodule(&cocycles)?;
        let prev = if n == 0 { 1 } else { self.space_size(n - 1) };
        let pairs = (prev as u128) * (prev as u128);
        if pairs > bound as u128 {
            return Err(Error::SizeGuard {
                what: format!("witness pairs in degree {n}"),
                needed: pairs,
                bound,
            });
        }
        // distinct (d⁺u + d⁻v, d⁺v + d⁻u), each with its least (u, v)
        let mut shifts: BTreeMap<(usize, usize), Option<(usize, usize)>> = BTreeMap::new();
        if n == 0 {
            shifts.insert((space.zero(), space.zero()), None);
        } else {
            for u in 0..prev {
                for v in 0..prev {
                    let a = space.add(self.d_plus(n - 1, &u), self.d_minus(n - 1, &v));
                    let b = space.add(self.d_plus(n - 1, &v), self.d_minus(n - 1, &u));
                    shifts.entry((a, b)).or_insert(Some((u, v)));
                }
            }
        }
        let k = cocycles.len();
        let mut rel: Vec<Vec<Option<Option<(usize, usize)>>>> = vec![vec![None; k]; k];
        let mut by_value: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&(a, b), &w) in &shifts {
            by_value.clear();
            for (i, &x) in cocycles.iter().enumerate() {
                by_value.entry(space.add(x, a)).or_default().push(i);
            }
            for (j, &y) in cocycles.iter().enumerate() {
                if let Some(is) = by_value.get(&space.add(y, b)) {
                    for &i in is {
                        let slot = &mut rel[i][j];
                        if slot.is_none_or(|old| w < old) {
                            *slot = Some(w);
                        }
                    }
                }
            }
        }
        let congruence = Congruence::from_relation(&z, |i, j| rel[i][j].is_some()).map_err(|e| {
            Error::RhoNotCongruence {
                degree: n,
                detail: format!("{e}"),
            }
        })?;
        let (module, proj) = quotient(&z, &congruence)?;
        let witness = (0..k)
            .map(|i| {
                let r = congruence.representative(i);
                if r == i {
                    None
                } else {
                    rel[i][r].expect("related")
                }
            })
            .collect();
        Ok(Cohomology {
            degree: n,
            cocycles,
            class: proj.map().to_vec(),
            witness,
            module,
        })
    }
}

/// Per-degree homomorphisms commuting with both differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmMorphism {
    maps: Vec<SemimoduleHom>,
}

impl PmMorphism {
    pub fn new(
        source: &FinitePmComplex,
        target: &FinitePmComplex,
        maps: Vec<SemimoduleHom>,
    ) -> Result<Self> {
        let f = PmMorphism { maps };
        f.validate(source, target)?;
        Ok(f)
    }

    pub fn identity(c: &FinitePmComplex) -> Self {
        PmMorphism {
            maps: c.spaces.iter().map(|s| SemimoduleHom::identity(s.size())).collect(),
        }
    }

    pub fn zero(source: &FinitePmComplex, target: &FinitePmComplex) -> Self {
        PmMorphism {
            maps: source
                .spaces
                .iter()
                .zip(&target.spaces)
                .map(|(s, t)| SemimoduleHom::zero(s, t))
                .collect(),
        }
    }

    pub fn maps(&self) -> &[SemimoduleHom] {
        &self.maps
    }

    pub fn at(&self, n: usize) -> &SemimoduleHom {
        &self.maps[n]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PmMorphism) -> PmMorphism {
        PmMorphism {
            maps: self.maps.iter().zip(&other.maps).map(|(f, g)| f.then(g)).collect(),
        }
    }

    pub fn validate(&self, source: &FinitePmComplex, target: &FinitePmComplex) -> Result<()> {
        let len = source.spaces.len();
        if target.spaces.len() != len || self.maps.len() != len {
            return Err(Error::NotPmMorphism {
                degree: 0,
                detail: "complexes and morphism have different lengths".into(),
            });
        }
        for n in 0..len {
            self.maps[n]
                .validate(&source.spaces[n], &target.spaces[n])
                .map_err(|e| Error::NotPmMorphism {
                    degree: n,
                    detail: format!("{e}"),
                })?;
        }
        for n in 0..len - 1 {
            for x in 0..source.space_size(n) {
                let fx = self.maps[n].apply(x);
                let plus = self.maps[n + 1].apply(source.d_plus(n, &x)) == target.d_plus(n, &fx);
                let minus = self.maps[n + 1].apply(source.d_minus(n, &x)) == target.d_minus(n, &fx);
                if !plus || !minus {
                    let sign = if plus { "-" } else { "+" };
                    return Err(Error::NotPmMorphism {
                        degree: n,
                        detail: format!("f∘d{sign} != d{sign}∘f at element {x}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// `Hⁿ(f)` on class indices, with both cohomologies.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: Cohomology,
    pub target: Cohomology,
    pub map: Vec<usize>,
}

/// `[x] ↦ [fⁿ(x)]`; well-definedness is re-checked on every cocycle.
pub fn induced_map(
    f: &PmMorphism,
    source: &FinitePmComplex,
    target: &FinitePmComplex,
    n: usize,
    bound: usize,
) -> Result<InducedMap> {
    f.validate(source, target)?;
    let hs = source.cohomology(n, bound)?;
    let ht = target.cohomology(n, bound)?;
    let mut map = vec![usize::MAX; hs.module.size()];
    for (i, &x) in hs.cocycles.iter().enumerate() {
        let fx = if n < f.maps.len() { f.maps[n].apply(x) } else { 0 };
        let img = ht.class_of(fx).ok_or_else(|| Error::NotPmMorphism {
            degree: n,
            detail: format!("image of cocycle {x} is not a cocycle"),
        })?;
        let slot = &mut map[hs.class[i]];
        if *slot == usize::MAX {
            *slot = img;
        } else if *slot != img {
            return Err(Error::NotPmMorphism {
                degree: n,
                detail: format!("class of {x} maps to two classes"),
            });
        }
    }
    Ok(InducedMap {
        source: hs,
        target: ht,
        map,
    })
}
