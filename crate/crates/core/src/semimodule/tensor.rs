use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    congruence_closure, enumerate_homs, quotient, Congruence, FiniteSemimodule, FreeModule,
    SemimoduleHom, SemimoduleOps,
};
use crate::semiring::{AnySemiring, Semiring};
use crate::{Error, Result};

/// `M / ∼` for the cancellation relation `a ∼ b ⟺ ∃c, a + c = b + c`.
#[derive(Clone, Debug)]
pub struct GolanQuotient {
    pub congruence: Congruence,
    pub quotient: FiniteSemimodule,
    pub projection: SemimoduleHom,
    /// For every non-representative `a`: `(a, rep(a), c)` with `a + c = rep(a) + c`.
    pub witnesses: Vec<(usize, usize, usize)>,
}

impl GolanQuotient {
    pub fn is_trivial(&self) -> bool {
        self.quotient.size() == 1
    }
}

fn cancellation_witness(m: &FiniteSemimodule, a: usize, b: usize) -> Option<usize> {
    (0..m.size()).find(|&c| m.add(a, c) == m.add(b, c))
}

/// The cancellation congruence, by exhaustive witness search.
pub fn golan_congruence(m: &FiniteSemimodule) -> Result<Congruence> {
    Congruence::from_relation(m, |a, b| cancellation_witness(m, a, b).is_some())
}

pub fn golan_tensor_collapse(m: &FiniteSemimodule) -> Result<GolanQuotient> {
    let congruence = golan_congruence(m)?;
    let witnesses = (0..m.size())
        .filter(|&a| congruence.representative(a) != a)
        .map(|a| {
            let r = congruence.representative(a);
            (a, r, cancellation_witness(m, a, r).expect("related elements have a witness"))
        })
        .collect();
    let (quotient, projection) = quotient(m, &congruence)?;
    Ok(GolanQuotient {
        congruence,
        quotient,
        projection,
        witnesses,
    })
}

/// A cancellation witness in a semiring viewed as a module over itself:
/// `a + b` when addition is idempotent, `0` when `a = b`.
pub fn golan_witness<S: Semiring>(ring: &S, a: &S::Elem, b: &S::Elem) -> Option<S::Elem> {
    let c = if a == b {
        ring.zero()
    } else if ring.is_idempotent() {
        ring.add(a, b)
    } else {
        return None;
    };
    (ring.add(a, &c) == ring.add(b, &c)).then_some(c)
}

/// Outcome of the cancellation quotient on a built-in semiring.
#[derive(Clone, Debug)]
pub enum GolanSymbolic {
    /// Idempotent: `c = a + b` relates every pair.
    Collapsed,
    /// Additively cancellative: the quotient is the module itself.
    Cancellative,
    Finite(GolanQuotient),
}

impl GolanSymbolic {
    pub fn is_trivial(&self) -> bool {
        match self {
            GolanSymbolic::Collapsed => true,
            GolanSymbolic::Cancellative => false,
            GolanSymbolic::Finite(q) => q.is_trivial(),
        }
    }
}

pub fn golan_tensor_symbolic(s: &AnySemiring) -> Result<GolanSymbolic> {
    Ok(match s {
        AnySemiring::Table(t) => {
            GolanSymbolic::Finite(golan_tensor_collapse(&FiniteSemimodule::regular(t.clone()))?)
        }
        AnySemiring::Naturals => GolanSymbolic::Cancellative,
        _ if s.is_idempotent() => GolanSymbolic::Collapsed,
        _ => return Err(Error::Unsupported(format!("cancellation quotient of {}", s.name()))),
    })
}

/// The tensor product as a quotient of the free module on `M × N`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: FiniteSemimodule,
    pub free: FreeModule,
    pub congruence: Congruence,
    /// `pair_class[m][n]` is the class of `m ⊗ n`.
    pub pair_class: Vec<Vec<usize>>,
}

pub fn pr_tensor(m: &FiniteSemimodule, n: &FiniteSemimodule, bound: usize) -> Result<Tensor> {
    if !m.ring().same_as(n.ring()) {
        return Err(Error::Incompatible("tensor factors over different rings".into()));
    }
    let ring = m.ring().clone();
    let (sm, sn) = (m.size(), n.size());
    let free = FreeModule::new(ring.clone(), sm * sn, bound)?;
    let e = |a: usize, b: usize| free.basis_multiple(a + sm * b, ring.one());
    let mut pairs = Vec::new();
    for a in 0..sm {
        for b in 0..sn {
            for a2 in 0..sm {
                pairs.push((e(m.add(a, a2), b), free.add(e(a, b), e(a2, b))));
            }
            for b2 in 0..sn {
                pairs.push((e(a, n.add(b, b2)), free.add(e(a, b), e(a, b2))));
            }
            for r in 0..ring.size() {
                let scaled = free.act(r, e(a, b));
                pairs.push((e(m.act(r, a), b), scaled));
                pairs.push((e(a, n.act(r, b)), scaled));
            }
        }
    }
    for b in 0..sn {
        pairs.push((e(m.zero(), b), free.zero()));
    }
    for a in 0..sm {
        pairs.push((e(a, n.zero()), free.zero()));
    }
    let congruence = congruence_closure(&free, &pairs)?;
    let (module, proj) = quotient(&free, &congruence)?;
    let pair_class = (0..sm)
        .map(|a| (0..sn).map(|b| proj.apply(e(a, b))).collect())
        .collect();
    Ok(Tensor {
        module,
        free,
        congruence,
        pair_class,
    })
}

/// `Hom(M, N)` with pointwise operations; element `i` is `maps[i]`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FiniteSemimodule,
    pub maps: Vec<SemimoduleHom>,
}

impl HomModule {
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|h| h.map().cmp(map)).ok()
    }
}

pub fn hom_semimodule(m: &FiniteSemimodule, n: &FiniteSemimodule, bound: usize) -> Result<HomModule> {
    let maps = enumerate_homs(m, n, bound)?;
    let index: BTreeMap<&[usize], usize> =
        maps.iter().enumerate().map(|(i, h)| (h.map(), i)).collect();
    let look = |v: &Vec<usize>| -> Result<usize> {
        index
            .get(v.as_slice())
            .copied()
            .ok_or_else(|| Error::NotHomomorphism("pointwise operation left Hom".into()))
    };
    let k = maps.len();
    let mut add = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let v: Vec<usize> = (0..m.size())
                .map(|x| n.add(maps[i].apply(x), maps[j].apply(x)))
                .collect();
            add[i][j] = look(&v)?;
        }
    }
    let mut act = vec![vec![0; k]; m.ring().size()];
    for (r, row) in act.iter_mut().enumerate() {
        for i in 0..k {
            let v: Vec<usize> = (0..m.size()).map(|x| n.act(r, maps[i].apply(x))).collect();
            row[i] = look(&v)?;
        }
    }
    let zero = look(&vec![n.zero(); m.size()])?;
    let module = FiniteSemimodule::new(m.ring().clone(), k, zero, add, act)?;
    Ok(HomModule { module, maps })
}

/// The map `Hom(M ⊗ N, P) → Hom(M, Hom(N, P))`, `h ↦ (m ↦ (n ↦ h(m ⊗ n)))`.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub lhs: usize,
    pub rhs: usize,
    /// Image index of each left-hand hom; `None` marks a counterexample.
    pub bijection: Vec<Option<usize>>,
}

impl Adjunction {
    pub fn holds(&self) -> bool {
        if self.lhs != self.rhs || self.bijection.iter().any(Option::is_none) {
            return false;
        }
        let mut seen = vec![false; self.rhs];
        self.bijection
            .iter()
            .flatten()
            .all(|&j| !core::mem::replace(&mut seen[j], true))
    }
}

pub fn verify_hom_tensor_adjunction(
    m: &FiniteSemimodule,
    n: &FiniteSemimodule,
    p: &FiniteSemimodule,
    bound: usize,
) -> Result<Adjunction> {
    let t = pr_tensor(m, n, bound)?;
    let lhs = enumerate_homs(&t.module, p, bound)?;
    let hnp = hom_semimodule(n, p, bound)?;
    let rhs = enumerate_homs(m, &hnp.module, bound)?;
    let bijection = lhs
        .iter()
        .map(|h| {
            let curried: Option<Vec<usize>> = (0..m.size())
                .map(|a| {
                    let fa: Vec<usize> = (0..n.size()).map(|b| h.apply(t.pair_class[a][b])).collect();
                    hnp.index_of(&fa)
                })
                .collect();
            let curried = curried?;
            rhs.binary_search_by(|g| g.map().cmp(&curried)).ok()
        })
        .collect();
    Ok(Adjunction {
        lhs: lhs.len(),
        rhs: rhs.len(),
        bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::find_isomorphism;
    use crate::semimodule::tests::boolean;
    use crate::semiring::{Boolean, Naturals, SemiringTable, ZMax};
    use alloc::sync::Arc;

    #[test]
    fn golan_collapses_idempotent_modules() {
        let b = FiniteSemimodule::regular(boolean());
        let g = golan_tensor_collapse(&b).unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.witnesses, [(1, 0, 1)]);
        let b2 = FiniteSemimodule::free(boolean(), 2).unwrap();
        assert!(golan_tensor_collapse(&b2).unwrap().is_trivial());
    }

    #[test]
    fn golan_on_rings_is_identity() {
        let z3 = FiniteSemimodule::regular(Arc::new(SemiringTable::integers_mod(3).unwrap()));
        let g = golan_tensor_collapse(&z3).unwrap();
        assert_eq!(g.quotient.size(), 3);
    }

    #[test]
    fn truncated_naturals_collapse() {
        // the cap absorbs every element, so it witnesses every pair
        let t = FiniteSemimodule::regular(Arc::new(SemiringTable::truncated_naturals(3).unwrap()));
        let g = golan_tensor_collapse(&t).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn symbolic_witnesses() {
        let (a, b) = (ZMax::int(-4), ZMax::int(7));
        let c = golan_witness(&ZMax, &a, &b).unwrap();
        assert_eq!(ZMax.add(&a, &c), ZMax.add(&b, &c));
        assert_eq!(golan_witness(&Boolean, &true, &false), Some(true));
        assert_eq!(golan_witness(&Naturals, &Naturals::elem(1), &Naturals::elem(2)), None);
        assert!(golan_tensor_symbolic(&AnySemiring::ZMax).unwrap().is_trivial());
        assert!(!golan_tensor_symbolic(&AnySemiring::Naturals).unwrap().is_trivial());
    }

    #[test]
    fn tensor_unit_laws() {
        let r = FiniteSemimodule::regular(boolean());
        let t = pr_tensor(&r, &r, 4096).unwrap();
        assert!(find_isomorphism(&t.module, &r, 4096).unwrap().is_some());
        let b2 = FiniteSemimodule::free(boolean(), 2).unwrap();
        let t = pr_tensor(&r, &b2, 4096).unwrap();
        assert!(find_isomorphism(&t.module, &b2, 4096).unwrap().is_some());
        let z = FiniteSemimodule::zero_module(boolean());
        assert_eq!(pr_tensor(&z, &b2, 4096).unwrap().module.size(), 1);
    }

    #[test]
    fn tensor_guard() {
        let b2 = FiniteSemimodule::free(boolean(), 2).unwrap();
        let b3 = FiniteSemimodule::free(boolean(), 3).unwrap();
        assert!(matches!(pr_tensor(&b2, &b3, 4096), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn hom_modules() {
        let b = FiniteSemimodule::regular(boolean());
        let b2 = FiniteSemimodule::free(boolean(), 2).unwrap();
        assert_eq!(hom_semimodule(&b, &b, 4096).unwrap().module.size(), 2);
        assert_eq!(hom_semimodule(&b2, &b, 4096).unwrap().module.size(), 4);
        let z = FiniteSemimodule::zero_module(boolean());
        assert_eq!(hom_semimodule(&b2, &z, 4096).unwrap().module.size(), 1);
    }

    #[test]
    fn adjunction_small() {
        let b = FiniteSemimodule::regular(boolean());
        let b2 = FiniteSemimodule::free(boolean(), 2).unwrap();
        let adj = verify_hom_tensor_adjunction(&b, &b2, &b, 4096).unwrap();
        assert!(adj.holds());
        assert_eq!(adj.lhs, 4);
    }
}
