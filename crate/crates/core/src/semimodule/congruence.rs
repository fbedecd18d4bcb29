use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{FiniteSemimodule, SemimoduleHom, SemimoduleOps};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// An equivalence on `0..size` stored as the least member of each class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    rep: Vec<usize>,
}

impl Congruence {
    pub fn identity(size: usize) -> Self {
        Congruence {
            rep: (0..size).collect(),
        }
    }

    pub fn total(size: usize) -> Self {
        Congruence { rep: vec![0; size] }
    }

    pub(crate) fn from_union_find(uf: &mut UnionFind) -> Self {
        Congruence {
            rep: (0..uf.len()).map(|i| uf.find(i)).collect(),
        }
    }

    /// Builds the partition of a relation and checks that it is an
    /// equivalence compatible with the module operations.
    pub fn from_relation<M: SemimoduleOps + ?Sized>(
        m: &M,
        related: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = m.size();
        let mut rep = vec![usize::MAX; n];
        for a in 0..n {
            if rep[a] != usize::MAX {
                continue;
            }
            if !related(a, a) {
                return Err(Error::Invalid(format!("relation is not reflexive at {a}")));
            }
            for b in a..n {
                if related(a, b) {
                    if rep[b] != usize::MAX {
                        return Err(Error::Invalid(format!(
                            "relation is not transitive: {a} ~ {b} but {b} already lies in the class of {}",
                            rep[b]
                        )));
                    }
                    rep[b] = a;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let same = rep[a] == rep[b];
                if same != related(a, b) {
                    return Err(Error::Invalid(format!(
                        "relation is not an equivalence at ({a}, {b})"
                    )));
                }
            }
        }
        let c = Congruence { rep };
        c.check_compatible(m)?;
        Ok(c)
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn representative(&self, a: usize) -> usize {
        self.rep[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    /// Class representatives in increasing order.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.rep.len()).filter(|&a| self.rep[a] == a).collect()
    }

    pub fn class_count(&self) -> usize {
        self.representatives().len()
    }

    pub fn class_of(&self, a: usize) -> Vec<usize> {
        (0..self.rep.len()).filter(|&b| self.rep[b] == self.rep[a]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rep.iter().enumerate().all(|(i, &r)| i == r)
    }

    /// Every pair of `self` is also related in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.rep.len()).all(|a| other.related(a, self.rep[a]))
    }

    /// Checks closure under `+c` and `r·`.
    pub fn check_compatible<M: SemimoduleOps + ?Sized>(&self, m: &M) -> Result<()> {
        if self.rep.len() != m.size() {
            return Err(Error::Invalid("congruence and module sizes differ".into()));
        }
        for a in 0..m.size() {
            let b = self.rep[a];
            if a == b {
                continue;
            }
            for c in 0..m.size() {
                if !self.related(m.add(a, c), m.add(b, c)) {
                    return Err(Error::Invalid(format!(
                        "{a} ~ {b} but {a} + {c} and {b} + {c} are not related"
                    )));
                }
            }
            for r in 0..m.ring().size() {
                if !self.related(m.act(r, a), m.act(r, b)) {
                    return Err(Error::Invalid(format!(
                        "{a} ~ {b} but {r}·{a} and {r}·{b} are not related"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The least congruence containing `pairs`.
///
/// Only pairs that actually merge two classes are propagated: every related
/// pair is connected by a chain of merging pairs, and translating or scaling
/// the chain stays inside the relation.
pub fn congruence_closure<M: SemimoduleOps + ?Sized>(
    m: &M,
    pairs: &[(usize, usize)],
) -> Result<Congruence> {
    let n = m.size();
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::Invalid(format!("pair ({a}, {b}) out of range")));
    }
    let gens = m.additive_generators();
    let scalars = m.ring().size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((a, b)) = work.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for &g in &gens {
            work.push((m.add(a, g), m.add(b, g)));
        }
        for r in 0..scalars {
            work.push((m.act(r, a), m.act(r, b)));
        }
    }
    Ok(Congruence::from_union_find(&mut uf))
}

/// `M / C` with classes numbered by increasing representative, together with
/// the projection.
pub fn quotient<M: SemimoduleOps + ?Sized>(
    m: &M,
    c: &Congruence,
) -> Result<(FiniteSemimodule, SemimoduleHom)> {
    if c.size() != m.size() {
        return Err(Error::Invalid("congruence and module sizes differ".into()));
    }
    let reps = c.representatives();
    let mut class = vec![0; m.size()];
    for a in 0..m.size() {
        class[a] = reps.binary_search(&c.representative(a)).expect("representative");
    }
    let k = reps.len();
    let add = (0..k)
        .map(|i| (0..k).map(|j| class[m.add(reps[i], reps[j])]).collect())
        .collect();
    let act = (0..m.ring().size())
        .map(|r| (0..k).map(|i| class[m.act(r, reps[i])]).collect())
        .collect();
    let q = FiniteSemimodule::from_tables_unchecked(m.ring().clone(), k, class[m.zero()], add, act);
    let proj = SemimoduleHom::from_map(class, k);
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semimodule::tests::boolean;
    use crate::semiring::SemiringTable;
    use alloc::sync::Arc;

    #[test]
    fn empty_and_trivial_pairs() {
        let m = FiniteSemimodule::free(boolean(), 2).unwrap();
        assert!(congruence_closure(&m, &[]).unwrap().is_identity());
        assert!(congruence_closure(&m, &[(0, 0)]).unwrap().is_identity());
    }

    #[test]
    fn boolean_square_collapse() {
        let m = FiniteSemimodule::free(boolean(), 2).unwrap();
        // (1,0) = 1, (0,1) = 2, (1,1) = 3
        let c = congruence_closure(&m, &[(1, 2)]).unwrap();
        assert_eq!(c.representatives(), [0, 1]);
        assert!(c.related(1, 3) && c.related(2, 3));
        let (q, proj) = quotient(&m, &c).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(proj.map(), [0, 1, 1, 1]);
        let b = FiniteSemimodule::regular(boolean());
        assert_eq!(q, b);
        assert!(SemimoduleHom::new(&m, &q, proj.map().to_vec()).is_ok());
    }

    #[test]
    fn identity_and_total_quotients() {
        let m = FiniteSemimodule::free(Arc::new(SemiringTable::chain3()), 2).unwrap();
        let (q, _) = quotient(&m, &Congruence::identity(m.size())).unwrap();
        assert_eq!(q, m);
        let (q, _) = quotient(&m, &Congruence::total(m.size())).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn from_relation_checks_compatibility() {
        let m = FiniteSemimodule::free(boolean(), 2).unwrap();
        // {1, 2} merged alone is an equivalence but not a congruence
        let r = Congruence::from_relation(&m, |a, b| a == b || (a != 0 && b != 0 && a != 3 && b != 3));
        assert!(r.is_err());
        let r = Congruence::from_relation(&m, |a, b| (a == 0) == (b == 0));
        assert!(r.is_ok());
    }
}
