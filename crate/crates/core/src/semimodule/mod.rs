//! Finite semimodules over finite semirings, homomorphisms, congruences,
//! quotients, Hom-semimodules and the two tensor products.

mod congruence;
mod iso;
pub(crate) use self::iso::next_tuple;
mod tensor;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::semiring::{Semiring, SemiringTable};
use crate::{Error, Result};

pub use self::congruence::{congruence_closure, quotient, Congruence};
pub use self::iso::{
    enumerate_homs, extend_from_generators, find_isomorphism, generating_set, span,
};
pub use self::tensor::{
    golan_congruence, golan_tensor_collapse, golan_tensor_symbolic, golan_witness, hom_semimodule,
    verify_hom_tensor_adjunction, pr_tensor, Adjunction, GolanQuotient, GolanSymbolic, HomModule,
    Tensor,
};

/// Read access shared by tabulated and computed semimodules.
///
/// Elements are indices `0..size()`, scalars are indices into the ring table.
pub trait SemimoduleOps {
    fn ring(&self) -> &Arc<SemiringTable>;
    fn size(&self) -> usize;
    fn zero(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn act(&self, r: usize, a: usize) -> usize;

    /// Elements whose finite sums exhaust the module.
    fn additive_generators(&self) -> Vec<usize> {
        (0..self.size()).filter(|&a| a != self.zero()).collect()
    }

    fn sum(&self, items: &[usize]) -> usize {
        items.iter().fold(self.zero(), |acc, &x| self.add(acc, x))
    }
}

/// A semimodule with explicit addition and scalar-action tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemimodule {
    ring: Arc<SemiringTable>,
    size: usize,
    zero: usize,
    add: Vec<Vec<usize>>,
    act: Vec<Vec<usize>>,
}

impl SemimoduleOps for FiniteSemimodule {
    fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }
    fn size(&self) -> usize {
        self.size
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }
    fn act(&self, r: usize, a: usize) -> usize {
        self.act[r][a]
    }
}

/// Largest table-backed semimodule that [`FiniteSemimodule::product`] builds.
pub const TABLE_BOUND: usize = 1024;

pub(crate) fn checked_power(base: usize, exp: usize, bound: usize, what: &str) -> Result<usize> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc > bound as u128 {
            break;
        }
    }
    if acc > bound as u128 {
        let needed = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
        return Err(Error::SizeGuard {
            what: what.into(),
            needed,
            bound,
        });
    }
    Ok(acc as usize)
}

impl FiniteSemimodule {
    pub fn new(
        ring: Arc<SemiringTable>,
        size: usize,
        zero: usize,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let m = FiniteSemimodule {
            ring,
            size,
            zero,
            add,
            act,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_tables_unchecked(
        ring: Arc<SemiringTable>,
        size: usize,
        zero: usize,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
    ) -> Self {
        FiniteSemimodule {
            ring,
            size,
            zero,
            add,
            act,
        }
    }

    /// Tabulates any [`SemimoduleOps`] implementation.
    pub fn tabulate<M: SemimoduleOps + ?Sized>(m: &M) -> Self {
        let n = m.size();
        let r = m.ring().size();
        FiniteSemimodule {
            ring: m.ring().clone(),
            size: n,
            zero: m.zero(),
            add: (0..n).map(|a| (0..n).map(|b| m.add(a, b)).collect()).collect(),
            act: (0..r).map(|s| (0..n).map(|a| m.act(s, a)).collect()).collect(),
        }
    }

    /// `R` as a module over itself.
    pub fn regular(ring: Arc<SemiringTable>) -> Self {
        let add = ring.add_table().to_vec();
        let act = ring.mul_table().to_vec();
        let size = ring.size();
        let zero = ring.zero();
        FiniteSemimodule {
            ring,
            size,
            zero,
            add,
            act,
        }
    }

    /// `R^k`, tabulated; indices follow [`ProductLayout`].
    pub fn free(ring: Arc<SemiringTable>, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero_module(ring));
        }
        let r = Self::regular(ring);
        let factors = vec![&r; k];
        Ok(Self::product(&factors)?.0)
    }

    /// The one-element module.
    pub fn zero_module(ring: Arc<SemiringTable>) -> Self {
        let r = ring.size();
        FiniteSemimodule {
            ring,
            size: 1,
            zero: 0,
            add: vec![vec![0]],
            act: vec![vec![0]; r],
        }
    }

    /// Direct product with mixed-radix element indices.
    pub fn product(factors: &[&FiniteSemimodule]) -> Result<(Self, ProductLayout)> {
        Self::product_bounded(factors, TABLE_BOUND)
    }

    pub fn product_bounded(
        factors: &[&FiniteSemimodule],
        bound: usize,
    ) -> Result<(Self, ProductLayout)> {
        let Some(first) = factors.first() else {
            return Err(Error::Invalid(
                "empty product needs a scalar ring; use zero_module".into(),
            ));
        };
        let ring = first.ring.clone();
        if factors.iter().any(|f| !f.ring.same_as(&ring)) {
            return Err(Error::Incompatible("product factors over different rings".into()));
        }
        let layout = ProductLayout::new(factors.iter().map(|f| f.size).collect());
        let size = layout
            .total_checked(bound)
            .ok_or_else(|| Error::SizeGuard {
                what: "product semimodule".into(),
                needed: layout.radices.iter().map(|&r| r as u128).product(),
                bound,
            })?;
        let decoded: Vec<Vec<usize>> = (0..size).map(|i| layout.decode(i)).collect();
        let zero = layout.encode(&factors.iter().map(|f| f.zero).collect::<Vec<_>>());
        let mut add = vec![vec![0; size]; size];
        let mut buf = vec![0; factors.len()];
        for a in 0..size {
            for b in a..size {
                for (k, f) in factors.iter().enumerate() {
                    buf[k] = f.add[decoded[a][k]][decoded[b][k]];
                }
                let c = layout.encode(&buf);
                add[a][b] = c;
                add[b][a] = c;
            }
        }
        let act = (0..ring.size())
            .map(|r| {
                (0..size)
                    .map(|a| {
                        let v: Vec<usize> = factors
                            .iter()
                            .enumerate()
                            .map(|(k, f)| f.act[r][decoded[a][k]])
                            .collect();
                        layout.encode(&v)
                    })
                    .collect()
            })
            .collect();
        Ok((
            FiniteSemimodule {
                ring,
                size,
                zero,
                add,
                act,
            },
            layout,
        ))
    }

    /// The sub-semimodule on `elements`, which must be closed under the
    /// operations. Returns the submodule and its embedding.
    pub fn submodule(&self, elements: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.size];
        for (i, &e) in sorted.iter().enumerate() {
            if e >= self.size {
                return Err(Error::Invalid(format!("element {e} out of range")));
            }
            index[e] = i;
        }
        let look = |x: usize| -> Result<usize> {
            match index[x] {
                usize::MAX => Err(Error::Invalid(format!("subset not closed: {x} missing"))),
                i => Ok(i),
            }
        };
        let zero = look(self.zero)?;
        let n = sorted.len();
        let mut add = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                add[i][j] = look(self.add[sorted[i]][sorted[j]])?;
            }
        }
        let mut act = vec![vec![0; n]; self.ring.size()];
        for (r, row) in act.iter_mut().enumerate() {
            for i in 0..n {
                row[i] = look(self.act[r][sorted[i]])?;
            }
        }
        Ok((
            FiniteSemimodule {
                ring: self.ring.clone(),
                size: n,
                zero,
                add,
                act,
            },
            sorted,
        ))
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn act_table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|a| self.add[a][a] == a)
    }

    /// An element `t` with `a + t = t` for all `a`, if one exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&t| (0..self.size).all(|a| self.add[a][t] == t))
    }

    fn validate(&self) -> Result<()> {
        let n = self.size;
        let rs = self.ring.size();
        let ax = |msg: alloc::string::String| Err(Error::SemimoduleAxiom(msg));
        if n == 0 || self.zero >= n {
            return ax("empty carrier or zero out of range".into());
        }
        if self.add.len() != n || self.add.iter().any(|r| r.len() != n) {
            return ax(format!("add table is not {n}x{n}"));
        }
        if self.act.len() != rs || self.act.iter().any(|r| r.len() != n) {
            return ax(format!("scalar table is not {rs}x{n}"));
        }
        if self.add.iter().chain(&self.act).flatten().any(|&x| x >= n) {
            return ax("table entry out of range".into());
        }
        let (add, act, ring) = (&self.add, &self.act, &self.ring);
        for a in 0..n {
            if add[a][self.zero] != a {
                return ax(format!("{a} + 0 != {a}"));
            }
            if act[ring.one()][a] != a {
                return ax(format!("1·{a} != {a}"));
            }
            if act[ring.zero()][a] != self.zero {
                return ax(format!("0·{a} != 0"));
            }
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return ax(format!("addition not commutative at ({a}, {b})"));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return ax(format!("addition not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        for r in 0..rs {
            if act[r][self.zero] != self.zero {
                return ax(format!("{r}·0 != 0"));
            }
            for a in 0..n {
                for b in 0..n {
                    if act[r][add[a][b]] != add[act[r][a]][act[r][b]] {
                        return ax(format!("{r}·({a}+{b}) != {r}·{a} + {r}·{b}"));
                    }
                }
                for s in 0..rs {
                    if act[ring.add(&r, &s)][a] != add[act[r][a]][act[s][a]] {
                        return ax(format!("({r}+{s})·{a} != {r}·{a} + {s}·{a}"));
                    }
                    if act[ring.mul(&r, &s)][a] != act[r][act[s][a]] {
                        return ax(format!("({r}{s})·{a} != {r}·({s}·{a})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Mixed-radix encoding of tuples; the first coordinate varies fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLayout {
    radices: Vec<usize>,
}

impl ProductLayout {
    pub fn new(radices: Vec<usize>) -> Self {
        ProductLayout { radices }
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn total_checked(&self, bound: usize) -> Option<usize> {
        let mut acc: usize = 1;
        for &r in &self.radices {
            acc = acc.checked_mul(r)?;
            if acc > bound {
                return None;
            }
        }
        Some(acc)
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        for (k, &c) in coords.iter().enumerate().rev() {
            idx = idx * self.radices[k] + c;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.radices
            .iter()
            .map(|&r| {
                let c = idx % r;
                idx /= r;
                c
            })
            .collect()
    }
}

/// `R^k` computed on demand; indices follow [`ProductLayout`].
#[derive(Clone, Debug)]
pub struct FreeModule {
    ring: Arc<SemiringTable>,
    rank: usize,
    size: usize,
    layout: ProductLayout,
}

impl FreeModule {
    pub fn new(ring: Arc<SemiringTable>, rank: usize, bound: usize) -> Result<Self> {
        let size = checked_power(ring.size(), rank, bound, "free semimodule")?;
        let layout = ProductLayout::new(vec![ring.size(); rank]);
        Ok(FreeModule {
            ring,
            rank,
            size,
            layout,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn layout(&self) -> &ProductLayout {
        &self.layout
    }

    /// `r · e_i`.
    pub fn basis_multiple(&self, i: usize, r: usize) -> usize {
        let mut v = vec![self.ring.zero(); self.rank];
        v[i] = r;
        self.layout.encode(&v)
    }
}

impl SemimoduleOps for FreeModule {
    fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }
    fn size(&self) -> usize {
        self.size
    }
    fn zero(&self) -> usize {
        self.layout.encode(&vec![self.ring.zero(); self.rank])
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.layout.decode(a), self.layout.decode(b));
        let v: Vec<usize> = x.iter().zip(&y).map(|(p, q)| self.ring.add(p, q)).collect();
        self.layout.encode(&v)
    }
    fn act(&self, r: usize, a: usize) -> usize {
        let v: Vec<usize> = self
            .layout
            .decode(a)
            .iter()
            .map(|p| self.ring.mul(&r, p))
            .collect();
        self.layout.encode(&v)
    }
    fn additive_generators(&self) -> Vec<usize> {
        let nonzero: Vec<usize> = (0..self.ring.size()).filter(|&r| r != self.ring.zero()).collect();
        (0..self.rank)
            .flat_map(|i| nonzero.iter().map(move |&r| (i, r)))
            .map(|(i, r)| self.basis_multiple(i, r))
            .collect()
    }
}

/// A homomorphism given by its image table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SemimoduleHom {
    map: Vec<usize>,
    target_size: usize,
}

impl SemimoduleHom {
    /// Validates zero, additivity and scalar compatibility exhaustively.
    pub fn new<M, N>(source: &M, target: &N, map: Vec<usize>) -> Result<Self>
    where
        M: SemimoduleOps + ?Sized,
        N: SemimoduleOps + ?Sized,
    {
        let h = Self::from_map(map, target.size());
        h.validate(source, target)?;
        Ok(h)
    }

    pub fn from_map(map: Vec<usize>, target_size: usize) -> Self {
        SemimoduleHom { map, target_size }
    }

    pub fn identity(size: usize) -> Self {
        SemimoduleHom {
            map: (0..size).collect(),
            target_size: size,
        }
    }

    pub fn zero<M, N>(source: &M, target: &N) -> Self
    where
        M: SemimoduleOps + ?Sized,
        N: SemimoduleOps + ?Sized,
    {
        SemimoduleHom {
            map: vec![target.zero(); source.size()],
            target_size: target.size(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn source_size(&self) -> usize {
        self.map.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SemimoduleHom) -> SemimoduleHom {
        SemimoduleHom {
            map: self.map.iter().map(|&a| other.map[a]).collect(),
            target_size: other.target_size,
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.map.iter().all(|&b| !core::mem::replace(&mut seen[b], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.map.len() == self.target_size && self.is_injective()
    }

    pub fn validate<M, N>(&self, source: &M, target: &N) -> Result<()>
    where
        M: SemimoduleOps + ?Sized,
        N: SemimoduleOps + ?Sized,
    {
        let bad = |msg: alloc::string::String| Err(Error::NotHomomorphism(msg));
        if !source.ring().same_as(target.ring()) {
            return Err(Error::Incompatible("homomorphism between modules over different rings".into()));
        }
        if self.map.len() != source.size() || self.target_size != target.size() {
            return bad("image table has the wrong shape".into());
        }
        if self.map.iter().any(|&b| b >= target.size()) {
            return bad("image out of range".into());
        }
        if self.map[source.zero()] != target.zero() {
            return bad("zero is not preserved".into());
        }
        for a in 0..source.size() {
            for b in 0..source.size() {
                if self.map[source.add(a, b)] != target.add(self.map[a], self.map[b]) {
                    return bad(format!("f({a} + {b}) != f({a}) + f({b})"));
                }
            }
            for r in 0..source.ring().size() {
                if self.map[source.act(r, a)] != target.act(r, self.map[a]) {
                    return bad(format!("f({r}·{a}) != {r}·f({a})"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn boolean() -> Arc<SemiringTable> {
        Arc::new(SemiringTable::boolean())
    }

    #[test]
    fn regular_and_free_modules_validate() {
        let b = boolean();
        let r = FiniteSemimodule::regular(b.clone());
        assert!(FiniteSemimodule::new(b.clone(), r.size, r.zero, r.add.clone(), r.act.clone()).is_ok());
        let f = FiniteSemimodule::free(b.clone(), 2).unwrap();
        assert_eq!(f.size(), 4);
        assert!(FiniteSemimodule::new(b.clone(), 4, f.zero, f.add.clone(), f.act.clone()).is_ok());
        let chain = Arc::new(SemiringTable::chain3());
        let f = FiniteSemimodule::free(chain, 2).unwrap();
        assert_eq!(f.size(), 9);
    }

    #[test]
    fn rejects_non_semimodules() {
        let b = boolean();
        // 1 + 1 = 0 breaks (1+1)·1 = 1·1 + 1·1 over 𝔹
        let bad = FiniteSemimodule::new(b, 2, 0, vec![vec![0, 1], vec![1, 0]], vec![vec![0, 0], vec![0, 1]]);
        assert!(matches!(bad, Err(Error::SemimoduleAxiom(_))));
    }

    #[test]
    fn free_module_matches_tabulated_product() {
        let chain = Arc::new(SemiringTable::chain3());
        let free = FreeModule::new(chain.clone(), 3, 4096).unwrap();
        let table = FiniteSemimodule::free(chain, 3).unwrap();
        assert_eq!(FiniteSemimodule::tabulate(&free), table);
        let gens = free.additive_generators();
        assert_eq!(gens.len(), 6);
    }

    #[test]
    fn size_guards() {
        let chain = Arc::new(SemiringTable::chain3());
        assert!(matches!(
            FreeModule::new(chain, 9, 4096),
            Err(Error::SizeGuard { needed: 19683, .. })
        ));
    }

    #[test]
    fn submodules_and_homs() {
        let b = boolean();
        let f = FiniteSemimodule::free(b.clone(), 2).unwrap();
        // diagonal {(0,0), (1,1)} = indices {0, 3}
        let (sub, emb) = f.submodule(&[0, 3]).unwrap();
        assert_eq!(sub.size(), 2);
        assert!(SemimoduleHom::new(&sub, &f, emb).is_ok());
        assert!(f.submodule(&[0, 1, 2]).is_err());
        let r = FiniteSemimodule::regular(b);
        // projection to the first coordinate
        let p = SemimoduleHom::new(&f, &r, vec![0, 1, 0, 1]).unwrap();
        assert!(!p.is_injective());
        assert!(SemimoduleHom::new(&f, &r, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn layout_round_trip() {
        let l = ProductLayout::new(vec![2, 3, 4]);
        for i in 0..24 {
            assert_eq!(l.encode(&l.decode(i)), i);
        }
        assert_eq!(l.decode(1), [1, 0, 0]);
    }
}
