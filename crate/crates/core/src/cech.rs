//! Čech ± complexes of sheaf data on a finite cover.
//!
//! `Cᵖ` is the product of `F(U_t)` over the `(p+1)`-tuples `t` of the chosen
//! [`CochainModel`]. The differentials sum restrictions of the faces
//! `t \ tₖ`: even `k` go to `d⁺`, odd `k` to `d⁻`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::pm_complex::{Cohomology, FinitePmComplex, PmComplex, PmMorphism};
use crate::semimodule::{
    FiniteSemimodule, ProductLayout, SemimoduleHom, SemimoduleOps, TABLE_BOUND,
};
use crate::semiring::{Semiring, SemiringTable};
use crate::{Error, Result};

/// Which index tuples carry cochain components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CochainModel {
    /// `i₀ < … < i_p`.
    Ordered,
    /// `i₀ ≤ … ≤ i_p`; needed as the target of refinements that merge indices.
    NonDecreasing,
    /// Every tuple in `I^{p+1}`.
    Unordered,
}

/// All tuples of length `len` over `0..k` in the model, lexicographically.
pub fn tuples(model: CochainModel, k: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(model: CochainModel, k: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = match (model, cur.last()) {
            (CochainModel::Ordered, Some(&l)) => l + 1,
            (CochainModel::NonDecreasing, Some(&l)) => l,
            _ => 0,
        };
        for i in start..k {
            cur.push(i);
            go(model, k, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(model, k, len, &mut Vec::new(), &mut out);
    out
}

/// `t` with position `k` removed.
pub fn face(t: &[usize], k: usize) -> Vec<usize> {
    let mut f = t.to_vec();
    f.remove(k);
    f
}

/// Sorted distinct indices of a tuple; the intersection it names.
pub fn support(t: &[usize]) -> Vec<usize> {
    let mut s = t.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Opens of a finite space with at most 64 points, as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    points: usize,
    opens: Vec<u64>,
}

impl Cover {
    pub fn new(points: usize, opens: Vec<u64>) -> Result<Self> {
        if points > 64 {
            return Err(Error::Invalid("a finite space has at most 64 points".into()));
        }
        if opens.is_empty() {
            return Err(Error::Invalid("a cover needs at least one open".into()));
        }
        let all = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
        if let Some(u) = opens.iter().find(|&&u| u & !all != 0) {
            return Err(Error::Invalid(format!("open {u:#b} has points outside the space")));
        }
        Ok(Cover { points, opens })
    }

    /// Opens given as point lists.
    pub fn from_sets(points: usize, sets: &[&[usize]]) -> Result<Self> {
        let opens = sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &p| m | (1u64 << p)))
            .collect();
        Self::new(points, opens)
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn open(&self, i: usize) -> u64 {
        self.opens[i]
    }

    pub fn intersection(&self, t: &[usize]) -> u64 {
        t.iter().fold(u64::MAX, |m, &i| m & self.opens[i])
    }

    pub fn union(&self) -> u64 {
        self.opens.iter().fold(0, |m, &u| m | u)
    }

    /// The same opens listed in the order `perm[0], perm[1], …`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Cover {
            points: self.points,
            opens: perm.iter().map(|&i| self.opens[i]).collect(),
        }
    }
}

/// A sheaf on the finite space underlying a [`Cover`].
#[derive(Clone, Debug)]
pub enum SpaceSheaf {
    /// `F(U) = M` for nonempty `U`. A sheaf only when the relevant opens are
    /// connected.
    Constant(FiniteSemimodule),
    /// `F(U) = M^U`, functions on the points of `U`.
    Functions(FiniteSemimodule),
}

fn points_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&p| mask >> p & 1 == 1).collect()
}

impl SpaceSheaf {
    pub fn ring(&self) -> &Arc<SemiringTable> {
        match self {
            SpaceSheaf::Constant(m) | SpaceSheaf::Functions(m) => m.ring(),
        }
    }

    pub fn sections(&self, open: u64) -> Result<FiniteSemimodule> {
        match self {
            _ if open == 0 => Ok(FiniteSemimodule::zero_module(self.ring().clone())),
            SpaceSheaf::Constant(m) => Ok(m.clone()),
            SpaceSheaf::Functions(m) => {
                let k = open.count_ones() as usize;
                let factors = vec![m; k];
                Ok(FiniteSemimodule::product(&factors)?.0)
            }
        }
    }

    /// Restriction `F(from) → F(to)` for `to ⊆ from`.
    pub fn restrict(&self, from: u64, to: u64) -> Result<SemimoduleHom> {
        if to & !from != 0 {
            return Err(Error::NotRefinement(format!("{to:#b} is not contained in {from:#b}")));
        }
        let (src, tgt) = (self.sections(from)?, self.sections(to)?);
        if to == 0 {
            return Ok(SemimoduleHom::zero(&src, &tgt));
        }
        match self {
            SpaceSheaf::Constant(_) => Ok(SemimoduleHom::identity(src.size())),
            SpaceSheaf::Functions(m) => {
                let pf = points_of(from);
                let positions: Vec<usize> = points_of(to)
                    .iter()
                    .map(|p| pf.binary_search(p).expect("subset"))
                    .collect();
                let lf = ProductLayout::new(vec![m.size(); pf.len()]);
                let lt = ProductLayout::new(vec![m.size(); positions.len()]);
                let map = (0..src.size())
                    .map(|x| {
                        let c = lf.decode(x);
                        lt.encode(&positions.iter().map(|&k| c[k]).collect::<Vec<_>>())
                    })
                    .collect();
                Ok(SemimoduleHom::from_map(map, tgt.size()))
            }
        }
    }
}

/// Global sections with their restrictions to each open of the cover.
#[derive(Clone, Debug)]
pub struct GlobalData {
    pub module: FiniteSemimodule,
    pub restrictions: Vec<SemimoduleHom>,
}

/// Sheaf data indexed by sets of cover indices.
///
/// `sections[s]` is `F(U_s)` for a nonempty sorted set `s`; a missing set
/// carries the zero module. Restrictions are stored for `s ⊂ s ∪ {a}` and
/// composed along increasing insertions otherwise.
#[derive(Clone, Debug)]
pub struct TupleSheaf {
    ring: Arc<SemiringTable>,
    indices: usize,
    sections: BTreeMap<Vec<usize>, FiniteSemimodule>,
    restrictions: BTreeMap<(Vec<usize>, Vec<usize>), SemimoduleHom>,
    global: Option<GlobalData>,
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (1u64..(1u64 << k))
        .map(|m| (0..k).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

impl TupleSheaf {
    /// Validates every restriction, fills in forced zero maps and checks
    /// functoriality on all squares `s ⊂ s+a, s+b ⊂ s+a+b`.
    pub fn new(
        ring: Arc<SemiringTable>,
        indices: usize,
        sections: BTreeMap<Vec<usize>, FiniteSemimodule>,
        mut restrictions: BTreeMap<(Vec<usize>, Vec<usize>), SemimoduleHom>,
        global: Option<GlobalData>,
    ) -> Result<Self> {
        if indices == 0 || indices > 16 {
            return Err(Error::Invalid("between 1 and 16 cover indices are supported".into()));
        }
        for (s, m) in &sections {
            if s.is_empty() || support(s) != *s || s.iter().any(|&i| i >= indices) {
                return Err(Error::Invalid(format!("{s:?} is not a set of cover indices")));
            }
            if !m.ring().same_as(&ring) {
                return Err(Error::Incompatible(format!("sections on {s:?} over another ring")));
            }
        }
        let zero = FiniteSemimodule::zero_module(ring.clone());
        let get = |s: &[usize]| sections.get(s).unwrap_or(&zero).clone();
        for (from, to) in restrictions.keys() {
            if !from.iter().all(|i| to.contains(i)) || from == to {
                return Err(Error::Invalid(format!("no restriction from {from:?} to {to:?}")));
            }
        }
        for s in subsets(indices) {
            for a in 0..indices {
                if s.contains(&a) {
                    continue;
                }
                let t = support(&[s.as_slice(), &[a]].concat());
                let (src, tgt) = (get(&s), get(&t));
                let key = (s.clone(), t.clone());
                match restrictions.get(&key) {
                    Some(h) => h.validate(&src, &tgt).map_err(|e| {
                        Error::Invalid(format!("restriction {s:?} -> {t:?}: {e}"))
                    })?,
                    None if src.size() == 1 || tgt.size() == 1 => {
                        restrictions.insert(key, SemimoduleHom::zero(&src, &tgt));
                    }
                    None => {
                        return Err(Error::Invalid(format!("missing restriction {s:?} -> {t:?}")))
                    }
                }
            }
        }
        if let Some(g) = &global {
            if g.restrictions.len() != indices {
                return Err(Error::Invalid("global data needs one restriction per open".into()));
            }
            for (i, h) in g.restrictions.iter().enumerate() {
                h.validate(&g.module, &get(&[i]))?;
            }
        }
        let sheaf = TupleSheaf {
            ring,
            indices,
            sections,
            restrictions,
            global,
        };
        sheaf.check_functoriality()?;
        Ok(sheaf)
    }

    /// Restricts `sheaf` to the intersections of `cover`.
    pub fn from_space(cover: &Cover, sheaf: &SpaceSheaf) -> Result<Self> {
        let k = cover.len();
        let mut sections = BTreeMap::new();
        let mut restrictions = BTreeMap::new();
        for s in subsets(k) {
            let u = cover.intersection(&s);
            if u != 0 {
                sections.insert(s.clone(), sheaf.sections(u)?);
            }
            for a in 0..k {
                if !s.contains(&a) {
                    let t = support(&[s.as_slice(), &[a]].concat());
                    let h = sheaf.restrict(u, cover.intersection(&t))?;
                    restrictions.insert((s.clone(), t), h);
                }
            }
        }
        let x = cover.union();
        let global = GlobalData {
            module: sheaf.sections(x)?,
            restrictions: (0..k)
                .map(|i| sheaf.restrict(x, cover.open(i)))
                .collect::<Result<_>>()?,
        };
        Self::new(sheaf.ring().clone(), k, sections, restrictions, Some(global))
    }

    pub fn ring(&self) -> &Arc<SemiringTable> {
        &self.ring
    }

    pub fn indices(&self) -> usize {
        self.indices
    }

    pub fn global(&self) -> Option<&GlobalData> {
        self.global.as_ref()
    }

    pub fn sections(&self, s: &[usize]) -> FiniteSemimodule {
        self.sections
            .get(s)
            .cloned()
            .unwrap_or_else(|| FiniteSemimodule::zero_module(self.ring.clone()))
    }

    fn section_size(&self, s: &[usize]) -> usize {
        self.sections.get(s).map_or(1, |m| m.size())
    }

    /// `F(U_from) → F(U_to)` for sets `from ⊆ to`.
    pub fn restriction(&self, from: &[usize], to: &[usize]) -> Result<SemimoduleHom> {
        if !from.iter().all(|i| to.contains(i)) {
            return Err(Error::Invalid(format!("{from:?} is not a subset of {to:?}")));
        }
        let mut h = SemimoduleHom::identity(self.section_size(from));
        let mut cur = from.to_vec();
        for &a in to {
            if cur.contains(&a) {
                continue;
            }
            let next = support(&[cur.as_slice(), &[a]].concat());
            h = h.then(&self.restrictions[&(cur.clone(), next.clone())]);
            cur = next;
        }
        Ok(h)
    }

    fn check_functoriality(&self) -> Result<()> {
        for s in subsets(self.indices) {
            for a in 0..self.indices {
                for b in a + 1..self.indices {
                    if s.contains(&a) || s.contains(&b) {
                        continue;
                    }
                    let sa = support(&[s.as_slice(), &[a]].concat());
                    let sb = support(&[s.as_slice(), &[b]].concat());
                    let sab = support(&[s.as_slice(), &[a, b]].concat());
                    let r = |x: &Vec<usize>, y: &Vec<usize>| &self.restrictions[&(x.clone(), y.clone())];
                    let via_a = r(&s, &sa).then(r(&sa, &sab));
                    let via_b = r(&s, &sb).then(r(&sb, &sab));
                    if via_a != via_b {
                        return Err(Error::Invalid(format!(
                            "restrictions {s:?} -> {sab:?} through {a} and {b} differ"
                        )));
                    }
                }
            }
        }
        if let Some(g) = &self.global {
            for i in 0..self.indices {
                for j in i + 1..self.indices {
                    let ij = [i, j];
                    let a = g.restrictions[i].then(&self.restriction(&[i], &ij)?);
                    let b = g.restrictions[j].then(&self.restriction(&[j], &ij)?);
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "global restrictions disagree on U_{i}{j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A Čech complex with the bookkeeping that names its components.
#[derive(Clone, Debug)]
pub struct CechComplex {
    pub complex: FinitePmComplex,
    pub model: CochainModel,
    pub indices: usize,
    tuples: Vec<Vec<Vec<usize>>>,
    layouts: Vec<ProductLayout>,
    tuple_index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl CechComplex {
    pub fn tuples(&self, p: usize) -> &[Vec<usize>] {
        self.tuples.get(p).map_or(&[], |t| t.as_slice())
    }

    pub fn tuple_position(&self, p: usize, t: &[usize]) -> Option<usize> {
        self.tuple_index.get(p)?.get(t).copied()
    }

    /// Components `x_t` of a cochain, one per tuple.
    pub fn components(&self, p: usize, x: usize) -> Vec<usize> {
        self.layouts[p].decode(x)
    }

    pub fn encode(&self, p: usize, components: &[usize]) -> usize {
        self.layouts[p].encode(components)
    }

    pub fn space_size(&self, p: usize) -> usize {
        self.complex.space_size(p)
    }

    pub fn cohomology(&self, p: usize, bound: usize) -> Result<Cohomology> {
        self.complex.cohomology(p, bound)
    }
}

/// The Čech complex in degrees `0..=max_degree`. The chain identity is
/// verified exhaustively in every degree.
pub fn build_cech(sheaf: &TupleSheaf, max_degree: usize, model: CochainModel) -> Result<CechComplex> {
    let k = sheaf.indices;
    let ring = sheaf.ring.clone();
    let mut all_tuples = Vec::new();
    let mut layouts = Vec::new();
    let mut spaces = Vec::new();
    let mut tuple_index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
    for p in 0..=max_degree {
        let ts = tuples(model, k, p + 1);
        let factors: Vec<FiniteSemimodule> = ts.iter().map(|t| sheaf.sections(&support(t))).collect();
        let (space, layout) = if factors.is_empty() {
            (FiniteSemimodule::zero_module(ring.clone()), ProductLayout::new(Vec::new()))
        } else {
            let refs: Vec<&FiniteSemimodule> = factors.iter().collect();
            FiniteSemimodule::product_bounded(&refs, TABLE_BOUND)?
        };
        tuple_index.push(ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect());
        all_tuples.push(ts);
        layouts.push(layout);
        spaces.push(space);
    }
    let mut d_plus = Vec::new();
    let mut d_minus = Vec::new();
    for p in 0..max_degree {
        let targets = &all_tuples[p + 1];
        // (face position in degree p, restriction) for each target tuple and k
        let mut faces: Vec<Vec<(usize, SemimoduleHom)>> = Vec::with_capacity(targets.len());
        for t in targets {
            let st = support(t);
            let mut row = Vec::new();
            for kk in 0..t.len() {
                let f = face(t, kk);
                let pos = *tuple_index[p].get(&f).ok_or_else(|| {
                    Error::Invalid(format!("face {f:?} of {t:?} is outside the cochain model"))
                })?;
                row.push((pos, sheaf.restriction(&support(&f), &st)?));
            }
            faces.push(row);
        }
        let targets_mod: Vec<FiniteSemimodule> = targets.iter().map(|t| sheaf.sections(&support(t))).collect();
        let mut plus = Vec::with_capacity(spaces[p].size());
        let mut minus = Vec::with_capacity(spaces[p].size());
        for x in 0..spaces[p].size() {
            let comps = layouts[p].decode(x);
            let mut vp = Vec::with_capacity(targets.len());
            let mut vm = Vec::with_capacity(targets.len());
            for (ti, row) in faces.iter().enumerate() {
                let m = &targets_mod[ti];
                let (mut sp, mut sm) = (m.zero(), m.zero());
                for (kk, (pos, res)) in row.iter().enumerate() {
                    let y = res.apply(comps[*pos]);
                    if kk % 2 == 0 {
                        sp = m.add(sp, y);
                    } else {
                        sm = m.add(sm, y);
                    }
                }
                vp.push(sp);
                vm.push(sm);
            }
            plus.push(layouts[p + 1].encode(&vp));
            minus.push(layouts[p + 1].encode(&vm));
        }
        let size = spaces[p + 1].size();
        d_plus.push(SemimoduleHom::from_map(plus, size));
        d_minus.push(SemimoduleHom::from_map(minus, size));
    }
    let complex = FinitePmComplex::new(spaces, d_plus, d_minus)?;
    Ok(CechComplex {
        complex,
        model,
        indices: k,
        tuples: all_tuples,
        layouts,
        tuple_index,
    })
}

/// `Ȟ⁰ = F(X)` with the mutually inverse maps of the gluing argument.
#[derive(Clone, Debug)]
pub struct GlobalSections {
    /// `Z⁰ ⊆ C⁰`, increasing.
    pub cocycles: Vec<usize>,
    pub global: FiniteSemimodule,
    /// `r(g) = (g|U_i)_i`, as an index into `cocycles`.
    pub r: Vec<usize>,
    /// The glued section of each cocycle.
    pub s: Vec<usize>,
    pub h0: Cohomology,
}

pub fn h0_global(sheaf: &TupleSheaf, cech: &CechComplex) -> Result<GlobalSections> {
    let g = sheaf
        .global
        .as_ref()
        .ok_or_else(|| Error::Precondition("sheaf data carries no global sections".into()))?;
    let cocycles = cech.complex.cocycles(0);
    let singletons: Vec<usize> = (0..sheaf.indices)
        .map(|i| cech.tuple_position(0, &[i]).expect("singleton tuples exist in every model"))
        .collect();
    let mut r = Vec::with_capacity(g.module.size());
    let mut s = vec![usize::MAX; cocycles.len()];
    for x in 0..g.module.size() {
        let mut comps = vec![0; cech.tuples(0).len()];
        for (i, &pos) in singletons.iter().enumerate() {
            comps[pos] = g.restrictions[i].apply(x);
        }
        let y = cech.encode(0, &comps);
        let yi = cocycles.binary_search(&y).map_err(|_| {
            Error::Gluing(format!("restrictions of global section {x} do not agree on overlaps"))
        })?;
        if s[yi] != usize::MAX {
            return Err(Error::Gluing(format!(
                "global sections {} and {x} have the same restrictions",
                s[yi]
            )));
        }
        s[yi] = x;
        r.push(yi);
    }
    if let Some(yi) = s.iter().position(|&x| x == usize::MAX) {
        let fam = cech.components(0, cocycles[yi]);
        return Err(Error::Gluing(format!("matching family {fam:?} does not glue")));
    }
    let h0 = cech.cohomology(0, 1)?;
    if h0.module.size() != cocycles.len() {
        return Err(Error::RhoNotCongruence {
            degree: 0,
            detail: "ρ⁰ is not equality".into(),
        });
    }
    Ok(GlobalSections {
        cocycles,
        global: g.module.clone(),
        r,
        s,
        h0,
    })
}

/// `Cᵐ` is the zero module for `m ≥` the number of opens (ordered model).
pub fn vanishing_bound(cech: &CechComplex, m: usize) -> Result<bool> {
    if m < cech.indices {
        return Err(Error::Precondition(format!(
            "degree {m} is below the cover size {}",
            cech.indices
        )));
    }
    Ok(cech.model == CochainModel::Ordered && cech.space_size(m) == 1)
}

/// `σⁿ(x)_t = x_{σ(t)}|_{V_t}` from the coarse to the fine complex, validated
/// as a ±-morphism. Both complexes must come from `sheaf` on the given covers.
pub fn refinement_morphism(
    fine_cover: &Cover,
    fine: &CechComplex,
    coarse_cover: &Cover,
    coarse: &CechComplex,
    sigma: &[usize],
    sheaf: &SpaceSheaf,
) -> Result<PmMorphism> {
    if sigma.len() != fine_cover.len() {
        return Err(Error::NotRefinement("σ must be defined on every fine index".into()));
    }
    for (j, &i) in sigma.iter().enumerate() {
        if i >= coarse_cover.len() || fine_cover.open(j) & !coarse_cover.open(i) != 0 {
            return Err(Error::NotRefinement(format!("V_{j} is not contained in U_{i}")));
        }
    }
    let degrees = coarse.complex.spaces().len();
    if fine.complex.spaces().len() != degrees {
        return Err(Error::NotRefinement("complexes have different lengths".into()));
    }
    let mut maps = Vec::with_capacity(degrees);
    for p in 0..degrees {
        let mut plan = Vec::new();
        for t in fine.tuples(p) {
            let st: Vec<usize> = t.iter().map(|&j| sigma[j]).collect();
            let pos = coarse.tuple_position(p, &st).ok_or_else(|| {
                Error::NotRefinement(format!(
                    "σ{t:?} = {st:?} is not a tuple of the {:?} model",
                    coarse.model
                ))
            })?;
            let res = sheaf.restrict(coarse_cover.intersection(&st), fine_cover.intersection(t))?;
            plan.push((pos, res));
        }
        let map = (0..coarse.space_size(p))
            .map(|x| {
                let c = coarse.components(p, x);
                let v: Vec<usize> = plan.iter().map(|(pos, res)| res.apply(c[*pos])).collect();
                fine.encode(p, &v)
            })
            .collect();
        maps.push(SemimoduleHom::from_map(map, fine.space_size(p)));
    }
    PmMorphism::new(&coarse.complex, &fine.complex, maps)
}

/// Checks the chain identity of a Čech complex in every degree.
pub fn chain_identity_everywhere(cech: &CechComplex) -> bool {
    (0..=cech.complex.top_degree()).all(|n| cech.complex.check_chain_identity(n).holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pm_complex::induced_map;
    use crate::semimodule::find_isomorphism;

    fn boolean_module() -> FiniteSemimodule {
        FiniteSemimodule::regular(Arc::new(SemiringTable::boolean()))
    }

    fn line_cover(n: usize) -> Cover {
        // points 0..2n-1, U_i = {2i-1, 2i, 2i+1} ∩ range: a chain of overlapping opens
        let pts = 2 * n + 1;
        let opens = (0..n).map(|i| (0b111u64 << (2 * i)) & ((1 << pts) - 1)).collect();
        Cover::new(pts, opens).unwrap()
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(CochainModel::Ordered, 3, 2), [[0, 1], [0, 2], [1, 2]]);
        assert_eq!(tuples(CochainModel::NonDecreasing, 2, 2), [[0, 0], [0, 1], [1, 1]]);
        assert_eq!(tuples(CochainModel::Unordered, 2, 2).len(), 4);
        assert!(tuples(CochainModel::Ordered, 2, 3).is_empty());
    }

    #[test]
    fn one_open_concentrates_in_degree_zero() {
        let cover = Cover::from_sets(2, &[&[0, 1]]).unwrap();
        let sheaf = TupleSheaf::from_space(&cover, &SpaceSheaf::Constant(boolean_module())).unwrap();
        let c = build_cech(&sheaf, 3, CochainModel::Ordered).unwrap();
        for p in 1..=3 {
            assert_eq!(c.space_size(p), 1);
        }
        assert!(vanishing_bound(&c, 1).unwrap());
    }

    #[test]
    fn degree_one_differential_on_three_opens() {
        let cover = line_cover(3);
        let cover = Cover::new(cover.points(), vec![cover.union(); 3]).unwrap();
        let sheaf = TupleSheaf::from_space(&cover, &SpaceSheaf::Constant(boolean_module())).unwrap();
        let c = build_cech(&sheaf, 2, CochainModel::Ordered).unwrap();
        assert_eq!(c.tuples(1), [[0, 1], [0, 2], [1, 2]]);
        for x in 0..c.space_size(1) {
            let t = c.components(1, x);
            let plus = c.components(2, c.complex.d_plus(1, &x));
            let minus = c.components(2, c.complex.d_minus(1, &x));
            // (d⁺t)₀₁₂ = t₁₂ + t₀₁, (d⁻t)₀₁₂ = t₀₂ over 𝔹
            assert_eq!(plus, [t[2] | t[0]]);
            assert_eq!(minus, [t[1]]);
        }
    }

    #[test]
    fn h0_of_constant_sheaf_on_connected_cover() {
        let cover = line_cover(3);
        let sheaf = TupleSheaf::from_space(&cover, &SpaceSheaf::Constant(boolean_module())).unwrap();
        let c = build_cech(&sheaf, 2, CochainModel::Ordered).unwrap();
        let g = h0_global(&sheaf, &c).unwrap();
        assert_eq!(g.global.size(), 2);
        for (x, &yi) in g.r.iter().enumerate() {
            assert_eq!(g.s[yi], x);
        }
        assert!(find_isomorphism(&g.h0.module, &boolean_module(), 4096).unwrap().is_some());
        assert!(c.cohomology(1, 4096).unwrap().is_zero());
        assert!(vanishing_bound(&c, 3).unwrap());
        assert!(vanishing_bound(&c, 1).is_err());
    }

    #[test]
    fn disconnected_constant_data_fails_to_glue() {
        let cover = Cover::from_sets(2, &[&[0], &[1]]).unwrap();
        let sheaf = TupleSheaf::from_space(&cover, &SpaceSheaf::Constant(boolean_module())).unwrap();
        let c = build_cech(&sheaf, 1, CochainModel::Ordered).unwrap();
        assert!(matches!(h0_global(&sheaf, &c), Err(Error::Gluing(_))));
    }

    #[test]
    fn function_sheaf_glues() {
        let cover = Cover::from_sets(3, &[&[0, 1], &[1, 2]]).unwrap();
        let sheaf = TupleSheaf::from_space(&cover, &SpaceSheaf::Functions(boolean_module())).unwrap();
        let c = build_cech(&sheaf, 2, CochainModel::Ordered).unwrap();
        let g = h0_global(&sheaf, &c).unwrap();
        assert_eq!(g.global.size(), 8);
        assert_eq!(g.h0.module.size(), 8);
        assert!(c.cohomology(1, 4096).unwrap().is_zero());
    }

    #[test]
    fn refinements() {
        let sheaf = SpaceSheaf::Constant(boolean_module());
        let coarse_cover = Cover::from_sets(3, &[&[0, 1], &[1, 2]]).unwrap();
        let fine_cover = Cover::from_sets(3, &[&[0], &[0, 1], &[1, 2]]).unwrap();
        let coarse_ord = TupleSheaf::from_space(&coarse_cover, &sheaf).unwrap();
        let fine_data = TupleSheaf::from_space(&fine_cover, &sheaf).unwrap();
        let coarse = build_cech(&coarse_ord, 2, CochainModel::NonDecreasing).unwrap();
        let fine = build_cech(&fine_data, 2, CochainModel::Ordered).unwrap();
        let f = refinement_morphism(&fine_cover, &fine, &coarse_cover, &coarse, &[0, 0, 1], &sheaf)
            .unwrap();
        let h = induced_map(&f, &coarse.complex, &fine.complex, 0, 4096).unwrap();
        assert_eq!(h.map.len(), 2);
        // a merging σ has no ordered coarse model to land in
        let coarse_strict = build_cech(&coarse_ord, 2, CochainModel::Ordered).unwrap();
        assert!(matches!(
            refinement_morphism(&fine_cover, &fine, &coarse_cover, &coarse_strict, &[0, 0, 1], &sheaf),
            Err(Error::NotRefinement(_))
        ));
        assert!(matches!(
            refinement_morphism(&fine_cover, &fine, &coarse_cover, &coarse, &[1, 0, 1], &sheaf),
            Err(Error::NotRefinement(_))
        ));
        let id = refinement_morphism(
            &coarse_cover,
            &coarse_strict,
            &coarse_cover,
            &coarse_strict,
            &[0, 1],
            &sheaf,
        )
        .unwrap();
        assert_eq!(id, PmMorphism::identity(&coarse_strict.complex));
    }
}
