use alloc::vec;
use alloc::vec::Vec;

use super::{SemimoduleHom, SemimoduleOps};
use crate::semiring::Semiring;
use crate::{Error, Result};

/// Sub-semimodule generated by `gens`, as a membership vector.
pub fn span<M: SemimoduleOps + ?Sized>(m: &M, gens: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; m.size()];
    let mut members = vec![m.zero()];
    inside[m.zero()] = true;
    let mut frontier: Vec<usize> = Vec::new();
    for &g in gens {
        if !inside[g] {
            inside[g] = true;
            members.push(g);
            frontier.push(g);
        }
    }
    while let Some(x) = frontier.pop() {
        let mut fresh = Vec::new();
        for r in 0..m.ring().size() {
            fresh.push(m.act(r, x));
        }
        for &y in &members {
            fresh.push(m.add(x, y));
        }
        for z in fresh {
            if !inside[z] {
                inside[z] = true;
                members.push(z);
                frontier.push(z);
            }
        }
    }
    inside
}

/// A greedy generating set: repeatedly adds the least element outside the span.
pub fn generating_set<M: SemimoduleOps + ?Sized>(m: &M) -> Vec<usize> {
    let mut gens = Vec::new();
    loop {
        let inside = span(m, &gens);
        match inside.iter().position(|&b| !b) {
            Some(x) => gens.push(x),
            None => return gens,
        }
    }
}

/// Extends `gen_i ↦ images_i` to a map on the whole of `m` by closure, then
/// validates it. Returns `None` when the assignment is inconsistent or not a
/// homomorphism.
pub fn extend_from_generators<M, N>(
    m: &M,
    n: &N,
    gens: &[usize],
    images: &[usize],
) -> Option<SemimoduleHom>
where
    M: SemimoduleOps + ?Sized,
    N: SemimoduleOps + ?Sized,
{
    let map: Option<Vec<usize>> = close_assignment(m, n, gens, images)?.into_iter().collect();
    let h = SemimoduleHom::from_map(map?, n.size());
    h.validate(m, n).ok()?;
    Some(h)
}

/// The partial map on `span(gens)` forced by `gen_i ↦ images_i`, or `None`
/// when two forced values disagree.
fn close_assignment<M, N>(m: &M, n: &N, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>>
where
    M: SemimoduleOps + ?Sized,
    N: SemimoduleOps + ?Sized,
{
    let mut map: Vec<Option<usize>> = vec![None; m.size()];
    let assign = |map: &mut Vec<Option<usize>>, x: usize, y: usize, q: &mut Vec<usize>| -> bool {
        match map[x] {
            Some(old) => old == y,
            None => {
                map[x] = Some(y);
                q.push(x);
                true
            }
        }
    };
    let mut queue = Vec::new();
    let mut done: Vec<usize> = Vec::new();
    if !assign(&mut map, m.zero(), n.zero(), &mut queue) {
        return None;
    }
    for (&g, &img) in gens.iter().zip(images) {
        if !assign(&mut map, g, img, &mut queue) {
            return None;
        }
    }
    while let Some(x) = queue.pop() {
        let fx = map[x].expect("assigned");
        for r in 0..m.ring().size() {
            if !assign(&mut map, m.act(r, x), n.act(r, fx), &mut queue) {
                return None;
            }
        }
        done.push(x);
        for &y in &done {
            let fy = map[y].expect("assigned");
            if !assign(&mut map, m.add(x, y), n.add(fx, fy), &mut queue) {
                return None;
            }
        }
    }
    Some(map)
}

/// All homomorphisms `m → n` in lexicographic order of their image tables.
///
/// Candidates are generator assignments, so the guard applies to
/// `|n|^|generators|`.
pub fn enumerate_homs<M, N>(m: &M, n: &N, bound: usize) -> Result<Vec<SemimoduleHom>>
where
    M: SemimoduleOps + ?Sized,
    N: SemimoduleOps + ?Sized,
{
    if !m.ring().same_as(n.ring()) {
        return Err(Error::Incompatible("modules over different rings".into()));
    }
    let gens = generating_set(m);
    super::checked_power(n.size(), gens.len(), bound, "homomorphism candidates")?;
    let mut homs = Vec::new();
    let mut images = vec![0; gens.len()];
    loop {
        if let Some(h) = extend_from_generators(m, n, &gens, &images) {
            homs.push(h);
        }
        if !next_tuple(&mut images, n.size()) {
            break;
        }
    }
    homs.sort();
    homs.dedup();
    Ok(homs)
}

/// An isomorphism `m → n`, if any.
///
/// Depth-first search over generator images, pruning every prefix whose
/// forced partial map is inconsistent or not injective. The guard bounds the
/// number of prefixes visited.
pub fn find_isomorphism<M, N>(m: &M, n: &N, bound: usize) -> Result<Option<SemimoduleHom>>
where
    M: SemimoduleOps + ?Sized,
    N: SemimoduleOps + ?Sized,
{
    if m.size() != n.size() {
        return Ok(None);
    }
    if !m.ring().same_as(n.ring()) {
        return Err(Error::Incompatible("modules over different rings".into()));
    }
    let gens = generating_set(m);
    let mut images = Vec::with_capacity(gens.len());
    let mut visited = 0usize;
    iso_search(m, n, &gens, &mut images, &mut visited, bound)
}

fn iso_search<M, N>(
    m: &M,
    n: &N,
    gens: &[usize],
    images: &mut Vec<usize>,
    visited: &mut usize,
    bound: usize,
) -> Result<Option<SemimoduleHom>>
where
    M: SemimoduleOps + ?Sized,
    N: SemimoduleOps + ?Sized,
{
    if images.len() == gens.len() {
        return Ok(extend_from_generators(m, n, gens, images).filter(SemimoduleHom::is_bijective));
    }
    for img in 0..n.size() {
        *visited += 1;
        if *visited > bound {
            return Err(Error::SizeGuard {
                what: "isomorphism search nodes".into(),
                needed: *visited as u128,
                bound,
            });
        }
        images.push(img);
        let k = images.len();
        let injective = close_assignment(m, n, &gens[..k], images).is_some_and(|map| {
            let mut seen = vec![false; n.size()];
            map.into_iter().flatten().all(|y| !core::mem::replace(&mut seen[y], true))
        });
        if injective {
            if let Some(h) = iso_search(m, n, gens, images, visited, bound)? {
                return Ok(Some(h));
            }
        }
        images.pop();
    }
    Ok(None)
}

pub(crate) fn next_tuple(t: &mut [usize], radix: usize) -> bool {
    for x in t.iter_mut() {
        *x += 1;
        if *x < radix {
            return true;
        }
        *x = 0;
    }
    false
}
