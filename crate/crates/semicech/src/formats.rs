//! JSON documents read and written by the command-line tool.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use semicech_core::cech::{Cover, GlobalData, SpaceSheaf, TupleSheaf};
use semicech_core::laurent::{ExponentVector, LaurentPoly, UnitMonomial};
use semicech_core::pm_complex::FinitePmComplex;
use semicech_core::projective::{ProjectiveSpace, UnitCocycle};
use semicech_core::semimodule::{FiniteSemimodule, SemimoduleHom, SemimoduleOps};
use semicech_core::semiring::{Semiring, SemiringTable};
use semicech_core::{Error, Result};

/// `{"size": n, "zero": i, "one": j, "add": [[..]], "mul": [[..]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl TableJson {
    pub fn build(&self) -> Result<SemiringTable> {
        SemiringTable::new(self.size, self.zero, self.one, self.add.clone(), self.mul.clone())
    }

    pub fn from_table(t: &SemiringTable) -> Self {
        TableJson {
            size: t.size(),
            zero: t.zero(),
            one: t.one(),
            add: t.add_table().to_vec(),
            mul: t.mul_table().to_vec(),
        }
    }
}

/// A finite semiring named by tag or given as a table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemiringRef {
    Tag(String),
    Table(TableJson),
}

/// Finite tags: `boolean`, `chain3`, `boolean2`, `z<n>` and `nat<cap>`.
pub fn finite_table(tag: &str) -> Result<SemiringTable> {
    let tag = tag.trim();
    if let Some(n) = tag.strip_prefix('z').and_then(|n| n.parse().ok()) {
        return SemiringTable::integers_mod(n);
    }
    if let Some(cap) = tag.strip_prefix("nat").and_then(|n| n.parse().ok()) {
        return SemiringTable::truncated_naturals(cap);
    }
    match tag {
        "boolean" | "bool" | "b" => Ok(SemiringTable::boolean()),
        "chain3" => Ok(SemiringTable::chain3()),
        "boolean2" | "boolean^2" => Ok(SemiringTable::boolean_squared()),
        other => Err(Error::Invalid(format!("`{other}` does not name a finite semiring"))),
    }
}

impl SemiringRef {
    pub fn resolve(&self) -> Result<Arc<SemiringTable>> {
        match self {
            SemiringRef::Tag(t) => finite_table(t).map(Arc::new),
            SemiringRef::Table(t) => t.build().map(Arc::new),
        }
    }
}

/// `{"size": n, "zero": i, "add": [[..]], "scalar": [[..]], "ring": ..}`.
///
/// `scalar[r][x]` is `r·x`. The ring may be omitted inside documents that
/// fix it at the top level.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub size: usize,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
    pub scalar: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<SemiringRef>,
}

impl ModuleJson {
    pub fn build(&self, default_ring: Option<&Arc<SemiringTable>>) -> Result<FiniteSemimodule> {
        let ring = match (&self.ring, default_ring) {
            (Some(r), _) => r.resolve()?,
            (None, Some(r)) => r.clone(),
            (None, None) => return Err(Error::Invalid("module has no ring".into())),
        };
        FiniteSemimodule::new(ring, self.size, self.zero, self.add.clone(), self.scalar.clone())
    }

    pub fn from_module(m: &FiniteSemimodule) -> Self {
        ModuleJson {
            size: m.size(),
            zero: m.zero(),
            add: m.add_table().to_vec(),
            scalar: m.act_table().to_vec(),
            ring: Some(SemiringRef::Table(TableJson::from_table(m.ring()))),
        }
    }
}

/// A finite ± complex: `spaces[n]` with `d_plus[n], d_minus[n]: C^n → C^{n+1}`
/// given as image tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub ring: SemiringRef,
    pub spaces: Vec<ModuleJson>,
    pub d_plus: Vec<Vec<usize>>,
    pub d_minus: Vec<Vec<usize>>,
}

impl ComplexJson {
    /// Validates the differentials as homomorphisms; the chain identity is
    /// left to the caller so that a failure can be reported.
    pub fn build(&self) -> Result<FinitePmComplex> {
        let ring = self.ring.resolve()?;
        let spaces = self
            .spaces
            .iter()
            .map(|m| m.build(Some(&ring)))
            .collect::<Result<Vec<_>>>()?;
        let hom = |tables: &[Vec<usize>]| -> Result<Vec<SemimoduleHom>> {
            tables
                .iter()
                .enumerate()
                .map(|(n, t)| {
                    let target = spaces.get(n + 1).ok_or_else(|| {
                        Error::Invalid(format!("differential out of degree {n} has no target space"))
                    })?;
                    Ok(SemimoduleHom::from_map(t.clone(), target.size()))
                })
                .collect()
        };
        let (dp, dm) = (hom(&self.d_plus)?, hom(&self.d_minus)?);
        FinitePmComplex::from_parts(spaces, dp, dm)
    }
}

/// Global sections of sheaf data with one restriction table per open.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalJson {
    pub module: ModuleJson,
    pub restrictions: Vec<Vec<usize>>,
}

/// Sheaf data on a cover:
/// `{"indices": [..], "sections": {"0,1": module}, "restrictions": {"0,1<-0": table}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafDataJson {
    pub ring: SemiringRef,
    pub indices: Vec<usize>,
    pub sections: BTreeMap<String, ModuleJson>,
    #[serde(default)]
    pub restrictions: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub global: Option<GlobalJson>,
}

/// A cover of a finite space by point lists with a constant or function sheaf.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceCoverJson {
    pub ring: SemiringRef,
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
    /// `"constant"` or `"functions"`.
    pub sheaf: String,
    /// Coefficient module; the regular module when omitted.
    #[serde(default)]
    pub module: Option<ModuleJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoverJson {
    Space(SpaceCoverJson),
    Data(SheafDataJson),
}

fn parse_index_set(key: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("`{key}` is not a list of indices")))
        })
        .collect()
}

impl CoverJson {
    pub fn build(&self) -> Result<TupleSheaf> {
        match self {
            CoverJson::Space(s) => {
                let ring = s.ring.resolve()?;
                let sets: Vec<&[usize]> = s.opens.iter().map(Vec::as_slice).collect();
                if s.opens.iter().flatten().any(|&p| p >= s.points) {
                    return Err(Error::Invalid("open contains a point outside the space".into()));
                }
                let cover = Cover::from_sets(s.points, &sets)?;
                let m = match &s.module {
                    Some(m) => m.build(Some(&ring))?,
                    None => FiniteSemimodule::regular(ring),
                };
                let sheaf = match s.sheaf.as_str() {
                    "constant" => SpaceSheaf::Constant(m),
                    "functions" => SpaceSheaf::Functions(m),
                    other => return Err(Error::Invalid(format!("unknown sheaf kind `{other}`"))),
                };
                TupleSheaf::from_space(&cover, &sheaf)
            }
            CoverJson::Data(d) => {
                let ring = d.ring.resolve()?;
                let k = d.indices.len();
                if d.indices.iter().enumerate().any(|(i, &x)| i != x) {
                    return Err(Error::Invalid("indices must be 0, 1, …, k-1".into()));
                }
                let mut sections = BTreeMap::new();
                for (key, m) in &d.sections {
                    sections.insert(parse_index_set(key)?, m.build(Some(&ring))?);
                }
                let size_of = |s: &[usize]| sections.get(s).map_or(1, FiniteSemimodule::size);
                let mut restrictions = BTreeMap::new();
                for (key, table) in &d.restrictions {
                    let (to, from) = key
                        .split_once("<-")
                        .ok_or_else(|| Error::Invalid(format!("restriction key `{key}` needs `to<-from`")))?;
                    let (to, from) = (parse_index_set(to)?, parse_index_set(from)?);
                    let h = SemimoduleHom::from_map(table.clone(), size_of(&to));
                    restrictions.insert((from, to), h);
                }
                let global = match &d.global {
                    Some(g) => {
                        let module = g.module.build(Some(&ring))?;
                        let restrictions = g
                            .restrictions
                            .iter()
                            .enumerate()
                            .map(|(i, t)| SemimoduleHom::from_map(t.clone(), size_of(&[i])))
                            .collect();
                        Some(GlobalData { module, restrictions })
                    }
                    None => None,
                };
                TupleSheaf::new(ring, k, sections, restrictions, global)
            }
        }
    }
}

/// `{"exp": [..], "coef": "<literal>"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: String,
}

/// `{"vars": n+1, "terms": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

fn parse_coef<S: Semiring>(ring: &S, s: &str) -> Result<S::Elem> {
    ring.parse_elem(s)
        .ok_or_else(|| Error::Invalid(format!("`{s}` is not an element of {}", ring.name())))
}

impl LaurentJson {
    pub fn build<S: Semiring>(&self, ring: &S) -> Result<LaurentPoly<S>> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((ExponentVector::new(t.exp.clone()), parse_coef(ring, &t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        LaurentPoly::from_terms(ring.clone(), self.vars, terms)
    }

    pub fn from_poly<S: Semiring>(p: &LaurentPoly<S>) -> Self {
        LaurentJson {
            vars: p.vars(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.entries().to_vec(),
                    coef: p.ring().format_elem(c),
                })
                .collect(),
        }
    }
}

/// `{"q": "<literal>", "exp": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitJson {
    pub q: String,
    pub exp: Vec<i64>,
}

impl UnitJson {
    pub fn build<S: Semiring>(&self, ring: &S) -> Result<UnitMonomial<S>> {
        UnitMonomial::new(ring.clone(), parse_coef(ring, &self.q)?, ExponentVector::new(self.exp.clone()))
    }

    pub fn from_unit<S: Semiring>(u: &UnitMonomial<S>) -> Self {
        UnitJson {
            q: u.ring().format_elem(u.coef()),
            exp: u.exp().entries().to_vec(),
        }
    }
}

/// `{"n": n, "entries": {"0,1": {"q": "...", "exp": [..]}, ...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitCocycleJson {
    pub n: usize,
    pub entries: BTreeMap<String, UnitJson>,
}

impl UnitCocycleJson {
    pub fn build<S: Semiring>(&self, space: &ProjectiveSpace<S>) -> Result<UnitCocycle<S>> {
        if self.n != space.dim() {
            return Err(Error::Invalid(format!("cocycle on ℙ^{} given for ℙ^{}", self.n, space.dim())));
        }
        let mut map = BTreeMap::new();
        for (key, u) in &self.entries {
            let ij = parse_index_set(key)?;
            let [i, j] = ij[..] else {
                return Err(Error::Invalid(format!("entry key `{key}` is not a pair")));
            };
            map.insert((i, j), u.build(space.ring())?);
        }
        UnitCocycle::from_map(space, &map)
    }

    pub fn from_cocycle<S: Semiring>(f: &UnitCocycle<S>) -> Self {
        UnitCocycleJson {
            n: f.n(),
            entries: f
                .to_map()
                .iter()
                .map(|((i, j), u)| (format!("{i},{j}"), UnitJson::from_unit(u)))
                .collect(),
        }
    }
}

/// A monomial localization `A = R[x]_g` with a family `fs` of elements.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineJson {
    pub g: Vec<i64>,
    pub fs: Vec<LaurentJson>,
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> std::result::Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}
