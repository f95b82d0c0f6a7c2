//! The JSON input document: named groups, homs, chain complexes,
//! simplicial groups, crossed structures, theories and corpora, with
//! cross-references by name.
//!
//! Loading checks the shape and that every reference resolves. Objects are
//! built (and validated) on first use, so `validate` can report a broken
//! object while the rest of the document stays usable.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chain::{ChainComplex, Theory};
use crate::crossed::{CrossedComplex, CrossedModule, PeifferModule, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::group::library::by_name;
use crate::group::{FiniteGroup, GroupHom};
use crate::simplicial::{dis, dold_kan_gamma, ind, nerve_of_crossed_module, TruncatedSimplicialGroup};
use crate::torsion::{Ambient, TheoryId};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// a library name such as `S3`, `C2xC4`, `Q8`
    Library(String),
    Table { order: usize, table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

/// A hom inside a complex: a name from the `homs` section or an inline map
/// whose endpoints come from its position.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum HomRef {
    Name(String),
    Inline { map: Vec<usize> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub lo: i32,
    pub hi: i32,
    /// `M_lo ..= M_hi`
    pub groups: Vec<String>,
    /// `δ_{lo+1} ..= δ_hi`
    pub diffs: Vec<HomRef>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Dis(String),
    Ind(String),
    /// `Γ` of an abelian chain complex
    Gamma(String),
    /// the nerve of a crossed module
    Nerve(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialSpec {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coskeletal_above: Option<usize>,
    /// `X_0 ..= X_d`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<String>,
    /// entry `k` lists `d_0 ..= d_{k+1}` on `X_{k+1}`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<Vec<HomRef>>,
    /// entry `k` lists `s_0 ..= s_k` on `X_k`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degeneracies: Vec<Vec<HomRef>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CrossedSpec {
    CrossedModule {
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "B")]
        b: String,
        delta: Vec<usize>,
        /// `action[b][a] = ᵇa`
        action: Vec<Vec<usize>>,
    },
    TwoCrossed {
        #[serde(rename = "L")]
        l: String,
        #[serde(rename = "M")]
        m: String,
        #[serde(rename = "N")]
        n: String,
        delta2: Vec<usize>,
        delta1: Vec<usize>,
        actions: TwoActions,
        /// `{m0, m1}` at index `m0·|M| + m1`
        peiffer: Vec<usize>,
    },
    Reduced {
        #[serde(rename = "L")]
        l: String,
        #[serde(rename = "M")]
        m: String,
        delta: Vec<usize>,
        peiffer: Vec<usize>,
    },
    Stable {
        #[serde(rename = "L")]
        l: String,
        #[serde(rename = "M")]
        m: String,
        delta: Vec<usize>,
        peiffer: Vec<usize>,
    },
    CrossedComplex {
        lo: i32,
        hi: i32,
        groups: Vec<String>,
        diffs: Vec<HomRef>,
        /// entry `n - 1` is the action table of `M_0` on `M_n`
        actions: Vec<Vec<Vec<usize>>>,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TwoActions {
    pub on_l: Vec<Vec<usize>>,
    pub on_m: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum TheorySpec {
    Plain(String),
    Restricted { theory: String, ambient: String },
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: BTreeMap<String, HomSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chains: BTreeMap<String, ChainSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplicial: BTreeMap<String, SimplicialSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed: BTreeMap<String, CrossedSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub theories: BTreeMap<String, TheorySpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub corpora: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Group,
    Hom,
    Chain,
    Simplicial,
    Crossed,
    Theory,
    Corpus,
}

#[derive(Clone, Debug)]
pub enum Crossed {
    Module(CrossedModule),
    Two(TwoCrossedModule),
    Reduced(PeifferModule),
    Stable(PeifferModule),
    Complex(CrossedComplex),
}

pub struct Document {
    raw: RawDocument,
    sections: BTreeMap<String, Section>,
    groups: RefCell<HashMap<String, FiniteGroup>>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| doc_err(format!("parse: {e}")))?;
        Document::from_raw(raw)
    }

    pub fn load(path: &std::path::Path) -> Result<Document> {
        let text = std::fs::read_to_string(path).map_err(|e| doc_err(format!("{}: {e}", path.display())))?;
        Document::parse(&text)
    }

    /// Checks that names are unique across sections and that every
    /// reference resolves to the right section.
    pub fn from_raw(raw: RawDocument) -> Result<Document> {
        let mut sections = BTreeMap::new();
        let mut add = |name: &String, s: Section| -> Result<()> {
            match sections.insert(name.clone(), s) {
                Some(_) => Err(doc_err(format!("name `{name}` is defined twice"))),
                None => Ok(()),
            }
        };
        raw.groups.keys().try_for_each(|n| add(n, Section::Group))?;
        raw.homs.keys().try_for_each(|n| add(n, Section::Hom))?;
        raw.chains.keys().try_for_each(|n| add(n, Section::Chain))?;
        raw.simplicial.keys().try_for_each(|n| add(n, Section::Simplicial))?;
        raw.crossed.keys().try_for_each(|n| add(n, Section::Crossed))?;
        raw.theories.keys().try_for_each(|n| add(n, Section::Theory))?;
        raw.corpora.keys().try_for_each(|n| add(n, Section::Corpus))?;
        let doc = Document { raw, sections, groups: RefCell::new(HashMap::new()) };
        doc.check_references()?;
        Ok(doc)
    }

    fn expect(&self, name: &str, want: &[Section], owner: &str) -> Result<()> {
        match self.sections.get(name) {
            Some(s) if want.contains(s) => Ok(()),
            Some(s) => Err(doc_err(format!("`{owner}` refers to `{name}`, which is a {s:?}, expected {want:?}"))),
            None => Err(doc_err(format!("`{owner}` refers to undefined `{name}`"))),
        }
    }

    fn check_hom_refs<'a>(&self, refs: impl IntoIterator<Item = &'a HomRef>, owner: &str) -> Result<()> {
        refs.into_iter().try_for_each(|r| match r {
            HomRef::Name(n) => self.expect(n, &[Section::Hom], owner),
            HomRef::Inline { .. } => Ok(()),
        })
    }

    fn check_references(&self) -> Result<()> {
        use Section::*;
        let r = &self.raw;
        for (name, h) in &r.homs {
            self.expect(&h.source, &[Group], name)?;
            self.expect(&h.target, &[Group], name)?;
        }
        for (name, c) in &r.chains {
            c.groups.iter().try_for_each(|g| self.expect(g, &[Group], name))?;
            self.check_hom_refs(&c.diffs, name)?;
        }
        for (name, s) in &r.simplicial {
            s.groups.iter().try_for_each(|g| self.expect(g, &[Group], name))?;
            self.check_hom_refs(s.faces.iter().flatten(), name)?;
            self.check_hom_refs(s.degeneracies.iter().flatten(), name)?;
            match &s.construction {
                Some(Construction::Dis(g) | Construction::Ind(g)) => self.expect(g, &[Group], name)?,
                Some(Construction::Gamma(c)) => self.expect(c, &[Chain], name)?,
                Some(Construction::Nerve(x)) => self.expect(x, &[Crossed], name)?,
                None => {}
            }
        }
        for (name, c) in &r.crossed {
            let gs: Vec<&String> = match c {
                CrossedSpec::CrossedModule { a, b, .. } => vec![a, b],
                CrossedSpec::TwoCrossed { l, m, n, .. } => vec![l, m, n],
                CrossedSpec::Reduced { l, m, .. } | CrossedSpec::Stable { l, m, .. } => vec![l, m],
                CrossedSpec::CrossedComplex { groups, diffs, .. } => {
                    self.check_hom_refs(diffs, name)?;
                    groups.iter().collect()
                }
            };
            gs.into_iter().try_for_each(|g| self.expect(g, &[Group], name))?;
        }
        for (name, t) in &r.theories {
            self.theory(name).map_err(|e| doc_err(format!("theory `{name}`: {e}")))?;
            let _ = t;
        }
        for (name, members) in &r.corpora {
            members.iter().try_for_each(|m| self.expect(m, &[Chain, Simplicial, Crossed], name))?;
        }
        Ok(())
    }

    pub fn raw(&self) -> &RawDocument {
        &self.raw
    }

    pub fn section(&self, name: &str) -> Result<Section> {
        self.sections.get(name).copied().ok_or_else(|| doc_err(format!("no object named `{name}`")))
    }

    /// Names in lexicographic order.
    pub fn names(&self) -> impl Iterator<Item = (&str, Section)> {
        self.sections.iter().map(|(n, s)| (n.as_str(), *s))
    }

    pub fn group(&self, name: &str) -> Result<FiniteGroup> {
        if let Some(g) = self.groups.borrow().get(name) {
            return Ok(g.clone());
        }
        let spec = self.raw.groups.get(name).ok_or_else(|| doc_err(format!("no group named `{name}`")))?;
        let g = match spec {
            GroupSpec::Library(lib) => by_name(lib)?,
            GroupSpec::Table { order, table } => {
                if table.len() != *order {
                    return Err(doc_err(format!("group `{name}` declares order {order} with {} rows", table.len())));
                }
                FiniteGroup::from_table(table)?
            }
        };
        self.groups.borrow_mut().insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn hom_between(&self, r: &HomRef, source: &FiniteGroup, target: &FiniteGroup) -> Result<GroupHom> {
        match r {
            HomRef::Inline { map } => GroupHom::new(source, target, map.clone()),
            HomRef::Name(n) => {
                let h = self.hom(n)?;
                if h.source() != source || h.target() != target {
                    return Err(doc_err(format!("hom `{n}` has the wrong endpoints for its position")));
                }
                Ok(h)
            }
        }
    }

    pub fn hom(&self, name: &str) -> Result<GroupHom> {
        let h = self.raw.homs.get(name).ok_or_else(|| doc_err(format!("no hom named `{name}`")))?;
        GroupHom::new(&self.group(&h.source)?, &self.group(&h.target)?, h.map.clone())
    }

    fn build_chain(&self, lo: i32, hi: i32, groups: &[String], diffs: &[HomRef], name: &str) -> Result<ChainComplex> {
        if hi < lo || groups.len() != (hi - lo + 1) as usize {
            return Err(doc_err(format!("`{name}`: window [{lo}, {hi}] needs {} groups", (hi - lo + 1).max(0))));
        }
        if diffs.len() + 1 != groups.len() {
            return Err(doc_err(format!("`{name}`: {} groups need {} differentials", groups.len(), groups.len() - 1)));
        }
        let gs = groups.iter().map(|g| self.group(g)).collect::<Result<Vec<_>>>()?;
        let ds = diffs.iter().enumerate().map(|(k, d)| self.hom_between(d, &gs[k + 1], &gs[k])).collect::<Result<Vec<_>>>()?;
        ChainComplex::new(lo, gs, ds)
    }

    pub fn chain(&self, name: &str) -> Result<ChainComplex> {
        let c = self.raw.chains.get(name).ok_or_else(|| doc_err(format!("no chain complex named `{name}`")))?;
        self.build_chain(c.lo, c.hi, &c.groups, &c.diffs, name)
    }

    pub fn simplicial(&self, name: &str) -> Result<TruncatedSimplicialGroup> {
        let s = self.raw.simplicial.get(name).ok_or_else(|| doc_err(format!("no simplicial group named `{name}`")))?;
        let d = s.degree;
        match &s.construction {
            Some(Construction::Dis(g)) => return Ok(dis(&self.group(g)?, d)),
            Some(Construction::Ind(g)) => return Ok(ind(&self.group(g)?, d)),
            Some(Construction::Gamma(c)) => return dold_kan_gamma(&self.chain(c)?, d),
            Some(Construction::Nerve(x)) => return nerve_of_crossed_module(&self.crossed_module(x)?, d),
            None => {}
        }
        if s.groups.len() != d + 1 || s.faces.len() != d || s.degeneracies.len() != d {
            return Err(doc_err(format!("`{name}`: degree {d} needs {} groups, {d} face lists and {d} degeneracy lists", d + 1)));
        }
        let gs = s.groups.iter().map(|g| self.group(g)).collect::<Result<Vec<_>>>()?;
        let mut faces = vec![Vec::new()];
        for (k, list) in s.faces.iter().enumerate() {
            faces.push(list.iter().map(|h| self.hom_between(h, &gs[k + 1], &gs[k])).collect::<Result<Vec<_>>>()?);
        }
        let mut degeneracies = Vec::new();
        for (k, list) in s.degeneracies.iter().enumerate() {
            degeneracies.push(list.iter().map(|h| self.hom_between(h, &gs[k], &gs[k + 1])).collect::<Result<Vec<_>>>()?);
        }
        degeneracies.push(Vec::new());
        TruncatedSimplicialGroup::new(gs, faces, degeneracies, s.coskeletal_above)
    }

    /// The structure as stored, without running its axiom checks.
    pub fn crossed(&self, name: &str) -> Result<Crossed> {
        let c = self.raw.crossed.get(name).ok_or_else(|| doc_err(format!("no crossed structure named `{name}`")))?;
        Ok(match c {
            CrossedSpec::CrossedModule { a, b, delta, action } => Crossed::Module(CrossedModule {
                a: self.group(a)?,
                b: self.group(b)?,
                delta: delta.clone(),
                action: action.clone(),
            }),
            CrossedSpec::TwoCrossed { l, m, n, delta2, delta1, actions, peiffer } => Crossed::Two(TwoCrossedModule {
                l: self.group(l)?,
                m: self.group(m)?,
                n: self.group(n)?,
                delta2: delta2.clone(),
                delta1: delta1.clone(),
                act_l: actions.on_l.clone(),
                act_m: actions.on_m.clone(),
                peiffer: peiffer.clone(),
            }),
            CrossedSpec::Reduced { l, m, delta, peiffer } => Crossed::Reduced(PeifferModule {
                l: self.group(l)?,
                m: self.group(m)?,
                delta: delta.clone(),
                peiffer: peiffer.clone(),
            }),
            CrossedSpec::Stable { l, m, delta, peiffer } => Crossed::Stable(PeifferModule {
                l: self.group(l)?,
                m: self.group(m)?,
                delta: delta.clone(),
                peiffer: peiffer.clone(),
            }),
            CrossedSpec::CrossedComplex { lo, hi, groups, diffs, actions } => {
                let chain = self.build_chain(*lo, *hi, groups, diffs, name)?;
                Crossed::Complex(CrossedComplex::from_parts(&chain, actions.clone())?)
            }
        })
    }

    pub fn crossed_module(&self, name: &str) -> Result<CrossedModule> {
        match self.crossed(name)? {
            Crossed::Module(x) => {
                crate::crossed::validate_crossed_module(&x).into_result()?;
                Ok(x)
            }
            _ => Err(doc_err(format!("`{name}` is not a crossed module"))),
        }
    }

    pub fn theory(&self, name: &str) -> Result<TheoryId> {
        let t = self.raw.theories.get(name).ok_or_else(|| doc_err(format!("no theory named `{name}`")))?;
        Ok(match t {
            TheorySpec::Plain(s) => TheoryId::new(Theory::parse(s)?, Ambient::Simp),
            TheorySpec::Restricted { theory, ambient } => TheoryId::new(Theory::parse(theory)?, Ambient::parse(ambient)?),
        })
    }

    pub fn corpus(&self, name: &str) -> Result<&[String]> {
        self.raw.corpora.get(name).map(Vec::as_slice).ok_or_else(|| doc_err(format!("no corpus named `{name}`")))
    }
}

/// JSON for a group as an explicit table.
pub fn group_json(g: &FiniteGroup) -> Value {
    json!({"order": g.order(), "table": g.table()})
}

/// JSON for a chain complex with its groups referenced by `prefix{n}`.
pub fn chain_json(c: &ChainComplex) -> Value {
    json!({
        "lo": c.lo(),
        "hi": c.hi(),
        "orders": c.orders(),
        "diffs": c.diffs().iter().map(|d| json!({"map": d.map()})).collect::<Vec<_>>(),
    })
}

/// A self-contained document holding `x` under `name`, its levels named
/// `{name}_x0 ..`.
pub fn simplicial_document(name: &str, x: &TruncatedSimplicialGroup) -> RawDocument {
    let mut doc = RawDocument::default();
    let level = |n: usize| format!("{name}_x{n}");
    let mut names = BTreeSet::new();
    for n in 0..=x.degree() {
        let g = x.group(n);
        doc.groups.insert(level(n), GroupSpec::Table { order: g.order(), table: g.table() });
        names.insert(level(n));
    }
    let inline = |h: &GroupHom| HomRef::Inline { map: h.map().to_vec() };
    doc.simplicial.insert(
        name.to_string(),
        SimplicialSpec {
            degree: x.degree(),
            construction: None,
            coskeletal_above: x.coskeletal_above(),
            groups: (0..=x.degree()).map(level).collect(),
            faces: (1..=x.degree()).map(|n| x.faces(n).iter().map(inline).collect()).collect(),
            degeneracies: (0..x.degree()).map(|n| x.degeneracies(n).iter().map(inline).collect()).collect(),
        },
    );
    doc
}

/// A self-contained document holding the crossed module `x` under `name`,
/// its groups named `{name}_a` and `{name}_b`.
pub fn crossed_module_document(name: &str, x: &CrossedModule) -> RawDocument {
    let mut doc = RawDocument::default();
    let (a, b) = (format!("{name}_a"), format!("{name}_b"));
    doc.groups.insert(a.clone(), GroupSpec::Table { order: x.a.order(), table: x.a.table() });
    doc.groups.insert(b.clone(), GroupSpec::Table { order: x.b.order(), table: x.b.table() });
    doc.crossed.insert(name.to_string(), CrossedSpec::CrossedModule { a, b, delta: x.delta.clone(), action: x.action.clone() });
    doc
}

/// Pretty JSON with a trailing newline, the form fixtures are stored in.
pub fn to_fixture_text(doc: &RawDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "groups": {"C2": "C2", "S3": "S3", "A3": {"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}},
        "homs": {"id2": {"source": "C2", "target": "C2", "map": [0, 1]}},
        "chains": {"ind2": {"lo": 0, "hi": 1, "groups": ["C2", "C2"], "diffs": ["id2"]}},
        "simplicial": {"k": {"degree": 3, "construction": {"gamma": "ind2"}}},
        "theories": {"t": "mu-geq:1", "r": {"theory": "mu-ngeq:1", "ambient": "m-ngeq:1"}},
        "corpora": {"all": ["ind2", "k"]}
    }"#;

    #[test]
    fn parse_and_resolve() {
        let doc = Document::parse(SAMPLE).unwrap();
        assert_eq!(doc.chain("ind2").unwrap().orders(), vec![2, 2]);
        assert_eq!(doc.simplicial("k").unwrap().degree(), 3);
        assert_eq!(doc.theory("r").unwrap().ambient, Ambient::MNgeq(1));
        assert_eq!(doc.group("A3").unwrap().order(), 3);
        assert_eq!(doc.corpus("all").unwrap().len(), 2);
    }

    #[test]
    fn unresolved_names_fail_on_load() {
        let bad = SAMPLE.replace("[\"id2\"]", "[\"nope\"]");
        assert!(matches!(Document::parse(&bad), Err(Error::Document(_))));
        let dup = SAMPLE.replace("\"t\": \"mu-geq:1\"", "\"C2\": \"mu-geq:1\"");
        assert!(Document::parse(&dup).is_err());
    }

    #[test]
    fn simplicial_round_trip() {
        let x = dis(&FiniteGroup::cyclic(2), 2);
        let raw = simplicial_document("d", &x);
        let text = serde_json::to_string(&raw).unwrap();
        let doc = Document::parse(&text).unwrap();
        let y = doc.simplicial("d").unwrap();
        assert_eq!(y.orders(), x.orders());
        assert_eq!(y.coskeletal_above(), x.coskeletal_above());
    }
}
