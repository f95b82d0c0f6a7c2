use serde::Serialize;

use super::Object;
use crate::budget;
use crate::chain::{for_each_chain_hom, image_containment_witness, torsion_decompose, ChainComplex, Theory};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, quotient, Elem, GroupHom, Subgroup};
use crate::par::{self, ExecMode};

#[derive(Clone, Debug, Serialize)]
pub struct Tt1Failure {
    pub torsion: String,
    pub free: String,
    pub degree: i32,
    pub element: Elem,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tt2Entry {
    pub object: String,
    pub exact: bool,
    pub torsion_ok: bool,
    pub free_ok: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TtReport {
    pub theory: Theory,
    /// corpus members and decomposition pieces in the torsion class
    pub torsion_objects: Vec<String>,
    pub free_objects: Vec<String>,
    pub pairs: usize,
    pub homs: usize,
    pub tt1_failures: Vec<Tt1Failure>,
    pub tt2: Vec<Tt2Entry>,
}

impl TtReport {
    pub fn passed(&self) -> bool {
        self.tt1_failures.is_empty() && self.tt2.iter().all(|e| e.exact && e.torsion_ok && e.free_ok)
    }
}

/// TT2 on every object (decompose, verify exactness, classify both ends),
/// then TT1 on every pair drawn from the torsion and torsion-free members
/// of the corpus together with all decomposition pieces.
pub fn tt_axioms_check(theory: Theory, corpus: &[Object], mode: ExecMode) -> Result<TtReport> {
    let decomposed = par::map(mode, corpus, |o| (o.name.clone(), theory.decompose(&o.chain)));
    let mut tt2 = Vec::with_capacity(corpus.len());
    let mut torsion: Vec<Object> = Vec::new();
    let mut free: Vec<Object> = Vec::new();
    for (o, (name, res)) in corpus.iter().zip(decomposed) {
        if theory.is_torsion(&o.chain) {
            torsion.push(o.clone());
        }
        if theory.is_torsion_free(&o.chain) {
            free.push(o.clone());
        }
        match res {
            Ok(ses) => {
                let entry = Tt2Entry {
                    object: name.clone(),
                    exact: ses.verify().is_ok(),
                    torsion_ok: theory.is_torsion(&ses.sub),
                    free_ok: theory.is_torsion_free(&ses.quotient),
                    error: None,
                };
                torsion.push(Object::new(format!("{name}/torsion"), ses.sub));
                free.push(Object::new(format!("{name}/free"), ses.quotient));
                tt2.push(entry);
            }
            Err(e) => tt2.push(Tt2Entry { object: name, exact: false, torsion_ok: false, free_ok: false, error: Some(e.to_string()) }),
        }
    }
    let pairs: Vec<(usize, usize)> = (0..torsion.len()).flat_map(|i| (0..free.len()).map(move |j| (i, j))).collect();
    let results = par::map(mode, &pairs, |&(i, j)| -> Result<(usize, Option<(i32, Elem)>)> {
        let (t, f) = (&torsion[i].chain, &free[j].chain);
        if t.is_zero() || f.is_zero() {
            return Ok((1, None));
        }
        let mut count = 0;
        let mut bad = None;
        for_each_chain_hom(t, f, false, |h| {
            count += 1;
            bad = h.nonzero_witness();
            bad.is_none()
        })?;
        Ok((count, bad))
    });
    let mut homs = 0;
    let mut tt1_failures = Vec::new();
    for (&(i, j), r) in pairs.iter().zip(results) {
        let (count, bad) = r?;
        homs += count;
        if let Some((degree, element)) = bad {
            tt1_failures.push(Tt1Failure { torsion: torsion[i].name.clone(), free: free[j].name.clone(), degree, element });
        }
    }
    Ok(TtReport {
        theory,
        torsion_objects: torsion.iter().map(|o| o.name.clone()).collect(),
        free_objects: free.iter().map(|o| o.name.clone()).collect(),
        pairs: pairs.len(),
        homs,
        tt1_failures,
        tt2,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub smaller: Theory,
    pub larger: Theory,
    /// per object, the first torsion element of the smaller theory outside
    /// the torsion part of the larger one
    pub objects: Vec<(String, Option<(i32, Elem)>)>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.objects.iter().all(|(_, w)| w.is_none())
    }
}

/// `T_small(X) ⊆ T_large(X)` degreewise inside `X`, for every object.
pub fn lattice_order_check(smaller: Theory, larger: Theory, corpus: &[Object], mode: ExecMode) -> Result<LatticeReport> {
    if smaller > larger {
        return Err(Error::OrderViolation { smaller: smaller.to_string(), larger: larger.to_string() });
    }
    let rows = par::map(mode, corpus, |o| -> Result<(String, Option<(i32, Elem)>)> {
        let s = torsion_decompose(&o.chain, smaller)?;
        let t = torsion_decompose(&o.chain, larger)?;
        Ok((o.name.clone(), image_containment_witness(&s.iota, &t.iota)))
    });
    Ok(LatticeReport { smaller, larger, objects: rows.into_iter().collect::<Result<_>>()? })
}

/// Consecutive pairs `(θ, θ.succ())` from `lo` while the larger stays `≤ hi`.
pub fn adjacent_pairs(lo: Theory, hi: Theory) -> Vec<(Theory, Theory)> {
    let mut out = Vec::new();
    let mut t = lo;
    while t.succ() <= hi {
        out.push((t, t.succ()));
        t = t.succ();
    }
    out
}

/// Degreewise subgroup choices closed under the differentials, over the
/// window of `c`. With `normal`, only normal subgroups are used.
fn closed_families(c: &ChainComplex, normal: bool) -> Result<Vec<Vec<Subgroup>>> {
    let (lo, hi) = (c.lo(), c.hi());
    let mut options = Vec::new();
    let mut space: u128 = 1;
    for n in lo..=hi {
        let mut subs = all_subgroups(&c.group(n))?;
        if normal {
            subs.retain(Subgroup::is_normal);
        }
        space = space.saturating_mul(subs.len() as u128);
        options.push(subs);
    }
    budget::current().check_candidates("subcomplex enumeration", space)?;
    let mut out = Vec::new();
    let mut chosen: Vec<Subgroup> = Vec::new();
    fn go(c: &ChainComplex, lo: i32, options: &[Vec<Subgroup>], chosen: &mut Vec<Subgroup>, out: &mut Vec<Vec<Subgroup>>) {
        let k = chosen.len();
        if k == options.len() {
            out.push(chosen.clone());
            return;
        }
        let d = c.diff(lo + k as i32);
        for s in &options[k] {
            let closed = match chosen.last() {
                Some(below) => s.elements().iter().all(|&x| below.contains(d.apply(x))),
                None => true,
            };
            if closed {
                chosen.push(s.clone());
                go(c, lo, options, chosen, out);
                chosen.pop();
            }
        }
    }
    go(c, lo, &options, &mut chosen, &mut out);
    Ok(out)
}

fn restricted(c: &ChainComplex, subs: &[Subgroup]) -> Result<ChainComplex> {
    let lo = c.lo();
    let made: Vec<_> = subs.iter().map(Subgroup::to_group).collect();
    let groups = made.iter().map(|(g, _)| g.clone()).collect();
    let diffs = (1..subs.len())
        .map(|k| {
            let d = c.diff(lo + k as i32);
            let map = subs[k].elements().iter().map(|&x| subs[k - 1].position(d.apply(x)).expect("closed family")).collect();
            GroupHom::new_unchecked(&made[k].0, &made[k - 1].0, map)
        })
        .collect();
    ChainComplex::new(lo, groups, diffs)
}

fn quotiented(c: &ChainComplex, subs: &[Subgroup]) -> Result<ChainComplex> {
    let lo = c.lo();
    let qs = subs.iter().enumerate().map(|(k, s)| quotient(&c.group(lo + k as i32), s)).collect::<Result<Vec<_>>>()?;
    let groups = qs.iter().map(|q| q.group.clone()).collect();
    let diffs = (1..subs.len())
        .map(|k| {
            let d = c.diff(lo + k as i32);
            let map = qs[k].reps.iter().map(|&r| qs[k - 1].projection.apply(d.apply(r))).collect();
            GroupHom::new_unchecked(&qs[k].group, &qs[k - 1].group, map)
        })
        .collect();
    ChainComplex::new(lo, groups, diffs)
}

/// All proper subcomplexes of `c` (subobjects in proper complexes).
pub fn subcomplexes(c: &ChainComplex) -> Result<Vec<ChainComplex>> {
    let mut out = Vec::new();
    for subs in closed_families(c, false)? {
        let s = restricted(c, &subs)?;
        if s.is_proper() {
            out.push(s);
        }
    }
    Ok(out)
}

/// All quotients of `c` by degreewise normal subcomplexes.
pub fn quotient_complexes(c: &ChainComplex) -> Result<Vec<ChainComplex>> {
    closed_families(c, true)?.iter().map(|subs| quotiented(c, subs)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HeredityReport {
    pub theory: Theory,
    pub subobjects: usize,
    pub quotients: usize,
    pub hereditary: bool,
    /// an object whose subobject leaves the torsion class, with the
    /// subobject's orders
    pub hereditary_witness: Option<(String, Vec<usize>)>,
    pub cohereditary: bool,
    pub cohereditary_witness: Option<(String, Vec<usize>)>,
}

/// Closure of the torsion class under the enumerated subobjects of its
/// corpus members, and of the torsion-free class under quotients.
pub fn heredity_check(theory: Theory, corpus: &[Object], mode: ExecMode) -> Result<HeredityReport> {
    type Row = (usize, Option<Vec<usize>>, usize, Option<Vec<usize>>);
    let rows = par::map(mode, corpus, |o| -> Result<Row> {
        let mut row: Row = (0, None, 0, None);
        if theory.is_torsion(&o.chain) {
            let subs = subcomplexes(&o.chain)?;
            row.0 = subs.len();
            row.1 = subs.iter().find(|s| !theory.is_torsion(s)).map(|s| s.orders());
        }
        if theory.is_torsion_free(&o.chain) {
            let qs = quotient_complexes(&o.chain)?;
            row.2 = qs.len();
            row.3 = qs.iter().find(|q| !theory.is_torsion_free(q)).map(|q| q.orders());
        }
        Ok(row)
    });
    let mut report = HeredityReport {
        theory,
        subobjects: 0,
        quotients: 0,
        hereditary: true,
        hereditary_witness: None,
        cohereditary: true,
        cohereditary_witness: None,
    };
    for (o, row) in corpus.iter().zip(rows) {
        let (ns, ws, nq, wq) = row?;
        report.subobjects += ns;
        report.quotients += nq;
        if let (Some(w), None) = (ws, &report.hereditary_witness) {
            report.hereditary = false;
            report.hereditary_witness = Some((o.name.clone(), w));
        }
        if let (Some(w), None) = (wq, &report.cohereditary_witness) {
            report.cohereditary = false;
            report.cohereditary_witness = Some((o.name.clone(), w));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn small_corpus() -> Vec<Object> {
        let c2 = FiniteGroup::cyclic(2);
        vec![
            Object::new("dis", ChainComplex::concentrated(&c2, 0)),
            Object::new("ind", ChainComplex::two_term(&GroupHom::identity(&c2), 0)),
            Object::new("k1", ChainComplex::concentrated(&c2, 1)),
        ]
    }

    #[test]
    fn tt_on_small_corpus() {
        for t in [Theory::MuNgeq(0), Theory::MuGeq(1), Theory::MuNgeq(1)] {
            let r = tt_axioms_check(t, &small_corpus(), ExecMode::Sequential).unwrap();
            assert!(r.passed(), "{t}: {r:?}");
            assert!(r.homs > 0);
        }
    }

    #[test]
    fn lattice_and_pairs() {
        let pairs = adjacent_pairs(Theory::MuNgeq(2), Theory::MuNgeq(0));
        assert_eq!(pairs.len(), 4);
        for (s, l) in pairs {
            assert!(lattice_order_check(s, l, &small_corpus(), ExecMode::Sequential).unwrap().passed());
        }
        assert!(lattice_order_check(Theory::MuNgeq(0), Theory::MuGeq(1), &[], ExecMode::Sequential).is_err());
    }

    #[test]
    fn heredity_audit() {
        let ind = ChainComplex::two_term(&GroupHom::identity(&FiniteGroup::cyclic(2)), 0);
        assert_eq!(subcomplexes(&ind).unwrap().len(), 3);
        assert_eq!(quotient_complexes(&ind).unwrap().len(), 3);
        let r = heredity_check(Theory::MuNgeq(0), &small_corpus(), ExecMode::Sequential).unwrap();
        assert!(!r.hereditary && r.cohereditary);
        let r = heredity_check(Theory::MuGeq(1), &small_corpus(), ExecMode::Sequential).unwrap();
        assert!(r.hereditary && !r.cohereditary);
    }
}
