//! The ten acceptance criteria as executable checks over the bundled
//! corpus. Shared by the integration test suite and `moore-kit corpus`.
//!
//! Where a criterion compares against an oracle, the oracle is a naive
//! computation kept apart from the optimized code path it checks.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chain::{find_chain_iso, ttf_decompose, ChainComplex, Theory};
use crate::corpus::{crossed_complex_corpus, crossed_module_corpus, eilenberg_maclane, moore_corpus, random_proper_complexes};
use crate::crossed::mutate::{mutation_sweep, Structure};
use crate::crossed::{
    crs_e_torsion, extract_crossed_module, find_xmod_iso, validate_crossed_module, validate_reduced_2xm, validate_stable,
    xmod_ctf_sequences, CrossedModule, PeifferModule, TwoCrossedModule,
};
use crate::error::Result;
use crate::group::library::{by_name, groups_up_to_order_12};
use crate::group::{enumerate_homs, Elem, FiniteGroup};
use crate::par::{self, ExecMode};
use crate::simplicial::{dis, dold_kan_gamma, homotopy_groups, ind, moore, nerve_of_crossed_module};
use crate::torsion::{
    adjacent_pairs, classify_trivial_object, e_torsion_check_xmod, lattice_order_check, perf_ab_check,
    pretorsion_decompose, tt_axioms_check, verify_preexact, Ambient, Object, TheoryId, TrivialPattern,
};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const TITLES: [&str; 10] = [
    "hom enumeration matches the brute-force oracle",
    "Moore shapes of Dis, Ind and Gamma",
    "homotopy of K(A,n) and Ind(G)",
    "TT1/TT2 over the Moore corpus",
    "lattice order and restriction collapse",
    "crossed-structure validators and mutants",
    "nerve/extraction round trips",
    "pretorsion sequences and trivial objects",
    "TTF triples on random proper complexes",
    "E-torsion, CTF counits and (Perf, Ab)",
];

pub fn run(id: u8, mode: ExecMode) -> CriterionResult {
    let outcome = match id {
        1 => hom_oracle(mode),
        2 => moore_shapes(mode),
        3 => homotopy(mode),
        4 => tt_axioms(mode),
        5 => lattice(mode),
        6 => validators(mode),
        7 => round_trips(mode),
        8 => pretorsion(mode),
        9 => ttf(mode),
        10 => e_torsion(mode),
        _ => Ok(Err(format!("no criterion {id}"))),
    };
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    let title = TITLES.get((id as usize).wrapping_sub(1)).copied().unwrap_or("unknown");
    CriterionResult { id, title, passed, detail }
}

pub fn run_all(mode: ExecMode) -> Vec<CriterionResult> {
    (1..=10).map(|id| run(id, mode)).collect()
}

/// `Ok(Ok(summary))` on success, `Ok(Err(first failure))` on a failed check.
type Outcome = Result<std::result::Result<String, String>>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Ok(Err(format!($($fmt)+)));
        }
    };
}

/// Every map `a → b` as a value list, filtered by the full multiplication
/// table.
pub fn brute_force_homs(a: &FiniteGroup, b: &FiniteGroup) -> Vec<Vec<Elem>> {
    let (n, m) = (a.order(), b.order());
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        let hom = (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])));
        if hom {
            out.push(f.clone());
        }
        let Some(k) = (0..n).find(|&k| f[k] + 1 < m) else { break };
        f[k] += 1;
        f[..k].iter_mut().for_each(|v| *v = 0);
    }
    out
}

fn hom_oracle(mode: ExecMode) -> Outcome {
    let groups: Vec<_> = groups_up_to_order_12().into_iter().filter(|(_, g)| g.order() <= 6).collect();
    let pairs: Vec<(usize, usize)> = (0..groups.len()).flat_map(|i| (0..groups.len()).map(move |j| (i, j))).collect();
    let rows = par::map(mode, &pairs, |&(i, j)| -> Result<bool> {
        let (a, b) = (&groups[i].1, &groups[j].1);
        let fast: BTreeSet<Vec<Elem>> = enumerate_homs(a, b)?.iter().map(|h| h.map().to_vec()).collect();
        let slow: BTreeSet<Vec<Elem>> = brute_force_homs(a, b).into_iter().collect();
        Ok(fast == slow)
    });
    for (&(i, j), ok) in pairs.iter().zip(rows) {
        ensure!(ok?, "Hom({}, {}) differs from the oracle", groups[i].0, groups[j].0);
    }
    Ok(Ok(format!("{} ordered pairs of {} groups of order at most 6", pairs.len(), groups.len())))
}

/// Abelian members of the Moore corpus supported in non-negative degrees.
fn abelian_corpus() -> Result<Vec<Object>> {
    Ok(moore_corpus()?.into_iter().filter(|o| o.chain.is_abelian() && o.chain.lo() >= 0).collect())
}

fn moore_shapes(mode: ExecMode) -> Outcome {
    let names = ["C2", "C3", "V4", "S3", "Q8", "D4"];
    for name in names {
        let g = by_name(name)?;
        let d = moore(&dis(&g, 3))?.chain.into_chain().trimmed();
        ensure!(d.support() == Some((0, 0)) || g.is_trivial(), "N(Dis({name})) is not concentrated in degree 0");
        ensure!(find_chain_iso(&d, &ChainComplex::concentrated(&g, 0))?.is_some(), "N(Dis({name})) ≇ {name}");
        let i = moore(&ind(&g, 3))?.chain.into_chain();
        ensure!((2..=3).all(|n| i.order(n) == 1), "N(Ind({name})) is nontrivial above 1");
        ensure!(i.diff(1).is_iso(), "δ_1 of N(Ind({name})) is not an isomorphism");
        let shape = ChainComplex::two_term(&crate::group::GroupHom::identity(&g), 0);
        ensure!(find_chain_iso(&i.trimmed(), &shape)?.is_some(), "N(Ind({name})) ≇ ({name} = {name})");
    }
    let abelian = abelian_corpus()?;
    let rows = par::map(mode, &abelian, |o| -> Result<bool> {
        let top = o.chain.hi().max(0) as usize;
        let g = dold_kan_gamma(&o.chain, top)?;
        let back = moore(&g)?.chain.into_chain();
        Ok(find_chain_iso(&back.trimmed(), &o.chain.trimmed())?.is_some())
    });
    for (o, ok) in abelian.iter().zip(rows) {
        ensure!(ok?, "N(Γ({})) is not isomorphic to {}", o.name, o.name);
    }
    Ok(Ok(format!("{} groups for Dis/Ind; {} abelian complexes through Γ", names.len(), abelian.len())))
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    Ok(find_chain_iso(&ChainComplex::concentrated(a, 0), &ChainComplex::concentrated(b, 0))?.is_some())
}

fn homotopy(mode: ExecMode) -> Outcome {
    let cases: Vec<(&str, usize)> = ["C2", "C3", "V4"].iter().flat_map(|&a| (1..=3).map(move |n| (a, n))).collect();
    let rows = par::map(mode, &cases, |&(a, n)| -> Result<Option<String>> {
        let g = by_name(a)?;
        let pis = homotopy_groups(&eilenberg_maclane(&g, n, 4)?, 3)?;
        for (k, p) in pis.iter().enumerate() {
            let ok = if k == n { same_group(p, &g)? } else { p.is_trivial() };
            if !ok {
                return Ok(Some(format!("π_{k}(K({a},{n})) has order {}", p.order())));
            }
        }
        Ok(None)
    });
    for r in rows {
        if let Some(msg) = r? {
            return Ok(Err(msg));
        }
    }
    let names = ["C2", "C3", "V4", "S3"];
    for name in names {
        let pis = homotopy_groups(&ind(&by_name(name)?, 4), 3)?;
        ensure!(pis.iter().all(FiniteGroup::is_trivial), "Ind({name}) has a nontrivial homotopy group");
    }
    Ok(Ok(format!("{} Eilenberg-MacLane objects, {} aspherical Ind(G)", cases.len(), names.len())))
}

fn criterion_theories() -> Vec<Theory> {
    (0..=2).flat_map(|n| [Theory::MuNgeq(n), Theory::MuGeq(n)]).collect()
}

fn tt_axioms(mode: ExecMode) -> Outcome {
    let corpus = moore_corpus()?;
    ensure!(corpus.len() >= 12, "corpus has only {} objects", corpus.len());
    let mut homs = 0;
    for t in criterion_theories() {
        let r = tt_axioms_check(t, &corpus, mode)?;
        if let Some(f) = r.tt1_failures.first() {
            return Ok(Err(format!("{t}: nonzero hom {} → {} at degree {}", f.torsion, f.free, f.degree)));
        }
        if let Some(e) = r.tt2.iter().find(|e| !(e.exact && e.torsion_ok && e.free_ok)) {
            return Ok(Err(format!("{t}: decomposition of {} fails ({e:?})", e.object)));
        }
        homs += r.homs;
    }
    Ok(Ok(format!("6 theories over {} objects, {homs} cross homs enumerated", corpus.len())))
}

fn lattice(mode: ExecMode) -> Outcome {
    let corpus = moore_corpus()?;
    let pairs = adjacent_pairs(Theory::MuGeq(4), Theory::MuGeq(0));
    for &(s, l) in &pairs {
        let r = lattice_order_check(s, l, &corpus, mode)?;
        if let Some((name, Some((n, x)))) = r.objects.iter().find(|(_, w)| w.is_some()) {
            return Ok(Err(format!("{s} ≤ {l}: on {name}, element {x} of degree {n} escapes")));
        }
    }
    let mut collapsed = 0;
    for m in [1, 2] {
        let ambient = Ambient::MNgeq(m);
        let members: Vec<&Object> = corpus.iter().filter(|o| ambient.contains(&o.chain)).collect();
        ensure!(!members.is_empty(), "no corpus object in {ambient}");
        for t in adjacent_pairs(Theory::MuGeq(4), Theory::MuGeq(0)).into_iter().map(|(s, _)| s) {
            let id = TheoryId::new(t, ambient);
            for o in &members {
                ensure!(id.collapse_holds(&o.chain)?, "{id} on {} does not collapse", o.name);
                if id.restriction() != crate::torsion::Restriction::Effective {
                    collapsed += 1;
                }
            }
        }
        let first_live = TheoryId::new(Theory::MuGeq(m), ambient);
        ensure!(
            members.iter().any(|o| !first_live.decompose(&o.chain).map(|s| s.sub.is_zero()).unwrap_or(true)),
            "{first_live} has zero torsion on every member"
        );
    }
    Ok(Ok(format!("{} adjacent pairs; {collapsed} collapsed decompositions in M_{{1≥}}, M_{{2≥}}", pairs.len())))
}

fn validators(mode: ExecMode) -> Outcome {
    let names = ["S3", "Q8", "D4", "C6", "A4"];
    for name in names {
        let g = by_name(name)?;
        let conj = validate_crossed_module(&CrossedModule::conjugation(&g));
        ensure!(conj.passed(), "(id_{name}, conjugation) fails {:?}", conj.failure());
        let p = PeifferModule::commutator(&g);
        let red = validate_reduced_2xm(&p)?;
        ensure!(red.passed(), "commutator lifting on {name} fails reduced axioms {:?}", red.failure());
        let st = validate_stable(&p)?;
        ensure!(st.passed(), "commutator lifting on {name} fails stable axioms {:?}", st.failure());
    }
    let s3 = by_name("S3")?;
    let bases = [
        Structure::Crossed(CrossedModule::conjugation(&s3)),
        Structure::TwoCrossed(TwoCrossedModule::from_peiffer(&PeifferModule::commutator(&s3))),
        Structure::Reduced(PeifferModule::commutator(&s3)),
        Structure::Stable(PeifferModule::commutator(&s3)),
    ];
    let mut rates = Vec::new();
    for (k, base) in bases.iter().enumerate() {
        let sweep = mutation_sweep(base, 100, 1000 * k as u64, mode)?;
        ensure!(sweep.rate() >= 0.95, "{}: only {}/{} mutants detected", sweep.kind, sweep.detected, sweep.trials);
        rates.push(format!("{} {}/{}", sweep.kind, sweep.detected, sweep.trials));
    }
    Ok(Ok(format!("{} groups pass; mutants detected: {}", names.len(), rates.join(", "))))
}

fn round_trips(mode: ExecMode) -> Outcome {
    let corpus = crossed_module_corpus()?;
    ensure!(corpus.len() >= 5, "only {} crossed modules", corpus.len());
    let rows = par::map(mode, &corpus, |(name, xm)| -> Result<Option<String>> {
        let back = extract_crossed_module(&nerve_of_crossed_module(xm, 2)?)?;
        if find_xmod_iso(xm, &back)?.is_none() {
            return Ok(Some(format!("{name} does not survive the round trip")));
        }
        let m = moore(&nerve_of_crossed_module(xm, 3)?)?;
        if (2..=3).any(|n| m.chain.order(n) > 1) {
            return Ok(Some(format!("Moore complex of the nerve of {name} is nontrivial above 1")));
        }
        Ok(None)
    });
    for r in rows {
        if let Some(msg) = r? {
            return Ok(Err(msg));
        }
    }
    Ok(Ok(format!("{} crossed modules", corpus.len())))
}

fn pretorsion(mode: ExecMode) -> Outcome {
    let corpus = moore_corpus()?;
    let pairs: Vec<(Theory, Theory)> =
        (0..=2).flat_map(|n| [(Theory::MuGeq(n + 1), Theory::MuNgeq(n)), (Theory::MuNgeq(n), Theory::MuGeq(n))]).collect();
    let jobs: Vec<(usize, usize)> = (0..corpus.len()).flat_map(|i| (0..pairs.len()).map(move |j| (i, j))).collect();
    let rows = par::map(mode, &jobs, |&(i, j)| -> Result<std::result::Result<(usize, usize), String>> {
        let (s, l) = pairs[j];
        let o = &corpus[i];
        let dec = pretorsion_decompose(&o.chain, s, l)?;
        if !dec.holds() {
            return Ok(Err(format!("({s}, {l}) on {}: decomposition fails", o.name)));
        }
        if !expected_pattern(&dec.middle, s, l, &dec.pattern) {
            return Ok(Err(format!("({s}, {l}) on {}: classifier says {:?}", o.name, dec.pattern)));
        }
        let r = verify_preexact(&dec, &corpus, ExecMode::Sequential)?;
        if !r.passed() {
            return Ok(Err(format!("({s}, {l}) on {}: {:?}", o.name, r.failures.first())));
        }
        Ok(Ok((r.into, r.out_of)))
    });
    let (mut into, mut out_of) = (0, 0);
    for r in rows {
        match r? {
            Ok((a, b)) => {
                into += a;
                out_of += b;
            }
            Err(msg) => return Ok(Err(msg)),
        }
    }
    Ok(Ok(format!(
        "{} objects × {} pairs against {} probes; {into} lifts and {out_of} descents verified",
        corpus.len(),
        pairs.len(),
        corpus.len()
    )))
}

/// The three shapes read directly off the complex, independently of the
/// classifier.
fn expected_pattern(c: &ChainComplex, smaller: Theory, larger: Theory, got: &TrivialPattern) -> bool {
    let support_in = |a: i32, b: i32| (c.lo()..=c.hi()).all(|k| (a..=b).contains(&k) || c.order(k) == 1);
    match (smaller, larger, got) {
        (Theory::MuNgeq(n), Theory::MuGeq(m), TrivialPattern::EilenbergMacLane { n: k, order })
            if n == m && *k == n =>
        {
            support_in(n, n) && *order == c.order(n) && c.group(n).is_abelian()
        }
        (Theory::MuNgeq(0), Theory::MuGeq(0), TrivialPattern::Window { lo: 0, hi: 0 }) => {
            support_in(0, 0) && !c.group(0).is_abelian()
        }
        (Theory::MuGeq(k), Theory::MuNgeq(n), TrivialPattern::GroupLike { n: j, order }) if k == n + 1 && *j == n => {
            support_in(n, n + 1) && c.diff(n + 1).is_iso() && *order == c.order(n)
        }
        _ => false,
    }
    .then(|| classify_trivial_object(c, smaller, larger).map(|p| &p == got).unwrap_or(false))
    .unwrap_or(false)
}

fn ttf(mode: ExecMode) -> Outcome {
    let complexes = random_proper_complexes(crate::corpus::RANDOM_SEED ^ 0x0074_7466, 20, 4)?;
    let rows = par::map(mode, &complexes, |c| -> Result<Option<String>> {
        for n in 1..=3 {
            let r = ttf_decompose(c, n)?;
            if r.first.verify().is_err() || r.second.verify().is_err() {
                return Ok(Some(format!("degree {n}: a sequence is not exact")));
            }
            if !r.middle_agrees || !r.outer_agrees {
                return Ok(Some(format!("degree {n}: classes disagree")));
            }
            let q = r.first.pi.target();
            let split = r.section.iter().enumerate().all(|(k, s)| {
                let i = r.first.pi.window().0 + k as i32;
                let p = r.first.pi.component(i);
                q.group(i).elements().all(|x| p.apply(s.apply(x)) == x)
            });
            if !split {
                return Ok(Some(format!("degree {n}: section is not a right inverse")));
            }
        }
        Ok(None)
    });
    for (i, r) in rows.into_iter().enumerate() {
        if let Some(msg) = r? {
            return Ok(Err(format!("complex {i}: {msg}")));
        }
    }
    Ok(Ok(format!("{} complexes of width 4, degrees 1..=3", complexes.len())))
}

/// `G'` by closing the set of all commutators under products, and the
/// derived series from repeated closure.
pub fn commutator_chain_oracle(g: &FiniteGroup) -> Vec<usize> {
    fn closure(g: &FiniteGroup, members: &[Elem]) -> Vec<Elem> {
        let mut set: BTreeSet<Elem> = members.iter().flat_map(|&a| members.iter().map(move |&b| g.commutator(a, b))).collect();
        set.insert(0);
        loop {
            let next: BTreeSet<Elem> = set.iter().flat_map(|&a| set.iter().map(move |&b| g.mul(a, b))).collect();
            if next.len() == set.len() {
                return set.into_iter().collect();
            }
            set = next;
        }
    }
    let mut cur: Vec<Elem> = g.elements().collect();
    let mut orders = vec![cur.len()];
    loop {
        let next = closure(g, &cur);
        if next.len() == cur.len() {
            return orders;
        }
        orders.push(next.len());
        cur = next;
    }
}

fn e_torsion(mode: ExecMode) -> Outcome {
    let xms = crossed_module_corpus()?;
    for (name, xm) in &xms {
        ensure!(xmod_ctf_sequences(xm)?.counit_monic, "counit of {name} is not monic");
    }
    let r = e_torsion_check_xmod(&xms, mode)?;
    if let Some(e) = r.entries.iter().find(|e| e.in_e != e.action_trivial || e.in_e != e.quotient_leg_is_morphism) {
        return Ok(Err(format!("{}: E-membership disagrees with action triviality", e.name)));
    }
    ensure!(r.passed(), "(Dis, Ab) audit fails: {:?}", r.tt1_failures.first());
    let crs = crossed_complex_corpus()?;
    let mut checked = 0;
    for (name, c) in &crs {
        for n in 2..=c.top().max(2) {
            let e = crs_e_torsion(c, n)?;
            ensure!(e.counit_monic, "{name}, n = {n}: counit is not monic");
            ensure!(e.sequence.in_e() == e.projection_is_morphism, "{name}, n = {n}: E-membership disagrees");
            ensure!(e.implication_holds(), "{name}, n = {n}: central extension outside E");
            checked += 1;
        }
    }
    let groups: Vec<(String, FiniteGroup)> = groups_up_to_order_12().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    let pa = perf_ab_check(&groups, mode)?;
    ensure!(pa.passed(), "(Perf, Ab) audit fails");
    for ((name, g), row) in groups.iter().zip(&pa.rows) {
        let oracle = commutator_chain_oracle(g);
        ensure!(oracle == row.derived_orders, "{name}: derived series {:?}, oracle {:?}", row.derived_orders, oracle);
        let in_e = oracle.len() < 3;
        ensure!(in_e == row.in_e, "{name}: E-membership {} disagrees with the oracle", row.in_e);
    }
    Ok(Ok(format!(
        "{} crossed modules, {checked} crossed-complex degrees, {} groups of order at most 12",
        xms.len(),
        groups.len()
    )))
}
