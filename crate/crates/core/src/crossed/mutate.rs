//! Seeded single-entry perturbations of crossed-structure tables, used to
//! measure how reliably the validators reject corrupted input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{validate_2xm, validate_crossed_module, validate_reduced_2xm, validate_stable, AxiomReport};
use super::{CrossedModule, PeifferModule, TwoCrossedModule};
use crate::error::Result;
use crate::group::Elem;
use crate::par::{self, ExecMode};

#[derive(Clone, Debug)]
pub enum Structure {
    Crossed(CrossedModule),
    TwoCrossed(TwoCrossedModule),
    Reduced(PeifferModule),
    Stable(PeifferModule),
}

/// One mutable table: name, entry count, and the value range `0..range`.
struct Table {
    name: &'static str,
    len: usize,
    range: usize,
}

fn nested_len(t: &[Vec<Elem>]) -> usize {
    t.iter().map(Vec::len).sum()
}

fn nested_mut(t: &mut [Vec<Elem>], mut i: usize) -> &mut Elem {
    for row in t {
        if i < row.len() {
            return &mut row[i];
        }
        i -= row.len();
    }
    panic!("entry index out of range")
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Crossed(_) => "crossed_module",
            Structure::TwoCrossed(_) => "two_crossed_module",
            Structure::Reduced(_) => "reduced_two_crossed_module",
            Structure::Stable(_) => "stable_crossed_module",
        }
    }

    pub fn validate(&self) -> Result<AxiomReport> {
        match self {
            Structure::Crossed(x) => Ok(validate_crossed_module(x)),
            Structure::TwoCrossed(t) => validate_2xm(t),
            Structure::Reduced(p) => validate_reduced_2xm(p),
            Structure::Stable(p) => validate_stable(p),
        }
    }

    fn tables(&self) -> Vec<Table> {
        let t = |name, len, range| Table { name, len, range };
        match self {
            Structure::Crossed(x) => vec![t("delta", x.delta.len(), x.b.order()), t("action", nested_len(&x.action), x.a.order())],
            Structure::TwoCrossed(x) => vec![
                t("delta2", x.delta2.len(), x.m.order()),
                t("delta1", x.delta1.len(), x.n.order()),
                t("act_l", nested_len(&x.act_l), x.l.order()),
                t("act_m", nested_len(&x.act_m), x.m.order()),
                t("peiffer", x.peiffer.len(), x.l.order()),
            ],
            Structure::Reduced(p) | Structure::Stable(p) => {
                vec![t("delta", p.delta.len(), p.m.order()), t("peiffer", p.peiffer.len(), p.l.order())]
            }
        }
    }

    fn entry_mut(&mut self, table: &str, i: usize) -> &mut Elem {
        match (self, table) {
            (Structure::Crossed(x), "delta") => &mut x.delta[i],
            (Structure::Crossed(x), "action") => nested_mut(&mut x.action, i),
            (Structure::TwoCrossed(x), "delta2") => &mut x.delta2[i],
            (Structure::TwoCrossed(x), "delta1") => &mut x.delta1[i],
            (Structure::TwoCrossed(x), "act_l") => nested_mut(&mut x.act_l, i),
            (Structure::TwoCrossed(x), "act_m") => nested_mut(&mut x.act_m, i),
            (Structure::TwoCrossed(x), "peiffer") => &mut x.peiffer[i],
            (Structure::Reduced(p) | Structure::Stable(p), "delta") => &mut p.delta[i],
            (Structure::Reduced(p) | Structure::Stable(p), "peiffer") => &mut p.peiffer[i],
            (_, t) => panic!("no table {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub table: &'static str,
    pub index: usize,
    pub old: Elem,
    pub new: Elem,
}

/// Replaces one entry, chosen uniformly among entries whose range has a
/// second value, by a different value. `None` when nothing can change.
pub fn mutate(s: &Structure, rng: &mut impl Rng) -> Option<(Structure, Mutation)> {
    let tables: Vec<Table> = s.tables().into_iter().filter(|t| t.range > 1 && t.len > 0).collect();
    let total: usize = tables.iter().map(|t| t.len).sum();
    if total == 0 {
        return None;
    }
    let mut k = rng.gen_range(0..total);
    let table = tables
        .iter()
        .find(|t| {
            if k < t.len {
                true
            } else {
                k -= t.len;
                false
            }
        })
        .expect("index inside the tables");
    let mut out = s.clone();
    let slot = out.entry_mut(table.name, k);
    let old = *slot;
    let mut new = rng.gen_range(0..table.range - 1);
    if new >= old {
        new += 1;
    }
    *slot = new;
    Some((out, Mutation { table: table.name, index: k, old, new }))
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationSweep {
    pub kind: &'static str,
    pub trials: usize,
    /// mutants rejected with a concrete witness
    pub detected: usize,
    pub undetected: Vec<Mutation>,
}

impl MutationSweep {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.detected as f64 / self.trials as f64
    }
}

/// `trials` independent mutants of `base`, mutant `i` drawn from the
/// stream seeded with `seed + i`.
pub fn mutation_sweep(base: &Structure, trials: usize, seed: u64, mode: ExecMode) -> Result<MutationSweep> {
    let outcomes = par::map_range(mode, trials, |i| -> Result<Option<Mutation>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let Some((m, what)) = mutate(base, &mut rng) else { return Ok(None) };
        let report = m.validate()?;
        let caught = report.failure().is_some_and(|f| f.witness.is_some());
        Ok((!caught).then_some(what))
    });
    let mut undetected = Vec::new();
    for o in outcomes {
        if let Some(m) = o? {
            undetected.push(m);
        }
    }
    Ok(MutationSweep { kind: base.kind(), trials, detected: trials - undetected.len(), undetected })
}
