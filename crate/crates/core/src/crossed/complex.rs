use super::{action_witness, validate_crossed_module, AxiomReport, CrossedModule};
use crate::chain::{ChainComplex, ChainMap, ProperChainComplex};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupAction, GroupHom};

/// A proper chain complex on degrees `0..=hi` with actions of `M_0` on
/// every `M_n`, `n ≥ 1`; `actions[n - 1][b][m] = ᵇm`.
#[derive(Clone, Debug)]
pub struct CrossedComplex {
    chain: ProperChainComplex,
    actions: Vec<Vec<Vec<Elem>>>,
}

impl CrossedComplex {
    /// Assembles without checking the clauses. The chain is re-indexed onto
    /// the window starting at degree 0.
    pub fn from_parts(chain: &ChainComplex, actions: Vec<Vec<Vec<Elem>>>) -> Result<CrossedComplex> {
        if let Some(n) = (chain.lo()..0.min(chain.hi() + 1)).find(|&n| chain.order(n) > 1) {
            return Err(Error::Malformed(format!("nontrivial group in negative degree {n}")));
        }
        let hi = chain.hi().max(0);
        let chain = ProperChainComplex::new(chain.on_window(0, hi))?;
        if actions.len() != hi as usize {
            return Err(Error::Malformed(format!("expected {hi} actions, got {}", actions.len())));
        }
        Ok(CrossedComplex { chain, actions })
    }

    pub fn new(chain: &ChainComplex, actions: Vec<Vec<Vec<Elem>>>) -> Result<CrossedComplex> {
        let c = Self::from_parts(chain, actions)?;
        validate_crossed_complex(&c).into_result()?;
        Ok(c)
    }

    /// All actions trivial.
    pub fn with_trivial_actions(chain: &ChainComplex) -> Result<CrossedComplex> {
        let hi = chain.hi().max(0);
        let m0 = chain.group(0);
        let actions = (1..=hi)
            .map(|n| {
                let mn = chain.group(n);
                GroupAction::trivial(&m0, &mn).perms().to_vec()
            })
            .collect();
        Self::new(chain, actions)
    }

    /// `A → B` placed in degrees 1 and 0.
    pub fn from_crossed_module(xm: &CrossedModule) -> Result<CrossedComplex> {
        Self::new(&xm.to_chain(), vec![xm.action.clone()])
    }

    pub fn chain(&self) -> &ProperChainComplex {
        &self.chain
    }

    pub fn top(&self) -> usize {
        self.chain.hi() as usize
    }

    pub fn group(&self, n: usize) -> FiniteGroup {
        self.chain.group(n as i32)
    }

    /// The action table on `M_n`, `n ≥ 1`.
    pub fn action(&self, n: usize) -> &[Vec<Elem>] {
        &self.actions[n - 1]
    }

    pub fn actions(&self) -> &[Vec<Vec<Elem>>] {
        &self.actions
    }

    /// `ᵇm` for `m ∈ M_n`; for `n = 0` this is conjugation.
    pub fn act(&self, n: usize, b: Elem, m: Elem) -> Elem {
        match n {
            0 => self.group(0).conj(b, m),
            _ if n > self.top() => 0,
            _ => self.actions[n - 1][b][m],
        }
    }

    /// `δ_1: M_1 → M_0` with its action.
    pub fn delta1(&self) -> CrossedModule {
        CrossedModule::from_parts(
            &self.chain.diff(1),
            &GroupAction::new_unchecked(&self.group(0), &self.group(1), self.action(1).to_vec()),
        )
    }

    /// A triple `(n, b, m)` with `n ≥ from` and `ᵇm ≠ m`.
    pub fn nontrivial_action_from(&self, from: usize) -> Option<(usize, Elem, Elem)> {
        (from.max(1)..=self.top()).find_map(|n| {
            let t = &self.actions[n - 1];
            t.iter().enumerate().find_map(|(b, p)| p.iter().enumerate().find(|&(m, &x)| x != m).map(|(m, _)| (n, b, m)))
        })
    }

    /// The restriction to degrees `0..=n` with the inherited actions.
    pub(crate) fn truncated(&self, n: usize) -> CrossedComplex {
        let top = n.min(self.top());
        CrossedComplex {
            chain: ProperChainComplex::new(self.chain.on_window(0, top as i32)).expect("truncation stays proper"),
            actions: self.actions[..top].to_vec(),
        }
    }
}

/// `(n, b, m)` with `f_n(ᵇm) ≠ ^{f_0 b} f_n(m)`, checked on generators.
pub fn action_preservation_witness(f: &ChainMap, src: &CrossedComplex, tgt: &CrossedComplex) -> Option<Vec<Elem>> {
    let f0 = f.component(0);
    let m0 = src.group(0);
    for n in 1..=src.top() {
        let fnn = f.component(n as i32);
        let mn = src.group(n);
        for &b in m0.generators() {
            for &m in mn.generators() {
                if fnn.apply(src.act(n, b, m)) != tgt.act(n, f0.apply(b), fnn.apply(m)) {
                    return Some(vec![n, b, m]);
                }
            }
        }
    }
    None
}

/// Per-clause checks: `M_n` abelian for `n ≥ 2`, genuine actions,
/// `δ_1(M_1)` acting trivially on `M_n` for `n ≥ 2`, equivariance of every
/// `δ_n`, and `δ_1` a crossed module. Witnesses start with the degree.
pub fn validate_crossed_complex(c: &CrossedComplex) -> AxiomReport {
    let mut r = AxiomReport::new("crossed complex");
    let top = c.top();
    let abelian = (2..=top).find_map(|n| c.group(n).noncommuting_pair().map(|(a, b)| vec![n, a, b]));
    r.record("abelian_above_1", abelian);
    let m0 = c.group(0);
    let mut actions = None;
    for n in 1..=top {
        let (auto, law) = action_witness(&m0, &c.group(n), c.action(n));
        if let Some(mut w) = auto.or(law) {
            w.insert(0, n);
            actions = Some(w);
            break;
        }
    }
    if !r.record("actions", actions) {
        return r;
    }
    let d1 = if top >= 1 { c.chain.diff(1) } else { GroupHom::zero(&FiniteGroup::trivial(), &m0) };
    let image = d1.image();
    let trivial = (2..=top).find_map(|n| {
        let mn = c.group(n);
        image
            .elements()
            .iter()
            .find_map(|&b| mn.generators().iter().find(|&&m| c.act(n, b, m) != m).map(|&m| vec![n, b, m]))
    });
    r.record("delta1_acts_trivially", trivial);
    let equivariance = (1..=top).find_map(|n| {
        let dn = c.chain.diff(n as i32);
        let mn = c.group(n);
        m0.elements().find_map(|b| {
            mn.elements().find(|&m| dn.apply(c.act(n, b, m)) != c.act(n - 1, b, dn.apply(m))).map(|m| vec![n, b, m])
        })
    });
    r.record("equivariance", equivariance);
    let crossed = if top >= 1 {
        validate_crossed_module(&c.delta1()).failure().map(|f| f.witness.clone().unwrap_or_default())
    } else {
        None
    };
    r.record("delta1_crossed", crossed);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library::symmetric;

    #[test]
    fn trivial_and_forced_failures() {
        let c2 = FiniteGroup::cyclic(2);
        let chain = ChainComplex::new(0, vec![c2.clone(), c2.clone(), c2.clone()], vec![GroupHom::zero(&c2, &c2), GroupHom::zero(&c2, &c2)]).unwrap();
        assert!(CrossedComplex::with_trivial_actions(&chain).is_ok());
        let bad = ChainComplex::concentrated(&symmetric(3), 2);
        let c = CrossedComplex::from_parts(&bad, vec![vec![vec![0]], vec![(0..6).collect()]]).unwrap();
        let r = validate_crossed_complex(&c);
        assert!(!r.get("abelian_above_1").unwrap().holds);
    }

    #[test]
    fn from_crossed_module() {
        let c = CrossedComplex::from_crossed_module(&CrossedModule::conjugation(&symmetric(3))).unwrap();
        assert_eq!(c.top(), 1);
        assert!(c.nontrivial_action_from(1).is_some());
        assert!(c.nontrivial_action_from(2).is_none());
    }

    #[test]
    fn delta1_image_must_act_trivially() {
        let c2 = FiniteGroup::cyclic(2);
        let c3 = FiniteGroup::cyclic(3);
        let chain = ChainComplex::new(
            0,
            vec![c2.clone(), c2.clone(), c3.clone()],
            vec![GroupHom::identity(&c2), GroupHom::zero(&c3, &c2)],
        )
        .unwrap();
        let inversion = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let r = validate_crossed_complex(&CrossedComplex::from_parts(&chain, vec![vec![vec![0, 1], vec![0, 1]], inversion]).unwrap());
        assert_eq!(r.get("delta1_acts_trivially").unwrap().witness, Some(vec![2, 1, 1]));
    }
}
