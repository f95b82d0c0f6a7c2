use super::{action_witness, find1, find2, find3, hom_witness, AxiomReport, CrossedModule};
use crate::budget;
use crate::error::Result;
use crate::group::{Elem, FiniteGroup};

/// `L →δ2 M →δ1 N` with `N` acting on `L` and `M` and a Peiffer lifting
/// `{m0, m1} = peiffer[m0·|M| + m1]`.
#[derive(Clone, Debug)]
pub struct TwoCrossedModule {
    pub l: FiniteGroup,
    pub m: FiniteGroup,
    pub n: FiniteGroup,
    pub delta2: Vec<Elem>,
    pub delta1: Vec<Elem>,
    pub act_l: Vec<Vec<Elem>>,
    pub act_m: Vec<Vec<Elem>>,
    pub peiffer: Vec<Elem>,
}

/// `δ: L → M` with a lifting `M × M → L`, validated either as a reduced
/// 2-crossed module or as a stable crossed module.
#[derive(Clone, Debug)]
pub struct PeifferModule {
    pub l: FiniteGroup,
    pub m: FiniteGroup,
    pub delta: Vec<Elem>,
    pub peiffer: Vec<Elem>,
}

pub type ReducedTwoCrossedModule = PeifferModule;
pub type StableCrossedModule = PeifferModule;

impl PeifferModule {
    /// `id: G → G` with `{m0, m1} = [m0, m1]`.
    pub fn commutator(g: &FiniteGroup) -> PeifferModule {
        let n = g.order();
        let peiffer = (0..n * n).map(|k| g.commutator(k / n, k % n)).collect();
        PeifferModule { l: g.clone(), m: g.clone(), delta: g.elements().collect(), peiffer }
    }

    /// The lifting that is identically 1.
    pub fn zero_lifting(l: &FiniteGroup, m: &FiniteGroup, delta: Vec<Elem>) -> PeifferModule {
        let n = m.order();
        PeifferModule { l: l.clone(), m: m.clone(), delta, peiffer: vec![0; n * n] }
    }

    pub fn bracket(&self, m0: Elem, m1: Elem) -> Elem {
        self.peiffer[m0 * self.m.order() + m1]
    }

    /// `δ` with the action `ᵐl = l{δ(l)⁻¹, m}`.
    pub fn underlying_crossed_module(&self) -> CrossedModule {
        let (l, m) = (&self.l, &self.m);
        let action = m
            .elements()
            .map(|g| l.elements().map(|x| l.mul(x, self.bracket(m.inv(self.delta[x]), g))).collect())
            .collect();
        CrossedModule { a: l.clone(), b: m.clone(), delta: self.delta.clone(), action }
    }
}

impl TwoCrossedModule {
    /// A crossed module as the 2-crossed module with `L = 0`.
    pub fn from_crossed_module(xm: &CrossedModule) -> TwoCrossedModule {
        let t = FiniteGroup::trivial();
        let nm = xm.a.order();
        TwoCrossedModule {
            l: t,
            m: xm.a.clone(),
            n: xm.b.clone(),
            delta2: vec![0],
            delta1: xm.delta.clone(),
            act_l: vec![vec![0]; xm.b.order()],
            act_m: xm.action.clone(),
            peiffer: vec![0; nm * nm],
        }
    }

    /// `L → M → 0` with trivial actions.
    pub fn from_peiffer(p: &PeifferModule) -> TwoCrossedModule {
        TwoCrossedModule {
            l: p.l.clone(),
            m: p.m.clone(),
            n: FiniteGroup::trivial(),
            delta2: p.delta.clone(),
            delta1: vec![0; p.m.order()],
            act_l: vec![p.l.elements().collect()],
            act_m: vec![p.m.elements().collect()],
            peiffer: p.peiffer.clone(),
        }
    }

    pub fn bracket(&self, m0: Elem, m1: Elem) -> Elem {
        self.peiffer[m0 * self.m.order() + m1]
    }

    /// `δ2` with the action `ᵐl = l{δ2(l)⁻¹, m}`.
    pub fn derived_crossed_module(&self) -> CrossedModule {
        let (l, m) = (&self.l, &self.m);
        let action = m
            .elements()
            .map(|g| l.elements().map(|x| l.mul(x, self.bracket(m.inv(self.delta2[x]), g))).collect())
            .collect();
        CrossedModule { a: l.clone(), b: m.clone(), delta: self.delta2.clone(), action }
    }
}

fn guard(m: &FiniteGroup) -> Result<()> {
    budget::current().check_candidates("Peiffer lifting axioms", (m.order() as u128).pow(3))
}

fn lifting_shape(r: &mut AxiomReport, l: &FiniteGroup, m: &FiniteGroup, peiffer: &[Elem]) -> bool {
    let w = if peiffer.len() != m.order() * m.order() {
        Some(vec![peiffer.len()])
    } else {
        find1(peiffer.len(), |k| peiffer[k] >= l.order())
    };
    r.record("lifting_table", w)
}

/// Tables, `δ1δ2 = 0`, equivariance of both differentials and 2XM1–2XM6.
pub fn validate_2xm(t: &TwoCrossedModule) -> Result<AxiomReport> {
    guard(&t.m)?;
    let (l, m, n) = (&t.l, &t.m, &t.n);
    let mut r = AxiomReport::new("2-crossed module");
    if !r.record("delta2_hom", hom_witness(l, m, &t.delta2)) || !r.record("delta1_hom", hom_witness(m, n, &t.delta1)) {
        return Ok(r);
    }
    let (auto, law) = action_witness(n, l, &t.act_l);
    if !r.record("action_on_l", auto.or(law)) {
        return Ok(r);
    }
    let (auto, law) = action_witness(n, m, &t.act_m);
    if !r.record("action_on_m", auto.or(law)) || !lifting_shape(&mut r, l, m, &t.peiffer) {
        return Ok(r);
    }
    r.record("composite", find1(l.order(), |x| t.delta1[t.delta2[x]] != 0));
    r.record(
        "equivariance",
        find2(n.order(), l.order(), |g, x| t.delta2[t.act_l[g][x]] != t.act_m[g][t.delta2[x]]).or_else(|| {
            find2(n.order(), m.order(), |g, y| t.delta1[t.act_m[g][y]] != n.conj(g, t.delta1[y]))
        }),
    );
    let br = |a: Elem, b: Elem| t.bracket(a, b);
    r.record(
        "2XM1",
        find2(m.order(), m.order(), |m0, m1| {
            let rhs = m.mul(m.conj(m0, m1), t.act_m[t.delta1[m0]][m.inv(m1)]);
            t.delta2[br(m0, m1)] != rhs
        }),
    );
    r.record(
        "2XM2",
        find2(l.order(), l.order(), |l0, l1| br(t.delta2[l0], t.delta2[l1]) != l.commutator(l0, l1)),
    );
    r.record(
        "2XM3",
        find2(l.order(), m.order(), |x, g| {
            let dl = t.delta2[x];
            l.mul(br(dl, g), br(g, dl)) != l.mul(x, t.act_l[t.delta1[g]][l.inv(x)])
        }),
    );
    r.record(
        "2XM4",
        find3(m.order(), |m0, m1, m2| {
            let inner = m.inv(t.delta2[br(m0, m2)]);
            let rhs = l.product(&[br(m0, m1), br(m0, m2), br(inner, t.act_m[t.delta1[m0]][m1])]);
            br(m0, m.mul(m1, m2)) != rhs
        }),
    );
    r.record(
        "2XM5",
        find3(m.order(), |m0, m1, m2| {
            let rhs = l.mul(br(m0, m.conj(m1, m2)), t.act_l[t.delta1[m0]][br(m1, m2)]);
            br(m.mul(m0, m1), m2) != rhs
        }),
    );
    r.record(
        "2XM6",
        (0..n.order()).find_map(|g| {
            find2(m.order(), m.order(), |m0, m1| t.act_l[g][br(m0, m1)] != br(t.act_m[g][m0], t.act_m[g][m1]))
                .map(|w| vec![g, w[0], w[1]])
        }),
    );
    Ok(r)
}

fn common(r: &mut AxiomReport, p: &PeifferModule) -> bool {
    let (l, m) = (&p.l, &p.m);
    if !r.record("delta_hom", hom_witness(l, m, &p.delta)) || !lifting_shape(r, l, m, &p.peiffer) {
        return false;
    }
    r.record("1", find2(m.order(), m.order(), |m0, m1| p.delta[p.bracket(m0, m1)] != m.commutator(m0, m1)));
    r.record(
        "2",
        find2(l.order(), l.order(), |l0, l1| p.bracket(p.delta[l0], p.delta[l1]) != l.commutator(l0, l1)),
    );
    true
}

/// The five equations of a reduced 2-crossed module.
pub fn validate_reduced_2xm(p: &ReducedTwoCrossedModule) -> Result<AxiomReport> {
    guard(&p.m)?;
    let (l, m) = (&p.l, &p.m);
    let mut r = AxiomReport::new("reduced 2-crossed module");
    if !common(&mut r, p) {
        return Ok(r);
    }
    let br = |a: Elem, b: Elem| p.bracket(a, b);
    r.record("3", find2(l.order(), m.order(), |x, g| l.mul(br(p.delta[x], g), br(g, p.delta[x])) != 0));
    r.record(
        "4",
        find3(m.order(), |m0, m1, m2| {
            let rhs = l.product(&[br(m0, m1), br(m0, m2), br(m.commutator(m2, m0), m1)]);
            br(m0, m.mul(m1, m2)) != rhs
        }),
    );
    r.record(
        "5",
        find3(m.order(), |m0, m1, m2| br(m.mul(m0, m1), m2) != l.mul(br(m0, m.conj(m1, m2)), br(m1, m2))),
    );
    Ok(r)
}

/// The four equations of a stable crossed module.
pub fn validate_stable(p: &StableCrossedModule) -> Result<AxiomReport> {
    guard(&p.m)?;
    let (l, m) = (&p.l, &p.m);
    let mut r = AxiomReport::new("stable crossed module");
    if !common(&mut r, p) {
        return Ok(r);
    }
    let br = |a: Elem, b: Elem| p.bracket(a, b);
    r.record("3", find2(m.order(), m.order(), |m0, m1| br(m1, m0) != l.inv(br(m0, m1))));
    r.record(
        "4",
        find3(m.order(), |m0, m1, m2| {
            br(m.mul(m0, m1), m2) != l.mul(br(m.conj(m0, m1), m.conj(m0, m2)), br(m0, m2))
        }),
    );
    Ok(r)
}
