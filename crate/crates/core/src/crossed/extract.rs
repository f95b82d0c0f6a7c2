use super::{validate_crossed_module, CrossedModule};
use crate::error::{Error, Result};
use crate::group::{GroupAction, GroupHom};
use crate::simplicial::{moore, TruncatedSimplicialGroup};

/// `δ_1: N_1 → X_0` with `X_0` acting through `s_0` by conjugation in `X_1`.
/// The Moore complex must vanish in every degree from 2 up to the last
/// stored (or coskeletally determined) one.
pub fn extract_crossed_module(x: &TruncatedSimplicialGroup) -> Result<CrossedModule> {
    let need = match x.coskeletal_above() {
        Some(k) => (k + 1).max(2),
        None => 1,
    };
    let y = crate::simplicial::moore_reaching(x, need.max(x.degree()))?;
    let m = moore(&y)?;
    if let Some(n) = (2..=y.degree()).find(|&n| m.chain.order(n as i32) > 1) {
        return Err(Error::NotTruncatedAt1 { degree: n });
    }
    let a = m.chain.group(1);
    let b = y.group(0).clone();
    let x1 = y.group(1);
    let n1 = &m.normalized[1];
    let s0 = y.degeneracy(0, 0);
    let perms = b
        .elements()
        .map(|g| {
            let sg = s0.apply(g);
            n1.elements()
                .iter()
                .map(|&e| n1.position(x1.conj(sg, e)).ok_or_else(|| Error::Malformed("N_1 is not normal in X_1".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let delta: GroupHom = m.chain.diff(1);
    let xm = CrossedModule::from_parts(&delta, &GroupAction::new(&b, &a, perms)?);
    validate_crossed_module(&xm).into_result()?;
    Ok(xm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::crossed::find_xmod_iso;
    use crate::group::library::symmetric;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::simplicial::{dis, dold_kan_gamma, ind, nerve_of_crossed_module};

    #[test]
    fn round_trips() {
        let s3 = symmetric(3);
        let (_, incl) = Subgroup::from_elements(&s3, &[0, 3, 4]).unwrap().to_group();
        let c4 = FiniteGroup::cyclic(4);
        let p = GroupHom::from_fn(&c4, &FiniteGroup::cyclic(2), |x| x % 2).unwrap();
        for xm in [CrossedModule::normal_inclusion(&incl).unwrap(), CrossedModule::central_extension(&p).unwrap()] {
            let back = extract_crossed_module(&nerve_of_crossed_module(&xm, 2).unwrap()).unwrap();
            assert!(find_xmod_iso(&xm, &back).unwrap().is_some());
        }
    }

    #[test]
    fn simple_objects() {
        let s3 = symmetric(3);
        let xm = extract_crossed_module(&dis(&s3, 2)).unwrap();
        assert!(xm.a.is_trivial() && xm.b.order() == 6);
        let c2 = FiniteGroup::cyclic(2);
        let xm = extract_crossed_module(&dold_kan_gamma(&ChainComplex::concentrated(&c2, 1), 2).unwrap()).unwrap();
        assert!(xm.a.order() == 2 && xm.b.is_trivial());
        let g = dold_kan_gamma(&ChainComplex::concentrated(&c2, 2), 3).unwrap();
        assert!(matches!(extract_crossed_module(&g), Err(Error::NotTruncatedAt1 { degree: 2 })));
        assert!(extract_crossed_module(&ind(&c2, 2)).is_ok());
    }
}
