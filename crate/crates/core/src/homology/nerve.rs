use serde::Serialize;

use super::{poset_homology, HomologyResult};
use crate::complexes::{check_monotone, fiber_le, Poset};
use crate::error::{Error, Result};
use crate::rings::CoeffRing;

/// One checked hypothesis: the named poset is `expected_dim`-spherical.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub expected_dim: i64,
    pub holds: bool,
}

/// A summand `dim H̃_{n-q-1}(Y_{>y}) · dim H̃_q(X_{f≤y})` with `q = n - t(y)`.
#[derive(Clone, Debug, Serialize)]
pub struct NerveTerm {
    pub y: usize,
    pub t: i64,
    pub q: i64,
    pub upper: usize,
    pub fiber: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NerveReport {
    pub n: i64,
    pub coeff: CoeffRing,
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_hold: bool,
    pub lhs: usize,
    pub base: usize,
    pub terms: Vec<NerveTerm>,
    pub rhs: usize,
    /// `None` when a hypothesis failed and the identity was not asserted.
    pub identity_holds: Option<bool>,
}

/// Homology concentrated in degree `d` on a complex of dimension at most `d`.
///
/// Contractible posets (a wedge of no spheres) pass for every `d ≥ 0`.
fn spherical_over(p_dim: isize, h: &HomologyResult, d: i64) -> bool {
    p_dim as i64 <= d && h.degrees.iter().all(|x| x.d == d || (x.betti == 0 && x.torsion.is_empty()))
}

fn check<E: Clone + Send + Sync>(
    name: String,
    p: &Poset<E>,
    d: i64,
    coeff: CoeffRing,
) -> Result<(HypothesisCheck, HomologyResult)> {
    let k = p.order_complex();
    let h = poset_homology(p, coeff)?;
    let holds = spherical_over(k.dim(), &h, d);
    Ok((HypothesisCheck { name, expected_dim: d, holds }, h))
}

/// Verifies, over a field, the rank form of the nerve filtration for a
/// poset map `f: X → Y` (given as an index map) and height function `t`:
///
/// `dim H̃_n(X) = dim H̃_n(Y) + Σ_y dim H̃_{n-q-1}(Y_{>y}) · dim H̃_q(X_{f≤y})`, `q = n - t(y)`.
///
/// The hypotheses (Y `n`-spherical, `f_{≤y}` `(n-t(y))`-spherical,
/// `Y_{>y}` `(t(y)-1)`-spherical) are checked first and reported.
pub fn nerve_rank_identity<E, F>(
    x: &Poset<E>,
    y: &Poset<F>,
    f: &[usize],
    t: impl Fn(usize) -> i64,
    n: i64,
    coeff: CoeffRing,
) -> Result<NerveReport>
where
    E: Clone + Send + Sync,
    F: Clone + Send + Sync,
{
    if !coeff.is_field() {
        return Err(Error::Invalid(format!("rank identity needs field coefficients, got {coeff}")));
    }
    check_monotone(x, y, f)?;
    let mut hypotheses = Vec::new();
    let (hy, hy_h) = check("Y".into(), y, n, coeff)?;
    hypotheses.push(hy);
    let mut terms = Vec::new();
    for yi in 0..y.len() {
        let ty = t(yi);
        let q = n - ty;
        let (fib, _) = fiber_le(x, y, f, yi);
        let (up, _) = y.above(yi);
        let (hf, hf_h) = check(format!("f<={yi}"), &fib, n - ty, coeff)?;
        let (hu, hu_h) = check(format!("Y>{yi}"), &up, ty - 1, coeff)?;
        hypotheses.push(hf);
        hypotheses.push(hu);
        terms.push(NerveTerm {
            y: yi,
            t: ty,
            q,
            upper: hu_h.betti(n - q - 1),
            fiber: hf_h.betti(q),
        });
    }
    let lhs = poset_homology(x, coeff)?.betti(n);
    let base = hy_h.betti(n);
    let rhs = base + terms.iter().map(|t| t.upper * t.fiber).sum::<usize>();
    let hypotheses_hold = hypotheses.iter().all(|h| h.holds);
    Ok(NerveReport {
        n,
        coeff,
        hypotheses,
        hypotheses_hold,
        lhs,
        base,
        terms,
        rhs,
        identity_holds: hypotheses_hold.then_some(lhs == rhs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_to_point() {
        let p = Poset::new(vec![()], |_, _| false).unwrap();
        let r = nerve_rank_identity(&p, &p, &[0], |_| 0, 0, CoeffRing::Q).unwrap();
        assert!(r.hypotheses_hold);
        assert_eq!((r.lhs, r.rhs), (0, 0));
        assert_eq!(r.identity_holds, Some(true));
    }

    #[test]
    fn integral_coefficients_rejected() {
        let p = Poset::new(vec![()], |_, _| false).unwrap();
        assert!(nerve_rank_identity(&p, &p, &[0], |_| 0, 0, CoeffRing::Z).is_err());
    }
}
