use serde::Serialize;

use crate::complexes::{build_splitting_poset, SplittingConstraints};
use crate::enumeration::{enumerate_subspaces, Splitting, Subspace};
use crate::error::{Error, Result};
use crate::linalg::complement;
use crate::rings::{FiniteField, FrameRing};

/// Elementwise check of `S(· ⊆ V, W ⊆ · | P) ≅ S(· ⊆ V, · | C)` under
/// `(A, B) ↦ (A, B ∩ C)` and `(A', B') ↦ (A', B' + W)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuttingReport {
    pub ambient: usize,
    pub q: u64,
    pub dim_v: usize,
    pub dim_w: usize,
    pub dim_c: usize,
    pub source_size: usize,
    pub target_size: usize,
    pub well_defined: bool,
    pub mutually_inverse: bool,
    pub order_preserving: bool,
    pub holds: bool,
}

/// Splittings `(A', B')` of `C` with `A' ⊆ V`.
fn cut_splittings<F: FiniteField + FrameRing>(c: &Subspace<F>, v: &Subspace<F>) -> Result<Vec<Splitting<F>>> {
    let n = c.ambient();
    let inside: Vec<Vec<Subspace<F>>> = (0..=c.dim())
        .map(|r| Ok(enumerate_subspaces::<F>(n, r)?.into_iter().filter(|s| c.contains(s)).collect()))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for r in 1..c.dim() {
        for a in inside[r].iter().filter(|a| v.contains(a)) {
            for b in &inside[c.dim() - r] {
                if a.intersection_dim(b) == 0 {
                    out.push(Splitting {
                        first: a.clone(),
                        second: b.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Requires `V ∩ W = 0` and `V + W ≠ P`; `C` is `V` plus a complement of `V + W`.
pub fn cutting_down_iso<F: FiniteField + FrameRing>(v: &Subspace<F>, w: &Subspace<F>) -> Result<CuttingReport> {
    let n = v.ambient();
    if w.ambient() != n {
        return Err(Error::DimensionMismatch(format!("V in F^{n}, W in F^{}", w.ambient())));
    }
    if v.intersection_dim(w) != 0 {
        return Err(Error::Hypothesis("V ∩ W ≠ 0".into()));
    }
    if v.dim() + w.dim() == n {
        return Err(Error::Hypothesis("V ⊕ W = P".into()));
    }
    let both: Vec<Vec<F>> = v.basis().iter().chain(w.basis()).cloned().collect();
    let mut c_basis = v.basis().to_vec();
    c_basis.extend(complement(&both, n)?);
    let c = Subspace::span(&c_basis, n)?;
    debug_assert!(c.is_complement_of(w) && c.contains(v));

    let constraints = SplittingConstraints {
        first_within: Some(v.clone()),
        second_contains: Some(w.clone()),
    };
    let x = build_splitting_poset::<F>(n, &constraints)?;
    let y = cut_splittings(&c, v)?;
    let find = |s: &Splitting<F>, set: &[Splitting<F>]| set.iter().position(|t| t == s);

    let phi: Vec<Option<usize>> = x
        .elements()
        .iter()
        .map(|s| {
            find(
                &Splitting {
                    first: s.first.clone(),
                    second: s.second.intersect(&c),
                },
                &y,
            )
        })
        .collect();
    let psi: Vec<Option<usize>> = y
        .iter()
        .map(|s| {
            find(
                &Splitting {
                    first: s.first.clone(),
                    second: s.second.sum(w),
                },
                x.elements(),
            )
        })
        .collect();
    let well_defined = phi.iter().chain(&psi).all(Option::is_some);
    let mutually_inverse = well_defined
        && phi.iter().enumerate().all(|(i, &j)| psi[j.unwrap()] == Some(i))
        && psi.iter().enumerate().all(|(j, &i)| phi[i.unwrap()] == Some(j));
    let order_preserving = well_defined
        && (0..x.len()).all(|a| {
            (0..x.len()).all(|b| x.le(a, b) == y[phi[a].unwrap()].le(&y[phi[b].unwrap()]))
        });
    Ok(CuttingReport {
        ambient: n,
        q: F::order(),
        dim_v: v.dim(),
        dim_w: w.dim(),
        dim_c: c.dim(),
        source_size: x.len(),
        target_size: y.len(),
        well_defined,
        mutually_inverse,
        order_preserving,
        holds: well_defined && mutually_inverse && order_preserving,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::Line;
    use crate::{F2, F3};

    fn line<F: FiniteField + FrameRing>(v: &[i64]) -> Subspace<F> {
        Subspace::from_line(&Line::from_i64(v).unwrap())
    }

    #[test]
    fn lines_in_three_space() {
        let r = cutting_down_iso(&line::<F2>(&[1, 0, 0]), &line::<F2>(&[0, 1, 0])).unwrap();
        assert!(r.holds);
        assert_eq!((r.source_size, r.target_size, r.dim_c), (2, 2, 2));
        let r = cutting_down_iso(&line::<F3>(&[1, 1, 0]), &line::<F3>(&[0, 1, 2])).unwrap();
        assert!(r.holds);
        assert_eq!(r.source_size, 3);
    }

    #[test]
    fn plane_and_line_in_four_space() {
        let v = Subspace::<F2>::standard(4, 2);
        let r = cutting_down_iso(&v, &line::<F2>(&[0, 0, 1, 1])).unwrap();
        assert!(r.holds);
        assert!(r.source_size > 2);
    }

    #[test]
    fn complementary_pair_rejected() {
        let v = Subspace::<F2>::standard(3, 2);
        assert!(matches!(
            cutting_down_iso(&v, &line::<F2>(&[0, 0, 1])),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            cutting_down_iso(&line::<F2>(&[1, 0, 0]), &v),
            Err(Error::Hypothesis(_))
        ));
    }
}
