use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::One;

use crate::complexes::{FrameComplex, SimplicialComplex};
use crate::enumeration::Line;
use crate::error::{Error, Result};
use crate::homology::Chain;
use crate::rings::{FiniteField, FrameRing};
use crate::Z;

/// `⟦block₁⟧ ∗ ⟦block₂⟧ ∗ …`, each block an ordered list of lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereClassSpec<R> {
    pub blocks: Vec<Vec<Line<R>>>,
}

impl<R: FrameRing> SphereClassSpec<R> {
    pub fn new(blocks: Vec<Vec<Line<R>>>) -> Self {
        SphereClassSpec { blocks }
    }

    /// `-1 + Σ (|block| - 1)`.
    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|b| b.len() as i64 - 1).sum::<i64>() - 1
    }

    /// The same spec with two entries of one block exchanged.
    pub fn swapped(&self, block: usize, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.blocks[block].swap(i, j);
        out
    }

    pub fn lines(&self) -> impl Iterator<Item = &Line<R>> {
        self.blocks.iter().flatten()
    }
}

/// Fundamental cycle of the join of the boundary spheres of the blocks,
/// oriented by block order and by the order within each block.
pub fn sphere_class<R: FrameRing>(fc: &FrameComplex<R>, spec: &SphereClassSpec<R>) -> Result<Chain<Z>> {
    let blocks = spec
        .blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|l| {
                    fc.vertex_of(l)
                        .ok_or_else(|| Error::JoinCondition(format!("{l} is not a vertex")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    sphere_class_indices(&fc.complex, &blocks)
}

/// [`sphere_class`] on vertex indices.
pub fn sphere_class_indices(k: &SimplicialComplex, blocks: &[Vec<usize>]) -> Result<Chain<Z>> {
    if blocks.is_empty() {
        return Err(Error::JoinCondition("empty product".into()));
    }
    let mut seen = BTreeSet::new();
    for b in blocks {
        if b.len() < 2 {
            return Err(Error::JoinCondition(format!("block {b:?} has fewer than two vertices")));
        }
        for &v in b {
            if v >= k.vertex_count() || !seen.insert(v) {
                return Err(Error::JoinCondition(format!("vertex {v} repeated or out of range")));
            }
        }
    }
    // each block contributes ∂[v_0..v_p] = Σ (-1)^i [v_0..v̂_i..v_p]
    let faces: Vec<Vec<(Vec<usize>, bool)>> = blocks
        .iter()
        .map(|b| {
            (0..b.len())
                .map(|i| {
                    let mut f = b.clone();
                    f.remove(i);
                    (f, i % 2 == 1)
                })
                .collect()
        })
        .collect();
    let degree = seen.len() - blocks.len() - 1;
    let mut chain = Chain::zero(degree);
    for pick in faces.iter().multi_cartesian_product() {
        let simplex: Vec<usize> = pick.iter().flat_map(|(f, _)| f.iter().copied()).collect();
        let mut sorted = simplex.clone();
        sorted.sort_unstable();
        if !k.contains(&sorted) {
            return Err(Error::JoinCondition(format!("required simplex {sorted:?} is missing")));
        }
        let odd = pick.iter().filter(|(_, o)| *o).count() % 2 == 1;
        chain.add_term(&simplex, if odd { -Z::one() } else { Z::one() })?;
    }
    Ok(chain)
}

fn combine<F: FiniteField + FrameRing>(x: &Line<F>, c: &F, y: &[F]) -> Result<Line<F>> {
    Line::new(x.rep().iter().zip(y).map(|(a, b)| a.clone() + c.clone() * b.clone()).collect())
}

/// All classes `⟦v_1,v_2,w_2⟧ ∗ … ∗ ⟦v_{2d-1},v_{2d},w_{2d}⟧ ∗ ⟦v_{2d+1},u_{2d+1}⟧ ∗ … ∗ ⟦v_n,u_n⟧`
/// over ordered frames `v`, with `w_{2i} = v_{2i-1} + c·v_{2i}` and
/// `u_j = v_j + c·x`, `x` among `v_i (i < j)` and `e_i (i ≤ m)`, `c` a unit.
/// Specs differing only by the order inside or between blocks are listed once.
pub fn generating_family<F: FiniteField + FrameRing>(fc: &FrameComplex<F>) -> Result<Vec<SphereClassSpec<F>>> {
    if fc.augmented {
        return Err(Error::Invalid("generating family is defined on B, not BA".into()));
    }
    let (n, m) = (fc.n, fc.m);
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let total = n + m;
    let units = F::units();
    let es: Vec<Vec<F>> = (0..m).map(|i| Line::<F>::standard(total, i).rep().to_vec()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for top in fc.complex.simplices(n - 1) {
        for order in top.iter().permutations(n) {
            let v: Vec<&Line<F>> = order.iter().map(|&&i| &fc.lines[i]).collect();
            for d in 0..=n / 2 {
                let mut choices: Vec<Vec<Vec<Line<F>>>> = Vec::new();
                for i in 0..d {
                    let (a, b) = (v[2 * i], v[2 * i + 1]);
                    let opts = units
                        .iter()
                        .map(|c| Ok(vec![a.clone(), b.clone(), combine(a, c, b.rep())?]))
                        .collect::<Result<Vec<_>>>()?;
                    choices.push(opts);
                }
                for j in 2 * d..n {
                    let partners: Vec<&[F]> =
                        v[..j].iter().map(|l| l.rep()).chain(es.iter().map(Vec::as_slice)).collect();
                    let mut opts = Vec::new();
                    for x in &partners {
                        for c in &units {
                            opts.push(vec![v[j].clone(), combine(v[j], c, x)?]);
                        }
                    }
                    choices.push(opts);
                }
                if choices.iter().any(Vec::is_empty) {
                    continue;
                }
                for blocks in choices.into_iter().multi_cartesian_product() {
                    let key: BTreeSet<BTreeSet<&Line<F>>> = blocks.iter().map(|b| b.iter().collect()).collect();
                    let key: Vec<Vec<Line<F>>> = key.into_iter().map(|b| b.into_iter().cloned().collect()).collect();
                    if seen.insert(key) {
                        out.push(SphereClassSpec::new(blocks));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::build_b;
    use crate::homology::{class_in_span, top_cycle_basis};
    use crate::{F2, F3};

    fn line(v: &[i64]) -> Line<F2> {
        Line::from_i64(v).unwrap()
    }

    #[test]
    fn square_orientation() {
        let k = SimplicialComplex::from_simplices(4, [vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap();
        let c = sphere_class_indices(&k, &[vec![0, 1], vec![2, 3]]).unwrap();
        let expected = Chain::<Z>::from_terms(
            1,
            [
                (vec![0, 2], Z::from(1)),
                (vec![0, 3], Z::from(-1)),
                (vec![1, 2], Z::from(-1)),
                (vec![1, 3], Z::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(c, expected);
        assert!(c.is_cycle());
        let swapped = sphere_class_indices(&k, &[vec![1, 0], vec![2, 3]]).unwrap();
        assert_eq!(swapped, c.neg());
        assert!(matches!(
            sphere_class_indices(&k, &[vec![0, 2], vec![1, 3]]),
            Err(Error::JoinCondition(_))
        ));
    }

    #[test]
    fn triangle_in_b2() {
        let fc = build_b::<F2>(2, 0, None).unwrap();
        let spec = SphereClassSpec::new(vec![vec![line(&[1, 0]), line(&[0, 1]), line(&[1, 1])]]);
        let c = sphere_class(&fc, &spec).unwrap();
        assert_eq!(c.degree(), 1);
        assert!(c.is_cycle());
        assert_eq!(sphere_class(&fc, &spec.swapped(0, 0, 2)).unwrap(), c.neg());
    }

    #[test]
    fn small_families() {
        assert!(generating_family(&build_b::<F2>(1, 0, None).unwrap()).unwrap().is_empty());
        let fc = build_b::<F2>(1, 1, None).unwrap();
        let fam = generating_family(&fc).unwrap();
        assert_eq!(fam.len(), 1);
        let lines: BTreeSet<_> = fam[0].lines().cloned().collect();
        assert_eq!(lines, [line(&[0, 1]), line(&[1, 1])].into());

        let fc = build_b::<F2>(2, 0, None).unwrap();
        let fam = generating_family(&fc).unwrap();
        let want: BTreeSet<_> = [line(&[1, 0]), line(&[0, 1]), line(&[1, 1])].into();
        assert!(fam.iter().any(|s| s.blocks.len() == 1 && s.lines().cloned().collect::<BTreeSet<_>>() == want));
    }

    #[test]
    fn family_spans_top_homology() {
        for fc in [build_b::<F3>(2, 0, None).unwrap(), build_b::<F3>(1, 1, None).unwrap()] {
            let gens: Vec<Chain<Z>> = generating_family(&fc)
                .unwrap()
                .iter()
                .map(|s| sphere_class(&fc, s).unwrap())
                .collect();
            for z in top_cycle_basis::<Z>(&fc.complex).unwrap() {
                assert!(class_in_span(&fc.complex, &z, &gens).unwrap());
            }
        }
    }
}
