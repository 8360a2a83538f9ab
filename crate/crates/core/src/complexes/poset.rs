use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::simplicial::SimplicialComplex;
use crate::enumeration::{enumerate_splittings, enumerate_subspaces, gaussian_binomial, Splitting, Subspace};
use crate::error::{Error, Result};
use crate::rings::{FiniteField, FrameRing};

/// Desk-scale guard on poset size; the order complex of a larger poset
/// exceeds the boundary-column guard in degree 0 anyway.
pub const MAX_POSET_ELEMENTS: usize = 2000;

fn guard_elements(size: u128) -> Result<()> {
    if size > MAX_POSET_ELEMENTS as u128 {
        return Err(Error::SizeGuard {
            what: "poset elements",
            size: usize::try_from(size).unwrap_or(usize::MAX),
            limit: MAX_POSET_ELEMENTS,
        });
    }
    Ok(())
}

/// A finite poset stored as its strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset<E> {
    elements: Vec<E>,
    lt: Vec<Vec<bool>>,
}

impl<E: Clone + Send + Sync> Poset<E> {
    /// Builds the poset with `x < y` iff `less(x, y)`, checking that the
    /// relation is irreflexive and transitive.
    pub fn new(elements: Vec<E>, less: impl Fn(&E, &E) -> bool + Sync) -> Result<Self> {
        guard_elements(elements.len() as u128)?;
        let lt: Vec<Vec<bool>> = elements
            .par_iter()
            .map(|x| elements.iter().map(|y| less(x, y)).collect())
            .collect();
        let p = Poset { elements, lt };
        p.validate()?;
        Ok(p)
    }

    pub fn from_relations(elements: Vec<E>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        guard_elements(n as u128)?;
        let mut lt = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation ({a},{b}) out of range")));
            }
            lt[a][b] = true;
        }
        let p = Poset { elements, lt };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let words = n.div_ceil(64);
        let bits: Vec<Vec<u64>> = self
            .lt
            .iter()
            .map(|row| {
                let mut w = vec![0u64; words];
                for (j, _) in row.iter().enumerate().filter(|(_, &x)| x) {
                    w[j / 64] |= 1 << (j % 64);
                }
                w
            })
            .collect();
        for a in 0..n {
            if self.lt[a][a] {
                return Err(Error::Invalid(format!("order is not irreflexive at {a}")));
            }
            for b in (0..n).filter(|&b| self.lt[a][b]) {
                // lt[b] ⊆ lt[a]
                if let Some(k) = (0..words).find(|&k| bits[b][k] & !bits[a][k] != 0) {
                    let c = k * 64 + (bits[b][k] & !bits[a][k]).trailing_zeros() as usize;
                    return Err(Error::Invalid(format!("order is not transitive at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a][b]
    }

    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).filter(move |&b| self.lt[a][b]).map(move |b| (a, b)))
            .collect()
    }

    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        self.relations()
            .into_iter()
            .filter(|&(a, b)| !(0..n).any(|c| self.lt[a][c] && self.lt[c][b]))
            .collect()
    }

    /// Nerve: chains as simplices.
    pub fn order_complex(&self) -> SimplicialComplex {
        SimplicialComplex::grow(self.len(), |s| {
            let new = *s.last().expect("nonempty");
            s[..s.len() - 1].iter().all(|&a| self.lt[a][new] || self.lt[new][a])
        })
    }

    pub fn op(&self) -> Self {
        let n = self.len();
        Poset {
            elements: self.elements.clone(),
            lt: (0..n).map(|a| (0..n).map(|b| self.lt[b][a]).collect()).collect(),
        }
    }

    /// Induced sub-poset on `indices`, in that order.
    pub fn induced(&self, indices: &[usize]) -> Self {
        Poset {
            elements: indices.iter().map(|&i| self.elements[i].clone()).collect(),
            lt: indices.iter().map(|&a| indices.iter().map(|&b| self.lt[a][b]).collect()).collect(),
        }
    }

    fn subset(&self, keep: impl Fn(usize) -> bool) -> (Self, Vec<usize>) {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        (self.induced(&idx), idx)
    }

    /// `P_{>y}` with the index map back into `P`.
    pub fn above(&self, y: usize) -> (Self, Vec<usize>) {
        self.subset(|i| self.lt[y][i])
    }

    /// `P_{<y}` with the index map back into `P`.
    pub fn below(&self, y: usize) -> (Self, Vec<usize>) {
        self.subset(|i| self.lt[i][y])
    }

    pub fn map<F: Clone + Send + Sync>(&self, f: impl Fn(&E) -> F) -> Poset<F> {
        Poset {
            elements: self.elements.iter().map(f).collect(),
            lt: self.lt.clone(),
        }
    }
}

/// Rejects a non-monotone `f` (given as an index map) with a witness pair.
pub fn check_monotone<E, F>(source: &Poset<E>, target: &Poset<F>, f: &[usize]) -> Result<()>
where
    E: Clone + Send + Sync,
    F: Clone + Send + Sync,
{
    if f.len() != source.len() {
        return Err(Error::DimensionMismatch(format!(
            "map has {} entries for {} elements",
            f.len(),
            source.len()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= target.len()) {
        return Err(Error::Invalid(format!("map value {bad} out of range")));
    }
    for (a, b) in source.relations() {
        if !target.le(f[a], f[b]) {
            return Err(Error::NonMonotone(a, b));
        }
    }
    Ok(())
}

/// `f_{≤y} = {x | f(x) ≤ y}` with the index map back into the source.
pub fn fiber_le<E, F>(source: &Poset<E>, target: &Poset<F>, f: &[usize], y: usize) -> (Poset<E>, Vec<usize>)
where
    E: Clone + Send + Sync,
    F: Clone + Send + Sync,
{
    source.subset(|x| target.le(f[x], y))
}

/// Poset of simplices of `k` ordered by strict inclusion.
pub fn face_poset(k: &SimplicialComplex) -> Poset<Vec<usize>> {
    let elements: Vec<Vec<usize>> = k.iter().cloned().collect();
    Poset::new(elements, |a, b| a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok()))
        .expect("inclusion is a strict order")
}

impl<E: Serialize> Serialize for Poset<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.elements.len();
        let relations: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| self.lt[a][b]).map(move |b| (a, b)))
            .collect();
        let mut st = s.serialize_struct("Poset", 2)?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("relations", &relations)?;
        st.end()
    }
}

fn proper_subspaces<F: FiniteField + FrameRing>(n: usize) -> Result<Vec<Subspace<F>>> {
    guard_elements((1..n).map(|r| gaussian_binomial(n as u32, r as u32, F::order())).sum())?;
    let mut out = Vec::new();
    for r in 1..n {
        out.extend(enumerate_subspaces::<F>(n, r)?);
    }
    Ok(out)
}

fn strict_inclusion<F: FiniteField + FrameRing>(a: &Subspace<F>, b: &Subspace<F>) -> bool {
    a.dim() < b.dim() && b.contains(a)
}

/// `T(Fⁿ)`: proper nonzero subspaces ordered by inclusion.
pub fn build_tits<F: FiniteField + FrameRing>(n: usize) -> Result<Poset<Subspace<F>>> {
    Poset::new(proper_subspaces::<F>(n)?, strict_inclusion)
}

/// `T(Fⁿ rel⁰ W)` with `W` spanned by the first `w` basis vectors.
pub fn build_relative_tits<F: FiniteField + FrameRing>(n: usize, w: usize) -> Result<Poset<Subspace<F>>> {
    if w > n {
        return Err(Error::Invalid(format!("w = {w} exceeds n = {n}")));
    }
    let wsp = Subspace::<F>::standard(n, w);
    let elements = proper_subspaces::<F>(n)?
        .into_iter()
        .filter(|v| v.intersection_dim(&wsp) == 0)
        .collect();
    Poset::new(elements, strict_inclusion)
}

/// Restrictions `A ⊆ V` and `W ⊆ B` on splittings `(A, B)`.
#[derive(Clone, Debug)]
pub struct SplittingConstraints<F> {
    pub first_within: Option<Subspace<F>>,
    pub second_contains: Option<Subspace<F>>,
}

impl<F> Default for SplittingConstraints<F> {
    fn default() -> Self {
        SplittingConstraints {
            first_within: None,
            second_contains: None,
        }
    }
}

impl<F: FiniteField + FrameRing> SplittingConstraints<F> {
    pub fn admits(&self, s: &Splitting<F>) -> bool {
        self.first_within.as_ref().map_or(true, |v| v.contains(&s.first))
            && self.second_contains.as_ref().map_or(true, |w| s.second.contains(w))
    }
}

/// `S^{E₁}(· ⊆ V, W ⊆ · | Fⁿ)` with the refinement order.
pub fn build_splitting_poset<F: FiniteField + FrameRing>(
    n: usize,
    constraints: &SplittingConstraints<F>,
) -> Result<Poset<Splitting<F>>> {
    for c in [&constraints.first_within, &constraints.second_contains].into_iter().flatten() {
        if c.ambient() != n {
            return Err(Error::DimensionMismatch(format!(
                "constraint in F^{} for splittings of F^{n}",
                c.ambient()
            )));
        }
    }
    let q = F::order() as u128;
    guard_elements(
        (1..n)
            .map(|k| gaussian_binomial(n as u32, k as u32, F::order()).saturating_mul(q.saturating_pow((k * (n - k)) as u32)))
            .fold(0u128, u128::saturating_add),
    )?;
    let elements = enumerate_splittings::<F>(n)?
        .into_iter()
        .filter(|s| constraints.admits(s))
        .collect();
    Poset::new(elements, |a: &Splitting<F>, b| a != b && a.le(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3};

    #[test]
    fn tits_buildings() {
        let t = build_tits::<F2>(2).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.relations().is_empty());
        let t = build_tits::<F2>(3).unwrap();
        assert_eq!(t.len(), 14);
        assert_eq!(t.covering_relations().len(), 21);
        let r = build_relative_tits::<F2>(3, 1).unwrap();
        assert_eq!(r.elements().iter().filter(|v| v.dim() == 1).count(), 6);
        assert_eq!(r.elements().iter().filter(|v| v.dim() == 2).count(), 4);
    }

    #[test]
    fn upsets_in_the_building() {
        let t = build_tits::<F2>(3).unwrap();
        let line = t.elements().iter().position(|v| v.dim() == 1).unwrap();
        let (up, _) = t.above(line);
        assert_eq!(up.len(), 3);
        assert!(up.relations().is_empty());
    }

    #[test]
    fn splitting_posets() {
        let s = build_splitting_poset::<F2>(2, &SplittingConstraints::default()).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.relations().is_empty());
        let s = build_splitting_poset::<F2>(3, &SplittingConstraints::default()).unwrap();
        assert_eq!(s.len(), 56);
        assert_eq!(s.order_complex().dim(), 1);
        let w = Subspace::<F2>::standard(3, 1);
        let c = SplittingConstraints {
            first_within: None,
            second_contains: Some(w.clone()),
        };
        let sw = build_splitting_poset::<F2>(3, &c).unwrap();
        assert!(sw.elements().iter().all(|x| x.second.contains(&w)));
        assert!(sw.len() < 56 && !sw.is_empty());
        let bad = SplittingConstraints {
            first_within: Some(Subspace::<F3>::standard(2, 1)),
            second_contains: None,
        };
        assert!(build_splitting_poset::<F3>(3, &bad).is_err());
    }

    #[test]
    fn chains_and_monotonicity() {
        let p = Poset::new(vec![0, 1, 2], |a: &i32, b: &i32| a < b).unwrap();
        assert_eq!(p.order_complex().f_vector(), vec![3, 3, 1]);
        let q = Poset::new(vec![0, 1], |a: &i32, b: &i32| a < b).unwrap();
        assert!(check_monotone(&p, &q, &[0, 0, 1]).is_ok());
        assert_eq!(check_monotone(&p, &q, &[1, 0, 0]), Err(Error::NonMonotone(0, 1)));
        assert!(Poset::from_relations(vec![0, 1, 2], &[(0, 1), (1, 2)]).is_err());
        let (fib, idx) = fiber_le(&p, &q, &[0, 0, 1], 0);
        assert_eq!((fib.len(), idx), (2, vec![0, 1]));
    }
}
