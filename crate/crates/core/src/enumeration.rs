//! Vertex and poset-element sets: lines, subspaces and splittings.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{is_primitive, rref, ExactMatrix};
use crate::rings::{norm_u64, EuclideanDomain, FiniteField, FrameRing, RingElem};

/// Truncation parameter for infinite rings: every coordinate of a line's
/// canonical representative has norm at most `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormBound(u64);

impl NormBound {
    pub fn new(b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::Invalid("norm bound must be at least 1".into()));
        }
        Ok(NormBound(b))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// A rank-one summand, stored as its canonical primitive representative
/// (first nonzero coordinate in canonical form).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line<R> {
    rep: Vec<R>,
}

fn canonicalize<R: EuclideanDomain>(mut v: Vec<R>) -> Vec<R> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        let u = first.canonical_unit().expect("nonzero");
        if !u.is_one() {
            for x in v.iter_mut() {
                *x = u.clone() * x.clone();
            }
        }
    }
    v
}

impl<R: FrameRing> Line<R> {
    /// The line spanned by a primitive vector.
    pub fn new(v: Vec<R>) -> Result<Self> {
        if !is_primitive(&v)? {
            return Err(Error::Invalid("vector is not primitive".into()));
        }
        Ok(Line {
            rep: canonicalize(v),
        })
    }

    pub fn from_i64(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| R::from_i64(x)).collect())
    }

    /// `e_i` (0-based index) in `Rⁿ`.
    pub fn standard(n: usize, i: usize) -> Self {
        let mut rep = vec![R::zero(); n];
        rep[i] = R::one();
        Line { rep }
    }

    pub fn rep(&self) -> &[R] {
        &self.rep
    }

    pub fn ambient_rank(&self) -> usize {
        self.rep.len()
    }

    /// Largest coordinate norm of the canonical representative.
    pub fn height(&self) -> u64 {
        self.rep.iter().map(|x| norm_u64(&x.norm())).max().unwrap_or(0)
    }

    pub fn within(&self, bound: Option<NormBound>) -> bool {
        R::is_finite() || bound.map_or(true, |b| self.height() <= b.get())
    }

    /// True iff the representative lies in the span of `e_1..e_m`.
    pub fn lies_in_first(&self, m: usize) -> bool {
        self.rep[m..].iter().all(Zero::is_zero)
    }

    /// `g·v` for an invertible `g`.
    pub fn act(&self, g: &ExactMatrix<R>) -> Result<Self> {
        Line::new(g.apply(&self.rep)?)
    }

    pub fn to_elems(&self) -> Vec<RingElem> {
        self.rep.iter().map(FrameRing::to_elem).collect()
    }
}

impl<R: FrameRing> std::fmt::Display for Line<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.rep.iter().join(","))
    }
}

impl<R: FrameRing> Serialize for Line<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_elems().serialize(s)
    }
}

/// Lines of `Rⁿ`; for infinite rings those within the norm bound, sorted by
/// height and then by representative.
pub fn enumerate_lines<R: FrameRing>(n: usize, bound: Option<NormBound>) -> Result<Vec<Line<R>>> {
    let coords = if R::is_finite() {
        R::elements_up_to_norm(0)
    } else {
        let b = bound.ok_or_else(|| Error::MissingBound(R::ring_id().to_string()))?;
        R::elements_up_to_norm(b.get())
    };
    let mut out = BTreeSet::new();
    for v in (0..n).map(|_| coords.iter().cloned()).multi_cartesian_product() {
        let Some(first) = v.iter().find(|x| !x.is_zero()) else {
            continue;
        };
        if !first.canonical_unit().is_some_and(|u| u.is_one()) {
            continue;
        }
        if is_primitive(&v)? {
            out.insert(Line { rep: v });
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut lines: Vec<Line<R>> = out.into_iter().collect();
    lines.sort_by_key(|l| l.height());
    Ok(lines)
}

/// A subspace of `Fⁿ`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: FiniteField + FrameRing> Subspace<F> {
    pub fn span(vectors: &[Vec<F>], ambient: usize) -> Result<Self> {
        let m = ExactMatrix::from_rows(vectors, ambient)?;
        let (r, _) = rref(&m);
        Ok(Subspace {
            ambient,
            basis: r.row_vectors(),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// Span of the first `w` standard basis vectors.
    pub fn standard(ambient: usize, w: usize) -> Self {
        let basis = (0..w)
            .map(|i| (0..ambient).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Subspace { ambient, basis }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::standard(ambient, ambient)
    }

    pub fn from_line(line: &Line<F>) -> Self {
        Subspace {
            ambient: line.ambient_rank(),
            basis: vec![line.rep().to_vec()],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(&vs, self.ambient).expect("same ambient space")
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.contains(&Self::span(&[v.to_vec()], self.ambient).expect("same ambient"))
    }

    pub fn intersection_dim(&self, other: &Self) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// `V ∩ W` via the left kernel of the stacked bases.
    pub fn intersect(&self, other: &Self) -> Self {
        let k = self.dim();
        if k == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let stacked = ExactMatrix::from_rows(&rows, self.ambient).expect("same ambient");
        let vectors: Vec<Vec<F>> = crate::linalg::nullspace(&stacked.transpose())
            .into_iter()
            .map(|coeffs| {
                (0..self.ambient)
                    .map(|j| {
                        (0..k).fold(F::zero(), |acc, i| {
                            acc + coeffs[i].clone() * self.basis[i][j].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        Self::span(&vectors, self.ambient).expect("same ambient")
    }

    /// `V ⊕ W = Fⁿ`.
    pub fn is_complement_of(&self, other: &Self) -> bool {
        self.dim() + other.dim() == self.ambient && self.intersection_dim(other) == 0
    }

    /// Image `g·V` (vectors are columns, bases are rows).
    pub fn act(&self, g: &ExactMatrix<F>) -> Result<Self> {
        let imgs = self
            .basis
            .iter()
            .map(|b| g.apply(b))
            .collect::<Result<Vec<_>>>()?;
        Self::span(&imgs, self.ambient)
    }

    pub fn basis_matrix(&self) -> ExactMatrix<F> {
        ExactMatrix::from_rows(&self.basis, self.ambient).expect("consistent widths")
    }
}

impl<F: FiniteField + FrameRing> std::fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "<{}>",
            self.basis
                .iter()
                .map(|r| format!("({})", r.iter().join(",")))
                .join(",")
        )
    }
}

impl<F: FiniteField + FrameRing> Serialize for Subspace<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis_matrix().serialize(s)
    }
}

/// All subspaces of `Fⁿ` of the given dimension, in RREF order.
pub fn enumerate_subspaces<F: FiniteField + FrameRing>(n: usize, rank: usize) -> Result<Vec<Subspace<F>>> {
    if rank > n {
        return Err(Error::Invalid(format!("rank {rank} exceeds ambient rank {n}")));
    }
    let elems = <F as FiniteField>::elements();
    let mut out = Vec::new();
    for pivots in (0..n).combinations(rank) {
        // free slots: (row, col) with col > pivot, col not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        for values in (0..free.len()).map(|_| elems.iter().cloned()).multi_cartesian_product() {
            let mut basis = vec![vec![F::zero(); n]; rank];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = F::one();
            }
            for (&(i, c), x) in free.iter().zip(values) {
                basis[i][c] = x;
            }
            out.push(Subspace { ambient: n, basis });
        }
        if free.is_empty() && rank == 0 {
            break;
        }
    }
    if rank == 0 {
        out.truncate(1);
    }
    Ok(out)
}

/// Gaussian binomial coefficient `[n choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    // [n, j] = [n-1, j-1] + q^j [n-1, j]
    let q = q as u128;
    let mut row = vec![1u128];
    for m in 1..=n as usize {
        let mut next = vec![1u128; m + 1];
        for j in 1..m {
            next[j] = row[j - 1].saturating_add(q.saturating_pow(j as u32).saturating_mul(row[j]));
        }
        row = next;
    }
    row[k as usize]
}

/// An ordered pair of complementary proper nonzero subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Splitting<F> {
    pub first: Subspace<F>,
    pub second: Subspace<F>,
}

impl<F: FiniteField + FrameRing> Splitting<F> {
    /// `(V₀, V₁) ≤ (V₀', V₁')` iff `V₀ ⊆ V₀'` and `V₁' ⊆ V₁`.
    pub fn le(&self, other: &Self) -> bool {
        other.first.contains(&self.first) && self.second.contains(&other.second)
    }

    pub fn act(&self, g: &ExactMatrix<F>) -> Result<Self> {
        Ok(Splitting {
            first: self.first.act(g)?,
            second: self.second.act(g)?,
        })
    }
}

impl<F: FiniteField + FrameRing> std::fmt::Display for Splitting<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} | {})", self.first, self.second)
    }
}

impl<F: FiniteField + FrameRing> Serialize for Splitting<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.first, &self.second).serialize(s)
    }
}

/// All ordered splittings of `Fⁿ`; empty for `n < 2`.
pub fn enumerate_splittings<F: FiniteField + FrameRing>(n: usize) -> Result<Vec<Splitting<F>>> {
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    for k in 1..n {
        let firsts = enumerate_subspaces::<F>(n, k)?;
        let seconds = enumerate_subspaces::<F>(n, n - k)?;
        for a in &firsts {
            for b in &seconds {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, F5, Z, ZI, ZW};

    #[test]
    fn projective_line_counts() {
        assert_eq!(enumerate_lines::<F2>(2, None).unwrap().len(), 3);
        assert_eq!(enumerate_lines::<F3>(2, None).unwrap().len(), 4);
        assert_eq!(enumerate_lines::<F5>(3, None).unwrap().len(), 31);
    }

    #[test]
    fn integer_lines_with_unit_bound() {
        // primitive vectors with entries in {-1,0,1}, canonicalized
        let lines = enumerate_lines::<Z>(2, Some(NormBound::new(1).unwrap())).unwrap();
        let expected: BTreeSet<Line<Z>> = [[1, 0], [0, 1], [1, 1], [1, -1]]
            .iter()
            .map(|v| Line::from_i64(v).unwrap())
            .collect();
        assert_eq!(lines.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn missing_bound_is_an_error() {
        assert!(matches!(enumerate_lines::<Z>(2, None), Err(Error::MissingBound(_))));
        assert!(NormBound::new(0).is_err());
    }

    #[test]
    fn lines_are_unit_invariant_and_canonical() {
        for l in enumerate_lines::<ZI>(2, Some(NormBound::new(2).unwrap())).unwrap() {
            for u in ZI::units() {
                let scaled: Vec<ZI> = l.rep().iter().map(|x| u.clone() * x.clone()).collect();
                assert_eq!(Line::new(scaled).unwrap(), l);
            }
        }
        let ws = enumerate_lines::<ZW>(2, Some(NormBound::new(1).unwrap())).unwrap();
        let set: BTreeSet<_> = ws.iter().collect();
        assert_eq!(set.len(), ws.len());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        assert_eq!(enumerate_subspaces::<F2>(3, 1).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces::<F2>(3, 2).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces::<F3>(3, 1).unwrap().len(), 13);
        for n in 0..=4u32 {
            for k in 0..=n {
                assert_eq!(
                    enumerate_subspaces::<F2>(n as usize, k as usize).unwrap().len() as u128,
                    gaussian_binomial(n, k, 2)
                );
                assert_eq!(
                    enumerate_subspaces::<F3>(n as usize, k as usize).unwrap().len() as u128,
                    gaussian_binomial(n, k, 3)
                );
                assert_eq!(
                    enumerate_subspaces::<F5>(n as usize, k as usize).unwrap().len() as u128,
                    gaussian_binomial(n, k, 5)
                );
            }
        }
    }

    #[test]
    fn splitting_counts() {
        assert_eq!(enumerate_splittings::<F2>(2).unwrap().len(), 6);
        assert_eq!(enumerate_splittings::<F3>(2).unwrap().len(), 12);
        assert_eq!(enumerate_splittings::<F2>(3).unwrap().len(), 56);
        assert!(enumerate_splittings::<F2>(1).unwrap().is_empty());
        for s in enumerate_splittings::<F3>(3).unwrap() {
            assert_eq!(s.first.dim() + s.second.dim(), 3);
            assert_eq!(s.first.intersection_dim(&s.second), 0);
        }
    }

    #[test]
    fn intersections() {
        let a = Subspace::<F2>::span(&[vec![F2::new(1), F2::new(0), F2::new(0)], vec![F2::new(0), F2::new(1), F2::new(0)]], 3).unwrap();
        let b = Subspace::<F2>::span(&[vec![F2::new(0), F2::new(1), F2::new(0)], vec![F2::new(0), F2::new(0), F2::new(1)]], 3).unwrap();
        let c = a.intersect(&b);
        assert_eq!(c, Subspace::span(&[vec![F2::new(0), F2::new(1), F2::new(0)]], 3).unwrap());
        assert!(a.contains(&c) && b.contains(&c));
    }
}
