use std::collections::BTreeMap;

use super::boundary_matrix;
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, EchelonLattice};
use crate::rings::EuclideanDomain;

/// Sorts `v`, returning whether an odd number of transpositions was needed.
/// `None` when `v` has a repeated entry.
pub fn sort_with_sign(v: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut s = v.to_vec();
    let mut odd = false;
    // insertion sort, counting swaps
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j - 1] > s[j] {
            s.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((s, odd))
}

/// `+1` or `-1` for a permutation of distinct values; `0` on repeats.
pub fn permutation_sign(v: &[usize]) -> i32 {
    match sort_with_sign(v) {
        None => 0,
        Some((_, true)) => -1,
        Some((_, false)) => 1,
    }
}

/// A simplicial `d`-chain, keyed by sorted vertex tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<R> {
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, R>,
}

impl<R: EuclideanDomain> Chain<R> {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Adds `c·[v_0, ..., v_d]` for an ordered simplex.
    pub fn add_term(&mut self, ordered: &[usize], c: R) -> Result<()> {
        if ordered.len() != self.degree + 1 {
            return Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                got: ordered.len() as i64 - 1,
            });
        }
        let (sorted, odd) =
            sort_with_sign(ordered).ok_or_else(|| Error::Invalid(format!("repeated vertex in {ordered:?}")))?;
        let c = if odd { -c } else { c };
        let entry = self.coeffs.entry(sorted).or_insert_with(R::zero);
        *entry = entry.clone() + c;
        self.coeffs.retain(|_, v| !v.is_zero());
        Ok(())
    }

    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, R)>,
    {
        let mut c = Self::zero(degree);
        for (s, x) in terms {
            c.add_term(&s, x)?;
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, R> {
        &self.coeffs
    }

    pub fn coeff(&self, sorted: &[usize]) -> R {
        self.coeffs.get(sorted).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree as i64,
                got: other.degree as i64,
            });
        }
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            let e = out.coeffs.entry(s.clone()).or_insert_with(R::zero);
            *e = e.clone() + c.clone();
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.degree);
        for (s, x) in &self.coeffs {
            let y = c.clone() * x.clone();
            if !y.is_zero() {
                out.coeffs.insert(s.clone(), y);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-R::one())
    }

    /// Boundary as a chain of degree `d-1`; for `d = 0` the augmentation,
    /// returned as the single coefficient of the empty simplex.
    pub fn boundary(&self) -> BoundaryValue<R> {
        if self.degree == 0 {
            let total = self.coeffs.values().fold(R::zero(), |a, c| a + c.clone());
            return BoundaryValue::Augmentation(total);
        }
        let mut out = Self::zero(self.degree - 1);
        for (s, c) in &self.coeffs {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let term = if i % 2 == 0 { c.clone() } else { -c.clone() };
                let e = out.coeffs.entry(face).or_insert_with(R::zero);
                *e = e.clone() + term;
            }
        }
        out.coeffs.retain(|_, v| !v.is_zero());
        BoundaryValue::Chain(out)
    }

    /// Zero reduced boundary.
    pub fn is_cycle(&self) -> bool {
        match self.boundary() {
            BoundaryValue::Augmentation(x) => x.is_zero(),
            BoundaryValue::Chain(c) => c.is_zero(),
        }
    }

    /// Image under the vertex map `v ↦ perm[v]`, with orientation signs.
    /// `None` if two vertices of a simplex collapse.
    pub fn permute(&self, perm: &[usize]) -> Option<Self> {
        let mut out = Self::zero(self.degree);
        for (s, c) in &self.coeffs {
            let img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
            out.add_term(&img, c.clone()).ok()?;
        }
        Some(out)
    }

    pub fn supported_in(&self, k: &SimplicialComplex) -> bool {
        self.coeffs.keys().all(|s| k.contains(s))
    }

    /// Coordinates in the sorted basis of `C_d(k)`.
    pub fn to_vector(&self, k: &SimplicialComplex) -> Result<Vec<R>> {
        let mut v = vec![R::zero(); k.count(self.degree)];
        for (s, c) in &self.coeffs {
            let i = k.index_of(s).ok_or_else(|| Error::NotInComplex(s.clone()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(k: &SimplicialComplex, degree: usize, v: &[R]) -> Result<Self> {
        let basis = k.simplices(degree);
        if basis.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for {} simplices",
                v.len(),
                basis.len()
            )));
        }
        let coeffs = basis
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s.clone(), c.clone()))
            .collect();
        Ok(Chain { degree, coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryValue<R> {
    Augmentation(R),
    Chain(Chain<R>),
}

/// A basis of the top cycles `ker ∂_top`, read off the Smith transform `V`.
pub fn top_cycle_basis<R: EuclideanDomain>(k: &SimplicialComplex) -> Result<Vec<Chain<R>>> {
    if k.dim() < 0 {
        return Ok(Vec::new());
    }
    let d = k.dim() as usize;
    let s = smith_normal_form(&boundary_matrix::<R>(k, d));
    (s.rank..k.count(d))
        .map(|j| Chain::from_vector(k, d, &s.v.column(j)))
        .collect()
}

/// Whether `c` lies in `span(gens) + im ∂_{d+1}`, solved exactly over `R`.
pub fn class_in_span<R: EuclideanDomain>(k: &SimplicialComplex, c: &Chain<R>, gens: &[Chain<R>]) -> Result<bool> {
    Ok(classes_in_span(k, std::slice::from_ref(c), gens)?[0])
}

/// [`class_in_span`] for several targets against one lattice.
pub fn classes_in_span<R: EuclideanDomain>(
    k: &SimplicialComplex,
    targets: &[Chain<R>],
    gens: &[Chain<R>],
) -> Result<Vec<bool>> {
    let Some(d) = targets.first().map(Chain::degree) else {
        return Ok(Vec::new());
    };
    for g in targets.iter().chain(gens) {
        if g.degree() != d {
            return Err(Error::DegreeMismatch {
                expected: d as i64,
                got: g.degree() as i64,
            });
        }
    }
    if targets.iter().chain(gens).any(|g| !g.is_cycle()) {
        return Err(Error::NotACycle);
    }
    let mut lattice = EchelonLattice::new(k.count(d));
    for g in gens {
        lattice.insert(&g.to_vector(k)?)?;
    }
    if (d as isize) < k.dim() {
        let b = boundary_matrix::<R>(k, d + 1);
        for j in 0..b.cols() {
            lattice.insert(&b.column(j))?;
        }
    }
    targets.iter().map(|c| lattice.contains(&c.to_vector(k)?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Z;

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[1, 1]), 0);
    }

    #[test]
    fn triangle_cycle_and_spans() {
        let k = SimplicialComplex::simplex_boundary(2);
        let basis = top_cycle_basis::<Z>(&k).unwrap();
        assert_eq!(basis.len(), 1);
        let b = &basis[0];
        assert!(b.is_cycle());
        let two = b.scale(&Z::from(2));
        assert!(class_in_span(&k, &two, &[b.clone()]).unwrap());
        assert!(!class_in_span(&k, b, &[two.clone()]).unwrap());
        assert!(class_in_span(&k, &Chain::<Z>::zero(1), &[]).unwrap());
        let not_cycle = Chain::from_terms(1, [(vec![0, 1], Z::from(1))]).unwrap();
        assert_eq!(class_in_span::<Z>(&k, &not_cycle, &[]), Err(Error::NotACycle));
        assert!(matches!(
            class_in_span(&k, b, &[Chain::<Z>::zero(0)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn ordered_terms_carry_signs() {
        let c = Chain::<Z>::from_terms(1, [(vec![1, 0], Z::from(1)), (vec![0, 1], Z::from(1))]).unwrap();
        assert!(c.is_zero());
        let c = Chain::<Z>::from_terms(0, [(vec![3], Z::from(1)), (vec![5], Z::from(-1))]).unwrap();
        assert!(c.is_cycle());
        let p = c.permute(&[0, 1, 2, 5, 4, 3]).unwrap();
        assert_eq!(p, c.neg());
    }
}
