use crate::error::{Error, Result};
use crate::rings::EuclideanDomain;

/// Row-echelon basis of a submodule of `Rⁿ`, grown one vector at a time by
/// unimodular Euclidean row steps.
#[derive(Clone, Debug)]
pub struct EchelonLattice<R> {
    dim: usize,
    /// (pivot column, row); pivots strictly increasing.
    rows: Vec<(usize, Vec<R>)>,
}

fn leading<R: EuclideanDomain>(v: &[R]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy<R: EuclideanDomain>(dst: &mut [R], c: &R, src: &[R]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.clone() + c.clone() * s.clone();
        }
    }
}

impl<R: EuclideanDomain> EchelonLattice<R> {
    pub fn new(dim: usize) -> Self {
        EchelonLattice {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<R>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn insert(&mut self, v: &[R]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a lattice of rank {}",
                v.len(),
                self.dim
            )));
        }
        let mut v = v.to_vec();
        loop {
            let Some(c) = leading(&v) else {
                return Ok(());
            };
            match self.rows.binary_search_by_key(&c, |(p, _)| *p) {
                Err(pos) => {
                    self.rows.insert(pos, (c, v));
                    return Ok(());
                }
                Ok(pos) => {
                    let row = &mut self.rows[pos].1;
                    // Euclid on (row[c], v[c]) until v[c] = 0.
                    while !v[c].is_zero() {
                        let (q, _) = row[c].div_rem_euclid(&v[c]).expect("nonzero");
                        axpy(row, &-q, &v);
                        std::mem::swap(row, &mut v);
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[R]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch("membership test".into()));
        }
        let mut v = v.to_vec();
        loop {
            let Some(c) = leading(&v) else {
                return Ok(true);
            };
            let Ok(pos) = self.rows.binary_search_by_key(&c, |(p, _)| *p) else {
                return Ok(false);
            };
            let row = &self.rows[pos].1;
            let (q, r) = v[c].div_rem_euclid(&row[c]).expect("nonzero pivot");
            if !r.is_zero() {
                return Ok(false);
            }
            axpy(&mut v, &-q, row);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Z;

    fn v(xs: &[i64]) -> Vec<Z> {
        xs.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn index_two_sublattice() {
        let mut l = EchelonLattice::new(2);
        l.insert(&v(&[2, 0])).unwrap();
        l.insert(&v(&[0, 1])).unwrap();
        assert!(l.contains(&v(&[4, 3])).unwrap());
        assert!(!l.contains(&v(&[1, 0])).unwrap());
        l.insert(&v(&[3, 0])).unwrap();
        assert!(l.contains(&v(&[1, 0])).unwrap());
        assert_eq!(l.rank(), 2);
    }
}
