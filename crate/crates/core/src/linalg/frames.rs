use num_traits::Zero;

use super::{smith_normal_form, ExactMatrix};
use crate::error::{Error, Result};
use crate::rings::{gcd_all, EuclideanDomain};

/// A vector is primitive when the gcd of its coordinates is a unit.
pub fn is_primitive<R: EuclideanDomain>(v: &[R]) -> Result<bool> {
    gcd_all(v).map(|g| g.is_unit()).ok_or(Error::ZeroInput)
}

fn check_dims<R>(vs: &[Vec<R>], n: usize) -> Result<()> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(Error::DimensionMismatch(format!(
            "vector of length {} in R^{n}",
            v.len()
        ))),
        None => Ok(()),
    }
}

/// True iff the vectors extend to a basis of `Rⁿ`, i.e. the `k×n` matrix they
/// form has only unit invariant factors.
pub fn is_partial_frame<R: EuclideanDomain>(vs: &[Vec<R>], n: usize) -> Result<bool> {
    check_dims(vs, n)?;
    if vs.len() > n {
        return Ok(false);
    }
    if vs.is_empty() {
        return Ok(true);
    }
    if vs.iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Ok(false);
    }
    let snf = smith_normal_form(&ExactMatrix::from_rows(vs, n)?);
    Ok(snf.rank == vs.len() && snf.invariant_factors.iter().all(|d| d.is_unit()))
}

/// Vectors `C` such that `W ∪ C` is a basis of `Rⁿ`, read off the Smith transforms.
pub fn complement<R: EuclideanDomain>(ws: &[Vec<R>], n: usize) -> Result<Vec<Vec<R>>> {
    if !is_partial_frame(ws, n)? {
        return Err(Error::NotPartialFrame);
    }
    let k = ws.len();
    if k == 0 {
        return Ok((0..n)
            .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
            .collect());
    }
    // U·W·V = [I | 0], so the last n-k rows of V⁻¹ complete W.
    let snf = smith_normal_form(&ExactMatrix::from_rows(ws, n)?);
    Ok((k..n).map(|i| snf.v_inv.row(i).to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::FrameRing;
    use crate::{Z, ZI};

    fn v(xs: &[i64]) -> Vec<Z> {
        xs.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&v(&[2, 1])).unwrap());
        assert!(!is_primitive(&v(&[2, 0])).unwrap());
        assert_eq!(is_primitive(&v(&[0, 0])), Err(Error::ZeroInput));
        let g = vec![ZI::from_pair(1, 1), ZI::from_pair(2, 0)];
        assert!(!is_primitive(&g).unwrap());
    }

    #[test]
    fn partial_frames() {
        assert!(is_partial_frame(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap());
        assert!(!is_partial_frame(&[v(&[1, 2]), v(&[0, 3])], 2).unwrap());
        assert!(is_partial_frame(&[v(&[2, 1]), v(&[1, 1])], 2).unwrap());
        assert!(!is_partial_frame(&[v(&[2, 0])], 2).unwrap());
        assert!(matches!(
            is_partial_frame(&[v(&[1, 0, 0])], 2),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn complements() {
        assert_eq!(complement(&[v(&[1, 0])], 2).unwrap().len(), 1);
        let w = vec![v(&[2, 1])];
        let c = complement(&w, 2).unwrap();
        let mut all = w.clone();
        all.extend(c);
        assert!(is_partial_frame(&all, 2).unwrap());
        assert!(complement(&[v(&[1, 0]), v(&[0, 1])], 2).unwrap().is_empty());
        assert_eq!(complement(&[v(&[2, 0])], 2), Err(Error::NotPartialFrame));
    }
}
