use num_traits::One;

use super::ExactMatrix;
use crate::rings::EuclideanDomain;

/// `U·A·V = D` with `D` diagonal, `d₁ | d₂ | …` and each `dᵢ` canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<R> {
    pub d: ExactMatrix<R>,
    pub u: ExactMatrix<R>,
    pub v: ExactMatrix<R>,
    /// Inverse of `v`, maintained alongside it (used for coordinates in
    /// kernel bases and for complements).
    pub v_inv: ExactMatrix<R>,
    /// Diagonal of `D`, including trailing zeros, length `min(rows, cols)`.
    pub invariant_factors: Vec<R>,
    pub rank: usize,
}

impl<R: EuclideanDomain> SmithForm<R> {
    /// Nonzero invariant factors that are not units.
    pub fn torsion(&self) -> Vec<R> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_unit())
            .cloned()
            .collect()
    }
}

struct Calc<R> {
    d: ExactMatrix<R>,
    u: ExactMatrix<R>,
    v: ExactMatrix<R>,
    v_inv: ExactMatrix<R>,
}

impl<R: EuclideanDomain> Calc<R> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &R) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
    }

    /// `col[dst] += c·col[src]`; the inverse transform is `row[src] -= c·row[dst]`.
    fn add_col(&mut self, dst: usize, src: usize, c: &R) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c.clone());
    }

    /// Minimal-norm nonzero entry of the trailing block, row-major first on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), _)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = &self.d[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let n = e.norm();
                if best.as_ref().map_or(true, |(_, bn)| n < *bn) {
                    let unit = n.is_one();
                    best = Some(((i, j), n));
                    if unit {
                        return best.map(|b| b.0);
                    }
                }
            }
        }
        best.map(|b| b.0)
    }

    /// Clears row and column `t` below/right of the pivot; false if a
    /// nonzero remainder was left behind.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        let p = self.d[(t, t)].clone();
        for i in t + 1..self.d.rows() {
            if self.d[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = self.d[(i, t)].div_rem_euclid(&p).expect("nonzero pivot");
            self.add_row(i, t, &-q);
            clean &= r.is_zero();
        }
        for j in t + 1..self.d.cols() {
            if self.d[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = self.d[(t, j)].div_rem_euclid(&p).expect("nonzero pivot");
            self.add_col(j, t, &-q);
            clean &= r.is_zero();
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.d[(t, t)];
        (t + 1..self.d.rows()).find(|&i| {
            (t + 1..self.d.cols()).any(|j| !p.divides(&self.d[(i, j)]))
        })
    }
}

pub fn smith_normal_form<R: EuclideanDomain>(a: &ExactMatrix<R>) -> SmithForm<R> {
    let (m, n) = (a.rows(), a.cols());
    let mut calc = Calc {
        d: a.clone(),
        u: ExactMatrix::identity(m),
        v: ExactMatrix::identity(n),
        v_inv: ExactMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = calc.pivot(t) else {
                break;
            };
            calc.swap_rows(t, pi);
            calc.swap_cols(t, pj);
            if !calc.eliminate(t) {
                continue;
            }
            match calc.non_divisible_row(t) {
                Some(i) => calc.add_row(t, i, &R::one()),
                None => {
                    rank = t + 1;
                    break;
                }
            }
        }
        if rank <= t {
            break;
        }
    }
    for t in 0..rank {
        let c = calc.d[(t, t)].canonical_unit().expect("nonzero diagonal");
        if !c.is_one() {
            calc.d.scale_row(t, &c);
            calc.u.scale_row(t, &c);
        }
    }
    let invariant_factors = (0..m.min(n)).map(|i| calc.d[(i, i)].clone()).collect();
    SmithForm {
        d: calc.d,
        u: calc.u,
        v: calc.v,
        v_inv: calc.v_inv,
        invariant_factors,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::FrameRing;
    use crate::{F5, Z, ZW};

    fn factors(rows: &[&[i64]]) -> Vec<Z> {
        smith_normal_form(&ExactMatrix::<Z>::from_i64_rows(rows)).invariant_factors
    }

    fn zs(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| Z::from(x)).collect()
    }

    #[test]
    fn diagonal_two_three() {
        // gcd of entries 1, determinant 6
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), zs(&[1, 6]));
    }

    #[test]
    fn identity_and_triangular() {
        assert_eq!(factors(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), zs(&[1, 1, 1]));
        assert_eq!(factors(&[&[1, 2], &[0, 3]]), zs(&[1, 3]));
    }

    #[test]
    fn empty_and_zero() {
        let e = smith_normal_form(&ExactMatrix::<Z>::zeros(0, 3));
        assert!(e.invariant_factors.is_empty());
        assert_eq!(e.rank, 0);
        let z = smith_normal_form(&ExactMatrix::<Z>::zeros(2, 2));
        assert_eq!(z.invariant_factors, zs(&[0, 0]));
    }

    #[test]
    fn transforms_recompose() {
        let a = ExactMatrix::<Z>::from_i64_rows(&[&[4, 6, 2], &[6, 9, 3], &[2, 8, -4]]);
        let s = smith_normal_form(&a);
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        assert_eq!(&s.v * &s.v_inv, ExactMatrix::identity(3));
        assert!(s.u.det().unwrap().is_unit());
        // gcd of entries is 1, gcd of 2x2 minors is 10, rank 2
        assert_eq!(s.invariant_factors, zs(&[1, 10, 0]));
    }

    #[test]
    fn eisenstein_and_field() {
        let a = ExactMatrix::<ZW>::from_rows(
            &[vec![ZW::from_pair(2, 0), ZW::from_pair(1, 2)], vec![ZW::from_pair(0, 3), ZW::from_pair(1, 1)]],
            2,
        )
        .unwrap();
        let s = smith_normal_form(&a);
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        assert!(s.invariant_factors[0].divides(&s.invariant_factors[1]));
        let f = ExactMatrix::<F5>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let s = smith_normal_form(&f);
        assert_eq!(s.rank, 1);
        assert_eq!(s.invariant_factors, vec![F5::from_i64(1), F5::from_i64(0)]);
    }
}
