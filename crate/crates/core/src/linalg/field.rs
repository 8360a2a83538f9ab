use super::ExactMatrix;
use crate::rings::Field;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(m: &ExactMatrix<F>) -> (ExactMatrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        a.scale_row(r, &inv);
        for i in 0..a.rows() {
            if i != r && !a[(i, c)].is_zero() {
                let f = -a[(i, c)].clone();
                a.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<F>> = (0..r).map(|i| a.row(i).to_vec()).collect();
    (
        ExactMatrix::from_rows(&rows, m.cols()).expect("consistent widths"),
        pivots,
    )
}

pub fn rank_over_field<F: Field>(m: &ExactMatrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m·x = 0}`.
pub fn nullspace<F: Field>(m: &ExactMatrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); n];
            x[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r[(i, f)].clone();
            }
            x
        })
        .collect()
}
