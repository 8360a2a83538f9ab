use serde::Serialize;
use serde_json::{json, Value};

use super::sphere::{sphere_class, SphereClassSpec};
use super::{act_on_complex, GroupGenSet};
use crate::complexes::build_b_on;
use crate::enumeration::{Line, NormBound};
use crate::error::{Error, Result};
use crate::homology::Chain;
use crate::linalg::ExactMatrix;
use crate::rings::FrameRing;
use crate::Z;

/// Result of one sign-relation check `g·c = -c`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessOutcome {
    pub case: String,
    pub params: Value,
    pub holds: bool,
}

/// Partner of `v_j` in a block `⟦v_j, u_j⟧`: `u_j = v_j + v_i` or `v_j + e_i` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Partner {
    V(usize),
    E(usize),
}

fn add<R: FrameRing>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn unit<R: FrameRing>(n: usize, i: usize) -> Vec<R> {
    (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect()
}

/// Columns `e_1..e_m, v_1..v_n`; invertible when the `v` complete the `e` to a frame.
fn frame_matrix<R: FrameRing>(m: usize, vs: &[Vec<R>]) -> Result<ExactMatrix<R>> {
    let total = m + vs.len();
    let mut cols: Vec<Vec<R>> = (0..m).map(|i| unit(total, i)).collect();
    for v in vs {
        if v.len() != total {
            return Err(Error::DimensionMismatch(format!("frame vector of length {} in R^{total}", v.len())));
        }
        cols.push(v.clone());
    }
    let f = ExactMatrix::from_columns(&cols, total)?;
    if !f.is_invertible() {
        return Err(Error::NotPartialFrame);
    }
    Ok(f)
}

/// Builds the support of `spec`, applies `g` and compares `g·c` with `-c`.
fn sign_flips<R: FrameRing>(
    n: usize,
    m: usize,
    bound: Option<NormBound>,
    spec: &SphereClassSpec<R>,
    g: &ExactMatrix<R>,
) -> Result<bool> {
    GroupGenSet::new(n + m, m, vec![g.clone()])?;
    let support: Vec<Line<R>> = spec.lines().cloned().collect();
    let bound = match bound {
        Some(b) => Some(b),
        None => NormBound::new(support.iter().map(Line::height).max().unwrap_or(1).max(1)).ok(),
    };
    let fc = build_b_on(n, m, bound, support)?;
    let c = sphere_class(&fc, spec)?;
    let perm = act_on_complex(g, &fc)?;
    let gc = c.permute(&perm).ok_or_else(|| Error::Invalid("action collapses a simplex".into()))?;
    Ok(!c.is_zero() && gc == c.neg())
}

fn lines<R: FrameRing>(vs: &[Vec<R>]) -> Result<Vec<Line<R>>> {
    vs.iter().map(|v| Line::new(v.clone())).collect()
}

fn vec_json<R: FrameRing>(vs: &[Vec<R>]) -> Value {
    json!(vs.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Case `2d = n`: `c = ⟦v_1,v_2,w_2⟧ ∗ … ∗ ⟦v_{n-1},v_n,w_n⟧`, `w_{2i} = v_{2i-1} + v_{2i}`,
/// and `g` exchanges `v_1, v_2` fixing the other frame vectors.
pub fn internal_swap<R: FrameRing>(m: usize, frame: &[Vec<R>], bound: Option<NormBound>) -> Result<WitnessOutcome> {
    let n = frame.len();
    if n == 0 || n % 2 != 0 {
        return Err(Error::Hypothesis(format!("internal swap needs 2d = n >= 2, got n = {n}")));
    }
    let f = frame_matrix(m, frame)?;
    let ls = lines(frame)?;
    let blocks = (0..n / 2)
        .map(|i| {
            let w = Line::new(add(&frame[2 * i], &frame[2 * i + 1]))?;
            Ok(vec![ls[2 * i].clone(), ls[2 * i + 1].clone(), w])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut p = ExactMatrix::identity(n + m);
    p.swap_cols(m, m + 1);
    let g = f.checked_mul(&p)?.checked_mul(&f.inverse()?)?;
    let holds = sign_flips(n, m, bound, &SphereClassSpec::new(blocks), &g)?;
    Ok(WitnessOutcome {
        case: "internal_swap".into(),
        params: json!({"ring": R::ring_id(), "n": n, "m": m, "frame": vec_json(frame)}),
        holds,
    })
}

/// Case `2d < n`: the last block is `⟦v_n, u_n⟧` with `u_n = v_n + a`, and
/// `g(v_n) = -v_n - a` fixing the remaining frame vectors.
/// `partners[k]` gives `u_{2d+1+k}`.
pub fn last_block_swap<R: FrameRing>(
    m: usize,
    frame: &[Vec<R>],
    d: usize,
    partners: &[Partner],
    bound: Option<NormBound>,
) -> Result<WitnessOutcome> {
    let n = frame.len();
    if 2 * d >= n || partners.len() != n - 2 * d {
        return Err(Error::Hypothesis(format!(
            "last block swap needs 2d < n and n - 2d partners (n = {n}, d = {d}, {} partners)",
            partners.len()
        )));
    }
    let total = n + m;
    let f = frame_matrix(m, frame)?;
    let ls = lines(frame)?;
    // frame coordinate of a partner
    let coord = |j: usize, p: Partner| -> Result<usize> {
        match p {
            Partner::V(i) if i >= 1 && i < j => Ok(m + i - 1),
            Partner::E(i) if i >= 1 && i <= m => Ok(i - 1),
            _ => Err(Error::Hypothesis(format!("partner {p:?} not allowed for u_{j}"))),
        }
    };
    let mut blocks = Vec::new();
    for i in 0..d {
        let w = Line::new(add(&frame[2 * i], &frame[2 * i + 1]))?;
        blocks.push(vec![ls[2 * i].clone(), ls[2 * i + 1].clone(), w]);
    }
    let mut last = 0;
    for (k, &p) in partners.iter().enumerate() {
        let j = 2 * d + 1 + k;
        let a = f.column(coord(j, p)?);
        blocks.push(vec![ls[j - 1].clone(), Line::new(add(&frame[j - 1], &a))?]);
        last = coord(j, p)?;
    }
    let mut mm = ExactMatrix::identity(total);
    mm[(total - 1, total - 1)] = -R::one();
    mm[(last, total - 1)] = -R::one();
    let g = f.checked_mul(&mm)?.checked_mul(&f.inverse()?)?;
    let holds = sign_flips(n, m, bound, &SphereClassSpec::new(blocks), &g)?;
    Ok(WitnessOutcome {
        case: "last_block_swap".into(),
        params: json!({"ring": R::ring_id(), "n": n, "m": m, "d": d, "frame": vec_json(frame), "partners": partners}),
        holds,
    })
}

/// `B_1^1` over ℤ: `g = [[1,-r],[0,-1]]` and `c = ⟦e_2, v_r⟧ = [v_r] - [e_2]`, `v_r = span(r·e_1 + e_2)`.
///
/// For `r = 0` the lines `v_0` and `e_2` coincide, `c` is the zero chain and
/// the relation holds trivially; the outcome records this as `degenerate`.
pub fn bpid(r: i64, bound: Option<NormBound>) -> Result<WitnessOutcome> {
    let g = ExactMatrix::<Z>::from_i64_rows(&[&[1, -r], &[0, -1]]);
    let e2 = Line::<Z>::from_i64(&[0, 1])?;
    let vr = Line::<Z>::from_i64(&[r, 1])?;
    let bound = bound.or_else(|| NormBound::new(r.unsigned_abs().max(1)).ok());
    let params = |degenerate: bool| json!({"r": r, "bound": bound.map(NormBound::get), "degenerate": degenerate});
    if vr == e2 {
        let fc = build_b_on(1, 1, bound, vec![e2.clone()])?;
        let v = fc.vertex_of(&e2).expect("support vertex");
        let c = Chain::<Z>::from_terms(0, [(vec![v], Z::from(1)), (vec![v], Z::from(-1))])?;
        let perm = act_on_complex(&g, &fc)?;
        let holds = c.permute(&perm) == Some(c.neg());
        return Ok(WitnessOutcome {
            case: "bpid".into(),
            params: params(true),
            holds,
        });
    }
    let holds = sign_flips(1, 1, bound, &SphereClassSpec::new(vec![vec![e2, vr]]), &g)?;
    Ok(WitnessOutcome {
        case: "bpid".into(),
        params: params(false),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ZI;

    fn zv(rows: &[&[i64]]) -> Vec<Vec<Z>> {
        rows.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect()
    }

    #[test]
    fn case_one_standard_and_skew_frames() {
        assert!(internal_swap(0, &zv(&[&[1, 0], &[0, 1]]), None).unwrap().holds);
        assert!(internal_swap(0, &zv(&[&[2, 1], &[1, 1]]), None).unwrap().holds);
        assert!(internal_swap(1, &zv(&[&[0, 1, 0], &[0, 0, 1]]), None).unwrap().holds);
        assert!(internal_swap(0, &zv(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]), None)
            .unwrap()
            .holds);
        let gaussian: Vec<Vec<ZI>> = vec![vec![ZI::from_pair(1, 0), ZI::from_pair(0, 1)], vec![ZI::from_pair(0, 0), ZI::from_pair(1, 0)]];
        assert!(internal_swap(0, &gaussian, None).unwrap().holds);
        assert!(matches!(internal_swap(0, &zv(&[&[1]]), None), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn case_two_external_and_internal_partners() {
        assert!(last_block_swap(1, &zv(&[&[0, 1]]), 0, &[Partner::E(1)], None).unwrap().holds);
        let frame = zv(&[&[0, 1, 0], &[0, 0, 1]]);
        assert!(last_block_swap(1, &frame, 0, &[Partner::E(1), Partner::V(1)], None).unwrap().holds);
        let frame = zv(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(last_block_swap(0, &frame, 1, &[Partner::V(2)], None).unwrap().holds);
        assert!(last_block_swap(0, &zv(&[&[1]]), 0, &[Partner::E(1)], None).is_err());
    }

    #[test]
    fn bpid_family() {
        for r in -3..=3 {
            let w = bpid(r, None).unwrap();
            assert!(w.holds, "r = {r}");
        }
        assert!(matches!(
            bpid(3, Some(NormBound::new(2).unwrap())),
            Err(Error::EscapesTruncation { .. })
        ));
    }
}
