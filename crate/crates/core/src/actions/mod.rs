//! Linear group actions on complexes and posets, coinvariants of top
//! homology, sphere classes and the sign witnesses.

mod cutting;
mod sphere;
mod witness;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::complexes::{
    build_b, build_relative_tits, build_splitting_poset, build_tits, FrameComplex, Poset, SimplicialComplex,
    SplittingConstraints,
};
use crate::enumeration::{Splitting, Subspace};
use crate::error::{Error, Result};
use crate::homology::{boundary_matrix, vanishes_over_zhalf, BoundaryValue, Chain};
use crate::linalg::{smith_normal_form, ExactMatrix};
use crate::rings::{FiniteField, FrameRing};
use crate::Z;

pub use cutting::{cutting_down_iso, CuttingReport};
pub use sphere::{generating_family, sphere_class, sphere_class_indices, SphereClassSpec};
pub use witness::{bpid, internal_swap, last_block_swap, Partner, WitnessOutcome};

/// Generators of a subgroup of `GL(R^{n+m}, fix R^m)`.
#[derive(Clone, Debug)]
pub struct GroupGenSet<R> {
    ambient: usize,
    fix: usize,
    generators: Vec<ExactMatrix<R>>,
}

impl<R: FrameRing> GroupGenSet<R> {
    /// Checks that every generator is square of size `ambient`, invertible over
    /// `R`, and fixes `e_1, ..., e_fix`.
    pub fn new(ambient: usize, fix: usize, generators: Vec<ExactMatrix<R>>) -> Result<Self> {
        if fix > ambient {
            return Err(Error::Invalid(format!("fix rank {fix} exceeds ambient rank {ambient}")));
        }
        for g in &generators {
            if g.rows() != ambient || g.cols() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} generator for rank {ambient}",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible);
            }
            for i in 0..fix {
                let fixed = (0..ambient).all(|r| g[(r, i)] == if r == i { R::one() } else { R::zero() });
                if !fixed {
                    return Err(Error::Invalid(format!("generator moves e_{}", i + 1)));
                }
            }
        }
        Ok(GroupGenSet {
            ambient,
            fix,
            generators,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn fix(&self) -> usize {
        self.fix
    }

    pub fn generators(&self) -> &[ExactMatrix<R>] {
        &self.generators
    }

    pub fn label(&self) -> String {
        format!("GL_fix({},{})", self.fix, self.ambient - self.fix)
    }
}

fn elementary<R: FrameRing>(n: usize, i: usize, j: usize, c: R) -> ExactMatrix<R> {
    let mut e = ExactMatrix::identity(n);
    e[(i, j)] = c;
    e
}

/// `E_ij(1)` for every column `j ≥ m` and row `i ≠ j`, plus `diag(g)` at
/// position `m` for a primitive element `g ≠ 1`.
pub fn gl_fix_generators<F: FiniteField + FrameRing>(total: usize, m: usize) -> Result<GroupGenSet<F>> {
    if m > total {
        return Err(Error::Invalid(format!("fix rank {m} exceeds ambient rank {total}")));
    }
    let mut gens = Vec::new();
    for j in m..total {
        for i in (0..total).filter(|&i| i != j) {
            gens.push(elementary(total, i, j, F::one()));
        }
    }
    let g = F::primitive_element();
    if m < total && !g.is_one() {
        let mut d = ExactMatrix::identity(total);
        d[(m, m)] = g;
        gens.push(d);
    }
    GroupGenSet::new(total, m, gens)
}

/// Every element of `GL(F^{total}, fix F^m)`, by brute force.
pub fn gl_fix_elements<F: FiniteField + FrameRing>(total: usize, m: usize) -> Result<GroupGenSet<F>> {
    let free = total * (total - m);
    let q = F::order() as usize;
    let count = q.checked_pow(free as u32).filter(|&c| c <= 1 << 20).ok_or(Error::SizeGuard {
        what: "matrices to enumerate",
        size: usize::MAX,
        limit: 1 << 20,
    })?;
    let elems = F::elements();
    let mut out = Vec::new();
    for code in 0..count {
        let mut g = ExactMatrix::identity(total);
        let mut c = code;
        for j in m..total {
            for i in 0..total {
                g[(i, j)] = elems[c % q].clone();
                c /= q;
            }
        }
        if g.is_invertible() {
            out.push(g);
        }
    }
    GroupGenSet::new(total, m, out)
}

/// The permutation `i ↦ index of act(elements[i])`.
pub fn permutation_of<E: PartialEq>(elements: &[E], act: impl Fn(&E) -> Result<E>) -> Result<Vec<usize>> {
    elements
        .iter()
        .map(|e| {
            let img = act(e)?;
            elements
                .iter()
                .position(|x| *x == img)
                .ok_or_else(|| Error::Invalid("action does not preserve the element set".into()))
        })
        .collect()
}

/// Vertex permutation induced by `g` on a frame complex.
pub fn act_on_complex<R: FrameRing>(g: &ExactMatrix<R>, fc: &FrameComplex<R>) -> Result<Vec<usize>> {
    if g.rows() != fc.ambient() || !g.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix on R^{}",
            g.rows(),
            g.cols(),
            fc.ambient()
        )));
    }
    if !g.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let perm = fc
        .lines
        .iter()
        .enumerate()
        .map(|(v, l)| {
            let img = l.act(g)?;
            fc.vertex_of(&img).ok_or_else(|| Error::EscapesTruncation {
                vertex: v,
                label: format!("{l} -> {img}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_automorphism(&fc.complex, &perm)?;
    Ok(perm)
}

/// Errors unless `perm` is a bijection carrying simplices to simplices.
pub fn check_automorphism(k: &SimplicialComplex, perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; k.vertex_count()];
    for &p in perm {
        if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Invalid("vertex map is not a permutation".into()));
        }
    }
    if perm.len() != k.vertex_count() {
        return Err(Error::Invalid("vertex map is not a permutation".into()));
    }
    for s in k.iter() {
        let mut img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
        img.sort_unstable();
        if !k.contains(&img) {
            return Err(Error::Invalid(format!("{s:?} maps to the non-simplex {img:?}")));
        }
    }
    Ok(())
}

/// `g∘∂ = ∂∘g` on every simplex of every degree.
pub fn commutes_with_boundary(k: &SimplicialComplex, perm: &[usize]) -> bool {
    (0..=k.dim().max(-1)).all(|d| {
        k.simplices(d as usize).iter().all(|s| {
            let c = Chain::<Z>::from_terms(d as usize, [(s.clone(), Z::one())]).expect("simplex");
            let Some(gc) = c.permute(perm) else {
                return false;
            };
            match (c.boundary(), gc.boundary()) {
                (BoundaryValue::Augmentation(a), BoundaryValue::Augmentation(b)) => a == b,
                (BoundaryValue::Chain(a), BoundaryValue::Chain(b)) => a.permute(perm).is_some_and(|x| x == b),
                _ => false,
            }
        })
    })
}

/// A presentation of `H̃_top(K)_G` and its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoinvariantsReport {
    pub complex_ref: String,
    pub group: String,
    /// Rank of the cycle lattice `H̃_top(K)`.
    pub module_rank: usize,
    pub relation_rows: usize,
    pub relation_cols: usize,
    /// Non-unit invariant factors of the cokernel, then one `0` per free summand.
    #[serde(serialize_with = "bigint_strings")]
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    #[serde(rename = "vanishes_over_ZHalf")]
    pub vanishes_over_zhalf: bool,
}

fn bigint_strings<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl CoinvariantsReport {
    pub fn labelled(mut self, complex_ref: impl Into<String>, group: impl Into<String>) -> Self {
        self.complex_ref = complex_ref.into();
        self.group = group.into();
        self
    }
}

/// `H̃_top(K)_G` as the cokernel of the columns `(g-1)z` over generators `g`
/// and a basis `z` of top cycles. Generators suffice since
/// `(gh-1)z = (g-1)(hz) + (h-1)z`.
pub fn coinvariants(k: &SimplicialComplex, perms: &[Vec<usize>]) -> Result<CoinvariantsReport> {
    for p in perms {
        check_automorphism(k, p)?;
    }
    if k.dim() < 0 {
        // H̃_{-1} of the empty complex is ℤ with trivial action
        return Ok(CoinvariantsReport {
            complex_ref: String::new(),
            group: String::new(),
            module_rank: 1,
            relation_rows: 1,
            relation_cols: 0,
            invariant_factors: vec![BigInt::zero()],
            free_rank: 1,
            vanishes_over_zhalf: false,
        });
    }
    let d = k.dim() as usize;
    let s = smith_normal_form(&boundary_matrix::<Z>(k, d));
    let cols = k.count(d);
    let rank = cols - s.rank;
    let basis: Vec<Chain<Z>> = (s.rank..cols)
        .map(|j| Chain::from_vector(k, d, &s.v.column(j)))
        .collect::<Result<_>>()?;
    let columns: Vec<Vec<Z>> = perms
        .par_iter()
        .flat_map_iter(|p| basis.iter().map(move |z| (p, z)))
        .map(|(p, z)| {
            let gz = z.permute(p).ok_or_else(|| Error::Invalid("action collapses a simplex".into()))?;
            let diff = gz.add(&z.neg())?.to_vector(k)?;
            let coords = s.v_inv.apply(&diff)?;
            if coords[..s.rank].iter().any(|x| !x.is_zero()) {
                return Err(Error::NotACycle);
            }
            Ok(coords[s.rank..].to_vec())
        })
        .collect::<Result<_>>()?;
    let rel = ExactMatrix::from_columns(&columns, rank)?;
    let rs = smith_normal_form(&rel);
    let free_rank = rank - rs.rank;
    let mut factors = rs.torsion();
    factors.extend(std::iter::repeat(BigInt::zero()).take(free_rank));
    Ok(CoinvariantsReport {
        complex_ref: String::new(),
        group: String::new(),
        module_rank: rank,
        relation_rows: rank,
        relation_cols: columns.len(),
        vanishes_over_zhalf: vanishes_over_zhalf(&factors),
        invariant_factors: factors,
        free_rank,
    })
}

fn subspace_perms<F: FiniteField + FrameRing>(
    elements: &[Subspace<F>],
    gens: &GroupGenSet<F>,
) -> Result<Vec<Vec<usize>>> {
    gens.generators()
        .iter()
        .map(|g| permutation_of(elements, |v| v.act(g)))
        .collect()
}

fn field_name<F: FrameRing>() -> String {
    F::ring_id().to_string()
}

/// `H̃_{n-1}(B_n^m(F))_{GL(fix)}`.
pub fn frame_coinvariants<F: FiniteField + FrameRing>(n: usize, m: usize) -> Result<CoinvariantsReport> {
    let fc = build_b::<F>(n, m, None)?;
    let gens = gl_fix_generators::<F>(n + m, m)?;
    frame_coinvariants_with(&fc, &gens)
}

pub fn frame_coinvariants_with<F: FiniteField + FrameRing>(
    fc: &FrameComplex<F>,
    gens: &GroupGenSet<F>,
) -> Result<CoinvariantsReport> {
    let perms = gens
        .generators()
        .iter()
        .map(|g| act_on_complex(g, fc))
        .collect::<Result<Vec<_>>>()?;
    Ok(coinvariants(&fc.complex, &perms)?.labelled(
        format!("B_{}^{}({})", fc.n, fc.m, field_name::<F>()),
        gens.label(),
    ))
}

/// `St(Fⁿ)_{GL_n(F)}` on the Tits building.
pub fn steinberg_coinvariants<F: FiniteField + FrameRing>(n: usize) -> Result<CoinvariantsReport> {
    let t = build_tits::<F>(n)?;
    let gens = gl_fix_generators::<F>(n, 0)?;
    let perms = subspace_perms(t.elements(), &gens)?;
    Ok(coinvariants(&t.order_complex(), &perms)?.labelled(format!("T({}^{n})", field_name::<F>()), gens.label()))
}

/// `St(F^{n+m} rel⁰ F^m)_{GL(fix)}` on the relative Tits building.
pub fn relative_steinberg_coinvariants<F: FiniteField + FrameRing>(n: usize, m: usize) -> Result<CoinvariantsReport> {
    let t = build_relative_tits::<F>(n + m, m)?;
    let gens = gl_fix_generators::<F>(n + m, m)?;
    let perms = subspace_perms(t.elements(), &gens)?;
    Ok(coinvariants(&t.order_complex(), &perms)?.labelled(
        format!("T({}^{} rel {m})", field_name::<F>(), n + m),
        gens.label(),
    ))
}

fn splitting_perms<F: FiniteField + FrameRing>(
    p: &Poset<Splitting<F>>,
    gens: &GroupGenSet<F>,
) -> Result<Vec<Vec<usize>>> {
    gens.generators()
        .iter()
        .map(|g| permutation_of(p.elements(), |s| s.act(g)))
        .collect()
}

/// `St^{E₁}(Fⁿ)_{GL_n(F)}` on the splitting poset.
pub fn split_steinberg_coinvariants<F: FiniteField + FrameRing>(n: usize) -> Result<CoinvariantsReport> {
    split_steinberg_coinvariants_with(n, &gl_fix_generators::<F>(n, 0)?)
}

pub fn split_steinberg_coinvariants_with<F: FiniteField + FrameRing>(
    n: usize,
    gens: &GroupGenSet<F>,
) -> Result<CoinvariantsReport> {
    let p = build_splitting_poset::<F>(n, &SplittingConstraints::default())?;
    let perms = splitting_perms(&p, gens)?;
    Ok(coinvariants(&p.order_complex(), &perms)?.labelled(format!("S^E1({}^{n})", field_name::<F>()), gens.label()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::build_b;
    use crate::enumeration::Line;
    use crate::{F2, F3};

    #[test]
    fn generator_sets_fix_the_block() {
        let g = gl_fix_generators::<F3>(3, 1).unwrap();
        assert_eq!(g.generators().len(), 5);
        assert_eq!(gl_fix_elements::<F2>(2, 0).unwrap().generators().len(), 6);
        assert_eq!(gl_fix_elements::<F3>(2, 0).unwrap().generators().len(), 48);
        assert_eq!(gl_fix_elements::<F2>(2, 1).unwrap().generators().len(), 2);
        let bad = ExactMatrix::<F2>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(GroupGenSet::new(2, 1, vec![bad]).is_err());
    }

    #[test]
    fn identity_and_swap_actions() {
        let fc = build_b::<F2>(2, 0, None).unwrap();
        let id = act_on_complex(&ExactMatrix::identity(2), &fc).unwrap();
        assert_eq!(id, vec![0, 1, 2]);
        let swap = ExactMatrix::<F2>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let p = act_on_complex(&swap, &fc).unwrap();
        let e1 = fc.vertex_of(&Line::from_i64(&[1, 0]).unwrap()).unwrap();
        let e2 = fc.vertex_of(&Line::from_i64(&[0, 1]).unwrap()).unwrap();
        let s = fc.vertex_of(&Line::from_i64(&[1, 1]).unwrap()).unwrap();
        assert_eq!((p[e1], p[e2], p[s]), (e2, e1, s));
        assert!(commutes_with_boundary(&fc.complex, &p));
    }

    #[test]
    fn truncation_escape_is_reported() {
        let fc = build_b::<Z>(1, 1, Some(crate::enumeration::NormBound::new(1).unwrap())).unwrap();
        let g = ExactMatrix::<Z>::from_i64_rows(&[&[1, 2], &[0, 1]]);
        assert!(matches!(act_on_complex(&g, &fc), Err(Error::EscapesTruncation { .. })));
    }

    #[test]
    fn coinvariants_of_small_cases() {
        let r = split_steinberg_coinvariants::<F2>(2).unwrap();
        assert_eq!(r.module_rank, 5);
        assert_eq!(r.invariant_factors, vec![BigInt::from(2)]);
        assert!(r.vanishes_over_zhalf);

        let fc = build_b::<F2>(1, 1, None).unwrap();
        let g = GroupGenSet::new(2, 1, vec![ExactMatrix::from_i64_rows(&[&[1, 1], &[0, 1]])]).unwrap();
        let r = frame_coinvariants_with(&fc, &g).unwrap();
        assert_eq!(r.invariant_factors, vec![BigInt::from(2)]);
        assert!(r.vanishes_over_zhalf);

        let trivial = coinvariants(&SimplicialComplex::simplex_boundary(1), &[]).unwrap();
        assert_eq!(trivial.invariant_factors, vec![BigInt::zero()]);
        assert!(!trivial.vanishes_over_zhalf);
    }

    #[test]
    fn steinberg_coinvariants_vanish() {
        let r = steinberg_coinvariants::<F2>(3).unwrap();
        assert_eq!(r.module_rank, 8);
        assert!(r.invariant_factors.is_empty());
    }

    #[test]
    fn generator_choice_does_not_matter() {
        for (a, b) in [
            (
                split_steinberg_coinvariants::<F2>(2).unwrap(),
                split_steinberg_coinvariants_with(2, &gl_fix_elements::<F2>(2, 0).unwrap()).unwrap(),
            ),
            (
                split_steinberg_coinvariants::<F3>(2).unwrap(),
                split_steinberg_coinvariants_with(2, &gl_fix_elements::<F3>(2, 0).unwrap()).unwrap(),
            ),
        ] {
            assert_eq!(a.invariant_factors, b.invariant_factors);
        }
    }
}
