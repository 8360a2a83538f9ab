//! Standalone matrix and group identities: a determinant comparison,
//! elementary-matrix relations, an `S₃ → GL₂` assignment and an
//! abelianization test for `GL₂(F_q)`.

use std::collections::{BTreeSet, HashSet};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumeration::Line;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::rings::{FrameRing, RingId};
use crate::{F2, Z, ZI, ZW};

/// One evaluated identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCase {
    pub name: String,
    pub ring: String,
    pub params: Value,
    pub holds: bool,
}

impl IdentityCase {
    fn new(name: &str, ring: impl ToString, params: Value, holds: bool) -> Self {
        IdentityCase {
            name: name.into(),
            ring: ring.to_string(),
            params,
            holds,
        }
    }
}

/// `det` of the transposition matrix equals `det diag(-1, 1, 1)`, both `-1`.
pub fn verify_det_identity() -> Result<(Z, Z)> {
    let swap = ExactMatrix::<Z>::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let neg = ExactMatrix::<Z>::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    Ok((swap.det()?, neg.det()?))
}

/// `E(a) = [[1, a], [0, 1]]`.
pub fn elementary<R: FrameRing>(a: R) -> ExactMatrix<R> {
    let mut e = ExactMatrix::identity(2);
    e[(0, 1)] = a;
    e
}

fn diag2<R: FrameRing>(a: R, b: R) -> ExactMatrix<R> {
    ExactMatrix::diagonal(&[a, b])
}

/// Outcome of the three elementary relations on one sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementarySample {
    pub a: String,
    pub b: String,
    pub u: String,
    pub additive: bool,
    pub negation: bool,
    pub unit_conjugation: bool,
}

/// `E(a+b) = E(a)E(b)`, `D E(a) D⁻¹ = E(-a)` with `D = diag(-1, 1)`, and
/// `diag(u,1) E(1) diag(u⁻¹,1) = E(u)`, on one triple.
pub fn elementary_relations<R: FrameRing>(a: &R, b: &R, u: &R) -> Result<ElementarySample> {
    let additive = elementary(a.clone()).checked_mul(&elementary(b.clone()))? == elementary(a.clone() + b.clone());
    let d = diag2(-R::one(), R::one());
    let negation = d.checked_mul(&elementary(a.clone()))?.checked_mul(&d.inverse()?)? == elementary(-a.clone());
    let uinv = u.unit_inverse().ok_or(Error::NotInvertible)?;
    let unit_conjugation = diag2(u.clone(), R::one())
        .checked_mul(&elementary(R::one()))?
        .checked_mul(&diag2(uinv, R::one()))?
        == elementary(u.clone());
    Ok(ElementarySample {
        a: a.to_string(),
        b: b.to_string(),
        u: u.to_string(),
        additive,
        negation,
        unit_conjugation,
    })
}

/// The relations on `samples` random triples with coordinates in `[-50, 50]`.
pub fn verify_elementary_relations<R: FrameRing>(samples: usize, seed: u64) -> Result<Vec<ElementarySample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units = R::units();
    let pick = |rng: &mut ChaCha8Rng| R::from_pair(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
    (0..samples)
        .map(|_| {
            let a = pick(&mut rng);
            let b = pick(&mut rng);
            let u = units[rng.gen_range(0..units.len())].clone();
            elementary_relations(&a, &b, &u)
        })
        .collect()
}

/// The three vectors `e₁, e₂, e₁+e₂` permuted by `S₃`.
const TRIPLE: [[i64; 2]; 3] = [[1, 0], [0, 1], [1, 1]];

/// Row-vector matrices (`x ↦ x·M`) realising each permutation of the triple up
/// to sign: the transpositions are normalised to fix their third vector
/// exactly, and the 3-cycles to have cube `I`.
pub fn s3_matrices() -> Vec<([usize; 3], ExactMatrix<Z>)> {
    vec![
        ([0, 1, 2], ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 1]])),
        ([1, 0, 2], ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])),
        ([2, 1, 0], ExactMatrix::from_i64_rows(&[&[1, 1], &[0, -1]])),
        ([0, 2, 1], ExactMatrix::from_i64_rows(&[&[1, 0], &[-1, -1]])),
        ([1, 2, 0], ExactMatrix::from_i64_rows(&[&[0, 1], &[-1, -1]])),
        ([2, 0, 1], ExactMatrix::from_i64_rows(&[&[-1, -1], &[1, 0]])),
    ]
}

fn row_times<R: FrameRing>(x: &[R], m: &ExactMatrix<R>) -> Vec<R> {
    m.transpose().apply(x).expect("2x2")
}

/// Checks of the `S₃` assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S3Report {
    /// Each matrix permutes the three lines as its label says.
    pub permutes_lines: bool,
    /// `M_σ M_τ = ±M_{τσ}` for all pairs.
    pub projective_homomorphism: bool,
    /// `M_σ M_τ = M_{τσ}` exactly over ℤ (fails: the displayed transpositions
    /// generate a group of order 12).
    pub exact_over_z: bool,
    /// `M_σ M_τ = M_{τσ}` after reduction mod 2.
    pub exact_over_f2: bool,
    pub three_cycles_order_three: bool,
    pub transposition_e1_e2: bool,
    pub transposition_e1_sum: bool,
    /// `E(1) = diag(1, -1)·[[1, 1], [0, -1]]`.
    pub e1_factorisation: bool,
}

pub fn verify_s3_embedding() -> Result<S3Report> {
    let mats = s3_matrices();
    let lines: Vec<Line<Z>> = TRIPLE.iter().map(|v| Line::from_i64(v)).collect::<Result<_>>()?;
    let permutes_lines = mats.iter().all(|(p, m)| {
        (0..3).all(|i| Line::new(row_times(lines[i].rep(), m)).ok().as_ref() == Some(&lines[p[i]]))
    });
    let lookup = |p: [usize; 3]| mats.iter().find(|(q, _)| *q == p).map(|(_, m)| m.clone()).expect("all of S3");
    let mut projective = true;
    let mut exact = true;
    let mut exact2 = true;
    let to_f2 = |m: &ExactMatrix<Z>| m.map(|x| F2::from_i64(x.to_i64().expect("small entry")));
    for (s, ms) in &mats {
        for (t, mt) in &mats {
            // x·M_σ·M_τ sends x_i to x_{τ(σ(i))}
            let comp = [t[s[0]], t[s[1]], t[s[2]]];
            let prod = ms.checked_mul(mt)?;
            let target = lookup(comp);
            let neg = target.map(|x| -x.clone());
            exact &= prod == target;
            projective &= prod == target || prod == neg;
            exact2 &= to_f2(&prod) == to_f2(&target);
        }
    }
    let id = ExactMatrix::<Z>::identity(2);
    let three_cycles_order_three = mats
        .iter()
        .filter(|(p, _)| p.iter().enumerate().all(|(i, &x)| i != x))
        .all(|(_, m)| {
            let sq = m.checked_mul(m).expect("2x2");
            sq != id && sq.checked_mul(m).expect("2x2") == id
        });
    let transposition_e1_e2 = lookup([1, 0, 2]) == ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    let transposition_e1_sum = lookup([2, 1, 0]) == ExactMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]);
    let e1_factorisation = ExactMatrix::<Z>::from_i64_rows(&[&[1, 0], &[0, -1]])
        .checked_mul(&ExactMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]))?
        == elementary(Z::from(1));
    Ok(S3Report {
        permutes_lines,
        projective_homomorphism: projective,
        exact_over_z: exact,
        exact_over_f2: exact2,
        three_cycles_order_three,
        transposition_e1_e2,
        transposition_e1_sum,
        e1_factorisation,
    })
}

/// `F_q` for `q ∈ {2, 3, 4, 5}` by addition and multiplication tables on `0..q`.
/// For `q = 4`, `2 = t` and `3 = t + 1` in `F₂[t]/(t² + t + 1)`.
#[derive(Clone, Debug)]
pub struct SmallField {
    pub q: u8,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
}

impl SmallField {
    pub fn new(q: u8) -> Result<Self> {
        let n = q as usize;
        let (add, mul) = match q {
            2 | 3 | 5 => (
                (0..n).map(|a| (0..n).map(|b| ((a + b) % n) as u8).collect()).collect(),
                (0..n).map(|a| (0..n).map(|b| ((a * b) % n) as u8).collect()).collect(),
            ),
            4 => {
                // bit 0 = 1, bit 1 = t
                let mul = |a: usize, b: usize| -> u8 {
                    let mut prod = 0usize;
                    for i in 0..2 {
                        if b >> i & 1 == 1 {
                            prod ^= a << i;
                        }
                    }
                    if prod & 4 != 0 {
                        prod ^= 0b111;
                    }
                    prod as u8
                };
                (
                    (0..4).map(|a| (0..4).map(|b| (a ^ b) as u8).collect()).collect(),
                    (0..4).map(|a| (0..4).map(|b| mul(a, b)).collect()).collect(),
                )
            }
            _ => return Err(Error::UnsupportedRing(format!("F{q} in the abelianization test"))),
        };
        Ok(SmallField { q, add, mul })
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn units(&self) -> Vec<u8> {
        (1..self.q).collect()
    }
}

/// A 2×2 matrix `[a, b, c, d]` (rows `[a b]`, `[c d]`).
type M2 = [u8; 4];

fn mul2(f: &SmallField, x: &M2, y: &M2) -> M2 {
    let dot = |a: u8, b: u8, c: u8, d: u8| f.add(f.mul(a, b), f.mul(c, d));
    [
        dot(x[0], y[0], x[1], y[2]),
        dot(x[0], y[1], x[1], y[3]),
        dot(x[2], y[0], x[3], y[2]),
        dot(x[2], y[1], x[3], y[3]),
    ]
}

fn det2(f: &SmallField, x: &M2) -> u8 {
    // -bc read off the addition table
    let ad = f.mul(x[0], x[3]);
    let bc = f.mul(x[1], x[2]);
    let neg_bc = (0..f.q).find(|&y| f.add(bc, y) == 0).expect("additive inverse");
    f.add(ad, neg_bc)
}

fn gl2(f: &SmallField) -> Vec<M2> {
    let q = f.q;
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = [a, b, c, d];
                    if det2(f, &m) != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn inverse(f: &SmallField, group: &[M2], x: &M2) -> M2 {
    *group.iter().find(|y| mul2(f, x, y) == [1, 0, 0, 1]).expect("group element")
}

/// Subgroup generated by `gens` (finite group, so closure under products suffices).
fn closure(f: &SmallField, gens: &[M2]) -> HashSet<M2> {
    let mut set: HashSet<M2> = HashSet::from([[1, 0, 0, 1]]);
    let mut frontier: Vec<M2> = vec![[1, 0, 0, 1]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mul2(f, &x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn commutator(f: &SmallField, group: &[M2], x: &M2, y: &M2) -> M2 {
    let xi = inverse(f, group, x);
    let yi = inverse(f, group, y);
    mul2(f, &mul2(f, &mul2(f, x, y), &xi), &yi)
}

/// The commutator subgroup as the normal closure of commutators of generators.
fn derived_subgroup(f: &SmallField, group: &[M2], gens: &[M2]) -> HashSet<M2> {
    let mut seeds = Vec::new();
    for a in gens {
        for b in gens {
            let c = commutator(f, group, a, b);
            for g in group {
                let gi = inverse(f, group, g);
                seeds.push(mul2(f, &mul2(f, g, &c), &gi));
            }
        }
    }
    closure(f, &seeds)
}

/// The commutator subgroup as the closure of all commutators.
fn derived_subgroup_brute(f: &SmallField, group: &[M2]) -> HashSet<M2> {
    let all: Vec<M2> = group
        .iter()
        .flat_map(|a| group.iter().map(move |b| (a, b)))
        .map(|(a, b)| commutator(f, group, a, b))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    closure(f, &all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationReport {
    pub q: u8,
    pub group_order: usize,
    pub derived_order: usize,
    pub abelianization_order: usize,
    /// Order of the image of `⟨diag(u, 1), swap⟩` in the abelianization.
    pub image_order: usize,
    pub surjective: bool,
    /// Agreement with the closure of all commutators (computed for `q = 2`).
    pub oracle_agrees: Option<bool>,
}

/// Whether `diag(u, 1)` (u a unit) and the swap generate `GL₂(F_q)^{ab}`.
pub fn abelianization_image_test(q: u8) -> Result<AbelianizationReport> {
    let f = SmallField::new(q)?;
    let group = gl2(&f);
    let mut gens: Vec<M2> = vec![[0, 1, 1, 0]];
    // elementary matrices and diagonal units generate GL₂(F_q)
    for a in 1..q {
        gens.push([1, a, 0, 1]);
        gens.push([1, 0, a, 1]);
    }
    for u in f.units() {
        gens.push([u, 0, 0, 1]);
    }
    if closure(&f, &gens).len() != group.len() {
        return Err(Error::Invalid("generators do not generate GL_2".into()));
    }
    let derived = derived_subgroup(&f, &group, &gens);
    let oracle_agrees = (q == 2).then(|| derived_subgroup_brute(&f, &group) == derived);
    let mut image_gens: Vec<M2> = derived.iter().copied().collect();
    image_gens.push([0, 1, 1, 0]);
    image_gens.extend(f.units().into_iter().map(|u| [u, 0, 0, 1]));
    let image = closure(&f, &image_gens);
    let ab = group.len() / derived.len();
    Ok(AbelianizationReport {
        q,
        group_order: group.len(),
        derived_order: derived.len(),
        abelianization_order: ab,
        image_order: image.len() / derived.len(),
        surjective: image.len() == group.len(),
        oracle_agrees,
    })
}

/// Every registered identity, as written to `identities.json`.
pub fn identity_suite(samples: usize, seed: u64) -> Result<Vec<IdentityCase>> {
    let mut out = Vec::new();
    let (l, r) = verify_det_identity()?;
    out.push(IdentityCase::new(
        "det_identity",
        RingId::Integers,
        json!({"lhs": l.to_string(), "rhs": r.to_string()}),
        l == r && l == Z::from(-1),
    ));
    fn relations<R: FrameRing>(out: &mut Vec<IdentityCase>, samples: usize, seed: u64) -> Result<()> {
        let s = verify_elementary_relations::<R>(samples, seed)?;
        let ring = R::ring_id();
        let p = json!({"samples": samples, "seed": seed});
        out.push(IdentityCase::new("elementary_additive", ring, p.clone(), s.iter().all(|x| x.additive)));
        out.push(IdentityCase::new("elementary_negation", ring, p.clone(), s.iter().all(|x| x.negation)));
        out.push(IdentityCase::new("elementary_unit_conjugation", ring, p, s.iter().all(|x| x.unit_conjugation)));
        Ok(())
    }
    relations::<Z>(&mut out, samples, seed)?;
    relations::<ZI>(&mut out, samples, seed)?;
    relations::<ZW>(&mut out, samples, seed)?;
    let s3 = verify_s3_embedding()?;
    out.push(IdentityCase::new(
        "s3_embedding",
        RingId::Integers,
        serde_json::to_value(&s3).expect("plain struct"),
        s3.permutes_lines
            && s3.projective_homomorphism
            && s3.exact_over_f2
            && s3.three_cycles_order_three
            && s3.transposition_e1_e2
            && s3.transposition_e1_sum
            && s3.e1_factorisation,
    ));
    for q in [2u8, 3, 4, 5] {
        let a = abelianization_image_test(q)?;
        let holds = a.surjective && a.oracle_agrees.unwrap_or(true);
        out.push(IdentityCase::new(
            "abelianization_image",
            format!("F{q}"),
            serde_json::to_value(&a).expect("plain struct"),
            holds,
        ));
    }
    Ok(out)
}
