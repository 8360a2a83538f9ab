//! Derived values checked against oracles that share no code with the engine:
//! closed-form counts, brute-force enumeration, determinantal divisors and the
//! universal coefficient theorem.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use framelab::actions::{coinvariants, gl_fix_elements, permutation_of, split_steinberg_coinvariants};
use framelab::complexes::{build_b, build_splitting_poset, build_tits, SimplicialComplex, SplittingConstraints};
use framelab::enumeration::{enumerate_lines, enumerate_subspaces, NormBound};
use framelab::homology::{poset_homology, reduced_homology};
use framelab::linalg::{smith_normal_form, ExactMatrix};
use framelab::rings::{CoeffRing, FiniteField};
use framelab::{F2, F3, F5, Z};

fn det_i64(m: &[Vec<i64>]) -> BigInt {
    // cofactor expansion, fine for k <= 4
    let k = m.len();
    if k == 0 {
        return BigInt::from(1);
    }
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            BigInt::from(s * m[0][j]) * det_i64(&minor)
        })
        .sum()
}

/// `d_k = gcd of k×k minors`; invariant factors are `d_k / d_{k-1}`.
fn determinantal_factors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (a.len(), a[0].len());
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in (0..r).combinations(k) {
            for cols in (0..c).combinations(k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det_i64(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

#[test]
fn smith_matches_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = ExactMatrix::<Z>::from_fn(r, c, |i, j| Z::from(a[i][j]));
        let s = smith_normal_form(&m);
        let nonzero: Vec<BigInt> = s.invariant_factors.iter().filter(|d| !d.is_zero()).cloned().collect();
        assert_eq!(nonzero, determinantal_factors(&a), "{a:?}");
    }
}

fn reduced_euler(k: &SimplicialComplex) -> i64 {
    -1 + k.f_vector().iter().enumerate().map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) }).sum::<i64>()
}

#[test]
fn b2_over_fq_is_a_complete_graph() {
    // every pair of distinct lines of F_q^2 is a frame: K_{q+1}, H̃_1 of rank q(q-1)/2
    fn check<F: FiniteField + framelab::rings::FrameRing>() {
        let q = F::order() as usize;
        let fc = build_b::<F>(2, 0, None).unwrap();
        assert_eq!(fc.complex.f_vector(), vec![q + 1, q * (q + 1) / 2]);
        let h = reduced_homology(&fc.complex, CoeffRing::Z).unwrap();
        assert_eq!(h.betti(1), q * (q - 1) / 2);
        assert_eq!(reduced_euler(&fc.complex), -((q * (q - 1) / 2) as i64));
    }
    check::<F2>();
    check::<F3>();
    check::<F5>();
}

#[test]
fn euler_characteristic_matches_homology() {
    let complexes = vec![
        build_b::<F2>(3, 0, None).unwrap().complex,
        build_b::<F2>(2, 1, None).unwrap().complex,
        build_b::<Z>(2, 0, NormBound::new(2).ok()).unwrap().complex,
        build_tits::<F3>(3).unwrap().order_complex(),
        build_splitting_poset::<F2>(3, &SplittingConstraints::default()).unwrap().order_complex(),
        SimplicialComplex::rp2(),
    ];
    for k in complexes {
        let h = reduced_homology(&k, CoeffRing::Q).unwrap();
        let chi: i64 = h.degrees.iter().map(|d| if d.d.rem_euclid(2) == 0 { d.betti as i64 } else { -(d.betti as i64) }).sum();
        assert_eq!(chi, reduced_euler(&k));
    }
}

#[test]
fn universal_coefficients_over_prime_fields() {
    // dim H̃_d(K; F_p) = b_d + #{p | t in T_d} + #{p | t in T_{d-1}}
    let complexes = vec![
        SimplicialComplex::rp2(),
        build_b::<F2>(3, 0, None).unwrap().complex,
        build_splitting_poset::<F2>(3, &SplittingConstraints::default()).unwrap().order_complex(),
    ];
    for k in complexes {
        let hz = reduced_homology(&k, CoeffRing::Z).unwrap();
        for p in [2u64, 3, 5] {
            let hp = reduced_homology(&k, CoeffRing::Fp(p)).unwrap();
            let pb = BigInt::from(p);
            let tors = |d: i64| hz.torsion(d).iter().filter(|t| (*t % &pb).is_zero()).count();
            for d in 0..=k.dim() as i64 {
                assert_eq!(hp.betti(d), hz.betti(d) + tors(d) + tors(d - 1), "p = {p}, d = {d}");
            }
        }
    }
}

fn brute_vectors(n: usize, q: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| 0..q).multi_cartesian_product().collect()
}

fn rank_mod(rows: &[Vec<i64>], q: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(q) != 0) else { continue };
        m.swap(rank, p);
        let inv = (1..q).find(|x| (x * m[rank][c]).rem_euclid(q) == 1).unwrap();
        for r in 0..m.len() {
            if r != rank {
                let f = (m[r][c] * inv).rem_euclid(q);
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(q);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn subspace_counts_by_brute_force() {
    // k-subspaces = independent k-tuples / |GL_k(F_q)|
    for (n, q) in [(3usize, 2i64), (4, 2), (3, 3)] {
        let vs = brute_vectors(n, q);
        for k in 1..n {
            let tuples = (0..k)
                .map(|_| vs.iter())
                .multi_cartesian_product()
                .filter(|t| rank_mod(&t.iter().map(|v| v.to_vec()).collect::<Vec<_>>(), q) == k)
                .count();
            let gl: usize = (0..k).map(|i| (q.pow(k as u32) - q.pow(i as u32)) as usize).product();
            let got = match q {
                2 => enumerate_subspaces::<F2>(n, k).unwrap().len(),
                _ => enumerate_subspaces::<F3>(n, k).unwrap().len(),
            };
            assert_eq!(got, tuples / gl, "n = {n}, k = {k}, q = {q}");
        }
        let lines = match q {
            2 => enumerate_lines::<F2>(n, None).unwrap().len(),
            _ => enumerate_lines::<F3>(n, None).unwrap().len(),
        };
        assert_eq!(lines, (vs.len() - 1) / (q as usize - 1));
    }
}

#[test]
fn truncated_integer_lines() {
    // primitive (a, b) up to sign with max(|a|, |b|) <= 2
    let mut expected = 0;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            let first_nonzero_positive = a > 0 || (a == 0 && b > 0);
            if first_nonzero_positive && a.gcd(&b) == 1 {
                expected += 1;
            }
        }
    }
    assert_eq!(enumerate_lines::<Z>(2, NormBound::new(2).ok()).unwrap().len(), expected);
}

#[test]
fn split_steinberg_coinvariants_whole_group() {
    // relations from every element of GL_2(F_2) agree with the generator presentation
    let p = build_splitting_poset::<F2>(2, &SplittingConstraints::default()).unwrap();
    let k = p.order_complex();
    let group = gl_fix_elements::<F2>(2, 0).unwrap();
    let perms: Vec<Vec<usize>> = group
        .generators()
        .iter()
        .map(|g| permutation_of(p.elements(), |s| s.act(g)).unwrap())
        .collect();
    let full = coinvariants(&k, &perms).unwrap();
    let gens = split_steinberg_coinvariants::<F2>(2).unwrap();
    assert_eq!(full.invariant_factors, gens.invariant_factors);
    assert_eq!(full.invariant_factors, vec![BigInt::from(2)]);
    // six ordered splittings of F_2^2, discrete, so H̃_0 has rank 5
    assert_eq!(p.len(), 6);
    assert_eq!(full.module_rank, 5);
}

#[test]
fn steinberg_rank_is_q_to_the_n_choose_2() {
    for (n, q, rank) in [(2usize, 2u64, 2usize), (3, 2, 8), (2, 3, 3), (3, 3, 27)] {
        let betti = match q {
            2 => poset_homology(&build_tits::<F2>(n).unwrap(), CoeffRing::Q).unwrap(),
            _ => poset_homology(&build_tits::<F3>(n).unwrap(), CoeffRing::Q).unwrap(),
        }
        .betti(n as i64 - 2);
        assert_eq!(betti, rank);
        assert_eq!(rank, (q as usize).pow((n * (n - 1) / 2) as u32));
    }
}

#[test]
fn rp2_has_two_torsion() {
    let h = reduced_homology(&SimplicialComplex::rp2(), CoeffRing::Z).unwrap();
    assert_eq!(h.torsion(1), vec![BigInt::from(2)]);
    assert!(h.vanishes(2));
    assert_eq!(reduced_euler(&SimplicialComplex::rp2()), 0);
}
