//! Concrete matrices, simplices and classes that appear in the source text,
//! checked literally.

use framelab::actions::{act_on_complex, bpid, generating_family, sphere_class, SphereClassSpec};
use framelab::complexes::{build_b, build_b_on, build_ba, AdditiveKind};
use framelab::enumeration::{Line, NormBound};
use framelab::homology::Chain;
use framelab::identities::{s3_matrices, verify_det_identity, verify_s3_embedding};
use framelab::linalg::ExactMatrix;
use framelab::{F2, Z};

fn z(v: &[i64]) -> Line<Z> {
    Line::from_i64(v).unwrap()
}

#[test]
fn determinants_of_the_swap_and_the_sign_change() {
    let swap = ExactMatrix::<Z>::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let sign = ExactMatrix::<Z>::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(swap.det().unwrap(), Z::from(-1));
    assert_eq!(sign.det().unwrap(), Z::from(-1));
    assert_eq!(verify_det_identity().unwrap(), (Z::from(-1), Z::from(-1)));
}

#[test]
fn transposition_matrices() {
    let mats = s3_matrices();
    let find = |p: [usize; 3]| mats.iter().find(|(q, _)| *q == p).unwrap().1.clone();
    assert_eq!(find([1, 0, 2]), ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
    assert_eq!(find([2, 1, 0]), ExactMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]));
    let r = verify_s3_embedding().unwrap();
    assert!(r.permutes_lines && r.transposition_e1_e2 && r.transposition_e1_sum);
    assert!(r.projective_homomorphism && r.exact_over_f2);
    assert!(!r.exact_over_z);
}

#[test]
fn augmented_internal_simplex_over_z() {
    let fc = build_ba::<Z>(2, 0, NormBound::new(1).ok()).unwrap();
    let mut s: Vec<usize> = [z(&[1, 1]), z(&[1, 0]), z(&[0, 1])]
        .iter()
        .map(|l| fc.vertex_of(l).unwrap())
        .collect();
    s.sort();
    assert!(fc.complex.contains(&s));
    assert_eq!(fc.kind(&s), AdditiveKind::Internal);
}

#[test]
fn bpid_swaps_e2_and_v3() {
    let bound = NormBound::new(4).ok();
    let (e2, v3) = (z(&[0, 1]), z(&[3, 1]));
    let fc = build_b_on(1, 1, bound, vec![e2.clone(), v3.clone()]).unwrap();
    let g = ExactMatrix::<Z>::from_i64_rows(&[&[1, -3], &[0, -1]]);
    let perm = act_on_complex(&g, &fc).unwrap();
    let (i, j) = (fc.vertex_of(&e2).unwrap(), fc.vertex_of(&v3).unwrap());
    assert_eq!((perm[i], perm[j]), (j, i));

    let c = sphere_class(&fc, &SphereClassSpec::new(vec![vec![e2, v3]])).unwrap();
    let expected = Chain::<Z>::from_terms(0, [(vec![j], Z::from(1)), (vec![i], Z::from(-1))]).unwrap();
    assert_eq!(c, expected);
    assert!(bpid(3, bound).unwrap().holds);
}

#[test]
fn block_swap_negates() {
    let fc = build_b::<Z>(2, 0, NormBound::new(1).ok()).unwrap();
    let spec = SphereClassSpec::new(vec![vec![z(&[1, 0]), z(&[0, 1]), z(&[1, 1])]]);
    let c = sphere_class(&fc, &spec).unwrap();
    assert!(!c.is_zero());
    assert_eq!(sphere_class(&fc, &spec.swapped(0, 0, 1)).unwrap(), c.neg());
    assert_eq!(sphere_class(&fc, &spec.swapped(0, 1, 2)).unwrap(), c.neg());
}

#[test]
fn generating_family_shapes() {
    let fc = build_b::<F2>(2, 0, None).unwrap();
    let fam = generating_family(&fc).unwrap();
    let l = |v: &[i64]| Line::<F2>::from_i64(v).unwrap();
    let target = [l(&[1, 0]), l(&[0, 1]), l(&[1, 1])];
    assert!(fam.iter().any(|s| s.blocks.len() == 1
        && s.blocks[0].len() == 3
        && target.iter().all(|t| s.blocks[0].contains(t))));

    let fc = build_b::<F2>(1, 0, None).unwrap();
    assert!(generating_family(&fc).unwrap().is_empty());
}
