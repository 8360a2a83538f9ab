use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex-count guard for every builder.
pub const MAX_VERTICES: usize = 50_000;

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
///
/// Simplices are strictly increasing index tuples, stored per dimension in
/// lexicographic order. Every vertex is a 0-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            simplices: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn from_levels(vertex_count: usize, mut simplices: Vec<Vec<Vec<usize>>>) -> Self {
        while simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        let mut index = HashMap::new();
        for level in &simplices {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex {
            vertex_count,
            simplices,
            index,
        }
    }

    /// Closes the given simplices under faces. Input tuples may be unsorted.
    pub fn from_simplices<I>(vertex_count: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut levels: Vec<HashSet<Vec<usize>>> = Vec::new();
        let add = |s: Vec<usize>, levels: &mut Vec<HashSet<Vec<usize>>>| {
            let d = s.len() - 1;
            if levels.len() <= d {
                levels.resize(d + 1, HashSet::new());
            }
            levels[d].insert(s);
        };
        for v in 0..vertex_count {
            add(vec![v], &mut levels);
        }
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if let Some(&bad) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Invalid(format!(
                    "vertex {bad} out of range for {vertex_count} vertices"
                )));
            }
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                add(face, &mut levels);
            }
        }
        let levels = levels
            .into_iter()
            .map(|set| {
                let mut v: Vec<_> = set.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        Ok(Self::from_levels(vertex_count, levels))
    }

    /// The largest face-closed family containing all vertices whose simplices
    /// satisfy `pred`. `pred` must be inherited by faces; it is only consulted
    /// on tuples whose proper faces are already present.
    pub fn grow<P>(vertex_count: usize, pred: P) -> Self
    where
        P: Fn(&[usize]) -> bool + Sync,
    {
        if vertex_count == 0 {
            return Self::empty();
        }
        let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..vertex_count).map(|v| vec![v]).collect()];
        loop {
            let prev = levels.last().expect("nonempty");
            let known: HashSet<&[usize]> = prev.iter().map(Vec::as_slice).collect();
            let mut next: Vec<Vec<usize>> = prev
                .par_iter()
                .flat_map_iter(|s| {
                    let last = *s.last().expect("nonempty simplex");
                    let known = &known;
                    let pred = &pred;
                    (last + 1..vertex_count).filter_map(move |v| {
                        let mut t = s.clone();
                        t.push(v);
                        let faces_ok = (0..s.len()).all(|i| {
                            let mut f = t.clone();
                            f.remove(i);
                            known.contains(f.as_slice())
                        });
                        (faces_ok && pred(&t)).then_some(t)
                    })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            next.sort();
            levels.push(next);
        }
        Self::from_levels(vertex_count, levels)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().flatten()
    }

    /// Position of `s` (sorted) within its dimension.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        s.is_empty() || self.index.contains_key(s)
    }

    /// `-1 + Σ (-1)^d f_d`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .fold(-1, |acc, (d, l)| acc + if d % 2 == 0 { 1 } else { -1 } * l.len() as i64)
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut covered: HashSet<&[usize]> = HashSet::new();
        for level in self.simplices.iter().skip(1) {
            for s in level {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if let Some((k, _)) = self.index.get_key_value(&f) {
                        covered.insert(k.as_slice());
                    }
                }
            }
        }
        self.iter().filter(|s| !covered.contains(s.as_slice())).cloned().collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.len() as isize - 1 == d)
    }

    /// Link of `sigma`, with `map[new] = old` for the vertices.
    pub fn link(&self, sigma: &[usize]) -> Result<(SimplicialComplex, Vec<usize>)> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.contains(&sigma) {
            return Err(Error::NotInComplex(sigma));
        }
        let rests: Vec<Vec<usize>> = self
            .iter()
            .filter(|s| s.len() > sigma.len() && sigma.iter().all(|v| s.binary_search(v).is_ok()))
            .map(|s| s.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect())
            .collect();
        let mut map: Vec<usize> = rests.iter().filter(|r| r.len() == 1).map(|r| r[0]).collect();
        map.sort_unstable();
        let back: HashMap<usize, usize> = map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let link = Self::from_simplices(
            map.len(),
            rests.into_iter().map(|r| r.iter().map(|v| back[v]).collect()),
        )?;
        Ok((link, map))
    }

    /// Full subcomplex on `vertices`, re-indexed in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimplicialComplex {
        let back: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let simplices = self
            .iter()
            .filter(|s| s.iter().all(|v| back.contains_key(v)))
            .map(|s| s.iter().map(|v| back[v]).collect());
        Self::from_simplices(vertices.len(), simplices).expect("indices in range")
    }

    /// Subcomplex of simplices satisfying `keep` (closed under faces by the caller).
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> SimplicialComplex {
        let levels = self
            .simplices
            .iter()
            .map(|l| l.iter().filter(|s| s.len() == 1 || keep(s)).cloned().collect())
            .collect();
        Self::from_levels(self.vertex_count, levels)
    }

    pub fn check_size(&self) -> Result<()> {
        if self.vertex_count > MAX_VERTICES {
            return Err(Error::SizeGuard {
                what: "vertex count",
                size: self.vertex_count,
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }

    /// The boundary of the standard `d`-simplex, a `(d-1)`-sphere.
    pub fn simplex_boundary(d: usize) -> Self {
        let n = d + 1;
        Self::from_simplices(n, (0..n).map(|i| (0..n).filter(|&j| j != i).collect())).expect("in range")
    }

    /// Minimal 6-vertex triangulation of the real projective plane.
    pub fn rp2() -> Self {
        let faces = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        Self::from_simplices(6, faces.iter().map(|f| f.to_vec())).expect("in range")
    }
}

/// On-disk form: `{vertex_count, simplices: {"0": [[..]], ..}}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct ComplexRecord {
    pub vertex_count: usize,
    pub simplices: BTreeMap<usize, Vec<Vec<usize>>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexRecord {
            vertex_count: self.vertex_count,
            simplices: self.simplices.iter().cloned().enumerate().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = ComplexRecord::deserialize(d)?;
        SimplicialComplex::from_simplices(rec.vertex_count, rec.simplices.into_values().flatten())
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hollow_triangle() {
        let k = SimplicialComplex::simplex_boundary(2);
        assert_eq!(k.f_vector(), vec![3, 3]);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.reduced_euler_characteristic(), -1);
        let (l, map) = k.link(&[0]).unwrap();
        assert_eq!(l.f_vector(), vec![2]);
        assert_eq!(map, vec![1, 2]);
    }

    #[test]
    fn link_of_edge_in_sphere() {
        let k = SimplicialComplex::simplex_boundary(3);
        let (l, _) = k.link(&[0, 1]).unwrap();
        assert_eq!(l.f_vector(), vec![2]);
        assert!(matches!(k.link(&[0, 1, 2, 3]), Err(Error::NotInComplex(_))));
    }

    #[test]
    fn grow_matches_closure() {
        // flag complex of the 4-cycle
        let adj = |a: usize, b: usize| (a + 1) % 4 == b || (b + 1) % 4 == a;
        let k = SimplicialComplex::grow(4, |s| s.iter().all(|&a| s.iter().all(|&b| a == b || adj(a, b))));
        let c = SimplicialComplex::from_simplices(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        assert_eq!(k, c);
        assert_eq!(k.facets().len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let k = SimplicialComplex::rp2();
        assert_eq!(k.f_vector(), vec![6, 15, 10]);
        let s = serde_json::to_string(&k).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn empty_complex() {
        let e = SimplicialComplex::empty();
        assert_eq!(e.dim(), -1);
        assert_eq!(e.reduced_euler_characteristic(), -1);
        assert!(e.contains(&[]));
    }
}
