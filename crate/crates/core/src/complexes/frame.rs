use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::simplicial::{SimplicialComplex, MAX_VERTICES};
use crate::enumeration::{enumerate_lines, Line, NormBound};
use crate::error::{Error, Result};
use crate::linalg::is_partial_frame;
use crate::rings::{FrameRing, RingId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdditiveKind {
    Frame,
    Internal,
    External,
}

/// One additive relation on a simplex, in global vertex indices.
///
/// Internal: `rep(i) = a·rep(j) + b·rep(k)`.
/// External: `rep(i) = a·e_k + b·rep(j)` with `k` a 1-based standard index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveWitness<R> {
    pub kind: AdditiveKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a: R,
    pub b: R,
}

impl<R: FrameRing> AdditiveWitness<R> {
    /// Checks the recorded identity exactly.
    pub fn holds(&self, lines: &[Line<R>], ambient: usize) -> bool {
        if !self.a.is_unit() || !self.b.is_unit() {
            return false;
        }
        let lhs = lines[self.i].rep();
        let (x, y) = match self.kind {
            AdditiveKind::Internal => (lines[self.j].rep().to_vec(), lines[self.k].rep().to_vec()),
            AdditiveKind::External => (standard(ambient, self.k - 1), lines[self.j].rep().to_vec()),
            AdditiveKind::Frame => return false,
        };
        lhs.iter()
            .zip(x.iter().zip(&y))
            .all(|(l, (x, y))| *l == self.a.clone() * x.clone() + self.b.clone() * y.clone())
    }

    /// The unordered set of vertex indices (and `e_k` as `None`) involved.
    fn support(&self) -> BTreeSet<Option<usize>> {
        match self.kind {
            AdditiveKind::External => [Some(self.i), Some(self.j), None].into(),
            _ => [Some(self.i), Some(self.j), Some(self.k)].into(),
        }
    }
}

impl<R: FrameRing> Serialize for AdditiveWitness<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AdditiveWitness", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("witness", &[self.i, self.j, self.k])?;
        st.serialize_field("units", &[self.a.to_elem(), self.b.to_elem()])?;
        st.end()
    }
}

fn standard<R: FrameRing>(n: usize, i: usize) -> Vec<R> {
    (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect()
}

/// `B_n^m` or `BA_n^m` over `R`, possibly truncated by a norm bound.
#[derive(Clone, Debug)]
pub struct FrameComplex<R> {
    pub n: usize,
    pub m: usize,
    pub bound: Option<NormBound>,
    pub augmented: bool,
    pub lines: Vec<Line<R>>,
    pub complex: SimplicialComplex,
    /// Witnesses per additive simplex; frame simplices carry none.
    pub tags: BTreeMap<Vec<usize>, Vec<AdditiveWitness<R>>>,
}

impl<R: FrameRing> FrameComplex<R> {
    pub fn ring(&self) -> RingId {
        R::ring_id()
    }

    pub fn ambient(&self) -> usize {
        self.n + self.m
    }

    pub fn truncated(&self) -> bool {
        !R::is_finite()
    }

    pub fn vertex_of(&self, line: &Line<R>) -> Option<usize> {
        self.lines.binary_search(line).ok()
    }

    pub fn kind(&self, simplex: &[usize]) -> AdditiveKind {
        self.tags
            .get(simplex)
            .and_then(|w| w.first())
            .map_or(AdditiveKind::Frame, |w| w.kind)
    }

    /// True when a simplex carries more than one distinct additive relation.
    pub fn has_multiple_relations(&self, simplex: &[usize]) -> bool {
        self.tags.get(simplex).is_some_and(|ws| {
            ws.iter().map(AdditiveWitness::support).collect::<BTreeSet<_>>().len() > 1
        })
    }

    /// The sub-complex of frame simplices.
    pub fn frame_part(&self) -> SimplicialComplex {
        self.complex.filter(|s| !self.tags.contains_key(s))
    }
}

impl<R: FrameRing> Serialize for FrameComplex<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Tag<'a, W> {
            simplex: &'a [usize],
            witnesses: &'a [W],
        }
        let simplices: BTreeMap<usize, &[Vec<usize>]> = (0..=self.complex.dim().max(-1) as usize)
            .take_while(|&d| self.complex.count(d) > 0)
            .map(|d| (d, self.complex.simplices(d)))
            .collect();
        let tags: Vec<_> = self
            .tags
            .iter()
            .map(|(k, v)| Tag {
                simplex: k,
                witnesses: v,
            })
            .collect();
        let mut st = s.serialize_struct("FrameComplex", 9)?;
        st.serialize_field("ring", &R::ring_id())?;
        st.serialize_field("kind", if self.augmented { "BA" } else { "B" })?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("bound", &self.bound.map(NormBound::get))?;
        st.serialize_field("truncated", &self.truncated())?;
        st.serialize_field("vertices", &self.lines)?;
        st.serialize_field("vertex_count", &self.lines.len())?;
        st.serialize_field("simplices", &simplices)?;
        st.serialize_field("tags", &tags)?;
        st.end()
    }
}

fn effective_bound<R: FrameRing>(bound: Option<NormBound>) -> Option<NormBound> {
    if R::is_finite() {
        None
    } else {
        bound
    }
}

/// Vertices of `B_n^m`: lines `v` of `R^{n+m}` with `{e_1..e_m, v}` a partial frame.
fn frame_vertices<R: FrameRing>(n: usize, m: usize, bound: Option<NormBound>) -> Result<Vec<Line<R>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let total = n + m;
    let es: Vec<Vec<R>> = (0..m).map(|i| standard(total, i)).collect();
    let mut out = Vec::new();
    for line in enumerate_lines::<R>(total, bound)? {
        if line.lies_in_first(m) {
            continue;
        }
        let mut vs = es.clone();
        vs.push(line.rep().to_vec());
        if is_partial_frame(&vs, total)? {
            out.push(line);
        }
    }
    out.sort();
    if out.len() > MAX_VERTICES {
        return Err(Error::SizeGuard {
            what: "vertex count",
            size: out.len(),
            limit: MAX_VERTICES,
        });
    }
    Ok(out)
}

fn with_standard<R: FrameRing>(lines: &[Line<R>], s: &[usize], m: usize) -> Vec<Vec<R>> {
    let total = lines.first().map_or(m, Line::ambient_rank);
    let mut vs: Vec<Vec<R>> = (0..m).map(|i| standard(total, i)).collect();
    vs.extend(s.iter().map(|&v| lines[v].rep().to_vec()));
    vs
}

/// `B_n^m`: simplices are sets `S` with `{e_1..e_m} ∪ S` a partial frame.
pub fn build_b<R: FrameRing>(n: usize, m: usize, bound: Option<NormBound>) -> Result<FrameComplex<R>> {
    let bound = effective_bound::<R>(bound);
    let lines = frame_vertices::<R>(n, m, bound)?;
    let total = n + m;
    let complex = SimplicialComplex::grow(lines.len(), |s| {
        is_partial_frame(&with_standard(&lines, s, m), total).unwrap_or(false)
    });
    Ok(FrameComplex {
        n,
        m,
        bound,
        augmented: false,
        lines,
        complex,
        tags: BTreeMap::new(),
    })
}

/// The full subcomplex of `B_n^m` on the given lines, each of which must be a
/// vertex of `B_n^m` (and within `bound` for infinite rings).
pub fn build_b_on<R: FrameRing>(
    n: usize,
    m: usize,
    bound: Option<NormBound>,
    lines: Vec<Line<R>>,
) -> Result<FrameComplex<R>> {
    let bound = effective_bound::<R>(bound);
    let total = n + m;
    let es: Vec<Vec<R>> = (0..m).map(|i| standard(total, i)).collect();
    let mut lines = lines;
    lines.sort();
    lines.dedup();
    for (i, l) in lines.iter().enumerate() {
        if l.ambient_rank() != total {
            return Err(Error::DimensionMismatch(format!("line {l} in R^{total}")));
        }
        if !l.within(bound) {
            return Err(Error::EscapesTruncation {
                vertex: i,
                label: l.to_string(),
            });
        }
        let mut vs = es.clone();
        vs.push(l.rep().to_vec());
        if l.lies_in_first(m) || !is_partial_frame(&vs, total)? {
            return Err(Error::Invalid(format!("{l} is not a vertex of B_{n}^{m}")));
        }
    }
    let complex = SimplicialComplex::grow(lines.len(), |s| {
        is_partial_frame(&with_standard(&lines, s, m), total).unwrap_or(false)
    });
    Ok(FrameComplex {
        n,
        m,
        bound,
        augmented: false,
        lines,
        complex,
        tags: BTreeMap::new(),
    })
}

/// All additive relations on `S = {e_1..e_m} ∪ σ`: some `z ∈ S` equals
/// `u₁x + u₂y` for units and `x, y ∈ S∖{z}`, where `S∖{z}` is a partial frame.
fn additive_witnesses<R: FrameRing>(
    lines: &[Line<R>],
    sigma: &[usize],
    m: usize,
    units: &[R],
) -> Result<Vec<AdditiveWitness<R>>> {
    // members: Err(k) = e_{k+1}, Ok(v) = vertex v
    let members: Vec<std::result::Result<usize, usize>> =
        (0..m).map(Err).chain(sigma.iter().copied().map(Ok)).collect();
    let vectors = with_standard(lines, sigma, m);
    let total = vectors.first().map_or(0, Vec::len);
    let mut out = BTreeSet::new();
    for z in 0..members.len() {
        let rest: Vec<Vec<R>> = (0..members.len()).filter(|&i| i != z).map(|i| vectors[i].clone()).collect();
        if !is_partial_frame(&rest, total)? {
            continue;
        }
        for x in 0..members.len() {
            for y in x + 1..members.len() {
                if x == z || y == z {
                    continue;
                }
                for u1 in units {
                    for u2 in units {
                        let hit = (0..total).all(|c| {
                            vectors[z][c] == u1.clone() * vectors[x][c].clone() + u2.clone() * vectors[y][c].clone()
                        });
                        if hit {
                            record(&mut out, &members, (z, x, y), (u1, u2));
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Normalizes `z = u₁x + u₂y` into the internal/external witness shapes.
fn record<R: FrameRing>(
    out: &mut BTreeSet<AdditiveWitness<R>>,
    members: &[std::result::Result<usize, usize>],
    (z, x, y): (usize, usize, usize),
    (u1, u2): (&R, &R),
) {
    let inv = |u: &R| u.unit_inverse().expect("unit");
    match (members[z], members[x], members[y]) {
        (Ok(i), Ok(j), Ok(k)) => {
            out.insert(AdditiveWitness { kind: AdditiveKind::Internal, i, j, k, a: u1.clone(), b: u2.clone() });
        }
        (Ok(i), Err(e), Ok(j)) => {
            out.insert(AdditiveWitness { kind: AdditiveKind::External, i, j, k: e + 1, a: u1.clone(), b: u2.clone() });
        }
        (Ok(i), Ok(j), Err(e)) => {
            out.insert(AdditiveWitness { kind: AdditiveKind::External, i, j, k: e + 1, a: u2.clone(), b: u1.clone() });
        }
        // e = u₁x + u₂y  ⇒  x = u₁⁻¹e − u₁⁻¹u₂y and symmetrically
        (Err(e), Ok(i), Ok(j)) => {
            let (a1, a2) = (inv(u1), inv(u2));
            out.insert(AdditiveWitness { kind: AdditiveKind::External, i, j, k: e + 1, a: a1.clone(), b: -(a1 * u2.clone()) });
            out.insert(AdditiveWitness { kind: AdditiveKind::External, i: j, j: i, k: e + 1, a: a2.clone(), b: -(a2 * u1.clone()) });
        }
        // two standard lines involved: the third lies in R^m, excluded
        _ => {}
    }
}

/// `BA_n^m`: `B_n^m` plus augmented partial frames, each tagged with all of
/// its additive witnesses. Vertices lying in `R^m` are excluded.
pub fn build_ba<R: FrameRing>(n: usize, m: usize, bound: Option<NormBound>) -> Result<FrameComplex<R>> {
    let bound = effective_bound::<R>(bound);
    let lines = frame_vertices::<R>(n, m, bound)?;
    let total = n + m;
    let units = R::units();
    let complex = SimplicialComplex::grow(lines.len(), |s| {
        let vs = with_standard(&lines, s, m);
        is_partial_frame(&vs, total).unwrap_or(false)
            || additive_witnesses(&lines, s, m, &units).is_ok_and(|w| !w.is_empty())
    });
    let mut tags = BTreeMap::new();
    for s in complex.iter() {
        let ws = additive_witnesses(&lines, s, m, &units)?;
        if ws.is_empty() {
            continue;
        }
        if is_partial_frame(&with_standard(&lines, s, m), total)? {
            return Err(Error::Invalid(format!("simplex {s:?} is both a frame and augmented")));
        }
        tags.insert(s.clone(), ws);
    }
    Ok(FrameComplex {
        n,
        m,
        bound,
        augmented: true,
        lines,
        complex,
        tags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F2, F3, Z};

    fn line(v: &[i64]) -> Line<Z> {
        Line::from_i64(v).unwrap()
    }

    #[test]
    fn small_field_complexes() {
        let b = build_b::<F2>(2, 0, None).unwrap();
        assert_eq!(b.complex.f_vector(), vec![3, 3]);
        let b = build_b::<F3>(2, 0, None).unwrap();
        assert_eq!(b.complex.f_vector(), vec![4, 6]);
        let b = build_b::<F2>(1, 1, None).unwrap();
        assert_eq!(b.complex.f_vector(), vec![2]);
        let reps: Vec<_> = b.lines.iter().map(|l| l.rep().to_vec()).collect();
        assert!(reps.contains(&vec![F2::new(0), F2::new(1)]));
        assert!(reps.contains(&vec![F2::new(1), F2::new(1)]));
    }

    #[test]
    fn integer_internal_triangle() {
        let ba = build_ba::<Z>(2, 0, Some(NormBound::new(1).unwrap())).unwrap();
        let s: Vec<usize> = {
            let mut s = vec![
                ba.vertex_of(&line(&[1, 1])).unwrap(),
                ba.vertex_of(&line(&[1, 0])).unwrap(),
                ba.vertex_of(&line(&[0, 1])).unwrap(),
            ];
            s.sort();
            s
        };
        assert!(ba.complex.contains(&s));
        assert_eq!(ba.kind(&s), AdditiveKind::Internal);
        let w = &ba.tags[&s];
        assert!(w.iter().all(|w| w.holds(&ba.lines, 2)));
        assert!(w.iter().any(|w| w.i == ba.vertex_of(&line(&[1, 1])).unwrap() && w.a == Z::from(1) && w.b == Z::from(1)));
    }

    #[test]
    fn field_triangle_is_internal() {
        let ba = build_ba::<F2>(2, 0, None).unwrap();
        assert_eq!(ba.complex.f_vector(), vec![3, 3, 1]);
        assert_eq!(ba.kind(&[0, 1, 2]), AdditiveKind::Internal);
        assert_eq!(ba.frame_part(), build_b::<F2>(2, 0, None).unwrap().complex);
    }

    #[test]
    fn integer_external_edge() {
        let ba = build_ba::<Z>(1, 1, Some(NormBound::new(2).unwrap())).unwrap();
        let v0 = ba.vertex_of(&line(&[0, 1])).unwrap();
        let v1 = ba.vertex_of(&line(&[1, 1])).unwrap();
        let e = [v0.min(v1), v0.max(v1)];
        assert_eq!(ba.kind(&e), AdditiveKind::External);
        let ws = &ba.tags[&e.to_vec()];
        assert!(ws.iter().all(|w| w.holds(&ba.lines, 2)));
        // v⃗₁ = e⃗₁ + v⃗₀
        assert!(ws.iter().any(|w| w.i == v1 && w.j == v0 && w.k == 1 && w.a == Z::from(1) && w.b == Z::from(1)));
        assert_eq!(ba.vertex_of(&line(&[1, 0])), None);
    }
}
