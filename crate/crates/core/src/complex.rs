//! Abstract simplicial complexes on labelled vertices, with exact isomorphism
//! testing and a canonical form.
//!
//! Isomorphism is decided by backtracking over vertex bijections, pruned by
//! per-vertex link profiles and by checking every face as soon as all of its
//! vertices are mapped. The canonical form is the lexicographically smallest
//! sorted face list over relabelings compatible with the link profiles,
//! found by branch and bound with twin-vertex pruning.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::subsets::{down_closure, maximal_elements, SubsetMask};

/// A finite simplicial complex given by its facets.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SimplicialComplex {
    vertices: SubsetMask,
    facets: Vec<SubsetMask>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal non-empty sets as facets.
    pub fn from_facets(sets: impl IntoIterator<Item = SubsetMask>) -> Self {
        let sets: Vec<SubsetMask> = sets.into_iter().filter(|s| !s.is_empty()).collect();
        let facets = maximal_elements(&sets);
        let vertices = facets.iter().fold(SubsetMask::EMPTY, |acc, f| acc.union(*f));
        Self { vertices, facets }
    }

    /// Facets given as lists of 1-based vertex labels.
    pub fn from_facet_lists(lists: &[Vec<usize>]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| {
                if l.is_empty() {
                    Err(Error::MalformedTarget("empty facet".into()))
                } else {
                    SubsetMask::from_indices(l.iter().copied())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_facets(sets))
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> SubsetMask {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Facets, ascending by mask.
    pub fn facets(&self) -> &[SubsetMask] {
        &self.facets
    }

    /// All non-empty faces, ascending by mask.
    pub fn faces(&self) -> Vec<SubsetMask> {
        let mut faces = down_closure(&self.facets);
        faces.retain(|f| !f.is_empty());
        faces
    }

    pub fn contains_face(&self, face: SubsetMask) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(*f))
    }

    /// Number of faces with `k` vertices, for `k = 1..=max facet size`.
    pub fn f_vector(&self) -> Vec<u64> {
        let top = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut f = vec![0; top];
        for face in self.faces() {
            f[face.len() - 1] += 1;
        }
        f
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<SubsetMask> {
        let mut comps: Vec<SubsetMask> = Vec::new();
        for &facet in &self.facets {
            let (touching, mut rest): (Vec<_>, Vec<_>) =
                comps.into_iter().partition(|c| !c.intersection(facet).is_empty());
            rest.push(touching.into_iter().fold(facet, |acc, c| acc.union(c)));
            comps = rest;
        }
        comps.sort_unstable_by_key(|c| c.bits().trailing_zeros());
        comps
    }

    pub fn connected_components(&self) -> usize {
        self.components().len()
    }

    /// Component sizes, largest first.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components().iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Number of edges at each vertex, keyed by vertex.
    pub fn degrees(&self) -> BTreeMap<usize, usize> {
        let mut deg: BTreeMap<usize, usize> = self.vertices.iter().map(|v| (v, 0)).collect();
        for face in self.faces().into_iter().filter(|f| f.len() == 2) {
            for v in face.iter() {
                *deg.entry(v).or_default() += 1;
            }
        }
        deg
    }

    /// Edge degrees sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.degrees().into_values().collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Applies a vertex relabeling; vertices outside the map keep their label.
    pub fn relabel(&self, map: &VertexMap) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().map(|f| map.apply(*f)))
    }

    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph short_complex {\n");
        for v in self.vertices.iter() {
            out.push_str(&format!("  {v};\n"));
        }
        for e in self.faces().into_iter().filter(|f| f.len() == 2) {
            let v: Vec<usize> = e.to_vec();
            out.push_str(&format!("  {} -- {};\n", v[0], v[1]));
        }
        out.push_str("}\n");
        out
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }

    /// Minimal vertex sets that are not faces (each has size at least 2),
    /// ascending: the monomials `X_J` generating the face ideal besides `X_i^2`.
    pub fn minimal_non_faces(&self) -> Vec<SubsetMask> {
        let faces: std::collections::HashSet<SubsetMask> = self.faces().into_iter().collect();
        let mut out = std::collections::BTreeSet::new();
        for &f in &faces {
            for v in self.vertices.iter().filter(|&v| !f.contains(v)) {
                let x = f.with(v);
                if !faces.contains(&x) && x.iter().all(|u| x.without(u).is_empty() || faces.contains(&x.without(u))) {
                    out.insert(x);
                }
            }
        }
        out.into_iter().collect()
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SimplicialComplex", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("facets", &self.facets)?;
        st.end()
    }
}

/// A partial injective relabeling of vertices, sorted by source vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct VertexMap(Vec<(usize, usize)>);

impl VertexMap {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Self(pairs)
    }

    pub fn identity(vertices: SubsetMask) -> Self {
        Self(vertices.iter().map(|v| (v, v)).collect())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.0.binary_search_by_key(&v, |p| p.0).ok().map(|i| self.0[i].1)
    }

    pub fn apply(&self, set: SubsetMask) -> SubsetMask {
        set.iter().fold(SubsetMask::EMPTY, |acc, v| acc.with(self.get(v).unwrap_or(v)))
    }

    pub fn inverse(&self) -> VertexMap {
        Self::new(self.0.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        Self::new(self.0.iter().map(|&(a, b)| (a, other.get(b).unwrap_or(b))).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(a, b)| a == b)
    }
}

impl Serialize for VertexMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for pair in &self.0 {
            seq.serialize_element(&[pair.0, pair.1])?;
        }
        seq.end()
    }
}

/// Invariants used to tell complexes (and chain spaces) apart.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    EmptySpace,
    Dimension,
    VertexCount,
    FVector,
    ComponentCount,
    ComponentSizes,
    DegreeSequence,
    LinkProfile,
    GradedDimensions,
    ExhaustedSearch,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::EmptySpace => "chain space emptiness",
            Invariant::Dimension => "dimension",
            Invariant::VertexCount => "vertex count",
            Invariant::FVector => "f-vector",
            Invariant::ComponentCount => "component count",
            Invariant::ComponentSizes => "component sizes",
            Invariant::DegreeSequence => "degree sequence",
            Invariant::LinkProfile => "vertex link profiles",
            Invariant::GradedDimensions => "graded dimensions",
            Invariant::ExhaustedSearch => "exhausted search",
        })
    }
}

/// Outcome of an isomorphism test, with a checkable witness either way.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoCertificate {
    Isomorphic { mapping: VertexMap },
    Distinct { invariant: Invariant, left: String, right: String },
}

impl IsoCertificate {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoCertificate::Isomorphic { .. })
    }

    pub fn mapping(&self) -> Option<&VertexMap> {
        match self {
            IsoCertificate::Isomorphic { mapping } => Some(mapping),
            IsoCertificate::Distinct { .. } => None,
        }
    }

    pub(crate) fn distinct(invariant: Invariant, left: impl fmt::Debug, right: impl fmt::Debug) -> Self {
        IsoCertificate::Distinct {
            invariant,
            left: compact_debug(&left),
            right: compact_debug(&right),
        }
    }
}

fn compact_debug(x: &impl fmt::Debug) -> String {
    format!("{x:?}").replace(' ', "")
}

impl fmt::Display for IsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoCertificate::Isomorphic { mapping } => {
                f.write_str("isomorphic via ")?;
                let parts: Vec<String> = mapping.pairs().iter().map(|(a, b)| format!("{a}→{b}")).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            IsoCertificate::Distinct { invariant, left, right } => {
                write!(f, "{invariant} {left} ≠ {right}")
            }
        }
    }
}

/// Per-vertex invariant: number of faces of each size containing the vertex.
fn link_profile(faces: &[SubsetMask], v: usize, top: usize) -> Vec<u64> {
    let mut p = vec![0; top];
    for f in faces.iter().filter(|f| f.contains(v)) {
        p[f.len() - 1] += 1;
    }
    p
}

fn link_profiles(c: &SimplicialComplex, faces: &[SubsetMask]) -> BTreeMap<usize, Vec<u64>> {
    let top = c.facets.iter().map(|f| f.len()).max().unwrap_or(0);
    c.vertices.iter().map(|v| (v, link_profile(faces, v, top))).collect()
}

fn sorted_values<V: Ord + Clone>(m: &BTreeMap<usize, V>) -> Vec<V> {
    let mut v: Vec<V> = m.values().cloned().collect();
    v.sort_unstable();
    v
}

/// Decides whether two complexes are isomorphic, ignoring vertex labels.
pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> IsoCertificate {
    if a.vertex_count() != b.vertex_count() {
        return IsoCertificate::distinct(Invariant::VertexCount, a.vertex_count(), b.vertex_count());
    }
    let (fa, fb) = (a.f_vector(), b.f_vector());
    if fa != fb {
        return IsoCertificate::distinct(Invariant::FVector, fa, fb);
    }
    let (ca, cb) = (a.connected_components(), b.connected_components());
    if ca != cb {
        return IsoCertificate::distinct(Invariant::ComponentCount, ca, cb);
    }
    let (sa, sb) = (a.component_sizes(), b.component_sizes());
    if sa != sb {
        return IsoCertificate::distinct(Invariant::ComponentSizes, sa, sb);
    }
    let (da, db) = (a.degree_sequence(), b.degree_sequence());
    if da != db {
        return IsoCertificate::distinct(Invariant::DegreeSequence, da, db);
    }
    let faces_a = a.faces();
    let faces_b = b.faces();
    let prof_a = link_profiles(a, &faces_a);
    let prof_b = link_profiles(b, &faces_b);
    let (pa, pb) = (sorted_values(&prof_a), sorted_values(&prof_b));
    if pa != pb {
        return IsoCertificate::distinct(Invariant::LinkProfile, pa, pb);
    }
    match IsoSearch::new(a, b, &faces_a, &faces_b, &prof_a, &prof_b).run() {
        Some(mapping) => {
            assert_eq!(&a.relabel(&mapping), b, "isomorphism witness failed to verify");
            IsoCertificate::Isomorphic { mapping }
        }
        None => IsoCertificate::distinct(Invariant::ExhaustedSearch, "no bijection", "no bijection"),
    }
}

struct IsoSearch {
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    /// Faces of the first complex whose last vertex (in `order`) is at each step.
    closing: Vec<Vec<SubsetMask>>,
    /// Faces of the second complex containing each vertex.
    faces_at_b: BTreeMap<usize, Vec<SubsetMask>>,
    set_a: HashSet<SubsetMask>,
    set_b: HashSet<SubsetMask>,
    forward: [usize; 65],
    backward: [usize; 65],
}

impl IsoSearch {
    fn new(
        a: &SimplicialComplex,
        b: &SimplicialComplex,
        faces_a: &[SubsetMask],
        faces_b: &[SubsetMask],
        prof_a: &BTreeMap<usize, Vec<u64>>,
        prof_b: &BTreeMap<usize, Vec<u64>>,
    ) -> Self {
        let cands: BTreeMap<usize, Vec<usize>> = a
            .vertices
            .iter()
            .map(|v| (v, b.vertices.iter().filter(|w| prof_b[w] == prof_a[&v]).collect()))
            .collect();
        let edges: Vec<SubsetMask> = faces_a.iter().copied().filter(|f| f.len() == 2).collect();

        // Prefer vertices adjacent to many already-placed ones, then the most constrained.
        let mut order: Vec<usize> = Vec::new();
        let mut placed = SubsetMask::EMPTY;
        while order.len() < a.vertex_count() {
            let next = a
                .vertices
                .iter()
                .filter(|v| !placed.contains(*v))
                .max_by_key(|&v| {
                    let links = edges
                        .iter()
                        .filter(|e| e.contains(v) && !e.intersection(placed).is_empty())
                        .count();
                    (links, std::cmp::Reverse(cands[&v].len()), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            order.push(next);
            placed = placed.with(next);
        }
        let mut position = [0usize; 65];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for &f in faces_a {
            let last = f.iter().map(|v| position[v]).max().expect("non-empty face");
            closing[last].push(f);
        }
        let faces_at_b = b
            .vertices
            .iter()
            .map(|w| (w, faces_b.iter().copied().filter(|f| f.contains(w)).collect()))
            .collect();
        Self {
            candidates: order.iter().map(|v| cands[v].clone()).collect(),
            order,
            closing,
            faces_at_b,
            set_a: faces_a.iter().copied().collect(),
            set_b: faces_b.iter().copied().collect(),
            forward: [0; 65],
            backward: [0; 65],
        }
    }

    fn run(mut self) -> Option<VertexMap> {
        if self.extend(0, SubsetMask::EMPTY) {
            Some(VertexMap::new(self.order.iter().map(|&v| (v, self.forward[v])).collect()))
        } else {
            None
        }
    }

    fn map_set(table: &[usize; 65], set: SubsetMask) -> SubsetMask {
        set.iter().fold(SubsetMask::EMPTY, |acc, v| acc.with(table[v]))
    }

    fn extend(&mut self, step: usize, used_b: SubsetMask) -> bool {
        if step == self.order.len() {
            return true;
        }
        let v = self.order[step];
        for ci in 0..self.candidates[step].len() {
            let w = self.candidates[step][ci];
            if used_b.contains(w) {
                continue;
            }
            self.forward[v] = w;
            self.backward[w] = v;
            let image_b = used_b.with(w);
            let forward_ok = self.closing[step]
                .iter()
                .all(|&f| self.set_b.contains(&Self::map_set(&self.forward, f)));
            let backward_ok = forward_ok
                && self.faces_at_b[&w]
                    .iter()
                    .filter(|g| g.is_subset_of(image_b))
                    .all(|&g| self.set_a.contains(&Self::map_set(&self.backward, g)));
            if backward_ok && self.extend(step + 1, image_b) {
                return true;
            }
        }
        false
    }
}

/// Relabeling-invariant normal form of a complex: its faces on vertices
/// `1..=m`, as ascending masks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    vertex_count: usize,
    faces: Vec<u64>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> Vec<SubsetMask> {
        self.faces.iter().map(|&f| SubsetMask::from_bits(f)).collect()
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.faces())
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.complex().facet_lists()
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.facet_lists().serialize(s)
    }
}

pub fn canonical_form(c: &SimplicialComplex) -> CanonicalForm {
    canonical_labeling(c).0
}

/// Canonical form plus a relabeling carrying `c` onto it.
pub fn canonical_labeling(c: &SimplicialComplex) -> (CanonicalForm, VertexMap) {
    let faces = c.faces();
    let profiles = link_profiles(c, &faces);
    let mut verts: Vec<usize> = c.vertices.iter().collect();
    let component_size = |v: usize| {
        c.components().iter().find(|comp| comp.contains(v)).map(|comp| comp.len()).unwrap_or(0)
    };
    let keys: BTreeMap<usize, (usize, Vec<u64>)> =
        verts.iter().map(|&v| (v, (component_size(v), profiles[&v].clone()))).collect();
    verts.sort_by(|x, y| keys[x].cmp(&keys[y]).then(x.cmp(y)));

    // Position k may only receive vertices whose key equals the key at slot k.
    let slot_keys: Vec<&(usize, Vec<u64>)> = verts.iter().map(|v| &keys[v]).collect();
    let face_set: HashSet<SubsetMask> = faces.iter().copied().collect();
    let twin_of = twin_representatives(&verts, &faces, &face_set, &keys);
    let faces_at: BTreeMap<usize, Vec<SubsetMask>> = verts
        .iter()
        .map(|&v| (v, faces.iter().copied().filter(|f| f.contains(v)).collect()))
        .collect();

    let mut search = CanonSearch {
        verts: &verts,
        slot_keys: &slot_keys,
        keys: &keys,
        twin_of: &twin_of,
        faces_at: &faces_at,
        label: [0; 65],
        order: Vec::new(),
        best: None,
    };
    search.descend(&mut Vec::new(), SubsetMask::EMPTY);
    let (best, order) = search.best.expect("at least one labeling");
    let map = VertexMap::new(order.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect());
    (CanonicalForm { vertex_count: verts.len(), faces: best }, map)
}

/// For each vertex, the smallest vertex it can be swapped with by an automorphism
/// (a transposition fixing every other vertex).
fn twin_representatives(
    verts: &[usize],
    faces: &[SubsetMask],
    face_set: &HashSet<SubsetMask>,
    keys: &BTreeMap<usize, (usize, Vec<u64>)>,
) -> BTreeMap<usize, usize> {
    let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
    let mut sorted: Vec<usize> = verts.to_vec();
    sorted.sort_unstable();
    for (i, &v) in sorted.iter().enumerate() {
        let twin = sorted[..i].iter().copied().find(|&u| {
            rep[&u] == u && keys[&u] == keys[&v] && {
                let swap = VertexMap::new(vec![(u, v), (v, u)]);
                faces.iter().all(|f| face_set.contains(&swap.apply(*f)))
            }
        });
        rep.insert(v, twin.unwrap_or(v));
    }
    rep
}

struct CanonSearch<'a> {
    verts: &'a [usize],
    slot_keys: &'a [&'a (usize, Vec<u64>)],
    keys: &'a BTreeMap<usize, (usize, Vec<u64>)>,
    twin_of: &'a BTreeMap<usize, usize>,
    faces_at: &'a BTreeMap<usize, Vec<SubsetMask>>,
    label: [usize; 65],
    order: Vec<usize>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

/// Compares partial encodings as their completions would compare: on a common
/// prefix the longer encoding is smaller, because its next face lies below
/// every face the shorter one can still gain.
fn compare_partial(p: &[u64], q: &[u64]) -> Ordering {
    for (x, y) in p.iter().zip(q) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    q.len().cmp(&p.len())
}

impl CanonSearch<'_> {
    fn descend(&mut self, encoding: &mut Vec<u64>, placed: SubsetMask) {
        let k = self.order.len();
        if k == self.verts.len() {
            let better = match &self.best {
                None => true,
                Some((b, _)) => encoding.as_slice() < b.as_slice(),
            };
            if better {
                self.best = Some((encoding.clone(), self.order.clone()));
            }
            return;
        }
        let slot_key = self.slot_keys[k];
        let mut tried_twins = SubsetMask::EMPTY;
        for &u in self.verts {
            if placed.contains(u) || &self.keys[&u] != slot_key {
                continue;
            }
            let twin = self.twin_of[&u];
            if tried_twins.contains(twin) {
                continue;
            }
            tried_twins = tried_twins.with(twin);

            self.label[u] = k + 1;
            let now_placed = placed.with(u);
            let mut new_faces: Vec<u64> = self.faces_at[&u]
                .iter()
                .filter(|f| f.is_subset_of(now_placed))
                .map(|f| f.iter().fold(0u64, |acc, v| acc | 1 << (self.label[v] - 1)))
                .collect();
            new_faces.sort_unstable();
            let mark = encoding.len();
            encoding.extend_from_slice(&new_faces);

            let prune = match &self.best {
                Some((b, _)) => {
                    let limit = 1u64 << (k + 1);
                    let prefix = &b[..b.partition_point(|&x| x < limit)];
                    compare_partial(encoding, prefix) == Ordering::Greater
                }
                None => false,
            };
            if !prune {
                self.order.push(u);
                self.descend(encoding, now_placed);
                self.order.pop();
            }
            encoding.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(lists: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    fn triangle_plus_point() -> SimplicialComplex {
        cx(&[&[1, 2], &[1, 3], &[2, 3], &[4]])
    }

    fn star() -> SimplicialComplex {
        cx(&[&[1, 2], &[1, 3], &[1, 4]])
    }

    #[test]
    fn facets_are_maximal() {
        let c = cx(&[&[1, 2, 3], &[1, 2], &[4]]);
        assert_eq!(c.facet_lists(), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(c.vertex_count(), 4);
        assert!(c.contains_face(SubsetMask::from_indices([1, 3]).unwrap()));
        assert!(!c.contains_face(SubsetMask::from_indices([3, 4]).unwrap()));
        assert!(SimplicialComplex::from_facet_lists(&[vec![]]).is_err());
    }

    #[test]
    fn f_vector_examples() {
        assert_eq!(triangle_plus_point().f_vector(), [4, 3]);
        assert!(SimplicialComplex::default().f_vector().is_empty());
        assert_eq!(cx(&[&[1, 2, 3]]).f_vector(), [3, 3, 1]);
    }

    #[test]
    fn minimal_non_faces_examples() {
        let masks = |c: &SimplicialComplex| c.minimal_non_faces().iter().map(|m| m.to_vec()).collect::<Vec<_>>();
        assert_eq!(masks(&triangle_plus_point()), vec![vec![1, 2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]);
        assert_eq!(masks(&star()), vec![vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert!(cx(&[&[1, 2, 3]]).minimal_non_faces().is_empty());
    }

    #[test]
    fn components_examples() {
        assert_eq!(triangle_plus_point().connected_components(), 2);
        assert_eq!(star().connected_components(), 1);
        assert_eq!(SimplicialComplex::default().connected_components(), 0);
        assert_eq!(cx(&[&[1, 2], &[3, 4], &[2, 3], &[6]]).component_sizes(), [4, 1]);
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(triangle_plus_point().degree_sequence(), [2, 2, 2, 0]);
        assert_eq!(star().degree_sequence(), [3, 1, 1, 1]);
    }

    #[test]
    fn comment_pair_is_distinguished_by_connectivity() {
        let cert = are_isomorphic(&triangle_plus_point(), &star());
        assert_eq!(
            cert,
            IsoCertificate::Distinct {
                invariant: Invariant::ComponentCount,
                left: "2".into(),
                right: "1".into()
            }
        );
        assert_eq!(cert.to_string(), "component count 2 ≠ 1");
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let c = cx(&[&[1, 2, 5], &[2, 3], &[4]]);
        let cert = are_isomorphic(&c, &c);
        assert!(cert.mapping().unwrap().is_identity());
    }

    #[test]
    fn relabeled_complexes_are_isomorphic() {
        let c = cx(&[&[1, 2, 3], &[3, 4], &[4, 5], &[6]]);
        let map = VertexMap::new(vec![(1, 6), (2, 4), (3, 1), (4, 2), (5, 3), (6, 5)]);
        let d = c.relabel(&map);
        let cert = are_isomorphic(&c, &d);
        let found = cert.mapping().expect("isomorphic");
        assert_eq!(c.relabel(found), d);
        assert_eq!(canonical_form(&c), canonical_form(&d));
    }

    #[test]
    fn exhausted_search_when_invariants_agree() {
        // Two 2-regular graphs on 6 vertices: a hexagon and two triangles
        // differ in components, so use a pair with equal local data instead:
        // the 3-prism and K_{3,3} are both 3-regular on 6 vertices and connected.
        let prism = cx(&[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6], &[1, 4], &[2, 5], &[3, 6]]);
        let k33 = cx(&[&[1, 4], &[1, 5], &[1, 6], &[2, 4], &[2, 5], &[2, 6], &[3, 4], &[3, 5], &[3, 6]]);
        let cert = are_isomorphic(&prism, &k33);
        assert!(!cert.is_isomorphic());
        assert_ne!(canonical_form(&prism), canonical_form(&k33));
    }

    #[test]
    fn canonical_form_examples() {
        assert_ne!(canonical_form(&triangle_plus_point()), canonical_form(&star()));
        assert_eq!(canonical_form(&cx(&[&[3]])), canonical_form(&cx(&[&[7]])));
        let (form, map) = canonical_labeling(&star());
        assert_eq!(star().relabel(&map), form.complex());
        assert_eq!(form.vertex_count(), 4);
    }

    #[test]
    fn canonical_form_handles_symmetric_complexes() {
        let points = SimplicialComplex::from_facets((1..=14).map(SubsetMask::singleton));
        assert_eq!(canonical_form(&points).faces().len(), 14);
        let simplex = cx(&[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]]);
        assert_eq!(canonical_form(&simplex).faces().len(), (1 << 12) - 1);
    }

    #[test]
    fn dot_output() {
        let dot = star().to_dot();
        assert!(dot.contains("1 -- 4;"));
        assert!(dot.starts_with("graph"));
    }

    #[test]
    fn vertex_map_algebra() {
        let m = VertexMap::new(vec![(1, 2), (2, 3), (3, 1)]);
        assert!(m.then(&m.inverse()).is_identity());
        assert_eq!(m.apply(SubsetMask::from_indices([1, 3]).unwrap()).to_vec(), [1, 2]);
    }

    #[test]
    fn serializes_facets() {
        let json = serde_json::to_string(&star()).unwrap();
        assert_eq!(json, r#"{"vertices":[1,2,3,4],"facets":[[1,2],[1,3],[1,4]]}"#);
    }
}
