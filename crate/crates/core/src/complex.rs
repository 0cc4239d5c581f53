//! Filtered abstract simplicial complexes, simplicial maps and a
//! Vietoris-Rips builder.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    pub id: String,
    /// Strictly increasing vertex labels.
    pub vertices: Vec<u32>,
    /// Filtration index at which the simplex appears.
    pub entry: usize,
}

impl Simplex {
    /// Simplex with the default id (`"0_1_2"` for vertices 0, 1, 2).
    pub fn new(vertices: Vec<u32>, entry: usize) -> Self {
        Simplex {
            id: default_id(&vertices),
            vertices,
            entry,
        }
    }

    pub fn with_id(id: impl Into<String>, vertices: Vec<u32>, entry: usize) -> Self {
        Simplex {
            id: id.into(),
            vertices,
            entry,
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

pub fn default_id(vertices: &[u32]) -> String {
    vertices
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("_")
}

/// Orientation coefficient `[sigma : tau]`.
///
/// `(-1)^j` when `sigma` is `tau` with its `j`-th vertex removed, else 0.
pub fn incidence_sign(sigma: &[u32], tau: &[u32]) -> i8 {
    if sigma.len() + 1 != tau.len() {
        return 0;
    }
    // first position where they differ is the omitted vertex
    let j = sigma
        .iter()
        .zip(tau)
        .position(|(a, b)| a != b)
        .unwrap_or(sigma.len());
    if sigma[j..] != tau[j + 1..] {
        return 0;
    }
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexViolation {
    EmptySimplex { id: String },
    UnsortedVertices { id: String },
    DuplicateId { id: String },
    DuplicateSimplex { id: String, other: String },
    MissingFace { id: String, face: Vec<u32> },
    EntryNotMonotone { id: String, face: String },
    EntryOutOfRange { id: String, entry: usize, steps: usize },
}

impl fmt::Display for ComplexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ComplexViolation::*;
        match self {
            EmptySimplex { id } => write!(f, "simplex {id} has no vertices"),
            UnsortedVertices { id } => {
                write!(f, "vertices of {id} are not strictly increasing")
            }
            DuplicateId { id } => write!(f, "duplicate id {id}"),
            DuplicateSimplex { id, other } => {
                write!(f, "simplices {id} and {other} have the same vertices")
            }
            MissingFace { id, face } => write!(f, "missing face {face:?} of {id}"),
            EntryNotMonotone { id, face } => {
                write!(f, "entry not monotone: face {face} enters after {id}")
            }
            EntryOutOfRange { id, entry, steps } => {
                write!(f, "entry {entry} of {id} is not below steps = {steps}")
            }
        }
    }
}

/// A finite simplicial complex whose simplices carry entry indices
/// `0..steps`.
///
/// Simplices are kept in the canonical order (dimension, entry, vertices)
/// and addressed by their position in that order.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    field: Field,
    steps: usize,
    simplices: Vec<Simplex>,
    by_vertices: HashMap<Vec<u32>, usize>,
    by_id: HashMap<String, usize>,
    by_dim: Vec<Vec<usize>>,
    // codimension-1 faces and cofaces with orientation sign
    faces: Vec<Vec<(usize, i8)>>,
    cofaces: Vec<Vec<(usize, i8)>>,
}

impl PartialEq for FilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.steps == other.steps && self.simplices == other.simplices
    }
}

impl Eq for FilteredComplex {}

impl FilteredComplex {
    /// Validates and builds a complex.
    pub fn new(field: Field, steps: usize, simplices: Vec<Simplex>) -> Result<Self> {
        let violations = validate(steps, &simplices);
        if !violations.is_empty() {
            return Err(Error::InvalidComplex(violations));
        }
        Ok(Self::build(field, steps, simplices))
    }

    /// Builds the closure of the given simplices (given as vertex lists with
    /// entries). Faces receive the smallest entry among the listed simplices
    /// containing them; `steps` is one past the largest entry.
    pub fn from_closure(field: Field, generators: &[(Vec<u32>, usize)]) -> Result<Self> {
        let mut entries: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for (verts, entry) in generators {
            let mut v = verts.clone();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                return Err(Error::InvalidInput("empty simplex".into()));
            }
            for mask in 1u64..(1u64 << v.len()) {
                let face: Vec<u32> = (0..v.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| v[i])
                    .collect();
                let e = entries.entry(face).or_insert(*entry);
                *e = (*e).min(*entry);
            }
        }
        let steps = entries.values().max().map_or(1, |e| e + 1);
        let simplices = entries
            .into_iter()
            .map(|(v, e)| Simplex::new(v, e))
            .collect();
        Self::new(field, steps, simplices)
    }

    fn build(field: Field, steps: usize, mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_by(|a, b| {
            (a.dim(), a.entry, &a.vertices).cmp(&(b.dim(), b.entry, &b.vertices))
        });
        let by_vertices: HashMap<Vec<u32>, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices.clone(), i))
            .collect();
        let by_id = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.clone(), i))
            .collect();
        let top = simplices.iter().map(|s| s.dim() + 1).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        let mut faces = vec![Vec::new(); simplices.len()];
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            by_dim[s.dim()].push(i);
            if s.vertices.len() < 2 {
                continue;
            }
            for j in 0..s.vertices.len() {
                let mut face = s.vertices.clone();
                face.remove(j);
                let fi = by_vertices[&face];
                let sign = if j % 2 == 0 { 1 } else { -1 };
                faces[i].push((fi, sign));
                cofaces[fi].push((i, sign));
            }
        }
        for c in &mut cofaces {
            c.sort_unstable();
        }
        for c in &mut faces {
            c.sort_unstable();
        }
        FilteredComplex {
            field,
            steps,
            simplices,
            by_vertices,
            by_id,
            by_dim,
            faces,
            cofaces,
        }
    }

    pub fn empty(field: Field, steps: usize) -> Self {
        Self::build(field, steps, Vec::new())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Same complex over another field.
    pub fn with_field(&self, field: Field) -> Self {
        let mut c = self.clone();
        c.field = field;
        c
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Indices of the k-simplices, in canonical order.
    pub fn of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn index_of_id(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn require_id(&self, id: &str) -> Result<usize> {
        self.index_of_id(id)
            .ok_or_else(|| Error::UnknownSimplex(id.to_string()))
    }

    pub fn index_of_vertices(&self, vertices: &[u32]) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    /// Codimension-1 faces `(index, [face : self])`.
    pub fn faces(&self, i: usize) -> &[(usize, i8)] {
        &self.faces[i]
    }

    /// Codimension-1 cofaces `(index, [self : coface])`.
    pub fn cofaces(&self, i: usize) -> &[(usize, i8)] {
        &self.cofaces[i]
    }

    pub fn vertex_labels(&self) -> Vec<u32> {
        self.of_dim(0)
            .iter()
            .map(|&i| self.simplices[i].vertices[0])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn is_face(&self, sigma: usize, tau: usize) -> bool {
        let (s, t) = (&self.simplices[sigma].vertices, &self.simplices[tau].vertices);
        s.iter().all(|v| t.binary_search(v).is_ok())
    }

    /// Basic Alexandrov open set: all cofaces of `sigma`, itself included.
    pub fn open_star(&self, sigma: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([sigma]);
        let mut stack = vec![sigma];
        while let Some(s) = stack.pop() {
            for &(c, _) in &self.cofaces[s] {
                if out.insert(c) {
                    stack.push(c);
                }
            }
        }
        out
    }

    pub fn open_star_by_id(&self, id: &str) -> Result<BTreeSet<usize>> {
        Ok(self.open_star(self.require_id(id)?))
    }

    /// Subcomplex on the simplices satisfying `keep`, which must be closed
    /// under faces. Ids, entries and `steps` are preserved.
    pub fn subcomplex(&self, keep: impl Fn(&Simplex) -> bool) -> Result<Self> {
        let simplices: Vec<Simplex> = self.simplices.iter().filter(|s| keep(s)).cloned().collect();
        Self::new(self.field, self.steps, simplices)
    }

    /// The step-`i` subcomplex `X_i`, with `steps = i + 1`.
    pub fn subcomplex_at(&self, i: usize) -> Self {
        let simplices = self
            .simplices
            .iter()
            .filter(|s| s.entry <= i)
            .cloned()
            .collect();
        Self::build(self.field, i + 1, simplices)
    }

    /// Constant filtration: same simplices, all entries 0, one step.
    pub fn flattened(&self) -> Self {
        let simplices = self
            .simplices
            .iter()
            .map(|s| Simplex { entry: 0, ..s.clone() })
            .collect();
        Self::build(self.field, 1, simplices)
    }
}

/// Collects every structural problem of a simplex list.
pub fn validate(steps: usize, simplices: &[Simplex]) -> Vec<ComplexViolation> {
    let mut out = Vec::new();
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut verts: HashMap<&[u32], usize> = HashMap::new();
    for (i, s) in simplices.iter().enumerate() {
        if s.vertices.is_empty() {
            out.push(ComplexViolation::EmptySimplex { id: s.id.clone() });
            continue;
        }
        if s.vertices.windows(2).any(|w| w[0] >= w[1]) {
            out.push(ComplexViolation::UnsortedVertices { id: s.id.clone() });
            continue;
        }
        if ids.insert(&s.id, i).is_some() {
            out.push(ComplexViolation::DuplicateId { id: s.id.clone() });
        }
        if let Some(j) = verts.insert(&s.vertices, i) {
            out.push(ComplexViolation::DuplicateSimplex {
                id: s.id.clone(),
                other: simplices[j].id.clone(),
            });
        }
        if s.entry >= steps {
            out.push(ComplexViolation::EntryOutOfRange {
                id: s.id.clone(),
                entry: s.entry,
                steps,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for s in simplices {
        if s.vertices.len() < 2 {
            continue;
        }
        for j in 0..s.vertices.len() {
            let mut face = s.vertices.clone();
            face.remove(j);
            match verts.get(face.as_slice()) {
                None => out.push(ComplexViolation::MissingFace {
                    id: s.id.clone(),
                    face,
                }),
                Some(&fi) if simplices[fi].entry > s.entry => {
                    out.push(ComplexViolation::EntryNotMonotone {
                        id: s.id.clone(),
                        face: simplices[fi].id.clone(),
                    })
                }
                _ => {}
            }
        }
    }
    out
}

/// Simplicial map given by a vertex map.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    vertex_map: BTreeMap<u32, u32>,
    // image simplex index for every source simplex
    image: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: Arc<FilteredComplex>,
        target: Arc<FilteredComplex>,
        vertex_map: BTreeMap<u32, u32>,
    ) -> Result<Self> {
        let mut image = Vec::with_capacity(source.len());
        for s in source.simplices() {
            let mut img = Vec::with_capacity(s.vertices.len());
            for v in &s.vertices {
                img.push(*vertex_map.get(v).ok_or_else(|| {
                    Error::NotSimplicial(format!("{} (vertex {v} unmapped)", s.id))
                })?);
            }
            img.sort_unstable();
            img.dedup();
            let t = target
                .index_of_vertices(&img)
                .ok_or_else(|| Error::NotSimplicial(s.id.clone()))?;
            image.push(t);
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
            image,
        })
    }

    pub fn identity(c: Arc<FilteredComplex>) -> Self {
        let vm = c.vertex_labels().into_iter().map(|v| (v, v)).collect();
        Self::new(c.clone(), c, vm).expect("identity is simplicial")
    }

    /// Inclusion of `sub` into `sup` by vertex labels.
    pub fn inclusion(sub: Arc<FilteredComplex>, sup: Arc<FilteredComplex>) -> Result<Self> {
        let vm = sub.vertex_labels().into_iter().map(|v| (v, v)).collect();
        Self::new(sub, sup, vm)
    }

    pub fn source(&self) -> &Arc<FilteredComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FilteredComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<u32, u32> {
        &self.vertex_map
    }

    pub fn map_vertex(&self, v: u32) -> u32 {
        self.vertex_map[&v]
    }

    /// Index in the target of `f(sigma)`.
    pub fn image(&self, sigma: usize) -> usize {
        self.image[sigma]
    }

    /// Injective on vertices and never collapses a simplex.
    pub fn is_inclusion(&self) -> bool {
        let vals: BTreeSet<u32> = self.vertex_map.values().copied().collect();
        vals.len() == self.vertex_map.len()
    }

    /// Sign of the vertex permutation of `sigma` under `f`, or 0 when `f`
    /// collapses `sigma`.
    pub fn orientation(&self, sigma: usize) -> i8 {
        let img: Vec<u32> = self.source.simplex(sigma).vertices.iter().map(|v| self.vertex_map[v]).collect();
        let mut inversions = 0usize;
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] == img[b] {
                    return 0;
                }
                if img[a] > img[b] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *g.source {
            return Err(Error::Shape("composing maps with mismatched complexes".into()));
        }
        let vm = self
            .vertex_map
            .iter()
            .map(|(&v, &w)| (v, g.map_vertex(w)))
            .collect();
        Self::new(self.source.clone(), g.target.clone(), vm)
    }

    /// `tau_f = { sigma : f(sigma) <= tau }`, a full subcomplex of the source.
    pub fn preimage_subcomplex(&self, tau: usize) -> FilteredComplex {
        let t = &self.target.simplex(tau).vertices;
        let simplices = self
            .source
            .simplices()
            .iter()
            .filter(|s| {
                s.vertices
                    .iter()
                    .all(|v| t.binary_search(&self.vertex_map[v]).is_ok())
            })
            .cloned()
            .collect();
        FilteredComplex::build(self.source.field, self.source.steps, simplices)
    }

    pub fn preimage_subcomplex_by_id(&self, id: &str) -> Result<FilteredComplex> {
        Ok(self.preimage_subcomplex(self.target.require_id(id)?))
    }
}

/// Vietoris-Rips filtration of a point cloud.
///
/// A simplex enters at the least index `i` with `diam <= thresholds[i]`;
/// simplices above the last threshold or of dimension above `max_dim` are
/// left out.
pub fn vietoris_rips(
    field: Field,
    points: &[Vec<f64>],
    thresholds: &[f64],
    max_dim: usize,
) -> Result<FilteredComplex> {
    if thresholds.is_empty() {
        return Err(Error::InvalidInput("no thresholds given".into()));
    }
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("thresholds must be strictly increasing".into()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != points[0].len()) {
        return Err(Error::InvalidInput(format!(
            "points of different dimension ({} vs {})",
            p.len(),
            points[0].len()
        )));
    }
    let n = points.len();
    let dist = |a: usize, b: usize| -> f64 {
        points[a]
            .iter()
            .zip(&points[b])
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let last = *thresholds.last().unwrap();
    let level = |d: f64| thresholds.iter().position(|&t| d <= t);
    let mut simplices = Vec::new();
    // depth-first clique enumeration, carrying the diameter so far
    fn grow(
        clique: &mut Vec<u32>,
        diam: f64,
        n: usize,
        max_dim: usize,
        last: f64,
        dist: &dyn Fn(usize, usize) -> f64,
        level: &dyn Fn(f64) -> Option<usize>,
        out: &mut Vec<Simplex>,
    ) {
        out.push(Simplex::new(clique.clone(), level(diam).unwrap_or(0)));
        if clique.len() > max_dim {
            return;
        }
        let start = *clique.last().unwrap() as usize + 1;
        for v in start..n {
            let d = clique
                .iter()
                .map(|&u| dist(u as usize, v))
                .fold(diam, f64::max);
            if d <= last {
                clique.push(v as u32);
                grow(clique, d, n, max_dim, last, dist, level, out);
                clique.pop();
            }
        }
    }
    for v in 0..n {
        grow(&mut vec![v as u32], 0.0, n, max_dim, last, &dist, &level, &mut simplices);
    }
    FilteredComplex::new(field, thresholds.len(), simplices)
}
