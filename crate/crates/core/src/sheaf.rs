//! Cellular sheaves and cosheaves of F_p-vector spaces, their morphisms,
//! pullback, extension by zero and dualization.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::{FilteredComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafViolation {
    UnknownSimplex(String),
    NotIncidence { face: String, coface: String },
    MissingMap { face: String, coface: String },
    Shape { face: String, coface: String, expected: (usize, usize), found: (usize, usize) },
    Diamond { sigma: String, rho: String, rho2: String, tau: String },
    ComponentShape { simplex: String, expected: (usize, usize), found: (usize, usize) },
    Naturality { face: String, coface: String },
    ComplexMismatch,
}

impl fmt::Display for SheafViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SheafViolation::*;
        match self {
            UnknownSimplex(id) => write!(f, "unknown simplex {id}"),
            NotIncidence { face, coface } => {
                write!(f, "{face} -> {coface} is not a codimension-1 incidence")
            }
            MissingMap { face, coface } => write!(f, "missing map for {face} -> {coface}"),
            Shape { face, coface, expected, found } => write!(
                f,
                "map {face} -> {coface} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Diamond { sigma, rho, rho2, tau } => write!(
                f,
                "diamond {sigma} < {rho}, {rho2} < {tau} does not commute"
            ),
            ComponentShape { simplex, expected, found } => write!(
                f,
                "component at {simplex} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Naturality { face, coface } => {
                write!(f, "naturality square {face} -> {coface} does not commute")
            }
            ComplexMismatch => write!(f, "sheaves live on different complexes"),
        }
    }
}

fn id(c: &FilteredComplex, i: usize) -> String {
    c.simplex(i).id.clone()
}

/// Matrix given as integer rows, checked against an expected shape.
fn checked_matrix(
    field: Field,
    rows: &[Vec<i64>],
    expected: (usize, usize),
    face: &str,
    coface: &str,
) -> std::result::Result<Matrix, SheafViolation> {
    let cols = rows.first().map_or(expected.1, |r| r.len());
    let bad = || SheafViolation::Shape {
        face: face.to_string(),
        coface: coface.to_string(),
        expected,
        found: (rows.len(), cols),
    };
    let m = Matrix::from_rows(field, cols, rows).map_err(|_| bad())?;
    if m.shape() != expected {
        return Err(bad());
    }
    Ok(m)
}

/// Cellular sheaf: stalk dimensions plus codimension-1 restriction maps.
///
/// Stalks and maps are indexed by the canonical simplex order of the
/// complex; `restriction(s, t)` has shape `stalk(t) x stalk(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularSheaf {
    complex: Arc<FilteredComplex>,
    stalks: Vec<usize>,
    maps: BTreeMap<(usize, usize), Matrix>,
}

impl CellularSheaf {
    /// Builds and validates. Incidences without an entry in `maps` default
    /// to the zero map, which is only allowed when one of the stalks is 0.
    pub fn new(
        complex: Arc<FilteredComplex>,
        stalks: Vec<usize>,
        maps: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let (sheaf, mut violations) = Self::assemble(complex, stalks, maps);
        violations.extend(sheaf.validate());
        if violations.is_empty() {
            Ok(sheaf)
        } else {
            Err(Error::InvalidSheaf(violations))
        }
    }

    fn assemble(
        complex: Arc<FilteredComplex>,
        stalks: Vec<usize>,
        mut maps: BTreeMap<(usize, usize), Matrix>,
    ) -> (Self, Vec<SheafViolation>) {
        assert_eq!(stalks.len(), complex.len(), "one stalk per simplex");
        let f = complex.field();
        let mut violations = Vec::new();
        for &(s, t) in maps.keys() {
            if !complex.faces(t).iter().any(|&(x, _)| x == s) {
                violations.push(SheafViolation::NotIncidence {
                    face: id(&complex, s),
                    coface: id(&complex, t),
                });
            }
        }
        for t in 0..complex.len() {
            for &(s, _) in complex.faces(t) {
                maps.entry((s, t)).or_insert_with(|| {
                    if stalks[s] != 0 && stalks[t] != 0 {
                        violations.push(SheafViolation::MissingMap {
                            face: id(&complex, s),
                            coface: id(&complex, t),
                        });
                    }
                    Matrix::zeros(f, stalks[t], stalks[s])
                });
            }
        }
        (
            CellularSheaf {
                complex,
                stalks,
                maps,
            },
            violations,
        )
    }

    /// Builds from simplex ids; stalks not listed are 0.
    pub fn from_ids<S: AsRef<str>>(
        complex: Arc<FilteredComplex>,
        stalks: impl IntoIterator<Item = (S, usize)>,
        restrictions: impl IntoIterator<Item = (S, S, Vec<Vec<i64>>)>,
    ) -> Result<Self> {
        let field = complex.field();
        let mut dims = vec![0; complex.len()];
        let mut violations = Vec::new();
        for (s, d) in stalks {
            match complex.index_of_id(s.as_ref()) {
                Some(i) => dims[i] = d,
                None => violations.push(SheafViolation::UnknownSimplex(s.as_ref().to_string())),
            }
        }
        let mut maps = BTreeMap::new();
        for (face, coface, rows) in restrictions {
            let (face, coface) = (face.as_ref(), coface.as_ref());
            let (Some(s), Some(t)) = (complex.index_of_id(face), complex.index_of_id(coface)) else {
                for x in [face, coface] {
                    if complex.index_of_id(x).is_none() {
                        violations.push(SheafViolation::UnknownSimplex(x.to_string()));
                    }
                }
                continue;
            };
            match checked_matrix(field, &rows, (dims[t], dims[s]), face, coface) {
                Ok(m) => {
                    maps.insert((s, t), m);
                }
                Err(v) => violations.push(v),
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidSheaf(violations));
        }
        Self::new(complex, dims, maps)
    }

    /// Constant sheaf with stalks `F^d` and identity restrictions.
    pub fn constant(complex: Arc<FilteredComplex>, d: usize) -> Self {
        let f = complex.field();
        let stalks = vec![d; complex.len()];
        let maps = (0..complex.len())
            .flat_map(|t| complex.faces(t).iter().map(move |&(s, _)| (s, t)))
            .map(|k| (k, Matrix::identity(f, d)))
            .collect();
        CellularSheaf {
            complex,
            stalks,
            maps,
        }
    }

    pub fn zero(complex: Arc<FilteredComplex>) -> Self {
        Self::constant(complex, 0)
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn stalk(&self, sigma: usize) -> usize {
        self.stalks[sigma]
    }

    pub fn stalks(&self) -> &[usize] {
        &self.stalks
    }

    /// Codimension-1 restriction map.
    pub fn restriction(&self, sigma: usize, tau: usize) -> &Matrix {
        self.maps
            .get(&(sigma, tau))
            .unwrap_or_else(|| panic!("no incidence {sigma} -> {tau}"))
    }

    /// All codimension-1 restriction maps keyed by (face, coface).
    pub fn restrictions(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.maps
    }

    /// Composite restriction along a saturated chain `sigma <= ... <= tau`.
    pub fn restriction_between(&self, sigma: usize, tau: usize) -> Matrix {
        let c = &self.complex;
        assert!(c.is_face(sigma, tau), "not a face relation");
        let mut cur = sigma;
        let mut acc = Matrix::identity(self.field(), self.stalks[sigma]);
        let target = &c.simplex(tau).vertices;
        while cur != tau {
            let verts = &c.simplex(cur).vertices;
            let extra = *target
                .iter()
                .find(|v| verts.binary_search(v).is_err())
                .unwrap();
            let mut next = verts.clone();
            next.insert(next.binary_search(&extra).unwrap_err(), extra);
            let n = c.index_of_vertices(&next).unwrap();
            acc = self.restriction(cur, n).mul(&acc);
            cur = n;
        }
        acc
    }

    /// Shape and diamond violations.
    pub fn validate(&self) -> Vec<SheafViolation> {
        let c = &self.complex;
        let mut out = Vec::new();
        for (&(s, t), m) in &self.maps {
            let expected = (self.stalks[t], self.stalks[s]);
            if m.shape() != expected {
                out.push(SheafViolation::Shape {
                    face: id(c, s),
                    coface: id(c, t),
                    expected,
                    found: m.shape(),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for t in 0..c.len() {
            // codim-2 face -> the intermediate faces through which it passes
            let mut through: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(r, _) in c.faces(t) {
                for &(s, _) in c.faces(r) {
                    through.entry(s).or_default().push(r);
                }
            }
            for (s, rs) in through {
                let first = self.restriction(rs[0], t).mul(self.restriction(s, rs[0]));
                for &r in &rs[1..] {
                    if self.restriction(r, t).mul(self.restriction(s, r)) != first {
                        out.push(SheafViolation::Diamond {
                            sigma: id(c, s),
                            rho: id(c, rs[0]),
                            rho2: id(c, r),
                            tau: id(c, t),
                        });
                    }
                }
            }
        }
        out
    }

    /// Pullback `f^* G` along a simplicial map into this sheaf's complex.
    ///
    /// Incidences collapsed by `f` get the identity.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<CellularSheaf> {
        if **f.target() != *self.complex {
            return Err(Error::Shape("pullback along a map into another complex".into()));
        }
        let src = f.source().clone();
        let fld = self.field();
        let stalks: Vec<usize> = (0..src.len()).map(|s| self.stalks[f.image(s)]).collect();
        let mut maps = BTreeMap::new();
        for t in 0..src.len() {
            for &(s, _) in src.faces(t) {
                let (fs, ft) = (f.image(s), f.image(t));
                let m = if fs == ft {
                    Matrix::identity(fld, self.stalks[fs])
                } else {
                    self.restriction_between(fs, ft)
                };
                maps.insert((s, t), m);
            }
        }
        Ok(CellularSheaf {
            complex: src,
            stalks,
            maps,
        })
    }

    /// Restriction to a subcomplex (pullback along its inclusion).
    pub fn restrict_to(&self, sub: Arc<FilteredComplex>) -> Result<CellularSheaf> {
        let i = SimplicialMap::inclusion(sub, self.complex.clone())?;
        self.pullback(&i)
    }

    /// Extension by zero `iota_* F` along an inclusion of this sheaf's
    /// complex.
    pub fn extend_by_zero(&self, iota: &SimplicialMap) -> Result<CellularSheaf> {
        if **iota.source() != *self.complex {
            return Err(Error::Shape("extension along a map from another complex".into()));
        }
        if !iota.is_inclusion() {
            return Err(Error::NotInclusion("vertex map is not injective".into()));
        }
        let tgt = iota.target().clone();
        let fld = self.field();
        let mut preimage: Vec<Option<usize>> = vec![None; tgt.len()];
        for s in 0..self.complex.len() {
            preimage[iota.image(s)] = Some(s);
        }
        let stalks: Vec<usize> = preimage.iter().map(|p| p.map_or(0, |s| self.stalks[s])).collect();
        let mut maps = BTreeMap::new();
        for t in 0..tgt.len() {
            for &(s, _) in tgt.faces(t) {
                let m = match (preimage[s], preimage[t]) {
                    (Some(a), Some(b)) => self.restriction(a, b).clone(),
                    _ => Matrix::zeros(fld, stalks[t], stalks[s]),
                };
                maps.insert((s, t), m);
            }
        }
        Ok(CellularSheaf {
            complex: tgt,
            stalks,
            maps,
        })
    }

    /// Dual cosheaf: same stalks, transposed maps.
    pub fn dualize(&self) -> CellularCosheaf {
        CellularCosheaf {
            complex: self.complex.clone(),
            stalks: self.stalks.clone(),
            maps: self
                .maps
                .iter()
                .map(|(&(s, t), m)| ((t, s), m.transpose()))
                .collect(),
        }
    }

    /// Same sheaf over a reinterpreted complex (same simplices, e.g.
    /// different entries). Panics if the simplex lists differ.
    pub fn rebase(&self, complex: Arc<FilteredComplex>) -> CellularSheaf {
        assert_eq!(complex.len(), self.complex.len());
        let perm: Vec<usize> = (0..self.complex.len())
            .map(|i| complex.index_of_vertices(&self.complex.simplex(i).vertices).unwrap())
            .collect();
        let mut stalks = vec![0; complex.len()];
        for (i, &p) in perm.iter().enumerate() {
            stalks[p] = self.stalks[i];
        }
        let maps = self
            .maps
            .iter()
            .map(|(&(s, t), m)| ((perm[s], perm[t]), m.clone()))
            .collect();
        CellularSheaf {
            complex,
            stalks,
            maps,
        }
    }
}

/// Cellular cosheaf: extension maps `extension(t, s): stalk(t) -> stalk(s)`
/// for codimension-1 faces `s < t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularCosheaf {
    complex: Arc<FilteredComplex>,
    stalks: Vec<usize>,
    maps: BTreeMap<(usize, usize), Matrix>,
}

impl CellularCosheaf {
    pub fn new(
        complex: Arc<FilteredComplex>,
        stalks: Vec<usize>,
        maps: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let flipped = maps.into_iter().map(|((t, s), m)| ((s, t), m.transpose())).collect();
        let dual = CellularSheaf::new(complex, stalks, flipped)?;
        Ok(dual.dualize())
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        &self.complex
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn stalk(&self, sigma: usize) -> usize {
        self.stalks[sigma]
    }

    pub fn stalks(&self) -> &[usize] {
        &self.stalks
    }

    pub fn extension(&self, tau: usize, sigma: usize) -> &Matrix {
        self.maps
            .get(&(tau, sigma))
            .unwrap_or_else(|| panic!("no incidence {tau} -> {sigma}"))
    }

    /// Extension maps keyed by (coface, face).
    pub fn extensions(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.maps
    }

    pub fn dualize(&self) -> CellularSheaf {
        CellularSheaf {
            complex: self.complex.clone(),
            stalks: self.stalks.clone(),
            maps: self
                .maps
                .iter()
                .map(|(&(t, s), m)| ((s, t), m.transpose()))
                .collect(),
        }
    }

    /// Shape and dual-diamond violations.
    pub fn validate(&self) -> Vec<SheafViolation> {
        self.dualize().validate()
    }
}

/// Natural transformation between two sheaves on the same complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafMorphism {
    source: Arc<CellularSheaf>,
    target: Arc<CellularSheaf>,
    components: Vec<Matrix>,
}

impl SheafMorphism {
    pub fn new(
        source: Arc<CellularSheaf>,
        target: Arc<CellularSheaf>,
        components: Vec<Matrix>,
    ) -> Result<Self> {
        let m = SheafMorphism {
            source,
            target,
            components,
        };
        let v = m.validate();
        if v.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidMorphism(v))
        }
    }

    /// Builds from per-simplex integer matrices keyed by id; simplices not
    /// listed get the zero map.
    pub fn from_ids<S: AsRef<str>>(
        source: Arc<CellularSheaf>,
        target: Arc<CellularSheaf>,
        components: impl IntoIterator<Item = (S, Vec<Vec<i64>>)>,
    ) -> Result<Self> {
        let c = source.complex().clone();
        let f = c.field();
        let mut comps: Vec<Matrix> = (0..c.len())
            .map(|i| Matrix::zeros(f, target.stalk(i), source.stalk(i)))
            .collect();
        let mut violations = Vec::new();
        for (sid, rows) in components {
            let sid = sid.as_ref();
            let Some(i) = c.index_of_id(sid) else {
                violations.push(SheafViolation::UnknownSimplex(sid.to_string()));
                continue;
            };
            let expected = (target.stalk(i), source.stalk(i));
            match checked_matrix(f, &rows, expected, sid, sid) {
                Ok(m) => comps[i] = m,
                Err(_) => violations.push(SheafViolation::ComponentShape {
                    simplex: sid.to_string(),
                    expected,
                    found: (rows.len(), rows.first().map_or(0, |r| r.len())),
                }),
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidMorphism(violations));
        }
        Self::new(source, target, comps)
    }

    pub fn identity(f: Arc<CellularSheaf>) -> Self {
        let fld = f.field();
        let components = f.stalks().iter().map(|&d| Matrix::identity(fld, d)).collect();
        SheafMorphism {
            source: f.clone(),
            target: f,
            components,
        }
    }

    pub fn zero(source: Arc<CellularSheaf>, target: Arc<CellularSheaf>) -> Self {
        let fld = source.field();
        let components = (0..source.stalks().len())
            .map(|i| Matrix::zeros(fld, target.stalk(i), source.stalk(i)))
            .collect();
        SheafMorphism {
            source,
            target,
            components,
        }
    }

    pub fn source(&self) -> &Arc<CellularSheaf> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CellularSheaf> {
        &self.target
    }

    pub fn component(&self, sigma: usize) -> &Matrix {
        &self.components[sigma]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn validate(&self) -> Vec<SheafViolation> {
        let c = self.source.complex();
        if **c != **self.target.complex() {
            return vec![SheafViolation::ComplexMismatch];
        }
        let mut out = Vec::new();
        for (i, m) in self.components.iter().enumerate() {
            let expected = (self.target.stalk(i), self.source.stalk(i));
            if m.shape() != expected {
                out.push(SheafViolation::ComponentShape {
                    simplex: id(c, i),
                    expected,
                    found: m.shape(),
                });
            }
        }
        if self.components.len() != c.len() || !out.is_empty() {
            return out;
        }
        for t in 0..c.len() {
            for &(s, _) in c.faces(t) {
                let lhs = self.components[t].mul(self.source.restriction(s, t));
                let rhs = self.target.restriction(s, t).mul(&self.components[s]);
                if lhs != rhs {
                    out.push(SheafViolation::Naturality {
                        face: id(c, s),
                        coface: id(c, t),
                    });
                }
            }
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SheafMorphism) -> Result<SheafMorphism> {
        if *self.target != *other.source {
            return Err(Error::Shape("composing morphisms with mismatched sheaves".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| b.mul(a))
            .collect();
        Ok(SheafMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        })
    }

    /// `f^* phi`, with component at `sigma` equal to `phi` at `f(sigma)`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<SheafMorphism> {
        let source = Arc::new(self.source.pullback(f)?);
        let target = Arc::new(self.target.pullback(f)?);
        let components = (0..f.source().len())
            .map(|s| self.components[f.image(s)].clone())
            .collect();
        Ok(SheafMorphism {
            source,
            target,
            components,
        })
    }
}

/// Unit morphism `F -> iota_* iota^* F` for an inclusion `iota: X_i -> X_j`,
/// identity on simplices of `X_i` and zero elsewhere.
pub fn unit_map(iota: &SimplicialMap, f: &Arc<CellularSheaf>) -> Result<SheafMorphism> {
    if !iota.is_inclusion() {
        return Err(Error::NotInclusion("unit map needs an inclusion".into()));
    }
    let target = Arc::new(f.pullback(iota)?.extend_by_zero(iota)?);
    let fld = f.field();
    let components = (0..f.complex().len())
        .map(|s| {
            if target.stalk(s) == f.stalk(s) && in_image(iota, s) {
                Matrix::identity(fld, f.stalk(s))
            } else {
                Matrix::zeros(fld, target.stalk(s), f.stalk(s))
            }
        })
        .collect();
    SheafMorphism::new(f.clone(), target, components)
}

fn in_image(iota: &SimplicialMap, t: usize) -> bool {
    (0..iota.source().len()).any(|s| iota.image(s) == t)
}

/// Linear diagram `F_0 -> F_1 -> ... -> F_{m-1}` of sheaves on one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafDiagram {
    sheaves: Vec<Arc<CellularSheaf>>,
    morphisms: Vec<SheafMorphism>,
}

impl SheafDiagram {
    pub fn new(sheaves: Vec<Arc<CellularSheaf>>, morphisms: Vec<SheafMorphism>) -> Result<Self> {
        if sheaves.is_empty() {
            return Err(Error::InvalidInput("a diagram needs at least one sheaf".into()));
        }
        if morphisms.len() + 1 != sheaves.len() {
            return Err(Error::InvalidInput(format!(
                "{} sheaves need {} morphisms, got {}",
                sheaves.len(),
                sheaves.len() - 1,
                morphisms.len()
            )));
        }
        let c = sheaves[0].complex();
        if sheaves.iter().any(|s| **s.complex() != **c) {
            return Err(Error::InvalidMorphism(vec![SheafViolation::ComplexMismatch]));
        }
        for (i, m) in morphisms.iter().enumerate() {
            if *m.source() != sheaves[i] || *m.target() != sheaves[i + 1] {
                return Err(Error::Shape(format!(
                    "morphism {i} does not connect sheaves {i} and {}",
                    i + 1
                )));
            }
        }
        Ok(SheafDiagram { sheaves, morphisms })
    }

    /// Builds from sheaves and per-step component matrices keyed by simplex id.
    pub fn from_ids<S: AsRef<str>>(
        sheaves: Vec<CellularSheaf>,
        steps: Vec<Vec<(S, Vec<Vec<i64>>)>>,
    ) -> Result<Self> {
        let sheaves: Vec<Arc<CellularSheaf>> = sheaves.into_iter().map(Arc::new).collect();
        let mut morphisms = Vec::new();
        for (i, comps) in steps.into_iter().enumerate() {
            if i + 1 >= sheaves.len() {
                return Err(Error::InvalidInput("more steps than sheaf pairs".into()));
            }
            morphisms.push(SheafMorphism::from_ids(
                sheaves[i].clone(),
                sheaves[i + 1].clone(),
                comps,
            )?);
        }
        Self::new(sheaves, morphisms)
    }

    /// Constant diagram of length `m` with identity morphisms.
    pub fn constant(f: Arc<CellularSheaf>, m: usize) -> Self {
        SheafDiagram {
            sheaves: vec![f.clone(); m],
            morphisms: vec![SheafMorphism::identity(f); m.saturating_sub(1)],
        }
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        self.sheaves[0].complex()
    }

    pub fn len(&self) -> usize {
        self.sheaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sheaves.is_empty()
    }

    pub fn sheaves(&self) -> &[Arc<CellularSheaf>] {
        &self.sheaves
    }

    pub fn sheaf(&self, i: usize) -> &Arc<CellularSheaf> {
        &self.sheaves[i]
    }

    pub fn morphisms(&self) -> &[SheafMorphism] {
        &self.morphisms
    }

    /// Pulls every sheaf and morphism back along `f`.
    pub fn pullback(&self, f: &SimplicialMap) -> Result<SheafDiagram> {
        let sheaves: Vec<Arc<CellularSheaf>> = self
            .sheaves
            .iter()
            .map(|s| s.pullback(f).map(Arc::new))
            .collect::<Result<_>>()?;
        let mut morphisms = Vec::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            let comps = (0..f.source().len())
                .map(|s| m.component(f.image(s)).clone())
                .collect();
            morphisms.push(SheafMorphism {
                source: sheaves[i].clone(),
                target: sheaves[i + 1].clone(),
                components: comps,
            });
        }
        Ok(SheafDiagram { sheaves, morphisms })
    }

    /// True when every stalk map of every morphism is injective.
    pub fn is_monomorphic(&self) -> bool {
        self.morphisms
            .iter()
            .all(|m| m.components().iter().all(Matrix::is_injective))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Arc<FilteredComplex> {
        Arc::new(FilteredComplex::from_closure(Field::f2(), &[(vec![0, 1], 0)]).unwrap())
    }

    fn triangle(p: u32) -> Arc<FilteredComplex> {
        Arc::new(FilteredComplex::from_closure(Field::new(p).unwrap(), &[(vec![0, 1, 2], 0)]).unwrap())
    }

    // Two-simplex sheaf: stalks F^2 except the triangle (F).
    fn two_simplex(p: u32) -> CellularSheaf {
        let c = triangle(p);
        let i2 = || vec![vec![1, 0], vec![0, 1]];
        let sw = || vec![vec![0, 1], vec![1, 0]];
        CellularSheaf::from_ids(
            c,
            [("0", 2), ("1", 2), ("2", 2), ("0_1", 2), ("0_2", 2), ("1_2", 2), ("0_1_2", 1)],
            [
                ("0", "0_1", i2()),
                ("0", "0_2", i2()),
                ("1", "0_1", sw()),
                ("1", "1_2", i2()),
                ("2", "0_2", sw()),
                ("2", "1_2", i2()),
                ("0_1", "0_1_2", vec![vec![1, 0]]),
                ("0_2", "0_1_2", vec![vec![1, 0]]),
                ("1_2", "0_1_2", vec![vec![0, 1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_simplex_sheaf_validates() {
        for p in [2, 3, 5] {
            assert!(two_simplex(p).validate().is_empty());
        }
    }

    #[test]
    fn perturbed_diamond_is_named() {
        let f = two_simplex(3);
        let c = f.complex().clone();
        let mut maps = f.restrictions().clone();
        let (e, t) = (c.index_of_id("1_2").unwrap(), c.index_of_id("0_1_2").unwrap());
        maps.insert((e, t), Matrix::from_rows(c.field(), 2, &[vec![1, 1]]).unwrap());
        let err = CellularSheaf::new(c, f.stalks().to_vec(), maps).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("diamond"), "{msg}");
        assert!(msg.contains("1_2"), "{msg}");
    }

    #[test]
    fn one_dimensional_sheaves_have_no_diamonds() {
        let c = edge();
        let f = CellularSheaf::from_ids(
            c,
            [("0", 1), ("1", 2), ("0_1", 1)],
            [("0", "0_1", vec![vec![1]]), ("1", "0_1", vec![vec![0, 1]])],
        )
        .unwrap();
        assert!(f.validate().is_empty());
    }

    #[test]
    fn shape_errors_are_reported() {
        let err = CellularSheaf::from_ids(
            edge(),
            [("0", 1), ("1", 1), ("0_1", 2)],
            [("0", "0_1", vec![vec![1]]), ("1", "0_1", vec![vec![1], vec![0]])],
        )
        .unwrap_err();
        assert!(err.to_string().contains("shape 1x1, expected 2x1"));
    }

    #[test]
    fn constant_sheaves() {
        let f = CellularSheaf::constant(edge(), 3);
        assert_eq!(f.stalks(), &[3, 3, 3]);
        assert!(f.restrictions().values().all(Matrix::is_identity));
        assert!(CellularSheaf::zero(edge()).stalks().iter().all(|&d| d == 0));
    }

    // Sheaf on an edge with F on the vertices and F^2 on the edge, extended
    // by zero into the triangle and pulled back again.
    #[test]
    fn extend_and_pull_back_along_edge_inclusion() {
        let tri = triangle(2);
        let e = Arc::new(
            FilteredComplex::from_closure(Field::f2(), &[(vec![0, 1], 0)]).unwrap(),
        );
        let f = CellularSheaf::from_ids(
            e.clone(),
            [("0", 1), ("1", 1), ("0_1", 2)],
            [("0", "0_1", vec![vec![1], vec![0]]), ("1", "0_1", vec![vec![0], vec![1]])],
        )
        .unwrap();
        let iota = SimplicialMap::inclusion(e, tri.clone()).unwrap();
        let g = f.extend_by_zero(&iota).unwrap();
        assert!(g.validate().is_empty());
        let dims: Vec<(String, usize)> = tri
            .simplices()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.clone(), g.stalk(i)))
            .collect();
        assert_eq!(
            dims,
            vec![
                ("0".into(), 1),
                ("1".into(), 1),
                ("2".into(), 0),
                ("0_1".into(), 2),
                ("0_2".into(), 0),
                ("1_2".into(), 0),
                ("0_1_2".into(), 0)
            ]
        );
        assert_eq!(g.pullback(&iota).unwrap(), f);
    }

    #[test]
    fn pullback_along_identity_and_of_constant() {
        let f = two_simplex(2);
        let id = SimplicialMap::identity(f.complex().clone());
        assert_eq!(f.pullback(&id).unwrap(), f);

        let tri = triangle(2);
        let collapse = SimplicialMap::new(edge(), tri.clone(), [(0, 2), (1, 2)].into()).unwrap();
        let g = CellularSheaf::constant(tri, 2).pullback(&collapse).unwrap();
        assert_eq!(g, CellularSheaf::constant(edge(), 2));
    }

    #[test]
    fn dualize_is_an_involution() {
        let f = two_simplex(5);
        let d = f.dualize();
        assert!(d.validate().is_empty());
        assert_eq!(d.dualize(), f);
    }

    #[test]
    fn unit_map_on_identity_inclusion() {
        let f = Arc::new(two_simplex(2));
        let id = SimplicialMap::identity(f.complex().clone());
        let u = unit_map(&id, &f).unwrap();
        assert!(u.components().iter().all(Matrix::is_identity));
    }

    #[test]
    fn unit_map_zero_outside_subcomplex() {
        let f = Arc::new(two_simplex(2));
        let sub = Arc::new(f.complex().subcomplex(|s| s.vertices != vec![0, 1, 2]).unwrap());
        let iota = SimplicialMap::inclusion(sub, f.complex().clone()).unwrap();
        let u = unit_map(&iota, &f).unwrap();
        let top = f.complex().index_of_id("0_1_2").unwrap();
        assert_eq!(u.component(top).shape(), (0, 1));
        assert!(u.validate().is_empty());
    }

    #[test]
    fn naturality_is_checked() {
        let c = edge();
        let f = Arc::new(CellularSheaf::constant(c.clone(), 1));
        let bad = SheafMorphism::from_ids(f.clone(), f.clone(), [("0", vec![vec![1]])]);
        assert!(matches!(bad, Err(Error::InvalidMorphism(_))));
        let ok = SheafMorphism::from_ids(
            f.clone(),
            f.clone(),
            [("0", vec![vec![1]]), ("1", vec![vec![1]]), ("0_1", vec![vec![1]])],
        )
        .unwrap();
        assert_eq!(ok, SheafMorphism::identity(f));
    }
}
