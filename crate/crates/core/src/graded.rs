//! Free graded F[t]-modules, graded sheaves built from monomorphic sheaf
//! diagrams, graded (co)chain complexes and their barcodes by graded
//! matrix reduction.
//!
//! A free module is stored as its list of generator degrees; a homogeneous
//! map as a scalar matrix whose entry `(i, j)` carries the implied power
//! `t^(deg_src[j] - deg_tgt[i])`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cohomology::CochainComplex;
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{low, ColumnReduction, Echelon, Matrix, Solver};
use crate::persistence::{Bar, Barcode};
use crate::sheaf::{CellularSheaf, SheafDiagram};

/// Degree-0 map between free graded modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousMatrix {
    source: Vec<usize>,
    target: Vec<usize>,
    scalar: Matrix,
}

impl HomogeneousMatrix {
    pub fn new(source: Vec<usize>, target: Vec<usize>, scalar: Matrix) -> Result<Self> {
        if scalar.shape() != (target.len(), source.len()) {
            return Err(Error::Shape(format!(
                "scalar part is {}x{} for {} -> {} generators",
                scalar.rows(),
                scalar.cols(),
                source.len(),
                target.len()
            )));
        }
        for (i, &dt) in target.iter().enumerate() {
            for (j, &ds) in source.iter().enumerate() {
                if scalar.get(i, j) != 0 && ds < dt {
                    return Err(Error::Shape(format!(
                        "entry ({i}, {j}) maps degree {ds} to degree {dt}"
                    )));
                }
            }
        }
        Ok(HomogeneousMatrix {
            source,
            target,
            scalar,
        })
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn scalar(&self) -> &Matrix {
        &self.scalar
    }

    /// Exponent of `t` in entry `(i, j)`, `None` for a zero entry.
    pub fn power(&self, i: usize, j: usize) -> Option<usize> {
        (self.scalar.get(i, j) != 0).then(|| self.source[j] - self.target[i])
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HomogeneousMatrix) -> HomogeneousMatrix {
        assert_eq!(self.target, other.source, "degree lists do not match");
        HomogeneousMatrix {
            source: self.source.clone(),
            target: other.target.clone(),
            scalar: other.scalar.mul(&self.scalar),
        }
    }
}

/// Sheaf of free graded modules on a complex: generator degrees per simplex
/// and homogeneous restriction maps for codimension-1 incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSheaf {
    complex: Arc<FilteredComplex>,
    degrees: Vec<Vec<usize>>,
    maps: BTreeMap<(usize, usize), HomogeneousMatrix>,
}

impl GradedSheaf {
    pub fn new(
        complex: Arc<FilteredComplex>,
        degrees: Vec<Vec<usize>>,
        maps: BTreeMap<(usize, usize), HomogeneousMatrix>,
    ) -> Result<Self> {
        let gs = GradedSheaf {
            complex,
            degrees,
            maps,
        };
        gs.validate()?;
        Ok(gs)
    }

    fn validate(&self) -> Result<()> {
        let c = &self.complex;
        for t in 0..c.len() {
            for &(s, _) in c.faces(t) {
                let m = self
                    .maps
                    .get(&(s, t))
                    .ok_or_else(|| Error::Shape(format!("missing graded map {s} -> {t}")))?;
                if m.source != self.degrees[s] || m.target != self.degrees[t] {
                    return Err(Error::Shape(format!(
                        "graded map {} -> {} has the wrong generators",
                        c.simplex(s).id,
                        c.simplex(t).id
                    )));
                }
            }
            let mut through: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(r, _) in c.faces(t) {
                for &(s, _) in c.faces(r) {
                    through.entry(s).or_default().push(r);
                }
            }
            for (s, rs) in through {
                let first = self.maps[&(s, rs[0])].then(&self.maps[&(rs[0], t)]);
                if rs[1..]
                    .iter()
                    .any(|&r| self.maps[&(s, r)].then(&self.maps[&(r, t)]) != first)
                {
                    return Err(Error::Shape(format!(
                        "graded diamond below {} does not commute",
                        c.simplex(t).id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        &self.complex
    }

    pub fn degrees(&self, sigma: usize) -> &[usize] {
        &self.degrees[sigma]
    }

    pub fn map(&self, sigma: usize, tau: usize) -> &HomogeneousMatrix {
        &self.maps[&(sigma, tau)]
    }

    /// Cochain complex; `delta^k` block `(tau, sigma)` is
    /// `[sigma : tau]` times the graded restriction.
    pub fn cochain_complex(&self) -> GradedComplex {
        let c = &self.complex;
        let fld = c.field();
        let top = c.dim().map_or(0, |d| d + 1);
        let (groups, offsets) = gather(c, &self.degrees, top);
        let mut maps = Vec::new();
        for k in 0..top.saturating_sub(1) {
            let mut d = Matrix::zeros(fld, groups[k + 1].len(), groups[k].len());
            for &t in c.of_dim(k + 1) {
                for &(s, sign) in c.faces(t) {
                    let block = self.maps[&(s, t)].scalar();
                    d.set_block(offsets[t], offsets[s], &signed(block, sign));
                }
            }
            maps.push(d);
        }
        GradedComplex::new(fld, Direction::Cochain, groups, maps).expect("homogeneous by construction")
    }
}

/// Cosheaf of free graded modules with homogeneous extension maps
/// `(coface, face)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCosheaf {
    complex: Arc<FilteredComplex>,
    degrees: Vec<Vec<usize>>,
    maps: BTreeMap<(usize, usize), HomogeneousMatrix>,
}

impl GradedCosheaf {
    pub fn new(
        complex: Arc<FilteredComplex>,
        degrees: Vec<Vec<usize>>,
        maps: BTreeMap<(usize, usize), HomogeneousMatrix>,
    ) -> Result<Self> {
        for t in 0..complex.len() {
            for &(s, _) in complex.faces(t) {
                let m = maps
                    .get(&(t, s))
                    .ok_or_else(|| Error::Shape(format!("missing graded map {t} -> {s}")))?;
                if m.source != degrees[t] || m.target != degrees[s] {
                    return Err(Error::Shape("graded extension with the wrong generators".into()));
                }
            }
        }
        Ok(GradedCosheaf {
            complex,
            degrees,
            maps,
        })
    }

    pub fn complex(&self) -> &Arc<FilteredComplex> {
        &self.complex
    }

    pub fn degrees(&self, sigma: usize) -> &[usize] {
        &self.degrees[sigma]
    }

    pub fn extension(&self, tau: usize, sigma: usize) -> &HomogeneousMatrix {
        &self.maps[&(tau, sigma)]
    }

    /// Chain complex; `d_k` block `(sigma, tau)` is `[sigma : tau]` times the
    /// graded extension.
    pub fn chain_complex(&self) -> GradedComplex {
        let c = &self.complex;
        let fld = c.field();
        let top = c.dim().map_or(0, |d| d + 1);
        let (groups, offsets) = gather(c, &self.degrees, top);
        let mut maps = Vec::new();
        for k in 1..top {
            let mut d = Matrix::zeros(fld, groups[k - 1].len(), groups[k].len());
            for &t in c.of_dim(k) {
                for &(s, sign) in c.faces(t) {
                    let block = self.maps[&(t, s)].scalar();
                    d.set_block(offsets[s], offsets[t], &signed(block, sign));
                }
            }
            maps.push(d);
        }
        GradedComplex::new(fld, Direction::Chain, groups, maps).expect("homogeneous by construction")
    }
}

fn signed(m: &Matrix, sign: i8) -> Matrix {
    if sign < 0 {
        m.scale(m.field().neg(1))
    } else {
        m.clone()
    }
}

// Concatenates per-simplex generator degrees by dimension.
fn gather(c: &FilteredComplex, degrees: &[Vec<usize>], top: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut offsets = vec![0; c.len()];
    let mut groups = vec![Vec::new(); top];
    for (k, g) in groups.iter_mut().enumerate() {
        for &s in c.of_dim(k) {
            offsets[s] = g.len();
            g.extend_from_slice(&degrees[s]);
        }
    }
    (groups, offsets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `maps[k]: C^k -> C^{k+1}`
    Cochain,
    /// `maps[k-1]: C_k -> C_{k-1}`
    Chain,
}

/// Complex of free graded modules with homogeneous differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    field: Field,
    direction: Direction,
    groups: Vec<Vec<usize>>,
    maps: Vec<HomogeneousMatrix>,
}

impl GradedComplex {
    pub fn new(
        field: Field,
        direction: Direction,
        groups: Vec<Vec<usize>>,
        scalars: Vec<Matrix>,
    ) -> Result<Self> {
        if scalars.len() + 1 != groups.len().max(1) {
            return Err(Error::Shape("wrong number of differentials".into()));
        }
        let maps = scalars
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                let (s, t) = match direction {
                    Direction::Cochain => (i, i + 1),
                    Direction::Chain => (i + 1, i),
                };
                HomogeneousMatrix::new(groups[s].clone(), groups[t].clone(), m)
            })
            .collect::<Result<_>>()?;
        Ok(GradedComplex {
            field,
            direction,
            groups,
            maps,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Generator degrees of the k-th group (empty outside the range).
    pub fn degrees(&self, k: usize) -> &[usize] {
        self.groups.get(k).map_or(&[], |g| g.as_slice())
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Differential leaving the k-th group.
    pub fn outgoing(&self, k: usize) -> HomogeneousMatrix {
        let idx = match self.direction {
            Direction::Cochain => Some(k),
            Direction::Chain => k.checked_sub(1),
        };
        let next = match self.direction {
            Direction::Cochain => self.degrees(k + 1).to_vec(),
            Direction::Chain => k.checked_sub(1).map_or(vec![], |j| self.degrees(j).to_vec()),
        };
        idx.and_then(|i| self.maps.get(i).cloned()).unwrap_or_else(|| HomogeneousMatrix {
            source: self.degrees(k).to_vec(),
            target: next.clone(),
            scalar: Matrix::zeros(self.field, next.len(), self.degrees(k).len()),
        })
    }

    /// Differential arriving at the k-th group.
    pub fn incoming(&self, k: usize) -> HomogeneousMatrix {
        let prev = match self.direction {
            Direction::Cochain => k.checked_sub(1),
            Direction::Chain => Some(k + 1),
        };
        match prev {
            Some(j) if j < self.groups.len() => self.outgoing(j),
            _ => HomogeneousMatrix {
                source: vec![],
                target: self.degrees(k).to_vec(),
                scalar: Matrix::zeros(self.field, self.degrees(k).len(), 0),
            },
        }
    }

    /// Every composite of consecutive differentials vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let (first, second) = match self.direction {
                Direction::Cochain => (&w[0], &w[1]),
                Direction::Chain => (&w[1], &w[0]),
            };
            first.then(second).scalar.is_zero()
        })
    }

    /// Degree-`n` slice of a cochain complex together with the `t`-action
    /// inclusions from slice `n` into slice `n + 1`.
    pub fn evaluate_at(&self, n: usize) -> Result<Slice> {
        if self.direction != Direction::Cochain {
            return Err(Error::InvalidInput("slices are defined for cochain complexes".into()));
        }
        let keep = |k: usize, n: usize| -> Vec<usize> {
            (0..self.groups[k].len())
                .filter(|&i| self.groups[k][i] <= n)
                .collect()
        };
        let dims: Vec<usize> = (0..self.groups.len()).map(|k| keep(k, n).len()).collect();
        let delta = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| m.scalar.submatrix(&keep(k + 1, n), &keep(k, n)))
            .collect();
        let t_action = (0..self.groups.len())
            .map(|k| {
                let (now, next) = (keep(k, n), keep(k, n + 1));
                let mut m = Matrix::zeros(self.field, next.len(), now.len());
                for (j, g) in now.iter().enumerate() {
                    m.set(next.iter().position(|h| h == g).unwrap(), j, 1);
                }
                m
            })
            .collect();
        Ok(Slice {
            complex: CochainComplex::from_parts(self.field, dims, delta)?,
            t_action,
        })
    }

    /// Barcode of the k-th (co)homology module.
    pub fn barcode(&self, k: usize) -> Barcode {
        graded_homology_barcode(&self.incoming(k), &self.outgoing(k), k)
    }
}

/// One degree of a graded cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub complex: CochainComplex,
    /// `t_action[k]`: inclusion of the slice's `C^k` into the next slice's.
    pub t_action: Vec<Matrix>,
}

/// Ascending-degree order, ties broken by position.
fn degree_order(degrees: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..degrees.len()).collect();
    order.sort_by_key(|&i| (degrees[i], i));
    order
}

/// Barcode of `ker(outgoing) / im(incoming)` for homogeneous maps into and
/// out of the same free module.
///
/// 1. Reduce `outgoing` column by column in ascending degree; columns that
///    vanish give homogeneous kernel generators.
/// 2. Write every column of `incoming` in that kernel basis.
/// 3. Reduce the coordinate matrix with rows and columns in ascending
///    degree; each pivot pairs a kernel generator with a relation.
pub fn graded_homology_barcode(
    incoming: &HomogeneousMatrix,
    outgoing: &HomogeneousMatrix,
    k: usize,
) -> Barcode {
    let f = outgoing.scalar.field();
    let degs = &outgoing.source;
    assert_eq!(incoming.target, *degs, "maps do not meet at one module");

    // step 1
    let order = degree_order(degs);
    let red = ColumnReduction::with_hook(&outgoing.scalar, &order, |j, l| {
        assert!(degs[l] <= degs[j], "homogeneity violated in kernel reduction");
    });
    let kernel: Vec<(usize, Vec<u32>)> = red.kernel().map(|(j, v)| (degs[j], v.clone())).collect();
    let kernel_degs: Vec<usize> = kernel.iter().map(|(d, _)| *d).collect();
    let z = Matrix::from_columns(f, degs.len(), &kernel.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());

    // step 2
    let solver = Solver::new(&z);
    let rel_degs = &incoming.source;
    let rel_order = degree_order(rel_degs);
    let mut coords: Vec<Vec<u32>> = Vec::with_capacity(rel_order.len());
    for &j in &rel_order {
        let c = solver
            .solve(&incoming.scalar.column(j))
            .expect("image of the incoming map lies in the kernel");
        for (i, &x) in c.iter().enumerate() {
            assert!(
                x == 0 || kernel_degs[i] <= rel_degs[j],
                "relation of degree {} uses a generator of degree {}",
                rel_degs[j],
                kernel_degs[i]
            );
        }
        coords.push(c);
    }

    // step 3: rows (kernel generators) are already in ascending degree,
    // since kernel() follows the processing order.
    let mut pivot_owner: Vec<Option<usize>> = vec![None; kernel.len()];
    let mut paired = vec![false; kernel.len()];
    let mut bars = Vec::new();
    for j in 0..coords.len() {
        let e = rel_degs[rel_order[j]];
        while let Some(l) = low(&coords[j]) {
            match pivot_owner[l] {
                Some(o) => {
                    let c = f.neg(f.mul(coords[j][l], f.inv(coords[o][l])));
                    let src = coords[o].clone();
                    crate::matrix::axpy(f, &mut coords[j], c, &src);
                }
                None => {
                    pivot_owner[l] = Some(j);
                    paired[l] = true;
                    let a = kernel_degs[l];
                    if e > a {
                        bars.push(Bar::finite(a, e - 1));
                    }
                    break;
                }
            }
        }
    }
    for (i, &d) in kernel_degs.iter().enumerate() {
        if !paired[i] {
            bars.push(Bar::infinite(d));
        }
    }
    Barcode::new(k, bars)
}

struct StalkGenerators {
    degrees: Vec<usize>,
    // vectors[g][step - degrees[g]] = image of generator g in F_step
    vectors: Vec<Vec<Vec<u32>>>,
}

impl StalkGenerators {
    fn at(&self, g: usize, step: usize) -> &[u32] {
        &self.vectors[g][step - self.degrees[g]]
    }

    /// Generators born by `step`, pushed to `step`, as columns.
    fn basis_at(&self, field: Field, dim: usize, step: usize) -> (Vec<usize>, Matrix) {
        let alive: Vec<usize> = (0..self.degrees.len())
            .filter(|&g| self.degrees[g] <= step)
            .collect();
        let cols: Vec<Vec<u32>> = alive.iter().map(|&g| self.at(g, step).to_vec()).collect();
        (alive, Matrix::from_columns(field, dim, &cols))
    }
}

fn stalk_generators(diagram: &SheafDiagram, sigma: usize) -> Result<StalkGenerators> {
    let f = diagram.complex().field();
    let mut degrees = Vec::new();
    let mut vectors: Vec<Vec<Vec<u32>>> = Vec::new();
    for step in 0..diagram.len() {
        let dim = diagram.sheaf(step).stalk(sigma);
        let mut ech = Echelon::new(f, dim);
        if step > 0 {
            let phi = diagram.morphisms()[step - 1].component(sigma);
            if !phi.is_injective() {
                return Err(Error::NotFree {
                    simplex: diagram.complex().simplex(sigma).id.clone(),
                    step: step - 1,
                });
            }
            for v in vectors.iter_mut() {
                let w = phi.mul_vec(v.last().unwrap());
                ech.insert(w.clone());
                v.push(w);
            }
        }
        // greedy complement by standard basis vectors
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            if ech.insert(e.clone()) {
                degrees.push(step);
                vectors.push(vec![e]);
            }
        }
    }
    Ok(StalkGenerators { degrees, vectors })
}

/// The graded sheaf of a stalk-wise monomorphic sheaf diagram.
///
/// Generators of degree `a` at a simplex are the vectors new at step `a`;
/// the graded restriction sends a degree-`a` generator to the expression of
/// its restriction at step `a` in the target generators alive at `a`.
pub fn diagram_to_graded_sheaf(diagram: &SheafDiagram) -> Result<GradedSheaf> {
    let c = diagram.complex().clone();
    let f = c.field();
    let gens: Vec<StalkGenerators> = (0..c.len())
        .map(|s| stalk_generators(diagram, s))
        .collect::<Result<_>>()?;
    let mut maps = BTreeMap::new();
    for t in 0..c.len() {
        // one solver per step at which a source generator is born
        let mut solvers: BTreeMap<usize, (Vec<usize>, Solver)> = BTreeMap::new();
        for &(s, _) in c.faces(t) {
            let gs = &gens[s];
            let mut scalar = Matrix::zeros(f, gens[t].degrees.len(), gs.degrees.len());
            for (g, &a) in gs.degrees.iter().enumerate() {
                let (alive, solver) = solvers.entry(a).or_insert_with(|| {
                    let (alive, basis) = gens[t].basis_at(f, diagram.sheaf(a).stalk(t), a);
                    (alive, Solver::new(&basis))
                });
                let image = diagram.sheaf(a).restriction(s, t).mul_vec(gs.at(g, a));
                let coeffs = solver
                    .solve(&image)
                    .expect("generators alive at a step span the stalk");
                for (h, &x) in alive.iter().zip(&coeffs) {
                    scalar.set(*h, g, x);
                }
            }
            maps.insert(
                (s, t),
                HomogeneousMatrix::new(gs.degrees.clone(), gens[t].degrees.clone(), scalar)?,
            );
        }
    }
    let degrees = gens.into_iter().map(|g| g.degrees).collect();
    GradedSheaf::new(c, degrees, maps)
}

/// Graded cosheaf of a filtration and a sheaf on its last step: at `sigma`,
/// `stalk(sigma)` generators of degree `entry(sigma)`; extensions are the
/// transposed restrictions.
pub fn filtration_cosheaf(sheaf: &CellularSheaf) -> GradedCosheaf {
    let c = sheaf.complex().clone();
    let degrees: Vec<Vec<usize>> = (0..c.len())
        .map(|s| vec![c.simplex(s).entry; sheaf.stalk(s)])
        .collect();
    let maps = sheaf
        .restrictions()
        .iter()
        .map(|(&(s, t), m)| {
            let h = HomogeneousMatrix::new(degrees[t].clone(), degrees[s].clone(), m.transpose())
                .expect("entries are monotone along faces");
            ((t, s), h)
        })
        .collect();
    GradedCosheaf {
        complex: c,
        degrees,
        maps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hm(src: Vec<usize>, tgt: Vec<usize>, rows: &[Vec<i64>]) -> HomogeneousMatrix {
        let m = Matrix::from_rows(Field::f2(), src.len(), rows).unwrap();
        HomogeneousMatrix::new(src, tgt, m).unwrap()
    }

    #[test]
    fn homogeneity_is_enforced() {
        let m = Matrix::from_rows(Field::f2(), 1, &[vec![1]]).unwrap();
        assert!(HomogeneousMatrix::new(vec![0], vec![1], m.clone()).is_err());
        let h = HomogeneousMatrix::new(vec![4], vec![0], m).unwrap();
        assert_eq!(h.power(0, 0), Some(4));
    }

    #[test]
    fn degree_zero_complex_gives_plain_cohomology() {
        // hollow triangle, constant coefficients, everything in degree 0
        let d0 = Matrix::from_rows(Field::f2(), 3, &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let gc = GradedComplex::new(Field::f2(), Direction::Cochain, vec![vec![0; 3], vec![0; 3]], vec![d0]).unwrap();
        assert_eq!(gc.barcode(0).bars(), &[Bar::infinite(0)]);
        assert_eq!(gc.barcode(1).bars(), &[Bar::infinite(0)]);
        assert!(gc.squares_to_zero());
    }

    // Three-row, five-column coboundary with row degrees (0,0,3) and
    // column degrees (0,1,0,2,4).
    fn worked_example() -> GradedComplex {
        let d = hm(
            vec![0, 1, 0, 2, 4],
            vec![0, 0, 3],
            &[vec![1, 0, 0, 0, 1], vec![0, 1, 1, 0, 0], vec![0, 0, 0, 0, 0]],
        );
        GradedComplex::new(
            Field::f2(),
            Direction::Cochain,
            vec![vec![0, 1, 0, 2, 4], vec![0, 0, 3]],
            vec![d.scalar().clone()],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_barcode() {
        let gc = worked_example();
        assert_eq!(
            gc.barcode(0).bars(),
            &[Bar::infinite(1), Bar::infinite(2), Bar::infinite(4)]
        );
    }

    #[test]
    fn slices() {
        let gc = worked_example();
        let s0 = gc.evaluate_at(0).unwrap();
        assert_eq!(s0.complex.dims(), &[2, 2]);
        let s4 = gc.evaluate_at(4).unwrap();
        assert_eq!(s4.complex.dims(), &[5, 3]);
        assert_eq!(s4.complex.betti(0), 3);
        assert_eq!(s0.t_action[0].shape(), (3, 2));
        assert_eq!(s0.t_action[0].rank(), 2);
    }

    #[test]
    fn finite_bars_from_relations() {
        // one generator born at 0 killed by a relation of degree 2
        let gc = GradedComplex::new(
            Field::f2(),
            Direction::Chain,
            vec![vec![0], vec![2]],
            vec![Matrix::from_rows(Field::f2(), 1, &[vec![1]]).unwrap()],
        )
        .unwrap();
        assert_eq!(gc.barcode(0).bars(), &[Bar::finite(0, 1)]);
        assert!(gc.barcode(1).is_empty());
        // relation in the same degree: no bar
        let gc = GradedComplex::new(
            Field::f2(),
            Direction::Chain,
            vec![vec![1], vec![1]],
            vec![Matrix::from_rows(Field::f2(), 1, &[vec![1]]).unwrap()],
        )
        .unwrap();
        assert!(gc.barcode(0).is_empty());
    }

    #[test]
    fn empty_complex() {
        let gc = GradedComplex::new(Field::f2(), Direction::Cochain, vec![], vec![]).unwrap();
        assert!(gc.barcode(0).is_empty());
    }
}
