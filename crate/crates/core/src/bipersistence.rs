//! Two-parameter grid combining a filtration (topological axis) with a
//! sheaf diagram (algebraic axis).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cohomology::{
    cochain_complex, induce_on_cohomology, morphism_cochain_map, simplicial_cochain_map,
    CohomologyBasis,
};
use crate::complex::{FilteredComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::sheaf::{CellularSheaf, SheafDiagram, SheafMorphism};

/// Grid of cohomology spaces indexed by `(r, j)`.
///
/// Row `r` is the filtration step `i = m - 1 - r` (row 0 is the full
/// complex), column `j` the diagram index. Horizontal maps go
/// `(r, j) -> (r, j + 1)`, vertical maps `(r, j) -> (r + 1, j)` (restriction
/// to the smaller step).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiGrid {
    field: Field,
    pub dims: Vec<Vec<usize>>,
    pub horizontal: Vec<Vec<Matrix>>,
    pub vertical: Vec<Vec<Matrix>>,
}

impl BiGrid {
    pub fn new(
        field: Field,
        dims: Vec<Vec<usize>>,
        horizontal: Vec<Vec<Matrix>>,
        vertical: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let rows = dims.len();
        let cols = dims.first().map_or(0, Vec::len);
        let ok = dims.iter().all(|r| r.len() == cols)
            && horizontal.len() == rows
            && vertical.len() == rows.saturating_sub(1)
            && (0..rows).all(|r| {
                horizontal[r].len() == cols.saturating_sub(1)
                    && (0..cols.saturating_sub(1))
                        .all(|j| horizontal[r][j].shape() == (dims[r][j + 1], dims[r][j]))
            })
            && (0..rows.saturating_sub(1)).all(|r| {
                vertical[r].len() == cols
                    && (0..cols).all(|j| vertical[r][j].shape() == (dims[r + 1][j], dims[r][j]))
            });
        if !ok {
            return Err(Error::Shape("inconsistent grid".into()));
        }
        Ok(BiGrid {
            field,
            dims,
            horizontal,
            vertical,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.dims.len()
    }

    pub fn cols(&self) -> usize {
        self.dims.first().map_or(0, Vec::len)
    }

    /// Composite from `from` to `to` (`from <= to` coordinatewise), taking
    /// all horizontal steps first or all vertical steps first.
    pub fn composite(&self, from: (usize, usize), to: (usize, usize), horizontal_first: bool) -> Matrix {
        assert!(from.0 <= to.0 && from.1 <= to.1, "indices not comparable");
        let path = staircase(from, to, |_| horizontal_first);
        self.along(from, &path)
    }

    /// Composite along a monotone path; `true` is a horizontal step.
    pub fn along(&self, from: (usize, usize), path: &[bool]) -> Matrix {
        let (mut r, mut j) = from;
        let mut acc = Matrix::identity(self.field, self.dims[r][j]);
        for &h in path {
            if h {
                acc = self.horizontal[r][j].mul(&acc);
                j += 1;
            } else {
                acc = self.vertical[r][j].mul(&acc);
                r += 1;
            }
        }
        acc
    }
}

/// Monotone lattice path from `from` to `to`; `pick(step)` says whether to
/// move horizontally when both directions remain.
pub fn staircase(
    from: (usize, usize),
    to: (usize, usize),
    mut pick: impl FnMut(usize) -> bool,
) -> Vec<bool> {
    let (mut dr, mut dj) = (to.0 - from.0, to.1 - from.1);
    let mut path = Vec::with_capacity(dr + dj);
    while dr + dj > 0 {
        let h = if dr == 0 {
            true
        } else if dj == 0 {
            false
        } else {
            pick(path.len())
        };
        if h {
            dj -= 1
        } else {
            dr -= 1
        }
        path.push(h);
    }
    path
}

/// Builds the grid at cohomological degree `k`. The filtration is read off
/// the entries of the diagram's complex.
pub fn grid(diagram: &SheafDiagram, k: usize) -> Result<BiGrid> {
    let full = diagram.complex().clone();
    let m = full.steps();
    let n = diagram.len();
    // cells[r][j] = (F^i)_j with i = m - 1 - r
    let steps: Vec<Arc<FilteredComplex>> = (0..m).map(|i| Arc::new(full.subcomplex_at(i))).collect();
    let include = |a: &Arc<FilteredComplex>, b: &Arc<FilteredComplex>| {
        SimplicialMap::inclusion(a.clone(), b.clone()).expect("filtration steps are nested")
    };
    let restricted: Vec<SheafDiagram> = (0..m)
        .rev()
        .map(|i| diagram.pullback(&include(&steps[i], &full)))
        .collect::<Result<_>>()?;
    let bases: Vec<Vec<CohomologyBasis>> = restricted
        .iter()
        .map(|d| {
            d.sheaves()
                .iter()
                .map(|s| cochain_complex(s).cohomology_basis(k))
                .collect()
        })
        .collect();
    let dims = bases
        .iter()
        .map(|row| row.iter().map(CohomologyBasis::dim).collect())
        .collect();
    let horizontal = (0..m)
        .map(|r| {
            restricted[r]
                .morphisms()
                .iter()
                .enumerate()
                .map(|(j, phi)| {
                    induce_on_cohomology(&morphism_cochain_map(phi, k), &bases[r][j], &bases[r][j + 1])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let vertical = (0..m.saturating_sub(1))
        .map(|r| {
            let i = m - 1 - r;
            let iota = include(&steps[i - 1], &steps[i]);
            (0..n)
                .map(|j| {
                    let cm = simplicial_cochain_map(&iota, restricted[r].sheaf(j), k);
                    induce_on_cohomology(&cm, &bases[r][j], &bases[r + 1][j])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    BiGrid::new(full.field(), dims, horizontal, vertical)
}

/// Grid of a single sheaf with a one-column diagram.
pub fn grid_of_sheaf(sheaf: Arc<CellularSheaf>, k: usize) -> Result<BiGrid> {
    grid(&SheafDiagram::new(vec![sheaf], Vec::<SheafMorphism>::new())?, k)
}

/// Fails with the first unit square (row, column) that does not commute.
pub fn check_commutative(g: &BiGrid) -> Result<()> {
    for r in 0..g.rows().saturating_sub(1) {
        for j in 0..g.cols().saturating_sub(1) {
            let right_down = g.vertical[r][j + 1].mul(&g.horizontal[r][j]);
            let down_right = g.horizontal[r + 1][j].mul(&g.vertical[r][j]);
            if right_down != down_right {
                return Err(Error::NonCommutative(format!("square ({r}, {j})")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RankEntry {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub rank: usize,
}

/// Rank of the composite between every comparable pair of grid indices.
pub fn rank_invariant(g: &BiGrid) -> BTreeMap<((usize, usize), (usize, usize)), usize> {
    let mut out = BTreeMap::new();
    for r in 0..g.rows() {
        for j in 0..g.cols() {
            for r2 in r..g.rows() {
                for j2 in j..g.cols() {
                    out.insert(((r, j), (r2, j2)), g.composite((r, j), (r2, j2), true).rank());
                }
            }
        }
    }
    out
}
