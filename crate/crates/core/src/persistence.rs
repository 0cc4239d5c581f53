//! Persistence and copersistence modules, barcodes, and the rank-formula
//! decomposition.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Interval `[birth, death]`; `death = None` means the bar never dies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bar {
    pub birth: usize,
    pub death: Option<usize>,
}

impl Bar {
    pub fn finite(birth: usize, death: usize) -> Self {
        Bar {
            birth,
            death: Some(death),
        }
    }

    pub fn infinite(birth: usize) -> Self {
        Bar { birth, death: None }
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.birth <= i && self.death.is_none_or(|d| i <= d)
    }

    /// Right end with infinity replaced by `m - 1`.
    pub fn closed_end(&self, m: usize) -> usize {
        self.death.unwrap_or(m.saturating_sub(1))
    }
}

impl Ord for Bar {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |b: &Bar| (b.birth, b.death.is_none(), b.death);
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Bar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.death {
            Some(d) => write!(f, "[{}, {}]", self.birth, d),
            None => write!(f, "[{}, inf)", self.birth),
        }
    }
}

/// Multiset of bars describing one (co)homological degree, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Barcode {
    pub degree: usize,
    bars: Vec<Bar>,
}

impl Barcode {
    pub fn new(degree: usize, mut bars: Vec<Bar>) -> Self {
        bars.sort();
        Barcode { degree, bars }
    }

    pub fn empty(degree: usize) -> Self {
        Barcode {
            degree,
            bars: Vec::new(),
        }
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars alive at index `i`.
    pub fn rank_at(&self, i: usize) -> usize {
        self.bars.iter().filter(|b| b.contains(i)).count()
    }

    /// Replaces every infinite end by `m - 1`.
    pub fn closed(&self, m: usize) -> Barcode {
        Barcode::new(
            self.degree,
            self.bars
                .iter()
                .map(|b| Bar::finite(b.birth, b.closed_end(m)))
                .collect(),
        )
    }
}

/// Multiset equality of the bars (degrees are not compared).
pub fn barcodes_equal(a: &Barcode, b: &Barcode) -> bool {
    a.bars == b.bars
}

/// Reflects `[a, b]` to `[m-1-b, m-1-a]`.
///
/// An infinite bar is read as ending at `m - 1`; its reflection starts at 0
/// and is marked infinite again only when it reaches `m - 1`, i.e. when the
/// original bar was born at 0.
pub fn reflect(bc: &Barcode, m: usize) -> Result<Barcode> {
    let mut out = Vec::with_capacity(bc.len());
    for bar in bc.bars() {
        let end = bar.closed_end(m);
        if m == 0 || end >= m || bar.birth > end {
            return Err(Error::InvalidInput(format!("bar {bar} does not fit in {m} steps")));
        }
        let (a, b) = (m - 1 - end, m - 1 - bar.birth);
        out.push(if bar.is_infinite() && bar.birth == 0 {
            Bar::infinite(a)
        } else {
            Bar::finite(a, b)
        });
    }
    Ok(Barcode::new(bc.degree, out))
}

/// Linear diagram `V_0 -> V_1 -> ... -> V_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceModule {
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PersistenceModule {
    pub fn new(field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if maps.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!(
                "{} spaces need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Shape(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(PersistenceModule { field, dims, maps })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Composite map `V_a -> V_b` for `a <= b`.
    pub fn composite(&self, a: usize, b: usize) -> Matrix {
        assert!(a <= b && b < self.dims.len());
        let mut acc = Matrix::identity(self.field, self.dims[a]);
        for m in &self.maps[a..b] {
            acc = m.mul(&acc);
        }
        acc
    }

    /// `ranks[a][b - a]` = rank of the composite `a -> b`.
    fn rank_table(&self) -> Vec<Vec<usize>> {
        let m = self.dims.len();
        (0..m)
            .map(|a| {
                let mut acc = Matrix::identity(self.field, self.dims[a]);
                let mut row = vec![self.dims[a]];
                for map in &self.maps[a..] {
                    acc = map.mul(&acc);
                    row.push(acc.rank());
                }
                row
            })
            .collect()
    }
}

/// Rank-formula interval decomposition. The module is extended to the
/// right by identities, so bars alive at `m - 1` are reported infinite.
pub fn decompose_by_ranks(module: &PersistenceModule, degree: usize) -> Barcode {
    let m = module.len();
    let table = module.rank_table();
    // r(a, b) with r(-1, .) = 0
    let r = |a: isize, b: usize| -> isize {
        if a < 0 {
            0
        } else {
            table[a as usize][b - a as usize] as isize
        }
    };
    let mut bars = Vec::new();
    for a in 0..m {
        let ai = a as isize;
        for b in a..m {
            let mult = if b + 1 == m {
                r(ai, b) - r(ai - 1, b)
            } else {
                r(ai, b) - r(ai - 1, b) - r(ai, b + 1) + r(ai - 1, b + 1)
            };
            debug_assert!(mult >= 0, "negative multiplicity");
            let bar = if b + 1 == m {
                Bar::infinite(a)
            } else {
                Bar::finite(a, b)
            };
            bars.extend(std::iter::repeat_n(bar, mult.max(0) as usize));
        }
    }
    Barcode::new(degree, bars)
}

/// Linear diagram `V_0 <- V_1 <- ... <- V_{m-1}`; `maps[i]: V_{i+1} -> V_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopersistenceModule {
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl CopersistenceModule {
    pub fn new(field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if maps.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!(
                "{} spaces need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (dims[i], dims[i + 1]) {
                return Err(Error::Shape(format!(
                    "map {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        Ok(CopersistenceModule { field, dims, maps })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Pointwise dual: transposed maps, same indices.
    pub fn dual(&self) -> PersistenceModule {
        PersistenceModule {
            field: self.field,
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }
}

/// Decomposes the dual persistence module; bars keep their index
/// coordinates.
pub fn decompose_copersistence(module: &CopersistenceModule, degree: usize) -> Barcode {
    decompose_by_ranks(&module.dual(), degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>], cols: usize) -> Matrix {
        Matrix::from_rows(Field::f2(), cols, rows).unwrap()
    }

    #[test]
    fn identity_chain_is_one_bar() {
        let i = m(&[vec![1]], 1);
        let pm = PersistenceModule::new(Field::f2(), vec![1, 1, 1], vec![i.clone(), i]).unwrap();
        assert_eq!(decompose_by_ranks(&pm, 0).bars(), &[Bar::infinite(0)]);
    }

    // H^0 row of the five-step edge diagram: dims (0,1,2,2,3).
    #[test]
    fn staircase_of_inclusions() {
        let pm = PersistenceModule::new(
            Field::f2(),
            vec![0, 1, 2, 2, 3],
            vec![
                Matrix::zeros(Field::f2(), 1, 0),
                m(&[vec![1], vec![0]], 1),
                m(&[vec![1, 0], vec![0, 1]], 2),
                m(&[vec![1, 0], vec![0, 1], vec![0, 0]], 2),
            ],
        )
        .unwrap();
        let bc = decompose_by_ranks(&pm, 0);
        assert_eq!(
            bc.bars(),
            &[Bar::infinite(1), Bar::infinite(2), Bar::infinite(4)]
        );
    }

    #[test]
    fn copersistence_examples() {
        let cm = CopersistenceModule::new(
            Field::f2(),
            vec![4, 2, 0],
            vec![
                m(&[vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]], 2),
                Matrix::zeros(Field::f2(), 2, 0),
            ],
        )
        .unwrap();
        assert_eq!(
            decompose_copersistence(&cm, 0).bars(),
            &[Bar::finite(0, 0), Bar::finite(0, 0), Bar::finite(0, 1), Bar::finite(0, 1)]
        );

        let z = CopersistenceModule::new(
            Field::f2(),
            vec![1, 2],
            vec![Matrix::zeros(Field::f2(), 1, 2)],
        )
        .unwrap();
        assert_eq!(
            decompose_copersistence(&z, 0).bars(),
            &[Bar::finite(0, 0), Bar::infinite(1), Bar::infinite(1)]
        );

        let i = m(&[vec![1]], 1);
        let id = CopersistenceModule::new(Field::f2(), vec![1, 1, 1], vec![i.clone(), i]).unwrap();
        assert_eq!(decompose_copersistence(&id, 0).bars(), &[Bar::infinite(0)]);
    }

    #[test]
    fn reflection() {
        let r = |bars: Vec<Bar>, m: usize| reflect(&Barcode::new(0, bars), m).unwrap();
        assert_eq!(r(vec![Bar::finite(0, 2)], 3).bars(), &[Bar::finite(0, 2)]);
        assert_eq!(r(vec![Bar::finite(1, 2)], 4).bars(), &[Bar::finite(1, 2)]);
        assert_eq!(
            r(vec![Bar::finite(0, 0), Bar::finite(0, 1)], 3).bars(),
            &[Bar::finite(1, 2), Bar::finite(2, 2)]
        );
        assert_eq!(r(vec![Bar::infinite(0)], 4).bars(), &[Bar::infinite(0)]);
        assert_eq!(r(vec![Bar::infinite(3)], 4).bars(), &[Bar::finite(0, 0)]);
        assert!(reflect(&Barcode::new(0, vec![Bar::finite(0, 5)]), 3).is_err());
    }

    #[test]
    fn multiset_equality() {
        let e = Barcode::empty(0);
        assert!(barcodes_equal(&e, &Barcode::empty(1)));
        let a = Barcode::new(0, vec![Bar::infinite(1)]);
        assert!(barcodes_equal(&a, &a.clone()));
        let two = Barcode::new(0, vec![Bar::finite(1, 2), Bar::finite(1, 2)]);
        let one = Barcode::new(0, vec![Bar::finite(1, 2)]);
        assert!(!barcodes_equal(&two, &one));
    }

    #[test]
    fn infinite_bars_sort_last() {
        let bc = Barcode::new(0, vec![Bar::infinite(0), Bar::finite(0, 2), Bar::finite(0, 0)]);
        assert_eq!(
            bc.bars(),
            &[Bar::finite(0, 0), Bar::finite(0, 2), Bar::infinite(0)]
        );
        assert_eq!(bc.closed(4).bars()[2], Bar::finite(0, 3));
    }
}
