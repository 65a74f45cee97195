//! Points of `G(l, V_m)` over `F_q` as right-row-reduced echelon matrices.
//!
//! In this form each row's *last* nonzero entry is a pivot equal to 1,
//! pivots move right going down, and pivot columns are zero away from their
//! pivot. A matrix with pivot columns `a` lies in the Schubert cell `C_a`;
//! its free entries sit in row `i` at the non-pivot columns left of `a_i`,
//! `delta(a)` of them in all.
//!
//! Enumeration is lazy and ordered by pivot tuple (lexicographic), then by
//! the free entries read row-major as a base-`q` number with the first free
//! entry most significant. Each cell is addressable by index, so any range
//! of a cell can be generated independently.

mod plucker;
pub mod strings;

pub use plucker::{plucker, PluckerEmbedding, PluckerVector};

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::qcombin::{enumerate_index_tuples, GrassmannParams, IndexTuple};

/// Refuse to enumerate Grassmannians with more points than this.
pub const DEFAULT_MAX_POINTS: u64 = 1 << 28;

/// An `l x m` matrix in right-row-reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EchelonMatrix {
    pivots: IndexTuple,
    entries: Vec<Elem>,
}

/// Free positions `(row, column)`, both 0-based, of the cell with pivots `alpha`.
pub fn free_positions(alpha: &IndexTuple) -> Vec<(usize, usize)> {
    alpha
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| {
            (1..a)
                .filter(|&j| !alpha.contains(j))
                .map(move |j| (i, j - 1))
        })
        .collect()
}

impl EchelonMatrix {
    pub fn ell(&self) -> usize {
        self.pivots.ell()
    }

    pub fn m(&self) -> usize {
        self.pivots.m()
    }

    /// Pivot columns, 1-based.
    pub fn pivots(&self) -> &IndexTuple {
        &self.pivots
    }

    /// Entry at 0-based `(row, col)`.
    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Elem {
        self.entries[row * self.m() + col]
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        let m = self.m();
        &self.entries[i * m..(i + 1) * m]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.ell()).map(|i| self.row(i).to_vec()).collect()
    }

    /// The free entries in row-major order.
    pub fn free_entries(&self) -> Vec<Elem> {
        free_positions(&self.pivots)
            .into_iter()
            .map(|(i, j)| self.entry(i, j))
            .collect()
    }

    /// The matrix with pivot columns `alpha` whose free entries spell
    /// `index` in base `q`, first free entry most significant.
    pub fn from_cell_index(field: &Field, alpha: &IndexTuple, index: u64) -> Result<Self> {
        let free = free_positions(alpha);
        let q = field.order() as u64;
        let size = q.checked_pow(free.len() as u32);
        if size.is_some_and(|s| index >= s) {
            return Err(Error::usage(format!("cell index {index} out of range")));
        }
        let mut m = EchelonMatrix::pivot_only(alpha);
        let mut rest = index;
        for &(i, j) in free.iter().rev() {
            m.entries[i * alpha.m() + j] = field.from_index((rest % q) as usize)?;
            rest /= q;
        }
        Ok(m)
    }

    /// Pivots set to 1 and every free entry zero.
    pub fn pivot_only(alpha: &IndexTuple) -> Self {
        let (ell, m) = (alpha.ell(), alpha.m());
        let mut entries = vec![Elem::ZERO; ell * m];
        for (i, &a) in alpha.entries().iter().enumerate() {
            entries[i * m + a - 1] = Elem::ONE;
        }
        EchelonMatrix { pivots: alpha.clone(), entries }
    }

    /// Validates that `rows` already satisfy the right-echelon conditions.
    pub fn from_rows(rows: &[Vec<Elem>], m: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::usage(format!("every row must have {m} entries")));
        }
        let mut pivots = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let Some(last) = r.iter().rposition(|x| !x.is_zero()) else {
                return Err(Error::domain(format!("row {} is zero", i + 1)));
            };
            if r[last] != Elem::ONE {
                return Err(Error::domain(format!("pivot of row {} is not 1", i + 1)));
            }
            pivots.push(last + 1);
        }
        let pivots = IndexTuple::new(pivots, m)
            .map_err(|_| Error::domain("pivots do not move strictly right down the rows"))?;
        for (i, &a) in pivots.entries().iter().enumerate() {
            if rows.iter().enumerate().any(|(k, r)| k != i && !r[a - 1].is_zero()) {
                return Err(Error::domain(format!("pivot column {a} is not otherwise zero")));
            }
        }
        Ok(EchelonMatrix {
            pivots,
            entries: rows.concat(),
        })
    }

    /// The canonical representative of the row space of `rows`, which must
    /// be linearly independent.
    pub fn from_span(field: &Field, rows: &[Vec<Elem>], m: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::usage(format!("every row must have {m} entries")));
        }
        // left-reduce the column-reversed matrix, then undo both reversals
        let mut a: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let pivots = linalg::rref(field, &mut a);
        if pivots.len() < rows.len() {
            return Err(Error::domain("rows are linearly dependent"));
        }
        let out: Vec<Vec<Elem>> = a
            .into_iter()
            .rev()
            .map(|r| r.into_iter().rev().collect())
            .collect();
        EchelonMatrix::from_rows(&out, m)
    }

    /// Whether the last column is zero, i.e. the subspace lies in `V_{m-1}`.
    pub fn in_hyperplane_v_m_minus_1(&self) -> bool {
        self.pivots.entries().last().is_none_or(|&a| a < self.m())
    }

    /// Whether the last row's pivot is in the last column (the locus `T(l, m)`).
    pub fn in_t(&self) -> bool {
        self.pivots.entries().last() == Some(&self.m())
    }

    /// Row-major rows separated by `;`, entries by spaces.
    pub fn format(&self, field: &Field) -> String {
        (0..self.ell())
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| field.format(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn display<'a>(&'a self, field: &'a Field) -> impl fmt::Display + 'a {
        struct D<'a>(&'a EchelonMatrix, &'a Field);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, field)
    }
}

/// Lazy iterator over one Schubert cell.
#[derive(Clone)]
pub struct CellIter {
    field: Field,
    free: Vec<(usize, usize)>,
    digits: Vec<usize>,
    current: Option<EchelonMatrix>,
}

impl CellIter {
    fn new(field: &Field, alpha: &IndexTuple) -> Self {
        let free = free_positions(alpha);
        CellIter {
            field: field.clone(),
            digits: vec![0; free.len()],
            free,
            current: Some(EchelonMatrix::pivot_only(alpha)),
        }
    }
}

impl Iterator for CellIter {
    type Item = EchelonMatrix;

    fn next(&mut self) -> Option<EchelonMatrix> {
        let out = self.current.take()?;
        // odometer step, last free entry fastest
        let q = self.field.order();
        let mut next = out.clone();
        let m = next.m();
        for k in (0..self.free.len()).rev() {
            let (i, j) = self.free[k];
            self.digits[k] += 1;
            if self.digits[k] < q {
                next.entries[i * m + j] = Elem::from_raw(self.digits[k]);
                self.current = Some(next);
                return Some(out);
            }
            self.digits[k] = 0;
            next.entries[i * m + j] = Elem::ZERO;
        }
        Some(out)
    }
}

/// `G(l, V_m)` over a finite field, enumerable cell by cell.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    params: GrassmannParams,
    cells: Vec<IndexTuple>,
}

impl Grassmannian {
    pub fn new(params: GrassmannParams) -> Result<Self> {
        Self::with_limit(params, DEFAULT_MAX_POINTS)
    }

    pub fn with_limit(params: GrassmannParams, max_points: u64) -> Result<Self> {
        let n = params.num_points();
        if n.to_u64().is_none_or(|n| n > max_points) {
            return Err(Error::Budget {
                what: format!("enumerating G({}, {}) over F_{}", params.ell, params.m, params.q()),
                required: n.to_u128().unwrap_or(u128::MAX),
                budget: max_points as u128,
            });
        }
        let cells = enumerate_index_tuples(params.ell, params.m)?;
        Ok(Grassmannian { params, cells })
    }

    pub fn params(&self) -> &GrassmannParams {
        &self.params
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    /// `[m, l]_q`.
    pub fn len(&self) -> u64 {
        self.params.num_points().to_u64().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every point exactly once.
    pub fn iter(&self) -> impl Iterator<Item = EchelonMatrix> + '_ {
        self.cells.iter().flat_map(|a| CellIter::new(&self.params.field, a))
    }

    /// The `q^delta(alpha)` points with pivot tuple `alpha`.
    pub fn cell(&self, alpha: &IndexTuple) -> Result<CellIter> {
        self.check_tuple(alpha)?;
        Ok(CellIter::new(&self.params.field, alpha))
    }

    /// `Omega_alpha`: the union of the cells `C_b` for `b <= alpha`.
    pub fn schubert_variety<'a>(
        &'a self,
        alpha: &'a IndexTuple,
    ) -> Result<impl Iterator<Item = EchelonMatrix> + 'a> {
        self.check_tuple(alpha)?;
        Ok(self
            .cells
            .iter()
            .filter(move |b| b.leq_unchecked(alpha))
            .flat_map(|b| CellIter::new(&self.params.field, b)))
    }

    fn check_tuple(&self, alpha: &IndexTuple) -> Result<()> {
        if alpha.ell() != self.params.ell || alpha.m() != self.params.m {
            return Err(Error::usage(format!(
                "{alpha} is not in I({}, {})",
                self.params.ell, self.params.m
            )));
        }
        Ok(())
    }
}

/// Every point of `G(l, V_m)` in canonical order.
pub fn enumerate_grassmannian(params: &GrassmannParams) -> Result<Vec<EchelonMatrix>> {
    Ok(Grassmannian::new(params.clone())?.iter().collect())
}

/// The points of the cell `C_alpha`.
pub fn enumerate_cell(alpha: &IndexTuple, params: &GrassmannParams) -> Result<CellIter> {
    Grassmannian::new(params.clone())?.cell(alpha)
}

/// The points of the Schubert variety `Omega_alpha`.
pub fn enumerate_schubert_variety(
    alpha: &IndexTuple,
    params: &GrassmannParams,
) -> Result<Vec<EchelonMatrix>> {
    let g = Grassmannian::new(params.clone())?;
    let pts = g.schubert_variety(alpha)?.collect();
    Ok(pts)
}
