//! The decomposition of `G(l, V_m)` relative to the hyperplane `V_{m-1}`.
//!
//! A point either has a zero last column (it lies in `G(l, V_{m-1})`), or
//! its last row has its pivot in column `m`. The second kind form the locus
//! `T(l, m)`, and such a matrix splits as
//!
//! ```text
//!     [ M'  0 ]
//!     [ c   1 ]
//! ```
//!
//! with `M'` in `M(l-1, m-1)`. The entries of `c` at the `m - l` non-pivot
//! columns of `M'` form the label `nu`, and the points with a given label
//! (a *string*) correspond one-to-one with `G(l-1, V_{m-1})`.

use super::{EchelonMatrix, Grassmannian};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::qcombin::{GrassmannParams, IndexTuple};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringLabel {
    nu: Vec<Elem>,
}

impl StringLabel {
    pub fn new(nu: Vec<Elem>) -> Self {
        StringLabel { nu }
    }

    pub fn values(&self) -> &[Elem] {
        &self.nu
    }

    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    pub fn format(&self, field: &Field) -> String {
        let parts: Vec<String> = self.nu.iter().map(|&x| field.format(x)).collect();
        format!("[{}]", parts.join(" "))
    }
}

/// Every label in `F_q^{len}`, last coordinate fastest.
pub fn all_labels(field: &Field, len: usize) -> impl Iterator<Item = StringLabel> + '_ {
    let q = field.order();
    let total = q.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut nu = vec![Elem::ZERO; len];
        for slot in nu.iter_mut().rev() {
            *slot = field.from_index(k % q).expect("index below q");
            k /= q;
        }
        StringLabel { nu }
    })
}

fn require_t(mtx: &EchelonMatrix) -> Result<()> {
    if !mtx.in_t() {
        return Err(Error::domain(format!(
            "pivots {} do not end in the last column, so the point is not in T(l, m)",
            mtx.pivots()
        )));
    }
    Ok(())
}

/// `s(M)`: the last row read at the non-pivot columns of `M'`, left to right.
pub fn string_label(mtx: &EchelonMatrix) -> Result<StringLabel> {
    require_t(mtx)?;
    let last = mtx.row(mtx.ell() - 1);
    let nu = (1..mtx.m())
        .filter(|&j| !mtx.pivots().contains(j))
        .map(|j| last[j - 1])
        .collect();
    Ok(StringLabel { nu })
}

/// `tau(M) = M'`: delete the last row and the last column.
pub fn project_tau(mtx: &EchelonMatrix) -> Result<EchelonMatrix> {
    require_t(mtx)?;
    let (ell, m) = (mtx.ell(), mtx.m());
    let pivots = mtx.pivots().truncate()?;
    let mut entries = Vec::with_capacity((ell - 1) * (m - 1));
    for i in 0..ell - 1 {
        entries.extend_from_slice(&mtx.row(i)[..m - 1]);
    }
    Ok(EchelonMatrix { pivots, entries })
}

/// `phi_nu(M')`: the point of the string `nu` lying over `M'`.
pub fn phi(mprime: &EchelonMatrix, nu: &StringLabel) -> Result<EchelonMatrix> {
    let (ell1, m1) = (mprime.ell(), mprime.m());
    if nu.len() != m1 - ell1 {
        return Err(Error::usage(format!(
            "label has {} entries, expected {}",
            nu.len(),
            m1 - ell1
        )));
    }
    let m = m1 + 1;
    let mut entries = Vec::with_capacity((ell1 + 1) * m);
    for i in 0..ell1 {
        entries.extend_from_slice(mprime.row(i));
        entries.push(Elem::ZERO);
    }
    let mut values = nu.values().iter();
    for j in 1..m {
        entries.push(if mprime.pivots().contains(j) {
            Elem::ZERO
        } else {
            *values.next().unwrap()
        });
    }
    entries.push(Elem::ONE);
    Ok(EchelonMatrix {
        pivots: mprime.pivots().extend_last(),
        entries,
    })
}

/// The string `s^{-1}(nu)` of `G(l, V_m)`, in the order of `M(l-1, m-1)`.
pub fn string_fiber(params: &GrassmannParams, nu: &StringLabel) -> Result<Vec<EchelonMatrix>> {
    if params.ell == 0 {
        return Err(Error::domain("T(0, m) is empty"));
    }
    let g = Grassmannian::new(params.peeled()?)?;
    g.iter().map(|mp| phi(&mp, nu)).collect()
}

/// A point of `G(l, V_{m-1})` viewed in `G(l, V_m)` (zero last column).
pub fn embed_in_hyperplane(mtx: &EchelonMatrix) -> EchelonMatrix {
    let (ell, m) = (mtx.ell(), mtx.m());
    let mut entries = Vec::with_capacity(ell * (m + 1));
    for i in 0..ell {
        entries.extend_from_slice(mtx.row(i));
        entries.push(Elem::ZERO);
    }
    let pivots = IndexTuple::new(mtx.pivots().entries().to_vec(), m + 1).expect("same entries fit");
    EchelonMatrix { pivots, entries }
}

/// `G(l, V_m)` sorted into `G(l, V_{m-1})` and the strings.
#[derive(Clone, Debug)]
pub struct StringPartition {
    pub hyperplane: Vec<EchelonMatrix>,
    /// One entry per label, in [`all_labels`] order.
    pub strings: Vec<(StringLabel, Vec<EchelonMatrix>)>,
}

/// Classifies every point of `G(l, V_m)` by its string label.
pub fn partition(params: &GrassmannParams) -> Result<StringPartition> {
    let g = Grassmannian::new(params.clone())?;
    let field = &params.field;
    let labels: Vec<StringLabel> = if params.ell == 0 {
        Vec::new()
    } else {
        all_labels(field, params.m - params.ell).collect()
    };
    let mut strings: Vec<(StringLabel, Vec<EchelonMatrix>)> =
        labels.into_iter().map(|l| (l, Vec::new())).collect();
    let mut hyperplane = Vec::new();
    let q = field.order();
    for mtx in g.iter() {
        if mtx.in_t() {
            let nu = string_label(&mtx)?;
            let slot = nu.values().iter().fold(0, |acc, x| acc * q + x.index());
            strings[slot].1.push(mtx);
        } else {
            hyperplane.push(mtx);
        }
    }
    Ok(StringPartition { hyperplane, strings })
}
