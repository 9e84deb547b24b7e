//! Homological invariants of a presented module.
//!
//! `H_0(V)_n` is `V_n` modulo the images of lower degrees. `H_1` comes from
//! the presentation's own relation module through the exact sequence
//! `0 -> H_1(V) -> H_0(W) -> H_0(F)`, which holds because free modules have
//! no higher homology. Higher `H_i` are computed on a degree window by
//! iterating syzygies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::enumerate_maps;
use crate::error::{OiError, Result};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::module::{
    one_step_image, one_step_images_of, push_forward, trailing_image, vector_element,
    FreeModule, Presentation,
};

/// Nonzero dimensions of `H_i(V)` by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub i: usize,
    pub dims: BTreeMap<usize, usize>,
    /// Entries are exact for every degree up to here.
    pub certified_through: i64,
    /// Whether the table is known to vanish past `certified_through` too.
    #[serde(skip)]
    pub complete: bool,
}

impl HomologyTable {
    fn new(i: usize, certified_through: i64, complete: bool) -> Self {
        HomologyTable {
            i,
            dims: BTreeMap::new(),
            certified_through,
            complete,
        }
    }

    fn record(&mut self, degree: usize, dim: usize) {
        if dim > 0 {
            self.dims.insert(degree, dim);
        }
    }

    /// Top nonzero degree, or -1.
    pub fn degree(&self) -> i64 {
        self.dims.keys().next_back().map_or(-1, |&d| d as i64)
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn get(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }
}

fn as_degree(d: Option<usize>) -> i64 {
    d.map_or(-1, |d| d as i64)
}

/// `dim H_0(V)_n` for every degree; complete since `H_0(F)` vanishes above
/// the generators.
pub fn h0_dims(p: &Presentation) -> Result<HomologyTable> {
    let top = p.max_generator_degree();
    let mut table = HomologyTable::new(0, as_degree(top), true);
    if let Some(top) = top {
        for n in 0..=top {
            let t = trailing_image(p, n)?;
            table.record(n, p.free().dim(n)? - t.dim());
        }
    }
    Ok(table)
}

pub fn t0(p: &Presentation) -> Result<i64> {
    Ok(h0_dims(p)?.degree())
}

/// `Σ_β β W_{n-1}` inside `F_n`.
fn relation_images(p: &Presentation, n: usize) -> Result<Subspace> {
    if n == 0 {
        return Ok(Subspace::zero(p.field(), p.free().dim(0)?));
    }
    let lower = p.relation_space(n - 1)?;
    one_step_images_of(p.free(), p.field(), &lower, n)
}

/// `dim H_0(W)_n`: minimal generators of the relation module by degree.
/// Complete: `W` is generated by the listed relations.
pub fn relation_generator_dims(p: &Presentation) -> Result<HomologyTable> {
    let top = p.max_relation_degree();
    let mut table = HomologyTable::new(0, as_degree(top), true);
    if let Some(top) = top {
        for n in 0..=top {
            let w = p.relation_space(n)?;
            table.record(n, w.dim() - relation_images(p, n)?.dim());
        }
    }
    Ok(table)
}

/// `dim H_1(V)_n = dim(W_n ∩ U^F_n) - dim U^W_n`, with `U^F`, `U^W` the
/// one-step images of `F` and `W`. Complete, since `H_1(V) ⊆ H_0(W)`.
pub fn h1_dims(p: &Presentation) -> Result<HomologyTable> {
    let top = p.max_relation_degree();
    let mut table = HomologyTable::new(1, as_degree(top), true);
    if let Some(top) = top {
        for n in 0..=top {
            let w = p.relation_space(n)?;
            let lower_free = one_step_image(p.free(), p.field(), n)?;
            let lower_rel = relation_images(p, n)?;
            table.record(n, w.intersect_dim(&lower_free)? - lower_rel.dim());
        }
    }
    Ok(table)
}

pub fn t1(p: &Presentation) -> Result<i64> {
    Ok(h1_dims(p)?.degree())
}

/// Presentation degree `max(t_0, t_1)`.
pub fn prd(p: &Presentation) -> Result<i64> {
    Ok(t0(p)?.max(t1(p)?))
}

/// A presentation of the relation module `W = ker(F -> V)`, exact in degrees
/// up to `valid_through`.
#[derive(Debug, Clone)]
pub struct Syzygy {
    pub presentation: Presentation,
    pub valid_through: usize,
    /// The lifted generators of `W`, as coordinate vectors in `F`.
    pub lifts: Vec<(usize, Vec<crate::field::Scalar>)>,
}

/// One syzygy step. Generators of `W` are lifted by scanning the RREF basis
/// of `W_s` in order and keeping the vectors not already in the one-step
/// images; the relations are found the same way among kernel vectors of the
/// induced cover, degree by degree up to `bound`.
pub fn syzygy_presentation(p: &Presentation, bound: usize) -> Result<Syzygy> {
    let field = p.field();
    let top = p.max_relation_degree();
    if let Some(top) = top {
        if bound < top {
            return Err(OiError::BoundInsufficient {
                level: 0,
                needed: top,
                bound,
            });
        }
    }
    crate::check_degree(bound)?;

    let mut lifts = Vec::new();
    for s in top.map_or(0..=0, |t| 0..=t).filter(|_| top.is_some()) {
        let mut span = relation_images(p, s)?;
        for v in p.relation_space(s)?.basis() {
            if span.insert(v.clone()) {
                lifts.push((s, v.clone()));
            }
        }
    }
    let cover = FreeModule::new(lifts.iter().map(|(s, _)| *s).collect());

    let mut relations = Vec::new();
    let mut previous_kernel: Option<Subspace> = None;
    for n in 0..=bound {
        let f_dim = p.free().dim(n)?;
        let mut columns = Vec::with_capacity(cover.dim(n)?);
        for (s, v) in &lifts {
            for beta in enumerate_maps(*s, n)? {
                let index = p.free().action_index_map(&beta)?;
                columns.push(push_forward(field, &index, f_dim, v));
            }
        }
        let kernel = if columns.is_empty() {
            Subspace::zero(field, 0)
        } else {
            kernel_basis(&Matrix::from_columns(field, f_dim, &columns)?)
        };
        let mut span = match &previous_kernel {
            Some(lower) => one_step_images_of(&cover, field, lower, n)?,
            None => Subspace::zero(field, kernel.ambient_dim()),
        };
        for v in kernel.basis() {
            if span.insert(v.clone()) {
                relations.push(vector_element(&cover, n, v)?);
            }
        }
        previous_kernel = Some(kernel);
    }

    Ok(Syzygy {
        presentation: Presentation::new(field, cover, relations)?,
        valid_through: bound,
        lifts,
    })
}

/// `H_i(V)` on degrees up to `bound`. For `i ≥ 2` this is `H_1` of the
/// `(i-1)`-fold syzygy and is never claimed complete.
pub fn h_dims(p: &Presentation, i: usize, bound: usize) -> Result<HomologyTable> {
    match i {
        0 => return h0_dims(p),
        1 => return h1_dims(p),
        _ => {}
    }
    let mut current = p.clone();
    for level in 0..i - 1 {
        if let Some(top) = current.max_relation_degree() {
            if top > bound {
                return Err(OiError::BoundInsufficient {
                    level,
                    needed: top,
                    bound,
                });
            }
        }
        current = syzygy_presentation(&current, bound)?.presentation;
    }
    let h1 = h1_dims(&current)?;
    let mut table = HomologyTable::new(i, bound as i64, false);
    for (&n, &d) in h1.dims.range(..=bound) {
        table.record(n, d);
    }
    Ok(table)
}

/// Outcome of the `H_1 = 0` test for being semi-induced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiInducedCertificate {
    pub verdict: bool,
    pub h1_table: HomologyTable,
    pub witness_degree: Option<usize>,
}

/// Semi-induced exactly when `H_1` vanishes. The `H_1` table is complete, so
/// the verdict is too.
pub fn is_semi_induced(p: &Presentation) -> Result<SemiInducedCertificate> {
    let h1_table = h1_dims(p)?;
    let witness_degree = h1_table.dims.keys().next().copied();
    Ok(SemiInducedCertificate {
        verdict: witness_degree.is_none(),
        h1_table,
        witness_degree,
    })
}

/// Multiplicities `a_k` of `M(k)` in the induced filtration quotients, so that
/// `dim V_n = Σ_k a_k C(n, k)`.
pub fn filtration_multiplicities(p: &Presentation) -> Result<BTreeMap<usize, usize>> {
    let cert = is_semi_induced(p)?;
    if let Some(w) = cert.witness_degree {
        return Err(OiError::NotSemiInduced(w));
    }
    Ok(h0_dims(p)?.dims)
}
