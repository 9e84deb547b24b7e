//! The shift functor, the natural map `V -> ΣV`, and the quotient
//! `V̄ = Σ^r V / (Σ^r V)_{≺d}` with `d = t_0(V)`.
//!
//! `Σ^r M(m)` splits as `⊕_{E ⊆ [r], |E| ≤ m} M(m - |E|)` through
//! [`embed_prefix`](crate::combinatorics::embed_prefix); shifting a
//! presentation re-coordinatizes `W_{m+r}` along that splitting. The summands
//! with `E = ∅` over the top-degree generators form the free module `P`, and
//! `V̄ = P / Ŵ` where `Ŵ` is the projection of `Σ^r W` onto `P`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::combinatorics::{decompose_shifted, enumerate_maps, hat, iota, sigma_lift, subsets_by_size};
use crate::error::{OiError, Result};
use crate::field::Scalar;
use crate::homology::{prd, relation_generator_dims, t0};
use crate::linalg::Subspace;
use crate::module::{
    one_step_images_of, push_forward, vector_element, Element, FreeModule, Presentation, Term,
};

/// How the generators of `Σ^r F` arise from those of `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedDecomposition {
    pub r: usize,
    /// `(original generator, E)` per new generator, ordered by generator and
    /// then by `E` (size first, then lexicographic).
    pub summand_index: Vec<(usize, Vec<usize>)>,
    pub new_generator_degrees: Vec<usize>,
}

impl ShiftedDecomposition {
    pub fn new(free: &FreeModule, r: usize) -> Result<Self> {
        let mut summand_index = Vec::new();
        let mut new_generator_degrees = Vec::new();
        for (j, &d) in free.degrees().iter().enumerate() {
            for e in subsets_by_size(r, d)? {
                new_generator_degrees.push(d - e.len());
                summand_index.push((j, e));
            }
        }
        Ok(ShiftedDecomposition {
            r,
            summand_index,
            new_generator_degrees,
        })
    }

    pub fn free(&self) -> FreeModule {
        FreeModule::new(self.new_generator_degrees.clone())
    }

    /// Coordinate permutation `F_{m+r} -> (Σ^r F)_m`.
    fn coordinate_map(&self, free: &FreeModule, m: usize) -> Result<Vec<usize>> {
        let lookup: HashMap<(usize, &[usize]), usize> = self
            .summand_index
            .iter()
            .enumerate()
            .map(|(k, (j, e))| ((*j, e.as_slice()), k))
            .collect();
        let shifted = self.free();
        let n = m + self.r;
        (0..free.dim(n)?)
            .map(|i| {
                let (j, gamma) = free.basis_element(n, i)?;
                let (e, residual) = decompose_shifted(&gamma, self.r)?;
                let k = lookup[&(j, e.as_slice())];
                Ok(shifted.coordinate(k, &residual))
            })
            .collect()
    }
}

/// Presentation of `Σ^r V`. Relations are the minimal part of a degreewise
/// basis of `W_{m+r}` for `m` up to the top relation degree, which is where
/// `Σ^r W` is generated.
pub fn shift_presentation(p: &Presentation, r: usize) -> Result<(Presentation, ShiftedDecomposition)> {
    let field = p.field();
    let decomposition = ShiftedDecomposition::new(p.free(), r)?;
    let shifted_free = decomposition.free();
    let mut relations = Vec::new();
    if let Some(top) = p.max_relation_degree() {
        let mut previous: Option<Subspace> = None;
        for m in 0..=top {
            let index = decomposition.coordinate_map(p.free(), m)?;
            let dim = shifted_free.dim(m)?;
            let w = p.relation_space(m + r)?;
            let mut lower = match &previous {
                Some(prev) => one_step_images_of(&shifted_free, field, prev, m)?,
                None => Subspace::zero(field, dim),
            };
            let mut full = Subspace::zero(field, dim);
            for v in w.basis() {
                let moved = push_forward(field, &index, dim, v);
                full.insert(moved.clone());
                if lower.insert(moved.clone()) {
                    relations.push(vector_element(&shifted_free, m, &moved)?);
                }
            }
            previous = Some(full);
        }
    }
    Ok((Presentation::new(field, shifted_free, relations)?, decomposition))
}

/// `dim (Σ^r V)_n = dim V_{n+r}`.
pub fn shift_eval_dim(p: &Presentation, r: usize, n: usize) -> Result<usize> {
    p.dim_at(n + r)
}

/// Dimension of the image of `ι: V_n -> V_{n+1}`.
fn iota_image_dim(p: &Presentation, n: usize) -> Result<usize> {
    let w = p.relation_space(n + 1)?;
    let index = p.free().action_index_map(&iota(n))?;
    let mut span = (*w).clone();
    for i in index {
        span.insert(unit(p, n + 1, i)?);
    }
    Ok(span.dim() - w.dim())
}

fn unit(p: &Presentation, n: usize, i: usize) -> Result<Vec<Scalar>> {
    let mut v = vec![p.field().zero(); p.free().dim(n)?];
    v[i] = p.field().one();
    Ok(v)
}

/// `dim (κV)_n`, the kernel of `V_n -> V_{n+1}`.
pub fn kappa_dim(p: &Presentation, n: usize) -> Result<usize> {
    Ok(p.dim_at(n)? - iota_image_dim(p, n)?)
}

/// `dim (ΔV)_n`, the cokernel of `V_n -> V_{n+1}`.
pub fn delta_dim(p: &Presentation, n: usize) -> Result<usize> {
    Ok(p.dim_at(n + 1)? - iota_image_dim(p, n)?)
}

/// `dim H_0(ΔV)_n`: `V_{n+1}` modulo `ι V_n` and the images `σ(β) V_n` of the
/// shifted action, `β: [n-1] -> [n]`.
pub fn delta_h0_dim(p: &Presentation, n: usize) -> Result<usize> {
    let field = p.field();
    let dim = p.free().dim(n + 1)?;
    let mut span = (*p.relation_space(n + 1)?).clone();
    let mut maps = vec![iota(n)];
    if n > 0 {
        maps.extend(enumerate_maps(n - 1, n)?.iter().map(sigma_lift));
    }
    for f in maps {
        for i in p.free().action_index_map(&f)? {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            span.insert(v);
        }
    }
    Ok(dim - span.dim())
}

/// The ingredients of `V̄ = P / Ŵ`.
#[derive(Debug, Clone)]
pub struct VBarData {
    /// `t_0(V)`.
    pub d: usize,
    pub r: usize,
    /// Generators of degree `d`; their order is the generator order of `P`.
    pub top_generators: Vec<usize>,
    /// Relation degrees scanned: up to `t_0(W)`, where `W` is generated.
    pub search_bound: usize,
    /// The nonzero `ŵ_ℓ`, as elements of `P`.
    pub what_generators: Vec<Element>,
}

impl VBarData {
    pub fn free(&self) -> FreeModule {
        FreeModule::new(vec![self.d; self.top_generators.len()])
    }
}

fn top_generators(p: &Presentation) -> Result<(usize, Vec<usize>)> {
    let t0 = t0(p)?;
    if t0 < 0 {
        return Err(OiError::ZeroModule("generation degree"));
    }
    let top = p.max_generator_degree().expect("nonzero module has generators");
    if top as i64 > t0 {
        return Err(OiError::RedundantTopGenerator {
            max_generator: top,
            t0,
        });
    }
    let d = t0 as usize;
    let gens = (0..p.free().rank())
        .filter(|&j| p.free().degrees()[j] == d)
        .collect();
    Ok((d, gens))
}

/// For each basis vector `w` of `W_s`, `s ≤ t_0(W)`, and each `ℓ`, the element
/// `ŵ_ℓ = Σ_{i ∈ I} Σ_{α(1) = ℓ} c_{i,α} α̂` of degree `s - ℓ + 1`.
///
/// With `d = 0` the maps are empty and carry no first value; `P` is then all
/// of `Σ^r F`, and `w` itself is placed in degree `max(s - r, 0)`.
pub fn what_generators(p: &Presentation, r: usize) -> Result<VBarData> {
    let (d, top) = top_generators(p)?;
    let position: HashMap<usize, usize> = top.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let target = FreeModule::new(vec![d; top.len()]);
    let search_bound = relation_generator_dims(p)?.degree().max(0) as usize;
    let mut what = Vec::new();
    if p.relations().is_empty() {
        return Ok(VBarData {
            d,
            r,
            top_generators: top,
            search_bound,
            what_generators: what,
        });
    }
    for s in d..=search_bound {
        let w_s = p.relation_space(s)?;
        for v in w_s.basis() {
            let w = vector_element(p.free(), s, v)?;
            let top_terms: Vec<&Term> = w.terms().iter().filter(|t| position.contains_key(&t.gen)).collect();
            if d == 0 {
                let terms = top_terms
                    .iter()
                    .map(|t| Term {
                        gen: position[&t.gen],
                        map: crate::combinatorics::IncreasingMap::empty(s.saturating_sub(r)),
                        coeff: t.coeff.clone(),
                    })
                    .collect();
                let e = Element::new(&target, s.saturating_sub(r), terms)?;
                if !e.is_zero() {
                    what.push(e);
                }
                continue;
            }
            for ell in 1..=s - d + 1 {
                let mut terms = Vec::new();
                for t in top_terms.iter().filter(|t| t.map.at(1) == ell) {
                    let (_, normalized) = hat(&t.map)?;
                    terms.push(Term {
                        gen: position[&t.gen],
                        map: normalized,
                        coeff: t.coeff.clone(),
                    });
                }
                let e = Element::new(&target, s - ell + 1, terms)?;
                if !e.is_zero() {
                    what.push(e);
                }
            }
        }
    }
    Ok(VBarData {
        d,
        r,
        top_generators: top,
        search_bound,
        what_generators: what,
    })
}

/// `V̄ ≅ P / Ŵ` as a presentation: `|I|` generators of degree `d`, relations
/// the `ŵ_ℓ`.
pub fn vbar_presentation(p: &Presentation, r: usize) -> Result<Presentation> {
    let data = what_generators(p, r)?;
    Presentation::new(p.field(), data.free(), data.what_generators)
}

/// `Ŵ_n` computed directly: project a basis of `W_{n+r}` onto the `E = ∅`
/// summands of the top generators.
pub fn projected_relations(p: &Presentation, r: usize, n: usize) -> Result<Subspace> {
    let (d, top) = top_generators(p)?;
    let position: HashMap<usize, usize> = top.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let target = FreeModule::new(vec![d; top.len()]);
    let field = p.field();
    let dim = target.dim(n)?;
    let mut out = Subspace::zero(field, dim);
    let w = p.relation_space(n + r)?;
    for v in w.basis() {
        let mut projected = vec![field.zero(); dim];
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (j, gamma) = p.free().basis_element(n + r, i)?;
            let Some(&k) = position.get(&j) else { continue };
            let (e, residual) = decompose_shifted(&gamma, r)?;
            if e.is_empty() {
                projected[target.coordinate(k, &residual)] = c.clone();
            }
        }
        out.insert(projected);
    }
    Ok(out)
}

/// Pass/fail record for a windowed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub window: usize,
    pub pass: bool,
    pub first_failure: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

pub const EXPLORATORY_NOTE: &str = "exploratory: hypothesis unmet";

/// Checks `κV̄ = 0` in degrees `0..=window`. Requires `r ≥ prd(V)` unless
/// `force` is set, in which case the certificate is marked exploratory.
pub fn check_kappa_vbar(p: &Presentation, r: usize, window: usize, force: bool) -> Result<Certificate> {
    if window == 0 {
        return Err(OiError::InvalidArgument("window must be at least 1".into()));
    }
    let prd = prd(p)?;
    let unmet = (r as i64) < prd;
    if unmet && !force {
        return Err(OiError::HypothesisUnmet { r, prd });
    }
    let vbar = vbar_presentation(p, r)?;
    let mut first_failure = None;
    for n in 0..=window {
        if kappa_dim(&vbar, n)? != 0 {
            first_failure = Some(n);
            break;
        }
    }
    Ok(Certificate {
        check: "kappa-vbar".into(),
        params: BTreeMap::from([("r".to_string(), r as i64)]),
        window,
        pass: first_failure.is_none(),
        first_failure,
        note: unmet.then(|| EXPLORATORY_NOTE.to_string()),
    })
}

/// Compares the submodule generated by the `ŵ_ℓ` with the directly projected
/// `Ŵ_n` in every degree `0..=window`.
pub fn verify_what_span(p: &Presentation, r: usize, window: usize) -> Result<Certificate> {
    let vbar = vbar_presentation(p, r)?;
    let mut first_failure = None;
    for n in 0..=window {
        let generated = vbar.relation_space(n)?;
        let direct = projected_relations(p, r, n)?;
        if *generated != direct {
            first_failure = Some(n);
            break;
        }
    }
    Ok(Certificate {
        check: "what-span".into(),
        params: BTreeMap::from([("r".to_string(), r as i64)]),
        window,
        pass: first_failure.is_none(),
        first_failure,
        note: None,
    })
}
