//! Finitely presented OI-modules and their degreewise evaluation.
//!
//! A [`Presentation`] is a free module `F = ⊕_j M(d_j)` together with a list
//! of homogeneous relations generating `W ⊆ F`. In degree `n` the basis of
//! `F_n` is the set of pairs `(j, α)` with `α: [d_j] -> [n]`, ordered by `j`
//! and then by the lexicographic rank of `α`. `V_n = F_n / W_n` is never
//! materialized; everything is phrased through subspaces of `F_n`.

use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binom, compose, enumerate_maps, rank_map, unrank_map, IncreasingMap};
use crate::error::{OiError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Subspace;

/// `⊕_j M(d_j)`, with the generator order fixing the coordinate block order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeModule {
    degrees: Vec<usize>,
}

impl FreeModule {
    pub fn new(degrees: Vec<usize>) -> Self {
        FreeModule { degrees }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.iter().copied().max()
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        crate::check_degree(n)?;
        Ok(self.degrees.iter().map(|&d| binom(n, d)).sum())
    }

    /// Start of each generator's block inside `F_n`.
    pub fn offsets(&self, n: usize) -> Vec<usize> {
        let mut acc = 0;
        self.degrees
            .iter()
            .map(|&d| {
                let here = acc;
                acc += binom(n, d);
                here
            })
            .collect()
    }

    pub fn coordinate(&self, gen: usize, alpha: &IncreasingMap) -> usize {
        self.offsets(alpha.target())[gen] + rank_map(alpha)
    }

    /// Inverse of [`FreeModule::coordinate`].
    pub fn basis_element(&self, n: usize, index: usize) -> Result<(usize, IncreasingMap)> {
        let mut rest = index;
        for (j, &d) in self.degrees.iter().enumerate() {
            let block = binom(n, d);
            if rest < block {
                return Ok((j, unrank_map(d, n, rest)?));
            }
            rest -= block;
        }
        Err(OiError::InvalidArgument(format!(
            "coordinate {index} out of range for F_{n}"
        )))
    }

    /// Where each basis element of `F_s` goes under `β: [s] -> [n]`.
    pub fn action_index_map(&self, beta: &IncreasingMap) -> Result<Vec<usize>> {
        let (s, n) = (beta.source(), beta.target());
        let target_offsets = self.offsets(n);
        let mut out = Vec::with_capacity(self.dim(s)?);
        for (j, &d) in self.degrees.iter().enumerate() {
            for alpha in enumerate_maps(d, s)? {
                let image = compose(beta, &alpha)?;
                out.push(target_offsets[j] + rank_map(&image));
            }
        }
        Ok(out)
    }

    /// Action of `β` on a coordinate vector of `F_{β.source}`.
    pub fn act_vector(&self, field: FieldSpec, beta: &IncreasingMap, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let index = self.action_index_map(beta)?;
        if index.len() != v.len() {
            return Err(OiError::AmbientMismatch(v.len(), index.len()));
        }
        Ok(push_forward(field, &index, self.dim(beta.target())?, v))
    }
}

pub(crate) fn push_forward(field: FieldSpec, index: &[usize], target_dim: usize, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); target_dim];
    for (x, &to) in v.iter().zip(index) {
        if !x.is_zero() {
            out[to] = x.clone();
        }
    }
    out
}

/// `dim F_n = Σ_j C(n, d_j)`.
pub fn free_dim(free: &FreeModule, n: usize) -> Result<usize> {
    free.dim(n)
}

/// One term `c · α` in the summand of generator `gen`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub gen: usize,
    pub map: IncreasingMap,
    pub coeff: Scalar,
}

/// A homogeneous element of a free module, kept normalized: terms sorted by
/// coordinate, no repeated `(gen, map)` pairs, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    degree: usize,
    terms: Vec<Term>,
}

impl Element {
    pub fn zero(degree: usize) -> Self {
        Element {
            degree,
            terms: Vec::new(),
        }
    }

    /// Validates the terms against `free` and normalizes them.
    pub fn new(free: &FreeModule, degree: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            let Some(&d) = free.degrees.get(t.gen) else {
                return Err(OiError::MalformedElement(format!(
                    "generator index {} out of range ({} generators)",
                    t.gen,
                    free.rank()
                )));
            };
            if t.map.source() != d {
                return Err(OiError::MalformedElement(format!(
                    "map {} must start at [{d}] for generator {}",
                    t.map, t.gen
                )));
            }
            if t.map.target() != degree {
                return Err(OiError::MalformedElement(format!(
                    "map {} does not end in the element degree [{degree}]",
                    t.map
                )));
            }
        }
        Ok(Element::normalized(degree, terms))
    }

    fn normalized(degree: usize, mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| (a.gen, rank_map(&a.map)).cmp(&(b.gen, rank_map(&b.map))));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.gen == t.gen && last.map == t.map => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Element { degree, terms: out }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 (degree {})", self.degree);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let vals: Vec<String> = t.map.values().iter().map(|v| v.to_string()).collect();
                format!("{}*g{}({})", t.coeff, t.gen, vals.join(","))
            })
            .collect();
        write!(f, "{} (degree {})", parts.join(" + "), self.degree)
    }
}

/// Coordinates of `e` in `F_{e.degree}`.
pub fn element_vector(free: &FreeModule, field: FieldSpec, e: &Element) -> Result<Vec<Scalar>> {
    let n = e.degree;
    let offsets = free.offsets(n);
    let mut v = vec![field.zero(); free.dim(n)?];
    for t in &e.terms {
        if t.gen >= free.rank() || t.map.source() != free.degrees[t.gen] || t.map.target() != n {
            return Err(OiError::MalformedElement(format!("term {} does not fit", t.map)));
        }
        if !field.belongs(&t.coeff) {
            return Err(OiError::FieldMismatch(field.to_string(), t.coeff.field().to_string()));
        }
        v[offsets[t.gen] + rank_map(&t.map)] = t.coeff.clone();
    }
    Ok(v)
}

/// Inverse of [`element_vector`].
pub fn vector_element(free: &FreeModule, degree: usize, v: &[Scalar]) -> Result<Element> {
    let expected = free.dim(degree)?;
    if v.len() != expected {
        return Err(OiError::AmbientMismatch(v.len(), expected));
    }
    let mut terms = Vec::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (gen, map) = free.basis_element(degree, i)?;
        terms.push(Term {
            gen,
            map,
            coeff: c.clone(),
        });
    }
    Ok(Element { degree, terms })
}

/// `β · e`: compose `β` onto every term.
pub fn act(beta: &IncreasingMap, e: &Element) -> Result<Element> {
    if beta.source() != e.degree {
        return Err(OiError::ComposeMismatch {
            inner_target: e.degree,
            outer_source: beta.source(),
        });
    }
    let terms = e
        .terms
        .iter()
        .map(|t| {
            Ok(Term {
                gen: t.gen,
                map: compose(beta, &t.map)?,
                coeff: t.coeff.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Element::normalized(beta.target(), terms))
}

/// A free module modulo the submodule generated by homogeneous relations.
///
/// Immutable once built. The relation subspaces `W_n` are memoized; clones
/// share the memo.
#[derive(Clone)]
pub struct Presentation {
    field: FieldSpec,
    free: FreeModule,
    relations: Vec<Element>,
    cache: Arc<Mutex<Vec<Arc<Subspace>>>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("field", &self.field)
            .field("free", &self.free)
            .field("relations", &self.relations)
            .finish()
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.free == other.free && self.relations == other.relations
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn new(field: FieldSpec, free: FreeModule, relations: Vec<Element>) -> Result<Self> {
        field.validate()?;
        for (k, rel) in relations.iter().enumerate() {
            for t in &rel.terms {
                if !field.belongs(&t.coeff) {
                    return Err(OiError::MalformedPresentation(format!(
                        "relation {k}: coefficient {} is not in {field}",
                        t.coeff
                    )));
                }
            }
            // Re-validate shape: elements may come from another free module.
            Element::new(&free, rel.degree, rel.terms.clone()).map_err(|e| {
                OiError::MalformedPresentation(format!("relation {k}: {e}"))
            })?;
        }
        Ok(Presentation {
            field,
            free,
            relations,
            cache: Arc::new(Mutex::new(Vec::new())),
        })
    }

    /// `M(d_1) ⊕ ... ⊕ M(d_k)` with no relations.
    pub fn free_module(field: FieldSpec, degrees: Vec<usize>) -> Self {
        Presentation::new(field, FreeModule::new(degrees), Vec::new()).expect("free module is valid")
    }

    pub fn zero(field: FieldSpec) -> Self {
        Presentation::free_module(field, Vec::new())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn free(&self) -> &FreeModule {
        &self.free
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn max_relation_degree(&self) -> Option<usize> {
        self.relations.iter().map(|r| r.degree).max()
    }

    pub fn max_generator_degree(&self) -> Option<usize> {
        self.free.max_degree()
    }

    /// Same module with one more relation appended.
    pub fn with_relation(&self, rel: Element) -> Result<Self> {
        let mut relations = self.relations.clone();
        relations.push(rel);
        Presentation::new(self.field, self.free.clone(), relations)
    }

    /// `W_n`, built as the relations of degree `n` plus the one-step images of
    /// `W_{n-1}`.
    pub fn relation_space(&self, n: usize) -> Result<Arc<Subspace>> {
        crate::check_degree(n)?;
        let mut cache = self.cache.lock().expect("relation cache poisoned");
        while cache.len() <= n {
            let m = cache.len();
            let next = self.next_relation_space(m, cache.last().map(Arc::as_ref))?;
            cache.push(Arc::new(next));
        }
        Ok(Arc::clone(&cache[n]))
    }

    fn next_relation_space(&self, n: usize, previous: Option<&Subspace>) -> Result<Subspace> {
        let dim = self.free.dim(n)?;
        let mut w = Subspace::zero(self.field, dim);
        for rel in self.relations.iter().filter(|r| r.degree == n) {
            w.insert(element_vector(&self.free, self.field, rel)?);
        }
        if let Some(prev) = previous {
            extend_by_one_step_images(&self.free, self.field, prev, n, &mut w)?;
        }
        Ok(w)
    }

    pub fn dim_at(&self, n: usize) -> Result<usize> {
        Ok(self.free.dim(n)? - self.relation_space(n)?.dim())
    }

    pub fn is_zero_module(&self) -> bool {
        // Nothing survives above the generators, so the window is complete.
        let top = self.max_generator_degree().unwrap_or(0);
        (0..=top).all(|n| self.dim_at(n).map_or(false, |d| d == 0))
    }
}

/// `W_n` as a subspace of `F_n` coordinates.
pub fn relation_space(p: &Presentation, n: usize) -> Result<Arc<Subspace>> {
    p.relation_space(n)
}

/// `dim V_n`.
pub fn dim_at(p: &Presentation, n: usize) -> Result<usize> {
    p.dim_at(n)
}

/// `dim V_n` for `n0 ≤ n ≤ n1`.
pub fn hilbert(p: &Presentation, n0: usize, n1: usize) -> Result<Vec<usize>> {
    if n0 > n1 {
        return Err(OiError::InvalidArgument(format!("empty window [{n0}, {n1}]")));
    }
    (n0..=n1).map(|n| p.dim_at(n)).collect()
}

/// Degreewise snapshot of `V_n = F_n / W_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub degree: usize,
    pub free_dim: usize,
    pub relation_subspace: Arc<Subspace>,
    pub dim: usize,
}

pub fn evaluate(p: &Presentation, n: usize) -> Result<Evaluation> {
    let relation_subspace = p.relation_space(n)?;
    let free_dim = p.free.dim(n)?;
    Ok(Evaluation {
        degree: n,
        free_dim,
        dim: free_dim - relation_subspace.dim(),
        relation_subspace,
    })
}

/// Span of the one-step images `β F_{n-1}` for all `β: [n-1] -> [n]`, without
/// `W_n`. Any map into `[n]` from a smaller `[m]` factors through one of these.
pub(crate) fn one_step_image(free: &FreeModule, field: FieldSpec, n: usize) -> Result<Subspace> {
    let dim = free.dim(n)?;
    if n == 0 {
        return Ok(Subspace::zero(field, dim));
    }
    let mut hit = vec![false; dim];
    for beta in enumerate_maps(n - 1, n)? {
        for i in free.action_index_map(&beta)? {
            hit[i] = true;
        }
    }
    Ok(Subspace::coordinate(
        field,
        dim,
        hit.iter().enumerate().filter(|(_, h)| **h).map(|(i, _)| i),
    ))
}

/// Inserts `β v` into `into` for every basis vector `v` of `lower ⊆ F_{n-1}`
/// and every `β: [n-1] -> [n]`.
pub(crate) fn extend_by_one_step_images(
    free: &FreeModule,
    field: FieldSpec,
    lower: &Subspace,
    n: usize,
    into: &mut Subspace,
) -> Result<()> {
    if n == 0 || lower.is_zero() {
        return Ok(());
    }
    let dim = free.dim(n)?;
    for beta in enumerate_maps(n - 1, n)? {
        let index = free.action_index_map(&beta)?;
        for v in lower.basis() {
            into.insert(push_forward(field, &index, dim, v));
        }
    }
    Ok(())
}

/// `Σ_β β·lower` for a subspace `lower ⊆ F_{n-1}`.
pub(crate) fn one_step_images_of(
    free: &FreeModule,
    field: FieldSpec,
    lower: &Subspace,
    n: usize,
) -> Result<Subspace> {
    let mut out = Subspace::zero(field, free.dim(n)?);
    extend_by_one_step_images(free, field, lower, n, &mut out)?;
    Ok(out)
}

/// `W_n + Σ_β β F_{n-1}` inside `F_n`; its codimension is `dim H_0(V)_n`.
/// In degree 0 this is `W_0`.
pub fn trailing_image(p: &Presentation, n: usize) -> Result<Subspace> {
    let w = p.relation_space(n)?;
    let images = one_step_image(&p.free, p.field, n)?;
    w.join(&images)
}

/// `dim (V_{≺d})_n`: the part of `V_n` generated by `V_m` with `m < d`.
pub fn submodule_below_dim(p: &Presentation, d: usize, n: usize) -> Result<usize> {
    if d == 0 {
        return Ok(0);
    }
    if n < d {
        return p.dim_at(n);
    }
    let w = p.relation_space(n)?;
    let dim = p.free.dim(n)?;
    let mut hit = vec![false; dim];
    for beta in enumerate_maps(d - 1, n)? {
        for i in p.free.action_index_map(&beta)? {
            hit[i] = true;
        }
    }
    let images = Subspace::coordinate(
        p.field,
        dim,
        hit.iter().enumerate().filter(|(_, h)| **h).map(|(i, _)| i),
    );
    Ok(w.join(&images)?.dim() - w.dim())
}

/// `P1 ⊕ P2`: generators and relations of `P2` are appended after those of `P1`.
pub fn direct_sum(p1: &Presentation, p2: &Presentation) -> Result<Presentation> {
    if p1.field != p2.field {
        return Err(OiError::FieldMismatch(p1.field.to_string(), p2.field.to_string()));
    }
    let shift = p1.free.rank();
    let mut degrees = p1.free.degrees.clone();
    degrees.extend_from_slice(&p2.free.degrees);
    let mut relations = p1.relations.clone();
    relations.extend(p2.relations.iter().map(|r| Element {
        degree: r.degree,
        terms: r
            .terms
            .iter()
            .map(|t| Term {
                gen: t.gen + shift,
                ..t.clone()
            })
            .collect(),
    }));
    Presentation::new(p1.field, FreeModule::new(degrees), relations)
}

/// `M(n)^{⊕ multiplicity}`.
pub fn induced(field: FieldSpec, n: usize, multiplicity: usize) -> Presentation {
    Presentation::free_module(field, vec![n; multiplicity])
}

// ---------------------------------------------------------------------------
// File format

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    field: FieldSpec,
    generators: Vec<usize>,
    relations: Vec<RelationFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    degree: usize,
    terms: Vec<TermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermFile {
    gen: usize,
    map: Vec<usize>,
    coeff: String,
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text)
            .map_err(|e| OiError::MalformedPresentation(e.to_string()))?;
        file.field.validate()?;
        let field = file.field;
        let free = FreeModule::new(file.generators);
        let mut relations = Vec::with_capacity(file.relations.len());
        for (k, rel) in file.relations.into_iter().enumerate() {
            let wrap = |e: OiError| OiError::MalformedPresentation(format!("relation {k}: {e}"));
            let terms = rel
                .terms
                .into_iter()
                .map(|t| {
                    Ok(Term {
                        gen: t.gen,
                        map: IncreasingMap::new(t.map, rel.degree)?,
                        coeff: field.parse(&t.coeff)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map_err(wrap)?;
            relations.push(Element::new(&free, rel.degree, terms).map_err(wrap)?);
        }
        Presentation::new(field, free, relations)
    }

    /// Canonical compact JSON.
    pub fn to_json(&self) -> String {
        let file = PresentationFile {
            field: self.field,
            generators: self.free.degrees.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationFile {
                    degree: r.degree,
                    terms: r
                        .terms
                        .iter()
                        .map(|t| TermFile {
                            gen: t.gen,
                            map: t.map.values().to_vec(),
                            coeff: t.coeff.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("presentation serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn map(values: &[usize], target: usize) -> IncreasingMap {
        IncreasingMap::new(values.to_vec(), target).unwrap()
    }

    fn term(gen: usize, values: &[usize], target: usize, c: i64) -> Term {
        Term {
            gen,
            map: map(values, target),
            coeff: Q.from_i64(c),
        }
    }

    fn ramos() -> Presentation {
        let free = FreeModule::new(vec![1]);
        let rel = Element::new(&free, 2, vec![term(0, &[1], 2, 1)]).unwrap();
        Presentation::new(Q, free, vec![rel]).unwrap()
    }

    #[test]
    fn free_dims() {
        assert_eq!(free_dim(&FreeModule::new(vec![1, 0]), 3).unwrap(), 4);
        assert_eq!(free_dim(&FreeModule::new(vec![2]), 5).unwrap(), 10);
        assert_eq!(free_dim(&FreeModule::new(vec![]), 7).unwrap(), 0);
    }

    #[test]
    fn element_vector_examples() {
        let free = FreeModule::new(vec![1, 0]);
        let e = Element::new(&free, 3, vec![term(0, &[1], 3, 1)]).unwrap();
        let v = element_vector(&free, Q, &e).unwrap();
        assert!(v[0].is_one() && v[1..].iter().all(Scalar::is_zero));
        assert!(element_vector(&free, Q, &Element::zero(3))
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        let e = Element::new(&free, 3, vec![term(0, &[3], 3, 2), term(1, &[], 3, -1)]).unwrap();
        let back = vector_element(&free, 3, &element_vector(&free, Q, &e).unwrap()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn element_normalization_and_validation() {
        let free = FreeModule::new(vec![1]);
        let e = Element::new(&free, 2, vec![term(0, &[2], 2, 1), term(0, &[1], 2, 3), term(0, &[2], 2, -1)])
            .unwrap();
        assert_eq!(e.terms(), &[term(0, &[1], 2, 3)]);
        assert!(Element::new(&free, 3, vec![term(0, &[1], 2, 1)]).is_err());
        assert!(Element::new(&free, 2, vec![term(1, &[1], 2, 1)]).is_err());
        assert!(Element::new(&free, 2, vec![term(0, &[1, 2], 2, 1)]).is_err());
    }

    #[test]
    fn act_examples() {
        let free = FreeModule::new(vec![1]);
        let e = Element::new(&free, 2, vec![term(0, &[2], 2, 5)]).unwrap();
        assert_eq!(act(&IncreasingMap::identity(2), &e).unwrap(), e);
        let moved = act(&map(&[1, 3], 3), &e).unwrap();
        assert_eq!(moved.terms(), &[term(0, &[3], 3, 5)]);
        assert!(act(&map(&[1], 3), &e).is_err());
    }

    #[test]
    fn ramos_relation_space_and_dims() {
        let p = ramos();
        assert_eq!(p.relation_space(3).unwrap().dim(), 2);
        assert_eq!(hilbert(&p, 0, 6).unwrap(), vec![0, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn example_m1_m0_dims() {
        let p = Presentation::free_module(Q, vec![1, 0]);
        for n in 0..8 {
            assert_eq!(p.dim_at(n).unwrap(), n + 1);
            assert!(p.relation_space(n).unwrap().is_zero());
        }
    }

    #[test]
    fn trailing_image_examples() {
        let m2 = Presentation::free_module(Q, vec![2]);
        let t = trailing_image(&m2, 2).unwrap();
        assert_eq!(m2.free().dim(2).unwrap() - t.dim(), 1);
        let p = ramos();
        let t = trailing_image(&p, 2).unwrap();
        assert_eq!(t.dim(), p.free().dim(2).unwrap());
        assert!(trailing_image(&p, 0).unwrap().is_zero());
        // Above every generator degree nothing new appears.
        let mixed = Presentation::free_module(Q, vec![0, 2, 1]);
        for n in 3..7 {
            let t = trailing_image(&mixed, n).unwrap();
            assert_eq!(t.dim(), mixed.free().dim(n).unwrap());
        }
    }

    #[test]
    fn submodule_below_examples() {
        let p = Presentation::free_module(Q, vec![1, 0]);
        for n in 0..6 {
            assert_eq!(submodule_below_dim(&p, 0, n).unwrap(), 0);
            assert_eq!(submodule_below_dim(&p, 1, n).unwrap(), 1);
        }
        let r = ramos();
        assert_eq!(submodule_below_dim(&r, 4, 3).unwrap(), r.dim_at(3).unwrap());
        for n in 0..7 {
            let mut last = 0;
            for d in 0..=n + 2 {
                let here = submodule_below_dim(&r, d, n).unwrap();
                assert!(here >= last);
                last = here;
            }
            assert_eq!(last, r.dim_at(n).unwrap());
        }
    }

    #[test]
    fn sums_and_induced() {
        let a = ramos();
        let b = Presentation::free_module(Q, vec![1, 0]);
        let s = direct_sum(&a, &b).unwrap();
        for n in 0..7 {
            assert_eq!(s.dim_at(n).unwrap(), a.dim_at(n).unwrap() + b.dim_at(n).unwrap());
        }
        let c = induced(Q, 0, 1);
        assert!((0..6).all(|n| c.dim_at(n).unwrap() == 1));
        let i23 = induced(Q, 2, 3);
        assert!((0..8).all(|n| i23.dim_at(n).unwrap() == 3 * binom(n, 2)));
        let f5 = Presentation::zero(FieldSpec::prime(5).unwrap());
        assert!(direct_sum(&a, &f5).is_err());
    }

    #[test]
    fn relation_order_does_not_matter() {
        let free = FreeModule::new(vec![1, 1]);
        let r1 = Element::new(&free, 2, vec![term(0, &[1], 2, 1), term(1, &[2], 2, 1)]).unwrap();
        let r2 = Element::new(&free, 3, vec![term(1, &[2], 3, 1)]).unwrap();
        let a = Presentation::new(Q, free.clone(), vec![r1.clone(), r2.clone()]).unwrap();
        let b = Presentation::new(Q, free, vec![r2, r1]).unwrap();
        for n in 0..7 {
            assert_eq!(a.relation_space(n).unwrap(), b.relation_space(n).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"field":{"kind":"rationals"},"generators":[1],"relations":[{"degree":2,"terms":[{"gen":0,"map":[1],"coeff":"1/1"}]}]}"#;
        let p = Presentation::from_json(text).unwrap();
        assert_eq!(p, ramos());
        assert_eq!(p.to_json(), text);
        let f5 = r#"{"field":{"kind":"prime","p":5},"generators":[0],"relations":[{"degree":1,"terms":[{"gen":0,"map":[],"coeff":"7"}]}]}"#;
        let p = Presentation::from_json(f5).unwrap();
        assert!(p.to_json().contains(r#""coeff":"2""#));
    }

    #[test]
    fn json_rejects_bad_input() {
        let mixed = r#"{"field":{"kind":"rationals"},"generators":[1],"relations":[{"degree":2,"terms":[{"gen":0,"map":[3],"coeff":"1"}]}]}"#;
        assert!(matches!(Presentation::from_json(mixed), Err(OiError::MalformedPresentation(_))));
        let bad_prime = r#"{"field":{"kind":"prime","p":6},"generators":[],"relations":[]}"#;
        assert!(Presentation::from_json(bad_prime).is_err());
        let extra = r#"{"field":{"kind":"rationals"},"generators":[],"relations":[],"x":1}"#;
        assert!(Presentation::from_json(extra).is_err());
        let wrong_gen = r#"{"field":{"kind":"rationals"},"generators":[1],"relations":[{"degree":2,"terms":[{"gen":1,"map":[1],"coeff":"1"}]}]}"#;
        assert!(Presentation::from_json(wrong_gen).is_err());
    }
}
