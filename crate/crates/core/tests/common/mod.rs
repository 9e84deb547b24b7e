//! Test-only oracles and corpus generation. Nothing here calls into the
//! homology, functor or bounds layers; the oracles rebuild what they need from
//! maps, elements and plain row reduction.
#![allow(dead_code)]

use oi_core::combinatorics::{enumerate_maps, IncreasingMap};
use oi_core::field::{FieldSpec, Scalar};
use oi_core::linalg::{rref, Matrix, Subspace};
use oi_core::module::{act, element_vector, Element, FreeModule, Presentation, Term};
use rand::Rng;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn f5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

pub fn map(values: &[usize], target: usize) -> IncreasingMap {
    IncreasingMap::new(values.to_vec(), target).unwrap()
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn ramos(field: FieldSpec) -> Presentation {
    let free = FreeModule::new(vec![1]);
    let rel = Element::new(
        &free,
        2,
        vec![Term {
            gen: 0,
            map: map(&[1], 2),
            coeff: field.one(),
        }],
    )
    .unwrap();
    Presentation::new(field, free, vec![rel]).unwrap()
}

pub fn example42(field: FieldSpec) -> Presentation {
    Presentation::free_module(field, vec![1, 0])
}

/// `W_n` as the span of `β w` over every relation `w` and every `β: [s] -> [n]`.
pub fn brute_relation_space(p: &Presentation, n: usize) -> Subspace {
    let field = p.field();
    let dim = p.free().dim(n).unwrap();
    let mut rows = Vec::new();
    for rel in p.relations().iter().filter(|r| r.degree() <= n) {
        for beta in enumerate_maps(rel.degree(), n).unwrap() {
            let image = act(&beta, rel).unwrap();
            rows.push(element_vector(p.free(), field, &image).unwrap());
        }
    }
    Subspace::from_vectors(field, dim, rows)
}

/// `dim V_n` as free dimension minus the rank of the full composite matrix.
pub fn brute_dim(p: &Presentation, n: usize) -> usize {
    let field = p.field();
    let dim = p.free().dim(n).unwrap();
    let mut rows = Vec::new();
    for rel in p.relations().iter().filter(|r| r.degree() <= n) {
        for beta in enumerate_maps(rel.degree(), n).unwrap() {
            let image = act(&beta, rel).unwrap();
            rows.push(element_vector(p.free(), field, &image).unwrap());
        }
    }
    if rows.is_empty() {
        return dim;
    }
    let m = Matrix::from_rows(field, dim, rows).unwrap();
    dim - rref(&m).1
}

/// Span of `β F_m` for every `m < n` and every `β: [m] -> [n]`, plus `W_n`.
pub fn brute_lower_span(p: &Presentation, n: usize) -> Subspace {
    let field = p.field();
    let mut s = brute_relation_space(p, n);
    for m in 0..n {
        for beta in enumerate_maps(m, n).unwrap() {
            for (j, &d) in p.free().degrees().iter().enumerate() {
                for alpha in enumerate_maps(d, m).unwrap() {
                    let e = Element::new(
                        p.free(),
                        m,
                        vec![Term {
                            gen: j,
                            map: alpha,
                            coeff: field.one(),
                        }],
                    )
                    .unwrap();
                    let image = act(&beta, &e).unwrap();
                    s.insert(element_vector(p.free(), field, &image).unwrap());
                }
            }
        }
    }
    s
}

/// `V` in degrees `0..=top` with an explicit basis per degree, as a
/// stand-alone model for the Koszul oracle.
pub struct QuotientModel {
    field: FieldSpec,
    free: FreeModule,
    relations: Vec<Subspace>,
    bases: Vec<Vec<usize>>,
}

impl QuotientModel {
    pub fn new(p: &Presentation, top: usize) -> Self {
        let relations: Vec<Subspace> = (0..=top).map(|n| brute_relation_space(p, n)).collect();
        let bases = relations.iter().map(|w| w.free_coordinates()).collect();
        QuotientModel {
            field: p.field(),
            free: p.free().clone(),
            relations,
            bases,
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].len()
    }

    /// Matrix of `V(f): V_a -> V_b` in the quotient bases, as a list of columns.
    pub fn induced_map(&self, f: &IncreasingMap) -> Vec<Vec<Scalar>> {
        let (a, b) = (f.source(), f.target());
        let target_dim = self.free.dim(b).unwrap();
        let index = self.free.action_index_map(f).unwrap();
        self.bases[a]
            .iter()
            .map(|&c| {
                let mut v = vec![self.field.zero(); target_dim];
                v[index[c]] = self.field.one();
                let reduced = self.relations[b].reduce(v);
                self.bases[b].iter().map(|&k| reduced[k].clone()).collect()
            })
            .collect()
    }
}

/// Koszul complex of OI in degree `n`:
/// `C_i = ⊕_{T ⊆ [n], |T| = i} V_{n-i}` with the alternating sum of the
/// inclusions `[n] \ T ⊂ [n] \ (T - t)`.
pub fn koszul_differential(model: &QuotientModel, n: usize, i: usize) -> Matrix {
    let field = model.field;
    let src_subsets = enumerate_maps(i, n).unwrap();
    let dst_subsets = enumerate_maps(i - 1, n).unwrap();
    let src_block = model.dim(n - i);
    let dst_block = model.dim(n - i + 1);
    let mut m = Matrix::zeros(field, dst_subsets.len() * dst_block, src_subsets.len() * src_block);
    for (si, t) in src_subsets.iter().enumerate() {
        let t = t.values();
        let complement: Vec<usize> = (1..=n).filter(|x| !t.contains(x)).collect();
        for k in 0..t.len() {
            let smaller: Vec<usize> = t.iter().copied().filter(|&x| x != t[k]).collect();
            let di = dst_subsets.iter().position(|s| s.values() == smaller.as_slice()).unwrap();
            let bigger: Vec<usize> = (1..=n).filter(|x| !smaller.contains(x)).collect();
            let positions: Vec<usize> = complement
                .iter()
                .map(|x| bigger.iter().position(|y| y == x).unwrap() + 1)
                .collect();
            let phi = IncreasingMap::new(positions, bigger.len()).unwrap();
            let sign = if k % 2 == 0 { field.one() } else { -&field.one() };
            for (col, image) in model.induced_map(&phi).into_iter().enumerate() {
                for (row, x) in image.into_iter().enumerate() {
                    if !x.is_zero() {
                        let r = di * dst_block + row;
                        let c = si * src_block + col;
                        let old = m.get(r, c).clone();
                        m.set(r, c, &old + &(&sign * &x));
                    }
                }
            }
        }
    }
    m
}

fn koszul_rank(model: &QuotientModel, n: usize, i: usize) -> usize {
    if i == 0 || i > n {
        return 0;
    }
    let m = koszul_differential(model, n, i);
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    rref(&m).1
}

/// `dim H_i(V)_n` from the Koszul complex.
pub fn koszul_homology(p: &Presentation, i: usize, n: usize) -> usize {
    let model = QuotientModel::new(p, n);
    koszul_homology_in(&model, i, n)
}

pub fn koszul_homology_in(model: &QuotientModel, i: usize, n: usize) -> usize {
    if i > n {
        return 0;
    }
    let chain_dim = binom(n, i) * model.dim(n - i);
    chain_dim - koszul_rank(model, n, i) - koszul_rank(model, n, i + 1)
}

/// Random finitely presented module.
pub struct RandomSpec {
    pub field: FieldSpec,
    pub max_generators: usize,
    pub max_generator_degree: usize,
    pub max_relations: usize,
    pub max_relation_degree: usize,
    pub max_terms: usize,
}

pub fn random_presentation<R: Rng>(rng: &mut R, spec: &RandomSpec) -> Presentation {
    let field = spec.field;
    let gens = rng.gen_range(1..=spec.max_generators);
    let degrees: Vec<usize> = (0..gens)
        .map(|_| rng.gen_range(0..=spec.max_generator_degree))
        .collect();
    let free = FreeModule::new(degrees.clone());
    let min_deg = *degrees.iter().min().unwrap();
    let mut relations = Vec::new();
    let n_rel = rng.gen_range(0..=spec.max_relations);
    for _ in 0..n_rel {
        if min_deg > spec.max_relation_degree {
            break;
        }
        let s = rng.gen_range(min_deg..=spec.max_relation_degree);
        let basis: Vec<(usize, IncreasingMap)> = degrees
            .iter()
            .enumerate()
            .flat_map(|(j, &d)| enumerate_maps(d, s).unwrap().into_iter().map(move |a| (j, a)))
            .collect();
        let n_terms = rng.gen_range(1..=spec.max_terms);
        let terms = (0..n_terms)
            .map(|_| {
                let (gen, map) = basis[rng.gen_range(0..basis.len())].clone();
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-2i64..=2);
                }
                Term {
                    gen,
                    map,
                    coeff: field.from_i64(c),
                }
            })
            .collect();
        let e = Element::new(&free, s, terms).unwrap();
        if !e.is_zero() {
            relations.push(e);
        }
    }
    Presentation::new(field, free, relations).unwrap()
}

/// Presentations whose top generator degree equals the generation degree,
/// as the quotient construction requires.
pub fn has_minimal_top(p: &Presentation) -> bool {
    let t0 = oi_core::homology::t0(p).unwrap();
    t0 >= 0 && p.max_generator_degree().map(|d| d as i64) == Some(t0)
}

/// Ramos, M(1) ⊕ M(0), and `random` presentations with `t_0 ≤ 2` and relation
/// degrees `≤ 3`, alternating ℚ and F_5. Fixed seed.
pub fn theorem_corpus(random: usize) -> Vec<Presentation> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20_240_601);
    let mut out = vec![ramos(Q), example42(Q)];
    let mut made = 0;
    while made < random {
        let field = if made % 2 == 0 { Q } else { f5() };
        let p = random_presentation(
            &mut rng,
            &RandomSpec {
                field,
                max_generators: 3,
                max_generator_degree: 2,
                max_relations: 3,
                max_relation_degree: 3,
                max_terms: 4,
            },
        );
        if has_minimal_top(&p) {
            out.push(p);
            made += 1;
        }
    }
    out
}

/// Adds `β w` for the first relation `w` and some `β` as an extra relation.
pub fn with_redundant_relation(p: &Presentation) -> Option<Presentation> {
    let w = p.relations().first()?;
    let n = w.degree() + 1;
    let beta = enumerate_maps(w.degree(), n).unwrap().pop().unwrap();
    let mut image = act(&beta, w).unwrap();
    if let Some(second) = p.relations().get(1).filter(|r| r.degree() == n) {
        // Mix in another relation so the redundant one is not a bare image.
        let mut terms = image.terms().to_vec();
        terms.extend(second.terms().iter().cloned());
        image = Element::new(p.free(), n, terms).unwrap();
    }
    Some(p.with_relation(image).unwrap())
}
