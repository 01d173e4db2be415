use std::sync::Arc;

use num_bigint::BigInt;

use super::{ChainError, ChainMap, ReducedComplex};
use crate::groupring::{direct_product, Group, GroupHom, GroupRingElement};
use crate::linalg::LambdaMatrix;

/// Basis of `(C ⊗ D)_n`: triples `(i, a, b)` meaning `x_a ⊗ y_b` with
/// `x_a ∈ C_i`, `y_b ∈ D_{n−i}`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBasis {
    left_ranks: Vec<usize>,
    right_ranks: Vec<usize>,
    /// `degrees[n]` lists the basis triples of degree `n`.
    pub degrees: Vec<Vec<(usize, usize, usize)>>,
}

impl TensorBasis {
    fn new(left_ranks: &[usize], right_ranks: &[usize]) -> Self {
        let top = left_ranks.len() + right_ranks.len() - 2;
        let degrees = (0..=top)
            .map(|n| {
                let mut basis = Vec::new();
                for i in 0..=n {
                    let (ri, rj) = (rank(left_ranks, i), rank(right_ranks, n - i));
                    for a in 0..ri {
                        for b in 0..rj {
                            basis.push((i, a, b));
                        }
                    }
                }
                basis
            })
            .collect();
        TensorBasis { left_ranks: left_ranks.to_vec(), right_ranks: right_ranks.to_vec(), degrees }
    }

    /// Position of `x_a ⊗ y_b` (with `x_a` in degree `i`) in degree `n`.
    pub fn index(&self, n: usize, i: usize, a: usize, b: usize) -> usize {
        let offset: usize = (0..i).map(|i2| rank(&self.left_ranks, i2) * rank(&self.right_ranks, n - i2)).sum();
        offset + a * rank(&self.right_ranks, n - i) + b
    }
}

fn rank(ranks: &[usize], k: usize) -> usize {
    ranks.get(k).copied().unwrap_or(0)
}

/// `C ⊗_ℤ D` over `π × π′` with its basis bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorComplex {
    pub left: Arc<ReducedComplex>,
    pub right: Arc<ReducedComplex>,
    pub complex: Arc<ReducedComplex>,
    pub basis: TensorBasis,
}

/// `λ ↦ λ × 1`
fn embed_left(x: &GroupRingElement, product: &Group, right_order: usize) -> GroupRingElement {
    GroupRingElement::from_terms(product, x.terms().iter().map(|(g, c)| (g * right_order, c.clone())))
}

/// `μ ↦ 1 × μ`
fn embed_right(x: &GroupRingElement, product: &Group) -> GroupRingElement {
    GroupRingElement::from_terms(product, x.terms().iter().map(|(h, c)| (*h, c.clone())))
}

/// The tensor product with `d(c⊗d) = dc⊗d + (−1)^{|c|} c⊗dd`.
pub fn tensor_complexes(c: &Arc<ReducedComplex>, d: &Arc<ReducedComplex>) -> Result<TensorComplex, ChainError> {
    let product = direct_product(c.group(), d.group());
    let m = d.group().order();
    let basis = TensorBasis::new(c.ranks(), d.ranks());
    let ranks: Vec<usize> = basis.degrees.iter().map(|b| b.len()).collect();
    let mut boundaries = Vec::with_capacity(ranks.len().saturating_sub(1));
    for n in 1..ranks.len() {
        let mut bd = LambdaMatrix::zeros(&product, ranks[n - 1], ranks[n]);
        for (col, &(i, a, b)) in basis.degrees[n].iter().enumerate() {
            if i >= 1 {
                let dc = c.boundary(i as i64);
                for cc in 0..dc.rows() {
                    let lambda = dc.get(cc, a);
                    if !lambda.is_zero() {
                        let row = basis.index(n - 1, i - 1, cc, b);
                        let e = embed_left(lambda, &product, m);
                        bd.set(row, col, bd.get(row, col) + &e);
                    }
                }
            }
            if n - i >= 1 {
                let dd = d.boundary((n - i) as i64);
                let sign = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                for e in 0..dd.rows() {
                    let mu = dd.get(e, b);
                    if !mu.is_zero() {
                        let row = basis.index(n - 1, i, a, e);
                        let x = embed_right(mu, &product).scale(&sign);
                        bd.set(row, col, bd.get(row, col) + &x);
                    }
                }
            }
        }
        boundaries.push(bd);
    }
    let complex = Arc::new(ReducedComplex::new(&product, ranks, boundaries)?);
    Ok(TensorComplex { left: c.clone(), right: d.clone(), complex, basis })
}

/// `(g, h) ↦ (φg, ψh)`
fn product_hom(phi: &GroupHom, psi: &GroupHom, source: &Group, target: &Group) -> Result<GroupHom, ChainError> {
    let (n, m) = (psi.source().order(), psi.target().order());
    let images = (0..source.order()).map(|x| phi.apply(x / n) * m + psi.apply(x % n)).collect();
    Ok(GroupHom::new(source.clone(), target.clone(), images)?)
}

/// `F ⊗ G: C ⊗ D → C′ ⊗ D′` over `φ × ψ`.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap, source: &TensorComplex, target: &TensorComplex) -> Result<ChainMap, ChainError> {
    if *source.left != *f.source || *source.right != *g.source || *target.left != *f.target || *target.right != *g.target {
        return Err(ChainError::EndpointMismatch);
    }
    let tg = target.complex.group().clone();
    let m = g.target.group().order();
    let phi = product_hom(&f.phi, &g.phi, source.complex.group(), &tg)?;
    let mut components = Vec::new();
    for (n, basis) in source.basis.degrees.iter().enumerate() {
        let mut comp = LambdaMatrix::zeros(&tg, target.complex.rank(n as i64), basis.len());
        for (col, &(i, a, b)) in basis.iter().enumerate() {
            let fi = f.component(i as i64);
            let gj = g.component((n - i) as i64);
            for c in 0..fi.rows() {
                let lambda = fi.get(c, a);
                if lambda.is_zero() {
                    continue;
                }
                let left = embed_left(lambda, &tg, m);
                for d in 0..gj.rows() {
                    let mu = gj.get(d, b);
                    if mu.is_zero() {
                        continue;
                    }
                    let row = target.basis.index(n, i, c, d);
                    let term = &left * &embed_right(mu, &tg);
                    comp.set(row, col, comp.get(row, col) + &term);
                }
            }
        }
        components.push(comp);
    }
    ChainMap::new(phi, source.complex.clone(), target.complex.clone(), components)
}

/// `T(c ⊗ d) = (−1)^{|c||d|} d ⊗ c` from `C ⊗ D` to `D ⊗ C`.
pub fn swap_map(source: &TensorComplex, target: &TensorComplex) -> Result<ChainMap, ChainError> {
    if *source.left != *target.right || *source.right != *target.left {
        return Err(ChainError::EndpointMismatch);
    }
    let (n, m) = (source.left.group().order(), source.right.group().order());
    let images = (0..n * m).map(|x| (x % m) * n + x / m).collect();
    let tau = GroupHom::new(source.complex.group().clone(), target.complex.group().clone(), images)?;
    let tg = target.complex.group().clone();
    let components = source
        .basis
        .degrees
        .iter()
        .enumerate()
        .map(|(deg, basis)| {
            let mut comp = LambdaMatrix::zeros(&tg, target.complex.rank(deg as i64), basis.len());
            for (col, &(i, a, b)) in basis.iter().enumerate() {
                let j = deg - i;
                let sign = if (i * j) % 2 == 0 { 1 } else { -1 };
                comp.set(target.basis.index(deg, j, b, a), col, GroupRingElement::from_int(&tg, sign));
            }
            comp
        })
        .collect();
    ChainMap::new(tau, source.complex.clone(), target.complex.clone(), components)
}

/// `(x ⊗ y) ⊗ z ↦ x ⊗ (y ⊗ z)`.
///
/// `source` must be `(C ⊗ D) ⊗ E` with `source.left` built as `inner_left`,
/// and `target` must be `C ⊗ (D ⊗ E)` with `target.right` built as `inner_right`.
pub fn associator(
    source: &TensorComplex,
    inner_left: &TensorComplex,
    target: &TensorComplex,
    inner_right: &TensorComplex,
) -> Result<ChainMap, ChainError> {
    if *source.left != *inner_left.complex || *target.right != *inner_right.complex {
        return Err(ChainError::EndpointMismatch);
    }
    let order = source.complex.group().order();
    let alpha = GroupHom::new(source.complex.group().clone(), target.complex.group().clone(), (0..order).collect())?;
    let tg = target.complex.group().clone();
    let components = source
        .basis
        .degrees
        .iter()
        .enumerate()
        .map(|(n, basis)| {
            let mut comp = LambdaMatrix::zeros(&tg, target.complex.rank(n as i64), basis.len());
            for (col, &(m, cd, e)) in basis.iter().enumerate() {
                let (i, a, b) = inner_left.basis.degrees[m][cd];
                let de = inner_right.basis.index(n - i, m - i, b, e);
                comp.set(target.basis.index(n, i, a, de), col, GroupRingElement::one(&tg));
            }
            comp
        })
        .collect();
    ChainMap::new(alpha, source.complex.clone(), target.complex.clone(), components)
}
