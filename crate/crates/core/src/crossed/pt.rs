use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{gamma_lattice, tensor_coords, CrossedError, FoxBoundary, PreCrossedModule, DEFAULT_COSET_BOUND};
use crate::groupring::{GroupRingElement, OrientationChar};
use crate::linalg::{
    free_approximation, homology_at, lambda_span, vector_coords, vector_from_coords, AbelianGroup, ColumnEchelon, IntMatrix, LambdaMatrix,
    Lattice, PresentedComplex, PresentedModule, Subquotient,
};
use crate::quadratic::{gamma_group, FGAbelian};

/// `P(∂_f, B)` in degrees `0..=4`.
#[derive(Clone, Debug)]
pub struct PTComplex {
    pub complex: PresentedComplex,
    pub fox: FoxBoundary,
    /// `B` as a ℤ-lattice in `C₂`.
    pub b: Lattice,
    /// `π₂T = K/B`.
    pub pi2: AbelianGroup,
}

/// Sends the ℤ-basis `a·e_x ⊗ b·e_y` of `C₂⊗C₂` to `a·u_{x,y,a⁻¹b}`.
fn to_diagonal_coords(fox: &FoxBoundary, t: &[BigInt]) -> Vec<BigInt> {
    let g = &fox.pi1.group;
    let n = g.order();
    let m = fox.d2.cols();
    let dim = m * n;
    let mut out = vec![BigInt::zero(); t.len()];
    for (idx, c) in t.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, j) = (idx / dim, idx % dim);
        let (x, a, y, b) = (i / n, i % n, j / n, j % n);
        let gen = (x * m + y) * n + g.mul(g.inv(a), b);
        out[gen * n + a] += c;
    }
    out
}

fn lattice_columns(fox: &FoxBoundary, l: &Lattice, rows: usize) -> LambdaMatrix {
    let g = &fox.pi1.group;
    let cols: Vec<Vec<GroupRingElement>> = l.basis().iter().map(|v| vector_from_coords(g, &to_diagonal_coords(fox, v))).collect();
    LambdaMatrix::from_columns(g, rows, &cols)
}

fn as_fg(a: &AbelianGroup) -> Result<FGAbelian, CrossedError> {
    let mut orders = a.torsion.clone();
    orders.extend(std::iter::repeat_n(BigInt::zero(), a.free_rank));
    Ok(FGAbelian::new(orders)?)
}

/// Builds `P(∂_f, B)`: `P₄ = C₂⊗C₂/∇_B`, `P₃ = (C₂⊗C₂)/(Γ(K) + ∇_B) ⊕ B`
/// with `B` presented by the syzygies of its generators,
/// `d₄ = −ω`, `d₃` the inclusion of `B`, `d₂` and `d₁` from Fox calculus.
/// The homology pattern is checked before returning.
pub fn build_pt(m: &PreCrossedModule, b_gens: &[Vec<GroupRingElement>]) -> Result<PTComplex, CrossedError> {
    let fox = m.fox_boundary(DEFAULT_COSET_BOUND)?;
    let g = fox.pi1.group.clone();
    let n = g.order();
    let e2 = m.e2();
    let dim = e2 * n;
    for (i, b) in b_gens.iter().enumerate() {
        if b.len() != e2 {
            return Err(CrossedError::Unsupported(format!("B generator {i} has length {}, expected {e2}", b.len())));
        }
        if fox.d2.apply_module(b).iter().any(|e| !e.is_zero()) {
            return Err(CrossedError::NotInKernel(i));
        }
    }
    let b_lattice = lambda_span(&g, dim, &b_gens.iter().map(|b| vector_coords(b)).collect::<Vec<_>>());
    let b_map = LambdaMatrix::from_columns(&g, e2, b_gens);
    let syzygies: Vec<Vec<GroupRingElement>> =
        ColumnEchelon::new(&b_map.module_map_to_int()).kernel_basis().iter().map(|v| vector_from_coords(&g, v)).collect();
    let d2_int = fox.d2.module_map_to_int();
    let kernel = Lattice::from_vectors(dim, ColumnEchelon::new(&d2_int).kernel_basis().iter().cloned());

    let mut nabla = Lattice::zero(dim * dim);
    for beta in b_lattice.basis() {
        for beta2 in b_lattice.basis() {
            nabla.insert(tensor_coords(beta, beta2));
        }
        for c in 0..dim {
            let mut e = vec![BigInt::zero(); dim];
            e[c] = BigInt::from(1);
            let s = tensor_coords(beta, &e).iter().zip(tensor_coords(&e, beta)).map(|(x, y)| x + y).collect();
            nabla.insert(s);
        }
    }
    let q_rel = gamma_lattice(&kernel).sum(&nabla);
    let nq = e2 * e2 * n;
    let nb = b_gens.len();

    let p4 = PresentedModule::new(&g, nq, lattice_columns(&fox, &nabla, nq))?;
    let q_cols = lattice_columns(&fox, &q_rel, nq).vstack(&LambdaMatrix::zeros(&g, nb, q_rel.rank()));
    let b_cols = LambdaMatrix::zeros(&g, nq, syzygies.len()).vstack(&LambdaMatrix::from_columns(&g, nb, &syzygies));
    let q_cols = q_cols.hstack(&b_cols);
    let p3 = PresentedModule::new(&g, nq + nb, q_cols)?;
    let d4 = LambdaMatrix::identity(&g, nq).neg().vstack(&LambdaMatrix::zeros(&g, nb, nq));
    let d3 = LambdaMatrix::zeros(&g, e2, nq).hstack(&b_map);
    let modules = vec![PresentedModule::free(&g, 1), PresentedModule::free(&g, m.e1), PresentedModule::free(&g, e2), p3, p4];
    let complex = PresentedComplex::new(&g, 0, modules, vec![fox.d1.clone(), fox.d2.clone(), d3, d4])?;
    let pi2 = Subquotient::new(&kernel, &b_lattice)?.group().clone();
    let pt = PTComplex { complex, fox, b: b_lattice, pi2 };
    pt.check_pattern()?;
    Ok(pt)
}

impl PTComplex {
    /// `H₁ = H₃ = 0`, `H₂ = π₂T`, `H₄ = Γ(π₂T)`.
    pub fn check_pattern(&self) -> Result<(), CrossedError> {
        let h = |k| -> Result<AbelianGroup, CrossedError> { Ok(self.complex.homology(k)?.group().clone()) };
        for k in [1, 3] {
            let hk = h(k)?;
            if !hk.is_trivial() {
                return Err(CrossedError::Pattern(format!("H{k} = {hk}")));
            }
        }
        let h2 = h(2)?;
        if !h2.same_invariants(&self.pi2) {
            return Err(CrossedError::Pattern(format!("H2 = {h2}, pi2 = {}", self.pi2)));
        }
        let gamma = gamma_group(&as_fg(&self.pi2)?).group.invariants();
        let h4 = h(4)?;
        if !h4.same_invariants(&gamma) {
            return Err(CrossedError::Pattern(format!("H4 = {h4}, Gamma(pi2) = {gamma}")));
        }
        Ok(())
    }

    pub fn group(&self) -> &crate::groupring::Group {
        &self.fox.pi1.group
    }
}

/// `H_k(T; ℤ^ω)` for `k ≤ 4` through a free approximation, after checking the
/// approximation against the presented homology.
pub fn pt_homology(p: &PTComplex, omega: &OrientationChar) -> Result<BTreeMap<i64, AbelianGroup>, CrossedError> {
    let free = free_approximation(&p.complex, 5)?;
    let mut out = BTreeMap::new();
    for k in 0..=4 {
        let direct = p.complex.homology(k)?.group().clone();
        if !free.homology(k)?.same_invariants(&direct) {
            return Err(CrossedError::Pattern(format!("free approximation disagrees in degree {k}")));
        }
        let d_in: IntMatrix = free.boundary(k + 1).twisted_int(omega);
        let d_out: IntMatrix = free.boundary(k).twisted_int(omega);
        out.insert(k, homology_at(&d_in, &d_out)?);
    }
    Ok(out)
}
