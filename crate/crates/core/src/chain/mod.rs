//! Reduced free Λ-chain complexes, chain maps over group homomorphisms,
//! chain homotopies, tensor products and diagonals.
//!
//! Boundaries and chain map components are module maps on generators:
//! column `j` of `d_k` lists the coefficients of `d(x_j)` in the basis of
//! `C_{k−1}`.

mod diagonal;
mod tensor;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

pub use diagonal::{check_coassociative, check_cocommutative, counit, find_diagonal, Diagonal};
pub use tensor::{associator, swap_map, tensor_complexes, tensor_maps, TensorBasis, TensorComplex};

use crate::groupring::{same_group, trivial_group, Group, GroupError, GroupHom, GroupRingElement, OrientationChar};
use crate::linalg::{
    homology_at, homology_subquotient, vector_coords, vector_from_coords, AbelianGroup, ColumnEchelon, IntMatrix, LambdaMatrix, LinalgError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("chain maps do not share endpoints and group homomorphism")]
    EndpointMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A free Λ-complex `C₀ ← C₁ ← … ← C_top` with `C₀ = Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedComplex {
    group: Group,
    ranks: Vec<usize>,
    /// `boundaries[k − 1] = d_k`
    boundaries: Vec<LambdaMatrix>,
}

/// Outcome of [`validate_reduced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<(i64, String)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<i64> {
        self.failures.first().map(|(d, _)| *d)
    }
}

impl ReducedComplex {
    /// Checks shapes only; see [`validate_reduced`] for the axioms.
    pub fn new(group: &Group, ranks: Vec<usize>, boundaries: Vec<LambdaMatrix>) -> Result<Self, ChainError> {
        if ranks.is_empty() {
            return Err(ChainError::Shape("a reduced complex has a degree 0 module".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(ChainError::Shape(format!("{} boundaries for {} degrees", boundaries.len(), ranks.len())));
        }
        for (k, d) in boundaries.iter().enumerate() {
            let k = k + 1;
            if d.rows() != ranks[k - 1] || d.cols() != ranks[k] {
                return Err(ChainError::Shape(format!("d_{k} is {}x{}, expected {}x{}", d.rows(), d.cols(), ranks[k - 1], ranks[k])));
            }
            if !same_group(d.group(), group) {
                return Err(GroupError::GroupMismatch.into());
            }
        }
        Ok(ReducedComplex { group: group.clone(), ranks, boundaries })
    }

    /// The complex with a single `Λ` in degree 0.
    pub fn point(group: &Group) -> Self {
        ReducedComplex { group: group.clone(), ranks: vec![1], boundaries: Vec::new() }
    }

    /// Builds from boundary entries given as `(element, coefficient)` lists,
    /// one list per matrix entry in row-major order.
    pub fn from_terms(group: &Group, ranks: Vec<usize>, entries: &[Vec<Vec<(usize, i64)>>]) -> Result<Self, ChainError> {
        let mut boundaries = Vec::with_capacity(entries.len());
        for (k, d) in entries.iter().enumerate() {
            let elements = d.iter().map(|t| GroupRingElement::from_terms(group, t.iter().copied())).collect();
            let (rows, cols) = (ranks.get(k).copied().unwrap_or(0), ranks.get(k + 1).copied().unwrap_or(0));
            boundaries.push(LambdaMatrix::from_entries(group, rows, cols, elements)?);
        }
        Self::new(group, ranks, boundaries)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn top(&self) -> i64 {
        self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.ranks.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// `d_k: C_k → C_{k−1}`, zero outside the stored range.
    pub fn boundary(&self, k: i64) -> LambdaMatrix {
        if k >= 1 && k <= self.top() {
            self.boundaries[k as usize - 1].clone()
        } else {
            LambdaMatrix::zeros(&self.group, self.rank(k - 1), self.rank(k))
        }
    }

    pub fn boundaries(&self) -> &[LambdaMatrix] {
        &self.boundaries
    }

    /// Boundary of the underlying free abelian complex.
    pub fn int_boundary(&self, k: i64) -> IntMatrix {
        self.boundary(k).module_map_to_int()
    }

    /// Boundary of `ℤ^ω ⊗_Λ C`.
    pub fn twisted_boundary(&self, k: i64, omega: &OrientationChar) -> IntMatrix {
        self.boundary(k).twisted_int(omega)
    }

    /// `H_k(C)` as an abelian group, that is `H_k(C, Λ)`.
    pub fn homology(&self, k: i64) -> Result<AbelianGroup, ChainError> {
        Ok(homology_at(&self.int_boundary(k + 1), &self.int_boundary(k))?)
    }

    /// `H_k(C, ℤ^ω)`.
    pub fn twisted_homology(&self, k: i64, omega: &OrientationChar) -> Result<AbelianGroup, ChainError> {
        Ok(homology_at(&self.twisted_boundary(k + 1, omega), &self.twisted_boundary(k, omega))?)
    }

    /// Adds free generators in degrees `from + 1 ..= top` killing `H_k(C)`
    /// for `from ≤ k < top`. Existing generators keep their indices.
    pub fn kill_homology(&self, from: i64, top: i64) -> Result<Self, ChainError> {
        if from < 1 {
            return Err(ChainError::Shape("H_0 cannot be killed".into()));
        }
        let group = self.group.clone();
        let n = group.order();
        let mut ranks = self.ranks.clone();
        let mut boundaries = self.boundaries.clone();
        while (ranks.len() as i64) <= top {
            let r = *ranks.last().expect("nonempty");
            boundaries.push(LambdaMatrix::zeros(&group, r, 0));
            ranks.push(0);
        }
        for k in from..top {
            let ku = k as usize;
            let d_out = boundaries[ku - 1].module_map_to_int();
            let d_in = boundaries[ku].module_map_to_int();
            let h = homology_subquotient(&d_in, &d_out)?;
            if h.group().is_trivial() {
                continue;
            }
            let mut covered = h.boundaries().clone();
            let mut added = Vec::new();
            for v in h.generators() {
                if covered.contains(v) {
                    continue;
                }
                let col = vector_from_coords(&group, v);
                for g in 0..n {
                    let t = GroupRingElement::basis(&group, g);
                    covered.insert(vector_coords(&col.iter().map(|x| &t * x).collect::<Vec<_>>()));
                }
                added.push(col);
            }
            if !covered.contains_lattice(h.cycles()) {
                return Err(LinalgError::Invariant(format!("could not kill H_{k}")).into());
            }
            let extra = LambdaMatrix::from_columns(&group, ranks[ku], &added);
            boundaries[ku] = boundaries[ku].hstack(&extra);
            ranks[ku + 1] += added.len();
            if ku + 1 < boundaries.len() {
                let pad = LambdaMatrix::zeros(&group, added.len(), ranks[ku + 2]);
                boundaries[ku + 1] = boundaries[ku + 1].vstack(&pad);
            }
        }
        Self::new(&group, ranks, boundaries)
    }

    /// Replaces `d_k`.
    pub fn with_boundary(&self, k: i64, d: LambdaMatrix) -> Result<Self, ChainError> {
        let mut boundaries = self.boundaries.clone();
        let idx = usize::try_from(k - 1).map_err(|_| ChainError::Shape(format!("no boundary d_{k}")))?;
        if idx >= boundaries.len() {
            return Err(ChainError::Shape(format!("no boundary d_{k}")));
        }
        boundaries[idx] = d;
        Self::new(&self.group, self.ranks.clone(), boundaries)
    }
}

/// Checks `d∘d = 0`, `C₀ = Λ` and `H₀(C, ℤ) = ℤ`.
pub fn validate_reduced(c: &ReducedComplex) -> ValidationReport {
    let mut failures = Vec::new();
    if c.rank(0) != 1 {
        failures.push((0, format!("C_0 has rank {}, expected 1", c.rank(0))));
    }
    for k in 1..c.top() {
        match c.boundary(k).after(&c.boundary(k + 1)) {
            Ok(m) if m.is_zero() => {}
            Ok(_) => failures.push((k, format!("d_{k}∘d_{} is nonzero", k + 1))),
            Err(e) => failures.push((k, e.to_string())),
        }
    }
    if c.rank(0) == 1 {
        let trivial = OrientationChar::trivial(c.group().clone());
        if !c.boundary(1).twisted_int(&trivial).is_zero() {
            failures.push((0, "augmentation does not vanish on d_1".into()));
        } else if !c.twisted_homology(0, &trivial).is_ok_and(|h| h.same_invariants(&AbelianGroup::from_i64(1, &[]))) {
            failures.push((0, "H_0 is not Z".into()));
        }
    }
    failures.sort_by_key(|(d, _)| *d);
    ValidationReport { failures }
}

/// Matrix of left multiplication by `mu` on `Λ^blocks`.
pub(crate) fn left_mult_blocks(mu: &GroupRingElement, blocks: usize) -> IntMatrix {
    let n = mu.group().order();
    let rep = mu.regular_rep();
    let mut m = IntMatrix::zeros(blocks * n, blocks * n);
    for b in 0..blocks {
        m.put_block(b * n, b * n, &rep);
    }
    m
}

/// A chain map `(φ, F)`: components are matrices over the target ring with
/// `F(λc) = φ_♯(λ)F(c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub phi: GroupHom,
    pub source: Arc<ReducedComplex>,
    pub target: Arc<ReducedComplex>,
    /// `components[k]`: `C_k → D_k`, for `k = 0..=source.top()`.
    pub components: Vec<LambdaMatrix>,
}

impl ChainMap {
    pub fn new(
        phi: GroupHom,
        source: Arc<ReducedComplex>,
        target: Arc<ReducedComplex>,
        components: Vec<LambdaMatrix>,
    ) -> Result<Self, ChainError> {
        if !same_group(phi.source(), source.group()) || !same_group(phi.target(), target.group()) {
            return Err(GroupError::GroupMismatch.into());
        }
        if components.len() != source.ranks().len() {
            return Err(ChainError::Shape(format!("{} components for a complex of top degree {}", components.len(), source.top())));
        }
        for (k, f) in components.iter().enumerate() {
            let k = k as i64;
            if f.rows() != target.rank(k) || f.cols() != source.rank(k) {
                return Err(ChainError::Shape(format!("component in degree {k} has the wrong shape")));
            }
        }
        Ok(ChainMap { phi, source, target, components })
    }

    pub fn identity(c: &Arc<ReducedComplex>) -> Self {
        let components = c.ranks().iter().map(|&r| LambdaMatrix::identity(c.group(), r)).collect();
        ChainMap { phi: GroupHom::identity(c.group()), source: c.clone(), target: c.clone(), components }
    }

    /// `∗ ↦ ∗` and zero in positive degrees, the composite `ιε`.
    pub fn trivial(source: &Arc<ReducedComplex>, target: &Arc<ReducedComplex>, phi: GroupHom) -> Result<Self, ChainError> {
        let components = (0..=source.top())
            .map(|k| {
                if k == 0 {
                    LambdaMatrix::identity(target.group(), 1)
                } else {
                    LambdaMatrix::zeros(target.group(), target.rank(k), source.rank(k))
                }
            })
            .collect();
        Self::new(phi, source.clone(), target.clone(), components)
    }

    /// The augmentation `C → ℤ` onto the point complex of the trivial group.
    pub fn augmentation(c: &Arc<ReducedComplex>) -> Self {
        let one = trivial_group();
        let point = Arc::new(ReducedComplex::point(&one));
        Self::trivial(c, &point, GroupHom::collapse(c.group(), &one)).expect("shapes agree")
    }

    pub fn component(&self, k: i64) -> LambdaMatrix {
        if k >= 0 && k <= self.source.top() {
            self.components[k as usize].clone()
        } else {
            LambdaMatrix::zeros(self.target.group(), self.target.rank(k), self.source.rank(k))
        }
    }

    /// Image of a source vector in degree `k`.
    pub fn apply(&self, k: i64, v: &[GroupRingElement]) -> Result<Vec<GroupRingElement>, ChainError> {
        let pushed = v.iter().map(|x| x.push(&self.phi)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.component(k).apply_module(&pushed))
    }

    /// Integer matrix on the ℤ-bases `g·x_j` and `h·y_i`.
    pub fn int_component(&self, k: i64) -> IntMatrix {
        let f = self.component(k);
        let (n, m) = (self.source.group().order(), self.target.group().order());
        let mut out = IntMatrix::zeros(f.rows() * m, f.cols() * n);
        for j in 0..f.cols() {
            let col = f.column(j);
            for g in 0..n {
                let h = GroupRingElement::basis(self.target.group(), self.phi.apply(g));
                let image: Vec<GroupRingElement> = col.iter().map(|x| &h * x).collect();
                for (i, c) in vector_coords(&image).into_iter().enumerate() {
                    out.set(i, j * n + g, c);
                }
            }
        }
        out
    }

    /// Map induced on `ℤ^ω ⊗_Λ −` for the target character `omega`.
    pub fn twisted_component(&self, k: i64, omega: &OrientationChar) -> IntMatrix {
        self.component(k).twisted_int(omega)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap, ChainError> {
        if *self.target != *other.source {
            return Err(ChainError::EndpointMismatch);
        }
        let phi = self.phi.then(&other.phi)?;
        let components = (0..=self.source.top())
            .map(|k| {
                let f = self.component(k);
                let cols: Vec<Vec<GroupRingElement>> = (0..f.cols()).map(|j| other.apply(k, &f.column(j))).collect::<Result<_, _>>()?;
                Ok(LambdaMatrix::from_columns(other.target.group(), other.target.rank(k), &cols))
            })
            .collect::<Result<Vec<_>, ChainError>>()?;
        ChainMap::new(phi, self.source.clone(), other.target.clone(), components)
    }
}

/// `d∘F = F∘d` in every degree and `F₀ = φ_♯`.
pub fn is_chain_map(f: &ChainMap) -> bool {
    let one = LambdaMatrix::identity(f.target.group(), 1);
    if f.source.rank(0) != 1 || f.target.rank(0) != 1 || f.component(0) != one {
        return false;
    }
    (1..=f.source.top()).all(|k| chain_equation_holds(f, k))
}

fn chain_equation_holds(f: &ChainMap, k: i64) -> bool {
    let d_src = f.source.boundary(k);
    let d_tgt = f.target.boundary(k);
    let fk = f.component(k);
    (0..f.source.rank(k)).all(|j| {
        let left = d_tgt.apply_module(&fk.column(j));
        match f.apply(k - 1, &d_src.column(j)) {
            Ok(right) => left == right,
            Err(_) => false,
        }
    })
}

/// Degree +1 maps `α_k: C_k → D_{k+1}` over `φ` with `α₀ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    pub phi: GroupHom,
    pub components: Vec<LambdaMatrix>,
}

impl ChainHomotopy {
    pub fn component(&self, k: i64, source: &ReducedComplex, target: &ReducedComplex) -> LambdaMatrix {
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            LambdaMatrix::zeros(target.group(), target.rank(k + 1), source.rank(k))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// Checks `G − F = dα + αd` in every degree.
pub fn verify_homotopy(f: &ChainMap, g: &ChainMap, alpha: &ChainHomotopy) -> bool {
    if f.phi != g.phi || alpha.phi != f.phi || f.source != g.source || f.target != g.target {
        return false;
    }
    let (src, tgt) = (&f.source, &f.target);
    if alpha.component(0, src, tgt).entries().iter().any(|e| !e.is_zero()) {
        return false;
    }
    for k in 0..=src.top() {
        let a_k = alpha.component(k, src, tgt);
        let a_km1 = alpha.component(k - 1, src, tgt);
        let d_tgt = tgt.boundary(k + 1);
        let d_src = src.boundary(k);
        for j in 0..src.rank(k) {
            let lhs: Vec<GroupRingElement> = g.component(k).column(j).iter().zip(f.component(k).column(j)).map(|(a, b)| a - &b).collect();
            let da = d_tgt.apply_module(&a_k.column(j));
            let pushed: Vec<GroupRingElement> = match d_src.column(j).iter().map(|x| x.push(&f.phi)).collect() {
                Ok(v) => v,
                Err(_) => return false,
            };
            let ad = a_km1.apply_module(&pushed);
            let rhs: Vec<GroupRingElement> = da.iter().zip(&ad).map(|(a, b)| a + b).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Solves `G − F = dα + αd` for all degrees at once as one integer system.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Result<Option<ChainHomotopy>, ChainError> {
    if f.phi != g.phi || f.source != g.source || f.target != g.target {
        return Err(ChainError::EndpointMismatch);
    }
    let (src, tgt) = (f.source.clone(), f.target.clone());
    let tg = tgt.group().clone();
    let m = tg.order();
    if f.component(0) != g.component(0) {
        return Ok(None);
    }
    let top = src.top();
    // Unknown block for α_k (k ≥ 1): src.rank(k) generators, each tgt.rank(k+1)·m coordinates.
    let mut unknown_offset = vec![0usize; (top + 2) as usize];
    for k in 1..=top {
        unknown_offset[(k + 1) as usize] = unknown_offset[k as usize] + src.rank(k) * tgt.rank(k + 1) * m;
    }
    let n_unknowns = unknown_offset[(top + 1) as usize];
    let mut eq_offset = vec![0usize; (top + 2) as usize];
    for k in 1..=top {
        eq_offset[(k + 1) as usize] = eq_offset[k as usize] + src.rank(k) * tgt.rank(k) * m;
    }
    let n_eqs = eq_offset[(top + 1) as usize];
    let mut a = IntMatrix::zeros(n_eqs, n_unknowns);
    let mut b = vec![BigInt::zero(); n_eqs];
    for k in 1..=top {
        let d_tgt = tgt.int_boundary(k + 1);
        let d_src = src.boundary(k);
        let block_eq = tgt.rank(k) * m;
        let block_k = tgt.rank(k + 1) * m;
        let block_km1 = tgt.rank(k) * m;
        let diff = g.component(k).try_sub(&f.component(k))?;
        for j in 0..src.rank(k) {
            let row0 = eq_offset[k as usize] + j * block_eq;
            let col0 = unknown_offset[k as usize] + j * block_k;
            if block_k > 0 {
                a.put_block(row0, col0, &d_tgt);
            }
            if k >= 2 {
                for i in 0..src.rank(k - 1) {
                    let lambda = d_src.get(i, j);
                    if lambda.is_zero() {
                        continue;
                    }
                    let mu = lambda.push(&f.phi)?;
                    let col_i = unknown_offset[(k - 1) as usize] + i * block_km1;
                    let block = left_mult_blocks(&mu, tgt.rank(k));
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            let x = block.get(r, c);
                            if !x.is_zero() {
                                *a.get_mut(row0 + r, col_i + c) += x;
                            }
                        }
                    }
                }
            }
            for (r, x) in vector_coords(&diff.column(j)).into_iter().enumerate() {
                b[row0 + r] = x;
            }
        }
    }
    let Some(x) = ColumnEchelon::new(&a).solve(&b) else { return Ok(None) };
    let mut components = vec![LambdaMatrix::zeros(&tg, tgt.rank(1), src.rank(0))];
    for k in 1..=top {
        let block_k = tgt.rank(k + 1) * m;
        let cols: Vec<Vec<GroupRingElement>> = (0..src.rank(k))
            .map(|j| {
                let start = unknown_offset[k as usize] + j * block_k;
                vector_from_coords(&tg, &x[start..start + block_k])
            })
            .collect();
        components.push(LambdaMatrix::from_columns(&tg, tgt.rank(k + 1), &cols));
    }
    let alpha = ChainHomotopy { phi: f.phi.clone(), components };
    debug_assert!(verify_homotopy(f, g, &alpha));
    Ok(Some(alpha))
}

/// Extends components given in degrees `0..known.len()` to a chain map over
/// `phi`, one degree at a time. `None` if some lift does not exist.
pub fn extend_chain_map(
    phi: &GroupHom,
    source: &Arc<ReducedComplex>,
    target: &Arc<ReducedComplex>,
    known: Vec<LambdaMatrix>,
) -> Result<Option<ChainMap>, ChainError> {
    let tg = target.group().clone();
    let mut components = known;
    if components.is_empty() {
        components.push(LambdaMatrix::identity(&tg, 1));
    }
    for k in components.len() as i64..=source.top() {
        let prev = components[k as usize - 1].clone();
        let solver = ColumnEchelon::new(&target.int_boundary(k));
        let d = source.boundary(k);
        let mut cols = Vec::with_capacity(source.rank(k));
        for j in 0..source.rank(k) {
            let pushed = d.column(j).iter().map(|x| x.push(phi)).collect::<Result<Vec<_>, _>>()?;
            let rhs = vector_coords(&prev.apply_module(&pushed));
            match solver.solve(&rhs) {
                Some(x) => cols.push(vector_from_coords(&tg, &x)),
                None => return Ok(None),
            }
        }
        components.push(LambdaMatrix::from_columns(&tg, target.rank(k), &cols));
    }
    components.truncate(source.ranks().len());
    Ok(Some(ChainMap::new(phi.clone(), source.clone(), target.clone(), components)?))
}
