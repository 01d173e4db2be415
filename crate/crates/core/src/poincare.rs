//! Poincaré duality chain complexes: cap products, Wall's criterion,
//! weakly standard complexes, degrees, and the degree-one construction.
//!
//! The dual `C^k = Hom_Λ(C_k, Λ)` carries the left action
//! `(λψ)(x) = ψ(x)λ̄`; its generators `x_a^*` satisfy `x_a^*(x_b) = δ_ab`.
//! The coboundary `C^k → C^{k+1}` is `(−1)^{k+1}` times the bar-transpose
//! of `d_{k+1}`, and with that sign the unsigned slant product
//! `ψ ↦ Σ ψ(x′)‾·x″` over `Δ(x) = Σ x′ ⊗ x″` commutes with differentials.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chain::{extend_chain_map, is_chain_map, validate_reduced, ChainError, ChainMap, Diagonal, ReducedComplex};
use crate::groupring::{GroupError, GroupHom, GroupRingElement, OrientationChar};
use crate::linalg::{
    generates_ideal, homology_subquotient, solve_lambda, vector_coords, vector_from_coords, ColumnEchelon, IntMatrix, LambdaMatrix,
    Lattice, LinalgError, Subquotient,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PoincareError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("orientation characters are not compatible along the group homomorphism")]
    OrientationMismatch,
    #[error("H_{0}(C, Z^w) is not infinite cyclic")]
    NotInfiniteCyclic(i64),
    #[error("the map does not run between the given complexes")]
    EndpointMismatch,
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A free complex with orientation character, fundamental cycle and diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDChainComplex {
    pub complex: Arc<ReducedComplex>,
    pub omega: OrientationChar,
    /// Coordinates of the fundamental cycle on the generators of `ℤ^ω ⊗ C_n`.
    pub fundamental_cycle: Vec<BigInt>,
    pub diagonal: Diagonal,
    pub formal_dim: usize,
}

/// One named pass/fail line of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.name)?;
            } else {
                writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// `C^{n−*}` as a chain complex: `D_j = C^{n−j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualComplex {
    pub complex: Arc<ReducedComplex>,
    pub formal_dim: usize,
}

impl DualComplex {
    pub fn new(c: &ReducedComplex, omega: &OrientationChar, n: usize) -> Result<Self, PoincareError> {
        let g = c.group();
        let ranks: Vec<usize> = (0..=n).map(|j| c.rank((n - j) as i64)).collect();
        let mut boundaries = Vec::with_capacity(n);
        for j in 1..=n {
            let k = (n - j) as i64;
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            boundaries.push(c.boundary(k + 1).bar_transpose(omega)?.scale(&BigInt::from(sign)));
        }
        let complex = Arc::new(ReducedComplex::new(g, ranks, boundaries)?);
        Ok(DualComplex { complex, formal_dim: n })
    }
}

impl PDChainComplex {
    pub fn new(
        complex: Arc<ReducedComplex>,
        omega: OrientationChar,
        fundamental_cycle: Vec<BigInt>,
        diagonal: Diagonal,
        formal_dim: usize,
    ) -> Result<Self, PoincareError> {
        if complex.top() > formal_dim as i64 {
            return Err(PoincareError::Shape(format!("complex has cells above degree {formal_dim}")));
        }
        if fundamental_cycle.len() != complex.rank(formal_dim as i64) {
            return Err(PoincareError::Shape("fundamental cycle has the wrong length".into()));
        }
        if *diagonal.map.source != *complex {
            return Err(PoincareError::Shape("diagonal belongs to another complex".into()));
        }
        if !crate::groupring::same_group(omega.group(), complex.group()) {
            return Err(GroupError::GroupMismatch.into());
        }
        Ok(PDChainComplex { complex, omega, fundamental_cycle, diagonal, formal_dim })
    }

    pub fn n(&self) -> i64 {
        self.formal_dim as i64
    }

    pub fn dual(&self) -> Result<DualComplex, PoincareError> {
        DualComplex::new(&self.complex, &self.omega, self.formal_dim)
    }

    /// `H_n(C, ℤ^ω)` with its adapted basis.
    fn top_homology(&self) -> Result<Subquotient, PoincareError> {
        twisted_subquotient(&self.complex, &self.omega, self.n())
    }
}

fn twisted_subquotient(c: &ReducedComplex, omega: &OrientationChar, k: i64) -> Result<Subquotient, PoincareError> {
    Ok(homology_subquotient(&c.twisted_boundary(k + 1, omega), &c.twisted_boundary(k, omega))?)
}

/// Cap components `cap_k: C^k → C_{n−k}` from `Δ` of the fundamental chain.
fn cap_components(x: &PDChainComplex) -> Vec<LambdaMatrix> {
    let c = &x.complex;
    let g = c.group();
    let order = g.order();
    let n = x.formal_dim;
    let delta = x.diagonal.map.component(n as i64);
    let tg_basis = &x.diagonal.tensor.basis;
    let mut caps: Vec<LambdaMatrix> = (0..=n).map(|k| LambdaMatrix::zeros(g, c.rank((n - k) as i64), c.rank(k as i64))).collect();
    let Some(basis) = tg_basis.degrees.get(n) else { return caps };
    for (m, f) in x.fundamental_cycle.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (row, &(i, a, b)) in basis.iter().enumerate() {
            let mu = delta.get(row, m);
            if mu.is_zero() {
                continue;
            }
            let terms = mu.terms().iter().map(|(gh, coeff)| {
                let (gl, h) = (gh / order, gh % order);
                (g.mul(g.inv(gl), h), coeff * f * x.omega.sign(gl))
            });
            let slant = GroupRingElement::from_terms(g, terms);
            let entry = caps[i].get(b, a) + &slant;
            caps[i].set(b, a, entry);
        }
    }
    caps
}

/// `∩ [C]: D → C`, with `D_j = C^{n−j}` and component `j` equal to `cap_{n−j}`.
pub fn cap_chain_map(x: &PDChainComplex) -> Result<ChainMap, PoincareError> {
    let dual = x.dual()?;
    let n = x.formal_dim;
    let caps = cap_components(x);
    let components = (0..=n).map(|j| caps[n - j].clone()).collect();
    let f = ChainMap::new(GroupHom::identity(x.complex.group()), dual.complex.clone(), x.complex.clone(), components)?;
    if !commutes(&f) {
        return Err(PoincareError::Linalg(LinalgError::Invariant("cap product is not a chain map".into())));
    }
    Ok(f)
}

/// `d∘F = F∘d` without any condition in degree 0.
fn commutes(f: &ChainMap) -> bool {
    (1..=f.source.top()).all(|k| {
        let d_src = f.source.boundary(k);
        let d_tgt = f.target.boundary(k);
        let fk = f.component(k);
        (0..f.source.rank(k)).all(|j| {
            let left = d_tgt.apply_module(&fk.column(j));
            f.apply(k - 1, &d_src.column(j)).is_ok_and(|right| left == right)
        })
    })
}

/// Mapping cone of an integer chain map `D → C` has no homology.
fn cone_acyclic(f: &ChainMap) -> Result<bool, PoincareError> {
    let (d, c) = (&f.source, &f.target);
    let m = c.group().order();
    let top = d.top().max(c.top()) + 1;
    let cone_d = |k: i64| -> IntMatrix {
        let (rd_in, rc_in) = (d.rank(k - 1) * m, c.rank(k) * m);
        let (rd_out, rc_out) = (d.rank(k - 2) * m, c.rank(k - 1) * m);
        let mut out = IntMatrix::zeros(rd_out + rc_out, rd_in + rc_in);
        if k >= 2 && rd_in > 0 && rd_out > 0 {
            out.put_block(0, 0, &(-&d.int_boundary(k - 1)));
        }
        if k >= 1 && rd_in > 0 && rc_out > 0 {
            out.put_block(rd_out, 0, &f.component(k - 1).module_map_to_int());
        }
        if k >= 1 && rc_in > 0 && rc_out > 0 {
            out.put_block(rd_out, rd_in, &c.int_boundary(k));
        }
        out
    };
    for k in 0..=top {
        let h = homology_subquotient(&cone_d(k + 1), &cone_d(k))?;
        if !h.group().is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the complex axioms, the diagonal, `H₁C = 0`, the fundamental
/// cycle, and that capping with it is a homotopy equivalence.
pub fn verify_pd(x: &PDChainComplex) -> Report {
    let mut r = Report::default();
    let v = validate_reduced(&x.complex);
    r.push("complex", v.passed(), v.failures.first().map(|(_, s)| s.clone()).unwrap_or_default());
    r.push("diagonal", is_chain_map(&x.diagonal.map), "");
    match x.complex.homology(1) {
        Ok(h) => r.push("H1 vanishes", h.is_trivial(), format!("H_1 = {h}")),
        Err(e) => r.push("H1 vanishes", false, e.to_string()),
    }
    let fundamental = match x.top_homology() {
        Ok(h) => {
            let z = h.cycles().contains(&x.fundamental_cycle);
            let generates = z && h.group().free_rank == 1 && h.group().torsion.is_empty() && {
                let c = h.class_of(&x.fundamental_cycle).unwrap_or_default();
                c.len() == 1 && c[0].abs().is_one()
            };
            let detail = if !z {
                "not a cycle of Z^w (x) C".to_string()
            } else if generates {
                String::new()
            } else {
                format!("H_n(C, Z^w) = {} and the cycle does not generate it", h.group())
            };
            r.push("fundamental cycle", generates, detail);
            generates
        }
        Err(e) => {
            r.push("fundamental cycle", false, e.to_string());
            false
        }
    };
    if !fundamental {
        r.push("cap is an equivalence", false, "no fundamental class");
        return r;
    }
    match cap_chain_map(x).and_then(|f| cone_acyclic(&f)) {
        Ok(ok) => r.push("cap is an equivalence", ok, if ok { "" } else { "mapping cone has homology" }),
        Err(e) => r.push("cap is an equivalence", false, e.to_string()),
    }
    r
}

/// Both generators of `H_n(C, ℤ^ω)` when it is infinite cyclic.
pub fn fundamental_class_candidates(c: &ReducedComplex, omega: &OrientationChar, n: i64) -> Result<Vec<Vec<BigInt>>, PoincareError> {
    let h = twisted_subquotient(c, omega, n)?;
    if h.group().free_rank != 1 || !h.group().torsion.is_empty() {
        return Ok(Vec::new());
    }
    let g = h.generators()[0].clone();
    let neg = g.iter().map(|x| -x).collect();
    Ok(vec![g, neg])
}

/// A distinguished top cell `[e]` with `C = C′ ⊕ Λ[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaklyStandardData {
    pub top_cell_index: usize,
    pub subcomplex_ranks: Vec<usize>,
    /// Columns spanning `S ⊂ C₂` with `C₂ = S ⊕ d₃(C₃′)`; only for `n = 3`.
    pub splitting: Option<LambdaMatrix>,
}

impl WeaklyStandardData {
    /// `[e]` is the last top cell and `C′` is everything else.
    pub fn last_cell(c: &ReducedComplex, n: usize) -> Self {
        let mut subcomplex_ranks: Vec<usize> = (0..=n).map(|k| c.rank(k as i64)).collect();
        subcomplex_ranks[n] -= 1;
        WeaklyStandardData { top_cell_index: c.rank(n as i64) - 1, subcomplex_ranks, splitting: None }
    }
}

fn unit_vector(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[i] = BigInt::one();
    v
}

fn lambda_lattice(m: &LambdaMatrix) -> Lattice {
    Lattice::column_span(&m.module_map_to_int())
}

/// Checks `1⊗[e]` represents `[C]`, that the coefficients of `d[e]`
/// generate `Ī(π)`, and for `n = 3` the splitting of `C₂`.
pub fn check_weakly_standard(x: &PDChainComplex, w: &WeaklyStandardData) -> Report {
    let mut r = Report::default();
    let c = &x.complex;
    let n = x.n();
    let rank_n = c.rank(n);
    if w.top_cell_index >= rank_n || w.subcomplex_ranks.len() != x.formal_dim + 1 {
        r.push("shape", false, "top cell index or subcomplex ranks out of range");
        return r;
    }
    let ranks_ok = (0..=n).all(|k| {
        let expected = if k == n { rank_n - 1 } else { c.rank(k) };
        w.subcomplex_ranks[k as usize] == expected
    });
    r.push("C = C' + Lambda[e]", ranks_ok, if ranks_ok { "" } else { "subcomplex ranks do not leave exactly [e]" });

    let e = unit_vector(rank_n, w.top_cell_index);
    let represents = x.top_homology().is_ok_and(|h| match (h.class_of(&e), h.class_of(&x.fundamental_cycle)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    });
    r.push("(a) 1(x)[e] represents [C]", represents, "");

    let coeffs = c.boundary(n).column(w.top_cell_index);
    match generates_ideal(&coeffs, &x.omega) {
        Ok(ok) => r.push("(b) d[e] coefficients generate the ideal", ok, if ok { "" } else { "proper submodule" }),
        Err(e) => r.push("(b) d[e] coefficients generate the ideal", false, e.to_string()),
    }

    if let Some(s) = &w.splitting {
        if n != 3 || s.rows() != c.rank(2) {
            r.push("(c) splitting", false, "a splitting is only defined on C_2 for n = 3");
            return r;
        }
        let s_lat = lambda_lattice(s);
        let d3 = c.boundary(3);
        let others: Vec<Vec<GroupRingElement>> = (0..rank_n).filter(|&j| j != w.top_cell_index).map(|j| d3.column(j)).collect();
        let d_lat = lambda_lattice(&LambdaMatrix::from_columns(c.group(), c.rank(2), &others));
        let dim = s_lat.dim();
        let direct = s_lat.rank() + d_lat.rank() == dim && s_lat.sum(&d_lat) == Lattice::full(dim);
        r.push("(c) C_2 = S + d(C_3')", direct, if direct { "" } else { "not a direct sum decomposition" });
        let contains = s_lat.contains(&vector_coords(&d3.column(w.top_cell_index)));
        r.push("(c) d[e] lies in S", contains, "");
    }
    r
}

/// The integer `d` with `f_*[X] = d·[Y]`.
pub fn degree_of_map(f: &ChainMap, x: &PDChainComplex, y: &PDChainComplex) -> Result<BigInt, PoincareError> {
    if *f.source != *x.complex || *f.target != *y.complex || x.formal_dim != y.formal_dim {
        return Err(PoincareError::EndpointMismatch);
    }
    if y.omega.pull_back(&f.phi).values() != x.omega.values() {
        return Err(PoincareError::OrientationMismatch);
    }
    let h = y.top_homology()?;
    if h.group().free_rank != 1 || !h.group().torsion.is_empty() {
        return Err(PoincareError::NotInfiniteCyclic(y.n()));
    }
    let pushed = f.twisted_component(x.n(), &y.omega).mul_vec(&x.fundamental_cycle);
    let image = h.class_of(&pushed).ok_or_else(|| LinalgError::Invariant("image of the fundamental cycle is not a cycle".into()))?;
    let base = h.class_of(&y.fundamental_cycle).ok_or(PoincareError::NotInfiniteCyclic(y.n()))?;
    let (q, rem) = image[0].div_rem(&base[0]);
    if !rem.is_zero() {
        return Err(PoincareError::NotInfiniteCyclic(y.n()));
    }
    Ok(q)
}

/// Why [`construct_degree_one`] stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    pub step: u8,
    pub diagnostic: String,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.diagnostic)
    }
}

fn fail<T>(step: u8, diagnostic: impl Into<String>) -> Result<Result<T, StepFailure>, PoincareError> {
    Ok(Err(StepFailure { step, diagnostic: diagnostic.into() }))
}

/// Components `0..=top` of a `φ`-map `C(Y) → C(X)` lifted from the
/// identity on `C₀`, when one exists.
pub fn lower_map(y: &PDChainComplex, x: &PDChainComplex, phi: &GroupHom, top: i64) -> Result<Option<Vec<LambdaMatrix>>, PoincareError> {
    let cy = &y.complex;
    let top = top.min(cy.top());
    let ranks = (0..=top).map(|k| cy.rank(k)).collect();
    let boundaries = (1..=top).map(|k| cy.boundary(k)).collect();
    let truncated = Arc::new(ReducedComplex::new(cy.group(), ranks, boundaries)?);
    Ok(extend_chain_map(phi, &truncated, &x.complex, Vec::new())?.map(|f| f.components))
}

/// Builds a degree-one chain map `ξ: C(Y) → C(X)` over `φ` agreeing with
/// `lower` in low degrees, or reports the step at which this is impossible.
///
/// `lower` holds components in degrees `0..=m` with `n − 2 ≤ m ≤ n − 1`.
/// The Postnikov section is modelled by killing `H_{n−1}` and `H_n` of `C(X)`.
pub fn construct_degree_one(
    y: &PDChainComplex,
    wy: &WeaklyStandardData,
    x: &PDChainComplex,
    wx: &WeaklyStandardData,
    phi: &GroupHom,
    lower: &[LambdaMatrix],
) -> Result<Result<ChainMap, StepFailure>, PoincareError> {
    let n = x.n();
    if y.formal_dim != x.formal_dim || n < 2 {
        return Err(PoincareError::Shape("formal dimensions must agree and be at least 2".into()));
    }
    if !phi.is_surjective() {
        return Err(PoincareError::Shape("the group homomorphism is not surjective".into()));
    }
    if x.omega.pull_back(phi).values() != y.omega.values() {
        return Err(PoincareError::OrientationMismatch);
    }
    let lower_top = lower.len() as i64 - 1;
    if lower_top < n - 2 || lower_top > n - 1 {
        return Err(PoincareError::Shape(format!("lower map must cover degrees 0..={} or 0..={}", n - 2, n - 1)));
    }
    let tg = x.complex.group().clone();
    let (cx, cy) = (&x.complex, &y.complex);
    let (e, e_src) = (wx.top_cell_index, wy.top_cell_index);
    if e >= cx.rank(n) || e_src >= cy.rank(n) {
        return Err(PoincareError::Shape("top cell index out of range".into()));
    }

    // (1) f_* p′_*[e′] − p_*[e] inside the Postnikov model of X.
    let p = Arc::new(cx.kill_homology(n - 1, n + 1)?);
    let Some(f) = extend_chain_map(phi, cy, &p, lower.to_vec())? else {
        return fail(1, "the lower map does not extend over the Postnikov section");
    };
    let order = tg.order();
    let rn = p.rank(n);
    let e_vec = vector_from_coords(&tg, &unit_coords(order, rn, e));
    let pushed_de = f.apply(n - 1, &cy.boundary(n).column(e_src))?;
    let f_e = if p.boundary(n).apply_module(&e_vec) == pushed_de { e_vec.clone() } else { f.component(n).column(e_src) };
    let diff: Vec<GroupRingElement> = f_e.iter().zip(&e_vec).map(|(a, b)| a - b).collect();

    // (2) diff = dx + y with y ∈ Ī·P_n.
    let diff_coords = vector_coords(&diff);
    let d_next = p.int_boundary(n + 1);
    let y_coords = if ColumnEchelon::new(&d_next).solve(&diff_coords).is_some() {
        vec![BigInt::zero(); diff_coords.len()]
    } else {
        let ideal = ideal_times_free(&x.omega, rn);
        let system = d_next.hstack(&ideal);
        let Some(sol) = ColumnEchelon::new(&system).solve(&diff_coords) else {
            return fail(2, "f_*[Y] - [X] is not in im d + I(pi) C_n; the triples do not match");
        };
        ideal.mul_vec(&sol[d_next.cols()..])
    };
    let y_vec = vector_from_coords(&tg, &y_coords);

    // (3) y = Σ φ(a_m) z_m.
    let a: Vec<GroupRingElement> = cy.boundary(n).column(e_src).iter().map(|a| a.push(phi)).collect::<Result<_, _>>()?;
    let a_row = LambdaMatrix::from_entries(&tg, 1, a.len(), a.clone())?;
    let mut z = vec![vec![GroupRingElement::zero(&tg); rn]; a.len()];
    for (j, yj) in y_vec.iter().enumerate() {
        let Some(sol) = solve_lambda(&a_row, std::slice::from_ref(yj))? else {
            return fail(3, "y is not in the right ideal generated by the pushed coefficients of d[e']");
        };
        for (m, s) in sol.into_iter().enumerate() {
            z[m][j] = s;
        }
    }

    // (4) ᾱ_n(e′_m) = −z_m, ξ_{n−1} = F + dᾱ on S and F on d(C′_n), ξ[e′] = [e].
    let f_prev = f.component(n - 1);
    let d_p = p.boundary(n);
    let g_cols: Vec<Vec<GroupRingElement>> = (0..cy.rank(n - 1))
        .map(|m| {
            let dz = d_p.apply_module(&z[m]);
            f_prev.column(m).iter().zip(&dz).map(|(a, b)| a - b).collect()
        })
        .collect();
    let g_mat = LambdaMatrix::from_columns(&tg, cx.rank(n - 1), &g_cols);
    let others: Vec<usize> = (0..cy.rank(n)).filter(|&j| j != e_src).collect();
    let xi_prev = if others.is_empty() {
        g_mat
    } else {
        let Some(s) = &wy.splitting else {
            return fail(4, "Y has further top cells but no splitting of C_{n-1} was given");
        };
        let dy = cy.boundary(n);
        let d_others: Vec<Vec<GroupRingElement>> = others.iter().map(|&j| dy.column(j)).collect();
        let basis = s.hstack(&LambdaMatrix::from_columns(cy.group(), cy.rank(n - 1), &d_others));
        let solver = ColumnEchelon::new(&basis.module_map_to_int());
        let mut cols = Vec::with_capacity(cy.rank(n - 1));
        for i in 0..cy.rank(n - 1) {
            let Some(sol) = solver.solve(&unit_coords(cy.group().order(), cy.rank(n - 1), i)) else {
                return fail(4, "the splitting does not span C_{n-1}");
            };
            let lam = vector_from_coords(cy.group(), &sol);
            let (ls, ld) = lam.split_at(s.cols());
            let s_part = s.apply_module(ls);
            let d_part = LambdaMatrix::from_columns(cy.group(), cy.rank(n - 1), &d_others).apply_module(ld);
            let push = |v: &[GroupRingElement]| v.iter().map(|t| t.push(phi)).collect::<Result<Vec<_>, _>>();
            let a1 = g_mat.apply_module(&push(&s_part)?);
            let a2 = f_prev.apply_module(&push(&d_part)?);
            cols.push(a1.iter().zip(&a2).map(|(u, v)| u + v).collect::<Vec<_>>());
        }
        LambdaMatrix::from_columns(&tg, cx.rank(n - 1), &cols)
    };
    let fn_comp = f.component(n);
    let mut top_cols = Vec::with_capacity(cy.rank(n));
    for j in 0..cy.rank(n) {
        if j == e_src {
            top_cols.push(vector_from_coords(&tg, &unit_coords(order, cx.rank(n), e)));
            continue;
        }
        let col = fn_comp.column(j);
        if col[cx.rank(n)..].iter().any(|t| !t.is_zero()) {
            return fail(4, "a top cell of Y' does not map into C_n(X)");
        }
        top_cols.push(col[..cx.rank(n)].to_vec());
    }
    let mut components: Vec<LambdaMatrix> = (0..n - 1).map(|k| f.component(k)).collect();
    components.push(xi_prev);
    components.push(LambdaMatrix::from_columns(&tg, cx.rank(n), &top_cols));
    let xi = ChainMap::new(phi.clone(), cy.clone(), cx.clone(), components)?;

    // (5) certify.
    if !is_chain_map(&xi) {
        return fail(5, "the assembled map is not a chain map");
    }
    let deg = degree_of_map(&xi, y, x)?;
    if !deg.is_one() {
        return fail(5, format!("the assembled map has degree {deg}"));
    }
    Ok(Ok(xi))
}

fn unit_coords(order: usize, rank: usize, i: usize) -> Vec<BigInt> {
    unit_vector(order * rank, i * order)
}

/// Columns spanning `Ī·Λ^rank` over ℤ: `(ω(h)h⁻¹ − 1)·g` in each block.
fn ideal_times_free(omega: &OrientationChar, rank: usize) -> IntMatrix {
    let g = omega.group();
    let order = g.order();
    let mut cols = Vec::new();
    for block in 0..rank {
        for h in 1..order {
            for x in 0..order {
                let mut v = vec![BigInt::zero(); rank * order];
                v[block * order + g.mul(g.inv(h), x)] += omega.sign(h);
                v[block * order + x] -= 1;
                cols.push(v);
            }
        }
    }
    IntMatrix::from_cols(&cols, rank * order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::find_diagonal;
    use crate::corpus::{cp2, lens, lens_complex, rp4, rp4_untwisted, s2_times_s2, sphere};
    use crate::groupring::trivial_group;

    fn collapse_to_s3(y: &PDChainComplex, s3: &PDChainComplex) -> ChainMap {
        let phi = GroupHom::collapse(y.complex.group(), s3.complex.group());
        let g = s3.complex.group();
        let mut comps: Vec<LambdaMatrix> = (0..=3).map(|k| LambdaMatrix::zeros(g, s3.complex.rank(k), y.complex.rank(k))).collect();
        comps[0] = LambdaMatrix::identity(g, 1);
        comps[3] = LambdaMatrix::identity(g, 1);
        ChainMap::new(phi, y.complex.clone(), s3.complex.clone(), comps).unwrap()
    }

    #[test]
    fn cap_on_s3_and_cp2() {
        let s3 = sphere(3).unwrap();
        let cap = cap_chain_map(&s3).unwrap();
        let one = GroupRingElement::one(&trivial_group());
        assert_eq!(cap.component(0).entries(), &[one.clone()]);
        assert_eq!(cap.component(3).entries(), &[one.clone()]);
        let cap = cap_chain_map(&cp2().unwrap()).unwrap();
        assert_eq!(cap.component(2).entries(), &[one]);
    }

    #[test]
    fn cap_sign_convention() {
        for x in [lens(5, 2).unwrap(), rp4().unwrap(), s2_times_s2().unwrap()] {
            let dual = x.dual().unwrap();
            let n = x.n();
            for j in 1..=n {
                let k = n - j;
                let sign = BigInt::from(if k % 2 == 1 { 1 } else { -1 });
                let expected = x.complex.boundary(k + 1).bar_transpose(&x.omega).unwrap().scale(&sign);
                assert_eq!(dual.complex.boundary(j), expected);
            }
            let cap = cap_chain_map(&x).unwrap();
            for j in 1..=n {
                let lhs = x.complex.boundary(j).after(&cap.component(j)).unwrap();
                let rhs = cap.component(j - 1).after(&dual.complex.boundary(j)).unwrap();
                assert_eq!(lhs, rhs, "degree {j}");
            }
        }
    }

    #[test]
    fn point_cap_is_identity() {
        let g = trivial_group();
        let pt = Arc::new(ReducedComplex::point(&g));
        let diag = find_diagonal(&pt).unwrap().unwrap();
        let x = PDChainComplex::new(pt, OrientationChar::trivial(g.clone()), vec![BigInt::one()], diag, 0).unwrap();
        let cap = cap_chain_map(&x).unwrap();
        assert_eq!(cap.component(0), LambdaMatrix::identity(&g, 1));
        assert!(verify_pd(&x).passed());
    }

    #[test]
    fn corpus_is_poincare() {
        let mut all = vec![sphere(3).unwrap(), sphere(4).unwrap(), cp2().unwrap(), s2_times_s2().unwrap(), rp4().unwrap()];
        for (p, q) in [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (7, 2)] {
            all.push(lens(p, q).unwrap());
        }
        for x in &all {
            let r = verify_pd(x);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn duality_in_homology() {
        for x in [lens(5, 2).unwrap(), rp4().unwrap()] {
            let dual = x.dual().unwrap();
            for j in 0..=x.n() {
                assert!(dual.complex.homology(j).unwrap().same_invariants(&x.complex.homology(j).unwrap()));
            }
        }
    }

    #[test]
    fn untwisted_rp4_fails_fundamental_cycle() {
        let r = verify_pd(&rp4_untwisted().unwrap());
        assert_eq!(r.first_failure().unwrap().name, "fundamental cycle");
        let c = crate::corpus::rp4_complex();
        assert!(fundamental_class_candidates(&c, &OrientationChar::trivial(c.group().clone()), 4).unwrap().is_empty());
        let w = OrientationChar::new(c.group().clone(), vec![0, 1]).unwrap();
        assert_eq!(fundamental_class_candidates(&c, &w, 4).unwrap()[0], vec![BigInt::one()]);
    }

    #[test]
    fn weakly_standard_checks() {
        for x in [lens(5, 2).unwrap(), lens(7, 3).unwrap(), sphere(3).unwrap()] {
            let w = WeaklyStandardData::last_cell(&x.complex, 3);
            assert!(check_weakly_standard(&x, &w).passed());
        }
        let c = Arc::new(lens_complex(4, 2).unwrap());
        let diag = find_diagonal(&c).unwrap().unwrap();
        let x = PDChainComplex::new(c.clone(), OrientationChar::trivial(c.group().clone()), vec![BigInt::one()], diag, 3).unwrap();
        let r = check_weakly_standard(&x, &WeaklyStandardData::last_cell(&c, 3));
        assert!(r.first_failure().unwrap().name.starts_with("(b)"), "{r}");
    }

    #[test]
    fn degrees() {
        let s3 = sphere(3).unwrap();
        let y = lens(5, 2).unwrap();
        assert_eq!(degree_of_map(&ChainMap::identity(&y.complex), &y, &y).unwrap(), BigInt::one());
        assert_eq!(degree_of_map(&collapse_to_s3(&y, &s3), &y, &s3).unwrap(), BigInt::one());
        let phi = GroupHom::collapse(y.complex.group(), s3.complex.group());
        let triv = ChainMap::trivial(&y.complex, &s3.complex, phi).unwrap();
        assert!(is_chain_map(&triv));
        assert_eq!(degree_of_map(&triv, &y, &s3).unwrap(), BigInt::zero());
    }

    #[test]
    fn degree_one_identity() {
        let x = lens(5, 2).unwrap();
        let w = WeaklyStandardData::last_cell(&x.complex, 3);
        let id = ChainMap::identity(&x.complex);
        let lower = id.components[..2].to_vec();
        let xi = construct_degree_one(&x, &w, &x, &w, &id.phi, &lower).unwrap().unwrap();
        assert_eq!(xi, id);
        assert_eq!(degree_of_map(&xi, &x, &x).unwrap(), BigInt::one());
    }

    #[test]
    fn degree_one_onto_s3() {
        let s3 = sphere(3).unwrap();
        let ws = WeaklyStandardData::last_cell(&s3.complex, 3);
        for (p, q) in [(2, 1), (5, 2), (7, 3)] {
            let y = lens(p, q).unwrap();
            let wy = WeaklyStandardData::last_cell(&y.complex, 3);
            let phi = GroupHom::collapse(y.complex.group(), s3.complex.group());
            let lower = collapse_to_s3(&y, &s3).components[..2].to_vec();
            let xi = construct_degree_one(&y, &wy, &s3, &ws, &phi, &lower).unwrap().unwrap();
            assert_eq!(degree_of_map(&xi, &y, &s3).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn degree_one_fails_between_distinct_lens_spaces() {
        let (y, x) = (lens(5, 1).unwrap(), lens(5, 2).unwrap());
        let (wy, wx) = (WeaklyStandardData::last_cell(&y.complex, 3), WeaklyStandardData::last_cell(&x.complex, 3));
        let phi = GroupHom::identity(y.complex.group());
        let id = ChainMap::new(phi.clone(), y.complex.clone(), x.complex.clone(), ChainMap::identity(&x.complex).components).unwrap();
        let out = construct_degree_one(&y, &wy, &x, &wx, &phi, &id.components[..2]).unwrap();
        assert_eq!(out.unwrap_err().step, 2);
    }
}
