//! Fundamental triples: resolutions, pushed fundamental classes, isomorphism
//! and degree-one tests, and the PD⁴ obstruction target groups.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::{extend_chain_map, ChainError, ChainMap, ReducedComplex};
use crate::crossed::{build_pt, CrossedError, PTComplex, PreCrossedModule};
use crate::groupring::{Group, GroupError, GroupHom, GroupRingElement, OrientationChar};
use crate::linalg::{homology_subquotient, AbelianGroup, ColumnEchelon, IntMatrix, LambdaMatrix, Lattice, LinalgError, Subquotient};
use crate::poincare::PDChainComplex;
use crate::quadratic::{gamma_group, gamma_induced, AbelianHom, FGAbelian, QuadraticError};

/// Largest rank allowed in a bar resolution.
pub const DEFAULT_BAR_BOUND: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriplesError {
    #[error("bar resolution would need rank {0}, above the bound")]
    Bound(usize),
    #[error("complex is not a resolution: {0}")]
    NotAcyclic(String),
    #[error("no lift in degree {0}")]
    NoLift(i64),
    #[error("formal dimension {0} is not supported here")]
    Dimension(usize),
    #[error("chain data mismatch: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Quadratic(#[from] QuadraticError),
}

/// A free Λ-complex over `ℤ` that is exact in degrees `1..top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub complex: Arc<ReducedComplex>,
}

impl Resolution {
    /// Accepts `c` after checking `H₀ = ℤ` and `H_k = 0` for `0 < k < top`.
    pub fn new(c: ReducedComplex) -> Result<Self, TriplesError> {
        if !c.homology(0)?.same_invariants(&AbelianGroup::from_i64(1, &[])) {
            return Err(TriplesError::NotAcyclic("H0 is not Z".into()));
        }
        for k in 1..c.top() {
            let h = c.homology(k)?;
            if !h.is_trivial() {
                return Err(TriplesError::NotAcyclic(format!("H{k} = {h}")));
            }
        }
        Ok(Resolution { complex: Arc::new(c) })
    }

    pub fn group(&self) -> &Group {
        self.complex.group()
    }

    pub fn top(&self) -> i64 {
        self.complex.top()
    }

    /// `H_k(π; ℤ^ω)` for `k < top`.
    pub fn homology(&self, k: i64, omega: &OrientationChar) -> Result<Subquotient, TriplesError> {
        if k >= self.top() {
            return Err(TriplesError::NotAcyclic(format!("degree {k} needs a longer resolution")));
        }
        let c = &self.complex;
        Ok(homology_subquotient(&c.twisted_boundary(k + 1, omega), &c.twisted_boundary(k, omega))?)
    }
}

/// The normalized bar resolution through degree `top`.
pub fn bar_resolution(group: &Group, top: usize, bound: usize) -> Result<Resolution, TriplesError> {
    let n = group.order();
    let m = n - 1;
    let rank = |k: usize| m.pow(k as u32);
    if rank(top) > bound {
        return Err(TriplesError::Bound(rank(top)));
    }
    let index = |tuple: &[usize]| tuple.iter().fold(0, |acc, &g| acc * m + (g - 1));
    let tuple = |k: usize, mut i: usize| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = i % m + 1;
            i /= m;
        }
        t
    };
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let mut d = LambdaMatrix::zeros(group, rank(k - 1), rank(k));
        let mut add = |row: usize, col: usize, x: GroupRingElement| {
            let v = d.get(row, col) + &x;
            d.set(row, col, v);
        };
        for col in 0..rank(k) {
            let g = tuple(k, col);
            add(index(&g[1..]), col, GroupRingElement::basis(group, g[0]));
            for i in 1..k {
                let prod = group.mul(g[i - 1], g[i]);
                if prod != 0 {
                    let mut face = g[..i - 1].to_vec();
                    face.push(prod);
                    face.extend_from_slice(&g[i + 1..]);
                    add(index(&face), col, GroupRingElement::from_int(group, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
            add(index(&g[..k - 1]), col, GroupRingElement::from_int(group, if k % 2 == 0 { 1 } else { -1 }));
        }
        boundaries.push(d);
    }
    let ranks = (0..=top).map(rank).collect();
    Resolution::new(ReducedComplex::new(group, ranks, boundaries)?)
}

/// A resolution with `C₁ = Λ^{gens}`, `d₁ = (g − 1)` on a generating set and
/// higher cells added to kill homology.
pub fn small_resolution(group: &Group, top: usize) -> Result<Resolution, TriplesError> {
    let gens = group.generating_set();
    let mut d1 = LambdaMatrix::zeros(group, 1, gens.len());
    for (j, &g) in gens.iter().enumerate() {
        d1.set(0, j, &GroupRingElement::basis(group, g) - &GroupRingElement::one(group));
    }
    let c = ReducedComplex::new(group, vec![1, gens.len()], vec![d1])?;
    Resolution::new(c.kill_homology(1, top as i64)?)
}

/// A `φ`-equivariant chain map `C → F` over the identity on `C₀ = F₀ = Λ`.
pub fn lift_to_resolution(c: &Arc<ReducedComplex>, f: &Resolution, phi: &GroupHom) -> Result<ChainMap, TriplesError> {
    if c.top() > f.top() {
        return Err(TriplesError::NotAcyclic(format!("resolution stops below degree {}", c.top())));
    }
    extend_chain_map(phi, c, &f.complex, Vec::new())?.ok_or(TriplesError::NoLift(c.top()))
}

/// The type part of a triple.
#[derive(Clone, Debug)]
pub enum TypeData {
    /// `n = 3`: the group through a resolution.
    Group(Resolution),
    /// `n = 4`: the 2-type `P(∂_f, B)`.
    TwoType(Box<PTComplex>),
}

/// `(T, ω, t)` with `t` held as a cycle and its class in `H_n(T; ℤ^ω)`.
#[derive(Clone, Debug)]
pub struct FundamentalTriple {
    pub formal_dim: usize,
    pub group: Group,
    pub omega: OrientationChar,
    pub type_data: TypeData,
    pub homology: Subquotient,
    pub cycle: Vec<BigInt>,
    pub class: Vec<BigInt>,
}

impl FundamentalTriple {
    pub fn homology_group(&self) -> &AbelianGroup {
        self.homology.group()
    }

    pub fn is_zero(&self) -> bool {
        self.class.iter().all(Zero::is_zero)
    }
}

fn class_in(h: &Subquotient, cycle: &[BigInt]) -> Result<Vec<BigInt>, TriplesError> {
    h.class_of(cycle).ok_or_else(|| TriplesError::Mismatch("pushed fundamental cycle is not a cycle".into()))
}

/// The triple of a PD³ complex, pushed into a small resolution of `π`.
pub fn triple_pd3(x: &PDChainComplex) -> Result<FundamentalTriple, TriplesError> {
    triple_pd3_with(x, small_resolution(x.complex.group(), 4)?)
}

/// As [`triple_pd3`] with a caller-chosen resolution of length at least 4.
pub fn triple_pd3_with(x: &PDChainComplex, f: Resolution) -> Result<FundamentalTriple, TriplesError> {
    if x.formal_dim != 3 {
        return Err(TriplesError::Dimension(x.formal_dim));
    }
    let lift = lift_to_resolution(&x.complex, &f, &GroupHom::identity(x.complex.group()))?;
    let cycle = lift.twisted_component(3, &x.omega).mul_vec(&x.fundamental_cycle);
    let homology = f.homology(3, &x.omega)?;
    let class = class_in(&homology, &cycle)?;
    Ok(FundamentalTriple {
        formal_dim: 3,
        group: x.complex.group().clone(),
        omega: x.omega.clone(),
        type_data: TypeData::Group(f),
        homology,
        cycle,
        class,
    })
}

/// The triple of a simply connected PD⁴ complex in `P(∂_f, B)` with
/// `B = im d₃`. The 4-cells map to the `C₂ ⊗ C₂` part of their diagonal.
pub fn triple_pd4(x: &PDChainComplex, m: &PreCrossedModule) -> Result<FundamentalTriple, TriplesError> {
    if x.formal_dim != 4 {
        return Err(TriplesError::Dimension(x.formal_dim));
    }
    let c = &x.complex;
    if !c.group().is_trivial() {
        return Err(TriplesError::Unsupported("4-dimensional triples need a trivial fundamental group".into()));
    }
    let fox = m.fox_boundary(crate::crossed::DEFAULT_COSET_BOUND)?;
    let g = fox.pi1.group.clone();
    if !g.is_trivial() || fox.d2.rows() != c.rank(1) || fox.d2.cols() != c.rank(2) {
        return Err(TriplesError::Mismatch("pre-crossed module does not present the 2-skeleton".into()));
    }
    if fox.d2.module_map_to_int() != c.int_boundary(2) || fox.d1.module_map_to_int() != c.int_boundary(1) {
        return Err(TriplesError::Mismatch("Fox boundary differs from the complex".into()));
    }
    let d3 = c.int_boundary(3);
    let b_gens: Vec<Vec<GroupRingElement>> =
        d3.columns().iter().map(|v| v.iter().map(|x| GroupRingElement::from_int(&g, x.clone())).collect()).collect();
    let pt = build_pt(m, &b_gens)?;

    let e2 = c.rank(2);
    let nq = e2 * e2;
    let tensor = &x.diagonal.tensor;
    let delta = x.diagonal.map.int_component(4);
    let middle: Vec<Vec<BigInt>> = (0..c.rank(4))
        .map(|e| {
            let mut v = vec![BigInt::zero(); nq];
            for (row, &(i, a, b)) in tensor.basis.degrees[4].iter().enumerate() {
                if i == 2 {
                    v[a * e2 + b] += delta.get(row, e);
                }
            }
            v
        })
        .collect();

    // f₃ on a 3-cell is its B generator plus a Q part chosen so that
    // d f₄ = f₃ d.
    let p3 = pt.complex.module(3);
    let q_rel: Vec<Vec<BigInt>> = p3
        .relations()
        .module_map_to_int()
        .columns()
        .into_iter()
        .filter(|v| v[nq..].iter().all(Zero::is_zero))
        .map(|v| v[..nq].to_vec())
        .collect();
    let d4 = c.int_boundary(4);
    let r3 = c.rank(3);
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..r3 {
        for s in 0..nq {
            let mut col = vec![BigInt::zero(); nq * c.rank(4)];
            for e in 0..c.rank(4) {
                col[e * nq + s] = d4.get(j, e).clone();
            }
            cols.push(col);
        }
    }
    for e in 0..c.rank(4) {
        for r in &q_rel {
            let mut col = vec![BigInt::zero(); nq * c.rank(4)];
            col[e * nq..(e + 1) * nq].clone_from_slice(r);
            cols.push(col);
        }
    }
    let target: Vec<BigInt> = middle.iter().flat_map(|v| v.iter().map(|x| -x)).collect();
    if nq * c.rank(4) > 0 {
        ColumnEchelon::from_columns(nq * c.rank(4), cols)
            .solve(&target)
            .ok_or_else(|| TriplesError::Mismatch("diagonal does not lift to a map into P(T)".into()))?;
    }

    let mut cycle = vec![BigInt::zero(); nq];
    for (e, coeff) in x.fundamental_cycle.iter().enumerate() {
        for (slot, v) in cycle.iter_mut().zip(&middle[e]) {
            *slot += coeff * v;
        }
    }
    let homology = pt.complex.homology(4)?;
    let class = class_in(&homology, &cycle)?;
    Ok(FundamentalTriple {
        formal_dim: 4,
        group: c.group().clone(),
        omega: x.omega.clone(),
        type_data: TypeData::TwoType(Box::new(pt)),
        homology,
        cycle,
        class,
    })
}

/// `φ_* t` for `φ: π_T → π_U`, as a class of `U`'s homology.
fn push_class(t: &FundamentalTriple, u: &FundamentalTriple, phi: &GroupHom) -> Result<Vec<BigInt>, TriplesError> {
    match (&t.type_data, &u.type_data) {
        (TypeData::Group(f), TypeData::Group(f2)) => {
            let map = lift_to_resolution(&f.complex, f2, phi)?;
            let pushed = map.twisted_component(t.formal_dim as i64, &u.omega).mul_vec(&t.cycle);
            class_in(&u.homology, &pushed)
        }
        (TypeData::TwoType(p), TypeData::TwoType(q)) => {
            let same = p.fox.d2.module_map_to_int() == q.fox.d2.module_map_to_int() && p.b == q.b;
            if !same || !phi.is_bijective() {
                return Err(TriplesError::Unsupported("2-type maps other than the identity of matching data".into()));
            }
            class_in(&u.homology, &t.cycle)
        }
        _ => Err(TriplesError::Mismatch("triples of different kinds".into())),
    }
}

/// The first isomorphism `φ: π → π′` with `ω′φ = ω` and `φ_* t = t′`.
pub fn triples_isomorphic(t: &FundamentalTriple, u: &FundamentalTriple) -> Result<Option<GroupHom>, TriplesError> {
    if t.formal_dim != u.formal_dim {
        return Ok(None);
    }
    let candidates = match t.formal_dim {
        3 => t.group.isomorphisms(&u.group),
        _ => t.group.isomorphisms(&u.group).into_iter().take(1).collect(),
    };
    for phi in candidates {
        if u.omega.pull_back(&phi) != t.omega {
            continue;
        }
        if push_class(t, u, &phi)? == u.class {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Whether `φ: π_Y → π_X` is onto, matches orientations and sends `t_Y` to `t_X`.
pub fn degree_one_exists(ty: &FundamentalTriple, tx: &FundamentalTriple, phi: &GroupHom) -> Result<bool, TriplesError> {
    if ty.formal_dim != tx.formal_dim || !phi.is_surjective() || tx.omega.pull_back(phi) != ty.omega {
        return Ok(false);
    }
    Ok(push_class(ty, tx, phi)? == tx.class)
}

/// Target groups for the PD⁴ realization obstruction.
#[derive(Clone, Debug)]
pub struct ObstructionTargets {
    /// `H₂(C; Λ)` as an abelian group.
    pub h2: AbelianGroup,
    /// `H₀(π; Λ²H₂^ω)`.
    pub lambda2_coinvariants: AbelianGroup,
    /// `Ĥ⁰(π; Λ²H₂^ω)`, killed by `|π|`.
    pub lambda2_tate: AbelianGroup,
    /// Kernel of `H₀(π; Γ(H₂^ω)) → H₀(π; H₂^ω ⊗ H₂^ω)`.
    pub ker_h: AbelianGroup,
    pub odd_order: bool,
}

impl ObstructionTargets {
    /// `ker H` has exponent dividing 2, and is trivial for odd `|π|`.
    pub fn ker_h_is_two_torsion(&self) -> bool {
        match self.ker_h.exponent() {
            Some(e) => (e == BigInt::one() || e == BigInt::from(2)) && !(self.odd_order && e != BigInt::one()),
            None => false,
        }
    }

    /// For odd `|π|` every target exponent is odd.
    pub fn odd_exponents(&self) -> bool {
        let odd = |a: &AbelianGroup| a.torsion.iter().all(|d| d % 2 == BigInt::one());
        !self.odd_order || (odd(&self.lambda2_tate) && odd(&self.ker_h))
    }
}

fn relation_lattice(a: &FGAbelian) -> Lattice {
    let r = a.rank();
    Lattice::from_vectors(
        r,
        a.orders().iter().enumerate().filter(|(_, d)| !d.is_zero()).map(|(i, d)| {
            let mut v = vec![BigInt::zero(); r];
            v[i] = d.clone();
            v
        }),
    )
}

fn minus_identity_span(actions: &[IntMatrix]) -> Vec<Vec<BigInt>> {
    actions
        .iter()
        .flat_map(|m| {
            (0..m.cols()).map(move |j| {
                let mut c = m.col(j);
                c[j] -= 1;
                c
            })
        })
        .collect()
}

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (r, s) = (a.rows(), b.rows());
    let mut out = IntMatrix::zeros(r * s, r * s);
    for i in 0..r {
        for j in 0..r {
            for k in 0..s {
                for l in 0..s {
                    out.set(i * s + k, j * s + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    out
}

fn as_fg(sq: &Subquotient) -> Result<FGAbelian, TriplesError> {
    let g = sq.group();
    let mut orders = g.torsion.clone();
    orders.extend(std::iter::repeat_n(BigInt::zero(), g.free_rank));
    Ok(FGAbelian::new(orders)?)
}

/// Obstruction targets of a PD⁴ complex.
pub fn pd4_obstruction_targets(x: &PDChainComplex) -> Result<ObstructionTargets, TriplesError> {
    if x.formal_dim != 4 {
        return Err(TriplesError::Dimension(x.formal_dim));
    }
    obstruction_targets(&x.complex, &x.omega)
}

/// As [`pd4_obstruction_targets`] for any complex and character.
pub fn obstruction_targets(c: &ReducedComplex, omega: &OrientationChar) -> Result<ObstructionTargets, TriplesError> {
    let g = c.group();
    let n = g.order();
    let sq = homology_subquotient(&c.int_boundary(3), &c.int_boundary(2))?;
    let a = as_fg(&sq)?;
    let r = a.rank();
    let dim = c.rank(2) * n;
    let actions: Vec<IntMatrix> = (0..n)
        .map(|h| {
            let cols: Vec<Vec<BigInt>> = sq
                .generators()
                .iter()
                .map(|v| {
                    let mut w = vec![BigInt::zero(); dim];
                    for (idx, x) in v.iter().enumerate() {
                        let (i, k) = (idx / n, idx % n);
                        w[i * n + g.mul(h, k)] = x * omega.sign(h);
                    }
                    sq.class_of(&w).expect("translates of cycles are cycles")
                })
                .collect();
            IntMatrix::from_cols(&cols, r)
        })
        .collect();

    let gamma = gamma_group(&a);
    let tensor = a.tensor(&a);
    let h = gamma.whitehead_h();
    let gamma_actions: Vec<IntMatrix> = actions
        .iter()
        .map(|m| Ok(gamma_induced(&AbelianHom::new(a.clone(), a.clone(), m.clone())?).matrix))
        .collect::<Result<_, TriplesError>>()?;
    let tensor_actions: Vec<IntMatrix> = actions.iter().map(|m| kron(m, m)).collect();

    let tensor_rel = relation_lattice(&tensor).sum(&Lattice::from_vectors(r * r, minus_identity_span(&tensor_actions)));
    let image_h = Lattice::from_vectors(r * r, h.matrix.columns());
    let lambda2_rel = tensor_rel.sum(&image_h);
    let lambda2_coinvariants = Subquotient::new(&Lattice::full(r * r), &lambda2_rel)?.group().invariants();

    let gdim = gamma.group.rank();
    let gamma_rel = relation_lattice(&gamma.group).sum(&Lattice::from_vectors(gdim, minus_identity_span(&gamma_actions)));
    let ker_h = Subquotient::new(&tensor_rel.preimage(&h.matrix), &gamma_rel)?.group().invariants();

    // Tate Ĥ⁰ on Λ² = (A⊗A)/(rel + im H): invariants modulo norms.
    let base_rel = relation_lattice(&tensor).sum(&image_h);
    let stacked = tensor_actions.iter().fold(IntMatrix::zeros(0, r * r), |acc, m| {
        let mut d = m.clone();
        for i in 0..r * r {
            *d.get_mut(i, i) -= 1;
        }
        acc.vstack(&d)
    });
    let stacked_rel = Lattice::from_vectors(
        n * r * r,
        (0..n).flat_map(|k| {
            base_rel.basis().iter().map(move |v| {
                let mut w = vec![BigInt::zero(); n * r * r];
                w[k * r * r..(k + 1) * r * r].clone_from_slice(v);
                w
            })
        }),
    );
    let invariants = stacked_rel.preimage(&stacked);
    let norm = tensor_actions.iter().fold(IntMatrix::zeros(r * r, r * r), |acc, m| {
        let mut s = acc;
        for i in 0..r * r {
            for j in 0..r * r {
                *s.get_mut(i, j) += m.get(i, j);
            }
        }
        s
    });
    let norms = Lattice::from_vectors(r * r, norm.columns()).sum(&base_rel);
    let lambda2_tate = Subquotient::new(&invariants, &norms)?.group().invariants();

    Ok(ObstructionTargets { h2: sq.group().invariants(), lambda2_coinvariants, lambda2_tate, ker_h, odd_order: n % 2 == 1 })
}
