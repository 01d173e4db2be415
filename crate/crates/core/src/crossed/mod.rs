//! Free-group words, totally free pre-crossed modules, Fox boundaries and
//! the 2-type complex `P(∂_f, B)`.

mod coset;
mod pt;
mod words;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use coset::{enumerate, Enumerated};
pub use pt::{build_pt, pt_homology, PTComplex};
pub use words::{peiffer_commutator, FreeWord, Rho2Word};

use crate::groupring::{GroupError, GroupRingElement};
use crate::linalg::{LambdaMatrix, Lattice, LinalgError, Subquotient};
use crate::quadratic::QuadraticError;

/// Default cap on the number of cosets defined during enumeration.
pub const DEFAULT_COSET_BOUND: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("letter {generator}^{exponent} is not valid over {alphabet} generators")]
    BadLetter { generator: usize, exponent: i8, alphabet: usize },
    #[error("words live over different alphabets")]
    AlphabetMismatch,
    #[error("coset enumeration exceeded {0} cosets")]
    EnumerationBound(usize),
    #[error("B generator {0} is not a cycle of d2")]
    NotInKernel(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("homology pattern violated: {0}")]
    Pattern(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quadratic(#[from] QuadraticError),
}

/// The totally free pre-crossed module `∂_f: ⟨E₂ × ρ₁⟩ → ⟨E₁⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreCrossedModule {
    pub e1: usize,
    pub f: Vec<FreeWord>,
}

/// `C₂ → C₁ → C₀` of the presentation over `Λ = ℤ[π₁]`.
#[derive(Clone, Debug)]
pub struct FoxBoundary {
    pub pi1: Enumerated,
    pub d2: LambdaMatrix,
    pub d1: LambdaMatrix,
}

impl PreCrossedModule {
    pub fn new(e1: usize, f: Vec<FreeWord>) -> Result<Self, CrossedError> {
        if f.iter().any(|w| w.alphabet() != e1) {
            return Err(CrossedError::AlphabetMismatch);
        }
        Ok(PreCrossedModule { e1, f })
    }

    pub fn e2(&self) -> usize {
        self.f.len()
    }

    pub fn boundary(&self, xi: &Rho2Word) -> Result<FreeWord, CrossedError> {
        xi.boundary(&self.f)
    }

    pub fn peiffer(&self, xi: &Rho2Word, eta: &Rho2Word) -> Result<Rho2Word, CrossedError> {
        peiffer_commutator(xi, eta, &self.f)
    }

    pub fn pi1(&self, bound: usize) -> Result<Enumerated, CrossedError> {
        enumerate(self.e1, &self.f, bound)
    }

    pub fn fox_boundary(&self, bound: usize) -> Result<FoxBoundary, CrossedError> {
        let pi1 = self.pi1(bound)?;
        let g = pi1.group.clone();
        let mut d2 = LambdaMatrix::zeros(&g, self.e1, self.e2());
        for (x, w) in self.f.iter().enumerate() {
            for (i, d) in fox_derivatives(w, &pi1).into_iter().enumerate() {
                d2.set(i, x, d);
            }
        }
        let mut d1 = LambdaMatrix::zeros(&g, 1, self.e1);
        for i in 0..self.e1 {
            let t = GroupRingElement::basis(&g, pi1.generators[i]);
            d1.set(0, i, &t - &GroupRingElement::one(&g));
        }
        Ok(FoxBoundary { pi1, d2, d1 })
    }
}

/// `∂w/∂a_i` pushed to `ℤ[π₁]`, with `∂(uv) = ∂u + u·∂v`.
pub fn fox_derivatives(w: &FreeWord, pi1: &Enumerated) -> Vec<GroupRingElement> {
    let g = &pi1.group;
    let mut dense = vec![vec![BigInt::zero(); g.order()]; w.alphabet()];
    let mut prefix = 0;
    for &(i, e) in w.letters() {
        let a = pi1.generators[i];
        if e == 1 {
            dense[i][prefix] += 1;
            prefix = g.mul(prefix, a);
        } else {
            prefix = g.mul(prefix, g.inv(a));
            dense[i][prefix] -= 1;
        }
    }
    dense.into_iter().map(|d| GroupRingElement::from_dense(g, d)).collect()
}

/// `u ⊗ v` in the ℤ-basis `i·dim(v) + j`.
pub fn tensor_coords(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

/// `Γ(L) ⊂ L ⊗ L` spanned by `k⊗k` and `k⊗k′ + k′⊗k`.
pub fn gamma_lattice(l: &Lattice) -> Lattice {
    let dim = l.dim();
    let basis = l.basis();
    let mut out = Lattice::zero(dim * dim);
    for (a, u) in basis.iter().enumerate() {
        out.insert(tensor_coords(u, u));
        for v in &basis[a + 1..] {
            let s: Vec<BigInt> = tensor_coords(u, v).iter().zip(tensor_coords(v, u)).map(|(x, y)| x + y).collect();
            out.insert(s);
        }
    }
    out
}

/// `Pei₂/Pei₃ ≅ (C₂⊗C₂)/Γ(K)` with `K = ker d₂` over ℤ.
#[derive(Clone, Debug)]
pub struct PeifferQuotient {
    pub kernel: Lattice,
    pub quotient: Subquotient,
}

impl PeifferQuotient {
    pub fn new(fox: &FoxBoundary) -> Result<Self, CrossedError> {
        let d2 = fox.d2.module_map_to_int();
        let n = d2.cols();
        let kernel = Lattice::from_vectors(n, crate::linalg::ColumnEchelon::new(&d2).kernel_basis().iter().cloned());
        let quotient = Subquotient::new(&Lattice::full(n * n), &gamma_lattice(&kernel))?;
        Ok(PeifferQuotient { kernel, quotient })
    }

    /// Class of `t ∈ C₂⊗C₂`.
    pub fn omega_map(&self, t: &[BigInt]) -> Vec<BigInt> {
        self.quotient.class_of(t).expect("every tensor is a cycle")
    }
}

/// An element of `σ₂ = ρ₂/Pei₃` in normal form: the collected word
/// `x₀^{base₀}⋯` times the central Peiffer part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma2Element {
    pub base: Vec<BigInt>,
    pub peiffer: Vec<BigInt>,
}

/// Collects words of `σ₂` when `E₁ = ∅`, where `σ₂` is free nilpotent of
/// class 2 and Peiffer commutators are ordinary commutators.
#[derive(Clone, Debug)]
pub struct Collector {
    e2: usize,
    quotient: PeifferQuotient,
}

impl Collector {
    pub fn new(m: &PreCrossedModule) -> Result<Self, CrossedError> {
        if m.e1 != 0 {
            return Err(CrossedError::Unsupported("collection is implemented for E1 = {} only".into()));
        }
        let fox = m.fox_boundary(DEFAULT_COSET_BOUND)?;
        Ok(Collector { e2: m.e2(), quotient: PeifferQuotient::new(&fox)? })
    }

    pub fn quotient(&self) -> &PeifferQuotient {
        &self.quotient
    }

    pub fn identity(&self) -> Sigma2Element {
        Sigma2Element { base: vec![BigInt::zero(); self.e2], peiffer: self.quotient.omega_map(&vec![BigInt::zero(); self.e2 * self.e2]) }
    }

    /// `x^a · x^b = x^{a+b} · Ω(Σ_{i<j} a_j b_i e_j⊗e_i)`.
    fn cocycle(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let m = self.e2;
        let mut t = vec![BigInt::zero(); m * m];
        for i in 0..m {
            for j in i + 1..m {
                t[j * m + i] += &a[j] * &b[i];
            }
        }
        t
    }

    pub fn mul(&self, x: &Sigma2Element, y: &Sigma2Element) -> Sigma2Element {
        let c = self.quotient.omega_map(&self.cocycle(&x.base, &y.base));
        let torsion = &self.quotient.quotient.group().torsion;
        let peiffer = x
            .peiffer
            .iter()
            .zip(&y.peiffer)
            .zip(&c)
            .enumerate()
            .map(|(k, ((a, b), c))| {
                let s = a + b + c;
                match torsion.get(k) {
                    Some(d) => s.mod_floor(d),
                    None => s,
                }
            })
            .collect();
        let base = x.base.iter().zip(&y.base).map(|(a, b)| a + b).collect();
        Sigma2Element { base, peiffer }
    }

    pub fn collect(&self, w: &Rho2Word) -> Sigma2Element {
        w.letters().iter().fold(self.identity(), |acc, (x, _, e)| {
            let mut base = vec![BigInt::zero(); self.e2];
            base[*x] = BigInt::from(*e);
            let letter = Sigma2Element { base, peiffer: self.identity().peiffer };
            self.mul(&acc, &letter)
        })
    }

    /// `Ω(e_x ⊗ e_y)`.
    pub fn omega_basis(&self, x: usize, y: usize) -> Vec<BigInt> {
        let mut t = vec![BigInt::zero(); self.e2 * self.e2];
        t[x * self.e2 + y] = BigInt::one();
        self.quotient.omega_map(&t)
    }
}
