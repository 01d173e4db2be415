//! Whitehead's quadratic functor Γ on finitely generated abelian groups.
//!
//! For `A = ⊕ ℤ/dᵢ·eᵢ` (with `dᵢ = 0` for ℤ), `Γ(A)` has basis `γ(eᵢ)` and
//! `[eᵢ, eⱼ]` for `i < j`, where `γ(eᵢ)` has order `dᵢ` for odd `dᵢ`, `2dᵢ`
//! for even `dᵢ`, and `[eᵢ, eⱼ]` has order `gcd(dᵢ, dⱼ)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{AbelianGroup, IntMatrix, Lattice, Subquotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadraticError {
    #[error("cyclic orders must be 0 or at least 2, got {0}")]
    InvalidOrder(BigInt),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not a quadratic map: {0}")]
    NotQuadratic(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// `ℤ/d₁ ⊕ … ⊕ ℤ/d_r` with a fixed basis `e₁, …, e_r`; `dᵢ = 0` means ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FGAbelian {
    orders: Vec<BigInt>,
}

impl FGAbelian {
    pub fn new(orders: Vec<BigInt>) -> Result<Self, QuadraticError> {
        if let Some(d) = orders.iter().find(|d| !d.is_zero() && *d < &BigInt::from(2)) {
            return Err(QuadraticError::InvalidOrder(d.clone()));
        }
        Ok(FGAbelian { orders })
    }

    pub fn from_i64(orders: &[i64]) -> Result<Self, QuadraticError> {
        Self::new(orders.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|d| !d.is_zero())
    }

    /// Reduces each coordinate into `0..dᵢ`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter().zip(&self.orders).map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) }).collect()
    }

    pub fn basis(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = BigInt::one();
        v
    }

    /// All elements of a finite group, in lexicographic order.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.orders {
            let mut next = Vec::new();
            for v in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut w: Vec<BigInt> = v.clone();
                    w.push(k.clone());
                    next.push(w);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Invariant factor form.
    pub fn invariants(&self) -> AbelianGroup {
        AbelianGroup::from_cyclic_orders(&self.orders)
    }

    /// `A ⊗ B` with basis `eᵢ ⊗ fⱼ` at index `i·rank(B) + j`.
    pub fn tensor(&self, other: &FGAbelian) -> FGAbelian {
        let orders = self.orders.iter().flat_map(|a| other.orders.iter().map(move |b| a.gcd(b))).collect();
        FGAbelian { orders }
    }
}

impl fmt::Display for FGAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism given by the images of the basis (columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    pub source: FGAbelian,
    pub target: FGAbelian,
    pub matrix: IntMatrix,
}

impl AbelianHom {
    /// Checks `dⱼ·f(eⱼ) = 0` for every basis element and reduces entries.
    pub fn new(source: FGAbelian, target: FGAbelian, matrix: IntMatrix) -> Result<Self, QuadraticError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(QuadraticError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let mut reduced = IntMatrix::zeros(matrix.rows(), matrix.cols());
        for j in 0..source.rank() {
            let col = target.reduce(&matrix.col(j));
            let dj = &source.orders[j];
            let killed = target.reduce(&col.iter().map(|x| x * dj).collect::<Vec<_>>());
            if killed.iter().any(|x| !x.is_zero()) {
                return Err(QuadraticError::NotHomomorphism(format!("e_{} has order {dj} but its image does not", j + 1)));
            }
            for (i, x) in col.into_iter().enumerate() {
                reduced.set(i, j, x);
            }
        }
        Ok(AbelianHom { source, target, matrix: reduced })
    }

    pub fn from_i64(source: &FGAbelian, target: &FGAbelian, rows: &[i64]) -> Result<Self, QuadraticError> {
        Self::new(source.clone(), target.clone(), IntMatrix::from_i64(target.rank(), source.rank(), rows))
    }

    pub fn identity(a: &FGAbelian) -> Self {
        AbelianHom { source: a.clone(), target: a.clone(), matrix: IntMatrix::identity(a.rank()) }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &AbelianHom) -> Result<AbelianHom, QuadraticError> {
        if self.target != other.source {
            return Err(QuadraticError::Shape("homomorphisms do not compose".into()));
        }
        let m = other.matrix.try_mul(&self.matrix).map_err(|e| QuadraticError::Shape(e.to_string()))?;
        AbelianHom::new(self.source.clone(), other.target.clone(), m)
    }

    /// Cokernel as an abstract group with representatives in the target.
    pub fn cokernel(&self) -> Subquotient {
        let n = self.target.rank();
        let mut cols: Vec<Vec<BigInt>> = (0..self.matrix.cols()).map(|j| self.matrix.col(j)).collect();
        for (i, d) in self.target.orders.iter().enumerate() {
            if !d.is_zero() {
                let mut v = vec![BigInt::zero(); n];
                v[i] = d.clone();
                cols.push(v);
            }
        }
        Subquotient::new(&Lattice::full(n), &Lattice::from_vectors(n, cols)).expect("sublattice of the full lattice")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaBasis {
    /// `γ(eᵢ)`
    Gamma(usize),
    /// `[eᵢ, eⱼ]` with `i < j`
    Bracket(usize, usize),
}

/// `Γ(A)` with its structural basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGroup {
    pub source: FGAbelian,
    pub group: FGAbelian,
    pub labels: Vec<GammaBasis>,
}

fn gamma_order(d: &BigInt) -> BigInt {
    if d.is_even() {
        d * 2
    } else {
        d.clone()
    }
}

pub fn gamma_group(a: &FGAbelian) -> GammaGroup {
    let r = a.rank();
    let mut labels: Vec<GammaBasis> = (0..r).map(GammaBasis::Gamma).collect();
    let mut orders: Vec<BigInt> = a.orders.iter().map(gamma_order).collect();
    for i in 0..r {
        for j in i + 1..r {
            labels.push(GammaBasis::Bracket(i, j));
            orders.push(a.orders[i].gcd(&a.orders[j]));
        }
    }
    GammaGroup { source: a.clone(), group: FGAbelian { orders }, labels }
}

impl GammaGroup {
    fn bracket_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let r = self.source.rank();
        r + i * r - i * (i + 1) / 2 + (j - i - 1)
    }

    /// `γ(Σ nᵢeᵢ) = Σ nᵢ²γ(eᵢ) + Σ_{i<j} nᵢnⱼ[eᵢ, eⱼ]`
    pub fn eval(&self, a: &[BigInt]) -> Vec<BigInt> {
        let a = self.source.reduce(a);
        let mut out = vec![BigInt::zero(); self.group.rank()];
        for i in 0..a.len() {
            out[i] = &a[i] * &a[i];
            for j in i + 1..a.len() {
                out[self.bracket_index(i, j)] = &a[i] * &a[j];
            }
        }
        self.group.reduce(&out)
    }

    /// `[a, b] = γ(a + b) − γ(a) − γ(b)`
    pub fn bracket(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.group.rank()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let c = x * y;
                if i == j {
                    out[i] += c * 2;
                } else {
                    out[self.bracket_index(i, j)] += c;
                }
            }
        }
        self.group.reduce(&out)
    }

    /// `P: A ⊗ A → Γ(A)`, `a ⊗ b ↦ [a, b]`.
    pub fn whitehead_p(&self) -> AbelianHom {
        let r = self.source.rank();
        let t = self.source.tensor(&self.source);
        let mut m = IntMatrix::zeros(self.group.rank(), r * r);
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    m.set(i, i * r + i, BigInt::from(2));
                } else {
                    m.set(self.bracket_index(i, j), i * r + j, BigInt::one());
                }
            }
        }
        AbelianHom::new(t, self.group.clone(), m).expect("P is well defined")
    }

    /// `H: Γ(A) → A ⊗ A`, `γ(a) ↦ a ⊗ a`.
    pub fn whitehead_h(&self) -> AbelianHom {
        let r = self.source.rank();
        let t = self.source.tensor(&self.source);
        let mut m = IntMatrix::zeros(r * r, self.group.rank());
        for (col, label) in self.labels.iter().enumerate() {
            match *label {
                GammaBasis::Gamma(i) => m.set(i * r + i, col, BigInt::one()),
                GammaBasis::Bracket(i, j) => {
                    m.set(i * r + j, col, BigInt::one());
                    m.set(j * r + i, col, BigInt::one());
                }
            }
        }
        AbelianHom::new(self.group.clone(), t, m).expect("H is well defined")
    }
}

/// `Λ²A = coker(H: Γ(A) → A ⊗ A)`.
pub fn exterior_square(a: &FGAbelian) -> AbelianGroup {
    gamma_group(a).whitehead_h().cokernel().group().invariants()
}

/// `Γ(f)`, determined by `γ(eᵢ) ↦ γ(f eᵢ)` and `[eᵢ, eⱼ] ↦ [f eᵢ, f eⱼ]`.
pub fn gamma_induced(f: &AbelianHom) -> AbelianHom {
    let (ga, gb) = (gamma_group(&f.source), gamma_group(&f.target));
    let images: Vec<Vec<BigInt>> = (0..f.source.rank()).map(|i| f.matrix.col(i)).collect();
    let cols: Vec<Vec<BigInt>> = ga
        .labels
        .iter()
        .map(|l| match *l {
            GammaBasis::Gamma(i) => gb.eval(&images[i]),
            GammaBasis::Bracket(i, j) => gb.bracket(&images[i], &images[j]),
        })
        .collect();
    AbelianHom::new(ga.group, gb.group, IntMatrix::from_cols(&cols, gb.labels.len())).expect("Γ(f) is well defined")
}

/// A quadratic map `A → B` recorded by `f(eᵢ)` and the cross effects
/// `f(eᵢ + eⱼ) − f(eᵢ) − f(eⱼ)` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticData {
    pub source: FGAbelian,
    pub target: FGAbelian,
    pub values: Vec<Vec<BigInt>>,
    pub cross: Vec<Vec<Vec<BigInt>>>,
}

impl QuadraticData {
    /// Samples `f` on the basis and on sums of pairs.
    pub fn from_fn(source: &FGAbelian, target: &FGAbelian, f: impl Fn(&[BigInt]) -> Vec<BigInt>) -> Self {
        let r = source.rank();
        let values: Vec<Vec<BigInt>> = (0..r).map(|i| target.reduce(&f(&source.basis(i)))).collect();
        let cross = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut s = source.basis(i);
                        s[j] += 1;
                        let fs = f(&s);
                        let v: Vec<BigInt> = fs.iter().zip(&values[i]).zip(&values[j]).map(|((a, b), c)| a - b - c).collect();
                        target.reduce(&v)
                    })
                    .collect()
            })
            .collect();
        QuadraticData { source: source.clone(), target: target.clone(), values, cross }
    }
}

/// The homomorphism `f^□: Γ(A) → B` with `f^□∘γ = f`.
pub fn f_square(q: &QuadraticData) -> Result<AbelianHom, QuadraticError> {
    let g = gamma_group(&q.source);
    let r = q.source.rank();
    if q.values.len() != r || q.cross.len() != r || q.cross.iter().any(|row| row.len() != r) {
        return Err(QuadraticError::Shape("quadratic data does not match the source rank".into()));
    }
    let cols: Vec<Vec<BigInt>> = g
        .labels
        .iter()
        .map(|l| match *l {
            GammaBasis::Gamma(i) => q.values[i].clone(),
            GammaBasis::Bracket(i, j) => q.cross[i][j].clone(),
        })
        .collect();
    for i in 0..r {
        let doubled: Vec<BigInt> = q.values[i].iter().map(|x| x * 2).collect();
        if q.target.reduce(&doubled) != q.target.reduce(&q.cross[i][i]) {
            return Err(QuadraticError::NotQuadratic(format!("[e_{0}, e_{0}] ≠ 2f(e_{0})", i + 1)));
        }
    }
    AbelianHom::new(g.group, q.target.clone(), IntMatrix::from_cols(&cols, q.target.rank()))
        .map_err(|e| QuadraticError::NotQuadratic(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_gammas() {
        let g = |o: &[i64]| gamma_group(&FGAbelian::from_i64(o).unwrap()).group.invariants();
        assert!(g(&[0]).same_invariants(&AbelianGroup::from_i64(1, &[])));
        assert!(g(&[2]).same_invariants(&AbelianGroup::from_i64(0, &[4])));
        assert!(g(&[3]).same_invariants(&AbelianGroup::from_i64(0, &[3])));
        assert!(g(&[2, 2]).same_invariants(&AbelianGroup::from_i64(0, &[2, 4, 4])));
    }

    #[test]
    fn eval_and_brackets() {
        let g = gamma_group(&FGAbelian::from_i64(&[0]).unwrap());
        assert_eq!(g.eval(&z(&[0])), z(&[0]));
        assert_eq!(g.eval(&z(&[2])), z(&[4]));
        assert_eq!(g.bracket(&z(&[1]), &z(&[1])), z(&[2]));
        let g2 = gamma_group(&FGAbelian::from_i64(&[0, 0]).unwrap());
        let p = g2.whitehead_p();
        assert_eq!(p.apply(&z(&[0, 1, 0, 0])), z(&[0, 0, 1]));
        let ph = g2.whitehead_h().then(&p).unwrap();
        assert_eq!(ph.matrix, IntMatrix::identity(3).scale(&BigInt::from(2)));
    }

    #[test]
    fn h_on_z2() {
        let a = FGAbelian::from_i64(&[2]).unwrap();
        let g = gamma_group(&a);
        let h = g.whitehead_h();
        assert_eq!(h.apply(&z(&[1])), z(&[1]));
        assert_eq!(h.apply(&z(&[2])), z(&[0]));
        assert!(exterior_square(&a).is_trivial());
        assert!(exterior_square(&FGAbelian::from_i64(&[0, 0]).unwrap()).same_invariants(&AbelianGroup::from_i64(1, &[])));
    }

    #[test]
    fn universal_property_mod_two_square() {
        let a = FGAbelian::from_i64(&[0]).unwrap();
        let b = FGAbelian::from_i64(&[4]).unwrap();
        let f = |v: &[BigInt]| {
            let m = v[0].mod_floor(&BigInt::from(2));
            vec![&m * &m]
        };
        let q = QuadraticData::from_fn(&a, &b, f);
        let fs = f_square(&q).unwrap();
        let g = gamma_group(&a);
        for n in -6..=6 {
            let x = z(&[n]);
            assert_eq!(fs.apply(&g.eval(&x)), b.reduce(&f(&x)));
        }
    }

    #[test]
    fn non_homomorphism_rejected() {
        let a = FGAbelian::from_i64(&[2]).unwrap();
        let b = FGAbelian::from_i64(&[3]).unwrap();
        assert!(matches!(AbelianHom::from_i64(&a, &b, &[1]), Err(QuadraticError::NotHomomorphism(_))));
    }
}
