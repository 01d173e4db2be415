use num_bigint::BigInt;
use num_traits::Zero;

use super::{solve_int, IntMatrix, Lattice, LinalgError};
use crate::groupring::{same_group, Group, GroupHom, GroupRingElement, OrientationChar};

/// A matrix over Λ = ℤ[π].
///
/// Two readings are used. As a plain matrix, products are the ordinary ones
/// and [`LambdaMatrix::lambda_to_int`] is multiplicative. As a map of free
/// left modules `Λ^cols → Λ^rows`, column `j` lists the coefficients of the
/// image of the `j`-th basis element, so `Σ λ_j x_j ↦ Σ_i (Σ_j λ_j a_ij) y_i`;
/// see [`LambdaMatrix::module_map_to_int`] and [`LambdaMatrix::after`].
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    group: Group,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl std::fmt::Debug for LambdaMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LambdaMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl LambdaMatrix {
    pub fn zeros(group: &Group, rows: usize, cols: usize) -> Self {
        LambdaMatrix { group: group.clone(), rows, cols, entries: vec![GroupRingElement::zero(group); rows * cols] }
    }

    pub fn identity(group: &Group, n: usize) -> Self {
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one(group));
        }
        m
    }

    /// Row-major entries.
    pub fn from_entries(group: &Group, rows: usize, cols: usize, entries: Vec<GroupRingElement>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| !same_group(e.group(), group)) {
            return Err(LinalgError::Group(crate::groupring::GroupError::GroupMismatch));
        }
        Ok(LambdaMatrix { group: group.clone(), rows, cols, entries })
    }

    /// Integer matrix with every entry read as a multiple of the identity.
    pub fn from_int(group: &Group, m: &IntMatrix) -> Self {
        let entries = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| GroupRingElement::from_int(group, m.get(i, j).clone()))
            .collect();
        LambdaMatrix { group: group.clone(), rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn from_columns(group: &Group, rows: usize, columns: &[Vec<GroupRingElement>]) -> Self {
        let mut m = Self::zeros(group, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElement) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<GroupRingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<(), LinalgError> {
        if !same_group(&self.group, &other.group) {
            return Err(LinalgError::Group(crate::groupring::GroupError::GroupMismatch));
        }
        Ok(())
    }

    /// Ordinary matrix product `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(&self.group, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Composite of module maps: `self ∘ first`, i.e. `(self ∘ first)_ik = Σ_j first_jk · self_ij`.
    pub fn after(&self, first: &Self) -> Result<Self, LinalgError> {
        self.check_same(first)?;
        if self.cols != first.rows {
            return Err(LinalgError::Shape(format!("cannot compose {}x{} after {}x{}", self.rows, self.cols, first.rows, first.cols)));
        }
        let mut out = Self::zeros(&self.group, self.rows, first.cols);
        for k in 0..first.cols {
            for j in 0..first.rows {
                let e = first.get(j, k);
                if e.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let d = self.get(i, j);
                    if !d.is_zero() {
                        let idx = i * first.cols + k;
                        out.entries[idx] = &out.entries[idx] + &(e * d);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Image of `Σ λ_j x_j` under the module map.
    pub fn apply_module(&self, v: &[GroupRingElement]) -> Vec<GroupRingElement> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = GroupRingElement::zero(&self.group);
                for (j, l) in v.iter().enumerate() {
                    let d = self.get(i, j);
                    if !l.is_zero() && !d.is_zero() {
                        acc = &acc + &(l * d);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape("sum of differently shaped matrices".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(LambdaMatrix { group: self.group.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let entries = self.entries.iter().map(|e| e.scale(k)).collect();
        LambdaMatrix { group: self.group.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Entrywise bar involution followed by transposition.
    pub fn bar_transpose(&self, omega: &OrientationChar) -> Result<Self, LinalgError> {
        let mut out = Self::zeros(&self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).bar(omega)?);
            }
        }
        Ok(out)
    }

    /// Entrywise image under φ_♯.
    pub fn push(&self, phi: &GroupHom) -> Result<Self, LinalgError> {
        let entries = self.entries.iter().map(|e| e.push(phi)).collect::<Result<Vec<_>, _>>()?;
        Ok(LambdaMatrix { group: phi.target().clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Entrywise [`GroupRingElement::twisted_int`]: the map induced on `ℤ^ω ⊗_Λ −`.
    pub fn twisted_int(&self, omega: &OrientationChar) -> IntMatrix {
        let data = self.entries.iter().map(|e| e.twisted_int(omega)).collect();
        IntMatrix::from_vec(self.rows, self.cols, data)
    }

    /// Block matrix of left-regular representations.
    pub fn lambda_to_int(&self) -> IntMatrix {
        self.blocks(|e| e.regular_rep())
    }

    /// Integer matrix of the module map on the ℤ-basis `g·x_j` (index `j·|π| + g`).
    pub fn module_map_to_int(&self) -> IntMatrix {
        self.blocks(|e| e.right_regular_rep())
    }

    fn blocks(&self, rep: impl Fn(&GroupRingElement) -> IntMatrix) -> IntMatrix {
        let n = self.group.order();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.put_block(i * n, j * n, &rep(e));
                }
            }
        }
        out
    }

    /// Reads the module map back from [`LambdaMatrix::module_map_to_int`]
    /// form; only the columns for the identity element are consulted.
    pub fn from_module_int(group: &Group, m: &IntMatrix) -> Self {
        let n = group.order();
        assert!(m.rows() % n == 0 && m.cols() % n == 0, "dimensions not multiples of |π|");
        let (rows, cols) = (m.rows() / n, m.cols() / n);
        let columns: Vec<Vec<GroupRingElement>> = (0..cols).map(|j| vector_from_coords(group, &m.col(j * n))).collect();
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Self::from_columns(group, rows, &columns)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack widths");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        LambdaMatrix { group: self.group.clone(), rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack heights");
        let mut out = Self::zeros(&self.group, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }
}

/// ℤ-coordinates of a vector over Λ (index `i·|π| + g`).
pub fn vector_coords(v: &[GroupRingElement]) -> Vec<BigInt> {
    v.iter().flat_map(|e| e.to_dense()).collect()
}

pub fn vector_from_coords(group: &Group, coords: &[BigInt]) -> Vec<GroupRingElement> {
    let n = group.order();
    assert!(coords.len() % n == 0, "coordinate length not a multiple of |π|");
    coords.chunks(n).map(|c| GroupRingElement::from_dense(group, c.to_vec())).collect()
}

/// Some `x` with `A·x = b`, decided exactly over Λ.
pub fn solve_lambda(a: &LambdaMatrix, b: &[GroupRingElement]) -> Result<Option<Vec<GroupRingElement>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Shape(format!("matrix has {} rows, vector has {}", a.rows(), b.len())));
    }
    if b.iter().any(|x| !same_group(x.group(), a.group())) {
        return Err(LinalgError::Group(crate::groupring::GroupError::GroupMismatch));
    }
    if b.iter().all(|x| x.is_zero()) {
        return Ok(Some(vec![GroupRingElement::zero(a.group()); a.cols()]));
    }
    let x = solve_int(&a.lambda_to_int(), &vector_coords(b))?;
    Ok(x.map(|x| vector_from_coords(a.group(), &x)))
}

/// Whether the right Λ-module spanned by `gens` is Ī(π), the image of the
/// augmentation ideal under the bar involution.
pub fn generates_ideal(gens: &[GroupRingElement], omega: &OrientationChar) -> Result<bool, LinalgError> {
    let group = omega.group();
    if gens.iter().any(|x| !same_group(x.group(), group)) {
        return Err(LinalgError::Group(crate::groupring::GroupError::GroupMismatch));
    }
    let n = group.order();
    let span = Lattice::from_vectors(n, gens.iter().flat_map(|a| (0..n).map(move |g| (a * &GroupRingElement::basis(group, g)).to_dense())));
    let ideal = Lattice::from_vectors(
        n,
        (0..n).map(|g| {
            let mut v = vec![BigInt::zero(); n];
            v[group.inv(g)] += omega.sign(g);
            v[0] -= 1;
            v
        }),
    );
    Ok(span == ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::cyclic_group;

    fn el(group: &Group, terms: &[(usize, i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(group, terms.iter().copied())
    }

    #[test]
    fn lambda_to_int_examples() {
        let g = cyclic_group(2).unwrap();
        assert_eq!(LambdaMatrix::identity(&g, 2).lambda_to_int(), IntMatrix::identity(4));
        let m = LambdaMatrix::from_entries(&g, 1, 1, vec![el(&g, &[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(m.lambda_to_int(), IntMatrix::from_i64(2, 2, &[1, 1, 1, 1]));
    }

    #[test]
    fn solve_examples() {
        let g = cyclic_group(2).unwrap();
        let a = LambdaMatrix::from_entries(&g, 1, 1, vec![el(&g, &[(0, -1), (1, 1)])]).unwrap();
        let b = vec![el(&g, &[(0, 2), (1, -2)])];
        let x = solve_lambda(&a, &b).unwrap().unwrap();
        assert_eq!(&a.get(0, 0).clone() * &x[0], b[0]);
        assert_eq!(solve_lambda(&a, &[GroupRingElement::zero(&g)]).unwrap().unwrap()[0], GroupRingElement::zero(&g));
        let a = LambdaMatrix::from_entries(&g, 1, 1, vec![el(&g, &[(0, 1), (1, 1)])]).unwrap();
        assert!(solve_lambda(&a, &[GroupRingElement::one(&g)]).unwrap().is_none());
    }

    #[test]
    fn ideal_generation() {
        for p in [2, 3, 5, 7] {
            let g = cyclic_group(p).unwrap();
            let omega = OrientationChar::trivial(g.clone());
            assert!(generates_ideal(&[el(&g, &[(1, 1), (0, -1)])], &omega).unwrap());
            assert!(!generates_ideal(&[], &omega).unwrap());
        }
        let g = cyclic_group(4).unwrap();
        let omega = OrientationChar::trivial(g.clone());
        assert!(!generates_ideal(&[el(&g, &[(2, 1), (0, -1)])], &omega).unwrap());
        let one = crate::groupring::trivial_group();
        assert!(generates_ideal(&[], &OrientationChar::trivial(one)).unwrap());
    }

    #[test]
    fn module_composition_matches_integer_composition() {
        let g = cyclic_group(3).unwrap();
        let d = LambdaMatrix::from_entries(&g, 1, 2, vec![el(&g, &[(1, 1)]), el(&g, &[(0, 2), (2, -1)])]).unwrap();
        let e = LambdaMatrix::from_entries(&g, 2, 1, vec![el(&g, &[(2, 1), (0, 1)]), el(&g, &[(1, 3)])]).unwrap();
        let composite = d.after(&e).unwrap();
        assert_eq!(composite.module_map_to_int(), &d.module_map_to_int() * &e.module_map_to_int());
        assert_eq!(LambdaMatrix::from_module_int(&g, &composite.module_map_to_int()), composite);
    }
}
