//! Finite groups given by multiplication tables, their integral group rings
//! Λ = ℤ[π], orientation characters and the bar involution.
//!
//! Elements of a group of order `n` are the indices `0..n`, with `0` the
//! identity. A [`GroupRingElement`] is a sparse integer combination of group
//! elements kept in canonical form: ascending element index, no zero
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("multiplication table row {row} has {len} entries, expected {order}")]
    BadRowLength { row: usize, len: usize, order: usize },
    #[error("multiplication table has {rows} rows, expected {order}")]
    BadRowCount { rows: usize, order: usize },
    #[error("table entry ({a},{b}) = {value} out of range")]
    EntryOutOfRange { a: usize, b: usize, value: usize },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    NoIdentity(usize),
    #[error("multiplication is not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("orientation character has {got} values, group order is {order}")]
    OrientationLength { got: usize, order: usize },
    #[error("orientation value {value} at element {element} is not 0 or 1")]
    OrientationValue { element: usize, value: u8 },
    #[error("orientation character is not a homomorphism: ω({a}·{b}) ≠ ω({a}) + ω({b})")]
    OrientationNotHom { a: usize, b: usize },
    #[error("group homomorphism has {got} images, source order is {order}")]
    HomLength { got: usize, order: usize },
    #[error("image {image} of element {element} out of range")]
    HomImageOutOfRange { element: usize, image: usize },
    #[error("map is not a homomorphism: φ({a}·{b}) ≠ φ({a})·φ({b})")]
    NotHom { a: usize, b: usize },
    #[error("operands live over different groups")]
    GroupMismatch,
}

/// A finite group presented by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inverse: Vec<usize>,
}

pub type Group = Arc<FiniteGroup>;

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let mut mult = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::BadRowLength { row, len: entries.len(), order });
            }
            for (b, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { a: row, b, value });
                }
            }
            mult.extend_from_slice(entries);
        }
        for a in 0..order {
            if mult[a] != a || mult[a * order] != a {
                return Err(GroupError::NoIdentity(a));
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| mult[a * order + b] == 0) {
                Some(b) if mult[b * order + a] == 0 => inverse[a] = b,
                _ => return Err(GroupError::NoInverse(a)),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mult[a * order + b];
                for c in 0..order {
                    let bc = mult[b * order + c];
                    if mult[ab * order + c] != mult[a * order + bc] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup { order, mult, inverse }))
    }

    /// The table of rows, in the layout accepted by [`FiniteGroup::from_table`].
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, mut k: i64) -> usize {
        let base = if k < 0 {
            k = -k;
            self.inv(a)
        } else {
            a
        };
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    /// A generating set chosen greedily: repeatedly add the smallest element
    /// of maximal order not yet in the generated subgroup.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = self.subgroup(&gens);
        while covered.len() < self.order {
            let next = (1..self.order)
                .filter(|x| covered.binary_search(x).is_err())
                .max_by(|&a, &b| self.element_order(a).cmp(&self.element_order(b)).then(b.cmp(&a)))
                .expect("uncovered element exists");
            gens.push(next);
            covered = self.subgroup(&gens);
        }
        gens
    }

    /// All isomorphisms `self → other`, enumerated by images of
    /// [`FiniteGroup::generating_set`] in lexicographic order.
    pub fn isomorphisms(self: &Group, other: &Group) -> Vec<GroupHom> {
        if self.order != other.order {
            return Vec::new();
        }
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let ord = self.element_order(g);
                (0..other.order).filter(|&h| other.element_order(h) == ord).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        self.enumerate_images(other, &gens, &candidates, 0, &mut choice, &mut out);
        out
    }

    fn enumerate_images(
        self: &Group,
        other: &Group,
        gens: &[usize],
        candidates: &[Vec<usize>],
        depth: usize,
        choice: &mut Vec<usize>,
        out: &mut Vec<GroupHom>,
    ) {
        if depth == gens.len() {
            let images: Vec<usize> = choice.clone();
            if let Some(hom) = GroupHom::extend_from_generators(self, other, gens, &images) {
                if hom.is_bijective() {
                    out.push(hom);
                }
            }
            return;
        }
        for &c in &candidates[depth] {
            if choice[..depth].contains(&c) {
                continue;
            }
            choice[depth] = c;
            self.enumerate_images(other, gens, candidates, depth + 1, choice, out);
        }
    }
}

/// ℤ/n with `i·j = (i + j) mod n`.
pub fn cyclic_group(n: usize) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(GroupError::EmptyGroup);
    }
    let mult = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    let inverse = (0..n).map(|i| (n - i) % n).collect();
    Ok(Arc::new(FiniteGroup { order: n, mult, inverse }))
}

pub fn trivial_group() -> Group {
    cyclic_group(1).expect("order 1")
}

/// Direct product with element `(g, h)` stored at index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Group {
    let (m, n) = (g.order, h.order);
    let order = m * n;
    let mut mult = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mult.push(g.mul(a / n, b / n) * n + h.mul(a % n, b % n));
        }
    }
    let inverse = (0..order).map(|a| g.inv(a / n) * n + h.inv(a % n)).collect();
    Arc::new(FiniteGroup { order, mult, inverse })
}

pub(crate) fn same_group(a: &Group, b: &Group) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A homomorphism ω: π → ℤ/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationChar {
    group: Group,
    values: Vec<u8>,
}

impl OrientationChar {
    pub fn new(group: Group, values: Vec<u8>) -> Result<Self, GroupError> {
        if values.len() != group.order() {
            return Err(GroupError::OrientationLength { got: values.len(), order: group.order() });
        }
        if let Some((element, &value)) = values.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(GroupError::OrientationValue { element, value });
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if values[group.mul(a, b)] != (values[a] + values[b]) % 2 {
                    return Err(GroupError::OrientationNotHom { a, b });
                }
            }
        }
        Ok(OrientationChar { group, values })
    }

    pub fn trivial(group: Group) -> Self {
        let values = vec![0; group.order()];
        OrientationChar { group, values }
    }

    /// Determined by values on generators; fails if that is not a homomorphism.
    pub fn from_generators(group: Group, gens: &[usize], gen_values: &[u8]) -> Result<Self, GroupError> {
        let n = group.order();
        let mut values = vec![u8::MAX; n];
        values[0] = 0;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for (&g, &v) in gens.iter().zip(gen_values) {
                let y = group.mul(x, g);
                let vy = (values[x] + v) % 2;
                if values[y] == u8::MAX {
                    values[y] = vy;
                    frontier.push(y);
                } else if values[y] != vy {
                    return Err(GroupError::OrientationNotHom { a: x, b: g });
                }
            }
        }
        if values.contains(&u8::MAX) {
            return Err(GroupError::OrientationLength { got: 0, order: n });
        }
        Self::new(group, values)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, g: usize) -> u8 {
        self.values[g]
    }

    /// `(−1)^{ω(g)}`
    pub fn sign(&self, g: usize) -> i64 {
        if self.values[g] == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// ω∘φ for φ with target this character's group.
    pub fn pull_back(&self, phi: &GroupHom) -> OrientationChar {
        let values = (0..phi.source().order()).map(|g| self.values[phi.apply(g)]).collect();
        OrientationChar { group: phi.source().clone(), values }
    }
}

/// A group homomorphism given by its table of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Group,
    target: Group,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Group, target: Group, images: Vec<usize>) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::HomLength { got: images.len(), order: source.order() });
        }
        if let Some((element, &image)) = images.iter().enumerate().find(|(_, &i)| i >= target.order()) {
            return Err(GroupError::HomImageOutOfRange { element, image });
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(GroupError::NotHom { a, b });
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(group: &Group) -> Self {
        GroupHom { source: group.clone(), target: group.clone(), images: (0..group.order()).collect() }
    }

    /// The map to the trivial group.
    pub fn collapse(source: &Group, target: &Group) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), images: vec![0; source.order()] }
    }

    /// Extends generator images to a homomorphism, if they define one.
    pub fn extend_from_generators(source: &Group, target: &Group, gens: &[usize], images: &[usize]) -> Option<Self> {
        let n = source.order();
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = source.mul(x, g);
                let value = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = value;
                    frontier.push(y);
                } else if map[y] != value {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        GroupHom::new(source.clone(), target.clone(), map).ok()
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_surjective()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if !same_group(&self.target, &other.source) {
            return Err(GroupError::GroupMismatch);
        }
        let images = self.images.iter().map(|&g| other.apply(g)).collect();
        Ok(GroupHom { source: self.source.clone(), target: other.target.clone(), images })
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![0; self.images.len()];
        for (g, &h) in self.images.iter().enumerate() {
            images[h] = g;
        }
        Some(GroupHom { source: self.target.clone(), target: self.source.clone(), images })
    }
}

/// An element of ℤ[π].
#[derive(Clone)]
pub struct GroupRingElement {
    group: Group,
    terms: Vec<(usize, BigInt)>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_group(&self.group, &other.group)
    }
}

impl Eq for GroupRingElement {}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let abs = c.abs();
            write!(f, "{sign}")?;
            if *g == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "g{g}")?;
            } else {
                write!(f, "{abs}g{g}")?;
            }
        }
        Ok(())
    }
}

impl GroupRingElement {
    pub fn zero(group: &Group) -> Self {
        GroupRingElement { group: group.clone(), terms: Vec::new() }
    }

    pub fn one(group: &Group) -> Self {
        Self::basis(group, 0)
    }

    /// The group element `g` viewed in Λ.
    pub fn basis(group: &Group, g: usize) -> Self {
        GroupRingElement { group: group.clone(), terms: vec![(g, BigInt::one())] }
    }

    pub fn from_int(group: &Group, n: impl Into<BigInt>) -> Self {
        Self::from_terms(group, [(0, n.into())])
    }

    /// Builds an element from arbitrary `(element, coefficient)` pairs,
    /// summing repeats and dropping zeros.
    pub fn from_terms<I, C>(group: &Group, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut dense = vec![BigInt::zero(); group.order()];
        for (g, c) in terms {
            assert!(g < group.order(), "element {g} out of range");
            dense[g] += c.into();
        }
        Self::from_dense(group, dense)
    }

    pub fn from_dense(group: &Group, dense: Vec<BigInt>) -> Self {
        debug_assert_eq!(dense.len(), group.order());
        let terms = dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        GroupRingElement { group: group.clone(), terms }
    }

    /// The norm element Σ_g g.
    pub fn norm(group: &Group) -> Self {
        Self::from_terms(group, (0..group.order()).map(|g| (g, 1)))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn terms(&self) -> &[(usize, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: usize) -> BigInt {
        match self.terms.binary_search_by_key(&g, |(h, _)| *h) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut dense = vec![BigInt::zero(); self.group.order()];
        for (g, c) in &self.terms {
            dense[*g] = c.clone();
        }
        dense
    }

    fn check_group(&self, other: &Self) -> Result<(), GroupError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_group(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_group(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = j >= other.terms.len() || (i < self.terms.len() && self.terms[i].0 < other.terms[j].0);
            let take_right = i >= self.terms.len() || (j < other.terms.len() && other.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                let (g, c) = &other.terms[j];
                out.push((*g, if subtract { -c } else { c.clone() }));
                j += 1;
            } else {
                let c = if subtract { &self.terms[i].1 - &other.terms[j].1 } else { &self.terms[i].1 + &other.terms[j].1 };
                if !c.is_zero() {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        GroupRingElement { group: self.group.clone(), terms: out }
    }

    /// Convolution product.
    pub fn ring_mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_group(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.group);
        }
        let mut dense = vec![BigInt::zero(); self.group.order()];
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                dense[self.group.mul(*g, *h)] += a * b;
            }
        }
        Self::from_dense(&self.group, dense)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.group);
        }
        let terms = self.terms.iter().map(|(g, c)| (*g, c * k)).collect();
        GroupRingElement { group: self.group.clone(), terms }
    }

    /// Left multiplication by the group element `g`.
    pub fn left_translate(&self, g: usize) -> Self {
        Self::from_terms(&self.group, self.terms.iter().map(|(h, c)| (self.group.mul(g, *h), c.clone())))
    }

    /// Sum of coefficients.
    pub fn aug(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Linear extension of g ↦ (−1)^{ω(g)} g⁻¹.
    pub fn bar(&self, omega: &OrientationChar) -> Result<Self, GroupError> {
        if !same_group(&self.group, omega.group()) {
            return Err(GroupError::GroupMismatch);
        }
        Ok(Self::from_terms(&self.group, self.terms.iter().map(|(g, c)| (self.group.inv(*g), c * omega.sign(*g)))))
    }

    /// Linear extension of g ↦ g⁻¹ (the bar involution for trivial ω).
    pub fn antipode(&self) -> Self {
        Self::from_terms(&self.group, self.terms.iter().map(|(g, c)| (self.group.inv(*g), c.clone())))
    }

    /// Σ_g coeff(g)·(−1)^{ω(g)}, the image in ℤ^ω ⊗_Λ Λ.
    pub fn twisted_int(&self, omega: &OrientationChar) -> BigInt {
        self.terms.iter().map(|(g, c)| c * omega.sign(*g)).sum()
    }

    /// Matrix of left multiplication by `self` on the ℤ-basis {g}:
    /// entry `[g·h][h]` accumulates `coeff(g)`.
    pub fn regular_rep(&self) -> IntMatrix {
        let n = self.group.order();
        let mut m = IntMatrix::zeros(n, n);
        for (g, c) in &self.terms {
            for h in 0..n {
                *m.get_mut(self.group.mul(*g, h), h) += c;
            }
        }
        m
    }

    /// Matrix of right multiplication `λ ↦ λ·self` on the ℤ-basis {g}.
    pub fn right_regular_rep(&self) -> IntMatrix {
        let n = self.group.order();
        let mut m = IntMatrix::zeros(n, n);
        for (g, c) in &self.terms {
            for h in 0..n {
                *m.get_mut(self.group.mul(h, *g), h) += c;
            }
        }
        m
    }

    /// Image under the ring homomorphism φ_♯ induced by a group homomorphism.
    pub fn push(&self, phi: &GroupHom) -> Result<Self, GroupError> {
        if !same_group(&self.group, phi.source()) {
            return Err(GroupError::GroupMismatch);
        }
        Ok(Self::from_terms(phi.target(), self.terms.iter().map(|(g, c)| (phi.apply(*g), c.clone()))))
    }

    /// Re-attaches the coefficients to an equal group (used after decoding).
    pub fn with_group(&self, group: &Group) -> Self {
        GroupRingElement { group: group.clone(), terms: self.terms.clone() }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> GroupRingElement {
        self.try_add(rhs).expect("group mismatch in addition")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: Self) -> GroupRingElement {
        self.try_sub(rhs).expect("group mismatch in subtraction")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: Self) -> GroupRingElement {
        self.ring_mul(rhs).expect("group mismatch in multiplication")
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        let terms = self.terms.iter().map(|(g, c)| (*g, -c)).collect();
        GroupRingElement { group: self.group.clone(), terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(group: &Group, terms: &[(usize, i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(group, terms.iter().copied())
    }

    #[test]
    fn cyclic_group_tables() {
        assert_eq!(cyclic_group(1).unwrap().order(), 1);
        let c5 = cyclic_group(5).unwrap();
        assert_eq!(c5.mul(2, 4), 1);
        assert_eq!(cyclic_group(6).unwrap().inv(5), 1);
        assert_eq!(cyclic_group(0), Err(GroupError::EmptyGroup));
    }

    #[test]
    fn table_validation_names_the_problem() {
        let bad = vec![vec![0, 1], vec![1]];
        assert_eq!(FiniteGroup::from_table(bad), Err(GroupError::BadRowLength { row: 1, len: 1, order: 2 }));
        let not_group = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(not_group).is_err());
        let z3 = cyclic_group(3).unwrap();
        assert_eq!(*FiniteGroup::from_table(z3.table()).unwrap(), *z3);
    }

    #[test]
    fn augmentation() {
        let g = cyclic_group(3).unwrap();
        assert_eq!(GroupRingElement::zero(&g).aug(), BigInt::zero());
        assert_eq!(el(&g, &[(0, 3), (1, -2)]).aug(), BigInt::one());
    }

    #[test]
    fn bar_examples() {
        let g = cyclic_group(2).unwrap();
        let omega = OrientationChar::new(g.clone(), vec![0, 1]).unwrap();
        let e = GroupRingElement::one(&g);
        assert_eq!(e.bar(&omega).unwrap(), e);
        let t = GroupRingElement::basis(&g, 1);
        assert_eq!(t.bar(&omega).unwrap(), -&t);
    }

    #[test]
    fn ring_examples() {
        let g = cyclic_group(2).unwrap();
        let one = GroupRingElement::one(&g);
        let t = GroupRingElement::basis(&g, 1);
        let x = el(&g, &[(0, 4), (1, -7)]);
        assert_eq!(&x * &one, x);
        assert!((&(&one + &t) * &(&one - &t)).is_zero());
        let c4 = cyclic_group(4).unwrap();
        let n = GroupRingElement::norm(&c4);
        for g in 0..4 {
            assert_eq!(&GroupRingElement::basis(&c4, g) * &n, n);
        }
    }

    #[test]
    fn regular_rep_examples() {
        let g = cyclic_group(2).unwrap();
        assert_eq!(GroupRingElement::one(&g).regular_rep(), IntMatrix::identity(2));
        assert_eq!(GroupRingElement::basis(&g, 1).regular_rep(), IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]));
        let m = el(&g, &[(0, 1), (1, 1)]).regular_rep();
        assert_eq!(m, IntMatrix::from_i64(2, 2, &[1, 1, 1, 1]));
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn twisted_int_examples() {
        let g = cyclic_group(2).unwrap();
        let omega = OrientationChar::new(g.clone(), vec![0, 1]).unwrap();
        assert_eq!(el(&g, &[(0, 1), (1, 1)]).twisted_int(&omega), BigInt::zero());
        assert_eq!(el(&g, &[(0, 1), (1, -1)]).twisted_int(&omega), BigInt::from(2));
        let x = el(&g, &[(0, 5), (1, -3)]);
        assert_eq!(x.twisted_int(&OrientationChar::trivial(g.clone())), x.aug());
    }

    #[test]
    fn orientation_must_be_hom() {
        let g = cyclic_group(3).unwrap();
        assert!(matches!(OrientationChar::new(g, vec![0, 1, 1]), Err(GroupError::OrientationNotHom { .. })));
    }

    #[test]
    fn mismatched_groups_rejected() {
        let a = cyclic_group(2).unwrap();
        let b = cyclic_group(3).unwrap();
        let x = GroupRingElement::one(&a);
        let y = GroupRingElement::one(&b);
        assert_eq!(x.ring_mul(&y), Err(GroupError::GroupMismatch));
    }

    #[test]
    fn automorphisms_of_cyclic_groups() {
        let c7 = cyclic_group(7).unwrap();
        assert_eq!(c7.isomorphisms(&c7).len(), 6);
        let c2 = cyclic_group(2).unwrap();
        let klein = direct_product(&c2, &c2);
        assert_eq!(klein.isomorphisms(&klein).len(), 6);
    }

    #[test]
    fn surjectivity_is_computed() {
        let c4 = cyclic_group(4).unwrap();
        let c2 = cyclic_group(2).unwrap();
        let quotient = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(quotient.is_surjective());
        let inclusion = GroupHom::new(c2, c4, vec![0, 2]).unwrap();
        assert!(!inclusion.is_surjective());
    }
}
