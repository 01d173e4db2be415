use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, LinalgError};

fn first_nonzero(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t += q * s;
        }
    }
}

fn lincomb(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

/// Row echelon form built by integer row operations, optionally tracking
/// for every row the combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
struct Echelon {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    tags: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    kernel: Vec<Vec<BigInt>>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), tags: Vec::new(), pivots: Vec::new(), kernel: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<BigInt>, mut tag: Vec<BigInt>) {
        debug_assert_eq!(v.len(), self.dim);
        while let Some(p) = first_nonzero(&v) {
            let pos = self.pivots.partition_point(|&q| q < p);
            if pos == self.pivots.len() || self.pivots[pos] > p {
                if v[p].is_negative() {
                    v.iter_mut().chain(tag.iter_mut()).for_each(|x| *x = -std::mem::take(x));
                }
                self.rows.insert(pos, v);
                self.tags.insert(pos, tag);
                self.pivots.insert(pos, p);
                self.reduce_above(pos);
                return;
            }
            let a = self.rows[pos][p].clone();
            let b = v[p].clone();
            if b.is_multiple_of(&a) {
                let q = -(&b / &a);
                axpy(&mut v, &q, &self.rows[pos]);
                axpy(&mut tag, &q, &self.tags[pos]);
            } else {
                let e = a.extended_gcd(&b);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let (ag, bg) = (&a / &g, -(&b / &g));
                let new_row = lincomb(&s, &self.rows[pos], &t, &v);
                let new_tag = lincomb(&s, &self.tags[pos], &t, &tag);
                v = lincomb(&ag, &v, &bg, &self.rows[pos]);
                tag = lincomb(&ag, &tag, &bg, &self.tags[pos]);
                self.rows[pos] = new_row;
                self.tags[pos] = new_tag;
                if self.rows[pos][p].is_negative() {
                    self.rows[pos].iter_mut().chain(self.tags[pos].iter_mut()).for_each(|x| *x = -std::mem::take(x));
                }
                self.reduce_above(pos);
            }
        }
        self.kernel.push(tag);
    }

    /// Reduces the entries of rows above `pos` in the pivot column of `pos`.
    fn reduce_above(&mut self, pos: usize) {
        let p = self.pivots[pos];
        let pivot = self.rows[pos][p].clone();
        for i in 0..pos {
            let x = &self.rows[i][p];
            if x.is_zero() {
                continue;
            }
            let q = -x.div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = self.rows.split_at_mut(pos);
            axpy(&mut head[i], &q, &tail[0]);
            let (th, tt) = self.tags.split_at_mut(pos);
            axpy(&mut th[i], &q, &tt[0]);
        }
    }

    /// Coefficients `c` with `Σ c_i rows_i = b`, if any.
    fn coordinates(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = b.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if first_nonzero(&r).is_some_and(|f| f < p) {
                return None;
            }
            let (q, rem) = r[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                axpy(&mut r, &-&q, row);
            }
            coeffs.push(q);
        }
        r.iter().all(|x| x.is_zero()).then_some(coeffs)
    }
}

/// A sublattice of ℤⁿ, kept as an echelon basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    ech: Echelon,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.rank() == other.rank() && self.contains_lattice(other) && other.contains_lattice(self)
    }
}

impl Eq for Lattice {}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { ech: Echelon::new(dim) }
    }

    pub fn full(dim: usize) -> Self {
        Self::from_vectors(dim, (0..dim).map(|i| unit(dim, i)))
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<BigInt>>>(dim: usize, vectors: I) -> Self {
        let mut l = Self::zero(dim);
        for v in vectors {
            l.insert(v);
        }
        l
    }

    /// Lattice spanned by the columns of `m`.
    pub fn column_span(m: &IntMatrix) -> Self {
        Self::from_vectors(m.rows(), m.columns())
    }

    pub fn insert(&mut self, v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim(), "lattice dimension");
        self.ech.insert(v, Vec::new());
        self.ech.kernel.clear();
    }

    pub fn dim(&self) -> usize {
        self.ech.dim
    }

    pub fn rank(&self) -> usize {
        self.ech.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.ech.rows
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.ech.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in [`Lattice::basis`].
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.ech.coordinates(v)
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut out = self.clone();
        for v in other.basis() {
            out.insert(v.clone());
        }
        out
    }

    /// Image under `f` (a matrix acting on column vectors).
    pub fn image(&self, f: &IntMatrix) -> Lattice {
        Lattice::from_vectors(f.rows(), self.basis().iter().map(|v| f.mul_vec(v)))
    }

    /// `{x : f x ∈ self}`
    pub fn preimage(&self, f: &IntMatrix) -> Lattice {
        assert_eq!(f.rows(), self.dim(), "preimage shape");
        let n = f.cols();
        let mut cols = f.columns();
        cols.extend(self.basis().iter().map(|b| b.iter().map(|x| -x).collect()));
        let ce = ColumnEchelon::from_columns(self.dim(), cols);
        Lattice::from_vectors(n, ce.kernel_basis().iter().map(|k| k[..n].to_vec()))
    }

    /// Index `[self : sub]` when finite, `None` otherwise.
    pub fn index_of(&self, sub: &Lattice) -> Option<BigInt> {
        let q = Subquotient::new(self, sub).ok()?;
        (q.group().free_rank == 0).then(|| q.group().torsion.iter().product())
    }
}

pub(crate) fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::from(1);
    v
}

/// Column echelon form `A·V` of a matrix with `V` unimodular, for exact
/// integer solving and kernels.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    ech: Echelon,
    n: usize,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> Self {
        Self::from_columns(a.rows(), a.columns())
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<BigInt>>) -> Self {
        let n = cols.len();
        let mut ech = Echelon::new(rows);
        for (j, c) in cols.into_iter().enumerate() {
            ech.insert(c, unit(n, j));
        }
        ColumnEchelon { ech, n }
    }

    pub fn rank(&self) -> usize {
        self.ech.rows.len()
    }

    /// A ℤ-basis of the kernel.
    pub fn kernel_basis(&self) -> &[Vec<BigInt>] {
        &self.ech.kernel
    }

    /// Some `x` with `A x = b`, or `None` when no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let coeffs = self.ech.coordinates(b)?;
        let mut x = vec![BigInt::zero(); self.n];
        for (c, tag) in coeffs.iter().zip(&self.ech.tags) {
            if !c.is_zero() {
                axpy(&mut x, c, tag);
            }
        }
        Some(x)
    }

    pub fn image(&self) -> Lattice {
        let mut ech = Echelon::new(self.ech.dim);
        ech.rows = self.ech.rows.clone();
        ech.pivots = self.ech.pivots.clone();
        ech.tags = vec![Vec::new(); ech.rows.len()];
        Lattice { ech }
    }
}

/// Finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Ambient coordinates of generators: torsion summands first, then free.
    pub generators: Option<Vec<Vec<BigInt>>>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, LinalgError> {
        if torsion.iter().any(|d| d < &BigInt::from(2)) {
            return Err(LinalgError::Invariant("torsion invariants must be at least 2".into()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(LinalgError::Invariant("torsion invariants must form a divisibility chain".into()));
        }
        Ok(AbelianGroup { free_rank, torsion, generators: None })
    }

    pub fn from_i64(free_rank: usize, torsion: &[i64]) -> Self {
        Self::new(free_rank, torsion.iter().map(|&d| BigInt::from(d)).collect()).expect("valid invariants")
    }

    pub fn trivial() -> Self {
        Self::from_i64(0, &[])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Least common multiple of element orders, or `None` if infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.last().cloned().unwrap_or_else(|| BigInt::from(1)))
    }

    /// Invariants only, generators dropped.
    pub fn invariants(&self) -> AbelianGroup {
        AbelianGroup { free_rank: self.free_rank, torsion: self.torsion.clone(), generators: None }
    }

    pub fn same_invariants(&self, other: &AbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Groups with the given cyclic summands (orders, `0` meaning ℤ).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let m = IntMatrix::from_vec(n, n, {
            let mut d = vec![BigInt::zero(); n * n];
            for (i, o) in orders.iter().enumerate() {
                d[i * n + i] = o.clone();
            }
            d
        });
        Subquotient::new(&Lattice::full(n), &Lattice::column_span(&m)).expect("sublattice").group().invariants()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The quotient `Z/B` of lattices `B ⊆ Z ⊆ ℤⁿ` with an adapted basis.
#[derive(Clone, Debug)]
pub struct Subquotient {
    z: Lattice,
    b: Lattice,
    u: IntMatrix,
    /// Diagonal entry for each adapted coordinate (`0` for free ones).
    orders: Vec<BigInt>,
    group: AbelianGroup,
    /// Adapted coordinates that are not killed (order ≠ 1).
    visible: Vec<usize>,
}

impl Subquotient {
    pub fn new(z: &Lattice, b: &Lattice) -> Result<Self, LinalgError> {
        if z.dim() != b.dim() {
            return Err(LinalgError::Shape("subquotient lattices live in different dimensions".into()));
        }
        let r = z.rank();
        let mut cols = Vec::with_capacity(b.rank());
        for v in b.basis() {
            cols.push(z.coordinates(v).ok_or_else(|| LinalgError::Invariant("B is not contained in Z".into()))?);
        }
        let rel = IntMatrix::from_cols(&cols, r);
        let s = super::smith_normal_form(&rel);
        let mut orders = vec![BigInt::zero(); r];
        for (i, d) in s.diagonal.iter().enumerate() {
            orders[i] = d.clone();
        }
        let one = BigInt::from(1);
        let mut visible: Vec<usize> = (0..r).filter(|&i| orders[i] != one).collect();
        visible.sort_by_key(|&i| orders[i].is_zero());
        let generators = visible
            .iter()
            .map(|&i| {
                let mut g = vec![BigInt::zero(); z.dim()];
                for (k, zk) in z.basis().iter().enumerate() {
                    let c = s.u_inv.get(k, i);
                    if !c.is_zero() {
                        axpy(&mut g, c, zk);
                    }
                }
                g
            })
            .collect();
        let torsion: Vec<BigInt> = visible.iter().map(|&i| orders[i].clone()).filter(|d| !d.is_zero()).collect();
        let free_rank = visible.len() - torsion.len();
        let group = AbelianGroup { free_rank, torsion, generators: Some(generators) };
        Ok(Subquotient { z: z.clone(), b: b.clone(), u: s.u, orders, group, visible })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn cycles(&self) -> &Lattice {
        &self.z
    }

    pub fn boundaries(&self) -> &Lattice {
        &self.b
    }

    /// Ambient representatives of the generators of [`Subquotient::group`].
    pub fn generators(&self) -> &[Vec<BigInt>] {
        self.group.generators.as_deref().unwrap_or(&[])
    }

    /// Coordinates of the class of `v ∈ Z` against [`Subquotient::generators`];
    /// torsion coordinates are reduced to `0..d`.
    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.z.coordinates(v)?;
        let adapted = self.u.mul_vec(&c);
        Some(
            self.visible
                .iter()
                .map(|&i| {
                    let d = &self.orders[i];
                    if d.is_zero() {
                        adapted[i].clone()
                    } else {
                        adapted[i].mod_floor(d)
                    }
                })
                .collect(),
        )
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> bool {
        self.b.contains(v)
    }
}
