use num_bigint::BigInt;
use num_traits::Zero;

use super::lambda::vector_from_coords;
use super::{unit, AbelianGroup, IntMatrix, LambdaMatrix, Lattice, LinalgError, Subquotient};
use crate::groupring::{same_group, Group, OrientationChar};

/// `Λ^{n_gens}` modulo the submodule generated by the columns of `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    group: Group,
    n_gens: usize,
    relations: LambdaMatrix,
}

impl PresentedModule {
    pub fn new(group: &Group, n_gens: usize, relations: LambdaMatrix) -> Result<Self, LinalgError> {
        if relations.rows() != n_gens {
            return Err(LinalgError::Shape(format!("relations have {} rows for {n_gens} generators", relations.rows())));
        }
        if !same_group(relations.group(), group) {
            return Err(LinalgError::Group(crate::groupring::GroupError::GroupMismatch));
        }
        Ok(PresentedModule { group: group.clone(), n_gens, relations })
    }

    pub fn free(group: &Group, n_gens: usize) -> Self {
        PresentedModule { group: group.clone(), n_gens, relations: LambdaMatrix::zeros(group, n_gens, 0) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &LambdaMatrix {
        &self.relations
    }

    /// Rank of the ambient ℤ-lattice `Λ^{n_gens}`.
    pub fn dim(&self) -> usize {
        self.n_gens * self.group.order()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::column_span(&self.relations.module_map_to_int())
    }

    /// Underlying abelian group.
    pub fn abelian(&self) -> AbelianGroup {
        Subquotient::new(&Lattice::full(self.dim()), &self.relation_lattice()).expect("sublattice").group().clone()
    }

    pub fn to_action_module(&self) -> ActionModule {
        let n = self.group.order();
        let action = (0..n).map(|g| left_translation(&self.group, self.n_gens, g)).collect();
        ActionModule { group: self.group.clone(), dim: self.dim(), relations: self.relation_lattice(), action }
    }
}

/// Matrix of `v ↦ g·v` on `Λ^blocks` in coordinates `i·|π| + h`.
pub(crate) fn left_translation(group: &Group, blocks: usize, g: usize) -> IntMatrix {
    let n = group.order();
    let mut m = IntMatrix::zeros(blocks * n, blocks * n);
    for i in 0..blocks {
        for h in 0..n {
            m.set(i * n + group.mul(g, h), i * n + h, BigInt::from(1));
        }
    }
    m
}

fn translate(group: &Group, v: &[BigInt], g: usize) -> Vec<BigInt> {
    let n = group.order();
    let mut out = vec![BigInt::zero(); v.len()];
    for (idx, x) in v.iter().enumerate() {
        if !x.is_zero() {
            out[(idx / n) * n + group.mul(g, idx % n)] = x.clone();
        }
    }
    out
}

/// A ℤ[π]-module given as `ℤ^dim / relations` together with the matrix of
/// every group element acting on the left.
#[derive(Clone, Debug)]
pub struct ActionModule {
    pub group: Group,
    pub dim: usize,
    pub relations: Lattice,
    pub action: Vec<IntMatrix>,
}

impl ActionModule {
    pub fn new(group: &Group, dim: usize, relations: Lattice, action: Vec<IntMatrix>) -> Result<Self, LinalgError> {
        if action.len() != group.order() || action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(LinalgError::Shape("action matrices do not match the module".into()));
        }
        let m = ActionModule { group: group.clone(), dim, relations, action };
        for g in 0..group.order() {
            if !m.relations.contains_lattice(&m.relations.image(&m.action[g])) {
                return Err(LinalgError::Invariant(format!("element {g} does not preserve the relations")));
            }
        }
        Ok(m)
    }

    /// The subquotient `Z/B` with the action inherited from matrices on the
    /// ambient lattice. Coordinates are taken in the basis of `Z`.
    pub fn from_subquotient(group: &Group, sq: &Subquotient, ambient_action: &[IntMatrix]) -> Result<Self, LinalgError> {
        let z = sq.cycles();
        let r = z.rank();
        let coords = |v: &[BigInt]| z.coordinates(v).ok_or_else(|| LinalgError::Invariant("action does not preserve the cycles".into()));
        let relations = Lattice::from_vectors(r, sq.boundaries().basis().iter().map(|b| coords(b)).collect::<Result<Vec<_>, _>>()?);
        let mut action = Vec::with_capacity(group.order());
        for a in ambient_action {
            let cols = z.basis().iter().map(|zb| coords(&a.mul_vec(zb))).collect::<Result<Vec<_>, _>>()?;
            action.push(IntMatrix::from_cols(&cols, r));
        }
        Self::new(group, r, relations, action)
    }

    pub fn abelian(&self) -> AbelianGroup {
        Subquotient::new(&Lattice::full(self.dim), &self.relations).expect("sublattice").group().clone()
    }

    /// `M / ⟨m − (−1)^{ω(g)} g·m⟩`.
    pub fn coinvariants(&self, omega: &OrientationChar) -> Result<AbelianGroup, LinalgError> {
        if !same_group(omega.group(), &self.group) {
            return Err(LinalgError::Group(crate::groupring::GroupError::GroupMismatch));
        }
        let mut rel = self.relations.clone();
        for g in self.group.generating_set() {
            let a = &self.action[g];
            let s = BigInt::from(omega.sign(g));
            for j in 0..self.dim {
                let mut v = unit(self.dim, j);
                for (i, x) in v.iter_mut().enumerate() {
                    *x -= &s * a.get(i, j);
                }
                rel.insert(v);
            }
        }
        Ok(Subquotient::new(&Lattice::full(self.dim), &rel)?.group().clone())
    }
}

/// `H₀(π, M^ω)`.
pub fn coinvariants(m: &PresentedModule, omega: &OrientationChar) -> Result<AbelianGroup, LinalgError> {
    m.to_action_module().coinvariants(omega)
}

/// A bounded complex of presented modules with boundaries carried as module
/// maps on generators.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    group: Group,
    bottom: i64,
    modules: Vec<PresentedModule>,
    /// `boundaries[i]`: `modules[i + 1] → modules[i]`.
    boundaries: Vec<LambdaMatrix>,
}

impl PresentedComplex {
    /// Checks shapes, that boundaries respect relations and that `d∘d` lands
    /// in the relations.
    pub fn new(group: &Group, bottom: i64, modules: Vec<PresentedModule>, boundaries: Vec<LambdaMatrix>) -> Result<Self, LinalgError> {
        if boundaries.len() + 1 != modules.len().max(1) {
            return Err(LinalgError::Shape("need one boundary between consecutive modules".into()));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != modules[i].n_gens() || d.cols() != modules[i + 1].n_gens() {
                return Err(LinalgError::Shape(format!("boundary out of degree {} has the wrong shape", bottom + i as i64 + 1)));
            }
            let di = d.module_map_to_int();
            if !modules[i].relation_lattice().contains_lattice(&modules[i + 1].relation_lattice().image(&di)) {
                return Err(LinalgError::Invariant(format!(
                    "boundary out of degree {} does not map relations to relations",
                    bottom + i as i64 + 1
                )));
            }
        }
        for i in 1..boundaries.len() {
            let comp = &boundaries[i - 1].module_map_to_int() * &boundaries[i].module_map_to_int();
            if !modules[i - 1].relation_lattice().contains_lattice(&Lattice::column_span(&comp)) {
                return Err(LinalgError::NonzeroComposite);
            }
        }
        Ok(PresentedComplex { group: group.clone(), bottom, modules, boundaries })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn bottom(&self) -> i64 {
        self.bottom
    }

    pub fn top(&self) -> i64 {
        self.bottom + self.modules.len() as i64 - 1
    }

    fn index(&self, k: i64) -> Option<usize> {
        (k >= self.bottom && k <= self.top()).then(|| (k - self.bottom) as usize)
    }

    pub fn module(&self, k: i64) -> PresentedModule {
        match self.index(k) {
            Some(i) => self.modules[i].clone(),
            None => PresentedModule::free(&self.group, 0),
        }
    }

    /// Boundary `P_k → P_{k−1}` as a module map.
    pub fn boundary(&self, k: i64) -> LambdaMatrix {
        match (self.index(k), self.index(k - 1)) {
            (Some(i), Some(_)) => self.boundaries[i - 1].clone(),
            _ => LambdaMatrix::zeros(&self.group, self.module(k - 1).n_gens(), self.module(k).n_gens()),
        }
    }

    /// `H_k` as `{x : dx ∈ R_{k−1}} / (R_k + im d)`.
    pub fn homology(&self, k: i64) -> Result<Subquotient, LinalgError> {
        let z = self.module(k - 1).relation_lattice().preimage(&self.boundary(k).module_map_to_int());
        let b = self.module(k).relation_lattice().sum(&Lattice::column_span(&self.boundary(k + 1).module_map_to_int()));
        Subquotient::new(&z, &b)
    }
}

/// A free complex `C′` with a degreewise map `C′ → P` inducing homology
/// isomorphisms through `top_degree`.
#[derive(Clone, Debug)]
pub struct FreeApproximation {
    pub group: Group,
    pub bottom: i64,
    pub ranks: Vec<usize>,
    /// `boundaries[i]`: `C′_{bottom+i+1} → C′_{bottom+i}`.
    pub boundaries: Vec<LambdaMatrix>,
    /// `comparison[i]`: `C′_{bottom+i} → P_{bottom+i}` on generators.
    pub comparison: Vec<LambdaMatrix>,
}

impl FreeApproximation {
    pub fn rank(&self, k: i64) -> usize {
        if k < self.bottom {
            return 0;
        }
        self.ranks.get((k - self.bottom) as usize).copied().unwrap_or(0)
    }

    /// Boundary `C′_k → C′_{k−1}`.
    pub fn boundary(&self, k: i64) -> LambdaMatrix {
        if k > self.bottom {
            if let Some(d) = self.boundaries.get((k - self.bottom - 1) as usize) {
                return d.clone();
            }
        }
        LambdaMatrix::zeros(&self.group, self.rank(k - 1), self.rank(k))
    }

    pub fn comparison_at(&self, k: i64, target_gens: usize) -> LambdaMatrix {
        if k >= self.bottom {
            if let Some(c) = self.comparison.get((k - self.bottom) as usize) {
                return c.clone();
            }
        }
        LambdaMatrix::zeros(&self.group, target_gens, self.rank(k))
    }

    /// Integer homology of `C′` in degree `k`.
    pub fn homology(&self, k: i64) -> Result<AbelianGroup, LinalgError> {
        super::homology_at(&self.boundary(k + 1).module_map_to_int(), &self.boundary(k).module_map_to_int())
    }
}

struct ConeState<'a> {
    p: &'a PresentedComplex,
    n: usize,
    bottom: i64,
    ranks: Vec<usize>,
    d: Vec<IntMatrix>,
    phi: Vec<IntMatrix>,
}

impl ConeState<'_> {
    fn rank(&self, k: i64) -> usize {
        if k < self.bottom {
            0
        } else {
            self.ranks.get((k - self.bottom) as usize).copied().unwrap_or(0)
        }
    }

    fn d(&self, k: i64) -> IntMatrix {
        if k > self.bottom && ((k - self.bottom) as usize) < self.ranks.len() {
            self.d[(k - self.bottom) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(k - 1) * self.n, self.rank(k) * self.n)
        }
    }

    fn phi(&self, k: i64) -> IntMatrix {
        if k >= self.bottom && ((k - self.bottom) as usize) < self.ranks.len() {
            self.phi[(k - self.bottom) as usize].clone()
        } else {
            IntMatrix::zeros(self.p.module(k).dim(), self.rank(k) * self.n)
        }
    }

    /// Cone differential out of degree `k`: `(f, p) ↦ (−d f, φ f + d p)`.
    fn cone_d(&self, k: i64) -> IntMatrix {
        let d = self.d(k - 1);
        let phi = self.phi(k - 1);
        let dp = self.p.boundary(k).module_map_to_int();
        let (a, b) = (d.cols(), dp.cols());
        let (top_rows, bottom_rows) = (d.rows(), dp.rows());
        let mut m = IntMatrix::zeros(top_rows + bottom_rows, a + b);
        m.put_block(0, 0, &-&d);
        m.put_block(top_rows, 0, &phi);
        m.put_block(top_rows, a, &dp);
        m
    }

    fn relations_in_cone(&self, k: i64) -> Lattice {
        let a = self.rank(k - 1) * self.n;
        let rel = self.p.module(k).relation_lattice();
        let dim = a + rel.dim();
        Lattice::from_vectors(
            dim,
            rel.basis().iter().map(|r| {
                let mut v = vec![BigInt::zero(); a];
                v.extend(r.iter().cloned());
                v
            }),
        )
    }

    fn cone_homology(&self, k: i64) -> Result<Subquotient, LinalgError> {
        let z = self.relations_in_cone(k - 1).preimage(&self.cone_d(k));
        let b = Lattice::column_span(&self.cone_d(k + 1)).sum(&self.relations_in_cone(k));
        Subquotient::new(&z, &b)
    }
}

/// Builds a free complex weakly equivalent to `p` through `top_degree` by
/// killing the homology of the mapping cone degree by degree.
pub fn free_approximation(p: &PresentedComplex, top_degree: i64) -> Result<FreeApproximation, LinalgError> {
    let group = p.group().clone();
    let n = group.order();
    let bottom = p.bottom();
    let mut st = ConeState { p, n, bottom, ranks: Vec::new(), d: Vec::new(), phi: Vec::new() };
    let mut seeding = true;
    for k in bottom..=top_degree + 1 {
        let pk = p.module(k);
        seeding &= pk.is_free() && k <= p.top();
        if seeding {
            st.ranks.push(pk.n_gens());
            st.d.push(p.boundary(k).module_map_to_int());
            st.phi.push(IntMatrix::identity(pk.dim()));
        } else {
            st.ranks.push(0);
            st.d.push(IntMatrix::zeros(st.rank(k - 1) * n, 0));
            st.phi.push(IntMatrix::zeros(pk.dim(), 0));
        }
        let h = st.cone_homology(k)?;
        if h.group().is_trivial() {
            continue;
        }
        let a = st.rank(k - 1) * n;
        let mut covered = h.boundaries().clone();
        let mut new_d: Vec<Vec<BigInt>> = Vec::new();
        let mut new_phi: Vec<Vec<BigInt>> = Vec::new();
        for v in h.generators() {
            if covered.contains(v) {
                continue;
            }
            new_d.push(v[..a].iter().map(|x| -x).collect());
            new_phi.push(v[a..].to_vec());
            for g in 0..n {
                covered.insert(translate(&group, v, g));
            }
        }
        if !covered.contains_lattice(h.cycles()) {
            return Err(LinalgError::Invariant(format!("could not kill cone homology in degree {k}")));
        }
        let idx = (k - bottom) as usize;
        let old_d = LambdaMatrix::from_module_int(&group, &st.d[idx]);
        let old_phi = LambdaMatrix::from_module_int(&group, &st.phi[idx]);
        let add_d =
            LambdaMatrix::from_columns(&group, st.rank(k - 1), &new_d.iter().map(|c| vector_from_coords(&group, c)).collect::<Vec<_>>());
        let add_phi =
            LambdaMatrix::from_columns(&group, pk.n_gens(), &new_phi.iter().map(|c| vector_from_coords(&group, c)).collect::<Vec<_>>());
        st.d[idx] = old_d.hstack(&add_d).module_map_to_int();
        st.phi[idx] = old_phi.hstack(&add_phi).module_map_to_int();
        st.ranks[idx] += new_d.len();
    }
    for k in bottom..=top_degree + 1 {
        if !st.cone_homology(k)?.group().is_trivial() {
            return Err(LinalgError::Invariant(format!("mapping cone not acyclic in degree {k}")));
        }
    }
    let ranks = st.ranks.clone();
    let boundaries = (1..ranks.len()).map(|i| LambdaMatrix::from_module_int(&group, &st.d[i])).collect();
    let comparison = (0..ranks.len())
        .map(|i| {
            let rows = p.module(bottom + i as i64).n_gens();
            if ranks[i] == 0 {
                LambdaMatrix::zeros(&group, rows, 0)
            } else {
                LambdaMatrix::from_module_int(&group, &st.phi[i])
            }
        })
        .collect();
    Ok(FreeApproximation { group, bottom, ranks, boundaries, comparison })
}

/// Λ-module generated by the given ℤ-vectors of `Λ^blocks`.
pub(crate) fn lambda_span(group: &Group, dim: usize, vectors: &[Vec<BigInt>]) -> Lattice {
    Lattice::from_vectors(dim, vectors.iter().flat_map(|v| (0..group.order()).map(move |g| translate(group, v, g))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::{cyclic_group, trivial_group, GroupRingElement};

    #[test]
    fn coinvariants_of_lambda() {
        let g = cyclic_group(2).unwrap();
        let m = PresentedModule::free(&g, 1);
        let triv = OrientationChar::trivial(g.clone());
        assert_eq!(coinvariants(&m, &triv).unwrap().invariants(), AbelianGroup::from_i64(1, &[]));
        let omega = OrientationChar::new(g.clone(), vec![0, 1]).unwrap();
        assert_eq!(coinvariants(&m, &omega).unwrap().invariants(), AbelianGroup::from_i64(1, &[]));
        let trivial_z = PresentedModule::new(
            &g,
            1,
            LambdaMatrix::from_entries(&g, 1, 1, vec![GroupRingElement::from_terms(&g, [(1, 1), (0, -1)])]).unwrap(),
        )
        .unwrap();
        assert_eq!(coinvariants(&trivial_z, &omega).unwrap().invariants(), AbelianGroup::from_i64(0, &[2]));
    }

    #[test]
    fn coinvariants_over_trivial_group() {
        let g = trivial_group();
        let rel = LambdaMatrix::from_int(&g, &IntMatrix::from_i64(2, 1, &[3, 0]));
        let m = PresentedModule::new(&g, 2, rel).unwrap();
        assert_eq!(coinvariants(&m, &OrientationChar::trivial(g.clone())).unwrap().invariants(), m.abelian().invariants());
    }

    #[test]
    fn free_approximation_of_z4() {
        let g = trivial_group();
        let rel = LambdaMatrix::from_int(&g, &IntMatrix::from_i64(1, 1, &[4]));
        let p = PresentedComplex::new(&g, 4, vec![PresentedModule::new(&g, 1, rel).unwrap()], vec![]).unwrap();
        assert_eq!(p.homology(4).unwrap().group().invariants(), AbelianGroup::from_i64(0, &[4]));
        let f = free_approximation(&p, 4).unwrap();
        assert_eq!((f.rank(4), f.rank(5)), (1, 1));
        assert_eq!(f.homology(4).unwrap().invariants(), AbelianGroup::from_i64(0, &[4]));
        assert!(f.homology(5).unwrap().is_trivial());
    }

    #[test]
    fn free_complex_is_its_own_approximation() {
        let g = cyclic_group(3).unwrap();
        let t1 = GroupRingElement::from_terms(&g, [(1, 1), (0, -1)]);
        let d = LambdaMatrix::from_entries(&g, 1, 1, vec![t1]).unwrap();
        let p = PresentedComplex::new(&g, 0, vec![PresentedModule::free(&g, 1), PresentedModule::free(&g, 1)], vec![d.clone()]).unwrap();
        let f = free_approximation(&p, 1).unwrap();
        assert_eq!(f.ranks[..2], [1, 1]);
        assert_eq!(f.boundary(1), d);
        assert_eq!(f.comparison[0], LambdaMatrix::identity(&g, 1));
    }
}
