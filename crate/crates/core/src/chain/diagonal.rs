use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{associator, find_homotopy, is_chain_map, swap_map, tensor_complexes, tensor_maps};
use super::{ChainError, ChainHomotopy, ChainMap, ReducedComplex, TensorComplex};
use crate::groupring::{GroupHom, GroupRingElement};
use crate::linalg::{vector_coords, vector_from_coords, ColumnEchelon, IntMatrix, LambdaMatrix};

/// A diagonal `Δ: C → C ⊗ C` over `g ↦ (g, g)`, with homotopies
/// `p_iΔ ≃ id` when the counit equations only hold up to homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub tensor: TensorComplex,
    pub map: ChainMap,
    pub counit_homotopies: Option<(ChainHomotopy, ChainHomotopy)>,
}

fn delta_hom(c: &ReducedComplex, t: &TensorComplex) -> GroupHom {
    let n = c.group().order();
    GroupHom::new(c.group().clone(), t.complex.group().clone(), (0..n).map(|g| g * n + g).collect()).expect("diagonal hom")
}

/// `p₁ = id ⊗ ε` (over the first projection) or `p₂ = ε ⊗ id`.
pub fn counit(t: &TensorComplex, first: bool) -> Result<ChainMap, ChainError> {
    let c = if first { &t.left } else { &t.right };
    let (n, m) = (t.left.group().order(), t.right.group().order());
    let images = (0..n * m).map(|x| if first { x / m } else { x % m }).collect();
    let pr = GroupHom::new(t.complex.group().clone(), c.group().clone(), images)?;
    let components = t
        .basis
        .degrees
        .iter()
        .enumerate()
        .map(|(deg, basis)| {
            let mut comp = LambdaMatrix::zeros(c.group(), c.rank(deg as i64), basis.len());
            for (col, &(i, a, b)) in basis.iter().enumerate() {
                if first && i == deg {
                    comp.set(a, col, GroupRingElement::one(c.group()));
                } else if !first && i == 0 {
                    comp.set(b, col, GroupRingElement::one(c.group()));
                }
            }
            comp
        })
        .collect();
    ChainMap::new(pr, t.complex.clone(), c.clone(), components)
}

impl Diagonal {
    /// Wraps explicitly given components and checks every axiom.
    pub fn from_components(c: &Arc<ReducedComplex>, components: Vec<LambdaMatrix>) -> Result<Option<Self>, ChainError> {
        let tensor = tensor_complexes(c, c)?;
        let map = ChainMap::new(delta_hom(c, &tensor), c.clone(), tensor.complex.clone(), components)?;
        Self::certify(tensor, map)
    }

    fn certify(tensor: TensorComplex, map: ChainMap) -> Result<Option<Self>, ChainError> {
        if !is_chain_map(&map) {
            return Ok(None);
        }
        let id = ChainMap::identity(&map.source);
        let p1 = map.then(&counit(&tensor, true)?)?;
        let p2 = map.then(&counit(&tensor, false)?)?;
        if p1 == id && p2 == id {
            return Ok(Some(Diagonal { tensor, map, counit_homotopies: None }));
        }
        match (find_homotopy(&p1, &id)?, find_homotopy(&p2, &id)?) {
            (Some(h1), Some(h2)) => Ok(Some(Diagonal { tensor, map, counit_homotopies: Some((h1, h2)) })),
            _ => Ok(None),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.counit_homotopies.is_none()
    }

    /// `Δ(x_j)` in degree `k` as a vector over `Λ ⊗ Λ`.
    pub fn image(&self, k: i64, j: usize) -> Vec<GroupRingElement> {
        self.map.component(k).column(j)
    }
}

/// Builds a diagonal degree by degree, preferring strict counits.
pub fn find_diagonal(c: &Arc<ReducedComplex>) -> Result<Option<Diagonal>, ChainError> {
    let tensor = tensor_complexes(c, c)?;
    for strict in [true, false] {
        if let Some(map) = solve_diagonal(c, &tensor, strict)? {
            if let Some(d) = Diagonal::certify(tensor.clone(), map)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

fn solve_diagonal(c: &Arc<ReducedComplex>, t: &TensorComplex, strict: bool) -> Result<Option<ChainMap>, ChainError> {
    let n = c.group().order();
    let big = t.complex.group().order();
    let tg = t.complex.group().clone();
    let delta = delta_hom(c, t);
    let mut components = vec![LambdaMatrix::identity(&tg, 1)];
    for k in 1..=c.top() {
        let ku = k as usize;
        let rk = t.complex.rank(k);
        let d = t.complex.int_boundary(k);
        let mut rows: Vec<Vec<BigInt>> = d.to_rows();
        let n_eq = rows.len();
        if strict {
            for a in 0..c.rank(k) {
                for g in 0..n {
                    let mut r = vec![BigInt::zero(); rk * big];
                    let base = t.basis.index(ku, ku, a, 0) * big;
                    for h in 0..n {
                        r[base + g * n + h] = BigInt::from(1);
                    }
                    rows.push(r);
                }
            }
            for b in 0..c.rank(k) {
                for h in 0..n {
                    let mut r = vec![BigInt::zero(); rk * big];
                    let base = t.basis.index(ku, 0, 0, b) * big;
                    for g in 0..n {
                        r[base + g * n + h] = BigInt::from(1);
                    }
                    rows.push(r);
                }
            }
        }
        let system = IntMatrix::from_rows(rows, rk * big);
        let solver = ColumnEchelon::new(&system);
        let prev = components[ku - 1].clone();
        let dc = c.boundary(k);
        let mut cols = Vec::with_capacity(c.rank(k));
        for j in 0..c.rank(k) {
            let mut target = vec![GroupRingElement::zero(&tg); t.complex.rank(k - 1)];
            for i in 0..c.rank(k - 1) {
                let lambda = dc.get(i, j);
                if lambda.is_zero() {
                    continue;
                }
                let mu = lambda.push(&delta)?;
                for (slot, x) in target.iter_mut().zip(prev.column(i)) {
                    *slot = &*slot + &(&mu * &x);
                }
            }
            let mut rhs = vector_coords(&target);
            debug_assert_eq!(rhs.len(), n_eq);
            if strict {
                for a in 0..c.rank(k) {
                    for g in 0..n {
                        rhs.push(BigInt::from(u8::from(a == j && g == 0)));
                    }
                }
                for b in 0..c.rank(k) {
                    for h in 0..n {
                        rhs.push(BigInt::from(u8::from(b == j && h == 0)));
                    }
                }
            }
            match solver.solve(&rhs) {
                Some(x) => cols.push(vector_from_coords(&tg, &x)),
                None => return Ok(None),
            }
        }
        components.push(LambdaMatrix::from_columns(&tg, rk, &cols));
    }
    Ok(Some(ChainMap::new(delta, c.clone(), t.complex.clone(), components)?))
}

/// A homotopy `Δ ≃ TΔ`, if one exists.
pub fn check_cocommutative(diag: &Diagonal) -> Result<Option<ChainHomotopy>, ChainError> {
    let swap = swap_map(&diag.tensor, &diag.tensor)?;
    let t_delta = diag.map.then(&swap)?;
    find_homotopy(&diag.map, &t_delta)
}

/// A homotopy `(Δ⊗1)Δ ≃ (1⊗Δ)Δ` after reassociating, if one exists.
pub fn check_coassociative(diag: &Diagonal) -> Result<Option<ChainHomotopy>, ChainError> {
    let c = &diag.map.source;
    let cc = &diag.tensor;
    let left = tensor_complexes(&cc.complex, c)?;
    let right = tensor_complexes(c, &cc.complex)?;
    let id = ChainMap::identity(c);
    let delta_id = tensor_maps(&diag.map, &id, cc, &left)?;
    let id_delta = tensor_maps(&id, &diag.map, cc, &right)?;
    let assoc = associator(&left, cc, &right, cc)?;
    let f = diag.map.then(&delta_id)?.then(&assoc)?;
    let g = diag.map.then(&id_delta)?;
    find_homotopy(&f, &g)
}

#[cfg(test)]
mod tests {
    use super::super::tests::lens;
    use super::*;
    use crate::groupring::trivial_group;

    fn cp2() -> Arc<ReducedComplex> {
        let g = trivial_group();
        let ranks = vec![1, 0, 1, 0, 1];
        let boundaries = (1..5).map(|k| LambdaMatrix::zeros(&g, ranks[k - 1], ranks[k])).collect();
        Arc::new(ReducedComplex::new(&g, ranks, boundaries).unwrap())
    }

    #[test]
    fn s3_diagonal_is_primitive() {
        let g = trivial_group();
        let s3 = Arc::new(
            ReducedComplex::new(
                &g,
                vec![1, 0, 0, 1],
                vec![LambdaMatrix::zeros(&g, 1, 0), LambdaMatrix::zeros(&g, 0, 0), LambdaMatrix::zeros(&g, 0, 1)],
            )
            .unwrap(),
        );
        let d = find_diagonal(&s3).unwrap().unwrap();
        assert!(d.is_strict());
        let one = GroupRingElement::one(&d.tensor.complex.group().clone());
        assert_eq!(d.image(3, 0), vec![one.clone(), one]);
        assert!(check_cocommutative(&d).unwrap().unwrap().is_zero());
        assert!(check_coassociative(&d).unwrap().is_some());
    }

    #[test]
    fn cp2_diagonal_with_middle_term() {
        let c = cp2();
        let t = tensor_complexes(&c, &c).unwrap();
        let tg = t.complex.group().clone();
        let mut comps: Vec<LambdaMatrix> = (0..5).map(|k| LambdaMatrix::zeros(&tg, t.complex.rank(k), c.rank(k))).collect();
        comps[0] = LambdaMatrix::identity(&tg, 1);
        comps[2].set(t.basis.index(2, 2, 0, 0), 0, GroupRingElement::one(&tg));
        comps[2].set(t.basis.index(2, 0, 0, 0), 0, GroupRingElement::one(&tg));
        for (i, a, b) in [(4, 0, 0), (2, 0, 0), (0, 0, 0)] {
            comps[4].set(t.basis.index(4, i, a, b), 0, GroupRingElement::one(&tg));
        }
        let d = Diagonal::from_components(&c, comps).unwrap().unwrap();
        assert!(d.is_strict());
        assert!(check_cocommutative(&d).unwrap().unwrap().is_zero());
    }

    #[test]
    fn lens_diagonals_exist() {
        for (p, q) in [(2, 1), (3, 1), (5, 1), (5, 2), (7, 3)] {
            let c = Arc::new(lens(p, q));
            let d = find_diagonal(&c).unwrap().expect("diagonal");
            assert!(is_chain_map(&d.map));
        }
        let c = Arc::new(lens(5, 1));
        let d = find_diagonal(&c).unwrap().unwrap();
        assert!(check_cocommutative(&d).unwrap().is_some());
    }
}
