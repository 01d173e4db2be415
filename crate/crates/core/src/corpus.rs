//! Standard small PD complexes: spheres, CP², S²×S², RP⁴ and lens spaces.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::chain::{find_diagonal, tensor_complexes, Diagonal, ReducedComplex};
use crate::document::{ComplexDocument, PrecrossedSpec, WeaklyStandardSpec};
use crate::groupring::{cyclic_group, trivial_group, GroupRingElement, OrientationChar};
use crate::linalg::LambdaMatrix;
use crate::poincare::{fundamental_class_candidates, PDChainComplex, PoincareError};

fn no_diagonal() -> PoincareError {
    PoincareError::Shape("no diagonal found".into())
}

/// Builds the PD complex, taking the generator with positive top coordinate.
fn assemble(c: ReducedComplex, omega: OrientationChar, n: usize, diagonal: Option<Diagonal>) -> Result<PDChainComplex, PoincareError> {
    let c = Arc::new(c);
    let diagonal = match diagonal {
        Some(d) => d,
        None => find_diagonal(&c)?.ok_or_else(no_diagonal)?,
    };
    let fundamental = fundamental_class_candidates(&c, &omega, n as i64)?
        .into_iter()
        .find(|v| v.iter().rev().find(|x| x.sign() != num_bigint::Sign::NoSign).is_some_and(|x| x.sign() == num_bigint::Sign::Plus))
        .ok_or(PoincareError::NotInfiniteCyclic(n as i64))?;
    PDChainComplex::new(c, omega, fundamental, diagonal, n)
}

fn trivially_acted(ranks: Vec<usize>) -> ReducedComplex {
    let g = trivial_group();
    let boundaries = (1..ranks.len()).map(|k| LambdaMatrix::zeros(&g, ranks[k - 1], ranks[k])).collect();
    ReducedComplex::new(&g, ranks, boundaries).expect("zero boundaries")
}

/// `Sⁿ` for `n ≥ 2`, one cell in degrees 0 and `n`.
pub fn sphere(n: usize) -> Result<PDChainComplex, PoincareError> {
    let mut ranks = vec![0; n + 1];
    ranks[0] = 1;
    ranks[n] = 1;
    let c = trivially_acted(ranks);
    let omega = OrientationChar::trivial(c.group().clone());
    assemble(c, omega, n, None)
}

/// A simply connected 4-complex with one top cell whose diagonal carries the
/// symmetric form `form` on `H₂`.
fn four_manifold(form: &[Vec<i64>]) -> Result<PDChainComplex, PoincareError> {
    let r = form.len();
    let c = Arc::new(trivially_acted(vec![1, 0, r, 0, 1]));
    let t = tensor_complexes(&c, &c)?;
    let tg = t.complex.group().clone();
    let one = GroupRingElement::one(&tg);
    let mut comps: Vec<LambdaMatrix> = (0..5).map(|k| LambdaMatrix::zeros(&tg, t.complex.rank(k), c.rank(k as i64))).collect();
    comps[0] = LambdaMatrix::identity(&tg, 1);
    for a in 0..r {
        comps[2].set(t.basis.index(2, 2, a, 0), a, one.clone());
        comps[2].set(t.basis.index(2, 0, 0, a), a, one.clone());
    }
    comps[4].set(t.basis.index(4, 4, 0, 0), 0, one.clone());
    comps[4].set(t.basis.index(4, 0, 0, 0), 0, one.clone());
    for (a, row) in form.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v != 0 {
                comps[4].set(t.basis.index(4, 2, a, b), 0, GroupRingElement::from_int(&tg, v));
            }
        }
    }
    let diagonal = Diagonal::from_components(&c, comps)?.ok_or_else(no_diagonal)?;
    let omega = OrientationChar::trivial(c.group().clone());
    assemble((*c).clone(), omega, 4, Some(diagonal))
}

pub fn cp2() -> Result<PDChainComplex, PoincareError> {
    four_manifold(&[vec![1]])
}

pub fn s2_times_s2() -> Result<PDChainComplex, PoincareError> {
    four_manifold(&[vec![0, 1], vec![1, 0]])
}

/// The cellular complex of `L(p, q)`: `d₁ = t − 1`, `d₂ = N`, `d₃ = t^q − 1`.
pub fn lens_complex(p: usize, q: usize) -> Result<ReducedComplex, PoincareError> {
    let g = cyclic_group(p)?;
    let norm: Vec<(usize, i64)> = (0..p).map(|i| (i, 1)).collect();
    let q = q % p;
    Ok(ReducedComplex::from_terms(&g, vec![1, 1, 1, 1], &[vec![vec![(1, 1), (0, -1)]], vec![norm], vec![vec![(q, 1), (0, -1)]]])?)
}

pub fn lens(p: usize, q: usize) -> Result<PDChainComplex, PoincareError> {
    let c = lens_complex(p, q)?;
    let omega = OrientationChar::trivial(c.group().clone());
    assemble(c, omega, 3, None)
}

/// The cellular chains of `RP⁴`: `d_k = t + (−1)^k`.
pub fn rp4_complex() -> ReducedComplex {
    let g = cyclic_group(2).expect("order 2");
    let entries: Vec<Vec<Vec<(usize, i64)>>> = (1..=4).map(|k| vec![vec![(1, 1), (0, if k % 2 == 1 { -1 } else { 1 })]]).collect();
    ReducedComplex::from_terms(&g, vec![1; 5], &entries).expect("rp4 complex")
}

/// `RP⁴` with the orientation character `t ↦ −1`.
pub fn rp4() -> Result<PDChainComplex, PoincareError> {
    let c = rp4_complex();
    let omega = OrientationChar::new(c.group().clone(), vec![0, 1])?;
    assemble(c, omega, 4, None)
}

/// `RP⁴` paired with the trivial character, which is not a PD complex.
/// The fundamental cycle is set to `1⊗e₄` regardless.
pub fn rp4_untwisted() -> Result<PDChainComplex, PoincareError> {
    let c = Arc::new(rp4_complex());
    let diagonal = find_diagonal(&c)?.ok_or_else(no_diagonal)?;
    let omega = OrientationChar::trivial(c.group().clone());
    PDChainComplex::new(c, omega, vec![BigInt::from(1)], diagonal, 4)
}

fn simply_connected_presentation(e2: usize) -> PrecrossedSpec {
    PrecrossedSpec { e1: 0, relators: vec![Vec::new(); e2] }
}

fn cyclic_presentation(p: usize) -> PrecrossedSpec {
    PrecrossedSpec { e1: 1, relators: vec![vec![(0, 1); p]] }
}

/// `(relative path, document)` for the standard corpus: spheres, `CP²`,
/// `S²×S²`, `RP⁴`, every `L(p, q)` with `p ≤ 11`, and two 2-types.
pub fn standard_documents() -> Result<Vec<(String, ComplexDocument)>, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut push = |name: &str, doc: ComplexDocument| out.push((format!("{name}.json"), doc));
    push("s3", ComplexDocument::from_pd("s3", &sphere(3)?, None)?);
    push("s4", ComplexDocument::from_pd("s4", &sphere(4)?, Some(simply_connected_presentation(0)))?);
    push("cp2", ComplexDocument::from_pd("cp2", &cp2()?, Some(simply_connected_presentation(1)))?);
    push("s2xs2", ComplexDocument::from_pd("s2xs2", &s2_times_s2()?, Some(simply_connected_presentation(2)))?);
    push("rp4", ComplexDocument::from_pd("rp4", &rp4()?, Some(cyclic_presentation(2)))?);
    for p in 2..=11usize {
        for q in (1..p).filter(|q| num_integer::Integer::gcd(q, &p) == 1) {
            let name = format!("lens_{p}_{q}");
            let mut doc = ComplexDocument::from_pd(&name, &lens(p, q)?, Some(cyclic_presentation(p)))?;
            doc.weakly_standard = Some(WeaklyStandardSpec { splitting: None, top_cell: 0 });
            push(&name, doc);
        }
    }
    let g = trivial_group();
    let omega = OrientationChar::trivial(g.clone());
    for (name, b) in [("s2", None), ("moore_z2", Some(2))] {
        let c = match b {
            None => trivially_acted(vec![1, 0, 1]),
            Some(b) => ReducedComplex::from_terms(&g, vec![1, 0, 1, 1], &[vec![], vec![], vec![vec![(0, b)]]])?,
        };
        let mut doc = ComplexDocument::from_complex(name, &c, &omega)?;
        doc.precrossed = Some(simply_connected_presentation(1));
        out.push((format!("two_types/{name}.json"), doc));
    }
    Ok(out)
}
