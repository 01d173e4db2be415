use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pdchain::crossed::{FreeWord, Rho2Word};
use pdchain::linalg::{homology_at, smith_normal_form, solve_lambda, AbelianGroup, IntMatrix};
use pdchain::{FiniteGroup, Group, GroupRingElement, LambdaMatrix, OrientationChar};
use proptest::prelude::*;

fn s3() -> Group {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = perms.iter().map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
    FiniteGroup::from_table(table).unwrap()
}

fn sign(g: &Group) -> OrientationChar {
    OrientationChar::new(g.clone(), vec![0, 1, 1, 1, 0, 0]).unwrap()
}

fn element(g: &Group, terms: &[(usize, i64)]) -> GroupRingElement {
    GroupRingElement::from_terms(g, terms.iter().copied())
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..6, -4i64..5), 0..6)
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(rows, cols, &entries[..rows * cols])
}

fn unimodular(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

/// `H = ker a / im b` for `a·b = 0`, read off from ranks and the invariant factors of `b`.
fn homology_oracle(a: &IntMatrix, b: &IntMatrix) -> AbelianGroup {
    let s = smith_normal_form(b);
    let free = a.cols() - a.rank() - b.rank();
    let torsion: Vec<BigInt> = s.diagonal.into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroup::new(free, torsion).unwrap()
}

proptest! {
    #[test]
    fn augmentation_is_multiplicative(x in terms(), y in terms()) {
        let g = s3();
        let (x, y) = (element(&g, &x), element(&g, &y));
        prop_assert_eq!(x.ring_mul(&y).unwrap().aug(), x.aug() * y.aug());
    }

    #[test]
    fn bar_is_an_anti_involution(x in terms(), y in terms()) {
        let g = s3();
        let w = sign(&g);
        let (x, y) = (element(&g, &x), element(&g, &y));
        prop_assert_eq!(x.bar(&w).unwrap().bar(&w).unwrap(), x.clone());
        let lhs = x.ring_mul(&y).unwrap().bar(&w).unwrap();
        let rhs = y.bar(&w).unwrap().ring_mul(&x.bar(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.try_add(&y).unwrap().bar(&w).unwrap(), x.bar(&w).unwrap().try_add(&y.bar(&w).unwrap()).unwrap());
    }

    #[test]
    fn regular_rep_multiplies_coordinates(x in terms(), y in terms()) {
        let g = s3();
        let (x, y) = (element(&g, &x), element(&g, &y));
        prop_assert_eq!(x.regular_rep().mul_vec(&y.to_dense()), x.ring_mul(&y).unwrap().to_dense());
        prop_assert_eq!(x.regular_rep().try_mul(&y.regular_rep()).unwrap(), x.ring_mul(&y).unwrap().regular_rep());
    }

    #[test]
    fn twisted_int_is_equivariant(x in terms(), h in 0usize..6) {
        let g = s3();
        let w = sign(&g);
        let x = element(&g, &x);
        let moved = x.ring_mul(&GroupRingElement::basis(&g, h)).unwrap();
        prop_assert_eq!(moved.twisted_int(&w), x.twisted_int(&w) * w.sign(h));
    }

    #[test]
    fn smith_form_is_exact(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(-30i64..31, 25)) {
        let a = matrix(rows, cols, &entries);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.try_mul(&a).unwrap().try_mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(unimodular(&s.u) && unimodular(&s.v));
        prop_assert!(s.diagonal.iter().all(|d| d.is_positive()));
        prop_assert!(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(s.u.try_mul(&s.u_inv).unwrap(), IntMatrix::identity(rows));
    }

    #[test]
    fn homology_matches_oracle(
        ranks in prop::collection::vec(1usize..4, 3),
        b in prop::collection::vec(-4i64..5, 9),
        mix in prop::collection::vec(-3i64..4, 9),
    ) {
        let (m, k, n) = (ranks[0], ranks[1], ranks[2]);
        let b = matrix(k, n, &b);
        let left_kernel = left_kernel_rows(&b);
        let mut a = IntMatrix::zeros(m, k);
        for i in 0..m {
            for (r, row) in left_kernel.iter().enumerate() {
                let c = BigInt::from(mix[(i * 3 + r) % 9]);
                for j in 0..k {
                    let cur = a.get(i, j).clone();
                    a.set(i, j, cur + &c * &row[j]);
                }
            }
        }
        prop_assert!(a.try_mul(&b).unwrap().is_zero());
        let h = homology_at(&b, &a).unwrap();
        prop_assert!(h.same_invariants(&homology_oracle(&a, &b)), "{} vs {}", h, homology_oracle(&a, &b));
    }

    #[test]
    fn solve_lambda_witnesses_check(
        entries in prop::collection::vec(terms(), 4),
        x in prop::collection::vec(terms(), 2),
        noise in terms(),
        perturb in any::<bool>(),
    ) {
        let g = s3();
        let a = LambdaMatrix::from_entries(&g, 2, 2, entries.iter().map(|t| element(&g, t)).collect()).unwrap();
        let x = LambdaMatrix::from_entries(&g, 2, 1, x.iter().map(|t| element(&g, t)).collect()).unwrap();
        let mut b = a.try_mul(&x).unwrap().column(0);
        if perturb {
            b[0] = b[0].try_add(&element(&g, &noise)).unwrap();
        }
        match solve_lambda(&a, &b).unwrap() {
            Some(y) => {
                let y = LambdaMatrix::from_entries(&g, 2, 1, y).unwrap();
                prop_assert_eq!(a.try_mul(&y).unwrap().column(0), b);
            }
            None => prop_assert!(perturb),
        }
    }

    #[test]
    fn right_action_composes(
        xi in prop::collection::vec((0usize..2, prop::collection::vec((0usize..2, prop::bool::ANY), 0..4), prop::bool::ANY), 0..4),
        alpha in prop::collection::vec((0usize..2, prop::bool::ANY), 0..4),
        beta in prop::collection::vec((0usize..2, prop::bool::ANY), 0..4),
    ) {
        let word = |l: &[(usize, bool)]| FreeWord::new(2, l.iter().map(|&(g, s)| (g, if s { 1 } else { -1 })).collect()).unwrap();
        let mut w = Rho2Word::empty(2, 2);
        for (x, a, s) in &xi {
            w = w.mul(&Rho2Word::letter(2, *x, word(a), if *s { 1 } else { -1 }).unwrap()).unwrap();
        }
        let (alpha, beta) = (word(&alpha), word(&beta));
        prop_assert_eq!(w.act(&alpha).unwrap().act(&beta).unwrap(), w.act(&alpha.mul(&beta).unwrap()).unwrap());
        let f = vec![word(&[(0, true), (1, true)]), word(&[(1, false), (0, true), (0, true)])];
        let moved = w.act(&beta).unwrap().boundary(&f).unwrap();
        prop_assert_eq!(moved, w.boundary(&f).unwrap().conjugate(&beta).unwrap());
        let twice = w.mul(&w.act(&alpha).unwrap()).unwrap();
        prop_assert_eq!(twice.boundary(&f).unwrap(), w.boundary(&f).unwrap().mul(&w.act(&alpha).unwrap().boundary(&f).unwrap()).unwrap());
    }
}

/// Integer basis of `{r : r·b = 0}`.
fn left_kernel_rows(b: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(&b.transpose());
    let (k, rank) = (b.rows(), s.rank());
    let vt = s.v.transpose();
    (rank..k).map(|i| vt.row(i).to_vec()).collect()
}

#[test]
fn triple_isomorphism_is_an_equivalence() {
    use pdchain::corpus::lens;
    use pdchain::triples::{triple_pd3, triples_isomorphic};
    for p in [5usize, 7, 8] {
        let qs: Vec<usize> = (1..p).filter(|q| num_integer::gcd(*q, p) == 1).collect();
        let ts: Vec<_> = qs.iter().map(|&q| triple_pd3(&lens(p, q).unwrap()).unwrap()).collect();
        let iso = |i: usize, j: usize| triples_isomorphic(&ts[i], &ts[j]).unwrap().is_some();
        for i in 0..ts.len() {
            assert!(iso(i, i));
            for j in 0..ts.len() {
                assert_eq!(iso(i, j), iso(j, i));
                for k in 0..ts.len() {
                    assert!(!(iso(i, j) && iso(j, k)) || iso(i, k));
                }
            }
        }
    }
}
