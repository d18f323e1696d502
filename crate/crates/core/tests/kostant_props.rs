use std::collections::BTreeSet;

mod common;

use common::brute_force_count;
use proptest::prelude::*;
use superschur::kostant::*;
use superschur::superroot::*;

fn small_dims() -> impl Strategy<Value = Dims> {
    (1usize..=2, 1usize..=2, 0usize..=4).prop_map(|(m, n, d)| Dims::new(m, n, d).unwrap())
}

fn weight(len: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-3i64..=3, len).prop_map(Weight)
}

fn table(dims: Dims) -> impl Strategy<Value = (Dims, ExponentTable)> {
    let roots = positive_roots(&dims);
    let entries: Vec<_> = roots
        .iter()
        .map(|r| if r.is_odd() { 0u32..=1 } else { 0u32..=2 })
        .collect();
    entries.prop_map(move |e| (dims.clone(), ExponentTable::new(&dims, e).unwrap()))
}

fn dims_and_pair() -> impl Strategy<Value = (Dims, ExponentTable, ExponentTable, Weight)> {
    small_dims().prop_flat_map(|dims| {
        let rank = dims.rank();
        (table(dims.clone()), table(dims), prop::collection::vec(0i64..=4, rank))
            .prop_map(|((dims, a), (_, c), l)| (dims, a, c, Weight(l)))
    })
}

#[test]
fn dimension_count_matches_brute_force() {
    for m in 1..=2 {
        for n in 1..=2 {
            for d in 0..=4 {
                let dims = Dims::new(m, n, d).unwrap();
                let brute = brute_force_count(m, n, d);
                assert_eq!(dimension_count(&dims), brute, "{dims}");
                assert_eq!(enumerate_basis_y(&dims).len() as u128, brute, "{dims}");
                assert_eq!(enumerate_p(&dims).len() as u128, brute, "{dims}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weight_order_is_partial_order(a in weight(3), b in weight(3), c in weight(3)) {
        let le = |x: &Weight, y: &Weight| weight_leq(x, y).unwrap();
        prop_assert!(le(&a, &a));
        if le(&a, &b) && le(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if le(&a, &b) && le(&b, &c) {
            prop_assert!(le(&a, &c));
        }
    }

    #[test]
    fn weight_order_rejects_length_mismatch(a in weight(2), b in weight(3)) {
        prop_assert!(weight_leq(&a, &b).is_err());
    }

    #[test]
    fn content_is_additive((dims, a, c, _) in dims_and_pair()) {
        let rank = dims.rank();
        let x = a.e_monomial(&dims);
        let y = c.f_monomial(&dims);
        let xy = x.concat(&y);
        prop_assume!(!xy.is_zero());
        for flavor in [ContentFlavor::Chi, ContentFlavor::Left, ContentFlavor::Right] {
            prop_assert_eq!(
                content(&xy, flavor, rank),
                content(&x, flavor, rank).add(&content(&y, flavor, rank))
            );
        }
    }

    #[test]
    fn three_contents_agree((dims, a, c, lambda) in dims_and_pair()) {
        let rank = dims.rank();
        let mono = a.e_monomial(&dims).concat(&c.f_monomial(&dims));
        prop_assume!(!mono.is_zero());
        let y = BasisElement { a, lambda: lambda.clone(), c };
        let chi = content(&mono, ContentFlavor::Chi, rank).to_weight();
        let left = content(&mono, ContentFlavor::Left, rank).to_weight();
        let right = content(&mono, ContentFlavor::Right, rank).to_weight();
        let by_chi = weight_leq(&chi, &lambda).unwrap();
        prop_assert_eq!(by_chi, weight_leq(&left, &y.lambda_left(&dims)).unwrap());
        prop_assert_eq!(by_chi, weight_leq(&right, &y.lambda_right(&dims)).unwrap());
    }

    #[test]
    fn p_and_y_are_inverse(dims in small_dims()) {
        let ys = enumerate_basis_y(&dims);
        let ps = enumerate_p(&dims);
        let images: BTreeSet<_> = ps.iter().map(|p| p_to_y(p, &dims).unwrap()).collect();
        prop_assert_eq!(images.len(), ps.len());
        prop_assert_eq!(images, ys.iter().cloned().collect::<BTreeSet<_>>());
        for y in &ys {
            prop_assert_eq!(&p_to_y(&y_to_p(y, &dims).unwrap(), &dims).unwrap(), y);
        }
    }
}
