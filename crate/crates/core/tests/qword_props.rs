use proptest::prelude::*;
use superschur::qalgebra::*;
use superschur::qfield::RatFn;
use superschur::qreplift::QRep;
use superschur::superroot::Dims;

fn letter(rank: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        (1..rank).prop_map(Letter::E),
        (1..rank).prop_map(Letter::F),
        (1..=rank).prop_map(Letter::K),
        (1..=rank).prop_map(Letter::KInv),
    ]
}

fn coeff() -> impl Strategy<Value = RatFn> {
    (-2i64..=2, -2i64..=2).prop_map(|(c, e)| RatFn::from_int(c) * RatFn::q_pow(e))
}

fn expr(rank: usize) -> impl Strategy<Value = QExpr> {
    prop::collection::vec((prop::collection::vec(letter(rank), 0..4), coeff()), 1..4).prop_map(|ws| {
        ws.into_iter()
            .fold(QExpr::zero(), |acc, (w, c)| acc.add(&QExpr::word(QWord(w), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tau_is_an_involution(x in expr(3)) {
        prop_assert_eq!(x.antiautomorphism().antiautomorphism(), x);
    }

    #[test]
    fn tau_reverses_products(x in expr(3), y in expr(3)) {
        prop_assert_eq!(
            x.mul(&y).antiautomorphism(),
            y.antiautomorphism().mul(&x.antiautomorphism())
        );
    }

    #[test]
    fn rho_is_multiplicative(x in expr(3), y in expr(3)) {
        let rep = QRep::new(&Dims::new(2, 1, 2).unwrap());
        let lhs = rep.eval_expr(&x.mul(&y)).unwrap();
        let rhs = rep.eval_expr(&x).unwrap().mul(&rep.eval_expr(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_preserves_grading(x in expr(3)) {
        let dims = Dims::new(2, 1, 1).unwrap();
        prop_assert_eq!(x.antiautomorphism().grading(&dims), x.grading(&dims));
    }
}
