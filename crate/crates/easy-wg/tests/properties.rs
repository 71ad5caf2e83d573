//! Property-based tests: canonical-form and serialization round trips,
//! algebraic laws of the partition operations, and the moment-cumulant
//! inversion.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use easy_wg::freeprob::{cumulants_from_moments, moments_from_cumulants, CumulantSequence, Kind};
use easy_wg::linalg::{format_rational, parse_rational};
use easy_wg::partition::{Direction, Partition};
use easy_wg::tpoly::TPoly;

/// Arbitrary partition of up to 8 points via raw block labels; the
/// constructor canonicalizes.
fn arb_partition() -> impl Strategy<Value = Partition> {
    (0usize..=4, proptest::collection::vec(0usize..4, 0..=4)).prop_map(|(upper, mut raw)| {
        let upper = upper.min(raw.len());
        raw.iter_mut().for_each(|v| *v %= 4);
        Partition::from_labels(upper, &raw)
    })
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9)
        .prop_map(|(num, den)| BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn arb_tpoly() -> impl Strategy<Value = TPoly> {
    proptest::collection::vec((0usize..5, arb_rational()), 0..4).prop_map(|terms| {
        let mut p = TPoly::zero();
        for (pow, c) in terms {
            p.add_assign_term(pow, &c);
        }
        p
    })
}

proptest! {
    #[test]
    fn parse_round_trip(p in arb_partition()) {
        let text = p.to_string();
        prop_assert_eq!(Partition::parse(&text).unwrap(), p);
    }

    #[test]
    fn rotations_invert(p in arb_partition()) {
        if p.upper_count() > 0 {
            let once = p.rotate(Direction::Left).unwrap();
            prop_assert_eq!(once.rotate(Direction::Right).unwrap(), p.clone());
        }
        if p.lower_count() > 0 {
            let once = p.rotate(Direction::Right).unwrap();
            prop_assert_eq!(once.rotate(Direction::Left).unwrap(), p);
        }
    }

    #[test]
    fn involution_is_an_involution(p in arb_partition()) {
        let star = p.involution();
        prop_assert_eq!((star.shape().1, star.shape().0), p.shape());
        prop_assert_eq!(star.involution(), p);
    }

    #[test]
    fn tensor_shapes_and_unit(p in arb_partition(), q in arb_partition()) {
        let t = p.tensor(&q);
        prop_assert_eq!(t.points(), p.points() + q.points());
        prop_assert_eq!(t.block_count(), p.block_count() + q.block_count());
        prop_assert_eq!(Partition::empty().tensor(&p), p.clone());
        prop_assert_eq!(p.tensor(&Partition::empty()), p);
    }

    #[test]
    fn involution_reverses_composition(p in arb_partition(), q in arb_partition()) {
        if let Ok((pq, _)) = q.compose(&p) {
            let (qp_star, _) = p.involution().compose(&q.involution()).unwrap();
            prop_assert_eq!(pq.involution(), qp_star);
        }
    }

    #[test]
    fn one_line_preserves_noncrossing(p in arb_partition()) {
        prop_assert_eq!(p.one_line().is_noncrossing(), p.is_noncrossing());
    }

    #[test]
    fn rational_strings_round_trip(r in arb_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn tpoly_json_round_trip(p in arb_tpoly()) {
        prop_assert_eq!(TPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn moment_cumulant_round_trip(
        entries in proptest::collection::vec(arb_tpoly(), 1..=5),
        free in any::<bool>(),
    ) {
        let kind = if free { Kind::Free } else { Kind::Classical };
        let c = CumulantSequence { kind, entries };
        let m = moments_from_cumulants(&c).unwrap();
        let back = cumulants_from_moments(&m).unwrap();
        prop_assert_eq!(back.entries, c.entries);
        prop_assert_eq!(back.kind, c.kind);
    }
}
