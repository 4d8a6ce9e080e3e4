//! Property tests cross-checking the closed forms against brute force.

use proptest::prelude::*;

use syllogist::aristotle::Letter;
use syllogist::dsl::{self, Lexicon, QuantifierTerm, Statement};
use syllogist::dubois::{self, PatternIInput};
use syllogist::fuzzy_number::TrapezoidalQuantifier;
use syllogist::interval::{Interval, QuantifierKind};
use syllogist::oracle::{self, AtomSet, ProportionConstraint, Target, VennModel};

fn unit_interval() -> impl Strategy<Value = Interval> {
    (0u32..=20, 0u32..=20).prop_map(|(a, b)| {
        let (l, u) = (a.min(b), a.max(b));
        Interval::closed(f64::from(l) / 20.0, f64::from(u) / 20.0).unwrap()
    })
}

fn samples(iv: &Interval) -> [f64; 3] {
    [iv.lower(), (iv.lower() + iv.upper()) / 2.0, iv.upper()]
}

fn model() -> impl Strategy<Value = VennModel> {
    proptest::array::uniform8(0u32..4).prop_map(|atoms| VennModel { atoms })
}

proptest! {
    #[test]
    fn interval_ops_contain_pointwise_results(a in unit_interval(), b in unit_interval()) {
        let sum = a.add(&b, false);
        let diff = a.sub(&b, false);
        let prod = a.mul(&b);
        for x in samples(&a) {
            for y in samples(&b) {
                prop_assert!(sum.contains(x + y));
                prop_assert!(diff.contains(x - y));
                prop_assert!(prod.contains(x * y));
            }
        }
    }

    #[test]
    fn precise_pattern1_holds_in_small_models(m in model()) {
        let ab = AtomSet::A.and(AtomSet::B);
        let bc = AtomSet::B.and(AtomSet::C);
        prop_assume!(m.count(ab) > 0 && m.count(bc) > 0);
        let p = |n: AtomSet, d: AtomSet| oracle::rational_to_f64(&m.proportion(n, d).unwrap());
        let bound = dubois::pattern1_precise(
            p(AtomSet::B, AtomSet::A),
            p(AtomSet::A, AtomSet::B),
            p(AtomSet::C, AtomSet::B),
            p(AtomSet::B, AtomSet::C),
        ).unwrap();
        let actual = p(AtomSet::C, AtomSet::A);
        prop_assert!(bound.lower() <= actual + 1e-9 && actual <= bound.upper() + 1e-9, "{} not in {}", actual, bound);
    }

    #[test]
    fn imprecise_pattern1_covers_its_sweep(
        q1 in unit_interval(), q1c in unit_interval(), q2 in unit_interval(), q2c in unit_interval(),
    ) {
        prop_assume!(q1c.lower() > 0.0 && q2c.lower() > 0.0);
        let input = PatternIInput { q1, q1_conv: q1c, q2, q2_conv: q2c };
        if let (Ok(exact), Ok(swept)) = (dubois::pattern1_imprecise(&input), dubois::sweep_pattern1(&input, dubois::SWEEP_STEP)) {
            prop_assert!(exact.lower() <= swept.lower() + 1e-9, "{} vs {}", exact, swept);
            prop_assert!(swept.upper() <= exact.upper() + 1e-9, "{} vs {}", exact, swept);
        }
    }

    #[test]
    fn range_search_matches_enumeration(
        num in 1u8..=255, den in 1u8..=255, lo in 0u32..=4, width in 0u32..=4, tnum in 1u8..=255, tden in 1u8..=255,
    ) {
        let bounds = Interval::closed(f64::from(lo) / 4.0, (f64::from(lo + width) / 4.0).min(1.0)).unwrap();
        let c = ProportionConstraint::new(AtomSet::from_bits(num), AtomSet::from_bits(den), &bounds).unwrap();
        let target = Target { numerator: AtomSet::from_bits(tnum), denominator: AtomSet::from_bits(tden) };
        let fast = oracle::attained_range(std::slice::from_ref(&c), &target, 6);
        let slow = oracle::attained_range_exhaustive(std::slice::from_ref(&c), &target, 6);
        match (fast, slow) {
            (Ok(f), Ok(s)) => prop_assert_eq!((f.min, f.max), s),
            (Err(f), Err(s)) => prop_assert_eq!(f, s),
            (f, s) => prop_assert!(false, "{:?} vs {:?}", f, s),
        }
    }

    #[test]
    fn statements_round_trip(
        kind in 0usize..4, a in 0u32..=100, b in 0u32..=100, c in 0u32..=100, d in 0u32..=100,
        lo_open: bool, hi_open: bool, letter in 0usize..4, at_least: bool,
        subject in "[a-z]{1,8}( [a-z]{1,6})?", predicate in "[A-Z][a-z]{0,8}",
    ) {
        prop_assume!(subject != predicate);
        let mut p = [a, b, c, d];
        p.sort_unstable();
        let f = |x: u32| f64::from(x) / 100.0;
        let quantifier = match kind {
            0 => QuantifierKind::Precise(f(a)),
            1 => {
                let open = p[0] < p[3];
                match Interval::with_openness(f(p[0]), f(p[3]), lo_open && open, hi_open && open) {
                    Ok(iv) if !iv.is_point() => QuantifierKind::Imprecise(iv),
                    _ => QuantifierKind::Precise(f(p[0])),
                }
            }
            2 => QuantifierKind::Classical(Letter::ALL[letter]),
            _ => QuantifierKind::Fuzzy(TrapezoidalQuantifier::new(f(p[0]), f(p[1]), f(p[2]), f(p[3])).unwrap()),
        };
        let mut s = Statement::new(QuantifierTerm::Literal(quantifier), subject, predicate);
        s.at_least = at_least;
        let lexicon = Lexicon::new();
        let back = dsl::parse_statement(&s.to_string(), &lexicon).unwrap();
        prop_assert_eq!(back.to_string(), s.to_string());
        let back = dsl::parse_statement(&s.render_ascii(), &lexicon).unwrap();
        prop_assert_eq!(back.to_string(), s.to_string());
    }

    #[test]
    fn parser_never_panics(input in ".{0,60}") {
        let _ = dsl::parse_statement(&input, &Lexicon::new());
        let _ = dsl::parse_syllogism(&input, &Lexicon::new());
    }
}
