use dsemion::groundstate::{closed_string_invariance, Convention};
use dsemion::strings::AnyonLabel;

#[test]
fn small_closed_strings_fix_the_ground_state() {
    let r = closed_string_invariance(3, Convention::LoopCount).unwrap();
    // 7 plaquettes and 12 adjacent pairs, four labels each
    assert_eq!(r.cases.len(), 19 * 4);
    assert!(r.passed());
    for c in &r.cases {
        match c.label {
            AnyonLabel::Vacuum | AnyonLabel::Bound => assert_eq!(c.phase, Some(0)),
            // one enclosed loop each; a pair encloses a single region too
            AnyonLabel::Semion | AnyonLabel::AntiSemion => assert_eq!(c.phase, Some(2), "{c:?}"),
        }
    }
}

#[test]
fn the_other_sign_rule_is_not_invariant() {
    let r = closed_string_invariance(3, Convention::RegionComponents).unwrap();
    assert!(!r.passed());
    for c in &r.cases {
        let chiral = matches!(c.label, AnyonLabel::Semion | AnyonLabel::AntiSemion);
        assert_eq!(c.phase.is_none(), chiral);
    }
}
