mod common;

use bolano_core::io::{render, Format};
use bolano_core::{commutator_no, ParallelConfig};
use common::cases::{case_studies, evo, n, no, p, COMMUTATORS, NORMAL_ORDER};

#[test]
fn normal_order_examples() {
    for (input, expect) in NORMAL_ORDER {
        assert_eq!(no(input), n(expect), "{input}");
    }
}

#[test]
fn commutator_examples() {
    for (a, b, expect) in COMMUTATORS {
        assert_eq!(
            commutator_no(&p(a), &p(b), &ParallelConfig::serial()),
            n(expect),
            "[{a}, {b}]"
        );
    }
}

#[test]
fn latex_outputs() {
    assert_eq!(
        render(&no("b*bd*b"), Format::Latex),
        "b_{} + {b^\\dagger_{}} b_{}^{2}"
    );
    let c = commutator_no(&p("bd_1*bd_2"), &p("b_1*b_2"), &ParallelConfig::serial());
    assert_eq!(
        render(&c, Format::Latex),
        "-1 - {b^\\dagger_{1}} b_{1} - {b^\\dagger_{2}} b_{2}"
    );
    let c = commutator_no(&p("bd*b"), &p("b"), &ParallelConfig::serial());
    assert_eq!(render(&c, Format::Latex), "- b_{}");
    let c = commutator_no(
        &p("b_1 + 2*b_2**2"),
        &p("bd_1**3 + 2*bd_2*b_2"),
        &ParallelConfig::serial(),
    );
    assert_eq!(
        render(&c, Format::Latex),
        "3 {b^\\dagger_{1}}^{2} + 8 b_{2}^{2}"
    );
}

#[test]
fn case_study_equations() {
    let cases = case_studies();
    assert_eq!(cases.len(), 10);
    for case in &cases {
        assert_eq!(case.equation().rhs_poly(), case.expected(), "{}", case.name);
    }
}

#[test]
fn harmonic_oscillator_latex() {
    let eq = evo("hbar*omega_0*bd*b", &[], "b", false);
    assert_eq!(
        render(&eq, Format::Latex),
        "\\frac{d}{d t} {\\left\\langle b_{} \\right\\rangle} = - i \\omega_{0} {\\left\\langle b_{} \\right\\rangle}"
    );
    let eq = evo("hbar*omega_0*bd*b", &[], "bd*b", false);
    assert!(eq.is_zero());
    assert!(render(&eq, Format::Latex).ends_with(" = 0"));
}

#[test]
fn nonreciprocal_latex_keeps_the_phase() {
    let case = &case_studies()[9];
    let text = render(&case.equation(), Format::Latex);
    assert!(text.contains("e^{- i \\phi}"), "{text}");
    assert!(
        text.contains("\\frac{1}{2}") || text.contains("\\frac{"),
        "{text}"
    );
}
