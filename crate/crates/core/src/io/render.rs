//! Plain-text and LaTeX printers.
//!
//! Plain output is valid input for the parser. LaTeX output follows the
//! `{b^\dagger_{k}}` / `b_{k}` convention.

use std::fmt::{self, Write as _};

use num_traits::{One, Signed};

use super::record;
use crate::expr::{NormalPoly, Rational, Scalar, ScalarMonomial, Signature, HBAR};
use crate::lindblad::EvolutionEquation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Plain,
    Latex,
    Record,
}

pub trait Render {
    fn render(&self, format: Format) -> String;
}

pub fn render<T: Render + ?Sized>(x: &T, format: Format) -> String {
    x.render(format)
}

impl Render for NormalPoly {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => poly_plain(self),
            Format::Latex => poly_latex(self, |ops| ops),
            Format::Record => record::normal_to_json(self),
        }
    }
}

impl Render for EvolutionEquation {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => {
                let lhs = poly_plain(&self.observable);
                let mut rhs = Terms::default();
                rhs.push_plain(&self.constant, "");
                for (e, c) in &self.terms {
                    rhs.push_plain(c, &format!("<{}>", sig_plain(e.signature())));
                }
                format!("d<{lhs}>/dt = {}", rhs.finish())
            }
            Format::Latex => {
                let lhs = poly_latex(&self.observable, |ops| ops);
                let rhs = poly_latex(&self.rhs_poly(), |ops| {
                    if ops.is_empty() {
                        ops
                    } else {
                        format!("{{\\left\\langle {ops} \\right\\rangle}}")
                    }
                });
                format!("\\frac{{d}}{{d t}} {{\\left\\langle {lhs} \\right\\rangle}} = {rhs}")
            }
            Format::Record => record::equation_to_json(self),
        }
    }
}

/// Accumulates signed terms, printing `0` when nothing was pushed.
#[derive(Default)]
struct Terms {
    out: String,
}

impl Terms {
    fn push(&mut self, negative: bool, body: &str, atomic_number: bool) {
        match (self.out.is_empty(), negative) {
            (true, false) => {}
            (true, true) if atomic_number => self.out.push('-'),
            (true, true) => self.out.push_str("- "),
            (false, false) => self.out.push_str(" + "),
            (false, true) => self.out.push_str(" - "),
        }
        self.out.push_str(body);
    }

    fn push_plain(&mut self, c: &Scalar, ops: &str) {
        if c.is_zero() {
            return;
        }
        let (neg, coeff) = coeff_plain(c);
        let body = match (coeff.is_empty(), ops.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => ops.to_string(),
            (false, true) => coeff,
            (false, false) => format!("{coeff}*{ops}"),
        };
        if self.out.is_empty() {
            if neg {
                self.out.push('-');
            }
            self.out.push_str(&body);
        } else {
            self.out.push_str(if neg { " - " } else { " + " });
            self.out.push_str(&body);
        }
    }

    fn finish(self) -> String {
        if self.out.is_empty() {
            "0".into()
        } else {
            self.out
        }
    }
}

fn rational_plain(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Plain form of `|c| * m` without the sign; empty when it is exactly 1.
fn monomial_plain(m: &ScalarMonomial, c: &Rational) -> String {
    let mut factors = Vec::new();
    let mag = c.abs();
    if !mag.is_one() {
        factors.push(rational_plain(&mag));
    }
    if m.i_power() == 1 {
        factors.push("I".to_string());
    }
    for (s, e) in m.sym_powers() {
        factors.push(if e.is_one() {
            s.name().to_string()
        } else if e.is_integer() && e.is_positive() {
            format!("{}^{}", s.name(), e.numer())
        } else {
            format!("{}^({})", s.name(), rational_plain(e))
        });
    }
    for (s, r) in m.phases() {
        let sign = if r.is_negative() { "-" } else { "" };
        let mag = r.abs();
        factors.push(if mag.is_one() {
            format!("exp({sign}I*{})", s.name())
        } else {
            format!("exp({sign}{}*I*{})", rational_plain(&mag), s.name())
        });
    }
    factors.join("*")
}

/// Sign and magnitude of a coefficient. Multi-term coefficients are
/// parenthesized and never negative.
fn coeff_plain(c: &Scalar) -> (bool, String) {
    if c.len() == 1 {
        let (m, r) = c.terms().next().unwrap();
        return (r.is_negative(), monomial_plain(m, r));
    }
    (false, format!("({c})"))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut t = Terms::default();
        for (m, r) in self.terms() {
            t.push_plain(&Scalar::from_terms([(m.clone(), r.clone())]), "");
        }
        f.write_str(&t.finish())
    }
}

fn mode_suffix(label: &str) -> String {
    if label.is_empty() {
        String::new()
    } else {
        format!("_{label}")
    }
}

fn sig_plain(sig: &Signature) -> String {
    let mut factors = Vec::new();
    for (m, p, _) in sig.modes() {
        match p {
            0 => {}
            1 => factors.push(format!("bd{}", mode_suffix(m.as_str()))),
            _ => factors.push(format!("bd{}^{p}", mode_suffix(m.as_str()))),
        }
    }
    for (m, _, q) in sig.modes() {
        match q {
            0 => {}
            1 => factors.push(format!("b{}", mode_suffix(m.as_str()))),
            _ => factors.push(format!("b{}^{q}", mode_suffix(m.as_str()))),
        }
    }
    factors.join("*")
}

fn poly_plain(n: &NormalPoly) -> String {
    let mut t = Terms::default();
    for (sig, c) in n.iter() {
        t.push_plain(c, &sig_plain(sig));
    }
    t.finish()
}

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi",
    "omega", "Gamma", "Delta", "Theta", "Lambda", "Xi", "Pi", "Sigma", "Upsilon", "Phi", "Psi",
    "Omega",
];

fn symbol_latex(name: &str) -> String {
    if name == HBAR {
        return "\\hbar".into();
    }
    let (head, sub) = match name.split_once('_') {
        Some((h, s)) => (h, Some(s)),
        None => (name, None),
    };
    let mut out = if GREEK.contains(&head) {
        format!("\\{head}")
    } else {
        head.to_string()
    };
    if let Some(s) = sub {
        let _ = write!(out, "_{{{s}}}");
    }
    out
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn monomial_latex(m: &ScalarMonomial, c: &Rational) -> Vec<String> {
    let mut toks = Vec::new();
    let mag = c.abs();
    if !mag.is_one() {
        toks.push(rational_latex(&mag));
    }
    if m.i_power() == 1 {
        toks.push("i".into());
    }
    for (s, e) in m.sym_powers() {
        let base = symbol_latex(s.name());
        toks.push(if e.is_one() {
            base
        } else if e.is_integer() {
            format!("{base}^{{{}}}", e.numer())
        } else {
            format!("{base}^{{{}/{}}}", e.numer(), e.denom())
        });
    }
    for (s, r) in m.phases() {
        let sign = if r.is_negative() { "- " } else { "" };
        let mag = r.abs();
        let mult = if mag.is_one() {
            String::new()
        } else {
            format!("{} ", rational_latex(&mag))
        };
        toks.push(format!("e^{{{sign}{mult}i {}}}", symbol_latex(s.name())));
    }
    toks
}

fn scalar_latex(c: &Scalar) -> String {
    let mut t = Terms::default();
    for (m, r) in c.terms() {
        let toks = monomial_latex(m, r);
        let body = if toks.is_empty() {
            "1".into()
        } else {
            toks.join(" ")
        };
        t.push(r.is_negative(), &body, m.is_constant());
    }
    t.finish()
}

fn sig_latex(sig: &Signature) -> String {
    let mut toks = Vec::new();
    for (m, p, _) in sig.modes() {
        match p {
            0 => {}
            1 => toks.push(format!("{{b^\\dagger_{{{m}}}}}")),
            _ => toks.push(format!("{{b^\\dagger_{{{m}}}}}^{{{p}}}")),
        }
    }
    for (m, _, q) in sig.modes() {
        match q {
            0 => {}
            1 => toks.push(format!("b_{{{m}}}")),
            _ => toks.push(format!("b_{{{m}}}^{{{q}}}")),
        }
    }
    toks.join(" ")
}

fn poly_latex(n: &NormalPoly, wrap: impl Fn(String) -> String) -> String {
    let mut t = Terms::default();
    for (sig, c) in n.iter() {
        let ops = wrap(sig_latex(sig));
        let (neg, mut toks, atomic) = if c.len() == 1 {
            let (m, r) = c.terms().next().unwrap();
            (
                r.is_negative(),
                monomial_latex(m, r),
                m.is_constant() && ops.is_empty(),
            )
        } else {
            (
                false,
                vec![format!("\\left({}\\right)", scalar_latex(c))],
                false,
            )
        };
        if !ops.is_empty() {
            toks.push(ops);
        }
        let body = if toks.is_empty() {
            "1".into()
        } else {
            toks.join(" ")
        };
        t.push(neg, &body, atomic);
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Symbol;

    fn mono(modes: &[(&str, u32, u32)], c: Scalar) -> NormalPoly {
        NormalPoly::monomial(
            Signature::from_modes(modes.iter().map(|&(m, p, q)| (m, p, q))),
            c,
        )
    }

    #[test]
    fn golden_latex() {
        let n = &mono(&[("", 0, 1)], Scalar::one()) + &mono(&[("", 1, 2)], Scalar::one());
        assert_eq!(render(&n, Format::Latex), "b_{} + {b^\\dagger_{}} b_{}^{2}");
        assert_eq!(
            render(
                &mono(&[("", 0, 1)], Scalar::from_integer(-1)),
                Format::Latex
            ),
            "- b_{}"
        );

        let n = &(&NormalPoly::scalar(Scalar::from_integer(-1))
            - &mono(&[("1", 1, 1)], Scalar::one()))
            - &mono(&[("2", 1, 1)], Scalar::one());
        assert_eq!(
            render(&n, Format::Latex),
            "-1 - {b^\\dagger_{1}} b_{1} - {b^\\dagger_{2}} b_{2}"
        );
    }

    #[test]
    fn zero_renders_as_zero() {
        for f in [Format::Plain, Format::Latex] {
            assert_eq!(render(&NormalPoly::zero(), f), "0");
        }
    }

    #[test]
    fn plain_forms() {
        let x32 = Scalar::symbol_pow(Symbol::new("x"), Rational::new(3.into(), 2.into()));
        let c = &(&x32 * &Scalar::i()) * &Scalar::phase(Symbol::new("theta"), Rational::one());
        let c = c.scale(&Rational::new(3.into(), 2.into()));
        assert_eq!(c.to_string(), "3/2*I*x^(3/2)*exp(I*theta)");
        let n = mono(&[("1", 2, 1)], c);
        assert_eq!(
            render(&n, Format::Plain),
            "3/2*I*x^(3/2)*exp(I*theta)*bd_1^2*b_1"
        );
        assert_eq!(Scalar::from_integer(-5).to_string(), "-5");
        assert_eq!(Scalar::zero().to_string(), "0");
        let two = &Scalar::symbol(Symbol::new("a")) - &Scalar::one();
        assert_eq!(
            render(&mono(&[("", 1, 0)], two), Format::Plain),
            "(-1 + a)*bd"
        );
    }

    #[test]
    fn latex_coefficients() {
        let c = &Scalar::i().scale(&Rational::from_integer((-1).into()))
            * &Scalar::symbol(Symbol::new("omega_0"));
        assert_eq!(
            render(&mono(&[("", 0, 1)], c), Format::Latex),
            "- i \\omega_{0} b_{}"
        );
        let c = Scalar::phase(Symbol::new("phi"), Rational::from_integer((-1).into()))
            .scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(
            render(&mono(&[("2", 0, 1)], c), Format::Latex),
            "\\frac{1}{2} e^{- i \\phi} b_{2}"
        );
    }
}
