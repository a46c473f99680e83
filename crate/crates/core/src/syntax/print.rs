//! Rendering back to the ASCII grammar. `parse(render(phi))` is the
//! identity on ASTs.

use super::{Formula, Term};
use std::fmt::Write;

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) => out.push_str(v.as_str()),
        Term::App(f, args) => {
            out.push_str(f);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_term(out, a);
                }
                out.push(')');
            }
        }
    }
}

// Binding strength used for minimal parenthesisation. Binders are weakest:
// they extend maximally to the right, so they must be wrapped whenever they
// occur as a non-final operand.
const LVL_OR: u8 = 1;
const LVL_AND: u8 = 2;
const LVL_NOT: u8 = 3;

fn level(phi: &Formula) -> u8 {
    match phi {
        Formula::Or(..) => LVL_OR,
        Formula::And(..) => LVL_AND,
        Formula::Not(..) => LVL_NOT,
        Formula::Exists(..) | Formula::Forall(..) | Formula::Quant(..) => 0,
        _ => 4,
    }
}

fn write_formula(out: &mut String, phi: &Formula, min_level: u8) {
    let lvl = level(phi);
    let needs_parens = lvl < min_level;
    if needs_parens {
        out.push('(');
    }
    match phi {
        Formula::Atom(name, args) => {
            out.push_str(name);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_term(out, a);
                }
                out.push(')');
            }
        }
        Formula::Eq(l, r) => {
            write_term(out, l);
            out.push_str(" = ");
            write_term(out, r);
        }
        Formula::False => out.push_str("false"),
        Formula::Dep(terms) => {
            out.push_str("dep(");
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_term(out, t);
            }
            out.push(')');
        }
        Formula::Not(p) => {
            out.push('!');
            write_formula(out, p, LVL_NOT + 1);
        }
        Formula::And(l, r) => {
            // Left-associative chains print without parens on the left.
            write_formula(out, l, LVL_AND);
            out.push_str(" & ");
            write_formula(out, r, LVL_AND + 1);
        }
        Formula::Or(l, r) => {
            write_formula(out, l, LVL_OR);
            out.push_str(" | ");
            write_formula(out, r, LVL_OR + 1);
        }
        Formula::Exists(x, p) => {
            let _ = write!(out, "E {} ", x);
            write_formula(out, p, 0);
        }
        Formula::Forall(x, p) => {
            let _ = write!(out, "A {} ", x);
            write_formula(out, p, 0);
        }
        Formula::Quant(kind, vars, p) => {
            out.push_str(kind.keyword());
            out.push(' ');
            if vars.len() == 1 {
                out.push_str(vars[0].as_str());
            } else {
                out.push('(');
                for (i, v) in vars.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(v.as_str());
                }
                out.push(')');
            }
            out.push(' ');
            write_formula(out, p, 0);
        }
    }
    if needs_parens {
        out.push(')');
    }
}

/// Render a formula in the ASCII grammar with canonical spacing.
pub fn render(phi: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, phi, 0);
    out
}

/// Render a term.
pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Signature};
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_relation("P", 1).unwrap();
        s.declare_relation("R", 2).unwrap();
        s.declare_relation("S", 0).unwrap();
        s.declare_function("f", 1).unwrap();
        s.declare_function("c", 0).unwrap();
        s
    }

    fn round_trip(text: &str) {
        let s = sig();
        let f = parse(text, &s).unwrap();
        let printed = render(&f);
        let reparsed = parse(&printed, &s).unwrap();
        assert_eq!(f, reparsed, "round trip through `{}`", printed);
    }

    #[test]
    fn canonical_spacing_round_trip() {
        let f = parse("A x E y x=y", &sig()).unwrap();
        assert_eq!(render(&f), "A x E y x = y");
    }

    #[test]
    fn dual_binder_keyword() {
        let f = parse("Qd x P(x)", &sig()).unwrap();
        assert_eq!(render(&f), "Qd x P(x)");
    }

    #[test]
    fn falsum_renders_as_keyword() {
        assert_eq!(render(&Formula::False), "false");
    }

    #[test]
    fn round_trips() {
        round_trip("P(x) & (P(y) | S)");
        round_trip("(E x P(x)) & S");
        round_trip("Q x (P(x) | dep(x, f(c)))");
        round_trip("! (P(x) | S) & S");
        round_trip("A x (E y R(x,y)) | S");
        round_trip("dep(f(x), c)");
        round_trip("!!S");
    }
}
