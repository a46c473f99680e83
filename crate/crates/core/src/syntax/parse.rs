//! Recursive-descent parser for the ASCII formula grammar.
//!
//! `A x` / `E x` bind the classical quantifiers, `Q x` / `Qd x` the
//! generalized quantifier and its dual (`Q (x1,x2)` tuples for types k >= 2).
//! Precedence `!` > `&` > `|` > `->`; binders extend maximally to the right.
//! `phi -> psi` is sugar for `!phi | psi` and requires a flat antecedent.

use super::{Formula, QuantKind, Signature, SyntaxError, Term, Var};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Amp,
    Bar,
    Bang,
    Arrow,
    Equals,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '(' => {
                chars.next();
                col += 1;
                toks.push((Tok::LParen, l, co));
            }
            ')' => {
                chars.next();
                col += 1;
                toks.push((Tok::RParen, l, co));
            }
            ',' => {
                chars.next();
                col += 1;
                toks.push((Tok::Comma, l, co));
            }
            '&' => {
                chars.next();
                col += 1;
                toks.push((Tok::Amp, l, co));
            }
            '|' => {
                chars.next();
                col += 1;
                toks.push((Tok::Bar, l, co));
            }
            '!' => {
                chars.next();
                col += 1;
                toks.push((Tok::Bang, l, co));
            }
            '=' => {
                chars.next();
                col += 1;
                toks.push((Tok::Equals, l, co));
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    toks.push((Tok::Arrow, l, co));
                } else {
                    return Err(ParseError {
                        line: l,
                        col: co,
                        msg: "expected `->`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(name), l, co));
            }
            other => {
                return Err(ParseError {
                    line: l,
                    col: co,
                    msg: format!("unexpected character `{}`", other),
                });
            }
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: (line, col),
    })
}

struct Parser<'a> {
    lx: Lexer,
    sig: &'a Signature,
    quant_type: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.lx.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.lx
            .toks
            .get(self.lx.pos)
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or(self.lx.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.lx.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.lx.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn syn<T>(&self, e: SyntaxError) -> Result<T, ParseError> {
        self.err(e.to_string())
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected {}", what))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.formula()?;
            return match Formula::implies(lhs, rhs) {
                Ok(f) => Ok(f),
                Err(e) => self.syn(e),
            };
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Bar) {
            self.next();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.negation()?;
        while self.peek() == Some(&Tok::Amp) {
            self.next();
            let rhs = self.negation()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        if self.peek() == Some(&Tok::Bang) {
            let pos = self.here();
            self.next();
            let inner = self.negation()?;
            return match Formula::not(inner) {
                Ok(f) => Ok(f),
                Err(_) => Err(ParseError {
                    line: pos.0,
                    col: pos.1,
                    msg: "negation over dependence atom".into(),
                }),
            };
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.next();
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "false" => {
                    self.next();
                    Ok(Formula::False)
                }
                "dep" => {
                    self.next();
                    self.expect(Tok::LParen, "`(` after dep")?;
                    let terms = self.term_list()?;
                    self.expect(Tok::RParen, "`)`")?;
                    match Formula::dep(terms) {
                        Ok(f) => Ok(f),
                        Err(e) => self.syn(e),
                    }
                }
                "A" => {
                    self.next();
                    let v = self.binder_var()?;
                    let body = self.formula()?;
                    Ok(Formula::Forall(v, Box::new(body)))
                }
                "E" => {
                    self.next();
                    let v = self.binder_var()?;
                    let body = self.formula()?;
                    Ok(Formula::Exists(v, Box::new(body)))
                }
                "Q" | "Qd" => {
                    let kind = if name == "Q" { QuantKind::Q } else { QuantKind::Dual };
                    self.next();
                    let vars = self.binder_tuple()?;
                    if vars.len() != self.quant_type {
                        return self.syn(SyntaxError::BinderTupleArity {
                            expected: self.quant_type,
                            got: vars.len(),
                        });
                    }
                    let body = self.formula()?;
                    match Formula::quant(kind, vars, body) {
                        Ok(f) => Ok(f),
                        Err(e) => self.syn(e),
                    }
                }
                _ => {
                    let atom_or_term = self.ident_start(name)?;
                    match atom_or_term {
                        IdentResult::Atom(f) => Ok(f),
                        IdentResult::Term(t) => {
                            self.expect(Tok::Equals, "`=` after term")?;
                            let rhs = self.term()?;
                            Ok(Formula::Eq(t, rhs))
                        }
                    }
                }
            },
            _ => self.err("expected a formula"),
        }
    }

    fn binder_var(&mut self) -> Result<Var, ParseError> {
        match self.next() {
            Some(Tok::Ident(name)) => self.variable_named(name),
            _ => self.err("expected a bound variable"),
        }
    }

    fn binder_tuple(&mut self) -> Result<Vec<Var>, ParseError> {
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            let mut vars = Vec::new();
            loop {
                match self.next() {
                    Some(Tok::Ident(name)) => vars.push(self.variable_named(name)?),
                    _ => return self.err("expected a bound variable"),
                }
                match self.next() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RParen) => break,
                    _ => return self.err("expected `,` or `)` in binder tuple"),
                }
            }
            Ok(vars)
        } else {
            Ok(vec![self.binder_var()?])
        }
    }

    fn variable_named(&self, name: String) -> Result<Var, ParseError> {
        if super::RESERVED.contains(&name.as_str()) {
            return self.err(format!("`{}` is reserved and cannot be a variable", name));
        }
        if self.sig.has_symbol(&name) {
            return self.err(format!(
                "`{}` is a declared symbol and cannot be bound",
                name
            ));
        }
        Ok(Var(name))
    }

    fn ident_start(&mut self, name: String) -> Result<IdentResult, ParseError> {
        self.next();
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            let args = if self.peek() == Some(&Tok::RParen) {
                Vec::new()
            } else {
                self.term_list()?
            };
            self.expect(Tok::RParen, "`)`")?;
            if let Some(arity) = self.sig.relation_arity(&name) {
                if arity != args.len() {
                    return self.syn(SyntaxError::ArityMismatch {
                        name,
                        expected: arity,
                        got: args.len(),
                    });
                }
                return Ok(IdentResult::Atom(Formula::Atom(name, args)));
            }
            if let Some(arity) = self.sig.function_arity(&name) {
                if arity != args.len() {
                    return self.syn(SyntaxError::ArityMismatch {
                        name,
                        expected: arity,
                        got: args.len(),
                    });
                }
                return Ok(IdentResult::Term(Term::App(name, args)));
            }
            self.err(format!("undeclared symbol `{}`", name))
        } else if let Some(arity) = self.sig.relation_arity(&name) {
            if arity != 0 {
                return self.syn(SyntaxError::ArityMismatch {
                    name,
                    expected: arity,
                    got: 0,
                });
            }
            Ok(IdentResult::Atom(Formula::Atom(name, Vec::new())))
        } else {
            Ok(IdentResult::Term(self.bare_term(name)?))
        }
    }

    /// A bare identifier in term position: a 0-ary function if declared,
    /// otherwise a variable.
    fn bare_term(&self, name: String) -> Result<Term, ParseError> {
        if let Some(arity) = self.sig.function_arity(&name) {
            if arity != 0 {
                return self.syn(SyntaxError::ArityMismatch {
                    name,
                    expected: arity,
                    got: 0,
                });
            }
            Ok(Term::App(name, Vec::new()))
        } else {
            if super::RESERVED.contains(&name.as_str()) {
                return self.err(format!("`{}` is reserved", name));
            }
            Ok(Term::Var(Var(name)))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.next();
                    let args = if self.peek() == Some(&Tok::RParen) {
                        Vec::new()
                    } else {
                        self.term_list()?
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    let arity = match self.sig.function_arity(&name) {
                        Some(a) => a,
                        None => return self.err(format!("undeclared function `{}`", name)),
                    };
                    if arity != args.len() {
                        return self.syn(SyntaxError::ArityMismatch {
                            name,
                            expected: arity,
                            got: args.len(),
                        });
                    }
                    Ok(Term::App(name, args))
                } else {
                    self.bare_term(name)
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.next();
            terms.push(self.term()?);
        }
        Ok(terms)
    }
}

/// Parse a formula with quantifier type 1 (single-variable Q/Qd binders).
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_with_config(text, sig, 1)
}

/// Parse a formula whose Q/Qd binder tuples must have length `quant_type`.
pub fn parse_with_config(
    text: &str,
    sig: &Signature,
    quant_type: usize,
) -> Result<Formula, ParseError> {
    let lx = lex(text)?;
    let mut p = Parser {
        lx,
        sig,
        quant_type,
    };
    let f = p.formula()?;
    if p.peek().is_some() {
        return p.err("trailing input after formula");
    }
    Ok(f)
}

/// Parse a standalone term.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let lx = lex(text)?;
    let mut p = Parser {
        lx,
        sig,
        quant_type: 1,
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input after term");
    }
    Ok(t)
}

enum IdentResult {
    Atom(Formula),
    Term(Term),
}

#[cfg(test)]
mod tests {
    use super::super::{free_variables, Formula, QuantKind, Signature, Term, Var};
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_relation("P", 1).unwrap();
        s.declare_relation("S", 0).unwrap();
        s.declare_function("f", 1).unwrap();
        s.declare_function("c", 0).unwrap();
        s
    }

    #[test]
    fn dep_atom_parses_to_constructor() {
        let f = parse("dep(x,y)", &sig()).unwrap();
        assert_eq!(f, Formula::Dep(vec![Term::var("x"), Term::var("y")]));
    }

    #[test]
    fn negated_dep_atom_is_rejected() {
        let err = parse("! dep(x,y)", &sig()).unwrap_err();
        assert!(err.msg.contains("negation over dependence atom"));
    }

    #[test]
    fn binder_over_disjunction() {
        let f = parse("Q x (P(x) | dep(x))", &sig()).unwrap();
        match f {
            Formula::Quant(QuantKind::Q, vars, body) => {
                assert_eq!(vars, vec![Var::from("x")]);
                assert!(matches!(*body, Formula::Or(..)));
            }
            other => panic!("unexpected shape: {:?}", other),
        }
    }

    #[test]
    fn binders_extend_maximally_right() {
        let f = parse("Q x P(x) | dep(x)", &sig()).unwrap();
        assert!(matches!(f, Formula::Quant(..)));
    }

    #[test]
    fn arrow_desugars_and_requires_flat_antecedent() {
        let s = sig();
        let f = parse("P(x) -> dep(x)", &s).unwrap();
        assert_eq!(
            f,
            Formula::or(
                Formula::Not(Box::new(Formula::Atom("P".into(), vec![Term::var("x")]))),
                Formula::Dep(vec![Term::var("x")])
            )
        );
        assert!(parse("dep(x) -> P(x)", &s).is_err());
    }

    #[test]
    fn tuples_need_matching_quantifier_type() {
        let s = sig();
        assert!(parse("Q (x,y) x = y", &s).is_err());
        let f = parse_with_config("Q (x,y) x = y", &s, 2).unwrap();
        match f {
            Formula::Quant(QuantKind::Q, vars, _) => assert_eq!(vars.len(), 2),
            _ => panic!(),
        }
    }

    #[test]
    fn undeclared_applied_symbol_errors() {
        assert!(parse("T(x)", &sig()).is_err());
    }

    #[test]
    fn constants_and_functions_in_equations() {
        let s = sig();
        let f = parse("f(c) = x", &s).unwrap();
        assert_eq!(
            f,
            Formula::Eq(
                Term::App("f".into(), vec![Term::App("c".into(), vec![])]),
                Term::var("x")
            )
        );
        assert!(free_variables(&f).contains(&Var::from("x")));
    }

    #[test]
    fn nullary_relation() {
        let s = sig();
        assert_eq!(parse("S", &s).unwrap(), Formula::Atom("S".into(), vec![]));
        assert_eq!(parse("S()", &s).unwrap(), Formula::Atom("S".into(), vec![]));
    }

    #[test]
    fn precedence_and_grouping() {
        let s = sig();
        let f = parse("P(x) & P(y) | S", &s).unwrap();
        assert!(matches!(f, Formula::Or(..)));
        let f = parse("! P(x) & S", &s).unwrap();
        match f {
            Formula::And(l, _) => assert!(matches!(*l, Formula::Not(..))),
            _ => panic!(),
        }
    }
}
