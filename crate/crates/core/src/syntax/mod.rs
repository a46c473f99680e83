//! Terms, formulas, signatures, well-formedness, free variables and
//! capture-avoiding substitution for dependence logic with a monotone
//! generalized quantifier and its dual.

mod parse;
mod print;

pub use parse::{parse, parse_term, parse_with_config, ParseError};
pub use print::{render, render_term};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Names that the grammar reserves; they can never be declared in a signature.
pub const RESERVED: &[&str] = &["A", "E", "Q", "Qd", "dep", "false"];

/// A variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var(s.to_string())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("symbol `{0}` already declared")]
    DuplicateSymbol(String),
    #[error("symbol name `{0}` is reserved")]
    ReservedName(String),
    #[error("undeclared {kind} symbol `{name}`")]
    Undeclared { kind: &'static str, name: String },
    #[error("symbol `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("negation over a formula containing a dependence atom")]
    NegationOverDep,
    #[error("dependence atom needs at least one term")]
    EmptyDepAtom,
    #[error("quantifier binder tuple must be non-empty and have distinct variables")]
    BadBinderTuple,
    #[error("binder tuple has length {got}, quantifier type is {expected}")]
    BinderTupleArity { expected: usize, got: usize },
    #[error("implication antecedent contains a dependence atom")]
    ImplicationNotFlat,
}

/// Substituting `t` for `x` would let a variable of `t` be captured.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("substitution would capture variable `{captured}` under binder `{binder}`")]
pub struct CaptureError {
    pub captured: Var,
    pub binder: Var,
}

/// Relation and function symbols with arities. Constants are 0-ary functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    relations: std::collections::BTreeMap<String, usize>,
    functions: std::collections::BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_relation(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        if RESERVED.contains(&name) {
            return Err(SyntaxError::ReservedName(name.to_string()));
        }
        if self.relations.contains_key(name) {
            return Err(SyntaxError::DuplicateSymbol(name.to_string()));
        }
        self.relations.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn declare_function(&mut self, name: &str, arity: usize) -> Result<(), SyntaxError> {
        if RESERVED.contains(&name) {
            return Err(SyntaxError::ReservedName(name.to_string()));
        }
        if self.functions.contains_key(name) {
            return Err(SyntaxError::DuplicateSymbol(name.to_string()));
        }
        self.functions.insert(name.to_string(), arity);
        Ok(())
    }

    pub fn relation_arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> {
        self.relations.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.relations.contains_key(name) || self.functions.contains_key(name)
    }

    /// A copy of `self` with extra symbols, for signature extensions such as
    /// the approximation predicate or Skolem functions.
    pub fn extended_with_relation(&self, name: &str, arity: usize) -> Result<Self, SyntaxError> {
        let mut sig = self.clone();
        sig.declare_relation(name, arity)?;
        Ok(sig)
    }

    pub fn extended_with_functions(
        &self,
        funs: &[(String, usize)],
    ) -> Result<Self, SyntaxError> {
        let mut sig = self.clone();
        for (name, arity) in funs {
            sig.declare_function(name, *arity)?;
        }
        Ok(sig)
    }
}

/// First-order terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Var),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_variables(out);
                }
            }
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn well_formed(&self, sig: &Signature) -> Result<(), SyntaxError> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let arity = sig.function_arity(name).ok_or(SyntaxError::Undeclared {
                    kind: "function",
                    name: name.clone(),
                })?;
                if arity != args.len() {
                    return Err(SyntaxError::ArityMismatch {
                        name: name.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                for a in args {
                    a.well_formed(sig)?;
                }
                Ok(())
            }
        }
    }

    /// Simultaneous substitution of terms for variables.
    pub fn substitute_many(&self, subst: &[(Var, Term)]) -> Term {
        match self {
            Term::Var(v) => subst
                .iter()
                .find(|(x, _)| x == v)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.substitute_many(subst)).collect(),
            ),
        }
    }
}

/// Which of the two generalized-quantifier symbols a binder uses.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum QuantKind {
    /// The quantifier Q itself.
    Q,
    /// Its dual Q^d.
    Dual,
}

impl QuantKind {
    pub fn keyword(self) -> &'static str {
        match self {
            QuantKind::Q => "Q",
            QuantKind::Dual => "Qd",
        }
    }
}

/// Formulas of D(Q, Q^d).
///
/// Invariants maintained by the smart constructors and the parser:
/// negation appears only in front of subformulas without dependence atoms,
/// dependence atoms have at least one term, and generalized-quantifier
/// binder tuples are non-empty with pairwise distinct variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    False,
    Dep(Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    Quant(QuantKind, Vec<Var>, Box<Formula>),
}

impl Formula {
    /// Negation, rejecting bodies that contain dependence atoms.
    pub fn not(phi: Formula) -> Result<Formula, SyntaxError> {
        if !is_flat(&phi) {
            return Err(SyntaxError::NegationOverDep);
        }
        Ok(Formula::Not(Box::new(phi)))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    /// `phi -> psi` desugars to `!phi | psi`; the antecedent must be flat.
    pub fn implies(phi: Formula, psi: Formula) -> Result<Formula, SyntaxError> {
        if !is_flat(&phi) {
            return Err(SyntaxError::ImplicationNotFlat);
        }
        Ok(Formula::or(Formula::Not(Box::new(phi)), psi))
    }

    pub fn exists(x: impl Into<Var>, phi: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(phi))
    }

    pub fn forall(x: impl Into<Var>, phi: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(phi))
    }

    pub fn quant(kind: QuantKind, vars: Vec<Var>, phi: Formula) -> Result<Formula, SyntaxError> {
        let distinct: BTreeSet<_> = vars.iter().collect();
        if vars.is_empty() || distinct.len() != vars.len() {
            return Err(SyntaxError::BadBinderTuple);
        }
        Ok(Formula::Quant(kind, vars, Box::new(phi)))
    }

    pub fn dep(terms: Vec<Term>) -> Result<Formula, SyntaxError> {
        if terms.is_empty() {
            return Err(SyntaxError::EmptyDepAtom);
        }
        Ok(Formula::Dep(terms))
    }

    /// Checks symbol declarations, arities, the negation discipline, binder
    /// tuples, and that every Q/Q^d tuple has length `quant_type`.
    pub fn well_formed(&self, sig: &Signature, quant_type: usize) -> Result<(), SyntaxError> {
        match self {
            Formula::Atom(name, args) => {
                let arity = sig.relation_arity(name).ok_or(SyntaxError::Undeclared {
                    kind: "relation",
                    name: name.clone(),
                })?;
                if arity != args.len() {
                    return Err(SyntaxError::ArityMismatch {
                        name: name.clone(),
                        expected: arity,
                        got: args.len(),
                    });
                }
                for a in args {
                    a.well_formed(sig)?;
                }
                Ok(())
            }
            Formula::Eq(l, r) => {
                l.well_formed(sig)?;
                r.well_formed(sig)
            }
            Formula::False => Ok(()),
            Formula::Dep(terms) => {
                if terms.is_empty() {
                    return Err(SyntaxError::EmptyDepAtom);
                }
                for t in terms {
                    t.well_formed(sig)?;
                }
                Ok(())
            }
            Formula::Not(phi) => {
                if !is_flat(phi) {
                    return Err(SyntaxError::NegationOverDep);
                }
                phi.well_formed(sig, quant_type)
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.well_formed(sig, quant_type)?;
                r.well_formed(sig, quant_type)
            }
            Formula::Exists(_, phi) | Formula::Forall(_, phi) => phi.well_formed(sig, quant_type),
            Formula::Quant(_, vars, phi) => {
                let distinct: BTreeSet<_> = vars.iter().collect();
                if vars.is_empty() || distinct.len() != vars.len() {
                    return Err(SyntaxError::BadBinderTuple);
                }
                if vars.len() != quant_type {
                    return Err(SyntaxError::BinderTupleArity {
                        expected: quant_type,
                        got: vars.len(),
                    });
                }
                phi.well_formed(sig, quant_type)
            }
        }
    }

    /// Iterate over direct subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::False | Formula::Dep(..) => vec![],
            Formula::Not(p) | Formula::Exists(_, p) | Formula::Forall(_, p)
            | Formula::Quant(_, _, p) => vec![p],
            Formula::And(l, r) | Formula::Or(l, r) => vec![l, r],
        }
    }

    /// True if no quantifier (∃, ∀, Q, Q^d) occurs.
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Exists(..) | Formula::Forall(..) | Formula::Quant(..) => false,
            _ => self.children().iter().all(|c| c.is_quantifier_free()),
        }
    }

    /// Relation and function symbols occurring in the formula.
    pub fn symbols(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        fn term_syms(t: &Term, funs: &mut BTreeSet<String>) {
            if let Term::App(f, args) = t {
                funs.insert(f.clone());
                for a in args {
                    term_syms(a, funs);
                }
            }
        }
        fn walk(phi: &Formula, rels: &mut BTreeSet<String>, funs: &mut BTreeSet<String>) {
            match phi {
                Formula::Atom(name, args) => {
                    rels.insert(name.clone());
                    for a in args {
                        term_syms(a, funs);
                    }
                }
                Formula::Eq(l, r) => {
                    term_syms(l, funs);
                    term_syms(r, funs);
                }
                Formula::Dep(terms) => {
                    for t in terms {
                        term_syms(t, funs);
                    }
                }
                _ => {
                    for c in phi.children() {
                        walk(c, rels, funs);
                    }
                }
            }
        }
        let mut rels = BTreeSet::new();
        let mut funs = BTreeSet::new();
        walk(self, &mut rels, &mut funs);
        (rels, funs)
    }

    /// All variables occurring in the formula, free or bound.
    pub fn all_variables(&self) -> BTreeSet<Var> {
        let mut out = free_variables(self);
        fn walk(phi: &Formula, out: &mut BTreeSet<Var>) {
            match phi {
                Formula::Exists(x, p) | Formula::Forall(x, p) => {
                    out.insert(x.clone());
                    walk(p, out);
                }
                Formula::Quant(_, xs, p) => {
                    out.extend(xs.iter().cloned());
                    walk(p, out);
                }
                _ => {
                    for c in phi.children() {
                        walk(c, out);
                    }
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

/// True iff no dependence atom occurs in the formula.
pub fn is_flat(phi: &Formula) -> bool {
    match phi {
        Formula::Dep(_) => false,
        _ => phi.children().iter().all(|c| is_flat(c)),
    }
}

/// The free variables of a formula. For dependence atoms this is the union
/// of the variables of all argument terms; quantifiers of every kind remove
/// their bound tuple.
pub fn free_variables(phi: &Formula) -> BTreeSet<Var> {
    match phi {
        Formula::Atom(_, args) | Formula::Dep(args) => {
            let mut out = BTreeSet::new();
            for t in args {
                t.collect_variables(&mut out);
            }
            out
        }
        Formula::Eq(l, r) => {
            let mut out = l.variables();
            out.extend(r.variables());
            out
        }
        Formula::False => BTreeSet::new(),
        Formula::Not(p) => free_variables(p),
        Formula::And(l, r) | Formula::Or(l, r) => {
            let mut out = free_variables(l);
            out.extend(free_variables(r));
            out
        }
        Formula::Exists(x, p) | Formula::Forall(x, p) => {
            let mut out = free_variables(p);
            out.remove(x);
            out
        }
        Formula::Quant(_, xs, p) => {
            let mut out = free_variables(p);
            for x in xs {
                out.remove(x);
            }
            out
        }
    }
}

/// Replaces all free occurrences of `x` by `t`; errors if a variable of `t`
/// would become bound.
pub fn substitute(phi: &Formula, t: &Term, x: &Var) -> Result<Formula, CaptureError> {
    substitute_many(phi, &[(x.clone(), t.clone())])
}

/// Simultaneous substitution `phi[t̄/x̄]`.
pub fn substitute_many(phi: &Formula, subst: &[(Var, Term)]) -> Result<Formula, CaptureError> {
    // Drop identity entries up front; x := x never needs a capture check.
    let live: Vec<(Var, Term)> = subst
        .iter()
        .filter(|(x, t)| !matches!(t, Term::Var(v) if v == x))
        .cloned()
        .collect();
    subst_rec(phi, &live)
}

fn subst_rec(phi: &Formula, subst: &[(Var, Term)]) -> Result<Formula, CaptureError> {
    if subst.is_empty() {
        return Ok(phi.clone());
    }
    let sub_terms = |terms: &[Term]| -> Vec<Term> {
        terms.iter().map(|t| t.substitute_many(subst)).collect()
    };
    match phi {
        Formula::Atom(name, args) => Ok(Formula::Atom(name.clone(), sub_terms(args))),
        Formula::Dep(args) => Ok(Formula::Dep(sub_terms(args))),
        Formula::Eq(l, r) => Ok(Formula::Eq(
            l.substitute_many(subst),
            r.substitute_many(subst),
        )),
        Formula::False => Ok(Formula::False),
        Formula::Not(p) => Ok(Formula::Not(Box::new(subst_rec(p, subst)?))),
        Formula::And(l, r) => Ok(Formula::And(
            Box::new(subst_rec(l, subst)?),
            Box::new(subst_rec(r, subst)?),
        )),
        Formula::Or(l, r) => Ok(Formula::Or(
            Box::new(subst_rec(l, subst)?),
            Box::new(subst_rec(r, subst)?),
        )),
        Formula::Exists(y, p) => {
            let inner = binder_subst(p, std::slice::from_ref(y), subst)?;
            Ok(Formula::Exists(y.clone(), Box::new(inner)))
        }
        Formula::Forall(y, p) => {
            let inner = binder_subst(p, std::slice::from_ref(y), subst)?;
            Ok(Formula::Forall(y.clone(), Box::new(inner)))
        }
        Formula::Quant(kind, ys, p) => {
            let inner = binder_subst(p, ys, subst)?;
            Ok(Formula::Quant(*kind, ys.clone(), Box::new(inner)))
        }
    }
}

fn binder_subst(
    body: &Formula,
    bound: &[Var],
    subst: &[(Var, Term)],
) -> Result<Formula, CaptureError> {
    // Entries whose variable is shadowed by the binder do not pass through.
    let passing: Vec<(Var, Term)> = subst
        .iter()
        .filter(|(x, _)| !bound.contains(x))
        .cloned()
        .collect();
    if passing.is_empty() {
        return Ok(body.clone());
    }
    let body_free = free_variables(body);
    for (x, t) in &passing {
        if !body_free.contains(x) {
            continue;
        }
        for v in t.variables() {
            if let Some(b) = bound.iter().find(|b| **b == v) {
                return Err(CaptureError {
                    captured: v,
                    binder: b.clone(),
                });
            }
        }
    }
    subst_rec(body, &passing)
}

/// A source of fresh variable names. Freshness is achieved by suffixing a
/// counter to a base name and skipping anything already in use.
#[derive(Clone, Debug, Default)]
pub struct FreshVars {
    used: BTreeSet<String>,
    counter: u64,
}

impl FreshVars {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seed the source with every name occurring in a formula.
    pub fn seeded_from(phi: &Formula) -> Self {
        let mut fv = Self::new();
        for v in phi.all_variables() {
            fv.claim(v.as_str());
        }
        fv
    }

    pub fn claim(&mut self, name: &str) {
        self.used.insert(name.to_string());
    }

    pub fn is_used(&self, name: &str) -> bool {
        self.used.contains(name)
    }

    pub fn fresh(&mut self, base: &str) -> Var {
        loop {
            self.counter += 1;
            let candidate = format!("{}{}", base, self.counter);
            if !self.used.contains(&candidate) {
                self.used.insert(candidate.clone());
                return Var(candidate);
            }
        }
    }
}

/// Returns an alpha-equivalent formula in which every variable is quantified
/// exactly once and no variable occurs both free and bound.
pub fn rename_bound(phi: &Formula, fresh: &mut FreshVars) -> Formula {
    for v in phi.all_variables() {
        fresh.claim(v.as_str());
    }
    let mut quantified = free_variables(phi)
        .into_iter()
        .collect::<BTreeSet<Var>>();
    rename_rec(phi, &[], fresh, &mut quantified)
}

fn rename_rec(
    phi: &Formula,
    env: &[(Var, Var)],
    fresh: &mut FreshVars,
    taken: &mut BTreeSet<Var>,
) -> Formula {
    let apply = |terms: &[Term]| -> Vec<Term> {
        let subst: Vec<(Var, Term)> = env
            .iter()
            .map(|(from, to)| (from.clone(), Term::Var(to.clone())))
            .collect();
        terms.iter().map(|t| t.substitute_many(&subst)).collect()
    };
    match phi {
        Formula::Atom(name, args) => Formula::Atom(name.clone(), apply(args)),
        Formula::Dep(args) => Formula::Dep(apply(args)),
        Formula::Eq(l, r) => {
            let both = apply(std::slice::from_ref(l));
            let mut rs = apply(std::slice::from_ref(r));
            Formula::Eq(both.into_iter().next().unwrap(), rs.remove(0))
        }
        Formula::False => Formula::False,
        Formula::Not(p) => Formula::Not(Box::new(rename_rec(p, env, fresh, taken))),
        Formula::And(l, r) => Formula::And(
            Box::new(rename_rec(l, env, fresh, taken)),
            Box::new(rename_rec(r, env, fresh, taken)),
        ),
        Formula::Or(l, r) => Formula::Or(
            Box::new(rename_rec(l, env, fresh, taken)),
            Box::new(rename_rec(r, env, fresh, taken)),
        ),
        Formula::Exists(x, p) => {
            let (nx, nenv) = rebind(x, env, fresh, taken);
            Formula::Exists(nx, Box::new(rename_rec(p, &nenv, fresh, taken)))
        }
        Formula::Forall(x, p) => {
            let (nx, nenv) = rebind(x, env, fresh, taken);
            Formula::Forall(nx, Box::new(rename_rec(p, &nenv, fresh, taken)))
        }
        Formula::Quant(kind, xs, p) => {
            let mut nenv = env.to_vec();
            let mut nxs = Vec::with_capacity(xs.len());
            for x in xs {
                let (nx, e) = rebind(x, &nenv, fresh, taken);
                nenv = e;
                nxs.push(nx);
            }
            Formula::Quant(*kind, nxs, Box::new(rename_rec(p, &nenv, fresh, taken)))
        }
    }
}

fn rebind(
    x: &Var,
    env: &[(Var, Var)],
    fresh: &mut FreshVars,
    taken: &mut BTreeSet<Var>,
) -> (Var, Vec<(Var, Var)>) {
    let new = if taken.contains(x) {
        fresh.fresh(x.as_str())
    } else {
        x.clone()
    };
    taken.insert(new.clone());
    let mut nenv: Vec<(Var, Var)> = env.iter().filter(|(from, _)| from != x).cloned().collect();
    if new != *x {
        nenv.push((x.clone(), new.clone()));
    }
    (new, nenv)
}

/// True if every variable is quantified at most once and no variable occurs
/// both free and bound.
pub fn is_renamed_apart(phi: &Formula) -> bool {
    let mut seen = free_variables(phi);
    fn walk(phi: &Formula, seen: &mut BTreeSet<Var>) -> bool {
        match phi {
            Formula::Exists(x, p) | Formula::Forall(x, p) => {
                seen.insert(x.clone()) && walk(p, seen)
            }
            Formula::Quant(_, xs, p) => {
                xs.iter().all(|x| seen.insert(x.clone())) && walk(p, seen)
            }
            _ => phi.children().iter().all(|c| walk(c, seen)),
        }
    }
    walk(phi, &mut seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_relation("P", 1).unwrap();
        s.declare_relation("R", 2).unwrap();
        s.declare_function("f", 1).unwrap();
        s.declare_function("c", 0).unwrap();
        s
    }

    #[test]
    fn free_variables_of_dep_atom_unions_term_variables() {
        let phi = parse("dep(x, f(y))", &sig()).unwrap();
        let fv = free_variables(&phi);
        assert_eq!(fv, [Var::from("x"), Var::from("y")].into_iter().collect());
    }

    #[test]
    fn binders_remove_their_tuple() {
        let phi = parse("E x dep(x, y)", &sig()).unwrap();
        assert_eq!(free_variables(&phi), [Var::from("y")].into_iter().collect());
        let phi = parse("Q x x = z", &sig()).unwrap();
        assert_eq!(free_variables(&phi), [Var::from("z")].into_iter().collect());
    }

    #[test]
    fn substitute_replaces_free_occurrences() {
        let s = sig();
        let phi = parse("x = c", &s).unwrap();
        let t = parse_term("f(z)", &s).unwrap();
        let out = substitute(&phi, &t, &Var::from("x")).unwrap();
        assert_eq!(out, parse("f(z) = c", &s).unwrap());
    }

    #[test]
    fn substitute_detects_capture() {
        let s = sig();
        let phi = parse("E y x = y", &s).unwrap();
        let err = substitute(&phi, &Term::var("y"), &Var::from("x")).unwrap_err();
        assert_eq!(err.binder, Var::from("y"));
    }

    #[test]
    fn substitute_is_vacuous_without_free_occurrences() {
        let s = sig();
        let phi = parse("A x P(x)", &s).unwrap();
        let out = substitute(&phi, &Term::constant("c"), &Var::from("x")).unwrap();
        assert_eq!(out, phi);
    }

    #[test]
    fn flatness() {
        let s = sig();
        assert!(is_flat(&parse("Q x P(x)", &s).unwrap()));
        assert!(!is_flat(&parse("dep(x) & P(x)", &s).unwrap()));
        assert!(is_flat(&parse("! Q x ! P(x)", &s).unwrap()));
    }

    #[test]
    fn rename_bound_separates_clashing_binders() {
        let s = sig();
        let phi = parse("E x P(x) | E x R(x, x)", &s).unwrap();
        let mut fresh = FreshVars::new();
        let renamed = rename_bound(&phi, &mut fresh);
        assert!(is_renamed_apart(&renamed));
        assert_ne!(renamed, phi);
    }

    #[test]
    fn rename_bound_keeps_apart_input_unchanged() {
        let s = sig();
        let phi = parse("E x P(x) | E y R(y, y)", &s).unwrap();
        let mut fresh = FreshVars::new();
        assert_eq!(rename_bound(&phi, &mut fresh), phi);
    }

    #[test]
    fn rename_bound_avoids_free_variables() {
        let s = sig();
        // x is free in the right disjunct and bound on the left.
        let phi = parse("E x P(x) | P(x)", &s).unwrap();
        let mut fresh = FreshVars::new();
        let renamed = rename_bound(&phi, &mut fresh);
        assert!(is_renamed_apart(&renamed));
        assert_eq!(free_variables(&renamed), free_variables(&phi));
    }

    #[test]
    fn substitution_free_variable_equation() {
        let s = sig();
        let phi = parse("R(x, y) & dep(x, y)", &s).unwrap();
        let t = parse_term("f(z)", &s).unwrap();
        let x = Var::from("x");
        let out = substitute(&phi, &t, &x).unwrap();
        let mut expected = free_variables(&phi);
        expected.remove(&x);
        expected.extend(t.variables());
        assert_eq!(free_variables(&out), expected);
    }
}
