//! Finite structures and weak quantifier interpretations: monotone,
//! non-trivial set-of-subsets interpretations stored as antichains of
//! minimal member sets, together with dual computation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::syntax::{Signature, Term, Var};

/// A k-tuple over the universe.
pub type Tuple = Vec<usize>;
/// A set of k-tuples, one candidate member of a quantifier interpretation.
pub type TupleSet = BTreeSet<Tuple>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("universe must be non-empty")]
    EmptyUniverse,
    #[error("tuple {tuple:?} out of range for universe of size {universe}")]
    TupleOutOfRange { tuple: Tuple, universe: usize },
    #[error("tuple {tuple:?} has length {got}, expected {expected}")]
    TupleArity {
        tuple: Tuple,
        expected: usize,
        got: usize,
    },
    #[error("function `{0}` is not total")]
    PartialFunction(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("quantifier `{name}` is trivial on a universe of size {universe}")]
    TrivialOnUniverse { name: String, universe: usize },
    #[error("unknown builtin quantifier `{0}`")]
    UnknownBuiltin(String),
    #[error("quantifier interpretation invalid: {0:?}")]
    InvalidQuantifier(Vec<QuantifierViolation>),
    #[error("dual computation too large: |M|^k = {0} exceeds the supported bound")]
    DualTooLarge(usize),
    #[error("structure file: {0}")]
    Format(String),
    #[error("variable `{0}` is unbound")]
    UnboundVariable(Var),
}

/// A finite first-order structure with universe {0, …, n−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    universe: usize,
    relations: BTreeMap<String, BTreeSet<Tuple>>,
    relation_arities: BTreeMap<String, usize>,
    functions: BTreeMap<String, (usize, Vec<usize>)>,
}

impl Structure {
    pub fn new(universe: usize) -> Result<Self, ModelError> {
        if universe == 0 {
            return Err(ModelError::EmptyUniverse);
        }
        Ok(Structure {
            universe,
            relations: BTreeMap::new(),
            relation_arities: BTreeMap::new(),
            functions: BTreeMap::new(),
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.universe
    }

    pub fn set_relation(
        &mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Tuple>,
    ) -> Result<(), ModelError> {
        let mut set = BTreeSet::new();
        for t in tuples {
            check_tuple(&t, arity, self.universe)?;
            set.insert(t);
        }
        self.relations.insert(name.to_string(), set);
        // Remember the arity even when the extension is empty.
        self.relation_arities
            .insert(name.to_string(), arity);
        Ok(())
    }

    pub fn set_function(
        &mut self,
        name: &str,
        arity: usize,
        table: impl Fn(&[usize]) -> usize,
    ) -> Result<(), ModelError> {
        let size = self.universe.pow(arity as u32);
        let mut values = Vec::with_capacity(size);
        for rank in 0..size {
            let args = unrank(rank, arity, self.universe);
            let v = table(&args);
            if v >= self.universe {
                return Err(ModelError::TupleOutOfRange {
                    tuple: vec![v],
                    universe: self.universe,
                });
            }
            values.push(v);
        }
        self.functions.insert(name.to_string(), (arity, values));
        Ok(())
    }

    pub fn set_function_table(
        &mut self,
        name: &str,
        arity: usize,
        entries: &[(Tuple, usize)],
    ) -> Result<(), ModelError> {
        let size = self.universe.pow(arity as u32);
        let mut values = vec![usize::MAX; size];
        for (args, v) in entries {
            check_tuple(args, arity, self.universe)?;
            if *v >= self.universe {
                return Err(ModelError::TupleOutOfRange {
                    tuple: vec![*v],
                    universe: self.universe,
                });
            }
            values[rank(args, self.universe)] = *v;
        }
        if values.iter().any(|v| *v == usize::MAX) {
            return Err(ModelError::PartialFunction(name.to_string()));
        }
        self.functions.insert(name.to_string(), (arity, values));
        Ok(())
    }

    pub fn relation_holds(&self, name: &str, tuple: &[usize]) -> Result<bool, ModelError> {
        let rel = self
            .relations
            .get(name)
            .ok_or_else(|| ModelError::UnknownRelation(name.to_string()))?;
        Ok(rel.contains(tuple))
    }

    pub fn apply_function(&self, name: &str, args: &[usize]) -> Result<usize, ModelError> {
        let (arity, values) = self
            .functions
            .get(name)
            .ok_or_else(|| ModelError::UnknownFunction(name.to_string()))?;
        if args.len() != *arity {
            return Err(ModelError::TupleArity {
                tuple: args.to_vec(),
                expected: *arity,
                got: args.len(),
            });
        }
        Ok(values[rank(args, self.universe)])
    }

    /// Evaluates a term under a variable valuation.
    pub fn eval_term(
        &self,
        t: &Term,
        val: &dyn Fn(&Var) -> Option<usize>,
    ) -> Result<usize, ModelError> {
        match t {
            Term::Var(v) => val(v).ok_or_else(|| ModelError::UnboundVariable(v.clone())),
            Term::App(f, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval_term(a, val)?);
                }
                self.apply_function(f, &vals)
            }
        }
    }

    /// The signature this structure interprets.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (name, arity) in &self.relation_arities {
            let _ = sig.declare_relation(name, *arity);
        }
        for (name, (arity, _)) in &self.functions {
            let _ = sig.declare_function(name, *arity);
        }
        sig
    }

    pub fn all_tuples(&self, arity: usize) -> Vec<Tuple> {
        let size = self.universe.pow(arity as u32);
        (0..size).map(|r| unrank(r, arity, self.universe)).collect()
    }
}

fn check_tuple(t: &[usize], arity: usize, universe: usize) -> Result<(), ModelError> {
    if t.len() != arity {
        return Err(ModelError::TupleArity {
            tuple: t.to_vec(),
            expected: arity,
            got: t.len(),
        });
    }
    if t.iter().any(|e| *e >= universe) {
        return Err(ModelError::TupleOutOfRange {
            tuple: t.to_vec(),
            universe,
        });
    }
    Ok(())
}

fn rank(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, e| acc * base + e)
}

fn unrank(mut r: usize, arity: usize, base: usize) -> Tuple {
    let mut out = vec![0; arity];
    for i in (0..arity).rev() {
        out[i] = r % base;
        r /= base;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantifierViolation {
    /// One stored minimal set contains another.
    AntichainViolated { smaller: TupleSet, larger: TupleSet },
    /// The empty set was stored as a member (so ∅ would be in q).
    EmptyMemberSet,
    /// The antichain is empty (so M^k would not be in q).
    EmptyAntichain,
    /// A tuple lies outside the universe or has the wrong length.
    BadTuple(Tuple),
}

/// A monotone, non-trivial interpretation of a type-⟨k⟩ quantifier on a
/// fixed universe, stored as the antichain of its ⊆-minimal member sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuantifierInterpretation {
    arity: usize,
    universe: usize,
    minimals: BTreeSet<TupleSet>,
}

impl QuantifierInterpretation {
    /// Builds an interpretation from minimal sets, validating the antichain
    /// and non-triviality conditions.
    pub fn new(
        arity: usize,
        universe: usize,
        minimals: BTreeSet<TupleSet>,
    ) -> Result<Self, ModelError> {
        let q = QuantifierInterpretation {
            arity,
            universe,
            minimals,
        };
        let violations = q.validate();
        if violations.is_empty() {
            Ok(q)
        } else {
            Err(ModelError::InvalidQuantifier(violations))
        }
    }

    /// Builds an interpretation from arbitrary generating member sets: the
    /// result is the monotone family they generate, minimised.
    pub fn from_generators(
        arity: usize,
        universe: usize,
        sets: impl IntoIterator<Item = TupleSet>,
    ) -> Result<Self, ModelError> {
        let minimals = minimize(sets.into_iter().collect());
        Self::new(arity, universe, minimals)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn minimal_sets(&self) -> impl Iterator<Item = &TupleSet> {
        self.minimals.iter()
    }

    /// Diagnostic validation: antichain, non-triviality, tuple ranges.
    pub fn validate(&self) -> Vec<QuantifierViolation> {
        let mut out = Vec::new();
        if self.minimals.is_empty() {
            out.push(QuantifierViolation::EmptyAntichain);
        }
        for m in &self.minimals {
            if m.is_empty() {
                out.push(QuantifierViolation::EmptyMemberSet);
            }
            for t in m {
                if check_tuple(t, self.arity, self.universe).is_err() {
                    out.push(QuantifierViolation::BadTuple(t.clone()));
                }
            }
        }
        let mins: Vec<_> = self.minimals.iter().collect();
        for a in &mins {
            for b in &mins {
                if a != b && a.is_subset(b) {
                    out.push(QuantifierViolation::AntichainViolated {
                        smaller: (*a).clone(),
                        larger: (*b).clone(),
                    });
                }
            }
        }
        out
    }

    /// Membership via upward closure: A ∈ q iff some minimal set ⊆ A.
    pub fn member(&self, set: &TupleSet) -> Result<bool, ModelError> {
        for t in set {
            check_tuple(t, self.arity, self.universe)?;
        }
        Ok(self.minimals.iter().any(|m| m.is_subset(set)))
    }

    /// The dual interpretation: A ∈ q^d iff M^k ∖ A ∉ q. Computed by
    /// brute-force complementation and minimisation, which bounds the
    /// supported |M|^k.
    pub fn dual(&self) -> Result<QuantifierInterpretation, ModelError> {
        let n_tuples = self.universe.pow(self.arity as u32);
        if n_tuples > 20 {
            return Err(ModelError::DualTooLarge(n_tuples));
        }
        let all: Vec<Tuple> = {
            (0..n_tuples)
                .map(|r| unrank(r, self.arity, self.universe))
                .collect()
        };
        let mut members: Vec<TupleSet> = Vec::new();
        for mask in 0u32..(1u32 << n_tuples) {
            let set: TupleSet = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect();
            let complement: TupleSet = all.iter().filter(|t| !set.contains(*t)).cloned().collect();
            if !self.member(&complement)? {
                members.push(set);
            }
        }
        let minimals = minimize(members);
        QuantifierInterpretation::new(self.arity, self.universe, minimals)
    }
}

/// Keep only the ⊆-minimal sets.
fn minimize(sets: Vec<TupleSet>) -> BTreeSet<TupleSet> {
    let uniq: BTreeSet<TupleSet> = sets.into_iter().collect();
    uniq.iter()
        .filter(|s| !uniq.iter().any(|t| t != *s && t.is_subset(s)))
        .cloned()
        .collect()
}

/// Builtin quantifier families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Exists,
    Forall,
    AtLeast(usize),
    Majority,
    Fraction(usize, usize),
}

impl Builtin {
    pub fn parse(name: &str) -> Result<Builtin, ModelError> {
        let name = name.trim();
        if name == "exists" {
            return Ok(Builtin::Exists);
        }
        if name == "forall" {
            return Ok(Builtin::Forall);
        }
        if name == "majority" {
            return Ok(Builtin::Majority);
        }
        if let Some(rest) = name.strip_prefix("at_least(").and_then(|r| r.strip_suffix(')')) {
            let k: usize = rest
                .trim()
                .parse()
                .map_err(|_| ModelError::UnknownBuiltin(name.to_string()))?;
            return Ok(Builtin::AtLeast(k));
        }
        if let Some(rest) = name.strip_prefix("fraction(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 2 {
                let p = parts[0].trim().parse();
                let q = parts[1].trim().parse();
                if let (Ok(p), Ok(q)) = (p, q) {
                    return Ok(Builtin::Fraction(p, q));
                }
            }
            return Err(ModelError::UnknownBuiltin(name.to_string()));
        }
        Err(ModelError::UnknownBuiltin(name.to_string()))
    }

    fn threshold(&self, universe: usize) -> Result<usize, ModelError> {
        let trivial = |name: &str| ModelError::TrivialOnUniverse {
            name: name.to_string(),
            universe,
        };
        match self {
            Builtin::Exists => Ok(1),
            Builtin::Forall => Ok(universe),
            Builtin::AtLeast(k) => {
                if *k == 0 || *k > universe {
                    Err(trivial(&format!("at_least({})", k)))
                } else {
                    Ok(*k)
                }
            }
            Builtin::Majority => Ok(universe / 2 + 1),
            Builtin::Fraction(p, q) => {
                if *q == 0 || *p == 0 || p > q {
                    return Err(trivial(&format!("fraction({},{})", p, q)));
                }
                // Smallest t with t*q >= p*universe: at least fraction p/q.
                let t = (p * universe).div_ceil(*q);
                if t == 0 || t > universe {
                    Err(trivial(&format!("fraction({},{})", p, q)))
                } else {
                    Ok(t)
                }
            }
        }
    }
}

/// A builtin monotone type-⟨1⟩ interpretation on a given universe.
pub fn builtin(b: &Builtin, universe: usize) -> Result<QuantifierInterpretation, ModelError> {
    if universe == 0 {
        return Err(ModelError::EmptyUniverse);
    }
    let t = b.threshold(universe)?;
    let minimals = subsets_of_size(universe, t)
        .into_iter()
        .map(|s| s.into_iter().map(|e| vec![e]).collect::<TupleSet>())
        .collect();
    QuantifierInterpretation::new(1, universe, minimals)
}

fn subsets_of_size(universe: usize, size: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut current = BTreeSet::new();
    fn rec(
        start: usize,
        universe: usize,
        size: usize,
        current: &mut BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for e in start..universe {
            current.insert(e);
            rec(e + 1, universe, size, current, out);
            current.remove(&e);
        }
    }
    rec(0, universe, size, &mut current, &mut out);
    out
}

/// A structure together with a monotone non-trivial interpretation of Q and
/// its cached dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakModel {
    pub structure: Structure,
    q: QuantifierInterpretation,
    q_dual: QuantifierInterpretation,
}

impl WeakModel {
    pub fn new(structure: Structure, q: QuantifierInterpretation) -> Result<Self, ModelError> {
        if q.universe_size() != structure.universe_size() {
            return Err(ModelError::TupleOutOfRange {
                tuple: vec![],
                universe: structure.universe_size(),
            });
        }
        let violations = q.validate();
        if !violations.is_empty() {
            return Err(ModelError::InvalidQuantifier(violations));
        }
        let q_dual = q.dual()?;
        Ok(WeakModel {
            structure,
            q,
            q_dual,
        })
    }

    pub fn q(&self) -> &QuantifierInterpretation {
        &self.q
    }

    pub fn q_dual(&self) -> &QuantifierInterpretation {
        &self.q_dual
    }

    pub fn universe_size(&self) -> usize {
        self.structure.universe_size()
    }

    /// Recomputes the dual and checks it matches the cached value.
    pub fn dual_consistent(&self) -> bool {
        self.q.dual().map(|d| d == self.q_dual).unwrap_or(false)
    }
}

// ---------------------------------------------------------------------------
// Structure file format
//
//   universe 3
//   rel E/2: 0,1;1,2
//   fun f/1: 0->1;1->2;2->0
//   fun c/0: ->2
//   quant most/1: {0,1};{1,2};{0,2}
//
// Tuples are comma-separated elements; in quantifier sections a k-tuple for
// k >= 2 is written (e1,...,ek) and a 1-tuple as a bare element. Each quant
// line lists the minimal member sets of the interpretation.
// ---------------------------------------------------------------------------

/// The parsed contents of a structure file.
#[derive(Clone, Debug)]
pub struct StructureFile {
    pub structure: Structure,
    pub quantifiers: BTreeMap<String, QuantifierInterpretation>,
}

pub fn parse_structure_file(text: &str) -> Result<StructureFile, ModelError> {
    let mut universe: Option<usize> = None;
    let mut structure: Option<Structure> = None;
    let mut quantifiers = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let fail = |msg: String| ModelError::Format(format!("line {}: {}", lineno + 1, msg));
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("universe") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| fail("bad universe size".into()))?;
            if n == 0 {
                return Err(ModelError::EmptyUniverse);
            }
            universe = Some(n);
            structure = Some(Structure::new(n)?);
            continue;
        }
        let st = structure
            .as_mut()
            .ok_or_else(|| fail("`universe n` must come first".into()))?;
        let n = universe.unwrap();
        if let Some(rest) = line.strip_prefix("rel ") {
            let (name, arity, body) = split_decl(rest).map_err(&fail)?;
            let mut tuples = Vec::new();
            for chunk in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
                tuples.push(parse_tuple(chunk, n).map_err(&fail)?);
            }
            st.set_relation(&name, arity, tuples)?;
        } else if let Some(rest) = line.strip_prefix("fun ") {
            let (name, arity, body) = split_decl(rest).map_err(&fail)?;
            let mut entries = Vec::new();
            for chunk in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
                let (args, value) = chunk
                    .split_once("->")
                    .ok_or_else(|| fail(format!("expected `tuple->e` in `{}`", chunk)))?;
                let args = if args.trim().is_empty() {
                    Vec::new()
                } else {
                    parse_tuple(args.trim(), n).map_err(&fail)?
                };
                let value: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("bad element `{}`", value.trim())))?;
                entries.push((args, value));
            }
            st.set_function_table(&name, arity, &entries)?;
        } else if let Some(rest) = line.strip_prefix("quant ") {
            let (name, arity, body) = split_decl(rest).map_err(&fail)?;
            let mut minimals = BTreeSet::new();
            for chunk in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
                let inner = chunk
                    .strip_prefix('{')
                    .and_then(|c| c.strip_suffix('}'))
                    .ok_or_else(|| fail(format!("expected `{{...}}` set, got `{}`", chunk)))?;
                minimals.insert(parse_tuple_set(inner, arity, n).map_err(&fail)?);
            }
            let q = QuantifierInterpretation::new(arity, n, minimals)?;
            quantifiers.insert(name, q);
        } else {
            return Err(fail(format!("unrecognised line `{}`", line)));
        }
    }
    let structure = structure.ok_or_else(|| ModelError::Format("missing `universe n`".into()))?;
    Ok(StructureFile {
        structure,
        quantifiers,
    })
}

fn split_decl(rest: &str) -> Result<(String, usize, String), String> {
    let (head, body) = rest
        .split_once(':')
        .ok_or_else(|| format!("expected `NAME/k: ...` in `{}`", rest))?;
    let (name, arity) = head
        .trim()
        .split_once('/')
        .ok_or_else(|| format!("expected `NAME/k` in `{}`", head))?;
    let arity: usize = arity
        .trim()
        .parse()
        .map_err(|_| format!("bad arity `{}`", arity))?;
    Ok((name.trim().to_string(), arity, body.to_string()))
}

fn parse_tuple(text: &str, universe: usize) -> Result<Tuple, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let e: usize = part.parse().map_err(|_| format!("bad element `{}`", part))?;
        if e >= universe {
            return Err(format!("element {} out of range", e));
        }
        out.push(e);
    }
    Ok(out)
}

/// For arity 1 elements are bare (`{0,2}`); for arity >= 2 tuples are
/// parenthesised (`{(0,1),(1,0)}`).
fn parse_tuple_set(text: &str, arity: usize, universe: usize) -> Result<TupleSet, String> {
    let mut out = TupleSet::new();
    let text = text.trim();
    if text.is_empty() {
        return Ok(out);
    }
    if arity == 1 {
        for part in text.split(',') {
            let t = parse_tuple(part.trim(), universe)?;
            out.insert(t);
        }
    } else {
        let mut rest = text;
        loop {
            rest = rest.trim_start_matches(',').trim();
            if rest.is_empty() {
                break;
            }
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| format!("expected `(` in `{}`", rest))?;
            let close = open
                .find(')')
                .ok_or_else(|| format!("missing `)` in `{}`", rest))?;
            let t = parse_tuple(&open[..close], universe)?;
            if t.len() != arity {
                return Err(format!("tuple {:?} has wrong arity", t));
            }
            out.insert(t);
            rest = &open[close + 1..];
        }
    }
    Ok(out)
}

pub fn render_structure_file(file: &StructureFile) -> String {
    let st = &file.structure;
    let mut out = String::new();
    let _ = writeln!(out, "universe {}", st.universe);
    for (name, arity) in &st.relation_arities {
        let tuples = st.relations.get(name).cloned().unwrap_or_default();
        let body: Vec<String> = tuples
            .iter()
            .map(|t| {
                t.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let _ = writeln!(out, "rel {}/{}: {}", name, arity, body.join(";"));
    }
    for (name, (arity, values)) in &st.functions {
        let mut body = Vec::new();
        for (rank_idx, v) in values.iter().enumerate() {
            let args = unrank(rank_idx, *arity, st.universe);
            let arg_s = args
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",");
            body.push(format!("{}->{}", arg_s, v));
        }
        let _ = writeln!(out, "fun {}/{}: {}", name, arity, body.join(";"));
    }
    for (name, q) in &file.quantifiers {
        let sets: Vec<String> = q
            .minimal_sets()
            .map(|s| {
                let inner: Vec<String> = s
                    .iter()
                    .map(|t| {
                        if q.arity() == 1 {
                            t[0].to_string()
                        } else {
                            format!(
                                "({})",
                                t.iter()
                                    .map(|e| e.to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )
                        }
                    })
                    .collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        let _ = writeln!(out, "quant {}/{}: {}", name, q.arity(), sets.join(";"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singleton_q(universe: usize) -> QuantifierInterpretation {
        builtin(&Builtin::Exists, universe).unwrap()
    }

    #[test]
    fn member_existential_singleton() {
        let q = singleton_q(3);
        let a: TupleSet = [vec![0]].into_iter().collect();
        assert!(q.member(&a).unwrap());
    }

    #[test]
    fn empty_set_is_never_a_member() {
        for b in [Builtin::Exists, Builtin::Forall, Builtin::AtLeast(2)] {
            let q = builtin(&b, 3).unwrap();
            assert!(!q.member(&TupleSet::new()).unwrap());
        }
    }

    #[test]
    fn at_least_two_threshold() {
        let q = builtin(&Builtin::AtLeast(2), 3).unwrap();
        let small: TupleSet = [vec![0]].into_iter().collect();
        let big: TupleSet = [vec![0], vec![2]].into_iter().collect();
        assert!(!q.member(&small).unwrap());
        assert!(q.member(&big).unwrap());
    }

    #[test]
    fn dual_of_existential_is_universal() {
        let q = singleton_q(3);
        let d = q.dual().unwrap();
        let full: TupleSet = (0..3).map(|e| vec![e]).collect();
        let expected: BTreeSet<TupleSet> = [full].into_iter().collect();
        assert_eq!(d.minimal_sets().cloned().collect::<BTreeSet<_>>(), expected);
    }

    /// Oracle: compute the dual of at-least-2 on |M|=3 by running all eight
    /// subsets through the complement definition directly.
    #[test]
    fn dual_of_at_least_two_on_three_is_itself() {
        let q = builtin(&Builtin::AtLeast(2), 3).unwrap();
        let d = q.dual().unwrap();
        let all: Vec<Tuple> = (0..3).map(|e| vec![e]).collect();
        for mask in 0u32..8 {
            let set: TupleSet = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect();
            let complement: TupleSet = all.iter().filter(|t| !set.contains(*t)).cloned().collect();
            let in_dual_by_definition = !q.member(&complement).unwrap();
            assert_eq!(d.member(&set).unwrap(), in_dual_by_definition);
            // Self-duality of at-least-2 on a 3-element universe.
            assert_eq!(d.member(&set).unwrap(), q.member(&set).unwrap());
        }
    }

    #[test]
    fn dual_is_an_involution() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for universe in 1..=4usize {
            for _ in 0..20 {
                let mut gens: Vec<TupleSet> = Vec::new();
                let count = rng.gen_range(1..=3);
                for _ in 0..count {
                    let mut s = TupleSet::new();
                    for e in 0..universe {
                        if rng.gen_bool(0.5) {
                            s.insert(vec![e]);
                        }
                    }
                    if s.is_empty() {
                        s.insert(vec![rng.gen_range(0..universe)]);
                    }
                    gens.push(s);
                }
                let q = QuantifierInterpretation::from_generators(1, universe, gens).unwrap();
                let dd = q.dual().unwrap().dual().unwrap();
                assert_eq!(q, dd);
            }
        }
    }

    #[test]
    fn validate_reports_violations() {
        let a: TupleSet = [vec![0]].into_iter().collect();
        let b: TupleSet = [vec![0], vec![1]].into_iter().collect();
        let q = QuantifierInterpretation {
            arity: 1,
            universe: 3,
            minimals: [a, b].into_iter().collect(),
        };
        assert!(q
            .validate()
            .iter()
            .any(|v| matches!(v, QuantifierViolation::AntichainViolated { .. })));
        let q = QuantifierInterpretation {
            arity: 1,
            universe: 3,
            minimals: BTreeSet::new(),
        };
        assert!(matches!(
            q.validate().as_slice(),
            [QuantifierViolation::EmptyAntichain]
        ));
        let q = QuantifierInterpretation {
            arity: 1,
            universe: 3,
            minimals: [TupleSet::new()].into_iter().collect(),
        };
        assert!(q
            .validate()
            .iter()
            .any(|v| matches!(v, QuantifierViolation::EmptyMemberSet)));
    }

    #[test]
    fn builtin_examples() {
        let q = builtin(&Builtin::AtLeast(2), 3).unwrap();
        assert_eq!(q.minimal_sets().count(), 3);
        let q = builtin(&Builtin::Majority, 4).unwrap();
        assert!(q.minimal_sets().all(|s| s.len() == 3));
        assert_eq!(q.minimal_sets().count(), 4);
        let q = builtin(&Builtin::Fraction(2, 3), 3).unwrap();
        assert!(q.minimal_sets().all(|s| s.len() == 2));
        assert!(builtin(&Builtin::AtLeast(5), 3).is_err());
    }

    #[test]
    fn member_is_monotone_exhaustively() {
        for universe in 1..=3usize {
            for b in [Builtin::Exists, Builtin::Forall, Builtin::Majority] {
                let q = builtin(&b, universe).unwrap();
                let n = universe;
                for mask_a in 0u32..(1 << n) {
                    for mask_b in 0u32..(1 << n) {
                        if mask_a & mask_b != mask_a {
                            continue;
                        }
                        let set = |mask: u32| -> TupleSet {
                            (0..n).filter(|i| mask & (1 << i) != 0).map(|e| vec![e]).collect()
                        };
                        let (a, bs) = (set(mask_a), set(mask_b));
                        if q.member(&a).unwrap() {
                            assert!(q.member(&bs).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn structure_file_round_trip() {
        let text = "universe 3\nrel E/2: 0,1;1,2\nfun f/1: 0->1;1->2;2->0\nfun c/0: ->2\nquant most/1: {0,1};{1,2};{0,2}\n";
        let parsed = parse_structure_file(text).unwrap();
        assert_eq!(parsed.structure.universe_size(), 3);
        assert!(parsed.structure.relation_holds("E", &[0, 1]).unwrap());
        assert!(!parsed.structure.relation_holds("E", &[1, 0]).unwrap());
        assert_eq!(parsed.structure.apply_function("f", &[2]).unwrap(), 0);
        assert_eq!(parsed.structure.apply_function("c", &[]).unwrap(), 2);
        assert!(parsed.quantifiers.contains_key("most"));
        let rendered = render_structure_file(&parsed);
        let reparsed = parse_structure_file(&rendered).unwrap();
        assert_eq!(reparsed.structure, parsed.structure);
        assert_eq!(reparsed.quantifiers, parsed.quantifiers);
    }
}
