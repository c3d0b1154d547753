//! Sparse multivariate polynomials over any of the crate's coefficient
//! structures, polynomial vectors (self-maps of F_q^n), a text parser,
//! and the single-polynomial encoding of a map over a tower extension.
//!
//! Text grammar (whitespace ignored):
//!
//! ```text
//! vector      := poly (';' poly)*
//! poly        := sign? term (('+' | '-') term)*
//! term        := coefficient ('*' factor)* | factor ('*' factor)*
//! factor      := var ('^' positive-int)?
//! coefficient := nonneg-int | '(' literal-in-t ')'
//! ```
//!
//! Extension-field coefficients are written in the generator symbol `t`,
//! e.g. `(t+1)*x1^2`. Like terms are combined and zero terms dropped, so
//! parsing always yields the canonical representation.

use crate::fields::{FFElement, FieldSpec, TowerElement, TowerSpec};
use crate::ring::Ring;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An exponent vector. Ordering is lexicographic (derived), used only to
/// keep term maps deterministic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

/// A sparse polynomial: monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Clone + PartialEq + fmt::Debug> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for single constant terms.
    pub fn is_constant_poly(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&C> {
        self.terms.get(mono)
    }

    /// Canonicalizing constructor: combines like terms, drops zeros.
    pub fn from_terms<R: Ring<Elem = C>>(
        ring: &R,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut poly = MultiPoly::zero(nvars);
        for (mono, c) in terms {
            poly.add_term(ring, mono, c);
        }
        poly
    }

    pub fn constant<R: Ring<Elem = C>>(ring: &R, nvars: usize, c: C) -> Self {
        Self::from_terms(ring, nvars, [(Monomial::new(vec![0; nvars]), c)])
    }

    /// Adds `c * X^mono` in place, dropping the term if it cancels.
    pub fn add_term<R: Ring<Elem = C>>(&mut self, ring: &R, mono: Monomial, c: C) {
        assert_eq!(mono.arity(), self.nvars, "monomial arity mismatch");
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, c);
            }
            Some(old) => {
                let sum = ring.add(&old, &c);
                if !ring.is_zero(&sum) {
                    self.terms.insert(mono, sum);
                }
            }
        }
    }

    pub fn add<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(ring, m.clone(), c.clone());
        }
        out
    }

    pub fn mul<R: Ring<Elem = C>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let exps = ma
                    .exponents()
                    .iter()
                    .zip(mb.exponents())
                    .map(|(&x, &y)| x + y)
                    .collect();
                out.add_term(ring, Monomial::new(exps), ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale<R: Ring<Elem = C>>(&self, ring: &R, c: &C) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, a) in self.terms() {
            out.add_term(ring, m.clone(), ring.mul(a, c));
        }
        out
    }

    /// Coefficient-wise change of ring; `f` must send zero to zero.
    pub fn map_coeffs<D, R, F>(&self, ring: &R, f: F) -> MultiPoly<D>
    where
        D: Clone + PartialEq + fmt::Debug,
        R: Ring<Elem = D>,
        F: Fn(&C) -> D,
    {
        MultiPoly::from_terms(
            ring,
            self.nvars,
            self.terms().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Value at a point, term by term with square-and-multiply powers.
    /// Panics on arity mismatch.
    pub fn evaluate<R: Ring<Elem = C>>(&self, ring: &R, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = ring.zero();
        for (mono, c) in self.terms() {
            let mut term = c.clone();
            for (x, &v) in point.iter().zip(mono.exponents()) {
                if v > 0 {
                    term = ring.mul(&term, &ring.pow(x, v as u64));
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }

    /// Max total degree over terms; `None` for the zero polynomial
    /// (degree of zero is undefined rather than a sentinel number).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn support(&self) -> BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    ArityMismatch { expected: usize, got: usize },
    EmptyVector,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ArityMismatch { expected, got } => {
                write!(f, "expected {expected} components, got {got}")
            }
            PolyError::EmptyVector => write!(f, "polynomial vector has no components"),
        }
    }
}

impl std::error::Error for PolyError {}

/// A tuple of polynomials over F_q in shared variables; with m = n
/// components it is a self-map of F_q^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    nvars: usize,
    components: Vec<MultiPoly<FFElement>>,
}

impl PolyVector {
    pub fn new(
        nvars: usize,
        components: Vec<MultiPoly<FFElement>>,
    ) -> Result<PolyVector, PolyError> {
        if components.is_empty() {
            return Err(PolyError::EmptyVector);
        }
        for c in &components {
            if c.nvars() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    got: c.nvars(),
                });
            }
        }
        Ok(PolyVector { nvars, components })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[MultiPoly<FFElement>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// deg f = max_i deg f_i, skipping zero components; `None` if all zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.components
            .iter()
            .filter_map(|c| c.total_degree())
            .max()
    }

    /// Union of component supports.
    pub fn support(&self) -> BTreeSet<Monomial> {
        let mut out = BTreeSet::new();
        for c in &self.components {
            out.extend(c.support());
        }
        out
    }

    pub fn evaluate(&self, spec: &FieldSpec, point: &[FFElement]) -> Vec<FFElement> {
        self.components
            .iter()
            .map(|c| c.evaluate(spec, point))
            .collect()
    }
}

/// Encodes the map f = (f_1, ..., f_n) as the single polynomial
/// g = f_1 e_1 + ... + f_n e_n over F_{q^n}, using the tower's power basis.
/// The support of g equals the union of component supports because the
/// basis is linearly independent over F_q.
pub fn construct_g(
    f: &PolyVector,
    tower: &TowerSpec,
) -> Result<MultiPoly<TowerElement>, PolyError> {
    if f.len() != tower.degree() {
        return Err(PolyError::ArityMismatch {
            expected: tower.degree(),
            got: f.len(),
        });
    }
    let mut g = MultiPoly::zero(f.nvars());
    for (i, comp) in f.components().iter().enumerate() {
        let basis = tower.basis_element(i);
        for (mono, c) in comp.terms() {
            let coeff = tower.mul(&tower.embed(c), &basis);
            g.add_term(tower, mono.clone(), coeff);
        }
    }
    Ok(g)
}

// ---- parsing ----

/// Parse failure with a byte position into the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { pos: usize, expected: String },
    UnknownVariable { pos: usize, name: String },
    BadCoefficient { pos: usize, reason: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownVariable { pos, .. }
            | ParseError::BadCoefficient { pos, .. } => *pos,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, expected } => {
                write!(f, "syntax error at byte {pos}: expected {expected}")
            }
            ParseError::UnknownVariable { pos, name } => {
                write!(f, "unknown variable {name:?} at byte {pos}")
            }
            ParseError::BadCoefficient { pos, reason } => {
                write!(f, "bad coefficient at byte {pos}: {reason}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Semi,
    Int(u64),
    Ident(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b';' => {
                toks.push((Tok::Semi, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                let mut v: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as u64))
                        .ok_or_else(|| ParseError::BadCoefficient {
                            pos: start,
                            reason: "integer literal too large".into(),
                        })?;
                    i += 1;
                }
                toks.push((Tok::Int(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: format!("valid token, found {:?}", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    spec: &'a FieldSpec,
    varnames: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.at)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn syntax(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.here(),
            expected: expected.to_string(),
        }
    }

    fn parse_component(&mut self) -> Result<MultiPoly<FFElement>, ParseError> {
        let nvars = self.varnames.len();
        let mut poly = MultiPoly::zero(nvars);
        let mut negate = false;
        // Optional leading sign.
        match self.peek() {
            Some((Tok::Plus, _)) => {
                self.bump();
            }
            Some((Tok::Minus, _)) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let (mono, coeff) = self.parse_term()?;
            let coeff = if negate { self.spec.neg(&coeff) } else { coeff };
            poly.add_term(self.spec, mono, coeff);
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.bump();
                    negate = false;
                }
                Some((Tok::Minus, _)) => {
                    self.bump();
                    negate = true;
                }
                Some((Tok::Semi, _)) | None => break,
                Some((_, pos)) => {
                    return Err(ParseError::Syntax {
                        pos: *pos,
                        expected: "'+', '-', ';' or end of input".into(),
                    })
                }
            }
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<(Monomial, FFElement), ParseError> {
        let mut coeff: Option<FFElement> = None;
        match self.peek() {
            Some((Tok::Int(v), _)) => {
                coeff = Some(self.spec.from_u64(*v));
                self.bump();
            }
            Some((Tok::LParen, _)) => {
                coeff = Some(self.parse_paren_literal()?);
            }
            _ => {}
        }
        let mut exps = vec![0u32; self.varnames.len()];
        if let Some(c) = &coeff {
            match self.peek() {
                Some((Tok::Star, _)) => {
                    self.bump();
                }
                // Bare coefficient: a constant term.
                _ => return Ok((Monomial::new(exps), c.clone())),
            }
        }
        loop {
            self.parse_factor(&mut exps)?;
            match self.peek() {
                Some((Tok::Star, _)) => {
                    self.bump();
                }
                _ => break,
            }
        }
        Ok((
            Monomial::new(exps),
            coeff.unwrap_or_else(|| self.spec.one()),
        ))
    }

    fn parse_factor(&mut self, exps: &mut [u32]) -> Result<(), ParseError> {
        let (tok, pos) = self.bump().ok_or_else(|| self.syntax("variable"))?;
        let name = match tok {
            Tok::Ident(name) => name,
            _ => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: "variable".into(),
                })
            }
        };
        let idx = self
            .varnames
            .iter()
            .position(|v| *v == name)
            .ok_or(ParseError::UnknownVariable { pos, name })?;
        let mut exp: u32 = 1;
        if matches!(self.peek(), Some((Tok::Caret, _))) {
            self.bump();
            let (tok, pos) = self
                .bump()
                .ok_or_else(|| self.syntax("positive exponent"))?;
            match tok {
                Tok::Int(v) if v >= 1 && v <= u32::MAX as u64 => exp = v as u32,
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        expected: "positive exponent".into(),
                    })
                }
            }
        }
        exps[idx] = exps[idx].checked_add(exp).ok_or(ParseError::Syntax {
            pos: self.here(),
            expected: "smaller exponent".into(),
        })?;
        Ok(())
    }

    /// `'(' literal-in-t ')'`: a sum of integer and t-power terms evaluated
    /// at the field generator.
    fn parse_paren_literal(&mut self) -> Result<FFElement, ParseError> {
        let (_, open_pos) = self.bump().expect("caller checked LParen");
        let gen = self.spec.generator().ok_or(ParseError::BadCoefficient {
            pos: open_pos,
            reason: format!(
                "generator literal requires an extension field, but e = {}",
                self.spec.e()
            ),
        })?;
        let mut acc = self.spec.zero();
        let mut negate = false;
        match self.peek() {
            Some((Tok::Plus, _)) => {
                self.bump();
            }
            Some((Tok::Minus, _)) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let mut value = self.spec.one();
            let mut saw_int = false;
            if let Some((Tok::Int(v), _)) = self.peek() {
                value = self.spec.from_u64(*v);
                saw_int = true;
                self.bump();
                if matches!(self.peek(), Some((Tok::Star, _))) {
                    self.bump();
                    saw_int = false; // a t-power must follow
                }
            }
            if !saw_int {
                let (tok, pos) = self.bump().ok_or_else(|| self.syntax("'t' or integer"))?;
                match tok {
                    Tok::Ident(name) if name == "t" => {}
                    Tok::Ident(name) => {
                        return Err(ParseError::BadCoefficient {
                            pos,
                            reason: format!("only 't' may appear in a coefficient, found {name:?}"),
                        })
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            pos,
                            expected: "'t' or integer".into(),
                        })
                    }
                }
                let mut exp: u64 = 1;
                if matches!(self.peek(), Some((Tok::Caret, _))) {
                    self.bump();
                    let (tok, pos) = self
                        .bump()
                        .ok_or_else(|| self.syntax("positive exponent"))?;
                    match tok {
                        Tok::Int(v) if v >= 1 => exp = v,
                        _ => {
                            return Err(ParseError::Syntax {
                                pos,
                                expected: "positive exponent".into(),
                            })
                        }
                    }
                }
                value = self.spec.mul(&value, &self.spec.pow(&gen, exp));
            }
            if negate {
                value = self.spec.neg(&value);
            }
            acc = self.spec.add(&acc, &value);
            match self.peek() {
                Some((Tok::Plus, _)) => {
                    self.bump();
                    negate = false;
                }
                Some((Tok::Minus, _)) => {
                    self.bump();
                    negate = true;
                }
                Some((Tok::RParen, _)) => {
                    self.bump();
                    return Ok(acc);
                }
                _ => return Err(self.syntax("'+', '-' or ')'")),
            }
        }
    }
}

/// Parses a single polynomial over `spec` in the named variables.
pub fn parse_poly(
    text: &str,
    spec: &FieldSpec,
    varnames: &[String],
) -> Result<MultiPoly<FFElement>, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        spec,
        varnames,
        end: text.len(),
    };
    let poly = parser.parse_component()?;
    if let Some((_, pos)) = parser.peek() {
        return Err(ParseError::Syntax {
            pos: *pos,
            expected: "end of input".into(),
        });
    }
    Ok(poly)
}

/// Parses a semicolon-separated polynomial vector.
pub fn parse_vector(
    text: &str,
    spec: &FieldSpec,
    varnames: &[String],
) -> Result<PolyVector, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        at: 0,
        spec,
        varnames,
        end: text.len(),
    };
    let mut components = vec![parser.parse_component()?];
    while matches!(parser.peek(), Some((Tok::Semi, _))) {
        parser.bump();
        components.push(parser.parse_component()?);
    }
    if let Some((_, pos)) = parser.peek() {
        return Err(ParseError::Syntax {
            pos: *pos,
            expected: "end of input".into(),
        });
    }
    Ok(PolyVector {
        nvars: varnames.len(),
        components,
    })
}

/// `x1, ..., xn`.
pub fn default_varnames(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

// ---- printing ----

/// Canonical text form; parsing it back yields the same polynomial.
/// Terms are ordered by ascending total degree, ties broken by descending
/// exponent vector, so `x1 + x1^3*x2` and `x1^4 + x2^4` print as written.
pub fn format_poly(poly: &MultiPoly<FFElement>, spec: &FieldSpec, varnames: &[String]) -> String {
    assert_eq!(poly.nvars(), varnames.len(), "variable name count mismatch");
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut monos: Vec<&Monomial> = poly.terms.keys().collect();
    monos.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.exponents().cmp(a.exponents()))
    });
    let mut parts = Vec::new();
    for mono in monos {
        let coeff = &poly.terms[mono];
        let mut factors = Vec::new();
        for (i, &v) in mono.exponents().iter().enumerate() {
            match v {
                0 => {}
                1 => factors.push(varnames[i].clone()),
                _ => factors.push(format!("{}^{v}", varnames[i])),
            }
        }
        let coeff_str = if spec.is_constant(coeff) {
            let c = coeff.coeffs()[0];
            if c == 1 && !factors.is_empty() {
                None
            } else {
                Some(format!("{c}"))
            }
        } else {
            Some(format!("({})", spec.format_element(coeff)))
        };
        let term = match coeff_str {
            Some(c) if factors.is_empty() => c,
            Some(c) => format!("{c}*{}", factors.join("*")),
            None => factors.join("*"),
        };
        parts.push(term);
    }
    parts.join(" + ")
}

/// Canonical text of a polynomial vector (components joined by `; `).
pub fn format_vector(f: &PolyVector, spec: &FieldSpec, varnames: &[String]) -> String {
    f.components()
        .iter()
        .map(|c| format_poly(c, spec, varnames))
        .collect::<Vec<_>>()
        .join("; ")
}
