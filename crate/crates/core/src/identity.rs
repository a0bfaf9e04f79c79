//! Multilinear non-associative identities: syntax, parsing and evaluation.
//!
//! Source syntax is a signed sum of optionally integer-prefixed monomials over
//! the variables `x1, x2, …`. Products must be fully parenthesized: `*` is
//! product 0 and, for two-product signatures, `[u,v]` is product 1.
//!
//! ```text
//! (x1*x2)*x3 - x1*(x2*x3)
//! [x1,x2*x3] - [x1,x2]*x3 - x2*[x1,x3]
//! 2 x1*x2 + 3*(x2*x1)
//! ```

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A binary product tree over variables `x1..xk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    /// A variable, 1-based.
    Var(usize),
    Product {
        product: usize,
        left: Box<Monomial>,
        right: Box<Monomial>,
    },
}

impl Monomial {
    pub fn var(i: usize) -> Monomial {
        Monomial::Var(i)
    }

    pub fn mul(product: usize, left: Monomial, right: Monomial) -> Monomial {
        Monomial::Product { product, left: Box::new(left), right: Box::new(right) }
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Monomial::Var(i) => out.push(*i),
            Monomial::Product { left, right, .. } => {
                left.collect_vars(out);
                right.collect_vars(out);
            }
        }
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.collect_vars(&mut v);
        v
    }

    pub fn max_product(&self) -> Option<usize> {
        match self {
            Monomial::Var(_) => None,
            Monomial::Product { product, left, right } => {
                Some((*product).max(left.max_product().unwrap_or(0)).max(right.max_product().unwrap_or(0)))
            }
        }
    }

    /// Evaluates with `args[i - 1]` substituted for `xi`.
    pub fn evaluate(&self, a: &Algebra, args: &[Element]) -> Element {
        match self {
            Monomial::Var(i) => args[*i - 1].clone(),
            Monomial::Product { product, left, right } => {
                let l = left.evaluate(a, args);
                let r = right.evaluate(a, args);
                a.mul(*product, &l, &r)
            }
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Product { product: 0, .. } => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Var(i) => write!(f, "x{i}"),
            Monomial::Product { product: 0, left, right } => {
                left.fmt_operand(f)?;
                write!(f, "*")?;
                right.fmt_operand(f)
            }
            Monomial::Product { left, right, .. } => write!(f, "[{left},{right}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: i64,
    pub monomial: Monomial,
}

/// A multilinear polynomial `Σ cᵢ · mᵢ(x1, …, xk)` read as the identity `… = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultilinearIdentity {
    degree: usize,
    num_products: usize,
    terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at offset {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown variable {0:?} (variables are x1, x2, ...)")]
    UnknownVariable(String),
    #[error("variable x{0} occurs more than once in a term")]
    RepeatedVariable(usize),
    #[error("term does not contain x{0}; every term must use each variable exactly once")]
    MissingVariable(usize),
    #[error("ambiguous product: parenthesize chains like a*b*c")]
    AmbiguousProduct,
    #[error("bracket products need a two-product signature")]
    BracketNotAllowed,
    #[error("coefficient out of range")]
    CoefficientOverflow,
    #[error("identity has no nonzero terms")]
    Empty,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_products: usize,
}

impl Parser<'_> {
    fn err<T>(&self, position: usize, kind: ParseErrorKind) -> std::result::Result<T, ParseError> {
        Err(ParseError { position, kind })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8, what: &'static str) -> std::result::Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(self.pos, unexpected(got, what)),
            None => self.err(self.pos, ParseErrorKind::UnexpectedEnd(what)),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn identity(&mut self) -> std::result::Result<Vec<(usize, i64, Monomial)>, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err(self.pos, ParseErrorKind::UnexpectedEnd("a term")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(self.pos, unexpected(c, "'+' or '-'")),
            };
            first = false;
            self.skip_ws();
            let start = self.pos;
            let (coeff, monomial) = self.term()?;
            terms.push((start, sign * coeff, monomial));
        }
        Ok(terms)
    }

    fn term(&mut self) -> std::result::Result<(i64, Monomial), ParseError> {
        let mut coeff = 1i64;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let at = self.pos;
            coeff = self.digits().parse().or_else(|_| self.err(at, ParseErrorKind::CoefficientOverflow))?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        Ok((coeff, self.monomial()?))
    }

    fn monomial(&mut self) -> std::result::Result<Monomial, ParseError> {
        let left = self.factor()?;
        if self.peek() != Some(b'*') {
            return Ok(left);
        }
        self.pos += 1;
        let right = self.factor()?;
        if self.peek() == Some(b'*') {
            return self.err(self.pos, ParseErrorKind::AmbiguousProduct);
        }
        Ok(Monomial::mul(0, left, right))
    }

    fn factor(&mut self) -> std::result::Result<Monomial, ParseError> {
        match self.peek() {
            None => self.err(self.pos, ParseErrorKind::UnexpectedEnd("a variable or '('")),
            Some(b'(') => {
                self.pos += 1;
                let m = self.monomial()?;
                self.expect(b')', "')'")?;
                Ok(m)
            }
            Some(b'[') => {
                if self.num_products < 2 {
                    return self.err(self.pos, ParseErrorKind::BracketNotAllowed);
                }
                self.pos += 1;
                let l = self.monomial()?;
                self.expect(b',', "','")?;
                let r = self.monomial()?;
                self.expect(b']', "']'")?;
                Ok(Monomial::mul(1, l, r))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match word.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    Some(i) if i >= 1 && !word[1..].starts_with('0') => Ok(Monomial::Var(i)),
                    _ => self.err(start, ParseErrorKind::UnknownVariable(word.to_string())),
                }
            }
            Some(c) => self.err(self.pos, unexpected(c, "a variable or '('")),
        }
    }
}

fn unexpected(c: u8, what: &'static str) -> ParseErrorKind {
    if c.is_ascii_graphic() {
        ParseErrorKind::UnexpectedChar(c as char)
    } else {
        ParseErrorKind::Expected(what)
    }
}

/// Parses and canonicalizes an identity for a signature with `num_products` products.
pub fn parse_identity(src: &str, num_products: usize) -> std::result::Result<MultilinearIdentity, ParseError> {
    let mut parser = Parser { src: src.as_bytes(), pos: 0, num_products };
    let raw = parser.identity()?;

    let degree = raw.iter().flat_map(|(_, _, m)| m.variables()).max().unwrap_or(0);
    for (start, _, m) in &raw {
        let mut seen = vec![false; degree + 1];
        for v in m.variables() {
            if seen[v] {
                return Err(ParseError { position: *start, kind: ParseErrorKind::RepeatedVariable(v) });
            }
            seen[v] = true;
        }
        if let Some(missing) = (1..=degree).find(|&v| !seen[v]) {
            return Err(ParseError { position: *start, kind: ParseErrorKind::MissingVariable(missing) });
        }
    }

    let mut terms: Vec<Term> = Vec::new();
    for (start, coeff, monomial) in raw {
        match terms.iter_mut().find(|t| t.monomial == monomial) {
            Some(t) => {
                t.coeff = t
                    .coeff
                    .checked_add(coeff)
                    .ok_or(ParseError { position: start, kind: ParseErrorKind::CoefficientOverflow })?;
            }
            None => terms.push(Term { coeff, monomial }),
        }
    }
    terms.retain(|t| t.coeff != 0);
    if terms.is_empty() {
        return Err(ParseError { position: 0, kind: ParseErrorKind::Empty });
    }
    Ok(MultilinearIdentity { degree, num_products, terms })
}

impl MultilinearIdentity {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_products(&self) -> usize {
        self.num_products
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Highest product index used by any term.
    pub fn max_product(&self) -> Option<usize> {
        self.terms.iter().filter_map(|t| t.monomial.max_product()).max()
    }

    fn check_algebra(&self, a: &Algebra) -> Result<()> {
        if let Some(p) = self.max_product() {
            if p >= a.num_products() {
                return Err(Error::ProductIndex { index: p, count: a.num_products() });
            }
        }
        Ok(())
    }

    /// `Σ c · m(args)`.
    pub fn evaluate(&self, a: &Algebra, args: &[Element]) -> Result<Element> {
        if args.len() != self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, found: args.len() });
        }
        self.check_algebra(a)?;
        for arg in args {
            if arg.len() != a.dim() {
                return Err(Error::DimensionMismatch { expected: a.dim(), found: arg.len() });
            }
        }
        Ok(self.evaluate_unchecked(a, args))
    }

    pub(crate) fn evaluate_unchecked(&self, a: &Algebra, args: &[Element]) -> Element {
        let mut out = a.zero_element();
        for t in &self.terms {
            let c = a.field().from_i64(t.coeff);
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(t.monomial.evaluate(a, args)) {
                if !v.is_zero() {
                    *o += &(&c * &v);
                }
            }
        }
        out
    }

    /// Checks the identity on every tuple of basis vectors, in lexicographic order.
    pub fn check(&self, a: &Algebra) -> Result<IdentityCheck> {
        self.check_algebra(a)?;
        let n = a.dim();
        let basis = a.basis_vectors();
        if n == 0 && self.degree > 0 {
            return Ok(IdentityCheck::Satisfied);
        }
        let mut tuple = vec![0usize; self.degree];
        loop {
            let args: Vec<Element> = tuple.iter().map(|&i| basis[i].clone()).collect();
            let value = self.evaluate_unchecked(a, &args);
            if value.iter().any(|s| !s.is_zero()) {
                return Ok(IdentityCheck::Violated { tuple, value });
            }
            // Odometer, last slot fastest.
            let mut slot = self.degree;
            loop {
                if slot == 0 {
                    return Ok(IdentityCheck::Satisfied);
                }
                slot -= 1;
                tuple[slot] += 1;
                if tuple[slot] < n {
                    break;
                }
                tuple[slot] = 0;
            }
        }
    }
}

impl fmt::Display for MultilinearIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.unsigned_abs();
            match (idx, t.coeff < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}", t.monomial)?;
        }
        Ok(())
    }
}

/// Outcome of checking an identity on all basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    Satisfied,
    /// First failing tuple (0-based basis indices) and the nonzero value there.
    Violated {
        tuple: Vec<usize>,
        value: Vec<Scalar>,
    },
}

impl IdentityCheck {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, IdentityCheck::Satisfied)
    }
}

/// Free-function form of [`MultilinearIdentity::evaluate`].
pub fn evaluate_identity(phi: &MultilinearIdentity, a: &Algebra, args: &[Element]) -> Result<Element> {
    phi.evaluate(a, args)
}

/// Free-function form of [`MultilinearIdentity::check`].
pub fn check_identity(phi: &MultilinearIdentity, a: &Algebra) -> Result<IdentityCheck> {
    phi.check(a)
}
