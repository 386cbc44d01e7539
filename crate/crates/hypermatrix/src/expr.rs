//! Symbolic scalars in polynomial normal form.
//!
//! An [`Expr`] is a finite sum of monomials with exact rational
//! coefficients over named atoms. The representation is canonical: factor
//! lists are sorted, zero coefficients are dropped, and two expressions are
//! equal iff their monomial maps are identical. That is all the symbolic
//! machinery the hypermatrix identities need; radicals, logarithms and
//! equation solving stay out of scope.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{HmError, Result};
use crate::scalar::{Rational, Scalar};

/// Sorted `(atom, exponent)` list; the key identifying a monomial.
type Factors = Vec<(String, u32)>;

/// One summand of an [`Expr`]: a nonzero rational coefficient times a
/// product of atom powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: Rational,
    /// Factors sorted by atom name; exponents are >= 1.
    pub factors: Vec<(String, u32)>,
}

/// Symbolic scalar: a rational-coefficient polynomial over named atoms,
/// kept in normal form at all times.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Expr {
    // At most one entry per factor multiset; empty map = 0.
    terms: BTreeMap<Factors, Rational>,
}

fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Expr {
    /// The expression consisting of a single named atom.
    ///
    /// Names must be identifiers (`[A-Za-z_][A-Za-z0-9_]*`) so that the
    /// text rendering parses back unambiguously.
    pub fn atom(name: &str) -> Result<Expr> {
        if !valid_atom_name(name) {
            return Err(HmError::InvalidAtom(name.to_string()));
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], Rational::one());
        Ok(Expr { terms })
    }

    pub fn constant(value: Rational) -> Expr {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Vec::new(), value);
        }
        Expr { terms }
    }

    pub fn from_int(n: i64) -> Expr {
        Expr::constant(Rational::from_integer(n.into()))
    }

    /// Monomials in canonical order (lexicographic on the factor list).
    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(factors, coefficient)| Monomial {
                coefficient: coefficient.clone(),
                factors: factors.clone(),
            })
            .collect()
    }

    pub fn monomial_count(&self) -> usize {
        self.terms.len()
    }

    /// Atoms appearing anywhere in the expression.
    pub fn atoms(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .keys()
            .flat_map(|factors| factors.iter().map(|(name, _)| name.clone()))
            .collect();
        names.sort();
        names.dedup();
        names
    }

    fn insert_term(terms: &mut BTreeMap<Factors, Rational>, factors: Factors, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match terms.entry(factors) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// `self^k` by repeated squaring; `k = 0` gives 1.
    pub fn pow(&self, k: u32) -> Expr {
        let mut result = Expr::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        result
    }

    /// Substitutes a complex value for every atom and evaluates.
    pub fn evaluate(&self, bindings: &HashMap<String, Complex64>) -> Result<Complex64> {
        let mut total = Complex64::zero();
        for (factors, coeff) in &self.terms {
            let mut term = Complex64::new(
                coeff.numer().to_f64().ok_or_else(|| {
                    HmError::UnsupportedScalar("coefficient too large for f64".into())
                })?,
                0.0,
            );
            term /= coeff.denom().to_f64().ok_or_else(|| {
                HmError::UnsupportedScalar("coefficient too large for f64".into())
            })?;
            for (name, exp) in factors {
                let value = bindings
                    .get(name)
                    .ok_or_else(|| HmError::MissingBinding(name.clone()))?;
                term *= value.powi(*exp as i32);
            }
            total += term;
        }
        Ok(total)
    }
}

/// Merge two sorted factor lists, adding exponents.
fn mul_factors(a: &Factors, b: &Factors) -> Factors {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let exp = a[i].1.checked_add(b[j].1).expect("exponent overflow");
                out.push((a[i].0.clone(), exp));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Add for Expr {
    type Output = Expr;

    fn add(self, rhs: Expr) -> Expr {
        let mut terms = self.terms;
        for (factors, coeff) in rhs.terms {
            Expr::insert_term(&mut terms, factors, coeff);
        }
        Expr { terms }
    }
}

impl Neg for Expr {
    type Output = Expr;

    fn neg(self) -> Expr {
        let terms = self
            .terms
            .into_iter()
            .map(|(factors, coeff)| (factors, -coeff))
            .collect();
        Expr { terms }
    }
}

impl Sub for Expr {
    type Output = Expr;

    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Mul for Expr {
    type Output = Expr;

    fn mul(self, rhs: Expr) -> Expr {
        let mut terms = BTreeMap::new();
        for (fa, ca) in &self.terms {
            for (fb, cb) in &rhs.terms {
                Expr::insert_term(&mut terms, mul_factors(fa, fb), ca.clone() * cb.clone());
            }
        }
        Expr { terms }
    }
}

impl Zero for Expr {
    fn zero() -> Expr {
        Expr::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Expr {
    fn one() -> Expr {
        Expr::constant(Rational::one())
    }
}

impl Scalar for Expr {
    fn from_int(n: i64) -> Self {
        Expr::from_int(n)
    }

    fn pow_int(&self, k: i64) -> Result<Self> {
        let k = u32::try_from(k).map_err(|_| {
            HmError::UnsupportedScalar(format!("negative power {k} of a symbolic expression"))
        })?;
        Ok(self.pow(k))
    }

    fn base_pow(_base: &Self, _exponent: &Self) -> Result<Self> {
        Err(HmError::UnsupportedScalar(
            "symbolic exponents are out of scope; bind atoms and evaluate numerically".into(),
        ))
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_monomial(factors: &Factors, coeff: &Rational) -> String {
    if factors.is_empty() {
        return fmt_rational(coeff);
    }
    let body = factors
        .iter()
        .map(|(name, exp)| {
            if *exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            }
        })
        .collect::<Vec<_>>()
        .join("*");
    if coeff.is_one() {
        body
    } else if (-coeff.clone()).is_one() {
        format!("-{body}")
    } else {
        format!("{}*{}", fmt_rational(coeff), body)
    }
}

impl fmt::Display for Expr {
    /// Stable rendering: monomials in canonical order joined by ` + ` /
    /// ` - `, factors joined by `*`, exponents written `^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (factors, coeff)) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{}", fmt_monomial(factors, coeff))?;
            } else if coeff.is_negative() {
                write!(f, " - {}", fmt_monomial(factors, &-coeff.clone()))?;
            } else {
                write!(f, " + {}", fmt_monomial(factors, coeff))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing of the rendered form (used by the document format).

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser { input, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.input.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<String> {
        self.skip_ws();
        let digits: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(HmError::Parse(format!(
                "expected digits at byte {} of {:?}",
                self.pos, self.input
            )));
        }
        self.pos += digits.len();
        Ok(digits)
    }

    fn parse_rational(&mut self) -> Result<Rational> {
        let numer = self.parse_uint()?;
        let denom = if self.eat('/') {
            self.parse_uint()?
        } else {
            "1".into()
        };
        let text = format!("{numer}/{denom}");
        Rational::from_str(&text).map_err(|e| HmError::Parse(format!("bad rational {text:?}: {e}")))
    }

    fn parse_atom(&mut self) -> Result<String> {
        self.skip_ws();
        let mut chars = self.rest().char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => {
                return Err(HmError::Parse(format!(
                    "expected atom at byte {} of {:?}",
                    self.pos, self.input
                )))
            }
        }
        let end = self
            .rest()
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(self.rest().len());
        let name = self.rest()[..end].to_string();
        self.pos += end;
        Ok(name)
    }

    /// factor := rational | atom ('^' uint)?
    fn parse_factor(&mut self) -> Result<(Rational, Factors)> {
        self.skip_ws();
        match self.rest().chars().next() {
            Some(c) if c.is_ascii_digit() => Ok((self.parse_rational()?, Vec::new())),
            _ => {
                let name = self.parse_atom()?;
                let exp = if self.eat('^') {
                    self.parse_uint()?
                        .parse::<u32>()
                        .map_err(|e| HmError::Parse(format!("bad exponent: {e}")))?
                } else {
                    1
                };
                if exp == 0 {
                    return Ok((Rational::one(), Vec::new()));
                }
                Ok((Rational::one(), vec![(name, exp)]))
            }
        }
    }

    /// term := factor ('*' factor)*
    fn parse_term(&mut self) -> Result<Expr> {
        let (mut coeff, mut factors) = self.parse_factor()?;
        while self.eat('*') {
            let (c, f) = self.parse_factor()?;
            coeff *= c;
            factors = mul_factors(&factors, &f);
        }
        let mut terms = BTreeMap::new();
        Expr::insert_term(&mut terms, factors, coeff);
        Ok(Expr { terms })
    }

    /// expr := ['-'] term (('+'|'-') term)*
    fn parse_expr(&mut self) -> Result<Expr> {
        let mut total = if self.eat('-') {
            -self.parse_term()?
        } else {
            self.parse_term()?
        };
        loop {
            if self.eat('+') {
                total = total + self.parse_term()?;
            } else if self.eat('-') {
                total = total - self.parse_term()?;
            } else {
                break;
            }
        }
        Ok(total)
    }
}

impl FromStr for Expr {
    type Err = HmError;

    fn from_str(s: &str) -> Result<Expr> {
        let mut parser = Parser::new(s);
        let expr = parser.parse_expr()?;
        parser.skip_ws();
        if !parser.rest().is_empty() {
            return Err(HmError::Parse(format!(
                "trailing input {:?} in expression {:?}",
                parser.rest(),
                s
            )));
        }
        Ok(expr)
    }
}
