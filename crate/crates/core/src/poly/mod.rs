//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Polynomials are kept in a canonical form (terms sorted by a fixed
//! internal monomial order, no zero coefficients, no repeated monomials), so
//! structural equality is mathematical equality. The *active* order used for
//! leading terms and division is a separate [`MonomialOrder`] value.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::detideal::MatrixShape;
use crate::error::{Error, Result};

pub mod groebner;
pub mod ideal;
mod order;
mod parse;

pub use order::MonomialOrder;

/// One indeterminate: a matrix entry `x[i][j]`, a column variable `y[j]`, or
/// the auxiliary elimination variable `t`.
///
/// The derived `Ord` (`y`'s by column, then `x`'s row-major, then `t`) fixes
/// the canonical storage order used by [`Monomial`]; it is independent of any
/// active [`MonomialOrder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Y { col: u32 },
    X { row: u32, col: u32 },
    T,
}

impl Variable {
    pub fn x(row: u32, col: u32) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Variable::X { row, col }
    }

    pub fn y(col: u32) -> Self {
        debug_assert!(col >= 1);
        Variable::Y { col }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X { row, col } => write!(f, "x[{row}][{col}]"),
            Variable::Y { col } => write!(f, "y[{col}]"),
            Variable::T => write!(f, "t"),
        }
    }
}

/// A power product of variables. Exponents are strictly positive and entries
/// are sorted by variable; the empty product is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Variable) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs, merging
    /// duplicates and dropping zero exponents.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut exps: Vec<(Variable, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match exps.iter_mut().find(|(w, _)| *w == v) {
                Some((_, old)) => *old += e,
                None => exps.push((v, e)),
            }
        }
        exps.sort_by_key(|(v, _)| *v);
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exps
            .binary_search_by_key(&v, |(w, _)| *w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(Variable, u32)] {
        &self.exps
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.exps.iter().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        exps.push((va, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&p), None) => {
                    exps.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    exps.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - other.exponent(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps: Vec<(Variable, u32)> = self.exps.clone();
        for &(v, e) in &other.exps {
            match exps.iter_mut().find(|(w, _)| *w == v) {
                Some((_, old)) => *old = (*old).max(e),
                None => exps.push((v, e)),
            }
        }
        exps.sort_by_key(|(v, _)| *v);
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, _)| other.exponent(v) == 0)
    }

    /// Removes one factor of `v` (used by the Hilbert pivot recursion).
    pub(crate) fn divide_once(&self, v: Variable) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter_map(|&(w, e)| {
                let r = if w == v { e - 1 } else { e };
                (r > 0).then_some((w, r))
            })
            .collect();
        Monomial { exps }
    }
}

/// Canonical comparison: total degree first, then lexicographically with the
/// smallest `Variable` most significant. Used only for storage and hashing.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonzero rational coefficient times a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: BigRational, mono: Monomial) -> Self {
        Term { coeff, mono }
    }

    pub fn constant(c: BigRational) -> Self {
        Term { coeff: c, mono: Monomial::one() }
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term { coeff: &self.coeff * &other.coeff, mono: self.mono.mul(&other.mono) }
    }
}

/// A polynomial in canonical form: terms sorted in decreasing canonical
/// monomial order, pairwise distinct monomials, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: vec![Term::constant(c)] }
    }

    pub fn integer(n: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// Normalizes an arbitrary term list into canonical form.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.mono.cmp(&a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.terms.iter().flat_map(|t| t.mono.variables())
    }

    pub fn contains_variable(&self, v: Variable) -> bool {
        self.terms.iter().any(|t| t.mono.exponent(v) > 0)
    }

    /// The maximal term under the active order. Errors on the zero
    /// polynomial or when a variable is not ranked by `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<Term> {
        ord.ensure_ranked(self)?;
        if self.is_zero() {
            return Err(Error::ZeroLeadingTerm);
        }
        Ok(self.lead_unchecked(ord).clone())
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial> {
        Ok(self.leading_term(ord)?.mono)
    }

    /// Assumes all variables ranked and `self` nonzero.
    pub(crate) fn lead_unchecked(&self, ord: &MonomialOrder) -> &Term {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_mono(&a.mono, &b.mono))
            .expect("nonzero polynomial")
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(-&t.coeff, t.mono.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => match b.mono.cmp(&a.mono) {
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b.clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = &a.coeff + &b.coeff;
                        if !c.is_zero() {
                            out.push(Term::new(c, a.mono.clone()));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Multiplication by a term keeps the canonical order intact.
    pub fn mul_term(&self, t: &Term) -> Polynomial {
        if t.coeff.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|s| s.mul(t)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.coeff * c, t.mono.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: std::collections::BTreeMap<Monomial, BigRational> =
            std::collections::BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let mono = a.mono.mul(&b.mono);
                let coeff = &a.coeff * &b.coeff;
                match acc.get_mut(&mono) {
                    Some(c) => *c += coeff,
                    None => {
                        acc.insert(mono, coeff);
                    }
                }
            }
        }
        Polynomial {
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| Term::new(c, m))
                .collect(),
        }
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial { terms: vec![Term::new(BigRational::one(), Monomial::var(v))] }
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial { terms: vec![Term::new(BigRational::one(), m)] }
    }
}

impl From<Term> for Polynomial {
    fn from(t: Term) -> Self {
        if t.coeff.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![t] }
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// The ambient polynomial ring of a matrix shape: its `y` and `x` variables
/// in a fixed sequence, optionally extended by the elimination variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingContext {
    shape: MatrixShape,
    variables: Vec<Variable>,
    has_elim_var: bool,
}

impl RingContext {
    pub fn new(shape: MatrixShape) -> Self {
        Self::build(shape, false)
    }

    pub fn with_elim(shape: MatrixShape) -> Self {
        Self::build(shape, true)
    }

    fn build(shape: MatrixShape, elim: bool) -> Self {
        let mut variables: Vec<Variable> = (1..=shape.cols()).map(Variable::y).collect();
        variables.extend(shape.x_variables());
        if elim {
            variables.push(Variable::T);
        }
        debug_assert!({
            let mut v = variables.clone();
            v.sort();
            v.dedup();
            v.len() == variables.len()
        });
        RingContext { shape, variables, has_elim_var: elim }
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn has_elim_var(&self) -> bool {
        self.has_elim_var
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.variables.contains(&v)
    }

    /// Checks that every variable of `p` belongs to this ring.
    pub fn validate(&self, p: &Polynomial) -> Result<()> {
        for v in p.variables() {
            if !self.contains(v) {
                return Err(Error::UnrankedVariable(v));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_merges_and_sorts() {
        let x11 = Variable::x(1, 1);
        let y1 = Variable::y(1);
        let t1 = Term::new(BigRational::one(), Monomial::from_exponents([(x11, 1), (y1, 1)]));
        let t2 = Term::new(BigRational::one(), Monomial::from_exponents([(y1, 1), (x11, 1)]));
        let q = Polynomial::from_terms([t1, t2]);
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q, p("2*x[1][1]*y[1]"));
    }

    #[test]
    fn addition_cancels_exactly() {
        let f = p("x[1][1]*y[1] + x[1][2]*y[2]");
        let g = p("-1*x[1][1]*y[1] + y[3]");
        assert_eq!(&f + &g, p("x[1][2]*y[2] + y[3]"));
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn multiplication_matches_hand_expansion() {
        let f = p("x[1][1] + x[1][2]");
        let g = p("x[1][1] - x[1][2]");
        assert_eq!(&f * &g, p("x[1][1]*x[1][1] - x[1][2]*x[1][2]"));
    }

    #[test]
    fn monomial_lcm_and_division() {
        let a = Monomial::from_exponents([(Variable::x(1, 1), 2), (Variable::y(1), 1)]);
        let b = Monomial::from_exponents([(Variable::x(1, 1), 1), (Variable::y(2), 1)]);
        let l = a.lcm(&b);
        assert_eq!(
            l,
            Monomial::from_exponents([
                (Variable::x(1, 1), 2),
                (Variable::y(1), 1),
                (Variable::y(2), 1)
            ])
        );
        assert_eq!(l.checked_div(&a).unwrap(), Monomial::var(Variable::y(2)));
        assert!(a.checked_div(&l).is_none());
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(Variable::y(1)).is_coprime(&Monomial::var(Variable::y(2))));
    }

    #[test]
    fn ring_context_variables() {
        let ring = RingContext::new(MatrixShape::square(2));
        assert_eq!(ring.num_vars(), 6);
        assert!(ring.contains(Variable::x(2, 1)));
        assert!(!ring.contains(Variable::x(3, 1)));
        assert!(!ring.contains(Variable::T));
        let ext = RingContext::with_elim(MatrixShape::square(2));
        assert_eq!(ext.num_vars(), 7);
        assert!(ext.contains(Variable::T));
        // symmetric shapes store only the upper triangle
        let sym = RingContext::new(MatrixShape::symmetric(3));
        assert_eq!(sym.num_vars(), 3 + 6);
    }
}
