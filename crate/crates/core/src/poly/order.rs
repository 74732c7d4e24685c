//! Total orders on monomials.
//!
//! Two families cover everything here: plain lexicographic orders induced by
//! a variable ranking, and block elimination orders that weigh a set of
//! variables before delegating to an inner order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::detideal::MatrixShape;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Variable};

#[derive(Clone)]
pub struct MonomialOrder {
    kind: Kind,
    label: String,
}

#[derive(Clone)]
enum Kind {
    Lex(Arc<LexTable>),
    Block {
        elim: BTreeSet<Variable>,
        inner: Box<MonomialOrder>,
    },
}

struct LexTable {
    ranking: Vec<Variable>,
    rank: HashMap<Variable, u32>,
}

impl MonomialOrder {
    /// Lexicographic order with `ranking[0]` the largest variable.
    pub fn lex(ranking: Vec<Variable>) -> Self {
        let rank: HashMap<Variable, u32> = ranking
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        assert_eq!(rank.len(), ranking.len(), "ranking must be duplicate-free");
        MonomialOrder {
            kind: Kind::Lex(Arc::new(LexTable { ranking, rank })),
            label: "lex".into(),
        }
    }

    /// Lex order ranking the diagonal `x[1][1] > x[2][2] > ... > x[n][n]`
    /// above everything else, then `y[1] > ... > y[n]`, then the remaining
    /// `x` variables row-major. Under it the generator `g_i` of a square or
    /// symmetric shape leads with `x[i][i]*y[i]`.
    pub fn diag_lex(shape: &MatrixShape) -> Self {
        let n = shape.cols();
        let mut ranking: Vec<Variable> = (1..=n.min(shape.rows()))
            .map(|i| shape.entry(i, i))
            .collect();
        ranking.extend((1..=n).map(Variable::y));
        for v in shape.x_variables() {
            if !ranking.contains(&v) {
                ranking.push(v);
            }
        }
        let mut ord = Self::lex(ranking);
        ord.label = "A".into();
        ord
    }

    /// Lex order ranking `y[1] > ... > y[n]` above all `x` variables, with
    /// the `x` variables row-major below them. Minors on leading columns
    /// lead with their main diagonal under this order.
    pub fn y_lex(shape: &MatrixShape) -> Self {
        let mut ranking: Vec<Variable> = (1..=shape.cols()).map(Variable::y).collect();
        ranking.extend(shape.x_variables());
        let mut ord = Self::lex(ranking);
        ord.label = "B".into();
        ord
    }

    /// Block elimination order: the total degree in `elim` decides first
    /// (so elimination variables dominate), ties fall through to the inner
    /// order on the remaining variables.
    pub fn block(elim: impl IntoIterator<Item = Variable>, inner: MonomialOrder) -> Self {
        let elim: BTreeSet<Variable> = elim.into_iter().collect();
        let label = format!(
            "block({};{})",
            elim.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
            inner.label
        );
        MonomialOrder { kind: Kind::Block { elim, inner: Box::new(inner) }, label }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether this order ranks `v` (directly or in an inner order).
    pub fn ranks(&self, v: Variable) -> bool {
        match &self.kind {
            Kind::Lex(t) => t.rank.contains_key(&v),
            Kind::Block { elim, inner } => elim.contains(&v) || inner.ranks(v),
        }
    }

    pub fn ensure_ranked(&self, p: &Polynomial) -> Result<()> {
        for v in p.variables() {
            if !self.ranks(v) {
                return Err(Error::UnrankedVariable(v));
            }
        }
        Ok(())
    }

    pub fn ensure_ranked_mono(&self, m: &Monomial) -> Result<()> {
        for v in m.variables() {
            if !self.ranks(v) {
                return Err(Error::UnrankedVariable(v));
            }
        }
        Ok(())
    }

    /// Strict total-order comparison. Errors when either monomial mentions a
    /// variable this order does not rank (a ring-context mismatch).
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        self.ensure_ranked_mono(a)?;
        self.ensure_ranked_mono(b)?;
        Ok(self.cmp_mono(a, b))
    }

    /// Comparison on pre-validated monomials.
    ///
    /// Panics if a variable is unranked; callers validate inputs once at the
    /// public entry points.
    pub(crate) fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.kind {
            Kind::Lex(table) => {
                let ra = ranked_exponents(table, a);
                let rb = ranked_exponents(table, b);
                cmp_rank_vectors(&ra, &rb)
            }
            Kind::Block { elim, inner } => {
                let da: u32 = a
                    .exponents()
                    .iter()
                    .filter(|(v, _)| elim.contains(v))
                    .map(|(_, e)| e)
                    .sum();
                let db: u32 = b
                    .exponents()
                    .iter()
                    .filter(|(v, _)| elim.contains(v))
                    .map(|(_, e)| e)
                    .sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Same elimination degree: break ties on the elimination
                // exponents themselves, then on the rest via the inner order.
                let ea: Vec<(Variable, u32)> = a
                    .exponents()
                    .iter()
                    .filter(|(v, _)| elim.contains(v))
                    .copied()
                    .collect();
                let eb: Vec<(Variable, u32)> = b
                    .exponents()
                    .iter()
                    .filter(|(v, _)| elim.contains(v))
                    .copied()
                    .collect();
                match cmp_var_vectors(&ea, &eb) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                let sa = strip(a, elim);
                let sb = strip(b, elim);
                inner.cmp_mono(&sa, &sb)
            }
        }
    }
}

fn ranked_exponents(table: &LexTable, m: &Monomial) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = m
        .exponents()
        .iter()
        .map(|(v, e)| {
            let r = *table
                .rank
                .get(v)
                .unwrap_or_else(|| panic!("variable {v} is not ranked by this order"));
            (r, *e)
        })
        .collect();
    out.sort_unstable_by_key(|(r, _)| *r);
    out
}

/// Lex walk over (rank, exponent) pairs sorted by rank; rank 0 is the most
/// significant variable, and a larger exponent there wins.
fn cmp_rank_vectors(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(ra, ea)), Some(&(rb, eb))) => match ra.cmp(&rb) {
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

/// Same walk keyed by the canonical `Variable` order.
fn cmp_var_vectors(a: &[(Variable, u32)], b: &[(Variable, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
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

fn strip(m: &Monomial, elim: &BTreeSet<Variable>) -> Monomial {
    Monomial::from_exponents(
        m.exponents()
            .iter()
            .filter(|(v, _)| !elim.contains(v))
            .copied(),
    )
}

impl PartialEq for MonomialOrder {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (Kind::Lex(a), Kind::Lex(b)) => a.ranking == b.ranking,
            (
                Kind::Block { elim: ea, inner: ia },
                Kind::Block { elim: eb, inner: ib },
            ) => ea == eb && ia == ib,
            _ => false,
        }
    }
}

impl Eq for MonomialOrder {}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialOrder({})", self.label)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
