//! The division algorithm, S-polynomials, Buchberger's algorithm and
//! reduced Groebner bases.

use std::cell::Cell;
use std::cmp::Ordering;
use std::time::Instant;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, Polynomial, Term};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Installs a deadline for basis computations on the current thread; the
/// Buchberger pair loop and the division loop poll it and bail out with
/// [`Error::BudgetExceeded`]. `None` clears it.
pub fn set_thread_deadline(deadline: Option<Instant>) {
    DEADLINE.with(|d| d.set(deadline));
}

fn check_deadline() -> Result<()> {
    DEADLINE.with(|d| match d.get() {
        Some(t) if Instant::now() >= t => Err(Error::BudgetExceeded),
        _ => Ok(()),
    })
}

/// Result of dividing `f` by a sequence of divisors:
/// `f = sum(quotients[i] * divisors[i]) + remainder`, exactly.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// `f` scaled to leading coefficient 1 under `ord`.
pub fn monic(f: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("monic"));
    }
    ord.ensure_ranked(f)?;
    let lc = f.lead_unchecked(ord).coeff.clone();
    Ok(f.scale(&lc.recip()))
}

/// S(f, g) = (lcm/lt(f))·f − (lcm/lt(g))·g, leading terms (coefficients
/// included) cancelling by construction. S(f, f) = 0.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("s_polynomial"));
    }
    ord.ensure_ranked(f)?;
    ord.ensure_ranked(g)?;
    let lt_f = f.lead_unchecked(ord);
    let lt_g = g.lead_unchecked(ord);
    let l = lt_f.mono.lcm(&lt_g.mono);
    let cf = Term::new(lt_f.coeff.recip(), l.checked_div(&lt_f.mono).expect("lcm divisible"));
    let cg = Term::new(lt_g.coeff.recip(), l.checked_div(&lt_g.mono).expect("lcm divisible"));
    Ok(&f.mul_term(&cf) - &g.mul_term(&cg))
}

/// Divides `f` by the sequence `divisors` under `ord`.
///
/// Deterministic: at every step the first divisor whose leading monomial
/// divides the current leading term is used; if none does, the leading term
/// moves to the remainder. No monomial of the remainder is divisible by any
/// divisor's leading monomial.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<Division> {
    ord.ensure_ranked(f)?;
    for g in divisors {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial("reduce divisor"));
        }
        ord.ensure_ranked(g)?;
    }
    let leads: Vec<Term> = divisors.iter().map(|g| g.lead_unchecked(ord).clone()).collect();
    let divisor_terms: Vec<Vec<Term>> = divisors.iter().map(|g| ord_terms(g, ord)).collect();

    let mut p = ord_terms(f, ord);
    let mut remainder: Vec<Term> = Vec::new();
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];

    let mut steps = 0usize;
    'outer: while !p.is_empty() {
        steps += 1;
        if steps % 256 == 0 {
            check_deadline()?;
        }
        let lt = &p[0];
        for (i, lead) in leads.iter().enumerate() {
            if lead.mono.divides(&lt.mono) {
                let q = Term::new(
                    &lt.coeff / &lead.coeff,
                    lt.mono.checked_div(&lead.mono).expect("checked divisibility"),
                );
                let scaled: Vec<Term> = divisor_terms[i].iter().map(|t| t.mul(&q)).collect();
                p = merge_sub(&p, &scaled, ord);
                quotients[i].push(q);
                continue 'outer;
            }
        }
        remainder.push(p.remove(0));
    }

    Ok(Division {
        quotients: quotients.into_iter().map(Polynomial::from_terms).collect(),
        remainder: Polynomial::from_terms(remainder),
    })
}

/// Normal form of `f` against `basis`: the division remainder.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Result<Polynomial> {
    Ok(reduce(f, basis, ord)?.remainder)
}

/// Buchberger's algorithm. Returns a Groebner basis of the ideal generated
/// by `gens`, containing the monic normalizations of the inputs.
///
/// Pairs are selected by smallest lcm under `ord` (normal strategy) and
/// skipped via the product criterion (coprime leading monomials) and the
/// chain criterion.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators("buchberger"));
    }
    let mut basis: Vec<Polynomial> = Vec::with_capacity(gens.len());
    for g in gens {
        basis.push(monic(g, ord)?);
    }
    let mut lms: Vec<_> = basis.iter().map(|g| g.lead_unchecked(ord).mono.clone()).collect();

    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push((i, j));
        }
    }

    while !pending.is_empty() {
        check_deadline()?;
        // Normal selection: smallest lcm of leading monomials, ties by index.
        let mut best = 0;
        let mut best_lcm = lms[pending[0].0].lcm(&lms[pending[0].1]);
        for (idx, &(i, j)) in pending.iter().enumerate().skip(1) {
            let l = lms[i].lcm(&lms[j]);
            match ord.cmp_mono(&l, &best_lcm) {
                Ordering::Less => {
                    best = idx;
                    best_lcm = l;
                }
                Ordering::Equal if (i, j) < pending[best] => {
                    best = idx;
                    best_lcm = l;
                }
                _ => {}
            }
        }
        let (i, j) = pending.swap_remove(best);

        // Product criterion.
        if lms[i].is_coprime(&lms[j]) {
            continue;
        }
        // Chain criterion: some k with lm_k | lcm(i,j) whose pairs with both
        // i and j have already been handled.
        let lcm_ij = lms[i].lcm(&lms[j]);
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&lcm_ij)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        if s.is_zero() {
            continue;
        }
        let r = normal_form(&s, &basis, ord)?;
        if r.is_zero() {
            continue;
        }
        let r = monic(&r, ord)?;
        lms.push(r.lead_unchecked(ord).mono.clone());
        basis.push(r);
        let new = basis.len() - 1;
        for k in 0..new {
            pending.push((k, new));
        }
    }
    Ok(basis)
}

/// Makes a candidate basis monic and auto-reduced: drops elements whose
/// leading monomial is divisible by another's, then reduces every tail term.
/// Output is sorted by leading monomial, descending.
///
/// This preserves the ideal when the input is a Groebner basis under `ord`,
/// which is the intended use.
pub fn auto_reduce(basis: &[Polynomial], ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut work: Vec<Polynomial> = Vec::new();
    for g in basis {
        if !g.is_zero() {
            work.push(monic(g, ord)?);
        }
    }
    // Minimalize, scanning leading monomials in increasing order so that
    // potential divisors are seen first.
    work.sort_by(|a, b| ord.cmp_mono(&a.lead_unchecked(ord).mono, &b.lead_unchecked(ord).mono));
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in work {
        let lm = g.lead_unchecked(ord).mono.clone();
        if !kept.iter().any(|h| h.lead_unchecked(ord).mono.divides(&lm)) {
            kept.push(g);
        }
    }
    // Tail-reduce each element against the others. Leading monomials are
    // pairwise non-divisible, so they survive reduction and one pass settles.
    for idx in 0..kept.len() {
        let lm_before = kept[idx].lead_unchecked(ord).mono.clone();
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&kept[idx], &others, ord)?;
        debug_assert_eq!(r.lead_unchecked(ord).mono, lm_before);
        kept[idx] = monic(&r, ord)?;
    }
    kept.sort_by(|a, b| ord.cmp_mono(&b.lead_unchecked(ord).mono, &a.lead_unchecked(ord).mono));
    Ok(kept)
}

/// The reduced Groebner basis of the ideal generated by `gens` under `ord`:
/// unique, monic, auto-reduced, sorted by leading monomial descending. Ideal
/// equality is therefore structural equality of the outputs.
pub fn reduced_gb(gens: &[Polynomial], ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let gb = buchberger(gens, ord)?;
    auto_reduce(&gb, ord)
}

/// The first S-pair of `basis` whose normal form against `basis` is nonzero.
#[derive(Debug, Clone)]
pub struct GroebnerFailure {
    pub i: usize,
    pub j: usize,
    pub remainder: Polynomial,
}

/// Exhaustive Buchberger criterion: reduces every S-pair, with no pair
/// skipping, so a `None` outcome really exercised all reductions.
pub fn groebner_witness(
    basis: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Option<GroebnerFailure>> {
    for j in 0..basis.len() {
        for i in 0..j {
            let s = s_polynomial(&basis[i], &basis[j], ord)?;
            if s.is_zero() {
                continue;
            }
            let r = normal_form(&s, basis, ord)?;
            if !r.is_zero() {
                return Ok(Some(GroebnerFailure { i, j, remainder: r }));
            }
        }
    }
    Ok(None)
}

/// Whether every S-polynomial of `basis` reduces to zero against `basis`.
pub fn is_groebner(basis: &[Polynomial], ord: &MonomialOrder) -> Result<bool> {
    Ok(groebner_witness(basis, ord)?.is_none())
}

/// Whether `basis` is monic and auto-reduced: no term of any element is
/// divisible by the leading monomial of another element.
pub fn is_reduced(basis: &[Polynomial], ord: &MonomialOrder) -> Result<bool> {
    let mut lms = Vec::with_capacity(basis.len());
    for g in basis {
        let lt = g.leading_term(ord)?;
        if !lt.coeff.is_one() {
            return Ok(false);
        }
        lms.push(lt.mono);
    }
    for (i, g) in basis.iter().enumerate() {
        for t in g.terms() {
            for (j, lm) in lms.iter().enumerate() {
                if i != j && lm.divides(&t.mono) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Terms of `p` sorted strictly decreasing under `ord`.
fn ord_terms(p: &Polynomial, ord: &MonomialOrder) -> Vec<Term> {
    let mut terms = p.terms().to_vec();
    terms.sort_by(|a, b| ord.cmp_mono(&b.mono, &a.mono));
    terms
}

/// `a - b`, both sorted strictly decreasing under `ord`.
fn merge_sub(a: &[Term], b: &[Term], ord: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match ord.cmp_mono(&x.mono, &y.mono) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term::new(-&y.coeff, y.mono.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &x.coeff - &y.coeff;
                    if !num_traits::Zero::is_zero(&c) {
                        out.push(Term::new(c, x.mono.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                out.push(Term::new(-&y.coeff, y.mono.clone()));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
