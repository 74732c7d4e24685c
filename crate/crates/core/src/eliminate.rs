//! Ideal intersection and colon ideals by a single element, computed with an
//! auxiliary elimination variable.

use crate::error::{Error, Result};
use crate::poly::groebner::reduce;
use crate::poly::ideal::Ideal;
use crate::poly::{MonomialOrder, Polynomial, Variable};

fn ensure_elim_free(polys: &[Polynomial]) -> Result<()> {
    for p in polys {
        if p.contains_variable(Variable::T) {
            return Err(Error::EliminationVariableInUse);
        }
    }
    Ok(())
}

/// `I ∩ J` via the standard trick: a Groebner basis of `t*I + (1-t)*J` under
/// an order eliminating `t`, restricted to the `t`-free elements. The result
/// carries that restriction as its cached reduced basis under `ord`.
pub fn intersect(i: &Ideal, j: &Ideal, ord: &MonomialOrder) -> Result<Ideal> {
    ensure_elim_free(i.generators())?;
    ensure_elim_free(j.generators())?;
    let t = Polynomial::from(Variable::T);
    let one_minus_t = &Polynomial::one() - &t;
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| &t * g).collect();
    gens.extend(j.generators().iter().map(|g| &one_minus_t * g));
    if gens.is_empty() {
        return Ok(Ideal::new([]));
    }

    let elim_ord = MonomialOrder::block([Variable::T], ord.clone());
    let basis = crate::poly::groebner::reduced_gb(&gens, &elim_ord)?;
    let mut kept: Vec<Polynomial> = basis
        .into_iter()
        .filter(|g| !g.contains_variable(Variable::T))
        .collect();
    // The t-free slice of the reduced elimination basis is itself the
    // reduced basis of the intersection under the inner order.
    kept.sort_by(|a, b| {
        ord.cmp_mono(
            &b.lead_unchecked(ord).mono,
            &a.lead_unchecked(ord).mono,
        )
    });
    let out = Ideal::new(kept.clone());
    out.seed_cache(ord, kept);
    Ok(out)
}

/// The colon ideal `(I : f)`: generators of `I ∩ <f>`, each divided exactly
/// by `f`. A division remainder here is impossible unless the elimination
/// step is wrong, so it surfaces as an error rather than bad output.
pub fn colon(i: &Ideal, f: &Polynomial, ord: &MonomialOrder) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("colon"));
    }
    ensure_elim_free(std::slice::from_ref(f))?;
    if f.num_terms() == 1 && f.terms()[0].mono.is_one() {
        return Ok(Ideal::new(i.generators().to_vec())); // (I : unit) = I
    }
    let meet = intersect(i, &Ideal::new([f.clone()]), ord)?;
    let mut quotients = Vec::with_capacity(meet.generators().len());
    for g in meet.generators() {
        let div = reduce(g, std::slice::from_ref(f), ord)?;
        if !div.remainder.is_zero() {
            return Err(Error::ExactDivisionFailed(format!(
                "{g} is not a multiple of {f}"
            )));
        }
        debug_assert!(div.quotients.len() == 1);
        quotients.push(div.quotients.into_iter().next().expect("single divisor"));
    }
    let out = Ideal::new(quotients);

    // Contract checks, active in debug builds: I ⊆ (I : f) and f·(I : f) ⊆ I.
    #[cfg(debug_assertions)]
    {
        for g in i.generators() {
            assert!(
                out.member(g, ord)?,
                "colon lost a generator of the original ideal"
            );
        }
        for q in out.generators() {
            assert!(
                i.member(&(q * f), ord)?,
                "colon produced an element outside (I : f)"
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detideal::{determinant, generators, MatrixShape};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn order_b(shape: &MatrixShape) -> MonomialOrder {
        MonomialOrder::y_lex(shape)
    }

    #[test]
    fn intersection_with_itself_and_of_principal_ideals() {
        let shape = MatrixShape::square(2);
        let ord = order_b(&shape);
        let i = Ideal::new(generators(&shape));
        assert!(intersect(&i, &i, &ord).unwrap().equal(&i, &ord).unwrap());

        let y1 = Ideal::new([p("y[1]")]);
        let y2 = Ideal::new([p("y[2]")]);
        let meet = intersect(&y1, &y2, &ord).unwrap();
        assert!(meet.equal(&Ideal::new([p("y[1]*y[2]")]), &ord).unwrap());
    }

    #[test]
    fn intersection_with_the_determinant_ideal() {
        let shape = MatrixShape::square(2);
        let ord = order_b(&shape);
        let i = Ideal::new(generators(&shape));
        let delta = determinant(&shape);
        let meet = intersect(&i, &Ideal::new([delta.clone()]), &ord).unwrap();
        let expected = Ideal::new([&delta * &p("y[1]"), &delta * &p("y[2]")]);
        assert!(meet.equal(&expected, &ord).unwrap());
    }

    #[test]
    fn colon_by_one_is_the_identity() {
        let shape = MatrixShape::square(2);
        let ord = order_b(&shape);
        let i = Ideal::new(generators(&shape));
        let c = colon(&i, &Polynomial::one(), &ord).unwrap();
        assert!(c.equal(&i, &ord).unwrap());
    }

    #[test]
    fn colon_by_the_determinant_gives_the_column_variables() {
        let shape = MatrixShape::square(2);
        let ord = order_b(&shape);
        let i = Ideal::new(generators(&shape));
        let c = colon(&i, &determinant(&shape), &ord).unwrap();
        assert!(c.equal(&Ideal::new([p("y[1]"), p("y[2]")]), &ord).unwrap());
    }

    #[test]
    fn colon_by_the_extra_generator_adds_the_determinant() {
        let shape = MatrixShape::wide(2);
        let ord = order_b(&shape);
        let gens = generators(&shape);
        let i = Ideal::new(gens[..2].to_vec());
        let c = colon(&i, &gens[2], &ord).unwrap();
        let expected = i.plus([determinant(&shape)]);
        assert!(c.equal(&expected, &ord).unwrap());
    }

    #[test]
    fn zero_ideal_edges() {
        let shape = MatrixShape::square(2);
        let ord = order_b(&shape);
        let zero = Ideal::new([]);
        let i = Ideal::new(generators(&shape));
        let meet = intersect(&i, &zero, &ord).unwrap();
        assert!(meet.equal(&zero, &ord).unwrap());
        let c = colon(&zero, &determinant(&shape), &ord).unwrap();
        assert!(c.equal(&zero, &ord).unwrap());
    }

    #[test]
    fn colon_is_involutive_on_nonzerodivisors() {
        // f a nonzerodivisor mod (I : f) makes a second colon a fixpoint.
        for n in 2..=3 {
            let shape = MatrixShape::square(n);
            let ord = order_b(&shape);
            let i = Ideal::new(generators(&shape));
            let delta = determinant(&shape);
            let once = colon(&i, &delta, &ord).unwrap();
            let twice = colon(&once, &delta, &ord).unwrap();
            assert!(twice.equal(&once, &ord).unwrap(), "square:{n}");
        }
        let shape = MatrixShape::wide(2);
        let ord = order_b(&shape);
        let gens = generators(&shape);
        let i = Ideal::new(gens[..2].to_vec());
        let once = colon(&i, &gens[2], &ord).unwrap();
        let twice = colon(&once, &gens[2], &ord).unwrap();
        assert!(twice.equal(&once, &ord).unwrap());
    }

    #[test]
    fn elimination_variable_must_be_fresh() {
        let shape = MatrixShape::square(2);
        let ord = order_b(&shape);
        let i = Ideal::new([p("t*y[1]")]);
        assert!(matches!(
            intersect(&i, &i, &ord),
            Err(Error::EliminationVariableInUse)
        ));
        assert!(colon(&Ideal::new([p("y[1]")]), &Polynomial::zero(), &ord).is_err());
    }
}
