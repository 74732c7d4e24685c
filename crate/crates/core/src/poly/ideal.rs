//! Ideals with a cached reduced Groebner basis.

use std::sync::Mutex;

use crate::error::Result;
use crate::poly::groebner::{normal_form, reduced_gb};
use crate::poly::{MonomialOrder, Polynomial};

/// An ideal given by generators. The reduced Groebner basis for the most
/// recently used order is cached; all other state is immutable.
#[derive(Debug)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    cache: Mutex<Option<(MonomialOrder, Vec<Polynomial>)>>,
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(generators: impl IntoIterator<Item = Polynomial>) -> Self {
        Ideal {
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(None),
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The ideal generated by these generators plus `extra`.
    pub fn plus(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        Ideal::new(self.generators.iter().cloned().chain(extra))
    }

    /// The reduced Groebner basis under `ord` (empty for the zero ideal).
    pub fn reduced_basis(&self, ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some((cached_ord, basis)) = cache.as_ref() {
                if cached_ord == ord {
                    return Ok(basis.clone());
                }
            }
        }
        let basis = if self.generators.is_empty() {
            Vec::new()
        } else {
            reduced_gb(&self.generators, ord)?
        };
        *self.cache.lock().unwrap() = Some((ord.clone(), basis.clone()));
        Ok(basis)
    }

    /// Installs a precomputed reduced basis (used by the elimination code,
    /// which obtains one as a by-product).
    pub(crate) fn seed_cache(&self, ord: &MonomialOrder, basis: Vec<Polynomial>) {
        *self.cache.lock().unwrap() = Some((ord.clone(), basis));
    }

    /// Normal form of `f` against the cached reduced basis.
    pub fn normal_form(&self, f: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
        let basis = self.reduced_basis(ord)?;
        normal_form(f, &basis, ord)
    }

    /// Ideal membership: the normal form vanishes.
    pub fn member(&self, f: &Polynomial, ord: &MonomialOrder) -> Result<bool> {
        Ok(self.normal_form(f, ord)?.is_zero())
    }

    /// Ideal equality via uniqueness of the reduced Groebner basis.
    pub fn equal(&self, other: &Ideal, ord: &MonomialOrder) -> Result<bool> {
        Ok(self.reduced_basis(ord)? == other.reduced_basis(ord)?)
    }
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detideal::MatrixShape;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn order_b() -> MonomialOrder {
        MonomialOrder::y_lex(&MatrixShape::square(2))
    }

    #[test]
    fn membership_in_the_square_2_ideal() {
        let ord = order_b();
        let g1 = p("x[1][1]*y[1] + x[1][2]*y[2]");
        let g2 = p("x[2][1]*y[1] + x[2][2]*y[2]");
        let ideal = Ideal::new([g1.clone(), g2.clone()]);

        assert!(ideal.member(&g1, &ord).unwrap());
        let delta = p("x[1][1]*x[2][2] - x[1][2]*x[2][1]");
        assert!(!ideal.member(&delta, &ord).unwrap());
        // Delta*y1 = x22*g1 - x12*g2
        let delta_y1 = &delta * &p("y[1]");
        assert!(ideal.member(&delta_y1, &ord).unwrap());
    }

    #[test]
    fn equality_is_generating_set_independent() {
        let ord = order_b();
        let g1 = p("x[1][1]*y[1] + x[1][2]*y[2]");
        let g2 = p("x[2][1]*y[1] + x[2][2]*y[2]");
        let delta_y2 = p("x[1][1]*x[2][2]*y[2] - x[1][2]*x[2][1]*y[2]");
        let delta = p("x[1][1]*x[2][2] - x[1][2]*x[2][1]");

        let i = Ideal::new([g1.clone(), g2.clone()]);
        let j = Ideal::new([g2.clone(), g1.clone()]);
        assert!(i.equal(&j, &ord).unwrap());
        assert!(i.equal(&i.plus([delta_y2]), &ord).unwrap());
        assert!(!i.equal(&i.plus([delta]), &ord).unwrap());
    }

    #[test]
    fn zero_ideal_edge_cases() {
        let ord = order_b();
        let z = Ideal::new([Polynomial::zero()]);
        assert!(z.generators().is_empty());
        assert!(z.reduced_basis(&ord).unwrap().is_empty());
        assert!(z.member(&Polynomial::zero(), &ord).unwrap());
        assert!(!z.member(&p("y[1]"), &ord).unwrap());
    }
}
