//! Graded Betti tables of the resolutions in play, mapping cones between
//! them, and Hilbert-series numerators of monomial ideals as the
//! resolution-independent cross-check.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::detideal::{generators, MatrixShape};
use crate::error::{Error, Result};
use crate::poly::groebner::reduced_gb;
use crate::poly::{Monomial, MonomialOrder, Variable};

/// Graded ranks of a free complex: `(homological index, internal degree) ->
/// rank`, zero ranks not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedBettiTable {
    entries: BTreeMap<(u32, u32), u64>,
}

impl GradedBettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: u32, j: u32, rank: u64) {
        if rank > 0 {
            *self.entries.entry((i, j)).or_insert(0) += rank;
        }
    }

    pub fn rank(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    /// Largest homological index carrying a nonzero rank.
    pub fn proj_dim(&self) -> u32 {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Total Betti numbers, indexed by homological degree.
    pub fn totals(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.proj_dim() as usize + 1];
        for (&(i, _), &r) in &self.entries {
            out[i as usize] += r;
        }
        out
    }

    /// The alternating sum `N(t) = sum (-1)^i beta_{i,j} t^j`, which equals
    /// the Hilbert numerator of the resolved quotient over `numvars`
    /// variables.
    pub fn numerator(&self, numvars: usize) -> HilbertNumerator {
        let mut coeffs: Vec<i64> = Vec::new();
        for (&(i, j), &r) in &self.entries {
            let j = j as usize;
            if coeffs.len() <= j {
                coeffs.resize(j + 1, 0);
            }
            let signed = if i % 2 == 0 { r as i64 } else { -(r as i64) };
            coeffs[j] += signed;
        }
        HilbertNumerator::new(coeffs, numvars)
    }
}

impl Serialize for GradedBettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: u32,
            j: u32,
            rank: u64,
        }
        #[derive(Serialize)]
        struct Table {
            entries: Vec<Entry>,
        }
        Table {
            entries: self
                .entries()
                .map(|(i, j, rank)| Entry { i, j, rank })
                .collect(),
        }
        .serialize(s)
    }
}

/// Integer numerator `N(t)` of a Hilbert series `N(t)/(1-t)^numvars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertNumerator {
    coeffs: Vec<i64>,
    numvars: usize,
}

impl HilbertNumerator {
    pub fn new(mut coeffs: Vec<i64>, numvars: usize) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbertNumerator { coeffs, numvars }
    }

    /// Coefficients by degree, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn numvars(&self) -> usize {
        self.numvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Multiplicity of the root `t = 1`, i.e. the power of `(1-t)` dividing
    /// the numerator.
    pub fn one_multiplicity(&self) -> usize {
        let mut c = self.coeffs.clone();
        let mut mult = 0;
        while !c.is_empty() {
            match divide_by_one_minus_t(&c) {
                Some(q) => {
                    mult += 1;
                    c = q;
                }
                None => break,
            }
        }
        mult
    }

    /// Krull dimension of the quotient: variables minus the pole-order drop.
    /// The zero module reports -1.
    pub fn dimension(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.numvars as i64 - self.one_multiplicity() as i64
    }
}

impl Serialize for HilbertNumerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Krull dimension from a numerator (free-function form of
/// [`HilbertNumerator::dimension`]).
pub fn dimension(n: &HilbertNumerator) -> i64 {
    n.dimension()
}

/// Exact division by `(1 - t)`; `None` when `N(1) != 0`.
fn divide_by_one_minus_t(coeffs: &[i64]) -> Option<Vec<i64>> {
    if coeffs.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut q = Vec::with_capacity(coeffs.len().saturating_sub(1));
    let mut acc = 0i64;
    for &c in &coeffs[..coeffs.len() - 1] {
        acc += c;
        q.push(acc);
    }
    while q.last() == Some(&0) {
        q.pop();
    }
    Some(q)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// The Koszul complex on `g` forms of degree `d`: rank `C(g,i)` in degree
/// `d*i`.
pub fn koszul_table(g: u32, d: u32) -> GradedBettiTable {
    let mut t = GradedBettiTable::new();
    for i in 0..=g {
        t.add(i, d * i, binomial(g as u64, i as u64));
    }
    t
}

/// Mapping cone of a comparison map from the resolution `source` (twisted by
/// `twist <= 0`) into `target`: `cone_i = target_i (+) source_{i-1}(twist)`.
///
/// Each pair `(i, j)` in `cancel` strikes an identified rank-one summand:
/// one rank at `(i, j)` on the target side and one at `(i+1, j)` on the
/// source side. Both must exist.
pub fn mapping_cone(
    target: &GradedBettiTable,
    source: &GradedBettiTable,
    twist: i64,
    cancel: &[(u32, u32)],
) -> Result<GradedBettiTable> {
    let mut cone = target.clone();
    for (i, j, r) in source.entries() {
        let shifted = j as i64 - twist;
        if shifted < 0 {
            return Err(Error::BadCancellation { i, j });
        }
        cone.add(i + 1, shifted as u32, r);
    }
    for &(i, j) in cancel {
        let source_j = j as i64 + twist;
        let source_ok = source_j >= 0 && source.rank(i, source_j as u32) >= 1;
        if target.rank(i, j) < 1 || !source_ok {
            return Err(Error::BadCancellation { i, j });
        }
        for pos in [(i, j), (i + 1, j)] {
            match cone.entries.get_mut(&pos) {
                Some(r) if *r >= 1 => {
                    *r -= 1;
                    if *r == 0 {
                        cone.entries.remove(&pos);
                    }
                }
                _ => return Err(Error::BadCancellation { i, j }),
            }
        }
    }
    Ok(cone)
}

/// Minimal graded Betti table of `R/<g_1..g_n, det X>` for the square shape:
/// the cone of the Koszul complex on the column variables (twisted by `-n`,
/// so the comparison map is multiplication by the determinant) into the
/// Koszul complex on the generators, with the single terminal cancellation.
///
/// The last module sits in internal degree `2n-1`, not `2n`: its generators
/// are the syzygies with cofactor coefficients (degree `n-1`) against the
/// degree-2 generators. The Hilbert cross-check pins this down.
pub fn northcott_table(n: u32) -> GradedBettiTable {
    let target = koszul_table(n, 2);
    let source = koszul_table(n, 1);
    mapping_cone(&target, &source, -(n as i64), &[(n, 2 * n)])
        .expect("terminal cancellation always matches")
}

/// Total Betti numbers of the quotient by the entry ideal of the wide shape.
pub fn wide_betti_totals(n: u32) -> Vec<u64> {
    let n64 = n as u64;
    let mut out = vec![1, n64 + 1];
    for k in 1..n64 {
        out.push(binomial(n64, k) + binomial(n64, k - 1) + binomial(n64, k + 1));
    }
    out.push(n64);
    out
}

/// Graded Betti table of the quotient by the entry ideal of the wide shape:
/// the cone of the Northcott resolution (twisted by `-2`, the comparison map
/// being multiplication by the extra generator) into the Koszul complex on
/// the first `n` generators. No cancellation occurs; the cone is minimal.
pub fn wide_betti_table(n: u32) -> GradedBettiTable {
    mapping_cone(&koszul_table(n, 2), &northcott_table(n), -2, &[])
        .expect("no cancellations requested")
}

/// Hilbert numerator of `R/<monomials>` over `numvars` variables, by pivot
/// recursion: split off a well-occurring variable `p` via
/// `N(I) = N(I + <p>) + t * N(I : p)`.
pub fn hilbert_numerator(monomials: &[Monomial], numvars: usize) -> HilbertNumerator {
    let gens = minimalize(monomials.to_vec());
    HilbertNumerator::new(kpoly(gens), numvars)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|kept| kept.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Core recursion on a minimal generating set.
fn kpoly(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![];
    }
    if gens.len() == 1 {
        return one_minus_t_pow(gens[0].degree());
    }
    if pairwise_coprime(&gens) {
        // complete intersection of monomials
        let mut acc = vec![1];
        for g in &gens {
            acc = poly_mul(&acc, &one_minus_t_pow(g.degree()));
        }
        return acc;
    }

    // Pivot: the variable hitting the most generators, restricted to
    // variables of a generator of degree >= 2 so both branches shrink.
    let mut counts: BTreeMap<Variable, usize> = BTreeMap::new();
    for g in &gens {
        if g.degree() >= 2 {
            for v in g.variables() {
                counts.entry(v).or_insert(0);
            }
        }
    }
    for g in &gens {
        for v in g.variables() {
            if let Some(c) = counts.get_mut(&v) {
                *c += 1;
            }
        }
    }
    let (&pivot, _) = counts
        .iter()
        .max_by(|(va, ca), (vb, cb)| ca.cmp(cb).then(vb.cmp(va)))
        .expect("a generator of degree >= 2 exists here");

    // I + <pivot>: generators touching the pivot collapse into it.
    let mut plus: Vec<Monomial> = gens
        .iter()
        .filter(|g| g.exponent(pivot) == 0)
        .cloned()
        .collect();
    plus.push(Monomial::var(pivot));
    let n_plus = kpoly(minimalize(plus));

    // I : pivot.
    let quot: Vec<Monomial> = gens.iter().map(|g| g.divide_once(pivot)).collect();
    let n_quot = kpoly(minimalize(quot));

    poly_add(&n_plus, &shift(&n_quot, 1))
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.is_coprime(b) {
                return false;
            }
        }
    }
    true
}

fn one_minus_t_pow(d: u32) -> Vec<i64> {
    let mut v = vec![0i64; d as usize + 1];
    v[0] = 1;
    v[d as usize] = -1;
    v
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn shift(a: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; d];
    out.extend_from_slice(a);
    out
}

/// Homological summary of the quotient by the shape's entry ideal: projective
/// dimension from the predicted table, dimension from the Hilbert numerator
/// of the computed initial ideal, depth via `numvars - projdim`.
#[derive(Debug, Clone, Serialize)]
pub struct CmReport {
    pub proj_dim: u32,
    pub depth: i64,
    pub dim: i64,
    pub is_cm: bool,
}

pub fn cm_report(shape: &MatrixShape) -> Result<CmReport> {
    let ord = MonomialOrder::y_lex(shape);
    let numvars = shape.ring().num_vars();
    let table = match shape {
        MatrixShape::Wide { n } => wide_betti_table(*n),
        _ => koszul_table(shape.n(), 2),
    };
    let basis = reduced_gb(&generators(shape), &ord)?;
    let lead: Vec<Monomial> = basis
        .iter()
        .map(|g| Ok(g.leading_term(&ord)?.mono))
        .collect::<Result<_>>()?;
    let num = hilbert_numerator(&lead, numvars);
    let proj_dim = table.proj_dim();
    let depth = numvars as i64 - proj_dim as i64;
    let dim = num.dimension();
    Ok(CmReport { proj_dim, depth, dim, is_cm: depth == dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn mono(s: &str) -> Monomial {
        let p: Polynomial = s.parse().unwrap();
        assert_eq!(p.num_terms(), 1);
        p.terms()[0].mono.clone()
    }

    #[test]
    fn koszul_tables() {
        let t = koszul_table(2, 2);
        assert_eq!(t.totals(), vec![1, 2, 1]);
        assert_eq!(t.rank(1, 2), 2);
        assert_eq!(t.rank(2, 4), 1);
        assert_eq!(koszul_table(1, 2).totals(), vec![1, 1]);
        assert_eq!(koszul_table(3, 1).totals(), vec![1, 3, 3, 1]);
        assert_eq!(
            koszul_table(3, 1).entries().map(|(i, j, _)| (i, j)).collect::<Vec<_>>(),
            vec![(0, 0), (1, 1), (2, 2), (3, 3)]
        );
    }

    #[test]
    fn cone_of_zero_source_is_the_target() {
        let t = koszul_table(2, 2);
        let cone = mapping_cone(&t, &GradedBettiTable::new(), -3, &[]).unwrap();
        assert_eq!(cone, t);
    }

    #[test]
    fn bad_cancellations_are_rejected() {
        let t = koszul_table(2, 2);
        let s = koszul_table(2, 1);
        assert!(mapping_cone(&t, &s, -2, &[(1, 3)]).is_err());
    }

    #[test]
    fn northcott_table_matches_the_closed_form() {
        for n in 1..=6u32 {
            let t = northcott_table(n);
            let n64 = n as u64;
            assert_eq!(t.rank(0, 0), 1);
            for i in 1..n {
                let koszul_part = binomial(n64, i as u64);
                let shifted_part = binomial(n64, i as u64 - 1);
                if 2 * i == n + i - 1 {
                    // both strands land in the same internal degree
                    assert_eq!(t.rank(i, 2 * i), koszul_part + shifted_part, "n={n} i={i}");
                } else {
                    assert_eq!(t.rank(i, 2 * i), koszul_part, "n={n} i={i}");
                    assert_eq!(t.rank(i, n + i - 1), shifted_part, "n={n} i={i}");
                }
                assert_eq!(t.totals()[i as usize], koszul_part + shifted_part, "n={n} i={i}");
            }
            assert_eq!(t.rank(n, 2 * n - 1), n64);
            assert_eq!(t.rank(n, 2 * n), 0);
            // Euler characteristic of a resolution of a torsion quotient
            assert_eq!(t.numerator(1).eval_at_one(), 0);
        }
        assert_eq!(northcott_table(2).totals(), vec![1, 3, 2]);
        assert_eq!(northcott_table(3).totals(), vec![1, 4, 6, 3]);
        assert_eq!(
            northcott_table(2).numerator(6).coeffs(),
            &[1, 0, -3, 2]
        );
    }

    #[test]
    fn wide_betti_tables_and_totals_agree() {
        assert_eq!(wide_betti_totals(2), vec![1, 3, 4, 2]);
        assert_eq!(wide_betti_totals(3), vec![1, 4, 7, 7, 3]);
        for n in 1..=10u32 {
            let totals = wide_betti_totals(n);
            let alt: i64 = totals
                .iter()
                .enumerate()
                .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(alt, 0, "n={n}");
            assert_eq!(wide_betti_table(n).totals(), totals, "n={n}");
        }
        let g = wide_betti_table(2);
        assert_eq!(g.rank(1, 2), 3);
        assert_eq!(g.rank(2, 4), 4);
        assert_eq!(g.rank(3, 5), 2);
        assert_eq!(g.numerator(8).coeffs(), &[1, 0, -3, 0, 4, -2]);
    }

    #[test]
    fn hilbert_numerator_base_cases() {
        assert_eq!(hilbert_numerator(&[mono("x[1][1]*x[1][1]")], 1).coeffs(), &[1, 0, -1]);
        assert_eq!(
            hilbert_numerator(&[mono("x[1][1]"), mono("y[1]")], 2).coeffs(),
            &[1, -2, 1]
        );
        assert_eq!(hilbert_numerator(&[], 3).coeffs(), &[1]);
        assert!(hilbert_numerator(&[Monomial::one()], 3).is_zero());
        // divisible generators are dropped before recursing
        assert_eq!(
            hilbert_numerator(&[mono("y[1]"), mono("y[1]*y[2]")], 2).coeffs(),
            &[1, -1]
        );
    }

    #[test]
    fn hilbert_numerator_of_the_square_2_initial_ideal() {
        // in<g1, g2> = <x11 y1, x21 y1, x11 x22 y2> matches the Koszul numerator
        let gens = [
            mono("x[1][1]*y[1]"),
            mono("x[2][1]*y[1]"),
            mono("x[1][1]*x[2][2]*y[2]"),
        ];
        let n = hilbert_numerator(&gens, 6);
        assert_eq!(n, koszul_table(2, 2).numerator(6));
        assert_eq!(n.coeffs(), &[1, 0, -2, 0, 1]);
    }

    #[test]
    fn dimensions_from_numerators() {
        let n = hilbert_numerator(&[mono("x[1][1]*x[1][1]")], 1);
        assert_eq!(n.dimension(), 0);
        let ci = koszul_table(2, 2).numerator(6);
        assert_eq!(ci.dimension(), 4);
        assert_eq!(wide_betti_table(2).numerator(8).dimension(), 6);
        assert_eq!(HilbertNumerator::new(vec![], 5).dimension(), -1);
        assert_eq!(HilbertNumerator::new(vec![1], 5).dimension(), 5);
    }

    #[test]
    fn cm_reports_for_small_shapes() {
        let r = cm_report(&MatrixShape::square(2)).unwrap();
        assert_eq!((r.proj_dim, r.depth, r.dim, r.is_cm), (2, 4, 4, true));
        let r = cm_report(&MatrixShape::wide(2)).unwrap();
        assert_eq!((r.proj_dim, r.depth, r.dim, r.is_cm), (3, 5, 6, false));
    }

    #[test]
    fn serialization_shapes() {
        let t = koszul_table(1, 2);
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"entries": [{"i": 0, "j": 0, "rank": 1}, {"i": 1, "j": 2, "rank": 1}]})
        );
        let n = t.numerator(3);
        assert_eq!(serde_json::to_value(&n).unwrap(), serde_json::json!([1, 0, -1]));
    }
}
