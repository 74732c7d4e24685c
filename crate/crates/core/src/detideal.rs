//! The three matrix shapes and the polynomials built from them: generators
//! of the entry ideal of `X*Y`, minors on leading columns, their twisted
//! versions, the candidate Groebner families, first-syzygy coefficient
//! vectors, Laplace expansions and cofactors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, RingContext, Term, Variable};

/// The matrix `X` whose entries are indeterminates: generic square `n x n`,
/// generic symmetric `n x n` (entries folded across the diagonal), or
/// generic `(n+1) x n` with one extra row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixShape {
    Square { n: u32 },
    Symmetric { n: u32 },
    Wide { n: u32 },
}

impl MatrixShape {
    pub fn square(n: u32) -> Self {
        assert!(n >= 1);
        MatrixShape::Square { n }
    }

    pub fn symmetric(n: u32) -> Self {
        assert!(n >= 1);
        MatrixShape::Symmetric { n }
    }

    pub fn wide(n: u32) -> Self {
        assert!(n >= 1);
        MatrixShape::Wide { n }
    }

    pub fn n(&self) -> u32 {
        match *self {
            MatrixShape::Square { n } | MatrixShape::Symmetric { n } | MatrixShape::Wide { n } => n,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            MatrixShape::Square { .. } => "square",
            MatrixShape::Symmetric { .. } => "symmetric",
            MatrixShape::Wide { .. } => "wide",
        }
    }

    pub fn rows(&self) -> u32 {
        match *self {
            MatrixShape::Wide { n } => n + 1,
            _ => self.n(),
        }
    }

    pub fn cols(&self) -> u32 {
        self.n()
    }

    /// The variable at position `(i, j)`, 1-based. For the symmetric shape
    /// `entry(i, j)` and `entry(j, i)` are the same variable `x[min][max]`.
    ///
    /// Panics when the indices fall outside the shape; the public operations
    /// validate their arguments before calling this.
    pub fn entry(&self, i: u32, j: u32) -> Variable {
        assert!(
            (1..=self.rows()).contains(&i) && (1..=self.cols()).contains(&j),
            "entry ({i},{j}) out of range for {self}"
        );
        match self {
            MatrixShape::Symmetric { .. } => Variable::x(i.min(j), i.max(j)),
            _ => Variable::x(i, j),
        }
    }

    /// The distinct `x` variables of the shape, row-major.
    pub fn x_variables(&self) -> Vec<Variable> {
        match self {
            MatrixShape::Symmetric { n } => (1..=*n)
                .flat_map(|i| (i..=*n).map(move |j| Variable::x(i, j)))
                .collect(),
            _ => (1..=self.rows())
                .flat_map(|i| (1..=self.cols()).map(move |j| Variable::x(i, j)))
                .collect(),
        }
    }

    pub fn ring(&self) -> RingContext {
        RingContext::new(*self)
    }

    pub fn ring_with_elim(&self) -> RingContext {
        RingContext::with_elim(*self)
    }
}

impl fmt::Display for MatrixShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixShape::Square { n } => write!(f, "square:{n}"),
            MatrixShape::Symmetric { n } => write!(f, "symmetric:{n}"),
            MatrixShape::Wide { n } => write!(f, "wide:{n}"),
        }
    }
}

impl FromStr for MatrixShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, n) = s
            .split_once(':')
            .ok_or_else(|| Error::Shape(s.to_string()))?;
        let n: u32 = n.trim().parse().map_err(|_| Error::Shape(s.to_string()))?;
        if n == 0 {
            return Err(Error::Shape(s.to_string()));
        }
        match family.trim() {
            "square" => Ok(MatrixShape::square(n)),
            "symmetric" => Ok(MatrixShape::symmetric(n)),
            "wide" => Ok(MatrixShape::wide(n)),
            _ => Err(Error::Shape(s.to_string())),
        }
    }
}

/// A strictly increasing tuple of row indices; tuples of equal length are
/// ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowTuple(Vec<u32>);

impl RowTuple {
    pub fn new(entries: impl Into<Vec<u32>>) -> Result<Self> {
        let entries = entries.into();
        if entries.is_empty()
            || entries[0] == 0
            || entries.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::BadRowTuple);
        }
        Ok(RowTuple(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn max(&self) -> u32 {
        *self.0.last().expect("nonempty tuple")
    }

    /// All k-tuples from `1..=max`, in lexicographic order. This enumeration
    /// realizes the position bookkeeping for minors: the index of a tuple in
    /// the list is its sigma value (1-based).
    pub fn enumerate(k: u32, max: u32) -> Vec<RowTuple> {
        (1..=max)
            .combinations(k as usize)
            .map(RowTuple)
            .collect()
    }

    /// The tuple with the entry at (1-based) position `r` removed.
    pub fn without_position(&self, r: usize) -> RowTuple {
        let mut v = self.0.clone();
        v.remove(r - 1);
        RowTuple(v)
    }
}

impl fmt::Display for RowTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|e| e.to_string()).join(","))
    }
}

impl FromStr for RowTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad row tuple `{s}`")))?;
        let entries: Vec<u32> = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad row tuple `{s}`")))?;
        RowTuple::new(entries)
    }
}

/// The entries of `X*Y`: `g_i = sum_j entry(i,j)*y[j]` for every row `i`.
/// For each shape `g_i` equals the twisted minor of the single-row tuple.
pub fn generators(shape: &MatrixShape) -> Vec<Polynomial> {
    (1..=shape.rows())
        .map(|i| {
            Polynomial::from_terms((1..=shape.cols()).map(|j| {
                Term::new(
                    num_rational::BigRational::from_integer(1.into()),
                    Monomial::var(shape.entry(i, j)).mul(&Monomial::var(Variable::y(j))),
                )
            }))
        })
        .collect()
}

fn check_rows(shape: &MatrixShape, rows: &RowTuple) -> Result<()> {
    if rows.max() > shape.rows() {
        return Err(Error::IndexOutOfRange(format!(
            "row tuple {rows} exceeds the {} rows of {shape}",
            shape.rows()
        )));
    }
    Ok(())
}

/// The minor on `rows` and the column sequence `cols`, by exact cofactor
/// expansion. Columns may repeat or appear out of order; the determinant's
/// antisymmetry takes care of signs and repeats.
pub fn minor(shape: &MatrixShape, rows: &RowTuple, cols: &[u32]) -> Result<Polynomial> {
    check_rows(shape, rows)?;
    if rows.len() != cols.len() {
        return Err(Error::MinorShapeMismatch { rows: rows.len(), cols: cols.len() });
    }
    if let Some(&c) = cols.iter().find(|&&c| c == 0 || c > shape.cols()) {
        return Err(Error::IndexOutOfRange(format!(
            "column {c} exceeds the {} columns of {shape}",
            shape.cols()
        )));
    }
    let mut memo: HashMap<(Vec<u32>, usize), Polynomial> = HashMap::new();
    Ok(det_rec(shape, rows.entries(), cols, 0, &mut memo))
}

/// Expansion along the first remaining column, memoized on the surviving
/// rows (the columns are always a suffix of the original list).
fn det_rec(
    shape: &MatrixShape,
    rows: &[u32],
    cols: &[u32],
    col_start: usize,
    memo: &mut HashMap<(Vec<u32>, usize), Polynomial>,
) -> Polynomial {
    if rows.is_empty() {
        return Polynomial::one();
    }
    let key = (rows.to_vec(), col_start);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let col = cols[col_start];
    let mut acc = Polynomial::zero();
    for (p, &row) in rows.iter().enumerate() {
        let rest: Vec<u32> = rows
            .iter()
            .enumerate()
            .filter(|(q, _)| *q != p)
            .map(|(_, r)| *r)
            .collect();
        let sub = det_rec(shape, &rest, cols, col_start + 1, memo);
        let entry = Polynomial::from(shape.entry(row, col));
        let signed = if p % 2 == 0 { &entry * &sub } else { (&entry * &sub).neg() };
        acc = &acc + &signed;
    }
    memo.insert(key, acc.clone());
    acc
}

/// The minor on rows `a` and columns `1, ..., k-1, m` (so `m = k` recovers
/// the plain leading-column minor).
pub fn minor_with_column(shape: &MatrixShape, a: &RowTuple, m: u32) -> Result<Polynomial> {
    let k = a.len() as u32;
    if m < k {
        return Err(Error::ColumnBelowTupleLength { m, k });
    }
    let cols: Vec<u32> = (1..k).chain([m]).collect();
    minor(shape, a, &cols)
}

/// The leading-column minor on rows `a`: columns `1, ..., k`.
pub fn leading_minor(shape: &MatrixShape, a: &RowTuple) -> Result<Polynomial> {
    minor_with_column(shape, a, a.len() as u32)
}

/// The twisted minor on rows `a`: the sum over `m >= k` of the minor with
/// its last column swapped to `m`, weighted by `y[m]`.
pub fn twisted_minor(shape: &MatrixShape, a: &RowTuple) -> Result<Polynomial> {
    let k = a.len() as u32;
    let mut acc = Polynomial::zero();
    for m in k..=shape.cols() {
        let part = minor_with_column(shape, a, m)?;
        acc = &acc + &part.mul_term(&Term::new(
            num_rational::BigRational::from_integer(1.into()),
            Monomial::var(Variable::y(m)),
        ));
    }
    Ok(acc)
}

fn check_k(shape: &MatrixShape, k: u32) -> Result<()> {
    if k == 0 || k > shape.cols() {
        return Err(Error::IndexOutOfRange(format!(
            "k = {k} outside 1..={} for {shape}",
            shape.cols()
        )));
    }
    Ok(())
}

/// The row tuples indexing the size-`k` families, in sigma order.
pub fn row_tuples(shape: &MatrixShape, k: u32) -> Result<Vec<RowTuple>> {
    check_k(shape, k)?;
    Ok(RowTuple::enumerate(k, shape.rows()))
}

/// All k x k minors on the leading k columns, in sigma order.
pub fn column_minors(shape: &MatrixShape, k: u32) -> Result<Vec<Polynomial>> {
    row_tuples(shape, k)?
        .iter()
        .map(|a| leading_minor(shape, a))
        .collect()
}

/// The twisted versions of [`column_minors`], in the same order.
pub fn twisted_minors(shape: &MatrixShape, k: u32) -> Result<Vec<Polynomial>> {
    row_tuples(shape, k)?
        .iter()
        .map(|a| twisted_minor(shape, a))
        .collect()
}

/// The candidate Groebner family for the ideal of size-`k` twisted minors:
/// the concatenation of the twisted minors of sizes `k, k+1, ..., n`.
pub fn groebner_family(shape: &MatrixShape, k: u32) -> Result<Vec<Polynomial>> {
    check_k(shape, k)?;
    let mut out = Vec::new();
    for size in k..=shape.cols() {
        out.extend(twisted_minors(shape, size)?);
    }
    Ok(out)
}

/// First-syzygy coefficient vector for the leading-column minors of size
/// `k = |a| - 1`: entry `sigma(a minus a_r)` is `(-1)^{r+1} * entry(a_r, j)`
/// and all others vanish. The resulting combination of the minors is zero.
pub fn syzygy_coefficients(
    shape: &MatrixShape,
    j: u32,
    a: &RowTuple,
) -> Result<Vec<Polynomial>> {
    check_rows(shape, a)?;
    if a.len() < 2 {
        return Err(Error::BadRowTuple);
    }
    let k = (a.len() - 1) as u32;
    check_k(shape, k)?;
    if j == 0 || j > k {
        return Err(Error::SyzygyColumnOutOfRange { j, k });
    }
    let tuples = RowTuple::enumerate(k, shape.rows());
    let mut alpha = vec![Polynomial::zero(); tuples.len()];
    for r in 1..=a.len() {
        let dropped = a.without_position(r);
        let idx = tuples
            .binary_search(&dropped)
            .expect("subtuple occurs in the enumeration");
        let var = Polynomial::from(shape.entry(a.entries()[r - 1], j));
        alpha[idx] = if r % 2 == 1 { var } else { var.neg() };
    }
    Ok(alpha)
}

/// Laplace expansion of the minor on rows `a` along its first `k` columns:
/// returns the coefficients `beta_b` with `X^a = sum_b beta_b * X^b`, `b`
/// running over the k-subtuples of `a`. Each `beta_b` is the signed
/// complementary minor on the remaining rows and columns `k+1, ..., |a|`.
pub fn laplace_expansion(
    shape: &MatrixShape,
    a: &RowTuple,
    k: u32,
) -> Result<BTreeMap<RowTuple, Polynomial>> {
    check_rows(shape, a)?;
    let kp = a.len() as u32;
    if k == 0 || k >= kp {
        return Err(Error::IndexOutOfRange(format!(
            "laplace expansion needs 1 <= k < {kp}, got {k}"
        )));
    }
    let tail_cols: Vec<u32> = (k + 1..=kp).collect();
    let mut out = BTreeMap::new();
    for positions in (1..=a.len()).combinations(k as usize) {
        let b = RowTuple(positions.iter().map(|&p| a.entries()[p - 1]).collect());
        let comp: Vec<u32> = (1..=a.len())
            .filter(|p| !positions.contains(p))
            .map(|p| a.entries()[p - 1])
            .collect();
        let comp_minor = if comp.is_empty() {
            Polynomial::one()
        } else {
            minor(shape, &RowTuple(comp), &tail_cols)?
        };
        let pos_sum: usize = positions.iter().sum::<usize>();
        let base: usize = (1..=k as usize).sum();
        let beta = if (pos_sum + base) % 2 == 0 { comp_minor } else { comp_minor.neg() };
        out.insert(b, beta);
    }
    debug_assert!({
        let mut lhs = leading_minor(shape, a).unwrap();
        for (b, beta) in &out {
            lhs = &lhs - &(beta * &leading_minor(shape, b).unwrap());
        }
        lhs.is_zero()
    });
    Ok(out)
}

/// The cofactor of the entry at row `j`, column `i` in the leading `n x n`
/// block: `(-1)^{i+j}` times the complementary minor. For the wide shape
/// this refers to the top square block.
pub fn cofactor(shape: &MatrixShape, j: u32, i: u32) -> Result<Polynomial> {
    let n = shape.n();
    if !(1..=n).contains(&j) || !(1..=n).contains(&i) {
        return Err(Error::IndexOutOfRange(format!(
            "cofactor position ({j},{i}) outside the leading {n} x {n} block"
        )));
    }
    if n == 1 {
        return Ok(Polynomial::one());
    }
    let rows = RowTuple((1..=n).filter(|&r| r != j).collect());
    let cols: Vec<u32> = (1..=n).filter(|&c| c != i).collect();
    let m = minor(shape, &rows, &cols)?;
    Ok(if (i + j) % 2 == 0 { m } else { m.neg() })
}

/// Determinant of the leading `n x n` block.
pub fn determinant(shape: &MatrixShape) -> Polynomial {
    let n = shape.n();
    let rows = RowTuple((1..=n).collect());
    let cols: Vec<u32> = (1..=n).collect();
    minor(shape, &rows, &cols).expect("full leading block is always in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn rt(entries: &[u32]) -> RowTuple {
        RowTuple::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn shape_parsing_and_display() {
        let s: MatrixShape = "square:2".parse().unwrap();
        assert_eq!(s, MatrixShape::square(2));
        assert_eq!(s.to_string(), "square:2");
        assert_eq!("wide:3".parse::<MatrixShape>().unwrap().rows(), 4);
        assert!("cube:2".parse::<MatrixShape>().is_err());
        assert!("square:0".parse::<MatrixShape>().is_err());
        assert!("square".parse::<MatrixShape>().is_err());
    }

    #[test]
    fn row_tuple_basics() {
        assert!(RowTuple::new(vec![1, 1]).is_err());
        assert!(RowTuple::new(vec![2, 1]).is_err());
        assert!(RowTuple::new(vec![]).is_err());
        assert!(RowTuple::new(vec![0, 1]).is_err());
        let t: RowTuple = "(1,3,4,5)".parse().unwrap();
        assert_eq!(t, rt(&[1, 3, 4, 5]));
        assert_eq!(t.to_string(), "(1,3,4,5)");
        assert_eq!(t.without_position(2), rt(&[1, 4, 5]));
        // lex enumeration, matching the sigma bookkeeping
        let c2 = RowTuple::enumerate(2, 3);
        assert_eq!(c2, vec![rt(&[1, 2]), rt(&[1, 3]), rt(&[2, 3])]);
    }

    #[test]
    fn generators_of_each_shape() {
        let sq = generators(&MatrixShape::square(2));
        assert_eq!(
            sq,
            vec![
                p("x[1][1]*y[1] + x[1][2]*y[2]"),
                p("x[2][1]*y[1] + x[2][2]*y[2]"),
            ]
        );
        let sym = generators(&MatrixShape::symmetric(2));
        assert_eq!(
            sym,
            vec![
                p("x[1][1]*y[1] + x[1][2]*y[2]"),
                p("x[1][2]*y[1] + x[2][2]*y[2]"),
            ]
        );
        let wide = generators(&MatrixShape::wide(2));
        assert_eq!(wide.len(), 3);
        assert_eq!(wide[2], p("x[3][1]*y[1] + x[3][2]*y[2]"));
    }

    #[test]
    fn minors_by_cofactor_expansion() {
        let sq = MatrixShape::square(2);
        assert_eq!(
            minor(&sq, &rt(&[1, 2]), &[1, 2]).unwrap(),
            p("x[1][1]*x[2][2] - x[1][2]*x[2][1]")
        );
        // repeated column
        assert!(minor(&sq, &rt(&[1, 2]), &[2, 2]).unwrap().is_zero());
        // column swap flips the sign
        let pos = minor(&sq, &rt(&[1, 2]), &[1, 2]).unwrap();
        let neg = minor(&sq, &rt(&[1, 2]), &[2, 1]).unwrap();
        assert_eq!(pos.neg(), neg);
        // symmetric shape folds the lower triangle
        let sym = MatrixShape::symmetric(2);
        assert_eq!(
            minor(&sym, &rt(&[1, 2]), &[1, 2]).unwrap(),
            p("x[1][1]*x[2][2] - x[1][2]*x[1][2]")
        );
        // errors
        assert!(minor(&sq, &rt(&[1, 2]), &[1]).is_err());
        assert!(minor(&sq, &rt(&[1, 3]), &[1, 2]).is_err());
        assert!(minor(&sq, &rt(&[1, 2]), &[1, 3]).is_err());
    }

    #[test]
    fn minor_with_column_examples() {
        let sq2 = MatrixShape::square(2);
        assert_eq!(minor_with_column(&sq2, &rt(&[2]), 2).unwrap(), p("x[2][2]"));
        assert_eq!(
            minor_with_column(&sq2, &rt(&[1, 2]), 2).unwrap(),
            p("x[1][1]*x[2][2] - x[1][2]*x[2][1]")
        );
        let sq3 = MatrixShape::square(3);
        assert_eq!(
            minor_with_column(&sq3, &rt(&[1, 3]), 3).unwrap(),
            minor(&sq3, &rt(&[1, 3]), &[1, 3]).unwrap()
        );
        assert!(minor_with_column(&sq3, &rt(&[1, 2]), 1).is_err());
    }

    #[test]
    fn twisted_minor_examples() {
        let sq2 = MatrixShape::square(2);
        for (i, g) in generators(&sq2).iter().enumerate() {
            assert_eq!(&twisted_minor(&sq2, &rt(&[i as u32 + 1])).unwrap(), g);
        }
        assert_eq!(
            twisted_minor(&sq2, &rt(&[1, 2])).unwrap(),
            p("x[1][1]*x[2][2]*y[2] - x[1][2]*x[2][1]*y[2]")
        );
        // full tuple: only the last column term survives
        let sq3 = MatrixShape::square(3);
        assert_eq!(
            twisted_minor(&sq3, &rt(&[1, 2, 3])).unwrap(),
            &determinant(&sq3) * &p("y[3]")
        );
    }

    #[test]
    fn families_and_their_sizes() {
        let sq5 = MatrixShape::square(5);
        let s3 = column_minors(&sq5, 3).unwrap();
        assert_eq!(s3.len(), 10);
        // first and last entries of the sigma enumeration
        let tuples = row_tuples(&sq5, 3).unwrap();
        assert_eq!(tuples[0], rt(&[1, 2, 3]));
        assert_eq!(tuples[9], rt(&[3, 4, 5]));

        let sq2 = MatrixShape::square(2);
        let g1 = groebner_family(&sq2, 1).unwrap();
        assert_eq!(g1.len(), 3);
        assert_eq!(g1[2], p("x[1][1]*x[2][2]*y[2] - x[1][2]*x[2][1]*y[2]"));

        let wide2 = MatrixShape::wide(2);
        assert_eq!(groebner_family(&wide2, 1).unwrap().len(), 3 + 3);
        assert!(groebner_family(&wide2, 3).is_err());
    }

    #[test]
    fn syzygy_coefficients_worked_example() {
        // k = 3, j = 2, a = (1,3,4,5) over the 5x5 square shape
        let sq5 = MatrixShape::square(5);
        let alpha = syzygy_coefficients(&sq5, 2, &rt(&[1, 3, 4, 5])).unwrap();
        let expected: Vec<Polynomial> = vec![
            p("0"),
            p("0"),
            p("0"),
            p("-1*x[5][2]"),
            p("x[4][2]"),
            p("-1*x[3][2]"),
            p("0"),
            p("0"),
            p("0"),
            p("x[1][2]"),
        ];
        assert_eq!(alpha, expected);

        // n = 2, k = 1, j = 1: alpha = (-x21, x11) and the combination vanishes
        let sq2 = MatrixShape::square(2);
        let alpha = syzygy_coefficients(&sq2, 1, &rt(&[1, 2])).unwrap();
        assert_eq!(alpha, vec![p("-1*x[2][1]"), p("x[1][1]")]);
        let minors = column_minors(&sq2, 1).unwrap();
        let comb = alpha
            .iter()
            .zip(&minors)
            .fold(Polynomial::zero(), |acc, (c, m)| &acc + &(c * m));
        assert!(comb.is_zero());

        assert!(syzygy_coefficients(&sq2, 2, &rt(&[1, 2])).is_err());
    }

    #[test]
    fn laplace_expansion_examples() {
        let sq2 = MatrixShape::square(2);
        let beta = laplace_expansion(&sq2, &rt(&[1, 2]), 1).unwrap();
        assert_eq!(beta[&rt(&[1])], p("x[2][2]"));
        assert_eq!(beta[&rt(&[2])], p("-1*x[1][2]"));

        // the identity is asserted inside laplace_expansion; spot-check the
        // column-swapped combination from the 3-column shape
        let sq3 = MatrixShape::square(3);
        let beta = laplace_expansion(&sq3, &rt(&[1, 2]), 1).unwrap();
        let combo = [1u32, 2]
            .iter()
            .map(|&b| {
                let b = rt(&[b]);
                let m = minor_with_column(&sq3, &b, 3).unwrap();
                &beta[&b] * &m
            })
            .fold(Polynomial::zero(), |acc, q| &acc + &q);
        assert_eq!(combo, minor(&sq3, &rt(&[1, 2]), &[3, 2]).unwrap());

        assert!(laplace_expansion(&sq3, &rt(&[1, 2]), 2).is_err());
    }

    #[test]
    fn twisted_single_row_tuples_are_the_generators() {
        for n in 1..=5 {
            for shape in [
                MatrixShape::square(n),
                MatrixShape::symmetric(n),
                MatrixShape::wide(n),
            ] {
                let gens = generators(&shape);
                for i in 1..=shape.rows() {
                    assert_eq!(
                        twisted_minor(&shape, &rt(&[i])).unwrap(),
                        gens[(i - 1) as usize],
                        "{shape} row {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn minors_lead_with_their_diagonal() {
        use crate::poly::MonomialOrder;
        for n in 2..=4 {
            for shape in [
                MatrixShape::square(n),
                MatrixShape::symmetric(n),
                MatrixShape::wide(n),
            ] {
                let ord = MonomialOrder::y_lex(&shape);
                for k in 1..=n {
                    for a in RowTuple::enumerate(k, shape.rows()) {
                        let diag = Monomial::from_exponents(
                            a.entries()
                                .iter()
                                .enumerate()
                                .map(|(t, &row)| (shape.entry(row, t as u32 + 1), 1)),
                        );
                        let m = leading_minor(&shape, &a).unwrap();
                        assert_eq!(m.leading_term(&ord).unwrap().mono, diag, "{shape} {a}");
                        let tw = twisted_minor(&shape, &a).unwrap();
                        assert_eq!(
                            tw.leading_term(&ord).unwrap().mono,
                            diag.mul(&Monomial::var(Variable::y(k))),
                            "{shape} {a}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn laplace_identity_holds_everywhere_small() {
        for n in 2..=4 {
            for shape in [
                MatrixShape::square(n),
                MatrixShape::symmetric(n),
                MatrixShape::wide(n),
            ] {
                for kp in 2..=n {
                    for a in RowTuple::enumerate(kp, shape.rows()) {
                        let full = leading_minor(&shape, &a).unwrap();
                        for k in 1..kp {
                            let beta = laplace_expansion(&shape, &a, k).unwrap();
                            let mut acc = Polynomial::zero();
                            for (b, coeff) in &beta {
                                acc = &acc + &(coeff * &leading_minor(&shape, b).unwrap());
                            }
                            assert_eq!(acc, full, "{shape} a={a} k={k}");
                            // swapping the k-th column through the expansion
                            for i in k..=n {
                                let mut swapped = Polynomial::zero();
                                for (b, coeff) in &beta {
                                    swapped = &swapped
                                        + &(coeff * &minor_with_column(&shape, b, i).unwrap());
                                }
                                let cols: Vec<u32> =
                                    (1..k).chain([i]).chain(k + 1..=kp).collect();
                                let direct = minor(&shape, &a, &cols).unwrap();
                                assert_eq!(swapped, direct, "{shape} a={a} k={k} i={i}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cofactor_examples() {
        let sq2 = MatrixShape::square(2);
        assert_eq!(cofactor(&sq2, 1, 1).unwrap(), p("x[2][2]"));
        assert_eq!(cofactor(&sq2, 2, 1).unwrap(), p("-1*x[1][2]"));
        let sq3 = MatrixShape::square(3);
        assert_eq!(
            cofactor(&sq3, 1, 1).unwrap(),
            p("x[2][2]*x[3][3] - x[2][3]*x[3][2]")
        );
        // wide shapes use the top square block
        let wide2 = MatrixShape::wide(2);
        assert_eq!(cofactor(&wide2, 1, 1).unwrap(), p("x[2][2]"));
        assert!(cofactor(&wide2, 3, 1).is_err());
        assert_eq!(determinant(&wide2), p("x[1][1]*x[2][2] - x[1][2]*x[2][1]"));
    }
}
