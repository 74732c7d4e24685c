//! Named verification suites over a matrix shape, with machine-readable
//! reports.
//!
//! Every suite decomposes into independent checks; a check either passes or
//! fails with a counterexample witness in the polynomial text grammar.
//! Checks may run concurrently (capped by [`RunOptions::threads`]), but the
//! report is always ordered by check name.

use std::collections::VecDeque;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::Serialize;

use crate::betti::{hilbert_numerator, koszul_table, northcott_table, wide_betti_table};
use crate::detideal::{
    cofactor, column_minors, determinant, generators, groebner_family, laplace_expansion, minor,
    minor_with_column, row_tuples, twisted_minors, MatrixShape, RowTuple,
};
use crate::eliminate::colon;
use crate::error::{Error, Result};
use crate::poly::groebner::{auto_reduce, groebner_witness, is_reduced, reduce, reduced_gb};
use crate::poly::ideal::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// The computed reduced basis of each twisted-minor ideal equals the
    /// predicted family.
    Gb,
    /// The plain leading-column minors form a basis at every size.
    MinorsGb,
    /// Each predicted family is itself a reduced basis.
    Reduced,
    /// The generators lead with coprime diagonal terms under the diagonal
    /// order and form a basis there.
    RegSeq,
    /// First-syzygy coefficient vectors annihilate the minors and their
    /// twisted combinations descend one level.
    Syzygy,
    /// S-pair remainders after division by one family level descend to the
    /// next.
    SpairDescent,
    /// Laplace expansion coefficients and the column-swapped identity.
    Laplace,
    /// The determinant-times-column identity with cofactor coefficients.
    Cofactor,
    /// The two colon-ideal equalities.
    Colon,
    /// Predicted Betti tables against Hilbert numerators of computed initial
    /// ideals.
    Hilbert,
    All,
}

impl Suite {
    pub const ALL_NAMES: &'static [&'static str] = &[
        "gb",
        "sk-gb",
        "reduced",
        "regseq",
        "syzygy",
        "spair-descent",
        "laplace",
        "cofactor",
        "colon",
        "hilbert",
        "all",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Gb => "gb",
            Suite::MinorsGb => "sk-gb",
            Suite::Reduced => "reduced",
            Suite::RegSeq => "regseq",
            Suite::Syzygy => "syzygy",
            Suite::SpairDescent => "spair-descent",
            Suite::Laplace => "laplace",
            Suite::Cofactor => "cofactor",
            Suite::Colon => "colon",
            Suite::Hilbert => "hilbert",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gb" => Ok(Suite::Gb),
            "sk-gb" => Ok(Suite::MinorsGb),
            "reduced" => Ok(Suite::Reduced),
            "regseq" => Ok(Suite::RegSeq),
            "syzygy" => Ok(Suite::Syzygy),
            "spair-descent" => Ok(Suite::SpairDescent),
            "laplace" => Ok(Suite::Laplace),
            "cofactor" => Ok(Suite::Cofactor),
            "colon" => Ok(Suite::Colon),
            "hilbert" => Ok(Suite::Hilbert),
            "all" => Ok(Suite::All),
            other => Err(Error::Unsupported(format!(
                "unknown suite `{other}`; expected one of {}",
                Suite::ALL_NAMES.join(", ")
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u128,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub shape: String,
    pub n: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub report: Report,
    /// Set when the deadline cut the run short; remaining checks are absent
    /// from the report.
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// 0 or 1 runs single-threaded.
    pub threads: usize,
    pub deadline: Option<Instant>,
}

/// A pending check: pass (`Ok(None)`), fail with witness (`Ok(Some(_))`), or
/// an internal error (reported as a failure).
type JobFn = Box<dyn FnOnce() -> Result<Option<String>> + Send>;

struct Job {
    name: String,
    run: JobFn,
}

fn job(name: String, run: impl FnOnce() -> Result<Option<String>> + Send + 'static) -> Job {
    Job { name, run: Box::new(run) }
}

pub fn run_suite(suite: Suite, shape: &MatrixShape, opts: &RunOptions) -> Result<SuiteRun> {
    let jobs = suite_jobs(suite, *shape)?;
    let (checks, budget_exceeded) = run_jobs(jobs, opts);
    Ok(SuiteRun {
        report: Report {
            suite: suite.name().to_string(),
            shape: shape.family().to_string(),
            n: shape.n(),
            checks,
        },
        budget_exceeded,
    })
}

fn suite_jobs(suite: Suite, shape: MatrixShape) -> Result<Vec<Job>> {
    match suite {
        Suite::Gb => Ok(gb_jobs(shape)),
        Suite::MinorsGb => Ok(minors_gb_jobs(shape)),
        Suite::Reduced => Ok(reduced_jobs(shape)),
        Suite::RegSeq => {
            if matches!(shape, MatrixShape::Wide { .. }) {
                return Err(Error::Unsupported(
                    "the regseq suite applies to square and symmetric shapes".into(),
                ));
            }
            Ok(regseq_jobs(shape))
        }
        Suite::Syzygy => Ok(syzygy_jobs(shape)),
        Suite::SpairDescent => Ok(spair_descent_jobs(shape)),
        Suite::Laplace => Ok(laplace_jobs(shape)),
        Suite::Cofactor => Ok(cofactor_jobs(shape)),
        Suite::Colon => Ok(colon_jobs(shape)),
        Suite::Hilbert => Ok(hilbert_jobs(shape)),
        Suite::All => {
            let mut jobs = gb_jobs(shape);
            jobs.extend(minors_gb_jobs(shape));
            jobs.extend(reduced_jobs(shape));
            if !matches!(shape, MatrixShape::Wide { .. }) {
                jobs.extend(regseq_jobs(shape));
            }
            jobs.extend(syzygy_jobs(shape));
            jobs.extend(spair_descent_jobs(shape));
            jobs.extend(laplace_jobs(shape));
            jobs.extend(cofactor_jobs(shape));
            jobs.extend(colon_jobs(shape));
            jobs.extend(hilbert_jobs(shape));
            Ok(jobs)
        }
    }
}

fn run_jobs(jobs: Vec<Job>, opts: &RunOptions) -> (Vec<Check>, bool) {
    let deadline = opts.deadline;
    let out_of_time = || deadline.is_some_and(|d| Instant::now() >= d);
    let mut checks: Vec<Check>;
    let budget_exceeded;

    if opts.threads <= 1 {
        checks = Vec::with_capacity(jobs.len());
        let mut cut = false;
        crate::poly::groebner::set_thread_deadline(deadline);
        for j in jobs {
            if out_of_time() {
                cut = true;
                break;
            }
            match execute(j) {
                Some(check) => checks.push(check),
                None => {
                    cut = true;
                    break;
                }
            }
        }
        crate::poly::groebner::set_thread_deadline(None);
        budget_exceeded = cut;
    } else {
        let queue: Mutex<VecDeque<Job>> = Mutex::new(jobs.into());
        let results: Mutex<Vec<Check>> = Mutex::new(Vec::new());
        let cut = AtomicBool::new(false);
        std::thread::scope(|scope| {
            for _ in 0..opts.threads {
                scope.spawn(|| {
                    crate::poly::groebner::set_thread_deadline(deadline);
                    loop {
                        if out_of_time() {
                            cut.store(true, AtomicOrdering::Relaxed);
                            break;
                        }
                        let next = queue.lock().unwrap().pop_front();
                        match next {
                            Some(j) => match execute(j) {
                                Some(check) => results.lock().unwrap().push(check),
                                None => {
                                    cut.store(true, AtomicOrdering::Relaxed);
                                    break;
                                }
                            },
                            None => break,
                        }
                    }
                });
            }
        });
        checks = results.into_inner().unwrap();
        budget_exceeded = cut.load(AtomicOrdering::Relaxed);
    }

    checks.sort_by(|a, b| a.name.cmp(&b.name));
    (checks, budget_exceeded)
}

/// `None` means the deadline fired inside the check; the partial result is
/// dropped rather than reported as a failure.
fn execute(j: Job) -> Option<Check> {
    let start = Instant::now();
    let (status, witness) = match (j.run)() {
        Ok(None) => ("pass", None),
        Ok(Some(w)) => ("fail", Some(w)),
        Err(Error::BudgetExceeded) => return None,
        Err(e) => ("fail", Some(format!("error: {e}"))),
    };
    Some(Check {
        name: j.name,
        status: status.to_string(),
        witness,
        millis: start.elapsed().as_millis(),
    })
}

fn order_b(shape: &MatrixShape) -> MonomialOrder {
    MonomialOrder::y_lex(shape)
}

fn combination(coeffs: &[Polynomial], polys: &[Polynomial]) -> Polynomial {
    coeffs
        .iter()
        .zip(polys)
        .fold(Polynomial::zero(), |acc, (c, p)| &acc + &(c * p))
}

fn initial_monomials(basis: &[Polynomial], ord: &MonomialOrder) -> Result<Vec<Monomial>> {
    basis.iter().map(|g| Ok(g.leading_term(ord)?.mono)).collect()
}

// ---------------------------------------------------------------------------
// gb: reduced basis of each twisted-minor ideal equals the predicted family.

fn gb_jobs(shape: MatrixShape) -> Vec<Job> {
    (1..=shape.cols())
        .map(|k| {
            job(format!("gb.k={k}"), move || {
                let ord = order_b(&shape);
                let computed = reduced_gb(&twisted_minors(&shape, k)?, &ord)?;
                let predicted = auto_reduce(&groebner_family(&shape, k)?, &ord)?;
                if computed == predicted {
                    return Ok(None);
                }
                let witness = first_difference(&computed, &predicted);
                Ok(Some(witness))
            })
        })
        .collect()
}

fn first_difference(computed: &[Polynomial], predicted: &[Polynomial]) -> String {
    if computed.len() != predicted.len() {
        return format!(
            "basis sizes differ: computed {} vs predicted {}",
            computed.len(),
            predicted.len()
        );
    }
    for (c, p) in computed.iter().zip(predicted) {
        if c != p {
            return format!("computed {c} vs predicted {p}");
        }
    }
    "sequences differ".to_string()
}

// ---------------------------------------------------------------------------
// sk-gb: the plain leading-column minors form a basis at every size.

fn minors_gb_jobs(shape: MatrixShape) -> Vec<Job> {
    (1..=shape.cols())
        .map(|k| {
            job(format!("sk-gb.k={k}"), move || {
                let ord = order_b(&shape);
                let minors = column_minors(&shape, k)?;
                let tuples = row_tuples(&shape, k)?;
                match groebner_witness(&minors, &ord)? {
                    None => Ok(None),
                    Some(f) => Ok(Some(format!(
                        "S-pair {} x {} leaves remainder {}",
                        tuples[f.i], tuples[f.j], f.remainder
                    ))),
                }
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// reduced: each predicted family is itself a reduced basis.

fn reduced_jobs(shape: MatrixShape) -> Vec<Job> {
    let mut jobs = Vec::new();
    for k in 1..=shape.cols() {
        jobs.push(job(format!("reduced.k={k}.groebner"), move || {
            let ord = order_b(&shape);
            let family = groebner_family(&shape, k)?;
            match groebner_witness(&family, &ord)? {
                None => Ok(None),
                Some(f) => Ok(Some(format!(
                    "S-pair ({}, {}) leaves remainder {}",
                    family[f.i], family[f.j], f.remainder
                ))),
            }
        }));
        jobs.push(job(format!("reduced.k={k}.auto-reduced"), move || {
            let ord = order_b(&shape);
            let family = groebner_family(&shape, k)?;
            if is_reduced(&family, &ord)? {
                Ok(None)
            } else {
                Ok(Some("family is not monic and auto-reduced".into()))
            }
        }));
    }
    jobs
}

// ---------------------------------------------------------------------------
// regseq: diagonal leading terms, pairwise coprime, basis under the
// diagonal-first order.

fn regseq_jobs(shape: MatrixShape) -> Vec<Job> {
    vec![
        job("regseq.leading-terms".into(), move || {
            let ord = MonomialOrder::diag_lex(&shape);
            let gens = generators(&shape);
            let mut lms = Vec::new();
            for (i, g) in gens.iter().enumerate() {
                let i = i as u32 + 1;
                let lt = g.leading_term(&ord)?;
                let expected = Monomial::var(shape.entry(i, i)).mul(&Monomial::var(Variable::y(i)));
                if lt.mono != expected || !num_traits::One::is_one(&lt.coeff) {
                    return Ok(Some(format!(
                        "generator {i} leads with {} instead of {expected}",
                        lt.mono
                    )));
                }
                lms.push(lt.mono);
            }
            for i in 0..lms.len() {
                for j in 0..i {
                    if !lms[i].is_coprime(&lms[j]) {
                        return Ok(Some(format!(
                            "leading terms {} and {} share a variable",
                            lms[j], lms[i]
                        )));
                    }
                }
            }
            Ok(None)
        }),
        job("regseq.groebner".into(), move || {
            let ord = MonomialOrder::diag_lex(&shape);
            let gens = generators(&shape);
            match groebner_witness(&gens, &ord)? {
                None => Ok(None),
                Some(f) => Ok(Some(format!(
                    "S-pair ({}, {}) leaves remainder {}",
                    gens[f.i], gens[f.j], f.remainder
                ))),
            }
        }),
    ]
}

// ---------------------------------------------------------------------------
// syzygy: the coefficient vectors annihilate the minors exactly, and their
// twisted combinations land one family level deeper.

fn syzygy_jobs(shape: MatrixShape) -> Vec<Job> {
    let n = shape.cols();
    let max_k = n.saturating_sub(1).min(3);
    (1..=max_k)
        .map(|k| {
            job(format!("syzygy.k={k}"), move || {
                let ord = order_b(&shape);
                let minors = column_minors(&shape, k)?;
                let twisted = twisted_minors(&shape, k)?;
                let deeper = Ideal::new(twisted_minors(&shape, k + 1)?);
                for a in RowTuple::enumerate(k + 1, shape.rows()) {
                    for j in 1..=k {
                        let alpha = crate::detideal::syzygy_coefficients(&shape, j, &a)?;
                        let plain = combination(&alpha, &minors);
                        if !plain.is_zero() {
                            return Ok(Some(format!(
                                "alpha(j={j}, a={a}) combines the minors to {plain}"
                            )));
                        }
                        let lifted = combination(&alpha, &twisted);
                        if !deeper.member(&lifted, &ord)? {
                            return Ok(Some(format!(
                                "alpha(j={j}, a={a}) lifts outside the next level: {lifted}"
                            )));
                        }
                    }
                }
                Ok(None)
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// spair-descent: remainders of S-pairs within and across family levels,
// after division by the lower level, belong to the next level's ideal.

fn spair_descent_jobs(shape: MatrixShape) -> Vec<Job> {
    let n = shape.cols();
    let mut jobs = Vec::new();
    for k in 1..=n {
        // Ideal of the next level, shared by the jobs for this k. The zero
        // ideal closes the chain at the top.
        let deeper = Arc::new(if k < n {
            twisted_minors(&shape, k + 1).map(Ideal::new)
        } else {
            Ok(Ideal::new([]))
        });
        for kp in k..=n {
            let deeper = Arc::clone(&deeper);
            jobs.push(job(format!("spair-descent.k={k}.kp={kp}"), move || {
                let deeper = match deeper.as_ref() {
                    Ok(ideal) => ideal,
                    Err(e) => return Err(e.clone()),
                };
                let ord = order_b(&shape);
                let lower = twisted_minors(&shape, k)?;
                let upper = twisted_minors(&shape, kp)?;
                let pairs: Vec<(usize, usize)> = if k == kp {
                    (0..lower.len())
                        .flat_map(|j| (0..j).map(move |i| (i, j)))
                        .collect()
                } else {
                    (0..upper.len())
                        .flat_map(|i| (0..lower.len()).map(move |j| (i, j)))
                        .collect()
                };
                for (i, j) in pairs {
                    let s = crate::poly::groebner::s_polynomial(&upper[i], &lower[j], &ord)?;
                    if s.is_zero() {
                        continue;
                    }
                    let rem = reduce(&s, &lower, &ord)?.remainder;
                    if !deeper.member(&rem, &ord)? {
                        return Ok(Some(format!(
                            "S({}, {}) leaves remainder {rem} outside the next level",
                            upper[i], lower[j]
                        )));
                    }
                }
                Ok(None)
            }));
        }
    }
    jobs
}

// ---------------------------------------------------------------------------
// laplace: expansion coefficients reproduce the minor, and the column-swap
// identity holds for every swapped column.

fn laplace_jobs(shape: MatrixShape) -> Vec<Job> {
    let n = shape.cols();
    let mut jobs = Vec::new();
    for kp in 2..=n {
        jobs.push(job(format!("laplace.kp={kp}"), move || {
            for a in RowTuple::enumerate(kp, shape.rows()) {
                let full = crate::detideal::leading_minor(&shape, &a)?;
                for k in 1..kp {
                    let beta = laplace_expansion(&shape, &a, k)?;
                    let mut expanded = Polynomial::zero();
                    for (b, coeff) in &beta {
                        expanded = &expanded + &(coeff * &crate::detideal::leading_minor(&shape, b)?);
                    }
                    if expanded != full {
                        return Ok(Some(format!(
                            "expansion of rows {a} along {k} columns gives {expanded}"
                        )));
                    }
                    for i in k..=n {
                        let mut swapped = Polynomial::zero();
                        for (b, coeff) in &beta {
                            swapped = &swapped + &(coeff * &minor_with_column(&shape, b, i)?);
                        }
                        let cols: Vec<u32> = (1..k).chain([i]).chain(k + 1..=kp).collect();
                        let direct = minor(&shape, &a, &cols)?;
                        if swapped != direct {
                            return Ok(Some(format!(
                                "swapped expansion of rows {a} (k={k}, column {i}) gives {swapped}, minor is {direct}"
                            )));
                        }
                    }
                }
            }
            Ok(None)
        }));
    }
    jobs
}

// ---------------------------------------------------------------------------
// cofactor: det(X) * y_i = sum_j cofactor(j,i) * g_j over the leading block.

fn cofactor_jobs(shape: MatrixShape) -> Vec<Job> {
    let n = shape.n();
    (1..=n)
        .map(|i| {
            job(format!("cofactor.i={i}"), move || {
                let gens = generators(&shape);
                let det = determinant(&shape);
                let lhs = &det * &Polynomial::from(Variable::y(i));
                let mut rhs = Polynomial::zero();
                for j in 1..=n {
                    rhs = &rhs + &(&cofactor(&shape, j, i)? * &gens[(j - 1) as usize]);
                }
                if lhs == rhs {
                    Ok(None)
                } else {
                    Ok(Some(format!("identity fails: lhs - rhs = {}", &lhs - &rhs)))
                }
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// colon: (I : det) is the column-variable ideal, and in the one-extra-row
// ring, (I : g_extra) adds exactly the determinant.

fn colon_jobs(shape: MatrixShape) -> Vec<Job> {
    let mut jobs = Vec::new();
    jobs.push(job("colon.determinant".into(), move || {
        let ord = order_b(&shape);
        let n = shape.n();
        let gens = generators(&shape);
        let ideal = Ideal::new(gens[..n as usize].to_vec());
        let computed = colon(&ideal, &determinant(&shape), &ord)?;
        let expected = Ideal::new((1..=n).map(|j| Polynomial::from(Variable::y(j))));
        if computed.equal(&expected, &ord)? {
            Ok(None)
        } else {
            Ok(Some(format!(
                "colon by the determinant has basis {:?}",
                computed
                    .reduced_basis(&ord)?
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
            )))
        }
    }));
    if !matches!(shape, MatrixShape::Symmetric { .. }) {
        jobs.push(job("colon.extra-generator".into(), move || {
            let wide = MatrixShape::wide(shape.n());
            let ord = order_b(&wide);
            let gens = generators(&wide);
            let n = wide.n() as usize;
            let ideal = Ideal::new(gens[..n].to_vec());
            let computed = colon(&ideal, &gens[n], &ord)?;
            let expected = ideal.plus([determinant(&wide)]);
            if computed.equal(&expected, &ord)? {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "colon by the extra generator has basis {:?}",
                    computed
                        .reduced_basis(&ord)?
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                )))
            }
        }));
    }
    jobs
}

// ---------------------------------------------------------------------------
// hilbert: alternating sums of the predicted tables equal the Hilbert
// numerators of the computed initial ideals.

fn hilbert_jobs(shape: MatrixShape) -> Vec<Job> {
    let n = shape.n();
    let numvars = shape.ring().num_vars();
    let mut jobs = Vec::new();
    jobs.push(job("hilbert.generators".into(), move || {
        let ord = order_b(&shape);
        let predicted = match shape {
            MatrixShape::Wide { n } => wide_betti_table(n),
            _ => koszul_table(n, 2),
        }
        .numerator(numvars);
        let basis = reduced_gb(&generators(&shape), &ord)?;
        let actual = hilbert_numerator(&initial_monomials(&basis, &ord)?, numvars);
        if predicted == actual {
            Ok(None)
        } else {
            Ok(Some(format!(
                "table numerator {:?} vs initial-ideal numerator {:?}",
                predicted.coeffs(),
                actual.coeffs()
            )))
        }
    }));
    if matches!(shape, MatrixShape::Square { .. }) {
        jobs.push(job("hilbert.northcott".into(), move || {
            let ord = order_b(&shape);
            let predicted = northcott_table(n).numerator(numvars);
            let mut gens = generators(&shape);
            let det = determinant(&shape);
            // The terminal cancellation in the cone rests on the determinant
            // lying outside the generator ideal; the numerator alone cannot
            // see a cancelled pair, so check the membership directly.
            if Ideal::new(gens.clone()).member(&det, &ord)? {
                return Ok(Some(
                    "determinant lies in the generator ideal; the cone cancellation is wrong"
                        .into(),
                ));
            }
            gens.push(det);
            let basis = reduced_gb(&gens, &ord)?;
            let actual = hilbert_numerator(&initial_monomials(&basis, &ord)?, numvars);
            if predicted == actual {
                Ok(None)
            } else {
                Ok(Some(format!(
                    "table numerator {:?} vs initial-ideal numerator {:?}",
                    predicted.coeffs(),
                    actual.coeffs()
                )))
            }
        }));
    }
    jobs
}
