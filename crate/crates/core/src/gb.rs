//! Binomial Buchberger completion: reduced Gröbner bases of lattice ideals
//! under weight-plus-lex term orders, plus the seeded random-order sampler
//! that measures how much of the Graver basis the sampled reduced bases
//! cover.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graver::{graver, GraverBasis};
use crate::par::{self, Parallelism};
use crate::scroll::{Binomial, PointConfig};
use crate::{Error, Result};

/// Weight vector plus a fixed larger-first lexicographic tie-break; a total
/// order on monomials, and a term order once weights are nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<i64>,
}

impl TermOrder {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::InvalidSpec("term order weights must be nonnegative".into()));
        }
        Ok(TermOrder { weights })
    }

    pub fn all_ones(n: usize) -> Self {
        TermOrder { weights: vec![1; n] }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Weighted degree first, then lexicographic with larger entries first.
    /// Equal only for identical exponent vectors.
    pub fn compare(&self, a: &[i64], b: &[i64]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let wa: i128 = self.weights.iter().zip(a).map(|(&w, &e)| w as i128 * e as i128).sum();
        let wb: i128 = self.weights.iter().zip(b).map(|(&w, &e)| w as i128 * e as i128).sum();
        match wa.cmp(&wb) {
            Ordering::Equal => a.cmp(b),
            other => other,
        }
    }
}

/// A binomial with its leading monomial marked; the two monomials may share
/// support during intermediate computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedBinomial {
    lead: Vec<i64>,
    trail: Vec<i64>,
}

impl MarkedBinomial {
    pub fn lead(&self) -> &[i64] {
        &self.lead
    }

    pub fn trail(&self) -> &[i64] {
        &self.trail
    }

    /// Exponent vector `lead - trail`.
    pub fn vector(&self) -> Vec<i64> {
        self.lead.iter().zip(&self.trail).map(|(&l, &t)| l - t).collect()
    }

    /// Degree of the leading monomial.
    pub fn degree(&self) -> usize {
        self.lead.iter().sum::<i64>() as usize
    }

    /// Conversion to the disjoint-support representation; fails when the
    /// sides share a variable.
    pub fn as_binomial(&self) -> Result<Binomial> {
        if self.lead.iter().zip(&self.trail).any(|(&l, &t)| l > 0 && t > 0) {
            return Err(Error::Integrity("marked binomial sides share support".into()));
        }
        Binomial::new(self.lead.clone(), self.trail.clone())
    }
}

fn make_marked(p: Vec<i64>, q: Vec<i64>, order: &TermOrder) -> Option<MarkedBinomial> {
    match order.compare(&p, &q) {
        Ordering::Greater => Some(MarkedBinomial { lead: p, trail: q }),
        Ordering::Less => Some(MarkedBinomial { lead: q, trail: p }),
        Ordering::Equal => None,
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x <= y)
}

/// The unique reduced Gröbner basis for a term order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedGB {
    order: TermOrder,
    elements: Vec<MarkedBinomial>,
    config: Option<PointConfig>,
}

impl ReducedGB {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Elements sorted ascending by leading monomial.
    pub fn elements(&self) -> &[MarkedBinomial] {
        &self.elements
    }

    pub fn config(&self) -> Option<&PointConfig> {
        self.config.as_ref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.elements.iter().map(MarkedBinomial::degree).max()
    }
}

/// Full normal form: rewrites the lead while some basis lead divides it,
/// then the trail, scanning the basis in order. Returns `None` on zero.
fn normal_form_marked(
    mut b: MarkedBinomial,
    basis: &[MarkedBinomial],
    order: &TermOrder,
) -> Option<MarkedBinomial> {
    'outer: loop {
        for g in basis {
            if divides(&g.lead, &b.lead) {
                let new_term: Vec<i64> = b
                    .lead
                    .iter()
                    .zip(&g.lead)
                    .zip(&g.trail)
                    .map(|((&t, &gl), &gt)| t - gl + gt)
                    .collect();
                b = make_marked(new_term, b.trail, order)?;
                continue 'outer;
            }
        }
        for g in basis {
            if divides(&g.lead, &b.trail) {
                let new_trail: Vec<i64> = b
                    .trail
                    .iter()
                    .zip(&g.lead)
                    .zip(&g.trail)
                    .map(|((&t, &gl), &gt)| t - gl + gt)
                    .collect();
                if new_trail == b.lead {
                    return None;
                }
                b.trail = new_trail;
                continue 'outer;
            }
        }
        return Some(b);
    }
}

/// Public normal form on marked binomials.
pub fn normal_form(
    b: &MarkedBinomial,
    basis: &[MarkedBinomial],
    order: &TermOrder,
) -> Option<MarkedBinomial> {
    normal_form_marked(b.clone(), basis, order)
}

/// Marks a plain binomial for an order.
pub fn mark(b: &Binomial, order: &TermOrder) -> MarkedBinomial {
    make_marked(b.plus().to_vec(), b.minus().to_vec(), order)
        .expect("a binomial has distinct sides")
}

/// Buchberger completion and inter-reduction over binomial generators,
/// homogeneous with respect to the all-ones grading. S-pairs with coprime
/// leading terms are skipped.
pub fn buchberger(gens: &[Binomial], order: &TermOrder) -> Result<ReducedGB> {
    let n = match gens.first() {
        Some(g) => g.plus().len(),
        None => {
            return Ok(ReducedGB { order: order.clone(), elements: Vec::new(), config: None })
        }
    };
    if order.weights.len() != n {
        return Err(Error::Dimension(format!(
            "order on {} variables for binomials in {}",
            order.weights.len(),
            n
        )));
    }
    for g in gens {
        if g.degree_plus() != g.degree_minus() {
            return Err(Error::Inhomogeneous);
        }
    }

    let mut basis: Vec<MarkedBinomial> = Vec::new();
    for g in gens {
        let m = mark(g, order);
        if !basis.contains(&m) {
            basis.push(m);
        }
    }

    let mut i = 1;
    while i < basis.len() {
        for j in 0..i {
            let (fi, fj) = (&basis[i], &basis[j]);
            // coprime leading terms never yield a new element
            if fi.lead.iter().zip(&fj.lead).all(|(&a, &b)| a.min(b) == 0) {
                continue;
            }
            let gamma: Vec<i64> =
                fi.lead.iter().zip(&fj.lead).map(|(&a, &b)| a.max(b)).collect();
            let t1: Vec<i64> = gamma
                .iter()
                .zip(&fj.lead)
                .zip(&fj.trail)
                .map(|((&g, &l), &t)| g - l + t)
                .collect();
            let t2: Vec<i64> = gamma
                .iter()
                .zip(&fi.lead)
                .zip(&fi.trail)
                .map(|((&g, &l), &t)| g - l + t)
                .collect();
            let Some(spair) = make_marked(t1, t2, order) else { continue };
            if let Some(nf) = normal_form_marked(spair, &basis, order) {
                basis.push(nf);
            }
        }
        i += 1;
    }

    // minimal generators of the initial ideal
    basis.sort_by(|a, b| order.compare(&a.lead, &b.lead).then_with(|| a.trail.cmp(&b.trail)));
    let mut minimal: Vec<MarkedBinomial> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h.lead, &g.lead)) {
            minimal.push(g);
        }
    }
    // tail reduction against the minimal set
    let leads: Vec<(Vec<i64>, Vec<i64>)> =
        minimal.iter().map(|g| (g.lead.clone(), g.trail.clone())).collect();
    for g in &mut minimal {
        'tail: loop {
            for (hl, ht) in &leads {
                if hl == &g.lead {
                    continue;
                }
                if divides(hl, &g.trail) {
                    g.trail = g
                        .trail
                        .iter()
                        .zip(hl)
                        .zip(ht)
                        .map(|((&t, &l), &r)| t - l + r)
                        .collect();
                    continue 'tail;
                }
            }
            break;
        }
        debug_assert_eq!(order.compare(&g.lead, &g.trail), Ordering::Greater);
    }
    Ok(ReducedGB { order: order.clone(), elements: minimal, config: None })
}

/// Reduced Gröbner basis of the toric ideal of a homogeneous configuration,
/// seeded with its Graver basis (which generates the ideal).
pub fn reduced_gb_of_config(config: &PointConfig, order: &TermOrder) -> Result<ReducedGB> {
    if !config.is_homogeneous() {
        return Err(Error::Inhomogeneous);
    }
    let basis = graver(config)?;
    reduced_gb_from_graver(&basis, order)
}

/// Same, reusing an already computed Graver basis.
pub fn reduced_gb_from_graver(basis: &GraverBasis, order: &TermOrder) -> Result<ReducedGB> {
    let gens: Vec<Binomial> = basis
        .elements()
        .iter()
        .map(|e| Binomial::from_vector(e.entries()))
        .collect::<Result<_>>()?;
    let mut gb = buchberger(&gens, order)?;
    gb.config = Some(basis.config().clone());
    Ok(gb)
}

/// Coverage of the Graver basis by sampled reduced Gröbner bases.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    /// Size of the Graver basis.
    pub graver: usize,
    /// Distinct Graver elements realized in some sampled reduced basis.
    pub covered: usize,
    /// 0-based indices (canonical Graver file order) never realized.
    pub uncovered_rows: Vec<usize>,
}

/// Samples `trials` weight vectors uniformly from `{0..=W}^n` with
/// `W = 4 * n * max_graver_degree`, computes each reduced basis, and
/// reports which Graver elements were covered. Deterministic in `seed`;
/// trials run in parallel under the default feature.
pub fn universal_sample(config: &PointConfig, trials: usize, seed: u64) -> Result<CoverageReport> {
    universal_sample_with(config, trials, seed, Parallelism::default())
}

pub fn universal_sample_with(
    config: &PointConfig,
    trials: usize,
    seed: u64,
    mode: Parallelism,
) -> Result<CoverageReport> {
    let basis = graver(config)?;
    let n = config.columns();
    let w = 4 * (n as i64) * basis.max_degree().unwrap_or(1) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weight_vectors: Vec<Vec<i64>> = (0..trials)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=w)).collect())
        .collect();

    let basis_ref = &basis;
    let unions = par::flat_map_collect(mode, weight_vectors, |weights| {
        let order = TermOrder::new(weights).expect("sampled weights are nonnegative");
        let gb = reduced_gb_from_graver(basis_ref, &order)
            .expect("graver generators are homogeneous kernel binomials");
        gb.elements()
            .iter()
            .map(|e| {
                let mut v = e.vector();
                if let Some(&first) = v.iter().find(|&&x| x != 0) {
                    if first < 0 {
                        for x in &mut v {
                            *x = -*x;
                        }
                    }
                }
                v
            })
            .collect()
    });
    let union: BTreeSet<Vec<i64>> = unions.into_iter().collect();

    for v in &union {
        if !basis.contains(v) {
            return Err(Error::Integrity(format!(
                "sampled reduced basis element {:?} is not a Graver element",
                v
            )));
        }
    }
    let uncovered_rows: Vec<usize> = basis
        .elements()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| (!union.contains(e.entries())).then_some(i))
        .collect();
    Ok(CoverageReport {
        graver: basis.len(),
        covered: union.len(),
        uncovered_rows,
    })
}
