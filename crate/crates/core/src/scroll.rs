//! Scroll point configurations, their projections, minor generators and the
//! degree bound formulas.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::exact::{self, IntMatrix};
use crate::{Error, Result};

/// Block sizes `n_1, ..., n_c` of a scroll. The conventional name
/// `S(a_1, ..., a_c)` uses `a_j = n_j - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScrollSpec {
    blocks: Vec<usize>,
}

impl ScrollSpec {
    /// Builds a spec from raw block sizes `n_j >= 1`.
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("no blocks".into()));
        }
        if blocks.iter().any(|&n| n == 0) {
            return Err(Error::InvalidSpec("block sizes must be >= 1".into()));
        }
        Ok(ScrollSpec { blocks })
    }

    /// Builds a spec from the `S(a_1, ..., a_c)` notation, `a_j >= 1`.
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        if degrees.iter().any(|&a| a == 0) {
            return Err(Error::InvalidSpec(
                "S-notation entries must be >= 1; use raw blocks for degenerate columns".into(),
            ));
        }
        ScrollSpec::new(degrees.iter().map(|&a| a + 1).collect())
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Number of colors `c`.
    pub fn color_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of columns `n_1 + ... + n_c`.
    pub fn total_columns(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// First column (0-based) of a 1-based color.
    pub fn block_offset(&self, color: usize) -> usize {
        self.blocks[..color - 1].iter().sum()
    }

    /// 0-based column of the 1-based `(color, exponent)` label.
    pub fn column_index(&self, color: usize, exponent: usize) -> usize {
        self.block_offset(color) + exponent - 1
    }

    /// Display name in `S(a_1,...,a_c)` notation.
    pub fn name(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|&n| (n - 1).to_string()).collect();
        format!("S({})", parts.join(","))
    }
}

/// Per-column label of a point configuration, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnLabel {
    pub color: usize,
    pub exponent: usize,
}

/// An integer point configuration defining a toric ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    matrix: IntMatrix,
    labels: Option<Vec<ColumnLabel>>,
    origin: Option<ScrollSpec>,
}

impl PointConfig {
    /// Wraps a raw matrix with no label or origin information.
    pub fn from_matrix(matrix: IntMatrix) -> Self {
        PointConfig { matrix, labels: None, origin: None }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> Option<&[ColumnLabel]> {
        self.labels.as_deref()
    }

    pub fn origin(&self) -> Option<&ScrollSpec> {
        self.origin.as_ref()
    }

    pub fn columns(&self) -> usize {
        self.matrix.cols()
    }

    /// True when some row of the matrix is all ones, which grades the ideal.
    pub fn is_homogeneous(&self) -> bool {
        (0..self.matrix.rows()).any(|r| self.matrix.row(r).iter().all(|&e| e == 1))
    }
}

/// A binomial `x^plus - x^minus` stored as two disjoint nonnegative
/// exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    plus: Vec<i64>,
    minus: Vec<i64>,
}

impl Binomial {
    pub fn new(plus: Vec<i64>, minus: Vec<i64>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::Dimension("binomial sides differ in length".into()));
        }
        if plus.iter().chain(&minus).any(|&e| e < 0) {
            return Err(Error::Dimension("negative exponent".into()));
        }
        if plus.iter().zip(&minus).any(|(&p, &m)| p != 0 && m != 0) {
            return Err(Error::Dimension("binomial sides share support".into()));
        }
        if plus.iter().all(|&e| e == 0) && minus.iter().all(|&e| e == 0) {
            return Err(Error::Dimension("zero binomial".into()));
        }
        Ok(Binomial { plus, minus })
    }

    /// Splits an integer vector into its positive and negative parts.
    pub fn from_vector(v: &[i64]) -> Result<Self> {
        Binomial::new(
            v.iter().map(|&e| e.max(0)).collect(),
            v.iter().map(|&e| (-e).max(0)).collect(),
        )
    }

    pub fn plus(&self) -> &[i64] {
        &self.plus
    }

    pub fn minus(&self) -> &[i64] {
        &self.minus
    }

    /// The exponent vector `plus - minus`.
    pub fn vector(&self) -> Vec<i64> {
        self.plus.iter().zip(&self.minus).map(|(&p, &m)| p - m).collect()
    }

    /// Total degree of the positive side.
    pub fn degree_plus(&self) -> i64 {
        self.plus.iter().sum()
    }

    pub fn degree_minus(&self) -> i64 {
        self.minus.iter().sum()
    }
}

/// The `(c+1) x (n_1+...+n_c)` parametrization matrix: an all-ones row,
/// one staircase indicator row per color boundary, and the exponent row
/// running `1..n_j` inside block `j`.
pub fn build_config(spec: &ScrollSpec) -> PointConfig {
    let c = spec.color_count();
    let n = spec.total_columns();
    let mut rows = Vec::with_capacity(c + 1);
    rows.push(vec![1i64; n]);
    for p in 1..c {
        let mut row = vec![0i64; n];
        let start = spec.block_offset(p + 1);
        for e in row.iter_mut().skip(start) {
            *e = 1;
        }
        rows.push(row);
    }
    let mut exps = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (j, &nj) in spec.blocks().iter().enumerate() {
        for i in 1..=nj {
            exps.push(i as i64);
            labels.push(ColumnLabel { color: j + 1, exponent: i });
        }
    }
    rows.push(exps);
    PointConfig {
        matrix: IntMatrix::from_rows(rows).expect("rows are rectangular"),
        labels: Some(labels),
        origin: Some(spec.clone()),
    }
}

/// All 2-minors of the concatenated 2-row block matrix, deduplicated up to
/// global sign. The two negative positions may coincide, producing a -2
/// entry.
pub fn minor_generators(spec: &ScrollSpec) -> Vec<Binomial> {
    let n = spec.total_columns();
    // Columns of the block matrix: (color, k) for k in 1..n_color.
    let mut cols = Vec::new();
    for (j, &nj) in spec.blocks().iter().enumerate() {
        for k in 1..nj {
            cols.push((j + 1, k));
        }
    }
    let mut out = Vec::new();
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            let (ci, k) = cols[a];
            let (cj, l) = cols[b];
            let mut v = vec![0i64; n];
            v[spec.column_index(ci, k)] += 1;
            v[spec.column_index(cj, l + 1)] += 1;
            v[spec.column_index(cj, l)] -= 1;
            v[spec.column_index(ci, k + 1)] -= 1;
            if v.iter().all(|&e| e == 0) {
                continue;
            }
            if let Some(&first) = v.iter().find(|&&e| e != 0) {
                if first < 0 {
                    for e in &mut v {
                        *e = -*e;
                    }
                }
            }
            out.push(Binomial::from_vector(&v).expect("minor vector is nonzero"));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Degree of the scroll, `n_1 + ... + n_c - c`.
pub fn scroll_degree(spec: &ScrollSpec) -> usize {
    spec.total_columns() - spec.color_count()
}

/// Degree-bound search result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// `n_P + n_Q - 2` from the two largest blocks.
    pub naive_bound: usize,
    /// `u + v - 2` over the admissible pairs.
    pub sharp_bound: usize,
    /// `((color of u, u), (color of v, v))`, 1-based colors.
    pub witness: ((usize, usize), (usize, usize)),
    /// Cumulative decrements `(color, amount)` from the witness blocks'
    /// original sizes down to `u` and `v`; empty when nothing was lowered.
    pub reduction_trail: Vec<(usize, usize)>,
}

/// Sharp degree bound: maximizes `u + v` over distinct blocks `i != j`,
/// `u <= n_i`, `v <= n_j`, `gcd(u-1, v-1) = 1`. Ties prefer larger `u`,
/// then smaller `i`, then smaller `j`. Requires at least two colors.
pub fn sharp_degree_bound(spec: &ScrollSpec) -> Result<BoundReport> {
    let c = spec.color_count();
    if c < 2 {
        return Err(Error::InvalidSpec(
            "sharp degree bound needs at least two blocks".into(),
        ));
    }
    let blocks = spec.blocks();
    let mut best: Option<((usize, usize), (usize, usize))> = None;
    for i in 0..c {
        for j in 0..c {
            if i == j {
                continue;
            }
            for u in (1..=blocks[i]).rev() {
                for v in (1..=blocks[j]).rev() {
                    if (u as i64 - 1).gcd(&(v as i64 - 1)) != 1 {
                        continue;
                    }
                    let cand = ((i + 1, u), (j + 1, v));
                    let better = match &best {
                        None => true,
                        Some(((bi, bu), (bj, bv))) => {
                            let (s, bs) = (u + v, bu + bv);
                            (s, u, std::cmp::Reverse(i + 1), std::cmp::Reverse(j + 1))
                                > (bs, *bu, std::cmp::Reverse(*bi), std::cmp::Reverse(*bj))
                        }
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    let mut sizes: Vec<usize> = blocks.to_vec();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let naive_bound = sizes[0] + sizes[1] - 2;
    let Some(((ci, u), (cj, v))) = best else {
        return Err(Error::InvalidSpec(
            "no admissible (u, v) pair exists for this spec".into(),
        ));
    };
    let mut reduction_trail = Vec::new();
    if blocks[ci - 1] > u {
        reduction_trail.push((ci, blocks[ci - 1] - u));
    }
    if blocks[cj - 1] > v {
        reduction_trail.push((cj, blocks[cj - 1] - v));
    }
    Ok(BoundReport {
        naive_bound,
        sharp_bound: u + v - 2,
        witness: ((ci, u), (cj, v)),
        reduction_trail,
    })
}

/// The generic toric degree bound `(c+2)(n_1+...+n_c-c-1)·D(A)/2` where
/// `D(A)` ranges over the `(c+1)`-minors. The value may be half-integral,
/// so twice the value is stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricBoundReport {
    pub twice_value: BigInt,
    pub max_minor: BigInt,
}

impl ToricBoundReport {
    /// Ceiling of the possibly half-integral bound.
    pub fn ceil(&self) -> BigInt {
        (&self.twice_value + BigInt::from(1)) / BigInt::from(2)
    }

    pub fn is_integral(&self) -> bool {
        (&self.twice_value % BigInt::from(2)) == BigInt::from(0)
    }
}

/// Evaluates the generic toric bound for a full scroll configuration.
pub fn general_toric_bound(config: &PointConfig) -> Result<ToricBoundReport> {
    let spec = config
        .origin()
        .ok_or_else(|| Error::InvalidSpec("configuration has no scroll origin".into()))?;
    if config.columns() != spec.total_columns() {
        return Err(Error::InvalidSpec(
            "generic toric bound applies to unprojected scroll configurations".into(),
        ));
    }
    let c = spec.color_count();
    let d = exact::max_abs_minor(config.matrix(), c + 1)?;
    let factor = BigInt::from((c + 2) * (spec.total_columns() - c - 1));
    Ok(ToricBoundReport { twice_value: factor * &d, max_minor: d })
}

/// Keeps only the labeled columns listed per color. Every keep-set must
/// contain the endpoints 1 and `n_k`.
pub fn project_config(config: &PointConfig, keep: &[Vec<usize>]) -> Result<PointConfig> {
    let spec = config
        .origin()
        .ok_or_else(|| Error::InvalidProjection("configuration has no scroll origin".into()))?;
    let labels = config
        .labels()
        .ok_or_else(|| Error::InvalidProjection("configuration has no column labels".into()))?;
    if keep.len() != spec.color_count() {
        return Err(Error::InvalidProjection(format!(
            "{} keep-sets for {} colors",
            keep.len(),
            spec.color_count()
        )));
    }
    for (k, set) in keep.iter().enumerate() {
        let nk = spec.blocks()[k];
        if set.is_empty() {
            return Err(Error::InvalidProjection(format!("color {} keeps nothing", k + 1)));
        }
        if set.iter().any(|&e| e < 1 || e > nk) {
            return Err(Error::InvalidProjection(format!(
                "color {} keep-set leaves the range 1..={}",
                k + 1,
                nk
            )));
        }
        if !set.contains(&1) || !set.contains(&nk) {
            return Err(Error::InvalidProjection(format!(
                "color {} keep-set must contain both endpoints 1 and {}",
                k + 1,
                nk
            )));
        }
    }
    let mut cols = Vec::new();
    for (idx, label) in labels.iter().enumerate() {
        if keep[label.color - 1].contains(&label.exponent) {
            cols.push(idx);
        }
    }
    let rows: Vec<Vec<i64>> = (0..config.matrix().rows())
        .map(|r| cols.iter().map(|&c| config.matrix().get(r, c)).collect())
        .collect();
    Ok(PointConfig {
        matrix: IntMatrix::from_rows(rows)?,
        labels: Some(cols.iter().map(|&c| labels[c]).collect()),
        origin: Some(spec.clone()),
    })
}

/// Dimension of the state polytope: ambient columns minus matrix rank.
pub fn state_polytope_dim(config: &PointConfig) -> usize {
    config.columns() - exact::rank(config.matrix())
}
