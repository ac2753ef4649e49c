//! Colored partition identities: the combinatorial mirror of kernel vectors
//! of scroll configurations. Bounded enumeration of the primitive
//! color-homogeneous identities is the independent oracle the completion
//! engine is checked against.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::par::{self, Parallelism};
use crate::scroll::{build_config, scroll_degree, sharp_degree_bound, ScrollSpec};
use crate::{Error, Result};

/// A colored partition identity: two equal-sum multisets of `(color, part)`
/// pairs, each part within the range of its color's block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cpi {
    left: Vec<(usize, usize)>,
    right: Vec<(usize, usize)>,
    spec: ScrollSpec,
}

impl Cpi {
    /// Validates ranges, nonemptiness and the sum identity; sides are stored
    /// sorted by `(color, part)`.
    pub fn new(
        spec: ScrollSpec,
        mut left: Vec<(usize, usize)>,
        mut right: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidSpec("identity sides must be nonempty".into()));
        }
        let c = spec.color_count();
        for &(p, a) in left.iter().chain(&right) {
            if p < 1 || p > c {
                return Err(Error::InvalidSpec(format!("color {} out of range", p)));
            }
            if a < 1 || a > spec.blocks()[p - 1] {
                return Err(Error::InvalidSpec(format!(
                    "part {} out of range for color {}",
                    a, p
                )));
            }
        }
        let ls: usize = left.iter().map(|&(_, a)| a).sum();
        let rs: usize = right.iter().map(|&(_, a)| a).sum();
        if ls != rs {
            return Err(Error::InvalidSpec(format!(
                "sides sum to {} and {}",
                ls, rs
            )));
        }
        left.sort_unstable();
        right.sort_unstable();
        Ok(Cpi { left, right, spec })
    }

    pub fn left(&self) -> &[(usize, usize)] {
        &self.left
    }

    pub fn right(&self) -> &[(usize, usize)] {
        &self.right
    }

    pub fn spec(&self) -> &ScrollSpec {
        &self.spec
    }

    /// Total number of summands on both sides.
    pub fn degree_summands(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Summands per side; for color-homogeneous identities this is the
    /// degree of the corresponding binomial.
    pub fn side_degree(&self) -> usize {
        self.left.len()
    }

    /// Equal side cardinalities.
    pub fn is_homogeneous(&self) -> bool {
        self.left.len() == self.right.len()
    }

    /// Equal per-color cardinalities on both sides.
    pub fn is_color_homogeneous(&self) -> bool {
        let c = self.spec.color_count();
        let mut counts = vec![0i64; c];
        for &(p, _) in &self.left {
            counts[p - 1] += 1;
        }
        for &(p, _) in &self.right {
            counts[p - 1] -= 1;
        }
        counts.iter().all(|&d| d == 0)
    }

    /// Net exponent vector: left counts minus right counts per column.
    /// Only color-homogeneous identities map into the kernel.
    pub fn to_vector(&self) -> Result<Vec<i64>> {
        if !self.is_color_homogeneous() {
            return Err(Error::NotColorHomogeneous);
        }
        let mut v = vec![0i64; self.spec.total_columns()];
        for &(p, a) in &self.left {
            v[self.spec.column_index(p, a)] += 1;
        }
        for &(p, a) in &self.right {
            v[self.spec.column_index(p, a)] -= 1;
        }
        Ok(v)
    }

    fn canonical_key(&self) -> (usize, &[(usize, usize)], &[(usize, usize)]) {
        (self.side_degree(), &self.left, &self.right)
    }
}

impl PartialOrd for Cpi {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cpi {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl fmt::Display for Cpi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[(usize, usize)]| {
            s.iter()
                .map(|&(p, a)| format!("{}:{}", p, a))
                .collect::<Vec<_>>()
                .join("+")
        };
        write!(f, "{}={}", side(&self.left), side(&self.right))
    }
}

/// Parses the `p:a+p:a=p:b+p:b` form; arbitrary whitespace is accepted.
pub fn parse_cpi(spec: &ScrollSpec, text: &str) -> Result<Cpi> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (l, r) = cleaned
        .split_once('=')
        .ok_or_else(|| Error::Parse("missing '='".into()))?;
    let parse_side = |s: &str| -> Result<Vec<(usize, usize)>> {
        s.split('+')
            .map(|tok| {
                let (p, a) = tok
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad token {:?}", tok)))?;
                Ok((
                    p.parse().map_err(|_| Error::Parse(format!("bad color {:?}", p)))?,
                    a.parse().map_err(|_| Error::Parse(format!("bad part {:?}", a)))?,
                ))
            })
            .collect()
    };
    Cpi::new(spec.clone(), parse_side(l)?, parse_side(r)?)
}

#[derive(Serialize, Deserialize)]
struct CpiJson {
    left: Vec<(usize, usize)>,
    right: Vec<(usize, usize)>,
}

/// JSON form `{"left":[[p,a],...],"right":[[p,b],...]}`.
pub fn cpi_to_json(c: &Cpi) -> String {
    serde_json::to_string(&CpiJson { left: c.left.clone(), right: c.right.clone() })
        .expect("serialization of plain vectors cannot fail")
}

pub fn cpi_from_json(spec: &ScrollSpec, text: &str) -> Result<Cpi> {
    let raw: CpiJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad identity JSON: {}", e)))?;
    Cpi::new(spec.clone(), raw.left, raw.right)
}

/// Reads a kernel vector back as an identity: left side from the positive
/// part, right side from the negative part.
pub fn vector_to_cpi(spec: &ScrollSpec, u: &[i64]) -> Result<Cpi> {
    let config = build_config(spec);
    if u.len() != config.columns() {
        return Err(Error::Dimension(format!(
            "vector of length {} for {} columns",
            u.len(),
            config.columns()
        )));
    }
    if u.iter().all(|&e| e == 0) {
        return Err(Error::NotInKernel);
    }
    if config.matrix().mul_vec(u)?.iter().any(|&e| e != 0) {
        return Err(Error::NotInKernel);
    }
    let labels = config.labels().expect("scroll configs carry labels");
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &e) in u.iter().enumerate() {
        let lab = labels[i];
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                left.push((lab.color, lab.exponent));
            } else {
                right.push((lab.color, lab.exponent));
            }
        }
    }
    Cpi::new(spec.clone(), left, right)
}

/// Shorthand for [`Cpi::to_vector`].
pub fn cpi_to_vector(c: &Cpi) -> Result<Vec<i64>> {
    c.to_vector()
}

// ---------------------------------------------------------------------------
// Primitivity
// ---------------------------------------------------------------------------

/// Packs a per-color count vector and a part sum into one u64 when the
/// identity is small enough: 4 bits per color, the sum in the high bits.
fn packed_sig(color: usize, part: usize) -> u64 {
    (1u64 << (4 * (color - 1))) | ((part as u64) << 48)
}

fn subset_sigs_packed(side: &[(usize, usize)]) -> Vec<u64> {
    let mut sigs = Vec::with_capacity(1 << side.len());
    sigs.push(0u64);
    for &(p, a) in side {
        let s = packed_sig(p, a);
        let len = sigs.len();
        for i in 0..len {
            sigs.push(sigs[i] + s);
        }
    }
    sigs.sort_unstable();
    sigs.dedup();
    sigs
}

fn subset_sigs_generic(side: &[(usize, usize)], colors: usize) -> Vec<(Vec<u16>, u64)> {
    let mut sigs: HashSet<(Vec<u16>, u64)> = HashSet::new();
    sigs.insert((vec![0u16; colors], 0));
    for &(p, a) in side {
        let additions: Vec<(Vec<u16>, u64)> = sigs
            .iter()
            .map(|(counts, sum)| {
                let mut c = counts.clone();
                c[p - 1] += 1;
                (c, sum + a as u64)
            })
            .collect();
        sigs.extend(additions);
    }
    let mut out: Vec<(Vec<u16>, u64)> = sigs.into_iter().collect();
    out.sort_unstable();
    out
}

/// True when the identity admits no proper sub-identity with per-color
/// balanced cardinalities and equal part sums, i.e. when the corresponding
/// kernel vector has no smaller kernel vector below it componentwise.
pub fn is_primitive_cpi(c: &Cpi) -> bool {
    let colors = c.spec().color_count();
    let max_side = c.left.len().max(c.right.len());
    if colors <= 12 && max_side < 16 {
        let l = subset_sigs_packed(&c.left);
        let r = subset_sigs_packed(&c.right);
        let full_l: u64 = c.left.iter().map(|&(p, a)| packed_sig(p, a)).sum();
        let full_r: u64 = c.right.iter().map(|&(p, a)| packed_sig(p, a)).sum();
        let mut i = 0;
        let mut j = 0;
        while i < l.len() && j < r.len() {
            match l[i].cmp(&r[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    let s = l[i];
                    if s != 0 && !(s == full_l && s == full_r) {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    } else {
        let l = subset_sigs_generic(&c.left, colors);
        let r = subset_sigs_generic(&c.right, colors);
        let full = |side: &[(usize, usize)]| {
            let mut counts = vec![0u16; colors];
            let mut sum = 0u64;
            for &(p, a) in side {
                counts[p - 1] += 1;
                sum += a as u64;
            }
            (counts, sum)
        };
        let full_l = full(&c.left);
        let full_r = full(&c.right);
        let rset: HashSet<&(Vec<u16>, u64)> = r.iter().collect();
        for s in &l {
            if s.1 == 0 && s.0.iter().all(|&x| x == 0) {
                continue;
            }
            if rset.contains(s) && !(*s == full_l && *s == full_r) {
                return false;
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Difference data and the sum-difference walk
// ---------------------------------------------------------------------------

/// Within-color differences of a color-homogeneous identity, pairing the
/// j-th smallest left part with the j-th smallest right part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceData {
    /// `(color, left - right)` per pair, zero differences retained.
    pub differences: Vec<(usize, i64)>,
    /// Largest positive difference, 0 when none.
    pub d_plus_max: i64,
    /// Largest absolute negative difference, 0 when none.
    pub d_minus_max: i64,
    /// Colors attaining the extremes, smallest color on ties.
    pub colors_of_extremes: (Option<usize>, Option<usize>),
}

pub fn difference_data(c: &Cpi) -> Result<DifferenceData> {
    if !c.is_color_homogeneous() {
        return Err(Error::NotColorHomogeneous);
    }
    let colors = c.spec().color_count();
    let mut differences = Vec::new();
    let mut d_plus = 0i64;
    let mut d_minus = 0i64;
    let mut plus_color = None;
    let mut minus_color = None;
    for p in 1..=colors {
        let mut lefts: Vec<i64> =
            c.left.iter().filter(|&&(q, _)| q == p).map(|&(_, a)| a as i64).collect();
        let mut rights: Vec<i64> =
            c.right.iter().filter(|&&(q, _)| q == p).map(|&(_, a)| a as i64).collect();
        lefts.sort_unstable();
        rights.sort_unstable();
        for (a, b) in lefts.iter().zip(&rights) {
            let d = a - b;
            differences.push((p, d));
            if d > d_plus {
                d_plus = d;
                plus_color = Some(p);
            }
            if -d > d_minus {
                d_minus = -d;
                minus_color = Some(p);
            }
        }
    }
    Ok(DifferenceData {
        differences,
        d_plus_max: d_plus,
        d_minus_max: d_minus,
        colors_of_extremes: (plus_color, minus_color),
    })
}

/// Runs the alternating-consumption walk over the nonzero differences,
/// always taking the largest available element of the chosen set, and
/// returns the value after each step. The final value is always zero.
pub fn sum_difference_walk(dd: &DifferenceData) -> Vec<i64> {
    let mut pos: Vec<i64> = dd
        .differences
        .iter()
        .filter(|&&(_, d)| d > 0)
        .map(|&(_, d)| d)
        .collect();
    let mut neg: Vec<i64> = dd
        .differences
        .iter()
        .filter(|&&(_, d)| d < 0)
        .map(|&(_, d)| -d)
        .collect();
    pos.sort_unstable();
    neg.sort_unstable();
    let mut x = 0i64;
    let mut walk = Vec::with_capacity(pos.len() + neg.len());
    while !pos.is_empty() || !neg.is_empty() {
        if x >= 0 {
            match neg.pop() {
                Some(v) => x -= v,
                None => x += pos.pop().expect("one set is nonempty"),
            }
        } else {
            match pos.pop() {
                Some(v) => x += v,
                None => x -= neg.pop().expect("one set is nonempty"),
            }
        }
        walk.push(x);
    }
    walk
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Side-degree bound used when enumerating primitive identities: the sharp
/// bound over the blocks of size at least two, the curve bound `n - 1` when
/// only one such block remains, and 1 otherwise.
pub fn enumeration_bound(spec: &ScrollSpec) -> usize {
    let nondeg: Vec<usize> = spec.blocks().iter().copied().filter(|&n| n >= 2).collect();
    match nondeg.len() {
        0 => 1,
        1 => nondeg[0] - 1,
        _ => {
            let sub = ScrollSpec::new(nondeg).expect("nonempty blocks");
            sharp_degree_bound(&sub)
                .map(|r| r.sharp_bound)
                .unwrap_or_else(|_| scroll_degree(spec))
        }
    }
}

struct Enumerator<'a> {
    spec: &'a ScrollSpec,
    bound: usize,
    /// max(n_q - 1) over colors >= index (1-based); last entry 0.
    suffix_shift: Vec<i64>,
    left: Vec<(usize, usize)>,
    right: Vec<(usize, usize)>,
    /// Per-color A-side value mask and pair-sum bitset, rebuilt per block.
    a_values: u64,
    a_pairsums: u128,
    /// A matched 2v2 pair is only a *proper* sub-identity when the identity
    /// is bigger than the pair itself.
    prune_pairs: bool,
    /// Left-minus-right differences of completed blocks (bit `d + 63`), and
    /// the negated set. Two colors whose difference sets collide carry a
    /// balanced cross-color 2v2 sub-identity.
    diffs: u128,
    diffs_neg: u128,
    prune_cross: bool,
    out: Vec<Cpi>,
}

impl<'a> Enumerator<'a> {
    fn new(spec: &'a ScrollSpec, bound: usize) -> Self {
        let c = spec.color_count();
        let mut suffix_shift = vec![0i64; c + 2];
        for p in (1..=c).rev() {
            suffix_shift[p] = suffix_shift[p + 1].max(spec.blocks()[p - 1] as i64 - 1);
        }
        Enumerator {
            spec,
            bound,
            suffix_shift,
            left: Vec::new(),
            right: Vec::new(),
            a_values: 0,
            a_pairsums: 0,
            prune_pairs: false,
            diffs: 0,
            diffs_neg: 0,
            prune_cross: false,
            out: Vec::new(),
        }
    }

    fn emit(&mut self) {
        debug_assert!(!self.left.is_empty());
        // canonical orientation: the smallest (color, part) sits on the left
        let min_l = self.left.iter().min().copied();
        let min_r = self.right.iter().min().copied();
        if min_r < min_l {
            return;
        }
        let cand = Cpi::new(self.spec.clone(), self.left.clone(), self.right.clone())
            .expect("enumeration produces valid identities");
        if is_primitive_cpi(&cand) {
            self.out.push(cand);
        }
    }

    /// Entry: identities whose first used color is `p`, with `k` parts per
    /// side there and A-side maximum part `a_max`.
    fn run_task(&mut self, p: usize, k: usize, a_max: usize) {
        if k > self.bound || a_max > self.spec.blocks()[p - 1] {
            return;
        }
        self.left.push((p, a_max));
        self.gen_a(p, k, k - 1, a_max, a_max as i64, 0, 0);
        self.left.pop();
    }

    /// Builds the A side of color `p`'s block, parts non-increasing.
    #[allow(clippy::too_many_arguments)]
    fn gen_a(
        &mut self,
        p: usize,
        k: usize,
        remaining: usize,
        max_part: usize,
        sum_a: i64,
        used_before: usize,
        delta_before: i64,
    ) {
        if remaining == 0 {
            self.start_b(p, k, sum_a, used_before, delta_before);
            return;
        }
        let c = self.spec.color_count();
        let r = remaining as i64;
        for a in (1..=max_part).rev() {
            // reachable window for the final A sum: all-ones vs all-a tails
            let lo = sum_a + r;
            let hi = sum_a + r * a as i64;
            if p == c {
                // the B sum will have to equal final_sum_a + delta and lies
                // in [k, k*n_c]
                let n_c = self.spec.blocks()[c - 1] as i64;
                if lo + delta_before > k as i64 * n_c {
                    break; // independent of a
                }
                if hi + delta_before < k as i64 {
                    break; // shrinks as a shrinks
                }
            } else {
                let n_p = self.spec.blocks()[p - 1] as i64;
                let s = (self.bound - used_before - k) as i64 * self.suffix_shift[p + 1];
                if delta_before + lo - k as i64 * n_p > s {
                    break; // independent of a
                }
                if delta_before + hi - (k as i64) < -s {
                    break; // shrinks as a shrinks
                }
            }
            self.left.push((p, a));
            self.gen_a(p, k, remaining - 1, a, sum_a + a as i64, used_before, delta_before);
            self.left.pop();
        }
    }

    fn start_b(&mut self, p: usize, k: usize, sum_a: i64, used_before: usize, delta_before: i64) {
        // value mask and pair-sum bitset of the completed A block drive the
        // disjointness and 2v2 prunes of the B side
        let block_start = self.left.len() - k;
        let a_parts: Vec<usize> = self.left[block_start..].iter().map(|&(_, a)| a).collect();
        let saved_values = self.a_values;
        let saved_pairs = self.a_pairsums;
        let saved_prune = self.prune_pairs;
        let saved_cross = self.prune_cross;
        self.a_values = 0;
        self.a_pairsums = 0;
        self.prune_pairs = used_before > 0 || k > 2;
        self.prune_cross = used_before + k > 2;
        for &a in &a_parts {
            self.a_values |= 1u64 << a;
        }
        for i in 0..a_parts.len() {
            for j in i + 1..a_parts.len() {
                self.a_pairsums |= 1u128 << (a_parts[i] + a_parts[j]);
            }
        }
        let n_p = self.spec.blocks()[p - 1];
        if p == self.spec.color_count() {
            let target = sum_a + delta_before;
            if target >= k as i64 && target <= (k * n_p) as i64 {
                self.gen_b_exact(p, k, n_p, target);
            }
        } else {
            self.gen_b_free(p, k, k, n_p, 0, sum_a, used_before, delta_before);
        }
        self.a_values = saved_values;
        self.a_pairsums = saved_pairs;
        self.prune_pairs = saved_prune;
        self.prune_cross = saved_cross;
    }

    /// B side with an exact target sum (last color). Reaching the target
    /// closes the identity.
    fn gen_b_exact(&mut self, p: usize, k: usize, max_part: usize, target: i64) {
        if k == 0 {
            if target == 0 {
                self.emit();
            }
            return;
        }
        let r = k as i64;
        for b in (1..=max_part).rev() {
            let bv = b as i64;
            if bv > target - (r - 1) {
                continue; // the other parts need at least 1 each
            }
            if bv * r < target {
                break; // even an all-b tail falls short
            }
            if self.a_values & (1u64 << b) != 0 {
                continue;
            }
            if self.block_has_pair_with(p, b) {
                continue;
            }
            self.right.push((p, b));
            self.gen_b_exact(p, k - 1, b, target - bv);
            self.right.pop();
        }
    }

    /// B side of a non-final color, range-pruned on the running delta.
    #[allow(clippy::too_many_arguments)]
    fn gen_b_free(
        &mut self,
        p: usize,
        k: usize,
        remaining: usize,
        max_part: usize,
        sum_b: i64,
        sum_a: i64,
        used_before: usize,
        delta_before: i64,
    ) {
        if remaining == 0 {
            let delta_p = sum_a - sum_b;
            let used = used_before + k;
            let delta = delta_before + delta_p;
            if delta_p == 0 {
                // the block balances on its own; anything added around it
                // would turn it into a proper sub-identity
                if used_before == 0 && delta == 0 && used >= 2 {
                    self.emit();
                }
                return;
            }
            if delta == 0 {
                // earlier blocks plus this one balance: same argument
                if used >= 2 {
                    self.emit();
                }
                return;
            }
            let s = (self.bound - used) as i64 * self.suffix_shift[p + 1];
            if delta.abs() <= s {
                self.next_color(p + 1, used, delta);
            }
            return;
        }
        let r = remaining as i64;
        let s_after = (self.bound - used_before - k) as i64 * self.suffix_shift[p + 1];
        for b in (1..=max_part).rev() {
            let bv = b as i64;
            let lo = sum_b + bv + (r - 1); // all-ones tail
            let hi = sum_b + bv * r; // all-b tail
            let d_lo = delta_before + sum_a - hi;
            let d_hi = delta_before + sum_a - lo;
            if d_lo > s_after {
                break; // smaller b only raises the delta window further
            }
            if d_hi < -s_after {
                continue; // b too large; a smaller b may fit
            }
            if self.a_values & (1u64 << b) != 0 {
                continue;
            }
            if self.block_has_pair_with(p, b) {
                continue;
            }
            self.right.push((p, b));
            self.gen_b_free(p, k, remaining - 1, b, sum_b + bv, sum_a, used_before, delta_before);
            self.right.pop();
        }
    }

    /// 2v2 prune: would adding part `b` complete a pair of current-block
    /// B parts whose sum matches an A pair sum?
    fn block_has_pair_with(&self, p: usize, b: usize) -> bool {
        if !self.prune_pairs || self.a_pairsums == 0 {
            return false;
        }
        for &(q, b2) in self.right.iter().rev() {
            if q != p {
                break;
            }
            if self.a_pairsums & (1u128 << (b + b2)) != 0 {
                return true;
            }
        }
        false
    }

    /// Continues with colors `>= p`, all of which may stay empty.
    fn next_color(&mut self, p: usize, used: usize, delta: i64) {
        debug_assert!(delta != 0, "balanced states are closed before recursing");
        let c = self.spec.color_count();
        if p > c {
            return;
        }
        // leave color p empty
        if p < c {
            let s = (self.bound - used) as i64 * self.suffix_shift[p + 1];
            if delta.abs() <= s {
                self.next_color(p + 1, used, delta);
            }
        }
        // or give it k parts per side
        let n_p = self.spec.blocks()[p - 1];
        for k in 1..=self.bound.saturating_sub(used) {
            for a_max in 1..=n_p {
                self.left.push((p, a_max));
                self.gen_a(p, k, k - 1, a_max, a_max as i64, used, delta);
                self.left.pop();
            }
        }
    }
}

/// Enumerates all primitive color-homogeneous identities with side degree
/// at most `max_side_degree`, one representative per sign pair, sorted
/// canonically.
pub fn enumerate_pcpi(spec: &ScrollSpec, max_side_degree: usize) -> Vec<Cpi> {
    enumerate_pcpi_with(spec, max_side_degree, Parallelism::default())
}

pub fn enumerate_pcpi_with(
    spec: &ScrollSpec,
    max_side_degree: usize,
    mode: Parallelism,
) -> Vec<Cpi> {
    let c = spec.color_count();
    // tasks: (first used color, block size there, A-side maximum part)
    let mut tasks = Vec::new();
    for p in 1..=c {
        for k in 1..=max_side_degree {
            for a_max in 1..=spec.blocks()[p - 1] {
                tasks.push((p, k, a_max));
            }
        }
    }
    let mut all = par::flat_map_collect(mode, tasks, |(p, k, a_max)| {
        let mut e = Enumerator::new(spec, max_side_degree);
        e.run_task(p, k, a_max);
        e.out
    });
    all.sort();
    all
}

/// Canonical sorted list of sign-normalized kernel vectors of the
/// enumerated primitive identities; the oracle side of the cross-check.
pub fn oracle_vectors(spec: &ScrollSpec, max_side_degree: usize, mode: Parallelism) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = enumerate_pcpi_with(spec, max_side_degree, mode)
        .iter()
        .map(|c| c.to_vector().expect("enumerated identities are color-homogeneous"))
        .collect();
    out.sort_by_key(|v| {
        (
            v.iter().map(|e| e.unsigned_abs()).sum::<u64>(),
            v.clone(),
        )
    });
    out
}
