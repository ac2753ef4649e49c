//! Graver bases by conformal completion over the kernel lattice, circuit
//! enumeration, and primitivity tests.
//!
//! The completion seeds with an integer kernel basis and its negatives,
//! forms sums of sign-overlapping pairs, conformally reduces every sum and
//! inserts irreducible residues until the pair set is exhausted, then keeps
//! the conformally minimal elements. The result is the unique Graver basis,
//! independent of schedule and seed order.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::exact::{self, IntMatrix, IntVector};
use crate::par::{self, Parallelism};
use crate::scroll::PointConfig;
use crate::{Error, Result};

/// A nonzero integer kernel vector, sign-normalized so its first nonzero
/// entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelVector {
    entries: Vec<i64>,
}

impl KernelVector {
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn positive_part(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| e.max(0)).collect()
    }

    pub fn negative_part(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| (-e).max(0)).collect()
    }

    /// Sum of the positive entries; the binomial degree for homogeneous
    /// configurations.
    pub fn degree(&self) -> usize {
        self.entries.iter().filter(|&&e| e > 0).map(|&e| e as usize).sum()
    }

    pub fn l1(&self) -> u64 {
        self.entries.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// Number of nonzero coordinates.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }
}

/// Completed Graver basis of a point configuration.
#[derive(Debug, Clone)]
pub struct GraverBasis {
    config: PointConfig,
    elements: Vec<KernelVector>,
    degree_histogram: Option<BTreeMap<usize, usize>>,
}

impl GraverBasis {
    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    /// Elements in canonical order: ascending one-norm, then lexicographic.
    pub fn elements(&self) -> &[KernelVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.elements.iter().map(KernelVector::degree).max()
    }

    /// Histogram by binomial degree; present only for homogeneous configs.
    pub fn degree_histogram(&self) -> Option<&BTreeMap<usize, usize>> {
        self.degree_histogram.as_ref()
    }

    /// Membership after sign normalization.
    pub fn contains(&self, v: &[i64]) -> bool {
        let normalized = IntVector(v.to_vec()).sign_normalized();
        self.elements.iter().any(|e| e.entries == normalized.0)
    }
}

/// Histogram of binomial degrees. Errors on inhomogeneous configurations,
/// where the two monomials of an element may have different degrees.
pub fn degree_table(basis: &GraverBasis) -> Result<BTreeMap<usize, usize>> {
    if !basis.config.is_homogeneous() {
        return Err(Error::Inhomogeneous);
    }
    let mut hist = BTreeMap::new();
    for e in &basis.elements {
        *hist.entry(e.degree()).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Ordering applied to the kernel-basis seed, exposed so schedule
/// independence can be exercised from tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedOrder {
    #[default]
    Canonical,
    Reversed,
    Shuffled(u64),
}

/// Completion controls. Defaults: run to the exact fixpoint with the
/// crate-default parallelism, no deadline.
#[derive(Debug, Clone, Default)]
pub struct GraverOptions {
    pub parallelism: Parallelism,
    /// Discard intermediate vectors above this binomial degree. Optional
    /// accelerator: results must then be certified against the identity
    /// oracle, since the truncated run may in principle miss elements.
    pub degree_cutoff: Option<usize>,
    pub deadline: Option<Instant>,
    pub seed_order: SeedOrder,
}

/// Computes the Graver basis with default options.
pub fn graver(config: &PointConfig) -> Result<GraverBasis> {
    graver_with(config, &GraverOptions::default())
}

const MAX_ENTRY: i64 = 1 << 30;

/// Append-only element store with mask and norm mirrors kept sorted by
/// (one-norm, entries) for the reduction scan.
struct Engine {
    n: usize,
    flat: Vec<i32>,
    pos_masks: Vec<u64>,
    neg_masks: Vec<u64>,
    l1s: Vec<u32>,
    ord_ids: Vec<u32>,
    ord_masks: Vec<(u64, u64)>,
    ord_l1s: Vec<u32>,
}

fn masks_of(v: &[i32]) -> (u64, u64) {
    let mut pos = 0u64;
    let mut neg = 0u64;
    for (i, &e) in v.iter().enumerate() {
        if e > 0 {
            pos |= 1 << i;
        } else if e < 0 {
            neg |= 1 << i;
        }
    }
    (pos, neg)
}

fn l1_of(v: &[i32]) -> u32 {
    v.iter().map(|e| e.unsigned_abs()).sum()
}

impl Engine {
    fn new(n: usize) -> Self {
        Engine {
            n,
            flat: Vec::new(),
            pos_masks: Vec::new(),
            neg_masks: Vec::new(),
            l1s: Vec::new(),
            ord_ids: Vec::new(),
            ord_masks: Vec::new(),
            ord_l1s: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.pos_masks.len()
    }

    fn entries(&self, id: usize) -> &[i32] {
        &self.flat[id * self.n..(id + 1) * self.n]
    }

    fn push(&mut self, v: &[i32]) {
        let id = self.len() as u32;
        let (pos, neg) = masks_of(v);
        let l1 = l1_of(v);
        self.flat.extend_from_slice(v);
        self.pos_masks.push(pos);
        self.neg_masks.push(neg);
        self.l1s.push(l1);
        // splice into the sorted reduction order
        let slot = self.ord_ids.partition_point(|&other| {
            let o = other as usize;
            (self.l1s[o], self.entries(o)) < (l1, v)
        });
        self.ord_ids.insert(slot, id);
        self.ord_masks.insert(slot, (pos, neg));
        self.ord_l1s.insert(slot, l1);
    }

    /// True when `g` (or `-g` for `sign = -1`) is conformally below `v`.
    fn divides(&self, id: usize, sign: i32, v: &[i32]) -> bool {
        self.entries(id).iter().zip(v).all(|(&g, &e)| {
            let g = g * sign;
            if g > 0 {
                e >= g
            } else if g < 0 {
                e <= g
            } else {
                true
            }
        })
    }

    /// Conformal normal form in place. Returns false when `v` vanishes.
    /// `skip` excludes one element id (used by the minimality filter).
    ///
    /// Single forward pass: conformal subtraction only shrinks `v`
    /// componentwise, so a reducer that failed against `v` keeps failing
    /// against every later residue and is never revisited. A successful
    /// reducer may apply repeatedly, so the cursor stays put after a hit.
    fn reduce(&self, v: &mut [i32], skip: Option<u32>) -> bool {
        let (mut vpos, mut vneg) = masks_of(v);
        if vpos == 0 && vneg == 0 {
            return false;
        }
        let mut l1v = l1_of(v);
        // reducers beyond this slot are too heavy for the current residue
        let mut hi = self.ord_l1s.partition_point(|&l| l <= l1v);
        let mut idx = 0;
        while idx < hi {
            let (gp, gn) = self.ord_masks[idx];
            let id = self.ord_ids[idx];
            let sign = if gp & !vpos == 0
                && gn & !vneg == 0
                && skip != Some(id)
                && self.divides(id as usize, 1, v)
            {
                1
            } else if gn & !vpos == 0
                && gp & !vneg == 0
                && skip != Some(id)
                && self.divides(id as usize, -1, v)
            {
                -1
            } else {
                idx += 1;
                continue;
            };
            let g = self.entries(id as usize);
            for (e, &ge) in v.iter_mut().zip(g) {
                *e -= sign * ge;
            }
            l1v -= self.ord_l1s[idx];
            if l1v == 0 {
                return false;
            }
            let m = masks_of(v);
            vpos = m.0;
            vneg = m.1;
            hi = self.ord_l1s[..hi].partition_point(|&l| l <= l1v);
            // same reducer may divide the residue again; do not advance
        }
        true
    }

    /// Is any element other than `id` conformally below element `id`?
    fn dominated(&self, id: usize) -> bool {
        let v: Vec<i32> = self.entries(id).to_vec();
        let (vpos, vneg) = masks_of(&v);
        let l1v = self.l1s[id];
        for idx in 0..self.ord_ids.len() {
            if self.ord_l1s[idx] > l1v {
                break;
            }
            let other = self.ord_ids[idx];
            if other as usize == id {
                continue;
            }
            let (gp, gn) = self.ord_masks[idx];
            if gp & !vpos == 0 && gn & !vneg == 0 && self.divides(other as usize, 1, &v) {
                return true;
            }
            if gn & !vpos == 0 && gp & !vneg == 0 && self.divides(other as usize, -1, &v) {
                return true;
            }
        }
        false
    }
}

fn sign_normalize_i32(v: &mut [i32]) {
    if let Some(&first) = v.iter().find(|&&e| e != 0) {
        if first < 0 {
            for e in v.iter_mut() {
                *e = -*e;
            }
        }
    }
}

fn degree_i32(v: &[i32]) -> usize {
    v.iter().filter(|&&e| e > 0).map(|&e| e as usize).sum()
}

/// Computes the Graver basis with explicit options.
pub fn graver_with(config: &PointConfig, opts: &GraverOptions) -> Result<GraverBasis> {
    let m = config.matrix();
    let n = m.cols();
    if n > 64 {
        return Err(Error::TooLarge(format!("{} columns; the engine handles up to 64", n)));
    }

    let mut seeds: Vec<Vec<i32>> = Vec::new();
    for v in exact::kernel_basis(m) {
        let mut w = Vec::with_capacity(n);
        for &e in v.as_slice() {
            if e.abs() > MAX_ENTRY {
                return Err(Error::Overflow("kernel basis entry too large".into()));
            }
            w.push(e as i32);
        }
        seeds.push(w);
    }
    match opts.seed_order {
        SeedOrder::Canonical => {}
        SeedOrder::Reversed => seeds.reverse(),
        SeedOrder::Shuffled(seed) => {
            // tiny deterministic Fisher-Yates on a splitmix stream
            let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
            let mut next = move || {
                state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                z ^ (z >> 31)
            };
            for i in (1..seeds.len()).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                seeds.swap(i, j);
            }
        }
    }

    let mut engine = Engine::new(n);
    for mut s in seeds {
        sign_normalize_i32(&mut s);
        if engine.reduce(&mut s, None) {
            sign_normalize_i32(&mut s);
            engine.push(&s);
        }
    }

    let chunk = 2048usize;
    let mut i = 0usize;
    while i < engine.len() {
        if let Some(deadline) = opts.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Timeout);
            }
        }
        let fi_pos = engine.pos_masks[i];
        let fi_neg = engine.neg_masks[i];
        let fi: Vec<i32> = engine.entries(i).to_vec();
        let eng = &engine;
        let mode = if i < 4 * chunk { Parallelism::Sequential } else { opts.parallelism };
        let cutoff = opts.degree_cutoff;
        let batches = par::map_ranges(mode, i, chunk, |range| {
            let mut found: Vec<Vec<i32>> = Vec::new();
            let mut scratch = vec![0i32; n];
            let consider = |s: &mut Vec<i32>, found: &mut Vec<Vec<i32>>| {
                if let Some(cut) = cutoff {
                    if degree_i32(s) > cut {
                        return;
                    }
                }
                if eng.reduce(s, None) {
                    sign_normalize_i32(s);
                    found.push(s.clone());
                }
            };
            for j in range {
                let gp = eng.pos_masks[j];
                let gn = eng.neg_masks[j];
                // f + g only when opposite signs meet somewhere
                if (fi_pos & gn) | (fi_neg & gp) != 0 {
                    for ((s, &a), &b) in scratch.iter_mut().zip(&fi).zip(eng.entries(j)) {
                        *s = a + b;
                    }
                    consider(&mut scratch, &mut found);
                }
                // f - g only when equal signs meet somewhere
                if (fi_pos & gp) | (fi_neg & gn) != 0 {
                    for ((s, &a), &b) in scratch.iter_mut().zip(&fi).zip(eng.entries(j)) {
                        *s = a - b;
                    }
                    consider(&mut scratch, &mut found);
                }
            }
            found
        });
        let mut candidates: Vec<Vec<i32>> = batches.into_iter().flatten().collect();
        candidates.sort_by(|a, b| (l1_of(a), &a[..]).cmp(&(l1_of(b), &b[..])));
        candidates.dedup();
        for mut cand in candidates {
            if let Some(cut) = opts.degree_cutoff {
                if degree_i32(&cand) > cut {
                    continue;
                }
            }
            if engine.reduce(&mut cand, None) {
                sign_normalize_i32(&mut cand);
                engine.push(&cand);
            }
        }
        i += 1;
    }

    // keep the conformally minimal elements: exactly the primitive vectors
    let eng = &engine;
    let keep_flags = par::map_ranges(opts.parallelism, engine.len(), 512, |range| {
        range.map(|id| !eng.dominated(id)).collect::<Vec<bool>>()
    });
    let mut elements: Vec<KernelVector> = keep_flags
        .into_iter()
        .flatten()
        .enumerate()
        .filter_map(|(id, keep)| {
            keep.then(|| KernelVector {
                entries: engine.entries(id).iter().map(|&e| e as i64).collect(),
            })
        })
        .collect();
    elements.sort_by(|a, b| (a.l1(), &a.entries).cmp(&(b.l1(), &b.entries)));

    let degree_histogram = config.is_homogeneous().then(|| {
        let mut hist = BTreeMap::new();
        for e in &elements {
            *hist.entry(e.degree()).or_insert(0usize) += 1;
        }
        hist
    });

    Ok(GraverBasis { config: config.clone(), elements, degree_histogram })
}

/// Deterministic conformal normal form against an explicit basis list:
/// scans in list order and subtracts the first applicable element (or its
/// negative), repeating until nothing applies. May return the zero vector.
pub fn conformal_reduce(v: &IntVector, basis: &[IntVector]) -> IntVector {
    let mut cur = v.0.clone();
    'outer: loop {
        if cur.iter().all(|&e| e == 0) {
            return IntVector(cur);
        }
        for g in basis {
            let fits = |sign: i64| {
                g.0.iter().zip(&cur).all(|(&ge, &e)| {
                    let ge = ge * sign;
                    if ge > 0 {
                        e >= ge
                    } else if ge < 0 {
                        e <= ge
                    } else {
                        true
                    }
                })
            };
            if g.0.len() == cur.len() {
                if fits(1) {
                    for (e, &ge) in cur.iter_mut().zip(&g.0) {
                        *e -= ge;
                    }
                    continue 'outer;
                }
                if fits(-1) {
                    for (e, &ge) in cur.iter_mut().zip(&g.0) {
                        *e += ge;
                    }
                    continue 'outer;
                }
            }
        }
        return IntVector(cur);
    }
}

/// Primitivity of a kernel vector, decided against the computed basis.
pub fn is_primitive_vector(config: &PointConfig, v: &[i64]) -> Result<bool> {
    if v.iter().all(|&e| e == 0) {
        return Err(Error::NotInKernel);
    }
    if config.matrix().mul_vec(v)?.iter().any(|&e| e != 0) {
        return Err(Error::NotInKernel);
    }
    let basis = graver(config)?;
    Ok(basis.contains(v))
}

/// Circuits: kernel vectors with support-minimal, one per rank+1 column
/// subset whose restriction has a one-dimensional kernel.
pub fn circuits(config: &PointConfig) -> Result<Vec<KernelVector>> {
    let m = config.matrix();
    let n = m.cols();
    if n > 24 {
        return Err(Error::TooLarge(format!(
            "{} columns; circuit enumeration is capped at 24",
            n
        )));
    }
    let r = exact::rank(m);
    if r + 1 > n {
        return Ok(Vec::new());
    }
    let mut found: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
    for subset in exact::combinations(n, r + 1) {
        let rows: Vec<Vec<i64>> = (0..m.rows())
            .map(|row| subset.iter().map(|&c| m.get(row, c)).collect())
            .collect();
        let sub = IntMatrix::from_rows(rows)?;
        let kernel = exact::kernel_basis(&sub);
        if kernel.len() == 1 {
            let mut full = vec![0i64; n];
            for (pos, &col) in subset.iter().enumerate() {
                full[col] = kernel[0].as_slice()[pos];
            }
            found.insert(IntVector(full).sign_normalized().0);
        }
    }
    let mut elements: Vec<KernelVector> =
        found.into_iter().map(|entries| KernelVector { entries }).collect();
    // defensive support-minimality filter; candidates from one-dimensional
    // kernels are already minimal
    let supports: Vec<u64> = elements
        .iter()
        .map(|e| {
            let mut s = 0u64;
            for (i, &x) in e.entries.iter().enumerate() {
                if x != 0 {
                    s |= 1 << i;
                }
            }
            s
        })
        .collect();
    let keep: Vec<bool> = (0..elements.len())
        .map(|i| {
            !(0..elements.len())
                .any(|j| j != i && supports[j] & !supports[i] == 0 && supports[j] != supports[i])
        })
        .collect();
    let mut iter = keep.iter();
    elements.retain(|_| *iter.next().unwrap());
    elements.sort_by(|a, b| (a.l1(), &a.entries).cmp(&(b.l1(), &b.entries)));
    Ok(elements)
}
