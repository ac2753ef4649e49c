//! Temporary investigation harness.

use scrollgb::cpi;
use scrollgb::graver::graver;
use scrollgb::par::Parallelism;
use scrollgb::scroll::{build_config, ScrollSpec};
use std::collections::BTreeSet;

/// All kernel vectors of the homogeneous config with side degree <= maxdeg,
/// by raw enumeration of column multiset pairs. Independent of the engine
/// and of the identity machinery.
fn bounded_kernel_vectors(m: &scrollgb::exact::IntMatrix, maxdeg: usize) -> Vec<Vec<i64>> {
    let n = m.cols();
    // multisets of columns of size k, as sorted index vectors
    fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
    let col_sum = |cols: &[usize]| -> Vec<i64> {
        let mut s = vec![0i64; m.rows()];
        for &c in cols {
            for r in 0..m.rows() {
                s[r] += m.get(r, c);
            }
        }
        s
    };
    let mut found = BTreeSet::new();
    for k in 1..=maxdeg {
        let sets = multisets(n, k);
        for p in &sets {
            let sp = col_sum(p);
            for q in &sets {
                if col_sum(q) != sp {
                    continue;
                }
                let mut v = vec![0i64; n];
                for &c in p {
                    v[c] += 1;
                }
                for &c in q {
                    v[c] -= 1;
                }
                if v.iter().all(|&e| e == 0) {
                    continue;
                }
                // disjoint supports required of a reduced vector
                if p.iter().any(|c| q.contains(c)) {
                    continue;
                }
                if v.iter().find(|&&e| e != 0).map(|&e| e < 0).unwrap_or(false) {
                    for e in &mut v {
                        *e = -*e;
                    }
                }
                found.insert(v);
            }
        }
    }
    found.into_iter().collect()
}

fn below(g: &[i64], w: &[i64]) -> bool {
    let fits = |sign: i64| {
        g.iter().zip(w).all(|(&ge, &e)| {
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
    fits(1) || fits(-1)
}

#[test]
#[ignore]
fn investigate_s44() {
    let spec = ScrollSpec::new(vec![5, 5]).unwrap();
    let bound = cpi::enumeration_bound(&spec);
    println!("bound = {}", bound);
    let oracle = cpi::oracle_vectors(&spec, bound, Parallelism::default());
    let config = build_config(&spec);
    let basis = graver(&config).unwrap();
    let engine: Vec<Vec<i64>> = basis.elements().iter().map(|e| e.entries().to_vec()).collect();
    println!("oracle {} vs engine {}", oracle.len(), engine.len());
    let oset: BTreeSet<_> = oracle.iter().cloned().collect();
    let eset: BTreeSet<_> = engine.iter().cloned().collect();
    for v in oset.difference(&eset) {
        println!("oracle only: {:?}", v);
    }
    for v in eset.difference(&oset) {
        println!("engine only: {:?}", v);
    }

    // independent route: all kernel vectors of degree <= 4, primitivity by
    // direct domination over that set
    let kernel = bounded_kernel_vectors(config.matrix(), 4);
    println!("bounded kernel vectors (deg <= 4): {}", kernel.len());
    let mut primitive_deg4 = Vec::new();
    for w in &kernel {
        let deg: i64 = w.iter().filter(|&&e| e > 0).sum();
        if deg != 4 {
            continue;
        }
        let dominated = kernel.iter().any(|g| g != w && below(g, w));
        if !dominated {
            primitive_deg4.push(w.clone());
        }
    }
    println!("brute-force primitive degree-4 count: {}", primitive_deg4.len());
    let bset: BTreeSet<_> = primitive_deg4.iter().cloned().collect();
    let e4set: BTreeSet<_> = engine
        .iter()
        .filter(|v| v.iter().filter(|&&e| e > 0).map(|&e| e).sum::<i64>() == 4)
        .cloned()
        .collect();
    println!("engine degree-4 count: {}", e4set.len());
    for v in e4set.difference(&bset) {
        println!("engine-only deg4: {:?}", v);
    }
    for v in bset.difference(&e4set) {
        println!("brute-only deg4: {:?}", v);
    }
}

#[test]
#[ignore]
fn time_engine_rows() {
    for blocks in [vec![7usize, 3], vec![6, 4], vec![5, 5]] {
        let spec = ScrollSpec::new(blocks.clone()).unwrap();
        let config = build_config(&spec);
        let t = std::time::Instant::now();
        let basis = graver(&config).unwrap();
        println!(
            "blocks {:?}: {} elements in {:.2}s",
            blocks,
            basis.len(),
            t.elapsed().as_secs_f64()
        );
    }
}

#[test]
#[ignore]
fn time_engine_s65() {
    let spec = ScrollSpec::new(vec![7, 6]).unwrap();
    let config = build_config(&spec);
    let t = std::time::Instant::now();
    let basis = graver(&config).unwrap();
    println!(
        "blocks [7,6]: {} elements in {:.2}s",
        basis.len(),
        t.elapsed().as_secs_f64()
    );
}


#[test]
#[ignore]
fn time_s555_oracle() {
    let spec = ScrollSpec::new(vec![6, 6, 6]).unwrap();
    let t = std::time::Instant::now();
    let oracle = cpi::oracle_vectors(&spec, 9, Parallelism::default());
    println!("oracle blocks [6,6,6] bound 9: {} vectors in {:.1}s", oracle.len(), t.elapsed().as_secs_f64());
    let mut hist = std::collections::BTreeMap::new();
    for v in &oracle {
        let d: i64 = v.iter().filter(|&&e| e > 0).sum();
        *hist.entry(d).or_insert(0usize) += 1;
    }
    println!("histogram: {:?}", hist);
}
