//! Shared oracles and module samplers for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use gradedrep::homs::ghom;
use gradedrep::{Field, GradedAlgebra, GradedModule, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn digits(mut k: usize, p: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = k % p;
            k /= p;
            d
        })
        .collect()
}

fn log_p(mut n: usize, p: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "count is not a power of the characteristic");
        n /= p;
        k += 1;
    }
    k
}

/// One slot of the off-diagonal data of an extension: the arrow `a` at
/// degree `i`, a `rows x cols` block from `M_i(s a)` to `N_{i+1}(t a)`.
struct Slot {
    i: i64,
    a: usize,
    rows: usize,
    cols: usize,
}

/// `dim Ext¹(M, N)` by listing every block upper triangular module
/// structure on `N ⊕ M` over a prime field and every coboundary.
/// Returns `None` when the enumeration would exceed `limit` candidates.
pub fn ext1_oracle(m: &GradedModule, n: &GradedModule, limit: usize) -> Option<usize> {
    let alg = m.algebra();
    let field = alg.field();
    let p = match field {
        Field::Prime(p) => p as usize,
        _ => panic!("the enumeration oracle needs a prime field"),
    };
    let (ml, mh) = m.window();
    let (nl, nh) = n.window();
    let lo = ml.min(nl);
    let hi = mh.max(nh);
    let m = m.widened(lo, hi).expect("widen M");
    let n = n.widened(lo, hi).expect("widen N");
    let nv = alg.vertex_count();
    let q = alg.quiver();

    let mut slots = Vec::new();
    for i in lo..hi {
        for a in 0..alg.arrow_count() {
            let ar = q.arrow(a);
            let (rows, cols) = (n.d(i + 1, ar.to), m.d(i, ar.from));
            if rows * cols > 0 {
                slots.push(Slot { i, a, rows, cols });
            }
        }
    }
    let dz: usize = slots.iter().map(|s| s.rows * s.cols).sum();
    let dh: usize = (lo..=hi).flat_map(|i| (0..nv).map(move |x| (i, x))).map(|(i, x)| n.d(i, x) * m.d(i, x)).sum();
    if p.checked_pow(dz as u32).map_or(true, |c| c > limit) || p.checked_pow(dh as u32).map_or(true, |c| c > limit) {
        return None;
    }

    let scal = |d: usize| field.int(d as i64);
    let build = |delta: &[usize]| -> GradedModule {
        let dims: Vec<Vec<usize>> = (lo..=hi).map(|i| (0..nv).map(|x| n.d(i, x) + m.d(i, x)).collect()).collect();
        let mut off = 0;
        let mut maps = Vec::new();
        for i in lo..hi {
            let mut row = Vec::new();
            for a in 0..alg.arrow_count() {
                let ar = q.arrow(a);
                let na = n.action(a, i).unwrap();
                let ma = m.action(a, i).unwrap();
                let (nr, nc) = (na.rows(), na.cols());
                let (mr, mc) = (ma.rows(), ma.cols());
                let mut e = Matrix::zeros(field, nr + mr, nc + mc);
                e.paste(0, 0, &na);
                e.paste(nr, nc, &ma);
                if slots.iter().any(|s| s.i == i && s.a == a) {
                    let block = Matrix::new(field, nr, mc, delta[off..off + nr * mc].iter().map(|&d| scal(d)).collect()).unwrap();
                    e.paste(0, nc, &block);
                    off += nr * mc;
                }
                debug_assert_eq!((e.rows(), e.cols()), (dims[(i - lo + 1) as usize][ar.to], dims[(i - lo) as usize][ar.from]));
                row.push(e);
            }
            maps.push(row);
        }
        GradedModule::new(alg, lo, hi, gradedrep::Edge::Exact, gradedrep::Edge::Exact, dims, maps).unwrap()
    };

    let mut cocycles = 0usize;
    for k in 0..p.pow(dz as u32) {
        if build(&digits(k, p, dz)).validate().is_ok() {
            cocycles += 1;
        }
    }

    // δ_h(a, i) = N_a h(i, s a) − h(i+1, t a) M_a.
    let mut boundaries: HashSet<Vec<String>> = HashSet::new();
    for k in 0..p.pow(dh as u32) {
        let c = digits(k, p, dh);
        let mut off = 0;
        let mut h = std::collections::HashMap::new();
        for i in lo..=hi {
            for x in 0..nv {
                let (r, cc) = (n.d(i, x), m.d(i, x));
                h.insert((i, x), Matrix::new(field, r, cc, c[off..off + r * cc].iter().map(|&d| scal(d)).collect()).unwrap());
                off += r * cc;
            }
        }
        let mut v = Vec::new();
        for s in &slots {
            let ar = q.arrow(s.a);
            let d = n.action(s.a, s.i).unwrap().mul(&h[&(s.i, ar.from)]).sub(&h[&(s.i + 1, ar.to)].mul(&m.action(s.a, s.i).unwrap()));
            v.extend(d.data().iter().map(|s| s.to_string()));
        }
        boundaries.insert(v);
    }
    Some(log_p(cocycles, p) - log_p(boundaries.len(), p))
}

/// Finite modules built from `seeds`: the seeds themselves plus kernels,
/// cokernels and direct sums drawn at random.
pub fn sample_modules(seeds: &[GradedModule], count: usize, seed: u64) -> Vec<GradedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<GradedModule> = seeds.iter().filter(|m| !m.is_zero()).cloned().collect();
    let mut tries = 0;
    while out.len() < count && tries < 40 * count {
        tries += 1;
        let a = &seeds[rng.gen_range(0..seeds.len())];
        let b = &seeds[rng.gen_range(0..seeds.len())];
        if rng.gen_bool(0.3) {
            let x = out[rng.gen_range(0..out.len())].clone();
            let sum = GradedModule::direct_sum(a.algebra(), &[a, &x]).unwrap().module.trimmed();
            if !out.iter().any(|o| o.same_data(&sum)) {
                out.push(sum);
            }
            continue;
        }
        let Ok(h) = ghom(a, b) else { continue };
        if h.dim() == 0 {
            continue;
        }
        let field = a.field();
        let c: Vec<Scalar> = (0..h.dim()).map(|_| field.int(rng.gen_range(0..3))).collect();
        let f = h.element(&c).unwrap();
        let new = if rng.gen_bool(0.5) { f.cokernel().unwrap().module } else { f.kernel().unwrap().0 };
        let new = new.trimmed();
        if !new.is_zero() && !out.iter().any(|o| o.same_data(&new)) {
            out.push(new);
        }
    }
    out.truncate(count);
    out
}

/// Simples with shifts, and every finite projective and injective.
pub fn standard_seeds(alg: &GradedAlgebra, shifts: std::ops::RangeInclusive<i64>) -> Vec<GradedModule> {
    let mut v = Vec::new();
    for a in 0..alg.vertex_count() {
        for s in shifts.clone() {
            v.push(GradedModule::simple(alg, a, s));
        }
        for m in [GradedModule::projective(alg, a, 0, None), GradedModule::injective(alg, a, 0, None)] {
            if let Ok(m) = m {
                if m.is_exact() {
                    v.push(m);
                }
            }
        }
    }
    v
}
