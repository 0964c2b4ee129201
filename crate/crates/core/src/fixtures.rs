//! Small algebras used throughout the tests and examples, plus a seeded
//! generator of random monomial algebras.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{GradedAlgebra, Relation};
use crate::exactla::{Field, Matrix};
use crate::gmodule::{Edge, GradedModule};
use crate::quiver::Quiver;

/// Loop `a` at `1` and `b: 1 → 2` with `ba = 0`. `Λe_1` is unbounded.
pub fn fix_a() -> GradedAlgebra {
    fix_a_over(Field::Rational)
}

pub fn fix_a_over(field: Field) -> GradedAlgebra {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2")]).expect("quiver");
    GradedAlgebra::from_named(field, q, &[vec![(1, vec!["b", "a"])]]).expect("algebra")
}

/// `a: 1 → 2`, no relations.
pub fn fix_b() -> GradedAlgebra {
    fix_b_over(Field::Rational)
}

pub fn fix_b_over(field: Field) -> GradedAlgebra {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).expect("quiver");
    GradedAlgebra::new(field, q, vec![]).expect("algebra")
}

fn diamond_quiver() -> Quiver {
    Quiver::new(
        &["1", "2", "3", "4", "5", "6"],
        &[("a", "1", "2"), ("b", "1", "3"), ("g", "2", "4"), ("d", "3", "4"), ("e", "4", "5"), ("z", "5", "6")],
    )
    .expect("quiver")
}

/// Commutative square `ga = db` on `1 → {2,3} → 4` followed by the ray
/// `4 → 5 → 6`, read literally as a finite algebra.
pub fn fix_c() -> GradedAlgebra {
    fix_c_over(Field::Rational)
}

pub fn fix_c_over(field: Field) -> GradedAlgebra {
    GradedAlgebra::from_named(field, diamond_quiver(), &[vec![(1, vec!["g", "a"]), (-1, vec!["d", "b"])]])
        .expect("algebra")
}

/// As [`fix_c`], with the ray continuing past `6`.
pub fn fix_c_ray() -> GradedAlgebra {
    let q = diamond_quiver().with_open(&[], &["6"]).expect("open vertex");
    GradedAlgebra::from_named(Field::Rational, q, &[vec![(1, vec!["g", "a"]), (-1, vec!["d", "b"])]]).expect("algebra")
}

fn linear_quiver(open_in: bool) -> Quiver {
    let labels: Vec<String> = (0..=5).map(|n| n.to_string()).collect();
    let arrows: Vec<(String, String, String)> =
        (1..=5).map(|n| (format!("a{n}"), n.to_string(), (n - 1).to_string())).collect();
    let q = Quiver::from_parts(labels, arrows).expect("quiver");
    if open_in {
        q.with_open(&["5"], &[]).expect("open vertex")
    } else {
        q
    }
}

fn linear_algebra(q: Quiver) -> GradedAlgebra {
    let names: Vec<(String, String)> = (1..=4).map(|n| (format!("a{n}"), format!("a{}", n + 1))).collect();
    let rels: Vec<Vec<(i64, Vec<&str>)>> =
        names.iter().map(|(x, y)| vec![(1, vec![x.as_str(), y.as_str()])]).collect();
    GradedAlgebra::from_named(Field::Rational, q, &rels).expect("algebra")
}

/// Linear quiver `5 → 4 → ⋯ → 0` with radical square zero, cut from the
/// infinite ray `⋯ → 6 → 5 → ⋯`: vertex `5` is open-in.
pub fn fix_d() -> GradedAlgebra {
    linear_algebra(linear_quiver(true))
}

/// The same data taken as a finite algebra.
pub fn fix_d_closed() -> GradedAlgebra {
    linear_algebra(linear_quiver(false))
}

/// Square `w → z → y`, `w → x → y` without relations.
pub fn string_square() -> GradedAlgebra {
    let q = Quiver::new(&["w", "x", "y", "z"], &[("al", "x", "y"), ("be", "z", "y"), ("ga", "w", "z"), ("de", "w", "x")])
        .expect("quiver");
    GradedAlgebra::new(Field::Rational, q, vec![]).expect("algebra")
}

/// A string module over [`string_square`] whose endomorphism algebra is
/// two dimensional and local: top `w` in degree -1, `x` twice and `z` in
/// degree 0, socle `y` in degree 1.
pub fn string_module(alg: &GradedAlgebra) -> GradedModule {
    let f = alg.field();
    let m = |r, c, v: &[i64]| Matrix::from_i64(f, r, c, v);
    let dims = vec![vec![1, 0, 0, 0], vec![0, 2, 0, 1], vec![0, 0, 1, 0]];
    let maps = vec![
        vec![m(0, 0, &[]), m(0, 0, &[]), m(1, 1, &[1]), m(2, 1, &[1, 0])],
        vec![m(1, 2, &[0, 1]), m(1, 1, &[1]), m(0, 0, &[]), m(0, 0, &[])],
    ];
    GradedModule::new(alg, -1, 1, Edge::Exact, Edge::Exact, dims, maps).expect("string module")
}

/// Degree cap used when certifying that a random algebra is bounded.
pub const RANDOM_CAP: usize = 12;

/// A random monomial algebra on at most four vertices, redrawn until it is
/// locally bounded on both sides within [`RANDOM_CAP`] degrees.
pub fn random_monomial(seed: u64, field: Field) -> GradedAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(alg) = draw_monomial(&mut rng, field) {
            return alg;
        }
    }
}

fn draw_monomial(rng: &mut ChaCha8Rng, field: Field) -> Option<GradedAlgebra> {
    let nv = rng.gen_range(1..=4usize);
    let na = rng.gen_range(1..=nv + 2);
    let labels: Vec<String> = (1..=nv).map(|v| v.to_string()).collect();
    let mut ends = Vec::new();
    let arrows: Vec<(String, String, String)> = (0..na)
        .map(|k| {
            let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
            ends.push((s, t));
            (format!("x{k}"), labels[s].clone(), labels[t].clone())
        })
        .collect();
    let q = Quiver::from_parts(labels, arrows).ok()?;
    // Length-two paths `b·a` with t(a) = s(b), each kept as a zero relation
    // with probability 1/2.
    let mut composable: Vec<(usize, usize)> = Vec::new();
    for (a, &(_, ta)) in ends.iter().enumerate() {
        for (b, &(sb, _)) in ends.iter().enumerate() {
            if ta == sb {
                composable.push((b, a));
            }
        }
    }
    composable.shuffle(rng);
    let mut rels = Vec::new();
    let mut allowed = vec![Vec::new(); na];
    for (b, a) in composable {
        if rng.gen_bool(0.5) {
            let p = q.path_from_indices(vec![b, a]).ok()?;
            rels.push(Relation { terms: vec![(field.one(), p)] });
        } else {
            allowed[a].push(b);
        }
    }
    // A quadratic monomial algebra is finite exactly when the graph of
    // surviving arrow pairs has no cycle. Rejecting here keeps the towers
    // from growing exponentially.
    if has_cycle(&allowed) {
        return None;
    }
    let alg = GradedAlgebra::new(field, q, rels).ok()?;
    let b = alg.boundedness(RANDOM_CAP).ok()?;
    (b.left_bounded() && b.right_bounded()).then_some(alg)
}

fn has_cycle(next: &[Vec<usize>]) -> bool {
    fn visit(v: usize, next: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &next[v] {
            if state[w] == 1 || state[w] == 0 && visit(w, next, state) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    let mut state = vec![0u8; next.len()];
    (0..next.len()).any(|v| state[v] == 0 && visit(v, next, &mut state))
}

/// Every named fixture, for corpus-wide checks.
pub fn corpus() -> Vec<(&'static str, GradedAlgebra)> {
    vec![
        ("fix_a", fix_a()),
        ("fix_b", fix_b()),
        ("fix_c", fix_c()),
        ("fix_c_ray", fix_c_ray()),
        ("fix_d", fix_d()),
        ("fix_d_closed", fix_d_closed()),
        ("string_square", string_square()),
    ]
}

/// Look a fixture up by name.
pub fn by_name(name: &str) -> Option<GradedAlgebra> {
    corpus().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
