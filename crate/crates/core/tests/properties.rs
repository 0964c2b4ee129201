use gradedrep::fixtures::{fix_b, fix_c};
use gradedrep::homs::ghom;
use gradedrep::{Field, GradedModule, Matrix, Quiver};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(2).unwrap()), Just(Field::prime(5).unwrap())]
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (field(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_i64(f, r, c, &v))
    })
}

fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..5).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..7).prop_map(move |ends| {
            let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
            let arrows = ends
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| (format!("x{k}"), labels[s].clone(), labels[t].clone()))
                .collect();
            Quiver::from_parts(labels, arrows).unwrap()
        })
    })
}

fn mat_pow(a: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut r: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    for _ in 0..k {
        r = (0..n).map(|i| (0..n).map(|j| (0..n).map(|m| r[i][m] * a[m][j]).sum()).collect()).collect();
    }
    r
}

proptest! {
    #[test]
    fn kernel_is_annihilated(a in matrix()) {
        let k = a.kernel();
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + a.rank(), a.cols());
    }

    #[test]
    fn rank_of_transpose(a in matrix()) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_recovers_a_consistent_system(a in matrix(), seed in prop::collection::vec(-3i64..=3, 6)) {
        let f = a.field();
        let x = Matrix::from_i64(f, a.cols(), 1, &seed[..a.cols()]);
        let b = a.mul(&x);
        let y = a.solve(&b).unwrap().expect("consistent");
        prop_assert_eq!(a.mul(&y), b);
    }

    #[test]
    fn path_counts_are_adjacency_powers(q in quiver(), len in 0usize..4) {
        let p = mat_pow(&q.adjacency(), len);
        for x in 0..q.vertex_count() {
            for y in 0..q.vertex_count() {
                prop_assert_eq!(q.paths(len, x, y).unwrap().len(), p[x][y]);
            }
        }
    }

    #[test]
    fn opposite_swaps_path_directions(q in quiver(), oi in any::<bool>(), oo in any::<bool>()) {
        let first = q.label(0).to_string();
        let last = q.label(q.vertex_count() - 1).to_string();
        let ins: Vec<&str> = if oi { vec![first.as_str()] } else { vec![] };
        let outs: Vec<&str> = if oo { vec![last.as_str()] } else { vec![] };
        let q = q.with_open(&ins, &outs).unwrap();
        let op = q.opposite();
        let (a, b) = (q.analyze(), op.analyze());
        prop_assert_eq!(a.infinite_forward_path, b.infinite_backward_path);
        prop_assert_eq!(a.infinite_backward_path, b.infinite_forward_path);
        prop_assert_eq!(
            a.forward_status(!q.open_out().is_empty()),
            b.backward_status(!op.open_in().is_empty())
        );
        prop_assert_eq!(op.opposite(), q);
    }

    #[test]
    fn dual_reverses_degrees(a in 0usize..6, s in -3i64..=3) {
        let c = fix_c();
        let p = GradedModule::projective(&c, a, s, None).unwrap();
        let d = p.dual().unwrap();
        for (i, x, n) in p.dims_list() {
            prop_assert_eq!(d.d(-i, x), n);
        }
        prop_assert_eq!(d.total_dim(), p.total_dim());
    }

    #[test]
    fn hom_is_additive(x in 0usize..2, y in 0usize..2, s in -2i64..=2, t in -2i64..=2) {
        let b = fix_b();
        let m = GradedModule::projective(&b, x, s, None).unwrap();
        let m2 = GradedModule::simple(&b, y, t);
        let n = GradedModule::injective(&b, y, 0, None).unwrap();
        let sum = GradedModule::direct_sum(&b, &[&m, &m2]).unwrap().module;
        prop_assert_eq!(
            ghom(&sum, &n).unwrap().dim(),
            ghom(&m, &n).unwrap().dim() + ghom(&m2, &n).unwrap().dim()
        );
    }
}
