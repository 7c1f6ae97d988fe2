mod common;

use common::{existent, rel};
use mink_core::solvers::{RankEquationInstance, XayFree};
use mink_core::verify::{random_matrix, random_rank};
use mink_core::{
    bc_parameterization, generate, mink_inverse_frf, mink_rank_characterization, rank, rank_equation_solve,
    solve_axb_d, solve_xay_b, GenKind, GenSpec, Matrix, Tolerance,
};

#[test]
fn every_produced_matrix_solves_axb() {
    let t = Tolerance::default();
    let a = random_rank(5, 4, 2, 1);
    let b = random_rank(3, 6, 2, 2);
    let x0 = random_matrix(4, 3, 3, 1.0);
    let d = &(&a * &x0) * &b;
    let sol = solve_axb_d(&a, &b, &d, &random_matrix(4, 5, 4, 1.0), &random_matrix(6, 3, 5, 1.0), &t).unwrap();
    for k in 0..50 {
        let y = random_matrix(4, 3, 100 + k, 3.0);
        let z = random_matrix(4, 3, 200 + k, 3.0);
        let x = sol.produce(&y, &z).unwrap();
        assert!(sol.residual(&x, &d) < 1e-9 * d.norm_fro(), "draw {k}");
    }
}

#[test]
fn xay_solutions_on_rectangular_shapes() {
    let t = Tolerance::default();
    for (shape_a, shape_b, r, seed) in [((4, 5), (3, 6), 2, 10), ((3, 6), (4, 5), 3, 20)] {
        let a = random_rank(shape_a.0, shape_a.1, r, seed);
        let b = random_rank(shape_b.0, shape_b.1, r, seed + 1);
        let x1 = random_matrix(r, r, seed + 2, 1.0);
        let mut free = XayFree::zeros(shape_a, shape_b, r);
        free.x2 = random_matrix(r, shape_a.0 - r, seed + 3, 1.0);
        free.y4 = random_matrix(shape_a.1 - r, shape_b.1 - r, seed + 4, 1.0);
        let (x, y) = solve_xay_b(&a, &b, &x1, &free, &t).unwrap();
        assert_eq!(x.shape(), (shape_b.0, shape_a.0));
        assert_eq!(y.shape(), (shape_a.1, shape_b.1));
        assert!(rel(&(&(&x * &a) * &y), &b) < 1e-9);
    }
}

#[test]
fn bordered_rank_is_tight_and_fragile() {
    let t = Tolerance::default();
    let loose = t.for_computed();
    for i in 0..20 {
        let a = existent(i);
        let c = mink_rank_characterization(&a, &t).unwrap();
        assert!(c.holds(&t), "instance {i}");
        assert_eq!(c.bordered_rank, rank(&a, &t).unwrap());
        let inst = c.instance(&a);
        let noise = random_matrix(c.z.rows(), c.z.cols(), 900 + i, 1e-3 / (c.z.rows() * c.z.cols()) as f64);
        let bumped = rank(&inst.bordered(&(&c.z + &noise)).unwrap(), &loose).unwrap();
        assert!(bumped > c.bordered_rank, "instance {i}");
        let sol = rank_equation_solve(&inst, &t).unwrap();
        assert!(rel(&sol.x, &c.z) < 1e-9);
    }
}

#[test]
fn bc_parameterization_is_parameter_free_in_its_answer() {
    let t = Tolerance::default();
    for seed in 0..4 {
        let a = generate(&GenSpec { rows: 6, cols: 6, rank: 3, kind: GenKind::Existent, seed, scale: 1.0 }).unwrap();
        let minv = mink_inverse_frf(&a, &t).unwrap().result;
        for k in 0..5 {
            let y1 = random_matrix(6, 3, 10 * seed + k, 1.0);
            let y2 = random_matrix(6, 3, 10 * seed + k + 5, 1.0);
            let (b, c) = bc_parameterization(&a, &y1, &y2, &t).unwrap();
            let inst = RankEquationInstance::new(a.clone(), b, c).unwrap();
            let sol = rank_equation_solve(&inst, &t).unwrap();
            assert!(rel(&sol.x, &minv) < 1e-8, "seed {seed}, draw {k}");
        }
    }
}

#[test]
fn bc_parameterization_needs_square_input() {
    let rect = Matrix::zeros(3, 2);
    assert!(bc_parameterization(&rect, &Matrix::zeros(3, 0), &Matrix::zeros(3, 3), &Tolerance::default()).is_err());
}
