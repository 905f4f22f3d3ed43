//! Annihilators, intersections, preimages and quotients over the rationals,
//! with the same computation repeated in floating point.

use kpoisson::scalar::qi;
use kpoisson::{Matrix, Subspace, Tol, Q};

fn span(n: usize, vs: &[&[i64]]) -> Subspace<Q> {
    let vs: Vec<Vec<Q>> = vs.iter().map(|v| v.iter().map(|&x| qi(x)).collect()).collect();
    Subspace::span(n, &vs, Tol::EXACT).unwrap()
}

fn main() {
    let u = span(4, &[&[1, 2, 0, 0], &[0, 1, 1, 0], &[1, 3, 1, 0]]);
    let v = span(4, &[&[0, 0, 1, 1], &[1, 0, 0, 0]]);
    println!("U (dim {}):\n{}", u.dim(), u.basis());
    println!("U° (dim {}):\n{}", u.annihilator().dim(), u.annihilator().basis());

    let meet = u.intersect(&v).unwrap();
    let sum = u.sum(&v).unwrap();
    println!("dim(U + V) + dim(U ∩ V) = {} + {} = dim U + dim V = {} + {}", sum.dim(), meet.dim(), u.dim(), v.dim());

    let l = Matrix::<Q>::from_i64(2, 4, &[1, 0, -1, 0, 0, 1, 0, 1]);
    let pre = Subspace::preimage(&l, &span(2, &[&[1, 1]])).unwrap();
    println!("L⁻¹(span(1,1)) has dimension {} and contains Ker L: {}", pre.dim(), Subspace::kernel(&l, Tol::EXACT).is_subspace_of(&pre));

    let quot = u.quotient();
    println!("ℝ⁴/U has dimension {}; projection:\n{}", quot.dim(), quot.projection);

    let uf = Subspace::span(4, &u.basis().to_f64().row_vecs(), Tol(1e-9)).unwrap();
    println!("float basis of U:\n{}", uf.basis());
}
