//! Poly-Poisson data from two Lie-Poisson factors sharing one leaf.

use kpoisson::polypoisson::foliated_construction;
use kpoisson::scalar::qi;
use kpoisson::{Conventions, Matrix, Subspace, Tol, Q};

fn main() {
    let conv = Conventions::default();
    // Lie-Poisson bivector of so(3) at e3
    let l = Matrix::<Q>::from_i64(3, 3, &[0, -1, 0, 1, 0, 0, 0, 0, 0]);
    let pr1 = Matrix::<Q>::from_fn(3, 6, |i, j| qi((i == j) as i64));
    let pr2 = Matrix::<Q>::from_fn(3, 6, |i, j| qi((j == i + 3) as i64));
    let e = |i: usize| (0..6).map(|j| qi((i == j) as i64)).collect::<Vec<Q>>();
    let f = Subspace::span(6, &[e(0), e(1), e(3), e(4)], Tol::EXACT).unwrap();
    let out = foliated_construction(&[pr1, pr2], &[l.clone(), l], &f, conv).unwrap();
    println!(
        "dim S = {}, leaf dimension {}, axioms {}, leaf forms match {}",
        out.point.s().dim(),
        out.point.characteristic_distribution().dim(),
        out.point.check_axioms().pass(),
        out.leaf_forms_match
    );

    let bad = Subspace::span(6, &[e(2), e(5)], Tol::EXACT).unwrap();
    let l = Matrix::<Q>::from_i64(3, 3, &[0, -1, 0, 1, 0, 0, 0, 0, 0]);
    let pr = Matrix::<Q>::from_fn(3, 6, |i, j| qi((i == j) as i64));
    match foliated_construction(&[pr], &[l], &bad, conv) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("leaf outside the image: {e}"),
    }
}
