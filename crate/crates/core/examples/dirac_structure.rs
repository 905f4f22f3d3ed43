//! Dirac-type poly-Poisson structures from subspaces of a polysymplectic
//! space, including one that is rejected.

use kpoisson::polypoisson::{dirac_type, polysymplectic_orthogonal};
use kpoisson::scalar::qi;
use kpoisson::{Conventions, PolyForm, Subspace, Tol, Q};

fn main() {
    let conv = Conventions::default();
    let omega = PolyForm::<Q>::canonical_covelocity(2, 1, Tol::EXACT, conv);
    let d = Subspace::span(4, &[vec![qi(1), qi(0), qi(0), qi(0)], vec![qi(0), qi(0), qi(1), qi(0)]], Tol::EXACT).unwrap();
    let out = dirac_type(&omega, &d).unwrap();
    println!("D = span(e1, e3) in ℝ⁴: dim S = {}, D⊥ dimension {}", out.point.s().dim(), out.d_perp.dim());
    println!("characteristic distribution equals D: {}", out.point.characteristic_distribution() == d);

    let omega = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, conv);
    let d = Subspace::span(3, &[vec![qi(0), qi(1), qi(0)], vec![qi(0), qi(0), qi(1)]], Tol::EXACT).unwrap();
    let perp = polysymplectic_orthogonal(&omega, &d).unwrap();
    println!("D = span(∂p¹, ∂p²): D ∩ D⊥ has dimension {}", d.intersect(&perp).unwrap().dim());
    match dirac_type(&omega, &d) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
}
