//! The canonical form on k-covelocities, its flat map and the induced
//! poly-Poisson structure.

use kpoisson::polypoisson::from_polysymplectic;
use kpoisson::scalar::{qi, Rendered};
use kpoisson::{Conventions, PolyForm, Tol, Q};

fn main() {
    let conv = Conventions::default();
    for (m, k) in [(1, 1), (1, 2), (2, 2)] {
        let omega = PolyForm::<Q>::canonical_covelocity(m, k, Tol::EXACT, conv);
        let verdict = omega.is_polysymplectic();
        let pp = from_polysymplectic(&omega).unwrap();
        println!(
            "(m, k) = ({m}, {k}): dimension {}, polysymplectic {}, dim S = {}, axioms {}",
            omega.m(),
            verdict.pass,
            pp.s().dim(),
            pp.check_axioms().pass()
        );
    }

    let omega = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, conv);
    println!("flat of (q, p¹, p²):\n{}", omega.flat());
    let x = vec![qi(1), qi(2), qi(-1)];
    let pp = from_polysymplectic(&omega).unwrap();
    let back = pp.apply(&omega.flat_apply(&x)).unwrap();
    println!("sharp(flat(x)) = {} for x = {}", Rendered(&back), Rendered(&x));

    // two forms with a common kernel
    let degenerate = PolyForm::<Q>::new(3, vec![omega.form(0).clone(), omega.form(0).clone()], Tol::EXACT, conv).unwrap();
    let v = degenerate.is_polysymplectic();
    println!("repeating ω¹ gives polysymplectic = {}, kernel witness {}", v.pass, Rendered(&v.witness.unwrap()));
}
