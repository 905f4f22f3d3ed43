//! Jacobi identity against the integrability identity on (g*)ᵏ, in exact
//! arithmetic, for bundled algebras and a bracket that breaks Jacobi.

use kpoisson::liepoisson::{gstar_k, gstar_k_integrability, LieAlgebra};
use kpoisson::scalar::qi;
use kpoisson::{Conventions, Q};

fn main() {
    let conv = Conventions::default();
    let algebras = [
        ("so3", LieAlgebra::<Q>::so3(conv)),
        ("heisenberg3", LieAlgebra::heisenberg3(conv)),
        ("sl2", LieAlgebra::sl2(conv)),
        ("abelian3", LieAlgebra::abelian(3, conv)),
        ("non_jacobi", LieAlgebra::non_jacobi(conv)),
    ];
    for (name, g) in &algebras {
        let jac = g.jacobi_check();
        let verdicts: Vec<bool> = (1..=3).map(|k| gstar_k_integrability(g, k).unwrap().pass).collect();
        println!("{name:12} Jacobi {:5}  integrability k=1,2,3 {:?}", jac.pass, verdicts);
        if let Some([a, b]) = gstar_k_integrability(g, 2).unwrap().witness {
            println!("{:12} failing basis pair (e{}, e{})", "", a + 1, b + 1);
        }
    }

    let so3 = &algebras[0].1;
    let pp = gstar_k(so3, &[vec![qi(0), qi(0), qi(1)], vec![qi(1), qi(0), qi(0)]]).unwrap();
    println!("(so3*)² at (e3, e1): dim S = {}, rank of sharp {}", pp.s().dim(), pp.characteristic_distribution().dim());
}
