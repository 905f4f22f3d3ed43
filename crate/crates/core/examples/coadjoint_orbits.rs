//! Orbit forms on coadjoint orbits and their k-fold diagonal versions.

use kpoisson::liepoisson::{coadjoint_leaf_match, LieAlgebra};
use kpoisson::polysymplectic::{coadjoint_orbit_form, k_coadjoint_polyform};
use kpoisson::scalar::{qi, Rendered};
use kpoisson::{Conventions, Q};

fn main() {
    let g = LieAlgebra::<Q>::so3(Conventions::default());
    let nu = vec![qi(0), qi(0), qi(1)];
    let orbit = coadjoint_orbit_form(&g, &nu).unwrap();
    let gen = g.generator_matrix(&nu);
    let x = orbit.tangent.coordinates(&gen.col(0)).unwrap();
    let y = orbit.tangent.coordinates(&gen.col(1)).unwrap();
    println!("so(3) orbit through e3: dimension {}", orbit.tangent.dim());
    println!("ω(e1·ν, e2·ν) = {}", orbit.form.eval(0, &x, &y));

    for mus in [vec![nu.clone(), vec![qi(1), qi(0), qi(0)]], vec![nu.clone(), nu.clone()]] {
        let k_orbit = k_coadjoint_polyform(&g, &mus).unwrap();
        let leaf = coadjoint_leaf_match(&g, &mus).unwrap();
        println!(
            "μ = ({}, {}): orbit dimension {}, polysymplectic {}, leaf form matches {}",
            Rendered(&mus[0]),
            Rendered(&mus[1]),
            k_orbit.tangent.dim(),
            k_orbit.form.is_polysymplectic().pass,
            leaf.pass
        );
    }

    let h = LieAlgebra::<Q>::heisenberg3(Conventions::default());
    let center = coadjoint_orbit_form(&h, &[qi(0), qi(0), qi(2)]).unwrap();
    println!("heisenberg orbit through 2e3 has dimension {}", center.tangent.dim());
}
