//! Reduction of the k-covelocities of a Lie group by the group, compared
//! with the linear structure on (g*)ᵏ through a sign ledger.

use kpoisson::liepoisson::{gstar_k, LieAlgebra};
use kpoisson::reduction::cotangent_group;
use kpoisson::scalar::qi;
use kpoisson::{Conventions, SignLedger, Q};

fn main() {
    let mut ledger = SignLedger::new();
    for conv in [Conventions::COADJOINT, Conventions::INTERIOR] {
        let g = LieAlgebra::<Q>::so3(conv);
        let mus = vec![vec![qi(0), qi(0), qi(1)], vec![qi(2), qi(1), qi(0)]];
        let cg = cotangent_group(&g, &mus, &[]).unwrap();
        let gs = gstar_k(&g, &mus).unwrap();
        let rel = cg.reduced.point.relation_to(&gs);
        println!(
            "{}: hypotheses {}, diagnostics {:?}, image identity {}, relation to (g*)² {:?}",
            conv.name(),
            cg.hypotheses.pass(),
            cg.diagnostics,
            cg.reduced.image_identity,
            rel
        );
        if conv == Conventions::COADJOINT {
            ledger.observe("cotangent reduction vs gstar", rel.unwrap()).unwrap();
        }
    }
    println!("sigma = {:?}", ledger.sigma());

    let g = LieAlgebra::<Q>::so3(Conventions::default());
    let zero = vec![vec![qi(0); 3]; 2];
    let cg = cotangent_group(&g, &zero, &[]).unwrap();
    println!("at μ = 0 the reduced sharp vanishes: {}", cg.reduced.point.characteristic_distribution().is_zero());
}
