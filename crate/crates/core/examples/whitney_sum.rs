//! Linear poly-Poisson structure on the Whitney sum of an algebroid dual,
//! for the tangent bundle and for a rotation action algebroid.

use kpoisson::liepoisson::{whitney_point, AlgebroidPointData, LieAlgebra};
use kpoisson::polypoisson::from_polysymplectic;
use kpoisson::scalar::{qi, qr};
use kpoisson::{Conventions, PolyForm, Tol, Q};

fn main() {
    let conv = Conventions::default();
    let tangent = AlgebroidPointData::<Q>::trivial_tangent(2, Tol::EXACT);
    let fiber = vec![vec![qr(1, 2), qi(0)], vec![qi(0), qi(3)]];
    let w = whitney_point(&tangent, &fiber, conv).unwrap();
    let canon = from_polysymplectic(&PolyForm::canonical_covelocity(2, 2, Tol::EXACT, conv)).unwrap();
    println!("TQ, m = 2, k = 2: dim S = {}, relation to the canonical structure {:?}", w.point.s().dim(), w.point.relation_to(&canon));
    println!("commutator identities hold: {}", w.commutators.pass());

    let so3 = LieAlgebra::<Q>::so3(conv);
    let over_point = AlgebroidPointData::over_point(&so3);
    let mus = vec![vec![qi(0), qi(0), qi(1)], vec![qi(1), qi(-1), qi(0)]];
    let wp = whitney_point(&over_point, &mus, conv).unwrap();
    println!("so(3) over a point: dim S = {}, generator rank {}", wp.point.s().dim(), wp.generator_rank);

    let atiyah = AlgebroidPointData::atiyah_trivial(1, &so3);
    let fiber = vec![vec![qi(1), qi(0), qi(0), qi(2)], vec![qi(0), qi(1), qi(1), qi(0)]];
    let wa = whitney_point(&atiyah, &fiber, conv).unwrap();
    println!("Atiyah algebroid over ℝ: dim S = {}, axioms {}", wa.point.s().dim(), wa.point.check_axioms().pass());
}
