//! Reduction of covelocities of a trivial principal bundle Q × G against the
//! Atiyah algebroid model.

use kpoisson::liepoisson::LieAlgebra;
use kpoisson::reduction::covelocity_principal_local;
use kpoisson::scalar::qi;
use kpoisson::{Conventions, Q};

fn main() {
    let conv = Conventions::default();
    let cases: Vec<(&str, LieAlgebra<Q>, usize)> = vec![
        ("so3", LieAlgebra::so3(conv), 1),
        ("heisenberg3", LieAlgebra::heisenberg3(conv), 2),
        ("so3", LieAlgebra::so3(conv), 0),
    ];
    for (name, g, m_base) in cases {
        let base: Vec<Vec<Q>> = (0..2).map(|a| (0..m_base).map(|i| qi((a + i) as i64 + 1)).collect()).collect();
        let mus = vec![vec![qi(0), qi(0), qi(1)], vec![qi(1), qi(0), qi(0)]];
        let pl = covelocity_principal_local(&g, m_base, &base, &mus).unwrap();
        println!(
            "{name}, dim Q = {m_base}: reduced dim S = {}, same S as Atiyah {}, relation {:?}, frame point {:?}",
            pl.reduced.point.s().dim(),
            pl.same_s,
            pl.relation,
            pl.frame
        );
    }
}
