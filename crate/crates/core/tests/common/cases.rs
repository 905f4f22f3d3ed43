//! Bundled fixture invocations shared by the CLI tests and the acceptance gate.

/// (golden name, arguments, expected exit code)
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("canonical_1_1", &["check-polysymplectic", "fixtures/polyforms/canonical_1_1.json"], 0),
    ("canonical_1_2", &["check-polysymplectic", "fixtures/polyforms/canonical_1_2.json"], 0),
    ("canonical_2_2_poisson", &["from-polysymplectic", "fixtures/polyforms/canonical_2_2.json"], 0),
    ("degenerate", &["check-polysymplectic", "fixtures/polyforms/degenerate.json"], 1),
    ("dirac_r4", &["dirac", "fixtures/inputs/dirac_r4.json"], 0),
    ("dirac_lagrangian", &["dirac", "fixtures/inputs/dirac_lagrangian.json"], 1),
    (
        "whitney_tangent",
        &["whitney", "fixtures/inputs/whitney_tangent.json", "--crosscheck", "canonical"],
        0,
    ),
    ("whitney_rotation", &["whitney", "fixtures/inputs/whitney_rotation.json"], 0),
    ("gstar_so3", &["gstar", "fixtures/inputs/gstar_so3.json", "--crosscheck", "whitney"], 0),
    ("integrability_so3", &["integrability", "fixtures/algebras/so3.json"], 0),
    ("integrability_heisenberg3", &["integrability", "fixtures/algebras/heisenberg3.json"], 0),
    ("integrability_abelian3", &["integrability", "fixtures/algebras/abelian3.json"], 0),
    ("integrability_sl2", &["integrability", "fixtures/algebras/sl2.json"], 0),
    ("integrability_non_jacobi", &["integrability", "fixtures/algebras/non_jacobi.json"], 1),
    (
        "orbit_so3",
        &["orbit-form", "--algebra", "fixtures/algebras/so3.json", "--mu", "[[0,0,1]]"],
        0,
    ),
    ("reduce_symplectic", &["reduce", "fixtures/inputs/reduce_symplectic.json"], 0),
    ("reduce_hyp_i", &["reduce", "fixtures/inputs/reduce_hyp_i_fails.json"], 1),
    ("reduce_hyp_ii", &["reduce", "fixtures/inputs/reduce_hyp_ii_fails.json"], 1),
    (
        "cotangent_so3",
        &[
            "cotangent-group",
            "--algebra",
            "fixtures/algebras/so3.json",
            "--k",
            "2",
            "--mu",
            "[[0,0,1],[1,0,0]]",
            "--crosscheck",
            "gstar",
        ],
        0,
    ),
    (
        "principal_so3",
        &[
            "principal-local",
            "--algebra",
            "fixtures/algebras/so3.json",
            "--m-base",
            "1",
            "--mu",
            "[[0,0,1],[1,2,0]]",
            "--point",
            "[[2],[-1]]",
        ],
        0,
    ),
    ("crosscheck", &["crosscheck", "--samples", "2", "--seed", "7"], 0),
    ("malformed", &["check-polysymplectic", "fixtures/inputs/malformed.json"], 2),
];
