//! Which command line reaches each library operation. Paths are relative to
//! the fixture directory `tests/fixtures`.

pub const COVERAGE: &[(&str, &[&str])] = &[
    ("validate_poset", &["check", "poset", "chain3.poset"]),
    ("product_poset", &["check", "poset", "square.poset"]),
    ("check_monotone", &["check", "galois", "--lower", "lower.fn", "--upper", "upper.fn"]),
    ("bound", &["demo", "meet-universal", "--universe", "1,2,3", "--a", "{1,2}", "--b", "{2,3}"]),
    ("check_galois_connection", &["check", "galois", "--lower", "delta.fn", "--upper", "meet.fn"]),
    ("compute_adjoint", &["check", "galois", "--lower", "lower.fn", "--upper", "upper.fn"]),
    ("validate_category", &["check", "category", "z2.cat"]),
    ("poset_to_category", &["check", "category", "powerset2.cat"]),
    ("validate_functor", &["check", "functor", "flip.functor"]),
    ("are_isomorphic", &["check", "category", "iso.cat", "--iso", "a", "b"]),
    ("find_universal", &["check", "category", "iso.cat", "--universal", "*"]),
    ("check_uniqueness_up_to_iso", &["check", "category", "iso.cat", "--universal", "*"]),
    ("product_in_category", &["check", "category", "powerset2.cat", "--product", "{1}", "{2}"]),
    ("validate_het_bimodule", &["check", "bimodule", "arrow.bimod"]),
    ("check_semi_adjunction", &["check", "semi-adjunction", "delta_left.scenario"]),
    ("assemble_adjunction", &["check", "adjunction", "delta_meet.scenario"]),
    ("check_brain_functor", &["check", "brain", "powerset_brain.scenario"]),
    ("find_representing_object", &["check", "bimodule", "fork.bimod", "--represent", "{1}", "--side", "src"]),
    ("powerset_poset", &["check", "poset", "powerset2.poset"]),
    ("diagonal_map", &["check", "galois", "--lower", "delta.fn", "--upper", "meet.fn"]),
    ("meet_map", &["check", "galois", "--lower", "delta.fn", "--upper", "meet.fn"]),
    ("join_map", &["check", "galois", "--lower", "join.fn", "--upper", "delta.fn"]),
    ("intersection_universal", &["demo", "meet-universal", "--universe", "1,2,3", "--a", "{1,2}", "--b", "{2,3}"]),
    ("inverse_image", &["demo", "quantifiers", "--map", "f.fn"]),
    ("exists_f", &["demo", "quantifiers", "--map", "f.fn"]),
    ("forall_f", &["demo", "quantifiers", "--map", "f.fn"]),
    ("quantifier_triple_check", &["demo", "quantifiers", "--map", "f.fn"]),
    ("fork_bimodule", &["check", "bimodule", "fork.bimod"]),
    ("completeness_bimodule", &["check", "bimodule", "completeness.bimod"]),
    ("consistency_bimodule", &["check", "bimodule", "consistency.bimod"]),
    ("powerset_brain", &["demo", "brain-powerset", "--map", "f.fn"]),
    ("third_man_demo", &["demo", "third-man", "--universe", "1,2,3", "--family", "{1}", "--family", "{2,3}"]),
    ("reduce", &["demo", "free-group", "--generators", "x,y", "--group", "z4.group", "--word", "x y y^-1 x"]),
    ("fg_multiply", &["demo", "free-group", "--generators", "x,y", "--group", "z4.group", "--word", "x y"]),
    ("fg_inverse", &["demo", "free-group", "--generators", "x,y", "--group", "z4.group", "--word", "x y"]),
    (
        "extend_hom",
        &["demo", "free-group", "--generators", "x,y", "--group", "s3.group", "--word", "x y", "--assign", "x=r,y=s"],
    ),
    ("check_free_semi_adjunction", &["demo", "free-group", "--generators", "x,y", "--group", "s3.group"]),
    ("matmul", &["demo", "brain-vector", "--prime", "2", "--dims", "1,1"]),
    ("matadd", &["demo", "brain-vector", "--prime", "2", "--dims", "1,1"]),
    ("identity", &["demo", "brain-vector", "--prime", "2", "--dims", "1,1"]),
    ("zero", &["demo", "brain-vector", "--prime", "2", "--dims", "1,1"]),
    ("biproduct", &["demo", "brain-vector", "--prime", "3", "--dims", "1,1"]),
    ("factor_cocone", &["demo", "brain-vector", "--prime", "2", "--dims", "2"]),
    ("factor_cone", &["demo", "brain-vector", "--prime", "2", "--dims", "2"]),
    ("vector_brain", &["check", "brain", "vector_brain.scenario"]),
    ("cocone_bimodule", &["check", "bimodule", "cocone.bimod"]),
    ("cone_bimodule", &["check", "bimodule", "cone.bimod"]),
    ("parse_spec", &["check", "poset", "chain3.poset"]),
    ("run_check", &["check", "adjunction", "exists_inverse.scenario"]),
    ("render_diagram", &["render", "--dot", "delta_meet.scenario"]),
];
