mod groups_tour {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/groups_tour.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod lattice_diagram {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lattice_diagram.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod canonical_class {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/canonical_class.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod shapiro {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/shapiro.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod twisted_action {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/twisted_action.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod invariant_ring {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/invariant_ring.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod extensions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/extensions.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}

mod scenario_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenario_report.rs"));

    #[test]
    fn runs() {
        run_example().unwrap();
    }
}
