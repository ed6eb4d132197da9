use tropex::corpus;

#[test]
fn every_fixture_passes() {
    let outcomes = corpus::run_all();
    assert_eq!(outcomes.len(), corpus::names().len());
    for o in &outcomes {
        assert!(o.passed, "{}: {:?}", o.name, o.mismatches);
    }
}

#[test]
fn pins_match() {
    assert_eq!(corpus::verify_pins(), Vec::<String>::new());
}

#[test]
fn fixtures_are_documented() {
    for name in corpus::names() {
        let f = corpus::load(name).unwrap();
        assert!(!f.provenance.trim().is_empty(), "{name}");
        assert!(corpus::input_text(name).is_some());
    }
}

#[test]
fn unknown_fixture() {
    assert!(corpus::load("no-such-fixture").is_err());
}
