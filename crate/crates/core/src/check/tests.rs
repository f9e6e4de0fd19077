use super::*;

#[test]
fn registry_names_unique() {
    let mut names: Vec<_> = properties().iter().map(|p| p.name).collect();
    let n = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), n);
    assert_eq!(n, 18);
}

#[test]
fn identity_on_small_bushes() {
    let b = Bounds { bush_size: 6, ..Bounds::default() };
    let r = run_property("map_identity", &b).unwrap();
    assert!(r.passed(), "{}", r.summary());
    assert!(r.cases > 0);
    assert!(r.audit.ok());
}

#[test]
fn mutation_is_caught_minimally() {
    let r = run(&mutation_property(), &Bounds::default()).unwrap();
    assert_eq!(r.status, Status::Fail);
    let c = r.counterexample.unwrap();
    assert_eq!(c.inputs, ["ConsB[1, NilB]"]);
    assert_eq!((c.left.as_str(), c.right.as_str()), ("2", "1"));
}

#[test]
fn empty_domain_rejected() {
    let b = Bounds::default().with_max_size(0);
    assert!(matches!(run_property("map_identity", &b), Err(CheckError::Precondition(_))));
    let b = Bounds { alphabet: vec![], ..Bounds::default() };
    assert!(matches!(run_property("beta_law_term", &b), Err(CheckError::Precondition(_))));
}

#[test]
fn unknown_property() {
    assert!(matches!(run_property("nope", &Bounds::default()), Err(CheckError::UnknownProperty(_))));
}

#[test]
fn fast_profile_halves() {
    let f = Bounds::for_profile(Profile::Fast);
    let d = Bounds::default();
    assert_eq!(f.term_size, d.term_size / 2);
    assert!(f.bush_size < d.bush_size);
    assert_eq!("thorough".parse::<Profile>().unwrap(), Profile::Thorough);
}

#[test]
fn fast_suite_passes_and_is_deterministic() {
    let b = Bounds::for_profile(Profile::Fast);
    let a = run_suite(&b).unwrap();
    let c = run_suite(&b).unwrap();
    assert_eq!(a.len(), properties().len());
    for (x, y) in a.iter().zip(&c) {
        assert!(x.passed(), "{}", x.summary());
        assert_eq!((x.cases, &x.counterexample, &x.audit), (y.cases, &y.counterexample, &y.audit));
    }
}

#[test]
fn report_json_shape() {
    let r = run(&mutation_property(), &Bounds::for_profile(Profile::Fast)).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["property"], "mutation_weighted_cons");
    assert_eq!(j["status"], "fail");
    assert!(j["counterexample"]["inputs"].is_array());
}
