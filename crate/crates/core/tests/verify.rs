use foldlie::verify::*;

#[test]
fn each_suite_passes_and_all_is_their_union() {
    let mut total = 0;
    for s in Suite::EACH {
        let start = std::time::Instant::now();
        let r = run_suite(s, 5, 1).unwrap();
        eprintln!("{s}: {} cases in {:?}", r.cases_run, start.elapsed());
        assert!(r.passed(), "{s}: {:?}", r.failures.first());
        total += r.cases_run;
    }
    let all = run_suite(Suite::All, 5, 1).unwrap();
    assert_eq!(all.cases_run, total);
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::EACH.into_iter().chain([Suite::All]) {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("bogus".parse::<Suite>().is_err());
}

#[test]
fn reports_are_reproducible() {
    let a = serde_json::to_string(&run_suite(Suite::Appendix, 4, 9).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Appendix, 4, 9).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("elapsed"));
}
