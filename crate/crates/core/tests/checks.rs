use mu_cycles::poly::{distributions, nt_polynomial, QPolynomial, Statistic};
use mu_cycles::verify::{all_checks_pass, check_all, Budget, CheckStatus, Fixtures, Verifier};

#[test]
fn smoke_budget_all_pass() {
    let reports = check_all(&Budget::smoke().with_jobs(1)).unwrap();
    assert!(all_checks_pass(&reports));
    for r in &reports {
        assert!(r.to_line().starts_with(&format!("CHECK {} ", r.name)));
    }
}

#[test]
fn reports_are_deterministic() {
    let budget = Budget::default().capped(7).with_jobs(1);
    let a: Vec<String> = check_all(&budget)
        .unwrap()
        .iter()
        .map(|r| r.to_line())
        .collect();
    let b: Vec<String> = check_all(&budget.with_jobs(3))
        .unwrap()
        .iter()
        .map(|r| r.to_line())
        .collect();
    assert_eq!(a, b);
}

#[test]
fn witness_is_smallest_length() {
    let mut f = Fixtures::embedded();
    f.set(Statistic::Nm, 6, QPolynomial::monomial(0, 7))
        .unwrap();
    f.set(Statistic::Nti, 3, QPolynomial::zero()).unwrap();
    let r = Verifier::new(1).with_fixtures(f).check_tables(8).unwrap();
    assert_eq!(r.status, CheckStatus::Fail);
    let w = r.first_failure.unwrap();
    assert_eq!(w.params, "nti n=3");
    assert_eq!(w.expected, "0");
    assert_eq!(w.actual, "q");
}

#[test]
fn conjecture_never_gates() {
    let mut v = Verifier::new(1);
    // feed a wrong distribution for length 6 and watch the conjecture flip
    let mut fake = distributions(6, 1).unwrap();
    fake.nti = QPolynomial::from_coeffs(vec![0, 0, 0, 5]);
    v.insert_distributions(fake);
    let r = v.check_conjecture(6).unwrap();
    assert_eq!(r.status, CheckStatus::ConjectureViolated);
    assert!(r.passed());
    assert!(all_checks_pass(&[r]));
}

#[test]
fn parallel_distributions_match_serial() {
    for n in [1, 2, 5, 9] {
        assert_eq!(distributions(n, 1).unwrap(), distributions(n, 4).unwrap());
    }
    assert_eq!(distributions(7, 2).unwrap().nt, nt_polynomial(7).unwrap());
}
