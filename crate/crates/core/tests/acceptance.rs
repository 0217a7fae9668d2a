//! Acceptance gate: one PASS/FAIL line per criterion, each against a fixed
//! time limit. Criteria run one after another so timings do not overlap.

use std::io::Write;
use std::time::{Duration, Instant};

use theta_forge::chevalley::{chevalley_covers, chevalley_t_coeff, verify_chevalley, CoverKind};
use theta_forge::format::parse;
use theta_forge::quotient::{equal_in_quotient, theta_expansion, ThetaExpansion};
use theta_forge::raising::t_poly;
use theta_forge::theta::{beta_seq, pair_set_c, theta_double};
use theta_forge::verify::{run_suite, SweepConfig};
use theta_forge::weyl::{omega_poly, partition_to_w};
use theta_forge::{IntSeq, KStrictPartition, PairSet, Polynomial};

type Outcome = Result<(), String>;

struct Gate {
    results: Vec<(usize, bool)>,
}

impl Gate {
    fn run(&mut self, id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) {
        let t0 = Instant::now();
        let outcome = f();
        let elapsed = t0.elapsed();
        let in_time = elapsed <= limit;
        let pass = outcome.is_ok() && in_time;
        let mut line = format!(
            "{} criterion {id}: {name} ({:.2}s, limit {}s)\n",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if let Err(msg) = &outcome {
            line.push_str(&format!("    {msg}\n"));
        }
        if !in_time {
            line.push_str("    over the time limit\n");
        }
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(line.as_bytes());
        let _ = out.flush();
        self.results.push((id, pass));
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lam(k: usize, parts: &[usize]) -> KStrictPartition {
    KStrictPartition::new(k, parts).unwrap()
}

fn thetas(k: usize, terms: &[(&[usize], i64)]) -> ThetaExpansion {
    let mut e = ThetaExpansion::new(k);
    for (p, m) in terms {
        e.add(p, &Polynomial::constant(*m));
    }
    e
}

fn suites(names: &[&str]) -> Outcome {
    let cfg = SweepConfig::default();
    for name in names {
        let report = run_suite(name, &cfg).map_err(|e| e.to_string())?;
        if !report.pass() {
            return Err(format!("\n{report}"));
        }
    }
    Ok(())
}

fn worked_chevalley_example() -> Outcome {
    let l = lam(2, &[7, 4, 3, 2, 1, 1]);
    let w = partition_to_w(&l, 8).map_err(|e| e.to_string())?;
    ensure(w.to_string() == "4,8,-5,-2,-1,3,6,7", || format!("w = {w}"))?;

    let c = pair_set_c(&l, l.len());
    let expect_c = PairSet::from_pairs([(1, 2), (1, 3), (1, 4), (2, 3)]).unwrap();
    ensure(c == expect_c, || format!("C = {c:?}"))?;

    let mut gamma = beta_seq(&l, 6).0;
    gamma.push(8);
    ensure(gamma == vec![-4, -1, 0, 3, 6, 7, 8], || format!("γ = {gamma:?}"))?;

    let coeff = chevalley_t_coeff(&l);
    let expect_coeff = parse("t[1] + t[2] + t[4] + 2*t[5] + t[8]").unwrap();
    ensure(coeff == expect_coeff, || format!("coefficient {coeff}"))?;

    let report = verify_chevalley(&l);
    let mut expected = thetas(
        2,
        &[
            (&[7, 4, 3, 2, 1, 1, 1], 1),
            (&[7, 4, 3, 2, 2, 1], 1),
            (&[7, 5, 3, 2, 1, 1], 2),
            (&[7, 6, 3, 1, 1, 1], 1),
            (&[8, 4, 3, 2, 1, 1], 2),
            (&[10, 4, 3, 2], 1),
        ],
    );
    expected.add(l.parts(), &expect_coeff);
    ensure(report.lhs == expected, || format!("Θ_1·Θ_λ =\n{}", report.lhs))?;
    ensure(report.pass, || "rule disagrees with the product".into())?;

    let kinds: Vec<(Vec<usize>, CoverKind)> = chevalley_covers(&l)
        .into_iter()
        .map(|t| (t.mu.parts().to_vec(), t.kind))
        .collect();
    let expect_kinds = [
        (vec![7, 4, 3, 2, 1, 1, 1], CoverKind::I),
        (vec![7, 5, 3, 2, 1, 1], CoverKind::IIa),
        (vec![8, 4, 3, 2, 1, 1], CoverKind::IIa),
        (vec![7, 4, 3, 2, 2, 1], CoverKind::IIb),
        (vec![7, 6, 3, 1, 1, 1], CoverKind::IIc),
        (vec![10, 4, 3, 2], CoverKind::IIc),
    ];
    for kind in &expect_kinds {
        ensure(kinds.contains(kind), || format!("missing cover {kind:?}"))?;
    }
    ensure(kinds.len() == expect_kinds.len(), || format!("covers {kinds:?}"))?;

    let rows: [&[(&[usize], i64)]; 7] = [
        &[(&[8, 4, 3, 2, 1, 1], 1), (&[10, 4, 3, 2], 1)],
        &[(&[7, 5, 3, 2, 1, 1], 1), (&[7, 6, 3, 1, 1, 1], 1)],
        &[],
        &[(&[7, 5, 3, 2, 1, 1], 1)],
        &[(&[7, 4, 3, 2, 2, 1], 1), (&[8, 4, 3, 2, 1, 1], 1)],
        &[],
        &[(&[7, 4, 3, 2, 1, 1, 1], 1)],
    ];
    for (h, row) in rows.iter().enumerate() {
        let mut mu = vec![7, 4, 3, 2, 1, 1, 0];
        mu[h] += 1;
        let t = t_poly(&c, &IntSeq(mu), 2).map_err(|e| e.to_string())?;
        let got = theta_expansion(&t, 2);
        ensure(got == thetas(2, row), || format!("T(C, λ^{}) = {got}", h + 1))?;
    }
    Ok(())
}

fn worked_q_example() -> Outcome {
    let l = lam(0, &[3, 1]);
    let q = theta_double(&l);
    let omega = omega_poly(&l);
    let expect_q = parse("(c[3] - c[2]*(t[1] + t[2]) + c[1]*t[1]*t[2])*c[1] - 2*(c[4] - c[3]*(t[1] + t[2]) + c[2]*t[1]*t[2])").unwrap();
    let expect_omega = parse("(c[3]*c[1] - 2*c[4]) - (c[2]*c[1] - 2*c[3])*(t[1] + t[2])").unwrap();
    ensure(q == expect_q, || format!("Q = {q}"))?;
    ensure(omega == expect_omega, || format!("Ω = {omega}"))?;
    let diff = &q - &omega;
    ensure(diff == parse("(c[1]^2 - 2*c[2])*t[1]*t[2]").unwrap(), || format!("Q - Ω = {diff}"))?;
    ensure(diff != Polynomial::zero(), || "equal in Z[c,t]".into())?;
    ensure(equal_in_quotient(&q, &omega, 0), || "differ in the quotient".into())
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut gate = Gate { results: Vec::new() };
    gate.run(1, "Chevalley worked example", secs(10), worked_chevalley_example);
    gate.run(2, "Q_{3,1} and Ω_{3,1} worked example", secs(1), worked_q_example);
    gate.run(3, "Chevalley sweep, k ≤ 2, |λ| ≤ 8", secs(300), || suites(&["chevalley"]));
    gate.run(4, "raising-operator lemma suite", secs(120), || suites(&["lemmas-1"]));
    gate.run(5, "determinant and Pfaffian identity suite", secs(300), || suites(&["pfaffian"]));
    gate.run(6, "divided-difference suite", secs(120), || suites(&["divdiff"]));
    gate.run(7, "top-class descent, ideal support and Ω ≡ Θ", secs(300), || {
        suites(&["presentation", "omega"])
    });
    gate.run(8, "theta-basis round trip", secs(120), || suites(&["basis"]));
    gate.run(9, "Chevalley coefficient agreement", secs(60), || suites(&["agreement"]));
    let failed: Vec<usize> = gate.results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
