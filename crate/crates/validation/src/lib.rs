//! Acceptance criteria for the library and the `qbell` command line.
//!
//! Each criterion runs at a fixed size and tolerance and, where it has one,
//! within a wall-clock limit.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use qbell_core::carlitz::{
    dobinski_formal_verify, dobinski_numeric, inv_calibration, q_bell, verify_defining_relation,
    LambdaMode, QStirlingTable,
};
use qbell_core::certified::parse_tolerance;
use qbell_core::cigl::{cigl_bell, cigl_dobinski_verify, cigl_stirling};
use qbell_core::partition::{enumerate_partitions, weighted_sum, Statistic};
use qbell_core::psi::{psi_stirling, PsiSequence};
use qbell_core::qcore::{q_binomial, q_factorial, q_int};
use qbell_core::qpoisson::{factorial_moment, verify_eq8, QPoissonParams};
use qbell_core::Rational;

/// Detail on success, reason on failure.
pub type Outcome = Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Option<Duration>,
    pub run: fn() -> Outcome,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn grid_q() -> [Rational; 5] {
    [r(1, 10), r(1, 2), r(9, 10), r(2, 1), r(10, 1)]
}

fn grid_lambda() -> [Rational; 3] {
    [r(1, 2), r(1, 1), r(2, 1)]
}

fn eps() -> Rational {
    parse_tolerance("1e-12").unwrap()
}

/// Runs `check` on every grid cell and lists the cells where it fails.
fn over_grid(mut check: impl FnMut(&Rational, &Rational) -> Result<usize, String>) -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for q in grid_q() {
        for lambda in grid_lambda() {
            match check(&q, &lambda) {
                Ok(n) => cases += n,
                Err(why) => failures.push(format!("(q={q}, lambda={lambda}): {why}")),
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{cases} enclosures on 15 cells"))
    } else {
        Err(format!(
            "{} of 15 cells fail; {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn c1_defining_relation() -> Outcome {
    for n in 0..=10 {
        let report = verify_defining_relation(n, n + 3).map_err(|e| e.to_string())?;
        if let Some((check, why)) = report.first_failure() {
            return Err(format!("{check}: {why}"));
        }
    }
    Ok("n = 0..=10, x = 0..=n+3".into())
}

fn c2_dobinski_formal() -> Outcome {
    for n in 0..=10 {
        let report = dobinski_formal_verify(n, 2 * n).map_err(|e| e.to_string())?;
        if let Some((check, why)) = report.first_failure() {
            return Err(format!("n={n}, {check}: {why}"));
        }
    }
    Ok("n = 0..=10, order 2n".into())
}

fn c3_dobinski_numeric() -> Outcome {
    over_grid(|q, lambda| {
        for n in 0..=8 {
            let exact = q_bell(n, LambdaMode::Polynomial).eval(q, lambda);
            let v = dobinski_numeric(n, q, lambda, &eps()).map_err(|e| format!("n={n}: {e}"))?;
            if !v.contains(&exact) {
                return Err(format!("n={n}: {v} misses {exact}"));
            }
        }
        Ok(9)
    })
}

fn c4_factorial_moments() -> Outcome {
    over_grid(|q, lambda| {
        let params =
            QPoissonParams::new(lambda.clone(), q.clone(), eps()).map_err(|e| e.to_string())?;
        for m in 0..=8 {
            let v = factorial_moment(m, &params).map_err(|e| format!("m={m}: {e}"))?;
            let expected = num_traits::pow(lambda.clone(), m);
            if !v.contains(&expected) {
                return Err(format!("m={m}: {v} misses {expected}"));
            }
        }
        Ok(9)
    })
}

fn c5_eq8() -> Outcome {
    over_grid(|q, lambda| {
        let params =
            QPoissonParams::new(lambda.clone(), q.clone(), eps()).map_err(|e| e.to_string())?;
        let report = verify_eq8(&params, 20).map_err(|e| e.to_string())?;
        match report.first_failure() {
            None => Ok(report.checks.len()),
            Some((check, why)) => Err(format!("{check}: {why}")),
        }
    })
    .map(|_| "both checks at order 20 on 15 cells".into())
}

fn c6_cigl_closed_form() -> Outcome {
    let mut cases = 0;
    for n in 1..=10 {
        for k in 1..=n {
            let closed = cigl_stirling(n, k).map_err(|e| e.to_string())?;
            let oracle = weighted_sum(n, Some(k), Statistic::Cigl).map_err(|e| e.to_string())?;
            if closed != oracle {
                return Err(format!(
                    "n={n}, k={k}: closed form {closed}, enumeration {oracle}"
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, k) pairs"))
}

fn c7_cigl_dobinski() -> Outcome {
    for n in 1..=10 {
        let report = cigl_dobinski_verify(n, 2 * n).map_err(|e| e.to_string())?;
        if let Some((check, why)) = report.first_failure() {
            return Err(format!("n={n}, {check}: {why}"));
        }
    }
    Ok("n = 1..=10, order 2n".into())
}

fn c8_inv_calibration() -> Outcome {
    let cal = inv_calibration(9).map_err(|e| e.to_string())?;
    if let Some((check, why)) = cal.report.first_failure() {
        return Err(format!("{check}: {why}"));
    }
    let table: Vec<String> = cal
        .exponents
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, e)| format!("{k}:{}", e.expect("every k <= n_max has an exponent")))
        .collect();
    Ok(format!("e(k) = {}", table.join(" ")))
}

fn c9_classical_limit() -> Outcome {
    let one = Rational::one();
    let int = |v: u64| Rational::from_integer(v.into());
    let table = QStirlingTable::carlitz(10);
    for n in 0..=10usize {
        let mut counts = vec![0u64; n + 1];
        if n == 0 {
            counts[0] = 1;
        } else {
            for p in enumerate_partitions(n, None).map_err(|e| e.to_string())? {
                counts[p.num_blocks()] += 1;
            }
        }
        let bell: u64 = counts.iter().sum();
        for (k, &c) in counts.iter().enumerate() {
            if table.get(n, k).unwrap().eval(&one) != int(c) {
                return Err(format!("carlitz S[{n},{k}](1) != {c}"));
            }
            if n > 0 && k > 0 && cigl_stirling(n, k).unwrap().eval(&one) != int(c) {
                return Err(format!("cigl S[{n},{k}](1) != {c}"));
            }
        }
        if q_bell(n, LambdaMode::AtOne).poly.eval(&one) != int(bell) {
            return Err(format!("B_{n}(1) != {bell}"));
        }
        if n > 0 && cigl_bell(n).unwrap().eval(&one) != int(bell) {
            return Err(format!("cigl B_{n}(1) != {bell}"));
        }
        if n == 10 && bell != 115975 {
            return Err(format!("oracle found {bell} partitions of a 10-set"));
        }
        let factorial: BigInt = (1..=n as u64).map(BigInt::from).product();
        if q_int(n).eval(&one) != int(n as u64)
            || q_factorial(n).eval(&one) != Rational::from_integer(factorial)
        {
            return Err(format!("q-integer or q-factorial of {n} at q=1"));
        }
        let mut binom = BigInt::one();
        for k in 0..=n {
            if q_binomial(n, k as i64).eval(&one) != Rational::from_integer(binom.clone()) {
                return Err(format!("q-binomial ({n},{k}) at q=1"));
            }
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    }
    Ok("triangles, Bell numbers through 115975, q-integers, factorials, binomials".into())
}

fn c10_psi_consistency() -> Outcome {
    let table = QStirlingTable::carlitz(8);
    for q in grid_q() {
        let psi = psi_stirling(8, &PsiSequence::gauss(q.clone())).map_err(|e| e.to_string())?;
        for (n, row) in psi.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                let expected = table.get(n, k).unwrap().eval(&q);
                if *s != expected {
                    return Err(format!(
                        "gauss({q}) S[{n},{k}] = {s}, carlitz gives {expected}"
                    ));
                }
            }
        }
    }
    let natural = psi_stirling(10, &PsiSequence::natural()).map_err(|e| e.to_string())?;
    let classical = qbell_core::classical::stirling2_table(10);
    for (n, row) in natural.iter().enumerate() {
        for (k, s) in row.iter().enumerate() {
            if *s != Rational::from_integer(classical[n][k].clone()) {
                return Err(format!("natural S[{n},{k}] = {s}"));
            }
        }
    }
    Ok("gauss at 5 q values (n <= 8), natural (n <= 10)".into())
}

fn c11_fault_injection() -> Outcome {
    let verifiers: [&[&str]; 5] = [
        &["verify", "eq4", "--n", "6", "--xmax", "9"],
        &["dobinski", "--n", "6", "--formal", "--order", "12"],
        &[
            "verify", "eq8", "--q", "1/2", "--lambda", "1", "--order", "20",
        ],
        &["verify", "cigl-dobinski", "--n", "6", "--order", "12"],
        &["verify", "inv-calibration", "--nmax", "7"],
    ];
    for args in verifiers {
        for (perturb, expected) in [
            (false, qbell_cli::EXIT_OK),
            (true, qbell_cli::EXIT_VERIFICATION_FAILED),
        ] {
            let argv = std::iter::once("qbell")
                .chain(args.iter().copied())
                .chain(perturb.then_some("--perturb"));
            let code = qbell_cli::run(argv, &mut std::io::sink(), &mut std::io::sink());
            if code != expected {
                return Err(format!(
                    "`qbell {}` perturb={perturb}: exit {code}",
                    args.join(" ")
                ));
            }
        }
    }
    Ok("5 verifiers pass clean and exit 1 when perturbed".into())
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion {
            id: 1,
            name: "defining relation, n <= 10",
            limit: secs(10),
            run: c1_defining_relation,
        },
        Criterion {
            id: 2,
            name: "formal q-Dobinski, n <= 10",
            limit: secs(60),
            run: c2_dobinski_formal,
        },
        Criterion {
            id: 3,
            name: "certified q-Dobinski on the grid",
            limit: secs(30),
            run: c3_dobinski_numeric,
        },
        Criterion {
            id: 4,
            name: "factorial moments on the grid",
            limit: None,
            run: c4_factorial_moments,
        },
        Criterion {
            id: 5,
            name: "generating-function identities",
            limit: None,
            run: c5_eq8,
        },
        Criterion {
            id: 6,
            name: "cigl closed form vs enumeration",
            limit: secs(60),
            run: c6_cigl_closed_form,
        },
        Criterion {
            id: 7,
            name: "cigl Dobinski, n <= 10",
            limit: None,
            run: c7_cigl_dobinski,
        },
        Criterion {
            id: 8,
            name: "inv calibration, n <= 9",
            limit: None,
            run: c8_inv_calibration,
        },
        Criterion {
            id: 9,
            name: "classical limit q = 1",
            limit: None,
            run: c9_classical_limit,
        },
        Criterion {
            id: 10,
            name: "psi consistency",
            limit: None,
            run: c10_psi_consistency,
        },
        Criterion {
            id: 11,
            name: "fault injection",
            limit: None,
            run: c11_fault_injection,
        },
    ]
}

/// Runs every criterion, printing one line each, and returns the number that failed.
pub fn run_all(out: &mut dyn Write) -> usize {
    let criteria = criteria();
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!(
                    "took {:.1} s, limit {} s",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                ));
            }
        }
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        let _ = writeln!(
            out,
            "{verdict} {:>2} {} [{:.2} s]: {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    let _ = writeln!(
        out,
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    failed
}
