use std::fmt::Write as _;
use std::io::Write;

use num_traits::One;
use serde_json::{json, Value};

use qbell_core::carlitz::{
    dobinski_formal_verify_with, dobinski_numeric, inv_calibration_with, q_bell,
    verify_defining_relation_with, LambdaMode, QStirlingTable,
};
use qbell_core::certified::{format_decimal, CertifiedValue};
use qbell_core::cigl::{
    cigl_bell, cigl_dobinski_verify_with, cigl_falling_power_expand, cigl_stirling,
};
use qbell_core::partition::{enumerate_partitions_capped, weighted_sum_capped, Statistic};
use qbell_core::psi::{psi_bell, psi_residuals, psi_stirling_row, PsiSequence};
use qbell_core::qpoisson::{self, pgf_unnormalized, verify_eq8_with, QPoissonParams};
use qbell_core::report::Report;
use qbell_core::{Error, QPoly, Rational, TruncatedSeries};

use crate::args::{
    Command, DobinskiArgs, PoissonParamArgs, PoissonQuantity, PsiQuantity, Variant, VerifyWhich,
};
use crate::output::{self as out, params, Record};
use crate::CliError;

pub fn execute(command: Command, diag: &mut dyn Write) -> Result<Record, CliError> {
    match command {
        Command::Stirling { variant, n, k, q } => stirling(variant, n, k, q),
        Command::Bell {
            variant,
            n,
            q,
            lambda_poly,
        } => bell(variant, n, q, lambda_poly),
        Command::Dobinski(args) => dobinski(args, diag),
        Command::Poisson { quantity } => poisson(quantity),
        Command::Verify { perturb, which } => verify(which, perturb, diag),
        Command::Partitions {
            n,
            k,
            stat,
            weighted,
            cap,
        } => partitions(n, k, &stat, weighted, cap),
        Command::Psi { quantity } => psi(quantity),
    }
}

fn opt_rational(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, out::rational)
}

fn row(variant: Variant, n: usize) -> Result<Vec<QPoly>, CliError> {
    Ok(match variant {
        Variant::Carlitz => QStirlingTable::carlitz(n)
            .row(n)
            .expect("row n is present")
            .to_vec(),
        Variant::Cigl => (0..=n)
            .map(|k| cigl_stirling(n, k))
            .collect::<Result<_, _>>()?,
    })
}

/// A table entry, symbolic or evaluated.
enum Entry {
    Symbolic(QPoly),
    Numeric(Rational),
}

impl Entry {
    fn new(p: QPoly, q: &Option<Rational>) -> Self {
        match q {
            Some(q) => Entry::Numeric(p.eval(q)),
            None => Entry::Symbolic(p),
        }
    }

    fn text(&self) -> String {
        match self {
            Entry::Symbolic(p) => p.to_string(),
            Entry::Numeric(r) => r.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Entry::Symbolic(p) => out::poly(p),
            Entry::Numeric(r) => out::rational(r),
        }
    }
}

fn stirling(
    variant: Variant,
    n: usize,
    k: Option<usize>,
    q: Option<Rational>,
) -> Result<Record, CliError> {
    if let Some(k) = k {
        if k > n {
            return Err(CliError::Usage(format!(
                "--k must not exceed --n (n={n}, k={k})"
            )));
        }
    }
    let full = row(variant, n)?;
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let entries: Vec<(usize, Entry)> = ks
        .iter()
        .map(|&k| (k, Entry::new(full[k].clone(), &q)))
        .collect();

    let text = match &entries[..] {
        [(_, e)] if k.is_some() => e.text(),
        _ => entries
            .iter()
            .map(|(k, e)| format!("S[{n},{k}] = {}\n", e.text()))
            .collect(),
    };
    let mut csv = String::from("n,k,value\n");
    for (k, e) in &entries {
        writeln!(csv, "{n},{k},{}", e.text()).unwrap();
    }
    let result = json!({
        "entries": entries.iter().map(|(k, e)| json!({"n": n, "k": k, "value": e.json()})).collect::<Vec<_>>(),
    });
    let p = params([
        ("variant", variant.name().into()),
        ("n", n.into()),
        ("k", k.map_or(Value::Null, Value::from)),
        ("q", opt_rational(&q)),
    ]);
    Ok(Record::new("stirling", p, result, text).with_csv(csv))
}

fn bell(
    variant: Variant,
    n: usize,
    q: Option<Rational>,
    lambda_poly: bool,
) -> Result<Record, CliError> {
    let (total, full) = match variant {
        Variant::Carlitz => {
            let b = q_bell(n, LambdaMode::Polynomial);
            (b.poly, b.lambda_form.expect("requested the lambda form"))
        }
        Variant::Cigl => (cigl_bell(n)?, row(variant, n)?),
    };
    let (text, value) = match (lambda_poly, &q) {
        (false, _) => {
            let e = Entry::new(total, &q);
            (e.text(), e.json())
        }
        (true, None) => (out::lambda_poly_text(&full), out::lambda_poly(&full)),
        (true, Some(q)) => {
            let coeffs: Vec<Rational> = full.iter().map(|s| s.eval(q)).collect();
            let v = out::numeric_lambda_poly(&coeffs);
            (v["text"].as_str().unwrap().to_string(), v)
        }
    };
    let p = params([
        ("variant", variant.name().into()),
        ("n", n.into()),
        ("q", opt_rational(&q)),
        ("lambda_poly", lambda_poly.into()),
    ]);
    Ok(Record::new("bell", p, json!({ "value": value }), text))
}

fn perturbed_index(n: usize) -> usize {
    n.div_ceil(2)
}

fn perturbed_table(n: usize, perturb: bool, diag: &mut dyn Write) -> QStirlingTable<QPoly> {
    let table = QStirlingTable::carlitz(n);
    if !perturb {
        return table;
    }
    let k = perturbed_index(n);
    let _ = writeln!(diag, "perturbation: S[{n},{k}] += 1");
    table.with_entry(n, k, table.get(n, k).unwrap() + QPoly::one())
}

fn report_record(command: &str, p: serde_json::Map<String, Value>, report: &Report) -> Record {
    Record::new(command, p, out::report(report), report.to_string()).with_verdict(report.passed())
}

fn dobinski(args: DobinskiArgs, diag: &mut dyn Write) -> Result<Record, CliError> {
    let n = args.n;
    if args.formal {
        let order = args.order.expect("clap requires --order with --formal");
        let table = perturbed_table(n, args.perturb, diag);
        let report = dobinski_formal_verify_with(&table, n, order)?;
        let p = params([
            ("n", n.into()),
            ("formal", true.into()),
            ("order", order.into()),
            ("perturb", args.perturb.into()),
        ]);
        return Ok(report_record("dobinski", p, &report));
    }
    let (q, lambda) = (
        args.q.expect("clap requires --q"),
        args.lambda.expect("clap requires --lambda"),
    );
    let value = dobinski_numeric(n, &q, &lambda, &args.eps)?;
    let exact = q_bell(n, LambdaMode::Polynomial).eval(&q, &lambda);
    let enclosed = value.contains(&exact);
    let text = format!(
        "{value}\nexact sum_k S[{n},k] lambda^k = {exact} ~ {}\nenclosed: {}\n",
        format_decimal(&exact, 20),
        if enclosed { "yes" } else { "no" }
    );
    let mut result = out::certified(&value);
    result["exact"] = out::rational(&exact);
    result["enclosed"] = enclosed.into();
    let p = params([
        ("n", n.into()),
        ("formal", false.into()),
        ("q", out::rational(&q)),
        ("lambda", out::rational(&lambda)),
        ("eps", out::rational(&args.eps)),
    ]);
    Ok(Record::new("dobinski", p, result, text).with_verdict(enclosed))
}

fn poisson_params(a: &PoissonParamArgs) -> Result<QPoissonParams, CliError> {
    let p = QPoissonParams::new(a.lambda.clone(), a.q.clone(), a.eps.clone())?;
    Ok(match a.max_terms {
        Some(m) => p.with_max_terms(m),
        None => p,
    })
}

fn poisson(quantity: PoissonQuantity) -> Result<Record, CliError> {
    let (name, index_name, index, args) = match &quantity {
        PoissonQuantity::Pmf { k, params } => ("pmf", "k", *k, params),
        PoissonQuantity::Moment { n, params } => ("moment", "n", *n, params),
        PoissonQuantity::FactorialMoment { m, params } => ("factorial-moment", "m", *m, params),
    };
    let params_ = poisson_params(args)?;
    let value: CertifiedValue = match quantity {
        PoissonQuantity::Pmf { .. } => qpoisson::pmf(index, &params_)?,
        PoissonQuantity::Moment { .. } => qpoisson::moment(index, &params_)?,
        PoissonQuantity::FactorialMoment { .. } => qpoisson::factorial_moment(index, &params_)?,
    };
    let p = params([
        ("quantity", name.into()),
        (index_name, index.into()),
        ("q", out::rational(&args.q)),
        ("lambda", out::rational(&args.lambda)),
        ("eps", out::rational(&args.eps)),
    ]);
    let result = out::certified(&value);
    let csv = format!(
        "{index_name},estimate,error_bound\n{index},{},{}\n",
        result["estimate"].as_str().unwrap(),
        result["error_bound"].as_str().unwrap()
    );
    Ok(Record::new("poisson", p, result, value.to_string()).with_csv(csv))
}

fn verify(which: VerifyWhich, perturb: bool, diag: &mut dyn Write) -> Result<Record, CliError> {
    match which {
        VerifyWhich::Eq4 { n, xmax } => {
            let table = perturbed_table(n, perturb, diag);
            let report = verify_defining_relation_with(&table, n, xmax)?;
            let p = params([
                ("check", "eq4".into()),
                ("n", n.into()),
                ("xmax", xmax.into()),
                ("perturb", perturb.into()),
            ]);
            Ok(report_record("verify", p, &report))
        }
        VerifyWhich::Eq8 { q, lambda, order } => {
            let eps = Rational::new(1.into(), 1_000_000_000_000i64.into());
            let params_ = QPoissonParams::new(lambda.clone(), q.clone(), eps)?;
            let mut series = pgf_unnormalized(&params_, order);
            if perturb && order >= 1 {
                let _ = writeln!(diag, "perturbation: coefficient of t^1 += 1");
                let mut c = series.coeffs().to_vec();
                c[1] += Rational::one();
                series = TruncatedSeries::new("t", c)?;
            }
            let report = verify_eq8_with(&params_, &series)?;
            let p = params([
                ("check", "eq8".into()),
                ("q", out::rational(&q)),
                ("lambda", out::rational(&lambda)),
                ("order", order.into()),
                ("perturb", perturb.into()),
            ]);
            Ok(report_record("verify", p, &report))
        }
        VerifyWhich::CiglDobinski { n, order } => {
            let mut coeffs = cigl_falling_power_expand(n)?;
            if perturb {
                let m = perturbed_index(n);
                let _ = writeln!(diag, "perturbation: c[{n},{m}] += 1");
                coeffs[m] = &coeffs[m] + &QPoly::one();
            }
            let report = cigl_dobinski_verify_with(&coeffs, n, order)?;
            let p = params([
                ("check", "cigl-dobinski".into()),
                ("n", n.into()),
                ("order", order.into()),
                ("perturb", perturb.into()),
            ]);
            Ok(report_record("verify", p, &report))
        }
        VerifyWhich::InvCalibration { nmax } => {
            let table = perturbed_table(nmax, perturb, diag);
            let cal = inv_calibration_with(&table, nmax)?;
            let mut text = cal.report.to_string();
            text.push_str("exponents e(k):");
            for (k, e) in cal.exponents.iter().enumerate().skip(1) {
                match e {
                    Some(e) => write!(text, " {k}:{e}").unwrap(),
                    None => write!(text, " {k}:-").unwrap(),
                }
            }
            text.push('\n');
            let mut result = out::report(&cal.report);
            result["exponents"] = cal
                .exponents
                .iter()
                .skip(1)
                .copied()
                .collect::<Vec<_>>()
                .into();
            let p = params([
                ("check", "inv-calibration".into()),
                ("nmax", nmax.into()),
                ("perturb", perturb.into()),
            ]);
            Ok(Record::new("verify", p, result, text).with_verdict(cal.report.passed()))
        }
    }
}

fn partitions(
    n: usize,
    k: Option<usize>,
    stats: &[Statistic],
    weighted: bool,
    cap: usize,
) -> Result<Record, CliError> {
    let stat_names: Vec<Value> = stats.iter().map(|s| s.name().into()).collect();
    let p = params([
        ("n", n.into()),
        ("k", k.map_or(Value::Null, Value::from)),
        ("stat", stat_names.into()),
        ("weighted", weighted.into()),
    ]);
    if weighted {
        let sums: Vec<(Statistic, QPoly)> = stats
            .iter()
            .map(|&s| Ok((s, weighted_sum_capped(n, k, s, cap)?)))
            .collect::<Result<_, Error>>()?;
        let text = sums
            .iter()
            .map(|(s, w)| format!("{}: {w}\n", s.name()))
            .collect();
        let mut csv = String::from("stat,value\n");
        let mut result = serde_json::Map::new();
        for (s, w) in &sums {
            writeln!(csv, "{},{w}", s.name()).unwrap();
            result.insert(s.name().into(), out::poly(w));
        }
        return Ok(Record::new("partitions", p, Value::Object(result), text).with_csv(csv));
    }

    let header: Vec<&str> = ["rg", "k"]
        .into_iter()
        .chain(stats.iter().map(|s| s.name()))
        .collect();
    let mut csv = header.join(",") + "\n";
    let mut text = header.join("\t") + "\tblocks\n";
    let mut rows = Vec::new();
    for part in enumerate_partitions_capped(n, k, cap)? {
        let values: Vec<usize> = stats.iter().map(|s| s.of(&part)).collect();
        let fields: Vec<String> = [part.to_string(), part.num_blocks().to_string()]
            .into_iter()
            .chain(values.iter().map(usize::to_string))
            .collect();
        writeln!(csv, "{}", fields.join(",")).unwrap();
        let blocks: Vec<String> = part
            .blocks()
            .iter()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        writeln!(text, "{}\t{}", fields.join("\t"), blocks.join(" ")).unwrap();
        let mut obj = serde_json::Map::new();
        obj.insert("rg".into(), part.rg().to_vec().into());
        obj.insert("k".into(), part.num_blocks().into());
        for (s, v) in stats.iter().zip(&values) {
            obj.insert(s.name().into(), (*v).into());
        }
        rows.push(Value::Object(obj));
    }
    Ok(Record::new("partitions", p, json!({ "partitions": rows }), text).with_csv(csv))
}

fn psi(quantity: PsiQuantity) -> Result<Record, CliError> {
    match quantity {
        PsiQuantity::Stirling { seq, n, residuals } => {
            let psi = PsiSequence::from_spec(&seq)?;
            let row = psi_stirling_row(n, &psi)?;
            let res = psi_residuals(n, &psi, residuals)?;
            let mut text: String = row
                .iter()
                .enumerate()
                .map(|(k, s)| format!("S[{n},{k}] = {s}\n"))
                .collect();
            for (x, r) in &res {
                writeln!(text, "residual at x={x}: {r}").unwrap();
            }
            let mut csv = String::from("n,k,value\n");
            for (k, s) in row.iter().enumerate() {
                writeln!(csv, "{n},{k},{s}").unwrap();
            }
            let result = json!({
                "entries": row.iter().enumerate().map(|(k, s)| json!({"n": n, "k": k, "value": out::rational(s)})).collect::<Vec<_>>(),
                "residuals": res.iter().map(|(x, r)| json!({"x": x, "value": out::rational(r)})).collect::<Vec<_>>(),
            });
            let p = params([
                ("quantity", "stirling".into()),
                ("seq", psi.name().into()),
                ("n", n.into()),
                ("residuals", residuals.into()),
            ]);
            Ok(Record::new("psi", p, result, text).with_csv(csv))
        }
        PsiQuantity::Bell { seq, n } => {
            let psi = PsiSequence::from_spec(&seq)?;
            let b = psi_bell(n, &psi)?;
            let p = params([
                ("quantity", "bell".into()),
                ("seq", psi.name().into()),
                ("n", n.into()),
            ]);
            Ok(Record::new(
                "psi",
                p,
                json!({ "value": out::rational(&b) }),
                b.to_string(),
            ))
        }
    }
}
