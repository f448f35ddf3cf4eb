use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use cyclo_core::algebra::{phi_alpha_matrix, phi_eps_matrix};
use cyclo_core::alpha::AlphaFunction;
use cyclo_core::arith::is_prime;
use cyclo_core::characters::{
    check_gauss_identities, enumerate_characters, gauss_sum, integral_coeffs, value_conductor, Tau,
    UnitGroupStructure,
};
use cyclo_core::diag::{
    budget_from_env, count_idempotents_abelian, decide_diag_cyclic, group_exponent, vandermonde_iso,
};
use cyclo_core::group::FinAbGroup;
use cyclo_core::report::{matrix_json, Check, Report};
use cyclo_core::ring::{cyclotomic_polynomial, CycloRing, ModRing};
use cyclo_core::verify::{criterion_oracle_compare, fourier_sweep, naturality_sweep, sweep_theorem};

use crate::{AlphaKind, Command, Failure, Format, RunConfig, VerifyKind};

const MAX_PRIME: u64 = 7;
const MAX_ORDER: u64 = 256;
const MAX_R: u32 = 4;
const MAX_SAMPLES: usize = 100_000;

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Phi { n, format } => phi(n, format),
        Command::Verify { what, config } => verify(what, &config),
        Command::GaussTable {
            p,
            max_r,
            format,
            output,
        } => gauss_table(p, max_r, format, output.as_deref()),
        Command::Diag {
            modulus,
            n,
            group,
            emit_iso,
            count_idempotents,
        } => diag(modulus, n, group, emit_iso, count_idempotents),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn phi(n: u64, format: Format) -> Result<(), Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let poly = cyclotomic_polynomial(n);
    let text = match format {
        Format::Text => format!("{poly}\n"),
        Format::Json => format!("{}\n", serde_json::to_string(&poly).expect("serializable")),
        Format::Csv => return Err(usage("phi supports --format text or json")),
    };
    emit(&text, None)
}

fn validate(c: &RunConfig) -> Result<(), Failure> {
    if !is_prime(c.p) || c.p > MAX_PRIME {
        return Err(usage(format!("--p must be a prime at most {MAX_PRIME}")));
    }
    if c.max_order.is_some_and(|m| m == 0 || m > MAX_ORDER) {
        return Err(usage(format!("--max-order must lie in 1..={MAX_ORDER}")));
    }
    if c.naturality_order.is_some_and(|m| m == 0 || m > MAX_ORDER) {
        return Err(usage(format!("--naturality-order must lie in 1..={MAX_ORDER}")));
    }
    if c.max_r == 0 || c.max_r > MAX_R || c.r == 0 || c.r > MAX_R {
        return Err(usage(format!("--r and --max-r must lie in 1..={MAX_R}")));
    }
    if c.samples > MAX_SAMPLES {
        return Err(usage(format!("--samples must be at most {MAX_SAMPLES}")));
    }
    if c.jobs == Some(0) {
        return Err(usage("--jobs must be positive"));
    }
    if c.format == Format::Csv {
        return Err(usage("verify supports --format json or text"));
    }
    Ok(())
}

fn default_max_order(p: u64) -> u64 {
    match p {
        2 => 32,
        3 => 27,
        _ => p.pow(3),
    }
}

fn default_naturality_order(p: u64) -> u64 {
    match p {
        2 => 16,
        3 => 27,
        _ => p.pow(2),
    }
}

fn verify(what: VerifyKind, c: &RunConfig) -> Result<(), Failure> {
    validate(c)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = c.jobs {
            b = b.num_threads(j);
        }
        b.build().map_err(|e| usage(e.to_string()))?
    };
    let report = pool.install(|| build_report(what, c))?;
    let text = match c.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")),
        _ => text_report(&report),
    };
    emit(&text, c.output.as_deref())?;
    if report.failed == 0 {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn build_report(what: VerifyKind, c: &RunConfig) -> Result<Report, Failure> {
    let p = c.p;
    let max_order = c.max_order.unwrap_or(default_max_order(p));
    let naturality_order = c.naturality_order.unwrap_or(default_naturality_order(p));
    let budget = budget_from_env()?;
    let alpha_name = match c.alpha {
        AlphaKind::Tpzc => "tpzc",
    };
    let (command, params, mut checks) = match what {
        VerifyKind::Fourier => (
            "verify fourier",
            json!({ "p": p, "max_order": max_order }),
            fourier_sweep(p, max_order)?,
        ),
        VerifyKind::Gauss => {
            let mut checks = Vec::new();
            for r in 1..=c.max_r {
                let ring = CycloRing::new(value_conductor(p, r), p)?;
                checks.extend(check_gauss_identities(p, r, &ring)?);
            }
            ("verify gauss", json!({ "p": p, "max_r": c.max_r }), checks)
        }
        VerifyKind::Iso => (
            "verify iso",
            json!({
                "p": p,
                "max_order": max_order,
                "naturality_order": naturality_order,
                "criterion_level": c.max_r,
                "alpha": alpha_name,
            }),
            sweep_theorem(p, max_order, naturality_order, c.max_r, budget)?,
        ),
        VerifyKind::CriterionOracle => (
            "verify criterion-oracle",
            json!({
                "p": p,
                "r": c.r,
                "samples": c.samples,
                "seed": c.seed,
                "extra_groups": c.extra_groups,
            }),
            criterion_oracle_compare(p, c.r, c.samples, c.seed, c.extra_groups)?,
        ),
        VerifyKind::Naturality => {
            let ring = CycloRing::new(value_conductor(p, 1), p)?;
            (
                "verify naturality",
                json!({ "p": p, "max_order": naturality_order, "alpha": alpha_name }),
                naturality_sweep(p, naturality_order, &AlphaFunction::tpzc(&ring), budget)?,
            )
        }
    };
    if c.dump_matrix {
        attach_matrices(what, p, &mut checks)?;
    }
    Ok(Report::new(command, params, checks))
}

/// Adds the matrix of `Φ_ε` (fourier) or `Φ(α)` (iso) to each per-group check.
fn attach_matrices(what: VerifyKind, p: u64, checks: &mut [Check]) -> Result<(), Failure> {
    let alpha = AlphaFunction::tpzc(&CycloRing::new(value_conductor(p, 1), p)?);
    for check in checks.iter_mut() {
        let matrix = match (what, check.id.as_str()) {
            (VerifyKind::Fourier, "psi-after-phi") => {
                let g = FinAbGroup::parse_notation(&check.subject, Some(p))?;
                phi_eps_matrix(&g, &CycloRing::new(g.exponent(), p)?)?
            }
            (VerifyKind::Iso, "tpzc-iso") => {
                let g = FinAbGroup::parse_notation(&check.subject, Some(p))?;
                phi_alpha_matrix(&g, &alpha)?
            }
            _ => continue,
        };
        check.witness = json!({ "result": check.witness.take(), "matrix": matrix_json(&matrix) });
    }
    Ok(())
}

fn text_report(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        out.push_str(&format!("{} {} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.id, c.subject));
    }
    out.push_str(&format!("{}: {} passed, {} failed\n", r.command, r.passed, r.failed));
    out
}

fn gauss_table(p: u64, max_r: u32, format: Format, output: Option<&Path>) -> Result<(), Failure> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(usage(format!("--p must be a prime at most {MAX_PRIME}")));
    }
    if max_r == 0 || max_r > MAX_R {
        return Err(usage(format!("--max-r must lie in 1..={MAX_R}")));
    }
    let mut rows = Vec::new();
    for r in 1..=max_r {
        let s = UnitGroupStructure::new(p, r)?;
        let ring = CycloRing::new(value_conductor(p, r), p)?;
        for chi in enumerate_characters(&s, &ring)? {
            for u in 0..s.modulus() {
                let g = gauss_sum(&chi, &Tau::Eps(u))?;
                rows.push((s.modulus(), chi.exponents().to_vec(), u, integral_coeffs(&g), g.is_unit()));
            }
        }
    }
    let join = |xs: &[String]| xs.join(" ");
    let text = match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["N", "chi_exponents", "u", "sum_coeffs", "is_unit"])
                .map_err(|e| usage(e.to_string()))?;
            for (n, chi, u, coeffs, unit) in &rows {
                let chi: Vec<String> = chi.iter().map(u64::to_string).collect();
                let coeffs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                w.write_record([n.to_string(), join(&chi), u.to_string(), join(&coeffs), unit.to_string()])
                    .map_err(|e| usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| usage(e.to_string()))?).expect("ascii")
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(n, chi, u, coeffs, unit)| {
                    json!({
                        "N": n,
                        "chi_exponents": chi,
                        "u": u,
                        "sum_coeffs": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "is_unit": unit,
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows).expect("serializable"))
        }
        Format::Text => return Err(usage("gauss-table supports --format csv or json")),
    };
    emit(&text, output)
}

fn diag(
    modulus: u64,
    n: Option<u64>,
    group: Option<Vec<u64>>,
    emit_iso: bool,
    count: bool,
) -> Result<(), Failure> {
    let orders = match (n, group) {
        (Some(n), None) => vec![n],
        (None, Some(g)) => g,
        _ => return Err(usage("give exactly one of --n and --group")),
    };
    let exponent = group_exponent(&orders);
    let verdict = decide_diag_cyclic(exponent, modulus)?;
    let mut out = serde_json::to_value(&verdict).expect("serializable");
    if emit_iso {
        if let Some(xi) = verdict.witness.filter(|_| verdict.decision) {
            let s = vandermonde_iso(exponent, modulus, xi)?;
            out["iso"] = json!({
                "xi": s.xi,
                "matrix": (0..s.matrix.rows())
                    .map(|i| s.matrix.row(i).iter().map(|x| x.value()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "determinant": s.determinant.value(),
            });
        }
    }
    if count {
        let found = count_idempotents_abelian(modulus, &orders, budget_from_env()?)?;
        let per_factor = ModRing::new(modulus)?.idempotents().len() as u64;
        let size: u64 = orders.iter().product();
        let expected = u32::try_from(size).ok().and_then(|s| per_factor.checked_pow(s));
        out["idempotents"] = json!(found);
        out["idempotents_if_diagonalizable"] = json!(expected);
        if (expected == Some(found)) != verdict.decision {
            emit(&format!("{out}\n"), None)?;
            return Err(Failure::ChecksFailed);
        }
    }
    emit(&format!("{out}\n"), None)
}
