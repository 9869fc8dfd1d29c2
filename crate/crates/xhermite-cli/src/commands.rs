//! Implementations of the five subcommands. Each returns the rendered
//! report plus warnings (for stderr) and a failure count; the binary maps
//! failures to the exit status so that exit 0 ⇔ zero FAIL lines.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use xhermite::exactpoly::{count_real_roots, rational_to_string, ExactPoly};
use xhermite::family::{eta, exceptional_hermite, m_degrees, norming_constant};
use xhermite::operators::{
    adjoint_identity_residual, build_chain, eigen_residual, lagrange_identity_residual,
    norm_identity_residual, verify_eigen, verify_factorization, verify_spectrum_removal,
    ChainMode,
};
use xhermite::partitions::partition_from_gapset;
use xhermite::quadrature::{
    converged_gram_matrix, norming_constant_value, DEFAULT_DRIFT_TOL, DEFAULT_ORDER_CAP,
};

use crate::config::{OutputFormat, RunConfig};
use crate::reports::{
    to_json_string, ChainLevelReport, ChainReport, CheckLine, FamilyMember, FamilyReport,
    GapsReport, GramReport, PolyJson, VerifyReport,
};

pub struct CommandOutput {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub failures: usize,
}

impl CommandOutput {
    fn clean(stdout: String) -> Self {
        CommandOutput {
            stdout,
            warnings: Vec::new(),
            failures: 0,
        }
    }
}

fn fmt_set(values: &[usize]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn fmt_ints(values: &[i64]) -> String {
    let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    inner.join(", ")
}

fn csv_coeffs(p: &ExactPoly) -> String {
    p.coeffs()
        .iter()
        .map(rational_to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

pub fn cmd_family(cfg: &RunConfig) -> Result<CommandOutput, xhermite::Error> {
    let lam = &cfg.partition;
    let sets = lam.degree_sets();
    let eta_poly = eta(lam, None)?;
    let degrees = sets.allowed_up_to(cfg.cutoff);
    let mut members = Vec::with_capacity(degrees.len());
    for &n in &degrees {
        members.push((n, exceptional_hermite(lam, n, None)?));
    }

    let report = FamilyReport {
        partition: lam.parts().to_vec(),
        n: lam.n(),
        ell: lam.ell(),
        exceptional_degrees: sets.exceptional().to_vec(),
        sporadic_degrees: sets.sporadic().to_vec(),
        eta: PolyJson::from_poly(&eta_poly),
        polynomials: members
            .iter()
            .map(|(n, p)| FamilyMember {
                n: *n,
                coeffs: PolyJson::from_poly(p).coeffs,
            })
            .collect(),
    };

    let stdout = match cfg.format {
        OutputFormat::Json => to_json_string(&report),
        OutputFormat::Csv => {
            let mut s = String::from("kind,n,degree,leading,coeffs\n");
            let _ = writeln!(
                s,
                "eta,,{},{},{}",
                eta_poly.degree().unwrap_or(0),
                rational_to_string(eta_poly.leading_coeff().unwrap()),
                csv_coeffs(&eta_poly)
            );
            for (n, p) in &members {
                let _ = writeln!(
                    s,
                    "H,{n},{},{},{}",
                    p.degree().unwrap_or(0),
                    rational_to_string(p.leading_coeff().unwrap()),
                    csv_coeffs(p)
                );
            }
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "partition {lam}: N = {}, ell = {}", lam.n(), lam.ell());
            let _ = writeln!(s, "exceptional degrees: {}", fmt_set(sets.exceptional()));
            let _ = writeln!(s, "sporadic degrees: {}", fmt_set(sets.sporadic()));
            let _ = writeln!(
                s,
                "allowed degrees up to {}: {}",
                cfg.cutoff,
                fmt_set(&degrees)
            );
            let _ = writeln!(s, "eta = {eta_poly}");
            for (n, p) in &members {
                let _ = writeln!(
                    s,
                    "H[{n}] = {p}   (degree {}, leading {})",
                    p.degree().unwrap_or(0),
                    rational_to_string(p.leading_coeff().unwrap())
                );
            }
            s
        }
    };

    let mut out = CommandOutput::clean(stdout);
    if !lam.is_even() {
        out.warnings.push(format!(
            "partition {lam} is not even: the family exists formally, but orthogonality fails \
             (the weight eta^-2 e^(-x^2) is singular on the real line)"
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> ExactPoly {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
    ExactPoly::from_integers(&coeffs)
}

pub fn cmd_verify(cfg: &RunConfig, inject_fault: bool) -> Result<CommandOutput, xhermite::Error> {
    let lam = &cfg.partition;
    let sets = lam.degree_sets();
    let eta_poly = eta(lam, None)?;
    let big_n = lam.n();
    let ell = lam.ell();
    let mut checks: Vec<CheckLine> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    // Krein-Adler instance for this partition.
    let zero_free = count_real_roots(&eta_poly)? == 0;
    if zero_free == lam.is_even() {
        checks.push(CheckLine::pass(format!(
            "krein-adler equivalence (zero-free eta <=> even partition; {} real roots)",
            if zero_free { 0 } else { 1 }
        )));
    } else {
        checks.push(CheckLine::fail(
            "krein-adler equivalence (zero-free eta <=> even partition)",
            format!("eta = {eta_poly}"),
        ));
    }

    // Eigen identity for every allowed degree within the cutoff.
    let allowed = sets.allowed_up_to(cfg.cutoff);
    for &n in &allowed {
        match verify_eigen(lam, n) {
            Ok(eps) => checks.push(CheckLine::pass(format!(
                "eigen identity (n = {n}, eps = {eps})"
            ))),
            Err(e) => checks.push(CheckLine::fail(format!("eigen identity (n = {n})"), e.to_string())),
        }
    }

    // Negative control: corrupt one family member and show the residual.
    if inject_fault {
        if let Some(&n) = sets.allowed_up_to(cfg.cutoff + 2).iter().find(|&&n| n >= 1) {
            let h = exceptional_hermite(lam, n, None)?;
            let corrupted = &h + &ExactPoly::one();
            let eps = 2 * (big_n as i64 - n as i64);
            let residual = eigen_residual(&eta_poly, &corrupted, eps);
            if residual.is_zero() {
                checks.push(CheckLine::fail(
                    format!("fault injection (n = {n})"),
                    "injected corruption went undetected".to_string(),
                ));
            } else {
                checks.push(CheckLine::fail(
                    format!("eigen identity (n = {n}) [injected corrupted H]"),
                    residual.to_string(),
                ));
            }
        }
    }

    // Shift invariance of the Wronskian representations (asserted inside
    // the construction whenever l exceeds ell).
    for l in (ell + 1)..=big_n.min(ell + 2) {
        match eta(lam, Some(l)) {
            Ok(_) => checks.push(CheckLine::pass(format!("shift invariance of eta (l = {l})"))),
            Err(e) => checks.push(CheckLine::fail(
                format!("shift invariance of eta (l = {l})"),
                e.to_string(),
            )),
        }
        if let Some(&n) = allowed.first() {
            match exceptional_hermite(lam, n, Some(l)) {
                Ok(_) => checks.push(CheckLine::pass(format!(
                    "shift invariance of H (n = {n}, l = {l})"
                ))),
                Err(e) => checks.push(CheckLine::fail(
                    format!("shift invariance of H (n = {n}, l = {l})"),
                    e.to_string(),
                )),
            }
        }
    }

    // Norm identity along this partition's Wronskian stack.
    let stack = m_degrees(lam, ell)?;
    for &n in &allowed {
        if n > big_n + ell + 4 {
            break;
        }
        let m = n + ell - big_n;
        match norm_identity_residual(&stack, m) {
            Ok(_) => checks.push(CheckLine::pass(format!(
                "norm identity (n = {n}, m = {m})"
            ))),
            Err(e) => checks.push(CheckLine::fail(
                format!("norm identity (n = {n}, m = {m})"),
                e.to_string(),
            )),
        }
    }

    // Randomized adjoint / Lagrange probes, reproducible from the seed.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let xi_poly = eta(&lam.truncate(1), None)?;
    let mut adjoint_bad = None;
    let mut lagrange_bad = None;
    for _ in 0..20 {
        let f = random_poly(&mut rng, 4);
        let g = random_poly(&mut rng, 4);
        if let Err(e) = adjoint_identity_residual(&xi_poly, &eta_poly, &f, &g) {
            adjoint_bad = Some(e);
        }
        if let Err(e) = lagrange_identity_residual(&eta_poly, &f, &g) {
            lagrange_bad = Some(e);
        }
    }
    match adjoint_bad {
        None => checks.push(CheckLine::pass(
            "adjoint identity (20 randomized probes, xi from lambda^(1))",
        )),
        Some(e) => checks.push(CheckLine::fail("adjoint identity", e.to_string())),
    }
    match lagrange_bad {
        None => checks.push(CheckLine::pass("lagrange identity (20 randomized probes)")),
        Some(e) => checks.push(CheckLine::fail("lagrange identity", e.to_string())),
    }

    // Chain checks exist only for even partitions.
    if lam.is_even() {
        let chain = build_chain(lam, ChainMode::Descending)?;
        let mut probes: Vec<ExactPoly> = (0..=3)
            .map(|k| ExactPoly::monomial(BigRational::from_integer(1.into()), k))
            .collect();
        for n in sets.allowed_up_to(big_n + 2) {
            probes.push(exceptional_hermite(lam, n, None)?);
        }
        for step in &chain {
            let mut bad = None;
            for probe in &probes {
                if let Err(e) = verify_factorization(step, probe) {
                    bad = Some(e);
                    break;
                }
            }
            match bad {
                None => checks.push(CheckLine::pass(format!(
                    "factorization chain (step {}, eps0 = {}, {} probes)",
                    step.j(),
                    step.eps0(),
                    probes.len()
                ))),
                Some(e) => checks.push(CheckLine::fail(
                    format!("factorization chain (step {})", step.j()),
                    e.to_string(),
                )),
            }
        }
        if let Some(last) = chain.last() {
            if last.eta_hi().degree() == Some(0) {
                checks.push(CheckLine::pass("chain endpoint is classical (constant eta)"));
            } else {
                checks.push(CheckLine::fail(
                    "chain endpoint is classical (constant eta)",
                    format!("eta = {}", last.eta_hi()),
                ));
            }
        }
        match verify_spectrum_removal(lam, cfg.cutoff) {
            Ok(_) => checks.push(CheckLine::pass(format!(
                "spectrum removal rule (cutoff {})",
                cfg.cutoff
            ))),
            Err(e) => checks.push(CheckLine::fail("spectrum removal rule", e.to_string())),
        }
    } else {
        warnings.push(format!(
            "partition {lam} is not even: factorization-chain and spectrum checks are skipped \
             (they require an admissible weight)"
        ));
    }

    let failures = checks.iter().filter(|c| c.failed()).count();
    let report = VerifyReport {
        partition: lam.parts().to_vec(),
        cutoff: cfg.cutoff,
        seed: cfg.seed,
        checks,
        failures,
    };

    let stdout = match cfg.format {
        OutputFormat::Json => to_json_string(&report),
        OutputFormat::Csv => {
            let mut s = String::from("name,status,residual\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "\"{}\",{},\"{}\"",
                    c.name,
                    c.status,
                    c.residual.as_deref().unwrap_or("")
                );
            }
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "verify report for partition {lam}, cutoff {}, seed {}",
                cfg.cutoff, cfg.seed
            );
            for c in &report.checks {
                let _ = writeln!(s, "{}: {}", c.status, c.name);
                if let Some(r) = &c.residual {
                    let _ = writeln!(s, "  residual = {r}");
                }
            }
            let _ = writeln!(
                s,
                "summary: {} checks, {} failures",
                report.checks.len(),
                report.failures
            );
            s
        }
    };

    Ok(CommandOutput {
        stdout,
        warnings,
        failures,
    })
}

// ---------------------------------------------------------------------------
// chain
// ---------------------------------------------------------------------------

pub fn cmd_chain(cfg: &RunConfig) -> Result<CommandOutput, xhermite::Error> {
    let lam = &cfg.partition;
    if !lam.is_even() {
        return Err(xhermite::Error::NotEven(lam.to_string()));
    }
    let levels = verify_spectrum_removal(lam, cfg.cutoff)?;
    let lam1 = lam.first_part();
    let sets = lam.degree_sets();

    let cumulative = |j: usize| -> Vec<usize> {
        let mut degrees = sets.exceptional().to_vec();
        degrees.extend_from_slice(&sets.sporadic()[..j]);
        degrees.sort_unstable();
        degrees
    };

    let report = ChainReport {
        partition: lam.parts().to_vec(),
        cutoff: cfg.cutoff,
        levels: levels
            .iter()
            .map(|level| ChainLevelReport {
                j: level.j,
                partition: level.partition.parts().to_vec(),
                n: level.partition.n(),
                ell: level.ell,
                exceptional_degrees: level.partition.degree_sets().exceptional().to_vec(),
                cumulative_degrees: cumulative(level.j),
                eps0: (level.j < lam1).then_some(2 * level.ell as i64),
                spectrum: level.eigenvalues.clone(),
            })
            .collect(),
        removal_rule_verified: true,
    };

    let stdout = match cfg.format {
        OutputFormat::Json => to_json_string(&report),
        OutputFormat::Csv => {
            let mut s = String::from("j,partition,N,ell,K,K_cumulative,eps0,spectrum\n");
            for level in &report.levels {
                let parts: Vec<String> = level.partition.iter().map(|p| p.to_string()).collect();
                let own: Vec<String> = level
                    .exceptional_degrees
                    .iter()
                    .map(|k| k.to_string())
                    .collect();
                let cum: Vec<String> = level
                    .cumulative_degrees
                    .iter()
                    .map(|k| k.to_string())
                    .collect();
                let eigen_cells: Vec<String> =
                    level.spectrum.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(
                    s,
                    "{},\"{}\",{},{},\"{}\",\"{}\",{},\"{}\"",
                    level.j,
                    parts.join(","),
                    level.n,
                    level.ell,
                    own.join(";"),
                    cum.join(";"),
                    level.eps0.map(|e| e.to_string()).unwrap_or_default(),
                    eigen_cells.join(";")
                );
            }
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "descending factorization chain for {lam}, cutoff {}",
                cfg.cutoff
            );
            if lam.is_empty() {
                let _ = writeln!(s, "empty chain: the operator is already the classical one");
            }
            for level in &report.levels {
                let classical = if level.partition.is_empty() {
                    " [classical operator]"
                } else {
                    ""
                };
                let parts: Vec<String> = level.partition.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(
                    s,
                    "level j = {}: lambda^({}) = ({}), N_{} = {}, ell_{} = {}{}",
                    level.j,
                    level.j,
                    parts.join(", "),
                    level.j,
                    level.n,
                    level.j,
                    level.ell,
                    classical
                );
                let _ = writeln!(
                    s,
                    "  K(lambda^({})) = {}, K_{} = {}",
                    level.j,
                    fmt_set(&level.exceptional_degrees),
                    level.j,
                    fmt_set(&level.cumulative_degrees)
                );
                let _ = writeln!(s, "  spectrum (truncated): {}", fmt_ints(&level.spectrum));
                if level.j < lam1 {
                    let _ = writeln!(
                        s,
                        "  step {} -> {}: eps0 = 2*ell_{} = {}",
                        level.j,
                        level.j + 1,
                        level.j,
                        2 * level.ell
                    );
                }
            }
            let _ = writeln!(
                s,
                "removal rule sigma_(j+1) - 2 = sigma_j minus {{2 ell_j}}: verified at every step"
            );
            s
        }
    };

    Ok(CommandOutput::clean(stdout))
}

// ---------------------------------------------------------------------------
// gaps
// ---------------------------------------------------------------------------

pub fn cmd_gaps(gapset: &[usize], format: OutputFormat) -> Result<CommandOutput, xhermite::Error> {
    let lam = partition_from_gapset(gapset)?;
    let mut sorted = gapset.to_vec();
    sorted.sort_unstable();
    let report = GapsReport {
        gapset: sorted.clone(),
        partition: lam.parts().to_vec(),
        even: lam.is_even(),
    };

    let stdout = match format {
        OutputFormat::Json => to_json_string(&report),
        OutputFormat::Csv => {
            let set: Vec<String> = sorted.iter().map(|v| v.to_string()).collect();
            let parts: Vec<String> = lam.parts().iter().map(|p| p.to_string()).collect();
            format!(
                "gapset,partition,even\n\"{}\",\"{}\",{}\n",
                set.join(";"),
                parts.join(","),
                lam.is_even()
            )
        }
        OutputFormat::Human => format!(
            "gap set {} -> partition {lam}, N = {}, even = {}\n",
            fmt_set(&sorted),
            lam.n(),
            lam.is_even()
        ),
    };

    Ok(CommandOutput::clean(stdout))
}

// ---------------------------------------------------------------------------
// gram
// ---------------------------------------------------------------------------

pub fn cmd_gram(cfg: &RunConfig) -> Result<CommandOutput, xhermite::Error> {
    let lam = &cfg.partition;
    if !lam.is_even() {
        return Err(xhermite::Error::NotEven(lam.to_string()));
    }
    let degrees = lam.degree_sets().allowed_up_to(cfg.cutoff);
    let result = converged_gram_matrix(
        lam,
        &degrees,
        cfg.quad_order,
        DEFAULT_DRIFT_TOL,
        DEFAULT_ORDER_CAP,
    )?;

    let mut warnings = Vec::new();
    if result.order > cfg.quad_order {
        warnings.push(format!(
            "convergence guard raised the quadrature order from {} to {} \
             (drift {:.3e}); rational-weight integrands are never exact at a fixed order",
            cfg.quad_order, result.order, result.drift
        ));
    }

    let formula_diagonal: Vec<f64> = degrees
        .iter()
        .map(|&n| Ok(norming_constant_value(&norming_constant(lam, n)?)))
        .collect::<Result<_, xhermite::Error>>()?;
    let max_relative_deviation = degrees
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let g = result.value[i][i];
            let f = formula_diagonal[i];
            (g - f).abs() / f.abs()
        })
        .fold(0.0f64, f64::max);

    let mut failures = 0usize;
    let mut fail_line = String::new();
    if !result.converged {
        failures += 1;
        fail_line = format!(
            "FAIL: gram matrix did not converge below drift {DEFAULT_DRIFT_TOL:.1e} \
             by order {} (drift {:.3e})\n",
            result.order, result.drift
        );
    }

    let report = GramReport {
        partition: lam.parts().to_vec(),
        degrees: degrees.clone(),
        order: result.order,
        converged: result.converged,
        matrix: result.value.clone(),
        formula_diagonal: formula_diagonal.clone(),
        max_relative_deviation,
    };

    let stdout = match cfg.format {
        OutputFormat::Json => to_json_string(&report),
        OutputFormat::Csv => {
            let mut s = String::from("degrees");
            for n in &degrees {
                let _ = write!(s, ",{n}");
            }
            s.push('\n');
            for (i, row) in report.matrix.iter().enumerate() {
                let _ = write!(s, "{}", degrees[i]);
                for v in row {
                    let _ = write!(s, ",{}", float17(*v));
                }
                s.push('\n');
            }
            s.push_str("formula_diagonal");
            for v in &formula_diagonal {
                let _ = write!(s, ",{}", float17(*v));
            }
            s.push('\n');
            s.push_str("relative_deviation");
            for (i, _) in degrees.iter().enumerate() {
                let dev = (report.matrix[i][i] - formula_diagonal[i]).abs()
                    / formula_diagonal[i].abs();
                let _ = write!(s, ",{}", float17(dev));
            }
            s.push('\n');
            s.push_str(&fail_line);
            s
        }
        OutputFormat::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "gram matrix for {lam}, degrees {}, quadrature order {}{}",
                fmt_set(&degrees),
                result.order,
                if result.converged {
                    " (converged)"
                } else {
                    " (NOT CONVERGED)"
                }
            );
            for (i, row) in report.matrix.iter().enumerate() {
                let entries: Vec<String> = row.iter().map(|v| float17(*v)).collect();
                let _ = writeln!(s, "  n={:<3} {}", degrees[i], entries.join("  "));
            }
            let entries: Vec<String> = formula_diagonal.iter().map(|v| float17(*v)).collect();
            let _ = writeln!(s, "formula diagonal: {}", entries.join("  "));
            let _ = writeln!(s, "max relative deviation: {max_relative_deviation:.3e}");
            s.push_str(&fail_line);
            s
        }
    };

    Ok(CommandOutput {
        stdout,
        warnings,
        failures,
    })
}
