use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use symorb::action::{minimize, moment_of_inertia, newton_residual, relative_spread, MinimizeOptions};
use symorb::classify::{build_table, classify, CSV_HEADER};
use symorb::symmetry::{named_group, DEFAULT_CAP};
use symorb::testpaths::{choreo21_comparison, line_symmetry_comparison, Branch, Method, ScanRow, SCAN_HEADER};
use symorb::variation::{
    lemma_le2_certificate, linspace, phi_monotonicity, phi_symmetry, verify_collinear_triple, verify_pi6,
    verify_triple_lagrange, VerifyRow, COLLINEAR_HEADER, LE2_HEADER, VERIFY_HEADER,
};
use symorb::{Masses, SymmetryGroup};

use crate::orbit::{trajectory_csv, Orbit};
use crate::{emit, ClassifyArgs, CliError, Command, GroupArgs, MinimizeArgs, ReportFormat, ScanArgs, ScanSymmetry, VerifyArgs};

pub(crate) fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Classify(a) => run_classify(&a, out),
        Command::Minimize(a) => run_minimize(&a, out),
        Command::Scan(a) => run_scan(&a, out),
        Command::Verify(a) => run_verify(&a, out),
    }
}

pub fn parse_masses(s: &str) -> Result<Masses, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("masses `{s}`: expected m1,m2,m3")))?;
    let m: [f64; 3] = v.try_into().map_err(|_| CliError::Input(format!("masses `{s}`: expected three values")))?;
    Ok(Masses::new(m)?)
}

fn resolve_group(g: &GroupArgs) -> Result<(String, SymmetryGroup), CliError> {
    match (&g.group, &g.group_file) {
        (Some(name), None) => Ok((name.clone(), named_group(name)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let gens = SymmetryGroup::parse_generators(&text)?;
            Ok((path.display().to_string(), SymmetryGroup::generate(&gens, DEFAULT_CAP)?))
        }
        _ => Err(CliError::Input("give exactly one of --group and --group-file".into())),
    }
}

/// `start:stop:step`, `a,b,c` or a single value, in increasing grid order.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Input(format!("bad grid `{s}`"));
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [a, b, h] => {
            let (a, b, h) = (num(a)?, num(b)?, num(h)?);
            if !(h > 0.0) || !a.is_finite() || !b.is_finite() || b < a {
                return Err(bad());
            }
            let n = ((b - a) / h + 1e-9).floor() as usize + 1;
            // snap to 12 decimals so 0.05 * 3 prints as 0.15
            (0..n).map(|k| ((a + k as f64 * h) * 1e12).round() / 1e12).collect()
        }
        [list] if !list.trim().is_empty() => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(bad()),
    };
    if grid.is_empty() || grid.iter().any(|w| !w.is_finite()) {
        return Err(bad());
    }
    Ok(grid)
}

fn run_classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.table {
        let mut s = format!("{CSV_HEADER}\n");
        for row in build_table() {
            s.push_str(&row.csv_line());
            s.push('\n');
        }
        return emit(a.out.as_deref(), &s, out);
    }
    let (name, g) = resolve_group(&a.group)?;
    let r = classify(&g, &parse_masses(&a.masses)?)?;
    let s = match a.format {
        ReportFormat::Kv => format!("name={name}\n{}", r.to_kv()),
        ReportFormat::Csv => {
            let mut f = r.csv_fields();
            f.insert(5, String::new());
            format!("{CSV_HEADER}\n{name},{}\n", f.join(","))
        }
    };
    emit(a.out.as_deref(), &s, out)
}

fn options(tol_grad: Option<f64>, quad_points: Option<usize>) -> MinimizeOptions {
    let mut o = MinimizeOptions::default();
    if let Some(t) = tol_grad {
        o.tol_grad = t;
    }
    o.quad_points = quad_points;
    o
}

fn run_minimize(a: &MinimizeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(a.alpha > 0.0 && a.alpha.is_finite()) {
        return Err(CliError::Input(format!("alpha = {} must be positive", a.alpha)));
    }
    if a.modes == 0 {
        return Err(CliError::Input("modes must be positive".into()));
    }
    let (name, g) = resolve_group(&a.group)?;
    let masses = parse_masses(&a.masses)?;
    let mut opts = options(a.tol_grad, a.quad_points);
    if let Some(m) = a.max_iter {
        opts.max_iter = m;
    }
    if let Some(r) = a.restarts {
        opts.restarts = r;
    }
    let res = minimize(&g, &masses, a.omega, a.alpha, a.modes, a.seed, &opts)?;
    let orbit = Orbit::from_result(&res, &g, a.omega, a.alpha);
    orbit.save(&a.out)?;
    if let Some(p) = &a.trajectory {
        emit(Some(p), &trajectory_csv(&res.loop_, a.samples), out)?;
    }
    let l = &res.loop_;
    let inertia = moment_of_inertia(l, 256);
    let lines = [
        format!("group={name}"),
        format!("order={}", g.order()),
        format!("omega={}", a.omega),
        format!("alpha={}", a.alpha),
        format!("modes={}", a.modes),
        format!("seed={}", a.seed),
        format!("best_seed={}", res.seed),
        format!("converged={}", res.converged),
        format!("iterations={}", res.iterations),
        format!("action={:.17e}", res.action),
        format!("action_over_2pi={:.12}", res.action / TAU),
        format!("gradient_norm={:.6e}", res.gradient_norm),
        format!("min_pair_distance={:.6e}", res.min_pair_distance),
        format!("scale={:.6e}", l.scale()),
        format!("angular_momentum={:.6e}", orbit.payload.angular_momentum),
        format!("inertia_spread={:.6e}", relative_spread(&inertia)),
        format!("newton_residual={:.6e}", newton_residual(l, a.omega, a.alpha)?),
        format!("out={}", a.out.display()),
    ];
    writeln!(out, "{}", lines.join("\n")).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    if !res.converged {
        return Err(CliError::NotConverged { iterations: res.iterations, gradient_norm: res.gradient_norm });
    }
    Ok(())
}

fn run_scan(a: &ScanArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let grid = parse_grid(&a.omega)?;
    let (rows, group): (Vec<ScanRow>, &str) = match a.symmetry {
        ScanSymmetry::Line => (line_symmetry_comparison(&grid)?.iter().flat_map(|c| c.rows()).collect(), "line"),
        ScanSymmetry::Choreo21 => (choreo21_comparison(&grid)?.iter().flat_map(|c| c.rows()).collect(), "choreo21"),
    };
    let mut rows = rows;
    if a.with_minimizer {
        let g = named_group(group)?;
        let opts = options(a.tol_grad, a.quad_points);
        let m = Masses::unit();
        let found: Vec<Option<ScanRow>> = grid
            .par_iter()
            .map(|&w| {
                minimize(&g, &m, w, 1.0, a.modes, a.seed, &opts)
                    .ok()
                    .map(|r| ScanRow { omega: w, branch: Branch::Minimizer, value: r.action, method: Method::Descent })
            })
            .collect();
        // keep grid order: each omega block is followed by its descent row
        let mut merged = Vec::with_capacity(rows.len() + grid.len());
        for (w, extra) in grid.iter().zip(found) {
            merged.extend(rows.iter().filter(|r| r.omega == *w).copied());
            merged.extend(extra);
        }
        rows = merged;
    }
    let mut s = format!("{SCAN_HEADER}\n");
    for r in &rows {
        s.push_str(&r.csv());
        s.push('\n');
    }
    emit(a.out.as_deref(), &s, out)
}

const SYMMETRY_ALPHAS: [f64; 3] = [0.5, 1.0, 1.5];
const SWEEP_ALPHAS: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75];
const MUS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.9];

fn with_extra(base: &[f64], extra: &[f64]) -> Vec<f64> {
    let mut v = base.to_vec();
    v.extend(extra.iter().copied().filter(|a| !base.contains(a)));
    v
}

fn write_rows(dir: &Path, file: &str, header: &str, lines: impl Iterator<Item = String>) -> Result<(), CliError> {
    let mut s = format!("{header}\n");
    for l in lines {
        s.push_str(&l);
        s.push('\n');
    }
    let p = dir.join(file);
    std::fs::write(&p, s).map_err(|e| CliError::io(&p, e))
}

fn summary(name: &str, rows: &[VerifyRow]) -> (String, usize) {
    let failed = rows.iter().filter(|r| !r.pass()).count();
    let worst = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let verdict = if failed == 0 { "PASS" } else { "FAIL" };
    (format!("{verdict} {name}: rows={} failed={failed} min_margin={worst:.3e}", rows.len()), failed)
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(x) = a.alpha.iter().find(|x| !(**x > 0.0 && **x < 2.0)) {
        return Err(CliError::Input(format!("alpha = {x} outside (0, 2)")));
    }
    std::fs::create_dir_all(&a.out).map_err(|e| CliError::io(&a.out, e))?;
    let dir = a.out.as_path();
    let sym_alphas = with_extra(&SYMMETRY_ALPHAS, &a.alpha);
    let sweep = with_extra(&SWEEP_ALPHAS, &a.alpha);
    let grid_alphas = with_extra(&linspace(0.25, 1.75, 21), &a.alpha);
    let gammas = linspace(0.0, PI / 2.0, 21);

    let mut checks: Vec<(&str, &str, Vec<VerifyRow>)> = vec![
        ("phi_symmetry", "phi_symmetry.csv", phi_symmetry(&sym_alphas, 17, 1e-10)?),
        ("phi_monotonicity", "phi_monotonicity.csv", phi_monotonicity(&sweep, 64)?),
        ("pi6", "pi6.csv", verify_pi6(&sweep)?),
        ("triple_lagrange", "triple_lagrange.csv", verify_triple_lagrange(&grid_alphas, &gammas)?),
    ];
    if a.inject_failure {
        let r = &mut checks[2].2[0];
        r.value = -r.value;
        r.margin = -r.value;
    }
    let mut failed = 0;
    let mut report = Vec::new();
    for (name, file, rows) in &checks {
        write_rows(dir, file, VERIFY_HEADER, rows.iter().map(|r| r.csv()))?;
        let (line, f) = summary(name, rows);
        report.push(line);
        failed += f;
    }

    let thetas = linspace(PI / 2.0, PI, 9);
    let mut coll = Vec::new();
    for &al in &with_extra(&[1.0], &a.alpha) {
        coll.extend(verify_collinear_triple(al, &MUS, &thetas)?);
    }
    write_rows(dir, "collinear.csv", COLLINEAR_HEADER, coll.iter().map(|r| r.csv()))?;
    let plain: Vec<VerifyRow> = coll.iter().map(|r| r.row).collect();
    let (line, f) = summary("collinear", &plain);
    report.push(line);
    failed += f;

    let cert = lemma_le2_certificate();
    write_rows(dir, "le2.csv", LE2_HEADER, cert.lines().into_iter())?;
    report.push(format!("{} le2_certificate: tail_bound={} p(1)={}", if cert.passed() { "PASS" } else { "FAIL" }, cert.tail_bound, cert.p_at_one));
    if !cert.passed() {
        failed += 1;
    }

    writeln!(out, "{}", report.join("\n")).map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}
