//! The work behind each subcommand, separated from argument parsing.

use std::path::{Path, PathBuf};

use fleetcharge_core::scenario::{generate_instance, Preset, ScenarioConfig};
use fleetcharge_core::validate_schedule;

use crate::error::CliError;
use crate::instance_file::{read_instance, write_instance};
use crate::policy::{run_policy, Policy};
use crate::report::{gantt_rows, CompareRow, Comparison, InstanceRef, RunReport};

/// Environment variable naming the directory for outputs written without `--out`.
pub const OUT_DIR_ENV: &str = "FLEETCHARGE_OUT_DIR";

/// `out` if given, else `name` inside the default output directory.
pub fn resolve_out(out: Option<&Path>, name: &str) -> PathBuf {
    match out {
        Some(path) => path.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from).join(name),
    }
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "instance".into(), |s| s.to_string_lossy().into_owned())
}

fn slug(policy: Policy) -> String {
    policy.to_string().replace(':', "-")
}

pub struct Generated {
    pub path: PathBuf,
    pub sha256: String,
    pub num_trucks: usize,
    pub num_ports: usize,
}

pub fn generate(preset: Preset, n: Option<usize>, seed: u64, slot_minutes: Option<u32>, out: Option<&Path>) -> Result<Generated, CliError> {
    let n = n.unwrap_or(match preset {
        Preset::Small => 8,
        Preset::Large => 100,
    });
    let mut config = ScenarioConfig::preset(preset, n, seed);
    if let Some(m) = slot_minutes {
        if m == 0 {
            return Err(CliError::Usage("--slot-minutes must be positive".into()));
        }
        config = config.with_slot_minutes(m);
    }
    let instance = generate_instance(&config)?;
    let path = resolve_out(out, &format!("{}-n{n}-seed{seed}.json", preset.name()));
    let sha256 = write_instance(&instance, &path)?;
    Ok(Generated {
        path,
        sha256,
        num_trucks: instance.num_trucks(),
        num_ports: instance.num_ports(),
    })
}

/// Runs `policy` on the instance at `path` and validates the result.
pub fn solve_report(path: &Path, policy: Policy) -> Result<RunReport, CliError> {
    let loaded = read_instance(path)?;
    let outcome = run_policy(&loaded.instance, policy)?;
    let violations = validate_schedule(&loaded.instance, &outcome.solution.schedule);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(CliError::Validation(lines.join("\n")));
    }
    let instance_ref = InstanceRef {
        path: path.to_path_buf(),
        sha256: loaded.sha256,
    };
    Ok(RunReport::new(&loaded.instance, instance_ref, &outcome))
}

pub fn solve(path: &Path, policy: Policy, reference: Option<&Path>, out: Option<&Path>) -> Result<(RunReport, PathBuf), CliError> {
    let mut report = solve_report(path, policy)?;
    if let Some(reference) = reference {
        report.set_reference(&RunReport::read(reference)?)?;
    }
    let out = resolve_out(out, &format!("{}-{}.report.json", stem(path), slug(policy)));
    report.write(&out)?;
    Ok((report, out))
}

pub struct Compared {
    pub comparison: Comparison,
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Solves each policy on one instance; a failing policy becomes an error row.
pub fn compare_policies(path: &Path, policies: &[Policy], out: Option<&Path>) -> Result<Compared, CliError> {
    if policies.len() < 2 {
        return Err(CliError::Usage("compare needs at least two policies".into()));
    }
    // Fail early on an unreadable instance rather than once per row.
    let loaded = read_instance(path)?;
    let rows = policies
        .iter()
        .map(|&p| match solve_report(path, p) {
            Ok(report) => CompareRow::ok(&report),
            Err(e) => CompareRow::failed(p.to_string(), &e),
        })
        .collect();
    let instance_ref = InstanceRef {
        path: path.to_path_buf(),
        sha256: loaded.sha256,
    };
    write_comparison(Comparison::new(instance_ref, rows), out, &format!("{}-compare", stem(path)))
}

/// Tabulates saved reports, refusing reports of different instances.
pub fn compare_reports(reports: &[PathBuf], out: Option<&Path>) -> Result<Compared, CliError> {
    if reports.len() < 2 {
        return Err(CliError::Usage("compare needs at least two reports".into()));
    }
    let reports = reports.iter().map(|p| RunReport::read(p)).collect::<Result<Vec<_>, _>>()?;
    let comparison = Comparison::from_reports(&reports)?;
    let name = format!("{}-compare", stem(&comparison.instance.path));
    write_comparison(comparison, out, &name)
}

fn write_comparison(comparison: Comparison, out: Option<&Path>, name: &str) -> Result<Compared, CliError> {
    let base = resolve_out(out, name);
    let csv = base.with_extension("csv");
    let json = base.with_extension("json");
    crate::write_file(&csv, &comparison.to_csv())?;
    let mut bytes = serde_json::to_vec_pretty(&comparison).expect("comparisons serialize");
    bytes.push(b'\n');
    crate::write_file(&json, &bytes)?;
    Ok(Compared { comparison, csv, json })
}

/// Writes the slot-level CSV of a report and returns its path and row count.
pub fn gantt(report_path: &Path, out: Option<&Path>) -> Result<(PathBuf, usize), CliError> {
    let report = RunReport::read(report_path)?;
    let rows = gantt_rows(&report).map_err(|e| CliError::format(report_path, e))?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        writer.serialize(row).expect("rows serialize");
    }
    let bytes = writer.into_inner().expect("writing to memory");
    let name = format!("{}.gantt.csv", stem(report_path).trim_end_matches(".report"));
    let out = resolve_out(out, &name);
    crate::write_file(&out, &bytes)?;
    Ok((out, rows.len()))
}
