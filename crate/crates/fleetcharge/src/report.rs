//! Run reports, slot-level Gantt rows and policy comparisons.

use std::fs;
use std::path::{Path, PathBuf};

use fleetcharge_core::model::{DEMAND_TOLERANCE, STATION_CAP_TOLERANCE_KW};
use fleetcharge_core::{CostBreakdown, Instance, Power, RolloutTrace};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::policy::RunOutcome;

pub const REPORT_FORMAT: &str = "fleetcharge-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRef {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Costs {
    pub energy: f64,
    pub waiting: f64,
    pub tardiness: f64,
    pub total: f64,
}

impl From<CostBreakdown> for Costs {
    fn from(c: CostBreakdown) -> Self {
        Costs {
            energy: c.energy,
            waiting: c.waiting,
            tardiness: c.tardiness,
            total: c.total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotRow {
    pub slot: usize,
    pub power_kw: f64,
    pub energy_kwh: f64,
    pub price: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruckRow {
    pub truck: u32,
    /// One-based port number.
    pub port: usize,
    pub start: f64,
    pub finish: f64,
    pub duration: f64,
    pub delivered_kwh: f64,
    pub demand_kwh: f64,
    pub profile: Vec<SlotRow>,
}

/// How a rollout compares with its base policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaseComparison {
    pub policy: String,
    /// `None` when the base ordering has no feasible schedule.
    pub total: Option<f64>,
    pub improved: bool,
    pub reduction_percent: f64,
    pub guard_triggered: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceCandidate {
    pub truck: u32,
    pub port: usize,
    /// `None` for infeasible completions.
    pub cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStage {
    pub chosen: TraceCandidate,
    pub candidates: Vec<TraceCandidate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub instance: InstanceRef,
    pub policy: String,
    pub cost: Costs,
    /// Per-port truck sequences, ports in order.
    pub ordering: Vec<Vec<u32>>,
    pub trucks: Vec<TruckRow>,
    pub station_cap_kw: f64,
    pub slot_minutes: u32,
    pub origin: i64,
    pub solve_seconds: f64,
    pub inner_evaluations: u64,
    pub repair_iterations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseComparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_percent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStage>>,
}

fn candidate(truck: u32, port: usize, cost: f64) -> TraceCandidate {
    TraceCandidate {
        truck,
        port: port + 1,
        cost: cost.is_finite().then_some(cost),
    }
}

fn trace_stages(trace: &RolloutTrace) -> Vec<TraceStage> {
    trace
        .stages
        .iter()
        .map(|s| TraceStage {
            chosen: candidate(s.chosen.truck.0, s.chosen.port, s.chosen_cost),
            candidates: s.candidates.iter().map(|c| candidate(c.action.truck.0, c.action.port, c.cost)).collect(),
        })
        .collect()
}

impl RunReport {
    pub fn new(instance: &Instance, instance_ref: InstanceRef, outcome: &RunOutcome) -> Self {
        let timeline = instance.timeline();
        let schedule = &outcome.solution.schedule;
        let trucks = schedule
            .trucks
            .iter()
            .map(|t| TruckRow {
                truck: t.truck.0,
                port: t.port + 1,
                start: t.start_time,
                finish: t.finish_time,
                duration: t.duration(),
                delivered_kwh: t.delivered().kwh(),
                demand_kwh: instance.truck(t.truck).demand.kwh(),
                profile: t
                    .profile
                    .iter()
                    .map(|s| SlotRow {
                        slot: s.slot,
                        power_kw: Power::average_kw(s.energy, timeline.slot_minutes),
                        energy_kwh: s.energy.kwh(),
                        price: instance.slot_price(s.slot),
                    })
                    .collect(),
            })
            .collect();
        let base = outcome.trace.as_ref().map(|trace| {
            let total = trace.base_cost.total.is_finite().then_some(trace.base_cost.total);
            BaseComparison {
                policy: trace.base.to_string(),
                total,
                improved: total.is_none_or(|b| outcome.solution.cost.total < b),
                reduction_percent: trace.reduction_percent(),
                guard_triggered: trace.guard_triggered,
            }
        });
        RunReport {
            format: REPORT_FORMAT.to_string(),
            instance: instance_ref,
            policy: outcome.policy.to_string(),
            cost: outcome.solution.cost.into(),
            ordering: outcome.ordering.per_port.iter().map(|seq| seq.iter().map(|id| id.0).collect()).collect(),
            trucks,
            station_cap_kw: instance.station().station_cap.kw(),
            slot_minutes: timeline.slot_minutes,
            origin: timeline.origin,
            solve_seconds: outcome.elapsed.as_secs_f64(),
            inner_evaluations: outcome.inner_evaluations,
            repair_iterations: outcome.solution.stats.repair_iterations,
            base,
            gap_percent: None,
            trace: outcome.trace.as_ref().map(trace_stages),
        }
    }

    /// Sets the gap against another report on the same instance.
    pub fn set_reference(&mut self, reference: &RunReport) -> Result<(), CliError> {
        if reference.instance.sha256 != self.instance.sha256 {
            return Err(CliError::Usage(format!(
                "reference report was computed on a different instance ({} vs {})",
                reference.instance.sha256, self.instance.sha256
            )));
        }
        self.gap_percent = Some(gap_percent(self.cost.total, reference.cost.total));
        Ok(())
    }

    /// Checks the internal consistency a report must have.
    pub fn check(&self) -> Result<(), String> {
        if self.format != REPORT_FORMAT {
            return Err(format!("unsupported report format `{}`", self.format));
        }
        let sum = self.cost.energy + self.cost.waiting + self.cost.tardiness;
        if (sum - self.cost.total).abs() > 1e-9 * self.cost.total.abs().max(1.0) {
            return Err(format!("total {} differs from the sum of its parts {sum}", self.cost.total));
        }
        let tolerance = DEMAND_TOLERANCE.kwh() + 1e-9;
        for t in &self.trucks {
            if (t.delivered_kwh - t.demand_kwh).abs() > tolerance {
                return Err(format!("truck {} received {} of {} kWh", t.truck, t.delivered_kwh, t.demand_kwh));
            }
        }
        Ok(())
    }

    pub fn read(path: &Path) -> Result<RunReport, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        let report: RunReport = serde_json::from_slice(&bytes).map_err(|e| CliError::format(path, e))?;
        report.check().map_err(|e| CliError::format(path, e))?;
        Ok(report)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("reports serialize");
        bytes.push(b'\n');
        crate::write_file(path, &bytes)
    }
}

/// Percentage by which `value` exceeds `reference`.
pub fn gap_percent(value: f64, reference: f64) -> f64 {
    if reference.abs() > 0.0 {
        100.0 * (value - reference) / reference.abs()
    } else {
        0.0
    }
}

/// One non-empty slot of one truck.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GanttRow {
    pub truck: u32,
    pub port: usize,
    pub slot: usize,
    pub slot_start: i64,
    pub power_kw: f64,
    pub price: f64,
    /// Station-wide power in this slot.
    pub aggregate_kw: f64,
}

/// Slot-level rows of a report, by port, then start, then slot.
pub fn gantt_rows(report: &RunReport) -> Result<Vec<GanttRow>, String> {
    let mut aggregate = std::collections::BTreeMap::<usize, f64>::new();
    for t in &report.trucks {
        for s in &t.profile {
            *aggregate.entry(s.slot).or_default() += s.power_kw;
        }
    }
    if let Some((slot, kw)) = aggregate.iter().find(|(_, &kw)| kw > report.station_cap_kw + STATION_CAP_TOLERANCE_KW) {
        return Err(format!("slot {slot} draws {kw} kW, above the station cap of {} kW", report.station_cap_kw));
    }
    let mut trucks: Vec<&TruckRow> = report.trucks.iter().collect();
    trucks.sort_by(|a, b| a.port.cmp(&b.port).then(a.start.total_cmp(&b.start)).then(a.truck.cmp(&b.truck)));
    Ok(trucks
        .into_iter()
        .flat_map(|t| {
            t.profile.iter().filter(|s| s.energy_kwh > 0.0).map(|s| GanttRow {
                truck: t.truck,
                port: t.port,
                slot: s.slot,
                slot_start: report.origin + s.slot as i64 * i64::from(report.slot_minutes),
                power_kw: s.power_kw,
                price: s.price,
                aggregate_kw: aggregate[&s.slot],
            })
        })
        .collect())
}

/// One line of a comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub policy: String,
    pub status: String,
    pub total: Option<f64>,
    pub energy: Option<f64>,
    pub waiting: Option<f64>,
    pub tardiness: Option<f64>,
    pub time_s: Option<f64>,
    pub evaluations: Option<u64>,
    /// Excess over the cheapest successful row, in percent.
    pub gap_percent: Option<f64>,
    pub error: Option<String>,
}

impl CompareRow {
    pub fn ok(report: &RunReport) -> Self {
        CompareRow {
            policy: report.policy.clone(),
            status: "ok".into(),
            total: Some(report.cost.total),
            energy: Some(report.cost.energy),
            waiting: Some(report.cost.waiting),
            tardiness: Some(report.cost.tardiness),
            time_s: Some(report.solve_seconds),
            evaluations: Some(report.inner_evaluations),
            gap_percent: None,
            error: None,
        }
    }

    pub fn failed(policy: String, error: &CliError) -> Self {
        CompareRow {
            policy,
            status: "error".into(),
            total: None,
            energy: None,
            waiting: None,
            tardiness: None,
            time_s: None,
            evaluations: None,
            gap_percent: None,
            error: Some(error.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub instance: InstanceRef,
    pub rows: Vec<CompareRow>,
}

impl Comparison {
    pub fn new(instance: InstanceRef, mut rows: Vec<CompareRow>) -> Self {
        let best = rows.iter().filter_map(|r| r.total).fold(f64::INFINITY, f64::min);
        for row in &mut rows {
            row.gap_percent = row.total.map(|t| gap_percent(t, best));
        }
        Comparison { instance, rows }
    }

    /// Rows from saved reports, which must all name the same instance.
    pub fn from_reports(reports: &[RunReport]) -> Result<Self, CliError> {
        let first = reports.first().ok_or_else(|| CliError::Usage("no reports given".into()))?;
        if let Some(other) = reports.iter().find(|r| r.instance.sha256 != first.instance.sha256) {
            return Err(CliError::Validation(format!(
                "reports come from different instances: {} ({}) and {} ({})",
                first.instance.path.display(),
                first.instance.sha256,
                other.instance.path.display(),
                other.instance.sha256
            )));
        }
        Ok(Comparison::new(first.instance.clone(), reports.iter().map(CompareRow::ok).collect()))
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            writer.serialize(row).expect("rows serialize");
        }
        writer.into_inner().expect("writing to memory")
    }

    /// Human-readable table, costs rounded to cents.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<14} {:>12} {:>12} {:>10} {:>10} {:>9} {:>8} {:>8}\n",
            "policy", "total", "energy", "waiting", "tardiness", "time_s", "evals", "gap_%"
        );
        for r in &self.rows {
            match (r.total, r.energy, r.waiting, r.tardiness) {
                (Some(total), Some(energy), Some(waiting), Some(tardiness)) => out.push_str(&format!(
                    "{:<14} {:>12.2} {:>12.2} {:>10.2} {:>10.2} {:>9.3} {:>8} {:>8.2}\n",
                    r.policy,
                    total,
                    energy,
                    waiting,
                    tardiness,
                    r.time_s.unwrap_or(0.0),
                    r.evaluations.unwrap_or(0),
                    r.gap_percent.unwrap_or(0.0)
                )),
                _ => out.push_str(&format!("{:<14} error: {}\n", r.policy, r.error.as_deref().unwrap_or("unknown"))),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(total: f64, hash: &str) -> RunReport {
        RunReport {
            format: REPORT_FORMAT.into(),
            instance: InstanceRef {
                path: "i.json".into(),
                sha256: hash.into(),
            },
            policy: "fcfs".into(),
            cost: Costs {
                energy: total,
                waiting: 0.0,
                tardiness: 0.0,
                total,
            },
            ordering: vec![vec![1]],
            trucks: vec![TruckRow {
                truck: 1,
                port: 1,
                start: 0.0,
                finish: 10.0,
                duration: 10.0,
                delivered_kwh: 50.0,
                demand_kwh: 50.0,
                profile: vec![SlotRow {
                    slot: 0,
                    power_kw: 300.0,
                    energy_kwh: 50.0,
                    price: 0.1,
                }],
            }],
            station_cap_kw: 1000.0,
            slot_minutes: 10,
            origin: 0,
            solve_seconds: 0.0,
            inner_evaluations: 1,
            repair_iterations: 0,
            base: None,
            gap_percent: None,
            trace: None,
        }
    }

    #[test]
    fn gaps_are_relative_to_the_best_row() {
        let c = Comparison::from_reports(&[report(110.0, "a"), report(100.0, "a")]).unwrap();
        assert!((c.rows[0].gap_percent.unwrap() - 10.0).abs() < 1e-9);
        assert_eq!(c.rows[1].gap_percent, Some(0.0));
    }

    #[test]
    fn mixed_instances_are_refused() {
        let err = Comparison::from_reports(&[report(1.0, "a"), report(1.0, "b")]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn csv_has_fixed_columns() {
        let c = Comparison::from_reports(&[report(12.5, "a")]).unwrap();
        let text = String::from_utf8(c.to_csv()).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("policy,status,total,energy,waiting,tardiness,time_s,evaluations,gap_percent,error")
        );
        assert_eq!(lines.next(), Some("fcfs,ok,12.5,12.5,0.0,0.0,0.0,1,0.0,"));
    }

    #[test]
    fn gantt_flags_cap_violations() {
        let mut r = report(1.0, "a");
        assert_eq!(gantt_rows(&r).unwrap().len(), 1);
        r.station_cap_kw = 200.0;
        assert!(gantt_rows(&r).is_err());
    }

    #[test]
    fn check_catches_inconsistent_totals() {
        let mut r = report(1.0, "a");
        assert!(r.check().is_ok());
        r.cost.total = 2.0;
        assert!(r.check().is_err());
        let mut r = report(1.0, "a");
        r.trucks[0].delivered_kwh = 49.0;
        assert!(r.check().is_err());
    }
}
