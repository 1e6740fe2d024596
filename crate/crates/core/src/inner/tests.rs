use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::model::instance::fixtures::{flat_instance, table_tariff};
use crate::model::{validate_schedule, StationSpec, Tariff, TariffSegment, Timeline, TruckId, TruckSpec};
use crate::units::{Energy, Power};

fn truck(id: u32, arrival: i64, demand_kwh: f64, deadline: f64) -> TruckSpec {
    TruckSpec {
        id: TruckId(id),
        arrival,
        initial_energy: Energy::ZERO,
        demand: Energy::from_kwh(demand_kwh),
        capacity: Energy::from_kwh(468.0),
        deadline,
        power_cap: Power::from_kw(350.0),
        waiting_rate: 2.0,
        tardiness_rate: 10.0,
    }
}

fn instance(trucks: Vec<TruckSpec>, ports: &[f64], cap_kw: f64, tariff: Tariff, timeline: Timeline) -> Instance {
    let station = StationSpec::new(ports.iter().map(|p| Power::from_kw(*p)).collect(), Power::from_kw(cap_kw)).unwrap();
    Instance::new(trucks, station, tariff, timeline).unwrap()
}

fn one_port(ids: &[u32]) -> Ordering {
    Ordering::new(vec![ids.iter().map(|&i| TruckId(i)).collect()])
}

fn assert_clean(inst: &Instance, sol: &InnerSolution) {
    let v = validate_schedule(inst, &sol.schedule);
    assert!(v.is_empty(), "violations: {v:?}");
    assert_eq!(sol.cost, evaluate_cost(inst, &sol.schedule));
}

#[test]
fn single_truck_charges_immediately_at_full_power() {
    let inst = flat_instance(1, &[350.0], 1000.0, 48);
    let sol = inner_solve(&inst, &one_port(&[1])).unwrap();
    let entry = &sol.schedule.trucks[0];
    assert_eq!(entry.start_time, 0.0);
    assert_eq!(entry.finish_time, 30.0);
    assert_eq!(sol.cost.energy, 0.1 * 175.0);
    assert_eq!(sol.cost.waiting, 0.0);
    assert_eq!(sol.cost.tardiness, 0.0);
    assert_clean(&inst, &sol);
}

#[test]
fn second_truck_on_a_port_waits_for_the_first() {
    let inst = flat_instance(2, &[350.0], 1000.0, 48);
    let sol = inner_solve(&inst, &one_port(&[1, 2])).unwrap();
    let first = &sol.schedule.trucks[0];
    let second = &sol.schedule.trucks[1];
    assert_eq!(second.start_time, first.finish_time);
    assert_eq!(sol.cost.waiting, 2.0 * first.duration());
    assert_clean(&inst, &sol);
}

#[test]
fn partial_last_slot_gives_fractional_finish() {
    // 234 kWh at 300 kW is 46.8 minutes.
    let inst = instance(
        vec![truck(1, 0, 234.0, 100.0)],
        &[300.0],
        1000.0,
        Tariff::flat(0.1).unwrap(),
        Timeline::new(0, 5, 48).unwrap(),
    );
    let sol = inner_solve(&inst, &one_port(&[1])).unwrap();
    assert!((sol.schedule.trucks[0].finish_time - 46.8).abs() < 1e-9);
    assert_clean(&inst, &sol);
}

#[test]
fn arrival_inside_a_slot_waits_for_the_boundary() {
    let inst = instance(
        vec![truck(1, 7, 100.0, 200.0)],
        &[350.0],
        1000.0,
        Tariff::flat(0.1).unwrap(),
        Timeline::new(0, 5, 48).unwrap(),
    );
    let sol = inner_solve(&inst, &one_port(&[1])).unwrap();
    assert_eq!(sol.schedule.trucks[0].start_time, 10.0);
    assert_eq!(sol.cost.waiting, 6.0);
}

#[test]
fn binding_station_cap_triggers_repair() {
    // Two ports of 350 kW behind a 500 kW station.
    let inst = instance(
        vec![truck(1, 0, 175.0, 60.0), truck(2, 0, 175.0, 60.0)],
        &[350.0, 350.0],
        500.0,
        Tariff::flat(0.1).unwrap(),
        Timeline::new(0, 5, 48).unwrap(),
    );
    let ordering = Ordering::new(vec![vec![TruckId(1)], vec![TruckId(2)]]);
    let sol = inner_solve(&inst, &ordering).unwrap();
    assert!(sol.stats.repair_iterations > 0);
    assert!(sol.stats.flow_augmentations > 0);
    assert_clean(&inst, &sol);
    // 350 kWh through 500 kW needs at least 42 minutes.
    let last = sol.schedule.trucks.iter().map(|t| t.finish_time).fold(0.0, f64::max);
    assert!(last >= 42.0);
}

#[test]
fn horizon_too_short() {
    let inst = flat_instance(2, &[350.0], 1000.0, 8);
    assert!(matches!(
        inner_solve(&inst, &one_port(&[1, 2])),
        Err(SolveError::HorizonExceeded { truck: TruckId(2), .. })
    ));
}

#[test]
fn station_cannot_deliver_total_demand() {
    let inst = instance(
        vec![truck(1, 0, 175.0, 60.0), truck(2, 0, 175.0, 60.0)],
        &[350.0, 350.0],
        100.0,
        Tariff::flat(0.1).unwrap(),
        Timeline::new(0, 5, 24).unwrap(),
    );
    let ordering = Ordering::new(vec![vec![TruckId(1)], vec![TruckId(2)]]);
    assert!(matches!(inner_solve(&inst, &ordering), Err(SolveError::InfeasibleDemand { .. })));
}

#[test]
fn rejects_invalid_ordering() {
    let inst = flat_instance(2, &[350.0], 1000.0, 48);
    assert!(matches!(inner_solve(&inst, &one_port(&[1])), Err(SolveError::Model(_))));
}

#[test]
fn deterministic() {
    let inst = instance(
        (1..=4).map(|i| truck(i, 470 + 5 * i as i64, 150.0 + 20.0 * i as f64, 560.0)).collect(),
        &[300.0, 350.0],
        600.0,
        table_tariff(),
        Timeline::new(0, 5, 288).unwrap(),
    );
    let ordering = Ordering::new(vec![vec![TruckId(3), TruckId(1)], vec![TruckId(2), TruckId(4)]]);
    let a = inner_solve(&inst, &ordering).unwrap();
    let b = inner_solve(&inst, &ordering).unwrap();
    assert_eq!(a, b);
    assert_clean(&inst, &a);
}

#[test]
fn energy_goes_to_the_cheaper_slot_of_the_window() {
    // Price drops at minute 30; 100 kWh at 300 kW needs two 15-minute slots.
    let tariff = Tariff::new(
        vec![TariffSegment { start: 0, price: 0.2 }, TariffSegment { start: 30, price: 0.1 }],
        None,
    )
    .unwrap();
    let mut t = truck(1, 15, 100.0, 200.0);
    t.waiting_rate = 2.0;
    let inst = instance(vec![t], &[300.0], 1000.0, tariff, Timeline::new(0, 15, 8).unwrap());
    let sol = inner_solve(&inst, &one_port(&[1])).unwrap();
    // Starting at 15 keeps waiting at zero; the full 75 kWh slot is the cheap one.
    let entry = &sol.schedule.trucks[0];
    assert_eq!(entry.start_time, 15.0);
    assert_eq!(entry.profile.len(), 2);
    assert!((sol.cost.energy - (25.0 * 0.2 + 75.0 * 0.1)).abs() < 1e-9);
    let brute = inner_bruteforce(&inst, &one_port(&[1])).unwrap();
    assert!((brute.cost.total - sol.cost.total).abs() < 1e-9);
}

#[test]
fn paper_rates_start_every_truck_at_its_earliest_slot() {
    let inst = instance(
        (1..=5).map(|i| truck(i, 470 + 3 * i as i64, 120.0 + 30.0 * i as f64, 900.0)).collect(),
        &[350.0, 300.0],
        5000.0,
        table_tariff(),
        Timeline::new(0, 5, 288).unwrap(),
    );
    let ordering = Ordering::new(vec![vec![TruckId(1), TruckId(3), TruckId(5)], vec![TruckId(2), TruckId(4)]]);
    let sol = inner_solve(&inst, &ordering).unwrap();
    let timeline = inst.timeline();
    for seq in &ordering.per_port {
        let mut free_from = 0.0f64;
        for id in seq {
            let entry = &sol.schedule.trucks[id.index()];
            let earliest = timeline.slot_start(timeline.first_slot_from((inst.truck(*id).arrival as f64).max(free_from)));
            assert_eq!(entry.start_time, earliest as f64, "truck {id}");
            free_from = entry.finish_time;
        }
    }
}

// --- brute-force oracle ---

#[test]
fn bruteforce_fills_cheapest_slots() {
    let tariff = Tariff::new(
        (0..4).map(|k| TariffSegment { start: 15 * k, price: 0.1 + 0.05 * k as f64 }).collect(),
        None,
    )
    .unwrap();
    let mut t = truck(1, 0, 150.0, 0.0);
    t.waiting_rate = 0.0;
    t.tardiness_rate = 0.0;
    let inst = instance(vec![t], &[300.0], 1000.0, tariff, Timeline::new(0, 15, 4).unwrap());
    let sol = inner_bruteforce(&inst, &one_port(&[1])).unwrap();
    let slots: Vec<usize> = sol.schedule.trucks[0].profile.iter().map(|s| s.slot).collect();
    assert_eq!(slots, vec![0, 1]);
    assert!((sol.cost.energy - (75.0 * 0.1 + 75.0 * 0.15)).abs() < 1e-12);
}

#[test]
fn bruteforce_starts_sequential_trucks_early_under_flat_price() {
    let inst = instance(
        vec![truck(1, 0, 100.0, 100.0), truck(2, 0, 100.0, 100.0)],
        &[300.0],
        1000.0,
        Tariff::flat(0.1).unwrap(),
        Timeline::new(0, 10, 8).unwrap(),
    );
    let sol = inner_bruteforce(&inst, &one_port(&[1, 2])).unwrap();
    assert_eq!(sol.schedule.trucks[0].start_time, 0.0);
    assert_eq!(sol.schedule.trucks[1].start_time, 20.0);
    assert_clean(&inst, &sol);
}

#[test]
fn bruteforce_size_guard() {
    let inst = flat_instance(1, &[350.0], 1000.0, 17);
    assert!(matches!(
        inner_bruteforce(&inst, &one_port(&[1])),
        Err(SolveError::SizeGuard { what: "slots", .. })
    ));
    let inst = flat_instance(5, &[350.0], 1000.0, 16);
    assert!(matches!(
        inner_bruteforce(&inst, &one_port(&[1, 2, 3, 4, 5])),
        Err(SolveError::SizeGuard { what: "trucks", .. })
    ));
}

/// Port powers, station cap and the truck sequences of two ports.
type Case<'a> = (&'a [f64], f64, &'a [u32], &'a [u32]);

#[test]
fn bruteforce_never_loses_to_the_heuristic() {
    let tariff = table_tariff();
    let cases: [Case; 3] = [
        (&[300.0, 350.0], 1000.0, &[1, 3], &[2]),
        (&[350.0, 350.0], 400.0, &[2], &[1, 3]),
        (&[300.0], 300.0, &[3, 1, 2], &[]),
    ];
    for (ports, cap, a, b) in cases {
        let trucks = vec![truck(1, 480, 80.0, 540.0), truck(2, 490, 140.0, 530.0), truck(3, 485, 60.0, 520.0)];
        let inst = instance(trucks, ports, cap, tariff.clone(), Timeline::new(480, 15, 12).unwrap());
        let mut per_port = vec![a.iter().map(|&i| TruckId(i)).collect::<Vec<_>>()];
        if ports.len() == 2 {
            per_port.push(b.iter().map(|&i| TruckId(i)).collect());
        }
        let ordering = Ordering::new(per_port);
        let heuristic = inner_solve(&inst, &ordering).unwrap();
        let brute = inner_bruteforce(&inst, &ordering).unwrap();
        assert_clean(&inst, &heuristic);
        assert_clean(&inst, &brute);
        assert!(brute.cost.total <= heuristic.cost.total + 1e-9);
    }
}

#[test]
fn binding_cap_is_planned_around_instead_of_only_repaired() {
    let spec = |id: u32, arrival: i64, demand_kwh: f64| TruckSpec {
        deadline: arrival as f64 + 1.5 * demand_kwh / 350.0 * 60.0,
        ..truck(id, arrival, demand_kwh, 0.0)
    };
    let trucks = vec![spec(1, 511, 68.511), spec(2, 506, 103.694), spec(3, 496, 72.559)];
    let inst = instance(
        trucks,
        &[300.0, 350.0],
        400.0,
        crate::scenario::default_tariff(),
        Timeline::new(480, 15, 12).unwrap(),
    );
    let ordering = Ordering::new(vec![vec![TruckId(3), TruckId(1)], vec![TruckId(2)]]);
    let sol = inner_solve(&inst, &ordering).unwrap();
    let brute = inner_bruteforce(&inst, &ordering).unwrap();
    assert!(sol.stats.repair_iterations > 0);
    assert!((sol.cost.total - brute.cost.total).abs() < 1e-9, "{} vs {}", sol.cost.total, brute.cost.total);
    assert_clean(&inst, &sol);
}
