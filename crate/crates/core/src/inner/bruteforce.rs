use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::SolveError;
use crate::inner::allocate::allocate;
use crate::inner::window::{truck_contexts, TruckCtx, Window};
use crate::inner::{assemble, check_total_demand, InnerSolution, InnerStats};
use crate::model::{Instance, Ordering, TruckId};

pub const BRUTEFORCE_MAX_TRUCKS: usize = 4;
pub const BRUTEFORCE_MAX_SLOTS: usize = 16;

/// Best schedule over every combination of slot-aligned contiguous windows
/// that respects arrivals and port order, each priced with the same
/// allocation step as [`crate::inner_solve`].
pub fn inner_bruteforce(instance: &Instance, ordering: &Ordering) -> Result<InnerSolution, SolveError> {
    if instance.num_trucks() > BRUTEFORCE_MAX_TRUCKS {
        return Err(SolveError::SizeGuard {
            what: "trucks",
            got: instance.num_trucks(),
            limit: BRUTEFORCE_MAX_TRUCKS,
            detail: String::from("window enumeration grows like slots^(2*trucks)"),
        });
    }
    if instance.num_slots() > BRUTEFORCE_MAX_SLOTS {
        return Err(SolveError::SizeGuard {
            what: "slots",
            got: instance.num_slots(),
            limit: BRUTEFORCE_MAX_SLOTS,
            detail: String::from("window enumeration grows like slots^(2*trucks)"),
        });
    }
    ordering.validate(instance.num_trucks(), instance.num_ports())?;
    check_total_demand(instance)?;

    let ctxs = truck_contexts(instance, ordering);
    // Port-major visiting order, each truck paired with its same-port predecessor.
    let mut order: Vec<(TruckId, Option<TruckId>)> = Vec::new();
    for seq in &ordering.per_port {
        for (k, &id) in seq.iter().enumerate() {
            order.push((id, k.checked_sub(1).map(|p| seq[p])));
        }
    }

    let mut search = Search {
        instance,
        ordering,
        ctxs: &ctxs,
        order: &order,
        windows: vec![Window { start: 0, end: 0 }; ctxs.len()],
        stats: InnerStats::default(),
        best: None,
    };
    search.descend(0);

    let Search { best, stats, .. } = search;
    let mut best = best.ok_or(SolveError::HorizonExceeded {
        truck: order.first().map_or(TruckId(1), |o| o.0),
        num_slots: instance.num_slots(),
    })?;
    best.stats = stats;
    Ok(best)
}

struct Search<'a> {
    instance: &'a Instance,
    ordering: &'a Ordering,
    ctxs: &'a [TruckCtx],
    order: &'a [(TruckId, Option<TruckId>)],
    windows: Vec<Window>,
    stats: InnerStats,
    best: Option<InnerSolution>,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.evaluate();
            return;
        }
        let (id, predecessor) = self.order[depth];
        let ctx = self.ctxs[id.index()];
        let horizon = self.instance.num_slots();
        let earliest = predecessor.map_or(ctx.arrival_slot, |p| ctx.arrival_slot.max(self.windows[p.index()].end));
        for start in earliest..horizon {
            for end in start + ctx.nominal_slots..=horizon {
                self.windows[id.index()] = Window { start, end };
                self.descend(depth + 1);
            }
        }
    }

    fn evaluate(&mut self) {
        self.stats.timing_states += 1;
        let allocation = allocate(self.instance, self.ctxs, &self.windows, &mut self.stats);
        if !allocation.complete {
            return;
        }
        let candidate = assemble(
            self.instance,
            self.ordering,
            self.ctxs,
            allocation.profiles,
            InnerStats::default(),
        );
        if self.best.as_ref().is_none_or(|b| candidate.cost.total < b.cost.total) {
            self.best = Some(candidate);
        }
    }
}
