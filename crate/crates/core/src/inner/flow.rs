//! Min-cost flow by successive shortest augmenting paths.
//!
//! Dijkstra on reduced costs with Johnson potentials; every arc cost must be
//! non-negative when the network is built, so the initial potentials are zero.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    residual: u64,
    cost: i64,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct MinCostFlow {
    adjacency: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct FlowOutcome {
    pub flow: u64,
    pub augmentations: u64,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            adjacency: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    /// Adds `from -> to` and returns its id. `cost` must be non-negative.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: u64, cost: i64) -> usize {
        debug_assert!(cost >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            residual: capacity,
            cost,
        });
        self.arcs.push(Arc {
            to: from,
            residual: 0,
            cost: -cost,
        });
        self.adjacency[from].push(id);
        self.adjacency[to].push(id + 1);
        id
    }

    /// Flow currently carried by arc `id`.
    #[inline]
    pub fn flow_on(&self, id: usize) -> u64 {
        self.arcs[id ^ 1].residual
    }

    /// Pushes as much flow as possible from `source` to `sink`, cheapest paths first.
    pub fn run(&mut self, source: usize, sink: usize) -> FlowOutcome {
        let n = self.adjacency.len();
        let mut potential = vec![0i64; n];
        let mut dist = vec![i64::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        let mut outcome = FlowOutcome {
            flow: 0,
            augmentations: 0,
        };

        loop {
            dist.fill(i64::MAX);
            via.fill(usize::MAX);
            dist[source] = 0;
            heap.push(Reverse((0i64, source)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &id in &self.adjacency[u] {
                    let arc = &self.arcs[id];
                    if arc.residual == 0 {
                        continue;
                    }
                    let next = d + arc.cost + potential[u] - potential[arc.to];
                    if next < dist[arc.to] {
                        dist[arc.to] = next;
                        via[arc.to] = id;
                        heap.push(Reverse((next, arc.to)));
                    }
                }
            }
            if dist[sink] == i64::MAX {
                return outcome;
            }
            for v in 0..n {
                if dist[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }

            let mut bottleneck = u64::MAX;
            let mut v = sink;
            while v != source {
                let id = via[v];
                bottleneck = bottleneck.min(self.arcs[id].residual);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let id = via[v];
                self.arcs[id].residual -= bottleneck;
                self.arcs[id ^ 1].residual += bottleneck;
                v = self.arcs[id ^ 1].to;
            }
            outcome.flow += bottleneck;
            outcome.augmentations += 1;
        }
    }

    /// Bellman-Ford search for a negative-cost cycle in the residual network.
    /// At a min-cost flow none exists.
    #[cfg(test)]
    pub fn has_negative_cycle(&self) -> bool {
        let n = self.adjacency.len();
        let mut dist = vec![0i64; n];
        for round in 0..=n {
            let mut changed = false;
            for u in 0..n {
                for &id in &self.adjacency[u] {
                    let arc = &self.arcs[id];
                    if arc.residual > 0 && dist[u] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[u] + arc.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                return false;
            }
            if round == n {
                return true;
            }
        }
        false
    }
}
