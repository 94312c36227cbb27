use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::boxes::BoxNd;

use super::SelectionRule;

/// A box awaiting branching, with its upper bound cached at insertion.
#[derive(Debug, Clone, PartialEq)]
pub struct QueueEntry {
    pub region: BoxNd,
    pub bound: f64,
    pub id: u64,
}

#[derive(Debug)]
struct Ranked {
    entry: QueueEntry,
    axis: usize,
    seq: u64,
}

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    // max-heap: larger bound first, then older, then lower split axis, then FIFO
    fn cmp(&self, other: &Self) -> Ordering {
        self.entry
            .bound
            .total_cmp(&other.entry.bound)
            .then_with(|| {
                other
                    .entry
                    .region
                    .birth_iteration()
                    .cmp(&self.entry.region.birth_iteration())
            })
            .then_with(|| other.axis.cmp(&self.axis))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

#[derive(Debug)]
enum Store {
    Best(BinaryHeap<Ranked>),
    Oldest(VecDeque<QueueEntry>),
}

/// The collection of undecided boxes.
///
/// Best-first pops a box with the largest bound; oldest-first pops in
/// creation order. Since children are born at the current iteration and
/// iterations increase, FIFO order is order of birth.
#[derive(Debug)]
pub struct RegionQueue {
    store: Store,
    seq: u64,
}

impl RegionQueue {
    pub fn new(rule: SelectionRule) -> Self {
        let store = match rule {
            SelectionRule::BestFirst => Store::Best(BinaryHeap::new()),
            SelectionRule::OldestFirst => Store::Oldest(VecDeque::new()),
        };
        Self { store, seq: 0 }
    }

    pub fn push(&mut self, entry: QueueEntry) {
        debug_assert!(!entry.bound.is_nan());
        match &mut self.store {
            Store::Best(heap) => {
                let axis = entry.region.longest_axis();
                heap.push(Ranked {
                    entry,
                    axis,
                    seq: self.seq,
                });
            }
            Store::Oldest(fifo) => fifo.push_back(entry),
        }
        self.seq += 1;
    }

    pub fn pop(&mut self) -> Option<QueueEntry> {
        match &mut self.store {
            Store::Best(heap) => heap.pop().map(|r| r.entry),
            Store::Oldest(fifo) => fifo.pop_front(),
        }
    }

    /// Largest cached bound. O(1) for best-first, a scan for oldest-first.
    pub fn max_bound(&self) -> Option<f64> {
        match &self.store {
            Store::Best(heap) => heap.peek().map(|r| r.entry.bound),
            Store::Oldest(fifo) => fifo.iter().map(|e| e.bound).reduce(f64::max),
        }
    }

    pub fn len(&self) -> usize {
        match &self.store {
            Store::Best(heap) => heap.len(),
            Store::Oldest(fifo) => fifo.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
