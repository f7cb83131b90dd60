use crate::graph::NodeId;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Clone, Copy, Debug)]
struct Entry {
    key: f64,
    node: NodeId,
    slot: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // BinaryHeap is a max-heap: smallest key, then lowest node id, on top.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Min-priority open set with lazy re-insertion.
///
/// A node is open iff it has a recorded key; heap entries whose key no
/// longer matches the recorded one are stale and skipped on pop.
#[derive(Debug, Default)]
pub(crate) struct OpenSet {
    heap: BinaryHeap<Entry>,
    keys: Vec<Option<f64>>,
}

impl OpenSet {
    pub fn push(&mut self, slot: usize, node: NodeId, key: f64) {
        if self.keys.len() <= slot {
            self.keys.resize(slot + 1, None);
        }
        if self.keys[slot] == Some(key) {
            return;
        }
        self.keys[slot] = Some(key);
        self.heap.push(Entry {
            key,
            node,
            slot: slot as u32,
        });
    }

    pub fn pop(&mut self) -> Option<(usize, NodeId)> {
        while let Some(e) = self.heap.pop() {
            let slot = e.slot as usize;
            if self.keys[slot] == Some(e.key) {
                self.keys[slot] = None;
                return Some((slot, e.node));
            }
        }
        None
    }

    /// Slots currently open.
    pub fn open_slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.keys
            .iter()
            .enumerate()
            .filter_map(|(s, k)| k.map(|_| s))
    }
}
