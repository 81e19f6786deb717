//! Exhaustive enumeration of labeled graphs by upper-triangle bitmask.

use core::ops::Range;

use crate::error::GraphError;
use crate::graph::{pair_count, Graph};

/// Largest order accepted by the enumerators (2^21 labeled graphs).
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// `2^(n(n-1)/2)`.
pub fn labeled_graph_count(n: usize) -> Result<u64, GraphError> {
    check_order(n)?;
    Ok(1u64 << pair_count(n))
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n > MAX_ENUMERATION_ORDER {
        Err(GraphError::Capacity {
            n,
            max: MAX_ENUMERATION_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Labeled graphs on `n` vertices in ascending mask order. Yields
/// `(mask, graph)` so callers can partition or resume by mask.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    masks: Range<u64>,
}

impl LabeledGraphs {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        let total = labeled_graph_count(n)?;
        Ok(LabeledGraphs { n, masks: 0..total })
    }

    /// A sub-range of the mask space, clipped to the valid masks.
    pub fn range(n: usize, masks: Range<u64>) -> Result<Self, GraphError> {
        let total = labeled_graph_count(n)?;
        Ok(LabeledGraphs {
            n,
            masks: masks.start.min(total)..masks.end.min(total),
        })
    }
}

impl Iterator for LabeledGraphs {
    type Item = (u64, Graph);

    fn next(&mut self) -> Option<Self::Item> {
        let mask = self.masks.next()?;
        let g = Graph::from_mask(self.n, mask).expect("mask within range");
        Some((mask, g))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.masks.size_hint()
    }
}

impl ExactSizeIterator for LabeledGraphs {}

/// Every labeled graph on `n <= 7` vertices accepted by `filter`, in
/// ascending bitmask order.
pub fn enumerate_graphs<F>(
    n: usize,
    mut filter: F,
) -> Result<impl Iterator<Item = Graph>, GraphError>
where
    F: FnMut(&Graph) -> bool,
{
    Ok(LabeledGraphs::new(n)?
        .map(|(_, g)| g)
        .filter(move |g| filter(g)))
}
