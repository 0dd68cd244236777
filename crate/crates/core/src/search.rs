//! Node/time budgets shared by the exhaustive searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Worker threads for searches that split subtrees; 1 = sequential.
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: None,
            max_time: None,
            threads: 1,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            ..Budget::default()
        }
    }

    pub fn with_threads(self, threads: usize) -> Budget {
        Budget {
            threads: threads.max(1),
            ..self
        }
    }
}

/// Thread-safe node counter enforcing a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Meter {
        Meter {
            budget,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the budget is gone.
    pub(crate) fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|max| count > max);
        // clock reads are comparatively slow, sample them
        let over_time =
            count.is_multiple_of(1024) && self.budget.max_time.is_some_and(|max| self.start.elapsed() > max);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }

    pub(crate) fn threads(&self) -> usize {
        self.budget.threads.max(1)
    }
}

/// Runs `f` on a dedicated pool with the requested thread count.
pub(crate) fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
