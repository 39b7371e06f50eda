//! Execution strategy for the data-parallel inner loops.
//!
//! Every hot loop in the crate (table tabulation, matrix construction,
//! essential-variable scans, rule sweeps) goes through the helpers here, so a
//! single [`Exec`] value decides whether work is spread over the rayon pool or
//! run on the calling thread. Results never depend on the choice.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Words handed to one worker at a time when filling packed buffers.
#[cfg(feature = "parallel")]
const WORD_CHUNK: usize = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

#[allow(clippy::derivable_impls)]
impl Default for Exec {
    /// Parallel when compiled in.
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Exec::Parallel;
        #[cfg(not(feature = "parallel"))]
        Exec::Sequential
    }
}

impl Exec {
    /// Fills `out[i] = f(i)`.
    pub fn fill<T, F>(self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        match self {
            Exec::Sequential => {
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = f(i);
                }
            }
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                out.par_chunks_mut(WORD_CHUNK)
                    .enumerate()
                    .for_each(|(chunk, slots)| {
                        let base = chunk * WORD_CHUNK;
                        for (i, slot) in slots.iter_mut().enumerate() {
                            *slot = f(base + i);
                        }
                    });
            }
        }
    }

    /// Maps `f` over `items`, keeping input order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..len`, keeping index order.
    pub fn map_range<U, F>(self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
        }
    }

    /// True if `pred(i)` holds for some `i` in `0..len`.
    pub fn any<F>(self, len: usize, pred: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).any(pred),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().any(pred),
        }
    }
}
