//! Execution strategy for the data-parallel inner loops: the closure
//! generation, orbit enumeration, the 120-term invariant sum and the
//! symmetry scans are all maps or commutative reductions, so they can run
//! on rayon or sequentially with identical results. The sequential path is
//! always compiled; the parallel one sits behind the `parallel` feature.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Strategy {
    /// Parallel when the feature is enabled, sequential otherwise.
    pub fn auto() -> Strategy {
        #[cfg(feature = "parallel")]
        {
            Strategy::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Strategy::Sequential
        }
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::auto()
    }
}

/// Ordered map over a slice.
pub fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    match strategy {
        Strategy::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
    }
}

/// Pairwise-balanced reduction. The tree shape is deterministic (split at
/// the midpoint), so for an associative, shape-insensitive operation both
/// strategies produce the identical value; for canonicalizing operations it
/// also bounds intermediate growth, unlike a left fold.
pub fn reduce_tree<T, F>(strategy: Strategy, items: Vec<T>, op: &F) -> Option<T>
where
    T: Send,
    F: Fn(T, T) -> T + Sync,
{
    fn go_seq<T, F: Fn(T, T) -> T>(mut items: Vec<T>, op: &F) -> T {
        if items.len() == 1 {
            return items.pop().unwrap();
        }
        let right = items.split_off(items.len() / 2);
        let l = go_seq(items, op);
        let r = go_seq(right, op);
        op(l, r)
    }

    #[cfg(feature = "parallel")]
    fn go_par<T: Send, F: Fn(T, T) -> T + Sync>(mut items: Vec<T>, op: &F) -> T {
        if items.len() <= 2 {
            return go_seq(items, op);
        }
        let right = items.split_off(items.len() / 2);
        let (l, r) = rayon::join(|| go_par(items, op), || go_par(right, op));
        op(l, r)
    }

    if items.is_empty() {
        return None;
    }
    Some(match strategy {
        Strategy::Sequential => go_seq(items, op),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => go_par(items, op),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_reduce_matches_fold() {
        let v: Vec<i64> = (1..=100).collect();
        let sum = reduce_tree(Strategy::Sequential, v.clone(), &|a, b| a + b).unwrap();
        assert_eq!(sum, 5050);
        assert_eq!(reduce_tree::<i64, _>(Strategy::Sequential, vec![], &|a, b| a + b), None);
        #[cfg(feature = "parallel")]
        assert_eq!(reduce_tree(Strategy::Parallel, v, &|a, b| a + b), Some(5050));
    }
}
