//! Thread-parallel execution of coset searches.

use qdefect_core::f2::search::{merge_hits, split_range, CosetProblem, SearchHit, SearchRunner};

/// Splits the enumeration range over `threads` scoped threads and merges
/// the per-range minima with the frozen deterministic tie-break, so the
/// result is byte-identical to [`qdefect_core::f2::search::Serial`] for
/// any thread count.
pub struct Threaded {
    pub threads: usize,
}

impl SearchRunner for Threaded {
    fn run(&self, problem: &CosetProblem<'_>, size: u64) -> Option<SearchHit> {
        let chunks = split_range(size, self.threads);
        if chunks.len() <= 1 {
            return problem.run_range(0, size);
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|&(lo, hi)| scope.spawn(move || problem.run_range(lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search thread never panics"))
                .fold(None, merge_hits)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdefect_core::f2::search::{min_weight_with_syndrome, ExecCfg, Serial, DEFAULT_BUDGET};
    use qdefect_core::f2::{BitMatrix, BitVector};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> BitMatrix {
        let rows = (0..rows)
            .map(|_| {
                let mut r = BitVector::zeros(cols);
                for c in 0..cols {
                    r.set(c, rng.random_bool(0.4));
                }
                r
            })
            .collect();
        BitMatrix::from_rows(rows, cols).unwrap()
    }

    #[test]
    fn threaded_matches_serial_exactly() {
        let mut rng = StdRng::seed_from_u64(11);
        for threads in [2, 3, 4, 7] {
            let runner = Threaded { threads };
            let threaded = ExecCfg {
                budget: DEFAULT_BUDGET,
                runner: &runner,
            };
            let serial = ExecCfg {
                budget: DEFAULT_BUDGET,
                runner: &Serial,
            };
            for _ in 0..10 {
                let m = random_matrix(&mut rng, 8, 14);
                let mut s = BitVector::zeros(8);
                for i in 0..8 {
                    s.set(i, rng.random_bool(0.5));
                }
                let a = min_weight_with_syndrome(&m, &s, None, &serial);
                let b = min_weight_with_syndrome(&m, &s, None, &threaded);
                match (a, b) {
                    (Ok(x), Ok(y)) => assert_eq!(x, y),
                    (Err(_), Err(_)) => {}
                    (x, y) => panic!("serial {x:?} vs threaded {y:?}"),
                }
            }
        }
    }

    #[test]
    fn single_chunk_paths_agree() {
        let runner = Threaded { threads: 4 };
        let m = BitMatrix::from_rows(vec![BitVector::from_indices(3, &[0, 1])], 3).unwrap();
        let zero = BitVector::zeros(3);
        // Range of size 2: fewer indices than threads.
        let problem = CosetProblem::new(&zero, &m);
        assert_eq!(runner.run(&problem, 2), problem.run_range(0, 2));
    }
}
