//! Deterministic generators for standard code families: toric and planar
//! surface lattices, hypergraph products, and seeded random regular
//! matrices.
//!
//! Index maps are frozen: changing them silently breaks every stored
//! report, so they are spelled out on each constructor.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::css::CssCode;
use crate::f2::{BitMatrix, BitVector};
use crate::{Error, Result};

/// Toric code on an `L x L` square lattice with periodic boundaries.
///
/// Qubits sit on edges. Horizontal edge `h(i,j)` leaves vertex `(i,j)`
/// rightward and has index `i*L + j`; vertical edge `v(i,j)` leaves it
/// downward with index `L^2 + i*L + j`. Row `i*L + j` of the X-check matrix
/// is the star at vertex `(i,j)`; the same row of the Z-check matrix is the
/// plaquette whose top-left corner is `(i,j)`. Both check sets are
/// overcomplete by exactly one relation.
#[derive(Clone, Copy, Debug)]
pub struct Toric {
    l: usize,
}

impl Toric {
    pub fn new(l: usize) -> Result<Toric> {
        if l < 2 {
            return Err(Error::InfeasibleSpec(alloc::format!(
                "toric lattice needs L >= 2, got {l}"
            )));
        }
        Ok(Toric { l })
    }

    #[inline]
    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn n(&self) -> usize {
        2 * self.l * self.l
    }

    /// Horizontal edge from vertex `(i,j)` to `(i, j+1)`; wraps mod `L`.
    pub fn h(&self, i: usize, j: usize) -> usize {
        let l = self.l;
        (i % l) * l + (j % l)
    }

    /// Vertical edge from vertex `(i,j)` to `(i+1, j)`; wraps mod `L`.
    pub fn v(&self, i: usize, j: usize) -> usize {
        let l = self.l;
        l * l + (i % l) * l + (j % l)
    }

    /// The four edges meeting at vertex `(i,j)`.
    pub fn star_support(&self, i: usize, j: usize) -> [usize; 4] {
        let l = self.l;
        [
            self.h(i, j),
            self.h(i, j + l - 1),
            self.v(i, j),
            self.v(i + l - 1, j),
        ]
    }

    /// The four edges bounding the face with top-left corner `(i,j)`.
    pub fn plaquette_support(&self, i: usize, j: usize) -> [usize; 4] {
        [
            self.h(i, j),
            self.h(i + 1, j),
            self.v(i, j),
            self.v(i, j + 1),
        ]
    }

    /// Row index of the star at `(i,j)` in the X-check matrix.
    pub fn star_row(&self, i: usize, j: usize) -> usize {
        (i % self.l) * self.l + (j % self.l)
    }

    /// Row index of the plaquette at `(i,j)` in the Z-check matrix.
    pub fn plaquette_row(&self, i: usize, j: usize) -> usize {
        (i % self.l) * self.l + (j % self.l)
    }

    pub fn code(&self) -> CssCode {
        let l = self.l;
        let mut p_rows = Vec::with_capacity(l * l);
        let mut q_rows = Vec::with_capacity(l * l);
        for i in 0..l {
            for j in 0..l {
                p_rows.push(BitVector::from_indices(self.n(), &self.star_support(i, j)));
                q_rows.push(BitVector::from_indices(
                    self.n(),
                    &self.plaquette_support(i, j),
                ));
            }
        }
        let p = BitMatrix::from_rows(p_rows, self.n()).expect("uniform width");
        let q = BitMatrix::from_rows(q_rows, self.n()).expect("uniform width");
        CssCode::new(p, q).expect("star/plaquette overlaps are even")
    }
}

/// Surface code with smooth top and bottom boundaries (the Z-check matrix
/// has weight-1 columns exactly on the outermost horizontal edges).
///
/// Horizontal edges `h(i,j)`, `i,j in [0,L)`, index `i*L + j`, form an
/// `L x L` grid; vertical edges `v(i,j)`, `i,j in [0,L-1)`, index
/// `L^2 + i*(L-1) + j`, sit between horizontal rows `i` and `i+1`, offset
/// half a cell right. Stars live at the junction of `h(i,j)` and `h(i,j+1)`
/// (row `i*(L-1) + j`); faces pair `h(i,j)` with `h(i+1,j)` plus their side
/// verticals (row `i*L + j`). Clipped checks at the boundary have weight 3.
#[derive(Clone, Copy, Debug)]
pub struct PlanarSurface {
    l: usize,
}

impl PlanarSurface {
    pub fn new(l: usize) -> Result<PlanarSurface> {
        if l < 2 {
            return Err(Error::InfeasibleSpec(alloc::format!(
                "planar surface lattice needs L >= 2, got {l}"
            )));
        }
        Ok(PlanarSurface { l })
    }

    #[inline]
    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.l * self.l + (self.l - 1) * (self.l - 1)
    }

    pub fn h(&self, i: usize, j: usize) -> usize {
        assert!(i < self.l && j < self.l, "horizontal edge out of range");
        i * self.l + j
    }

    pub fn v(&self, i: usize, j: usize) -> usize {
        assert!(
            i < self.l - 1 && j < self.l - 1,
            "vertical edge out of range"
        );
        self.l * self.l + i * (self.l - 1) + j
    }

    /// Edges meeting at the junction between `h(i,j)` and `h(i,j+1)`,
    /// `i in [0,L)`, `j in [0,L-1)`.
    pub fn star_support(&self, i: usize, j: usize) -> Vec<usize> {
        assert!(i < self.l && j < self.l - 1, "star out of range");
        let mut s = alloc::vec![self.h(i, j), self.h(i, j + 1)];
        if i > 0 {
            s.push(self.v(i - 1, j));
        }
        if i < self.l - 1 {
            s.push(self.v(i, j));
        }
        s
    }

    /// Edges of the face between `h(i,j)` and `h(i+1,j)`, `i in [0,L-1)`,
    /// `j in [0,L)`.
    pub fn face_support(&self, i: usize, j: usize) -> Vec<usize> {
        assert!(i < self.l - 1 && j < self.l, "face out of range");
        let mut s = alloc::vec![self.h(i, j), self.h(i + 1, j)];
        if j > 0 {
            s.push(self.v(i, j - 1));
        }
        if j < self.l - 1 {
            s.push(self.v(i, j));
        }
        s
    }

    pub fn star_row(&self, i: usize, j: usize) -> usize {
        assert!(i < self.l && j < self.l - 1, "star out of range");
        i * (self.l - 1) + j
    }

    pub fn face_row(&self, i: usize, j: usize) -> usize {
        assert!(i < self.l - 1 && j < self.l, "face out of range");
        i * self.l + j
    }

    /// Sum of all face rows: supported on the top and bottom horizontal
    /// edges, i.e. the smooth boundary.
    pub fn boundary(&self) -> BitVector {
        let mut idx = Vec::with_capacity(2 * self.l);
        for j in 0..self.l {
            idx.push(self.h(0, j));
            idx.push(self.h(self.l - 1, j));
        }
        BitVector::from_indices(self.n(), &idx)
    }

    pub fn code(&self) -> CssCode {
        let l = self.l;
        let mut p_rows = Vec::new();
        for i in 0..l {
            for j in 0..l - 1 {
                p_rows.push(BitVector::from_indices(self.n(), &self.star_support(i, j)));
            }
        }
        let mut q_rows = Vec::new();
        for i in 0..l - 1 {
            for j in 0..l {
                q_rows.push(BitVector::from_indices(self.n(), &self.face_support(i, j)));
            }
        }
        let p = BitMatrix::from_rows(p_rows, self.n()).expect("uniform width");
        let q = BitMatrix::from_rows(q_rows, self.n()).expect("uniform width");
        CssCode::new(p, q).expect("star/face overlaps are even")
    }
}

/// Hypergraph product of two parity-check matrices `h1 (r1 x n1)` and
/// `h2 (r2 x n2)`.
///
/// Qubit columns: left block `(a,b) -> a*n2 + b` for `a < n1`, `b < n2`;
/// right block `(c,d) -> n1*n2 + c*r2 + d` for `c < r1`, `d < r2`. X checks
/// are `[h1 (x) I_n2 | I_r1 (x) h2^T]`, Z checks `[I_n1 (x) h2 | h1^T (x) I_r2]`;
/// the blocks make the two check sets orthogonal for any inputs.
pub fn hypergraph_product(h1: &BitMatrix, h2: &BitMatrix) -> CssCode {
    let (r1, n1) = (h1.n_rows(), h1.n_cols());
    let (r2, n2) = (h2.n_rows(), h2.n_cols());
    let n = n1 * n2 + r1 * r2;
    let left = |a: usize, b: usize| a * n2 + b;
    let right = |c: usize, d: usize| n1 * n2 + c * r2 + d;

    let mut p_rows = Vec::with_capacity(r1 * n2);
    for i in 0..r1 {
        for b in 0..n2 {
            let mut idx = Vec::new();
            for a in 0..n1 {
                if h1.row(i).get(a) {
                    idx.push(left(a, b));
                }
            }
            for d in 0..r2 {
                if h2.row(d).get(b) {
                    idx.push(right(i, d));
                }
            }
            p_rows.push(BitVector::from_indices(n, &idx));
        }
    }

    let mut q_rows = Vec::with_capacity(n1 * r2);
    for a in 0..n1 {
        for d in 0..r2 {
            let mut idx = Vec::new();
            for b in 0..n2 {
                if h2.row(d).get(b) {
                    idx.push(left(a, b));
                }
            }
            for c in 0..r1 {
                if h1.row(c).get(a) {
                    idx.push(right(c, d));
                }
            }
            q_rows.push(BitVector::from_indices(n, &idx));
        }
    }

    let p = BitMatrix::from_rows(p_rows, n).expect("uniform width");
    let q = BitMatrix::from_rows(q_rows, n).expect("uniform width");
    CssCode::new(p, q).expect("product construction is orthogonal")
}

/// Parity-check matrix of the length-`l` cycle: row `i` covers columns `i`
/// and `i+1 mod l`. Its hypergraph product with itself has toric
/// parameters.
pub fn cycle_matrix(l: usize) -> BitMatrix {
    let rows: Vec<BitVector> = (0..l)
        .map(|i| BitVector::from_indices(l, &[i, (i + 1) % l]))
        .collect();
    BitMatrix::from_rows(rows, l).expect("uniform width")
}

/// Prescription for a random biregular matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularMatrixSpec {
    pub row_weight: usize,
    pub col_weight: usize,
    pub n_rows: usize,
    pub n_cols: usize,
    pub seed: u64,
}

const MATCHING_RETRIES: usize = 1000;

/// Uniform-ish simple biregular matrix by configuration-model matching:
/// pair row stubs with a shuffled list of column stubs, rejecting any
/// attempt that produces a repeated (row, column) pair.
///
/// Deterministic for a fixed spec (seeded ChaCha stream). Fails with
/// [`Error::InfeasibleSpec`] on a weight-balance violation or when no
/// simple matching is found within the retry budget.
pub fn random_regular_matrix(spec: &RegularMatrixSpec) -> Result<BitMatrix> {
    let RegularMatrixSpec {
        row_weight,
        col_weight,
        n_rows,
        n_cols,
        seed,
    } = *spec;
    if row_weight * n_rows != col_weight * n_cols {
        return Err(Error::InfeasibleSpec(alloc::format!(
            "stub mismatch: {row_weight}*{n_rows} != {col_weight}*{n_cols}"
        )));
    }
    if row_weight > n_cols || col_weight > n_rows {
        return Err(Error::InfeasibleSpec(alloc::format!(
            "weights {row_weight},{col_weight} exceed matrix dimensions {n_rows}x{n_cols}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut col_stubs: Vec<usize> = (0..n_cols)
        .flat_map(|c| core::iter::repeat(c).take(col_weight))
        .collect();
    'attempt: for _ in 0..MATCHING_RETRIES {
        col_stubs.shuffle(&mut rng);
        let mut rows = Vec::with_capacity(n_rows);
        for r in 0..n_rows {
            let mut cols: Vec<usize> = col_stubs[r * row_weight..(r + 1) * row_weight].to_vec();
            cols.sort_unstable();
            if cols.windows(2).any(|w| w[0] == w[1]) {
                continue 'attempt;
            }
            rows.push(BitVector::from_indices(n_cols, &cols));
        }
        return BitMatrix::from_rows(rows, n_cols);
    }
    Err(Error::InfeasibleSpec(alloc::format!(
        "no simple {row_weight},{col_weight}-regular {n_rows}x{n_cols} matrix found in {MATCHING_RETRIES} attempts (seed {seed})"
    )))
}
