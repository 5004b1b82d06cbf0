//! Bipartite Tanner graph of a check matrix and BFS ball geometry.
//!
//! Check nodes are row indices, value nodes are column indices; an edge
//! joins row `u` and column `v` iff the matrix entry is set. Balls around a
//! check node alternate parity: even-distance nodes are checks,
//! odd-distance nodes are values.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;

use crate::f2::{BitMatrix, Region};
use crate::{Error, Result};

/// A node of the bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    /// Row index of the underlying matrix.
    Check(usize),
    /// Column index of the underlying matrix.
    Value(usize),
}

/// Immutable adjacency structure; queries are read-only.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    /// row -> sorted columns in its support
    row_adj: Vec<Vec<usize>>,
    /// column -> sorted rows covering it
    col_adj: Vec<Vec<usize>>,
}

/// All nodes within a fixed graph distance of a center.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: Node,
    pub radius: usize,
    /// Check (row) members, ascending.
    pub checks: Vec<usize>,
    /// Value (column) members, ascending.
    pub values: Vec<usize>,
}

impl Ball {
    /// The value-node members as a qubit region.
    pub fn value_region(&self) -> Region {
        Region::from_indices(self.values.iter().copied())
    }

    pub fn contains(&self, node: Node) -> bool {
        match node {
            Node::Check(r) => self.checks.binary_search(&r).is_ok(),
            Node::Value(c) => self.values.binary_search(&c).is_ok(),
        }
    }
}

/// Per-node BFS distances from a fixed source; `None` for other components.
#[derive(Clone, Debug)]
pub struct DistanceMap {
    pub to_checks: Vec<Option<usize>>,
    pub to_values: Vec<Option<usize>>,
}

impl DistanceMap {
    pub fn get(&self, node: Node) -> Option<usize> {
        match node {
            Node::Check(r) => self.to_checks[r],
            Node::Value(c) => self.to_values[c],
        }
    }
}

impl TannerGraph {
    pub fn new(m: &BitMatrix) -> TannerGraph {
        let row_adj: Vec<Vec<usize>> = m.rows().iter().map(|r| r.support()).collect();
        let mut col_adj = alloc::vec![Vec::new(); m.n_cols()];
        for (r, cols) in row_adj.iter().enumerate() {
            for &c in cols {
                col_adj[c].push(r);
            }
        }
        TannerGraph { row_adj, col_adj }
    }

    pub fn n_checks(&self) -> usize {
        self.row_adj.len()
    }

    pub fn n_values(&self) -> usize {
        self.col_adj.len()
    }

    pub fn check_degree(&self, r: usize) -> usize {
        self.row_adj[r].len()
    }

    pub fn value_degree(&self, c: usize) -> usize {
        self.col_adj[c].len()
    }

    fn check_node(&self, node: Node) -> Result<()> {
        match node {
            Node::Check(r) if r >= self.n_checks() => Err(Error::RowOutOfRange {
                index: r,
                len: self.n_checks(),
            }),
            Node::Value(c) if c >= self.n_values() => Err(Error::ColumnOutOfRange {
                index: c,
                len: self.n_values(),
            }),
            _ => Ok(()),
        }
    }

    /// BFS distances from `source` to every node, memoized for this call
    /// only.
    pub fn distances_from(&self, source: Node) -> Result<DistanceMap> {
        self.check_node(source)?;
        let mut to_checks = alloc::vec![None; self.n_checks()];
        let mut to_values = alloc::vec![None; self.n_values()];
        let mut frontier = VecDeque::new();
        match source {
            Node::Check(r) => to_checks[r] = Some(0),
            Node::Value(c) => to_values[c] = Some(0),
        }
        frontier.push_back(source);
        while let Some(node) = frontier.pop_front() {
            match node {
                Node::Check(r) => {
                    let d = to_checks[r].expect("visited");
                    for &c in &self.row_adj[r] {
                        if to_values[c].is_none() {
                            to_values[c] = Some(d + 1);
                            frontier.push_back(Node::Value(c));
                        }
                    }
                }
                Node::Value(c) => {
                    let d = to_values[c].expect("visited");
                    for &r in &self.col_adj[c] {
                        if to_checks[r].is_none() {
                            to_checks[r] = Some(d + 1);
                            frontier.push_back(Node::Check(r));
                        }
                    }
                }
            }
        }
        Ok(DistanceMap {
            to_checks,
            to_values,
        })
    }

    /// All nodes at distance `radius` or smaller from `center`.
    pub fn ball(&self, center: Node, radius: usize) -> Result<Ball> {
        let dist = self.distances_from(center)?;
        let within = |d: &Option<usize>| matches!(d, Some(v) if *v <= radius);
        let checks = (0..self.n_checks())
            .filter(|&r| within(&dist.to_checks[r]))
            .collect();
        let values = (0..self.n_values())
            .filter(|&c| within(&dist.to_values[c]))
            .collect();
        Ok(Ball {
            center,
            radius,
            checks,
            values,
        })
    }

    /// Largest `r <= r_max` such that the rows of `m` lying inside the ball
    /// of radius `2r` around check `u0` are linearly independent.
    ///
    /// Returns 0 when even the singleton `{u0}` is dependent (zero row).
    /// Rows in other components never enter any ball and are ignored.
    pub fn locally_independent_radius(
        &self,
        m: &BitMatrix,
        u0: usize,
        r_max: usize,
    ) -> Result<usize> {
        let dist = self.distances_from(Node::Check(u0))?;
        // Rows grouped by (even) check distance.
        let mut by_radius: Vec<(usize, usize)> = dist
            .to_checks
            .iter()
            .enumerate()
            .filter_map(|(r, d)| d.map(|d| (d, r)))
            .collect();
        by_radius.sort_unstable();
        let mut acc = crate::css::IncrementalBasis::new();
        let mut next = 0usize;
        for r in 0..=r_max {
            while next < by_radius.len() && by_radius[next].0 <= 2 * r {
                if !acc.try_add(m.row(by_radius[next].1)) {
                    return Ok(r.saturating_sub(1));
                }
                next += 1;
            }
        }
        Ok(r_max)
    }

    /// DOT rendering, optionally highlighting one ball (debug aid).
    pub fn to_dot(&self, highlight: Option<&Ball>) -> String {
        use core::fmt::Write;
        let mut out = String::from("graph tanner {\n  node [shape=box];\n");
        let hit = |n: Node| highlight.map(|b| b.contains(n)).unwrap_or(false);
        for r in 0..self.n_checks() {
            let style = if hit(Node::Check(r)) {
                " style=filled fillcolor=lightblue"
            } else {
                ""
            };
            let _ = writeln!(out, "  c{r} [label=\"c{r}\"{style}];");
        }
        for c in 0..self.n_values() {
            let style = if hit(Node::Value(c)) {
                " style=filled fillcolor=lightyellow"
            } else {
                ""
            };
            let _ = writeln!(out, "  v{c} [shape=circle label=\"v{c}\"{style}];");
        }
        for (r, cols) in self.row_adj.iter().enumerate() {
            for &c in cols {
                let _ = writeln!(out, "  c{r} -- v{c};");
            }
        }
        out.push_str("}\n");
        out
    }
}
