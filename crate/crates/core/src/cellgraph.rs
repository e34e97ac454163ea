//! Cell-to-cell KNN graph built from pairwise Pearson similarity.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use ndarray::Array2;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::{ExpressionMatrix, Stage};

/// Dense symmetric cell-similarity matrix with unit diagonal.
#[derive(Debug, Clone)]
pub struct SimilarityMatrix {
    s: Array2<f64>,
}

impl SimilarityMatrix {
    pub fn new(s: Array2<f64>) -> Result<Self> {
        if s.nrows() != s.ncols() {
            return Err(Error::Shape(format!(
                "similarity matrix must be square, got {}×{}",
                s.nrows(),
                s.ncols()
            )));
        }
        for i in 0..s.nrows() {
            if s[(i, i)] != 1.0 {
                return Err(Error::domain(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..i {
                let v = s[(i, j)];
                if !v.is_finite() || !(-1.0..=1.0).contains(&v) {
                    return Err(Error::domain(format!(
                        "similarity ({i},{j}) = {v} outside [-1, 1]"
                    )));
                }
                if s[(i, j)] != s[(j, i)] {
                    return Err(Error::domain(format!("similarity not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SimilarityMatrix { s })
    }

    pub fn n_cells(&self) -> usize {
        self.s.nrows()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.s
    }
}

/// Symmetric binary KNN adjacency with self-loops.
#[derive(Debug, Clone)]
pub struct CellGraph {
    /// Sorted neighbor lists including the self-loop.
    neighbors: Arc<Vec<Vec<usize>>>,
    k: usize,
}

impl CellGraph {
    /// Union-symmetrize an explicit directed edge set and add self-loops.
    pub fn from_edges(n: usize, k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sets: Vec<std::collections::BTreeSet<usize>> =
            (0..n).map(|i| std::collections::BTreeSet::from([i])).collect();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::domain(format!("edge ({a},{b}) out of range")));
            }
            sets[a].insert(b);
            sets[b].insert(a);
        }
        let neighbors: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let graph = CellGraph {
            neighbors: Arc::new(neighbors),
            k,
        };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<()> {
        let cap = 2 * self.k + 1;
        for (i, list) in self.neighbors.iter().enumerate() {
            if list.binary_search(&i).is_err() {
                return Err(Error::domain(format!("node {i} lost its self-loop")));
            }
            if list.is_empty() || list.len() > cap {
                return Err(Error::domain(format!(
                    "node {i} has {} neighbors, outside [1, {cap}]",
                    list.len()
                )));
            }
        }
        Ok(())
    }

    pub fn n_cells(&self) -> usize {
        self.neighbors.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted neighbors of `i`, self-loop included.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn neighbor_lists(&self) -> &[Vec<usize>] {
        &self.neighbors
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Degree excluding the self-loop.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len() - 1
    }

    /// Edge-list CSV `i,j` (0-based, i < j, self-loops omitted).
    pub fn write_edge_csv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "i,j")?;
        for (i, list) in self.neighbors.iter().enumerate() {
            for &j in list {
                if j > i {
                    writeln!(w, "{i},{j}")?;
                }
            }
        }
        Ok(())
    }
}

/// Pearson correlation between every pair of cell rows.
///
/// Requires HVG-selected input; every cell must have nonzero variance across
/// the selected genes.
pub fn pearson_similarity(x: &ExpressionMatrix) -> Result<SimilarityMatrix> {
    if x.stage() != Stage::HvgSelected {
        return Err(Error::domain(format!(
            "pearson_similarity expects stage hvg_selected, got {}",
            x.stage().as_str()
        )));
    }
    let n = x.n_cells();
    let f = x.n_genes() as f64;

    // Center and unit-normalize each row; the Gram matrix is then Pearson.
    let mut centered = x.values().clone();
    for (i, mut row) in centered.rows_mut().into_iter().enumerate() {
        let mean = row.sum() / f;
        row.mapv_inplace(|v| v - mean);
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::domain(format!(
                "cell `{}` has zero variance across selected genes",
                x.cell_ids()[i]
            )));
        }
        row.mapv_inplace(|v| v / norm);
    }

    let mut s = centered.dot(&centered.t());
    // Exact unit diagonal and symmetry; clamp float overshoot.
    for i in 0..n {
        s[(i, i)] = 1.0;
        for j in 0..i {
            let v = s[(i, j)].clamp(-1.0, 1.0);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    SimilarityMatrix::new(s)
}

/// Link each cell to its `k` most similar cells (ties to the lower index),
/// union-symmetrize, and add self-loops.
pub fn knn_graph(s: &SimilarityMatrix, k: usize) -> Result<CellGraph> {
    let n = s.n_cells();
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    if k >= n {
        return Err(Error::domain(format!("k = {k} must be < n_cells = {n}")));
    }
    let top: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            order.sort_by(|&a, &b| {
                s.values()[(i, b)]
                    .partial_cmp(&s.values()[(i, a)])
                    .unwrap()
                    .then_with(|| a.cmp(&b))
            });
            order.truncate(k);
            order
        })
        .collect();
    let edges: Vec<(usize, usize)> = top
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |j| (i, j)))
        .collect();
    CellGraph::from_edges(n, k, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::ExpressionMatrix;
    use ndarray::array;
    use proptest::prelude::*;

    fn hvg(values: Array2<f64>) -> ExpressionMatrix {
        let cells = (0..values.nrows()).map(|i| format!("c{i}")).collect();
        let genes = (0..values.ncols()).map(|j| format!("g{j}")).collect();
        ExpressionMatrix::from_parts(values, cells, genes, Stage::HvgSelected).unwrap()
    }

    fn sim(entries: &[(usize, usize, f64)], n: usize) -> SimilarityMatrix {
        let mut s = Array2::eye(n);
        for &(i, j, v) in entries {
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
        SimilarityMatrix::new(s).unwrap()
    }

    #[test]
    fn pearson_identical_rows_is_one() {
        let x = hvg(array![[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]]);
        let s = pearson_similarity(&x).unwrap();
        assert!((s.values()[(0, 1)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pearson_centered_negation_is_minus_one() {
        // Row 1 = −row 0 after centering (reflect around the mean).
        let x = hvg(array![[1.0, 2.0, 3.0], [3.0, 2.0, 1.0]]);
        let s = pearson_similarity(&x).unwrap();
        assert!((s.values()[(0, 1)] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn pearson_hand_value() {
        // corr([1,2,3], [1,2,4]) = 0.98198… (direct evaluation of the formula).
        let x = hvg(array![[1.0, 2.0, 3.0], [1.0, 2.0, 4.0]]);
        let s = pearson_similarity(&x).unwrap();
        assert!((s.values()[(0, 1)] - 0.9820).abs() < 1e-4);
    }

    #[test]
    fn pearson_zero_variance_names_cell() {
        let x = hvg(array![[1.0, 2.0], [5.0, 5.0]]);
        let err = pearson_similarity(&x).unwrap_err();
        assert!(err.to_string().contains("c1"), "{err}");
    }

    #[test]
    fn knn_example_union() {
        let s = sim(&[(0, 1, 0.9), (0, 2, 0.1), (1, 2, 0.2)], 3);
        let g = knn_graph(&s, 1).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
        assert!(!g.has_edge(0, 2));
        for i in 0..3 {
            assert!(g.has_edge(i, i));
        }
    }

    #[test]
    fn knn_saturation_complete_graph() {
        let s = sim(&[(0, 1, 0.5), (0, 2, 0.4), (1, 2, 0.3)], 3);
        let g = knn_graph(&s, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(g.has_edge(i, j));
            }
        }
    }

    #[test]
    fn knn_tie_break_lower_index() {
        let s = sim(&[(0, 1, 0.5), (0, 2, 0.5), (1, 2, -0.9)], 3);
        let g = knn_graph(&s, 1).unwrap();
        // Cell 0 ties between 1 and 2; picks 1. Cells 1 and 2 both pick 0.
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(0, 2)); // from cell 2's own selection, unioned
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn knn_k_too_large_errors() {
        let s = sim(&[(0, 1, 0.5)], 2);
        assert!(knn_graph(&s, 2).is_err());
    }

    proptest! {
        // Adjacency depends only on the similarity ranking: any strictly
        // monotone transform of the off-diagonal entries leaves it unchanged.
        #[test]
        fn knn_invariant_under_monotone_transform(
            vals in proptest::collection::vec(-0.99f64..0.99, 15),
            k in 1usize..5,
        ) {
            let n = 6; // 15 off-diagonal pairs
            let mut s1 = Array2::eye(n);
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    s1[(i, j)] = vals[idx];
                    s1[(j, i)] = vals[idx];
                    idx += 1;
                }
            }
            let mut s2 = s1.clone();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        // tanh(2x + 0.1) is strictly monotone and stays in [-1, 1].
                        s2[(i, j)] = (2.0 * s1[(i, j)] + 0.1).tanh();
                    }
                }
            }
            let g1 = knn_graph(&SimilarityMatrix::new(s1).unwrap(), k).unwrap();
            let g2 = knn_graph(&SimilarityMatrix::new(s2).unwrap(), k).unwrap();
            prop_assert_eq!(g1.neighbor_lists(), g2.neighbor_lists());
        }

        // Symmetry, full diagonal, and degree ≥ k for every node.
        #[test]
        fn knn_structural_invariants(
            vals in proptest::collection::vec(-0.99f64..0.99, 15),
            k in 1usize..5,
        ) {
            let n = 6;
            let mut s = Array2::eye(n);
            let mut idx = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    s[(i, j)] = vals[idx];
                    s[(j, i)] = vals[idx];
                    idx += 1;
                }
            }
            let g = knn_graph(&SimilarityMatrix::new(s).unwrap(), k).unwrap();
            for i in 0..n {
                prop_assert!(g.has_edge(i, i));
                prop_assert!(g.degree(i) >= k);
                for &j in g.neighbors(i) {
                    prop_assert!(g.has_edge(j, i));
                }
            }
        }
    }

    #[test]
    fn edge_csv_omits_self_loops() {
        let s = sim(&[(0, 1, 0.9), (1, 2, 0.8), (0, 2, -0.5)], 3);
        let g = knn_graph(&s, 1).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("edges.csv");
        g.write_edge_csv(&p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text, "i,j\n0,1\n1,2\n");
    }
}
