//! Clustering evaluation: ARI, NMI, and silhouette coefficient.

use ndarray::ArrayView2;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::LabelVector;

/// Class-by-cluster contingency counts with marginals.
#[derive(Debug, Clone)]
pub struct ContingencyTable {
    /// counts[i][j] = number of items with class i and cluster j.
    pub counts: Vec<Vec<u64>>,
    /// Row sums (per class).
    pub row_sums: Vec<u64>,
    /// Column sums (per cluster).
    pub col_sums: Vec<u64>,
    /// Total item count.
    pub total: u64,
}

impl ContingencyTable {
    pub fn from_labels(truth: &LabelVector, pred: &LabelVector) -> Result<Self> {
        if truth.len() != pred.len() {
            return Err(Error::domain(format!(
                "label length mismatch: {} vs {}",
                truth.len(),
                pred.len()
            )));
        }
        let rows = truth.n_classes();
        let cols = pred.n_classes();
        let mut counts = vec![vec![0u64; cols]; rows];
        for (&t, &p) in truth.labels().iter().zip(pred.labels()) {
            counts[t][p] += 1;
        }
        let row_sums: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let mut col_sums = vec![0u64; cols];
        for row in &counts {
            for (j, &v) in row.iter().enumerate() {
                col_sums[j] += v;
            }
        }
        let total = row_sums.iter().sum();
        Ok(ContingencyTable {
            counts,
            row_sums,
            col_sums,
            total,
        })
    }
}

fn choose2(n: u64) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 2.0
}

/// Adjusted Rand index between two labelings.
///
/// Pair-counting agreement corrected for chance; 1.0 iff the partitions are
/// identical up to relabeling. Both labelings must have the same length ≥ 2.
pub fn ari(truth: &LabelVector, pred: &LabelVector) -> Result<f64> {
    if truth.len() < 2 {
        return Err(Error::domain("ari requires at least 2 items"));
    }
    let table = ContingencyTable::from_labels(truth, pred)?;
    let sum_ij: f64 = table
        .counts
        .iter()
        .flat_map(|r| r.iter())
        .map(|&n| choose2(n))
        .sum();
    let sum_a: f64 = table.row_sums.iter().map(|&n| choose2(n)).sum();
    let sum_b: f64 = table.col_sums.iter().map(|&n| choose2(n)).sum();
    let pairs = choose2(table.total);
    let expected = sum_a * sum_b / pairs;
    let max_index = 0.5 * (sum_a + sum_b);
    if max_index == expected {
        // Both partitions trivial (all-singleton or single-cluster): identical.
        return Ok(1.0);
    }
    Ok((sum_ij - expected) / (max_index - expected))
}

fn entropy(masses: &[u64], total: u64) -> f64 {
    let n = total as f64;
    masses
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| {
            let p = m as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information, `2·MI / (H(U)+H(V))` with natural-log
/// entropies. Returns 0 when both partitions are single-cluster.
pub fn nmi(truth: &LabelVector, pred: &LabelVector) -> Result<f64> {
    let table = ContingencyTable::from_labels(truth, pred)?;
    let n = table.total as f64;
    let h_u = entropy(&table.row_sums, table.total);
    let h_v = entropy(&table.col_sums, table.total);
    if h_u + h_v == 0.0 {
        return Ok(0.0);
    }
    let mut mi = 0.0;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &nij) in row.iter().enumerate() {
            if nij == 0 {
                continue;
            }
            let p_ij = nij as f64 / n;
            let p_i = table.row_sums[i] as f64 / n;
            let p_j = table.col_sums[j] as f64 / n;
            mi += p_ij * (p_ij / (p_i * p_j)).ln();
        }
    }
    Ok(2.0 * mi / (h_u + h_v))
}

/// Mean silhouette coefficient over all points, Euclidean distance.
///
/// For point i, `s_i = (b_i − a_i) / max(a_i, b_i)` where `a_i` is the mean
/// distance to the other members of its own cluster and `b_i` the smallest
/// mean distance to another cluster. Points in singleton clusters score 0.
pub fn silhouette(points: ArrayView2<'_, f64>, labels: &LabelVector) -> Result<f64> {
    let n = points.nrows();
    if labels.len() != n {
        return Err(Error::domain(format!(
            "silhouette: {} points but {} labels",
            n,
            labels.len()
        )));
    }
    let c = labels.n_classes();
    if c < 2 {
        return Err(Error::domain("silhouette requires at least 2 clusters"));
    }
    let mut cluster_sizes = vec![0usize; c];
    for &l in labels.labels() {
        cluster_sizes[l] += 1;
    }
    if cluster_sizes.iter().any(|&s| s == 0) {
        return Err(Error::domain("silhouette: empty cluster"));
    }

    let scores: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            if cluster_sizes[labels.labels()[i]] == 1 {
                return 0.0;
            }
            // Mean distance from i to every cluster.
            let mut dist_sum = vec![0.0f64; c];
            let pi = points.row(i);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = pi
                    .iter()
                    .zip(points.row(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                dist_sum[labels.labels()[j]] += d;
            }
            let own = labels.labels()[i];
            let a = dist_sum[own] / (cluster_sizes[own] - 1) as f64;
            let b = (0..c)
                .filter(|&k| k != own)
                .map(|k| dist_sum[k] / cluster_sizes[k] as f64)
                .fold(f64::INFINITY, f64::min);
            (b - a) / a.max(b)
        })
        .collect();

    Ok(scores.iter().sum::<f64>() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use proptest::prelude::*;

    fn lv(labels: &[usize]) -> LabelVector {
        LabelVector::from_raw(labels.to_vec()).unwrap()
    }

    // ── Independent oracles ────────────────────────────────────────────────
    //
    // ARI via the pair-confusion route: classify every unordered item pair as
    // co-clustered in both / truth only / pred only / neither, then apply the
    // pair-count identity. Shares no code or formula layout with `ari`.
    fn ari_pair_oracle(truth: &[usize], pred: &[usize]) -> f64 {
        let n = truth.len();
        let (mut both, mut t_only, mut p_only, mut neither) = (0f64, 0f64, 0f64, 0f64);
        for i in 0..n {
            for j in (i + 1)..n {
                match (truth[i] == truth[j], pred[i] == pred[j]) {
                    (true, true) => both += 1.0,
                    (true, false) => t_only += 1.0,
                    (false, true) => p_only += 1.0,
                    (false, false) => neither += 1.0,
                }
            }
        }
        let num = 2.0 * (both * neither - t_only * p_only);
        let den = (both + t_only) * (t_only + neither) + (both + p_only) * (p_only + neither);
        if den == 0.0 {
            1.0
        } else {
            num / den
        }
    }

    // NMI from scratch over hash-map joint counts.
    fn nmi_oracle(truth: &[usize], pred: &[usize]) -> f64 {
        use std::collections::HashMap;
        let n = truth.len() as f64;
        let mut joint: HashMap<(usize, usize), f64> = HashMap::new();
        let mut mt: HashMap<usize, f64> = HashMap::new();
        let mut mp: HashMap<usize, f64> = HashMap::new();
        for (&t, &p) in truth.iter().zip(pred) {
            *joint.entry((t, p)).or_default() += 1.0;
            *mt.entry(t).or_default() += 1.0;
            *mp.entry(p).or_default() += 1.0;
        }
        let h = |m: &HashMap<usize, f64>| -> f64 {
            m.values().map(|&c| -(c / n) * (c / n).ln()).sum()
        };
        let (hu, hv) = (h(&mt), h(&mp));
        if hu + hv == 0.0 {
            return 0.0;
        }
        let mut mi = 0.0;
        for (&(t, p), &c) in &joint {
            mi += (c / n) * ((c / n) / ((mt[&t] / n) * (mp[&p] / n))).ln();
        }
        2.0 * mi / (hu + hv)
    }

    #[test]
    fn ari_identical_is_one() {
        let a = lv(&[0, 0, 1, 1, 2]);
        assert_eq!(ari(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn ari_permutation_invariant() {
        let a = lv(&[0, 0, 1, 1]);
        let b = lv(&[1, 1, 0, 0]);
        assert_eq!(ari(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn ari_hand_case_negative_half() {
        let a = lv(&[0, 0, 1, 1]);
        let b = lv(&[0, 1, 0, 1]);
        assert_eq!(ari(&a, &b).unwrap(), -0.5);
        assert_eq!(ari_pair_oracle(&[0, 0, 1, 1], &[0, 1, 0, 1]), -0.5);
    }

    #[test]
    fn ari_length_mismatch_errors() {
        assert!(ari(&lv(&[0, 1]), &lv(&[0, 1, 1])).is_err());
        assert!(ari(&lv(&[0]), &lv(&[0])).is_err());
    }

    #[test]
    fn nmi_identical_is_one() {
        let a = lv(&[0, 0, 1, 1, 2]);
        assert!((nmi(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nmi_independent_partitions_zero() {
        let a = lv(&[0, 0, 1, 1]);
        let b = lv(&[0, 1, 0, 1]);
        assert!(nmi(&a, &b).unwrap().abs() < 1e-12);
    }

    #[test]
    fn nmi_hand_case_vs_oracle() {
        let t = [0, 0, 1, 1];
        let p = [0, 0, 0, 1];
        let got = nmi(&lv(&t), &lv(&p)).unwrap();
        assert!((got - nmi_oracle(&t, &p)).abs() < 1e-12);
    }

    #[test]
    fn nmi_single_cluster_convention() {
        let a = lv(&[0, 0, 0]);
        assert_eq!(nmi(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn silhouette_two_far_pairs() {
        let pts = array![[0.0], [0.1], [10.0], [10.1]];
        let labels = lv(&[0, 0, 1, 1]);
        // s for point 0: a = 0.1, b = (10 + 10.1)/2 = 10.05 → (10.05-0.1)/10.05
        let expected_point0: f64 = (10.05 - 0.1) / 10.05;
        assert!((expected_point0 - 0.99005).abs() < 1e-4);
        let s = silhouette(pts.view(), &labels).unwrap();
        // All four points are symmetric up to reflection; the mean matches point 0's score.
        assert!((s - expected_point0).abs() < 1e-9);
    }

    #[test]
    fn silhouette_interleaved_sets_near_zero() {
        // Identical point clouds split arbitrarily across two clusters.
        let pts = array![[0.0], [1.0], [0.0], [1.0]];
        let labels = lv(&[0, 0, 1, 1]);
        let s = silhouette(pts.view(), &labels).unwrap();
        assert!(s <= 0.0 + 1e-12, "expected ≈0 or negative, got {s}");
    }

    #[test]
    fn silhouette_singleton_clusters_zero() {
        let pts = array![[0.0], [5.0], [9.0]];
        let labels = lv(&[0, 1, 2]);
        assert_eq!(silhouette(pts.view(), &labels).unwrap(), 0.0);
    }

    #[test]
    fn silhouette_single_cluster_errors() {
        let pts = array![[0.0], [1.0]];
        assert!(silhouette(pts.view(), &lv(&[0, 0])).is_err());
    }

    proptest! {
        // Random labelings, n ≤ 12, ≤ 4 clusters: match both oracles tightly.
        #[test]
        fn ari_nmi_match_oracles(
            truth in proptest::collection::vec(0usize..4, 2..12),
            seed in proptest::collection::vec(0usize..4, 2..12),
        ) {
            let n = truth.len().min(seed.len());
            let t = compact(&truth[..n]);
            let p = compact(&seed[..n]);
            let a = ari(&lv(&t), &lv(&p)).unwrap();
            let m = nmi(&lv(&t), &lv(&p)).unwrap();
            prop_assert!((a - ari_pair_oracle(&t, &p)).abs() < 1e-10);
            prop_assert!((m - nmi_oracle(&t, &p)).abs() < 1e-10);
            prop_assert!(a <= 1.0 + 1e-12);
        }

        // Symmetry and relabeling invariance.
        #[test]
        fn ari_nmi_symmetric_and_relabel_invariant(
            labels in proptest::collection::vec(0usize..3, 3..10),
            other in proptest::collection::vec(0usize..3, 3..10),
        ) {
            let n = labels.len().min(other.len());
            let t = compact(&labels[..n]);
            let p = compact(&other[..n]);
            // Swap arguments.
            prop_assert!((ari(&lv(&t), &lv(&p)).unwrap() - ari(&lv(&p), &lv(&t)).unwrap()).abs() < 1e-12);
            prop_assert!((nmi(&lv(&t), &lv(&p)).unwrap() - nmi(&lv(&p), &lv(&t)).unwrap()).abs() < 1e-12);
            // Relabel pred by a fixed permutation.
            let perm = [2usize, 0, 1];
            let relabeled = compact(&p.iter().map(|&x| perm[x % 3]).collect::<Vec<_>>());
            prop_assert!((ari(&lv(&t), &lv(&p)).unwrap() - ari(&lv(&t), &lv(&relabeled)).unwrap()).abs() < 1e-12);
        }

        // Silhouette stays in [-1, 1].
        #[test]
        fn silhouette_in_range(
            coords in proptest::collection::vec(-10.0f64..10.0, 6..20),
        ) {
            let n = coords.len();
            let pts = ndarray::Array2::from_shape_vec((n, 1), coords).unwrap();
            let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
            let s = silhouette(pts.view(), &lv(&labels)).unwrap();
            prop_assert!((-1.0..=1.0).contains(&s));
        }
    }

    /// Re-encode labels to contiguous 0-based IDs (first-appearance order).
    fn compact(raw: &[usize]) -> Vec<usize> {
        let mut map = std::collections::HashMap::new();
        raw.iter()
            .map(|&x| {
                let next = map.len();
                *map.entry(x).or_insert(next)
            })
            .collect()
    }
}
