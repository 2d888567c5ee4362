//! Independent brute-force oracles for the integration suites. Everything
//! here recomputes results by the most literal route available (explicit
//! pair loops, exhaustive enumeration, textbook Jacobi rotations) and
//! stays off the library's own code paths.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use citesem::corpus::Label;

/// Naive nine-statistic recomputation: direct formulas over a sorted copy.
pub fn naive_stats(citations: &[u64]) -> (usize, u64, u64, f64, f64, f64, f64, f64, f64) {
    let n = citations.len();
    assert!(n > 0);
    let mut sorted = citations.to_vec();
    sorted.sort_unstable();
    let mean = citations.iter().map(|&c| c as f64).sum::<f64>() / n as f64;
    let sigma = if n < 2 {
        0.0
    } else {
        (citations
            .iter()
            .map(|&c| (c as f64 - mean) * (c as f64 - mean))
            .sum::<f64>()
            / (n - 1) as f64)
            .sqrt()
    };
    (
        n,
        sorted[n - 1],
        sorted[0],
        mean,
        naive_quantile(&sorted, 0.25),
        naive_quantile(&sorted, 0.5),
        naive_quantile(&sorted, 0.75),
        sigma,
        sigma / (n as f64).sqrt(),
    )
}

/// Quantile at 1-based rank p(n-1)+1 with linear interpolation.
pub fn naive_quantile(sorted: &[u64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0] as f64;
    }
    let rank = p * (n - 1) as f64; // 0-based position
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let lo_v = sorted[lo] as f64;
    let hi_v = sorted[hi] as f64;
    lo_v + (rank - lo as f64) * (hi_v - lo_v)
}

/// Hash-count term frequency oracle.
pub fn naive_term_frequency(word: &str, tokens: &[String]) -> usize {
    let mut count = 0;
    for t in tokens {
        if t == word {
            count += 1;
        }
    }
    count
}

/// TF-IDF matrix recomputed from scratch: df by scanning every document,
/// weight = tf * (1 + ln(n/df)), optional normalization.
pub fn naive_tfidf(
    docs: &[Vec<String>],
    normalize: bool,
) -> Vec<std::collections::BTreeMap<String, f64>> {
    let n = docs.len() as f64;
    let mut df: std::collections::BTreeMap<&str, usize> = std::collections::BTreeMap::new();
    for doc in docs {
        let unique: std::collections::BTreeSet<&str> = doc.iter().map(String::as_str).collect();
        for w in unique {
            *df.entry(w).or_insert(0) += 1;
        }
    }
    docs.iter()
        .map(|doc| {
            let mut weights = std::collections::BTreeMap::new();
            let unique: std::collections::BTreeSet<&str> = doc.iter().map(String::as_str).collect();
            for w in unique {
                let tf = naive_term_frequency(w, doc) as f64;
                let idf = 1.0 + (n / df[w] as f64).ln();
                weights.insert(w.to_string(), tf * idf);
            }
            if normalize {
                let norm = weights.values().map(|v| v * v).sum::<f64>().sqrt();
                if norm > 0.0 {
                    for v in weights.values_mut() {
                        *v /= norm;
                    }
                }
            }
            weights
        })
        .collect()
}

/// Counting-loop confusion oracle.
pub fn naive_confusion(predictions: &[Label], truths: &[Label]) -> (usize, usize, usize, usize) {
    let (mut tp, mut fp, mut fneg, mut tn) = (0, 0, 0, 0);
    for i in 0..predictions.len() {
        match (predictions[i], truths[i]) {
            (Label::Positive, Label::Positive) => tp += 1,
            (Label::Positive, Label::Negative) => fp += 1,
            (Label::Negative, Label::Positive) => fneg += 1,
            (Label::Negative, Label::Negative) => tn += 1,
        }
    }
    (tp, fp, fneg, tn)
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix, returning
/// eigenvalues in non-increasing order with their eigenvectors as columns
/// (row-major `Vec<Vec<f64>>`, vectors[i][k] = component k of vector i).
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].partial_cmp(&m[i][i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    (values, vectors)
}

/// Covariance of rows by the direct double loop (n-1 denominator).
pub fn naive_covariance(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows.len();
    let d = rows[0].len();
    let mut mean = vec![0.0; d];
    for r in rows {
        for j in 0..d {
            mean[j] += r[j];
        }
    }
    for j in 0..d {
        mean[j] /= n as f64;
    }
    let mut cov = vec![vec![0.0; d]; d];
    for r in rows {
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            cov[i][j] /= (n - 1) as f64;
        }
    }
    cov
}

/// The supervised objective by its definition: explicit double loops over
/// all cross-class and within-class pairs of projected points.
pub fn pairwise_objective(
    rows: &[Vec<f64>],
    labels: &[Label],
    axes: &[Vec<f64>], // axes[j] = column j of V
    alpha: f64,
) -> f64 {
    // center the data first, matching the definition's precondition
    let n = rows.len();
    let d = rows[0].len();
    let mut mean = vec![0.0; d];
    for r in rows {
        for j in 0..d {
            mean[j] += r[j] / n as f64;
        }
    }
    let project = |r: &[f64]| -> Vec<f64> {
        axes.iter()
            .map(|axis| (0..d).map(|j| (r[j] - mean[j]) * axis[j]).sum::<f64>())
            .collect()
    };
    let projected: Vec<Vec<f64>> = rows.iter().map(|r| project(r)).collect();
    let squared_distance =
        |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    let pos: Vec<usize> = (0..n).filter(|&i| labels[i] == Label::Positive).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| labels[i] == Label::Negative).collect();

    let mut between = 0.0;
    for &i in &pos {
        for &j in &neg {
            between += squared_distance(&projected[i], &projected[j]);
        }
    }
    between /= (pos.len() * neg.len()) as f64;

    let within = |set: &[usize]| -> f64 {
        if set.len() < 2 {
            return 0.0;
        }
        let mut sum = 0.0;
        for a in 0..set.len() {
            for b in 0..a {
                sum += squared_distance(&projected[set[a]], &projected[set[b]]);
            }
        }
        2.0 * sum / (set.len() * (set.len() - 1)) as f64
    };
    between - alpha / 2.0 * (within(&pos) + within(&neg))
}

/// Solve (A + ridge I) x = b by Gauss-Jordan elimination with partial
/// pivoting; independent of the library's factorizations.
pub fn naive_solve(a: &[Vec<f64>], b: &[f64], ridge: f64) -> Option<Vec<f64>> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row[i] += ridge;
            row.push(b[i]);
            row
        })
        .collect();
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&i, &j| aug[i][col].abs().partial_cmp(&aug[j][col].abs()).unwrap())?;
        if aug[pivot][col].abs() < 1e-12 {
            return None;
        }
        aug.swap(col, pivot);
        let scale = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= scale;
        }
        for row in 0..n {
            if row != col {
                let factor = aug[row][col];
                for k in 0..=n {
                    aug[row][k] -= factor * aug[col][k];
                }
            }
        }
    }
    Some((0..n).map(|i| aug[i][n]).collect())
}

/// Exhaustive threshold search: evaluate every midpoint cut and the two
/// infinite cuts by recounting sensitivity and specificity from scratch.
pub fn exhaustive_threshold(scored: &[(f64, Label)]) -> (f64, f64, f64) {
    let mut values: Vec<f64> = scored.iter().map(|(s, _)| *s).collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values.dedup();
    let mut candidates = vec![f64::NEG_INFINITY, f64::INFINITY];
    for w in values.windows(2) {
        candidates.push((w[0] + w[1]) / 2.0);
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n_pos = scored.iter().filter(|(_, l)| *l == Label::Positive).count();
    let n_neg = scored.len() - n_pos;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    let mut best_sum = f64::NEG_INFINITY;
    for &t in &candidates {
        let tp = scored
            .iter()
            .filter(|(s, l)| *l == Label::Positive && *s > t)
            .count();
        let tn = scored
            .iter()
            .filter(|(s, l)| *l == Label::Negative && *s <= t)
            .count();
        let sens = tp as f64 / n_pos as f64;
        let spec = tn as f64 / n_neg as f64;
        if sens + spec > best_sum {
            best_sum = sens + spec;
            best = (t, sens, spec);
        }
    }
    best
}

/// Rank-statistic AUC: P(score_pos > score_neg) + P(tie)/2 by the O(n^2)
/// pair comparison.
pub fn pair_count_auc(scores: &[f64], truths: &[Label]) -> f64 {
    let pos: Vec<f64> = scores
        .iter()
        .zip(truths)
        .filter(|(_, l)| **l == Label::Positive)
        .map(|(s, _)| *s)
        .collect();
    let neg: Vec<f64> = scores
        .iter()
        .zip(truths)
        .filter(|(_, l)| **l == Label::Negative)
        .map(|(s, _)| *s)
        .collect();
    let mut wins = 0.0;
    for &p in &pos {
        for &q in &neg {
            if p > q {
                wins += 1.0;
            } else if p == q {
                wins += 0.5;
            }
        }
    }
    wins / (pos.len() * neg.len()) as f64
}

/// All 2-partitions of `n` points (cluster of the farthest-pair seed fixed
/// to contain index 0... no constraint actually: enumerate every split).
/// Returns the minimum within-cluster sum of squares over non-empty
/// bipartitions.
pub fn best_two_partition_sse(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    assert!((2..=16).contains(&n));
    let d = rows[0].len();
    let mut best = f64::INFINITY;
    for mask in 1..(1u32 << n) - 1 {
        let mut sse = 0.0;
        for cluster in 0..2 {
            let members: Vec<usize> = (0..n)
                .filter(|&i| ((mask >> i) & 1 == 1) == (cluster == 0))
                .collect();
            if members.is_empty() {
                continue;
            }
            let mut centroid = vec![0.0; d];
            for &i in &members {
                for j in 0..d {
                    centroid[j] += rows[i][j] / members.len() as f64;
                }
            }
            for &i in &members {
                for j in 0..d {
                    let diff = rows[i][j] - centroid[j];
                    sse += diff * diff;
                }
            }
        }
        if sse < best {
            best = sse;
        }
    }
    best
}

/// Replay Lloyd's algorithm from the farthest-pair seed with independent
/// code, returning the converged within-cluster sum of squares.
pub fn replay_lloyd_sse(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let d = rows[0].len();
    let dist2 = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    let (mut sa, mut sb, mut dmax) = (0, 1, f64::NEG_INFINITY);
    for i in 0..n {
        for j in (i + 1)..n {
            let dd = dist2(&rows[i], &rows[j]);
            if dd > dmax {
                dmax = dd;
                sa = i;
                sb = j;
            }
        }
    }
    let mut centroids = vec![rows[sa].to_vec(), rows[sb].to_vec()];
    let assign = |centroids: &[Vec<f64>]| -> Vec<usize> {
        (0..n)
            .map(|i| {
                let d0 = dist2(&rows[i], &centroids[0]);
                let d1 = dist2(&rows[i], &centroids[1]);
                usize::from(d1 < d0)
            })
            .collect()
    };
    let mut assignment = assign(&centroids);
    loop {
        let mut fresh = [vec![0.0; d], vec![0.0; d]];
        let mut counts = [0usize; 2];
        for i in 0..n {
            counts[assignment[i]] += 1;
            for j in 0..d {
                fresh[assignment[i]][j] += rows[i][j];
            }
        }
        for c in 0..2 {
            if counts[c] > 0 {
                for j in 0..d {
                    fresh[c][j] /= counts[c] as f64;
                }
                centroids[c] = fresh[c].clone();
            }
        }
        let next = assign(&centroids);
        if next == assignment {
            break;
        }
        assignment = next;
    }
    (0..n)
        .map(|i| dist2(&rows[i], &centroids[assignment[i]]))
        .sum()
}
