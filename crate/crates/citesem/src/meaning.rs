//! The Meaning Space: a table mapping words to vectors of per-category
//! importance scores, plus PCA reduction of the word space itself.
//!
//! Each word is a point whose coordinates are relative information gains
//! (RIGs) for subject categories, expected to lie in [0, 1]. The table is
//! an input artifact; this module does not compute RIGs from raw counts.
//! `reduce_words` re-expresses every word in a lower-dimensional principal
//! basis so that downstream feature vectors shrink accordingly.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, Fnv1a};

/// Word -> vector table over an ordered list of category axes.
#[derive(Debug, Clone)]
pub struct WordVectorTable {
    categories: Vec<String>,
    words: Vec<String>,
    index: HashMap<String, usize>,
    /// words x categories matrix; row i is the vector of `words[i]`.
    matrix: DMatrix<f64>,
    range_violations: usize,
}

impl WordVectorTable {
    /// Build a table from (word, vector) rows. Rows must all match the
    /// category count; duplicate words are rejected. Components outside
    /// [0, 1] are tolerated but counted as range violations.
    pub fn from_rows(categories: Vec<String>, rows: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let m = categories.len();
        let mut words = Vec::with_capacity(rows.len());
        let mut index = HashMap::with_capacity(rows.len());
        let mut data = Vec::with_capacity(rows.len() * m);
        let mut range_violations = 0usize;
        for (row_no, (word, vector)) in rows.into_iter().enumerate() {
            if vector.len() != m {
                return Err(Error::domain(format!(
                    "word `{word}` (row {}) has {} components, expected {m}",
                    row_no + 1,
                    vector.len()
                )));
            }
            if index.contains_key(&word) {
                return Err(Error::domain(format!(
                    "duplicate word `{word}` at row {}",
                    row_no + 1
                )));
            }
            range_violations += vector.iter().filter(|v| **v < 0.0 || **v > 1.0).count();
            index.insert(word.clone(), words.len());
            words.push(word);
            data.extend_from_slice(&vector);
        }
        let matrix = DMatrix::from_row_slice(words.len(), m, &data);
        Ok(WordVectorTable {
            categories,
            words,
            index,
            matrix,
            range_violations,
        })
    }

    /// Load a table from TSV: header `word<TAB>cat1<TAB>...<TAB>catM`,
    /// then one row per word with m decimal components.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let reader = BufReader::new(file);
        let path_str = path.display().to_string();
        let mut lines = reader.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line.map_err(|e| Error::io(path, e))?,
            None => return Err(Error::parse(&path_str, 1, "missing header row")),
        };
        let mut cols = header.split('\t');
        match cols.next() {
            Some("word") => {}
            _ => return Err(Error::parse(&path_str, 1, "header must start with `word`")),
        }
        let categories: Vec<String> = cols.map(str::to_string).collect();
        if categories.is_empty() {
            return Err(Error::parse(&path_str, 1, "header names no categories"));
        }
        let m = categories.len();
        let mut rows = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, line) in lines {
            let line = line.map_err(|e| Error::io(path, e))?;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let word = fields.next().unwrap_or("").to_string();
            if word.is_empty() {
                return Err(Error::parse(&path_str, i + 1, "empty word field"));
            }
            if !seen.insert(word.clone()) {
                return Err(Error::parse(
                    &path_str,
                    i + 1,
                    format!("duplicate word `{word}`"),
                ));
            }
            let mut vector = Vec::with_capacity(m);
            for field in fields {
                let v: f64 = field.parse().map_err(|_| {
                    Error::parse(
                        &path_str,
                        i + 1,
                        format!("non-numeric cell `{field}` for word `{word}`"),
                    )
                })?;
                vector.push(v);
            }
            if vector.len() != m {
                return Err(Error::parse(
                    &path_str,
                    i + 1,
                    format!(
                        "word `{word}` has {} components, expected {m}",
                        vector.len()
                    ),
                ));
            }
            rows.push((word, vector));
        }
        Self::from_rows(categories, rows).map_err(|e| match e {
            Error::Domain(msg) => Error::parse(&path_str, 0, msg),
            other => other,
        })
    }

    /// Write the table back out in the TSV load format. Floats use the
    /// shortest round-trippable representation, so save/load is lossless.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
            write!(out, "word")?;
            for cat in &self.categories {
                write!(out, "\t{cat}")?;
            }
            writeln!(out)?;
            for (i, word) in self.words.iter().enumerate() {
                write!(out, "{word}")?;
                for v in self.matrix.row(i).iter() {
                    write!(out, "\t{v}")?;
                }
                writeln!(out)?;
            }
            Ok(())
        };
        write(&mut out).map_err(|e| Error::io(path, e))
    }

    /// Number of axes (categories) in the space.
    pub fn dimension(&self) -> usize {
        self.categories.len()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    /// The vector of a word, if present.
    pub fn vector(&self, word: &str) -> Option<DVector<f64>> {
        self.index
            .get(word)
            .map(|&i| self.matrix.row(i).transpose())
    }

    /// Count of components outside [0, 1] seen at construction.
    pub fn range_violations(&self) -> usize {
        self.range_violations
    }

    /// Content checksum tying derived artifacts back to this table.
    pub fn checksum(&self) -> u64 {
        let mut h = Fnv1a::new();
        h.write(&(self.words.len() as u64).to_le_bytes());
        h.write(&(self.categories.len() as u64).to_le_bytes());
        for cat in &self.categories {
            h.write(cat.as_bytes());
            h.write(&[0]);
        }
        for (i, word) in self.words.iter().enumerate() {
            h.write(word.as_bytes());
            h.write(&[0]);
            for v in self.matrix.row(i).iter() {
                h.write_f64(*v);
            }
        }
        h.finish()
    }

    /// The words-by-categories matrix; row i belongs to `words()[i]`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Orthonormal projection from the original word space onto its top
/// principal axes, with per-axis explained variance.
#[derive(Debug, Clone)]
pub struct ReducedWordBasis {
    /// m x p matrix of orthonormal columns.
    pub axes: DMatrix<f64>,
    /// Sample variance captured by each axis, non-increasing.
    pub explained_variance: Vec<f64>,
    /// Column means of the source table, subtracted before projection.
    pub mean: DVector<f64>,
    /// Checksum of the table the basis was fit on.
    pub source_checksum: u64,
}

impl ReducedWordBasis {
    pub fn output_dimension(&self) -> usize {
        self.axes.ncols()
    }

    /// Project a vector from the original space into the basis.
    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        self.axes.transpose() * (v - &self.mean)
    }

    /// Write the basis as TSV with axis columns named pc1..pcp.
    pub fn save(&self, path: impl AsRef<Path>, categories: &[String]) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
            write!(out, "word")?;
            for p in 1..=self.axes.ncols() {
                write!(out, "\tpc{p}")?;
            }
            writeln!(out)?;
            for (i, cat) in categories.iter().enumerate() {
                write!(out, "{cat}")?;
                for v in self.axes.row(i).iter() {
                    write!(out, "\t{v}")?;
                }
                writeln!(out)?;
            }
            Ok(())
        };
        write(&mut out).map_err(|e| Error::io(path, e))
    }
}

/// Principal-component reduction of the word table: fit the top-p axes of
/// the mean-centered word matrix and re-express every word by its p
/// projection coordinates. Axis signs follow the largest-loading-positive
/// convention so results are reproducible across runs and platforms.
pub fn reduce_words(
    table: &WordVectorTable,
    p: usize,
) -> Result<(ReducedWordBasis, WordVectorTable)> {
    let m = table.dimension();
    let n = table.word_count();
    if p == 0 || p > m {
        return Err(Error::domain(format!(
            "target dimension {p} outside 1..={m}"
        )));
    }
    if n < 2 || n < p {
        return Err(Error::domain(format!(
            "table has {n} words; need at least max(2, p) to fit a {p}-dimensional basis"
        )));
    }
    let (mean, cov) = linalg::sample_covariance(table.matrix());
    let (mut eigenvalues, vectors) = linalg::sym_eigen_desc(&cov);
    for v in &mut eigenvalues {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let scale = eigenvalues.first().copied().unwrap_or(0.0);
    let rank = eigenvalues
        .iter()
        .filter(|&&v| v > 1e-12 * scale.max(1e-300))
        .count();
    if p > rank {
        return Err(Error::domain(format!(
            "requested dimension {p} exceeds the rank of the centered word matrix ({rank})"
        )));
    }
    let axes = vectors.columns(0, p).clone_owned();
    let basis = ReducedWordBasis {
        axes,
        explained_variance: eigenvalues[..p].to_vec(),
        mean,
        source_checksum: table.checksum(),
    };
    // re-express words: centered matrix times axes
    let mut centered = table.matrix().clone();
    for mut row in centered.row_iter_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            *v -= basis.mean[j];
        }
    }
    let projected = centered * &basis.axes;
    let pc_names: Vec<String> = (1..=p).map(|i| format!("pc{i}")).collect();
    let rows: Vec<(String, Vec<f64>)> = table
        .words()
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), projected.row(i).iter().copied().collect()))
        .collect();
    // projection coordinates are not RIGs, so silence range accounting
    let mut reduced = WordVectorTable::from_rows(pc_names, rows)?;
    reduced.range_violations = 0;
    Ok((basis, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[(&str, &[f64])], m: usize) -> WordVectorTable {
        let categories: Vec<String> = (1..=m).map(|i| format!("c{i}")).collect();
        WordVectorTable::from_rows(
            categories,
            rows.iter()
                .map(|(w, v)| (w.to_string(), v.to_vec()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn load_small_table() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "word\tc1\tc2\tc3\tc4").unwrap();
        writeln!(f, "alpha\t0.1\t0.2\t0.3\t0.4").unwrap();
        writeln!(f, "beta\t0\t0\t1\t0.5").unwrap();
        writeln!(f, "gamma\t0.9\t0.8\t0.7\t0.6").unwrap();
        let t = WordVectorTable::load(f.path()).unwrap();
        assert_eq!(t.dimension(), 4);
        assert_eq!(t.word_count(), 3);
        assert_eq!(t.range_violations(), 0);
        assert_eq!(t.vector("beta").unwrap()[2], 1.0);
    }

    #[test]
    fn ragged_row_rejected_with_location() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "word\tc1\tc2").unwrap();
        writeln!(f, "alpha\t0.1\t0.2").unwrap();
        writeln!(f, "beta\t0.3").unwrap();
        match WordVectorTable::load(f.path()) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("beta"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_word_rejected() {
        let rows = vec![
            ("w".to_string(), vec![0.0, 0.0]),
            ("w".to_string(), vec![1.0, 1.0]),
        ];
        assert!(WordVectorTable::from_rows(vec!["a".into(), "b".into()], rows).is_err());
    }

    #[test]
    fn save_load_round_trip_identical() {
        let t = table(
            &[
                ("a", &[0.125, 0.75, 0.1]),
                ("b", &[0.3333333333333333, 0.0, 1.0]),
                ("c", &[0.9, 0.2, 0.30000000000000004]),
            ],
            3,
        );
        let f = tempfile::NamedTempFile::new().unwrap();
        t.save(f.path()).unwrap();
        let back = WordVectorTable::load(f.path()).unwrap();
        assert_eq!(back.words(), t.words());
        assert_eq!(back.categories(), t.categories());
        assert_eq!(back.matrix(), t.matrix());
        assert_eq!(back.checksum(), t.checksum());
    }

    #[test]
    fn planar_words_reduce_exactly() {
        // words in the plane spanned by e1, e2 inside a 4-dim space
        let t = table(
            &[
                ("a", &[0.0, 0.0, 0.5, 0.5]),
                ("b", &[1.0, 0.0, 0.5, 0.5]),
                ("c", &[0.0, 1.0, 0.5, 0.5]),
                ("d", &[1.0, 1.0, 0.5, 0.5]),
                ("e", &[0.5, 0.5, 0.5, 0.5]),
            ],
            4,
        );
        let (basis, reduced) = reduce_words(&t, 2).unwrap();
        assert_eq!(reduced.dimension(), 2);
        // reconstruction from 2 coordinates is exact for every word
        for (i, word) in t.words().iter().enumerate() {
            let original = t.vector(word).unwrap();
            let coords = reduced.matrix().row(i).transpose();
            let rebuilt = &basis.axes * coords + &basis.mean;
            assert!((original - rebuilt).norm() < 1e-9);
        }
    }

    #[test]
    fn full_basis_reconstructs_exactly() {
        // full-rank table, p = m: projection plus reconstruction is lossless
        let t = table(
            &[
                ("a", &[0.9, 0.1, 0.2]),
                ("b", &[0.1, 0.8, 0.3]),
                ("c", &[0.4, 0.4, 0.9]),
                ("d", &[0.2, 0.6, 0.1]),
                ("e", &[0.7, 0.3, 0.5]),
            ],
            3,
        );
        let (basis, reduced) = reduce_words(&t, 3).unwrap();
        for (i, word) in t.words().iter().enumerate() {
            let original = t.vector(word).unwrap();
            let coords = reduced.matrix().row(i).transpose();
            let rebuilt = &basis.axes * coords + &basis.mean;
            assert!((original - rebuilt).norm() < 1e-9);
        }
    }

    #[test]
    fn rank_excess_reports_attainable_rank() {
        let t = table(
            &[
                ("a", &[0.0, 0.0, 0.0]),
                ("b", &[1.0, 0.0, 0.0]),
                ("c", &[0.5, 0.0, 0.0]),
            ],
            3,
        );
        match reduce_words(&t, 2) {
            Err(Error::Domain(msg)) => assert!(msg.contains("rank") && msg.contains('1')),
            other => panic!("expected rank error, got {other:?}"),
        }
    }

    #[test]
    fn explained_variance_non_increasing_and_orthonormal() {
        let t = table(
            &[
                ("a", &[0.9, 0.1, 0.2, 0.1]),
                ("b", &[0.1, 0.8, 0.3, 0.0]),
                ("c", &[0.4, 0.4, 0.9, 0.2]),
                ("d", &[0.2, 0.6, 0.1, 0.7]),
                ("e", &[0.7, 0.3, 0.5, 0.9]),
                ("f", &[0.0, 0.2, 0.8, 0.4]),
            ],
            4,
        );
        let (basis, reduced) = reduce_words(&t, 3).unwrap();
        for w in basis.explained_variance.windows(2) {
            assert!(w[0] >= w[1] - 1e-12);
        }
        let gram = basis.axes.transpose() * &basis.axes;
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - expect).abs() < 1e-9);
            }
        }
        assert!(reduced.words().iter().all(|w| t.contains(w)));
    }
}
