//! Feature Vectors of Text: concatenations of word-cloud summaries.
//!
//! Five named variants cover the layouts used in the experiments; the
//! generic block API also allows the full (mean, std, pc1, c1, c2) layout.
//! Every block has the cloud's dimension d, so variant lengths are d, d,
//! 2d, 2d and 3d respectively.

use std::fmt;
use std::io::Write;
use std::ops::Range;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::cloud::{build_cloud, WordCloud};
use crate::corpus::DocumentRecord;
use crate::error::Result;
use crate::meaning::WordVectorTable;

/// One summary vector slot in an FVT layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    Mean,
    Std,
    Pc1,
    C1,
    C2,
}

impl Block {
    pub fn name(self) -> &'static str {
        match self {
            Block::Mean => "mean",
            Block::Std => "std",
            Block::Pc1 => "pc1",
            Block::C1 => "c1",
            Block::C2 => "c2",
        }
    }
}

/// The five named FVT layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FvtVariant {
    /// (mean)
    Fvt1,
    /// (pc1)
    Fvt2,
    /// (mean, pc1)
    Fvt3,
    /// (c1, c2)
    Fvt4,
    /// (c1, c2, pc1)
    Fvt5,
}

impl FvtVariant {
    pub const ALL: [FvtVariant; 5] = [
        FvtVariant::Fvt1,
        FvtVariant::Fvt2,
        FvtVariant::Fvt3,
        FvtVariant::Fvt4,
        FvtVariant::Fvt5,
    ];

    pub fn blocks(self) -> &'static [Block] {
        match self {
            FvtVariant::Fvt1 => &[Block::Mean],
            FvtVariant::Fvt2 => &[Block::Pc1],
            FvtVariant::Fvt3 => &[Block::Mean, Block::Pc1],
            FvtVariant::Fvt4 => &[Block::C1, Block::C2],
            FvtVariant::Fvt5 => &[Block::C1, Block::C2, Block::Pc1],
        }
    }

    /// Feature length in a d-dimensional word space.
    pub fn len(self, d: usize) -> usize {
        self.blocks().len() * d
    }
}

impl fmt::Display for FvtVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            FvtVariant::Fvt1 => 1,
            FvtVariant::Fvt2 => 2,
            FvtVariant::Fvt3 => 3,
            FvtVariant::Fvt4 => 4,
            FvtVariant::Fvt5 => 5,
        };
        write!(f, "fvt{n}")
    }
}

impl std::str::FromStr for FvtVariant {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fvt1" => Ok(FvtVariant::Fvt1),
            "fvt2" => Ok(FvtVariant::Fvt2),
            "fvt3" => Ok(FvtVariant::Fvt3),
            "fvt4" => Ok(FvtVariant::Fvt4),
            "fvt5" => Ok(FvtVariant::Fvt5),
            other => Err(crate::error::Error::Config(format!(
                "unknown FVT variant `{other}`"
            ))),
        }
    }
}

/// All five summaries of one cloud, computed once and reused across
/// variants. Degenerate clouds keep a zero pc1 and equal centroids so the
/// document stays classifiable.
#[derive(Debug, Clone)]
pub struct CloudSummary {
    pub doc_id: String,
    pub dimension: usize,
    pub mean: DVector<f64>,
    pub std: DVector<f64>,
    pub pc1: DVector<f64>,
    pub c1: DVector<f64>,
    pub c2: DVector<f64>,
    pub degenerate: bool,
}

impl CloudSummary {
    pub fn of(cloud: &WordCloud) -> Self {
        let pc = cloud.first_pc();
        let tm = cloud.two_means();
        CloudSummary {
            doc_id: cloud.doc_id.clone(),
            dimension: cloud.dimension(),
            mean: cloud.mean_vector(),
            std: cloud.std_vector(),
            pc1: pc.axis,
            c1: tm.c1,
            c2: tm.c2,
            degenerate: pc.degenerate || tm.degenerate,
        }
    }

    fn block_vector(&self, block: Block) -> &DVector<f64> {
        match block {
            Block::Mean => &self.mean,
            Block::Std => &self.std,
            Block::Pc1 => &self.pc1,
            Block::C1 => &self.c1,
            Block::C2 => &self.c2,
        }
    }

    /// Concatenate an arbitrary block layout.
    pub fn assemble_blocks(&self, blocks: &[Block]) -> TextFeatures {
        let d = self.dimension;
        let mut values = DVector::zeros(blocks.len() * d);
        let mut layout = Vec::with_capacity(blocks.len());
        for (i, &block) in blocks.iter().enumerate() {
            let start = i * d;
            values
                .rows_mut(start, d)
                .copy_from(self.block_vector(block));
            layout.push((block, start..start + d));
        }
        TextFeatures {
            doc_id: self.doc_id.clone(),
            variant: None,
            values,
            layout,
            degenerate: self.degenerate,
        }
    }

    pub fn assemble(&self, variant: FvtVariant) -> TextFeatures {
        let mut f = self.assemble_blocks(variant.blocks());
        f.variant = Some(variant);
        f
    }
}

/// A document's assembled feature vector with its named block layout.
#[derive(Debug, Clone)]
pub struct TextFeatures {
    pub doc_id: String,
    /// Set when the layout is one of the five named variants.
    pub variant: Option<FvtVariant>,
    pub values: DVector<f64>,
    layout: Vec<(Block, Range<usize>)>,
    pub degenerate: bool,
}

impl TextFeatures {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() == 0
    }

    pub fn layout(&self) -> &[(Block, Range<usize>)] {
        &self.layout
    }

    /// Named slice of one block, if the layout contains it.
    pub fn block(&self, block: Block) -> Option<&[f64]> {
        self.layout
            .iter()
            .find(|(b, _)| *b == block)
            .map(|(_, r)| &self.values.as_slice()[r.clone()])
    }
}

/// Build one document's FVT in the space of the given table.
pub fn assemble_fvt(
    doc: &DocumentRecord,
    table: &WordVectorTable,
    variant: FvtVariant,
) -> Result<TextFeatures> {
    let cloud = build_cloud(doc, table)?;
    Ok(CloudSummary::of(&cloud).assemble(variant))
}

/// Feature matrix for a set of documents, with rows aligned to `doc_ids`.
/// Documents that cannot form a cloud are reported in `excluded`.
#[derive(Debug, Clone)]
pub struct FeatureMatrix {
    pub doc_ids: Vec<String>,
    pub matrix: DMatrix<f64>,
    pub variant: FvtVariant,
    pub excluded: Vec<String>,
}

/// Featurize documents against a table. Exclusions (empty or fully
/// out-of-table documents) are collected, not fatal.
pub fn featurize<'a>(
    docs: impl IntoIterator<Item = &'a DocumentRecord>,
    table: &WordVectorTable,
    variant: FvtVariant,
) -> FeatureMatrix {
    let mut doc_ids = Vec::new();
    let mut rows: Vec<TextFeatures> = Vec::new();
    let mut excluded = Vec::new();
    for doc in docs {
        match assemble_fvt(doc, table, variant) {
            Ok(f) => {
                doc_ids.push(doc.id.clone());
                rows.push(f);
            }
            Err(_) => excluded.push(doc.id.clone()),
        }
    }
    let d = variant.len(table.dimension());
    let mut matrix = DMatrix::zeros(rows.len(), d);
    for (i, f) in rows.iter().enumerate() {
        matrix.set_row(i, &f.values.transpose());
    }
    FeatureMatrix {
        doc_ids,
        matrix,
        variant,
        excluded,
    }
}

/// Write a feature matrix as CSV. The first line records the variant, the
/// space label, the word-space dimension and the block layout.
pub fn export_fvt_csv<W: Write>(
    out: &mut W,
    features: &FeatureMatrix,
    space: &str,
    word_dimension: usize,
) -> std::io::Result<()> {
    let layout: Vec<String> = features
        .variant
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            format!(
                "{}:{}..{}",
                b.name(),
                i * word_dimension,
                (i + 1) * word_dimension
            )
        })
        .collect();
    writeln!(
        out,
        "# variant={} space={} d={} layout={}",
        features.variant,
        space,
        word_dimension,
        layout.join(",")
    )?;
    write!(out, "doc_id")?;
    for j in 0..features.matrix.ncols() {
        write!(out, ",f{j}")?;
    }
    writeln!(out)?;
    for (i, id) in features.doc_ids.iter().enumerate() {
        write!(out, "{id}")?;
        for v in features.matrix.row(i).iter() {
            write!(out, ",{v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
