//! Dense incidence matrix `zeta(x, y) = [x <= y]` of a cobweb poset.
//!
//! Rows and columns follow the canonical vertex order of
//! [`CobwebPoset::vertices`]. In that order the matrix is upper triangular
//! and the only zeros above the diagonal sit in the same-level diagonal
//! blocks of sizes `F_1, ..., F_n` (the staircase).

use std::fmt::Write as _;

use thiserror::Error;

use crate::poset::{CobwebPoset, PosetError};

/// Default cap on the number of rows of a dense matrix.
pub const DEFAULT_MAX_DIM: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("zeta matrix would have {dim} rows, above the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("matrix has dimension {matrix} but the poset has {poset} vertices")]
    DimensionMismatch { matrix: usize, poset: usize },
    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
    #[error("matrix is not the zeta matrix of any cobweb poset: {0}")]
    NotCobweb(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    dim: usize,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.entries[row * self.dim + col] = value as u8;
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn has_unit_diagonal(&self) -> bool {
        (0..self.dim).all(|i| self.get(i, i) == 1)
    }

    /// One row per line, entries `0`/`1` joined by commas, every row
    /// newline-terminated, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.dim * self.dim * 2);
        for row in self.rows() {
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push(if *e == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, ZetaError> {
        let mut entries = Vec::new();
        let mut dim = None;
        for (i, line) in text.lines().enumerate() {
            let row: Vec<u8> = line
                .split(',')
                .map(|cell| match cell {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    other => Err(ZetaError::Csv {
                        line: i + 1,
                        reason: format!("unexpected entry {other:?}"),
                    }),
                })
                .collect::<Result<_, _>>()?;
            let expected = *dim.get_or_insert(row.len());
            if row.len() != expected {
                return Err(ZetaError::Csv {
                    line: i + 1,
                    reason: format!("row has {} entries, expected {expected}", row.len()),
                });
            }
            entries.extend(row);
        }
        let dim = dim.unwrap_or(0);
        if entries.len() != dim * dim {
            return Err(ZetaError::Csv {
                line: entries.len() / dim.max(1),
                reason: format!("expected {dim} rows for a square matrix"),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Recovers the cobweb poset this matrix represents.
    ///
    /// Levels are read off as the maximal runs of mutually incomparable
    /// consecutive vertices; the result is accepted only if its own zeta
    /// matrix reproduces `self` exactly.
    pub fn to_poset(&self) -> Result<CobwebPoset, ZetaError> {
        if self.dim == 0 {
            return Err(ZetaError::NotCobweb("empty matrix".into()));
        }
        let mut sizes = Vec::new();
        let mut start = 0;
        while start < self.dim {
            let mut end = start + 1;
            while end < self.dim && self.get(start, end) == 0 {
                end += 1;
            }
            sizes.push(end - start);
            start = end;
        }
        let poset = CobwebPoset::from_level_sizes(&sizes)
            .map_err(|_| ZetaError::NotCobweb(format!("level sizes {sizes:?}")))?;
        let rebuilt = zeta_matrix_with_cap(&poset, usize::MAX)?;
        if &rebuilt != self {
            return Err(ZetaError::NotCobweb(
                "relations differ from the cobweb order".into(),
            ));
        }
        Ok(poset)
    }
}

/// Zeta matrix of `poset` with the default size cap.
pub fn zeta_matrix(poset: &CobwebPoset) -> Result<IncidenceMatrix, ZetaError> {
    zeta_matrix_with_cap(poset, DEFAULT_MAX_DIM)
}

pub fn zeta_matrix_with_cap(
    poset: &CobwebPoset,
    max_dim: usize,
) -> Result<IncidenceMatrix, ZetaError> {
    let dim = poset.vertex_count();
    if dim > max_dim {
        return Err(ZetaError::TooLarge { dim, cap: max_dim });
    }
    let verts: Vec<_> = poset.vertices().collect();
    let mut entries = Vec::with_capacity(dim * dim);
    for &x in &verts {
        for &y in &verts {
            entries.push(poset.leq(x, y)? as u8);
        }
    }
    Ok(IncidenceMatrix { dim, entries })
}

/// Checks the staircase: for every `i < j`, `entry(i, j) = 1` iff `v_j`
/// lies on a strictly higher level than `v_i`.
pub fn staircase_check(matrix: &IncidenceMatrix, poset: &CobwebPoset) -> Result<bool, ZetaError> {
    if matrix.dim() != poset.vertex_count() {
        return Err(ZetaError::DimensionMismatch {
            matrix: matrix.dim(),
            poset: poset.vertex_count(),
        });
    }
    let levels: Vec<usize> = poset.vertices().map(|v| v.level).collect();
    for i in 0..matrix.dim() {
        for j in i + 1..matrix.dim() {
            if (matrix.get(i, j) == 1) != (levels[j] > levels[i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Plain-text rendering with blank separators between level blocks; handy
/// for eyeballing the staircase.
pub fn render_blocks(matrix: &IncidenceMatrix, poset: &CobwebPoset) -> String {
    let levels: Vec<usize> = poset.vertices().map(|v| v.level).collect();
    let mut out = String::new();
    for (i, row) in matrix.rows().enumerate() {
        if i > 0 && levels[i] != levels[i - 1] {
            out.push('\n');
        }
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                out.push(if levels[j] != levels[j - 1] { '|' } else { ' ' });
            }
            let _ = write!(out, "{e}");
        }
        out.push('\n');
    }
    out
}
