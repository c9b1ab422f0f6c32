//! The finite cobweb poset `P_n`.
//!
//! Level `s` (1-based) holds `F_s` vertices. Every vertex of level `s` is
//! covered by every vertex of level `s + 1`, and the order is the transitive
//! closure of those covers, so `x < y` exactly when `x.level < y.level`.
//! Only the level sizes are stored; relations are computed on demand.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

/// Deepest poset we build. `F_{n+2} - 1` (the vertex count) must fit in a `u64`.
pub const MAX_DEPTH: usize = 90;

/// Depth past which materializing every vertex gets expensive.
pub const LARGE_DEPTH_WARNING: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("depth {0} exceeds the supported maximum of {MAX_DEPTH}")]
    DepthTooLarge(usize),
    #[error("vertex {vertex} does not belong to a cobweb poset of depth {depth}")]
    InvalidVertex { vertex: Vertex, depth: usize },
    #[error("level {level} is outside 1..={depth}")]
    InvalidLevel { level: usize, depth: usize },
}

/// A poset element: `index` is its 0-based position within `level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub level: usize,
    pub index: usize,
}

impl Vertex {
    pub const ROOT: Vertex = Vertex { level: 1, index: 0 };

    pub const fn new(level: usize, index: usize) -> Self {
        Self { level, index }
    }

    /// Graphviz node identifier, `v{level}_{index}`.
    pub fn dot_id(&self) -> String {
        format!("v{}_{}", self.level, self.index)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.index)
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((level, index): (usize, usize)) -> Self {
        Self { level, index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobwebPoset {
    /// `level_sizes[s - 1] = F_s`.
    level_sizes: Vec<usize>,
    /// `offsets[s - 1]` is the canonical position of `(s, 0)`.
    offsets: Vec<usize>,
}

/// Builds `P_depth`.
pub fn build_cobweb(depth: usize) -> Result<CobwebPoset, PosetError> {
    CobwebPoset::new(depth)
}

impl CobwebPoset {
    pub fn new(depth: usize) -> Result<Self, PosetError> {
        if depth == 0 {
            return Err(PosetError::ZeroDepth);
        }
        if depth > MAX_DEPTH {
            return Err(PosetError::DepthTooLarge(depth));
        }
        let mut level_sizes = Vec::with_capacity(depth);
        let (mut prev, mut cur) = (0usize, 1usize);
        for _ in 0..depth {
            level_sizes.push(cur);
            let next = prev + cur;
            prev = cur;
            cur = next;
        }
        Ok(Self::from_level_sizes_unchecked(level_sizes))
    }

    fn from_level_sizes_unchecked(level_sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(level_sizes.len());
        let mut acc = 0usize;
        for &size in &level_sizes {
            offsets.push(acc);
            acc += size;
        }
        Self {
            level_sizes,
            offsets,
        }
    }

    pub fn depth(&self) -> usize {
        self.level_sizes.len()
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn level_size(&self, level: usize) -> Result<usize, PosetError> {
        self.check_level(level)?;
        Ok(self.level_sizes[level - 1])
    }

    /// Total number of vertices, `F_1 + ... + F_n`.
    pub fn vertex_count(&self) -> usize {
        self.offsets.last().unwrap() + self.level_sizes.last().unwrap()
    }

    /// Number of Hasse-diagram edges, `sum F_s F_{s+1}`.
    pub fn cover_count(&self) -> u128 {
        self.level_sizes
            .windows(2)
            .map(|w| w[0] as u128 * w[1] as u128)
            .sum()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.level >= 1 && v.level <= self.depth() && v.index < self.level_sizes[v.level - 1]
    }

    fn check(&self, v: Vertex) -> Result<(), PosetError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(PosetError::InvalidVertex {
                vertex: v,
                depth: self.depth(),
            })
        }
    }

    fn check_level(&self, level: usize) -> Result<(), PosetError> {
        if level >= 1 && level <= self.depth() {
            Ok(())
        } else {
            Err(PosetError::InvalidLevel {
                level,
                depth: self.depth(),
            })
        }
    }

    /// `x <= y`.
    pub fn leq(&self, x: Vertex, y: Vertex) -> Result<bool, PosetError> {
        self.check(x)?;
        self.check(y)?;
        Ok(x == y || x.level < y.level)
    }

    /// `y` covers `x`.
    pub fn is_cover(&self, x: Vertex, y: Vertex) -> Result<bool, PosetError> {
        self.check(x)?;
        self.check(y)?;
        Ok(y.level == x.level + 1)
    }

    /// Index range of the vertices at `level`.
    pub fn level_indices(&self, level: usize) -> Result<Range<usize>, PosetError> {
        Ok(0..self.level_size(level)?)
    }

    /// Vertices covering `v`: all of level `v.level + 1` (empty at the top).
    pub fn upper_covers(&self, v: Vertex) -> Result<impl Iterator<Item = Vertex>, PosetError> {
        self.check(v)?;
        let next = v.level + 1;
        let size = self.level_sizes.get(v.level).copied().unwrap_or(0);
        Ok((0..size).map(move |index| Vertex::new(next, index)))
    }

    /// All vertices in canonical order: ascending level, then ascending index.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.level_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &size)| (0..size).map(move |index| Vertex::new(i + 1, index)))
    }

    /// Canonical position of `v`.
    pub fn position(&self, v: Vertex) -> Result<usize, PosetError> {
        self.check(v)?;
        Ok(self.offsets[v.level - 1] + v.index)
    }

    /// Vertex at canonical position `pos`, if any.
    pub fn vertex_at(&self, pos: usize) -> Option<Vertex> {
        // offsets is sorted and strictly increasing.
        let level_idx = match self.offsets.binary_search(&pos) {
            Ok(i) => i,
            Err(0) => return None,
            Err(i) => i - 1,
        };
        let index = pos - self.offsets[level_idx];
        (index < self.level_sizes[level_idx]).then_some(Vertex::new(level_idx + 1, index))
    }

    /// Rebuilds a cobweb poset from level sizes, checking they are `F_1..F_n`.
    pub fn from_level_sizes(sizes: &[usize]) -> Result<Self, PosetError> {
        let expected = Self::new(sizes.len())?;
        if expected.level_sizes != sizes {
            // Report the first level whose size is off.
            let level = expected
                .level_sizes
                .iter()
                .zip(sizes)
                .position(|(a, b)| a != b)
                .unwrap()
                + 1;
            return Err(PosetError::InvalidLevel {
                level,
                depth: sizes.len(),
            });
        }
        Ok(expected)
    }
}
