//! Network topologies and milieu construction.

use super::error::ModelError;

/// How grid neighborhoods are shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// The eight surrounding cells.
    Moore,
    /// The four orthogonally adjacent cells.
    VonNeumann,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyKind {
    /// One-dimensional ring; each entity sees `radius` neighbors on either
    /// side. With `2 * radius >= n` indices repeat modulo `n`.
    Ring { radius: usize },
    Grid2D {
        width: usize,
        height: usize,
        neighborhood: Neighborhood,
        wrap: bool,
    },
    /// Explicit adjacency, one neighbor list per entity.
    Explicit(Vec<Vec<usize>>),
}

/// Declarative description of the entity network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologySpec {
    pub kind: TopologyKind,
    pub include_self: bool,
}

impl TopologySpec {
    pub fn ring(radius: usize) -> Self {
        TopologySpec {
            kind: TopologyKind::Ring { radius },
            include_self: false,
        }
    }

    pub fn grid(width: usize, height: usize, neighborhood: Neighborhood, wrap: bool) -> Self {
        TopologySpec {
            kind: TopologyKind::Grid2D {
                width,
                height,
                neighborhood,
                wrap,
            },
            include_self: false,
        }
    }

    pub fn explicit(adjacency: Vec<Vec<usize>>) -> Self {
        TopologySpec {
            kind: TopologyKind::Explicit(adjacency),
            include_self: false,
        }
    }

    pub fn with_include_self(mut self, include_self: bool) -> Self {
        self.include_self = include_self;
        self
    }
}

/// An entity's interaction environment: ordered neighbor indices. Rules
/// address these positionally, so order is significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Milieu {
    neighbors: Vec<usize>,
}

impl Milieu {
    pub fn new(neighbors: Vec<usize>) -> Self {
        Milieu { neighbors }
    }

    pub fn neighbors(&self) -> &[usize] {
        &self.neighbors
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }
}

/// Materializes one milieu per entity from a topology description.
///
/// Ring milieus list left neighbors outermost-first, then right neighbors
/// nearest-first: `[i-r, ..., i-1, i+1, ..., i+r]` modulo `n`. Grid milieus
/// list neighbors in row-major order. With `include_self` the owning index
/// appears at its natural position in that ordering. Unwrapped grids omit
/// out-of-bounds neighbors, so border milieus are shorter.
pub fn build_topology(spec: &TopologySpec, n: usize) -> Result<Vec<Milieu>, ModelError> {
    if n == 0 {
        return Err(ModelError::ZeroEntities);
    }
    match &spec.kind {
        TopologyKind::Ring { radius } => Ok(ring_milieus(*radius, spec.include_self, n)),
        TopologyKind::Grid2D {
            width,
            height,
            neighborhood,
            wrap,
        } => {
            if width * height != n {
                return Err(ModelError::GridSizeMismatch {
                    width: *width,
                    height: *height,
                    entity_count: n,
                });
            }
            Ok(grid_milieus(
                *width,
                *height,
                *neighborhood,
                *wrap,
                spec.include_self,
            ))
        }
        TopologyKind::Explicit(adjacency) => {
            if adjacency.len() != n {
                return Err(ModelError::CountMismatch {
                    what: "explicit adjacency rows",
                    expected: n,
                    found: adjacency.len(),
                });
            }
            let mut milieus = Vec::with_capacity(n);
            for (entity, row) in adjacency.iter().enumerate() {
                if let Some(&bad) = row.iter().find(|&&index| index >= n) {
                    return Err(ModelError::ExplicitIndexOutOfRange {
                        entity,
                        index: bad,
                        entity_count: n,
                    });
                }
                let mut neighbors = row.clone();
                if spec.include_self {
                    neighbors.push(entity);
                }
                milieus.push(Milieu::new(neighbors));
            }
            Ok(milieus)
        }
    }
}

fn ring_milieus(radius: usize, include_self: bool, n: usize) -> Vec<Milieu> {
    (0..n)
        .map(|i| {
            let mut neighbors = Vec::with_capacity(2 * radius + usize::from(include_self));
            for offset in (1..=radius).rev() {
                neighbors.push(modular_offset(i, n, -(offset as i64)));
            }
            if include_self {
                neighbors.push(i);
            }
            for offset in 1..=radius {
                neighbors.push(modular_offset(i, n, offset as i64));
            }
            Milieu::new(neighbors)
        })
        .collect()
}

fn modular_offset(i: usize, n: usize, offset: i64) -> usize {
    (i as i64 + offset).rem_euclid(n as i64) as usize
}

fn grid_milieus(
    width: usize,
    height: usize,
    neighborhood: Neighborhood,
    wrap: bool,
    include_self: bool,
) -> Vec<Milieu> {
    let offsets: &[(i64, i64)] = match (neighborhood, include_self) {
        (Neighborhood::Moore, false) => &[
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ],
        (Neighborhood::Moore, true) => &[
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 0),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ],
        (Neighborhood::VonNeumann, false) => &[(-1, 0), (0, -1), (0, 1), (1, 0)],
        (Neighborhood::VonNeumann, true) => &[(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)],
    };
    let mut milieus = Vec::with_capacity(width * height);
    for row in 0..height as i64 {
        for col in 0..width as i64 {
            let mut neighbors = Vec::with_capacity(offsets.len());
            for (dr, dc) in offsets {
                let (r, c) = (row + dr, col + dc);
                if wrap {
                    let r = r.rem_euclid(height as i64) as usize;
                    let c = c.rem_euclid(width as i64) as usize;
                    neighbors.push(r * width + c);
                } else if r >= 0 && r < height as i64 && c >= 0 && c < width as i64 {
                    neighbors.push(r as usize * width + c as usize);
                }
            }
            milieus.push(Milieu::new(neighbors));
        }
    }
    milieus
}
