use serde::{Deserialize, Serialize};

use super::{CodeError, GeneratorMatrix};
use crate::quaternion::QuatDescriptor;
use crate::ring::{FiniteRing, Side};

/// JSON form of a generator matrix:
///
/// ```json
/// {"ring":{"p":3,"r":1,"m":1},"k":1,"n":2,"rows":[["1","1+i"]],"side":"left"}
/// ```
///
/// Entries use the quaternion text syntax. On the right side codewords are
/// `v_j = Σ_i G[i][j]·u_i`, with the message symbols multiplying from the right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub ring: QuatDescriptor,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
    #[serde(default)]
    pub side: Side,
}

impl GeneratorFile {
    pub fn build(&self) -> Result<GeneratorMatrix, CodeError> {
        let ring = self.ring.build()?;
        if self.rows.len() != self.k {
            return Err(CodeError::Shape(format!("k = {} but {} rows given", self.k, self.rows.len())));
        }
        if let Some(row) = self.rows.iter().find(|r| r.len() != self.n) {
            return Err(CodeError::Shape(format!("n = {} but a row has {} entries", self.n, row.len())));
        }
        GeneratorMatrix::parse(ring, &self.rows)
    }

    pub fn from_matrix(g: &GeneratorMatrix, side: Side) -> Self {
        let ring = g.ring();
        GeneratorFile {
            ring: ring.descriptor(),
            k: g.k(),
            n: g.n(),
            rows: g.rows().iter().map(|r| r.iter().map(|x| ring.format_element(x)).collect()).collect(),
            side,
        }
    }
}
