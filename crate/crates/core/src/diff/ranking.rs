//! Rankings: total orders on derivative variables satisfying θu ≥ u and
//! u ≥ v ⟹ θu ≥ θv.

use std::cmp::Ordering;

use super::{Derivative, DiffRing};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankingKind {
    Orderly,
    Elimination,
}

/// A ranking over the derivatives of a ring.
///
/// Both kinds share one comparison scheme: block of the indeterminate first
/// (earlier block is higher; the orderly kind has a single block), then total
/// order, then the derivation multi-index lexicographically with the first
/// derivation heaviest, then the indeterminate's position inside its block
/// (earlier is higher).
#[derive(Debug, Clone)]
pub struct Ranking {
    kind: RankingKind,
    blocks: Vec<Vec<usize>>,
    // indet -> (block index, position within block)
    block_of: Vec<(usize, usize)>,
}

impl Ranking {
    pub fn orderly(ring: &DiffRing) -> Ranking {
        let all: Vec<usize> = (0..ring.num_indeterminates()).collect();
        let block_of = all.iter().map(|&i| (0, i)).collect();
        Ranking { kind: RankingKind::Orderly, blocks: vec![all], block_of }
    }

    /// Elimination ranking from blocks of indeterminate indices, highest
    /// block first. The blocks must partition the indeterminates.
    pub fn elimination(ring: &DiffRing, blocks: Vec<Vec<usize>>) -> Result<Ranking, Error> {
        let l = ring.num_indeterminates();
        let mut block_of = vec![None; l];
        for (bi, block) in blocks.iter().enumerate() {
            for (pos, &indet) in block.iter().enumerate() {
                if indet >= l {
                    return Err(Error::BadRanking(format!("indeterminate index {indet} out of range")));
                }
                if block_of[indet].is_some() {
                    return Err(Error::BadRanking(format!(
                        "indeterminate `{}` appears twice",
                        ring.spec().indeterminates[indet]
                    )));
                }
                block_of[indet] = Some((bi, pos));
            }
        }
        let block_of: Option<Vec<_>> = block_of.into_iter().collect();
        match block_of {
            Some(block_of) => Ok(Ranking { kind: RankingKind::Elimination, blocks, block_of }),
            None => Err(Error::BadRanking("ranking does not cover every indeterminate".into())),
        }
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn compare(&self, a: &Derivative, b: &Derivative) -> Ordering {
        let (ba, pa) = self.block_of[a.indet];
        let (bb, pb) = self.block_of[b.indet];
        // earlier block = higher rank
        if ba != bb {
            return bb.cmp(&ba);
        }
        match a.order().cmp(&b.order()) {
            Ordering::Equal => {}
            other => return other,
        }
        match a.theta.cmp(&b.theta) {
            Ordering::Equal => {}
            other => return other,
        }
        // earlier position in the block = higher rank
        pb.cmp(&pa)
    }
}
