//! k-Steiner systems on del Pezzo line sets: families of k-line blocks in
//! which every (k-1)-subset with constant pairwise intersection c determines
//! exactly one block.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::inscribed::FanoStructure;
use crate::picard::DivisorClass;
use crate::polytope::GossetPolytope;

/// The five named systems.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SteinerName {
    /// pairs of S_7 lines with intersection 2 (bitangent pairs (l, G(l)))
    SA2S7,
    /// pairs of S_8 lines with intersection 3 (Bertini pairs (l, B(l)))
    SA2S8,
    /// the triplets of the cubic surface: S_6 triangles with intersection 1
    SB3S6,
    /// S_8 triples with pairwise intersection 2, all summing to -3K
    SB3S8,
    /// S_7 quadruples with pairwise intersection 1, all summing to -2K
    SC4S7,
}

impl SteinerName {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SA2S7" => Ok(Self::SA2S7),
            "SA2S8" => Ok(Self::SA2S8),
            "SB3S6" => Ok(Self::SB3S6),
            "SB3S8" => Ok(Self::SB3S8),
            "SC4S7" => Ok(Self::SC4S7),
            other => Err(Error::Domain(format!(
                "unknown Steiner system {other}; expected one of SA2S7, SA2S8, SB3S6, SB3S8, SC4S7"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::SA2S7 => "SA2S7",
            Self::SA2S8 => "SA2S8",
            Self::SB3S6 => "SB3S6",
            Self::SB3S8 => "SB3S8",
            Self::SC4S7 => "SC4S7",
        }
    }

    /// (rank, block size k, constant intersection c, block sum as a multiple
    /// of -K)
    pub fn parameters(&self) -> (usize, usize, i64, i64) {
        match self {
            Self::SA2S7 => (7, 2, 2, 1),
            Self::SA2S8 => (8, 2, 3, 2),
            Self::SB3S6 => (6, 3, 1, 1),
            Self::SB3S8 => (8, 3, 2, 3),
            Self::SC4S7 => (7, 4, 1, 2),
        }
    }
}

/// A k-Steiner system on the lines of S_r: blocks are the maximal c-cliques
/// of size k; every block sums to the same multiple of -K.
///
/// The JSON form is exactly `{"name":..,"k":..,"c":..,"blocks":[[i,..],..]}`.
#[derive(Clone, Debug, Serialize)]
pub struct SteinerSystem {
    pub name: String,
    #[serde(skip)]
    pub r: usize,
    pub k: usize,
    pub c: i64,
    /// sorted line-index tuples, in canonical order
    pub blocks: Vec<Vec<u32>>,
    /// ground set size (all lines of S_r)
    #[serde(skip)]
    pub ground: usize,
}

/// Build one of the five named systems over the matching polytope context.
pub fn build_steiner(pt: &GossetPolytope, name: SteinerName) -> Result<SteinerSystem> {
    let (rank, k, c, kmult) = name.parameters();
    if pt.rank() != rank {
        return Err(Error::RankMismatch(pt.rank(), rank));
    }
    let mut blocks = Vec::new();
    pt.graph(c)
        .for_each_clique(k, |cl| blocks.push(cl.to_vec()));
    let expect_sum = DivisorClass::canonical(rank).scaled(-kmult);
    for b in &blocks {
        let sum: DivisorClass = b.iter().map(|&i| *pt.line(i as usize)).sum();
        if sum != expect_sum {
            return Err(Error::Invariant(format!(
                "block {b:?} sums to {sum}, expected {expect_sum}"
            )));
        }
    }
    Ok(SteinerSystem {
        name: name.as_str().into(),
        r: rank,
        k,
        c,
        blocks,
        ground: pt.lines().len(),
    })
}

/// Outcome of the determinism check: every (k-1)-subset of the ground set
/// with constant pairwise intersection c lies in exactly one block.
#[derive(Clone, Debug, Serialize)]
pub struct DesignReport {
    pub name: String,
    pub pass: bool,
    pub determining_subsets: usize,
    /// first (k-1)-subset covered by != 1 blocks, with its cover count
    pub counterexample: Option<(Vec<u32>, usize)>,
}

pub fn verify_design(pt: &GossetPolytope, sys: &SteinerSystem) -> Result<DesignReport> {
    if pt.rank() != sys.r {
        return Err(Error::RankMismatch(pt.rank(), sys.r));
    }
    // cover counts per determining subset
    let mut cover: HashMap<Vec<u32>, usize> = HashMap::new();
    for b in &sys.blocks {
        for skip in 0..b.len() {
            let sub: Vec<u32> = b
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            *cover.entry(sub).or_default() += 1;
        }
    }
    // every determining subset must appear exactly once; enumerate them as
    // (k-1)-cliques of the degree-c graph (for k = 2 that is every single
    // line: the pairwise condition on one line is vacuous)
    let mut subsets = Vec::new();
    pt.graph(sys.c)
        .for_each_clique(sys.k - 1, |cl| subsets.push(cl.to_vec()));
    let mut counterexample = None;
    for sub in &subsets {
        let n = cover.get(sub).copied().unwrap_or(0);
        if n != 1 {
            counterexample = Some((sub.clone(), n));
            break;
        }
    }
    // and no block may cover a subset outside the determining family
    if counterexample.is_none() {
        let subset_set: std::collections::HashSet<&Vec<u32>> = subsets.iter().collect();
        for sub in cover.keys() {
            if !subset_set.contains(sub) {
                counterexample = Some((sub.clone(), usize::MAX));
                break;
            }
        }
    }
    Ok(DesignReport {
        name: sys.name.clone(),
        pass: counterexample.is_none(),
        determining_subsets: subsets.len(),
        counterexample,
    })
}

/// S(2,3,7) check for a Fano structure: seven blocks on seven points, every
/// pair in exactly one block.
#[derive(Clone, Debug, Serialize)]
pub struct FanoReport {
    pub pass: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<(usize, usize, usize)>,
}

pub fn verify_fano_steiner(blocks: &[[usize; 3]]) -> FanoReport {
    verify_fano_blocks(blocks)
}

fn verify_fano_blocks(blocks: &[[usize; 3]]) -> FanoReport {
    let mut pairs_checked = 0;
    if blocks.len() != 7 {
        return FanoReport {
            pass: false,
            pairs_checked,
            counterexample: None,
        };
    }
    for x in 0..7 {
        for y in x + 1..7 {
            let cover = blocks
                .iter()
                .filter(|b| b.contains(&x) && b.contains(&y))
                .count();
            pairs_checked += 1;
            if cover != 1 {
                return FanoReport {
                    pass: false,
                    pairs_checked,
                    counterexample: Some((x, y, cover)),
                };
            }
        }
    }
    FanoReport {
        pass: true,
        pairs_checked,
        counterexample: None,
    }
}

pub fn verify_fano_structure(fano: &FanoStructure) -> FanoReport {
    verify_fano_blocks(&fano.blocks)
}

/// The root analogue on S_8: any two roots with product 1 close to a third
/// (d_3 = -(d_1 + d_2)), and the triple sums to zero.
pub fn verify_root_triples(pt: &GossetPolytope) -> Result<usize> {
    if pt.rank() != 8 {
        return Err(Error::RankOutOfRange(pt.rank()));
    }
    let roots = pt.roots();
    let mut triples = 0;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if roots.pairing_ij(i, j) != 1 {
                continue;
            }
            let d3 = -(*roots.get(i) + *roots.get(j));
            let t = roots
                .position(&d3)
                .ok_or_else(|| Error::Invariant(format!("-(d1+d2) = {d3} is not a root")))?;
            if roots.pairing_ij(i, t) != 1 || roots.pairing_ij(j, t) != 1 {
                return Err(Error::Invariant(
                    "root triple does not close with product 1".into(),
                ));
            }
            triples += 1;
        }
    }
    Ok(triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bertini, gieser};

    #[test]
    fn parse_names() {
        assert_eq!(SteinerName::parse("sb3s6").unwrap(), SteinerName::SB3S6);
        assert!(SteinerName::parse("SX9S9").is_err());
    }

    #[test]
    fn sa2s7_is_the_28_bitangent_pairs() {
        let pt = GossetPolytope::new(7).unwrap();
        let sys = build_steiner(&pt, SteinerName::SA2S7).unwrap();
        assert_eq!(sys.blocks.len(), 28);
        for b in &sys.blocks {
            let l = pt.line(b[0] as usize);
            assert_eq!(gieser(l).unwrap(), *pt.line(b[1] as usize));
        }
        assert!(verify_design(&pt, &sys).unwrap().pass);
    }

    #[test]
    fn sa2s8_is_the_bertini_matching() {
        let pt = GossetPolytope::new(8).unwrap();
        let sys = build_steiner(&pt, SteinerName::SA2S8).unwrap();
        assert_eq!(sys.blocks.len(), 120);
        for b in &sys.blocks {
            let l = pt.line(b[0] as usize);
            assert_eq!(bertini(l).unwrap(), *pt.line(b[1] as usize));
        }
        assert!(verify_design(&pt, &sys).unwrap().pass);
    }

    #[test]
    fn sb3s6_triplets() {
        let pt = GossetPolytope::new(6).unwrap();
        let sys = build_steiner(&pt, SteinerName::SB3S6).unwrap();
        // independently derived by exhaustive triangle enumeration
        assert_eq!(sys.blocks.len(), 45);
        // far fewer than the 117 blocks of an honest S(2,3,27)
        assert!(sys.blocks.len() < 27 * 26 / 6);
        let report = verify_design(&pt, &sys).unwrap();
        assert!(report.pass);
        assert_eq!(report.determining_subsets, 135);
    }

    #[test]
    fn sb3s8_blocks_sum_to_minus_3k() {
        let pt = GossetPolytope::new(8).unwrap();
        let sys = build_steiner(&pt, SteinerName::SB3S8).unwrap();
        assert_eq!(sys.blocks.len(), 2240);
        assert!(verify_design(&pt, &sys).unwrap().pass);
    }

    #[test]
    fn sc4s7_blocks() {
        let pt = GossetPolytope::new(7).unwrap();
        let sys = build_steiner(&pt, SteinerName::SC4S7).unwrap();
        // exhaustive 4-clique enumeration in the degree-1 graph on 56 lines
        assert_eq!(sys.blocks.len(), 630);
        let report = verify_design(&pt, &sys).unwrap();
        assert!(report.pass);
        // each determining triangle extends uniquely: 630 * 4 = 2520 triangles
        assert_eq!(report.determining_subsets, 2520);
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let pt = GossetPolytope::new(6).unwrap();
        assert!(build_steiner(&pt, SteinerName::SC4S7).is_err());
    }

    #[test]
    fn fano_verifier_accepts_the_canonical_plane() {
        let blocks: [[usize; 3]; 7] = [
            [4, 5, 6],
            [2, 3, 6],
            [0, 1, 6],
            [1, 3, 5],
            [0, 2, 5],
            [1, 2, 4],
            [0, 3, 4],
        ];
        assert!(verify_fano_steiner(&blocks).pass);
    }

    #[test]
    fn fano_verifier_rejects_missing_block() {
        let blocks: [[usize; 3]; 7] = [
            [4, 5, 6],
            [2, 3, 6],
            [0, 1, 6],
            [1, 3, 5],
            [0, 2, 5],
            [1, 2, 4],
            [1, 2, 4], // duplicate instead of [0,3,4]
        ];
        let report = verify_fano_steiner(&blocks);
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn root_triples_close() {
        let pt = GossetPolytope::new(8).unwrap();
        assert_eq!(verify_root_triples(&pt).unwrap(), 6720);
    }

    #[test]
    fn steiner_blocks_are_weyl_stable() {
        // applying a simple reflection maps blocks to blocks
        let pt = GossetPolytope::new(6).unwrap();
        let sys = build_steiner(&pt, SteinerName::SB3S6).unwrap();
        let block_set: std::collections::HashSet<Vec<u32>> = sys.blocks.iter().cloned().collect();
        for d in pt.surface().simple_roots() {
            for b in &sys.blocks {
                let mut img: Vec<u32> = b
                    .iter()
                    .map(|&i| {
                        let refl = pt.line(i as usize).reflect_unchecked(d);
                        pt.lines().position(&refl).unwrap() as u32
                    })
                    .collect();
                img.sort_unstable();
                assert!(block_set.contains(&img));
            }
        }
    }
}
