//! Inscribed polytopes of (r-4)_21: the b-degree n-simplexes A_n^r(b) with
//! their centers and cornered/uncornered classification, the A_4..A_7
//! decomposition theorems, Fano structures, inscribed crosspolytopes, and
//! hypercubes.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bitset::LineSet;
use crate::catalog::{bertini, enumerate_lines, gieser, gieser_at, skew_witness};
use crate::error::{Error, Result};
use crate::picard::DivisorClass;
use crate::polytope::GossetPolytope;

/// An inscribed b-degree n-simplex: n+1 lines with constant pairwise
/// intersection b, stored as sorted indices into the line catalog, with the
/// vertex-sum center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InscribedSimplex {
    rank: usize,
    degree: i64,
    vertices: Vec<u32>,
    center: DivisorClass,
}

impl InscribedSimplex {
    /// Build from catalog indices, validating the constant-intersection
    /// condition and the center grading.
    pub fn new(pt: &GossetPolytope, degree: i64, vertices: &[u32]) -> Result<Self> {
        let mut verts = vertices.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != vertices.len() {
            return Err(Error::Domain("repeated vertex in simplex".into()));
        }
        for (a, &i) in verts.iter().enumerate() {
            if i as usize >= pt.lines().len() {
                return Err(Error::Domain(format!("line index {i} out of range")));
            }
            for &j in verts.iter().skip(a + 1) {
                let p = pt.lines().pairing_ij(i as usize, j as usize);
                if p != degree {
                    return Err(Error::Domain(format!(
                        "vertices {i},{j} pair to {p}, not {degree}"
                    )));
                }
            }
        }
        let center: DivisorClass = verts.iter().map(|&i| *pt.line(i as usize)).sum();
        let s = Self {
            rank: pt.rank(),
            degree,
            vertices: verts,
            center,
        };
        s.check_center_grading()?;
        Ok(s)
    }

    fn from_clique(pt: &GossetPolytope, degree: i64, clique: &[u32]) -> Self {
        let center: DivisorClass = clique.iter().map(|&i| *pt.line(i as usize)).sum();
        let s = Self {
            rank: pt.rank(),
            degree,
            vertices: clique.to_vec(),
            center,
        };
        debug_assert!(s.check_center_grading().is_ok());
        s
    }

    /// `center.K = -(n+1)`, and for degree 1 also
    /// `center^2 = (n+1)^2 - 2(n+1)`.
    fn check_center_grading(&self) -> Result<()> {
        let m = self.vertices.len() as i64;
        if self.center.anticanonical_degree() != m {
            return Err(Error::Invariant(format!(
                "center {} has K-degree {} for {m} vertices",
                self.center,
                self.center.anticanonical_degree()
            )));
        }
        if self.degree == 1 && self.center.self_intersection() != m * m - 2 * m {
            return Err(Error::Invariant(format!(
                "degree-1 center {} has norm {}, expected {}",
                self.center,
                self.center.self_intersection(),
                m * m - 2 * m
            )));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The common pairwise intersection b.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Simplex dimension n (one less than the vertex count).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn center(&self) -> &DivisorClass {
        &self.center
    }

    pub fn vertex_classes(&self, pt: &GossetPolytope) -> Vec<DivisorClass> {
        self.vertices
            .iter()
            .map(|&i| *pt.line(i as usize))
            .collect()
    }
}

/// The feasibility table for (r, n, b): which inscribed b-degree n-simplexes
/// exist.
pub fn feasible(r: usize, n: usize, b: i64) -> bool {
    match b {
        1 => n == 1 || (n == 2 && r >= 6) || (n == 3 && r >= 7) || ((4..=7).contains(&n) && r == 8),
        2 => (r == 7 && n == 1) || (r == 8 && (1..=2).contains(&n)),
        3 => r == 8 && n == 1,
        _ => false,
    }
}

fn check_feasible(pt: &GossetPolytope, n: usize, b: i64) -> Result<()> {
    if feasible(pt.rank(), n, b) {
        Ok(())
    } else {
        Err(Error::InfeasibleTriple { r: pt.rank(), n, b })
    }
}

/// Visit every inscribed b-degree n-simplex once, in canonical
/// (lexicographic vertex) order.
pub fn enumerate_inscribed<F: FnMut(InscribedSimplex)>(
    pt: &GossetPolytope,
    n: usize,
    b: i64,
    mut f: F,
) -> Result<()> {
    check_feasible(pt, n, b)?;
    pt.graph(b)
        .for_each_clique(n + 1, |cl| f(InscribedSimplex::from_clique(pt, b, cl)));
    Ok(())
}

/// Materialized variant of [`enumerate_inscribed`] for small families.
pub fn collect_inscribed(pt: &GossetPolytope, n: usize, b: i64) -> Result<Vec<InscribedSimplex>> {
    let mut out = Vec::new();
    enumerate_inscribed(pt, n, b, |s| out.push(s))?;
    Ok(out)
}

pub fn count_inscribed(pt: &GossetPolytope, n: usize, b: i64) -> Result<u64> {
    check_feasible(pt, n, b)?;
    Ok(pt.graph(b).count_cliques(n + 1))
}

// Centers are accumulated as packed sums: coefficient i of the running sum
// lives in bits 13i..13i+13 with a per-line offset of 64, so vertex sums of
// equal length compare equal iff the classes are equal. Line coefficients
// are bounded by 6 in absolute value, so 8 summands stay far below the
// field width.
fn pack_line(d: &DivisorClass) -> u128 {
    let mut v: u128 = 0;
    for (i, &c) in d.coeffs().iter().enumerate() {
        debug_assert!(c.unsigned_abs() < 64);
        v |= (((c + 64) as u128) & 0x1FFF) << (13 * i);
    }
    v
}

fn unpack_center(rank: usize, k: usize, v: u128) -> DivisorClass {
    let mut coeffs = [0i64; 9];
    for (i, c) in coeffs.iter_mut().enumerate().take(rank + 1) {
        *c = ((v >> (13 * i)) & 0x1FFF) as i64 - 64 * k as i64;
    }
    DivisorClass::new(rank, &coeffs[..=rank]).unwrap()
}

/// The set of distinct centers of all inscribed b-degree n-simplexes,
/// canonically sorted. Streams the clique enumeration in parallel and never
/// materializes the simplexes.
pub fn centers(pt: &GossetPolytope, n: usize, b: i64) -> Result<Vec<DivisorClass>> {
    check_feasible(pt, n, b)?;
    let packed: Vec<u128> = pt.lines().classes().iter().map(pack_line).collect();
    let set = pt.graph(b).par_fold_cliques(
        n + 1,
        HashSet::<u128>::new,
        |acc, cl| {
            let mut s: u128 = 0;
            for &i in cl {
                s += packed[i as usize];
            }
            acc.insert(s);
        },
        |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        },
    );
    let mut out: Vec<DivisorClass> = set
        .into_iter()
        .map(|v| unpack_center(pt.rank(), n + 1, v))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Search-based cornered test: the lines whose vertex figure contains the
/// whole simplex (all of them; unique only for cornered A_3^8(1)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CorneredTag {
    Cornered { corner_lines: Vec<u32> },
    Uncornered,
}

pub fn classify(pt: &GossetPolytope, simplex: &InscribedSimplex) -> CorneredTag {
    let mut common = LineSet::all(pt.lines().len());
    for &v in simplex.vertices() {
        common &= *pt.vertex_figure(v as usize);
    }
    if common.is_empty() {
        CorneredTag::Uncornered
    } else {
        CorneredTag::Cornered {
            corner_lines: common.iter().map(|i| i as u32).collect(),
        }
    }
}

/// The two-orbit dichotomy for A_3^8(1): a cornered simplex corresponds to a
/// root (`center + 4K = 2d`), an uncornered one to a skew 8-line
/// (`3 center + 4K`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum A3Dichotomy {
    Cornered { line: u32, root: DivisorClass },
    Uncornered { companion: DivisorClass },
}

fn expect_a381(simplex: &InscribedSimplex) -> Result<()> {
    if simplex.rank() == 8 && simplex.dim() == 3 && simplex.degree() == 1 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "expected an inscribed 1-degree 3-simplex of S_8, got (r={}, n={}, b={})",
            simplex.rank(),
            simplex.dim(),
            simplex.degree()
        )))
    }
}

/// Classify an A_3^8(1) by vertex-figure search, cross-validated against the
/// algebraic center test; disagreement is an internal invariant failure.
pub fn classify_a3(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<A3Dichotomy> {
    expect_a381(simplex)?;
    let d = *simplex.center();
    let k4 = DivisorClass::canonical(8).scaled(4);
    let algebraic_root = (d + k4)
        .divided_exact(2)
        .filter(|half| pt.roots().contains(half));
    let search = classify(pt, simplex);
    match (search, algebraic_root) {
        (CorneredTag::Cornered { corner_lines }, Some(root)) => {
            if corner_lines.len() != 1 {
                return Err(Error::Invariant(format!(
                    "cornered A3 with {} cornering lines",
                    corner_lines.len()
                )));
            }
            let line = corner_lines[0];
            let formula = DivisorClass::canonical(8)
                + d.divided_exact(2).ok_or_else(|| {
                    Error::Invariant(format!("cornered A3 center {d} is not even"))
                })?;
            if *pt.line(line as usize) != formula {
                return Err(Error::Invariant(format!(
                    "cornering line search found {} but K + D/2 = {formula}",
                    pt.line(line as usize)
                )));
            }
            Ok(A3Dichotomy::Cornered { line, root })
        }
        (CorneredTag::Uncornered, None) => {
            let companion = d.scaled(3) + k4;
            skew_witness(pt.lines(), &companion, 8)?;
            Ok(A3Dichotomy::Uncornered { companion })
        }
        (search, algebraic) => Err(Error::Invariant(format!(
            "A3 classification mismatch at center {d}: search says {}, algebra says {}",
            match search {
                CorneredTag::Cornered { .. } => "cornered",
                CorneredTag::Uncornered => "uncornered",
            },
            if algebraic.is_some() {
                "cornered"
            } else {
                "uncornered"
            },
        ))),
    }
}

/// The unique cornering line `l = K + center/2` of a cornered A_3^8(1).
pub fn cornering_line(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<u32> {
    match classify_a3(pt, simplex)? {
        A3Dichotomy::Cornered { line, .. } => Ok(line),
        A3Dichotomy::Uncornered { .. } => Err(Error::NotCornered),
    }
}

/// Replacing any one vertex of a cornered A_3^8(1) by a fifth common
/// 1-neighbor must break the cornering.
pub fn swap_breaks_cornering(
    pt: &GossetPolytope,
    simplex: &InscribedSimplex,
    l5: u32,
) -> Result<()> {
    expect_a381(simplex)?;
    if cornering_line(pt, simplex).is_err() {
        return Err(Error::NotCornered);
    }
    for &v in simplex.vertices() {
        if pt.lines().pairing_ij(v as usize, l5 as usize) != 1 {
            return Err(Error::Domain(format!(
                "line {l5} does not pair to 1 with {v}"
            )));
        }
    }
    for drop in 0..4 {
        let verts: Vec<u32> = simplex
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &v)| v)
            .chain(std::iter::once(l5))
            .collect();
        let swapped = InscribedSimplex::new(pt, 1, &verts)?;
        if let A3Dichotomy::Cornered { .. } = classify_a3(pt, &swapped)? {
            return Err(Error::Invariant(format!(
                "swap {} -> {l5} stayed cornered",
                simplex.vertices()[drop]
            )));
        }
    }
    Ok(())
}

/// The four skew edges induced by an uncornered A_3^8(1), together with the
/// 7-simplex they span.
#[derive(Clone, Debug)]
pub struct SkewEdgeFamily {
    /// `edges[t]` comes from the 3-subset omitting vertex `t`; each pair of
    /// line indices is ascending.
    pub edges: [(u32, u32); 4],
    /// the eight lines, sorted; a 0-degree 7-simplex
    pub seven_simplex: [u32; 8],
    /// `3 center + 4K`, the center of the 7-simplex
    pub center: DivisorClass,
}

pub fn skew_edges_of_uncornered(
    pt: &GossetPolytope,
    simplex: &InscribedSimplex,
) -> Result<SkewEdgeFamily> {
    let companion = match classify_a3(pt, simplex)? {
        A3Dichotomy::Uncornered { companion } => companion,
        A3Dichotomy::Cornered { .. } => return Err(Error::NotUncornered),
    };
    let k = DivisorClass::canonical(8);
    let mut edges = [(0u32, 0u32); 4];
    let mut all = Vec::with_capacity(8);
    for (t, edge) in edges.iter_mut().enumerate() {
        let sum: DivisorClass = simplex
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != t)
            .map(|(_, &v)| *pt.line(v as usize))
            .sum::<DivisorClass>()
            + k;
        let w = skew_witness(pt.lines(), &sum, 2)?;
        *edge = (w[0] as u32, w[1] as u32);
        all.extend([w[0] as u32, w[1] as u32]);
    }
    let mut seven = all.clone();
    seven.sort_unstable();
    seven.dedup();
    if seven.len() != 8 {
        return Err(Error::Invariant(
            "skew edges are not eight distinct lines".into(),
        ));
    }
    for (a, &i) in seven.iter().enumerate() {
        for &j in seven.iter().skip(a + 1) {
            if pt.lines().pairing_ij(i as usize, j as usize) != 0 {
                return Err(Error::Invariant(
                    "skew-edge lines are not pairwise disjoint".into(),
                ));
            }
        }
    }
    let total: DivisorClass = seven.iter().map(|&i| *pt.line(i as usize)).sum();
    if total != companion {
        return Err(Error::Invariant(format!(
            "7-simplex center {total} differs from 3D + 4K = {companion}"
        )));
    }
    Ok(SkewEdgeFamily {
        edges,
        seven_simplex: seven.try_into().unwrap(),
        center: companion,
    })
}

/// Inverse of [`skew_edges_of_uncornered`]: rebuild the uncornered A_3^8(1)
/// from a 7-simplex and four pairwise-skew edges pairing up its vertices:
/// `l_{a_i} = (D_1 - K)/3 - a_i`.
pub fn uncornered_from_skew_edges(
    pt: &GossetPolytope,
    seven_simplex: &[u32; 8],
    edges: &[(u32, u32); 4],
) -> Result<InscribedSimplex> {
    let simplex_set: HashSet<u32> = seven_simplex.iter().copied().collect();
    let mut seen = HashSet::new();
    for &(a, b) in edges {
        if !simplex_set.contains(&a) || !simplex_set.contains(&b) {
            return Err(Error::Domain("edge endpoint outside the 7-simplex".into()));
        }
        if !seen.insert(a) || !seen.insert(b) {
            return Err(Error::Domain(
                "edges do not pair up distinct vertices".into(),
            ));
        }
    }
    for (x, &i) in seven_simplex.iter().enumerate() {
        for &j in seven_simplex.iter().skip(x + 1) {
            if pt.lines().pairing_ij(i as usize, j as usize) != 0 {
                return Err(Error::Domain(
                    "vertex set is not a 0-degree 7-simplex".into(),
                ));
            }
        }
    }
    let k = DivisorClass::canonical(8);
    let d1: DivisorClass = seven_simplex.iter().map(|&i| *pt.line(i as usize)).sum();
    let base = (d1 - k)
        .divided_exact(3)
        .ok_or_else(|| Error::Invariant(format!("(D1 - K)/3 is not integral for D1 = {d1}")))?;
    let mut verts = Vec::with_capacity(4);
    for &(a, b) in edges {
        let la = base - (*pt.line(a as usize) + *pt.line(b as usize));
        let idx = pt
            .lines()
            .position(&la)
            .ok_or_else(|| Error::Invariant(format!("(D1 - K)/3 - a_i = {la} is not a line")))?;
        verts.push(idx as u32);
    }
    let simplex = InscribedSimplex::new(pt, 1, &verts)?;
    let expect = (d1 - k.scaled(4))
        .divided_exact(3)
        .ok_or_else(|| Error::Invariant(format!("(D1 - 4K)/3 is not integral for D1 = {d1}")))?;
    if *simplex.center() != expect {
        return Err(Error::Invariant(
            "rebuilt simplex has the wrong center".into(),
        ));
    }
    Ok(simplex)
}

/// Decomposition of an A_4^8(1) center: `D = A_D + l_D` with `A_D` a
/// cornered-A_3 center and `l_D` the common line of every simplex with this
/// center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A4Decomposition {
    pub a3_center: DivisorClass,
    /// index of the common line `l_D`
    pub line: u32,
    /// index of the cornering line of `A_D`; the ordered pair
    /// `(corner_line, line)` pairs to 1
    pub corner_line: u32,
}

pub fn decompose_a4_center(pt: &GossetPolytope, d: &DivisorClass) -> Result<A4Decomposition> {
    if d.rank() != 8 || d.anticanonical_degree() != 5 || d.self_intersection() != 15 {
        return Err(Error::Domain(format!("{d} is not an A_4^8(1) center")));
    }
    let k2 = DivisorClass::canonical(8).scaled(2);
    let mut found = None;
    for li in 0..pt.lines().len() {
        let l = pt.line(li);
        if let Some(half) = (*d - *l + k2).divided_exact(2) {
            if let Some(ci) = pt.lines().position(&half) {
                if found.is_some() {
                    return Err(Error::Invariant(format!(
                        "A4 center {d} decomposes in more than one way"
                    )));
                }
                found = Some(A4Decomposition {
                    a3_center: *d - *l,
                    line: li as u32,
                    corner_line: ci as u32,
                });
            }
        }
    }
    let dec = found.ok_or_else(|| Error::Domain(format!("{d} is not an A_4^8(1) center")))?;
    if pt
        .lines()
        .pairing_ij(dec.corner_line as usize, dec.line as usize)
        != 1
    {
        return Err(Error::Invariant(format!(
            "A4 decomposition of {d}: corner and common line do not pair to 1"
        )));
    }
    Ok(dec)
}

/// Adjoin `G_{l_a}(l_b)` for the skew 2-line of the first 3-face of an
/// uncornered A_3^8(1), producing an A_4^8(1); the cornered 4-subset is the
/// chosen face plus the new line. Returns the simplex and the adjoined
/// index.
pub fn extend_uncornered_a3_to_a4(
    pt: &GossetPolytope,
    simplex: &InscribedSimplex,
) -> Result<(InscribedSimplex, u32)> {
    if !matches!(classify_a3(pt, simplex)?, A3Dichotomy::Uncornered { .. }) {
        return Err(Error::NotUncornered);
    }
    let k = DivisorClass::canonical(8);
    let face: Vec<u32> = simplex.vertices()[..3].to_vec();
    let sum: DivisorClass = face
        .iter()
        .map(|&v| *pt.line(v as usize))
        .sum::<DivisorClass>()
        + k;
    let w = skew_witness(pt.lines(), &sum, 2)?;
    let (la, lb) = (*pt.line(w[0]), *pt.line(w[1]));
    let g = gieser_at(&la, &lb)?;
    let gi = pt
        .lines()
        .position(&g)
        .ok_or_else(|| Error::Invariant(format!("Gieser image {g} is not a line")))?
        as u32;
    let mut verts = simplex.vertices().to_vec();
    verts.push(gi);
    let a4 = InscribedSimplex::new(pt, 1, &verts)?;
    // the chosen face plus the new vertex must be the cornered 4-subset
    let mut quad = face;
    quad.push(gi);
    let cornered = InscribedSimplex::new(pt, 1, &quad)?;
    if !matches!(classify_a3(pt, &cornered)?, A3Dichotomy::Cornered { .. }) {
        return Err(Error::Invariant(
            "adjoined Gieser vertex did not corner the chosen face".into(),
        ));
    }
    Ok((a4, gi))
}

/// The Gieser dual `{G_l(l_i)}` of a cornered A_3^8(1); shares the cornering
/// line, and applying it twice returns the original simplex.
pub fn gieser_dual(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<InscribedSimplex> {
    let line = cornering_line(pt, simplex)?;
    let l = *pt.line(line as usize);
    let verts: Result<Vec<u32>> = simplex
        .vertices()
        .iter()
        .map(|&v| {
            let img = gieser_at(&l, pt.line(v as usize))?;
            pt.lines()
                .position(&img)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Invariant(format!("Gieser image {img} is not a line")))
        })
        .collect();
    InscribedSimplex::new(pt, 1, &verts?)
}

/// Decomposition of an A_5^8(1) center: `D + 3K` is a skew 3-line with its
/// unique witness (the three cornering lines of the simplexes' cornered
/// faces).
#[derive(Clone, Debug)]
pub struct A5Decomposition {
    pub skew3: DivisorClass,
    pub witness: [u32; 3],
}

pub fn decompose_a5_center(pt: &GossetPolytope, d: &DivisorClass) -> Result<A5Decomposition> {
    if d.rank() != 8 || d.anticanonical_degree() != 6 || d.self_intersection() != 24 {
        return Err(Error::Domain(format!("{d} is not an A_5^8(1) center")));
    }
    let skew3 = *d + DivisorClass::canonical(8).scaled(3);
    let w = skew_witness(pt.lines(), &skew3, 3)?;
    Ok(A5Decomposition {
        skew3,
        witness: [w[0] as u32, w[1] as u32, w[2] as u32],
    })
}

/// All cornered 4-subsets of a degree-1 simplex, as sorted vertex-position
/// sets (positions into `simplex.vertices()`).
fn cornered_faces(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<Vec<Vec<usize>>> {
    let verts = simplex.vertices();
    let m = verts.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for e in c + 1..m {
                    let idx = [a, b, c, e];
                    let quad: Vec<u32> = idx.iter().map(|&t| verts[t]).collect();
                    let face = InscribedSimplex::new(pt, 1, &quad)?;
                    if matches!(classify_a3(pt, &face)?, A3Dichotomy::Cornered { .. }) {
                        out.push(idx.to_vec());
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The triple-cornered structure of an A_5^8(1): exactly three cornered
/// faces whose complements partition the six vertices (the blocks
/// {1,2,3,4}, {1,2,5,6}, {3,4,5,6} under relabeling), with cornering lines
/// summing to `D + 3K` and matching the skew 3-line witness.
#[derive(Clone, Debug)]
pub struct A5Structure {
    /// vertex positions (into the simplex) of the three cornered faces
    pub faces: [[usize; 4]; 3],
    /// cornering line indices, aligned with `faces`
    pub corner_lines: [u32; 3],
}

pub fn a5_structure(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<A5Structure> {
    if simplex.rank() != 8 || simplex.dim() != 5 || simplex.degree() != 1 {
        return Err(Error::Domain("expected an A_5^8(1)".into()));
    }
    let faces = cornered_faces(pt, simplex)?;
    if faces.len() != 3 {
        return Err(Error::Invariant(format!(
            "A5 has {} cornered faces, expected 3",
            faces.len()
        )));
    }
    // pairwise sharing two vertices <=> the complements (2-sets) partition 0..6
    let mut complement_union: Vec<usize> = Vec::new();
    for f in &faces {
        complement_union.extend((0..6).filter(|t| !f.contains(t)));
    }
    complement_union.sort_unstable();
    if complement_union != (0..6).collect::<Vec<_>>() {
        return Err(Error::Invariant(
            "A5 cornered faces do not realize the block pattern".into(),
        ));
    }
    let mut corner_lines = [0u32; 3];
    let mut sum = DivisorClass::zero(8);
    for (t, f) in faces.iter().enumerate() {
        let quad: Vec<u32> = f.iter().map(|&p| simplex.vertices()[p]).collect();
        let face = InscribedSimplex::new(pt, 1, &quad)?;
        corner_lines[t] = cornering_line(pt, &face)?;
        sum = sum + *pt.line(corner_lines[t] as usize);
    }
    let dec = decompose_a5_center(pt, simplex.center())?;
    if sum != dec.skew3 {
        return Err(Error::Invariant(
            "cornering lines of the A5 faces do not sum to D + 3K".into(),
        ));
    }
    let mut got: Vec<u32> = corner_lines.to_vec();
    got.sort_unstable();
    let mut want = dec.witness.to_vec();
    want.sort_unstable();
    if got != want {
        return Err(Error::Invariant(
            "cornering lines differ from the skew 3-line witness".into(),
        ));
    }
    Ok(A5Structure {
        faces: [
            faces[0].clone().try_into().unwrap(),
            faces[1].clone().try_into().unwrap(),
            faces[2].clone().try_into().unwrap(),
        ],
        corner_lines,
    })
}

/// The canonical cornered-quadruple pattern of the seven-line lemma, on
/// labels 0..6.
const FANO_CORNERED_PATTERN: [[usize; 4]; 7] = [
    [0, 1, 2, 3],
    [0, 1, 4, 5],
    [2, 3, 4, 5],
    [0, 2, 4, 6],
    [1, 3, 4, 6],
    [0, 3, 5, 6],
    [1, 2, 5, 6],
];

/// Fano structure of an A_6^8(1): the seven cornered faces, their complement
/// Fano blocks (a Steiner system S(2,3,7)), the cornering lines, and a
/// relabeling realizing the canonical pattern.
#[derive(Clone, Debug, Serialize)]
pub struct FanoStructure {
    /// the seven lines (sorted catalog indices)
    pub lines: [u32; 7],
    /// Fano blocks as positions into `lines`, each sorted, blocks sorted
    pub blocks: [[usize; 3]; 7],
    /// cornering line of the complement face of each block
    pub corner_lines: [u32; 7],
    /// `labeling[label] = position` realizing the canonical cornered
    /// pattern on labels
    pub labeling: [usize; 7],
    /// `2D + 7K`, the skew 7-line formed by the cornering lines
    pub skew7: DivisorClass,
}

pub fn fano_structure(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<FanoStructure> {
    if simplex.rank() != 8 || simplex.dim() != 6 || simplex.degree() != 1 {
        return Err(Error::Domain("expected an A_6^8(1)".into()));
    }
    let faces = cornered_faces(pt, simplex)?;
    if faces.len() != 7 {
        return Err(Error::Invariant(format!(
            "A6 has {} cornered faces, expected 7",
            faces.len()
        )));
    }
    let mut blocks: Vec<[usize; 3]> = faces
        .iter()
        .map(|f| {
            let b: Vec<usize> = (0..7).filter(|t| !f.contains(t)).collect();
            [b[0], b[1], b[2]]
        })
        .collect();
    blocks.sort_unstable();
    // S(2,3,7): every pair of labels in exactly one block
    for x in 0..7 {
        for y in x + 1..7 {
            let cover = blocks
                .iter()
                .filter(|b| b.contains(&x) && b.contains(&y))
                .count();
            if cover != 1 {
                return Err(Error::Invariant(format!(
                    "pair ({x},{y}) lies in {cover} Fano blocks"
                )));
            }
        }
    }
    // cornering line per block, via the complement face
    let mut corner_lines = [0u32; 7];
    let mut sum = DivisorClass::zero(8);
    for (t, b) in blocks.iter().enumerate() {
        let quad: Vec<u32> = (0..7)
            .filter(|p| !b.contains(p))
            .map(|p| simplex.vertices()[p])
            .collect();
        let face = InscribedSimplex::new(pt, 1, &quad)?;
        corner_lines[t] = cornering_line(pt, &face)?;
        sum = sum + *pt.line(corner_lines[t] as usize);
    }
    let skew7 = simplex.center().scaled(2) + DivisorClass::canonical(8).scaled(7);
    if sum != skew7 {
        return Err(Error::Invariant(
            "cornering lines of the A6 faces do not sum to 2D + 7K".into(),
        ));
    }
    // the seven cornering lines are exactly the disjoint witness of 2D + 7K
    let witness = skew_witness(pt.lines(), &skew7, 7)?;
    let mut sorted_corners: Vec<usize> = corner_lines.iter().map(|&i| i as usize).collect();
    sorted_corners.sort_unstable();
    if sorted_corners != witness {
        return Err(Error::Invariant(
            "A6 cornering lines differ from the skew 7-line witness".into(),
        ));
    }
    let face_sets: HashSet<Vec<usize>> = faces.iter().cloned().collect();
    let labeling = relabel_to_pattern(&face_sets).ok_or_else(|| {
        Error::Invariant("A6 cornered faces do not realize the canonical pattern".into())
    })?;
    Ok(FanoStructure {
        lines: simplex.vertices().to_vec().try_into().unwrap(),
        blocks: blocks.try_into().unwrap(),
        corner_lines,
        labeling,
        skew7,
    })
}

/// Deterministic backtracking relabeler: a permutation sending the canonical
/// pattern onto the observed cornered faces.
fn relabel_to_pattern(faces: &HashSet<Vec<usize>>) -> Option<[usize; 7]> {
    fn rec(
        perm: &mut [usize; 7],
        used: &mut [bool; 7],
        label: usize,
        faces: &HashSet<Vec<usize>>,
    ) -> bool {
        if label == 7 {
            return FANO_CORNERED_PATTERN.iter().all(|pat| {
                let mut img: Vec<usize> = pat.iter().map(|&t| perm[t]).collect();
                img.sort_unstable();
                faces.contains(&img)
            });
        }
        for pos in 0..7 {
            if used[pos] {
                continue;
            }
            perm[label] = pos;
            used[pos] = true;
            // prune on every fully-mapped pattern quadruple
            let ok = FANO_CORNERED_PATTERN
                .iter()
                .filter(|pat| pat.iter().all(|&t| t <= label))
                .all(|pat| {
                    let mut img: Vec<usize> = pat.iter().map(|&t| perm[t]).collect();
                    img.sort_unstable();
                    faces.contains(&img)
                });
            if ok && rec(perm, used, label + 1, faces) {
                return true;
            }
            used[pos] = false;
        }
        false
    }
    let mut perm = [usize::MAX; 7];
    let mut used = [false; 7];
    rec(&mut perm, &mut used, 0, faces).then_some(perm)
}

/// Decomposition of an A_7^8(1) center: `f = D/2 + 2K` is a ruling.
#[derive(Clone, Debug)]
pub struct A7Decomposition {
    pub ruling: DivisorClass,
    pub ruling_index: usize,
}

pub fn decompose_a7_center(pt: &GossetPolytope, d: &DivisorClass) -> Result<A7Decomposition> {
    if d.rank() != 8 || d.anticanonical_degree() != 8 || d.self_intersection() != 48 {
        return Err(Error::Domain(format!("{d} is not an A_7^8(1) center")));
    }
    let half = d
        .divided_exact(2)
        .ok_or_else(|| Error::Invariant(format!("A7 center {d} is not even")))?;
    let f = half + DivisorClass::canonical(8).scaled(2);
    let ruling_index = pt
        .rulings()
        .position(&f)
        .ok_or_else(|| Error::Invariant(format!("D/2 + 2K = {f} is not a ruling")))?;
    Ok(A7Decomposition {
        ruling: f,
        ruling_index,
    })
}

/// The seven complementary cornered pairs of an A_7^8(1) and the matching
/// bipolar line pairs of its ruling's crosspolytope.
#[derive(Clone, Debug)]
pub struct A7Structure {
    pub ruling: DivisorClass,
    /// seven (face, complement) pairs as vertex positions, face containing
    /// position 0
    pub center_pairs: Vec<([usize; 4], [usize; 4])>,
    /// the induced line pairs (l_{D1}, l_{D2}), each summing to the ruling
    pub line_pairs: Vec<(u32, u32)>,
}

pub fn a7_structure(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<A7Structure> {
    if simplex.rank() != 8 || simplex.dim() != 7 || simplex.degree() != 1 {
        return Err(Error::Domain("expected an A_7^8(1)".into()));
    }
    let dec = decompose_a7_center(pt, simplex.center())?;
    let faces = cornered_faces(pt, simplex)?;
    if faces.len() != 14 {
        return Err(Error::Invariant(format!(
            "A7 has {} cornered faces, expected 14",
            faces.len()
        )));
    }
    let face_sets: HashSet<Vec<usize>> = faces.iter().cloned().collect();
    let mut center_pairs = Vec::new();
    let mut line_pairs = Vec::new();
    for f in &faces {
        if !f.contains(&0) {
            continue;
        }
        let comp: Vec<usize> = (0..8).filter(|t| !f.contains(t)).collect();
        if !face_sets.contains(&comp) {
            return Err(Error::Invariant(
                "complement of a cornered A7 face is not cornered".into(),
            ));
        }
        let corner_of = |ps: &[usize]| -> Result<u32> {
            let vs: Vec<u32> = ps.iter().map(|&p| simplex.vertices()[p]).collect();
            cornering_line(pt, &InscribedSimplex::new(pt, 1, &vs)?)
        };
        let l1 = corner_of(f)?;
        let l2 = corner_of(&comp)?;
        if *pt.line(l1 as usize) + *pt.line(l2 as usize) != dec.ruling
            || pt.lines().pairing_ij(l1 as usize, l2 as usize) != 1
        {
            return Err(Error::Invariant(
                "cornered pair lines do not form the ruling".into(),
            ));
        }
        center_pairs.push((
            <[usize; 4]>::try_from(f.as_slice()).unwrap(),
            <[usize; 4]>::try_from(comp.as_slice()).unwrap(),
        ));
        line_pairs.push((l1.min(l2), l1.max(l2)));
    }
    if center_pairs.len() != 7 {
        return Err(Error::Invariant(format!(
            "A7 has {} cornered pairs through vertex 0, expected 7",
            center_pairs.len()
        )));
    }
    Ok(A7Structure {
        ruling: dec.ruling,
        center_pairs,
        line_pairs,
    })
}

/// Extension of an A_6^8(1) along one of its Fano blocks: a line `l_8`
/// completing the block to a cornered A_3 and the 6-simplex to an A_7; the
/// block plus the complement face's cornering line is uncornered.
#[derive(Clone, Debug)]
pub struct FanoExtension {
    pub l8: u32,
    pub a7: InscribedSimplex,
    /// block vertices completed by `l8` into a cornered face
    pub cornered_block: [u32; 4],
    /// the block plus the complement's cornering line: an uncornered A_3
    pub uncornered_with_corner: [u32; 4],
}

pub fn extend_fano_to_a7(
    pt: &GossetPolytope,
    simplex: &InscribedSimplex,
    fano: &FanoStructure,
    block_index: usize,
) -> Result<FanoExtension> {
    let block = fano
        .blocks
        .get(block_index)
        .ok_or_else(|| Error::Domain(format!("no Fano block {block_index}")))?;
    let tri: Vec<u32> = block.iter().map(|&p| simplex.vertices()[p]).collect();
    let k = DivisorClass::canonical(8);
    let sum: DivisorClass = tri
        .iter()
        .map(|&v| *pt.line(v as usize))
        .sum::<DivisorClass>()
        + k;
    let w = skew_witness(pt.lines(), &sum, 2)?;
    let (la, lb) = (*pt.line(w[0]), *pt.line(w[1]));
    // both Gieser images corner the block and extend the 6-simplex; take the
    // catalog-smaller one
    let mut l8 = None;
    for g in [gieser_at(&la, &lb)?, gieser_at(&lb, &la)?] {
        let gi = pt
            .lines()
            .position(&g)
            .ok_or_else(|| Error::Invariant(format!("Gieser image {g} is not a line")))?
            as u32;
        if simplex.vertices().contains(&gi) {
            continue;
        }
        if simplex
            .vertices()
            .iter()
            .all(|&v| pt.lines().pairing_ij(v as usize, gi as usize) == 1)
        {
            l8 = Some(l8.map_or(gi, |prev: u32| prev.min(gi)));
        }
    }
    let l8 =
        l8.ok_or_else(|| Error::Invariant("no Gieser candidate extends the 6-simplex".into()))?;
    let mut verts = simplex.vertices().to_vec();
    verts.push(l8);
    let a7 = InscribedSimplex::new(pt, 1, &verts)?;
    let mut quad = tri.clone();
    quad.push(l8);
    let face = InscribedSimplex::new(pt, 1, &quad)?;
    if !matches!(classify_a3(pt, &face)?, A3Dichotomy::Cornered { .. }) {
        return Err(Error::Invariant("l8 does not corner the Fano block".into()));
    }
    let corner = fano.corner_lines[block_index];
    let mut uquad = tri.clone();
    uquad.push(corner);
    let uface = InscribedSimplex::new(pt, 1, &uquad)?;
    if !matches!(classify_a3(pt, &uface)?, A3Dichotomy::Uncornered { .. }) {
        return Err(Error::Invariant(
            "block plus complement cornering line is not uncornered".into(),
        ));
    }
    let mut cb: Vec<u32> = quad;
    cb.sort_unstable();
    let mut uc: Vec<u32> = uquad;
    uc.sort_unstable();
    Ok(FanoExtension {
        l8,
        a7,
        cornered_block: cb.try_into().unwrap(),
        uncornered_with_corner: uc.try_into().unwrap(),
    })
}

/// The inscribed m-crosspolytope `{l_i, B(l_i)}` over an A_{m-1}^8(1):
/// antipodal intersections 3, all others 1, common center `-2K`. Returns
/// the sorted vertex indices.
pub fn inscribed_crosspolytope(
    pt: &GossetPolytope,
    simplex: &InscribedSimplex,
) -> Result<Vec<u32>> {
    if simplex.rank() != 8 || simplex.degree() != 1 {
        return Err(Error::Domain("expected a 1-degree simplex of S_8".into()));
    }
    let minus2k = DivisorClass::canonical(8).scaled(-2);
    let mut verts = Vec::with_capacity(2 * simplex.vertices().len());
    for &v in simplex.vertices() {
        let b = bertini(pt.line(v as usize))?;
        let bi = pt
            .lines()
            .position(&b)
            .ok_or_else(|| Error::Invariant(format!("Bertini image {b} is not a line")))?
            as u32;
        if *pt.line(v as usize) + b != minus2k {
            return Err(Error::Invariant(
                "antipodal pair does not sum to -2K".into(),
            ));
        }
        verts.push(v);
        verts.push(bi);
    }
    let m = simplex.vertices().len();
    for x in 0..2 * m {
        for y in x + 1..2 * m {
            let p = pt.lines().pairing_ij(verts[x] as usize, verts[y] as usize);
            let antipodal = x / 2 == y / 2;
            if antipodal && p != 3 || !antipodal && p != 1 {
                return Err(Error::Invariant(format!(
                    "crosspolytope pairing {p} at ({x},{y})"
                )));
            }
        }
    }
    verts.sort_unstable();
    Ok(verts)
}

/// An inscribed m-cube: 2^m lines sharing vertices and edges with the
/// Gosset polytope.
#[derive(Clone, Debug, Serialize)]
pub struct Hypercube {
    pub dim: usize,
    /// sorted catalog indices
    pub vertices: Vec<u32>,
    /// the common antipodal-pair sum
    pub center: DivisorClass,
}

/// Validate the cube combinatorics: 2^m distinct vertices, each with exactly
/// m in-cube 0-degree neighbors forming a 1-degree (m-1)-simplex, and a
/// unique antipode with constant pair sum.
fn validate_cube(pt: &GossetPolytope, dim: usize, verts: &[u32]) -> Result<DivisorClass> {
    if verts.len() != 1 << dim {
        return Err(Error::Invariant(format!(
            "cube has {} vertices, expected {}",
            verts.len(),
            1 << dim
        )));
    }
    let mut center = None;
    for &v in verts {
        let nb: Vec<u32> = verts
            .iter()
            .copied()
            .filter(|&w| w != v && pt.lines().pairing_ij(v as usize, w as usize) == 0)
            .collect();
        if nb.len() != dim {
            return Err(Error::Invariant(format!(
                "cube vertex {v} has {} in-cube edges, expected {dim}",
                nb.len()
            )));
        }
        for (x, &a) in nb.iter().enumerate() {
            for &b in nb.iter().skip(x + 1) {
                if pt.lines().pairing_ij(a as usize, b as usize) != 1 {
                    return Err(Error::Invariant(
                        "cube vertex figure is not a 1-degree simplex".into(),
                    ));
                }
            }
        }
        let anti: Vec<u32> = verts
            .iter()
            .copied()
            .filter(|&w| w != v && pt.lines().pairing_ij(v as usize, w as usize) == dim as i64 - 1)
            .collect();
        if anti.len() != 1 {
            return Err(Error::Invariant(
                "cube vertex lacks a unique antipode".into(),
            ));
        }
        let s = *pt.line(v as usize) + *pt.line(anti[0] as usize);
        match center {
            None => center = Some(s),
            Some(c) if c == s => {}
            Some(c) => {
                return Err(Error::Invariant(format!(
                    "cube diagonals disagree: {c} vs {s}"
                )))
            }
        }
    }
    Ok(center.unwrap())
}

/// A 3-cube through an A_2^r(1), r = 7 or 8.
///
/// For r = 7 the cube is `{l_i, l_D, G(l_i), G(l_D)}` with `l_D = D + K`.
/// For r = 8 the center's skew 2-line `l_a + l_b = D + K` supplies the
/// fourth vertex `l_a` and the Gieser frame `G_{l_b}`; the cube lies in the
/// vertex figure of `l_b`.
pub fn build_3cube(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<Hypercube> {
    if simplex.dim() != 2 || simplex.degree() != 1 {
        return Err(Error::Domain("expected an A_2^r(1) seed".into()));
    }
    let r = pt.rank();
    let classes = simplex.vertex_classes(pt);
    let mut cube: Vec<DivisorClass> = Vec::with_capacity(8);
    match r {
        7 => {
            let ld = *simplex.center() + DivisorClass::canonical(7);
            cube.extend(&classes);
            cube.push(ld);
            for c in classes.iter().chain([&ld]) {
                cube.push(gieser(c)?);
            }
        }
        8 => {
            let sum = *simplex.center() + DivisorClass::canonical(8);
            let w = skew_witness(pt.lines(), &sum, 2)?;
            let (la, lb) = (*pt.line(w[0]), *pt.line(w[1]));
            cube.extend(&classes);
            cube.push(la);
            for c in classes.iter().chain([&la]) {
                cube.push(gieser_at(&lb, c)?);
            }
            for c in &cube {
                if c.dot(&lb) != 0 {
                    return Err(Error::Invariant(
                        "3-cube left the vertex figure of l_b".into(),
                    ));
                }
            }
        }
        _ => return Err(Error::RankOutOfRange(r)),
    }
    let mut verts: Vec<u32> = cube
        .iter()
        .map(|c| {
            pt.lines()
                .position(c)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Invariant(format!("cube vertex {c} is not a line")))
        })
        .collect::<Result<_>>()?;
    verts.sort_unstable();
    verts.dedup();
    let center = validate_cube(pt, 3, &verts)?;
    Ok(Hypercube {
        dim: 3,
        vertices: verts,
        center,
    })
}

/// The 4-cube over a cornered A_3^8(1): `{l, B(l), l_i, B(l_i)}` plus the
/// six half-sum vertices; contains the inscribed 4-crosspolytope
/// `{l_i, B(l_i)}` and all six mixed 4-subsets are cornered.
pub fn build_4cube(pt: &GossetPolytope, simplex: &InscribedSimplex) -> Result<Hypercube> {
    let corner = cornering_line(pt, simplex)?;
    let k = DivisorClass::canonical(8);
    let l = *pt.line(corner as usize);
    let ls = simplex.vertex_classes(pt);
    let mut cube = vec![l, bertini(&l)?];
    for c in &ls {
        cube.push(*c);
        cube.push(bertini(c)?);
    }
    let d = (*simplex.center() + k.scaled(4))
        .divided_exact(2)
        .ok_or_else(|| Error::Invariant("cornered A3 center is not even".into()))?;
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&t| t != i && t != j).collect();
            let half = (ls[i] + ls[j] + bertini(&ls[rest[0]])? + bertini(&ls[rest[1]])?)
                .divided_exact(2)
                .ok_or_else(|| Error::Invariant("half-sum cube vertex is not integral".into()))?;
            cube.push(half + k);
            // the mixed 4-subset is cornered, with root l_i + l_j - d + 2K
            let mixed = [ls[i], ls[j], bertini(&ls[rest[0]])?, bertini(&ls[rest[1]])?];
            let verts: Vec<u32> = mixed
                .iter()
                .map(|c| pt.lines().position(c).unwrap() as u32)
                .collect();
            let face = InscribedSimplex::new(pt, 1, &verts)?;
            match classify_a3(pt, &face)? {
                A3Dichotomy::Cornered { root, .. } => {
                    if root != ls[i] + ls[j] - d + k.scaled(2) {
                        return Err(Error::Invariant(
                            "mixed-subset root differs from l_i + l_j - d + 2K".into(),
                        ));
                    }
                }
                A3Dichotomy::Uncornered { .. } => {
                    return Err(Error::Invariant("mixed 4-subset is not cornered".into()))
                }
            }
        }
    }
    let mut verts: Vec<u32> = cube
        .iter()
        .map(|c| {
            pt.lines()
                .position(c)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Invariant(format!("cube vertex {c} is not a line")))
        })
        .collect::<Result<_>>()?;
    verts.sort_unstable();
    verts.dedup();
    let center = validate_cube(pt, 4, &verts)?;
    if center != k.scaled(-2) {
        return Err(Error::Invariant("4-cube center is not -2K".into()));
    }
    Ok(Hypercube {
        dim: 4,
        vertices: verts,
        center,
    })
}

/// The inscribed 4-crosspolytope built from an uncornered A_3^8(1), with the
/// proof obligation that no 4-cube contains it.
#[derive(Clone, Debug)]
pub struct ObstructedCrosspolytope {
    /// four antipodal pairs `(G_{l_a}(l_b), G_{l_b}(l_a))`, one per 3-face
    pub pairs: [(u32, u32); 4],
    /// all 2^4 facets classified uncornered
    pub facets_checked: usize,
}

pub fn check_4cube_obstruction(
    pt: &GossetPolytope,
    simplex: &InscribedSimplex,
) -> Result<ObstructedCrosspolytope> {
    if !matches!(classify_a3(pt, simplex)?, A3Dichotomy::Uncornered { .. }) {
        return Err(Error::NotUncornered);
    }
    let k = DivisorClass::canonical(8);
    let mut pairs = [(0u32, 0u32); 4];
    for (t, pair) in pairs.iter_mut().enumerate() {
        let sum: DivisorClass = simplex
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != t)
            .map(|(_, &v)| *pt.line(v as usize))
            .sum::<DivisorClass>()
            + k;
        let w = skew_witness(pt.lines(), &sum, 2)?;
        let (la, lb) = (*pt.line(w[0]), *pt.line(w[1]));
        let g1 = gieser_at(&la, &lb)?;
        let g2 = gieser_at(&lb, &la)?;
        *pair = (
            pt.lines().position(&g1).unwrap() as u32,
            pt.lines().position(&g2).unwrap() as u32,
        );
    }
    // crosspolytope pairings: 3 across a pair, 1 otherwise
    for x in 0..4 {
        let (a1, a2) = pairs[x];
        if pt.lines().pairing_ij(a1 as usize, a2 as usize) != 3 {
            return Err(Error::Invariant(
                "antipodal Gieser pair does not pair to 3".into(),
            ));
        }
        for y in x + 1..4 {
            for u in [pairs[x].0, pairs[x].1] {
                for v in [pairs[y].0, pairs[y].1] {
                    if pt.lines().pairing_ij(u as usize, v as usize) != 1 {
                        return Err(Error::Invariant(
                            "cross pairing in the obstruction crosspolytope is not 1".into(),
                        ));
                    }
                }
            }
        }
    }
    // every facet (one vertex per pair) is uncornered; since the vertex
    // figures of a 4-cube are cornered A_3s, no 4-cube contains this
    // crosspolytope
    let mut checked = 0;
    for mask in 0..16u32 {
        let verts: Vec<u32> = (0..4)
            .map(|t| {
                if mask >> t & 1 == 0 {
                    pairs[t].0
                } else {
                    pairs[t].1
                }
            })
            .collect();
        let facet = InscribedSimplex::new(pt, 1, &verts)?;
        if let A3Dichotomy::Cornered { .. } = classify_a3(pt, &facet)? {
            return Err(Error::Invariant(
                "a facet of the obstruction crosspolytope is cornered".into(),
            ));
        }
        checked += 1;
    }
    Ok(ObstructedCrosspolytope {
        pairs,
        facets_checked: checked,
    })
}

/// One named check of a higher-degree reduction report.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionCheck {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

/// Verification of the b > 1 families: A_1^7(2) pairs are (l, G(l)) with
/// center -K; A_1^8(2) centers biject with L_8 and each center's pairs blow
/// down to the S_7 bitangent pairs; A_2^8(2) shares -3K; A_1^8(3) pairs are
/// (l, B(l)) with center -2K.
pub fn higher_degree_reductions(
    pt: &GossetPolytope,
    n: usize,
    b: i64,
) -> Result<Vec<ReductionCheck>> {
    check_feasible(pt, n, b)?;
    if b < 2 {
        return Err(Error::Domain("reduction reports cover b >= 2 only".into()));
    }
    let r = pt.rank();
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, details: String| {
        checks.push(ReductionCheck {
            name: name.into(),
            pass,
            details,
        });
    };
    let simplexes = collect_inscribed(pt, n, b)?;
    match (r, n, b) {
        (7, 1, 2) => {
            let minus_k = -DivisorClass::canonical(7);
            let all_g = simplexes.iter().all(|s| {
                let l = pt.line(s.vertices()[0] as usize);
                gieser(l)
                    .map(|g| g == *pt.line(s.vertices()[1] as usize))
                    .unwrap_or(false)
            });
            push(
                "pairs-are-gieser-orbits",
                all_g,
                format!("{} pairs", simplexes.len()),
            );
            push(
                "shared-center",
                simplexes.iter().all(|s| *s.center() == minus_k),
                "-K".into(),
            );
            push(
                "pair-count",
                simplexes.len() == 28,
                format!("{}", simplexes.len()),
            );
        }
        (8, 1, 2) => {
            let lower = enumerate_lines(7)?;
            let k = DivisorClass::canonical(8);
            let mut per_center: std::collections::BTreeMap<DivisorClass, Vec<&InscribedSimplex>> =
                Default::default();
            for s in &simplexes {
                per_center.entry(*s.center()).or_default().push(s);
            }
            push(
                "center-count",
                per_center.len() == 240,
                format!("{}", per_center.len()),
            );
            let mut bij = true;
            let mut contained = true;
            let mut blowdown_ok = true;
            for (d, group) in &per_center {
                let ld = *d + k;
                let Some(li) = pt.lines().position(&ld) else {
                    bij = false;
                    continue;
                };
                if group.len() != 28 {
                    bij = false;
                }
                for s in group {
                    for &v in s.vertices() {
                        if pt.lines().pairing_ij(li, v as usize) != 0 {
                            contained = false;
                        }
                    }
                }
                let bd = crate::catalog::BlowDown::new(&ld)?;
                for s in group {
                    let img: Vec<DivisorClass> = s
                        .vertices()
                        .iter()
                        .map(|&v| bd.map_down(pt.line(v as usize)))
                        .collect::<Result<_>>()?;
                    if !(lower.contains(&img[0])
                        && gieser(&img[0]).map(|g| g == img[1]).unwrap_or(false))
                    {
                        blowdown_ok = false;
                    }
                }
            }
            push(
                "centers-biject-with-lines",
                bij,
                "D + K in L_8, 28 pairs each".into(),
            );
            push("pairs-inside-vertex-figure", contained, "N_0(D + K)".into());
            push(
                "blowdown-matches-s7-bitangents",
                blowdown_ok,
                "pairs map to (l, G(l))".into(),
            );
        }
        (8, 2, 2) => {
            let minus3k = DivisorClass::canonical(8).scaled(-3);
            push(
                "shared-center",
                simplexes.iter().all(|s| *s.center() == minus3k),
                "-3K".into(),
            );
            push(
                "block-count",
                simplexes.len() == 2240,
                format!("{}", simplexes.len()),
            );
        }
        (8, 1, 3) => {
            let minus2k = DivisorClass::canonical(8).scaled(-2);
            let all_b = simplexes.iter().all(|s| {
                let l = pt.line(s.vertices()[0] as usize);
                bertini(l)
                    .map(|bb| bb == *pt.line(s.vertices()[1] as usize))
                    .unwrap_or(false)
            });
            push(
                "pairs-are-bertini-orbits",
                all_b,
                format!("{} pairs", simplexes.len()),
            );
            push(
                "shared-center",
                simplexes.iter().all(|s| *s.center() == minus2k),
                "-2K".into(),
            );
            push(
                "pair-count",
                simplexes.len() == 120,
                format!("{}", simplexes.len()),
            );
        }
        _ => unreachable!("feasibility restricts the b >= 2 triples"),
    }
    Ok(checks)
}

/// Deterministic seeded sampler over inscribed simplexes: random greedy
/// completion inside the degree graph, retried until a clique of the right
/// size appears.
pub struct SimplexSampler {
    rng: ChaCha8Rng,
}

impl SimplexSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self, pt: &GossetPolytope, n: usize, b: i64) -> Result<InscribedSimplex> {
        check_feasible(pt, n, b)?;
        let g = pt.graph(b);
        let nverts = g.vertex_count();
        for _ in 0..10_000 {
            let mut verts = vec![self.rng.random_range(0..nverts) as u32];
            let mut cand = *g.neighbors(verts[0] as usize);
            while verts.len() < n + 1 {
                let len = cand.len();
                if len == 0 {
                    break;
                }
                let pick = cand.nth(self.rng.random_range(0..len)).unwrap();
                verts.push(pick as u32);
                cand &= *g.neighbors(pick);
            }
            if verts.len() == n + 1 {
                verts.sort_unstable();
                return InscribedSimplex::new(pt, b, &verts);
            }
        }
        Err(Error::Invariant(format!(
            "sampler failed to find an A_{n}^{}({b}) in 10000 attempts",
            pt.rank()
        )))
    }
}
