//! Catalogs of the special divisor-class families: lines `L_r`, roots `R_r`,
//! rulings `F_r`, exceptional systems `E_r`, and skew a-lines `L_r^a`, plus
//! the neighborhood sets `N_k(l)`, the Gieser/Bertini transforms and the
//! blow-down basis change.
//!
//! Enumeration runs a Weyl-orbit closure from small seeds (the Weyl group
//! acts transitively on each family, with two orbits for `E_8` exceptional
//! systems). For r <= 6 an independent bounded coefficient scan re-derives
//! every catalog; a mismatch aborts construction. For r = 7, 8 completeness
//! is pinned by the known cardinalities.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitset::LineSet;
use crate::error::{Error, Result};
use crate::picard::{check_rank, DivisorClass, SurfaceModel};

/// Which family a catalog holds, with its defining
/// (self-intersection, K-degree) pair.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Line,
    Root,
    Ruling,
    ExceptionalSystem,
    SkewLines(u8),
}

impl ClassKind {
    /// `(D^2, D.K)` characterizing the family.
    pub fn defining_pair(&self) -> (i64, i64) {
        match self {
            ClassKind::Line => (-1, -1),
            ClassKind::Root => (-2, 0),
            ClassKind::Ruling => (0, -2),
            ClassKind::ExceptionalSystem => (1, -3),
            ClassKind::SkewLines(a) => (-(*a as i64), -(*a as i64)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassKind::Line => "lines",
            ClassKind::Root => "roots",
            ClassKind::Ruling => "rulings",
            ClassKind::ExceptionalSystem => "exceptional-systems",
            ClassKind::SkewLines(_) => "skew-lines",
        }
    }

    pub fn matches(&self, d: &DivisorClass) -> bool {
        let (s, k) = self.defining_pair();
        d.self_intersection() == s && -d.anticanonical_degree() == k
    }
}

/// Known cardinalities used to pin orbit completeness where the scan oracle
/// is too expensive (r = 7, 8).
fn known_count(kind: ClassKind, rank: usize) -> Option<usize> {
    let table: &[usize; 6] = match kind {
        ClassKind::Line => &[6, 10, 16, 27, 56, 240],
        ClassKind::Ruling => &[3, 5, 10, 27, 126, 2160],
        ClassKind::ExceptionalSystem => &[2, 5, 16, 72, 576, 17520],
        ClassKind::Root => &[8, 20, 40, 72, 126, 240],
        ClassKind::SkewLines(_) => return None,
    };
    Some(table[rank - 3])
}

/// A complete, canonically ordered catalog of one class family.
#[derive(Clone)]
pub struct ClassCatalog {
    kind: ClassKind,
    rank: usize,
    classes: Vec<DivisorClass>,
    index: HashMap<DivisorClass, u32>,
    gram: Option<Vec<i8>>,
}

/// Gram matrices are materialized only up to this size; larger catalogs
/// (the 17520 exceptional systems) answer pairings directly.
const GRAM_LIMIT: usize = 4096;

impl ClassCatalog {
    fn from_classes(kind: ClassKind, rank: usize, set: BTreeSet<DivisorClass>) -> Result<Self> {
        let classes: Vec<DivisorClass> = set.into_iter().collect();
        for d in &classes {
            if !kind.matches(d) {
                return Err(Error::Invariant(format!(
                    "{d} fails the defining equations of {}",
                    kind.name()
                )));
            }
        }
        let index = classes
            .iter()
            .enumerate()
            .map(|(i, d)| (*d, i as u32))
            .collect();
        let gram = (classes.len() <= GRAM_LIMIT).then(|| {
            let n = classes.len();
            let mut g = vec![0i8; n * n];
            for i in 0..n {
                for j in 0..n {
                    g[i * n + j] = classes[i].dot(&classes[j]) as i8;
                }
            }
            g
        });
        Ok(Self {
            kind,
            rank,
            classes,
            index,
            gram,
        })
    }

    /// Rebuild a catalog from externally supplied classes (cache load):
    /// verifies canonical order, rank, the defining equations of the kind,
    /// and the known cardinality.
    pub fn from_sorted_classes(
        kind: ClassKind,
        rank: usize,
        classes: Vec<DivisorClass>,
    ) -> Result<Self> {
        check_rank(rank)?;
        if classes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Cache("classes are not strictly increasing".into()));
        }
        if let Some(bad) = classes.iter().find(|d| d.rank() != rank) {
            return Err(Error::Cache(format!("{bad} has the wrong rank")));
        }
        if let Some(bad) = classes.iter().find(|d| !kind.matches(d)) {
            return Err(Error::Cache(format!(
                "{bad} fails the defining equations of {}",
                kind.name()
            )));
        }
        if let Some(expect) = known_count(kind, rank) {
            if classes.len() != expect {
                return Err(Error::Cache(format!(
                    "{} catalog for r={rank} has {} classes, expected {expect}",
                    kind.name(),
                    classes.len()
                )));
            }
        }
        Self::from_classes(kind, rank, classes.into_iter().collect())
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn get(&self, i: usize) -> &DivisorClass {
        &self.classes[i]
    }

    pub fn position(&self, d: &DivisorClass) -> Option<usize> {
        self.index.get(d).map(|&i| i as usize)
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.index.contains_key(d)
    }

    /// `pairing(classes[i], classes[j])`.
    pub fn pairing_ij(&self, i: usize, j: usize) -> i64 {
        match &self.gram {
            Some(g) => g[i * self.classes.len() + j] as i64,
            None => self.classes[i].dot(&self.classes[j]),
        }
    }

    /// All catalog members pairing to `k` with entry `i`. For k = -1 on a
    /// line catalog this is the singleton {l} itself, matching `N_{-1}`.
    pub fn neighborhood(&self, i: usize, k: i64) -> LineSet {
        assert!(
            self.len() <= LineSet::CAPACITY,
            "neighborhood needs a small catalog"
        );
        (0..self.len())
            .filter(|&j| self.pairing_ij(i, j) == k)
            .collect()
    }
}

/// Breadth-first closure of `seeds` under the simple reflections.
fn weyl_closure(surface: &SurfaceModel, seeds: Vec<DivisorClass>) -> BTreeSet<DivisorClass> {
    let mut seen: BTreeSet<DivisorClass> = BTreeSet::new();
    let mut frontier = seeds;
    while let Some(d) = frontier.pop() {
        if !seen.insert(d) {
            continue;
        }
        for s in surface.simple_roots() {
            let img = d.reflect_unchecked(s);
            if !seen.contains(&img) {
                frontier.push(img);
            }
        }
    }
    seen
}

/// Independent oracle: exhaustive scan over coefficient vectors with
/// `D^2 = selfint` and `D.K = kdeg`.
///
/// The h-coefficient range comes from Cauchy-Schwarz: with s = sum c_i and
/// q = sum c_i^2 forced by the two equations, feasibility needs r*q >= s^2.
/// (The fixed box |a0| <= 4 suggested by a quick reading of the families
/// misses the exceptional system 5h - 2(e1+...+e6), so the bound is derived
/// per family instead.)
pub fn scan_classes(rank: usize, selfint: i64, kdeg: i64) -> Vec<DivisorClass> {
    let r = rank as i64;
    let mut out = Vec::new();
    let mut coeffs = [0i64; 9];
    for a0 in -60..=60 {
        let s_t = -kdeg - 3 * a0; // required sum of c_i
        let q_t = a0 * a0 - selfint; // required sum of c_i^2
        if q_t < 0 || q_t * r < s_t * s_t {
            continue;
        }
        coeffs[0] = a0;
        scan_rec(rank, 1, s_t, q_t, &mut coeffs, &mut out);
    }
    out.sort();
    out
}

fn scan_rec(
    rank: usize,
    i: usize,
    s: i64,
    q: i64,
    coeffs: &mut [i64; 9],
    out: &mut Vec<DivisorClass>,
) {
    let left = (rank + 1 - i) as i64;
    if left == 0 {
        if s == 0 && q == 0 {
            out.push(DivisorClass::new(rank, &coeffs[..=rank]).unwrap());
        }
        return;
    }
    let m = (q as f64).sqrt() as i64 + 1;
    for ci in -m..=m {
        let q2 = q - ci * ci;
        if q2 < 0 {
            continue;
        }
        let s2 = s - ci;
        if s2 * s2 > q2 * (left - 1).max(0) && left > 1 {
            continue;
        }
        if left == 1 && (s2 != 0 || q2 != 0) {
            continue;
        }
        coeffs[i] = ci;
        scan_rec(rank, i + 1, s2, q2, coeffs, out);
    }
    coeffs[i] = 0;
}

fn enumerate_kind(rank: usize, kind: ClassKind) -> Result<ClassCatalog> {
    check_rank(rank)?;
    let surface = SurfaceModel::new(rank)?;
    let k = *surface.canonical();
    let seeds = match kind {
        ClassKind::Line => vec![DivisorClass::e(rank, rank)],
        // R_3 = A_2 x A_1 is disconnected, so seed every simple root.
        ClassKind::Root => surface.simple_roots().to_vec(),
        ClassKind::Ruling => vec![DivisorClass::h(rank) - DivisorClass::e(rank, 1)],
        ClassKind::ExceptionalSystem => {
            let mut s = vec![DivisorClass::h(rank)];
            if rank == 8 {
                // second orbit: -3K + 2d for a root d
                s.push(k.scaled(-3) + surface.simple_roots()[0].scaled(2));
            }
            s
        }
        ClassKind::SkewLines(_) => unreachable!("skew catalogs are built from cliques"),
    };
    let set = weyl_closure(&surface, seeds);
    let catalog = ClassCatalog::from_classes(kind, rank, set)?;

    if rank <= 6 {
        let (selfint, kdeg) = kind.defining_pair();
        let scan = scan_classes(rank, selfint, kdeg);
        if scan != catalog.classes {
            return Err(Error::Invariant(format!(
                "orbit enumeration of {} (r={rank}) disagrees with the exhaustive scan: \
                 {} vs {}",
                kind.name(),
                catalog.len(),
                scan.len()
            )));
        }
    }
    if let Some(expect) = known_count(kind, rank) {
        if catalog.len() != expect {
            return Err(Error::Invariant(format!(
                "{} catalog for r={rank} has {} classes, expected {expect}",
                kind.name(),
                catalog.len()
            )));
        }
    }
    Ok(catalog)
}

/// All lines `{D : D^2 = -1, D.K = -1}`; the vertices of `(r-4)_21`.
pub fn enumerate_lines(rank: usize) -> Result<ClassCatalog> {
    enumerate_kind(rank, ClassKind::Line)
}

/// All roots `{D : D^2 = -2, D.K = 0}`; closed under negation.
pub fn enumerate_roots(rank: usize) -> Result<ClassCatalog> {
    enumerate_kind(rank, ClassKind::Root)
}

/// All rulings `{D : D^2 = 0, D.K = -2}`.
pub fn enumerate_rulings(rank: usize) -> Result<ClassCatalog> {
    enumerate_kind(rank, ClassKind::Ruling)
}

/// All exceptional systems `{D : D^2 = 1, D.K = -3}`.
pub fn enumerate_exceptional_systems(rank: usize) -> Result<ClassCatalog> {
    enumerate_kind(rank, ClassKind::ExceptionalSystem)
}

/// Orbit classification of an exceptional system on S_8: either
/// `D = -3K + 2d` for a root `d`, or `D_1 = 3D + K` is a skew 8-line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionalBranch {
    /// The 240-element orbit; carries the root `d = (D + 3K)/2`.
    RootOrbit(DivisorClass),
    /// The 17280-element orbit; carries the skew 8-line `D_1 = 3D + K`.
    SkewOrbit(DivisorClass),
}

pub fn classify_exceptional_system(
    lines: &ClassCatalog,
    roots: &ClassCatalog,
    d: &DivisorClass,
) -> Result<ExceptionalBranch> {
    if d.rank() != 8 || lines.rank() != 8 {
        return Err(Error::RankOutOfRange(d.rank()));
    }
    if !d.is_exceptional_system() {
        return Err(Error::NotInCatalog(Box::new(*d), "exceptional-systems", 8));
    }
    let k = DivisorClass::canonical(8);
    if let Some(half) = (*d + k.scaled(3)).divided_exact(2) {
        if roots.contains(&half) {
            return Ok(ExceptionalBranch::RootOrbit(half));
        }
    }
    let d1 = d.scaled(3) + k;
    // a skew 8-line must decompose into 8 disjoint lines; members are exactly
    // the lines pairing to -1 with the sum
    let witness = skew_witness(lines, &d1, 8)?;
    let _ = witness;
    Ok(ExceptionalBranch::SkewOrbit(d1))
}

/// Recover the unique disjoint-line witness of a skew a-line sum.
///
/// A line `l` belongs to the witness iff `D.l = -1`: members contribute
/// `l.l = -1` and pair 0 with the rest, while any other line pairs >= 0 with
/// every member. That argument also proves the witness is unique.
pub fn skew_witness(lines: &ClassCatalog, sum: &DivisorClass, a: usize) -> Result<Vec<usize>> {
    let members: Vec<usize> = (0..lines.len())
        .filter(|&i| lines.get(i).dot(sum) == -1)
        .collect();
    if members.len() != a {
        return Err(Error::Invariant(format!(
            "skew witness of {sum}: found {} member lines, expected {a}",
            members.len()
        )));
    }
    let mut total = DivisorClass::zero(lines.rank());
    for &i in &members {
        total = total + *lines.get(i);
        for &j in &members {
            if i < j && lines.pairing_ij(i, j) != 0 {
                return Err(Error::Invariant(format!(
                    "skew witness of {sum}: members {i},{j} not disjoint"
                )));
            }
        }
    }
    if total != *sum {
        return Err(Error::Invariant(format!(
            "skew witness of {sum} does not sum back"
        )));
    }
    Ok(members)
}

/// One entry of the skew a-line catalog: the witness clique (line indices,
/// ascending) and its sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewLine {
    pub witness: Vec<u32>,
    pub sum: DivisorClass,
}

/// All skew a-lines of S_r: one entry per a-clique of the 0-degree graph, in
/// canonical (lexicographic witness) order.
pub fn skew_a_lines(lines: &ClassCatalog, a: usize) -> Result<Vec<SkewLine>> {
    let rank = lines.rank();
    if a < 1 || a > rank {
        return Err(Error::SkewOutOfRange { r: rank, a });
    }
    let n = lines.len();
    let adj: Vec<LineSet> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && lines.pairing_ij(i, j) == 0)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(a);
    fn rec(
        lines: &ClassCatalog,
        adj: &[LineSet],
        a: usize,
        cand: LineSet,
        stack: &mut Vec<u32>,
        out: &mut Vec<SkewLine>,
    ) {
        if stack.len() == a {
            let sum = stack.iter().map(|&i| *lines.get(i as usize)).sum();
            out.push(SkewLine {
                witness: stack.clone(),
                sum,
            });
            return;
        }
        for v in cand.iter() {
            stack.push(v as u32);
            rec(lines, adj, a, cand.above(v) & adj[v], stack, out);
            stack.pop();
        }
    }
    rec(lines, &adj, a, LineSet::all(n), &mut stack, &mut out);
    Ok(out)
}

/// Gieser transform on lines of S_7: `G(l) = -(K + l)`; an involution with
/// `l.G(l) = 2`.
pub fn gieser(l: &DivisorClass) -> Result<DivisorClass> {
    if l.rank() != 7 {
        return Err(Error::RankOutOfRange(l.rank()));
    }
    if !l.is_line() {
        return Err(Error::NotALine(Box::new(*l), 7));
    }
    Ok(-(DivisorClass::canonical(7) + *l))
}

/// Bertini transform on lines of S_8: `B(l) = -(2K + l)`; an involution with
/// `l.B(l) = 3`.
pub fn bertini(l: &DivisorClass) -> Result<DivisorClass> {
    if l.rank() != 8 {
        return Err(Error::RankOutOfRange(l.rank()));
    }
    if !l.is_line() {
        return Err(Error::NotALine(Box::new(*l), 8));
    }
    Ok(-(DivisorClass::canonical(8).scaled(2) + *l))
}

/// Gieser transform inside the vertex figure of `l` in 4_21:
/// `G_l(l') = -(K - l) - l'` for disjoint lines `l, l'` of S_8.
pub fn gieser_at(l: &DivisorClass, lp: &DivisorClass) -> Result<DivisorClass> {
    if l.rank() != 8 {
        return Err(Error::RankOutOfRange(l.rank()));
    }
    if !l.is_line() {
        return Err(Error::NotALine(Box::new(*l), 8));
    }
    if !lp.is_line() {
        return Err(Error::NotALine(Box::new(*lp), 8));
    }
    if l.dot(lp) != 0 {
        return Err(Error::NotDisjoint(Box::new(*l), Box::new(*lp)));
    }
    Ok(*l - *lp - DivisorClass::canonical(8))
}

/// A Weyl word `w` (sequence of simple-root reflections, applied left to
/// right) with `w(l) = e_r`, realizing the blow-down `N_0(l) ~ L_{r-1}`.
#[derive(Clone, Debug)]
pub struct BlowDown {
    rank: usize,
    word: Vec<DivisorClass>,
}

impl BlowDown {
    /// Greedy descent: while the h-coefficient is positive, sort the e_i
    /// coefficients ascending with adjacent transpositions and reflect in
    /// d_0 (each d_0 step strictly lowers the h-coefficient); once the class
    /// is some e_i, bubble it up to e_r. Words are correct, not canonical.
    pub fn new(l: &DivisorClass) -> Result<Self> {
        let rank = l.rank();
        check_rank(rank)?;
        if rank < 4 {
            return Err(Error::RankOutOfRange(rank));
        }
        if !l.is_line() {
            return Err(Error::NotALine(Box::new(*l), rank));
        }
        let surface = SurfaceModel::new(rank)?;
        let simple = surface.simple_roots();
        let target = DivisorClass::e(rank, rank);
        let mut cur = *l;
        let mut word = Vec::new();
        let mut steps = 0usize;
        while cur != target {
            steps += 1;
            if steps > 1000 {
                return Err(Error::Invariant(format!(
                    "blow-down word search did not reach e_{rank} from {l}"
                )));
            }
            let c = cur.coeffs();
            if c[0] > 0 {
                // transposition sigma_{d_i} swaps c_i and c_{i+1}
                if let Some(i) = (1..rank).find(|&i| c[i] > c[i + 1]) {
                    cur = cur.reflect_unchecked(&simple[i]);
                    word.push(simple[i]);
                    continue;
                }
                let m = cur.dot(&simple[0]);
                if m >= 0 {
                    return Err(Error::Invariant(format!(
                        "blow-down descent stuck at {cur} (pairing with d_0 is {m})"
                    )));
                }
                cur = cur.reflect_unchecked(&simple[0]);
                word.push(simple[0]);
            } else {
                // a line with zero h-coefficient is exactly some e_i
                let i = (1..=rank).find(|&i| c[i] == 1).ok_or_else(|| {
                    Error::Invariant(format!("line {cur} with a0 = 0 is not an e_i"))
                })?;
                cur = cur.reflect_unchecked(&simple[i]);
                word.push(simple[i]);
            }
        }
        Ok(Self { rank, word })
    }

    pub fn word(&self) -> &[DivisorClass] {
        &self.word
    }

    /// Apply the word (an isometry of Pic S_r).
    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        let mut cur = *d;
        for s in &self.word {
            cur = cur.reflect_unchecked(s);
        }
        cur
    }

    /// Apply the word and drop the (necessarily zero) e_r coordinate,
    /// landing in Pic S_{r-1}. Defined for classes orthogonal to `l`.
    pub fn map_down(&self, d: &DivisorClass) -> Result<DivisorClass> {
        let img = self.apply(d);
        let c = img.coeffs();
        if c[self.rank] != 0 {
            return Err(Error::Invariant(format!(
                "{d} does not blow down: image {img} has a nonzero e_{} coefficient",
                self.rank
            )));
        }
        DivisorClass::new(self.rank - 1, &c[..self.rank])
    }
}

/// The vertices of the (r-1)-crosspolytope of a ruling `f`: the 2(r-1) lines
/// with `f.l = 0`, grouped into bipolar pairs `(l, f - l)`.
pub fn ruling_vertices(lines: &ClassCatalog, f: &DivisorClass) -> Result<Vec<(usize, usize)>> {
    let rank = lines.rank();
    if !f.is_ruling() {
        return Err(Error::NotInCatalog(Box::new(*f), "rulings", rank));
    }
    let members: Vec<usize> = (0..lines.len())
        .filter(|&i| f.dot(lines.get(i)) == 0)
        .collect();
    if members.len() != 2 * (rank - 1) {
        return Err(Error::Invariant(format!(
            "ruling {f} has {} incident lines, expected {}",
            members.len(),
            2 * (rank - 1)
        )));
    }
    let mut pairs = Vec::with_capacity(rank - 1);
    let mut used = vec![false; lines.len()];
    for &i in &members {
        if used[i] {
            continue;
        }
        let partner = *f - *lines.get(i);
        let j = lines
            .position(&partner)
            .ok_or_else(|| Error::Invariant(format!("{f} - {} is not a line", lines.get(i))))?;
        if lines.pairing_ij(i, j) != 1 {
            return Err(Error::Invariant(format!(
                "bipolar pair of {f} does not pair to 1"
            )));
        }
        used[i] = true;
        used[j] = true;
        pairs.push((i.min(j), i.max(j)));
    }
    pairs.sort();
    Ok(pairs)
}
