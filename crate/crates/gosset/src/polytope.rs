//! The Gosset polytope (r-4)_21 as intersection graphs over the line catalog:
//! degree graphs, clique (simplex) enumeration, facet crosspolytopes, and the
//! subpolytope count table.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::LineSet;
use crate::catalog::{
    enumerate_lines, enumerate_roots, enumerate_rulings, ruling_vertices, ClassCatalog,
};
use crate::error::{Error, Result};
use crate::picard::{check_rank, DivisorClass, SurfaceModel};

/// Graph on the lines of S_r with an edge where the intersection equals a
/// fixed value. Degree 0 is the honest 1-skeleton of (r-4)_21; degrees 1..3
/// carry the inscribed simplexes.
#[derive(Clone)]
pub struct DegreeGraph {
    rank: usize,
    degree: i64,
    adjacency: Vec<LineSet>,
    /// neighbors with index strictly greater, for canonical-order cliques
    higher: Vec<LineSet>,
}

impl DegreeGraph {
    pub fn build(lines: &ClassCatalog, degree: i64) -> Self {
        let n = lines.len();
        let adjacency: Vec<LineSet> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && lines.pairing_ij(i, j) == degree)
                    .collect()
            })
            .collect();
        let higher = adjacency
            .iter()
            .enumerate()
            .map(|(i, a)| a.above(i))
            .collect();
        Self {
            rank: lines.rank(),
            degree,
            adjacency,
            higher,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, i: usize) -> &LineSet {
        &self.adjacency[i]
    }

    pub fn edge_count(&self) -> u64 {
        self.adjacency.iter().map(|a| a.len() as u64).sum::<u64>() / 2
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Number of k-cliques, counted in parallel over the first vertex.
    pub fn count_cliques(&self, k: usize) -> u64 {
        let n = self.vertex_count();
        if k == 0 {
            return 1;
        }
        if k == 1 {
            return n as u64;
        }
        (0..n)
            .into_par_iter()
            .map(|v| count_rec(&self.higher, self.higher[v], k - 1))
            .sum()
    }

    /// Visit every k-clique once, vertices ascending, cliques in
    /// lexicographic order.
    pub fn for_each_clique<F: FnMut(&[u32])>(&self, k: usize, mut f: F) {
        if k == 0 {
            return;
        }
        let mut stack = Vec::with_capacity(k);
        for v in 0..self.vertex_count() {
            stack.push(v as u32);
            visit_rec(&self.higher, self.higher[v], k, &mut stack, &mut f);
            stack.pop();
        }
    }

    /// Parallel clique fold: each first-vertex partition folds into its own
    /// accumulator (cliques in canonical order within the partition), and the
    /// accumulators are merged in ascending partition order, so the result is
    /// deterministic for any associative `merge`.
    pub fn par_fold_cliques<T, N, L, M>(&self, k: usize, new: N, leaf: L, merge: M) -> T
    where
        T: Send,
        N: Fn() -> T + Sync,
        L: Fn(&mut T, &[u32]) + Sync,
        M: Fn(T, T) -> T + Sync,
    {
        if k == 0 {
            return new();
        }
        (0..self.vertex_count())
            .into_par_iter()
            .fold(&new, |mut acc, v| {
                let mut stack = vec![v as u32];
                visit_rec(
                    &self.higher,
                    self.higher[v],
                    k,
                    &mut stack,
                    &mut |cl: &[u32]| leaf(&mut acc, cl),
                );
                acc
            })
            .reduce(&new, &merge)
    }
}

fn count_rec(higher: &[LineSet], cand: LineSet, left: usize) -> u64 {
    if left == 1 {
        return cand.len() as u64;
    }
    let mut total = 0;
    for v in cand.iter() {
        total += count_rec(higher, cand & higher[v], left - 1);
    }
    total
}

fn visit_rec<F: FnMut(&[u32])>(
    higher: &[LineSet],
    cand: LineSet,
    k: usize,
    stack: &mut Vec<u32>,
    f: &mut F,
) {
    if stack.len() == k {
        f(stack);
        return;
    }
    for v in cand.iter() {
        stack.push(v as u32);
        visit_rec(higher, cand & higher[v], k, stack, f);
        stack.pop();
    }
}

/// Shared enumeration context: the line catalog of S_r with its degree
/// graphs, rulings and roots. Immutable after construction.
pub struct GossetPolytope {
    surface: SurfaceModel,
    lines: ClassCatalog,
    rulings: ClassCatalog,
    roots: ClassCatalog,
    graphs: Vec<DegreeGraph>,
}

impl GossetPolytope {
    pub fn new(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        let surface = SurfaceModel::new(rank)?;
        let lines = enumerate_lines(rank)?;
        let rulings = enumerate_rulings(rank)?;
        let roots = enumerate_roots(rank)?;
        let graphs = (0..=3).map(|v| DegreeGraph::build(&lines, v)).collect();
        Ok(Self {
            surface,
            lines,
            rulings,
            roots,
            graphs,
        })
    }

    pub fn rank(&self) -> usize {
        self.surface.rank()
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn lines(&self) -> &ClassCatalog {
        &self.lines
    }

    pub fn rulings(&self) -> &ClassCatalog {
        &self.rulings
    }

    pub fn roots(&self) -> &ClassCatalog {
        &self.roots
    }

    pub fn graph(&self, degree: i64) -> &DegreeGraph {
        &self.graphs[degree as usize]
    }

    pub fn line(&self, i: usize) -> &DivisorClass {
        self.lines.get(i)
    }

    /// `N_0(l)`: the vertex figure of line `i`.
    pub fn vertex_figure(&self, i: usize) -> &LineSet {
        self.graphs[0].neighbors(i)
    }
}

/// A facet crosspolytope: a ruling with its 2(r-1) incident lines in bipolar
/// pairs (each pair sums to the ruling).
#[derive(Clone, Debug, Serialize)]
pub struct Crosspolytope {
    pub ruling: usize,
    pub pairs: Vec<(u32, u32)>,
}

pub fn enumerate_crosspolytopes(pt: &GossetPolytope) -> Result<Vec<Crosspolytope>> {
    (0..pt.rulings().len())
        .map(|fi| {
            let pairs = ruling_vertices(pt.lines(), pt.rulings().get(fi))?;
            Ok(Crosspolytope {
                ruling: fi,
                pairs: pairs
                    .into_iter()
                    .map(|(a, b)| (a as u32, b as u32))
                    .collect(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub r: usize,
    pub polytope: String,
    pub expected: u64,
    pub computed: u64,
    pub pass: bool,
}

/// Per-cell verification of the subpolytope count table.
#[derive(Clone, Debug, Serialize)]
pub struct SubpolytopeReport {
    pub r: usize,
    pub rows: Vec<TableRow>,
}

impl SubpolytopeReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&TableRow> {
        self.rows.iter().filter(|c| !c.pass).collect()
    }

    /// CSV with columns (r, polytope, expected, computed, pass).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,polytope,expected,computed,pass\n");
        for c in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.r, c.polytope, c.expected, c.computed, c.pass
            ));
        }
        out
    }
}

/// Expected cells of the subpolytope table, `(beta, vertex, alpha_1, ...)`.
fn expected_row(rank: usize) -> &'static [u64] {
    match rank {
        3 => &[3, 6, 9, 2],
        4 => &[5, 10, 30, 30, 5],
        5 => &[10, 16, 80, 160, 120, 16],
        6 => &[27, 27, 216, 720, 1080, 648, 72],
        7 => &[126, 56, 756, 4032, 10080, 12096, 6048, 576],
        8 => &[
            2160, 240, 6720, 60480, 241920, 483840, 483840, 207360, 17280,
        ],
        _ => unreachable!(),
    }
}

/// Check the subpolytope counts of (r-4)_21 against the table: the full row
/// for r = 6, 7, 8; crosspolytopes, vertices and edges only for r = 4, 5.
pub fn verify_subpolytope_table(pt: &GossetPolytope) -> Result<SubpolytopeReport> {
    let r = pt.rank();
    if !(4..=8).contains(&r) {
        return Err(Error::RankOutOfRange(r));
    }
    let expected = expected_row(r);
    let mut rows = Vec::new();
    let mut push = |polytope: String, expected: u64, computed: u64| {
        rows.push(TableRow {
            r,
            polytope,
            expected,
            computed,
            pass: expected == computed,
        });
    };

    let cross = enumerate_crosspolytopes(pt)?;
    let beta_ok = cross.iter().all(|c| c.pairs.len() == r - 1);
    push(
        format!("beta_{}", r - 1),
        expected[0],
        if beta_ok { cross.len() as u64 } else { 0 },
    );
    push("vertex".into(), expected[1], pt.lines().len() as u64);

    let g0 = pt.graph(0);
    let max_alpha = if r >= 6 { r - 1 } else { 1 };
    for m in 1..=max_alpha {
        push(
            format!("alpha_{m}"),
            expected[1 + m],
            g0.count_cliques(m + 1),
        );
    }
    Ok(SubpolytopeReport { r, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_graph_regularity_r8() {
        let pt = GossetPolytope::new(8).unwrap();
        assert_eq!(pt.graph(0).regular_degree(), Some(56));
        assert_eq!(pt.graph(1).regular_degree(), Some(126));
        assert_eq!(pt.graph(2).regular_degree(), Some(56));
        assert_eq!(pt.graph(3).regular_degree(), Some(1));
        assert_eq!(pt.graph(0).edge_count(), 6720);
        // degree 3 is a perfect matching
        assert_eq!(pt.graph(3).edge_count(), 120);
        // neighborhood partition 1 + 56 + 126 + 56 + 1 = 240
        for i in 0..240 {
            let total: usize = (0..=3).map(|v| pt.graph(v).neighbors(i).len()).sum();
            assert_eq!(total + 1, 240);
        }
    }

    #[test]
    fn degree_graph_r6_edges() {
        let pt = GossetPolytope::new(6).unwrap();
        assert_eq!(pt.graph(0).edge_count(), 216);
        assert_eq!(pt.graph(1).edge_count(), 135);
        assert_eq!(pt.graph(2).edge_count(), 0);
    }

    #[test]
    fn clique_counts_small_ranks() {
        // full rows for r = 4, 5 (the report only checks beta/vertex/alpha_1
        // there, but the raw counts agree with the table as well)
        let pt4 = GossetPolytope::new(4).unwrap();
        let g = pt4.graph(0);
        assert_eq!(
            (1..=3).map(|m| g.count_cliques(m + 1)).collect::<Vec<_>>(),
            vec![30, 30, 5]
        );
        let pt5 = GossetPolytope::new(5).unwrap();
        let g = pt5.graph(0);
        assert_eq!(
            (1..=4).map(|m| g.count_cliques(m + 1)).collect::<Vec<_>>(),
            vec![80, 160, 120, 16]
        );
    }

    #[test]
    fn subpolytope_table_r6() {
        let pt = GossetPolytope::new(6).unwrap();
        let report = verify_subpolytope_table(&pt).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
        let computed: Vec<u64> = report.rows.iter().map(|c| c.computed).collect();
        assert_eq!(computed, vec![27, 27, 216, 720, 1080, 648, 72]);
    }

    #[test]
    fn subpolytope_table_r7() {
        let pt = GossetPolytope::new(7).unwrap();
        let report = verify_subpolytope_table(&pt).unwrap();
        assert!(report.pass(), "failures: {:?}", report.failures());
        let computed: Vec<u64> = report.rows.iter().map(|c| c.computed).collect();
        assert_eq!(computed, vec![126, 56, 756, 4032, 10080, 12096, 6048, 576]);
    }

    #[test]
    fn clique_streaming_matches_counting_and_is_sorted() {
        let pt = GossetPolytope::new(6).unwrap();
        let g = pt.graph(0);
        let mut seen = Vec::new();
        g.for_each_clique(4, |cl| seen.push(cl.to_vec()));
        assert_eq!(seen.len() as u64, g.count_cliques(4));
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(seen, sorted);
        // parallel fold agrees
        let n = g.par_fold_cliques(4, || 0u64, |acc, _| *acc += 1, |a, b| a + b);
        assert_eq!(n, seen.len() as u64);
    }

    #[test]
    fn per_vertex_clique_counts_are_transitive() {
        let pt = GossetPolytope::new(7).unwrap();
        let g = pt.graph(0);
        for k in [3usize, 5] {
            let mut per_vertex = vec![0u64; 56];
            g.for_each_clique(k, |cl| {
                for &v in cl {
                    per_vertex[v as usize] += 1;
                }
            });
            assert!(per_vertex.iter().all(|&c| c == per_vertex[0]), "k={k}");
        }
    }

    #[test]
    fn crosspolytope_vertices_and_selected_simplexes() {
        let pt = GossetPolytope::new(8).unwrap();
        let cross = enumerate_crosspolytopes(&pt).unwrap();
        assert_eq!(cross.len(), 2160);
        for c in cross.iter().step_by(311) {
            assert_eq!(c.pairs.len(), 7);
            let f = pt.rulings().get(c.ruling);
            for &(a, b) in &c.pairs {
                assert_eq!(*pt.line(a as usize) + *pt.line(b as usize), *f);
            }
            // one vertex per bipolar pair is a 7-simplex: first and second
            // projections, plus an alternating choice
            for pick in [0usize, 1, 2] {
                let chosen: Vec<usize> = c
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(t, &(a, b))| {
                        if pick == 2 && t % 2 == 0 || pick == 0 {
                            a as usize
                        } else {
                            b as usize
                        }
                    })
                    .collect();
                for (x, &i) in chosen.iter().enumerate() {
                    for &j in chosen.iter().skip(x + 1) {
                        assert_eq!(pt.lines().pairing_ij(i, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_length_law() {
        // -(l1 - l2)^2 = 2 + 2b for a b-degree edge
        let pt = GossetPolytope::new(8).unwrap();
        for b in 0..=3 {
            let g = pt.graph(b);
            let i = 0;
            for j in g.neighbors(i).iter().take(5) {
                let d = *pt.line(i) - *pt.line(j);
                assert_eq!(-d.self_intersection(), 2 + 2 * b);
            }
        }
    }

    #[test]
    fn facet_incidence_r6() {
        // every 4-simplex (5-clique) of 2_21 lies in exactly two facets;
        // 432 of the 648 in one alpha_5 and one beta_5, 216 in two beta_5
        let pt = GossetPolytope::new(6).unwrap();
        let g0 = pt.graph(0);
        let mut dist = std::collections::BTreeMap::<(usize, usize), usize>::new();
        g0.for_each_clique(5, |cl| {
            let mut common = LineSet::all(27);
            for &v in cl {
                common &= *g0.neighbors(v as usize);
            }
            let alpha_ext = common.len();
            let beta = (0..pt.rulings().len())
                .filter(|&fi| {
                    cl.iter()
                        .all(|&v| pt.rulings().get(fi).dot(pt.line(v as usize)) == 0)
                })
                .count();
            *dist.entry((alpha_ext, beta)).or_default() += 1;
        });
        assert_eq!(dist.get(&(1, 1)), Some(&432));
        assert_eq!(dist.get(&(0, 2)), Some(&216));
        assert_eq!(dist.values().sum::<usize>(), 648);
    }
}
