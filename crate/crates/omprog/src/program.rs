//! Oriented matroid programs `(O, g, f)`: the direction function on
//! comodular cocircuit pairs, the partially directed cocircuit graph on the
//! affine cocircuits (those positive at `g`), directed cycle search, and the
//! derived Euclideanness, feasibility and boundedness predicates.

use rayon::prelude::*;

use crate::error::{OmError, Result};
use crate::matroid::OrientedMatroid;
use crate::sign::{ElemSet, Sign, SignVector};

/// A program: `g` plays infinity, `f` the objective.
#[derive(Clone, Copy)]
pub struct Program<'a> {
    om: &'a OrientedMatroid,
    pub g: usize,
    pub f: usize,
}

impl<'a> Program<'a> {
    /// Requires `f != g`, `g` not a loop and `f` not a coloop.
    pub fn new(om: &'a OrientedMatroid, g: usize, f: usize) -> Result<Program<'a>> {
        if g >= om.n() {
            return Err(OmError::UnknownElement { element: g, n: om.n() });
        }
        if f >= om.n() {
            return Err(OmError::UnknownElement { element: f, n: om.n() });
        }
        if f == g {
            return Err(OmError::InvalidProgram(
                "objective and infinity must differ".into(),
            ));
        }
        if om.is_loop(g) {
            return Err(OmError::InvalidProgram(format!(
                "element {} is a loop, every cocircuit vanishes at infinity",
                g + 1
            )));
        }
        if om.is_coloop(f) {
            return Err(OmError::InvalidProgram(format!(
                "element {} is a coloop, the objective is unconstrained",
                f + 1
            )));
        }
        Ok(Program { om, g, f })
    }

    pub fn om(&self) -> &'a OrientedMatroid {
        self.om
    }

    /// Direction between comodular cocircuits, by stored index. `+` means
    /// "towards the second argument".
    pub(crate) fn dir_idx(&self, i: usize, j: usize) -> Result<Sign> {
        let x = &self.om.cocircuits()[i];
        let y = &self.om.cocircuits()[j];
        let (xg, yg) = (x.get(self.g), y.get(self.g));
        match (xg.is_zero(), yg.is_zero()) {
            (false, false) => {
                if xg != yg {
                    return Err(OmError::InvalidProgram(format!(
                        "direction of ({x}, {y}) undefined: opposite signs at infinity"
                    )));
                }
                let ni = self.om.negation_of(i);
                let z = self.om.eliminate_idx(ni, j, self.g)?;
                Ok(self.om.cocircuits()[z].get(self.f))
            }
            (false, true) => {
                if !self.om.comodular_idx(i, j) {
                    return Err(OmError::NotComodular {
                        x: x.to_string(),
                        y: y.to_string(),
                    });
                }
                Ok(y.get(self.f))
            }
            (true, false) => {
                if !self.om.comodular_idx(i, j) {
                    return Err(OmError::NotComodular {
                        x: x.to_string(),
                        y: y.to_string(),
                    });
                }
                Ok(-x.get(self.f))
            }
            (true, true) => Err(OmError::InvalidProgram(format!(
                "direction of ({x}, {y}) undefined: both vanish at infinity"
            ))),
        }
    }

    /// Direction between comodular cocircuits `X`, `Y`:
    ///
    /// * both nonzero and equal at `g`: the `f`-value of the cocircuit
    ///   eliminating `g` between `-X` and `Y`;
    /// * `Y_g = 0`: `Y_f`; `X_g = 0`: `-X_f`.
    pub fn dir(&self, x: &SignVector, y: &SignVector) -> Result<Sign> {
        let i = self.om.require_index(x)?;
        let j = self.om.require_index(y)?;
        self.dir_idx(i, j)
    }

    /// The cocircuit graph: vertices are the cocircuits positive at `g`,
    /// edges the conformal comodular pairs, each carrying the direction
    /// relative to its smaller endpoint.
    pub fn build_graph(&self) -> Result<CocircuitGraph> {
        let verts: Vec<usize> = (0..self.om.cocircuits().len())
            .filter(|&i| self.om.cocircuits()[i].get(self.g) == Sign::Plus)
            .collect();
        let mut edges = Vec::new();
        for a in 0..verts.len() {
            for b in (a + 1)..verts.len() {
                let (i, j) = (verts[a], verts[b]);
                if self.om.conformal_idx(i, j) && self.om.comodular_idx(i, j) {
                    edges.push(GraphEdge {
                        a,
                        b,
                        dir: self.dir_idx(i, j)?,
                    });
                }
            }
        }
        Ok(CocircuitGraph {
            vertices: verts
                .into_iter()
                .map(|i| self.om.cocircuits()[i].clone())
                .collect(),
            edges,
        })
    }

    /// A directed cycle of the cocircuit graph, as cocircuits (first entry
    /// repeated at the end), if one exists.
    pub fn euclidean_witness(&self) -> Result<Option<Vec<SignVector>>> {
        let graph = self.build_graph()?;
        Ok(find_directed_cycle(&graph).map(|cycle| {
            cycle
                .into_iter()
                .map(|v| graph.vertices[v].clone())
                .collect()
        }))
    }

    /// No directed cycle in the cocircuit graph.
    pub fn is_euclidean(&self) -> Result<bool> {
        Ok(find_directed_cycle(&self.build_graph()?).is_none())
    }

    /// Some cocircuit is nonnegative everywhere.
    pub fn is_feasible(&self) -> bool {
        self.om
            .cocircuits()
            .iter()
            .any(|c| c.neg_set().is_empty())
    }

    /// Every nonnegative cocircuit is strictly positive at `g`.
    pub fn is_bounded(&self) -> bool {
        self.om
            .cocircuits()
            .iter()
            .filter(|c| c.neg_set().is_empty())
            .all(|c| c.get(self.g) == Sign::Plus)
    }

    /// The graph on the affine cocircuits after deleting `f`, returned with
    /// the deletion itself. An edge joins comodular pairs conformal in the
    /// deletion. Pairs whose full preimages are conformal keep the direction
    /// of the full graph; the rest split exactly at `f` and run from the
    /// larger `f`-value to the smaller.
    pub fn deletion_subgraph(&self) -> Result<(OrientedMatroid, CocircuitGraph)> {
        let del = self.om.delete(ElemSet::singleton(self.f))?;
        let keep: Vec<usize> = (0..self.om.n()).filter(|&e| e != self.f).collect();
        let g_del = if self.g > self.f { self.g - 1 } else { self.g };
        let verts: Vec<usize> = (0..del.cocircuits().len())
            .filter(|&d| del.cocircuits()[d].get(g_del) == Sign::Plus)
            .collect();
        // preimages: full cocircuits restricting to the vertex, one or two
        // (two only when they disagree exactly at f)
        let preimages: Vec<Vec<usize>> = verts
            .iter()
            .map(|&d| {
                (0..self.om.cocircuits().len())
                    .filter(|&i| self.om.cocircuits()[i].restrict(&keep) == del.cocircuits()[d])
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..verts.len() {
            for b in (a + 1)..verts.len() {
                let (da, db) = (verts[a], verts[b]);
                if !del.comodular_idx(da, db) || !del.conformal_idx(da, db) {
                    continue;
                }
                let mut lifted = None;
                'combos: for &i in &preimages[a] {
                    for &j in &preimages[b] {
                        if self.om.conformal_idx(i, j) {
                            lifted = Some(self.dir_idx(i, j)?);
                            break 'combos;
                        }
                    }
                }
                let dir = match lifted {
                    Some(d) => d,
                    // no conformal lift: unique preimages opposite at f
                    None => self.om.cocircuits()[preimages[a][0]].get(self.f),
                };
                edges.push(GraphEdge { a, b, dir });
            }
        }
        let vertices = verts
            .into_iter()
            .map(|d| del.cocircuits()[d].clone())
            .collect();
        Ok((del, CocircuitGraph { vertices, edges }))
    }
}

/// An edge of the cocircuit graph between vertex indices `a < b`; `dir` is
/// `+` for `a` towards `b`, `-` for `b` towards `a`, `0` for undirected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub dir: Sign,
}

/// The partially directed graph on the affine cocircuits.
#[derive(Clone, Debug)]
pub struct CocircuitGraph {
    pub vertices: Vec<SignVector>,
    pub edges: Vec<GraphEdge>,
}

impl CocircuitGraph {
    /// DOT rendering: strictly directed edges as arrows, undirected edges
    /// with arrowheads suppressed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cocircuit_graph {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
        }
        for e in &self.edges {
            match e.dir {
                Sign::Plus => out.push_str(&format!("  v{} -> v{};\n", e.a, e.b)),
                Sign::Minus => out.push_str(&format!("  v{} -> v{};\n", e.b, e.a)),
                Sign::Zero => {
                    out.push_str(&format!("  v{} -> v{} [dir=none];\n", e.a, e.b))
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Strongly connected components of an adjacency list (iterative Tarjan);
/// returns a component id per vertex.
fn strong_components(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut next_index = 0usize;
    let mut next_comp = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if index[s] != UNSEEN {
            continue;
        }
        index[s] = next_index;
        low[s] = next_index;
        next_index += 1;
        stack.push(s);
        on_stack[s] = true;
        call.push((s, 0));
        while let Some(&(v, child)) = call.last() {
            if child < adj[v].len() {
                call.last_mut().unwrap().1 += 1;
                let w = adj[v][child];
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Searches for a directed cycle: a closed vertex sequence walking edges
/// forward or undirected, using at least one strictly directed edge, with
/// distinct interior vertices. Works on the auxiliary digraph (undirected
/// edge = two arcs, strict edge = one arc): a cycle exists iff some strict
/// arc has both ends in one strongly connected component, and the return
/// path recovered by breadth-first search closes a simple cycle.
pub fn find_directed_cycle(graph: &CocircuitGraph) -> Option<Vec<usize>> {
    let n = graph.vertices.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut strict: Vec<(usize, usize)> = Vec::new();
    for e in &graph.edges {
        match e.dir {
            Sign::Zero => {
                adj[e.a].push(e.b);
                adj[e.b].push(e.a);
            }
            Sign::Plus => {
                adj[e.a].push(e.b);
                strict.push((e.a, e.b));
            }
            Sign::Minus => {
                adj[e.b].push(e.a);
                strict.push((e.b, e.a));
            }
        }
    }
    let comp = strong_components(&adj);
    for &(u, v) in &strict {
        if comp[u] != comp[v] {
            continue;
        }
        // Breadth-first path v -> u inside the component.
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([v]);
        parent[v] = v;
        'bfs: while let Some(w) = queue.pop_front() {
            for &x in &adj[w] {
                if comp[x] == comp[u] && parent[x] == usize::MAX {
                    parent[x] = w;
                    if x == u {
                        break 'bfs;
                    }
                    queue.push_back(x);
                }
            }
        }
        debug_assert_ne!(parent[u], usize::MAX);
        let mut path = vec![u];
        let mut w = u;
        while w != v {
            w = parent[w];
            path.push(w);
        }
        path.reverse();
        let mut cycle = vec![u];
        cycle.extend(path);
        return Some(cycle);
    }
    None
}

/// Ordered pairs `(g, f)` that make a valid program.
pub fn admissible_pairs(om: &OrientedMatroid) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for g in 0..om.n() {
        if om.is_loop(g) {
            continue;
        }
        for f in 0..om.n() {
            if f != g && !om.is_coloop(f) {
                out.push((g, f));
            }
        }
    }
    out
}

/// Outcome of the cycle search for one program.
#[derive(Clone, Debug)]
pub struct PairResult {
    pub g: usize,
    pub f: usize,
    pub witness: Option<Vec<SignVector>>,
}

impl PairResult {
    pub fn is_euclidean(&self) -> bool {
        self.witness.is_none()
    }
}

/// Cycle search over every admissible pair, in pair order. The pairs run in
/// parallel; the output order is fixed by the pair list.
pub fn euclid_all_pairs(om: &OrientedMatroid) -> Result<Vec<PairResult>> {
    admissible_pairs(om)
        .into_par_iter()
        .map(|(g, f)| {
            let witness = Program::new(om, g, f)?.euclidean_witness()?;
            Ok(PairResult { g, f, witness })
        })
        .collect()
}

/// True iff every admissible program has no directed cycle. Sequential and
/// short-circuiting, in deterministic pair order.
pub fn is_euclidean_om(om: &OrientedMatroid) -> Result<bool> {
    for (g, f) in admissible_pairs(om) {
        if !Program::new(om, g, f)?.is_euclidean()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First witness over the admissible pairs, if any: `(g, f, cycle)`.
pub fn euclidean_om_witness(
    om: &OrientedMatroid,
) -> Result<Option<(usize, usize, Vec<SignVector>)>> {
    for (g, f) in admissible_pairs(om) {
        if let Some(cycle) = Program::new(om, g, f)?.euclidean_witness()? {
            return Ok(Some((g, f, cycle)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fan5, l3, sv, u34};
    use crate::matroid::OrientedMatroid;
    use crate::sign::Sign;

    fn graph(n: usize, edges: &[(usize, usize, Sign)]) -> CocircuitGraph {
        CocircuitGraph {
            vertices: (0..n).map(|_| sv("+")).collect(),
            edges: edges
                .iter()
                .map(|&(a, b, dir)| GraphEdge { a, b, dir })
                .collect(),
        }
    }

    #[test]
    fn program_validity() {
        let om = l3();
        assert!(Program::new(&om, 0, 1).is_ok());
        assert!(Program::new(&om, 1, 1).is_err());
        assert!(Program::new(&om, 0, 5).is_err());
        // A loop cannot serve as infinity.
        let padded: Vec<SignVector> = om
            .cocircuits()
            .iter()
            .map(|c| c.extended(Sign::Zero))
            .collect();
        let with_loop = OrientedMatroid::from_cocircuits(4, 2, padded).unwrap();
        assert!(Program::new(&with_loop, 3, 0).is_err());
        assert!(Program::new(&with_loop, 0, 3).is_ok());
        // A coloop cannot serve as objective.
        let with_coloop = OrientedMatroid::from_representatives(
            3,
            vec![sv("+-0"), sv("00+")],
        )
        .unwrap();
        assert!(with_coloop.is_coloop(2));
        assert!(Program::new(&with_coloop, 0, 2).is_err());
        assert!(Program::new(&with_coloop, 2, 0).is_ok());
    }

    #[test]
    fn dir_by_elimination_on_l3() {
        let om = l3();
        let p = Program::new(&om, 0, 1).unwrap();
        assert_eq!(p.dir(&sv("+0+"), &sv("+-0")).unwrap(), Sign::Minus);
        assert_eq!(p.dir(&sv("+-0"), &sv("+0+")).unwrap(), Sign::Plus);
        // Both negative at infinity is also defined.
        assert_eq!(p.dir(&sv("-0-"), &sv("-+0")).unwrap(), Sign::Plus);
    }

    #[test]
    fn dir_mixed_cases_use_f_values() {
        let om = l3();
        let p = Program::new(&om, 0, 1).unwrap();
        // Y at infinity: direction is Y_f.
        assert_eq!(p.dir(&sv("+0+"), &sv("0++")).unwrap(), Sign::Plus);
        assert_eq!(p.dir(&sv("0++"), &sv("+0+")).unwrap(), Sign::Minus);
        assert_eq!(p.dir(&sv("+-0"), &sv("0--")).unwrap(), Sign::Minus);
    }

    #[test]
    fn dir_rejects_undefined_pairs() {
        let om = l3();
        let p = Program::new(&om, 0, 1).unwrap();
        assert!(matches!(
            p.dir(&sv("+0+"), &sv("-+0")),
            Err(OmError::InvalidProgram(_))
        ));
        assert!(matches!(
            p.dir(&sv("0++"), &sv("0--")),
            Err(OmError::InvalidProgram(_))
        ));
        // Non-comodular pair sharing the sign at infinity.
        let om = fan5();
        let p = Program::new(&om, 4, 0).unwrap();
        let x = sv("0-0--");
        let y = sv("-0+0-");
        assert_eq!(om.cocircuit_index(&x).is_some(), true);
        assert_eq!(om.cocircuit_index(&y).is_some(), true);
        assert!(matches!(
            p.dir(&x, &y),
            Err(OmError::NotComodular { .. })
        ));
    }

    #[test]
    fn l3_graph_has_one_directed_edge() {
        let om = l3();
        let p = Program::new(&om, 0, 1).unwrap();
        let graph = p.build_graph().unwrap();
        assert_eq!(graph.vertices, vec![sv("+-0"), sv("+0+")]);
        assert_eq!(
            graph.edges,
            vec![GraphEdge {
                a: 0,
                b: 1,
                dir: Sign::Plus
            }]
        );
    }

    #[test]
    fn u34_affine_graph_is_a_triangle() {
        let om = u34();
        let p = Program::new(&om, 3, 0).unwrap();
        let graph = p.build_graph().unwrap();
        assert_eq!(graph.vertices.len(), 3);
        assert_eq!(graph.edges.len(), 3);
        // f-values 0,0,+ for the three vertices: the two edges into the
        // f-positive vertex are directed, the remaining one undirected.
        let dirs: Vec<Sign> = graph.edges.iter().map(|e| e.dir).collect();
        assert_eq!(dirs.iter().filter(|d| d.is_zero()).count(), 1);
    }

    #[test]
    fn synthetic_cycle_detection() {
        // a -> b, b -> c, c -- a: directed cycle through the undirected edge.
        let g = graph(
            3,
            &[
                (0, 1, Sign::Plus),
                (1, 2, Sign::Plus),
                (0, 2, Sign::Zero),
            ],
        );
        let cycle = find_directed_cycle(&g).unwrap();
        assert_eq!(cycle, vec![0, 1, 2, 0]);

        // Undirected triangle: no strictly directed edge, no cycle.
        let g = graph(
            3,
            &[
                (0, 1, Sign::Zero),
                (1, 2, Sign::Zero),
                (0, 2, Sign::Zero),
            ],
        );
        assert!(find_directed_cycle(&g).is_none());

        // Strict edge without a return path.
        let g = graph(3, &[(0, 1, Sign::Plus), (1, 2, Sign::Zero)]);
        assert!(find_directed_cycle(&g).is_none());

        // Two directed triangles sharing a vertex; backward orientation.
        let g = graph(
            5,
            &[
                (0, 1, Sign::Minus),
                (1, 2, Sign::Minus),
                (0, 2, Sign::Plus),
                (2, 3, Sign::Plus),
                (3, 4, Sign::Plus),
                (2, 4, Sign::Minus),
            ],
        );
        let cycle = find_directed_cycle(&g).unwrap();
        assert_eq!(cycle.first(), cycle.last());
        assert!(cycle.len() >= 4);
    }

    #[test]
    fn small_instances_are_euclidean_on_all_pairs() {
        for om in [l3(), u34(), fan5()] {
            assert!(is_euclidean_om(&om).unwrap());
            assert!(euclidean_om_witness(&om).unwrap().is_none());
        }
        let results = euclid_all_pairs(&l3()).unwrap();
        assert_eq!(results.len(), 6);
        assert!(results.iter().all(|r| r.is_euclidean()));
    }

    #[test]
    fn parallel_and_sequential_pair_scans_agree() {
        let om = u34();
        let par = euclid_all_pairs(&om).unwrap();
        let pairs: Vec<(usize, usize)> = par.iter().map(|r| (r.g, r.f)).collect();
        assert_eq!(pairs, admissible_pairs(&om));
    }

    #[test]
    fn feasibility_and_boundedness() {
        let om = l3();
        let p = Program::new(&om, 0, 1).unwrap();
        assert!(p.is_feasible());
        // The nonnegative cocircuits are (0,+,+) and (+,0,+): one vanishes
        // at 0, so infinity g=0 is unbounded, g=2 is bounded.
        assert!(!p.is_bounded());
        assert!(Program::new(&om, 2, 1).unwrap().is_bounded());
    }

    #[test]
    fn dot_export_lists_vertices_and_arcs() {
        let om = l3();
        let p = Program::new(&om, 0, 1).unwrap();
        let dot = p.build_graph().unwrap().to_dot();
        assert!(dot.contains("v0 [label=\"+-0\"]"));
        assert!(dot.contains("v0 -> v1;"));
        assert!(!dot.contains("dir=none"));
    }

    #[test]
    fn deletion_subgraph_directs_split_pairs_by_f_value() {
        // Four points on a rank-2 line: (1,0), (0,1), (1,1), (1,-1).
        let om = crate::ingest::om_from_vectors(&crate::ingest::VectorConfig::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
        ))
        .unwrap();
        let p = Program::new(&om, 0, 1).unwrap();
        let (del, graph) = p.deletion_subgraph().unwrap();
        assert_eq!(del.n(), 3);
        // Affine survivors after deleting element 1: the restrictions of
        // (+,-,0,+) and (+,+,+,0), which disagree only at the deleted f.
        assert_eq!(graph.vertices, vec![sv("+0+"), sv("++0")]);
        assert_eq!(
            graph.edges,
            vec![GraphEdge { a: 0, b: 1, dir: Sign::Minus }]
        );

        // With f on the coplanar element of fan5 the subgraph keeps the
        // directions induced from the full graph.
        let om = fan5();
        let p = Program::new(&om, 3, 4).unwrap();
        let (del, graph) = p.deletion_subgraph().unwrap();
        assert_eq!(del.n(), 4);
        let full = Program::new(&om, 3, 4).unwrap().build_graph().unwrap();
        assert!(graph.vertices.len() <= full.vertices.len());
        for e in &graph.edges {
            assert_ne!(graph.vertices[e.a], graph.vertices[e.b]);
        }
    }
}
