//! Edge oracles for the five graphs, collapsed-graph construction, and exact
//! distance computations.
//!
//! Graphs are built on cyclic-subgroup ids (see [`crate::collapse`]). Two
//! builders produce identical graphs: a direct all-pairs enumeration, and an
//! orbit-propagated builder that evaluates the oracle only on rows of orbit
//! representatives and transports the rows along the conjugation action. The
//! propagated builder is what makes the half-million-element groups feasible;
//! the direct builder doubles as its correctness oracle in the tests.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::collapse::{CyclicId, CyclicSubgroupTable, OrbitDecomposition};
use crate::group::{ElementId, FiniteGroup, SubgroupSet};

/// Which adjacency relation a graph uses. Each tag has exactly one oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `x ~ y` iff `xy = yx`.
    Commuting,
    /// `x ~ y` iff `<x>` normalises `<y>` or `<y>` normalises `<x>`.
    Normalising,
    /// `x ~ y` iff `<x><y> = <y><x>` as sets (equivalently the product is a
    /// subgroup).
    Permuting,
    /// `x ~ y` iff an iterated subgroup commutator `[<y>,<x>;n]` or
    /// `[<x>,<y>;n]` is trivial for some n >= 1.
    Engel,
    /// `x ~ y` iff `<x, y>` is soluble.
    Soluble,
}

impl GraphKind {
    pub const ALL: [GraphKind; 5] = [
        GraphKind::Commuting,
        GraphKind::Normalising,
        GraphKind::Permuting,
        GraphKind::Engel,
        GraphKind::Soluble,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Commuting => "commuting",
            GraphKind::Normalising => "normalising",
            GraphKind::Permuting => "permuting",
            GraphKind::Engel => "engel",
            GraphKind::Soluble => "soluble",
        }
    }

    fn tag(self) -> u8 {
        match self {
            GraphKind::Commuting => 0,
            GraphKind::Normalising => 1,
            GraphKind::Permuting => 2,
            GraphKind::Engel => 3,
            GraphKind::Soluble => 4,
        }
    }
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GraphKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "commuting" => Ok(GraphKind::Commuting),
            "normalising" => Ok(GraphKind::Normalising),
            "permuting" => Ok(GraphKind::Permuting),
            "engel" => Ok(GraphKind::Engel),
            "soluble" => Ok(GraphKind::Soluble),
            _ => Err(format!(
                "unknown graph kind {s:?} (expected commuting|normalising|permuting|engel|soluble)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge budget exceeded: more than {max} edges")]
    Budget { max: usize },
    #[error("distance to the trivial subgroup is undefined")]
    TrivialSubset,
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Whether `a ~ b` in the graph of the given kind. The two ids must differ;
/// vertices carry no self-loops.
pub fn adjacent(
    kind: GraphKind,
    g: &FiniteGroup,
    table: &CyclicSubgroupTable,
    a: CyclicId,
    b: CyclicId,
) -> bool {
    assert_ne!(a, b, "adjacency is only defined on distinct vertices");
    match kind {
        GraphKind::Commuting => {
            let ca = table.canonical_generator(a).0;
            let cb = table.canonical_generator(b).0;
            g.mul_raw(ca, cb) == g.mul_raw(cb, ca)
        }
        GraphKind::Normalising => normalising_adjacent(g, table, a, b),
        GraphKind::Permuting => permuting_adjacent(g, table, a, b),
        GraphKind::Engel => {
            let sa = subgroup_of(g, table, a);
            let sb = subgroup_of(g, table, b);
            engel_reaches_trivial(g, &sa, &sb) || engel_reaches_trivial(g, &sb, &sa)
        }
        GraphKind::Soluble => {
            let ca = table.canonical_generator(a);
            let cb = table.canonical_generator(b);
            g.is_soluble_subgroup(&g.closure(&[ca, cb]))
        }
    }
}

#[inline]
fn normalising_adjacent(
    g: &FiniteGroup,
    table: &CyclicSubgroupTable,
    a: CyclicId,
    b: CyclicId,
) -> bool {
    let ca = table.canonical_generator(a).0;
    let cb = table.canonical_generator(b).0;
    table.subgroup_contains(b, g.conj_raw(cb, ca)) || table.subgroup_contains(a, g.conj_raw(ca, cb))
}

/// `AB = BA` as sets, decided with two cheap filters before the product-set
/// comparison: a normalising pair always permutes, and `AB = BA` forces `AB`
/// to be a subgroup whose order `|A||B| / |A n B|` must divide the group
/// order.
fn permuting_adjacent(
    g: &FiniteGroup,
    table: &CyclicSubgroupTable,
    a: CyclicId,
    b: CyclicId,
) -> bool {
    if normalising_adjacent(g, table, a, b) {
        return true;
    }
    let sa = table.members(a);
    let sb = table.members(b);
    let mut inter = 0usize;
    {
        let (mut i, mut j) = (0, 0);
        while i < sa.len() && j < sb.len() {
            match sa[i].cmp(&sb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    inter += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    let product_order = sa.len() * sb.len() / inter;
    if !g.order().is_multiple_of(product_order) {
        return false;
    }
    // BA as a sorted set, then check AB is contained in it; the sizes agree,
    // so containment is equality. Most non-edges fail on an early product.
    let mut ba = Vec::with_capacity(product_order);
    for &y in sb {
        for &x in sa {
            ba.push(g.mul_raw(y, x));
        }
    }
    ba.sort_unstable();
    ba.dedup();
    debug_assert_eq!(ba.len(), product_order);
    for &x in sa {
        for &y in sb {
            if ba.binary_search(&g.mul_raw(x, y)).is_err() {
                return false;
            }
        }
    }
    true
}

fn subgroup_of(g: &FiniteGroup, table: &CyclicSubgroupTable, id: CyclicId) -> SubgroupSet {
    SubgroupSet::from_sorted(g, table.members(id).to_vec())
}

/// Iterates `X_0 = B`, `X_{n+1} = [X_n, A]` and reports whether the chain
/// reaches the trivial subgroup before repeating. The subgroup lattice is
/// finite, so a repeat proves the chain never becomes trivial.
fn engel_reaches_trivial(g: &FiniteGroup, a: &SubgroupSet, b: &SubgroupSet) -> bool {
    let mut x = b.clone();
    let mut seen: Vec<Vec<u32>> = Vec::new();
    loop {
        if x.is_trivial() {
            return true;
        }
        let key = x.raw_elements().to_vec();
        if seen.contains(&key) {
            return false;
        }
        seen.push(key);
        x = g.subgroup_commutator(&x, a);
    }
}

/// A symmetric graph on cyclic-subgroup ids in compressed sparse row form.
/// Neighbor lists are sorted and self-loop free.
pub struct CollapsedGraph {
    kind: GraphKind,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl CollapsedGraph {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Writes the edge list: a header `kind vertex_count edge_count`, then
    /// one `i j` line per edge with `i < j`.
    pub fn export_edge_list(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{} {} {}", self.kind.name(), self.vertex_count(), self.edge_count())?;
        for i in 0..self.vertex_count() as u32 {
            for &j in self.neighbors(i) {
                if i < j {
                    writeln!(w, "{i} {j}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GraphBuildOptions {
    /// Hard cap on the number of undirected edges; exceeding it aborts the
    /// build with [`GraphError::Budget`] instead of exhausting memory.
    pub max_edges: usize,
    /// Resume file for the representative-row phase of the propagated
    /// builder.
    pub checkpoint: Option<PathBuf>,
    /// Emit coarse progress lines on stderr.
    pub progress: bool,
}

impl Default for GraphBuildOptions {
    fn default() -> Self {
        GraphBuildOptions {
            max_edges: 200_000_000,
            checkpoint: None,
            progress: false,
        }
    }
}

/// Builds the collapsed graph by evaluating the oracle on every unordered
/// pair of ids. Quadratic in the vertex count; the reference builder.
pub fn build_collapsed_graph_direct(
    kind: GraphKind,
    g: &FiniteGroup,
    table: &CyclicSubgroupTable,
    opts: &GraphBuildOptions,
) -> Result<CollapsedGraph, GraphError> {
    let v = table.count();
    let rows: Vec<Vec<u32>> = (0..v as u32)
        .into_par_iter()
        .map(|i| {
            (0..v as u32)
                .filter(|&j| j != i && adjacent(kind, g, table, i, j))
                .collect()
        })
        .collect();
    assemble(kind, rows, opts.max_edges)
}

/// Builds the collapsed graph by computing full neighbor rows only for orbit
/// representatives and transporting them along the conjugation action, which
/// is a graph automorphism for every kind.
pub fn build_collapsed_graph(
    kind: GraphKind,
    g: &FiniteGroup,
    table: &CyclicSubgroupTable,
    orbits: &OrbitDecomposition,
    opts: &GraphBuildOptions,
) -> Result<CollapsedGraph, GraphError> {
    let v = table.count();
    let gens = g.generators();
    // conj[k][id] = id of the conjugate subgroup under generator k
    let conj: Vec<Vec<u32>> = gens
        .par_iter()
        .map(|&gen| {
            (0..v as u32)
                .map(|id| table.conjugate_id(g, id, gen))
                .collect()
        })
        .collect();

    let reps = orbits.representatives();
    let mut rows: Vec<Option<Vec<u32>>> = vec![None; v];

    // Representative rows: the oracle-heavy phase, checkpointable.
    let mut done = vec![false; reps.len()];
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let loaded = load_checkpoint(path, kind, g.order(), v, reps.len())?;
            for (ri, row) in loaded {
                rows[reps[ri] as usize] = Some(row);
                done[ri] = true;
            }
            if opts.progress {
                eprintln!(
                    "checkpoint: {} of {} representative rows loaded",
                    done.iter().filter(|&&d| d).count(),
                    reps.len()
                );
            }
        }
    }
    let chunk = std::cmp::max(1, reps.len() / 64);
    let mut completed = done.iter().filter(|&&d| d).count();
    for block in (0..reps.len()).collect::<Vec<_>>().chunks(chunk) {
        let todo: Vec<usize> = block.iter().copied().filter(|&ri| !done[ri]).collect();
        if todo.is_empty() {
            continue;
        }
        let computed: Vec<(usize, Vec<u32>)> = todo
            .par_iter()
            .map(|&ri| {
                let rep = reps[ri];
                let row: Vec<u32> = (0..v as u32)
                    .filter(|&j| j != rep && adjacent(kind, g, table, rep, j))
                    .collect();
                (ri, row)
            })
            .collect();
        for (ri, row) in computed {
            rows[reps[ri] as usize] = Some(row);
            done[ri] = true;
        }
        completed += todo.len();
        if let Some(path) = &opts.checkpoint {
            save_checkpoint(path, kind, g.order(), v, reps, &rows)?;
        }
        if opts.progress {
            eprintln!("rows: {completed}/{} representatives", reps.len());
        }
    }

    // Transport rows across each orbit in BFS order from its representative.
    let mut total: usize = reps.iter().map(|&r| rows[r as usize].as_ref().unwrap().len()).sum();
    let mut queue: Vec<u32> = Vec::new();
    for &rep in reps {
        queue.clear();
        queue.push(rep);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for ck in &conj {
                let w = ck[u as usize];
                if rows[w as usize].is_none() {
                    let base = rows[u as usize].as_ref().unwrap();
                    let mut row: Vec<u32> = base.iter().map(|&n| ck[n as usize]).collect();
                    row.sort_unstable();
                    total += row.len();
                    if total / 2 > opts.max_edges {
                        return Err(GraphError::Budget {
                            max: opts.max_edges,
                        });
                    }
                    rows[w as usize] = Some(row);
                    queue.push(w);
                }
            }
        }
    }
    let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.expect("orbit covers id")).collect();
    assemble(kind, rows, opts.max_edges)
}

fn assemble(
    kind: GraphKind,
    rows: Vec<Vec<u32>>,
    max_edges: usize,
) -> Result<CollapsedGraph, GraphError> {
    let total: usize = rows.iter().map(|r| r.len()).sum();
    if total / 2 > max_edges {
        return Err(GraphError::Budget { max: max_edges });
    }
    let mut offsets = Vec::with_capacity(rows.len() + 1);
    offsets.push(0usize);
    let mut neighbors = Vec::with_capacity(total);
    for row in rows {
        debug_assert!(row.windows(2).all(|w| w[0] < w[1]));
        neighbors.extend_from_slice(&row);
        offsets.push(neighbors.len());
    }
    debug_assert_eq!(total % 2, 0, "adjacency must be symmetric");
    Ok(CollapsedGraph {
        kind,
        offsets,
        neighbors,
    })
}

const CHECKPOINT_MAGIC: &[u8; 8] = b"GGCHKPT1";

fn save_checkpoint(
    path: &Path,
    kind: GraphKind,
    order: usize,
    v: usize,
    reps: &[CyclicId],
    rows: &[Option<Vec<u32>>],
) -> Result<(), GraphError> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        f.write_all(CHECKPOINT_MAGIC)?;
        f.write_all(&[kind.tag()])?;
        f.write_all(&(order as u64).to_le_bytes())?;
        f.write_all(&(v as u32).to_le_bytes())?;
        f.write_all(&(reps.len() as u32).to_le_bytes())?;
        let mut bitmap = vec![0u8; reps.len().div_ceil(8)];
        for (ri, &rep) in reps.iter().enumerate() {
            if rows[rep as usize].is_some() {
                bitmap[ri / 8] |= 1 << (ri % 8);
            }
        }
        f.write_all(&bitmap)?;
        for &rep in reps {
            if let Some(row) = &rows[rep as usize] {
                f.write_all(&(row.len() as u32).to_le_bytes())?;
                for &n in row {
                    f.write_all(&n.to_le_bytes())?;
                }
            }
        }
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[allow(clippy::type_complexity)]
fn load_checkpoint(
    path: &Path,
    kind: GraphKind,
    order: usize,
    v: usize,
    rep_count: usize,
) -> Result<Vec<(usize, Vec<u32>)>, GraphError> {
    let fail = |reason: &str| GraphError::Checkpoint {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    let mut data = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut data)?;
    if data.len() < 8 + 1 + 8 + 4 + 4 || &data[..8] != CHECKPOINT_MAGIC {
        return Err(fail("bad magic header"));
    }
    let mut at = 8;
    let tag = data[at];
    at += 1;
    let forder = u64::from_le_bytes(data[at..at + 8].try_into().unwrap());
    at += 8;
    let fv = u32::from_le_bytes(data[at..at + 4].try_into().unwrap());
    at += 4;
    let freps = u32::from_le_bytes(data[at..at + 4].try_into().unwrap());
    at += 4;
    if tag != kind.tag() || forder != order as u64 || fv != v as u32 || freps != rep_count as u32 {
        return Err(fail("metadata does not match this build"));
    }
    let bitmap_len = rep_count.div_ceil(8);
    if data.len() < at + bitmap_len {
        return Err(fail("truncated bitmap"));
    }
    let bitmap = &data[at..at + bitmap_len];
    at += bitmap_len;
    let mut out = Vec::new();
    for ri in 0..rep_count {
        if bitmap[ri / 8] & (1 << (ri % 8)) == 0 {
            continue;
        }
        if data.len() < at + 4 {
            return Err(fail("truncated row header"));
        }
        let len = u32::from_le_bytes(data[at..at + 4].try_into().unwrap()) as usize;
        at += 4;
        if data.len() < at + 4 * len {
            return Err(fail("truncated row data"));
        }
        let mut row = Vec::with_capacity(len);
        for k in 0..len {
            row.push(u32::from_le_bytes(data[at + 4 * k..at + 4 * k + 4].try_into().unwrap()));
        }
        at += 4 * len;
        out.push((ri, row));
    }
    Ok(out)
}

/// Per-vertex distances from a BFS source; `u32::MAX` marks unreachable.
pub struct DistanceResult {
    dist: Vec<u32>,
}

pub const UNREACHABLE: u32 = u32::MAX;

impl DistanceResult {
    pub fn distance(&self, v: u32) -> u32 {
        self.dist[v as usize]
    }

    pub fn reachable(&self, v: u32) -> bool {
        self.dist[v as usize] != UNREACHABLE
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }

    pub fn max_finite(&self) -> u32 {
        self.dist
            .iter()
            .filter(|&&d| d != UNREACHABLE)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }
}

pub fn bfs(graph: &CollapsedGraph, source: u32) -> DistanceResult {
    bfs_multi(graph, std::iter::once(source))
}

/// BFS from several sources at distance 0.
pub fn bfs_multi(graph: &CollapsedGraph, sources: impl IntoIterator<Item = u32>) -> DistanceResult {
    let mut dist = vec![UNREACHABLE; graph.vertex_count()];
    let mut queue: Vec<u32> = Vec::new();
    for s in sources {
        if dist[s as usize] == UNREACHABLE {
            dist[s as usize] = 0;
            queue.push(s);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        for &w in graph.neighbors(u) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = du + 1;
                queue.push(w);
            }
        }
    }
    DistanceResult { dist }
}

/// BFS that also records a parent pointer per reached vertex, for extracting
/// shortest paths.
pub fn bfs_with_parents(graph: &CollapsedGraph, source: u32) -> (DistanceResult, Vec<u32>) {
    let mut dist = vec![UNREACHABLE; graph.vertex_count()];
    let mut parent = vec![UNREACHABLE; graph.vertex_count()];
    let mut queue: Vec<u32> = vec![source];
    dist[source as usize] = 0;
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        for &w in graph.neighbors(u) {
            if dist[w as usize] == UNREACHABLE {
                dist[w as usize] = du + 1;
                parent[w as usize] = u;
                queue.push(w);
            }
        }
    }
    (DistanceResult { dist }, parent)
}

/// Maximum finite distance from `source`, flagged when some vertex is
/// unreachable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eccentricity {
    Finite(u32),
    /// Some vertices are unreachable; the payload is the largest finite
    /// distance seen.
    Unreachable(u32),
}

pub fn eccentricity(graph: &CollapsedGraph, source: u32) -> Eccentricity {
    let d = bfs(graph, source);
    let m = d.max_finite();
    if d.all_reachable() {
        Eccentricity::Finite(m)
    } else {
        Eccentricity::Unreachable(m)
    }
}

/// Connected components as sorted vertex lists, ordered by smallest member.
pub fn connected_components(graph: &CollapsedGraph) -> Vec<Vec<u32>> {
    let v = graph.vertex_count();
    let mut seen = vec![false; v];
    let mut out = Vec::new();
    for start in 0..v as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut comp = vec![start];
        seen[start as usize] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &w in graph.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Exact diameter, or the component count when disconnected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(u32),
    Disconnected { components: usize },
}

impl Diameter {
    pub fn finite(self) -> Option<u32> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Disconnected { .. } => None,
        }
    }
}

/// Diameter via eccentricities of orbit representatives only, which is exact
/// because conjugation is a graph automorphism, so eccentricity is constant
/// on each orbit and every vertex lies in some orbit.
pub fn diameter(graph: &CollapsedGraph, orbits: &OrbitDecomposition) -> Diameter {
    let comps = connected_components(graph);
    if comps.len() > 1 {
        return Diameter::Disconnected {
            components: comps.len(),
        };
    }
    let d = orbits
        .representatives()
        .par_iter()
        .map(|&rep| match eccentricity(graph, rep) {
            Eccentricity::Finite(d) => d,
            Eccentricity::Unreachable(_) => unreachable!("graph is connected"),
        })
        .max()
        .unwrap_or(0);
    Diameter::Finite(d)
}

/// Exact diameter of one component, by BFS from each of its vertices.
pub fn component_diameter(graph: &CollapsedGraph, component: &[u32]) -> u32 {
    component
        .par_iter()
        .map(|&v| {
            let d = bfs(graph, v);
            component.iter().map(|&w| d.distance(w)).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Element-level distance from `x` to the subgroup `H` in the collapsed
/// graph's metric: 0 when `x` lies in `H`, otherwise the minimum over
/// non-identity `h` in `H` of `d(x, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

pub fn distance_to_subset(
    graph: &CollapsedGraph,
    table: &CyclicSubgroupTable,
    x: ElementId,
    h: &SubgroupSet,
) -> Result<Distance, GraphError> {
    if h.is_trivial() {
        return Err(GraphError::TrivialSubset);
    }
    if h.contains(x) {
        return Ok(Distance::Finite(0));
    }
    let src = table.vertex_of(x).expect("x is not the identity");
    let mut targets = vec![false; graph.vertex_count()];
    for e in h.nontrivial_elements() {
        targets[table.vertex_of(e).expect("non-identity") as usize] = true;
    }
    // A non-identity element of H generating the same cyclic subgroup as x
    // is adjacent to x (distinct generators of one cyclic subgroup are always
    // joined), so the answer is 1 in that case.
    if targets[src as usize] {
        return Ok(Distance::Finite(1));
    }
    let d = bfs(graph, src);
    let best = (0..graph.vertex_count() as u32)
        .filter(|&v| targets[v as usize])
        .map(|v| d.distance(v))
        .min()
        .unwrap_or(UNREACHABLE);
    if best == UNREACHABLE {
        Ok(Distance::Unreachable)
    } else {
        Ok(Distance::Finite(best))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    fn graph_for(g: &FiniteGroup, kind: GraphKind) -> (CyclicSubgroupTable, OrbitDecomposition, CollapsedGraph) {
        let t = CyclicSubgroupTable::build(g).unwrap();
        let o = OrbitDecomposition::compute(g, &t);
        let gr = build_collapsed_graph(kind, g, &t, &o, &GraphBuildOptions::default()).unwrap();
        (t, o, gr)
    }

    fn a4() -> FiniteGroup {
        FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    #[test]
    fn normalising_oracle_s3() {
        let g = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let find = |p: &[usize]| {
            t.vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == p)
                    .unwrap(),
            )
            .unwrap()
        };
        let a3 = find(&[1, 2, 0]);
        let t12 = find(&[1, 0, 2]);
        let t13 = find(&[2, 1, 0]);
        assert!(adjacent(GraphKind::Normalising, &g, &t, t12, a3));
        assert!(!adjacent(GraphKind::Normalising, &g, &t, t12, t13));
    }

    #[test]
    #[should_panic(expected = "distinct vertices")]
    fn adjacency_rejects_equal_ids() {
        let g = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        adjacent(GraphKind::Commuting, &g, &t, 0, 0);
    }

    #[test]
    fn permuting_oracle_a4() {
        // <(123)> and <(12)(34)> do not permute in A4: the product set has 6
        // elements but A4 has no subgroup of order 6.
        let g = a4();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let find = |p: &[usize]| {
            t.vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == p)
                    .unwrap(),
            )
            .unwrap()
        };
        let c3 = find(&[1, 2, 0, 3]);
        let v = find(&[1, 0, 3, 2]);
        assert!(!adjacent(GraphKind::Permuting, &g, &t, c3, v));
    }

    #[test]
    fn engel_oracle_s3() {
        let g = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let find = |p: &[usize]| {
            t.vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == p)
                    .unwrap(),
            )
            .unwrap()
        };
        let a3 = find(&[1, 2, 0]);
        let t12 = find(&[1, 0, 2]);
        let t13 = find(&[2, 1, 0]);
        assert!(adjacent(GraphKind::Engel, &g, &t, t12, a3));
        // two transpositions generate all of S3; neither iterated commutator
        // chain terminates
        assert!(!adjacent(GraphKind::Engel, &g, &t, t12, t13));
    }

    #[test]
    fn soluble_oracle() {
        let g = construct::make_symmetric(5).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        // a 5-cycle and a transposition generate S5: not soluble
        let five = t
            .vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == vec![1, 2, 3, 4, 0])
                    .unwrap(),
            )
            .unwrap();
        let swap = t
            .vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == vec![1, 0, 2, 3, 4])
                    .unwrap(),
            )
            .unwrap();
        assert!(!adjacent(GraphKind::Soluble, &g, &t, five, swap));
        // but any pair inside a soluble group is adjacent
        let s3 = construct::make_symmetric(3).unwrap();
        let ts = CyclicSubgroupTable::build(&s3).unwrap();
        for i in 0..ts.count() as u32 {
            for j in i + 1..ts.count() as u32 {
                assert!(adjacent(GraphKind::Soluble, &s3, &ts, i, j));
            }
        }
    }

    #[test]
    fn s3_normalising_graph() {
        let g = construct::make_symmetric(3).unwrap();
        let (t, o, gr) = graph_for(&g, GraphKind::Normalising);
        assert_eq!(gr.vertex_count(), 4);
        assert_eq!(gr.edge_count(), 3);
        assert_eq!(connected_components(&gr).len(), 1);
        assert_eq!(diameter(&gr, &o), Diameter::Finite(2));
        // eccentricities: 1 from the A3 vertex, 2 from a transposition vertex
        let a3 = t
            .vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == vec![1, 2, 0])
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(eccentricity(&gr, a3), Eccentricity::Finite(1));
        let t12 = t
            .vertex_of(
                g.elements()
                    .find(|&e| g.permutation_of(e).unwrap() == vec![1, 0, 2])
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(eccentricity(&gr, t12), Eccentricity::Finite(2));
    }

    #[test]
    fn single_vertex_graph() {
        let g = construct::make_cyclic(3).unwrap();
        let (_, o, gr) = graph_for(&g, GraphKind::Normalising);
        assert_eq!(gr.vertex_count(), 1);
        assert_eq!(gr.edge_count(), 0);
        assert_eq!(diameter(&gr, &o), Diameter::Finite(0));
        assert_eq!(eccentricity(&gr, 0), Eccentricity::Finite(0));
    }

    #[test]
    fn c6_graph_is_complete() {
        let g = construct::make_cyclic(6).unwrap();
        let (_, o, gr) = graph_for(&g, GraphKind::Normalising);
        assert_eq!(gr.vertex_count(), 3);
        assert_eq!(gr.edge_count(), 3);
        assert_eq!(diameter(&gr, &o), Diameter::Finite(1));
    }

    #[test]
    fn a4_disconnected_normalising_graph() {
        let g = a4();
        let (_, o, gr) = graph_for(&g, GraphKind::Normalising);
        assert_eq!(gr.vertex_count(), 7);
        let comps = connected_components(&gr);
        assert_eq!(comps.len(), 5);
        assert_eq!(diameter(&gr, &o), Diameter::Disconnected { components: 5 });
        let max_comp_diam = comps
            .iter()
            .map(|c| component_diameter(&gr, c))
            .max()
            .unwrap();
        assert_eq!(max_comp_diam, 1);
    }

    #[test]
    fn a4_hierarchy_edge_counts() {
        let g = a4();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let o = OrbitDecomposition::compute(&g, &t);
        let count = |kind| {
            build_collapsed_graph(kind, &g, &t, &o, &GraphBuildOptions::default())
                .unwrap()
                .edge_count()
        };
        let k = count(GraphKind::Commuting);
        let n = count(GraphKind::Normalising);
        let p = count(GraphKind::Permuting);
        assert!(k <= n && n <= p);
        assert_eq!((k, n, p), (3, 3, 3));
    }

    #[test]
    fn propagated_matches_direct_on_many_groups() {
        let groups: Vec<FiniteGroup> = vec![
            construct::make_symmetric(4).unwrap(),
            construct::make_dihedral(9).unwrap(),
            construct::make_cyclic(24).unwrap(),
            a4(),
            construct::direct_product(
                &construct::make_dihedral(3).unwrap(),
                &construct::make_cyclic(2).unwrap(),
            )
            .unwrap(),
        ];
        for g in &groups {
            let t = CyclicSubgroupTable::build(g).unwrap();
            let o = OrbitDecomposition::compute(g, &t);
            for kind in GraphKind::ALL {
                let a = build_collapsed_graph(kind, g, &t, &o, &GraphBuildOptions::default())
                    .unwrap();
                let b =
                    build_collapsed_graph_direct(kind, g, &t, &GraphBuildOptions::default())
                        .unwrap();
                assert_eq!(a.offsets, b.offsets, "{kind} offsets differ");
                assert_eq!(a.neighbors, b.neighbors, "{kind} neighbors differ");
            }
        }
    }

    #[test]
    fn graph_is_symmetric_and_loop_free() {
        let g = construct::make_symmetric(4).unwrap();
        let (_, _, gr) = graph_for(&g, GraphKind::Permuting);
        for i in 0..gr.vertex_count() as u32 {
            for &j in gr.neighbors(i) {
                assert_ne!(i, j);
                assert!(gr.has_edge(j, i));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = construct::make_cyclic(30).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let o = OrbitDecomposition::compute(&g, &t);
        let opts = GraphBuildOptions {
            max_edges: 3,
            ..Default::default()
        };
        assert!(matches!(
            build_collapsed_graph(GraphKind::Normalising, &g, &t, &o, &opts),
            Err(GraphError::Budget { .. })
        ));
    }

    #[test]
    fn distance_to_subset_cases() {
        let s3 = construct::make_symmetric(3).unwrap();
        let t = CyclicSubgroupTable::build(&s3).unwrap();
        let o = OrbitDecomposition::compute(&s3, &t);
        let gr = build_collapsed_graph(GraphKind::Normalising, &s3, &t, &o, &Default::default())
            .unwrap();
        let r = s3
            .elements()
            .find(|&e| s3.permutation_of(e).unwrap() == vec![1, 2, 0])
            .unwrap();
        let a3 = s3.cyclic_subgroup(r);
        // x inside H
        assert_eq!(
            distance_to_subset(&gr, &t, r, &a3).unwrap(),
            Distance::Finite(0)
        );
        // a transposition is adjacent to A3
        let t12 = s3
            .elements()
            .find(|&e| s3.permutation_of(e).unwrap() == vec![1, 0, 2])
            .unwrap();
        assert_eq!(
            distance_to_subset(&gr, &t, t12, &a3).unwrap(),
            Distance::Finite(1)
        );
        // trivial subgroup rejected
        assert!(distance_to_subset(&gr, &t, t12, &SubgroupSet::trivial(&s3)).is_err());

        // disconnected case: order-3 element to V4 in A4
        let a4 = a4();
        let t4 = CyclicSubgroupTable::build(&a4).unwrap();
        let o4 = OrbitDecomposition::compute(&a4, &t4);
        let g4 = build_collapsed_graph(GraphKind::Normalising, &a4, &t4, &o4, &Default::default())
            .unwrap();
        let three = a4
            .elements()
            .find(|&e| a4.element_order(e) == 3)
            .unwrap();
        let v4 = a4.normal_closure(
            a4.elements()
                .find(|&e| a4.element_order(e) == 2)
                .unwrap(),
        );
        assert_eq!(
            distance_to_subset(&g4, &t4, three, &v4).unwrap(),
            Distance::Unreachable
        );
    }

    #[test]
    fn export_format() {
        let g = construct::make_symmetric(3).unwrap();
        let (_, _, gr) = graph_for(&g, GraphKind::Normalising);
        let mut buf = Vec::new();
        gr.export_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "normalising 4 3");
        let edges: Vec<&str> = lines.collect();
        assert_eq!(edges.len(), 3);
        for e in edges {
            let parts: Vec<u32> = e.split(' ').map(|x| x.parse().unwrap()).collect();
            assert!(parts[0] < parts[1]);
        }
    }

    #[test]
    fn checkpoint_roundtrip_and_corruption() {
        let g = construct::make_symmetric(4).unwrap();
        let t = CyclicSubgroupTable::build(&g).unwrap();
        let o = OrbitDecomposition::compute(&g, &t);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.ck");
        let opts = GraphBuildOptions {
            checkpoint: Some(path.clone()),
            ..Default::default()
        };
        let a = build_collapsed_graph(GraphKind::Normalising, &g, &t, &o, &opts).unwrap();
        assert!(path.exists());
        // resume from the finished checkpoint: identical graph
        let b = build_collapsed_graph(GraphKind::Normalising, &g, &t, &o, &opts).unwrap();
        assert_eq!(a.neighbors, b.neighbors);
        // corrupt the magic header
        std::fs::write(&path, b"NOTMAGIC").unwrap();
        assert!(matches!(
            build_collapsed_graph(GraphKind::Normalising, &g, &t, &o, &opts),
            Err(GraphError::Checkpoint { .. })
        ));
    }
}
