//! Combinatorial maps: orientable ribbon graphs encoded by a pair of
//! permutations on darts, plus the spanning-subgraph statistics (components,
//! rank, nullity, boundary components, genus) used by the subset expansions.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("sigma is not a permutation of 0..{expected}: {detail}")]
    BadSigma { expected: usize, detail: String },
    #[error("alpha is not a fixed-point-free involution on 0..{expected}: {detail}")]
    BadAlpha { expected: usize, detail: String },
    #[error("dart count must be even, got {0}")]
    OddDartCount(usize),
    #[error("edge index {index} out of range (map has {edges} edges)")]
    EdgeOutOfRange { index: usize, edges: usize },
    #[error("operation requires a connected map, but it has {components} components")]
    Disconnected { components: usize },
    #[error("map text: {0}")]
    Parse(String),
}

/// Set of edge indices, stored as a bitmask. Maps handled here stay small
/// (subset expansion is exponential in the edge count anyway).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(edge_count: usize) -> Self {
        assert!(edge_count <= 63, "edge set limited to 63 edges");
        EdgeSet((1u64 << edge_count) - 1)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut bits = 0u64;
        for i in indices {
            assert!(i < 63);
            bits |= 1 << i;
        }
        EdgeSet(bits)
    }

    pub fn contains(&self, edge: usize) -> bool {
        edge < 64 && self.0 & (1 << edge) != 0
    }

    pub fn insert(&mut self, edge: usize) {
        self.0 |= 1 << edge;
    }

    pub fn remove(&mut self, edge: usize) {
        self.0 &= !(1 << edge);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |i| self.0 & (1 << i) != 0)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Per-subset statistics of a spanning ribbon subgraph.
///
/// All vertices of the ambient map are retained; `subset` selects the edges.
/// The fields satisfy `r + n = |subset|`, `f >= k` and `n - 2g = f - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphProfile {
    pub subset: EdgeSet,
    /// Connected components (isolated vertices count).
    pub k: usize,
    /// Rank: V - k.
    pub r: usize,
    /// Nullity: |subset| - r.
    pub n: usize,
    /// Boundary components of the ribbon subgraph.
    pub f: usize,
    /// Genus, summed over components via the Euler relation.
    pub g: usize,
}

/// An orientable ribbon graph as a combinatorial map.
///
/// Darts are `0..dart_count`. `sigma` is the counterclockwise successor
/// around the incident vertex, `alpha` swaps the two darts of each edge.
/// Vertices are the sigma-orbits (plus `lone_vertices` dartless ones),
/// edges the alpha-orbits, boundary components the orbits of `sigma . alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    /// Optional edge names, one per alpha-orbit in edge order.
    edge_labels: Option<Vec<String>>,
    /// Vertices with no incident dart. Needed for the one-vertex, no-edge
    /// base case of the subset expansion.
    lone_vertices: usize,
    // Derived at construction.
    vertex_of_dart: Vec<usize>,
    vertex_count: usize,
    /// Darts of edge i, ordered (min, max); edges are numbered by least dart.
    edge_darts: Vec<(usize, usize)>,
    edge_of_dart: Vec<usize>,
}

impl CombMap {
    /// Builds a map from sigma and alpha in one-line notation.
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self, MapError> {
        Self::with_lone_vertices(sigma, alpha, 0)
    }

    /// As [`CombMap::new`], with extra dartless vertices appended.
    pub fn with_lone_vertices(
        sigma: Vec<usize>,
        alpha: Vec<usize>,
        lone_vertices: usize,
    ) -> Result<Self, MapError> {
        let n = sigma.len();
        if n % 2 != 0 {
            return Err(MapError::OddDartCount(n));
        }
        if alpha.len() != n {
            return Err(MapError::BadAlpha {
                expected: n,
                detail: format!("length {} differs from sigma length {}", alpha.len(), n),
            });
        }
        check_permutation(&sigma).map_err(|detail| MapError::BadSigma {
            expected: n,
            detail,
        })?;
        check_permutation(&alpha).map_err(|detail| MapError::BadAlpha {
            expected: n,
            detail,
        })?;
        for d in 0..n {
            if alpha[d] == d || alpha[alpha[d]] != d {
                return Err(MapError::BadAlpha {
                    expected: n,
                    detail: format!("not a fixed-point-free involution at dart {d}"),
                });
            }
        }

        let (vertex_of_dart, vertex_count) = orbit_ids(&sigma);
        let mut edge_darts = Vec::with_capacity(n / 2);
        let mut edge_of_dart = vec![0; n];
        for d in 0..n {
            if d < alpha[d] {
                edge_of_dart[d] = edge_darts.len();
                edge_of_dart[alpha[d]] = edge_darts.len();
                edge_darts.push((d, alpha[d]));
            }
        }
        // Edges are alpha-orbits ordered by least dart; the (2i, 2i+1) layout
        // used by the builders makes this the identity numbering.
        Ok(CombMap {
            sigma,
            alpha,
            edge_labels: None,
            lone_vertices,
            vertex_of_dart,
            vertex_count: vertex_count + lone_vertices,
            edge_darts,
            edge_of_dart,
        })
    }

    /// Builds a map where edge `i` owns darts `2i` and `2i+1`, from the
    /// rotation cycles listed per vertex.
    pub fn from_rotations(rotations: &[Vec<usize>], edge_count: usize) -> Result<Self, MapError> {
        let n = 2 * edge_count;
        let mut sigma = vec![usize::MAX; n];
        for cycle in rotations {
            for (pos, &d) in cycle.iter().enumerate() {
                if d >= n || sigma[d] != usize::MAX {
                    return Err(MapError::BadSigma {
                        expected: n,
                        detail: format!("dart {d} repeated or out of range in rotation cycles"),
                    });
                }
                sigma[d] = cycle[(pos + 1) % cycle.len()];
            }
        }
        if sigma.iter().any(|&d| d == usize::MAX) {
            return Err(MapError::BadSigma {
                expected: n,
                detail: "rotation cycles do not cover every dart".into(),
            });
        }
        let alpha = (0..n).map(|d| d ^ 1).collect();
        Self::new(sigma, alpha)
    }

    pub fn set_edge_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.edge_count());
        self.edge_labels = Some(labels);
    }

    pub fn edge_labels(&self) -> Option<&[String]> {
        self.edge_labels.as_deref()
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn sigma(&self, dart: usize) -> usize {
        self.sigma[dart]
    }

    pub fn alpha(&self, dart: usize) -> usize {
        self.alpha[dart]
    }

    /// The two darts of edge `index`.
    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edge_darts[index]
    }

    /// Vertex id (sigma-orbit id) incident to `dart`.
    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex_of_dart[dart]
    }

    /// Endpoint vertices of edge `index`.
    pub fn endpoints(&self, index: usize) -> (usize, usize) {
        let (a, b) = self.edge_darts[index];
        (self.vertex_of_dart[a], self.vertex_of_dart[b])
    }

    pub fn full_edge_set(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    fn check_subset(&self, subset: EdgeSet) -> Result<(), MapError> {
        match subset.iter().last() {
            Some(max) if max >= self.edge_count() => Err(MapError::EdgeOutOfRange {
                index: max,
                edges: self.edge_count(),
            }),
            _ => Ok(()),
        }
    }

    /// Partition of the vertices into connected components of the whole map.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_partition(self.full_edge_set())
    }

    /// Number of connected components of the spanning subgraph on `subset`.
    pub fn component_count(&self, subset: EdgeSet) -> Result<usize, MapError> {
        self.check_subset(subset)?;
        Ok(self.component_partition(subset).len())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn component_partition(&self, subset: EdgeSet) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in subset.iter() {
            let (u, v) = self.endpoints(e);
            uf.union(u, v);
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of_root = vec![usize::MAX; self.vertex_count];
        for v in 0..self.vertex_count {
            let root = uf.find(v);
            if class_of_root[root] == usize::MAX {
                class_of_root[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[class_of_root[root]].push(v);
        }
        classes
    }

    /// Boundary components of the spanning ribbon subgraph on `subset`:
    /// orbits of `sigma_F . alpha_F` where deleted darts are spliced out of
    /// each rotation. Every isolated vertex contributes one boundary circle.
    pub fn boundary_components(&self, subset: EdgeSet) -> Result<usize, MapError> {
        self.check_subset(subset)?;
        let retained = |d: usize| subset.contains(self.edge_of_dart[d]);
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut orbits = 0;
        let mut vertex_has_dart = vec![false; self.vertex_count];
        for d in 0..n {
            if retained(d) {
                vertex_has_dart[self.vertex_of_dart[d]] = true;
            }
        }
        for start in 0..n {
            if seen[start] || !retained(start) {
                continue;
            }
            orbits += 1;
            let mut d = start;
            loop {
                seen[d] = true;
                // sigma_F(alpha(d)): step to the edge partner, then walk the
                // rotation until the next retained dart.
                let mut next = self.sigma[self.alpha[d]];
                while !retained(next) {
                    next = self.sigma[next];
                }
                d = next;
                if d == start {
                    break;
                }
            }
        }
        let isolated = vertex_has_dart.iter().filter(|&&b| !b).count();
        Ok(orbits + isolated)
    }

    /// Edge index owning `dart`.
    pub fn edge_of(&self, dart: usize) -> usize {
        self.edge_of_dart[dart]
    }

    /// Full statistics of the spanning subgraph on `subset`.
    pub fn subgraph_profile(&self, subset: EdgeSet) -> Result<SubgraphProfile, MapError> {
        self.check_subset(subset)?;
        let k = self.component_partition(subset).len();
        let v = self.vertex_count;
        let e = subset.len();
        let f = self.boundary_components(subset)?;
        let r = v - k;
        let n = e - r;
        // Componentwise Euler relation summed: V - E + f = 2k - 2g.
        let two_g = (2 * k + e).checked_sub(v + f).unwrap_or_else(|| {
            panic!("negative genus for subset {subset}: V={v} E={e} f={f} k={k}")
        });
        assert!(two_g % 2 == 0, "odd Euler defect: subset {subset}");
        let g = two_g / 2;
        debug_assert_eq!(n as i64 - 2 * g as i64, f as i64 - k as i64);
        Ok(SubgraphProfile {
            subset,
            k,
            r,
            n,
            f,
            g,
        })
    }

    /// Genus of the whole map.
    pub fn genus(&self) -> usize {
        self.subgraph_profile(self.full_edge_set())
            .expect("full edge set is valid")
            .g
    }

    /// Serializes in the text format understood by [`CombMap::parse`].
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("sigma:");
        for d in &self.sigma {
            out.push_str(&format!(" {d}"));
        }
        out.push('\n');
        out.push_str("alpha:");
        for d in &self.alpha {
            out.push_str(&format!(" {d}"));
        }
        out.push('\n');
        if let Some(labels) = &self.edge_labels {
            out.push_str("labels:");
            for l in labels {
                out.push_str(&format!(" {l}"));
            }
            out.push('\n');
        }
        if self.lone_vertices > 0 {
            out.push_str(&format!("vertices: {}\n", self.vertex_count));
        }
        out
    }

    /// Parses the text format: a `sigma:` line and an `alpha:` line in
    /// one-line notation, an optional `labels:` line naming each edge, and an
    /// optional `vertices:` line giving the total vertex count (to express
    /// dartless vertices). `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, MapError> {
        let mut sigma: Option<Vec<usize>> = None;
        let mut alpha: Option<Vec<usize>> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut vertices: Option<usize> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| {
                MapError::Parse(format!("line {}: expected `key: values`", lineno + 1))
            })?;
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match key.trim() {
                "sigma" => sigma = Some(parse_numbers(&fields, lineno)?),
                "alpha" => alpha = Some(parse_numbers(&fields, lineno)?),
                "labels" => labels = Some(fields.iter().map(|s| s.to_string()).collect()),
                "vertices" => {
                    let v = parse_numbers(&fields, lineno)?;
                    if v.len() != 1 {
                        return Err(MapError::Parse(format!(
                            "line {}: `vertices:` takes one number",
                            lineno + 1
                        )));
                    }
                    vertices = Some(v[0]);
                }
                other => {
                    return Err(MapError::Parse(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let sigma = sigma.ok_or_else(|| MapError::Parse("missing `sigma:` line".into()))?;
        let alpha = alpha.ok_or_else(|| MapError::Parse("missing `alpha:` line".into()))?;
        let mut map = CombMap::new(sigma, alpha)?;
        if let Some(total) = vertices {
            if total < map.vertex_count {
                return Err(MapError::Parse(format!(
                    "vertices: {total} is less than the {} sigma-orbits",
                    map.vertex_count
                )));
            }
            map.lone_vertices = total - map.vertex_count;
            map.vertex_count = total;
        }
        if let Some(labels) = labels {
            if labels.len() != map.edge_count() {
                return Err(MapError::Parse(format!(
                    "labels: expected {} names, got {}",
                    map.edge_count(),
                    labels.len()
                )));
            }
            map.edge_labels = Some(labels);
        }
        Ok(map)
    }

    /// The one-vertex map with no edges.
    pub fn single_vertex() -> Self {
        CombMap::with_lone_vertices(vec![], vec![], 1).expect("valid")
    }

    /// The empty map.
    pub fn empty() -> Self {
        CombMap::new(vec![], vec![]).expect("valid")
    }
}

fn parse_numbers(fields: &[&str], lineno: usize) -> Result<Vec<usize>, MapError> {
    fields
        .iter()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| MapError::Parse(format!("line {}: `{s}` is not a number", lineno + 1)))
        })
        .collect()
}

fn check_permutation(p: &[usize]) -> Result<(), String> {
    let mut seen = vec![false; p.len()];
    for &image in p {
        if image >= p.len() {
            return Err(format!("image {image} out of range"));
        }
        if seen[image] {
            return Err(format!("image {image} repeated"));
        }
        seen[image] = true;
    }
    Ok(())
}

/// Assigns orbit ids (in order of least element) under the permutation.
pub fn orbit_ids(perm: &[usize]) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; perm.len()];
    let mut count = 0;
    for start in 0..perm.len() {
        if id[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while id[d] == usize::MAX {
            id[d] = count;
            d = perm[d];
        }
        count += 1;
    }
    (id, count)
}

#[derive(Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// All subsets of the given size window, smallest bitmask first.
pub fn subsets_of_size(edge_count: usize, size: usize) -> Vec<EdgeSet> {
    assert!(edge_count <= 62);
    let mut out = Vec::new();
    let mut stack = vec![(EdgeSet::EMPTY, 0usize, size)];
    while let Some((set, next, remaining)) = stack.pop() {
        if remaining == 0 {
            out.push(set);
            continue;
        }
        if edge_count - next < remaining {
            continue;
        }
        for e in next..edge_count {
            if edge_count - e < remaining {
                break;
            }
            let mut s = set;
            s.insert(e);
            stack.push((s, e + 1, remaining - 1));
        }
    }
    out.sort();
    out
}
