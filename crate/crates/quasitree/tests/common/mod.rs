//! Shared test helpers: braid-closure PD generation, an independent
//! Kauffman-bracket oracle, deterministic random maps, and a brute-force
//! subgraph-statistics oracle.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use quasitree::diagram::{parse_pd, KnotDiagram};
use quasitree::map::{CombMap, EdgeSet, UnionFind};

/// PD code of the closure of a braid word on `strands` strands. Letters are
/// signed generator indices (1-based): `+i` crosses strand i over strand
/// i+1, `-i` the other way. Returns None when the closure is a link rather
/// than a knot.
pub fn braid_closure(strands: usize, word: &[i32]) -> Option<KnotDiagram> {
    assert!(strands >= 2);
    #[derive(Clone, Copy)]
    struct Flow {
        under_in: usize,
        under_out: usize,
        over_in: usize,
        over_out: usize,
        positive: bool,
    }
    // Interim arc ids: 0..strands are the top arcs; each letter mints two.
    let mut next_id = strands;
    let mut current: Vec<usize> = (0..strands).collect();
    let mut flows: Vec<Flow> = Vec::new();
    for &letter in word {
        let i = letter.unsigned_abs() as usize;
        assert!(i >= 1 && i < strands, "letter {letter} out of range");
        let (in_l, in_r) = (current[i - 1], current[i]);
        let (out_l, out_r) = (next_id, next_id + 1);
        next_id += 2;
        current[i - 1] = out_l;
        current[i] = out_r;
        // Strands flow downward; positions swap at the crossing.
        let flow = if letter > 0 {
            // Left strand passes over: under runs in_r -> out_l.
            Flow {
                under_in: in_r,
                under_out: out_l,
                over_in: in_l,
                over_out: out_r,
                positive: true,
            }
        } else {
            Flow {
                under_in: in_l,
                under_out: out_r,
                over_in: in_r,
                over_out: out_l,
                positive: false,
            }
        };
        flows.push(flow);
    }
    // Closure: the bottom arc at each position is the top arc.
    let mut canon: Vec<usize> = (0..next_id).collect();
    for p in 0..strands {
        canon[current[p]] = p;
    }
    let resolve = |id: usize| canon[id];
    // Trace the knot: each arc enters one crossing and leaves as another.
    let mut continuation: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &flows {
        continuation.insert(resolve(f.under_in), resolve(f.under_out));
        continuation.insert(resolve(f.over_in), resolve(f.over_out));
    }
    let total = 2 * flows.len();
    if continuation.len() != total {
        return None;
    }
    let start = *continuation.keys().next().unwrap();
    let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arc = start;
    for step in 0..total {
        if labels.insert(arc, step + 1).is_some() {
            return None;
        }
        arc = continuation[&arc];
    }
    if arc != start || labels.len() != total {
        return None;
    }
    let tuples: Vec<String> = flows
        .iter()
        .map(|f| {
            let u_in = labels[&resolve(f.under_in)];
            let u_out = labels[&resolve(f.under_out)];
            let o_in = labels[&resolve(f.over_in)];
            let o_out = labels[&resolve(f.over_out)];
            if f.positive {
                format!("X({u_in},{o_in},{u_out},{o_out})")
            } else {
                format!("X({u_in},{o_out},{u_out},{o_in})")
            }
        })
        .collect();
    parse_pd(&tuples.join(" ")).ok()
}

/// Laurent polynomial in one variable with integer coefficients.
pub type Laurent = BTreeMap<i64, BigInt>;

fn laurent_add(acc: &mut Laurent, exp: i64, coeff: BigInt) {
    let slot = acc.entry(exp).or_insert_with(BigInt::zero);
    *slot += coeff;
    if slot.is_zero() {
        acc.remove(&exp);
    }
}

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (&ea, ca) in a {
        for (&eb, cb) in b {
            laurent_add(&mut out, ea + eb, ca * cb);
        }
    }
    out
}

fn laurent_pow(base: &Laurent, mut exp: u32) -> Laurent {
    let mut result = Laurent::from([(0, BigInt::one())]);
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = laurent_mul(&result, &sq);
        }
        sq = laurent_mul(&sq, &sq);
        exp >>= 1;
    }
    result
}

/// Number of circles in the Kauffman state where crossing i receives the
/// A-smoothing iff bit i of `state` is set.
fn state_circles(diagram: &KnotDiagram, state: u32) -> usize {
    // Arc-end incidences pair up through each smoothing; circles are the
    // cycles of the resulting involution composed with "other end of arc".
    let c = diagram.crossing_count();
    let mut uf = UnionFind::new(4 * c);
    let mut ends_of_arc: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, t) in diagram.crossings().iter().enumerate() {
        for (s, &arc) in t.iter().enumerate() {
            ends_of_arc.entry(arc).or_default().push(4 * i + s);
        }
    }
    for ends in ends_of_arc.values() {
        uf.union(ends[0], ends[1]);
    }
    for i in 0..c {
        if state & (1 << i) != 0 {
            uf.union(4 * i, 4 * i + 3);
            uf.union(4 * i + 1, 4 * i + 2);
        } else {
            uf.union(4 * i, 4 * i + 1);
            uf.union(4 * i + 2, 4 * i + 3);
        }
    }
    let mut roots: Vec<usize> = (0..4 * c).map(|d| uf.find(d)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Kauffman bracket of the diagram as a Laurent polynomial in A.
pub fn kauffman_bracket(diagram: &KnotDiagram) -> Laurent {
    let c = diagram.crossing_count();
    assert!(c <= 20, "bracket oracle is exponential in crossings");
    let delta: Laurent = Laurent::from([(2, -BigInt::one()), (-2, -BigInt::one())]);
    let mut acc = Laurent::new();
    for state in 0..(1u32 << c) {
        let a_count = state.count_ones() as i64;
        let exponent = a_count - (c as i64 - a_count);
        let circles = state_circles(diagram, state) as u32;
        let term = laurent_pow(&delta, circles - 1);
        for (&e, coeff) in &term {
            laurent_add(&mut acc, e + exponent, coeff.clone());
        }
    }
    acc
}

/// Writhe-normalized bracket: (-A^3)^(-w) * <D>. A knot invariant, so equal
/// values across diagrams are strong same-knot evidence.
pub fn normalized_bracket(diagram: &KnotDiagram) -> Laurent {
    let bracket = kauffman_bracket(diagram);
    let w = diagram.writhe();
    let sign = if w % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let mut out = Laurent::new();
    for (&e, c) in &bracket {
        laurent_add(&mut out, e - 3 * w, &sign * c);
    }
    out
}

/// Deterministic xorshift generator for reproducible random structures.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Random map on `edges` edges with the canonical (2i, 2i+1) dart pairing
/// and a uniformly shuffled rotation permutation.
pub fn random_map(rng: &mut Rng, edges: usize) -> CombMap {
    let n = 2 * edges;
    let mut sigma: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        sigma.swap(i, j);
    }
    let alpha: Vec<usize> = (0..n).map(|d| d ^ 1).collect();
    CombMap::new(sigma, alpha).unwrap()
}

/// Random connected map with the given edge count.
pub fn random_connected_map(rng: &mut Rng, edges: usize) -> CombMap {
    loop {
        let m = random_map(rng, edges);
        if m.is_connected() {
            return m;
        }
    }
}

/// Brute-force subgraph statistics: materializes the spliced rotation and
/// restricted involution as explicit permutations on the retained darts and
/// counts orbits of their composition. Independent of the walk done by
/// `CombMap::boundary_components`.
pub fn oracle_profile(map: &CombMap, subset: EdgeSet) -> (usize, usize, usize) {
    let retained: Vec<usize> = (0..map.dart_count())
        .filter(|&d| subset.contains(map.edge_of(d)))
        .collect();
    let rank: BTreeMap<usize, usize> = retained.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let r = retained.len();
    // sigma_F: within each sigma-cycle, keep retained darts in cyclic order.
    let mut sigma_f = vec![usize::MAX; r];
    let mut seen = vec![false; map.dart_count()];
    for start in 0..map.dart_count() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cycle.push(d);
            d = map.sigma(d);
        }
        let kept: Vec<usize> = cycle
            .iter()
            .copied()
            .filter(|d| rank.contains_key(d))
            .collect();
        for (pos, &d) in kept.iter().enumerate() {
            sigma_f[rank[&d]] = rank[&kept[(pos + 1) % kept.len()]];
        }
    }
    let alpha_f: Vec<usize> = retained.iter().map(|&d| rank[&map.alpha(d)]).collect();
    let composed: Vec<usize> = (0..r).map(|i| sigma_f[alpha_f[i]]).collect();
    let mut visited = vec![false; r];
    let mut orbits = 0;
    for start in 0..r {
        if visited[start] {
            continue;
        }
        orbits += 1;
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            d = composed[d];
        }
    }
    // Isolated vertices each bound one disk.
    let mut vertex_has_dart = vec![false; map.vertex_count()];
    for &d in &retained {
        vertex_has_dart[map.vertex_of(d)] = true;
    }
    let isolated = vertex_has_dart.iter().filter(|&&b| !b).count();
    // Components via an incidence-list BFS over vertices.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); map.vertex_count()];
    for e in subset.iter() {
        let (u, v) = map.endpoints(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp_seen = vec![false; map.vertex_count()];
    let mut k = 0;
    for v0 in 0..map.vertex_count() {
        if comp_seen[v0] {
            continue;
        }
        k += 1;
        let mut stack = vec![v0];
        while let Some(v) = stack.pop() {
            if comp_seen[v] {
                continue;
            }
            comp_seen[v] = true;
            stack.extend(adj[v].iter().copied());
        }
    }
    (orbits + isolated, k, r)
}

/// Spanning-tree count of the underlying multigraph by the matrix-tree
/// theorem (reduced Laplacian determinant).
pub fn matrix_tree_count(map: &CombMap) -> BigInt {
    let v = map.vertex_count();
    if v <= 1 {
        return BigInt::one();
    }
    let mut laplacian = vec![vec![BigInt::zero(); v]; v];
    for e in 0..map.edge_count() {
        let (a, b) = map.endpoints(e);
        if a == b {
            continue;
        }
        laplacian[a][b] -= 1;
        laplacian[b][a] -= 1;
        laplacian[a][a] += 1;
        laplacian[b][b] += 1;
    }
    let reduced: Vec<Vec<BigInt>> = (0..v - 1)
        .map(|r| (0..v - 1).map(|c| laplacian[r][c].clone()).collect())
        .collect();
    quasitree::goeritz::integer_determinant(&reduced).abs()
}

/// Canonical form of a connected map under dart relabelling: the
/// lexicographically least (sigma, alpha) table over all root darts, and
/// over reflection when `include_mirror` is set. Equal forms mean isomorphic
/// maps.
pub fn canonical_map_form(map: &CombMap, include_mirror: bool) -> Vec<usize> {
    let n = map.dart_count();
    let sigma: Vec<usize> = (0..n).map(|d| map.sigma(d)).collect();
    let alpha: Vec<usize> = (0..n).map(|d| map.alpha(d)).collect();
    let mut sigma_inv = vec![0; n];
    for d in 0..n {
        sigma_inv[sigma[d]] = d;
    }
    let mut variants = vec![sigma.clone()];
    if include_mirror {
        variants.push(sigma_inv);
    }
    let mut best: Option<Vec<usize>> = None;
    for sig in &variants {
        for root in 0..n {
            let mut label = vec![usize::MAX; n];
            let mut order = Vec::with_capacity(n);
            label[root] = 0;
            order.push(root);
            let mut fresh = 1;
            let mut i = 0;
            while i < order.len() {
                let d = order[i];
                for img in [sig[d], alpha[d]] {
                    if label[img] == usize::MAX {
                        label[img] = fresh;
                        fresh += 1;
                        order.push(img);
                    }
                }
                i += 1;
            }
            if fresh < n {
                continue; // map not connected from this root
            }
            let mut code = Vec::with_capacity(2 * n);
            for &d in &order {
                code.push(label[sig[d]]);
            }
            for &d in &order {
                code.push(label[alpha[d]]);
            }
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.expect("nonempty map")
}

pub fn maps_isomorphic(a: &CombMap, b: &CombMap, include_mirror: bool) -> bool {
    a.dart_count() == b.dart_count()
        && canonical_map_form(a, include_mirror) == canonical_map_form(b, include_mirror)
}
