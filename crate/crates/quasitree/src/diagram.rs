//! Planar-diagram (PD) codes of knots: parsing and validation, faces of the
//! underlying 4-valent planar graph, and a Reidemeister III rewrite at a
//! chosen triangular face.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("PD syntax error at offset {offset}: {detail}")]
    Syntax { offset: usize, detail: String },
    #[error("malformed PD code: arc label {label} appears {count} times (expected 2)")]
    BadArcPairing { label: usize, count: usize },
    #[error("malformed PD code: {0}")]
    BadLabels(String),
    #[error("unsupported link: diagram has {components} components (knots only)")]
    MultipleComponents { components: usize },
    #[error("PD code does not describe a planar diagram ({faces} faces, expected {expected})")]
    NonPlanar { faces: usize, expected: usize },
    #[error("face {0} does not exist")]
    FaceNotFound(usize),
    #[error("Reidemeister III not applicable at face {face}: {reason}")]
    R3NotApplicable { face: usize, reason: String },
}

/// A knot diagram given by its PD code. Each crossing is a 4-tuple of arc
/// labels (a, b, c, d): a is the incoming understrand and the entries
/// proceed counterclockwise. Arc labels run 1..=2n and increase along the
/// knot, wrapping at 2n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<[usize; 4]>,
    name: Option<String>,
}

/// A face of the underlying 4-valent planar graph. `corners` lists the
/// incident (crossing, corner) sectors in boundary order, where corner k of
/// a crossing is the sector between tuple slots k and k+1 (mod 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub corners: Vec<(usize, usize)>,
}

impl KnotDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    /// Successor arc label along the knot.
    pub fn next_arc(&self, arc: usize) -> usize {
        arc % self.arc_count() + 1
    }

    /// Sign of crossing `i`: +1 when the overstrand runs from tuple slot b
    /// to slot d, -1 the other way.
    pub fn sign(&self, i: usize) -> i8 {
        if self.over_runs_b_to_d(i) {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count())
            .map(|i| self.sign(i) as i64)
            .sum()
    }

    /// Over-in and over-out arcs of crossing `i`.
    pub fn over_arcs(&self, i: usize) -> (usize, usize) {
        let [_, b, _, d] = self.crossings[i];
        if self.over_runs_b_to_d(i) {
            (b, d)
        } else {
            (d, b)
        }
    }

    /// Under-in and under-out arcs of crossing `i`.
    pub fn under_arcs(&self, i: usize) -> (usize, usize) {
        let t = self.crossings[i];
        (t[0], t[2])
    }

    fn over_runs_b_to_d(&self, i: usize) -> bool {
        let [a, b, c, d] = self.crossings[i];
        let forward = self.next_arc(b) == d;
        let backward = self.next_arc(d) == b;
        match (forward, backward) {
            (true, false) => true,
            (false, true) => false,
            // Both hold only on 1-crossing diagrams; disambiguate by the
            // role the arc in slot b already plays at this crossing.
            (true, true) => b == c && b != a,
            (false, false) => unreachable!("validated at parse time"),
        }
    }

    /// The mirror diagram: each tuple read in the opposite cyclic order,
    /// keeping the incoming understrand first.
    pub fn mirrored(&self) -> KnotDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [a, d, c, b])
            .collect();
        KnotDiagram {
            crossings,
            name: self.name.clone(),
        }
    }

    /// Serializes as `X(a,b,c,d) X(...) ...`; inverse of [`parse_pd`] on
    /// valid diagrams.
    pub fn serialize(&self) -> String {
        self.crossings
            .iter()
            .map(|&[a, b, c, d]| format!("X({a},{b},{c},{d})"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Faces of the underlying 4-valent planar graph, traced from the
    /// counterclockwise rotation at each crossing. Face ids are assigned in
    /// order of the least (crossing, slot) dart on the boundary.
    pub fn faces(&self) -> Vec<Face> {
        trace_faces(&self.crossings)
            .into_iter()
            .enumerate()
            .map(|(id, corners)| Face { id, corners })
            .collect()
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Parses a PD code. Accepts both `X(1,4,2,5) X(3,8,4,9)` and
/// `PD[X[1,4,2,5], X[3,8,4,9]]` shapes; `#` starts a line comment.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, DiagramError> {
    let mut tuples = Vec::new();
    let stripped: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let bytes = stripped.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    // Optional PD[ ... ] wrapper.
    let mut wrapped = false;
    if stripped[pos..].starts_with("PD[") || stripped[pos..].starts_with("PD (") {
        wrapped = true;
        pos += 3;
    } else if stripped[pos..].starts_with("PD(") {
        wrapped = true;
        pos += 3;
    }
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if wrapped && (bytes[pos] == b']' || bytes[pos] == b')') {
            pos += 1;
            skip_ws(&mut pos);
            break;
        }
        if bytes[pos] != b'X' && bytes[pos] != b'x' {
            return Err(DiagramError::Syntax {
                offset: pos,
                detail: format!(
                    "expected `X`, found `{}`",
                    stripped[pos..].chars().next().unwrap()
                ),
            });
        }
        pos += 1;
        // Subscript form X_{1425} is not supported; expect a bracket.
        let close = match bytes.get(pos) {
            Some(b'(') => b')',
            Some(b'[') => b']',
            _ => {
                return Err(DiagramError::Syntax {
                    offset: pos,
                    detail: "expected `(` or `[` after `X`".into(),
                })
            }
        };
        pos += 1;
        let mut tuple = [0usize; 4];
        for slot in 0..4 {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(DiagramError::Syntax {
                    offset: pos,
                    detail: "expected an arc label".into(),
                });
            }
            tuple[slot] = stripped[start..pos].parse().unwrap();
            skip_ws(&mut pos);
            if slot < 3 {
                continue;
            }
        }
        if bytes.get(pos) != Some(&close) {
            return Err(DiagramError::Syntax {
                offset: pos,
                detail: format!("expected `{}`", close as char),
            });
        }
        pos += 1;
        tuples.push(tuple);
    }
    if tuples.is_empty() {
        return Err(DiagramError::Syntax {
            offset: 0,
            detail: "no crossings found".into(),
        });
    }
    validate(&tuples)?;
    Ok(KnotDiagram {
        crossings: tuples,
        name: None,
    })
}

fn validate(tuples: &[[usize; 4]]) -> Result<(), DiagramError> {
    let n = tuples.len();
    let arc_count = 2 * n;
    // Every label in 1..=2n appears exactly twice.
    let mut counts = vec![0usize; arc_count + 1];
    for t in tuples {
        for &label in t {
            if label == 0 || label > arc_count {
                return Err(DiagramError::BadLabels(format!(
                    "arc label {label} out of range 1..={arc_count}"
                )));
            }
            counts[label] += 1;
        }
    }
    for (label, &count) in counts.iter().enumerate().skip(1) {
        if count != 2 {
            return Err(DiagramError::BadArcPairing { label, count });
        }
    }
    // Undirected component count: at each crossing the under slots (0,2) and
    // the over slots (1,3) join. Multiple cycles mean a link.
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arc_count + 1];
    for (i, t) in tuples.iter().enumerate() {
        for (s, &label) in t.iter().enumerate() {
            occ[label].push((i, s));
        }
    }
    let components = {
        let mut uf = crate::map::UnionFind::new(arc_count + 1);
        for t in tuples {
            uf.union(t[0], t[2]);
            uf.union(t[1], t[3]);
        }
        let mut roots: Vec<usize> = (1..=arc_count).map(|a| uf.find(a)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };
    if components > 1 {
        return Err(DiagramError::MultipleComponents { components });
    }
    // Labels increase along the knot: the under-out arc follows the
    // under-in arc, and the over strand must be orientable the same way.
    let next = |arc: usize| arc % arc_count + 1;
    for t in tuples {
        if next(t[0]) != t[2] {
            return Err(DiagramError::BadLabels(format!(
                "under-strand labels not consecutive at X({},{},{},{})",
                t[0], t[1], t[2], t[3]
            )));
        }
        if next(t[1]) != t[3] && next(t[3]) != t[1] {
            return Err(DiagramError::BadLabels(format!(
                "over-strand labels not consecutive at X({},{},{},{})",
                t[0], t[1], t[2], t[3]
            )));
        }
    }
    // Planarity: a connected diagram with c crossings has c + 2 faces.
    let faces = trace_faces(tuples);
    if faces.len() != n + 2 {
        return Err(DiagramError::NonPlanar {
            faces: faces.len(),
            expected: n + 2,
        });
    }
    Ok(())
}

/// Orbits of sigma . alpha on the darts (crossing, slot) of the diagram's
/// 4-valent map; each orbit is returned as a list of (crossing, corner)
/// sectors, where the element at dart (i, s) occupies corner (s + 3) % 4.
fn trace_faces(tuples: &[[usize; 4]]) -> Vec<Vec<(usize, usize)>> {
    let n = tuples.len();
    let arc_count = 2 * n;
    // alpha: the other (crossing, slot) occurrence of the same arc.
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); arc_count + 1];
    for (i, t) in tuples.iter().enumerate() {
        for (s, &label) in t.iter().enumerate() {
            occ[label].push(4 * i + s);
        }
    }
    let mut alpha = vec![0usize; 4 * n];
    for pair in occ.iter().skip(1) {
        if pair.len() == 2 {
            alpha[pair[0]] = pair[1];
            alpha[pair[1]] = pair[0];
        }
    }
    let sigma = |d: usize| d / 4 * 4 + (d + 1) % 4;
    let mut seen = vec![false; 4 * n];
    let mut faces = Vec::new();
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            orbit.push((d / 4, (d + 3) % 4));
            d = sigma(alpha[d]);
        }
        faces.push(orbit);
    }
    faces
}

/// Strand roles through a crossing, in knot orientation.
#[derive(Debug, Clone, Copy)]
struct CrossingFlow {
    under_in: usize,
    under_out: usize,
    over_in: usize,
    over_out: usize,
    sign: i8,
}

impl CrossingFlow {
    fn of(diagram: &KnotDiagram, i: usize) -> Self {
        let (under_in, under_out) = diagram.under_arcs(i);
        let (over_in, over_out) = diagram.over_arcs(i);
        CrossingFlow {
            under_in,
            under_out,
            over_in,
            over_out,
            sign: diagram.sign(i),
        }
    }

    fn tuple(&self) -> [usize; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        } else {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        }
    }
}

/// Applies a Reidemeister III move at the given triangular face.
///
/// The face must be bounded by three strands in the standard configuration:
/// one strand passes over both others and one under both. The three
/// crossings keep their strand pairs, over/under relations and signs; each
/// strand meets its two crossings in the opposite order afterwards. Arc
/// labels are renormalized by retracing the knot.
pub fn reidemeister_3(diagram: &KnotDiagram, face_id: usize) -> Result<KnotDiagram, DiagramError> {
    let faces = diagram.faces();
    let face = faces
        .get(face_id)
        .ok_or(DiagramError::FaceNotFound(face_id))?;
    if face.corners.len() != 3 {
        return Err(DiagramError::R3NotApplicable {
            face: face_id,
            reason: format!("face has {} corners, not 3", face.corners.len()),
        });
    }
    let tri: Vec<usize> = face.corners.iter().map(|&(c, _)| c).collect();
    if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
        return Err(DiagramError::R3NotApplicable {
            face: face_id,
            reason: "triangle corners are not three distinct crossings".into(),
        });
    }
    // The three bounding arcs: corner k of crossing i lies between tuple
    // slots k and k+1; the boundary arcs of the face are recovered by
    // re-walking the face orbit and reading the slot of each dart.
    let sides = face_side_arcs(diagram, face);
    if sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2] {
        return Err(DiagramError::R3NotApplicable {
            face: face_id,
            reason: "triangle is not bounded by three distinct strands".into(),
        });
    }

    // Classify each side by its over/under pattern at its two endpoints.
    let slot_of = |arc: usize, crossing: usize| -> Vec<usize> {
        diagram.crossings()[crossing]
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == arc)
            .map(|(s, _)| s)
            .collect()
    };
    #[derive(Debug, Clone)]
    struct Side {
        arc: usize,
        /// (crossing, slot) at each end, in arc order (start then end).
        ends: [(usize, usize); 2],
        overs: usize,
    }
    let mut classified = Vec::new();
    for &arc in &sides {
        let mut ends = Vec::new();
        for &c in &tri {
            for s in slot_of(arc, c) {
                ends.push((c, s));
            }
        }
        if ends.len() != 2 {
            return Err(DiagramError::R3NotApplicable {
                face: face_id,
                reason: format!("arc {arc} does not join two triangle crossings"),
            });
        }
        // Arc starts where it leaves a crossing: the under-out slot 2, or
        // the over-out slot (3 at positive crossings, 1 at negative ones).
        let is_out = |&(c, s): &(usize, usize)| {
            s == 2 || (diagram.sign(c) > 0 && s == 3) || (diagram.sign(c) < 0 && s == 1)
        };
        let (start, end) = if is_out(&ends[0]) {
            (ends[0], ends[1])
        } else {
            (ends[1], ends[0])
        };
        let overs = [start, end]
            .iter()
            .filter(|&&(_, s)| s == 1 || s == 3)
            .count();
        classified.push(Side {
            arc,
            ends: [start, end],
            overs,
        });
    }
    let over_side = classified.iter().position(|s| s.overs == 2);
    let under_side = classified.iter().position(|s| s.overs == 0);
    let mixed_side = classified.iter().position(|s| s.overs == 1);
    let (Some(_), Some(_), Some(_)) = (over_side, under_side, mixed_side) else {
        return Err(DiagramError::R3NotApplicable {
            face: face_id,
            reason: "triangle strands are not in over/middle/under position".into(),
        });
    };

    // Per-strand surgery: each side's strand revisits its two crossings in
    // the opposite order, carrying its external arcs with it.
    #[derive(Debug, Clone, Copy, Default)]
    struct NewFlow {
        under: Option<(usize, usize)>,
        over: Option<(usize, usize)>,
    }
    let mut new_flows: std::collections::BTreeMap<usize, NewFlow> = Default::default();
    for side in &classified {
        let (c_first, s_first) = side.ends[0];
        let (c_second, s_second) = side.ends[1];
        let flow_first = CrossingFlow::of(diagram, c_first);
        let flow_second = CrossingFlow::of(diagram, c_second);
        // External arcs: where the strand entered its first crossing and
        // left its second.
        let strand_over_at = |s: usize| s == 1 || s == 3;
        let e_in = if strand_over_at(s_first) {
            flow_first.over_in
        } else {
            flow_first.under_in
        };
        let e_out = if strand_over_at(s_second) {
            flow_second.over_out
        } else {
            flow_second.under_out
        };
        // After the move the strand passes c_second first. The old side arc
        // id is reused for the new internal side (relabelled later anyway).
        let assign = |flows: &mut std::collections::BTreeMap<usize, NewFlow>,
                      crossing: usize,
                      over: bool,
                      inout: (usize, usize)| {
            let entry = flows.entry(crossing).or_default();
            if over {
                entry.over = Some(inout);
            } else {
                entry.under = Some(inout);
            }
        };
        assign(
            &mut new_flows,
            c_second,
            strand_over_at(s_second),
            (e_in, side.arc),
        );
        assign(
            &mut new_flows,
            c_first,
            strand_over_at(s_first),
            (side.arc, e_out),
        );
    }

    // Rebuild the flow records with the original signs, then relabel arcs
    // by retracing the knot.
    let mut flows: Vec<CrossingFlow> = (0..diagram.crossing_count())
        .map(|i| CrossingFlow::of(diagram, i))
        .collect();
    for (&crossing, flow) in &new_flows {
        let (under_in, under_out) = flow.under.expect("both strands assigned");
        let (over_in, over_out) = flow.over.expect("both strands assigned");
        flows[crossing] = CrossingFlow {
            under_in,
            under_out,
            over_in,
            over_out,
            sign: diagram.sign(crossing),
        };
    }

    let relabelled = relabel(&flows)?;
    let mut out = parse_pd(&serialize_tuples(&relabelled))?;
    if let Some(name) = &diagram.name {
        out.set_name(format!("{name} (after R3)"));
    }
    Ok(out)
}

/// Boundary arcs of a face, one per corner, in boundary order.
fn face_side_arcs(diagram: &KnotDiagram, face: &Face) -> Vec<usize> {
    // Corner (i, k) is the sector between slots k and k+1; the face orbit
    // element at that corner was the dart (i, (k + 1) % 4), and the boundary
    // arc consumed leaving it is the arc in that slot.
    face.corners
        .iter()
        .map(|&(i, k)| diagram.crossings()[i][(k + 1) % 4])
        .collect()
}

fn serialize_tuples(tuples: &[[usize; 4]]) -> String {
    tuples
        .iter()
        .map(|&[a, b, c, d]| format!("X({a},{b},{c},{d})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renumbers arcs 1..=2n along the knot and rebuilds the PD tuples. The
/// flow records may use arbitrary distinct arc ids; each id must appear
/// exactly once as an in-arc and once as an out-arc.
fn relabel(flows: &[CrossingFlow]) -> Result<Vec<[usize; 4]>, DiagramError> {
    use std::collections::BTreeMap;
    let n = flows.len();
    // Where each arc enters a crossing, and the arc leaving on that strand.
    let mut continuation: BTreeMap<usize, usize> = BTreeMap::new();
    for f in flows {
        if continuation.insert(f.under_in, f.under_out).is_some()
            || continuation.insert(f.over_in, f.over_out).is_some()
        {
            return Err(DiagramError::BadLabels(
                "an arc enters two crossings after the move".into(),
            ));
        }
    }
    let start = *continuation.keys().next().expect("nonempty");
    let mut new_label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arc = start;
    for step in 0..2 * n {
        if new_label.insert(arc, step + 1).is_some() {
            return Err(DiagramError::BadLabels(
                "knot trace revisited an arc after the move".into(),
            ));
        }
        arc = *continuation.get(&arc).ok_or_else(|| {
            DiagramError::BadLabels("knot trace left the diagram after the move".into())
        })?;
    }
    if arc != start || new_label.len() != 2 * n {
        return Err(DiagramError::BadLabels(
            "could not retrace a single knot component after the move".into(),
        ));
    }
    Ok(flows
        .iter()
        .map(|f| {
            CrossingFlow {
                under_in: new_label[&f.under_in],
                under_out: new_label[&f.under_out],
                over_in: new_label[&f.over_in],
                over_out: new_label[&f.over_out],
                sign: f.sign,
            }
            .tuple()
        })
        .collect())
}

/// Cyclic-relabelling equivalence of PD codes: true when some rotation of
/// the arc labels carries one diagram onto the other (crossing order is
/// immaterial). Orientation and mirror images are not quotiented out.
pub fn pd_isomorphic(d1: &KnotDiagram, d2: &KnotDiagram) -> bool {
    if d1.crossing_count() != d2.crossing_count() {
        return false;
    }
    let m = d1.arc_count();
    let canon = |tuples: &[[usize; 4]]| {
        let mut v: Vec<[usize; 4]> = tuples.to_vec();
        v.sort();
        v
    };
    let target = canon(d2.crossings());
    for shift in 0..m {
        let shifted: Vec<[usize; 4]> = d1
            .crossings()
            .iter()
            .map(|t| {
                let mut out = [0usize; 4];
                for (s, &a) in t.iter().enumerate() {
                    out[s] = (a - 1 + shift) % m + 1;
                }
                out
            })
            .collect();
        if canon(&shifted) == target {
            return true;
        }
    }
    false
}
