//! Kauffman states and the state ribbon graph: smoothing every crossing the
//! A (or B) way, tracing the state circles, and assembling the ribbon graph
//! whose vertices are the circles and whose edges are the crossings, with
//! rotations induced by the planar embedding.

use crate::diagram::KnotDiagram;
use crate::map::{CombMap, UnionFind};

/// Which constant Kauffman state to smooth into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    A,
    B,
}

impl Marker {
    /// The two smoothing chords as slot pairs. The A-smoothing of a tuple
    /// (a, b, c, d) joins {a, d} and {b, c}; the B-smoothing joins {a, b}
    /// and {c, d}. This pairing is pinned by the alternating fixtures: it is
    /// the one that gives the standard trefoil two all-A circles and every
    /// alternating diagram Turaev genus zero.
    fn chords(self) -> [(usize, usize); 2] {
        match self {
            Marker::A => [(0, 3), (1, 2)],
            Marker::B => [(0, 1), (2, 3)],
        }
    }

    /// Corner sector rounded by each chord (corner k lies between tuple
    /// slots k and k+1).
    fn chord_corners(self) -> [usize; 2] {
        match self {
            Marker::A => [3, 1],
            Marker::B => [0, 2],
        }
    }

    /// The two corner sectors merged through the smoothing channel.
    fn merged_corners(self) -> (usize, usize) {
        match self {
            Marker::A => (0, 2),
            Marker::B => (1, 3),
        }
    }
}

/// A constant Kauffman state: the circles obtained by smoothing every
/// crossing the same way. Each circle is recorded as the cyclic sequence of
/// (crossing, slot) endpoints met along it, two per smoothing arc.
#[derive(Debug, Clone)]
pub struct KauffmanState {
    pub marker: Marker,
    pub circles: Vec<Vec<(usize, usize)>>,
}

impl KauffmanState {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

/// Junction of a smoothing chord: which slot the circle enters it at and
/// which it leaves by, chosen so that the regions on the left of every
/// circle carry the same color of the smoothed diagram's region 2-coloring.
/// Keeping one color class on the left orients all circles consistently
/// with the plane, which is what makes the state graph's genus equal the
/// Turaev genus.
#[derive(Debug, Clone, Copy)]
struct ChordDirection {
    from_slot: usize,
    to_slot: usize,
}

struct Smoothing<'a> {
    diagram: &'a KnotDiagram,
    marker: Marker,
    /// Direction of chord j (0 or 1) at each crossing.
    directions: Vec<[ChordDirection; 2]>,
}

impl<'a> Smoothing<'a> {
    fn new(diagram: &'a KnotDiagram, marker: Marker) -> Self {
        let c = diagram.crossing_count();
        // Face id at each (crossing, corner).
        let faces = diagram.faces();
        let mut corner_face = vec![[0usize; 4]; c];
        for face in &faces {
            for &(crossing, corner) in &face.corners {
                corner_face[crossing][corner] = face.id;
            }
        }
        // Merge the two faces joined through each smoothing channel; the
        // classes are the regions of the plane split by the state circles.
        let mut regions = UnionFind::new(faces.len());
        let (m0, m1) = marker.merged_corners();
        for i in 0..c {
            regions.union(corner_face[i][m0], corner_face[i][m1]);
        }
        // 2-color the regions: the regions on either side of any diagram
        // arc differ, i.e. consecutive corners around a crossing differ.
        let mut color: Vec<Option<bool>> = vec![None; faces.len()];
        let root = regions.find(corner_face[0][0]);
        color[root] = Some(false);
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..c {
                for k in 0..4 {
                    let ra = regions.find(corner_face[i][k]);
                    let rb = regions.find(corner_face[i][(k + 1) % 4]);
                    match (color[ra], color[rb]) {
                        (Some(x), None) => {
                            color[rb] = Some(!x);
                            changed = true;
                        }
                        (None, Some(x)) => {
                            color[ra] = Some(!x);
                            changed = true;
                        }
                        (Some(x), Some(y)) => {
                            assert_ne!(x, y, "region 2-coloring failed at crossing {i}");
                        }
                        (None, None) => {}
                    }
                }
            }
        }
        // Chord directions: keep the dark regions on the left of every
        // circle traversal.
        let chords = marker.chords();
        let corners = marker.chord_corners();
        let mut directions = Vec::with_capacity(c);
        for i in 0..c {
            let mut pair = [ChordDirection {
                from_slot: 0,
                to_slot: 0,
            }; 2];
            for j in 0..2 {
                let (lo, hi) = chords[j];
                let rounded = regions.find(corner_face[i][corners[j]]);
                let dark = color[rounded].expect("all regions colored");
                // With the tuple slots at W, S, E, N of the crossing, the
                // low-to-high traversal of the A-chord {a, d} is the only
                // one that keeps its rounded corner on the left.
                let low_to_high_keeps_rounded_right = !matches!((marker, j), (Marker::A, 0));
                let forward = if low_to_high_keeps_rounded_right {
                    !dark
                } else {
                    dark
                };
                pair[j] = if forward {
                    ChordDirection {
                        from_slot: lo,
                        to_slot: hi,
                    }
                } else {
                    ChordDirection {
                        from_slot: hi,
                        to_slot: lo,
                    }
                };
            }
            directions.push(pair);
        }
        Smoothing {
            diagram,
            marker,
            directions,
        }
    }

    fn chord_of_slot(&self, slot: usize) -> usize {
        let chords = self.marker.chords();
        if slot == chords[0].0 || slot == chords[0].1 {
            0
        } else {
            1
        }
    }

    /// Traces all state circles; each entry lists (crossing, chord) junction
    /// ids in traversal order alongside the slot sequence.
    fn circles(&self) -> Vec<Circle> {
        let c = self.diagram.crossing_count();
        let mut seen = vec![[false; 2]; c];
        let mut out = Vec::new();
        for start_crossing in 0..c {
            for start_chord in 0..2 {
                if seen[start_crossing][start_chord] {
                    continue;
                }
                let mut junctions = Vec::new();
                let mut endpoints = Vec::new();
                let mut min_arc = usize::MAX;
                let (mut crossing, mut chord) = (start_crossing, start_chord);
                loop {
                    seen[crossing][chord] = true;
                    let dir = self.directions[crossing][chord];
                    junctions.push((crossing, chord));
                    endpoints.push((crossing, dir.from_slot));
                    endpoints.push((crossing, dir.to_slot));
                    // Continue along the diagram arc leaving the chord.
                    let arc = self.diagram.crossings()[crossing][dir.to_slot];
                    min_arc = min_arc.min(arc);
                    let (next_crossing, next_slot) =
                        other_end(self.diagram, crossing, dir.to_slot, arc);
                    let next_chord = self.chord_of_slot(next_slot);
                    let next_dir = self.directions[next_crossing][next_chord];
                    assert_eq!(
                        next_dir.from_slot, next_slot,
                        "inconsistent circle orientation arriving at crossing {next_crossing}"
                    );
                    if (next_crossing, next_chord) == (start_crossing, start_chord) {
                        break;
                    }
                    crossing = next_crossing;
                    chord = next_chord;
                }
                out.push(Circle {
                    junctions,
                    endpoints,
                    min_arc,
                });
            }
        }
        out.sort_by_key(|circle| circle.min_arc);
        out
    }
}

struct Circle {
    junctions: Vec<(usize, usize)>,
    endpoints: Vec<(usize, usize)>,
    min_arc: usize,
}

fn other_end(diagram: &KnotDiagram, crossing: usize, slot: usize, arc: usize) -> (usize, usize) {
    for (i, t) in diagram.crossings().iter().enumerate() {
        for (s, &label) in t.iter().enumerate() {
            if label == arc && (i, s) != (crossing, slot) {
                return (i, s);
            }
        }
    }
    unreachable!("arc {arc} has no second endpoint")
}

/// Smooths every crossing with the given marker and traces the circles,
/// numbered by their smallest incident arc label.
pub fn kauffman_state(diagram: &KnotDiagram, marker: Marker) -> KauffmanState {
    let smoothing = Smoothing::new(diagram, marker);
    let circles = smoothing
        .circles()
        .into_iter()
        .map(|c| c.endpoints)
        .collect();
    KauffmanState { marker, circles }
}

/// Builds the state ribbon graph: one vertex per state circle, one edge per
/// crossing (darts 2i and 2i+1 are its two smoothing arcs), rotations given
/// by the order the smoothing arcs are met along each circle. Edge labels
/// carry the crossing indices.
pub fn state_graph(diagram: &KnotDiagram, marker: Marker) -> CombMap {
    let smoothing = Smoothing::new(diagram, marker);
    let circles = smoothing.circles();
    let rotations: Vec<Vec<usize>> = circles
        .iter()
        .map(|c| {
            c.junctions
                .iter()
                .map(|&(crossing, chord)| 2 * crossing + chord)
                .collect()
        })
        .collect();
    let mut map = CombMap::from_rotations(&rotations, diagram.crossing_count())
        .expect("state graph rotations are a valid map");
    map.set_edge_labels(
        (0..diagram.crossing_count())
            .map(|i| i.to_string())
            .collect(),
    );
    map
}

/// The all-A ribbon graph of the diagram.
pub fn all_a_ribbon_graph(diagram: &KnotDiagram) -> CombMap {
    state_graph(diagram, Marker::A)
}

/// Turaev genus of the diagram: (c + 2 - s_A - s_B) / 2, which equals the
/// genus of the all-A ribbon graph.
pub fn turaev_genus(diagram: &KnotDiagram) -> usize {
    let c = diagram.crossing_count();
    let s_a = kauffman_state(diagram, Marker::A).circle_count();
    let s_b = kauffman_state(diagram, Marker::B).circle_count();
    let numerator = (c + 2)
        .checked_sub(s_a + s_b)
        .expect("s_A + s_B never exceeds c + 2");
    assert!(numerator % 2 == 0, "odd Turaev genus numerator");
    numerator / 2
}
