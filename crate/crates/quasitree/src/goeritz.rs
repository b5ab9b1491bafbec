//! Knot determinant via the Goeritz matrix of a checkerboard coloring.
//! This stays in exact integer arithmetic and is independent of the
//! quasi-tree machinery, so it can serve as the oracle for the t = -1
//! evaluation identity.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::KnotDiagram;

/// Checkerboard data for a diagram: face shading, per-crossing types and the
/// reduced Goeritz matrix.
#[derive(Debug, Clone)]
pub struct GoeritzData {
    /// Shading flag per face id; the face with id 0 plays the role of the
    /// unbounded face and is unshaded.
    pub coloring: Vec<bool>,
    /// Reduced symmetric matrix over all but one shaded face.
    pub matrix: Vec<Vec<BigInt>>,
    /// Crossing type: +1 when the shaded corners are the pair rounded by the
    /// A-smoothing chords, -1 otherwise. A global flip only scales the
    /// determinant by a sign.
    pub crossing_types: Vec<i8>,
}

/// Proper 2-coloring of the faces: faces on either side of an arc differ.
/// `true` marks the shaded class. The face with id 0 is unshaded.
pub fn checkerboard(diagram: &KnotDiagram) -> Vec<bool> {
    checkerboard_with(diagram, false)
}

fn checkerboard_with(diagram: &KnotDiagram, root_shaded: bool) -> Vec<bool> {
    let faces = diagram.faces();
    let c = diagram.crossing_count();
    let mut corner_face = vec![[0usize; 4]; c];
    for face in &faces {
        for &(crossing, corner) in &face.corners {
            corner_face[crossing][corner] = face.id;
        }
    }
    let mut color: Vec<Option<bool>> = vec![None; faces.len()];
    color[0] = Some(root_shaded);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..c {
            for k in 0..4 {
                let fa = corner_face[i][k];
                let fb = corner_face[i][(k + 1) % 4];
                match (color[fa], color[fb]) {
                    (Some(x), None) => {
                        color[fb] = Some(!x);
                        changed = true;
                    }
                    (None, Some(x)) => {
                        color[fa] = Some(!x);
                        changed = true;
                    }
                    (Some(x), Some(y)) => assert_ne!(x, y, "improper checkerboard coloring"),
                    (None, None) => {}
                }
            }
        }
    }
    color
        .into_iter()
        .map(|c| c.expect("all faces colored"))
        .collect()
}

/// Builds the Goeritz data for a given shading.
fn goeritz_with(diagram: &KnotDiagram, root_shaded: bool) -> GoeritzData {
    let coloring = checkerboard_with(diagram, root_shaded);
    let faces = diagram.faces();
    let c = diagram.crossing_count();
    let mut corner_face = vec![[0usize; 4]; c];
    for face in &faces {
        for &(crossing, corner) in &face.corners {
            corner_face[crossing][corner] = face.id;
        }
    }
    // Index the shaded faces.
    let shaded: Vec<usize> = (0..faces.len()).filter(|&f| coloring[f]).collect();
    let index_of: std::collections::BTreeMap<usize, usize> =
        shaded.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let m = shaded.len();
    let mut full = vec![vec![BigInt::zero(); m]; m];
    let mut crossing_types = Vec::with_capacity(c);
    for i in 0..c {
        // Around a crossing the colors alternate, so the shaded corners are
        // opposite: either {0, 2} or {1, 3}.
        let shaded_pair = if coloring[corner_face[i][1]] {
            (corner_face[i][1], corner_face[i][3])
        } else {
            (corner_face[i][0], corner_face[i][2])
        };
        let eta: i8 = if coloring[corner_face[i][1]] { 1 } else { -1 };
        crossing_types.push(eta);
        let (fi, fj) = shaded_pair;
        if fi == fj {
            continue;
        }
        let (ri, rj) = (index_of[&fi], index_of[&fj]);
        let eta = BigInt::from(eta);
        full[ri][rj] -= &eta;
        full[rj][ri] -= &eta;
        full[ri][ri] += &eta;
        full[rj][rj] += &eta;
    }
    // Reduce by deleting the row and column of the largest shaded face id.
    let drop = m.saturating_sub(1);
    let matrix: Vec<Vec<BigInt>> = (0..m)
        .filter(|&r| r != drop)
        .map(|r| {
            (0..m)
                .filter(|&col| col != drop)
                .map(|col| full[r][col].clone())
                .collect()
        })
        .collect();
    GoeritzData {
        coloring,
        matrix,
        crossing_types,
    }
}

pub fn goeritz_data(diagram: &KnotDiagram) -> GoeritzData {
    goeritz_with(diagram, false)
}

/// The knot determinant: |det| of the reduced Goeritz matrix. Independent of
/// which color class is shaded and which row/column is deleted.
pub fn knot_determinant(diagram: &KnotDiagram) -> BigInt {
    goeritz_data(diagram).determinant()
}

impl GoeritzData {
    pub fn determinant(&self) -> BigInt {
        integer_determinant(&self.matrix).abs()
    }
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}
