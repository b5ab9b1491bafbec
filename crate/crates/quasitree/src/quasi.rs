//! Quasi-tree enumeration graded by genus, the polynomial q(t) whose
//! coefficients count them, the two-variable refinement q(t, Y), and the
//! subset-expansion polynomial C(X, Y, Z) it specializes from.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::map::{subsets_of_size, CombMap, EdgeSet, MapError};
use crate::poly::{QuasiTreePoly, TriVarPoly, TwoVarPoly};

/// A quasi-tree: a spanning edge subset with exactly one boundary component,
/// together with its genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiTree {
    pub subset: EdgeSet,
    pub genus: usize,
}

fn require_connected(map: &CombMap) -> Result<(), MapError> {
    let k = map.components().len();
    if k > 1 {
        return Err(MapError::Disconnected { components: k });
    }
    Ok(())
}

/// All spanning subsets F with one boundary component, graded by genus.
///
/// A genus-j quasi-tree of a connected map on V vertices has exactly
/// V - 1 + 2j edges, so only those subset sizes are scanned; the result is
/// identical to a full power-set scan (property-tested).
pub fn enumerate_quasi_trees(map: &CombMap) -> Result<Vec<QuasiTree>, MapError> {
    require_connected(map)?;
    let v = map.vertex_count();
    let e = map.edge_count();
    let g_max = map.genus();
    let mut out = Vec::new();
    for genus in 0..=g_max {
        let size = v - 1 + 2 * genus;
        if size > e {
            break;
        }
        for subset in subsets_of_size(e, size) {
            if map.boundary_components(subset)? != 1 {
                continue;
            }
            let profile = map.subgraph_profile(subset)?;
            debug_assert_eq!(profile.k, 1);
            debug_assert_eq!(profile.g, genus);
            out.push(QuasiTree {
                subset,
                genus: profile.g,
            });
        }
    }
    Ok(out)
}

/// q(t) = sum over j of a_j t^j, a_j the number of genus-j quasi-trees.
pub fn quasi_tree_polynomial(map: &CombMap) -> Result<QuasiTreePoly, MapError> {
    let trees = enumerate_quasi_trees(map)?;
    let g_max = trees.iter().map(|qt| qt.genus).max().unwrap_or(0);
    let mut counts = vec![BigInt::zero(); g_max + 1];
    for qt in &trees {
        counts[qt.genus] += 1;
    }
    Ok(QuasiTreePoly::new(counts))
}

/// The subset expansion
/// C(X, Y, Z) = sum over edge subsets F of
/// (X-1)^(r(E)-r(F)) * Y^(n(F)) * Z^(g(F)).
///
/// The Z-exponent is the genus of the spanning ribbon subgraph; this is the
/// convention under which C(1, Y, tY^-2) is the two-variable quasi-tree
/// polynomial.
pub fn brt_polynomial(map: &CombMap) -> Result<TriVarPoly, MapError> {
    let e = map.edge_count();
    if e > 62 {
        return Err(MapError::EdgeOutOfRange {
            index: e,
            edges: 62,
        });
    }
    let rank_full = map.subgraph_profile(map.full_edge_set())?.r;
    let mut poly = TriVarPoly::new();
    for size in 0..=e {
        for subset in subsets_of_size(e, size) {
            let p = map.subgraph_profile(subset)?;
            let corank = (rank_full - p.r) as u32;
            // Expand (X-1)^corank binomially into X powers.
            let mut binom = BigInt::one();
            for i in 0..=corank {
                // binom = C(corank, i) with alternating sign (-1)^(corank-i)
                let sign = if (corank - i) % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                poly.add_term(i, p.n as u32, p.g as u32, sign * &binom);
                binom = binom * (corank - i) / (i + 1);
            }
        }
    }
    Ok(poly)
}

/// q(t, Y) = sum over connected spanning subsets F of t^(g(F)) * Y^(f(F)-1),
/// computed directly from the subgraph profiles. Setting Y = 0 recovers
/// [`quasi_tree_polynomial`].
pub fn two_variable_q(map: &CombMap) -> Result<TwoVarPoly, MapError> {
    require_connected(map)?;
    let e = map.edge_count();
    let mut poly = TwoVarPoly::new();
    for size in 0..=e {
        for subset in subsets_of_size(e, size) {
            let p = map.subgraph_profile(subset)?;
            if p.k != 1 {
                continue;
            }
            poly.add_term(p.g as u32, (p.f - 1) as u32, BigInt::one());
        }
    }
    Ok(poly)
}
