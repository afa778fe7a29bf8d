//! Induced ribbon subgraphs and the genus change under partial duality.
//!
//! `G[A]` keeps the edges of `A` and the vertices they touch. Its `τ0` and
//! `τ2` are restrictions; `τ1` is spliced: from a kept flag `x`, walk
//! `τ1, τ2, τ1, ...` around the vertex until the first kept flag reached by
//! a `τ1` step, i.e. `τ1' (x) = τ1 (τ2 τ1)^k (x)` for the least such `k`.

use crate::map::{FlagMap, MapError};
use crate::partial_dual::EdgeSet;
use crate::permutation::Permutation;

/// A sub-map of `parent` on the flags of the edge set `edges`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub edges: EdgeSet,
    /// Parent flags in ascending order; parent flag `flags[i]` is flag
    /// `i + 1` of `submap`.
    pub flags: Vec<usize>,
    pub submap: FlagMap,
}

/// `G[A]`.
pub fn induced_subgraph(m: &FlagMap, a: &EdgeSet) -> Result<InducedSubgraph, MapError> {
    let a = EdgeSet::resolve(m, a.iter())?;
    let n = m.flag_count();
    let mut inside = vec![false; n];
    for label in a.iter() {
        for x in m.edge(label)?.flags {
            inside[x - 1] = true;
        }
    }
    let flags: Vec<usize> = (1..=n).filter(|&x| inside[x - 1]).collect();
    let mut index = vec![0; n];
    for (i, &x) in flags.iter().enumerate() {
        index[x - 1] = i + 1;
    }
    let tau1 = splice_tau1(m, &inside);
    let restrict = |images: &dyn Fn(usize) -> usize| {
        let v: Vec<usize> = flags.iter().map(|&x| index[images(x - 1)]).collect();
        Permutation::from_images(&v).expect("restriction is a bijection")
    };
    let [t0, _, t2] = m.taus();
    let labels = a
        .iter()
        .map(|l| (l.to_string(), index[m.edge(l).unwrap().flags[0] - 1]))
        .collect();
    let submap = FlagMap::new(
        restrict(&|x| t0.apply0(x)),
        restrict(&|x| tau1[x]),
        restrict(&|x| t2.apply0(x)),
        Some(labels),
    )
    .expect("induced subgraphs are valid maps");
    Ok(InducedSubgraph {
        edges: a,
        flags,
        submap,
    })
}

/// `G*[A]`: the subgraph of the total dual induced by `A`.
pub fn dual_induced(m: &FlagMap, a: &EdgeSet) -> Result<InducedSubgraph, MapError> {
    induced_subgraph(&m.total_dual(), a)
}

/// `v(G[A]) + v(G*[A]) - f(G[A]) - f(G*[A])`, which equals
/// `γ(G^A) - γ(G)`.
pub fn genus_change(m: &FlagMap, a: &EdgeSet) -> Result<i64, MapError> {
    let g = induced_subgraph(m, a)?.submap.metrics();
    let d = dual_induced(m, a)?.submap.metrics();
    Ok(g.v as i64 + d.v as i64 - g.f as i64 - d.f as i64)
}

/// Spliced `τ1` as 0-based images; entries outside `inside` are unused.
fn splice_tau1(m: &FlagMap, inside: &[bool]) -> Vec<usize> {
    let [_, t1, t2] = m.taus();
    let mut out = vec![usize::MAX; inside.len()];
    for x in (0..inside.len()).filter(|&x| inside[x]) {
        let mut y = t1.apply0(x);
        while !inside[y] {
            y = t1.apply0(t2.apply0(y));
        }
        out[x] = y;
    }
    out
}

/// Vertex and face counts of the subgraph on the edges selected by `mask`
/// (positions in `m.edges()`), without materializing it.
fn induced_vf(m: &FlagMap, mask: u64) -> (usize, usize) {
    let n = m.flag_count();
    let mut inside = vec![false; n];
    for (i, e) in m.edges().iter().enumerate() {
        if mask >> i & 1 == 1 {
            for x in e.flags {
                inside[x - 1] = true;
            }
        }
    }
    let tau1 = splice_tau1(m, &inside);
    let [t0, _, t2] = m.taus();
    let count = |other: &Permutation| {
        let mut seen = vec![false; n];
        let mut orbits = 0;
        for start in (0..n).filter(|&x| inside[x]) {
            if seen[start] {
                continue;
            }
            orbits += 1;
            // Orbits of two involutions are alternating cycles.
            let mut x = start;
            loop {
                seen[x] = true;
                let y = tau1[x];
                seen[y] = true;
                x = other.apply0(y);
                if x == start {
                    break;
                }
            }
        }
        orbits
    };
    (count(t2), count(t0))
}

/// Mask-based `genus_change`; `dual` must be `m.total_dual()`.
pub(crate) fn genus_change_mask(m: &FlagMap, dual: &FlagMap, mask: u64) -> i64 {
    let (gv, gf) = induced_vf(m, mask);
    let (dv, df) = induced_vf(dual, mask);
    gv as i64 + dv as i64 - gf as i64 - df as i64
}
