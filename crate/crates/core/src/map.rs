//! Ribbon graphs as bi-rotation systems.
//!
//! A [`FlagMap`] is three fixed-point-free involutions on the flags of a
//! graph-encoded map. Vertices, edges, faces and components are the orbits
//! of `{τ1, τ2}`, `{τ0, τ2}`, `{τ0, τ1}` and `{τ0, τ1, τ2}` respectively.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::permutation::{orbit_index, orbits, Permutation, PermutationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("tau{0} is not an involution")]
    NotInvolution(usize),
    #[error("tau{0} has a fixed point")]
    HasFixedPoint(usize),
    #[error("hypermap detected: the {{tau0, tau2}}-orbit {orbit:?} has {} flags, ribbon graphs need 4", orbit.len())]
    HypermapDetected { orbit: Vec<usize> },
    #[error("bad edge labels: {0}")]
    BadEdgeLabels(String),
    #[error("unknown edge label {0:?}")]
    UnknownEdge(String),
    #[error("map is not orientable")]
    NonOrientable,
}

/// One edge-ribbon: its label and its four flags in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub label: String,
    pub flags: [usize; 4],
}

/// A validated bi-rotation system. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagMap {
    tau: [Permutation; 3],
    /// Sorted by minimal flag.
    edges: Vec<Edge>,
}

/// Surface type of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSignature {
    pub orientable: bool,
    pub euler_genus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapMetrics {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub c: usize,
    pub euler_genus: usize,
    pub orientable: bool,
    /// One entry per component, sorted.
    pub component_signature: Vec<ComponentSignature>,
}

impl MapMetrics {
    /// Orientable genus `γ / 2`, or `None` for non-orientable maps.
    pub fn genus(&self) -> Option<usize> {
        self.orientable.then_some(self.euler_genus / 2)
    }
}

impl std::fmt::Display for MapMetrics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "v={} e={} f={} c={} euler_genus={} orientable={}",
            self.v, self.e, self.f, self.c, self.euler_genus, self.orientable
        )
    }
}

impl FlagMap {
    /// Validates raw involutions. `edge_labels` pairs each label with one
    /// representative flag of its edge; when absent, edges are labelled
    /// `e1, e2, ...` in order of their minimal flag.
    pub fn new(
        tau0: Permutation,
        tau1: Permutation,
        tau2: Permutation,
        edge_labels: Option<Vec<(String, usize)>>,
    ) -> Result<FlagMap, MapError> {
        let tau = [tau0, tau1, tau2];
        let n = tau[0].degree();
        for t in &tau[1..] {
            if t.degree() != n {
                return Err(PermutationError::DomainMismatch(n, t.degree()).into());
            }
        }
        for (i, t) in tau.iter().enumerate() {
            if !t.is_involution() {
                return Err(MapError::NotInvolution(i));
            }
            if t.has_fixed_point() {
                return Err(MapError::HasFixedPoint(i));
            }
        }
        let edge_orbits = orbits(&[&tau[0], &tau[2]], n)?;
        if let Some(orbit) = edge_orbits.iter().find(|o| o.len() != 4) {
            return Err(MapError::HypermapDetected {
                orbit: orbit.clone(),
            });
        }
        let flags: Vec<[usize; 4]> = edge_orbits
            .iter()
            .map(|o| [o[0], o[1], o[2], o[3]])
            .collect();
        let edges = match edge_labels {
            None => flags
                .into_iter()
                .enumerate()
                .map(|(i, flags)| Edge {
                    label: format!("e{}", i + 1),
                    flags,
                })
                .collect(),
            Some(labels) => assign_labels(n, &flags, labels)?,
        };
        Ok(FlagMap { tau, edges })
    }

    /// Convenience constructor from cycle-notation strings.
    pub fn from_cycles(n: usize, tau0: &str, tau1: &str, tau2: &str) -> Result<FlagMap, MapError> {
        FlagMap::new(
            Permutation::parse_cycles(tau0, n)?,
            Permutation::parse_cycles(tau1, n)?,
            Permutation::parse_cycles(tau2, n)?,
            None,
        )
    }

    /// The map with no flags.
    pub fn empty() -> FlagMap {
        let id = Permutation::identity(0);
        FlagMap {
            tau: [id.clone(), id.clone(), id],
            edges: Vec::new(),
        }
    }

    /// Rebuilds a map whose invariants are already known to hold, keeping
    /// the existing edge labels (edge orbits must be unchanged).
    pub(crate) fn with_taus_unchecked(&self, tau: [Permutation; 3]) -> FlagMap {
        FlagMap {
            tau,
            edges: self.edges.clone(),
        }
    }

    pub fn flag_count(&self) -> usize {
        self.tau[0].degree()
    }

    pub fn tau(&self, i: usize) -> &Permutation {
        &self.tau[i]
    }

    pub fn taus(&self) -> &[Permutation; 3] {
        &self.tau
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, label: &str) -> Result<&Edge, MapError> {
        self.edges
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| MapError::UnknownEdge(label.to_string()))
    }

    /// The edge whose orbit contains flag `x`.
    pub fn edge_of_flag(&self, x: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.flags.contains(&x))
    }

    pub fn edge_labels(&self) -> Vec<&str> {
        self.edges.iter().map(|e| e.label.as_str()).collect()
    }

    /// Returns a copy with the edges relabelled `e1, e2, ...` by minimal flag.
    pub fn with_default_labels(&self) -> FlagMap {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| Edge {
                label: format!("e{}", i + 1),
                flags: e.flags,
            })
            .collect();
        FlagMap {
            tau: self.tau.clone(),
            edges,
        }
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        orbits(&[&self.tau[1], &self.tau[2]], self.flag_count()).expect("degrees agree")
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        orbits(&[&self.tau[0], &self.tau[1]], self.flag_count()).expect("degrees agree")
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        orbits(
            &[&self.tau[0], &self.tau[1], &self.tau[2]],
            self.flag_count(),
        )
        .expect("degrees agree")
    }

    pub fn metrics(&self) -> MapMetrics {
        let n = self.flag_count();
        let [t0, t1, t2] = &self.tau;
        let (c, comp) = orbit_index(&[t0, t1, t2], n);
        let (v, vert) = orbit_index(&[t1, t2], n);
        let (e, edge) = orbit_index(&[t0, t2], n);
        let (f, face) = orbit_index(&[t0, t1], n);
        let colour = self.two_colouring();

        // chi per component: count each orbit once, at its first flag.
        let mut chi = vec![0i64; c];
        let mut orientable = vec![true; c];
        let mut seen_v = vec![false; v];
        let mut seen_e = vec![false; e];
        let mut seen_f = vec![false; f];
        for x in 0..n {
            let k = comp[x];
            if !std::mem::replace(&mut seen_v[vert[x]], true) {
                chi[k] += 1;
            }
            if !std::mem::replace(&mut seen_e[edge[x]], true) {
                chi[k] -= 1;
            }
            if !std::mem::replace(&mut seen_f[face[x]], true) {
                chi[k] += 1;
            }
            if colour[x].is_none() {
                orientable[k] = false;
            }
        }
        let mut component_signature: Vec<ComponentSignature> = chi
            .iter()
            .zip(&orientable)
            .map(|(&chi, &orientable)| ComponentSignature {
                orientable,
                euler_genus: usize::try_from(2 - chi).expect("Euler genus is nonnegative"),
            })
            .collect();
        component_signature.sort_unstable();
        let euler_genus = component_signature.iter().map(|s| s.euler_genus).sum();
        MapMetrics {
            v,
            e,
            f,
            c,
            euler_genus,
            orientable: orientable.iter().all(|&o| o),
            component_signature,
        }
    }

    /// True iff the gem is bipartite, i.e. every component is orientable.
    pub fn is_orientable(&self) -> bool {
        self.two_colouring().iter().all(Option::is_some)
    }

    /// Proper 2-colouring of the gem, per component. Every flag of a
    /// non-bipartite component is `None`. Within a bipartite component the
    /// class of its minimal flag is `Some(false)`.
    pub(crate) fn two_colouring(&self) -> Vec<Option<bool>> {
        let n = self.flag_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            colour[start] = Some(false);
            queue.push_back(start);
            let mut members = vec![start];
            let mut bipartite = true;
            while let Some(x) = queue.pop_front() {
                let cx = colour[x].unwrap();
                for t in &self.tau {
                    let y = t.apply0(x);
                    if !visited[y] {
                        visited[y] = true;
                        colour[y] = Some(!cx);
                        members.push(y);
                        queue.push_back(y);
                    } else if colour[y] == Some(cx) {
                        bipartite = false;
                    }
                }
            }
            if !bipartite {
                for x in members {
                    colour[x] = None;
                }
            }
        }
        colour
    }

    /// Euler–Poincaré dual: exchanges τ0 and τ2.
    pub fn total_dual(&self) -> FlagMap {
        let [t0, t1, t2] = self.tau.clone();
        self.with_taus_unchecked([t2, t1, t0])
    }

    /// Tutte's `(θ, φ, P) = (τ2, τ0, τ1·τ2)`.
    pub fn tutte_permutations(&self) -> (Permutation, Permutation, Permutation) {
        let [t0, t1, t2] = &self.tau;
        let p = t1.compose(t2).expect("degrees agree");
        (t2.clone(), t0.clone(), p)
    }

    /// Searches for a flag bijection conjugating every `τi` of `self` onto
    /// the matching `τi` of `other`. Returns the 1-based witness
    /// (`witness[x - 1]` is the image of flag `x`).
    pub fn isomorphism(&self, other: &FlagMap) -> Option<Vec<usize>> {
        let n = self.flag_count();
        if n != other.flag_count() {
            return None;
        }
        let (ma, mb) = (self.metrics(), other.metrics());
        if (ma.v, ma.e, ma.f, ma.c, &ma.component_signature)
            != (mb.v, mb.e, mb.f, mb.c, &mb.component_signature)
        {
            return None;
        }
        let comps_a = self.components();
        let comps_b = other.components();
        let mut used = vec![false; comps_b.len()];
        let mut map = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for ca in &comps_a {
            let base = ca[0] - 1;
            let mut matched = false;
            'candidates: for (j, cb) in comps_b.iter().enumerate() {
                if used[j] || cb.len() != ca.len() {
                    continue;
                }
                for &y in cb {
                    if self.extend(other, base, y - 1, &mut map, &mut hit) {
                        used[j] = true;
                        matched = true;
                        break 'candidates;
                    }
                }
            }
            if !matched {
                return None;
            }
        }
        Some(map.into_iter().map(|y| y + 1).collect())
    }

    pub fn is_isomorphic(&self, other: &FlagMap) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Propagates `base -> image` through one component. On failure the
    /// partial assignment is rolled back.
    fn extend(
        &self,
        other: &FlagMap,
        base: usize,
        image: usize,
        map: &mut [usize],
        hit: &mut [bool],
    ) -> bool {
        if hit[image] {
            return false;
        }
        let mut assigned = vec![base];
        map[base] = image;
        hit[image] = true;
        let mut i = 0;
        let mut ok = true;
        'walk: while i < assigned.len() {
            let x = assigned[i];
            i += 1;
            for (ta, tb) in self.tau.iter().zip(&other.tau) {
                let xa = ta.apply0(x);
                let yb = tb.apply0(map[x]);
                if map[xa] == usize::MAX {
                    if hit[yb] {
                        ok = false;
                        break 'walk;
                    }
                    map[xa] = yb;
                    hit[yb] = true;
                    assigned.push(xa);
                } else if map[xa] != yb {
                    ok = false;
                    break 'walk;
                }
            }
        }
        if !ok {
            for x in assigned {
                hit[map[x]] = false;
                map[x] = usize::MAX;
            }
        }
        ok
    }

    /// Graphviz rendering of the gem: one node per flag, one coloured edge
    /// per transposition of each `τi`.
    pub fn gem_dot(&self) -> String {
        const COLOURS: [&str; 3] = ["red", "blue", "darkgreen"];
        let mut out = String::from("graph gem {\n  node [shape=circle];\n");
        for x in 1..=self.flag_count() {
            writeln!(out, "  {x};").unwrap();
        }
        for (i, t) in self.tau.iter().enumerate() {
            for x in 1..=self.flag_count() {
                let y = t.apply(x);
                if x < y {
                    writeln!(out, "  {x} -- {y} [color={}, label=\"{i}\"];", COLOURS[i]).unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn assign_labels(
    n: usize,
    flags: &[[usize; 4]],
    labels: Vec<(String, usize)>,
) -> Result<Vec<Edge>, MapError> {
    let bad = |msg: String| MapError::BadEdgeLabels(msg);
    let mut owner = vec![usize::MAX; n];
    for (k, orbit) in flags.iter().enumerate() {
        for &x in orbit {
            owner[x - 1] = k;
        }
    }
    let mut slot: Vec<Option<String>> = vec![None; flags.len()];
    let mut names = std::collections::HashSet::new();
    for (label, rep) in labels {
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(bad(format!("invalid label {label:?}")));
        }
        if !names.insert(label.clone()) {
            return Err(bad(format!("label {label:?} used twice")));
        }
        if rep == 0 || rep > n {
            return Err(bad(format!("flag {rep} of {label:?} out of range")));
        }
        let k = owner[rep - 1];
        if let Some(prev) = &slot[k] {
            return Err(bad(format!("{label:?} and {prev:?} name the same edge")));
        }
        slot[k] = Some(label);
    }
    flags
        .iter()
        .zip(slot)
        .map(|(&flags, label)| {
            label
                .map(|label| Edge { label, flags })
                .ok_or_else(|| bad(format!("edge with flags {flags:?} has no label")))
        })
        .collect()
}
