//! Rotation systems `(σ_V, σ_E)` for orientable maps.
//!
//! Faces are the cycles of `σ_E·σ_V` (apply `σ_V`, then `σ_E`).

use thiserror::Error;

use crate::map::{ComponentSignature, FlagMap, MapMetrics};
use crate::permutation::{orbit_index, Permutation, PermutationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("sigma_e must be a fixed-point-free involution")]
    BadEdgeInvolution,
    #[error("({0} {1}) is not a transposition of sigma_e")]
    NotAnEdge(usize, usize),
    #[error("map is not orientable")]
    NonOrientable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    sigma_v: Permutation,
    sigma_e: Permutation,
}

impl RotationSystem {
    pub fn new(sigma_v: Permutation, sigma_e: Permutation) -> Result<Self, RotationError> {
        if sigma_v.degree() != sigma_e.degree() {
            return Err(
                PermutationError::DomainMismatch(sigma_v.degree(), sigma_e.degree()).into(),
            );
        }
        if !sigma_e.is_fpf_involution() {
            return Err(RotationError::BadEdgeInvolution);
        }
        Ok(RotationSystem { sigma_v, sigma_e })
    }

    pub fn from_cycles(h: usize, sigma_v: &str, sigma_e: &str) -> Result<Self, RotationError> {
        Self::new(
            Permutation::parse_cycles(sigma_v, h)?,
            Permutation::parse_cycles(sigma_e, h)?,
        )
    }

    pub fn half_edges(&self) -> usize {
        self.sigma_v.degree()
    }

    pub fn sigma_v(&self) -> &Permutation {
        &self.sigma_v
    }

    pub fn sigma_e(&self) -> &Permutation {
        &self.sigma_e
    }

    /// Face permutation `σ_E·σ_V`.
    pub fn faces(&self) -> Permutation {
        self.sigma_e.compose(&self.sigma_v).expect("degrees agree")
    }

    pub fn metrics(&self) -> MapMetrics {
        let h = self.half_edges();
        let v = self.sigma_v.cycle_count();
        let e = h / 2;
        let f = self.faces().cycle_count();
        let (c, comp) = orbit_index(&[&self.sigma_v, &self.sigma_e], h);

        // Per-component Euler characteristic, for the signature.
        let mut chi = vec![0i64; c];
        for cycle in self.sigma_v.cycles() {
            chi[comp[cycle[0] - 1]] += 1;
        }
        for cycle in self.faces().cycles() {
            chi[comp[cycle[0] - 1]] += 1;
        }
        for x in 1..=h {
            if x < self.sigma_e.apply(x) {
                chi[comp[x - 1]] -= 1;
            }
        }
        let mut component_signature: Vec<_> = chi
            .into_iter()
            .map(|chi| ComponentSignature {
                orientable: true,
                euler_genus: usize::try_from(2 - chi).expect("Euler genus is nonnegative"),
            })
            .collect();
        component_signature.sort_unstable();
        MapMetrics {
            v,
            e,
            f,
            c,
            euler_genus: component_signature.iter().map(|s| s.euler_genus).sum(),
            orientable: true,
            component_signature,
        }
    }

    /// Partial dual at the edge `(a b)`: `σ_V' = (a b)·σ_V`, `σ_E` unchanged.
    pub fn partial_dual(&self, a: usize, b: usize) -> Result<RotationSystem, RotationError> {
        let h = self.half_edges();
        if a == 0 || a > h || b == 0 || b > h || a == b || self.sigma_e.apply(a) != b {
            return Err(RotationError::NotAnEdge(a, b));
        }
        let t = Permutation::transposition(h, a, b)?;
        Ok(RotationSystem {
            sigma_v: t.compose(&self.sigma_v)?,
            sigma_e: self.sigma_e.clone(),
        })
    }

    /// Flag map with flags `2h-1` (`h+`) and `2h` (`h-`) for each half-edge
    /// `h`. Edges are labelled `e1, e2, ...` in order of their smaller
    /// half-edge.
    pub fn to_flag_map(&self) -> FlagMap {
        let h = self.half_edges();
        let plus = |x: usize| 2 * x - 1;
        let minus = |x: usize| 2 * x;
        let inv_v = self.sigma_v.inverse();
        let mut t0 = vec![0; 2 * h];
        let mut t1 = vec![0; 2 * h];
        let mut t2 = vec![0; 2 * h];
        for x in 1..=h {
            t2[plus(x) - 1] = minus(x);
            t2[minus(x) - 1] = plus(x);
            t1[minus(x) - 1] = plus(self.sigma_v.apply(x));
            t1[plus(x) - 1] = minus(inv_v.apply(x));
            t0[minus(x) - 1] = plus(self.sigma_e.apply(x));
            t0[plus(x) - 1] = minus(self.sigma_e.apply(x));
        }
        let perm = |v: &[usize]| Permutation::from_images(v).expect("construction is bijective");
        FlagMap::new(perm(&t0), perm(&t1), perm(&t2), None)
            .expect("rotation systems always yield valid flag maps")
    }

    /// Inverse of [`RotationSystem::to_flag_map`] up to relabelling. In each
    /// component the half-edges are the colour class of its minimal flag,
    /// renumbered by ascending flag.
    pub fn from_flag_map(m: &FlagMap) -> Result<RotationSystem, RotationError> {
        let colour = m.two_colouring();
        if colour.iter().any(Option::is_none) {
            return Err(RotationError::NonOrientable);
        }
        let chosen: Vec<usize> = (1..=m.flag_count())
            .filter(|&x| colour[x - 1] == Some(false))
            .collect();
        let mut index = vec![0; m.flag_count() + 1];
        for (i, &x) in chosen.iter().enumerate() {
            index[x] = i + 1;
        }
        let [t0, t1, t2] = m.taus();
        let restrict = |first: &Permutation| -> Permutation {
            let images: Vec<usize> = chosen
                .iter()
                .map(|&x| index[first.apply(t2.apply(x))])
                .collect();
            Permutation::from_images(&images).expect("class is closed under the product")
        };
        Ok(RotationSystem {
            sigma_v: restrict(t1),
            sigma_e: restrict(t0),
        })
    }

    /// Label of the edge containing half-edge `x` in [`Self::to_flag_map`].
    pub fn edge_label(&self, x: usize) -> String {
        let lo = x.min(self.sigma_e.apply(x));
        let rank = (1..lo).filter(|&y| y < self.sigma_e.apply(y)).count();
        format!("e{}", rank + 1)
    }
}
