//! Partial duality on flag maps.
//!
//! Dualizing a single edge `e` multiplies `τ0` and `τ2` by `τ0^e·τ2^e`, the
//! product of their restrictions to the four flags of `e`; `τ1` is
//! untouched. The net effect exchanges the `τ0` and `τ2` pairings on those
//! flags. Dualizing a set of edges folds the single-edge operation.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::map::{FlagMap, MapError};
use crate::permutation::Permutation;

/// A set of edges of some map, identified by label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    labels: BTreeSet<String>,
}

impl EdgeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn all(m: &FlagMap) -> Self {
        EdgeSet {
            labels: m.edges().iter().map(|e| e.label.clone()).collect(),
        }
    }

    /// Resolves labels against `m`. Unknown or repeated labels are errors.
    pub fn resolve<I, S>(m: &FlagMap, labels: I) -> Result<Self, MapError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for label in labels {
            let label = label.as_ref();
            m.edge(label)?;
            if !set.insert(label.to_string()) {
                return Err(MapError::BadEdgeLabels(format!("{label:?} listed twice")));
            }
        }
        Ok(EdgeSet { labels: set })
    }

    /// The edges whose positions (in `m.edges()` order) are set in `mask`.
    pub fn from_mask(m: &FlagMap, mask: u64) -> Self {
        EdgeSet {
            labels: m
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.label.clone())
                .collect(),
        }
    }

    pub fn to_mask(&self, m: &FlagMap) -> u64 {
        m.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| self.labels.contains(&e.label))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.contains(label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn with(&self, label: &str) -> Self {
        let mut labels = self.labels.clone();
        labels.insert(label.to_string());
        EdgeSet { labels }
    }

    pub fn symmetric_difference(&self, other: &EdgeSet) -> Self {
        EdgeSet {
            labels: self
                .labels
                .symmetric_difference(&other.labels)
                .cloned()
                .collect(),
        }
    }

    /// `E ∖ self` with respect to the edges of `m`.
    pub fn complement(&self, m: &FlagMap) -> Self {
        EdgeSet {
            labels: m
                .edges()
                .iter()
                .filter(|e| !self.labels.contains(&e.label))
                .map(|e| e.label.clone())
                .collect(),
        }
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// `(τ0^e, τ2^e)`: the restrictions of `τ0` and `τ2` to the flags of `e`,
/// extended by the identity.
pub fn edge_involutions(m: &FlagMap, label: &str) -> Result<(Permutation, Permutation), MapError> {
    let edge = m.edge(label)?;
    let n = m.flag_count();
    let restrict = |t: &Permutation| {
        let [p, ..] = edge.flags;
        let q = t.apply(p);
        let r = edge
            .flags
            .iter()
            .copied()
            .find(|&x| x != p && x != q)
            .unwrap();
        Permutation::from_cycles(n, [[p, q], [r, t.apply(r)]])
    };
    Ok((restrict(m.tau(0))?, restrict(m.tau(2))?))
}

/// The partial dual at a single edge.
pub fn partial_dual_edge(m: &FlagMap, label: &str) -> Result<FlagMap, MapError> {
    let (t0e, t2e) = edge_involutions(m, label)?;
    let swap = t0e.compose(&t2e)?;
    let [t0, t1, t2] = m.taus();
    Ok(m.with_taus_unchecked([t0.compose(&swap)?, t1.clone(), t2.compose(&swap)?]))
}

/// The partial dual `m^A`, folding single-edge duals over `a`.
pub fn partial_dual(m: &FlagMap, a: &EdgeSet) -> Result<FlagMap, MapError> {
    a.iter()
        .try_fold(m.clone(), |acc, label| partial_dual_edge(&acc, label))
}

/// Identities that every partial dual must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualityProperty {
    /// `m^(A ∪ {e}) = (m^A)^{e}` for `e ∉ A`.
    FoldConsistency,
    /// `(m^A)^A = m`.
    DoubleDual,
    /// `(m^A)^B = m^(A Δ B)`.
    SymmetricDifference,
    /// `m^A` is orientable iff `m` is.
    Orientability,
    /// `m^A` and `m` have the same number of components.
    Components,
    /// `m^A` and `m^(E∖A)` cap off to the same closed surfaces.
    CappedSurface,
}

impl DualityProperty {
    pub const ALL: [DualityProperty; 6] = [
        DualityProperty::FoldConsistency,
        DualityProperty::DoubleDual,
        DualityProperty::SymmetricDifference,
        DualityProperty::Orientability,
        DualityProperty::Components,
        DualityProperty::CappedSurface,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualityProperty::FoldConsistency => "fold-consistency",
            DualityProperty::DoubleDual => "double-dual",
            DualityProperty::SymmetricDifference => "symmetric-difference",
            DualityProperty::Orientability => "orientability",
            DualityProperty::Components => "components",
            DualityProperty::CappedSurface => "capped-surface",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFailure {
    pub property: DualityProperty,
    pub a: EdgeSet,
    pub b: Option<EdgeSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetBudget {
    /// Every subset `A`; every pair `(A, B)` when `|E| <= 8`, otherwise one
    /// seeded `B` per `A`.
    All,
    /// `count` seeded subsets `A`, each paired with one seeded `B`.
    Samples { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualityReport {
    /// Number of evaluations per property, indexed like [`DualityProperty::ALL`].
    pub checked: [usize; 6],
    pub failures: Vec<PropertyFailure>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, property: DualityProperty) -> usize {
        self.failures
            .iter()
            .filter(|f| f.property == property)
            .count()
    }

    fn record(&mut self, property: DualityProperty, ok: bool, a: &EdgeSet, b: Option<&EdgeSet>) {
        let idx = DualityProperty::ALL
            .iter()
            .position(|&p| p == property)
            .unwrap();
        self.checked[idx] += 1;
        if !ok {
            self.failures.push(PropertyFailure {
                property,
                a: a.clone(),
                b: b.cloned(),
            });
        }
    }

    pub fn merge(&mut self, other: DualityReport) {
        for (c, o) in self.checked.iter_mut().zip(other.checked) {
            *c += o;
        }
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in DualityProperty::ALL.iter().enumerate() {
            let failed = self.failures_of(*p);
            let status = if failed == 0 { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{:<21} {status} checked={} failed={failed}",
                p.name(),
                self.checked[i]
            )?;
        }
        for fail in &self.failures {
            match &fail.b {
                Some(b) => writeln!(f, "failure {} A={} B={}", fail.property.name(), fail.a, b)?,
                None => writeln!(f, "failure {} A={}", fail.property.name(), fail.a)?,
            }
        }
        Ok(())
    }
}

/// Checks the partial-duality identities on `m` for the subsets chosen by
/// `budget`, using [`partial_dual`].
pub fn check_duality_properties(m: &FlagMap, budget: &SubsetBudget) -> DualityReport {
    check_duality_properties_with(m, budget, |m, a| {
        partial_dual(m, a).expect("subsets are drawn from the map's own edges")
    })
}

/// Same as [`check_duality_properties`] with a caller-supplied dualizer.
pub fn check_duality_properties_with<D>(
    m: &FlagMap,
    budget: &SubsetBudget,
    dual: D,
) -> DualityReport
where
    D: Fn(&FlagMap, &EdgeSet) -> FlagMap,
{
    let k = m.edge_count();
    assert!(k < 64, "subset masks hold at most 63 edges");
    let full: u64 = if k == 0 { 0 } else { u64::MAX >> (64 - k) };
    let mut rng = ChaCha8Rng::seed_from_u64(match budget {
        SubsetBudget::All => 0,
        SubsetBudget::Samples { seed, .. } => *seed,
    });
    let mut draw = move || {
        if full == 0 {
            0
        } else {
            rng.gen::<u64>() & full
        }
    };

    let mut pairs: Vec<(u64, u64)> = Vec::new();
    match budget {
        SubsetBudget::All if k <= 8 => {
            for a in 0..=full {
                for b in 0..=full {
                    pairs.push((a, b));
                }
            }
        }
        SubsetBudget::All => {
            for a in 0..=full {
                pairs.push((a, draw()));
            }
        }
        SubsetBudget::Samples { count, .. } => {
            for _ in 0..*count {
                let a = draw();
                pairs.push((a, draw()));
            }
        }
    }

    let base = m.metrics();
    let mut report = DualityReport::default();
    let mut last_a = None;
    for (a_mask, b_mask) in pairs {
        let a = EdgeSet::from_mask(m, a_mask);
        let ma = dual(m, &a);
        if last_a != Some(a_mask) {
            last_a = Some(a_mask);
            check_single(m, &a, &ma, &base, &dual, &mut report);
        }
        let b = EdgeSet::from_mask(m, b_mask);
        let lhs = dual(&ma, &b);
        let rhs = dual(m, &a.symmetric_difference(&b));
        report.record(
            DualityProperty::SymmetricDifference,
            lhs == rhs,
            &a,
            Some(&b),
        );
    }
    report
}

fn check_single<D>(
    m: &FlagMap,
    a: &EdgeSet,
    ma: &FlagMap,
    base: &crate::map::MapMetrics,
    dual: &D,
    report: &mut DualityReport,
) where
    D: Fn(&FlagMap, &EdgeSet) -> FlagMap,
{
    for e in m.edges().iter().filter(|e| !a.contains(&e.label)) {
        let single = EdgeSet::empty().with(&e.label);
        let lhs = dual(m, &a.with(&e.label));
        let rhs = dual(ma, &single);
        report.record(
            DualityProperty::FoldConsistency,
            lhs == rhs,
            a,
            Some(&single),
        );
    }
    report.record(DualityProperty::DoubleDual, dual(ma, a) == *m, a, None);
    let mam = ma.metrics();
    report.record(
        DualityProperty::Orientability,
        mam.orientable == base.orientable,
        a,
        None,
    );
    report.record(DualityProperty::Components, mam.c == base.c, a, None);
    let complement = dual(m, &a.complement(m)).metrics();
    report.record(
        DualityProperty::CappedSurface,
        mam.component_signature == complement.component_signature,
        a,
        None,
    );
}
