//! Permutations of `{1..n}` with cycle-notation parsing and printing.
//!
//! Points are 1-based everywhere in the public API. Composition follows the
//! right-to-left convention: `p.compose(&q)` applies `q` first, then `p`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("domain size mismatch: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("label {label} out of range 1..={n}")]
    OutOfRange { label: usize, n: usize },
    #[error("label {0} appears more than once")]
    Repeated(usize),
    #[error("malformed cycle notation at byte {pos}: {reason}")]
    Malformed { pos: usize, reason: &'static str },
    #[error("image sequence is not a bijection")]
    NotBijection,
}

/// A bijection of `{1..n}`, stored as the 0-based image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut table = Vec::with_capacity(n);
        for &y in images {
            if y == 0 || y > n {
                return Err(PermutationError::OutOfRange { label: y, n });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(PermutationError::NotBijection);
            }
            table.push(y - 1);
        }
        Ok(Permutation { images: table })
    }

    /// Builds a permutation from a list of disjoint cycles of 1-based labels.
    pub fn from_cycles<C>(n: usize, cycles: C) -> Result<Self, PermutationError>
    where
        C: IntoIterator,
        C::Item: AsRef<[usize]>,
    {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(PermutationError::OutOfRange { label: x, n });
                }
                if std::mem::replace(&mut used[x - 1], true) {
                    return Err(PermutationError::Repeated(x));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                images[x - 1] = y - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// The transposition `(a b)` on `{1..n}`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermutationError> {
        Self::from_cycles(n, [[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, x: usize) -> usize {
        self.images[x]
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y + 1).collect()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermutationError> {
        if self.degree() != other.degree() {
            return Err(PermutationError::DomainMismatch(
                self.degree(),
                other.degree(),
            ));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// True iff every point is moved and `p(p(x)) = x`.
    pub fn is_fpf_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| x != y && self.images[y] == x)
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| self.images[y] == x)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(x, &y)| x == y)
    }

    /// Cycles in canonical order: each starts at its minimum, cycles sorted
    /// by minimum. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Canonical cycle notation, fixed points omitted, identity as `()`.
    pub fn format_cycles(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            s.push('(');
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&x.to_string());
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// Parses `perm := "()" | cycle+ ; cycle := "(" int (" " int)* ")"`.
    /// Unlisted points are fixed.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation, PermutationError> {
        if text == "()" {
            return Ok(Permutation::identity(n));
        }
        let bytes = text.as_bytes();
        let malformed = |pos, reason| PermutationError::Malformed { pos, reason };
        if bytes.is_empty() {
            return Err(malformed(0, "empty input"));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(malformed(pos, "expected '('"));
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(malformed(pos, "expected integer"));
                }
                let label: usize = text[start..pos]
                    .parse()
                    .map_err(|_| malformed(start, "integer overflow"))?;
                cycle.push(label);
                match bytes.get(pos) {
                    Some(b' ') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(_) => return Err(malformed(pos, "expected ' ' or ')'")),
                    None => return Err(malformed(pos, "unclosed cycle")),
                }
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(n, cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self.format_cycles())
    }
}

/// Parses cycle notation on the smallest domain that holds every label.
impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Permutation::parse_cycles(s, n)
    }
}

/// Orbits of the group generated by `generators` acting on `{1..n}`.
///
/// Each orbit is sorted ascending; orbits are ordered by their minimum.
pub fn orbits(generators: &[&Permutation], n: usize) -> Result<Vec<Vec<usize>>, PermutationError> {
    for g in generators {
        if g.degree() != n {
            return Err(PermutationError::DomainMismatch(n, g.degree()));
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut orbit = Vec::new();
        while let Some(x) = queue.pop_front() {
            orbit.push(x + 1);
            for g in generators {
                let y = g.apply0(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    Ok(out)
}

/// Like [`orbits`], but returns the 0-based orbit index of every point.
pub(crate) fn orbit_index(generators: &[&Permutation], n: usize) -> (usize, Vec<usize>) {
    let mut index = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        index[start] = count;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for g in generators {
                let y = g.apply0(x);
                if index[y] == usize::MAX {
                    index[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    (count, index)
}
