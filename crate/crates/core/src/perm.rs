//! Permutations of `{0, …, n-1}` stored as image arrays.
//!
//! Composition follows function notation: `a.compose(&b)` is `a ∘ b`, i.e.
//! `i ↦ a(b(i))`.

use std::fmt;

use crate::error::OrigamiError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Validates that `images` is a bijection of `{0, …, n-1}`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, OrigamiError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(OrigamiError::NonBijective);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of `{0, …, n-1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self, OrigamiError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= n || touched[x] {
                    return Err(OrigamiError::NonBijective);
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^k` for any integer `k`, in `O(n)` via the cycle structure.
    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.len();
        let mut out = vec![0u32; n];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (pos, &x) in cycle.iter().enumerate() {
                out[x as usize] = cycle[(pos + shift) % cycle.len()];
            }
        }
        Permutation { images: out }
    }

    /// `g ∘ self ∘ g⁻¹`, the relabeling of `self` along `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images: out }
    }

    /// Cycles including fixed points, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` or the empty string
    /// is the identity. Commas are accepted as separators.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, OrigamiError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| OrigamiError::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| OrigamiError::Parse(format!("unbalanced parentheses in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| OrigamiError::Parse(format!("bad square index {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }
}

/// Cycle notation omitting fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn rejects_non_bijection() {
        assert_eq!(Permutation::from_images(vec![0, 0]), Err(OrigamiError::NonBijective));
        assert_eq!(Permutation::from_images(vec![0, 2]), Err(OrigamiError::NonBijective));
    }

    #[test]
    fn cycle_notation() {
        let p = Permutation::parse_cycles(5, "(0 1)(2 3 4)").unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 4, 2]);
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
        assert_eq!(Permutation::parse_cycles(3, "()").unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1").is_err());
    }

    #[test]
    fn compose_is_function_notation() {
        let a = Permutation::parse_cycles(3, "(0 1)").unwrap();
        let b = Permutation::parse_cycles(3, "(1 2)").unwrap();
        // (a∘b)(1) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    proptest! {
        #[test]
        fn inverse_round_trips(p in arb_perm(9)) {
            let n = p.len();
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
            prop_assert_eq!(Permutation::parse_cycles(n, &p.to_string()).unwrap(), p);
        }

        #[test]
        fn pow_matches_repeated_composition(p in arb_perm(7), k in -12i64..12) {
            let mut expect = Permutation::identity(p.len());
            let step = if k >= 0 { p.clone() } else { p.inverse() };
            for _ in 0..k.unsigned_abs() {
                expect = step.compose(&expect);
            }
            prop_assert_eq!(p.pow(k), expect);
        }

        #[test]
        fn conjugation_preserves_cycle_type(p in arb_perm(8), seed in any::<u64>()) {
            let n = p.len();
            let mut imgs: Vec<u32> = (0..n as u32).collect();
            // cheap deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                imgs.swap(i, (s >> 33) as usize % (i + 1));
            }
            let g = Permutation::from_images(imgs).unwrap();
            let c = p.conjugate_by(&g);
            prop_assert_eq!(c.cycle_type(), p.cycle_type());
            prop_assert_eq!(c, g.compose(&p).compose(&g.inverse()));
        }
    }
}
