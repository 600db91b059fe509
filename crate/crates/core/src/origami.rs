//! Square-tiled surfaces encoded by a pair of permutations.
//!
//! Square `i` has right neighbor `h(i)` and upper neighbor `v(i)`. The
//! bottom-left corners of squares `i` and `c(i)` coincide, where
//! `c = h∘v∘h⁻¹∘v⁻¹`, so the cycles of `c` are the vertex classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::OrigamiError;
use crate::perm::Permutation;
use crate::sl2z::{decompose_sl2z, IntegerMatrix, Letter};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

/// Validates `(h, v)` and builds the origami.
pub fn make_origami(h: Permutation, v: Permutation) -> Result<Origami, OrigamiError> {
    if h.len() != v.len() {
        return Err(OrigamiError::LengthMismatch(h.len(), v.len()));
    }
    if h.is_empty() {
        return Err(OrigamiError::Empty);
    }
    let o = Origami { h, v };
    if !o.is_transitive() {
        return Err(OrigamiError::Disconnected);
    }
    Ok(o)
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Self, OrigamiError> {
        make_origami(h, v)
    }

    /// Builds from image arrays.
    pub fn from_images(h: Vec<u32>, v: Vec<u32>) -> Result<Self, OrigamiError> {
        make_origami(Permutation::from_images(h)?, Permutation::from_images(v)?)
    }

    /// The one-square torus.
    pub fn torus() -> Self {
        Origami { h: Permutation::identity(1), v: Permutation::identity(1) }
    }

    /// The three-square L: `h = (0 1)`, `v = (0 2)`.
    pub fn l_shape() -> Self {
        "3; h=(0 1); v=(0 2)".parse().expect("valid literal")
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    fn is_transitive(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in [self.h.apply(x), self.v.apply(x)] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// `h∘v∘h⁻¹∘v⁻¹`.
    pub fn commutator(&self) -> Permutation {
        self.h
            .compose(&self.v)
            .compose(&self.h.inverse())
            .compose(&self.v.inverse())
    }

    /// For each square, the index of the vertex class of its bottom-left
    /// corner, together with the size of each class.
    pub fn vertex_classes(&self) -> (Vec<u32>, Vec<usize>) {
        let mut class = vec![0u32; self.n()];
        let mut sizes = Vec::new();
        for (k, cycle) in self.commutator().cycles().into_iter().enumerate() {
            for &x in &cycle {
                class[x as usize] = k as u32;
            }
            sizes.push(cycle.len());
        }
        (class, sizes)
    }

    /// Relabels squares along `g`: square `i` becomes `g(i)`.
    pub fn relabel(&self, g: &Permutation) -> Origami {
        Origami { h: self.h.conjugate_by(g), v: self.v.conjugate_by(g) }
    }

    /// Action of `T^k`, `T = [[1,1],[0,1]]`: `(h, v) ↦ (h, v∘h⁻ᵏ)`.
    pub fn shear(&self, k: i64) -> Origami {
        if k == 0 {
            return self.clone();
        }
        Origami { h: self.h.clone(), v: self.v.compose(&self.h.pow(-k)) }
    }

    /// Action of `S = [[0,-1],[1,0]]` (quarter turn): `(h, v) ↦ (v⁻¹, h)`.
    pub fn rotate(&self) -> Origami {
        Origami { h: self.v.inverse(), v: self.h.clone() }
    }

    pub(crate) fn apply_letter(&self, letter: Letter) -> Origami {
        match letter {
            Letter::S => self.rotate(),
            Letter::T(k) => self.shear(k),
        }
    }

    /// Canonical BFS encoding started at `start`: images of `h` then `v`.
    fn bfs_encoding(&self, start: u32, out: &mut Vec<u32>, label: &mut Vec<u32>, order: &mut Vec<u32>) {
        let n = self.n();
        label.clear();
        label.resize(n, u32::MAX);
        order.clear();
        label[start as usize] = 0;
        order.push(start);
        let mut idx = 0;
        while idx < order.len() {
            let x = order[idx];
            idx += 1;
            for y in [self.h.apply(x), self.v.apply(x)] {
                if label[y as usize] == u32::MAX {
                    label[y as usize] = order.len() as u32;
                    order.push(y);
                }
            }
        }
        out.clear();
        out.resize(2 * n, 0);
        for (i, &x) in order.iter().enumerate() {
            out[i] = label[self.h.apply(x) as usize];
            out[n + i] = label[self.v.apply(x) as usize];
        }
    }

    /// Lexicographically minimal BFS relabeling over all start squares.
    /// Two origamis are isomorphic iff their canonical forms are equal.
    pub fn canonical_form(&self) -> Origami {
        let n = self.n();
        let (mut best, mut cur) = (Vec::new(), Vec::new());
        let (mut label, mut order) = (Vec::new(), Vec::new());
        for start in 0..n as u32 {
            self.bfs_encoding(start, &mut cur, &mut label, &mut order);
            if best.is_empty() || cur < best {
                std::mem::swap(&mut best, &mut cur);
            }
        }
        let v = best.split_off(n);
        Origami {
            h: Permutation::from_images_unchecked(best),
            v: Permutation::from_images_unchecked(v),
        }
    }

    /// The origami of `M·X`, re-cut into unit squares.
    pub fn retile(&self, m: &IntegerMatrix) -> Result<Origami, OrigamiError> {
        let word = decompose_sl2z(m)?;
        let mut o = self.clone();
        for &letter in word.letters().iter().rev() {
            o = o.apply_letter(letter);
        }
        Ok(o)
    }
}

/// Signature `H(m₁, …, m_k)` with genus.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct StratumSignature {
    /// Zero orders, sorted in decreasing order.
    pub zero_orders: Vec<u32>,
    pub genus: u32,
}

impl StratumSignature {
    pub fn new(mut zero_orders: Vec<u32>) -> Result<Self, OrigamiError> {
        if zero_orders.contains(&0) {
            return Err(OrigamiError::Parse("zero orders must be positive".into()));
        }
        let total: u32 = zero_orders.iter().sum();
        if !total.is_multiple_of(2) {
            return Err(OrigamiError::Parse(format!(
                "zero orders must sum to an even number, got {total}"
            )));
        }
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(StratumSignature { zero_orders, genus: total / 2 + 1 })
    }

    /// `H(2)`.
    pub fn h2() -> Self {
        StratumSignature { zero_orders: vec![2], genus: 2 }
    }

    /// Sum of `(m_i + 1)`: the number of squares whose bottom-left corner is
    /// singular.
    pub fn singular_corner_count(&self) -> usize {
        self.zero_orders.iter().map(|&m| m as usize + 1).sum()
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero_orders.is_empty() {
            return write!(f, "H(0)");
        }
        let parts: Vec<String> = self.zero_orders.iter().map(u32::to_string).collect();
        write!(f, "H({})", parts.join(","))
    }
}

impl FromStr for StratumSignature {
    type Err = OrigamiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix('H')
            .and_then(|r| r.trim().strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| OrigamiError::Parse(format!("expected H(m1,...,mk), got {s:?}")))?;
        let orders = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| OrigamiError::Parse(format!("bad order {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        // H(0) is the torus
        let orders: Vec<u32> = orders.into_iter().filter(|&m| m != 0).collect();
        StratumSignature::new(orders)
    }
}

/// Zero orders from commutator cycles; genus from `1 + (n − V)/2`.
pub fn stratum_of(o: &Origami) -> StratumSignature {
    let cycles = o.commutator().cycles();
    let vertices = cycles.len();
    let mut zero_orders: Vec<u32> = cycles
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.len() as u32 - 1)
        .collect();
    zero_orders.sort_unstable_by(|a, b| b.cmp(a));
    let genus = 1 + (o.n() - vertices) / 2;
    StratumSignature { zero_orders, genus: genus as u32 }
}

pub fn canonical_form(o: &Origami) -> Origami {
    o.canonical_form()
}

pub fn retile(o: &Origami, m: &IntegerMatrix) -> Result<Origami, OrigamiError> {
    o.retile(m)
}

/// Text format `n; h=<cycles>; v=<cycles>`.
impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; h={}; v={}", self.n(), self.h, self.v)
    }
}

impl FromStr for Origami {
    type Err = OrigamiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(';').map(str::trim);
        let n: usize = parts
            .next()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| OrigamiError::Parse("missing square count".into()))?
            .parse()
            .map_err(|_| OrigamiError::Parse(format!("bad square count in {s:?}")))?;
        let (mut h, mut v) = (None, None);
        for part in parts.filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| OrigamiError::Parse(format!("expected key=value, got {part:?}")))?;
            let perm = Permutation::parse_cycles(n, value)?;
            match key.trim() {
                "h" => h = Some(perm),
                "v" => v = Some(perm),
                other => return Err(OrigamiError::Parse(format!("unknown key {other:?}"))),
            }
        }
        let h = h.ok_or_else(|| OrigamiError::Parse("missing h=".into()))?;
        let v = v.ok_or_else(|| OrigamiError::Parse("missing v=".into()))?;
        make_origami(h, v)
    }
}
