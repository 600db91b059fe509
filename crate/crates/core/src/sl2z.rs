//! Integer unimodular matrices and words in `S = [[0,-1],[1,0]]`, `T = [[1,1],[0,1]]`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::OrigamiError;

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IntegerMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntegerMatrix {
    pub const IDENTITY: IntegerMatrix = IntegerMatrix { a: 1, b: 0, c: 0, d: 1 };
    pub const T: IntegerMatrix = IntegerMatrix { a: 1, b: 1, c: 0, d: 1 };
    pub const T_INV: IntegerMatrix = IntegerMatrix { a: 1, b: -1, c: 0, d: 1 };
    pub const S: IntegerMatrix = IntegerMatrix { a: 0, b: -1, c: 1, d: 0 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntegerMatrix { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &IntegerMatrix) -> IntegerMatrix {
        IntegerMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> IntegerMatrix {
        IntegerMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn apply(&self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    pub fn t_pow(k: i64) -> IntegerMatrix {
        IntegerMatrix { a: 1, b: k, c: 0, d: 1 }
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }
}

/// A generator power: `S` or `T^k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    S,
    T(i64),
}

impl Letter {
    pub fn matrix(self) -> IntegerMatrix {
        match self {
            Letter::S => IntegerMatrix::S,
            Letter::T(k) => IntegerMatrix::t_pow(k),
        }
    }
}

/// A product of letters, read left to right as matrix multiplication.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> IntegerMatrix {
        self.0
            .iter()
            .fold(IntegerMatrix::IDENTITY, |acc, l| acc.mul(&l.matrix()))
    }

    /// Number of `S`, `T`, `T⁻¹` symbols when powers are expanded.
    pub fn expanded_len(&self) -> u64 {
        self.0
            .iter()
            .map(|l| match l {
                Letter::S => 1,
                Letter::T(k) => k.unsigned_abs(),
            })
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            let (sym, count) = match *l {
                Letter::S => ("S", 1),
                Letter::T(k) if k > 0 => ("T", k as u64),
                Letter::T(k) => ("T^-1", k.unsigned_abs()),
            };
            for _ in 0..count {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{sym}")?;
            }
        }
        Ok(())
    }
}

/// Writes the letters of `m` into `out` (cleared first). One `T`-power and
/// one `S` per continued-fraction step.
pub(crate) fn decompose_into(m: &IntegerMatrix, out: &mut Vec<Letter>) -> Result<(), OrigamiError> {
    let det = m.det();
    if det != 1 {
        return Err(OrigamiError::NotUnimodular(det));
    }
    out.clear();
    let IntegerMatrix { mut a, mut b, mut c, mut d } = *m;
    while c != 0 {
        // m = T^k · m1 with |a - k c| ≤ |c|/2, then m1 = S · m2
        let mut r = a.rem_euclid(c.abs());
        if 2 * r > c.abs() {
            r -= c.abs();
        }
        let k = (a - r) / c;
        if k != 0 {
            out.push(Letter::T(k));
        }
        let a1 = a - k * c;
        let b1 = b - k * d;
        out.push(Letter::S);
        (a, b, c, d) = (c, d, -a1, -b1);
    }
    if a == 1 {
        if b != 0 {
            out.push(Letter::T(b));
        }
    } else {
        // -T^{-b} = S² T^{-b}
        out.push(Letter::S);
        out.push(Letter::S);
        if b != 0 {
            out.push(Letter::T(-b));
        }
    }
    Ok(())
}

/// A word whose product is `m`.
pub fn decompose_sl2z(m: &IntegerMatrix) -> Result<Word, OrigamiError> {
    let mut letters = Vec::new();
    decompose_into(m, &mut letters)?;
    Ok(Word(letters))
}

/// `A` with `A·(p,q)ᵀ = (1,0)ᵀ` and `det A = 1`: rows `(a, b)` and `(−q, p)`
/// where `ap + bq = 1`, with `a` reduced into `(−|q|/2, |q|/2]`.
pub fn direction_normalizer(p: i64, q: i64) -> Result<IntegerMatrix, OrigamiError> {
    if p.gcd(&q) != 1 {
        return Err(OrigamiError::NotPrimitive(p, q));
    }
    let (a, b) = if q == 0 {
        (p, 0)
    } else {
        let modulus = q.abs();
        let ext = p.extended_gcd(&q);
        // ext.x * p + ext.y * q = gcd = ±1
        let mut a = (ext.x * ext.gcd).rem_euclid(modulus);
        if 2 * a > modulus {
            a -= modulus;
        }
        (a, (1 - a * p) / q)
    };
    let m = IntegerMatrix { a, b, c: -q, d: p };
    debug_assert_eq!(m.apply(p, q), (1, 0));
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizer_examples() {
        assert_eq!(direction_normalizer(1, 0).unwrap(), IntegerMatrix::IDENTITY);
        assert_eq!(direction_normalizer(0, 1).unwrap(), IntegerMatrix::new(0, 1, -1, 0));
        assert_eq!(direction_normalizer(2, 3).unwrap(), IntegerMatrix::new(-1, 1, -3, 2));
        assert_eq!(direction_normalizer(2, 4), Err(OrigamiError::NotPrimitive(2, 4)));
        assert!(direction_normalizer(0, 0).is_err());
    }

    #[test]
    fn decompose_examples() {
        assert!(decompose_sl2z(&IntegerMatrix::IDENTITY).unwrap().is_empty());
        let t3 = decompose_sl2z(&IntegerMatrix::t_pow(3)).unwrap();
        assert_eq!(t3.to_string(), "T T T");
        let m = IntegerMatrix::new(-1, 1, -3, 2);
        assert_eq!(decompose_sl2z(&m).unwrap().product(), m);
        let minus = IntegerMatrix::new(-1, 0, 0, -1);
        assert_eq!(decompose_sl2z(&minus).unwrap().product(), minus);
        assert_eq!(decompose_sl2z(&IntegerMatrix::new(1, 1, 1, 1)), Err(OrigamiError::NotUnimodular(0)));
    }

    proptest! {
        #[test]
        fn normalizer_maps_direction_to_horizontal(p in -500i64..500, q in -500i64..500) {
            prop_assume!(p.gcd(&q) == 1);
            let m = direction_normalizer(p, q).unwrap();
            prop_assert_eq!(m.det(), 1);
            prop_assert_eq!(m.apply(p, q), (1, 0));
        }

        #[test]
        fn word_product_round_trips(p in -300i64..300, q in -300i64..300, k in -50i64..50) {
            prop_assume!(p.gcd(&q) == 1);
            let m = direction_normalizer(p, q).unwrap().mul(&IntegerMatrix::t_pow(k));
            let w = decompose_sl2z(&m).unwrap();
            prop_assert_eq!(w.product(), m);
            // one S per continued-fraction step: logarithmic in the entries
            let s_count = w.letters().iter().filter(|l| matches!(l, Letter::S)).count();
            let bound = 2.0 * (m.max_abs_entry() as f64 + 1.0).log(1.5) + 4.0;
            prop_assert!((s_count as f64) <= bound);
        }
    }
}
