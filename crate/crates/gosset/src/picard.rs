//! The Picard lattice of a del Pezzo surface S_r.
//!
//! `Pic S_r = Zh + Ze_1 + ... + Ze_r` carries the intersection pairing of
//! signature (1, -r): `h.h = 1`, `h.e_i = 0`, `e_i.e_j = -delta_ij`. The
//! canonical class is `K = -3h + e_1 + ... + e_r` with `K.K = 9 - r`, and
//! every root `d` (`d.d = -2`, `d.K = 0`) acts by the reflection
//! `D -> D + (D.d) d`.
//!
//! All coefficients stay comfortably inside `i64`; debug builds additionally
//! trap arithmetic overflow.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MIN_RANK: usize = 3;
pub const MAX_RANK: usize = 8;

/// An exact divisor class, stored as coefficients in the basis
/// `(h, e_1, ..., e_r)`. Entry 0 is the coefficient of `h`; a class such as
/// `2h - e_1 - e_2` in S_8 is `[2, -1, -1, 0, 0, 0, 0, 0, 0]`.
///
/// Ordering is lexicographic on the coefficient vector, which is the
/// canonical order used by every catalog.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    rank: u8,
    coeffs: [i64; MAX_RANK + 1],
}

impl DivisorClass {
    pub fn new(rank: usize, coeffs: &[i64]) -> Result<Self> {
        check_rank(rank)?;
        if coeffs.len() != rank + 1 {
            return Err(Error::Domain(format!(
                "coefficient vector has length {}, expected {} for rank {}",
                coeffs.len(),
                rank + 1,
                rank
            )));
        }
        let mut c = [0i64; MAX_RANK + 1];
        c[..=rank].copy_from_slice(coeffs);
        Ok(Self {
            rank: rank as u8,
            coeffs: c,
        })
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            rank: rank as u8,
            coeffs: [0; MAX_RANK + 1],
        }
    }

    /// The hyperplane class `h`.
    pub fn h(rank: usize) -> Self {
        let mut d = Self::zero(rank);
        d.coeffs[0] = 1;
        d
    }

    /// The exceptional class `e_i`, 1-based.
    pub fn e(rank: usize, i: usize) -> Self {
        assert!(1 <= i && i <= rank, "e_{i} does not exist in rank {rank}");
        let mut d = Self::zero(rank);
        d.coeffs[i] = 1;
        d
    }

    /// `K_{S_r} = -3h + e_1 + ... + e_r`.
    pub fn canonical(rank: usize) -> Self {
        let mut d = Self::zero(rank);
        d.coeffs[0] = -3;
        for i in 1..=rank {
            d.coeffs[i] = 1;
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..=self.rank as usize]
    }

    /// Intersection pairing `a_0 b_0 - sum_{i>=1} a_i b_i`.
    pub fn pairing(&self, other: &Self) -> Result<i64> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.dot(other))
    }

    /// Same pairing for callers that already know the ranks agree
    /// (catalog-internal hot paths).
    pub fn dot(&self, other: &Self) -> i64 {
        debug_assert_eq!(self.rank, other.rank);
        let mut acc = self.coeffs[0] * other.coeffs[0];
        for i in 1..=self.rank as usize {
            acc -= self.coeffs[i] * other.coeffs[i];
        }
        acc
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// The grading `b = -D.K` used throughout: lines have degree 1, rulings 2,
    /// exceptional systems 3.
    pub fn anticanonical_degree(&self) -> i64 {
        -self.dot(&Self::canonical(self.rank()))
    }

    pub fn is_line(&self) -> bool {
        self.self_intersection() == -1 && self.anticanonical_degree() == 1
    }

    pub fn is_root(&self) -> bool {
        self.self_intersection() == -2 && self.anticanonical_degree() == 0
    }

    pub fn is_ruling(&self) -> bool {
        self.self_intersection() == 0 && self.anticanonical_degree() == 2
    }

    pub fn is_exceptional_system(&self) -> bool {
        self.self_intersection() == 1 && self.anticanonical_degree() == 3
    }

    /// Reflection `sigma_d(D) = D + (D.d) d` in the root `d`.
    pub fn reflect(&self, d: &Self) -> Result<Self> {
        if self.rank != d.rank {
            return Err(Error::RankMismatch(self.rank(), d.rank()));
        }
        if !d.is_root() {
            return Err(Error::NotARoot(Box::new(*d)));
        }
        Ok(self.reflect_unchecked(d))
    }

    pub(crate) fn reflect_unchecked(&self, d: &Self) -> Self {
        let m = self.dot(d);
        let mut out = *self;
        for i in 0..=self.rank as usize {
            out.coeffs[i] += m * d.coeffs[i];
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = *self;
        for c in &mut out.coeffs {
            *c *= k;
        }
        out
    }

    /// Exact division by `k`; `None` unless every coefficient is divisible.
    /// Divisibility itself is a theorem in several places (centers of
    /// cornered simplexes, skew-edge inverses), so callers turn a `None`
    /// into `Error::Invariant`.
    pub fn divided_exact(&self, k: i64) -> Option<Self> {
        let mut out = *self;
        for c in &mut out.coeffs {
            if *c % k != 0 {
                return None;
            }
            *c /= k;
        }
        Some(out)
    }
}

impl std::ops::Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut out = self;
        for i in 0..=self.rank as usize {
            out.coeffs[i] += rhs.coeffs[i];
        }
        out
    }
}

impl std::ops::Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut out = self;
        for i in 0..=self.rank as usize {
            out.coeffs[i] -= rhs.coeffs[i];
        }
        out
    }
}

impl std::ops::Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        self.scaled(-1)
    }
}

impl std::iter::Sum for DivisorClass {
    fn sum<I: Iterator<Item = Self>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of no divisor classes");
        iter.fold(first, |a, b| a + b)
    }
}

impl std::fmt::Display for DivisorClass {
    /// Symbolic form, e.g. `2h-e1-e3`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        let mut term = |f: &mut std::fmt::Formatter<'_>, c: i64, sym: &str| {
            if c == 0 {
                return Ok(());
            }
            if c > 0 && wrote {
                write!(f, "+")?;
            }
            match c {
                1 => write!(f, "{sym}")?,
                -1 => write!(f, "-{sym}")?,
                _ => write!(f, "{c}{sym}")?,
            }
            wrote = true;
            Ok(())
        };
        term(f, self.coeffs[0], "h")?;
        for i in 1..=self.rank as usize {
            term(f, self.coeffs[i], &format!("e{i}"))?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

// JSON encoding is `{"r":8,"coeffs":[a0,a1,...,a8]}` with exactly r+1 entries.
impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DivisorClass", 2)?;
        st.serialize_field("r", &self.rank)?;
        st.serialize_field("coeffs", &self.coeffs())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            r: usize,
            coeffs: Vec<i64>,
        }
        let raw = Raw::deserialize(d)?;
        DivisorClass::new(raw.r, &raw.coeffs).map_err(D::Error::custom)
    }
}

/// The ambient surface: rank, canonical class, simple roots, degree.
///
/// Simple roots are `d_0 = h - e_1 - e_2 - e_3` and `d_i = e_i - e_{i+1}`.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    rank: usize,
    canonical: DivisorClass,
    simple_roots: Vec<DivisorClass>,
    degree: i64,
}

impl SurfaceModel {
    pub fn new(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        let mut simple_roots = Vec::with_capacity(rank);
        let d0 = DivisorClass::h(rank)
            - DivisorClass::e(rank, 1)
            - DivisorClass::e(rank, 2)
            - DivisorClass::e(rank, 3);
        simple_roots.push(d0);
        for i in 1..rank {
            simple_roots.push(DivisorClass::e(rank, i) - DivisorClass::e(rank, i + 1));
        }
        Ok(Self {
            rank,
            canonical: DivisorClass::canonical(rank),
            simple_roots,
            degree: 9 - rank as i64,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn simple_roots(&self) -> &[DivisorClass] {
        &self.simple_roots
    }

    /// `K^2 = 9 - r`, the degree of the surface.
    pub fn degree(&self) -> i64 {
        self.degree
    }
}

pub fn check_rank(rank: usize) -> Result<()> {
    if (MIN_RANK..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange(rank))
    }
}
