//! Permutations of `{1, ..., n}`.
//!
//! Points are 1-based in every constructor, accessor and text format and
//! 0-based in storage. Products apply the right factor first:
//! `p.compose(&q)` maps `i` to `p(q(i))`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("point {point} out of range 1..={degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("cycles overlap at point {0}")]
    Overlap(usize),
    #[error("cycle repeats entry {0}")]
    RepeatedEntry(usize),
    #[error("empty cycle")]
    EmptyCycle,
    #[error("cycle length {r} out of range 1..={n}")]
    CycleLength { r: usize, n: usize },
    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A single cycle `(i_1 i_2 ... i_k)`, stored rotated so the smallest entry
/// comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::EmptyCycle);
        }
        let mut seen = entries.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(PermError::RepeatedEntry(w[0]));
            }
        }
        if seen[0] == 0 {
            return Err(PermError::OutOfRange {
                point: 0,
                degree: *seen.last().unwrap(),
            });
        }
        let start = entries
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = entries[start..].to_vec();
        rotated.extend_from_slice(&entries[..start]);
        Ok(Cycle(rotated))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A bijection of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its one-line form `[σ(1), ..., σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(PermError::NotBijection(n));
            }
            zero_based.push(x - 1);
        }
        Self::from_images0(zero_based)
    }

    pub fn from_images0(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images0_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images0(images.clone()).is_ok());
        Permutation { images }
    }

    /// The transposition `(a b)` in `S_n`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self, PermError> {
        let c = Cycle::new(vec![a, b])?;
        Self::from_cycles(&[c], degree)
    }

    /// A uniformly random permutation of the given degree.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point. Panics if the point is out of range.
    pub fn apply(&self, point: usize) -> usize {
        assert!(point >= 1 && point <= self.degree(), "point out of range");
        self.images[point - 1] + 1
    }

    pub fn image0(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn as_slice0(&self) -> &[usize] {
        &self.images
    }

    /// One-line form, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// `g p g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation, PermError> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// All cycles including fixed points, each rotated to start at its
    /// smallest point, listed by smallest point. 0-based.
    fn orbits0(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Disjoint cycle decomposition with fixed points omitted, sorted by
    /// smallest entry. The identity decomposes into the empty list.
    pub fn cycle_decomposition(&self) -> Vec<Cycle> {
        self.orbits0()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| Cycle(c.into_iter().map(|x| x + 1).collect()))
            .collect()
    }

    /// Product of pairwise disjoint cycles as a permutation of `degree` points.
    pub fn from_cycles(cycles: &[Cycle], degree: usize) -> Result<Permutation, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            for &x in c.entries() {
                if x == 0 || x > degree {
                    return Err(PermError::OutOfRange { point: x, degree });
                }
                if used[x - 1] {
                    return Err(PermError::Overlap(x));
                }
                used[x - 1] = true;
            }
            let e = c.entries();
            for k in 0..e.len() {
                images[e[k] - 1] = e[(k + 1) % e.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.orbits0().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> BigUint {
        self.orbits0()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut mult = vec![0; n];
        for c in self.orbits0() {
            mult[c.len() - 1] += 1;
        }
        CycleType {
            degree: n,
            multiplicities: mult,
        }
    }

    /// Parses cycle notation `(1 2 7)(3 5 4)` or one-line notation
    /// `[2,7,5,3,4,6,1]`. For cycle notation the degree defaults to the
    /// largest point mentioned.
    pub fn parse(s: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or(PermError::Parse {
                    pos: offset + t.len(),
                    msg: "expected closing ']'".into(),
                })?;
            let mut images = Vec::new();
            let mut pos = offset + 1;
            for tok in inner.split(',') {
                let v = tok.trim();
                if v.is_empty() && inner.trim().is_empty() {
                    break;
                }
                let x: usize = v.parse().map_err(|_| PermError::Parse {
                    pos,
                    msg: format!("expected a positive integer, found {v:?}"),
                })?;
                images.push(x);
                pos += tok.len() + 1;
            }
            let p = Permutation::from_images(&images)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(PermError::DegreeMismatch(d, p.degree()));
                }
            }
            return Ok(p);
        }
        if t == "id" || t == "e" {
            return Ok(Permutation::identity(degree.unwrap_or(1)));
        }
        let mut cycles = Vec::new();
        let bytes = t.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' => i += 1,
                b'(' => {
                    let close = t[i..].find(')').ok_or(PermError::Parse {
                        pos: offset + i,
                        msg: "unclosed '('".into(),
                    })? + i;
                    let body = &t[i + 1..close];
                    let mut entries = Vec::new();
                    for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                        if tok.is_empty() {
                            continue;
                        }
                        let x: usize = tok.parse().map_err(|_| PermError::Parse {
                            pos: offset + i,
                            msg: format!("expected a positive integer, found {tok:?}"),
                        })?;
                        entries.push(x);
                    }
                    if !entries.is_empty() {
                        cycles.push(Cycle::new(entries)?);
                    }
                    i = close + 1;
                }
                c => {
                    return Err(PermError::Parse {
                        pos: offset + i,
                        msg: format!("unexpected character {:?}", c as char),
                    })
                }
            }
        }
        let max = cycles
            .iter()
            .flat_map(|c| c.entries().iter().copied())
            .max()
            .unwrap_or(1);
        let n = degree.unwrap_or(max);
        Permutation::from_cycles(&cycles, n)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] to get an error.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycle_decomposition();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S_{}", self.degree())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, None)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&v).map_err(serde::de::Error::custom)
    }
}

/// Cycle pattern `1^{e_1} 2^{e_2} ... n^{e_n}` of a permutation of degree n,
/// fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    degree: usize,
    multiplicities: Vec<usize>,
}

impl CycleType {
    /// `multiplicities[i]` counts cycles of length `i + 1`.
    pub fn new(degree: usize, multiplicities: Vec<usize>) -> Result<Self, PermError> {
        if multiplicities.len() > degree && multiplicities[degree..].iter().any(|&e| e > 0) {
            return Err(PermError::InvalidCycleType(
                "cycle longer than the degree".into(),
            ));
        }
        let total: usize = multiplicities
            .iter()
            .enumerate()
            .map(|(i, e)| (i + 1) * e)
            .sum();
        if total != degree {
            return Err(PermError::InvalidCycleType(format!(
                "lengths sum to {total}, expected {degree}"
            )));
        }
        let mut m = multiplicities;
        m.resize(degree, 0);
        Ok(CycleType {
            degree,
            multiplicities: m,
        })
    }

    /// Cycle type from a list of cycle lengths; missing points become fixed
    /// points.
    pub fn from_lengths(degree: usize, lengths: &[usize]) -> Result<Self, PermError> {
        let mut m = vec![0; degree.max(1)];
        let mut used = 0;
        for &l in lengths {
            if l == 0 || l > degree {
                return Err(PermError::CycleLength { r: l, n: degree });
            }
            m[l - 1] += 1;
            used += l;
        }
        if used > degree {
            return Err(PermError::InvalidCycleType(format!(
                "lengths sum to {used}, exceeding {degree}"
            )));
        }
        if degree > 0 {
            m[0] += degree - used;
        }
        m.truncate(degree);
        CycleType::new(degree, m)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of cycles of the given length.
    pub fn multiplicity(&self, length: usize) -> usize {
        if length == 0 || length > self.degree {
            0
        } else {
            self.multiplicities[length - 1]
        }
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Every cycle type of the given degree (the partitions of n).
    pub fn all(degree: usize) -> Vec<CycleType> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=max.min(rem)).rev() {
                cur.push(part);
                rec(rem - part, part, cur, out);
                cur.pop();
            }
        }
        let mut parts = Vec::new();
        rec(degree, degree, &mut Vec::new(), &mut parts);
        parts
            .into_iter()
            .map(|p| CycleType::from_lengths(degree, &p).expect("partition is valid"))
            .collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.multiplicities.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}^{}", i + 1, e)?;
        }
        if first {
            write!(f, "1^0")?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of permutations in `S_n` with the given cycle type:
/// `n! / ∏ (e_i! · i^{e_i})`.
pub fn conjugacy_class_size(ct: &CycleType) -> BigUint {
    let mut denom = BigUint::one();
    for (i, &e) in ct.multiplicities.iter().enumerate() {
        denom *= factorial(e) * BigUint::from(i + 1).pow(e as u32);
    }
    factorial(ct.degree) / denom
}

/// Number of r-cycles in `S_n`: `(r-1)! · C(n, r)`.
pub fn count_r_cycles(n: usize, r: usize) -> Result<BigUint, PermError> {
    if r == 0 || r > n {
        return Err(PermError::CycleLength { r, n });
    }
    Ok(factorial(n) / (factorial(n - r) * BigUint::from(r)))
}

/// Finds `θ` with `θ p θ⁻¹ = q`, which exists exactly when `p` and `q` have
/// the same cycle type.
///
/// Both permutations are split into cycles with fixed points included and
/// sorted by (length, smallest point); `θ` sends the k-th entry of each
/// cycle of `p` to the k-th entry of the matching cycle of `q`.
pub fn find_conjugator(p: &Permutation, q: &Permutation) -> Result<Option<Permutation>, PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), q.degree()));
    }
    if p.cycle_type() != q.cycle_type() {
        return Ok(None);
    }
    let sorted = |perm: &Permutation| {
        let mut cs = perm.orbits0();
        cs.sort_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));
        cs
    };
    let (cp, cq) = (sorted(p), sorted(q));
    let mut theta = vec![0; p.degree()];
    for (a, b) in cp.iter().zip(&cq) {
        for (&x, &y) in a.iter().zip(b) {
            theta[x] = y;
        }
    }
    Ok(Some(Permutation::from_images0_unchecked(theta)))
}
