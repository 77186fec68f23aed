use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 8;

/// Permutation of `0..n` for `n <= 8`. Products act on the right:
/// `(p * q)(i) = q(p(i))`, matching the usual GAP convention.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_DEGREE],
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE, "degree above {MAX_DEGREE}");
        let mut img = [0u8; MAX_DEGREE];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        Perm { n: n as u8, img }
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::InvalidSpec(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut p = Perm::identity(n);
        let mut seen = [false; MAX_DEGREE];
        for (i, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::InvalidSpec(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
            p.img[i] = v as u8;
        }
        Ok(p)
    }

    /// From 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n || used[a] {
                    return Err(Error::InvalidSpec(format!("bad cycle {c:?} on {n} points")));
                }
                used[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`; `()` is the
    /// identity.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::Parse(format!("bad permutation {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let inner = &body[..close];
            if !inner.is_empty() {
                let pts: Vec<usize> = inner
                    .split(',')
                    .map(|x| x.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(bad))
                    .collect::<Result<_>>()?;
                cycles.push(pts);
            }
            rest = &body[close + 1..];
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.img[..self.n as usize]
    }

    #[inline]
    pub fn mul(&self, q: &Perm) -> Perm {
        let mut img = self.img;
        for i in 0..self.n as usize {
            img[i] = q.img[self.img[i] as usize];
        }
        Perm { n: self.n, img }
    }

    #[inline]
    pub fn inverse(&self) -> Perm {
        let mut img = self.img;
        for i in 0..self.n as usize {
            img[self.img[i] as usize] = i as u8;
        }
        Perm { n: self.n, img }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut r = Perm::identity(self.n as usize);
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    /// `g^-1 * self * g`.
    #[inline]
    pub fn conj(&self, g: &Perm) -> Perm {
        // i -> g(self(g^-1(i)))
        let mut img = self.img;
        for i in 0..self.n as usize {
            img[g.img[i] as usize] = g.img[self.img[i] as usize];
        }
        Perm { n: self.n, img }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n as usize;
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.apply(s);
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(|c| c.len()).collect())
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Lehmer-code rank in `0..n!`.
    pub fn rank(&self) -> usize {
        let n = self.n as usize;
        let mut r = 0;
        let mut used: u16 = 0;
        for i in 0..n {
            let v = self.img[i] as usize;
            let smaller_unused = (used & ((1u16 << v) - 1)).count_ones() as usize;
            let digit = v - smaller_unused;
            r = r * (n - i) + digit;
            used |= 1 << v;
        }
        r
    }

    pub fn unrank(n: usize, mut r: usize) -> Perm {
        let mut digits = [0usize; MAX_DEGREE];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut avail: Vec<u8> = (0..n as u8).collect();
        let mut p = Perm::identity(n);
        for i in 0..n {
            p.img[i] = avail.remove(digits[i]);
        }
        p
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cyc.is_empty() {
            return write!(f, "()");
        }
        for c in cyc {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// Cycle lengths sorted descending, fixed points included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    /// Pads with fixed points up to degree `n`.
    pub fn with_degree(parts: &[usize], n: usize) -> Result<Self> {
        let s: usize = parts.iter().sum();
        if s > n {
            return Err(Error::InvalidSpec(format!("cycle type {parts:?} exceeds degree {n}")));
        }
        let mut v = parts.to_vec();
        v.extend(std::iter::repeat_n(1, n - s));
        Ok(Self::new(v))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().map(|c| c - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> usize {
        self.0.iter().fold(1, |a, &c| num_integer::lcm(a, c))
    }

    /// The standard element `(1..a)(a+1..a+b)...` of this type.
    pub fn representative(&self) -> Perm {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in &self.0 {
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Perm::from_images(&images).expect("valid cycle layout")
    }

    /// Type of the `m`-th power of an element of this type.
    pub fn power(&self, m: usize) -> CycleType {
        let mut parts = Vec::new();
        for &c in &self.0 {
            let g = if m == 0 { c } else { num_integer::gcd(c, m) };
            parts.extend(std::iter::repeat_n(c / g, g));
        }
        CycleType::new(parts)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_products() {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(2,3)", 3).unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
        assert_eq!(a.mul(&b).inverse().to_string(), "(1,2,3)");
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = Perm::parse("(1,2,3)", 4).unwrap();
        let g = Perm::parse("(3,4)", 4).unwrap();
        assert_eq!(x.conj(&g), g.inverse().mul(&x).mul(&g));
        assert_eq!(x.conj(&g).to_string(), "(1,2,4)");
    }

    #[test]
    fn rank_is_a_bijection() {
        let n = 5;
        let mut seen = vec![false; factorial(n)];
        for r in 0..factorial(n) {
            let p = Perm::unrank(n, r);
            assert_eq!(p.rank(), r);
            seen[r] = true;
        }
        assert!(seen.into_iter().all(|b| b));
        assert_eq!(Perm::identity(8).rank(), 0);
    }

    #[test]
    fn cycle_types_and_parity() {
        let p = Perm::parse("(1,2,3,4)(5,6)", 8).unwrap();
        assert_eq!(p.cycle_type().to_string(), "[4,2,1,1]");
        assert!(p.is_even());
        assert_eq!(p.order(), 4);
        assert_eq!(p.cycle_type().power(2).to_string(), "[2,2,1,1,1,1]");
        assert_eq!(CycleType::with_degree(&[3, 5], 8).unwrap().representative().cycle_type().parts(), &[5, 3]);
        assert!(Perm::parse("(1,1)", 3).is_err());
        assert!(Perm::parse("(1,9)", 8).is_err());
    }
}
