use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::color::Color;
use super::PartitionError;

/// A colored integer. Field order gives the symbol order: value first, then
/// color rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPart {
    pub value: u32,
    pub color: Color,
}

impl ColoredPart {
    pub fn new(color: Color, value: u32) -> Self {
        ColoredPart { value, color }
    }
}

impl fmt::Display for ColoredPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.color, self.value)
    }
}

impl FromStr for ColoredPart {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (c, v) = s
            .split_once('_')
            .ok_or_else(|| PartitionError::Parse(format!("expected Color_value, got {:?}", s)))?;
        let value = v
            .parse::<u32>()
            .map_err(|_| PartitionError::Parse(format!("bad value in {:?}", s)))?;
        Ok(ColoredPart::new(Color::from_name(c)?, value))
    }
}

/// Multiplicities per color, indexed by color rank.
pub type ColorCounts = [u32; 11];

/// A partition into colored integers, stored largest-first in symbol order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColoredPartition {
    parts: Vec<ColoredPart>,
}

impl ColoredPartition {
    pub fn new(mut parts: Vec<ColoredPart>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        ColoredPartition { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parts, largest first.
    pub fn parts(&self) -> &[ColoredPart] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the values.
    pub fn n(&self) -> u64 {
        self.parts.iter().map(|p| p.value as u64).sum()
    }

    pub fn nu(&self, c: Color) -> u32 {
        self.parts.iter().filter(|p| p.color == c).count() as u32
    }

    pub fn counts(&self) -> ColorCounts {
        counts_of(&self.parts)
    }

    /// Number of non-quaternary parts.
    pub fn tau(&self) -> u32 {
        self.parts.iter().filter(|p| !p.color.is_quaternary()).count() as u32
    }

    /// Least part in symbol order.
    pub fn least(&self) -> Option<ColoredPart> {
        self.parts.last().copied()
    }

    pub fn solution(&self) -> ConstraintSolution {
        ConstraintSolution::from_counts(&self.counts())
    }
}

pub(crate) fn counts_of(parts: &[ColoredPart]) -> ColorCounts {
    let mut out = [0u32; 11];
    for p in parts {
        out[p.color.rank()] += 1;
    }
    out
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl FromStr for ColoredPartition {
    type Err = PartitionError;

    /// Accepts parts in any order, separated by `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "(empty)" {
            return Ok(Self::empty());
        }
        let parts = s.split('+').map(str::parse).collect::<Result<Vec<ColoredPart>, _>>()?;
        Ok(Self::new(parts))
    }
}

/// Numbers of parts per primary color, `(i, j)`, `(i, j, k)` or `(i, j, k, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartProfile {
    counts: [u32; 4],
    primaries: usize,
}

impl PartProfile {
    pub fn new(counts: &[u32]) -> Self {
        assert!((2..=4).contains(&counts.len()), "a profile has 2 to 4 entries");
        let mut c = [0; 4];
        c[..counts.len()].copy_from_slice(counts);
        PartProfile {
            counts: c,
            primaries: counts.len(),
        }
    }

    pub fn primaries(&self) -> usize {
        self.primaries
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts[..self.primaries]
    }

    /// Entry for primary `p`; zero beyond the profile's length.
    pub fn get(&self, p: usize) -> u32 {
        self.counts[p]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Same counts viewed with `primaries` colors (extra entries zero).
    pub fn widen(&self, primaries: usize) -> Self {
        assert!(primaries >= self.primaries && primaries <= 4);
        PartProfile {
            counts: self.counts,
            primaries,
        }
    }

    /// All profiles with `primaries` entries and total at most `max_total`,
    /// in lexicographic order.
    pub fn all_up_to(primaries: usize, max_total: u32) -> Vec<PartProfile> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; primaries];
        fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<PartProfile>) {
            if pos == cur.len() {
                out.push(PartProfile::new(cur));
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(cur, pos + 1, left - v, out);
            }
        }
        rec(&mut cur, 0, max_total, &mut out);
        out
    }
}

impl fmt::Display for PartProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.counts().iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for PartProfile {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(format!("bad profile {:?}", s)))?;
        if !(2..=4).contains(&v.len()) {
            return Err(PartitionError::Parse(format!("profile needs 2 to 4 entries, got {:?}", s)));
        }
        Ok(PartProfile::new(&v))
    }
}

/// Frequencies of the eleven colors in a Type-1 partition; the summation
/// index of the key identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConstraintSolution {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub ab: u32,
    pub ac: u32,
    pub ad: u32,
    pub bc: u32,
    pub bd: u32,
    pub cd: u32,
    pub q: u32,
}

impl ConstraintSolution {
    pub fn from_counts(n: &ColorCounts) -> Self {
        let g = |c: Color| n[c.rank()];
        ConstraintSolution {
            a: g(Color::A),
            b: g(Color::B),
            c: g(Color::C),
            d: g(Color::D),
            ab: g(Color::AB),
            ac: g(Color::AC),
            ad: g(Color::AD),
            bc: g(Color::BC),
            bd: g(Color::BD),
            cd: g(Color::CD),
            q: g(Color::ABCD),
        }
    }

    pub fn counts(&self) -> ColorCounts {
        let mut n = [0u32; 11];
        for (c, v) in [
            (Color::A, self.a),
            (Color::B, self.b),
            (Color::C, self.c),
            (Color::D, self.d),
            (Color::AB, self.ab),
            (Color::AC, self.ac),
            (Color::AD, self.ad),
            (Color::BC, self.bc),
            (Color::BD, self.bd),
            (Color::CD, self.cd),
            (Color::ABCD, self.q),
        ] {
            n[c.rank()] = v;
        }
        n
    }

    /// Number of non-quaternary parts.
    pub fn tau(&self) -> u32 {
        self.a + self.b + self.c + self.d + self.ab + self.ac + self.ad + self.bc + self.bd + self.cd
    }

    pub fn parts(&self) -> u32 {
        self.tau() + self.q
    }

    /// `(i, j, k, l)` implied by the frequencies.
    pub fn primary_totals(&self) -> [u32; 4] {
        [
            self.a + self.ab + self.ac + self.ad + self.q,
            self.b + self.ab + self.bc + self.bd + self.q,
            self.c + self.ac + self.bc + self.cd + self.q,
            self.d + self.ad + self.bd + self.cd + self.q,
        ]
    }

    pub fn profile(&self, primaries: usize) -> PartProfile {
        PartProfile::new(&self.primary_totals()[..primaries])
    }

    /// Smallest number of primaries whose colors cover every nonzero entry.
    pub fn min_primaries(&self) -> usize {
        if self.q > 0 || self.d > 0 || self.ad > 0 || self.bd > 0 || self.cd > 0 {
            4
        } else if self.c > 0 || self.ac > 0 || self.bc > 0 {
            3
        } else {
            2
        }
    }

    /// Every frequency vector meeting the profile's constraints, using only
    /// the colors of the matching scheme.
    pub fn solutions_for(profile: &PartProfile) -> Vec<ConstraintSolution> {
        let [i, j, k, l] = profile.counts;
        let four = profile.primaries == 4;
        let three = profile.primaries >= 3;
        let mut out = Vec::new();
        let qmax = if four { i.min(j).min(k).min(l) } else { 0 };
        for q in 0..=qmax {
            let (i, j, k, l) = (i - q, j - q, k - q, l - q);
            for ab in 0..=i.min(j) {
                for ac in 0..=if three { (i - ab).min(k) } else { 0 } {
                    for ad in 0..=if four { (i - ab - ac).min(l) } else { 0 } {
                        for bc in 0..=if three { (j - ab).min(k - ac) } else { 0 } {
                            for bd in 0..=if four { (j - ab - bc).min(l - ad) } else { 0 } {
                                for cd in 0..=if four { (k - ac - bc).min(l - ad - bd) } else { 0 } {
                                    out.push(ConstraintSolution {
                                        a: i - ab - ac - ad,
                                        b: j - ab - bc - bd,
                                        c: k - ac - bc - cd,
                                        d: l - ad - bd - cd,
                                        ab,
                                        ac,
                                        ad,
                                        bc,
                                        bd,
                                        cd,
                                        q,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ConstraintSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} b={} c={} d={} ab={} ac={} ad={} bc={} bd={} cd={} Q={}",
            self.a, self.b, self.c, self.d, self.ab, self.ac, self.ad, self.bc, self.bd, self.cd, self.q
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_round_trip() {
        let p: ColoredPartition = "AB_2+CD_4".parse().unwrap();
        assert_eq!(p.to_string(), "CD_4+AB_2");
        assert_eq!(p.to_string().parse::<ColoredPartition>().unwrap(), p);
        assert_eq!(ColoredPartition::empty().to_string(), "(empty)");
        assert!("ABC_3".parse::<ColoredPartition>().is_err());
        assert!("A3".parse::<ColoredPartition>().is_err());
    }

    #[test]
    fn statistics() {
        let p: ColoredPartition = "ABCD_6+A_6".parse().unwrap();
        assert_eq!(p.to_string(), "A_6+ABCD_6");
        assert_eq!(p.n(), 12);
        assert_eq!(p.tau(), 1);
        assert_eq!(p.least(), Some(ColoredPart::new(Color::ABCD, 6)));
        let s = p.solution();
        assert_eq!((s.a, s.q), (1, 1));
        assert_eq!(s.primary_totals(), [2, 1, 1, 1]);
    }

    #[test]
    fn solutions_satisfy_constraints() {
        for prof in PartProfile::all_up_to(4, 6) {
            let sols = ConstraintSolution::solutions_for(&prof);
            assert!(!sols.is_empty());
            for s in &sols {
                assert_eq!(&s.primary_totals()[..], prof.counts());
            }
        }
        // (1,1): a=b=1 or ab=1
        assert_eq!(ConstraintSolution::solutions_for(&PartProfile::new(&[1, 1])).len(), 2);
        // (1,1,1,1): Q=1, or a pairing of secondaries, or partial pairings
        assert_eq!(ConstraintSolution::solutions_for(&PartProfile::new(&[1, 1, 1, 1])).len(), 11);
    }

    #[test]
    fn profile_parsing() {
        let p: PartProfile = "1,1,0".parse().unwrap();
        assert_eq!(p.counts(), &[1, 1, 0]);
        assert_eq!(p.to_string(), "1,1,0");
        assert!("1".parse::<PartProfile>().is_err());
        assert_eq!(PartProfile::all_up_to(2, 2).len(), 6);
    }
}
