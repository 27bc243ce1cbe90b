//! Type-1 gap conditions, enumeration and the two sides of the colored
//! partition theorems.

use std::collections::HashMap;

use super::color::{Color, ColorScheme};
use super::partition::{counts_of, ColorCounts, ColoredPart, ColoredPartition, ConstraintSolution, PartProfile};
use super::PartitionError;

/// May `upper` directly follow `lower` in the non-quaternary chain?
/// Values must differ; a difference of exactly 1 needs the same primary
/// color or a higher-order color on the larger part.
fn adjacent_ok(lower: ColoredPart, upper: ColoredPart) -> bool {
    if upper.value <= lower.value {
        return false;
    }
    if upper.value - lower.value >= 2 {
        return true;
    }
    (upper.color == lower.color && upper.color.is_primary()) || upper.color > lower.color
}

/// Lower bound on the least quaternary part.
fn quaternary_floor(tau: u32, has_a1: bool) -> u32 {
    (if has_a1 { 3 } else { 4 }) + 2 * tau
}

pub fn validate_type1(p: &ColoredPartition, scheme: &ColorScheme) -> Result<bool, PartitionError> {
    for part in p.parts() {
        if !scheme.contains(part.color) {
            return Err(PartitionError::UnknownColor(part.color.name().to_string()));
        }
        if part.value < part.color.min_value() {
            return Ok(false);
        }
    }
    let mut chain: Vec<ColoredPart> = p.parts().iter().copied().filter(|x| !x.color.is_quaternary()).collect();
    let mut quat: Vec<u32> = p
        .parts()
        .iter()
        .filter(|x| x.color.is_quaternary())
        .map(|x| x.value)
        .collect();
    chain.reverse();
    quat.reverse();
    if !chain.windows(2).all(|w| adjacent_ok(w[0], w[1])) {
        return Ok(false);
    }
    if !quat.windows(2).all(|w| w[1] >= w[0] + 4) {
        return Ok(false);
    }
    if let Some(&least) = quat.first() {
        let has_a1 = chain.first() == Some(&ColoredPart::new(Color::A, 1));
        if least < quaternary_floor(chain.len() as u32, has_a1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounds for [`walk_type1`].
#[derive(Clone, Copy, Debug)]
pub struct WalkLimits {
    /// Largest total cost visited.
    pub max_cost: u64,
    /// Largest number of parts visited.
    pub max_parts: usize,
}

impl WalkLimits {
    pub fn weight(max_cost: u64) -> Self {
        WalkLimits {
            max_cost,
            max_parts: usize::MAX,
        }
    }
}

struct Walker<'a, C, V> {
    chain_colors: Vec<Color>,
    quaternary: bool,
    cost: &'a C,
    limits: WalkLimits,
    visit: &'a mut V,
    stack: Vec<ColoredPart>,
}

impl<C, V> Walker<'_, C, V>
where
    C: Fn(ColoredPart) -> u64,
    V: FnMut(&[ColoredPart], u64),
{
    fn chain(&mut self, spent: u64) {
        let tau = self.stack.len() as u32;
        if self.quaternary {
            let has_a1 = self.stack.first() == Some(&ColoredPart::new(Color::A, 1));
            self.quat(quaternary_floor(tau, has_a1).max(4), spent);
        } else {
            (self.visit)(&self.stack, spent);
        }
        if self.stack.len() >= self.limits.max_parts {
            return;
        }
        let last = self.stack.last().copied();
        let start = last.map_or(1, |p| p.value + 1);
        for v in start.. {
            for i in 0..self.chain_colors.len() {
                let c = self.chain_colors[i];
                if v < c.min_value() {
                    continue;
                }
                let part = ColoredPart::new(c, v);
                let w = (self.cost)(part);
                // costs never decrease along the symbol order
                if spent + w > self.limits.max_cost {
                    return;
                }
                if let Some(l) = last {
                    if !adjacent_ok(l, part) {
                        continue;
                    }
                }
                self.stack.push(part);
                self.chain(spent + w);
                self.stack.pop();
            }
        }
    }

    fn quat(&mut self, min_v: u32, spent: u64) {
        (self.visit)(&self.stack, spent);
        if self.stack.len() >= self.limits.max_parts {
            return;
        }
        for v in min_v.. {
            let part = ColoredPart::new(Color::ABCD, v);
            let w = (self.cost)(part);
            if spent + w > self.limits.max_cost {
                break;
            }
            self.stack.push(part);
            self.quat(v + 4, spent + w);
            self.stack.pop();
        }
    }
}

/// Visits every Type-1 partition whose total cost is within the limits.
///
/// `cost` must be positive and nondecreasing along the symbol order within
/// each of the two streams (plain values and every dilation qualify). The visitor gets the
/// non-quaternary parts in ascending order followed by the quaternary parts
/// in ascending order, and the total cost.
pub fn walk_type1<C, V>(scheme: &ColorScheme, cost: &C, limits: WalkLimits, visit: &mut V)
where
    C: Fn(ColoredPart) -> u64,
    V: FnMut(&[ColoredPart], u64),
{
    let mut w = Walker {
        chain_colors: scheme.colors().iter().copied().filter(|c| !c.is_quaternary()).collect(),
        quaternary: scheme.has_quaternary(),
        cost,
        limits,
        visit,
        stack: Vec::new(),
    };
    w.chain(0);
}

pub fn value_cost(p: ColoredPart) -> u64 {
    p.value as u64
}

/// All Type-1 partitions of `n`, sorted.
pub fn enumerate_type1(n: u32, scheme: &ColorScheme) -> Vec<ColoredPartition> {
    let mut out = Vec::new();
    walk_type1(scheme, &value_cost, WalkLimits::weight(n as u64), &mut |parts, w| {
        if w == n as u64 {
            out.push(ColoredPartition::new(parts.to_vec()));
        }
    });
    out.sort();
    out
}

/// What to match in [`count_g`].
#[derive(Clone, Copy, Debug)]
pub enum Frequencies {
    /// Exact color frequencies.
    Full(ConstraintSolution),
    /// Primary totals; sums over all matching frequency vectors.
    Profile(PartProfile),
}

fn primary_totals(n: &ColorCounts) -> [u32; 4] {
    let mut t = [0u32; 4];
    for c in Color::ALL {
        for (p, slot) in t.iter_mut().enumerate() {
            if c.has_primary(p) {
                *slot += n[c.rank()];
            }
        }
    }
    t
}

pub fn count_g(n: u32, scheme: &ColorScheme, freq: Frequencies) -> u64 {
    let mut count = 0u64;
    walk_type1(scheme, &value_cost, WalkLimits::weight(n as u64), &mut |parts, w| {
        if w != n as u64 {
            return;
        }
        let counts = counts_of(parts);
        let hit = match freq {
            Frequencies::Full(s) => counts == s.counts(),
            Frequencies::Profile(p) => {
                let t = primary_totals(&counts);
                (0..4).all(|i| t[i] == p.get(i))
            }
        };
        if hit {
            count += 1;
        }
    });
    count
}

/// Counts of Type-1 partitions keyed by `(n, color frequencies)` for all
/// `n <= n_max`.
pub fn tally_type1(scheme: &ColorScheme, n_max: u32, max_parts: usize) -> HashMap<(u32, ColorCounts), u64> {
    let mut out = HashMap::new();
    walk_type1(
        scheme,
        &value_cost,
        WalkLimits {
            max_cost: n_max as u64,
            max_parts,
        },
        &mut |parts, w| {
            *out.entry((w as u32, counts_of(parts))).or_insert(0) += 1;
        },
    );
    out
}

/// Aggregates a frequency tally to `(n, primary totals)`.
pub fn tally_by_profile(tally: &HashMap<(u32, ColorCounts), u64>) -> HashMap<(u32, [u32; 4]), u64> {
    let mut out = HashMap::new();
    for ((n, counts), v) in tally {
        *out.entry((*n, primary_totals(counts))).or_insert(0) += v;
    }
    out
}

/// `table[k][w]`: partitions of `w <= n_max` into exactly `k <= k_max`
/// distinct positive parts, by direct enumeration.
pub fn distinct_parts_table(k_max: usize, n_max: u32) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; n_max as usize + 1]; k_max + 1];
    fn rec(min: u32, k: usize, w: u32, k_max: usize, n_max: u32, table: &mut [Vec<u64>]) {
        table[k][w as usize] += 1;
        if k == k_max {
            return;
        }
        let mut v = min;
        while w + v <= n_max {
            rec(v + 1, k + 1, w + v, k_max, n_max, table);
            v += 1;
        }
    }
    rec(1, 0, 0, k_max, n_max, &mut table);
    table
}

/// Partitions of `n` into `profile[p]` distinct parts of primary color `p`
/// for each `p`, colors independent.
pub fn count_p(n: u32, profile: &PartProfile) -> u64 {
    count_p_table(profile, n)[n as usize]
}

/// [`count_p`] for every weight up to `n_max`.
pub fn count_p_table(profile: &PartProfile, n_max: u32) -> Vec<u64> {
    let k_max = profile.counts().iter().copied().max().unwrap_or(0) as usize;
    let d = distinct_parts_table(k_max, n_max);
    let mut acc = vec![0u64; n_max as usize + 1];
    acc[0] = 1;
    for &k in profile.counts() {
        let row = &d[k as usize];
        let mut next = vec![0u64; n_max as usize + 1];
        for (i, &x) in acc.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in row.iter().enumerate().take(n_max as usize + 1 - i) {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn quaternary_examples() {
        let s = ColorScheme::abcd();
        assert!(validate_type1(&p("ABCD_6+A_6"), &s).unwrap());
        assert!(!validate_type1(&p("ABCD_5+A_7"), &s).unwrap());
        assert!(validate_type1(&p("AB_2+CD_4"), &s).unwrap());
        assert!(validate_type1(&p("ABCD_5+A_1"), &s).unwrap());
        assert!(!validate_type1(&p("ABCD_4+A_1"), &s).unwrap());
        assert!(!validate_type1(&p("ABCD_8+ABCD_11"), &s).unwrap());
    }

    #[test]
    fn adjacency_rules() {
        let s = ColorScheme::ab();
        assert!(validate_type1(&p("A_2+A_1"), &s).unwrap());
        assert!(validate_type1(&p("B_2+A_1"), &s).unwrap());
        assert!(!validate_type1(&p("A_2+B_1"), &s).unwrap());
        assert!(!validate_type1(&p("AB_3+AB_2"), &s).unwrap());
        assert!(!validate_type1(&p("B_1+A_1"), &s).unwrap());
        assert!(!validate_type1(&p("A_1+A_1"), &s).unwrap());
        assert!(!validate_type1(&p("AB_1"), &s).unwrap());
        assert_eq!(
            validate_type1(&p("C_1"), &s),
            Err(PartitionError::UnknownColor("C".into()))
        );
    }

    #[test]
    fn small_enumerations() {
        let s = ColorScheme::ab();
        assert_eq!(enumerate_type1(0, &s), vec![ColoredPartition::empty()]);
        let two: Vec<String> = enumerate_type1(2, &s).iter().map(|x| x.to_string()).collect();
        assert_eq!(two, vec!["AB_2", "A_2", "B_2"]);
        for part in enumerate_type1(9, &ColorScheme::abcd()) {
            assert!(validate_type1(&part, &ColorScheme::abcd()).unwrap());
        }
    }

    #[test]
    fn distinct_parts_counts() {
        let d = distinct_parts_table(3, 10);
        assert_eq!(d[0][0], 1);
        assert_eq!(d[2][3], 1);
        assert_eq!(d[3][10], 4); // 7+2+1, 6+3+1, 5+4+1, 5+3+2
        assert_eq!(count_p(3, &PartProfile::new(&[2, 0])), 1);
        assert_eq!(count_p(0, &PartProfile::new(&[0, 0, 0])), 1);
        assert_eq!(count_p(5, &PartProfile::new(&[0, 0, 0])), 0);
    }
}
