//! Brute-force counters for ordinary partitions: both sides of the Schur,
//! Göllnitz and mod 15 theorems, and Capparelli's theorem.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PartitionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Theorem {
    Schur,
    Goellnitz,
    Mod15,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    P,
    G,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Schur => "schur",
            Theorem::Goellnitz => "goellnitz",
            Theorem::Mod15 => "mod15",
        }
    }

    pub fn from_name(s: &str) -> Result<Self, PartitionError> {
        match s {
            "schur" => Ok(Theorem::Schur),
            "goellnitz" => Ok(Theorem::Goellnitz),
            "mod15" | "thm3" => Ok(Theorem::Mod15),
            _ => Err(PartitionError::UnknownScheme(s.to_string())),
        }
    }

    pub fn modulus(self) -> u64 {
        match self {
            Theorem::Schur => 3,
            Theorem::Goellnitz => 6,
            Theorem::Mod15 => 15,
        }
    }

    /// Residues `-2^j` of the distinct-part side.
    pub fn residues(self) -> &'static [u64] {
        match self {
            Theorem::Schur => &[1, 2],
            Theorem::Goellnitz => &[2, 4, 5],
            Theorem::Mod15 => &[7, 11, 13, 14],
        }
    }

    fn in_residues(self, p: u64) -> bool {
        self.residues().contains(&(p % self.modulus()))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Counts for every `n <= n_max`.
pub fn count_uncolored_table(theorem: Theorem, side: Side, n_max: u64) -> Vec<u64> {
    let mut table = vec![0u64; n_max as usize + 1];
    match side {
        Side::P => {
            let allowed: Vec<u64> = (1..=n_max).filter(|&p| theorem.in_residues(p)).collect();
            distinct_from(&allowed, 0, 0, n_max, &mut table);
        }
        Side::G => match theorem {
            Theorem::Mod15 => mod15_g(n_max, &mut table),
            _ => gap_chain(theorem, None, 0, n_max, &mut |w, _| table[w as usize] += 1),
        },
    }
    table
}

pub fn count_uncolored(theorem: Theorem, side: Side, n: u64) -> u64 {
    count_uncolored_table(theorem, side, n)[n as usize]
}

fn distinct_from(allowed: &[u64], start: usize, w: u64, n_max: u64, table: &mut [u64]) {
    table[w as usize] += 1;
    for i in start..allowed.len() {
        let p = allowed[i];
        if w + p > n_max {
            break;
        }
        distinct_from(allowed, i + 1, w + p, n_max, table);
    }
}

/// Allowed parts and the adjacent-difference rule of the G side for the
/// Schur and Göllnitz theorems, and for the non-multiples of 15.
fn part_allowed(t: Theorem, p: u64) -> bool {
    match t {
        Theorem::Schur => true,
        Theorem::Goellnitz => p != 1 && p != 3,
        Theorem::Mod15 => ![0, 1, 2, 4, 8].contains(&(p % 15)) && (t.in_residues(p) || p > 15),
    }
}

fn step_ok(t: Theorem, lower: u64, upper: u64) -> bool {
    let m = t.modulus();
    upper > lower && (upper - lower > m || (upper - lower == m && t.in_residues(lower)))
}

/// Ascending chains of allowed parts obeying the difference rule; calls
/// `visit(weight, parts)` for each, including the empty chain.
fn gap_chain(t: Theorem, last: Option<u64>, w: u64, n_max: u64, visit: &mut dyn FnMut(u64, &[u64])) {
    let mut stack = Vec::new();
    fn rec(t: Theorem, w: u64, n_max: u64, stack: &mut Vec<u64>, visit: &mut dyn FnMut(u64, &[u64])) {
        visit(w, stack);
        let start = stack.last().map_or(1, |&l| l + 1);
        for p in start..=n_max - w {
            if !part_allowed(t, p) {
                continue;
            }
            if let Some(&l) = stack.last() {
                if !step_ok(t, l, p) {
                    continue;
                }
            }
            stack.push(p);
            rec(t, w + p, n_max, stack, visit);
            stack.pop();
        }
    }
    if let Some(l) = last {
        stack.push(l);
    }
    rec(t, w, n_max, &mut stack, visit);
}

/// Smallest allowed multiple of 15 given the non-multiples present.
fn multiple_floor(tau: u64, has_seven: bool) -> u64 {
    if has_seven {
        30 + 30 * tau
    } else {
        45 + 30 * tau
    }
}

fn mod15_g(n_max: u64, table: &mut [u64]) {
    gap_chain(Theorem::Mod15, None, 0, n_max, &mut |w, parts| {
        let floor = multiple_floor(parts.len() as u64, parts.contains(&7));
        multiples(floor.max(30), w, n_max, table);
    });
}

/// Multiples of 15, at least `min`, pairwise differing by at least 60.
fn multiples(min: u64, w: u64, n_max: u64, table: &mut [u64]) {
    table[w as usize] += 1;
    let mut p = min.div_ceil(15) * 15;
    while w + p <= n_max {
        multiples(p + 60, w + p, n_max, table);
        p += 15;
    }
}

/// Checks the G-side conditions on a whole partition (any order).
pub fn is_g_partition(t: Theorem, parts: &[u64]) -> bool {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    match t {
        Theorem::Schur | Theorem::Goellnitz => {
            sorted.iter().all(|&p| p > 0 && part_allowed(t, p)) && sorted.windows(2).all(|w| step_ok(t, w[0], w[1]))
        }
        Theorem::Mod15 => {
            let (mult, rest): (Vec<u64>, Vec<u64>) = sorted.iter().partition(|&&p| p % 15 == 0);
            rest.iter().all(|&p| part_allowed(t, p))
                && rest.windows(2).all(|w| step_ok(t, w[0], w[1]))
                && mult.iter().all(|&p| p > 15)
                && mult.windows(2).all(|w| w[1] >= w[0] + 60)
                && mult
                    .first()
                    .is_none_or(|&m| m >= multiple_floor(rest.len() as u64, rest.contains(&7)))
        }
    }
}

/// Sides of Capparelli's theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapparelliSide {
    /// Parts `≡ ±2, ±3 (mod 12)`, repetition allowed.
    CStar,
    /// Parts `> 1` differing by at least 2, and by at least 4 unless both
    /// are multiples of 3 or they sum to a multiple of 6.
    D,
}

pub fn capparelli_table(side: CapparelliSide, n_max: u64) -> Vec<u64> {
    let mut table = vec![0u64; n_max as usize + 1];
    match side {
        CapparelliSide::CStar => {
            let allowed: Vec<u64> = (1..=n_max).filter(|p| [2, 3, 9, 10].contains(&(p % 12))).collect();
            fn rec(allowed: &[u64], start: usize, w: u64, n_max: u64, table: &mut [u64]) {
                table[w as usize] += 1;
                for i in start..allowed.len() {
                    if w + allowed[i] > n_max {
                        break;
                    }
                    rec(allowed, i, w + allowed[i], n_max, table);
                }
            }
            rec(&allowed, 0, 0, n_max, &mut table);
        }
        CapparelliSide::D => capparelli_d(n_max, &mut |w, _| table[w as usize] += 1),
    }
    table
}

pub fn count_capparelli(side: CapparelliSide, n: u64) -> u64 {
    capparelli_table(side, n)[n as usize]
}

fn capparelli_step(lower: u64, upper: u64) -> bool {
    let d = upper.saturating_sub(lower);
    d >= 4 || (d >= 2 && ((lower % 3 == 0 && upper % 3 == 0) || (lower + upper) % 6 == 0))
}

fn capparelli_d(n_max: u64, visit: &mut dyn FnMut(u64, &[u64])) {
    fn rec(w: u64, n_max: u64, stack: &mut Vec<u64>, visit: &mut dyn FnMut(u64, &[u64])) {
        visit(w, stack);
        let start = stack.last().map_or(2, |&l| l + 2);
        for p in start..=n_max - w {
            if let Some(&l) = stack.last() {
                if !capparelli_step(l, p) {
                    continue;
                }
            }
            stack.push(p);
            rec(w + p, n_max, stack, visit);
            stack.pop();
        }
    }
    rec(0, n_max, &mut Vec::new(), visit);
}

/// `D(n; i, j)`: D-side partitions with `i` parts `≡ 2` and `j` parts `≡ 1 (mod 3)`,
/// keyed by `(n, i, j)`.
pub fn capparelli_refined(n_max: u64) -> BTreeMap<(u64, u32, u32), u64> {
    let mut out = BTreeMap::new();
    capparelli_d(n_max, &mut |w, parts| {
        let i = parts.iter().filter(|&&p| p % 3 == 2).count() as u32;
        let j = parts.iter().filter(|&&p| p % 3 == 1).count() as u32;
        *out.entry((w, i, j)).or_insert(0) += 1;
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod15_seven() {
        assert_eq!(count_uncolored(Theorem::Mod15, Side::P, 7), 1);
        assert_eq!(count_uncolored(Theorem::Mod15, Side::G, 7), 1);
        assert_eq!(count_uncolored(Theorem::Schur, Side::P, 0), 1);
        assert!(is_g_partition(Theorem::Mod15, &[82, 75]));
        assert!(!is_g_partition(Theorem::Mod15, &[97, 60]));
        assert!(!is_g_partition(Theorem::Mod15, &[3]));
        assert!(!is_g_partition(Theorem::Mod15, &[15]));
    }

    #[test]
    fn schur_small() {
        // P(6) = #{5+1, 4+2}, G(6) = #{6, 5+1}
        let p = count_uncolored_table(Theorem::Schur, Side::P, 6);
        let g = count_uncolored_table(Theorem::Schur, Side::G, 6);
        assert_eq!(p, vec![1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(g, p);
        assert!(!is_g_partition(Theorem::Schur, &[6, 3]));
        assert!(is_g_partition(Theorem::Schur, &[5, 2]));
    }

    #[test]
    fn capparelli_nine() {
        assert_eq!(count_capparelli(CapparelliSide::CStar, 9), 3);
        assert_eq!(count_capparelli(CapparelliSide::D, 9), 3);
        assert_eq!(count_capparelli(CapparelliSide::CStar, 1), 0);
        let refined = capparelli_refined(9);
        // {9}, {7,2}, {6,3}
        assert_eq!(refined.get(&(9, 0, 0)), Some(&2));
        assert_eq!(refined.get(&(9, 1, 1)), Some(&1));
    }
}
