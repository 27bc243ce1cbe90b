//! Generating functions against brute-force partition counts.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::{poch, triangular, Param, ParamMonomial, PochBase, PochLen, QPoly, QSeries};
use crate::partitions::{
    count_p_table, count_uncolored_table, is_g_partition, tally_by_profile, tally_type1, walk_type1, ColorScheme,
    ConstraintSolution, DilationMap, PartProfile, Side, Theorem, WalkLimits,
};

use super::key::{distinct_parts_side, goellnitz_summand, key_summand, schur_summand};
use super::report::{check, compare_counts, IdentityReport};
use super::IdentityError;

fn poly_counts(p: &QPoly, n_max: u32) -> Vec<u64> {
    (0..=n_max as usize)
        .map(|e| u64::try_from(p.coeff(e)).unwrap_or(u64::MAX))
        .collect()
}

/// Profiles whose distinct-parts side can reach `q^{n_max}`.
fn reachable_profiles(primaries: usize, n_max: u32) -> Vec<PartProfile> {
    let mut top = 0;
    while triangular(top + 1) <= n_max as i64 {
        top += 1;
    }
    PartProfile::all_up_to(primaries, top as u32 * primaries as u32)
        .into_iter()
        .filter(|p| p.counts().iter().map(|&x| triangular(x as i64)).sum::<i64>() <= n_max as i64)
        .collect()
}

/// The colored theorem with `primaries` primary colors for every profile:
/// Type-1 enumeration against the sum side, distinct-part counts against
/// the product side, and the two counts against each other.
pub fn colored_bridge(primaries: usize, n_max: u32) -> Result<IdentityReport, IdentityError> {
    let theorem = primaries as u32 + 2;
    let summand: fn(&ConstraintSolution, usize) -> QPoly = match primaries {
        2 => schur_summand,
        3 => goellnitz_summand,
        4 => key_summand,
        _ => return Err(IdentityError::Invalid(format!("no colored theorem with {} primaries", primaries))),
    };
    let scheme = ColorScheme::new(primaries).map_err(|e| IdentityError::Invalid(e.to_string()))?;
    let tally = tally_by_profile(&tally_type1(&scheme, n_max, usize::MAX));
    let mut g: HashMap<[u32; 4], Vec<u64>> = HashMap::new();
    for (&(n, totals), &c) in &tally {
        g.entry(totals).or_insert_with(|| vec![0; n_max as usize + 1])[n as usize] += c;
    }
    let order = n_max as usize;
    let mut r = IdentityReport::new("bridge", n_max as i64).param("theorem", theorem);
    let profiles = reachable_profiles(primaries, n_max);
    let seen: BTreeSet<[u32; 4]> = profiles.iter().map(|p| p.widen(4).counts().try_into().unwrap()).collect();
    let stray = g.keys().filter(|k| !seen.contains(*k)).count();
    r.record(check(stray == 0, || format!("{} enumerated profiles lie outside the reachable set", stray)));
    for p in &profiles {
        let key: [u32; 4] = p.widen(4).counts().try_into().unwrap();
        let label = format!("{}", p);
        let g_counts = g.get(&key).cloned().unwrap_or_else(|| vec![0; order + 1]);
        let sum_side = ConstraintSolution::solutions_for(p)
            .iter()
            .fold(QPoly::zero(), |acc, f| &acc + &summand(f, order));
        let p_counts = count_p_table(p, n_max);
        r.record(compare_counts(&g_counts, &poly_counts(&sum_side, n_max), &format!("G({})", label)));
        r.record(compare_counts(&p_counts, &poly_counts(&distinct_parts_side(p, order), n_max), &format!("P({})", label)));
        r.record(compare_counts(&g_counts, &p_counts, &format!("G vs P ({})", label)));
    }
    Ok(r)
}

/// An uncolored theorem: the dilated product side against the brute-force
/// distinct-part counts, the dilated Type-1 partitions against the
/// brute-force gap-condition counts, and the two sides against each other.
pub fn uncolored_bridge(theorem: Theorem, n_max: u32) -> Result<IdentityReport, IdentityError> {
    let map = DilationMap::for_theorem(theorem);
    let order = n_max as usize;
    let modulus = map.modulus() as usize;
    let mut product = QSeries::one(order);
    for (&p, &off) in Param::ABCD.iter().zip(&map.primary_offsets()) {
        let f = poch(PochBase::new(-1, ParamMonomial::var(p), 1), PochLen::Infinite, order)?;
        product = product.mul(&f.specialize(modulus, &[(p, off as i64)], order)?);
    }
    let p_table = count_uncolored_table(theorem, Side::P, n_max as u64);
    let g_table = count_uncolored_table(theorem, Side::G, n_max as u64);

    let mut images = vec![0u64; order + 1];
    let mut bad = 0usize;
    let cost = map.cost();
    walk_type1(&map.scheme(), &cost, WalkLimits::weight(n_max as u64), &mut |parts, w| {
        images[w as usize] += 1;
        let mut img: Vec<u64> = parts.iter().map(|&x| cost(x)).collect();
        img.sort_unstable_by(|a, b| b.cmp(a));
        if !is_g_partition(theorem, &img) {
            bad += 1;
        }
    });

    let mut r = IdentityReport::new("bridge", n_max as i64).param("theorem", theorem_number(theorem));
    r.record(compare_counts(&poly_counts(&product.constant_part(), n_max), &p_table, "P(n)"));
    r.record(check(bad == 0, || format!("{} dilated partitions break the gap conditions", bad)));
    r.record(compare_counts(&images, &g_table, "G(n)"));
    r.record(compare_counts(&g_table, &p_table, "G(n) vs P(n)"));
    Ok(r)
}

fn theorem_number(t: Theorem) -> u32 {
    match t {
        Theorem::Schur => 1,
        Theorem::Goellnitz => 2,
        Theorem::Mod15 => 3,
    }
}

/// Dispatches on the theorem number: 1 to 3 are uncolored, 4 to 6 colored
/// with 2 to 4 primaries.
pub fn theorem_genfun_bridge(theorem: u32, n_max: u32) -> Result<IdentityReport, IdentityError> {
    match theorem {
        1 => uncolored_bridge(Theorem::Schur, n_max),
        2 => uncolored_bridge(Theorem::Goellnitz, n_max),
        3 => uncolored_bridge(Theorem::Mod15, n_max),
        4..=6 => colored_bridge(theorem as usize - 2, n_max),
        _ => Err(IdentityError::Invalid(format!("no theorem {}", theorem))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_theorems_small() {
        for t in 1..=6 {
            let r = theorem_genfun_bridge(t, 14).unwrap();
            assert!(r.passed(), "{}", r);
        }
        assert!(theorem_genfun_bridge(7, 5).is_err());
    }

    #[test]
    fn reachable_profiles_small() {
        assert_eq!(reachable_profiles(2, 2).len(), 4);
    }
}
