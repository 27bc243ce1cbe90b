use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use qlab_core::partitions::*;

const TABLE1_LEFT: [&str; 10] = [
    "ABCD_6",
    "AB_2+CD_4",
    "AC_2+BD_4",
    "AD_2+BC_4",
    "BC_2+AD_4",
    "BD_2+AC_4",
    "CD_2+AB_4",
    "A_1+B_2+CD_3",
    "A_1+BC_2+D_3",
    "A_1+BD_2+C_3",
];

#[test]
fn all_colors_weight_six() {
    let scheme = ColorScheme::abcd();
    let prof = PartProfile::new(&[1, 1, 1, 1]);
    let got: BTreeSet<ColoredPartition> = enumerate_type1(6, &scheme)
        .into_iter()
        .filter(|p| p.solution().profile(4) == prof)
        .collect();
    let want: BTreeSet<ColoredPartition> = TABLE1_LEFT.iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(got, want);
    assert_eq!(count_g(6, &scheme, Frequencies::Profile(prof)), 10);
    assert_eq!(count_p(6, &prof), 10);
}

#[test]
fn two_colors_weight_two() {
    let got: Vec<String> = enumerate_type1(2, &ColorScheme::ab()).iter().map(|p| p.to_string()).collect();
    assert_eq!(got, ["AB_2", "A_2", "B_2"]);
    let ab = ConstraintSolution { a: 1, b: 1, ..Default::default() };
    assert_eq!(count_g(2, &ColorScheme::ab(), Frequencies::Full(ab)), 0);
    assert_eq!(count_g(0, &ColorScheme::abcd(), Frequencies::Profile(PartProfile::new(&[0, 0, 0, 0]))), 1);
}

/// All frequency vectors with entries at most 2 and at most `max_parts` parts.
fn small_frequencies(max_parts: u32) -> Vec<ConstraintSolution> {
    let mut out = Vec::new();
    let mut counts = [0u32; 11];
    fn rec(pos: usize, left: u32, counts: &mut [u32; 11], out: &mut Vec<ConstraintSolution>) {
        if pos == 11 {
            out.push(ConstraintSolution::from_counts(counts));
            return;
        }
        for v in 0..=left.min(2) {
            counts[pos] = v;
            rec(pos + 1, left - v, counts, out);
        }
        counts[pos] = 0;
    }
    rec(0, max_parts, &mut counts, &mut out);
    out
}

#[test]
fn closed_form_matches_enumeration() {
    let order = 25u32;
    let tally = tally_type1(&ColorScheme::abcd(), order, 5);
    let freqs = small_frequencies(5);
    assert_eq!(freqs.len(), 3510);
    for f in freqs {
        let series = genfun_type1(&f, order as usize);
        let counts = f.counts();
        for n in 0..=order {
            let enumerated = tally.get(&(n, counts)).copied().unwrap_or(0);
            let coeff = series.coeff_of(n as usize, &Default::default());
            assert_eq!(coeff, enumerated.into(), "{} at q^{}", f, n);
        }
    }
}

fn check_bridge(scheme: &ColorScheme, n_max: u32) {
    let primaries = scheme.primaries();
    let by_profile = tally_by_profile(&tally_type1(scheme, n_max, usize::MAX));
    let mut seen = 0usize;
    for prof in PartProfile::all_up_to(primaries, n_max) {
        let floor: u32 = prof.counts().iter().map(|&k| k * (k + 1) / 2).sum();
        if floor > n_max {
            continue;
        }
        let p = count_p_table(&prof, n_max);
        let mut key = [0u32; 4];
        key[..primaries].copy_from_slice(prof.counts());
        for n in 0..=n_max {
            let g = by_profile.get(&(n, key)).copied().unwrap_or(0);
            assert_eq!(g, p[n as usize], "profile {} n {}", prof, n);
            seen += (g > 0) as usize;
        }
    }
    // every tallied (n, profile) was compared above
    assert_eq!(seen, by_profile.len());
}

#[test]
fn colored_theorems_small() {
    check_bridge(&ColorScheme::ab(), 24);
    check_bridge(&ColorScheme::abc(), 20);
    check_bridge(&ColorScheme::abcd(), 16);
}

#[test]
fn dropping_a_primary_collapses_the_scheme() {
    let n_max = 18;
    let restrict = |t: &HashMap<(u32, ColorCounts), u64>, keep: &ColorScheme| {
        let mut out: Vec<_> = t
            .iter()
            .filter(|((_, c), _)| Color::ALL.iter().all(|col| keep.contains(*col) || c[col.rank()] == 0))
            .map(|(k, v)| (*k, *v))
            .collect();
        out.sort();
        out
    };
    let sorted = |t: HashMap<(u32, ColorCounts), u64>| {
        let mut v: Vec<_> = t.into_iter().collect();
        v.sort();
        v
    };
    let four = tally_type1(&ColorScheme::abcd(), n_max, usize::MAX);
    let three = tally_type1(&ColorScheme::abc(), n_max, usize::MAX);
    let two = tally_type1(&ColorScheme::ab(), n_max, usize::MAX);
    assert_eq!(restrict(&four, &ColorScheme::abc()), sorted(three.clone()));
    assert_eq!(restrict(&three, &ColorScheme::ab()), sorted(two));
}

fn check_dilation(map: &DilationMap, n_max: u64) {
    let scheme = map.scheme();
    let t = map.theorem();
    let mut images = vec![0u64; n_max as usize + 1];
    let cost = map.cost();
    walk_type1(&scheme, &cost, WalkLimits::weight(n_max), &mut |parts, w| {
        let img: Vec<u64> = parts.iter().map(|&p| map.apply_part(p).unwrap()).collect();
        assert!(is_g_partition(t, &img), "{:?} -> {:?}", parts, img);
        images[w as usize] += 1;
    });
    let g = count_uncolored_table(t, Side::G, n_max);
    let p = count_uncolored_table(t, Side::P, n_max);
    assert_eq!(images, g, "{}", t);
    assert_eq!(p, g, "{}", t);
}

#[test]
fn dilations_land_on_the_uncolored_side() {
    check_dilation(&DilationMap::schur(), 60);
    check_dilation(&DilationMap::goellnitz(), 72);
    check_dilation(&DilationMap::mod15(), 120);
}

#[test]
fn capparelli_small() {
    assert_eq!(
        capparelli_table(CapparelliSide::CStar, 40),
        capparelli_table(CapparelliSide::D, 40)
    );
}

fn arb_part() -> impl Strategy<Value = ColoredPart> {
    (0usize..11, 1u32..8).prop_map(|(r, v)| ColoredPart::new(Color::from_rank(r), v))
}

proptest! {
    #[test]
    fn validation_agrees_with_enumeration(parts in prop::collection::vec(arb_part(), 0..4)) {
        let scheme = ColorScheme::abcd();
        let p = ColoredPartition::new(parts);
        let listed = enumerate_type1(p.n() as u32, &scheme).contains(&p);
        prop_assert_eq!(validate_type1(&p, &scheme).unwrap(), listed);
    }

    #[test]
    fn serialization_round_trips(parts in prop::collection::vec(arb_part(), 0..6)) {
        let p = ColoredPartition::new(parts);
        prop_assert_eq!(p.to_string().parse::<ColoredPartition>().unwrap(), p);
    }

    #[test]
    fn enumerated_partitions_are_valid(n in 0u32..14, s in 2usize..5) {
        let scheme = ColorScheme::new(s).unwrap();
        let all = enumerate_type1(n, &scheme);
        let distinct: BTreeSet<_> = all.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), all.len());
        for p in &all {
            prop_assert_eq!(p.n(), n as u64);
            prop_assert!(validate_type1(p, &scheme).unwrap());
        }
    }
}
