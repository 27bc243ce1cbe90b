use crate::algebra::{triangular, QPoly, QSeries};

use super::partition::ConstraintSolution;

/// `q^e` truncated at `order`.
fn q_pow(e: i64, order: usize) -> QPoly {
    assert!(e >= 0);
    if e as usize > order {
        QPoly::zero()
    } else {
        QPoly::monomial(1, e as usize)
    }
}

/// Exponent shared by the three least-part cases: the Euler subtraction
/// `T_tau`, the secondary-color staircases and the quaternary stream.
pub fn base_exponent(f: &ConstraintSolution) -> i64 {
    let t = |x: u32| triangular(x as i64);
    let tau = f.tau() as i64;
    let q = f.q as i64;
    t(f.tau()) + t(f.ab) + t(f.ac) + t(f.ad) + t(f.bc) + t(f.bd) + t(f.cd)
        - (f.bc + f.bd + f.cd) as i64
        + 4 * triangular(q - 1)
        + 3 * q
        + 2 * q * tau
}

/// Generating function of Type-1 partitions with the given color
/// frequencies, as the sum of the three cases on the least part:
/// `A_1`, `B_1`, and anything larger.
pub fn genfun_type1(f: &ConstraintSolution, order: usize) -> QSeries {
    let e = base_exponent(f);
    let (a, b) = (f.a as i64, f.b as i64);
    let shift2 = a + (f.bc + f.bd + f.q) as i64;
    let shift3 = shift2 + b + f.cd as i64;

    // least part A_1: the A-stream has least part 0 after subtraction
    let case1 = &q_pow(e, order) - &q_pow(e + a, order);
    // least part B_1
    let case2 = &q_pow(e + shift2, order) - &q_pow(e + shift2 + b, order);
    // everything else
    let case3 = q_pow(e + shift3, order);

    let mut num = &(&case1 + &case2) + &case3;
    for x in [f.a, f.b, f.c, f.d, f.ab, f.ac, f.ad, f.bc, f.bd, f.cd, f.q] {
        num = num.div_qfact_trunc(x as usize, order);
    }
    QSeries::from_qpoly(&num, order)
}
