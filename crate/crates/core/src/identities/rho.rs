//! The two rational functions behind the vanishing of the `L`-value
//! combination, and the three-case analysis that uses them.

use crate::algebra::{qbinomial_poly, triangular, ParamMonomial, QPoly, QRational};

use super::report::{check, compare_qpoly, compare_rational, IdentityReport};
use super::IdentityError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhoKind {
    Rho1,
    Rho2,
}

impl RhoKind {
    pub fn name(self) -> &'static str {
        match self {
            RhoKind::Rho1 => "rho1",
            RhoKind::Rho2 => "rho2",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RhoKind::Rho1 => 3,
            RhoKind::Rho2 => 4,
        }
    }
}

fn qp(e: i64) -> QRational {
    QRational::q_pow(e)
}

fn omq(e: i64) -> QRational {
    QRational::one_minus_q_pow(e)
}

/// `(1-q^x)/(1-q^{m-x})`
fn ratio(x: i64, m: i64) -> QRational {
    omq(x).div(&omq(m - x)).expect("index equals m")
}

fn ratios(xs: &[i64], m: i64) -> QRational {
    xs.iter().fold(QRational::one(), |acc, &x| acc.mul(&ratio(x, m)))
}

fn to_i64(xs: &[u32]) -> Vec<i64> {
    xs.iter().map(|&x| x as i64).collect()
}

/// The defining sum of `ρ1(j,k,l)`.
pub fn rho1_sum(idx: [u32; 3], m: u32) -> QRational {
    let [j, k, l] = [idx[0] as i64, idx[1] as i64, idx[2] as i64];
    let m = m as i64;
    let mut out = QRational::one();
    for (x, y) in [(j, k), (j, l), (k, l)] {
        out = out.sub(&qp(m - x - y).mul(&ratios(&[x, y], m)));
    }
    let one_plus = QRational::one().add(&qp(m));
    out.sub(&qp(m - j - k - l).mul(&one_plus).mul(&ratios(&[j, k, l], m)))
}

/// `(q^{j+k+l} - q^m)(1-q^m)^2 / ((q^j-q^m)(q^k-q^m)(q^l-q^m))`
pub fn rho1_closed(idx: [u32; 3], m: u32) -> QRational {
    let m = m as i64;
    let xs = to_i64(&idx);
    let num = qp(xs.iter().sum()).sub(&qp(m)).mul(&omq(m)).mul(&omq(m));
    let den = QRational::product(&xs.iter().map(|&x| qp(x).sub(&qp(m))).collect::<Vec<_>>());
    num.div(&den).expect("index equals m")
}

/// The defining sum of `ρ2(i,j,k,l)`.
pub fn rho2_sum(idx: [u32; 4], m: u32) -> QRational {
    let xs = to_i64(&idx);
    let m = m as i64;
    let mut out = QRational::zero();
    for &x in &xs {
        out = out.add(&qp(m - x).mul(&ratio(x, m)));
    }
    for skip in 0..4 {
        let three: Vec<i64> = (0..4).filter(|&t| t != skip).map(|t| xs[t]).collect();
        out = out.sub(&qp(2 * m - three.iter().sum::<i64>()).mul(&ratios(&three, m)));
    }
    let one_plus = QRational::one().add(&qp(m));
    out.add(&one_plus.mul(&QRational::one().sub(&ratios(&xs, m))))
}

/// `(q^{2m} - q^{i+j+k+l}){(1+q^m) prod (1-q^x) - (1-q^m)^3} / prod (q^m - q^x)`
pub fn rho2_closed(idx: [u32; 4], m: u32) -> QRational {
    let m = m as i64;
    let xs = to_i64(&idx);
    let prod = QRational::product(&xs.iter().map(|&x| omq(x)).collect::<Vec<_>>());
    let brace = QRational::one()
        .add(&qp(m))
        .mul(&prod)
        .sub(&omq(m).mul(&omq(m)).mul(&omq(m)));
    let num = qp(2 * m).sub(&qp(xs.iter().sum())).mul(&brace);
    let den = QRational::product(&xs.iter().map(|&x| qp(m).sub(&qp(x))).collect::<Vec<_>>());
    num.div(&den).expect("index equals m")
}

fn index_label(idx: &[u32]) -> String {
    idx.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Checks that the defining sum equals the closed form, and that both vanish
/// on the constraint surface (`j+k+l = m` for `ρ1`, `i+j+k+l = 2m` for `ρ2`).
pub fn rho_check(kind: RhoKind, indices: &[u32], m: u32) -> Result<IdentityReport, IdentityError> {
    if indices.len() != kind.arity() {
        return Err(IdentityError::Invalid(format!("{} takes {} indices", kind.name(), kind.arity())));
    }
    if m < 1 {
        return Err(IdentityError::Invalid("m must be at least 1".into()));
    }
    if let Some(&index) = indices.iter().find(|&&x| x == m) {
        return Err(IdentityError::IndexCollision { index, m });
    }
    let (sum, closed, on_surface) = match kind {
        RhoKind::Rho1 => {
            let idx = [indices[0], indices[1], indices[2]];
            (rho1_sum(idx, m), rho1_closed(idx, m), indices.iter().sum::<u32>() == m)
        }
        RhoKind::Rho2 => {
            let idx = [indices[0], indices[1], indices[2], indices[3]];
            (rho2_sum(idx, m), rho2_closed(idx, m), indices.iter().sum::<u32>() == 2 * m)
        }
    };
    let mut r = IdentityReport::new(kind.name(), 0)
        .param("m", m)
        .param("indices", index_label(indices));
    r.record(compare_rational(&sum, &closed, &ParamMonomial::ONE));
    if on_surface {
        r.record(check(sum.is_zero() && closed.is_zero(), || format!("{} is nonzero on the surface", kind.name())));
    }
    Ok(r)
}

fn binom_product(m1: i64, idx: [i64; 4]) -> QPoly {
    idx.iter().fold(QPoly::one(), |acc, &x| &acc * &qbinomial_poly(m1, x))
}

fn tri_sum(idx: [i64; 4]) -> usize {
    idx.iter().map(|&x| triangular(x)).sum::<i64>() as usize
}

fn q_term(e: usize, idx: [i64; 4], m1: i64) -> QPoly {
    binom_product(m1, idx).shift(e + tri_sum(idx))
}

fn one_plus_qm(m: usize) -> QPoly {
    &QPoly::one() + &QPoly::monomial(1, m)
}

/// The sixteen-term left side for one tuple with `i+j+k+l = 2m`, as an exact
/// polynomial in `q`.
fn vanishing_lhs(idx: [i64; 4], m: i64) -> QPoly {
    let m1 = m - 1;
    let mu = m as usize;
    let mut out = QPoly::zero();
    for t in 0..4 {
        let mut one = idx;
        one[t] -= 1;
        out = &out + &q_term(mu, one, m1);
        let mut three = idx.map(|x| x - 1);
        three[t] += 1;
        out = &out - &q_term(2 * mu, three, m1);
    }
    out = &out + &(&one_plus_qm(mu) * &q_term(0, idx, m1));
    &out - &(&one_plus_qm(mu) * &q_term(2 * mu, idx.map(|x| x - 1), m1))
}

/// All tuples with `i+j+k+l = 2m`, `0 <= each <= m`: the left side is the
/// zero polynomial, and it matches the form the case analysis predicts.
pub fn case_analysis_check(m: u32) -> Result<IdentityReport, IdentityError> {
    if m < 1 {
        return Err(IdentityError::Invalid("m must be at least 1".into()));
    }
    let mi = m as i64;
    let m1 = mi - 1;
    let mut r = IdentityReport::new("cases", 0).param("m", m);
    for i in 0..=mi {
        for j in 0..=mi {
            for k in 0..=mi {
                let l = 2 * mi - i - j - k;
                if !(0..=mi).contains(&l) {
                    continue;
                }
                let idx = [i, j, k, l];
                let label = ParamMonomial::abcd(i as i32, j as i32, k as i32, l as i32);
                let lhs = vanishing_lhs(idx, mi);
                r.record(compare_qpoly(&lhs, &QPoly::zero(), None, &label));
                let at_m: Vec<usize> = (0..4).filter(|&t| idx[t] == mi).collect();
                let predicted = match at_m.len() {
                    2 => {
                        // every product in the sixteen terms is zero
                        let mut all_zero = binom_product(m1, idx).is_zero()
                            && binom_product(m1, idx.map(|x| x - 1)).is_zero();
                        for t in 0..4 {
                            let mut one = idx;
                            one[t] -= 1;
                            let mut three = idx.map(|x| x - 1);
                            three[t] += 1;
                            all_zero &= binom_product(m1, one).is_zero() && binom_product(m1, three).is_zero();
                        }
                        r.record(check(all_zero, || format!("a product is nonzero at {}", label)));
                        QRational::zero()
                    }
                    1 => {
                        let rest: Vec<u32> = (0..4).filter(|&t| t != at_m[0]).map(|t| idx[t] as u32).collect();
                        let rho = rho1_closed([rest[0], rest[1], rest[2]], m);
                        r.record(check(rho.is_zero(), || format!("rho1 is nonzero at {}", label)));
                        let e = triangular(mi) + rest.iter().map(|&x| triangular(x as i64)).sum::<i64>();
                        let prod = rest.iter().fold(QPoly::one(), |acc, &x| &acc * &qbinomial_poly(m1, x as i64));
                        rho.mul(&QRational::from_poly(prod.shift(e as usize)))
                    }
                    0 => {
                        let u = idx.map(|x| x as u32);
                        let rho = rho2_closed(u, m);
                        r.record(check(rho.is_zero(), || format!("rho2 is nonzero at {}", label)));
                        rho.mul(&QRational::from_poly(q_term(0, idx, m1)))
                    }
                    _ => unreachable!("at most two indices can equal m when m >= 1"),
                };
                r.record(compare_rational(&QRational::from_poly(lhs), &predicted, &label));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho1_examples() {
        // -(1+q)^2/q
        let expect = QRational::new(QPoly::from_i64s(&[-1, -2, -1]), QPoly::from_i64s(&[0, 1])).unwrap();
        assert_eq!(rho1_sum([1, 1, 1], 2), expect);
        assert_eq!(rho1_closed([1, 1, 1], 2), expect);
        assert!(rho1_sum([1, 1, 1], 3).is_zero());
        assert!(rho2_sum([2, 2, 1, 1], 3).is_zero());
    }

    #[test]
    fn collision_is_an_error() {
        assert_eq!(
            rho_check(RhoKind::Rho1, &[2, 0, 1], 2),
            Err(IdentityError::IndexCollision { index: 2, m: 2 })
        );
    }

    #[test]
    fn small_ranges_pass() {
        for m in 1..=4 {
            for j in 0..=3 {
                for k in 0..=3 {
                    for l in 0..=3 {
                        if let Ok(r) = rho_check(RhoKind::Rho1, &[j, k, l], m) {
                            assert!(r.passed(), "{}", r);
                        }
                        if let Ok(r) = rho_check(RhoKind::Rho2, &[j, k, l, 1], m) {
                            assert!(r.passed(), "{}", r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cases_small() {
        for m in 1..=3 {
            let r = case_analysis_check(m).unwrap();
            assert!(r.passed(), "{}", r);
        }
    }
}
