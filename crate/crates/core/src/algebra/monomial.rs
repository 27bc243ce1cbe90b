use std::fmt;
use std::ops::Mul;

/// The fixed registry of named parameters a coefficient may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    A,
    B,
    C,
    D,
    Z,
}

impl Param {
    pub const ALL: [Param; 5] = [Param::A, Param::B, Param::C, Param::D, Param::Z];
    /// The four "color" parameters, without the auxiliary `z`.
    pub const ABCD: [Param; 4] = [Param::A, Param::B, Param::C, Param::D];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "A",
            Param::B => "B",
            Param::C => "C",
            Param::D => "D",
            Param::Z => "z",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        match name {
            "A" => Some(Param::A),
            "B" => Some(Param::B),
            "C" => Some(Param::C),
            "D" => Some(Param::D),
            "z" | "Z" => Some(Param::Z),
            _ => None,
        }
    }
}

/// A Laurent monomial `A^a B^b C^c D^d z^e` with integer (possibly negative)
/// exponents.
///
/// Stored as a fixed exponent vector over the registry; an absent parameter
/// is exponent zero, so two monomials are equal iff their nonzero exponent
/// maps agree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamMonomial([i32; 5]);

impl ParamMonomial {
    pub const ONE: ParamMonomial = ParamMonomial([0; 5]);

    pub fn new(exps: [i32; 5]) -> Self {
        ParamMonomial(exps)
    }

    pub fn var(p: Param) -> Self {
        Self::var_pow(p, 1)
    }

    pub fn var_pow(p: Param, e: i32) -> Self {
        let mut exps = [0; 5];
        exps[p.index()] = e;
        ParamMonomial(exps)
    }

    /// `A^a B^b C^c D^d`.
    pub fn abcd(a: i32, b: i32, c: i32, d: i32) -> Self {
        ParamMonomial([a, b, c, d, 0])
    }

    #[inline]
    pub fn exp(&self, p: Param) -> i32 {
        self.0[p.index()]
    }

    #[inline]
    pub fn exps(&self) -> &[i32; 5] {
        &self.0
    }

    pub fn with_exp(mut self, p: Param, e: i32) -> Self {
        self.0[p.index()] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 5]
    }

    /// Nonzero exponents in registry order.
    pub fn support(&self) -> impl Iterator<Item = (Param, i32)> + '_ {
        Param::ALL
            .iter()
            .map(move |&p| (p, self.0[p.index()]))
            .filter(|&(_, e)| e != 0)
    }

    pub fn inverse(&self) -> Self {
        let mut e = self.0;
        for x in e.iter_mut() {
            *x = -*x;
        }
        ParamMonomial(e)
    }

    pub fn pow(&self, n: i32) -> Self {
        let mut e = self.0;
        for x in e.iter_mut() {
            *x *= n;
        }
        ParamMonomial(e)
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Total degree in the four color parameters.
    pub fn abcd_degree(&self) -> i32 {
        self.0[..4].iter().sum()
    }

    /// Parses the `A^2 B z^-1` style used by [`fmt::Display`]; `1` is the unit.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let mut exps = [0; 5];
        if s == "1" || s.is_empty() {
            return Some(ParamMonomial(exps));
        }
        for tok in s.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i32>().ok()?),
                None => (tok, 1),
            };
            exps[Param::from_name(name)?.index()] += e;
        }
        Some(ParamMonomial(exps))
    }
}

impl Mul for ParamMonomial {
    type Output = ParamMonomial;

    fn mul(self, rhs: ParamMonomial) -> ParamMonomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(rhs.0.iter()) {
            *x += *y;
        }
        ParamMonomial(e)
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in self.support() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", p.name())?;
            } else {
                write!(f, "{}^{}", p.name(), e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let m = ParamMonomial::abcd(2, 0, -1, 1).with_exp(Param::Z, -3);
        assert_eq!(m.to_string(), "A^2 C^-1 D z^-3");
        assert_eq!(ParamMonomial::parse(&m.to_string()), Some(m));
        assert_eq!(ParamMonomial::ONE.to_string(), "1");
        assert_eq!(ParamMonomial::parse("1"), Some(ParamMonomial::ONE));
        assert_eq!(ParamMonomial::parse("Q^2"), None);
    }

    #[test]
    fn zero_exponents_cancel_to_unit() {
        let a = ParamMonomial::var(Param::A);
        assert_eq!(a * a.inverse(), ParamMonomial::ONE);
        assert!((a * a.inverse()).support().next().is_none());
    }
}
