use std::fmt;

use super::color::{Color, ColorScheme};
use super::partition::{ColoredPart, ColoredPartition};
use super::uncolored::Theorem;
use super::PartitionError;

/// Substitution `X_n -> M n - offset(X)` sending colored integers to
/// ordinary ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationMap {
    theorem: Theorem,
    modulus: u32,
    offsets: Vec<(Color, u32)>,
}

impl DilationMap {
    pub fn schur() -> Self {
        Self::build(Theorem::Schur, 3, &[(Color::A, 2), (Color::B, 1)])
    }

    pub fn goellnitz() -> Self {
        Self::build(Theorem::Goellnitz, 6, &[(Color::A, 4), (Color::B, 2), (Color::C, 1)])
    }

    pub fn mod15() -> Self {
        Self::build(
            Theorem::Mod15,
            15,
            &[(Color::A, 8), (Color::B, 4), (Color::C, 2), (Color::D, 1)],
        )
    }

    pub fn for_theorem(t: Theorem) -> Self {
        match t {
            Theorem::Schur => Self::schur(),
            Theorem::Goellnitz => Self::goellnitz(),
            Theorem::Mod15 => Self::mod15(),
        }
    }

    pub fn from_name(s: &str) -> Result<Self, PartitionError> {
        Ok(Self::for_theorem(Theorem::from_name(s)?))
    }

    /// Composite offsets are sums of their primaries' offsets, which is what
    /// the translations of the parameters amount to.
    fn build(theorem: Theorem, modulus: u32, primary: &[(Color, u32)]) -> Self {
        let scheme = ColorScheme::new(primary.len()).unwrap();
        let offsets = scheme
            .colors()
            .iter()
            .map(|&c| {
                let off = primary
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| c.has_primary(*p))
                    .map(|(_, (_, o))| o)
                    .sum();
                (c, off)
            })
            .collect();
        DilationMap {
            theorem,
            modulus,
            offsets,
        }
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn scheme(&self) -> ColorScheme {
        ColorScheme::new(self.primary_offsets().len()).unwrap()
    }

    pub fn offset(&self, c: Color) -> Option<u32> {
        self.offsets.iter().find(|(x, _)| *x == c).map(|(_, o)| *o)
    }

    /// Offsets of the primary colors, in order A, B, ...
    pub fn primary_offsets(&self) -> Vec<u32> {
        Color::PRIMARIES.iter().filter_map(|&c| self.offset(c)).collect()
    }

    pub fn apply_part(&self, p: ColoredPart) -> Result<u64, PartitionError> {
        let off = self
            .offset(p.color)
            .ok_or_else(|| PartitionError::UnknownColor(p.color.name().to_string()))?;
        Ok(self.modulus as u64 * p.value as u64 - off as u64)
    }

    /// Cost function for [`super::walk_type1`]; panics on colors outside the map.
    pub fn cost(&self) -> impl Fn(ColoredPart) -> u64 + '_ {
        move |p| self.apply_part(p).expect("color outside the dilation map")
    }
}

impl fmt::Display for DilationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.theorem.name())
    }
}

/// Image of a colored partition, largest part first.
pub fn apply_dilation(p: &ColoredPartition, map: &DilationMap) -> Result<Vec<u64>, PartitionError> {
    let mut out = p
        .parts()
        .iter()
        .map(|&x| map.apply_part(x))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_match_tables() {
        let m = DilationMap::mod15();
        let off: Vec<(String, u32)> = m.offsets.iter().map(|(c, o)| (c.to_string(), *o)).collect();
        let expect = [
            ("ABCD", 15),
            ("AB", 12),
            ("AC", 10),
            ("AD", 9),
            ("A", 8),
            ("BC", 6),
            ("BD", 5),
            ("B", 4),
            ("CD", 3),
            ("C", 2),
            ("D", 1),
        ];
        assert_eq!(off, expect.iter().map(|(c, o)| (c.to_string(), *o)).collect::<Vec<_>>());
        assert_eq!(DilationMap::goellnitz().offset(Color::BC), Some(3));
        assert_eq!(DilationMap::schur().offset(Color::AB), Some(3));
    }

    #[test]
    fn examples() {
        let p: ColoredPartition = "ABCD_6+A_6".parse().unwrap();
        assert_eq!(apply_dilation(&p, &DilationMap::mod15()).unwrap(), vec![82, 75]);
        let a1: ColoredPartition = "A_1".parse().unwrap();
        assert_eq!(apply_dilation(&a1, &DilationMap::schur()).unwrap(), vec![1]);
        let c1: ColoredPartition = "C_1".parse().unwrap();
        assert_eq!(apply_dilation(&c1, &DilationMap::goellnitz()).unwrap(), vec![5]);
        assert!(apply_dilation(&c1, &DilationMap::schur()).is_err());
    }

    #[test]
    fn dilations_are_strictly_monotone() {
        for map in [DilationMap::schur(), DilationMap::goellnitz(), DilationMap::mod15()] {
            let scheme = map.scheme();
            let mut syms: Vec<ColoredPart> = (1..=12)
                .flat_map(|v| scheme.colors().iter().map(move |&c| ColoredPart::new(c, v)))
                .filter(|p| p.value >= p.color.min_value())
                .collect();
            syms.sort();
            let imgs: Vec<u64> = syms.iter().map(|&p| map.apply_part(p).unwrap()).collect();
            assert!(imgs.windows(2).all(|w| w[0] < w[1]), "{}", map);
        }
    }
}
