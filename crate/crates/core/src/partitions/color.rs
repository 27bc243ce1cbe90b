use std::fmt;

use super::PartitionError;

/// One of the eleven colors of the four-primary theory (ternary colors are
/// never used). The inner value is the rank in the equal-value order
/// `ABCD < AB < AC < AD < A < BC < BD < B < CD < C < D`, so the derived
/// ordering is the color order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

const MASKS: [u8; 11] = [0b1111, 0b0011, 0b0101, 0b1001, 0b0001, 0b0110, 0b1010, 0b0010, 0b1100, 0b0100, 0b1000];
const NAMES: [&str; 11] = ["ABCD", "AB", "AC", "AD", "A", "BC", "BD", "B", "CD", "C", "D"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorClass {
    Primary,
    Secondary,
    Quaternary,
}

impl Color {
    pub const ABCD: Color = Color(0);
    pub const AB: Color = Color(1);
    pub const AC: Color = Color(2);
    pub const AD: Color = Color(3);
    pub const A: Color = Color(4);
    pub const BC: Color = Color(5);
    pub const BD: Color = Color(6);
    pub const B: Color = Color(7);
    pub const CD: Color = Color(8);
    pub const C: Color = Color(9);
    pub const D: Color = Color(10);

    /// All colors, ascending.
    pub const ALL: [Color; 11] = [
        Color(0),
        Color(1),
        Color(2),
        Color(3),
        Color(4),
        Color(5),
        Color(6),
        Color(7),
        Color(8),
        Color(9),
        Color(10),
    ];

    pub const PRIMARIES: [Color; 4] = [Color::A, Color::B, Color::C, Color::D];

    pub fn rank(self) -> usize {
        self.0 as usize
    }

    pub fn from_rank(r: usize) -> Color {
        assert!(r < 11);
        Color(r as u8)
    }

    /// Bit `p` is set when primary `p` (A = 0, ..., D = 3) is a component.
    pub fn mask(self) -> u8 {
        MASKS[self.rank()]
    }

    pub fn class(self) -> ColorClass {
        match self.mask().count_ones() {
            1 => ColorClass::Primary,
            2 => ColorClass::Secondary,
            _ => ColorClass::Quaternary,
        }
    }

    pub fn is_primary(self) -> bool {
        self.class() == ColorClass::Primary
    }

    pub fn is_quaternary(self) -> bool {
        self.class() == ColorClass::Quaternary
    }

    /// Smallest integer that may carry this color.
    pub fn min_value(self) -> u32 {
        match self.class() {
            ColorClass::Primary => 1,
            ColorClass::Secondary => 2,
            ColorClass::Quaternary => 4,
        }
    }

    /// Whether primary number `p` (0..4) is a component.
    pub fn has_primary(self, p: usize) -> bool {
        self.mask() & (1 << p) != 0
    }

    pub fn name(self) -> &'static str {
        NAMES[self.rank()]
    }

    pub fn from_name(s: &str) -> Result<Color, PartitionError> {
        NAMES
            .iter()
            .position(|n| *n == s)
            .map(Color::from_rank)
            .ok_or_else(|| PartitionError::UnknownColor(s.to_string()))
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The 2-, 3- or 4-primary alphabet: primaries, all secondaries among them,
/// and the quaternary color when there are four primaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorScheme {
    primaries: usize,
    colors: Vec<Color>,
}

impl ColorScheme {
    pub fn new(primaries: usize) -> Result<Self, PartitionError> {
        if !(2..=4).contains(&primaries) {
            return Err(PartitionError::UnknownScheme(format!("{} primaries", primaries)));
        }
        let allowed: u8 = (1 << primaries) - 1;
        let colors = Color::ALL
            .iter()
            .copied()
            .filter(|c| c.mask() & !allowed == 0 && (!c.is_quaternary() || primaries == 4))
            .collect();
        Ok(ColorScheme { primaries, colors })
    }

    pub fn ab() -> Self {
        Self::new(2).unwrap()
    }

    pub fn abc() -> Self {
        Self::new(3).unwrap()
    }

    pub fn abcd() -> Self {
        Self::new(4).unwrap()
    }

    pub fn from_name(s: &str) -> Result<Self, PartitionError> {
        match s {
            "ab" => Ok(Self::ab()),
            "abc" => Ok(Self::abc()),
            "abcd" => Ok(Self::abcd()),
            _ => Err(PartitionError::UnknownScheme(s.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        ["ab", "abc", "abcd"][self.primaries - 2]
    }

    pub fn primaries(&self) -> usize {
        self.primaries
    }

    /// Colors in ascending equal-value order.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn contains(&self, c: Color) -> bool {
        self.colors.contains(&c)
    }

    pub fn has_quaternary(&self) -> bool {
        self.primaries == 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_orders() {
        let names = |s: ColorScheme| s.colors().iter().map(|c| c.name()).collect::<Vec<_>>().join("<");
        assert_eq!(names(ColorScheme::ab()), "AB<A<B");
        assert_eq!(names(ColorScheme::abc()), "AB<AC<A<BC<B<C");
        assert_eq!(names(ColorScheme::abcd()), "ABCD<AB<AC<AD<A<BC<BD<B<CD<C<D");
    }

    #[test]
    fn classes_and_minimums() {
        assert_eq!(Color::A.min_value(), 1);
        assert_eq!(Color::BD.min_value(), 2);
        assert_eq!(Color::ABCD.min_value(), 4);
        assert!(Color::CD.has_primary(2) && Color::CD.has_primary(3) && !Color::CD.has_primary(0));
        assert_eq!(Color::from_name("ABC"), Err(PartitionError::UnknownColor("ABC".into())));
        assert_eq!(Color::from_name("BC"), Ok(Color::BC));
    }
}
