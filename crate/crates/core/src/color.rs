//! Fixed-capacity color sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of colors a [`ColorSet`] can index.
pub const MAX_COLORS: usize = 64;

/// A set of color ids `0..64`, stored as a single bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// The full palette `{0, .., s-1}`.
    pub fn full(s: usize) -> Result<ColorSet> {
        check_capacity(s)?;
        Ok(if s == MAX_COLORS {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << s) - 1)
        })
    }

    pub const fn from_bits(bits: u64) -> ColorSet {
        ColorSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn singleton(color: usize) -> ColorSet {
        ColorSet(1u64 << color)
    }

    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> ColorSet {
        colors
            .into_iter()
            .fold(ColorSet::EMPTY, |acc, c| acc.with(c))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, color: usize) -> bool {
        color < MAX_COLORS && self.0 & (1u64 << color) != 0
    }

    #[must_use]
    pub const fn with(self, color: usize) -> ColorSet {
        ColorSet(self.0 | (1u64 << color))
    }

    #[must_use]
    pub const fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Colors in ascending order.
    pub fn iter(self) -> Colors {
        Colors(self.0)
    }
}

/// Iterator over the members of a [`ColorSet`].
#[derive(Clone, Debug)]
pub struct Colors(u64);

impl Iterator for Colors {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let c = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Colors {}

impl IntoIterator for ColorSet {
    type Item = usize;
    type IntoIter = Colors;

    fn into_iter(self) -> Colors {
        self.iter()
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ColorSet::from_colors(iter)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let colors = Vec::<usize>::deserialize(d)?;
        if let Some(&c) = colors.iter().find(|&&c| c >= MAX_COLORS) {
            return Err(serde::de::Error::custom(format!("color {c} out of range")));
        }
        Ok(ColorSet::from_colors(colors))
    }
}

pub(crate) fn check_capacity(s: usize) -> Result<()> {
    if s > MAX_COLORS {
        Err(Error::Capacity {
            colors: s,
            max: MAX_COLORS,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_palette() {
        assert_eq!(ColorSet::full(0).unwrap(), ColorSet::EMPTY);
        assert_eq!(ColorSet::full(3).unwrap().bits(), 0b111);
        assert_eq!(ColorSet::full(64).unwrap().len(), 64);
        assert!(matches!(
            ColorSet::full(65),
            Err(Error::Capacity { colors: 65, .. })
        ));
    }

    #[test]
    fn set_algebra() {
        let a: ColorSet = [0, 2, 5].into_iter().collect();
        let b = ColorSet::from_colors([2, 5]);
        assert!(b.is_subset(a));
        assert!(!a.is_subset(b));
        assert_eq!(a.difference(b), ColorSet::singleton(0));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(5) && !a.contains(1) && !a.contains(200));
    }
}
