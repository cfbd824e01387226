use std::fmt;

/// A proper key. Valid keys lie in `1..=KEY_MAX`.
pub type Key = u32;

/// Largest proper key, mirroring a 31-bit `RAND_MAX` minus one so that both
/// sentinels stay outside the key domain.
pub const KEY_MAX: Key = 2_147_483_646;

pub fn is_valid_key(key: Key) -> bool {
    (1..=KEY_MAX).contains(&key)
}

/// Content of one lattice cell.
///
/// The encoding is a single `u32`: `0` is the Zero sentinel, `u32::MAX` is
/// the Infinity sentinel and everything in between is a proper key. The
/// derived order is therefore exactly `Zero < keys < Infinity`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct CellValue(u32);

impl CellValue {
    pub const ZERO: CellValue = CellValue(0);
    pub const INFINITY: CellValue = CellValue(u32::MAX);

    /// Wraps a proper key; `None` when the key is outside the domain.
    pub fn proper(key: Key) -> Option<CellValue> {
        is_valid_key(key).then_some(CellValue(key))
    }

    pub(crate) const fn raw(bits: u32) -> CellValue {
        CellValue(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn key(self) -> Option<Key> {
        self.is_proper().then_some(self.0)
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub const fn is_infinity(self) -> bool {
        self.0 == u32::MAX
    }

    /// Neither sentinel. Values above [`KEY_MAX`] still count as proper here;
    /// `validate` reports them separately.
    pub const fn is_proper(self) -> bool {
        !self.is_zero() && !self.is_infinity()
    }
}

impl fmt::Debug for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.pad("∞")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}
