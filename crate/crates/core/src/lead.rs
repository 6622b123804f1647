//! The 12 standard ECG leads in their canonical order.

/// One of the 12 standard leads. The discriminant is the canonical index,
/// so `LeadId::ALL[id.index()] == id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum LeadId {
    I = 0,
    II,
    III,
    AVR,
    AVL,
    AVF,
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
}

impl LeadId {
    /// All 12 leads in canonical order.
    pub const ALL: [LeadId; 12] = [
        LeadId::I,
        LeadId::II,
        LeadId::III,
        LeadId::AVR,
        LeadId::AVL,
        LeadId::AVF,
        LeadId::V1,
        LeadId::V2,
        LeadId::V3,
        LeadId::V4,
        LeadId::V5,
        LeadId::V6,
    ];

    pub const COUNT: usize = 12;

    /// Canonical index, 0..=11.
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(index: usize) -> Option<LeadId> {
        if index < Self::COUNT {
            Some(Self::ALL[index])
        } else {
            None
        }
    }

    /// Printed name with conventional casing (`aVR`, not `AVR`).
    pub const fn name(self) -> &'static str {
        match self {
            LeadId::I => "I",
            LeadId::II => "II",
            LeadId::III => "III",
            LeadId::AVR => "aVR",
            LeadId::AVL => "aVL",
            LeadId::AVF => "aVF",
            LeadId::V1 => "V1",
            LeadId::V2 => "V2",
            LeadId::V3 => "V3",
            LeadId::V4 => "V4",
            LeadId::V5 => "V5",
            LeadId::V6 => "V6",
        }
    }

    /// True for the chest leads V1..V6.
    pub const fn is_precordial(self) -> bool {
        (self as usize) >= LeadId::V1 as usize
    }

    /// Case-insensitive name lookup; surrounding whitespace is ignored.
    pub fn parse(name: &str) -> Option<LeadId> {
        let trimmed = name.trim();
        Self::ALL
            .iter()
            .copied()
            .find(|lead| lead.name().eq_ignore_ascii_case(trimmed))
    }
}

impl core::fmt::Display for LeadId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_bijective() {
        for (i, lead) in LeadId::ALL.iter().enumerate() {
            assert_eq!(lead.index(), i);
            assert_eq!(LeadId::from_index(i), Some(*lead));
            assert_eq!(LeadId::parse(lead.name()), Some(*lead));
        }
        assert_eq!(LeadId::from_index(12), None);
    }

    #[test]
    fn parse_is_case_insensitive_and_trims() {
        assert_eq!(LeadId::parse("AVR"), Some(LeadId::AVR));
        assert_eq!(LeadId::parse("avr"), Some(LeadId::AVR));
        assert_eq!(LeadId::parse("  aVL "), Some(LeadId::AVL));
        assert_eq!(LeadId::parse(" v3"), Some(LeadId::V3));
        assert_eq!(LeadId::parse("ii"), Some(LeadId::II));
        assert_eq!(LeadId::parse("V7"), None);
        assert_eq!(LeadId::parse(""), None);
    }

    #[test]
    fn precordial_split() {
        let precordial: alloc::vec::Vec<_> =
            LeadId::ALL.iter().filter(|l| l.is_precordial()).collect();
        assert_eq!(precordial.len(), 6);
        assert!(!LeadId::AVF.is_precordial());
        assert!(LeadId::V1.is_precordial());
    }
}
