//! Inclusion-exclusion counting over a finite universe `{1, ..., n}`.
//!
//! A [`PropertyFamily`] holds up to 30 properties, each one either
//! "divisible by d" or an explicit subset of the universe. Expanding the
//! family produces the full signed sum of intersection cardinalities
//! (2^N terms): the term for an index set `S` counts elements lying in
//! every property of `S`, with sign `(-1)^|S|`. [`count_none`] evaluates
//! that sum to the number of elements possessing none of the properties,
//! and [`count_union`] its complement.
//!
//! Intersection cardinalities are computed per term:
//! - only divisibility properties: `floor(n / lcm)`, with the running lcm
//!   held in 128 bits and cut off as soon as it exceeds the universe
//!   (the count is then provably 0);
//! - only explicit sets: bitmap intersection;
//! - mixed: enumeration of the members of the smallest explicit set
//!   involved, filtered through the remaining properties. Families that
//!   contain an explicit set are therefore capped at a universe of 2^24
//!   elements so that bitmaps and enumeration stay tractable.

use std::collections::BTreeSet;
use std::fmt;

use bitvec::prelude::*;
use thiserror::Error;

/// Maximum number of properties in a family (the expansion has 2^N terms).
pub const MAX_PROPERTIES: usize = 30;

/// Maximum universe size once any explicit-set property is involved.
pub const MAX_EXPLICIT_UNIVERSE: u64 = 1 << 24;

/// Errors reported by the counting engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PieError {
    /// A family must hold at least one property.
    #[error("a property family needs at least one property")]
    EmptyFamily,
    /// More than [`MAX_PROPERTIES`] properties were supplied.
    #[error("{n} properties would expand into 2^{n} terms; the cap is {MAX_PROPERTIES}")]
    ExpansionTooLarge { n: usize },
    /// Explicit sets require a universe of at most [`MAX_EXPLICIT_UNIVERSE`].
    #[error("universe of {universe} elements is too large for explicit-set properties (cap {MAX_EXPLICIT_UNIVERSE})")]
    UniverseTooLarge { universe: u64 },
    /// Divisibility properties need a divisor of at least 2.
    #[error("divisibility property needs d >= 2, got {d}")]
    DivisorTooSmall { d: u64 },
    /// An explicit-set member fell outside `{1, ..., universe_size}`.
    #[error("set member {member} lies outside the universe 1..={universe}")]
    MemberOutOfUniverse { member: u64, universe: u64 },
}

/// One property that universe elements may possess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    /// Possessed by every multiple of the divisor.
    DivisibleBy(u64),
    /// Possessed exactly by the listed elements.
    Explicit(BTreeSet<u64>),
}

impl Property {
    /// Convenience constructor for an explicit set.
    pub fn explicit<I: IntoIterator<Item = u64>>(members: I) -> Self {
        Property::Explicit(members.into_iter().collect())
    }

    /// The indicator function of the property: does `x` possess it?
    pub fn contains(&self, x: u64) -> bool {
        match self {
            Property::DivisibleBy(d) => x.is_multiple_of(*d),
            Property::Explicit(members) => members.contains(&x),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::DivisibleBy(d) => write!(f, "div({d})"),
            Property::Explicit(members) => {
                write!(f, "set{{")?;
                for (i, m) in members.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

/// A universe `{1, ..., universe_size}` together with an ordered list of
/// properties its elements may possess. Construction validates every
/// invariant, so a value of this type can always be expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFamily {
    universe_size: u64,
    properties: Vec<Property>,
}

impl PropertyFamily {
    /// Validates and builds a family.
    ///
    /// # Errors
    ///
    /// - [`PieError::EmptyFamily`] for zero properties;
    /// - [`PieError::ExpansionTooLarge`] for more than 30;
    /// - [`PieError::DivisorTooSmall`] for a divisibility property with
    ///   `d < 2`;
    /// - [`PieError::MemberOutOfUniverse`] for an explicit member outside
    ///   `1..=universe_size`;
    /// - [`PieError::UniverseTooLarge`] when an explicit set is present
    ///   and the universe exceeds 2^24 elements.
    pub fn new(universe_size: u64, properties: Vec<Property>) -> Result<Self, PieError> {
        if properties.is_empty() {
            return Err(PieError::EmptyFamily);
        }
        if properties.len() > MAX_PROPERTIES {
            return Err(PieError::ExpansionTooLarge {
                n: properties.len(),
            });
        }
        for property in &properties {
            match property {
                Property::DivisibleBy(d) => {
                    if *d < 2 {
                        return Err(PieError::DivisorTooSmall { d: *d });
                    }
                }
                Property::Explicit(members) => {
                    if universe_size > MAX_EXPLICIT_UNIVERSE {
                        return Err(PieError::UniverseTooLarge {
                            universe: universe_size,
                        });
                    }
                    for &m in members {
                        if m == 0 || m > universe_size {
                            return Err(PieError::MemberOutOfUniverse {
                                member: m,
                                universe: universe_size,
                            });
                        }
                    }
                }
            }
        }
        Ok(PropertyFamily {
            universe_size,
            properties,
        })
    }

    /// Size of the universe `{1, ..., n}`.
    pub fn universe_size(&self) -> u64 {
        self.universe_size
    }

    /// The properties, in the order given at construction.
    pub fn properties(&self) -> &[Property] {
        &self.properties
    }

    /// Membership bitmaps for the explicit-set properties (`None` for
    /// divisibility properties). Bit `x - 1` represents element `x`.
    fn explicit_bitmaps(&self) -> Vec<Option<BitVec<u64, Lsb0>>> {
        self.properties
            .iter()
            .map(|p| match p {
                Property::DivisibleBy(_) => None,
                Property::Explicit(members) => {
                    let mut bits = BitVec::<u64, Lsb0>::repeat(false, self.universe_size as usize);
                    for &m in members {
                        bits.set(m as usize - 1, true);
                    }
                    Some(bits)
                }
            })
            .collect()
    }

    /// Cardinality of the intersection of the properties selected by
    /// `mask` (empty mask = whole universe).
    fn intersection_cardinality(&self, mask: u32, bitmaps: &[Option<BitVec<u64, Lsb0>>]) -> u64 {
        if mask == 0 {
            return self.universe_size;
        }
        let selected = || (0..self.properties.len()).filter(|i| mask >> i & 1 == 1);
        let mut divisor_count = 0usize;
        let mut explicit_count = 0usize;
        for i in selected() {
            match &self.properties[i] {
                Property::DivisibleBy(_) => divisor_count += 1,
                Property::Explicit(_) => explicit_count += 1,
            }
        }

        if explicit_count == 0 {
            // Multiples of every selected divisor are exactly the multiples
            // of the lcm; the running lcm never wraps in 128 bits, and once
            // it exceeds the universe the count is provably zero.
            let mut lcm = 1u64;
            for i in selected() {
                let Property::DivisibleBy(d) = self.properties[i] else {
                    unreachable!()
                };
                let g = crate::arith::gcd(lcm, d);
                let candidate = (lcm / g) as u128 * d as u128;
                if candidate > self.universe_size as u128 {
                    return 0;
                }
                lcm = candidate as u64;
            }
            return self.universe_size / lcm;
        }

        if divisor_count == 0 {
            // Word-wise AND over the selected membership bitmaps.
            let words: Vec<&[u64]> = selected()
                .map(|i| {
                    bitmaps[i]
                        .as_ref()
                        .expect("explicit property has a bitmap")
                        .as_raw_slice()
                })
                .collect();
            let blocks = words[0].len();
            let mut count = 0u64;
            for w in 0..blocks {
                let mut acc = !0u64;
                for raw in &words {
                    acc &= raw[w];
                }
                count += acc.count_ones() as u64;
            }
            return count;
        }

        // Mixed modes: enumerate the members of the smallest selected
        // explicit set and filter them through every other selected
        // property. Construction capped the universe, so this stays small.
        debug_assert!(self.universe_size <= MAX_EXPLICIT_UNIVERSE);
        let seed = selected()
            .filter_map(|i| match &self.properties[i] {
                Property::Explicit(members) => Some((members.len(), i)),
                Property::DivisibleBy(_) => None,
            })
            .min()
            .expect("mixed intersection has an explicit property")
            .1;
        let Property::Explicit(seed_members) = &self.properties[seed] else {
            unreachable!()
        };
        seed_members
            .iter()
            .filter(|&&x| selected().all(|i| i == seed || self.properties[i].contains(x)))
            .count() as u64
    }
}

/// One term of a signed expansion: the intersection over `index_set`,
/// counted with sign `(-1)^|index_set|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedTerm {
    /// `+1` for even index sets, `-1` for odd ones.
    pub sign: i8,
    index_mask: u32,
    /// Cardinality of the intersection of the selected properties.
    pub cardinality: u64,
}

impl SignedTerm {
    /// Property indices of this term, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.index_mask >> i & 1 == 1).collect()
    }

    /// The index set as a bit mask (bit `i` = property `i` selected).
    pub fn index_mask(&self) -> u32 {
        self.index_mask
    }
}

/// The full inclusion-exclusion expansion of a family: exactly 2^N signed
/// terms, in binary counting order of the index masks (so the first term
/// is the empty intersection: sign `+1`, cardinality = universe size).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedExpansion {
    universe_size: u64,
    terms: Vec<SignedTerm>,
}

impl SignedExpansion {
    /// The terms in binary counting order of their index masks.
    pub fn terms(&self) -> &[SignedTerm] {
        &self.terms
    }

    /// Size of the expanded family's universe.
    pub fn universe_size(&self) -> u64 {
        self.universe_size
    }

    /// The signed sum of all terms.
    pub fn signed_sum(&self) -> i128 {
        self.terms
            .iter()
            .map(|t| t.sign as i128 * t.cardinality as i128)
            .sum()
    }
}

fn sign_of(mask: u32) -> i8 {
    if mask.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Computes the full signed expansion (2^N terms) of a family.
pub fn expand(family: &PropertyFamily) -> SignedExpansion {
    let bitmaps = family.explicit_bitmaps();
    let n = family.properties().len();
    let terms = (0..1u64 << n)
        .map(|mask| {
            let mask = mask as u32;
            SignedTerm {
                sign: sign_of(mask),
                index_mask: mask,
                cardinality: family.intersection_cardinality(mask, &bitmaps),
            }
        })
        .collect();
    SignedExpansion {
        universe_size: family.universe_size(),
        terms,
    }
}

/// Number of universe elements possessing none of the properties,
/// evaluated as the signed sum of the expansion (streamed, so large
/// families never materialize their 2^N terms).
pub fn count_none(family: &PropertyFamily) -> u64 {
    let bitmaps = family.explicit_bitmaps();
    let n = family.properties().len();
    let sum: i128 = (0..1u64 << n)
        .map(|mask| {
            let mask = mask as u32;
            sign_of(mask) as i128 * family.intersection_cardinality(mask, &bitmaps) as i128
        })
        .sum();
    debug_assert!(sum >= 0 && sum <= family.universe_size() as i128);
    sum as u64
}

/// Number of universe elements possessing at least one property.
pub fn count_union(family: &PropertyFamily) -> u64 {
    family.universe_size() - count_none(family)
}

/// Indicator function of a subset of the universe.
pub fn indicator(set: &BTreeSet<u64>, x: u64) -> u64 {
    u64::from(set.contains(&x))
}

/// Verifies pointwise that the indicator of `A intersect B` equals the
/// product of the indicators of `A` and `B` over the whole universe —
/// the identity that justifies multiplying indicators to count
/// intersections. Both sets must lie within `{1, ..., universe_size}`.
pub fn indicator_product_check(universe_size: u64, a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> bool {
    let intersection: BTreeSet<u64> = a.intersection(b).copied().collect();
    (1..=universe_size).all(|x| indicator(&intersection, x) == indicator(a, x) * indicator(b, x))
}
