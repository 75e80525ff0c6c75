//! Attribute universes and bitset-backed attribute sets.
//!
//! Every schema fixes an ordered universe of attribute names; all set-level
//! reasoning (closures, separators, covers) happens on `AttributeSet`, a
//! bitset over universe positions. Sets remember which universe they came
//! from so cross-universe operations are detected instead of silently
//! producing garbage.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest universe supported by the bitset representation.
pub const MAX_ATTRIBUTES: usize = 128;

/// Identity token for a universe, derived from its name list.
///
/// Two universes with the same names (in the same order) are interchangeable,
/// which keeps sets usable across independently parsed copies of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UniverseId(u64);

/// An ordered list of distinct attribute names with position lookup.
#[derive(Debug, Clone)]
pub struct AttributeUniverse {
    names: Vec<String>,
    index: HashMap<String, usize>,
    id: UniverseId,
}

impl PartialEq for AttributeUniverse {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for AttributeUniverse {}

impl AttributeUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_ATTRIBUTES {
            return Err(Error::invalid(format!(
                "universe has {} attributes, maximum is {MAX_ATTRIBUTES}",
                names.len()
            )));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (pos, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::invalid("attribute names must be non-empty"));
            }
            if index.insert(name.clone(), pos).is_some() {
                return Err(Error::invalid(format!("duplicate attribute `{name}`")));
            }
        }
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        names.hash(&mut hasher);
        let id = UniverseId(hasher.finish());
        Ok(Self { names, index, id })
    }

    pub fn id(&self) -> UniverseId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, pos: usize) -> &str {
        &self.names[pos]
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    /// The empty set over this universe.
    pub fn empty_set(&self) -> AttributeSet {
        AttributeSet {
            universe: self.id,
            bits: 0,
        }
    }

    /// The set containing every attribute of this universe.
    pub fn full_set(&self) -> AttributeSet {
        let bits = if self.names.is_empty() {
            0
        } else {
            (!0u128) >> (MAX_ATTRIBUTES - self.names.len())
        };
        AttributeSet {
            universe: self.id,
            bits,
        }
    }

    /// Builds a set from attribute names, rejecting unknown ones.
    pub fn set_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<AttributeSet> {
        let mut set = self.empty_set();
        for name in names {
            set.insert(self.position(name)?);
        }
        Ok(set)
    }

    /// Builds a set from universe positions, rejecting out-of-range ones.
    pub fn set_of_positions(&self, positions: impl IntoIterator<Item = usize>) -> Result<AttributeSet> {
        let mut set = self.empty_set();
        for pos in positions {
            if pos >= self.names.len() {
                return Err(Error::invalid(format!(
                    "attribute position {pos} out of range for universe of size {}",
                    self.names.len()
                )));
            }
            set.insert(pos);
        }
        Ok(set)
    }

    /// Renders a set as its sorted attribute names.
    pub fn render(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|pos| self.names[pos].clone()).collect()
    }

    /// Renders a set as `{A,B,C}`.
    pub fn render_braced(&self, set: &AttributeSet) -> String {
        format!("{{{}}}", self.render(set).join(","))
    }
}

/// A subset of a universe's attributes, stored as a bitmask over positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttributeSet {
    universe: UniverseId,
    bits: u128,
}

impl AttributeSet {
    pub fn universe_id(&self) -> UniverseId {
        self.universe
    }

    pub fn same_universe(&self, other: &AttributeSet) -> bool {
        self.universe == other.universe
    }

    /// Errors unless both sets come from the same universe.
    pub fn check_universe(&self, other: &AttributeSet) -> Result<()> {
        if self.same_universe(other) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, pos: usize) -> bool {
        pos < MAX_ATTRIBUTES && self.bits & (1u128 << pos) != 0
    }

    pub fn insert(&mut self, pos: usize) {
        assert!(pos < MAX_ATTRIBUTES, "attribute position out of range");
        self.bits |= 1u128 << pos;
    }

    pub fn remove(&mut self, pos: usize) {
        if pos < MAX_ATTRIBUTES {
            self.bits &= !(1u128 << pos);
        }
    }

    pub fn union(&self, other: &AttributeSet) -> AttributeSet {
        assert_eq!(self.universe, other.universe, "universe mismatch in set union");
        AttributeSet {
            universe: self.universe,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &AttributeSet) -> AttributeSet {
        assert_eq!(self.universe, other.universe, "universe mismatch in set intersection");
        AttributeSet {
            universe: self.universe,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &AttributeSet) -> AttributeSet {
        assert_eq!(self.universe, other.universe, "universe mismatch in set difference");
        AttributeSet {
            universe: self.universe,
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset(&self, other: &AttributeSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch in subset test");
        self.bits & !other.bits == 0
    }

    /// Iterates member positions in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut bits = self.bits;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let pos = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(pos)
            }
        })
    }

    /// Lowest member position, if any.
    pub fn min_member(&self) -> Option<usize> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }
}

impl fmt::Debug for AttributeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AttributeSet{{")?;
        for (i, pos) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{pos}")?;
        }
        write!(f, "}}")
    }
}
