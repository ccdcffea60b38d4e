//! Fuzzy and classical interpretations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{is_valid_atom_name, Atom, Signature};
use crate::truth::{Lattice, Truth};

/// A total map from a signature to truth values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interpretation {
    signature: Signature,
    values: Vec<Truth>,
}

impl Interpretation {
    /// `values[i]` is the value of `signature.atoms()[i]`.
    pub fn new(signature: Signature, values: Vec<Truth>) -> Interpretation {
        assert_eq!(signature.len(), values.len(), "one value per atom");
        Interpretation { signature, values }
    }

    /// Every atom mapped to `value`.
    pub fn constant(signature: Signature, value: Truth) -> Interpretation {
        let values = alloc::vec![value; signature.len()];
        Interpretation { signature, values }
    }

    /// Builds an interpretation whose signature is exactly the given atoms.
    /// Later duplicates override earlier ones.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Truth)>) -> Interpretation {
        let map: BTreeMap<Atom, Truth> =
            pairs.into_iter().map(|(a, v)| (Atom::new(a), v)).collect();
        Self::from_map(map)
    }

    pub fn from_map(map: BTreeMap<Atom, Truth>) -> Interpretation {
        let signature = Signature::new(map.keys().cloned());
        let values = map.into_values().collect();
        Interpretation { signature, values }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn values(&self) -> &[Truth] {
        &self.values
    }

    pub fn get(&self, atom: &str) -> Option<Truth> {
        self.signature.index_of(atom).map(|i| self.values[i])
    }

    /// Like [`get`](Self::get) but with a signature error.
    pub fn value_of(&self, atom: &str) -> Result<Truth> {
        self.get(atom)
            .ok_or_else(|| Error::UnknownAtom(atom.into()))
    }

    pub fn set(&mut self, atom: &str, value: Truth) -> Result<()> {
        let i = self
            .signature
            .index_of(atom)
            .ok_or_else(|| Error::UnknownAtom(atom.into()))?;
        self.values[i] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, Truth)> {
        self.signature.iter().zip(self.values.iter().copied())
    }

    pub fn to_map(&self) -> BTreeMap<Atom, Truth> {
        self.iter().map(|(a, v)| (a.clone(), v)).collect()
    }

    /// Restriction to `sig`, which must be a subset of the signature.
    pub fn restrict(&self, sig: &Signature) -> Result<Interpretation> {
        let values = sig
            .iter()
            .map(|a| self.value_of(a.as_str()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Interpretation::new(sig.clone(), values))
    }

    /// Extends to `sig` (a superset), assigning `fill` to new atoms.
    pub fn extend(&self, sig: &Signature, fill: Truth) -> Interpretation {
        let values = sig
            .iter()
            .map(|a| self.get(a.as_str()).unwrap_or(fill))
            .collect();
        Interpretation::new(sig.clone(), values)
    }

    /// The first atom whose value is not a lattice point.
    pub fn off_lattice_atom(&self, lattice: Lattice) -> Option<(&Atom, Truth)> {
        self.iter().find(|(_, v)| !lattice.contains(*v))
    }

    pub fn check_on_lattice(&self, lattice: Lattice) -> Result<()> {
        match self.off_lattice_atom(lattice) {
            Some((a, v)) => Err(Error::OffLattice {
                atom: a.to_string(),
                value: v.to_string(),
                denominator: lattice.denominator(),
            }),
            None => Ok(()),
        }
    }

    /// All lattice-valued interpretations of `sig`, in lexicographic order
    /// (first atom most significant, values ascending).
    pub fn enumerate(
        sig: &Signature,
        lattice: Lattice,
    ) -> impl Iterator<Item = Interpretation> + '_ {
        let n = sig.len();
        let radix = lattice.len() as u64;
        let total = (radix as u128).checked_pow(n as u32);
        let count = total.map_or(u64::MAX, |t| t.min(u64::MAX as u128) as u64);
        (0..count).map(move |mut idx| {
            let mut values = alloc::vec![Truth::ZERO; n];
            for slot in values.iter_mut().rev() {
                *slot = lattice.point((idx % radix) as u32);
                idx /= radix;
            }
            Interpretation::new(sig.clone(), values)
        })
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}={}", v.to_display_string())?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `p=0.3, q=7/10` (braces optional, `;` also separates).
impl FromStr for Interpretation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Interpretation> {
        let body = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut map = BTreeMap::new();
        for part in split_top_level(body) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (name, value) = part
                .rsplit_once('=')
                .ok_or_else(|| Error::Usage(format!("expected `atom=value`, found `{part}`")))?;
            let name = name.trim();
            if !is_valid_atom_name(name) {
                return Err(Error::Usage(format!("invalid atom name `{name}`")));
            }
            let value: Truth = value.parse()?;
            if map.insert(Atom::new(name), value).is_some() {
                return Err(Error::Usage(format!("atom `{name}` assigned twice")));
            }
        }
        Ok(Interpretation::from_map(map))
    }
}

/// Splits on `,` and `;` outside parentheses, so ground atoms such as
/// `trust(a,b,0)=0.5` survive.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// A classical interpretation, identified with its set of true atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolInterpretation {
    signature: Signature,
    truth: Vec<bool>,
}

impl BoolInterpretation {
    pub fn new(signature: Signature, truth: Vec<bool>) -> BoolInterpretation {
        assert_eq!(signature.len(), truth.len(), "one value per atom");
        BoolInterpretation { signature, truth }
    }

    /// `true_atoms` must be a subset of `signature`.
    pub fn from_true_atoms<'a>(
        signature: &Signature,
        true_atoms: impl IntoIterator<Item = &'a str>,
    ) -> Result<BoolInterpretation> {
        let mut truth = alloc::vec![false; signature.len()];
        for a in true_atoms {
            let i = signature
                .index_of(a)
                .ok_or_else(|| Error::UnknownAtom(a.into()))?;
            truth[i] = true;
        }
        Ok(BoolInterpretation {
            signature: signature.clone(),
            truth,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn bits(&self) -> &[bool] {
        &self.truth
    }

    pub fn contains(&self, atom: &str) -> Option<bool> {
        self.signature.index_of(atom).map(|i| self.truth[i])
    }

    pub fn true_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.signature
            .iter()
            .zip(self.truth.iter())
            .filter(|(_, &t)| t)
            .map(|(a, _)| a)
    }

    /// Every subset of `sig`, in binary counting order (first atom most
    /// significant).
    pub fn enumerate(sig: &Signature) -> impl Iterator<Item = BoolInterpretation> + '_ {
        let n = sig.len();
        assert!(n < 64, "signature too large for subset enumeration");
        (0..1u64 << n).map(move |mask| {
            let truth = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
            BoolInterpretation::new(sig.clone(), truth)
        })
    }
}

impl fmt::Display for BoolInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.true_atoms().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for BoolInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    /// Serialized as a JSON object `{atom: "num/den"}`.
    impl Serialize for Interpretation {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            use serde::ser::SerializeMap;
            let mut m = s.serialize_map(Some(self.values.len()))?;
            for (a, v) in self.iter() {
                m.serialize_entry(a.as_str(), &v)?;
            }
            m.end()
        }
    }

    impl<'de> Deserialize<'de> for Interpretation {
        fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
            let map = BTreeMap::<alloc::string::String, Truth>::deserialize(d)?;
            Ok(Interpretation::from_pairs(
                map.iter().map(|(k, v)| (k.as_str(), *v)),
            ))
        }
    }
}
