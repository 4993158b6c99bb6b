//! Long virtual knot diagrams presented as based Gauss codes.
//!
//! A diagram is a linear sequence of over/under passages through signed
//! crossings, read from the start of the long strand (at `-infinity`) to its
//! end.  The text form is whitespace-separated tokens `O<label><sign>` /
//! `U<label><sign>`, e.g. `O1+ U2+ O3+ U1+ O2+ U3+`.  Virtual crossings are
//! not represented: the Gauss code determines the virtual knot.
//!
//! The module also provides the closure (forgetting the basepoint), cutting a
//! closed diagram back open, concatenation, the three symmetry operators, and
//! writhe normalization; Reidemeister moves live in [`moves`].

pub mod moves;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Whether the strand passes over or under at a passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    /// The other role.
    pub fn flipped(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One passage of the strand through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    /// Crossing id, `1..=n` in a validated diagram.
    pub id: usize,
    /// Over or under.
    pub role: Role,
}

/// A long virtual knot diagram: based Gauss code with signs.
///
/// Invariants: each crossing id in `1..=n` occurs exactly twice, once `Over`
/// and once `Under`; ids are numbered by first occurrence along the strand;
/// each crossing carries a single sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    passages: Vec<Passage>,
    signs: Vec<i8>,
}

/// A closed virtual knot diagram: the cyclic sequence left after forgetting
/// the basepoint of a [`Diagram`].
#[derive(Clone, PartialEq, Eq)]
pub struct ClosedDiagram {
    passages: Vec<Passage>,
    signs: Vec<i8>,
}

impl Diagram {
    /// The empty diagram (unknotted long strand).
    pub fn empty() -> Self {
        Diagram { passages: Vec::new(), signs: Vec::new() }
    }

    /// Number of crossings `n`.
    pub fn n(&self) -> usize {
        self.signs.len()
    }

    /// Number of passages, `2n`.
    pub fn len(&self) -> usize {
        self.passages.len()
    }

    /// Whether the diagram has no crossings.
    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    /// Number of arcs (insertion slots between consecutive passages,
    /// including the two half-infinite ends): `2n + 1`.
    pub fn arc_count(&self) -> usize {
        self.len() + 1
    }

    /// The passage sequence.
    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// The sign of crossing `id`.
    ///
    /// # Panics
    /// If `id` is not in `1..=n`.
    pub fn sign(&self, id: usize) -> i8 {
        self.signs[id - 1]
    }

    /// Positions of the two passages of crossing `id`, in strand order.
    pub fn occurrences(&self, id: usize) -> (usize, usize) {
        let mut found = [usize::MAX; 2];
        let mut k = 0;
        for (pos, p) in self.passages.iter().enumerate() {
            if p.id == id {
                found[k] = pos;
                k += 1;
            }
        }
        debug_assert_eq!(k, 2, "crossing id {id} must occur twice");
        (found[0], found[1])
    }

    /// Type of crossing `id`: `0` if its `Over` passage comes first along the
    /// strand, `1` otherwise.
    pub fn crossing_type(&self, id: usize) -> Result<u8> {
        if id == 0 || id > self.n() {
            return Err(Error::UnknownCrossing(id));
        }
        let first = self
            .passages
            .iter()
            .find(|p| p.id == id)
            .expect("validated diagram contains both passages");
        Ok(match first.role {
            Role::Over => 0,
            Role::Under => 1,
        })
    }

    /// Crossing ids of the requested type, ascending.
    pub fn type_ids(&self, a: u8) -> Vec<usize> {
        (1..=self.n())
            .filter(|&id| self.crossing_type(id).expect("id in range") == a)
            .collect()
    }

    /// The `a`-writhe: signed count of type-`a` crossings.
    pub fn writhe(&self, a: u8) -> i64 {
        self.type_ids(a).iter().map(|&id| self.sign(id) as i64).sum()
    }

    /// A strand position with exactly one passage of every crossing on each
    /// side, if one exists (`None` when the diagram has no crossings).
    pub fn common_cut(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let mut seen = vec![false; self.n() + 1];
        let (mut max_first, mut min_second) = (0usize, usize::MAX);
        for (pos, p) in self.passages.iter().enumerate() {
            if seen[p.id] {
                min_second = min_second.min(pos);
            } else {
                seen[p.id] = true;
                max_first = max_first.max(pos);
            }
        }
        (max_first < min_second).then_some(max_first + 1)
    }

    /// Appends `other` after `self`, relabeling its crossings.
    pub fn concatenate(&self, other: &Diagram) -> Diagram {
        let shift = self.n();
        let mut passages = self.passages.clone();
        passages.extend(
            other.passages.iter().map(|p| Passage { id: p.id + shift, role: p.role }),
        );
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Diagram { passages, signs }
    }

    /// Splices `other` into the strand before passage index `at`,
    /// relabeling its crossings past this diagram's.
    pub fn insert(&self, at: usize, other: &Diagram) -> Diagram {
        let shift = self.n();
        let mut passages = self.passages[..at].to_vec();
        passages.extend(
            other.passages.iter().map(|p| Passage { id: p.id + shift, role: p.role }),
        );
        passages.extend_from_slice(&self.passages[at..]);
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Diagram { passages, signs }
    }

    /// Switches `Over`/`Under` on every passage and negates every sign
    /// (the mirror operator that exchanges the two crossing types).
    pub fn sym_flip(&self) -> Diagram {
        Diagram {
            passages: self
                .passages
                .iter()
                .map(|p| Passage { id: p.id, role: p.role.flipped() })
                .collect(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// Reverses the orientation of the strand (passages in reverse order,
    /// roles and signs kept); crossings are then renumbered canonically.
    pub fn sym_reverse(&self) -> Diagram {
        let reversed: Vec<Passage> = self.passages.iter().rev().copied().collect();
        relabel(&reversed, |id| self.sign(id))
    }

    /// Negates every crossing sign (reflection of the ambient surface).
    pub fn sym_reflect(&self) -> Diagram {
        Diagram {
            passages: self.passages.clone(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// Appends isolated kinks at the end of the strand until both writhes
    /// vanish; the result presents the same knot via first moves only.
    pub fn untwist(&self) -> Diagram {
        let mut out = self.clone();
        for a in [0u8, 1u8] {
            let w = out.writhe(a);
            let kink_sign = if w > 0 { -1i8 } else { 1i8 };
            for _ in 0..w.unsigned_abs() {
                let id = out.n() + 1;
                let (first, second) = match a {
                    0 => (Role::Over, Role::Under),
                    _ => (Role::Under, Role::Over),
                };
                out.passages.push(Passage { id, role: first });
                out.passages.push(Passage { id, role: second });
                out.signs.push(kink_sign);
            }
        }
        debug_assert_eq!(out.writhe(0), 0);
        debug_assert_eq!(out.writhe(1), 0);
        out
    }

    /// Forgets the basepoint.
    pub fn close(&self) -> ClosedDiagram {
        ClosedDiagram { passages: self.passages.clone(), signs: self.signs.clone() }
    }

    /// JSON form `{"passages": [["O",1,1], ["U",2,1], ...]}`; the sign
    /// appears as a third entry on the first occurrence of each crossing.
    pub fn to_json(&self) -> serde_json::Value {
        let mut seen = vec![false; self.n()];
        let passages: Vec<serde_json::Value> = self
            .passages
            .iter()
            .map(|p| {
                let first = !seen[p.id - 1];
                seen[p.id - 1] = true;
                if first {
                    serde_json::json!([p.role.to_string(), p.id, self.sign(p.id)])
                } else {
                    serde_json::json!([p.role.to_string(), p.id])
                }
            })
            .collect();
        serde_json::json!({ "passages": passages })
    }

    /// Parses the JSON form produced by [`Diagram::to_json`].  Signs may be
    /// given on either or both occurrences but must agree.
    pub fn from_json(value: &serde_json::Value) -> Result<Diagram> {
        let list = value
            .get("passages")
            .and_then(|p| p.as_array())
            .ok_or_else(|| Error::MalformedToken(value.to_string()))?;
        let raw = list.iter().map(passage_from_json).collect::<Result<Vec<_>>>()?;
        assemble(raw)
    }
}

/// Parses one `[role, label]` or `[role, label, sign]` JSON passage entry.
pub(crate) fn passage_from_json(value: &serde_json::Value) -> Result<(Role, u64, Option<i8>)> {
    let err = || Error::MalformedToken(value.to_string());
    let entry = value.as_array().ok_or_else(err)?;
    if entry.len() != 2 && entry.len() != 3 {
        return Err(err());
    }
    let role = match entry[0].as_str() {
        Some("O") => Role::Over,
        Some("U") => Role::Under,
        _ => return Err(err()),
    };
    let label = entry[1].as_u64().ok_or_else(err)?;
    let sign = match entry.get(2) {
        None => None,
        Some(v) => match v.as_i64() {
            Some(1) => Some(1i8),
            Some(-1) => Some(-1i8),
            _ => return Err(err()),
        },
    };
    Ok((role, label, sign))
}

impl ClosedDiagram {
    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.signs.len()
    }

    /// Number of passages, `2n`.
    pub fn len(&self) -> usize {
        self.passages.len()
    }

    /// Whether the closed diagram has no crossings.
    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    /// Re-opens the diagram with the basepoint on arc `k`, i.e. just before
    /// the passage at position `k` of the stored cyclic order.
    pub fn cut(&self, k: usize) -> Result<Diagram> {
        if k >= self.len() {
            return Err(Error::ArcOutOfRange(k, self.len()));
        }
        let rotated: Vec<Passage> =
            self.passages[k..].iter().chain(&self.passages[..k]).copied().collect();
        Ok(relabel(&rotated, |id| self.signs[id - 1]))
    }
}

/// Renumbers crossing ids by first occurrence along `passages`, pulling each
/// crossing's sign from `sign_of` (keyed by old id).
fn relabel(passages: &[Passage], sign_of: impl Fn(usize) -> i8) -> Diagram {
    let mut new_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut signs = Vec::new();
    let mut out = Vec::with_capacity(passages.len());
    for p in passages {
        let id = *new_id.entry(p.id).or_insert_with(|| {
            signs.push(sign_of(p.id));
            signs.len()
        });
        out.push(Passage { id, role: p.role });
    }
    Diagram { passages: out, signs }
}

/// Validates raw passages `(role, label, optional sign)` and renumbers labels
/// to `1..=n` by first occurrence.
pub(crate) fn assemble(raw: Vec<(Role, u64, Option<i8>)>) -> Result<Diagram> {
    let mut count: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, label, _) in &raw {
        *count.entry(*label).or_insert(0) += 1;
    }
    for (label, c) in &count {
        if *c != 2 {
            return Err(Error::LabelCountNotTwo(*label, *c));
        }
    }
    let mut role_seen: BTreeMap<u64, Role> = BTreeMap::new();
    let mut sign_seen: BTreeMap<u64, i8> = BTreeMap::new();
    for (role, label, sign) in &raw {
        if let Some(prev) = role_seen.insert(*label, *role) {
            if prev == *role {
                return Err(Error::RoleDuplicated(*label, *role));
            }
        }
        if let Some(s) = sign {
            debug_assert!(*s == 1 || *s == -1);
            if let Some(prev) = sign_seen.insert(*label, *s) {
                if prev != *s {
                    return Err(Error::SignMismatch(*label));
                }
            }
        }
    }
    for label in count.keys() {
        if !sign_seen.contains_key(label) {
            return Err(Error::SignMismatch(*label));
        }
    }
    // Renumber labels to 1..=n by first occurrence.
    let mut order: BTreeMap<u64, usize> = BTreeMap::new();
    for (_, label, _) in &raw {
        let next = order.len() + 1;
        order.entry(*label).or_insert(next);
    }
    let passages: Vec<Passage> = raw
        .iter()
        .map(|(role, label, _)| Passage { id: order[label], role: *role })
        .collect();
    let mut signs = vec![0i8; order.len()];
    for (label, new) in &order {
        signs[new - 1] = sign_seen[label];
    }
    Ok(Diagram { passages, signs })
}

impl FromStr for Diagram {
    type Err = Error;

    /// Parses whitespace-separated tokens `O<label><sign>` / `U<label><sign>`.
    /// An empty (or all-whitespace) string is the empty diagram.
    fn from_str(s: &str) -> Result<Diagram> {
        let mut raw = Vec::new();
        for token in s.split_whitespace() {
            raw.push(parse_token(token)?);
        }
        assemble(raw)
    }
}

/// Parses one Gauss-code token such as `O12+` or `U3-`.
pub(crate) fn parse_token(token: &str) -> Result<(Role, u64, Option<i8>)> {
    let err = || Error::MalformedToken(token.to_string());
    let mut chars = token.chars();
    let role = match chars.next() {
        Some('O') => Role::Over,
        Some('U') => Role::Under,
        _ => return Err(err()),
    };
    let rest: Vec<char> = chars.collect();
    if rest.len() < 2 {
        return Err(err());
    }
    let sign = match rest[rest.len() - 1] {
        '+' => 1i8,
        '-' => -1i8,
        _ => return Err(err()),
    };
    let digits: String = rest[..rest.len() - 1].iter().collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let label: u64 = digits.parse().map_err(|_| err())?;
    Ok((role, label, Some(sign)))
}

/// Generates a uniformly interleaved random diagram with up to `max_n`
/// crossings: a shuffled multiset of labels, independent random roles and
/// signs.  Drawing from the same generator state reproduces the diagram.
pub fn random_diagram<R: rand::Rng + ?Sized>(rng: &mut R, max_n: usize) -> Diagram {
    use rand::seq::SliceRandom;
    let n = rng.gen_range(0..=max_n);
    let mut slots: Vec<u64> = (1..=n as u64).flat_map(|k| [k, k]).collect();
    slots.shuffle(rng);
    let mut first_role: BTreeMap<u64, Role> = BTreeMap::new();
    let mut signs: BTreeMap<u64, i8> = BTreeMap::new();
    let raw: Vec<(Role, u64, Option<i8>)> = slots
        .into_iter()
        .map(|label| {
            let role = match first_role.get(&label) {
                Some(&r) => r.flipped(),
                None => {
                    let r = if rng.gen::<bool>() { Role::Over } else { Role::Under };
                    first_role.insert(label, r);
                    signs.insert(label, if rng.gen::<bool>() { 1 } else { -1 });
                    r
                }
            };
            (role, label, Some(signs[&label]))
        })
        .collect();
    assemble(raw).expect("random construction is well formed")
}

impl fmt::Display for Diagram {
    /// Canonical Gauss-code text: every token carries the crossing sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.passages.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let sign = if self.sign(p.id) > 0 { '+' } else { '-' };
            write!(f, "{}{}{}", p.role, p.id, sign)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

impl fmt::Debug for ClosedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cut(0) {
            Ok(d) => write!(f, "ClosedDiagram({d})"),
            Err(_) => write!(f, "ClosedDiagram()"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let trefoil = "O1+ U2+ O3+ U1+ O2+ U3+";
        assert_eq!(d(trefoil).to_string(), trefoil);
        assert_eq!(d("").to_string(), "");
        assert_eq!(d("  \n ").n(), 0);
        // Labels are renumbered by first occurrence.
        assert_eq!(d("O7- U9+ U7- O9+").to_string(), "O1- U2+ U1- O2+");
    }

    #[test]
    fn parse_rejects_malformed_codes() {
        use crate::Error::*;
        assert_eq!("X1+".parse::<Diagram>(), Err(MalformedToken("X1+".into())));
        assert_eq!("O+".parse::<Diagram>(), Err(MalformedToken("O+".into())));
        assert_eq!("O1".parse::<Diagram>(), Err(MalformedToken("O1".into())));
        assert_eq!("O1*".parse::<Diagram>(), Err(MalformedToken("O1*".into())));
        assert_eq!("O1+ U2- O2-".parse::<Diagram>(), Err(LabelCountNotTwo(1, 1)));
        assert_eq!("O1+ O1+".parse::<Diagram>(), Err(RoleDuplicated(1, Role::Over)));
        assert_eq!("O1+ U1-".parse::<Diagram>(), Err(SignMismatch(1)));
    }

    #[test]
    fn crossing_data() {
        let j1 = d("U2+ O1+ O2+ U1+");
        assert_eq!(j1.n(), 2);
        // Renumbering: the first-seen label becomes id 1.
        assert_eq!(j1.to_string(), "U1+ O2+ O1+ U2+");
        assert_eq!(j1.crossing_type(1).unwrap(), 1);
        assert_eq!(j1.crossing_type(2).unwrap(), 0);
        assert_eq!(j1.crossing_type(3), Err(crate::Error::UnknownCrossing(3)));
        assert_eq!(j1.occurrences(1), (0, 2));
        assert_eq!(j1.occurrences(2), (1, 3));
        assert_eq!(j1.type_ids(0), vec![2]);
        assert_eq!(j1.type_ids(1), vec![1]);
        assert_eq!(j1.writhe(0), 1);
        assert_eq!(j1.writhe(1), 1);
        assert_eq!(d("O1+ U1+").writhe(0), 1);
        assert_eq!(d("O1+ U1+").writhe(1), 0);
        assert_eq!(Diagram::empty().writhe(0), 0);
    }

    #[test]
    fn untwist_kills_both_writhes() {
        let k = d("O1+ U1+");
        let u = k.untwist();
        assert_eq!(u.n(), 2);
        assert_eq!(u.writhe(0), 0);
        assert_eq!(u.writhe(1), 0);
        assert_eq!(u.to_string(), "O1+ U1+ O2- U2-");
        let j1 = d("U2+ O1+ O2+ U1+");
        let u = j1.untwist();
        assert_eq!(u.writhe(0), 0);
        assert_eq!(u.writhe(1), 0);
        assert_eq!(u.n(), 4);
        // An untwisted diagram is a fixed point.
        assert_eq!(u.untwist(), u);
    }

    #[test]
    fn symmetry_operators() {
        let j1 = d("U2+ O1+ O2+ U1+");
        assert_eq!(j1.sym_flip().to_string(), "O1- U2- U1- O2-");
        assert_eq!(j1.sym_flip().sym_flip(), j1);
        assert_eq!(j1.sym_reflect().to_string(), "U1- O2- O1- U2-");
        assert_eq!(j1.sym_reflect().sym_reflect(), j1);
        assert_eq!(j1.sym_reverse().to_string(), "U1+ O2+ O1+ U2+");
        assert_eq!(j1.sym_reverse().sym_reverse(), j1);
        // Writhe behavior: flip exchanges and negates, reverse exchanges.
        let k = d("O1+ U1+ U2- O2-");
        assert_eq!(k.sym_flip().writhe(0), -k.writhe(1));
        assert_eq!(k.sym_flip().writhe(1), -k.writhe(0));
        assert_eq!(k.sym_reverse().writhe(0), k.writhe(1));
        assert_eq!(k.sym_reverse().writhe(1), k.writhe(0));
    }

    #[test]
    fn concatenation() {
        let j1 = d("U2+ O1+ O2+ U1+");
        assert_eq!(j1.concatenate(&Diagram::empty()), j1);
        assert_eq!(Diagram::empty().concatenate(&j1), j1);
        let two = j1.concatenate(&j1);
        assert_eq!(two.to_string(), "U1+ O2+ O1+ U2+ U3+ O4+ O3+ U4+");
        assert_eq!(two.writhe(0), 2);
    }

    #[test]
    fn close_and_cut() {
        let j1 = d("U2+ O1+ O2+ U1+");
        let c = j1.close();
        assert_eq!(c.cut(0).unwrap(), j1);
        assert_eq!(c.cut(1).unwrap().to_string(), "O1+ O2+ U1+ U2+");
        assert_eq!(c.cut(4), Err(crate::Error::ArcOutOfRange(4, 4)));
        // Cutting all the way around returns to the start.
        let mut back = c.cut(2).unwrap().close();
        back = back.cut(2).unwrap().close();
        assert_eq!(back.cut(0).unwrap(), j1);
    }

    #[test]
    fn json_round_trip() {
        let j1 = d("U2+ O1- O2+ U1-");
        let v = j1.to_json();
        assert_eq!(
            v,
            serde_json::json!({
                "passages": [["U", 1, 1], ["O", 2, -1], ["O", 1], ["U", 2]]
            })
        );
        assert_eq!(Diagram::from_json(&v).unwrap(), j1);
        // Signs may appear on both occurrences if consistent.
        let both = serde_json::json!({ "passages": [["O",1,1],["U",1,1]] });
        assert_eq!(Diagram::from_json(&both).unwrap(), d("O1+ U1+"));
        let clash = serde_json::json!({ "passages": [["O",1,1],["U",1,-1]] });
        assert_eq!(Diagram::from_json(&clash), Err(crate::Error::SignMismatch(1)));
        let missing = serde_json::json!({ "passages": [["O",1],["U",1]] });
        assert_eq!(Diagram::from_json(&missing), Err(crate::Error::SignMismatch(1)));
    }
}
