//! Reidemeister moves on Gauss codes: site enumeration and application.
//!
//! Moves are expressed directly on the passage sequence.  Insertions name
//! arcs (slots between consecutive passages, `0..=2n`); deletions and slides
//! name crossing ids.  Every applied move corresponds to a planar move in a
//! neighborhood of the strand, so it preserves the presented knot; the
//! invariant layer relies on this as its fuzzing oracle.
//!
//! The move set is sound but deliberately not complete: a site is offered
//! only when the local over/under and sign pattern is realizable by an
//! honest second or third move.  In particular a second-move pair must have
//! one strand passing over the other at both new crossings, and a third move
//! requires a top or bottom strand on the triangle (the cyclic
//! over-dominance pattern admits no slide) together with the matching sign
//! pattern.

use rand::Rng;

use crate::diagram::{assemble, Diagram, Role};
use crate::{Error, Result};

/// A site where a Reidemeister move applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSite {
    /// Insert an isolated kink chord at `arc`.
    R1Insert { arc: usize, over_first: bool, sign: i8 },
    /// Delete the kink chord `id` (its passages must be adjacent).
    R1Delete { id: usize },
    /// Insert a parallel pair of opposite-sign chords, the first two
    /// passages at `arc_first`, the other two at `arc_second`.
    ///
    /// `nested` chooses the chord pattern `[a b .. b a]` over `[a b .. a b]`;
    /// `over_first` puts the over-strand at `arc_first`; `sign_first` is the
    /// sign of the chord whose passage comes first.
    R2Insert { arc_first: usize, arc_second: usize, nested: bool, over_first: bool, sign_first: i8 },
    /// Delete a cancelling pair of chords created as by [`MoveSite::R2Insert`].
    R2Delete { id_a: usize, id_b: usize },
    /// Slide on the triangle spanned by three chords whose six passages form
    /// three adjacent pairs.
    R3 { ids: [usize; 3] },
}

/// Applies a move, returning the new diagram (crossings renumbered
/// canonically).  Fails with [`Error::InvalidSite`] if the site does not
/// describe a legal move on `d`.
pub fn apply_rmove(d: &Diagram, site: MoveSite) -> Result<Diagram> {
    match site {
        MoveSite::R1Insert { arc, over_first, sign } => r1_insert(d, arc, over_first, sign),
        MoveSite::R1Delete { id } => r1_delete(d, id),
        MoveSite::R2Insert { arc_first, arc_second, nested, over_first, sign_first } => {
            r2_insert(d, arc_first, arc_second, nested, over_first, sign_first)
        }
        MoveSite::R2Delete { id_a, id_b } => r2_delete(d, id_a, id_b),
        MoveSite::R3 { ids } => r3_slide(d, ids),
    }
}

/// All sites where a move applies to `d`.
///
/// Insertion sites are enumerated over every arc (and arc pair), so the list
/// grows quadratically with the diagram; random fuzzing should prefer
/// [`random_rmove`].
pub fn enumerate_rmoves(d: &Diagram) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    let arcs = d.arc_count();
    for arc in 0..arcs {
        for over_first in [true, false] {
            for sign in [1i8, -1i8] {
                sites.push(MoveSite::R1Insert { arc, over_first, sign });
            }
        }
    }
    for id in 1..=d.n() {
        if r1_deletable(d, id) {
            sites.push(MoveSite::R1Delete { id });
        }
    }
    for arc_first in 0..arcs {
        for arc_second in arc_first..arcs {
            for nested in [true, false] {
                for over_first in [true, false] {
                    for sign_first in [1i8, -1i8] {
                        sites.push(MoveSite::R2Insert {
                            arc_first,
                            arc_second,
                            nested,
                            over_first,
                            sign_first,
                        });
                    }
                }
            }
        }
    }
    for id_a in 1..=d.n() {
        for id_b in (id_a + 1)..=d.n() {
            if r2_deletable(d, id_a, id_b) {
                sites.push(MoveSite::R2Delete { id_a, id_b });
            }
        }
    }
    for x in 1..=d.n() {
        for y in (x + 1)..=d.n() {
            for z in (y + 1)..=d.n() {
                if r3_site(d, [x, y, z]).is_some() {
                    sites.push(MoveSite::R3 { ids: [x, y, z] });
                }
            }
        }
    }
    sites
}

/// Picks a random applicable move, bounding the crossing count by
/// `max_crossings`; returns the site and the moved diagram.
///
/// Sampling is rejection-based (bounded tries per class), so the result may
/// be `None` on diagrams with few applicable moves.
pub fn random_rmove<R: Rng>(
    d: &Diagram,
    rng: &mut R,
    max_crossings: usize,
) -> Option<(MoveSite, Diagram)> {
    let arcs = d.arc_count();
    for _ in 0..40 {
        let class = rng.gen_range(0..5);
        let candidate = match class {
            0 if d.n() + 1 <= max_crossings => MoveSite::R1Insert {
                arc: rng.gen_range(0..arcs),
                over_first: rng.gen_bool(0.5),
                sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            },
            1 => {
                let deletable: Vec<usize> = (1..=d.n()).filter(|&id| r1_deletable(d, id)).collect();
                if deletable.is_empty() {
                    continue;
                }
                MoveSite::R1Delete { id: deletable[rng.gen_range(0..deletable.len())] }
            }
            2 if d.n() + 2 <= max_crossings => {
                let a = rng.gen_range(0..arcs);
                let b = rng.gen_range(0..arcs);
                MoveSite::R2Insert {
                    arc_first: a.min(b),
                    arc_second: a.max(b),
                    nested: rng.gen_bool(0.5),
                    over_first: rng.gen_bool(0.5),
                    sign_first: if rng.gen_bool(0.5) { 1 } else { -1 },
                }
            }
            3 => {
                let mut pairs = Vec::new();
                for id_a in 1..=d.n() {
                    for id_b in (id_a + 1)..=d.n() {
                        if r2_deletable(d, id_a, id_b) {
                            pairs.push((id_a, id_b));
                        }
                    }
                }
                if pairs.is_empty() {
                    continue;
                }
                let (id_a, id_b) = pairs[rng.gen_range(0..pairs.len())];
                MoveSite::R2Delete { id_a, id_b }
            }
            4 if d.n() >= 3 => {
                let mut ids = [0usize; 3];
                let mut found = false;
                for _ in 0..40 {
                    let mut pick: Vec<usize> = (1..=d.n()).collect();
                    for k in 0..3 {
                        let j = rng.gen_range(k..pick.len());
                        pick.swap(k, j);
                        ids[k] = pick[k];
                    }
                    ids.sort_unstable();
                    if r3_site(d, ids).is_some() {
                        found = true;
                        break;
                    }
                }
                if !found {
                    continue;
                }
                MoveSite::R3 { ids }
            }
            _ => continue,
        };
        if let Ok(moved) = apply_rmove(d, candidate) {
            return Some((candidate, moved));
        }
    }
    None
}

type Raw = Vec<(Role, u64, Option<i8>)>;

fn raw_of(d: &Diagram) -> Raw {
    d.passages()
        .iter()
        .map(|p| (p.role, p.id as u64, Some(d.sign(p.id))))
        .collect()
}

fn r1_insert(d: &Diagram, arc: usize, over_first: bool, sign: i8) -> Result<Diagram> {
    if arc >= d.arc_count() || !(sign == 1 || sign == -1) {
        return Err(Error::InvalidSite);
    }
    let label = d.n() as u64 + 1;
    let (first, second) = if over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
    let mut raw = raw_of(d);
    raw.insert(arc, (second, label, Some(sign)));
    raw.insert(arc, (first, label, Some(sign)));
    assemble(raw)
}

fn r1_deletable(d: &Diagram, id: usize) -> bool {
    if id == 0 || id > d.n() {
        return false;
    }
    let (p, q) = d.occurrences(id);
    q == p + 1
}

fn r1_delete(d: &Diagram, id: usize) -> Result<Diagram> {
    if !r1_deletable(d, id) {
        return Err(Error::InvalidSite);
    }
    let raw: Raw = raw_of(d).into_iter().filter(|(_, label, _)| *label != id as u64).collect();
    assemble(raw)
}

fn r2_insert(
    d: &Diagram,
    arc_first: usize,
    arc_second: usize,
    nested: bool,
    over_first: bool,
    sign_first: i8,
) -> Result<Diagram> {
    let arcs = d.arc_count();
    if arc_first > arc_second || arc_second >= arcs || !(sign_first == 1 || sign_first == -1) {
        return Err(Error::InvalidSite);
    }
    let a = d.n() as u64 + 1;
    let b = d.n() as u64 + 2;
    let role_first = if over_first { Role::Over } else { Role::Under };
    let role_second = role_first.flipped();
    // Chord layout along the strand: [a b .. a b] parallel, [a b .. b a] nested.
    let (third, fourth) = if nested { (b, a) } else { (a, b) };
    let mut raw = raw_of(d);
    raw.insert(arc_second, (role_second, fourth, None));
    raw.insert(arc_second, (role_second, third, None));
    raw.insert(arc_first, (role_first, b, Some(-sign_first)));
    raw.insert(arc_first, (role_first, a, Some(sign_first)));
    assemble(raw)
}

fn r2_deletable(d: &Diagram, id_a: usize, id_b: usize) -> bool {
    if id_a == 0 || id_b == 0 || id_a > d.n() || id_b > d.n() || id_a == id_b {
        return false;
    }
    if d.sign(id_a) + d.sign(id_b) != 0 {
        return false;
    }
    let (a1, a2) = d.occurrences(id_a);
    let (b1, b2) = d.occurrences(id_b);
    // First passages adjacent, second passages adjacent.
    if a1.abs_diff(b1) != 1 || a2.abs_diff(b2) != 1 {
        return false;
    }
    let ps = d.passages();
    // One strand passes over the other at both crossings: equal roles within
    // each adjacent pair, opposite roles across the two pairs.
    ps[a1].role == ps[b1].role && ps[a2].role == ps[b2].role && ps[a1].role != ps[a2].role
}

fn r2_delete(d: &Diagram, id_a: usize, id_b: usize) -> Result<Diagram> {
    if !r2_deletable(d, id_a, id_b) {
        return Err(Error::InvalidSite);
    }
    let raw: Raw = raw_of(d)
        .into_iter()
        .filter(|(_, label, _)| *label != id_a as u64 && *label != id_b as u64)
        .collect();
    assemble(raw)
}

/// The three adjacent passage pairs of a valid slide triangle, in strand
/// order, or `None` when the ids do not form a slidable triangle.
fn r3_site(d: &Diagram, ids: [usize; 3]) -> Option<[usize; 3]> {
    let [x, y, z] = ids;
    if x == 0 || z > d.n() || !(x < y && y < z) {
        return None;
    }
    let mut positions: Vec<usize> = Vec::with_capacity(6);
    for id in ids {
        let (p, q) = d.occurrences(id);
        positions.push(p);
        positions.push(q);
    }
    positions.sort_unstable();
    let sites = [positions[0], positions[2], positions[4]];
    // Three disjoint segments, each carrying two consecutive passages.
    if positions[1] != sites[0] + 1 || positions[3] != sites[1] + 1 || positions[5] != sites[2] + 1 {
        return None;
    }
    if sites[0] + 1 >= sites[1] || sites[1] + 1 >= sites[2] {
        return None;
    }
    let ps = d.passages();
    let site_of = |pos: usize| sites.iter().position(|&s| pos == s || pos == s + 1);
    // Chord connecting segment i and segment j, for i < j.
    let mut chord = [[None::<usize>; 3]; 3];
    for id in ids {
        let (p, q) = d.occurrences(id);
        let (si, sj) = (site_of(p)?, site_of(q)?);
        if si == sj {
            return None;
        }
        let (lo, hi) = (si.min(sj), si.max(sj));
        if chord[lo][hi].replace(id).is_some() {
            return None;
        }
    }
    let c12 = chord[0][1]?;
    let c13 = chord[0][2]?;
    let c23 = chord[1][2]?;

    let passage_in = |id: usize, s: usize| -> usize {
        let (p, q) = d.occurrences(id);
        if p == sites[s] || p == sites[s] + 1 {
            p
        } else {
            q
        }
    };
    let sgn = |b: bool| if b { 1i8 } else { -1i8 };
    // Over/under of each chord as seen from its earlier segment.
    let or12 = sgn(ps[passage_in(c12, 0)].role == Role::Over);
    let or13 = sgn(ps[passage_in(c13, 0)].role == Role::Over);
    let or23 = sgn(ps[passage_in(c23, 1)].role == Role::Over);
    // The triangle admits a slide unless each strand is over exactly one
    // other (cyclic dominance).
    if (or12, or13, or23) == (1, -1, 1) || (or12, or13, or23) == (-1, 1, -1) {
        return None;
    }
    // Passage order within each segment.
    let sx = sgn(passage_in(c12, 0) < passage_in(c13, 0));
    let sy = sgn(passage_in(c12, 1) < passage_in(c23, 1));
    let sz = sgn(passage_in(c13, 2) < passage_in(c23, 2));
    // Crossing signs must agree with one planar placement of the triangle.
    let chi12 = d.sign(c12) * or12 * sx * sy;
    let chi13 = d.sign(c13) * or13 * sx * sz;
    let chi23 = d.sign(c23) * or23 * sy * sz;
    (chi12 == chi13 && chi13 == chi23).then_some(sites)
}

fn r3_slide(d: &Diagram, ids: [usize; 3]) -> Result<Diagram> {
    let sites = r3_site(d, ids).ok_or(Error::InvalidSite)?;
    let mut raw = raw_of(d);
    for s in sites {
        raw.swap(s, s + 1);
    }
    assemble(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn r1_insert_and_delete_are_inverse() {
        let base = d("U2+ O1+ O2+ U1+");
        for arc in 0..base.arc_count() {
            for over_first in [true, false] {
                for sign in [1i8, -1] {
                    let site = MoveSite::R1Insert { arc, over_first, sign };
                    let bigger = apply_rmove(&base, site).unwrap();
                    assert_eq!(bigger.n(), 3);
                    let kink = bigger
                        .passages()
                        .windows(2)
                        .find(|w| w[0].id == w[1].id)
                        .map(|w| w[0].id)
                        .unwrap();
                    let back = apply_rmove(&bigger, MoveSite::R1Delete { id: kink }).unwrap();
                    assert_eq!(back, base);
                }
            }
        }
        let empty = apply_rmove(&d("O1+ U1+"), MoveSite::R1Delete { id: 1 }).unwrap();
        assert!(empty.is_empty());
        // Non-adjacent passages are not a kink.
        assert_eq!(
            apply_rmove(&d("U2+ O1+ O2+ U1+"), MoveSite::R1Delete { id: 1 }),
            Err(Error::InvalidSite)
        );
    }

    #[test]
    fn r2_insert_and_delete_are_inverse() {
        let base = d("O1+ U1+");
        for arc_first in 0..base.arc_count() {
            for arc_second in arc_first..base.arc_count() {
                for nested in [true, false] {
                    for over_first in [true, false] {
                        let site = MoveSite::R2Insert {
                            arc_first,
                            arc_second,
                            nested,
                            over_first,
                            sign_first: 1,
                        };
                        let bigger = apply_rmove(&base, site).unwrap();
                        assert_eq!(bigger.n(), 3);
                        let restored = (1..=3).flat_map(|a| (a + 1..=3).map(move |b| (a, b))).any(
                            |(id_a, id_b)| {
                                apply_rmove(&bigger, MoveSite::R2Delete { id_a, id_b })
                                    .is_ok_and(|back| back == base)
                            },
                        );
                        assert!(restored, "no deletable pair restores the base at {site:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn r2_delete_requires_the_valid_pattern() {
        // One strand over the other at both crossings: deletable.
        assert!(r2_deletable(&d("O1+ O2- U1+ U2-"), 1, 2));
        assert!(r2_deletable(&d("O1+ O2- U2- U1+"), 1, 2));
        // Alternating over/under along one strand is not a second move.
        assert!(!r2_deletable(&d("O1+ U2- U1+ O2-"), 1, 2));
        assert!(!r2_deletable(&d("O1+ U2- O2- U1+"), 1, 2));
        // Equal signs cancel nothing.
        assert!(!r2_deletable(&d("O1+ O2+ U1+ U2+"), 1, 2));
        // Passages must pair up adjacently.
        assert!(!r2_deletable(&d("O1+ O2- U1+ O3+ U2- U3+"), 1, 2));
    }

    #[test]
    fn r3_slides_a_top_strand_triangle() {
        // First segment passes over both others: slidable.
        let t = d("O1+ O2+ U3+ U1+ O3+ U2+");
        let slid = apply_rmove(&t, MoveSite::R3 { ids: [1, 2, 3] }).unwrap();
        assert_eq!(slid.to_string(), "O1+ O2+ U2+ U3+ U1+ O3+");
        // Sliding back returns the original diagram.
        let back = apply_rmove(&slid, MoveSite::R3 { ids: [1, 2, 3] }).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn r3_rejects_cyclic_dominance_and_bad_signs() {
        // The alternating trefoil triangle has no top or bottom strand.
        let trefoil = d("O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(
            apply_rmove(&trefoil, MoveSite::R3 { ids: [1, 2, 3] }),
            Err(Error::InvalidSite)
        );
        // Same passage pattern as the slidable triangle, wrong sign mix.
        assert_eq!(
            apply_rmove(&d("O1- O2+ U3+ U1- O3+ U2+"), MoveSite::R3 { ids: [1, 2, 3] }),
            Err(Error::InvalidSite)
        );
        // Chords not forming three adjacent pairs.
        assert_eq!(
            apply_rmove(&d("O1+ O2+ U3+ O4+ U4+ U1+ O3+ U2+"), MoveSite::R3 { ids: [1, 2, 3] }),
            Err(Error::InvalidSite)
        );
    }

    #[test]
    fn enumerate_offers_only_applicable_sites() {
        for code in ["", "O1+ U1+", "U2+ O1+ O2+ U1+", "O1+ O2+ U3+ U1+ O3+ U2+"] {
            let base = d(code);
            let sites = enumerate_rmoves(&base);
            assert!(!sites.is_empty());
            for site in sites {
                apply_rmove(&base, site).unwrap_or_else(|e| {
                    panic!("enumerated site {site:?} failed on {code:?}: {e}")
                });
            }
        }
    }

    #[test]
    fn random_rmove_stays_within_bounds() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut cur = d("U2+ O1+ O2+ U1+");
        for _ in 0..200 {
            if let Some((_, next)) = random_rmove(&cur, &mut rng, 9) {
                assert!(next.n() <= 9);
                // A kink insertion or deletion shifts one writhe by one;
                // every other move keeps both writhes fixed.
                let delta = (next.writhe(0) - cur.writhe(0)).abs()
                    + (next.writhe(1) - cur.writhe(1)).abs();
                assert!(delta <= 1, "move changed writhes by {delta}");
                cur = next;
            }
        }
    }
}
