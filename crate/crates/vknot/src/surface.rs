//! The canonical closed surface of a based diagram and its homology pairing.
//!
//! A Gauss code determines a ribbon graph: one 4-valent vertex per crossing,
//! one 2-valent vertex at the basepoint, and one edge per arc of the strand;
//! the cyclic dart order at each crossing encodes how the two strands cross.
//! Thickening and capping the boundary yields the canonical closed oriented
//! surface on which the diagram lives; its genus is computed from the Euler
//! characteristic via face tracing.
//!
//! On that surface, each crossing `c` carries the smoothing cycle `alpha_c`
//! (the strand segment between the two passages of `c`, closed by the
//! oriented smoothing corner at `c`), and the whole strand closes to the
//! cycle `gamma`.  [`HomologyData`] holds the homological intersection
//! numbers `v_i = alpha_i . gamma` and `M_ij = alpha_i . alpha_j`, computed
//! by a local rule: cycles are drawn through each vertex disk, the second
//! cycle is pushed off to the left of the first, and transversal chord pairs
//! in the disk are counted with the sign of their frame.
//!
//! [`two_boundary_genus`] measures the analogous open construction with the
//! two strand ends left free; it upper-bounds the genus needed to present
//! the knot between two boundary circles.

use crate::diagram::{Diagram, Role};
use crate::{Error, Result};

/// An oriented ribbon graph: vertices with a counterclockwise cyclic dart
/// order, edges as dart pairs `2e`/`2e + 1`.
#[derive(Debug, Clone)]
pub struct RibbonGraph {
    rotations: Vec<Vec<usize>>,
    vertex_of_dart: Vec<usize>,
    slot_of_dart: Vec<usize>,
}

impl RibbonGraph {
    fn new(rotations: Vec<Vec<usize>>) -> Self {
        let dart_count: usize = rotations.iter().map(Vec::len).sum();
        debug_assert_eq!(dart_count % 2, 0);
        let mut vertex_of_dart = vec![usize::MAX; dart_count];
        let mut slot_of_dart = vec![usize::MAX; dart_count];
        for (v, rot) in rotations.iter().enumerate() {
            for (slot, &d) in rot.iter().enumerate() {
                debug_assert_eq!(vertex_of_dart[d], usize::MAX, "dart {d} listed twice");
                vertex_of_dart[d] = v;
                slot_of_dart[d] = slot;
            }
        }
        debug_assert!(vertex_of_dart.iter().all(|&v| v != usize::MAX));
        RibbonGraph { rotations, vertex_of_dart, slot_of_dart }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.vertex_of_dart.len() / 2
    }

    /// Number of darts, `2 * edge_count`.
    pub fn dart_count(&self) -> usize {
        self.vertex_of_dart.len()
    }

    /// The other dart of the same edge.
    pub fn partner(&self, dart: usize) -> usize {
        dart ^ 1
    }

    /// The vertex a dart is attached to.
    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex_of_dart[dart]
    }

    /// Counterclockwise dart order at each vertex.
    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    fn prev_at_vertex(&self, dart: usize) -> usize {
        let rot = &self.rotations[self.vertex_of_dart[dart]];
        let slot = self.slot_of_dart[dart];
        rot[(slot + rot.len() - 1) % rot.len()]
    }

    /// Face id per dart and the number of faces of the thickened graph.
    pub fn face_classes(&self) -> (Vec<usize>, usize) {
        let mut class = vec![usize::MAX; self.dart_count()];
        let mut faces = 0;
        for start in 0..self.dart_count() {
            if class[start] != usize::MAX {
                continue;
            }
            let mut d = start;
            loop {
                class[d] = faces;
                d = self.prev_at_vertex(self.partner(d));
                if d == start {
                    break;
                }
            }
            faces += 1;
        }
        (class, faces)
    }

    /// Number of faces.
    pub fn face_count(&self) -> usize {
        self.face_classes().1
    }

    fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotations[v] {
                let w = self.vertex_of_dart[self.partner(d)];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Genus of the closed surface obtained by thickening and capping.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let chi = self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64;
        debug_assert_eq!(chi % 2, 0);
        debug_assert!(chi <= 2);
        Ok(((2 - chi) / 2) as usize)
    }
}

/// Local sign rule used when pairing cycles; the non-standard variant exists
/// so tests can verify that the validation suite catches a wrong rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairingRule {
    /// The orientation-correct rule.
    #[default]
    Standard,
    /// Negates every contribution involving a smoothing corner — a seeded
    /// fault for mutation testing, not a usable convention.
    CornerSignFlipped,
}

/// Intersection data of the smoothing cycles on the canonical surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyData {
    v: Vec<i64>,
    m: Vec<Vec<i64>>,
    genus: usize,
}

impl HomologyData {
    /// `v_i = alpha_i . gamma`, indexed by crossing id minus one.
    pub fn v(&self) -> &[i64] {
        &self.v
    }

    /// `M_ij = alpha_i . alpha_j` (antisymmetric), 0-indexed.
    pub fn m(&self) -> &[Vec<i64>] {
        &self.m
    }

    /// Genus of the canonical closed surface.
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `v_i` for crossing id `i` (1-based).
    pub fn v_of(&self, i: usize) -> i64 {
        self.v[i - 1]
    }

    /// `M_ij` for crossing ids `i`, `j` (1-based).
    pub fn m_of(&self, i: usize, j: usize) -> i64 {
        self.m[i - 1][j - 1]
    }

    /// `alpha_i . beta_j = v_i - M_ij`; equals `v_i` when `i = j`.
    pub fn alpha_beta(&self, i: usize, j: usize) -> i64 {
        self.v_of(i) - self.m_of(i, j)
    }

    /// `beta_i . beta_j = M_ij + v_j - v_i`; zero when `i = j`.
    pub fn beta_beta(&self, i: usize, j: usize) -> i64 {
        self.m_of(i, j) + self.v_of(j) - self.v_of(i)
    }
}

/// Builds the ribbon graph of the diagram closed through its basepoint,
/// under the default orientation convention.
pub fn build_carter(d: &Diagram) -> RibbonGraph {
    build_carter_with(d, false)
}

/// As [`build_carter`]; `mirror` reverses every rotation, giving the
/// opposite surface orientation (all intersection numbers negate).
pub fn build_carter_with(d: &Diagram, mirror: bool) -> RibbonGraph {
    build_graph(d, true, mirror)
}

/// Crossing rotations plus either a basepoint vertex (`closed`) or two
/// 1-valent end vertices.
///
/// Arc `p` of the diagram is edge `p` with tail dart `2p` and head dart
/// `2p + 1`; arc `p > 0` runs from passage `p - 1` to passage `p`, arc `0`
/// from the start of the strand, arc `2n` to its end.
fn build_graph(d: &Diagram, closed: bool, mirror: bool) -> RibbonGraph {
    let n = d.n();
    let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(n + 2);
    for id in 1..=n {
        let (f, s) = d.occurrences(id);
        let (in1, out1) = (2 * f + 1, 2 * (f + 1));
        let (in2, out2) = (2 * s + 1, 2 * (s + 1));
        let sigma = crossing_orientation(d, id);
        let rot = if sigma > 0 { vec![out1, out2, in1, in2] } else { vec![out1, in2, in1, out2] };
        rotations.push(rot);
    }
    let last_head = 2 * (2 * n) + 1;
    if closed {
        rotations.push(vec![last_head, 0]);
    } else {
        rotations.push(vec![0]);
        rotations.push(vec![last_head]);
    }
    if mirror {
        for rot in &mut rotations {
            rot.reverse();
        }
    }
    RibbonGraph::new(rotations)
}

/// The local orientation of a crossing on the surface: its sign for type 0,
/// the negated sign for type 1.
fn crossing_orientation(d: &Diagram, id: usize) -> i8 {
    let type0 = d.passages()[d.occurrences(id).0].role == Role::Over;
    if type0 {
        d.sign(id)
    } else {
        -d.sign(id)
    }
}

/// Upper bound for the genus of a surface with two boundary circles that
/// presents the knot with one strand end on each circle.
///
/// Thickens the open ribbon graph (strand ends free).  If the two ends meet
/// different boundary circles, the other circles are capped and the genus of
/// the result is returned; otherwise the closed-surface genus, which always
/// suffices, is used.
pub fn two_boundary_genus(d: &Diagram) -> Result<usize> {
    let open = build_graph(d, false, false);
    if !open.is_connected() {
        return Err(Error::Disconnected);
    }
    let (class, b) = open.face_classes();
    let start_end = 0;
    let finish_end = open.dart_count() - 1;
    if class[start_end] != class[finish_end] {
        let n = d.n();
        debug_assert_eq!((n + 1 - b) % 2, 0);
        Ok((n + 1 - b) / 2)
    } else {
        build_carter(d).genus()
    }
}

/// One pass of a cycle through a vertex disk: it enters at one dart slot and
/// leaves at another, cutting a chord across the disk.
#[derive(Debug, Clone, Copy)]
struct Transition {
    vertex: usize,
    enter_slot: usize,
    exit_slot: usize,
    corner: bool,
}

/// A cycle on the surface, described by its vertex transitions.
struct Cycle {
    transitions: Vec<Transition>,
    /// Transition indices grouped by vertex, so pairing can look up the
    /// co-located transitions of the other cycle directly.
    by_vertex: Vec<Vec<u32>>,
}

impl Cycle {
    fn new(transitions: Vec<Transition>, vertices: usize) -> Self {
        let mut by_vertex = vec![Vec::new(); vertices];
        for (i, t) in transitions.iter().enumerate() {
            by_vertex[t.vertex].push(i as u32);
        }
        Cycle { transitions, by_vertex }
    }
}

struct Pairer {
    graph: RibbonGraph,
    rule: PairingRule,
}

impl Pairer {
    /// Straight passage of the strand through position `p`: in along arc `p`,
    /// out along arc `p + 1`.
    fn straight(&self, d: &Diagram, p: usize) -> Transition {
        let head = 2 * p + 1;
        let tail = 2 * (p + 1);
        Transition {
            vertex: d.passages()[p].id - 1,
            enter_slot: self.graph.slot_of_dart[head],
            exit_slot: self.graph.slot_of_dart[tail],
            corner: false,
        }
    }

    /// The smoothing cycle of crossing `id`: the strand from the first to
    /// the second passage of `id`, closed by the corner at its own vertex.
    fn alpha(&self, d: &Diagram, id: usize) -> Cycle {
        let (f, s) = d.occurrences(id);
        let mut transitions: Vec<Transition> = ((f + 1)..s).map(|p| self.straight(d, p)).collect();
        transitions.push(Transition {
            vertex: id - 1,
            enter_slot: self.graph.slot_of_dart[2 * s + 1],
            exit_slot: self.graph.slot_of_dart[2 * (f + 1)],
            corner: true,
        });
        transitions
            .iter()
            .for_each(|t| debug_assert!(t.vertex < d.n(), "alpha stays off the basepoint"));
        Cycle::new(transitions, d.n() + 1)
    }

    /// The full strand closed through the basepoint.
    fn gamma(&self, d: &Diagram) -> Cycle {
        let mut transitions: Vec<Transition> = (0..d.len()).map(|p| self.straight(d, p)).collect();
        let last_head = 2 * (2 * d.n()) + 1;
        transitions.push(Transition {
            vertex: d.n(),
            enter_slot: self.graph.slot_of_dart[last_head],
            exit_slot: self.graph.slot_of_dart[0],
            corner: false,
        });
        Cycle::new(transitions, d.n() + 1)
    }

    /// Homological intersection number `x . y`, with `y` pushed off to the
    /// left of `x` wherever they share a strand segment.
    fn pair(&self, x: &Cycle, y: &Cycle) -> i64 {
        let mut total = 0i64;
        for tx in &x.transitions {
            let len = self.rotations_len(tx.vertex);
            // Refine each dart slot into three micro-positions around the
            // disk; x sits in the middle, y shifted one step to its left
            // (earlier at entry, later at exit).
            let m = 3 * len as i64;
            let a1 = 3 * tx.enter_slot as i64 + 1;
            let b1 = 3 * tx.exit_slot as i64 + 1;
            for &ti in &y.by_vertex[tx.vertex] {
                let ty = &y.transitions[ti as usize];
                let a2 = 3 * ty.enter_slot as i64;
                let b2 = 3 * ty.exit_slot as i64 + 2;
                let rel = |p: i64| (p - a1).rem_euclid(m);
                let span = rel(b1);
                let enter_inside = 0 < rel(a2) && rel(a2) < span;
                let exit_inside = 0 < rel(b2) && rel(b2) < span;
                if enter_inside != exit_inside {
                    let mut contribution = if enter_inside { 1 } else { -1 };
                    if self.rule == PairingRule::CornerSignFlipped && (tx.corner || ty.corner) {
                        contribution = -contribution;
                    }
                    total += contribution;
                }
            }
        }
        total
    }

    fn rotations_len(&self, vertex: usize) -> usize {
        self.graph.rotations[vertex].len()
    }
}

/// Computes `v`, `M`, and the genus of the canonical closed surface.
pub fn homology_data(d: &Diagram) -> Result<HomologyData> {
    homology_data_with(d, false, PairingRule::Standard)
}

/// As [`homology_data`], with the orientation `mirror` flag and an explicit
/// [`PairingRule`].
pub fn homology_data_with(d: &Diagram, mirror: bool, rule: PairingRule) -> Result<HomologyData> {
    let graph = build_carter_with(d, mirror);
    let genus = graph.genus()?;
    let pairer = Pairer { graph, rule };
    let n = d.n();
    let alphas: Vec<Cycle> = (1..=n).map(|id| pairer.alpha(d, id)).collect();
    let gamma = pairer.gamma(d);
    let v: Vec<i64> = alphas.iter().map(|a| pairer.pair(a, &gamma)).collect();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m[i][j] = pairer.pair(&alphas[i], &alphas[j]);
            }
        }
    }
    if rule == PairingRule::Standard {
        for i in 0..n {
            debug_assert_eq!(m[i][i], 0);
            for j in 0..n {
                debug_assert_eq!(m[i][j], -m[j][i], "pairing must be antisymmetric");
            }
        }
    }
    Ok(HomologyData { v, m, genus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Diagram;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn genus_of(s: &str) -> usize {
        build_carter(&d(s)).genus().unwrap()
    }

    #[test]
    fn closed_surface_genus_of_known_codes() {
        assert_eq!(genus_of(""), 0);
        assert_eq!(genus_of("O1+ U1+"), 0);
        assert_eq!(genus_of("U1- O1-"), 0);
        // Planar long trefoil.
        assert_eq!(genus_of("O1+ U2+ O3+ U1+ O2+ U3+"), 0);
        // The 2-crossing codes needing a torus.
        assert_eq!(genus_of("O1+ U2+ U1+ O2+"), 1);
        assert_eq!(genus_of("O1+ O2+ U1+ U2+"), 1);
        assert_eq!(genus_of("U2+ O1+ O2+ U1+"), 1);
        // Three-strand spiral: still a torus.
        assert_eq!(genus_of("O1+ O2+ O3+ U1+ U2+ U3+"), 1);
        // Two torus blocks concatenated: handles do not merge.
        assert_eq!(genus_of("O1+ O2+ U1+ U2+ O3+ O4+ U3+ U4+"), 2);
    }

    #[test]
    fn graph_shape() {
        let g = build_carter(&d("U2+ O1+ O2+ U1+"));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.face_count(), 2);
        let empty = build_carter(&Diagram::empty());
        assert_eq!(empty.vertex_count(), 1);
        assert_eq!(empty.edge_count(), 1);
        assert_eq!(empty.face_count(), 2);
        assert_eq!(empty.genus().unwrap(), 0);
    }

    #[test]
    fn two_boundary_genus_of_known_codes() {
        assert_eq!(two_boundary_genus(&Diagram::empty()).unwrap(), 0);
        assert_eq!(two_boundary_genus(&d("O1+ U1+")).unwrap(), 0);
        assert_eq!(two_boundary_genus(&d("U2+ O1+ O2+ U1+")).unwrap(), 0);
        assert_eq!(two_boundary_genus(&d("O1+ U2+ O3+ U1+ O2+ U3+")).unwrap(), 0);
    }

    #[test]
    fn homology_of_small_codes() {
        let h = homology_data(&d("U2+ O1+ O2+ U1+")).unwrap();
        assert_eq!(h.v(), &[1, 1]);
        assert_eq!(h.m_of(1, 2), 0);
        assert_eq!(h.genus(), 1);

        let h = homology_data(&d("O1+ U2+ U1+ O2+")).unwrap();
        assert_eq!(h.v(), &[-1, -1]);
        assert_eq!(h.m_of(1, 2), 0);

        let h = homology_data(&d("O1+ O2+ U1+ U2+")).unwrap();
        assert_eq!(h.v(), &[1, -1]);
        assert_eq!(h.m_of(1, 2), 1);
        assert_eq!(h.m_of(2, 1), -1);

        // Planar codes pair trivially.
        for code in ["", "O1+ U1+", "O1+ U2+ O3+ U1+ O2+ U3+"] {
            let h = homology_data(&d(code)).unwrap();
            assert_eq!(h.genus(), 0);
            assert!(h.v().iter().all(|&x| x == 0), "{code}");
            assert!(h.m().iter().all(|row| row.iter().all(|&x| x == 0)), "{code}");
        }
    }

    #[test]
    fn derived_pairings_match_identities() {
        let h = homology_data(&d("O1+ O2+ U1+ U2+")).unwrap();
        // alpha_i . beta_i = v_i and beta_i . beta_i = 0.
        for i in 1..=2 {
            assert_eq!(h.alpha_beta(i, i), h.v_of(i));
            assert_eq!(h.beta_beta(i, i), 0);
        }
        assert_eq!(h.alpha_beta(1, 2), h.v_of(1) - h.m_of(1, 2));
        assert_eq!(h.beta_beta(1, 2), -h.beta_beta(2, 1));
    }

    #[test]
    fn mirror_negates_intersections() {
        for code in ["U2+ O1+ O2+ U1+", "O1+ O2+ U1+ U2+", "U1+ O2+ O3+ O1+ U3+ U2+"] {
            let plain = homology_data(&d(code)).unwrap();
            let mirrored = homology_data_with(&d(code), true, PairingRule::Standard).unwrap();
            assert_eq!(plain.genus(), mirrored.genus());
            let negated: Vec<i64> = plain.v().iter().map(|x| -x).collect();
            assert_eq!(mirrored.v(), &negated[..]);
            for i in 0..plain.v().len() {
                for j in 0..plain.v().len() {
                    assert_eq!(mirrored.m()[i][j], -plain.m()[i][j]);
                }
            }
        }
    }

    #[test]
    fn corner_mutant_departs_from_standard() {
        // The seeded fault must be observable so a validation pass that
        // recomputes pairings can catch a wrong corner sign.
        let code = d("O1+ O2+ U1+ U2+");
        let plain = homology_data(&code).unwrap();
        let mutant = homology_data_with(&code, false, PairingRule::CornerSignFlipped).unwrap();
        assert_eq!(plain.v(), mutant.v(), "corner arcs never meet the full strand");
        assert_ne!(plain.m(), mutant.m());
    }
}
