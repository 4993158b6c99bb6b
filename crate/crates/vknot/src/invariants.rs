//! The writhe polynomials, the twelve intersection polynomials, closed-knot
//! invariants, and the executable identity suite.
//!
//! For a diagram with crossing signs `eps_i`, types `a_i`, indices `v_i` and
//! intersection matrix `M_ij` (see [`crate::surface`]), with `I_a` the set of
//! type-`a` crossings and `omega_a` the `a`-writhe:
//!
//! ```text
//! W_a  = sum_{i in I_a} eps_i (t^{v_i} - 1)
//! F_ab = sum_{i in I_a, j in I_b} eps_i eps_j (t^{M_ij} - 1)
//! G_ab = sum_{i in I_a, j in I_b} eps_i eps_j (t^{v_i - M_ij} - 1) - omega_b W_a(t)
//! H_ab = sum_{i in I_a, j in I_b} eps_i eps_j (t^{M_ij + v_j - v_i} - 1)
//!        - omega_a W_b(t) - omega_b W_a(1/t)
//! ```
//!
//! All fourteen polynomials are invariants of the presented long knot.  The
//! identity suite in [`check_identities`] re-derives the relations they must
//! satisfy (vanishing at `t = 1`, reciprocity and inversion symmetries,
//! behavior under the three symmetry operators and concatenation, closure
//! well-definedness, and the consequences of small supporting genus) and is
//! the main correctness oracle for the whole computation chain.

use num_bigint::BigInt;

use crate::diagram::{ClosedDiagram, Diagram};
use crate::surface::{homology_data, two_boundary_genus, HomologyData};
use crate::{Poly, Result};

/// Which family of intersection polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    F,
    G,
    H,
}

impl Kind {
    /// All three kinds.
    pub const ALL: [Kind; 3] = [Kind::F, Kind::G, Kind::H];

    /// The letter used in output and target names.
    pub fn letter(self) -> char {
        match self {
            Kind::F => 'F',
            Kind::G => 'G',
            Kind::H => 'H',
        }
    }
}

/// The fourteen polynomial invariants of a long diagram, plus its writhes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBundle {
    /// `W_0`, `W_1`.
    pub w: [Poly; 2],
    /// `F_ab` indexed `[a][b]`.
    pub f: [[Poly; 2]; 2],
    /// `G_ab` indexed `[a][b]`.
    pub g: [[Poly; 2]; 2],
    /// `H_ab` indexed `[a][b]`.
    pub h: [[Poly; 2]; 2],
    /// `omega_0`, `omega_1`.
    pub omega: [i64; 2],
}

impl InvariantBundle {
    /// The polynomial for `kind` at indices `(a, b)`.
    pub fn get(&self, kind: Kind, a: usize, b: usize) -> &Poly {
        match kind {
            Kind::F => &self.f[a][b],
            Kind::G => &self.g[a][b],
            Kind::H => &self.h[a][b],
        }
    }

    /// Whether all fourteen polynomials agree with `other`'s (the raw
    /// writhe counts are allowed to differ).
    pub fn same_polynomials(&self, other: &Self) -> bool {
        self.w == other.w && self.f == other.f && self.g == other.g && self.h == other.h
    }

    /// Whether all fourteen polynomials vanish.
    pub fn is_zero(&self) -> bool {
        self.w.iter().all(Poly::is_zero)
            && Kind::ALL
                .iter()
                .all(|&k| (0..2).all(|a| (0..2).all(|b| self.get(k, a, b).is_zero())))
    }

    fn zero() -> Self {
        let z = Poly::zero;
        InvariantBundle {
            w: [z(), z()],
            f: [[z(), z()], [z(), z()]],
            g: [[z(), z()], [z(), z()]],
            h: [[z(), z()], [z(), z()]],
            omega: [0, 0],
        }
    }
}

/// The `a`-writhe polynomial `W_a`.
pub fn writhe_poly(d: &Diagram, a: u8) -> Result<Poly> {
    let h = homology_data(d)?;
    Ok(writhe_from(d, &h, a))
}

fn writhe_from(d: &Diagram, h: &HomologyData, a: u8) -> Poly {
    let mut w = Poly::zero();
    for id in d.type_ids(a) {
        let term = Poly::t_pow_minus_one(h.v_of(id));
        if d.sign(id) > 0 {
            w += &term;
        } else {
            w -= &term;
        }
    }
    w
}

/// Computes all fourteen invariants of the diagram.
pub fn invariant_bundle(d: &Diagram) -> Result<InvariantBundle> {
    Ok(bundle_from(d, &homology_data(d)?))
}

/// Assembles the bundle from precomputed homology data (which must belong to
/// the same diagram).
pub fn bundle_from(d: &Diagram, hom: &HomologyData) -> InvariantBundle {
    let mut bundle = InvariantBundle::zero();
    bundle.omega = [d.writhe(0), d.writhe(1)];
    for a in 0..2u8 {
        bundle.w[a as usize] = writhe_from(d, hom, a);
    }
    let crossing_type =
        |id: usize| d.crossing_type(id).expect("valid id") as usize;
    let n = d.n();
    for i in 1..=n {
        let a = crossing_type(i);
        for j in 1..=n {
            let b = crossing_type(j);
            let eps = (d.sign(i) * d.sign(j)) as i64;
            let m_ij = hom.m_of(i, j);
            let (v_i, v_j) = (hom.v_of(i), hom.v_of(j));
            for (acc, exponent) in [
                (&mut bundle.f, m_ij),
                (&mut bundle.g, v_i - m_ij),
                (&mut bundle.h, m_ij + v_j - v_i),
            ] {
                let term = Poly::t_pow_minus_one(exponent).scale(&BigInt::from(eps));
                acc[a][b] += &term;
            }
        }
    }
    for a in 0..2 {
        for b in 0..2 {
            let wa = &bundle.w[a];
            let wb = &bundle.w[b];
            bundle.g[a][b] -= &wa.scale(&BigInt::from(bundle.omega[b]));
            let correction = wb.scale(&BigInt::from(bundle.omega[a]))
                + wa.invert_var().scale(&BigInt::from(bundle.omega[b]));
            bundle.h[a][b] -= &correction;
        }
    }
    bundle
}

/// The two invariants of a closed virtual knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedInvariants {
    /// Writhe polynomial of the closure.
    pub w: Poly,
    /// Intersection polynomial of the closure.
    pub i: Poly,
}

/// Invariants of a closed diagram, computed by cutting it open anywhere:
/// `W = W_0(t) + W_1(1/t)` and `I = F_01(t) + G_00(t) + G_11(1/t) + H_01(1/t)`.
/// The result does not depend on the cut arc.
pub fn closed_invariants(c: &ClosedDiagram) -> Result<ClosedInvariants> {
    if c.is_empty() {
        return Ok(ClosedInvariants { w: Poly::zero(), i: Poly::zero() });
    }
    let bundle = invariant_bundle(&c.cut(0)?)?;
    Ok(closed_from(&bundle))
}

/// The closed-knot invariants as read off a bundle of any cut.
pub fn closed_from(bundle: &InvariantBundle) -> ClosedInvariants {
    let w = bundle.w[0].clone() + bundle.w[1].invert_var();
    let i = bundle.f[0][1].clone()
        + &bundle.g[0][0]
        + bundle.g[1][1].invert_var()
        + bundle.h[0][1].invert_var();
    ClosedInvariants { w, i }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    /// Behavior-describing name of the identity.
    pub name: String,
    /// Whether the identity held exactly.
    pub pass: bool,
    /// On failure, the two sides that differed.
    pub detail: String,
}

fn eq_check(name: impl Into<String>, lhs: &Poly, rhs: &Poly) -> IdentityCheck {
    let pass = lhs == rhs;
    IdentityCheck {
        name: name.into(),
        pass,
        detail: if pass { String::new() } else { format!("lhs = {lhs}, rhs = {rhs}") },
    }
}

fn predicate_check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> IdentityCheck {
    IdentityCheck {
        name: name.into(),
        pass,
        detail: if pass { String::new() } else { detail.into() },
    }
}

/// Evaluates every applicable internal identity on `d` (and the pairwise
/// concatenation identities when `other` is given), returning one record per
/// identity with exact polynomial comparisons.
pub fn check_identities(d: &Diagram, other: Option<&Diagram>) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    let bundle = invariant_bundle(d)?;

    // Every invariant vanishes at t = 1.
    let mut all_vanish = true;
    for a in 0..2 {
        all_vanish &= bundle.w[a].eval_one() == BigInt::from(0);
        for b in 0..2 {
            for k in Kind::ALL {
                all_vanish &= bundle.get(k, a, b).eval_one() == BigInt::from(0);
            }
        }
    }
    out.push(predicate_check("all_vanish_at_one", all_vanish, "some invariant is nonzero at t=1"));

    // Built-in symmetries of the bundle.
    out.push(eq_check("f01_equals_f10_inverted", &bundle.f[0][1], &bundle.f[1][0].invert_var()));
    out.push(eq_check("h01_equals_h10_inverted", &bundle.h[0][1], &bundle.h[1][0].invert_var()));
    for (name, p) in [
        ("f00_reciprocal", &bundle.f[0][0]),
        ("f11_reciprocal", &bundle.f[1][1]),
        ("h00_reciprocal", &bundle.h[0][0]),
        ("h11_reciprocal", &bundle.h[1][1]),
    ] {
        out.push(predicate_check(name, p.is_reciprocal(), format!("{p} is not reciprocal")));
    }
    for (name, p) in [("g00_derivative_zero_at_one", &bundle.g[0][0]), ("g11_derivative_zero_at_one", &bundle.g[1][1])] {
        out.push(predicate_check(
            name,
            p.deriv_eval_one() == BigInt::from(0),
            format!("derivative of {p} at 1 is {}", p.deriv_eval_one()),
        ));
    }

    // Symmetry operators.
    let flipped = invariant_bundle(&d.sym_flip())?;
    let reversed = invariant_bundle(&d.sym_reverse())?;
    let reflected = invariant_bundle(&d.sym_reflect())?;
    for a in 0..2 {
        out.push(eq_check(format!("flip_w{a}"), &flipped.w[a], &(-bundle.w[1 - a].clone())));
        out.push(eq_check(format!("reverse_w{a}"), &reversed.w[a], &bundle.w[1 - a]));
        out.push(eq_check(
            format!("reflect_w{a}"),
            &reflected.w[a],
            &(-bundle.w[a].invert_var()),
        ));
    }
    for k in Kind::ALL {
        for a in 0..2 {
            for b in 0..2 {
                let x = k.letter();
                out.push(eq_check(
                    format!("flip_{x}{a}{b}"),
                    flipped.get(k, a, b),
                    bundle.get(k, 1 - a, 1 - b),
                ));
                out.push(eq_check(
                    format!("reverse_{x}{a}{b}"),
                    reversed.get(k, a, b),
                    bundle.get(k, 1 - a, 1 - b),
                ));
                out.push(eq_check(
                    format!("reflect_{x}{a}{b}"),
                    reflected.get(k, a, b),
                    &bundle.get(k, a, b).invert_var(),
                ));
            }
        }
    }

    // Writhe normalization does not change any invariant.
    let untwisted = invariant_bundle(&d.untwist())?;
    out.push(predicate_check(
        "untwist_preserves_invariants",
        untwisted.w == bundle.w && untwisted.f == bundle.f && untwisted.g == bundle.g && untwisted.h == bundle.h,
        "untwisting changed the bundle",
    ));

    // Closure invariants are independent of the cut arc.
    let closed = closed_from(&bundle);
    let mut cut_ok = true;
    let mut cut_detail = String::new();
    let closure = d.close();
    for k in 0..closure.len() {
        let recut = closed_from(&invariant_bundle(&closure.cut(k)?)?);
        if recut != closed {
            cut_ok = false;
            cut_detail = format!("cut at arc {k}: W = {}, expected {}", recut.w, closed.w);
            break;
        }
    }
    out.push(predicate_check("closure_cut_independent", cut_ok, cut_detail));

    // Consequences of a small closed-surface genus (sufficient condition:
    // this very diagram realizes the knot at genus <= 1).
    if homology_data(d)?.genus() <= 1 {
        let combos: [(&str, Poly); 3] = [
            ("genus1_w_difference_reciprocal", bundle.w[0].clone() - &bundle.w[1]),
            (
                "genus1_f01_g00_g11_h01_reciprocal",
                bundle.f[0][1].clone() + &bundle.g[0][0] - &bundle.g[1][1] - &bundle.h[0][1],
            ),
            (
                "genus1_g_alternating_sum_reciprocal",
                bundle.g[0][0].clone() - &bundle.g[0][1] - &bundle.g[1][0] + &bundle.g[1][1],
            ),
        ];
        for (name, p) in combos {
            out.push(predicate_check(name, p.is_reciprocal(), format!("{p} is not reciprocal")));
        }
    }

    // Consequences of an annular presentation (two-boundary bound 0).
    if two_boundary_genus(d)? == 0 {
        out.push(eq_check("annulus_w0_equals_w1", &bundle.w[0], &bundle.w[1]));
        let mut fg_zero = true;
        for a in 0..2 {
            for b in 0..2 {
                fg_zero &= bundle.f[a][b].is_zero() && bundle.g[a][b].is_zero();
            }
        }
        out.push(predicate_check("annulus_f_g_vanish", fg_zero, "some F or G is nonzero"));
        let product = &bundle.w[0] * &bundle.w[0].invert_var();
        let mut h_ok = true;
        for a in 0..2 {
            for b in 0..2 {
                h_ok &= bundle.h[a][b] == product;
            }
        }
        out.push(predicate_check(
            "annulus_h_equals_w0_product",
            h_ok,
            format!("H differs from W0(t) W0(1/t) = {product}"),
        ));
    }

    // A single crossing of one type forces its diagonal F and G to vanish.
    if d.type_ids(0).len() == 1 {
        out.push(predicate_check(
            "single_type0_f00_g00_zero",
            bundle.f[0][0].is_zero() && bundle.g[0][0].is_zero(),
            format!("F00 = {}, G00 = {}", bundle.f[0][0], bundle.g[0][0]),
        ));
    }
    if d.type_ids(1).len() == 1 {
        out.push(predicate_check(
            "single_type1_f11_g11_zero",
            bundle.f[1][1].is_zero() && bundle.g[1][1].is_zero(),
            format!("F11 = {}, G11 = {}", bundle.f[1][1], bundle.g[1][1]),
        ));
    }

    // Concatenation rules.
    if let Some(d2) = other {
        let b2 = invariant_bundle(d2)?;
        let joined = invariant_bundle(&d.concatenate(d2))?;
        for a in 0..2 {
            out.push(eq_check(
                format!("concat_w{a}_additive"),
                &joined.w[a],
                &(bundle.w[a].clone() + &b2.w[a]),
            ));
        }
        for a in 0..2 {
            for b in 0..2 {
                out.push(eq_check(
                    format!("concat_f{a}{b}_additive"),
                    &joined.f[a][b],
                    &(bundle.f[a][b].clone() + &b2.f[a][b]),
                ));
                out.push(eq_check(
                    format!("concat_g{a}{b}_additive"),
                    &joined.g[a][b],
                    &(bundle.g[a][b].clone() + &b2.g[a][b]),
                ));
                let cross = &bundle.w[a].invert_var() * &b2.w[b]
                    + &(&b2.w[a].invert_var() * &bundle.w[b]);
                out.push(eq_check(
                    format!("concat_h{a}{b}_cross_term"),
                    &joined.h[a][b],
                    &(bundle.h[a][b].clone() + &b2.h[a][b] + &cross),
                ));
            }
        }
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn bundle(s: &str) -> InvariantBundle {
        invariant_bundle(&d(s)).unwrap()
    }

    #[test]
    fn two_crossing_annular_example() {
        let b = bundle("U2+ O1+ O2+ U1+");
        assert_eq!(b.omega, [1, 1]);
        assert_eq!(b.w[0], p("t-1"));
        assert_eq!(b.w[1], p("t-1"));
        for a in 0..2 {
            for bb in 0..2 {
                assert_eq!(b.f[a][bb], Poly::zero(), "F{a}{bb}");
                assert_eq!(b.g[a][bb], Poly::zero(), "G{a}{bb}");
                assert_eq!(b.h[a][bb], p("-t+2-t^-1"), "H{a}{bb}");
            }
        }
    }

    #[test]
    fn two_crossing_spiral_example() {
        let b = bundle("O1+ O2+ U1+ U2+");
        assert_eq!(b.omega, [2, 0]);
        assert_eq!(b.w[0], p("t-2+t^-1"));
        assert_eq!(b.w[1], Poly::zero());
        assert_eq!(b.f[0][0], p("t-2+t^-1"));
        assert_eq!(b.g[0][0], p("-t+2-t^-1"));
        assert_eq!(b.h[0][0], p("-3t+6-3t^-1"));
        for (a, bb) in [(0, 1), (1, 0), (1, 1)] {
            assert_eq!(b.f[a][bb], Poly::zero());
            assert_eq!(b.g[a][bb], Poly::zero());
            assert_eq!(b.h[a][bb], Poly::zero());
        }
    }

    #[test]
    fn asymmetric_three_crossing_example() {
        // This code pins the global orientation: its two writhe polynomials
        // have positive exponents only.
        let b = bundle("U1+ O2+ O3+ O1+ U3+ U2+");
        assert_eq!(b.w[0], p("2t-2"));
        assert_eq!(b.w[1], p("t^2-1"));
    }

    #[test]
    fn planar_codes_have_zero_bundles() {
        for code in ["", "O1+ U1+", "O1- U1-", "O1+ U2+ O3+ U1+ O2+ U3+"] {
            assert!(bundle(code).is_zero(), "{code}");
        }
        assert!(!bundle("U2+ O1+ O2+ U1+").is_zero());
    }

    #[test]
    fn closed_invariants_of_small_examples() {
        let c = d("U2+ O1+ O2+ U1+").close();
        let ci = closed_invariants(&c).unwrap();
        assert_eq!(ci.w, p("t-2+t^-1"));
        assert_eq!(ci.i, p("-t+2-t^-1"));
        let empty = closed_invariants(&Diagram::empty().close()).unwrap();
        assert_eq!(empty.w, Poly::zero());
        assert_eq!(empty.i, Poly::zero());
    }

    #[test]
    fn identity_suite_passes_on_samples() {
        let pairs = [
            ("U2+ O1+ O2+ U1+", Some("O1+ O2+ U1+ U2+")),
            ("U1+ O2+ O3+ O1+ U3+ U2+", Some("U2+ O1+ O2+ U1+")),
            ("O1+ U2+ O3+ U1+ O2+ U3+", None),
            ("O1- U2+ U1- O2+", None),
            ("", Some("O1+ U1+")),
        ];
        for (code, other) in pairs {
            let d2 = other.map(|s| s.parse::<Diagram>().unwrap());
            let checks = check_identities(&d(code), d2.as_ref()).unwrap();
            for c in checks {
                assert!(c.pass, "{code}: {} failed: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn writhe_poly_matches_bundle() {
        let dd = d("U1+ O2+ O3+ O1+ U3+ U2+");
        let b = invariant_bundle(&dd).unwrap();
        assert_eq!(writhe_poly(&dd, 0).unwrap(), b.w[0]);
        assert_eq!(writhe_poly(&dd, 1).unwrap(), b.w[1]);
    }
}
