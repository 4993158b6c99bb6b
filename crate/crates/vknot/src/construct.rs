//! Constructions: the four benchmark families, the four library tangles,
//! realizing prescribed writhe and intersection polynomials, and the
//! supporting-genus bounds with the induced filtration label.
//!
//! The two supporting genera of a long knot are estimated from both sides:
//! upper bounds come from the closed-surface genus and the two-boundary
//! genus of the given presentation, lower bounds from polynomial
//! obstructions (a nonzero bundle, failed reciprocity combinations, and
//! failed annular laws).  The family constructors produce witnesses with
//! tight bounds at every size.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::diagram::{assemble, Diagram, Role};
use crate::invariants::{bundle_from, Kind};
use crate::surface::{homology_data, two_boundary_genus};
use crate::tangle::{swap_fh, TangleDiagram};
use crate::{Error, Poly, Result};

type RawToken = (Role, u64, Option<i8>);

/// The four benchmark families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    /// `K_n`: `n` concatenated copies of the two-crossing annular knot.
    K,
    /// `Kp_n`: a clasp tangle wrapped around `K_n`.
    Kp,
    /// `Kpp_n`: a three-crossing seed concatenated with spiral blocks.
    Kpp,
    /// `J_n`: an annular clasp block whose crossings carry index `n`.
    J,
}

impl std::str::FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            _ if s.eq_ignore_ascii_case("K") => Ok(FamilyName::K),
            _ if s.eq_ignore_ascii_case("Kp") => Ok(FamilyName::Kp),
            _ if s.eq_ignore_ascii_case("Kpp") => Ok(FamilyName::Kpp),
            _ if s.eq_ignore_ascii_case("J") => Ok(FamilyName::J),
            _ => Err(Error::BadParameter(format!("unknown family '{s}' (expected K, Kp, Kpp, or J)"))),
        }
    }
}

/// Builds the `n`-th member of a family (`n >= 1`).
pub fn family(name: FamilyName, n: usize) -> Result<Diagram> {
    if n == 0 {
        return Err(Error::BadParameter("family index must be at least 1".into()));
    }
    Ok(match name {
        FamilyName::J => family_j(n),
        FamilyName::K => {
            let block = family_j(1);
            let mut d = block.clone();
            for _ in 1..n {
                d = d.concatenate(&block);
            }
            d
        }
        FamilyName::Kp => tangle_t(1)?.tangle_sum(&family(FamilyName::K, n)?),
        FamilyName::Kpp => {
            let mut d: Diagram = "U1+ O2+ O3+ O1+ U3+ U2+".parse().expect("seed code");
            let block = family_j(2);
            for _ in 1..n {
                d = d.concatenate(&block);
            }
            d
        }
    })
}

/// The block `J_n`: the two-crossing clasp of `J_1` around a nest of
/// `n - 1` cancelling spiral pairs, so that both clasp crossings carry
/// index `n` while every spiral contribution cancels.  Each pair `(a, b)`
/// opens under inside the clasp (`a` with sign `+`, `b` with `-`), `a`
/// closes over inside the clasp, and `b` closes over after it.
fn family_j(n: usize) -> Diagram {
    let mut raw = Vec::with_capacity(4 * n);
    raw.push((Role::Under, 1u64, Some(1i8)));
    raw.push((Role::Over, 2, Some(1)));
    for k in 1..n as u64 {
        raw.push((Role::Under, 2 * k + 1, Some(1)));
        raw.push((Role::Under, 2 * k + 2, Some(-1)));
    }
    for k in (1..n as u64).rev() {
        raw.push((Role::Over, 2 * k + 1, Some(1)));
    }
    raw.push((Role::Over, 1, Some(1)));
    raw.push((Role::Under, 2, Some(1)));
    for k in 1..n as u64 {
        raw.push((Role::Over, 2 * k + 2, Some(-1)));
    }
    assemble(raw).expect("family code is well formed")
}

/// The four library tangles used by the realizability routes, numbered 1-4.
pub fn tangle_t(k: usize) -> Result<TangleDiagram> {
    let (a, b) = match k {
        1 => ("O1+", "U1+"),
        2 => ("U1- O2-", "O1- U2-"),
        3 => ("U1+", "O1+"),
        4 => ("U1-", "O1-"),
        _ => return Err(Error::BadParameter(format!("no library tangle {k} (expected 1-4)"))),
    };
    TangleDiagram::from_strand_texts(a, b)
}

/// Upper bound on how many passages a realization may build.
const MAX_REALIZATION_PASSAGES: u64 = 200_000;

/// Builds a long knot with `W_0 = W_1 = f` presented in an annulus
/// (two-boundary genus zero).  Requires `f(1) = 0`.
///
/// The strand spirals through a single nest whose winding number walks
/// from `0` down to the most negative exponent of `f` and back up to the
/// most positive one; for every term `c t^e` of `f`, `|c|` clasps hook
/// around the nest where the winding equals `e`.  Each clasp contributes
/// `sign(c) (t^e - 1)` to both writhe polynomials, the spiral crossings
/// cancel in signed pairs, and every crossing spans the turn of the nest,
/// so the result keeps a common cut.
pub fn realize_writhe(f: &Poly) -> Result<Diagram> {
    if f.eval_one() != BigInt::zero() {
        return Err(Error::ConditionViolated("a writhe polynomial vanishes at t = 1".into()));
    }
    let mut bmin = 0i64;
    let mut bmax = 0i64;
    let mut total_clasps: u64 = 0;
    for (e, c) in f.terms() {
        if e == 0 {
            continue;
        }
        bmin = bmin.min(e);
        bmax = bmax.max(e);
        total_clasps += c
            .abs()
            .to_u64()
            .ok_or_else(|| Error::BadParameter("coefficient too large to realize".into()))?;
    }
    if bmin < 0 && bmax > 0 {
        return mixed_nest(f, bmax as usize, (-bmin) as usize, total_clasps);
    }
    let down = (-bmin) as u64;
    let pairs = down + bmax as u64;
    if 4 * total_clasps + 4 * pairs > MAX_REALIZATION_PASSAGES {
        return Err(Error::BadParameter("requested realization too large".into()));
    }
    // Slot `k` counts `k` pairs below it; its winding is `-k` on the
    // descending leg and `k - 2*down` on the ascending one.
    let slot_of = |e: i64| if e < 0 { (-e) as usize } else { (e + 2 * down as i64) as usize };
    let mut batches: Vec<Option<(bool, u64)>> = vec![None; pairs as usize + 1];
    for (e, c) in f.terms() {
        if e != 0 {
            batches[slot_of(e)] = Some((c.is_negative(), c.abs().to_u64().unwrap()));
        }
    }
    let mut next: u64 = 1;
    let mut head = Vec::new();
    let mut exits: Vec<Vec<[RawToken; 2]>> = vec![Vec::new(); pairs as usize + 1];
    let mut pair_tokens = vec![(0u64, 0u64, 0i8); pairs as usize + 1];
    let mut tail = Vec::new();
    for k in (0..=pairs as usize).rev() {
        if let Some((negative, copies)) = batches[k] {
            // A clasp contributes `sign(c) (t^e - 1)`: its crossing signs
            // follow the coefficient, and it opens under first exactly when
            // that sign agrees with the handedness of the leg it hooks on.
            let sign = if negative { -1i8 } else { 1 };
            let leg_reversed = k <= down as usize;
            let under_first = negative == leg_reversed;
            for _ in 0..copies {
                let (a, b) = (next, next + 1);
                next += 2;
                if under_first {
                    head.push((Role::Under, a, Some(sign)));
                    head.push((Role::Over, b, Some(sign)));
                    exits[k].push([(Role::Under, b, Some(sign)), (Role::Over, a, Some(sign))]);
                } else {
                    head.push((Role::Over, a, Some(sign)));
                    head.push((Role::Under, b, Some(sign)));
                    exits[k].push([(Role::Over, b, Some(sign)), (Role::Under, a, Some(sign))]);
                }
            }
        }
        if k > 0 {
            let h: i8 = if k <= down as usize { -1 } else { 1 };
            let (o, e) = (next, next + 1);
            next += 2;
            head.push((Role::Under, o, Some(h)));
            head.push((Role::Under, e, Some(-h)));
            pair_tokens[k] = (o, e, h);
            tail.push((Role::Over, e, Some(-h)));
        }
    }
    let mut raw = head;
    for k in 0..=pairs as usize {
        // Clasps in one batch nest inside each other: last entered, first out.
        for exit in exits[k].iter().rev() {
            raw.extend_from_slice(exit);
        }
        if k < pairs as usize {
            let (o, _, h) = pair_tokens[k + 1];
            raw.push((Role::Over, o, Some(h)));
        }
    }
    raw.extend(tail);
    let out = assemble(raw)?;
    debug_assert!(out.is_empty() || out.common_cut().is_some());
    Ok(out)
}

/// Entry tokens of one clasp: the opening role follows the coefficient sign.
fn clasp_entries(a: u64, b: u64, s: i8) -> [RawToken; 2] {
    if s > 0 {
        [(Role::Over, a, Some(1)), (Role::Under, b, Some(1))]
    } else {
        [(Role::Under, a, Some(-1)), (Role::Over, b, Some(-1))]
    }
}

/// Exit token of a clasp's leading chord (opposite role to its entry).
fn a_exit(a: u64, s: i8) -> RawToken {
    if s > 0 { (Role::Under, a, Some(1)) } else { (Role::Over, a, Some(-1)) }
}

/// Exit token of a clasp's trailing chord.
fn b_exit(b: u64, s: i8) -> RawToken {
    if s > 0 { (Role::Over, b, Some(1)) } else { (Role::Under, b, Some(-1)) }
}

/// Exit order for a batch of clasps sharing one winding level: the last
/// trailing chord leaves first, then the clasps unwind in entry order.
fn exit_chain(ids: &[(u64, u64)], s: i8) -> Vec<RawToken> {
    let m = ids.len();
    let mut out = vec![b_exit(ids[m - 1].1, s)];
    for (i, &(a, b)) in ids.iter().enumerate() {
        out.push(a_exit(a, s));
        if i + 1 < m {
            out.push(b_exit(b, s));
        }
    }
    out
}

/// Realizer for targets mixing positive and negative exponents.  The strand
/// climbs through the positive winding levels, hooking clasp batches on the
/// way up (empty levels get a cancelling winding pair), crosses its base
/// level once, and descends a bracketed ladder holding the negative batches.
/// Auxiliary chords cancel pairwise in the writhe polynomials, the whole
/// diagram stays in an annulus, and all first passages precede all seconds.
fn mixed_nest(f: &Poly, p_top: usize, n_deep: usize, total_clasps: u64) -> Result<Diagram> {
    let aux = (p_top + n_deep) as u64;
    if 4 * total_clasps + 4 * aux + 2 > MAX_REALIZATION_PASSAGES {
        return Err(Error::BadParameter("requested realization too large".into()));
    }
    let levels: Vec<(i64, i8, u64)> = f
        .terms()
        .filter(|(e, _)| *e != 0)
        .map(|(e, c)| (e, if c.is_negative() { -1i8 } else { 1 }, c.abs().to_u64().unwrap()))
        .collect();
    let batch = |level: i64| levels.iter().find(|(e, _, _)| *e == level).map(|&(_, s, m)| (s, m));
    let mut next: u64 = 1;
    let ids = |m: u64, next: &mut u64| -> Vec<(u64, u64)> {
        (0..m)
            .map(|_| {
                let a = *next;
                *next += 2;
                (a, a + 1)
            })
            .collect()
    };

    let mut head: Vec<RawToken> = Vec::new();
    let mut lefts: Vec<Vec<RawToken>> = vec![Vec::new(); p_top];
    let mut rights: Vec<Vec<RawToken>> = vec![Vec::new(); p_top];
    let mut top_chain: Vec<RawToken> = Vec::new();
    for p in (1..=p_top).rev() {
        if let Some((s, m)) = batch(p as i64) {
            let grp = ids(m, &mut next);
            for &(a, b) in &grp {
                head.extend_from_slice(&clasp_entries(a, b, s));
            }
            let chain = exit_chain(&grp, s);
            if p == p_top {
                top_chain = chain;
            } else {
                lefts[p - 1] = chain[..1].to_vec();
                rights[p - 1] = chain[1..].to_vec();
            }
        } else {
            // Winding pair: templates alternate with the level's parity so
            // that every second passage feeds one unit to the spans it ends
            // inside of.
            let (x, y) = (next, next + 1);
            next += 2;
            let odd = p % 2 == 1;
            let (rf, rs) = if odd { (Role::Under, Role::Over) } else { (Role::Over, Role::Under) };
            let sgn: i8 = if odd { -1 } else { 1 };
            head.push((rf, x, Some(sgn)));
            head.push((rf, y, Some(-sgn)));
            lefts[p - 1] = vec![(rs, y, Some(-sgn))];
            rights[p - 1] = vec![(rs, x, Some(sgn))];
        }
    }
    let h_id = next;
    next += 1;
    head.push((Role::Over, h_id, Some(1)));

    let mut far: Vec<RawToken> = Vec::new();
    for p in 1..p_top {
        far.extend(lefts[p - 1].iter().copied());
    }
    far.extend(top_chain);
    for p in (1..p_top).rev() {
        far.extend(rights[p - 1].iter().copied());
    }
    far.push((Role::Under, h_id, Some(1)));

    let mut inner_firsts: Vec<RawToken> = Vec::new();
    for q in 1..=n_deep {
        let grp_batch = batch(-(q as i64));
        let grp = grp_batch.map(|(_, m)| ids(m, &mut next)).unwrap_or_default();
        if let Some((s, _)) = grp_batch {
            for &(a, b) in &grp {
                head.extend_from_slice(&clasp_entries(a, b, s));
            }
        }
        if q < n_deep {
            let (u, v) = (next, next + 1);
            next += 2;
            let odd = q % 2 == 1;
            let (rf, rs) = if odd { (Role::Under, Role::Over) } else { (Role::Over, Role::Under) };
            let sgn: i8 = if odd { -1 } else { 1 };
            head.push((rf, u, Some(sgn)));
            inner_firsts.push((rf, v, Some(-sgn)));
            far.push((rs, v, Some(-sgn)));
            if let Some((s, _)) = grp_batch {
                for &(a, b) in &grp {
                    far.push(a_exit(a, s));
                    far.push(b_exit(b, s));
                }
            }
            far.push((rs, u, Some(sgn)));
        } else {
            let (s, _) = grp_batch.expect("deepest negative level carries a batch");
            far.extend(exit_chain(&grp, s));
        }
    }
    head.extend(inner_firsts.into_iter().rev());
    head.extend(far);
    let out = assemble(head)?;
    debug_assert!(out.common_cut().is_some());
    Ok(out)
}

/// Splits a reciprocal `f` with `f(1) = 0` as `sum c_k (t^k - 2 + t^-k)`
/// over `k > 0` and returns `sum c_k (t^k - 1)`.
fn reciprocal_half(f: &Poly) -> Poly {
    let mut rest = f.clone();
    let mut half = Poly::zero();
    while let Some(e) = rest.max_exp() {
        if e <= 0 {
            break;
        }
        let c = rest.coeff(e);
        half += &Poly::t_pow_minus_one(e).scale(&c);
        let bump = Poly::t_pow_minus_one(e) + &Poly::t_pow_minus_one(-e);
        rest -= &bump.scale(&c);
    }
    debug_assert!(rest.is_zero(), "reciprocal split left a remainder: {rest}");
    half
}

/// Builds a long knot whose intersection polynomial of the requested kind
/// and indices equals `f`, presented at closed-surface genus at most one.
///
/// Realizable targets must vanish at `t = 1`; diagonal `F` and `H` targets
/// must in addition be reciprocal, and diagonal `G` targets must have
/// derivative zero at `t = 1`.
pub fn realize(kind: Kind, a: usize, b: usize, f: &Poly) -> Result<Diagram> {
    if a > 1 || b > 1 {
        return Err(Error::BadParameter("type indices must be 0 or 1".into()));
    }
    if f.eval_one() != BigInt::zero() {
        return Err(Error::ConditionViolated("realizable targets vanish at t = 1".into()));
    }
    match kind {
        Kind::F => {
            if a == b {
                if !f.is_reciprocal() {
                    return Err(Error::ConditionViolated(
                        "diagonal F and H targets are reciprocal (f(t) = f(1/t))".into(),
                    ));
                }
                let inner = realize_writhe(&reciprocal_half(f))?;
                let d = tangle_t(1)?.tangle_sum(&inner);
                Ok(if a == 0 { d } else { d.sym_flip() })
            } else {
                let d = tangle_t(3)?.tangle_sum(&realize_writhe(f)?);
                Ok(if (a, b) == (0, 1) { d } else { d.sym_flip() })
            }
        }
        Kind::G => {
            if a == b {
                if f.deriv_eval_one() != BigInt::zero() {
                    return Err(Error::ConditionViolated(
                        "diagonal G targets have derivative zero at t = 1".into(),
                    ));
                }
                let g = f.div_exact_t_minus_one()?.mul_t_pow(1);
                let d = tangle_t(2)?.tangle_sum(&realize_writhe(&g)?);
                Ok(if a == 0 { d } else { d.sym_flip() })
            } else {
                let d = tangle_t(4)?.tangle_sum(&realize_writhe(f)?);
                Ok(if (a, b) == (0, 1) { d } else { d.sym_flip() })
            }
        }
        Kind::H => swap_fh(&realize(Kind::F, 1 - a, 1 - b, f)?),
    }
}

/// Two-sided estimates of the supporting genera of the presented knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusBounds {
    /// Certified range for the one-boundary supporting genus.
    pub sg1_lower: usize,
    pub sg1_upper: usize,
    /// Certified range for the two-boundary supporting genus.
    pub sg2_lower: usize,
    pub sg2_upper: usize,
}

/// Computes genus bounds for the knot presented by `d`.
pub fn genus_bounds(d: &Diagram) -> Result<GenusBounds> {
    let hom = homology_data(d)?;
    let carter = hom.genus();
    let tbg = two_boundary_genus(d)?;
    let bundle = bundle_from(d, &hom);

    let sg1_upper = carter.min(tbg + 1);
    let sg2_upper = tbg.min(sg1_upper);

    let mut sg1_lower = usize::from(!bundle.is_zero());
    let combos = [
        bundle.w[0].clone() - &bundle.w[1],
        bundle.f[0][1].clone() + &bundle.g[0][0] - &bundle.g[1][1] - &bundle.h[0][1],
        bundle.g[0][0].clone() - &bundle.g[0][1] - &bundle.g[1][0] + &bundle.g[1][1],
    ];
    if combos.iter().any(|p| !p.is_reciprocal()) {
        sg1_lower = 2;
    }

    let product = &bundle.w[0] * &bundle.w[0].invert_var();
    let annular = bundle.w[0] == bundle.w[1]
        && (0..2).all(|x| {
            (0..2).all(|y| {
                bundle.f[x][y].is_zero() && bundle.g[x][y].is_zero() && bundle.h[x][y] == product
            })
        });
    let mut sg2_lower = usize::from(!annular);

    sg1_lower = sg1_lower.max(sg2_lower);
    sg2_lower = sg2_lower.max(sg1_lower.saturating_sub(1));
    let bounds = GenusBounds { sg1_lower, sg1_upper, sg2_lower, sg2_upper };
    debug_assert!(
        sg1_lower <= sg1_upper && sg2_lower <= sg2_upper,
        "obstruction exceeded presentation bound: {bounds:?} for {d}",
    );
    Ok(bounds)
}

impl GenusBounds {
    /// Rank of a filtration stratum: `min(2 sg1, 2 sg2 + 1)`.
    fn rank(s1: usize, s2: usize) -> usize {
        (2 * s1).min(2 * s2 + 1)
    }

    /// The smallest certified stratum, or the undetermined range.
    pub fn stratum_label(&self) -> String {
        let name = |r: usize| {
            if r % 2 == 0 {
                format!("K1({})", r / 2)
            } else {
                format!("K2({})", r / 2)
            }
        };
        let lo = Self::rank(self.sg1_lower, self.sg2_lower);
        let hi = Self::rank(self.sg1_upper, self.sg2_upper);
        if lo == hi {
            if lo == 0 {
                name(0)
            } else {
                format!("{}\\{}", name(lo), name(lo - 1))
            }
        } else {
            format!("undetermined[{},{}]", name(lo), name(hi))
        }
    }
}

/// Places the presented knot in the genus filtration.
pub fn classify_filtration(d: &Diagram) -> Result<String> {
    Ok(genus_bounds(d)?.stratum_label())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::invariant_bundle;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn family_codes() {
        assert_eq!(family(FamilyName::J, 1).unwrap().to_string(), "U1+ O2+ O1+ U2+");
        assert_eq!(
            family(FamilyName::J, 2).unwrap().to_string(),
            "U1+ O2+ U3+ U4- O3+ O1+ U2+ O4-"
        );
        assert_eq!(
            family(FamilyName::J, 3).unwrap().to_string(),
            "U1+ O2+ U3+ U4- U5+ U6- O5+ O3+ O1+ U2+ O4- O6-"
        );
        assert_eq!(
            family(FamilyName::K, 2).unwrap().to_string(),
            "U1+ O2+ O1+ U2+ U3+ O4+ O3+ U4+"
        );
        assert_eq!(
            family(FamilyName::Kp, 1).unwrap().to_string(),
            "O1+ U2+ O3+ O2+ U3+ U1+"
        );
        assert_eq!(
            family(FamilyName::Kpp, 1).unwrap().to_string(),
            "U1+ O2+ O3+ O1+ U3+ U2+"
        );
        assert_eq!(
            family(FamilyName::Kpp, 2).unwrap().to_string(),
            "U1+ O2+ O3+ O1+ U3+ U2+ U4+ O5+ U6+ U7- O6+ O4+ U5+ O7-"
        );
    }

    #[test]
    fn family_errors() {
        assert!(matches!(family(FamilyName::K, 0), Err(Error::BadParameter(_))));
        assert!("X".parse::<FamilyName>().is_err());
        assert_eq!("kpp".parse::<FamilyName>().unwrap(), FamilyName::Kpp);
    }

    #[test]
    fn family_writhe_polynomials() {
        let j3 = invariant_bundle(&family(FamilyName::J, 3).unwrap()).unwrap();
        assert_eq!(j3.w, [p("t^3-1"), p("t^3-1")]);
        let k3 = invariant_bundle(&family(FamilyName::K, 3).unwrap()).unwrap();
        assert_eq!(k3.w, [p("3t-3"), p("3t-3")]);
        let kpp2 = invariant_bundle(&family(FamilyName::Kpp, 2).unwrap()).unwrap();
        assert_eq!(kpp2.w, [p("t^2+2t-3"), p("2t^2-2")]);
    }

    #[test]
    fn library_tangle_lambdas() {
        use crate::tangle::tangle_invariants;
        let expected = [[1, 0], [-1, -1], [0, 1], [0, -1]];
        for k in 1..=4 {
            let ti = tangle_invariants(&tangle_t(k).unwrap()).unwrap();
            assert_eq!(ti.lambda, expected[k - 1], "tangle {k}");
        }
        assert!(tangle_t(5).is_err());
    }

    #[test]
    fn writhe_realization() {
        for text in ["2t-2", "t^2-t", "-t^-2+1", "t^3-2t+1", "t^2-t^-2", "-4t+4", "0"] {
            let f = p(text);
            let d = realize_writhe(&f).unwrap();
            let bundle = invariant_bundle(&d).unwrap();
            assert_eq!(bundle.w[0], f, "{text}");
            assert_eq!(bundle.w[1], f, "{text}");
            assert_eq!(two_boundary_genus(&d).unwrap(), 0, "{text}");
        }
        assert!(matches!(realize_writhe(&p("t-2")), Err(Error::ConditionViolated(_))));
    }

    #[test]
    fn writhe_realization_grid() {
        // Every coefficient pattern in [-2, 2] over exponents {-2, -1, 1, 2}.
        let exps = [-2i64, -1, 1, 2];
        for mask in 0..5u32.pow(4) {
            let mut f = Poly::zero();
            let mut m = mask;
            for &e in &exps {
                let c = (m % 5) as i64 - 2;
                m /= 5;
                if c != 0 {
                    f += &Poly::t_pow_minus_one(e).scale(&c.into());
                }
            }
            let d = realize_writhe(&f).unwrap();
            let bundle = invariant_bundle(&d).unwrap();
            assert_eq!(bundle.w[0], f, "{f}");
            assert_eq!(bundle.w[1], f, "{f}");
            assert_eq!(two_boundary_genus(&d).unwrap(), 0, "{f}");
            assert!(d.is_empty() || d.common_cut().is_some(), "{f}");
        }
    }

    #[test]
    fn intersection_realization_round_trips() {
        let cases: [(Kind, usize, usize, &str); 15] = [
            (Kind::F, 0, 0, "t-2+t^-1"),
            (Kind::F, 1, 1, "2t^2-4+2t^-2"),
            (Kind::F, 0, 1, "t^2-1"),
            (Kind::F, 0, 1, "t^2-3+2t^-1"),
            (Kind::F, 1, 0, "-3t+3"),
            (Kind::F, 1, 0, "-t^3-1+2t^-2"),
            (Kind::G, 0, 0, "t-2+t^-1"),
            (Kind::G, 0, 0, "t^2-t-2+3t^-1-t^-2"),
            (Kind::G, 1, 1, "-t^2+2t-1"),
            (Kind::G, 0, 1, "t^3-1"),
            (Kind::G, 1, 0, "2t^2-3+t^-1"),
            (Kind::H, 0, 0, "-t+2-t^-1"),
            (Kind::H, 1, 1, "t^3-2+t^-3"),
            (Kind::H, 0, 1, "t^2-3t^-1+2"),
            (Kind::H, 1, 0, "-2t+t^-2+1"),
        ];
        for (kind, a, b, text) in cases {
            let f = p(text);
            let d = realize(kind, a, b, &f).unwrap();
            let bundle = invariant_bundle(&d).unwrap();
            assert_eq!(*bundle.get(kind, a, b), f, "{kind:?}{a}{b} <- {text}");
            assert!(homology_data(&d).unwrap().genus() <= 1, "{kind:?}{a}{b}");
        }
    }

    #[test]
    fn realization_conditions() {
        assert!(matches!(realize(Kind::F, 0, 0, &p("t-1")), Err(Error::ConditionViolated(_))));
        assert!(matches!(realize(Kind::G, 0, 0, &p("t-1")), Err(Error::ConditionViolated(_))));
        assert!(matches!(realize(Kind::F, 0, 1, &p("t")), Err(Error::ConditionViolated(_))));
        assert!(matches!(realize(Kind::H, 1, 1, &p("t-1")), Err(Error::ConditionViolated(_))));
        assert!(realize(Kind::G, 1, 0, &p("t-1")).is_ok());
    }

    #[test]
    fn genus_bounds_of_families() {
        let check = |name, n, sg1: (usize, usize), sg2: (usize, usize)| {
            let b = genus_bounds(&family(name, n).unwrap()).unwrap();
            assert_eq!((b.sg1_lower, b.sg1_upper), sg1, "{name:?}_{n} sg1");
            assert_eq!((b.sg2_lower, b.sg2_upper), sg2, "{name:?}_{n} sg2");
        };
        check(FamilyName::K, 1, (1, 1), (0, 0));
        check(FamilyName::K, 2, (1, 1), (0, 0));
        check(FamilyName::Kp, 1, (1, 1), (1, 1));
        check(FamilyName::Kpp, 1, (2, 2), (1, 1));
        check(FamilyName::J, 2, (1, 1), (0, 0));
    }

    #[test]
    fn stratum_labels() {
        let label = |code: &str| classify_filtration(&code.parse().unwrap()).unwrap();
        assert_eq!(label("O1+ U1+"), "K1(0)");
        assert_eq!(label(""), "K1(0)");
        let k1 = family(FamilyName::K, 1).unwrap();
        assert_eq!(classify_filtration(&k1).unwrap(), "K2(0)\\K1(0)");
        let kp1 = family(FamilyName::Kp, 1).unwrap();
        assert_eq!(classify_filtration(&kp1).unwrap(), "K1(1)\\K2(0)");
        let kpp1 = family(FamilyName::Kpp, 1).unwrap();
        assert_eq!(classify_filtration(&kpp1).unwrap(), "K2(1)\\K1(1)");
    }
}
