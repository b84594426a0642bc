//! Extension constellations and index-based direction rules: how the
//! provenance pairs of new cocircuits overlap, where the crossing point of
//! their provenance lines sits, and how directions in a lexicographic
//! extension reduce to directions between old cocircuits.

use std::mem;

use crate::error::{OmError, Result};
use crate::extension::{ExtensionResult, LexSpec};
use crate::matroid::OrientedMatroid;
use crate::program::Program;
use crate::sign::{Sign, SignVector};

use super::{crossing_point, dir_pair, is_modular_triple_idx, ScanReport};

/// The spec of a lexicographic extension, required all-positive; negative
/// signs are handled upstream by reorienting before the scan.
fn positive_spec(ext: &ExtensionResult) -> Result<&LexSpec> {
    match &ext.spec {
        Some(spec) if spec.is_positive() => Ok(spec),
        Some(_) => Err(OmError::InvalidLexSpec(
            "scan needs an all-positive extension; reorient the negative elements first".into(),
        )),
        None => Err(OmError::InvalidLexSpec("extension is not lexicographic".into())),
    }
}

/// Direction that the caller has already shown to be defined.
fn dir_req(om: &OrientedMatroid, g: usize, f: usize, i: usize, j: usize) -> Result<Sign> {
    dir_pair(om, g, f, i, j)?.ok_or_else(|| {
        OmError::InvalidProgram(format!(
            "direction of {} and {} undefined at infinity {}",
            om.cocircuits()[i],
            om.cocircuits()[j],
            g + 1
        ))
    })
}

/// Unordered conformal comodular pairs of old cocircuits equal and nonzero
/// at the new element.
fn aligned_old_pairs(ext: &ExtensionResult) -> Vec<(usize, usize)> {
    let om = &ext.extended;
    let p = ext.p();
    let m = om.cocircuits().len();
    let mut out = Vec::new();
    for i in 0..m {
        if om.cocircuits()[i].get(p).is_zero() {
            continue;
        }
        for j in (i + 1)..m {
            if om.cocircuits()[j].get(p) != om.cocircuits()[i].get(p) {
                continue;
            }
            if om.conformal_idx(i, j) && om.comodular_idx(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Unordered conformal comodular pairs of new cocircuits, both positive at
/// `g`.
fn positive_new_pairs(ext: &ExtensionResult, g: usize) -> Vec<(usize, usize)> {
    let om = &ext.extended;
    let m = om.cocircuits().len();
    let eligible: Vec<usize> = (0..m)
        .filter(|&i| ext.origins[i].is_new() && om.cocircuits()[i].get(g) == Sign::Plus)
        .collect();
    let mut out = Vec::new();
    for (a, &i) in eligible.iter().enumerate() {
        for &j in &eligible[a + 1..] {
            if om.conformal_idx(i, j) && om.comodular_idx(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Directions between old cocircuits at the new element, transported to the
/// spec elements. For a pair of equal index the direction at the new element
/// matches the one at the pivot whenever the objective values differ, both
/// vanish, or the pivot direction is strict; in the remaining tie the first
/// later spec element that separates the pair decides both swapped
/// directions. Across an index jump the direction is the objective value of
/// the higher-index cocircuit whenever that value is nonzero.
pub fn scan_index_cases(
    ext: &ExtensionResult,
    f: usize,
    verbose: bool,
) -> Result<Vec<ScanReport>> {
    let spec = positive_spec(ext)?;
    let om = &ext.extended;
    let p = ext.p();
    let k = spec.k();
    let mut transfer = ScanReport::new("equal-index-transfer");
    let mut tiebreak = ScanReport::new("equal-index-tiebreak");
    let mut jump = ScanReport::new("index-jump");
    for (mut i, mut j) in aligned_old_pairs(ext) {
        if spec.index_of(&om.cocircuits()[i]) > spec.index_of(&om.cocircuits()[j]) {
            mem::swap(&mut i, &mut j);
        }
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let (ix, iy) = (spec.index_of(x), spec.index_of(y));
        let tuple = format!("f={} x={x} y={y}", f + 1);
        if ix < iy {
            if y.get(f).is_zero() {
                jump.skip();
                continue;
            }
            jump.record(
                verbose,
                tuple,
                y.get(f).to_char().into(),
                dir_req(om, p, f, i, j)?.to_char().into(),
            );
            continue;
        }
        let ei = spec.elements[ix - 1];
        let d_pivot = dir_req(om, ei, f, i, j)?;
        let (xf, yf) = (x.get(f), y.get(f));
        if f != ei && (xf != yf || xf.is_zero() || !d_pivot.is_zero()) {
            transfer.record(
                verbose,
                format!("{tuple} keep"),
                d_pivot.to_char().into(),
                dir_req(om, p, f, i, j)?.to_char().into(),
            );
            // The swapped directions share one definedness condition, on the
            // objective values alone.
            if let (Some(at_pivot), Some(at_new)) =
                (dir_pair(om, f, ei, i, j)?, dir_pair(om, f, p, i, j)?)
            {
                transfer.record(
                    verbose,
                    format!("{tuple} swap"),
                    at_new.to_char().into(),
                    at_pivot.to_char().into(),
                );
            }
        } else {
            // Tie at the objective: walk the later spec elements for the
            // first one that separates the pair over the pivot.
            let mut split = None;
            for t in (ix + 1)..=k {
                let d = dir_req(om, ei, spec.elements[t - 1], i, j)?;
                if !d.is_zero() {
                    split = Some((spec.elements[t - 1], d));
                    break;
                }
            }
            match split {
                None => tiebreak.record(
                    verbose,
                    format!("{tuple} flat"),
                    '0'.into(),
                    dir_req(om, p, f, i, j)?.to_char().into(),
                ),
                Some((ej, d)) => {
                    tiebreak.record(
                        verbose,
                        format!("{tuple} swap"),
                        d.to_char().into(),
                        dir_req(om, f, p, i, j)?.to_char().into(),
                    );
                    tiebreak.record(
                        verbose,
                        format!("{tuple} split={}", ej + 1),
                        d.to_char().into(),
                        dir_req(om, f, ej, i, j)?.to_char().into(),
                    );
                }
            }
        }
    }
    Ok(vec![transfer, tiebreak, jump])
}

/// How the normalized provenance pairs of two new cocircuits overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstellationKind {
    /// Equal index; the lead lifts differ, the deep lifts coincide.
    SharedDeep,
    /// Equal index; all four lifts are distinct.
    Disjoint,
    /// Equal index; the lead lifts coincide, the deep lifts differ.
    SharedLead,
    /// Indices `i < j`; the deep lift of `x` is shared with the `y` pair.
    /// `side_change` records whether the shared lift carries the index `j`.
    IndexChange { side_change: bool },
}

/// A conformal edge pair of new cocircuits with normalized provenance. The
/// lead lifts `x1`, `y1` keep the index of their cocircuit; the deep lifts
/// `x2`, `y2` vanish at the pivot element of `x`. For equal indices the two
/// pairs are swapped jointly, so `x1` and `y1` agree at the new element.
#[derive(Clone, Debug)]
pub struct Constellation {
    pub kind: ConstellationKind,
    /// Index of `x`, the smaller of the two.
    pub i: usize,
    /// Index of `y`.
    pub j: usize,
    pub x: SignVector,
    pub y: SignVector,
    pub x1: SignVector,
    pub x2: SignVector,
    pub y1: SignVector,
    pub y2: SignVector,
}

/// Classifies a conformal edge pair of new cocircuits, both positive at `g`.
/// The pair is reordered by index and the provenance sides are normalized;
/// the structural facts this relies on (one lift per pair vanishes at the
/// pivot, the vanishing sides agree, across an index jump one lift is
/// shared) are validated and reported as scenario errors when broken.
pub fn classify_constellation(
    ext: &ExtensionResult,
    g: usize,
    x: &SignVector,
    y: &SignVector,
) -> Result<Constellation> {
    let spec = positive_spec(ext)?;
    let om = &ext.extended;
    let p = ext.p();
    let xi = om.require_index(x)?;
    let yi = om.require_index(y)?;
    if !ext.origins[xi].is_new() || !ext.origins[yi].is_new() {
        return Err(OmError::InvalidScenario("both cocircuits must be new".into()));
    }
    if xi == yi {
        return Err(OmError::InvalidScenario("cocircuits must differ".into()));
    }
    if x.get(g) != Sign::Plus || y.get(g) != Sign::Plus {
        return Err(OmError::InvalidScenario(format!(
            "pair must be positive at element {}",
            g + 1
        )));
    }
    if !om.comodular_idx(xi, yi) {
        return Err(OmError::InvalidScenario("pair must span an edge".into()));
    }
    if !om.conformal_idx(xi, yi) {
        return Err(OmError::InvalidScenario("pair must be conformal".into()));
    }
    let (mut x, mut y) = (x.clone(), y.clone());
    let (mut ix, mut iy) = (spec.index_of(&x), spec.index_of(&y));
    if ix > iy {
        mem::swap(&mut x, &mut y);
        mem::swap(&mut ix, &mut iy);
    }
    let ei = spec.elements[ix - 1];
    let (a1, a2) = ext.provenance(&x)?;
    let (b1, b2) = ext.provenance(&y)?;
    let (a1z, a2z) = (a1.get(ei).is_zero(), a2.get(ei).is_zero());
    if a1z == a2z {
        return Err(OmError::InvalidScenario(format!(
            "exactly one lift of {x} must vanish at its pivot"
        )));
    }
    let x_swapped = a1z;
    let (x1, x2) = if x_swapped { (a2, a1) } else { (a1, a2) };
    if ix == iy {
        let (b1z, b2z) = (b1.get(ei).is_zero(), b2.get(ei).is_zero());
        if b1z == b2z {
            return Err(OmError::InvalidScenario(format!(
                "exactly one lift of {y} must vanish at its pivot"
            )));
        }
        // One joint swap normalizes both pairs, keeping the lead lifts
        // aligned at the new element.
        if b1z != x_swapped {
            return Err(OmError::InvalidScenario(
                "vanishing lifts of the pair sit on opposite sides".into(),
            ));
        }
        let (y1, y2) = if x_swapped { (b2, b1) } else { (b1, b2) };
        debug_assert_eq!(x1.get(p), y1.get(p));
        debug_assert_eq!(x2.get(p), -x1.get(p));
        let kind = match (x1 == y1, x2 == y2) {
            (false, true) => ConstellationKind::SharedDeep,
            (false, false) => ConstellationKind::Disjoint,
            (true, false) => ConstellationKind::SharedLead,
            (true, true) => {
                return Err(OmError::InvalidScenario(
                    "provenance pairs coincide".into(),
                ))
            }
        };
        return Ok(Constellation { kind, i: ix, j: iy, x, y, x1, x2, y1, y2 });
    }
    // Index jump: both lifts of the higher cocircuit vanish at the lower
    // pivot, and the deep lift of `x` is shared with one of them.
    if !b1.get(ei).is_zero() || !b2.get(ei).is_zero() {
        return Err(OmError::InvalidScenario(format!(
            "both lifts of {y} must vanish at the pivot of {x}"
        )));
    }
    let (y1, y2) = if b2 == x2 {
        (b1, b2)
    } else if b1 == x2 {
        (b2, b1)
    } else {
        return Err(OmError::InvalidScenario(
            "no shared lift between the provenance pairs".into(),
        ));
    };
    let ej = spec.elements[iy - 1];
    let (y1z, y2z) = (y1.get(ej).is_zero(), y2.get(ej).is_zero());
    if y1z == y2z {
        return Err(OmError::InvalidScenario(format!(
            "exactly one lift of {y} must vanish at its pivot"
        )));
    }
    debug_assert_eq!(x1.get(p), y1.get(p));
    Ok(Constellation {
        kind: ConstellationKind::IndexChange { side_change: y1z },
        i: ix,
        j: iy,
        x,
        y,
        x1,
        x2,
        y1,
        y2,
    })
}

/// Every eligible pair of new cocircuits classifies into one of the four
/// constellations.
pub fn scan_constellation_classify(
    ext: &ExtensionResult,
    g: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let mut report = ScanReport::new("provenance-alignment");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let tuple = format!("g={} x={x} y={y}", g + 1);
        let observed = match classify_constellation(ext, g, x, y) {
            Ok(_) => "classified".into(),
            Err(OmError::InvalidScenario(msg)) => msg,
            Err(e) => return Err(e),
        };
        report.record(verbose, tuple, "classified".into(), observed);
    }
    Ok(report)
}

/// The provenance lines of an eligible pair cross in a single cocircuit that
/// differs from both new cocircuits, does not vanish at the new element, and
/// forms a modular triple with the pair.
pub fn scan_cutting_condition(
    ext: &ExtensionResult,
    g: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let p = ext.p();
    let mut report = ScanReport::new("cutting-condition");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let (a1, a2) = ext.provenance(x)?;
        let (b1, b2) = ext.provenance(y)?;
        let fline = a1.compose(&a2)?;
        let gline = b1.compose(&b2)?;
        let tuple = format!("g={} x={x} y={y}", g + 1);
        if fline == gline || fline == gline.negated() {
            report.skip();
            continue;
        }
        let c = match crossing_point(om, g, &fline, &gline) {
            Ok(c) => c,
            Err(OmError::NoCrossingPoint(msg)) | Err(OmError::NotAnEdge(msg)) => {
                report.record(verbose, format!("{tuple} exists"), "crossing".into(), msg);
                continue;
            }
            Err(e) => return Err(e),
        };
        report.record(verbose, format!("{tuple} exists"), "crossing".into(), "crossing".into());
        report.record(
            verbose,
            format!("{tuple} apart"),
            "true".into(),
            (c != *x && c != *y).to_string(),
        );
        report.record(
            verbose,
            format!("{tuple} pivot"),
            "nonzero".into(),
            if c.get(p).is_zero() { "zero".into() } else { "nonzero".into() },
        );
        let ci = om.require_index(&c)?;
        report.record(
            verbose,
            format!("{tuple} triple"),
            "modular".into(),
            if is_modular_triple_idx(om, ci, i, j) { "modular".into() } else { "flat".into() },
        );
    }
    Ok(report)
}

/// Eliminating the crossing point against both new cocircuits lands on an
/// edge of old cocircuits that sits opposite the crossing point at the new
/// element and is undirected for `(g, f)` exactly when the original edge is
/// undirected for the new element as infinity.
pub fn scan_projection_with_undirected(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let p = ext.p();
    let mut report = ScanReport::new("projection-keeps-undirected");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let (a1, a2) = ext.provenance(x)?;
        let (b1, b2) = ext.provenance(y)?;
        let fline = a1.compose(&a2)?;
        let gline = b1.compose(&b2)?;
        if fline == gline || fline == gline.negated() {
            report.skip();
            continue;
        }
        let c = match crossing_point(om, g, &fline, &gline) {
            Ok(c) => c,
            Err(OmError::NoCrossingPoint(_)) | Err(OmError::NotAnEdge(_)) => {
                report.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        if c.get(g) != Sign::Plus {
            report.skip();
            continue;
        }
        let ci = om.require_index(&c)?;
        let tuple = format!("g={} f={} x={x} y={y}", g + 1, f + 1);
        if !om.comodular_idx(ci, i) || !om.comodular_idx(ci, j) {
            report.record(
                verbose,
                format!("{tuple} defined"),
                "projectable".into(),
                "crossing point off one line".into(),
            );
            continue;
        }
        let pi = om.eliminate_idx(om.negation_of(ci), i, g)?;
        let pj = om.eliminate_idx(om.negation_of(ci), j, g)?;
        let away = -c.get(p);
        report.record(
            verbose,
            format!("{tuple} pivot"),
            format!("{}{}", away.to_char(), away.to_char()),
            format!(
                "{}{}",
                om.cocircuits()[pi].get(p).to_char(),
                om.cocircuits()[pj].get(p).to_char()
            ),
        );
        report.record(
            verbose,
            format!("{tuple} edge"),
            "edge".into(),
            if om.comodular_idx(pi, pj) { "edge".into() } else { "apart".into() },
        );
        let original = dir_req(om, g, f, i, j)?;
        let observed = match dir_pair(om, p, f, pi, pj)? {
            Some(d) => (d == Sign::Zero).to_string(),
            None => "undefined".into(),
        };
        report.record(
            verbose,
            format!("{tuple} undirected"),
            (original == Sign::Zero).to_string(),
            observed,
        );
    }
    Ok(report)
}

/// For any conformal edge pair of new cocircuits, the crossing point of the
/// provenance lines matches the lead lift of `x` up to sign exactly when the
/// two pairs share that lift.
pub fn scan_quadrangle(ext: &ExtensionResult, verbose: bool) -> Result<ScanReport> {
    let om = &ext.extended;
    let p = ext.p();
    let m = om.cocircuits().len();
    let mut report = ScanReport::new("quadrangle-crossing");
    for i in 0..m {
        if !ext.origins[i].is_new() {
            continue;
        }
        for j in (i + 1)..m {
            if !ext.origins[j].is_new()
                || !om.conformal_idx(i, j)
                || !om.comodular_idx(i, j)
            {
                continue;
            }
            let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
            let (a1, a2) = ext.provenance(x)?;
            let (b1, b2) = ext.provenance(y)?;
            let fline = a1.compose(&a2)?;
            let gline = b1.compose(&b2)?;
            if fline == gline || fline == gline.negated() {
                report.skip();
                continue;
            }
            let c = match crossing_point(om, p, &fline, &gline) {
                Ok(c) => c,
                Err(OmError::NoCrossingPoint(_)) | Err(OmError::NotAnEdge(_)) => {
                    report.skip();
                    continue;
                }
                Err(e) => return Err(e),
            };
            if c == *x || c == x.negated() || c == *y || c == y.negated() {
                report.skip();
                continue;
            }
            let on_crossing = c == a1 || c == a1.negated();
            let shared = b1 == a1;
            report.record(
                verbose,
                format!("x={x} y={y}"),
                shared.to_string(),
                on_crossing.to_string(),
            );
        }
    }
    Ok(report)
}

/// When all four lifts of an eligible pair are distinct, the crossing point
/// of the provenance lines avoids every lift.
pub fn scan_crossing_avoids_lifts(
    ext: &ExtensionResult,
    g: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let mut report = ScanReport::new("crossing-avoids-lifts");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let c = match classify_constellation(ext, g, x, y) {
            Ok(c) => c,
            Err(OmError::InvalidScenario(_)) => {
                report.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        if c.kind != ConstellationKind::Disjoint {
            report.skip();
            continue;
        }
        let fline = c.x1.compose(&c.x2)?;
        let gline = c.y1.compose(&c.y2)?;
        let cross = match crossing_point(om, g, &fline, &gline) {
            Ok(v) => v,
            Err(OmError::NoCrossingPoint(_)) | Err(OmError::NotAnEdge(_)) => {
                report.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        let hit = [&c.x1, &c.x2, &c.y1, &c.y2]
            .into_iter()
            .any(|v| cross == *v || cross == v.negated());
        report.record(
            verbose,
            format!("g={} x={x} y={y}", g + 1),
            "apart".into(),
            if hit { "meets a lift".into() } else { "apart".into() },
        );
    }
    Ok(report)
}

/// When the deep lifts of an equal-index pair differ they span a conformal
/// edge of their own.
pub fn scan_deep_pair_edge(
    ext: &ExtensionResult,
    g: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let mut report = ScanReport::new("deep-pair-edge");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let c = match classify_constellation(ext, g, x, y) {
            Ok(c) => c,
            Err(OmError::InvalidScenario(_)) => {
                report.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        if !matches!(c.kind, ConstellationKind::Disjoint | ConstellationKind::SharedLead) {
            report.skip();
            continue;
        }
        let x2i = om.require_index(&c.x2)?;
        let y2i = om.require_index(&c.y2)?;
        let tuple = format!("g={} x={x} y={y}", g + 1);
        report.record(
            verbose,
            format!("{tuple} edge"),
            "edge".into(),
            if om.comodular_idx(x2i, y2i) { "edge".into() } else { "apart".into() },
        );
        report.record(
            verbose,
            format!("{tuple} conformal"),
            "conformal".into(),
            if om.conformal_idx(x2i, y2i) { "conformal".into() } else { "separated".into() },
        );
    }
    Ok(report)
}

/// True iff the cocircuits have `f = 0` and `g = 0` simultaneously for any
/// vector in the list; such tuples carry no direction information for the
/// pair `(g, f)` and are left out of the index-jump scans.
fn any_doubly_flat(vectors: &[&SignVector], g: usize, f: usize) -> bool {
    vectors.iter().any(|v| v.get(g).is_zero() && v.get(f).is_zero())
}

/// Across an index jump the shared lift carries the direction: the pair
/// direction equals the direction from the shared lift to `y`, or to the
/// direction from `x` into the shared lift when the former vanishes.
pub fn scan_index_step(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let mut report = ScanReport::new("index-step-direction");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let c = match classify_constellation(ext, g, x, y) {
            Ok(c) => c,
            Err(OmError::InvalidScenario(_)) => {
                report.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        if !matches!(c.kind, ConstellationKind::IndexChange { .. }) {
            report.skip();
            continue;
        }
        if any_doubly_flat(&[&c.x, &c.y, &c.x1, &c.x2, &c.y1, &c.y2], g, f) {
            report.skip();
            continue;
        }
        if c.x2.get(g) == Sign::Minus {
            report.skip();
            continue;
        }
        let xi = om.require_index(&c.x)?;
        let yi = om.require_index(&c.y)?;
        let ci = om.require_index(&c.x2)?;
        let d_xy = dir_req(om, g, f, xi, yi)?;
        let d_cy = dir_req(om, g, f, ci, yi)?;
        let tuple = format!("g={} f={} x={} y={}", g + 1, f + 1, c.x, c.y);
        if d_cy == Sign::Zero {
            let d_xc = dir_req(om, g, f, xi, ci)?;
            report.record(
                verbose,
                format!("{tuple} hold"),
                d_xc.to_char().into(),
                d_xy.to_char().into(),
            );
        } else {
            report.record(
                verbose,
                format!("{tuple} step"),
                d_cy.to_char().into(),
                d_xy.to_char().into(),
            );
        }
    }
    Ok(report)
}

/// For an equal-index pair with distinct deep lifts whose directions into
/// the deep lifts agree and are strict, the pair direction is decided on the
/// deep edge: directly by its direction when strict, otherwise by the value
/// of the eliminated cocircuit at the first spec element it survives on,
/// scaled by the lift side and the common strict direction, and zero when
/// the eliminated cocircuit escapes every spec element.
pub fn scan_deep_pair_direction(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let spec = positive_spec(ext)?;
    let om = &ext.extended;
    let p = ext.p();
    let k = spec.k();
    let mut report = ScanReport::new("deep-pair-direction");
    for (i, j) in positive_new_pairs(ext, g) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let c = match classify_constellation(ext, g, x, y) {
            Ok(c) => c,
            Err(OmError::InvalidScenario(_)) => {
                report.skip();
                continue;
            }
            Err(e) => return Err(e),
        };
        if !matches!(c.kind, ConstellationKind::Disjoint | ConstellationKind::SharedLead) {
            report.skip();
            continue;
        }
        if any_doubly_flat(&[&c.x, &c.y, &c.x1, &c.x2, &c.y1, &c.y2], g, f) {
            report.skip();
            continue;
        }
        if spec.elements[..c.i - 1].contains(&f) || spec.elements[..c.i - 1].contains(&g) {
            report.skip();
            continue;
        }
        let xi = om.require_index(&c.x)?;
        let yi = om.require_index(&c.y)?;
        let x2i = om.require_index(&c.x2)?;
        let y2i = om.require_index(&c.y2)?;
        let (Some(into_x2), Some(into_y2)) =
            (dir_pair(om, g, f, xi, x2i)?, dir_pair(om, g, f, yi, y2i)?)
        else {
            report.skip();
            continue;
        };
        if into_x2 != into_y2 || into_x2.is_zero() {
            report.skip();
            continue;
        }
        let vf = into_x2;
        let vp = c.x2.get(p);
        if !om.comodular_idx(x2i, y2i) {
            report.skip();
            continue;
        }
        let (x2g, y2g) = (c.x2.get(g), c.y2.get(g));
        let (label, expected): (&str, Sign) = if !x2g.is_zero() || !y2g.is_zero() {
            if !x2g.is_zero() && !y2g.is_zero() && x2g != y2g {
                report.skip();
                continue;
            }
            let deep = dir_req(om, g, f, x2i, y2i)?;
            if !deep.is_zero() {
                ("direct", deep)
            } else {
                let zi = om.eliminate_idx(om.negation_of(x2i), y2i, g)?;
                let z = &om.cocircuits()[zi];
                let jz = spec.index_of(z);
                if jz <= k {
                    ("split", -vp.times(vf).times(z.get(spec.elements[jz - 1])))
                } else {
                    ("escape", Sign::Zero)
                }
            }
        } else {
            // Both deep lifts vanish at g; the objective takes over as the
            // elimination element, their values there being the common
            // strict direction.
            let zi = om.eliminate_idx(om.negation_of(x2i), y2i, f)?;
            let z = &om.cocircuits()[zi];
            let jz = spec.index_of(z);
            if jz <= k {
                ("flat-split", -vp.times(vf).times(z.get(spec.elements[jz - 1])))
            } else {
                ("flat-escape", Sign::Zero)
            }
        };
        let d_xy = dir_req(om, g, f, xi, yi)?;
        report.record(
            verbose,
            format!("g={} f={} x={} y={} {label}", g + 1, f + 1, c.x, c.y),
            expected.to_char().into(),
            d_xy.to_char().into(),
        );
    }
    Ok(report)
}

/// A new cocircuit sits on the line of its provenance pair: when both lifts
/// stay positive at `g` the three directions along that line agree, and when
/// one lift leaves the affine part its objective value is the direction from
/// the other lift into the new cocircuit.
pub fn scan_derived_edges(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let om = &ext.extended;
    let mut report = ScanReport::new("lift-edge-direction");
    for (idx, origin) in ext.origins.iter().enumerate() {
        if !origin.is_new() || om.cocircuits()[idx].get(g) != Sign::Plus {
            continue;
        }
        let x = &om.cocircuits()[idx];
        let (a, b) = ext.provenance(x)?;
        let ai = om.require_index(&a)?;
        let bi = om.require_index(&b)?;
        let tuple = format!("g={} f={} x={x}", g + 1, f + 1);
        match (a.get(g), b.get(g)) {
            (Sign::Plus, Sign::Plus) => {
                let d_ab = dir_req(om, g, f, ai, bi)?;
                let d_ax = dir_req(om, g, f, ai, idx)?;
                let d_xb = dir_req(om, g, f, idx, bi)?;
                report.record(
                    verbose,
                    format!("{tuple} head"),
                    d_ab.to_char().into(),
                    d_ax.to_char().into(),
                );
                report.record(
                    verbose,
                    format!("{tuple} tail"),
                    d_ab.to_char().into(),
                    d_xb.to_char().into(),
                );
            }
            (Sign::Plus, Sign::Zero) => {
                let d_ax = dir_req(om, g, f, ai, idx)?;
                report.record(
                    verbose,
                    format!("{tuple} flat"),
                    b.get(f).to_char().into(),
                    d_ax.to_char().into(),
                );
            }
            (Sign::Zero, Sign::Plus) => {
                let d_bx = dir_req(om, g, f, bi, idx)?;
                report.record(
                    verbose,
                    format!("{tuple} flat"),
                    a.get(f).to_char().into(),
                    d_bx.to_char().into(),
                );
            }
            _ => report.skip(),
        }
    }
    Ok(report)
}

/// True iff every cocircuit of the walk has the same index along the spec.
pub fn cycle_has_constant_index(ext: &ExtensionResult, cycle: &[SignVector]) -> Result<bool> {
    let spec = ext
        .spec
        .as_ref()
        .ok_or_else(|| OmError::InvalidLexSpec("extension is not lexicographic".into()))?;
    Ok(cycle.windows(2).all(|w| spec.index_of(&w[0]) == spec.index_of(&w[1])))
}

/// Any directed cycle of the program with the new element as infinity stays
/// inside one index class.
pub fn scan_cycle_index(ext: &ExtensionResult, f: usize, verbose: bool) -> Result<ScanReport> {
    let spec = positive_spec(ext)?;
    let om = &ext.extended;
    let mut report = ScanReport::new("cycle-index");
    let prog = match Program::new(om, ext.p(), f) {
        Ok(prog) => prog,
        Err(_) => {
            report.skip();
            return Ok(report);
        }
    };
    if let Some(cycle) = prog.euclidean_witness()? {
        let indices: Vec<usize> = cycle.iter().map(|v| spec.index_of(v)).collect();
        let constant = indices.windows(2).all(|w| w[0] == w[1]);
        report.record(
            verbose,
            format!("f={} len={}", f + 1, cycle.len()),
            "constant index".into(),
            if constant { "constant index".into() } else { format!("indices {indices:?}") },
        );
    }
    Ok(report)
}

/// Every extension identity over every choice of infinity and objective in
/// the base ground set, merged into one report per identity.
pub fn scan_extension_lemmas(ext: &ExtensionResult, verbose: bool) -> Result<Vec<ScanReport>> {
    positive_spec(ext)?;
    let p = ext.p();
    let mut merged: Vec<ScanReport> = Vec::new();
    let mut add = |r: ScanReport, merged: &mut Vec<ScanReport>| {
        if let Some(slot) = merged.iter_mut().find(|s| s.lemma == r.lemma) {
            slot.absorb(r);
        } else {
            merged.push(r);
        }
    };
    for f in 0..p {
        for r in scan_index_cases(ext, f, verbose)? {
            add(r, &mut merged);
        }
    }
    for g in 0..p {
        add(scan_constellation_classify(ext, g, verbose)?, &mut merged);
        add(scan_cutting_condition(ext, g, verbose)?, &mut merged);
        add(scan_crossing_avoids_lifts(ext, g, verbose)?, &mut merged);
        add(scan_deep_pair_edge(ext, g, verbose)?, &mut merged);
        for f in 0..p {
            if f == g {
                continue;
            }
            add(scan_projection_with_undirected(ext, g, f, verbose)?, &mut merged);
            add(scan_index_step(ext, g, f, verbose)?, &mut merged);
            add(scan_deep_pair_direction(ext, g, f, verbose)?, &mut merged);
            add(scan_derived_edges(ext, g, f, verbose)?, &mut merged);
        }
    }
    add(scan_quadrangle(ext, verbose)?, &mut merged);
    for f in 0..p {
        add(scan_cycle_index(ext, f, verbose)?, &mut merged);
    }
    Ok(merged)
}
