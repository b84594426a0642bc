//! Instance-level verification of the geometric machinery: crossing points,
//! modular triples, line paths, and the projection, triangle and zero-line
//! checkers, each with an exhaustive scanner producing one record per tuple.

pub mod constellation;
pub mod dirprops;
pub mod normalize;
pub mod theorems;

use serde::Serialize;

use crate::error::{OmError, Result};
use crate::matroid::OrientedMatroid;
use crate::program::{admissible_pairs, Program};
use crate::sign::{Sign, SignVector};

/// One checked tuple of a scan.
#[derive(Serialize, Clone, Debug)]
pub struct LemmaRecord {
    pub lemma: String,
    pub tuple: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

/// Aggregated scan outcome. `records` holds every violation, and all checked
/// tuples as well when the scan ran verbosely.
#[derive(Serialize, Clone, Debug, Default)]
pub struct ScanReport {
    pub lemma: String,
    pub checked: u64,
    pub skipped: u64,
    pub violations: u64,
    pub records: Vec<LemmaRecord>,
}

impl ScanReport {
    pub fn new(lemma: &str) -> ScanReport {
        ScanReport { lemma: lemma.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.violations == 0
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn record(
        &mut self,
        verbose: bool,
        tuple: String,
        expected: String,
        observed: String,
    ) {
        let ok = expected == observed;
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
        if verbose || !ok {
            self.records.push(LemmaRecord {
                lemma: self.lemma.clone(),
                tuple,
                expected,
                observed,
                ok,
            });
        }
    }

    pub fn absorb(&mut self, other: ScanReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations += other.violations;
        self.records.extend(other.records);
    }
}

/// Direction between comodular cocircuits by stored index, for an arbitrary
/// infinity and objective pair; `None` when the pair has opposite or two
/// zero values at infinity.
pub(crate) fn dir_pair(
    om: &OrientedMatroid,
    infinity: usize,
    objective: usize,
    i: usize,
    j: usize,
) -> Result<Option<Sign>> {
    let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
    let (a, b) = (x.get(infinity), y.get(infinity));
    Ok(match (a.is_zero(), b.is_zero()) {
        (false, false) if a == b => {
            let z = om.eliminate_idx(om.negation_of(i), j, infinity)?;
            Some(om.cocircuits()[z].get(objective))
        }
        (false, true) => Some(y.get(objective)),
        (true, false) => Some(-x.get(objective)),
        _ => None,
    })
}

/// Three cocircuits, pairwise comodular, whose composite vanishes on a
/// corank-3 flat; the three pairwise composites are then edges with distinct
/// zero sets (the triple does not sit on a single line).
#[derive(Clone, Debug)]
pub struct ModularTriple {
    pub c: SignVector,
    pub x: SignVector,
    pub y: SignVector,
}

impl ModularTriple {
    pub fn new(
        om: &OrientedMatroid,
        c: &SignVector,
        x: &SignVector,
        y: &SignVector,
    ) -> Result<ModularTriple> {
        let ci = om.require_index(c)?;
        let xi = om.require_index(x)?;
        let yi = om.require_index(y)?;
        if !is_modular_triple_idx(om, ci, xi, yi) {
            return Err(OmError::InvalidTriple(format!(
                "({c}, {x}, {y}) is not pairwise comodular on a corank-3 flat"
            )));
        }
        Ok(ModularTriple { c: c.clone(), x: x.clone(), y: y.clone() })
    }
}

/// Index-level test used by the scanners: pairwise comodular, composite zero
/// set of corank 3, and three distinct edge zero sets.
pub(crate) fn is_modular_triple_idx(
    om: &OrientedMatroid,
    ci: usize,
    xi: usize,
    yi: usize,
) -> bool {
    if om.rank() < 3 {
        return false;
    }
    if !(om.comodular_idx(ci, xi) && om.comodular_idx(ci, yi) && om.comodular_idx(xi, yi)) {
        return false;
    }
    let (zc, zx, zy) = (om.zero_mask(ci), om.zero_mask(xi), om.zero_mask(yi));
    if om.rank_mask(zc & zx & zy) != om.rank() - 3 {
        return false;
    }
    zc & zx != zc & zy && zc & zx != zx & zy && zc & zy != zx & zy
}

/// The cocircuit on both lines of the edge pair, unique up to sign when the
/// zero sets meet in a corank-3 flat. The sign is fixed by `C_g = +`, and by
/// a leading `+` in ground order when `C_g = 0`.
pub fn crossing_point(
    om: &OrientedMatroid,
    g: usize,
    f_edge: &SignVector,
    g_edge: &SignVector,
) -> Result<SignVector> {
    for e in [f_edge, g_edge] {
        if !om.is_edge(e)? {
            return Err(OmError::NotAnEdge(e.to_string()));
        }
    }
    let meet = f_edge.zero_set().inter(g_edge.zero_set());
    if om.rank() < 3 || om.rank_of(meet)? != om.rank() - 3 {
        return Err(OmError::NoCrossingPoint(format!(
            "zero sets of {f_edge} and {g_edge} do not meet in a corank-3 flat"
        )));
    }
    let both = f_edge.zero_set().union(g_edge.zero_set()).0;
    let on_both: Vec<usize> = (0..om.cocircuits().len())
        .filter(|&i| both & !om.zero_mask(i) == 0)
        .collect();
    if on_both.len() != 2 {
        return Err(OmError::NoCrossingPoint(format!(
            "{} candidates lie on both lines instead of one opposite pair",
            on_both.len()
        )));
    }
    let c = &om.cocircuits()[on_both[0]];
    Ok(match c.get(g) {
        Sign::Plus => c.clone(),
        Sign::Minus => c.negated(),
        Sign::Zero => c.canonical_representative(),
    })
}

/// The affine portion of the line through `x ∘ y`, walked from `x` to `y`.
/// Both endpoints must be comodular cocircuits positive at `g`; consecutive
/// cocircuits on a line are exactly the conformal pairs.
pub fn line_path(
    om: &OrientedMatroid,
    g: usize,
    x: &SignVector,
    y: &SignVector,
) -> Result<Vec<SignVector>> {
    let i = om.require_index(x)?;
    let j = om.require_index(y)?;
    Ok(line_path_idx(om, g, i, j)?
        .into_iter()
        .map(|v| om.cocircuits()[v].clone())
        .collect())
}

pub(crate) fn line_path_idx(
    om: &OrientedMatroid,
    g: usize,
    i: usize,
    j: usize,
) -> Result<Vec<usize>> {
    if i == j {
        return Ok(vec![i]);
    }
    if !om.comodular_idx(i, j) {
        return Err(OmError::NotComodular {
            x: om.cocircuits()[i].to_string(),
            y: om.cocircuits()[j].to_string(),
        });
    }
    let line = om.zero_mask(i) & om.zero_mask(j);
    let verts: Vec<usize> = om
        .on_line_idx(line)
        .into_iter()
        .filter(|&v| om.cocircuits()[v].get(g) == Sign::Plus)
        .collect();
    for e in [i, j] {
        if !verts.contains(&e) {
            return Err(OmError::InvalidPath(format!(
                "endpoint {} does not lie on the affine line",
                om.cocircuits()[e]
            )));
        }
    }
    // BFS over conformal adjacency on the affine arc.
    let mut parent = vec![usize::MAX; verts.len()];
    let start = verts.iter().position(|&v| v == i).unwrap();
    let goal = verts.iter().position(|&v| v == j).unwrap();
    parent[start] = start;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        if a == goal {
            break;
        }
        for b in 0..verts.len() {
            if parent[b] == usize::MAX && om.conformal_idx(verts[a], verts[b]) && a != b {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    if parent[goal] == usize::MAX {
        return Err(OmError::InvalidPath(
            "affine line is disconnected between the endpoints".into(),
        ));
    }
    let mut path = vec![goal];
    while *path.last().unwrap() != start {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(path.into_iter().map(|v| verts[v]).collect())
}

/// Overall direction of a walk: `Some(+)` if every step is forward or
/// undirected with a strict forward step, symmetrically `Some(-)`,
/// `Some(0)` if fully undirected, `None` when strict steps conflict.
pub fn path_direction(prog: &Program, path: &[SignVector]) -> Result<Option<Sign>> {
    let mut seen_plus = false;
    let mut seen_minus = false;
    for pair in path.windows(2) {
        match prog.dir(&pair[0], &pair[1])? {
            Sign::Plus => seen_plus = true,
            Sign::Minus => seen_minus = true,
            Sign::Zero => {}
        }
    }
    Ok(match (seen_plus, seen_minus) {
        (true, true) => None,
        (true, false) => Some(Sign::Plus),
        (false, true) => Some(Sign::Minus),
        (false, false) => Some(Sign::Zero),
    })
}

/// Every step of the walk runs with `d` (or is undirected), and at least one
/// step is strict when `d` is.
pub fn directed_like(prog: &Program, path: &[SignVector], d: Sign) -> Result<bool> {
    Ok(path_direction(prog, path)? == Some(d))
}

/// Elimination of `g` between a conformal adjacent pair on an affine line
/// yields the line's cocircuit at infinity ahead of the travel direction.
/// Checks that the whole walk from `x` onwards heads towards a single
/// infinity cocircuit and returns it.
fn line_heads_to_one_infinity(
    prog: &Program,
    x: &SignVector,
    c: &SignVector,
) -> Result<bool> {
    let om = prog.om();
    let xi = om.require_index(x)?;
    let ci = om.require_index(c)?;
    let line = om.zero_mask(xi) & om.zero_mask(ci);
    let verts: Vec<usize> = om
        .on_line_idx(line)
        .into_iter()
        .filter(|&v| om.cocircuits()[v].get(prog.g) == Sign::Plus)
        .collect();
    if verts.len() < 2 {
        return Ok(true);
    }
    // order the arc as a path starting from a degree-one endpoint
    let degree = |v: usize| {
        verts
            .iter()
            .filter(|&&w| w != v && om.conformal_idx(v, w))
            .count()
    };
    let Some(&end) = verts.iter().find(|&&v| degree(v) <= 1) else {
        return Err(OmError::InvalidPath("affine line is not an arc".into()));
    };
    let far = verts
        .iter()
        .copied()
        .max_by_key(|&v| line_path_idx(om, prog.g, end, v).map(|p| p.len()).unwrap_or(0))
        .unwrap();
    let walk = line_path_idx(om, prog.g, end, far)?;
    let mut ahead = None;
    for pair in walk.windows(2) {
        let z = om.eliminate_idx(om.negation_of(pair[0]), pair[1], prog.g)?;
        if z != ci && z != om.negation_of(ci) {
            return Ok(false);
        }
        if *ahead.get_or_insert(z) != z {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Eliminating `g` against the triple's `c` sends the pair `x, y` to an edge
/// of the program that swaps infinity for `e`, reversing the direction.
/// Returns the projected pair after checking the direction identity.
pub fn project_pair(
    prog: &Program,
    t: &ModularTriple,
    e: usize,
) -> Result<(SignVector, SignVector)> {
    let om = prog.om();
    for v in [&t.c, &t.x, &t.y] {
        if v.get(prog.g) != Sign::Plus {
            return Err(OmError::InvalidTriple(format!(
                "{v} is not positive at infinity"
            )));
        }
    }
    if t.c.get(e).is_zero() || !t.x.get(e).is_zero() || !t.y.get(e).is_zero() {
        return Err(OmError::InvalidTriple(format!(
            "element {} must be in the support of the apex and off the base pair",
            e + 1
        )));
    }
    let x1 = om.eliminate(&t.x.negated(), &t.c, prog.g)?;
    let y1 = om.eliminate(&t.y.negated(), &t.c, prog.g)?;
    if x1 == y1 || !om.comodular(&x1, &y1)? {
        return Err(OmError::LemmaViolated(format!(
            "projected pair ({x1}, {y1}) is not an edge"
        )));
    }
    let swapped = Program::new(om, e, prog.f)?;
    let lhs = prog.dir(&t.x, &t.y)?;
    let rhs = swapped.dir(&x1, &y1)?;
    if lhs != -rhs {
        return Err(OmError::LemmaViolated(format!(
            "projection changed the direction of ({}, {}): {lhs:?} vs -{rhs:?}",
            t.x, t.y
        )));
    }
    Ok((x1, y1))
}

/// The closed walk along the three connecting lines of the triple is not a
/// directed cycle. With the apex at infinity the two rays towards it run in
/// strictly opposite directions, which is checked instead.
pub fn check_triangle(prog: &Program, t: &ModularTriple) -> Result<bool> {
    if t.x.get(prog.g) != Sign::Plus || t.y.get(prog.g) != Sign::Plus {
        return Err(OmError::InvalidTriple(
            "base pair must be positive at infinity".into(),
        ));
    }
    match t.c.get(prog.g) {
        Sign::Plus => {
            let om = prog.om();
            let mut walk = line_path(om, prog.g, &t.x, &t.y)?;
            walk.extend(line_path(om, prog.g, &t.y, &t.c)?.into_iter().skip(1));
            walk.extend(line_path(om, prog.g, &t.c, &t.x)?.into_iter().skip(1));
            Ok(matches!(path_direction(prog, &walk)?, None | Some(Sign::Zero)))
        }
        Sign::Zero => {
            if t.c.get(prog.f).is_zero() {
                return Err(OmError::InvalidTriple(
                    "apex at infinity must not vanish on the objective".into(),
                ));
            }
            Ok(line_heads_to_one_infinity(prog, &t.x, &t.c)?
                && line_heads_to_one_infinity(prog, &t.y, &t.c)?)
        }
        Sign::Minus => Err(OmError::InvalidTriple(
            "apex must not be negative at infinity".into(),
        )),
    }
}

/// With the apex vanishing at infinity and on the objective, edges towards
/// the apex lines are undirected and directions transfer between the lines:
/// `x1 ↔ x`, `y1 ↔ y` and `dir(x1, y1) = dir(x, y)`.
pub fn check_zero_line(
    prog: &Program,
    t: &ModularTriple,
    x1: &SignVector,
    y1: &SignVector,
) -> Result<bool> {
    let om = prog.om();
    if t.x.get(prog.g) != Sign::Plus || t.y.get(prog.g) != Sign::Plus {
        return Err(OmError::InvalidTriple(
            "base pair must be positive at infinity".into(),
        ));
    }
    if !t.c.get(prog.g).is_zero() || !t.c.get(prog.f).is_zero() {
        return Err(OmError::InvalidTriple(
            "apex must vanish at infinity and on the objective".into(),
        ));
    }
    let (ci, xi, yi) = (
        om.require_index(&t.c)?,
        om.require_index(&t.x)?,
        om.require_index(&t.y)?,
    );
    for (w, base, on) in [(x1, &t.x, xi), (y1, &t.y, yi)] {
        let wi = om.require_index(w)?;
        let line = om.zero_mask(ci) & om.zero_mask(on);
        if w.get(prog.g) != Sign::Plus
            || line & !om.zero_mask(wi) != 0
            || w == base
            || wi == ci
            || wi == om.negation_of(ci)
        {
            return Err(OmError::InvalidTriple(format!(
                "{w} is not an affine interior point of the line through {base}"
            )));
        }
    }
    if x1 == y1 || !om.comodular(x1, y1)? {
        return Err(OmError::InvalidTriple(format!(
            "({x1}, {y1}) is not an edge"
        )));
    }
    Ok(prog.dir(x1, &t.x)?.is_zero()
        && prog.dir(y1, &t.y)?.is_zero()
        && prog.dir(x1, y1)? == prog.dir(&t.x, &t.y)?)
}

/// All modular triples of the program with both base points affine, as index
/// triples `(c, x, y)` with `x < y`; the apex filter narrows `c`.
fn affine_triples(
    prog: &Program,
    apex: impl Fn(&SignVector) -> bool,
) -> Vec<(usize, usize, usize)> {
    let om = prog.om();
    let affine: Vec<usize> = (0..om.cocircuits().len())
        .filter(|&i| om.cocircuits()[i].get(prog.g) == Sign::Plus)
        .collect();
    let mut out = Vec::new();
    for (ai, &xi) in affine.iter().enumerate() {
        for &yi in affine.iter().skip(ai + 1) {
            for ci in 0..om.cocircuits().len() {
                if ci != xi
                    && ci != yi
                    && apex(&om.cocircuits()[ci])
                    && is_modular_triple_idx(om, ci, xi, yi)
                {
                    out.push((ci, xi, yi));
                }
            }
        }
    }
    out
}

fn triple_tuple(prog: &Program, t: &ModularTriple) -> String {
    format!(
        "g={} f={} c={} x={} y={}",
        prog.g + 1,
        prog.f + 1,
        t.c,
        t.x,
        t.y
    )
}

/// Exhaustive projection scan: every affine modular triple and every usable
/// swap element.
pub fn scan_projection(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("projection");
    for (ci, xi, yi) in affine_triples(prog, |c| c.get(prog.g) == Sign::Plus) {
        let t = ModularTriple {
            c: om.cocircuits()[ci].clone(),
            x: om.cocircuits()[xi].clone(),
            y: om.cocircuits()[yi].clone(),
        };
        for e in 0..om.n() {
            if e == prog.f
                || t.c.get(e).is_zero()
                || !t.x.get(e).is_zero()
                || !t.y.get(e).is_zero()
            {
                continue;
            }
            let tuple = format!("{} e={}", triple_tuple(prog, &t), e + 1);
            match project_pair(prog, &t, e) {
                Ok(_) => report.record(verbose, tuple, "reversed".into(), "reversed".into()),
                Err(OmError::LemmaViolated(msg)) => {
                    report.record(verbose, tuple, "reversed".into(), msg)
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

/// Exhaustive triangle scan over affine modular triples, apex affine or at
/// infinity with a nonzero objective value.
pub fn scan_triangle(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("triangle");
    let apex = |c: &SignVector| {
        c.get(prog.g) == Sign::Plus
            || (c.get(prog.g).is_zero() && !c.get(prog.f).is_zero())
    };
    for (ci, xi, yi) in affine_triples(prog, apex) {
        let t = ModularTriple {
            c: om.cocircuits()[ci].clone(),
            x: om.cocircuits()[xi].clone(),
            y: om.cocircuits()[yi].clone(),
        };
        let tuple = triple_tuple(prog, &t);
        let ok = check_triangle(prog, &t)?;
        report.record(verbose, tuple, "acyclic".into(), if ok { "acyclic" } else { "cycle" }.into());
    }
    Ok(report)
}

/// Exhaustive zero-line scan: apexes vanishing at infinity and on the
/// objective, with every admissible interior pair of the two apex lines.
pub fn scan_zero_line(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("zero-line");
    let apex = |c: &SignVector| c.get(prog.g).is_zero() && c.get(prog.f).is_zero();
    for (ci, xi, yi) in affine_triples(prog, apex) {
        // one representative per opposite apex pair
        if om.negation_of(ci) < ci {
            continue;
        }
        let t = ModularTriple {
            c: om.cocircuits()[ci].clone(),
            x: om.cocircuits()[xi].clone(),
            y: om.cocircuits()[yi].clone(),
        };
        let interior = |base: usize| -> Vec<usize> {
            let line = om.zero_mask(ci) & om.zero_mask(base);
            om.on_line_idx(line)
                .into_iter()
                .filter(|&v| {
                    om.cocircuits()[v].get(prog.g) == Sign::Plus
                        && v != base
                        && v != ci
                        && v != om.negation_of(ci)
                })
                .collect()
        };
        for &x1 in &interior(xi) {
            for &y1 in &interior(yi) {
                if x1 == y1 || !om.comodular_idx(x1, y1) {
                    continue;
                }
                let (x1v, y1v) = (&om.cocircuits()[x1], &om.cocircuits()[y1]);
                let tuple = format!("{} x1={} y1={}", triple_tuple(prog, &t), x1v, y1v);
                let ok = check_zero_line(prog, &t, x1v, y1v)?;
                report.record(
                    verbose,
                    tuple,
                    "transferred".into(),
                    if ok { "transferred" } else { "broken" }.into(),
                );
            }
        }
    }
    Ok(report)
}

/// Direction identities plus the projection, triangle and zero-line scans,
/// merged over every admissible pair of `om`.
pub fn scan_core_lemmas(
    om: &OrientedMatroid,
    seed: u64,
    verbose: bool,
) -> Result<Vec<ScanReport>> {
    let mut merged: Vec<ScanReport> = dirprops::scan_all_direction_props(om, seed, verbose)?;
    let add = |r: ScanReport, merged: &mut Vec<ScanReport>| {
        if let Some(slot) = merged.iter_mut().find(|s| s.lemma == r.lemma) {
            slot.absorb(r);
        } else {
            merged.push(r);
        }
    };
    for (g, f) in admissible_pairs(om) {
        let prog = Program::new(om, g, f)?;
        add(scan_projection(&prog, verbose)?, &mut merged);
        add(scan_triangle(&prog, verbose)?, &mut merged);
        add(scan_zero_line(&prog, verbose)?, &mut merged);
    }
    Ok(merged)
}
