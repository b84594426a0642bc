//! Walk normalization in a single-element extension: detours that replace an
//! edge at a new cocircuit by a walk through old ones, the prenormalized and
//! normalized predicates, reduction of closed walks to normalized directed
//! cycles, and the corresponding path of old cocircuits.

use std::collections::HashMap;

use crate::error::{OmError, Result};
use crate::extension::ExtensionResult;
use crate::matroid::OrientedMatroid;
use crate::program::Program;
use crate::sign::{Sign, SignVector};

use super::constellation::{classify_constellation, ConstellationKind};
use super::{crossing_point, dir_pair, line_path, path_direction, ScanReport};

/// Outcome of normalizing a walk. The flags restate the predicates
/// [`is_prenormalized`] and [`is_normalized`] evaluated on `vertices`.
#[derive(Clone, Debug)]
pub struct NormalizedPath {
    pub vertices: Vec<SignVector>,
    pub prenormalized: bool,
    pub normalized: bool,
}

/// Direction between the two provenance lifts of a new cocircuit, positive
/// localization side first.
pub fn provenance_dir(
    ext: &ExtensionResult,
    prog: &Program,
    v: &SignVector,
) -> Result<Sign> {
    let (a, b) = ext.provenance(v)?;
    prog.dir(&a, &b)
}

/// An old cocircuit next to a new one with undirected provenance must be one
/// of its lifts.
fn lift_flank_ok(
    ext: &ExtensionResult,
    prog: &Program,
    v: &SignVector,
    w: &SignVector,
) -> Result<bool> {
    if !provenance_dir(ext, prog, v)?.is_zero() {
        return Ok(true);
    }
    let (v1, v2) = ext.provenance(v)?;
    Ok(w == &v1 || w == &v2)
}

/// One adjacent pair of a walk against the prenormalized conditions, checked
/// in both orders: adjacent new cocircuits need equal strict provenance
/// directions, and undirected provenance confines the neighbor to a lift.
fn pair_ok(
    ext: &ExtensionResult,
    prog: &Program,
    a: &SignVector,
    b: &SignVector,
) -> Result<bool> {
    let a_new = !ext.classify_old(a)?;
    let b_new = !ext.classify_old(b)?;
    match (a_new, b_new) {
        (true, true) => {
            let da = provenance_dir(ext, prog, a)?;
            Ok(da == provenance_dir(ext, prog, b)? && !da.is_zero())
        }
        (true, false) => lift_flank_ok(ext, prog, a, b),
        (false, true) => lift_flank_ok(ext, prog, b, a),
        (false, false) => Ok(true),
    }
}

/// Positions `t` whose adjacent pair `(P[t], P[t+1])` violates the
/// prenormalized conditions.
pub fn violations(
    ext: &ExtensionResult,
    prog: &Program,
    path: &[SignVector],
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in 0..path.len().saturating_sub(1) {
        if !pair_ok(ext, prog, &path[t], &path[t + 1])? {
            out.push(t);
        }
    }
    Ok(out)
}

pub fn is_prenormalized(
    ext: &ExtensionResult,
    prog: &Program,
    path: &[SignVector],
) -> Result<bool> {
    Ok(violations(ext, prog, path)?.is_empty())
}

/// A prenormalized walk is normalized when every new cocircuit with
/// undirected provenance sits strictly between its two distinct lifts. Open
/// walks fail this at their endpoints; a closed walk (first entry repeated
/// last) wraps around the junction.
pub fn is_normalized(
    ext: &ExtensionResult,
    prog: &Program,
    path: &[SignVector],
) -> Result<bool> {
    if !is_prenormalized(ext, prog, path)? {
        return Ok(false);
    }
    let closed = path.len() > 1 && path.first() == path.last();
    let inner = if closed { &path[..path.len() - 1] } else { path };
    let n = inner.len();
    for (t, v) in inner.iter().enumerate() {
        if ext.classify_old(v)? || !provenance_dir(ext, prog, v)?.is_zero() {
            continue;
        }
        if !closed && (t == 0 || t + 1 == n) {
            return Ok(false);
        }
        let (v1, v2) = ext.provenance(v)?;
        let prev = &inner[(t + n - 1) % n];
        let next = &inner[(t + 1) % n];
        if !((prev == &v1 && next == &v2) || (prev == &v2 && next == &v1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn first_element(mask: u32) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(mask.trailing_zeros() as usize)
    }
}

/// Whether the detour construction applies to the ordered pair `(x, y)`:
/// `y` new, both zero at the new element and positive at infinity, a
/// conformal edge, and either the provenance of `y` is undirected or both
/// are new with opposite strict provenance directions.
pub fn substitution_applies(
    ext: &ExtensionResult,
    prog: &Program,
    x: &SignVector,
    y: &SignVector,
) -> Result<bool> {
    let om = &ext.extended;
    let p = ext.p();
    if ext.classify_old(y)? {
        return Ok(false);
    }
    if !x.get(p).is_zero() || !y.get(p).is_zero() {
        return Ok(false);
    }
    if x.get(prog.g) != Sign::Plus || y.get(prog.g) != Sign::Plus {
        return Ok(false);
    }
    let xi = om.require_index(x)?;
    let yi = om.require_index(y)?;
    if xi == yi || !om.conformal_idx(xi, yi) || !om.comodular_idx(xi, yi) {
        return Ok(false);
    }
    let dy = provenance_dir(ext, prog, y)?;
    if dy.is_zero() {
        return Ok(true);
    }
    if ext.classify_old(x)? {
        return Ok(false);
    }
    let dx = provenance_dir(ext, prog, x)?;
    Ok(dx == -dy && !dx.is_zero())
}

/// The cocircuit on the line of `y1 ∘ y` vanishing at `e`, signed away from
/// minus at infinity (ties broken by the canonical representative).
fn flat_point_on_line(
    om: &OrientedMatroid,
    g: usize,
    y1: &SignVector,
    y: &SignVector,
    e: usize,
) -> Result<SignVector> {
    let i = om.require_index(y1)?;
    let j = om.require_index(y)?;
    let line = om.zero_mask(i) & om.zero_mask(j);
    for v in om.on_line_idx(line) {
        let c = &om.cocircuits()[v];
        if !c.get(e).is_zero() {
            continue;
        }
        return Ok(match c.get(g) {
            Sign::Plus => c.clone(),
            Sign::Minus => c.negated(),
            Sign::Zero => c.canonical_representative(),
        });
    }
    Err(OmError::NoCrossingPoint(format!(
        "no cocircuit on the line of {y1} and {y} vanishes at element {e}"
    )))
}

/// The detour for the ordered pair `(x, y)`: a walk from `x` to `y` directed
/// like the edge `x ∘ y` whose interior consists of old cocircuits. The
/// pivot is the crossing point of the two provenance lines when `x` is new,
/// otherwise the point of the line of `y` flat in a direction missing from
/// `x`. A pivot at infinity is resolved by eliminating towards the lift of
/// `y` that stays affine.
pub fn build_substitute_path(
    ext: &ExtensionResult,
    prog: &Program,
    x: &SignVector,
    y: &SignVector,
) -> Result<Vec<SignVector>> {
    if !substitution_applies(ext, prog, x, y)? {
        return Err(OmError::NormalizeFailed(format!(
            "detour conditions fail for {x} and {y}"
        )));
    }
    let om = &ext.extended;
    let g = prog.g;
    let p = ext.p();
    let x_new = !ext.classify_old(x)?;
    let (mut y1, mut y2) = ext.provenance(y)?;
    let c = if x_new {
        let (x1, _) = ext.provenance(x)?;
        crossing_point(om, g, &x1.compose(x)?, &y1.compose(y)?)?
    } else {
        let e = first_element(y.support().0 & !x.support().0).ok_or_else(|| {
            OmError::NormalizeFailed(format!("support of {y} lies inside support of {x}"))
        })?;
        flat_point_on_line(om, g, &y1, y, e)?
    };
    match c.get(g) {
        Sign::Plus => {
            let mut path = line_path(om, g, x, &c)?;
            path.extend(line_path(om, g, &c, y)?.into_iter().skip(1));
            Ok(path)
        }
        Sign::Zero => {
            if !provenance_dir(ext, prog, y)?.is_zero() {
                return Err(OmError::NormalizeFailed(format!(
                    "pivot of {x} and {y} sits at infinity despite strict provenance"
                )));
            }
            if y1.get(g) != Sign::Plus {
                std::mem::swap(&mut y1, &mut y2);
            }
            if y1.get(g) != Sign::Plus {
                return Err(OmError::NormalizeFailed(format!(
                    "no lift of {y} is positive at infinity"
                )));
            }
            let cp = c.get(p);
            let c = if cp == y1.get(p) {
                c
            } else if cp == -y1.get(p) {
                c.negated()
            } else {
                return Err(OmError::NormalizeFailed(format!(
                    "pivot of {x} and {y} vanishes at the new element"
                )));
            };
            let h = first_element(y.support().0 & !y1.support().0).ok_or_else(|| {
                OmError::NormalizeFailed(format!(
                    "support of {y} lies inside support of its lift {y1}"
                ))
            })?;
            if x.get(h).is_zero() {
                return Ok(vec![x.clone(), y1, y.clone()]);
            }
            let z = om.eliminate(&c, x, h)?;
            let mut path = line_path(om, g, x, &z)?;
            path.extend(line_path(om, g, &z, &y1)?.into_iter().skip(1));
            path.push(y.clone());
            Ok(path)
        }
        Sign::Minus => Err(OmError::NormalizeFailed(format!(
            "pivot of {x} and {y} came out negative at infinity"
        ))),
    }
}

/// Collapses backtracking triples of a closed walk: a new cocircuit with
/// undirected provenance flanked by the same lift on both sides drops out
/// together with the duplicate flank. The junction wraps around.
fn collapse_backtracks(
    ext: &ExtensionResult,
    prog: &Program,
    walk: Vec<SignVector>,
) -> Result<Vec<SignVector>> {
    if walk.len() < 2 || walk.first() != walk.last() {
        return Ok(walk);
    }
    let mut cyc = walk;
    cyc.pop();
    'scan: loop {
        let n = cyc.len();
        if n < 2 {
            break;
        }
        for t in 0..n {
            let v = &cyc[t];
            if ext.classify_old(v)? || !provenance_dir(ext, prog, v)?.is_zero() {
                continue;
            }
            let prev = &cyc[(t + n - 1) % n];
            let next = &cyc[(t + 1) % n];
            if prev != next {
                continue;
            }
            let (v1, v2) = ext.provenance(v)?;
            if prev != &v1 && prev != &v2 {
                continue;
            }
            if n == 2 {
                // the flank occurs once, cyclically on both sides
                cyc.remove(t);
            } else {
                let drop_dup = (t + 1) % n;
                let mut keep = Vec::with_capacity(n - 2);
                for (idx, item) in cyc.iter().enumerate() {
                    if idx != t && idx != drop_dup {
                        keep.push(item.clone());
                    }
                }
                cyc = keep;
            }
            continue 'scan;
        }
        break;
    }
    if let Some(first) = cyc.first().cloned() {
        cyc.push(first);
    }
    Ok(cyc)
}

/// First closed subwalk of a closed walk keeping a strict forward step;
/// closed subwalks without one are collapsed to their junction vertex and
/// the scan restarts. `None` when no strict step survives anywhere.
fn cut_directed_cycle<F>(walk: &[SignVector], dir: F) -> Result<Option<Vec<SignVector>>>
where
    F: Fn(&SignVector, &SignVector) -> Result<Sign>,
{
    let mut cur: Vec<SignVector> = walk.to_vec();
    loop {
        if cur.len() < 3 {
            return Ok(None);
        }
        let mut seen: HashMap<SignVector, usize> = HashMap::new();
        let mut cut = None;
        for (idx, v) in cur.iter().enumerate() {
            if let Some(&s) = seen.get(v) {
                cut = Some((s, idx));
                break;
            }
            seen.insert(v.clone(), idx);
        }
        let Some((s, t)) = cut else {
            return Ok(None);
        };
        let sub: Vec<SignVector> = cur[s..=t].to_vec();
        let mut strict = false;
        for w in sub.windows(2) {
            if dir(&w[0], &w[1])? == Sign::Plus {
                strict = true;
                break;
            }
        }
        if strict {
            return Ok(Some(sub));
        }
        let mut next: Vec<SignVector> = cur[..=s].to_vec();
        next.extend_from_slice(&cur[t + 1..]);
        cur = next;
    }
}

/// Reduces a prenormalized closed walk: collapse backtracking triples, then
/// cut out a directed cycle while one exists, until the result is
/// normalized. A fully undirected closed walk is returned as collapsed.
fn reduce_closed_walk(
    ext: &ExtensionResult,
    prog: &Program,
    walk: Vec<SignVector>,
) -> Result<Vec<SignVector>> {
    let mut cur = walk;
    loop {
        cur = collapse_backtracks(ext, prog, cur)?;
        let mut strict = false;
        for w in cur.windows(2) {
            if prog.dir(&w[0], &w[1])? == Sign::Plus {
                strict = true;
                break;
            }
        }
        if !strict {
            return Ok(cur);
        }
        let before = cur.len();
        let Some(cycle) = cut_directed_cycle(&cur, |a, b| prog.dir(a, b))? else {
            return Err(OmError::NormalizeFailed(
                "strict closed walk lost its cycle".into(),
            ));
        };
        if is_normalized(ext, prog, &cycle)? {
            return Ok(cycle);
        }
        if cycle.len() >= before {
            return Err(OmError::NormalizeFailed(
                "cycle reduction stopped making progress".into(),
            ));
        }
        cur = cycle;
    }
}

/// Removes every prenormalization violation of a directed walk by splicing
/// in detours, one violation per step; the step budget equals the initial
/// violation count and every detour must lower the count by exactly one.
/// Open walks keep endpoints and overall direction and gain only old
/// cocircuits; a closed walk is afterwards reduced towards a normalized
/// directed cycle.
pub fn normalize_path(
    ext: &ExtensionResult,
    prog: &Program,
    path: &[SignVector],
) -> Result<NormalizedPath> {
    if path.len() < 2 {
        return Err(OmError::InvalidPath(
            "normalization needs at least one step".into(),
        ));
    }
    for v in path {
        if v.get(prog.g) != Sign::Plus {
            return Err(OmError::InvalidPath(format!(
                "{v} is not positive at infinity"
            )));
        }
    }
    let Some(direction) = path_direction(prog, path)? else {
        return Err(OmError::InvalidPath(
            "the walk mixes strict directions".into(),
        ));
    };
    let closed = path.first() == path.last();
    let mut cur: Vec<SignVector> = path.to_vec();
    if closed && direction == Sign::Minus {
        cur.reverse();
    }
    let mut pending = violations(ext, prog, &cur)?;
    let budget = pending.len();
    for _ in 0..budget {
        let Some(&t) = pending.first() else { break };
        let (a, b) = (cur[t].clone(), cur[t + 1].clone());
        let detour = if substitution_applies(ext, prog, &a, &b)? {
            build_substitute_path(ext, prog, &a, &b)?
        } else if substitution_applies(ext, prog, &b, &a)? {
            let mut back = build_substitute_path(ext, prog, &b, &a)?;
            back.reverse();
            back
        } else {
            return Err(OmError::NormalizeFailed(format!(
                "no detour applies to {a} and {b}"
            )));
        };
        cur.splice(t..=t + 1, detour);
        let now = violations(ext, prog, &cur)?;
        if now.len() + 1 != pending.len() {
            return Err(OmError::NormalizeFailed(format!(
                "a detour changed the violation count from {} to {}",
                pending.len(),
                now.len()
            )));
        }
        pending = now;
    }
    if !pending.is_empty() {
        return Err(OmError::NormalizeFailed(
            "violations survived the substitution budget".into(),
        ));
    }
    let expect = if closed && direction == Sign::Minus {
        Sign::Plus
    } else {
        direction
    };
    if path_direction(prog, &cur)? != Some(expect) {
        return Err(OmError::NormalizeFailed(
            "the substituted walk changed direction".into(),
        ));
    }
    if !closed && (cur.first() != path.first() || cur.last() != path.last()) {
        return Err(OmError::NormalizeFailed(
            "the substituted walk moved its endpoints".into(),
        ));
    }
    for v in path {
        if !cur.contains(v) {
            return Err(OmError::NormalizeFailed(format!(
                "the substituted walk lost the cocircuit {v}"
            )));
        }
    }
    for v in &cur {
        if !path.contains(v) && !ext.classify_old(v)? {
            return Err(OmError::NormalizeFailed(format!(
                "the substituted walk gained the new cocircuit {v}"
            )));
        }
    }
    if closed {
        cur = reduce_closed_walk(ext, prog, cur)?;
    }
    let prenormalized = is_prenormalized(ext, prog, &cur)?;
    let normalized = is_normalized(ext, prog, &cur)?;
    Ok(NormalizedPath {
        vertices: cur,
        prenormalized,
        normalized,
    })
}

/// Old shadow of a walk, entry by entry: old cocircuits stay, each new one
/// maps to its corresponding cocircuit.
pub fn corresponding_sequence(
    ext: &ExtensionResult,
    path: &[SignVector],
) -> Result<Vec<SignVector>> {
    let mut out = Vec::with_capacity(path.len());
    for v in path {
        if ext.classify_old(v)? {
            out.push(v.clone());
        } else {
            out.push(ext.corresponding_cocircuit(v)?);
        }
    }
    Ok(out)
}

/// The corresponding path: the corresponding sequence with equal neighbors
/// merged. Entries keep the extension length; each step is checked to be a
/// conformal edge of the base after dropping the new element, and closed
/// input must stay closed.
pub fn corresponding_path(
    ext: &ExtensionResult,
    path: &[SignVector],
) -> Result<Vec<SignVector>> {
    let seq = corresponding_sequence(ext, path)?;
    let mut out: Vec<SignVector> = Vec::new();
    for v in seq {
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    let keep: Vec<usize> = (0..ext.p()).collect();
    for w in out.windows(2) {
        let a = ext.base.require_index(&w[0].restrict(&keep))?;
        let b = ext.base.require_index(&w[1].restrict(&keep))?;
        if !ext.base.conformal_idx(a, b) || !ext.base.comodular_idx(a, b) {
            return Err(OmError::InvalidPath(format!(
                "corresponding step {} to {} is not a base edge",
                w[0], w[1]
            )));
        }
    }
    if path.len() > 1
        && path.first() == path.last()
        && out.len() > 1
        && out.first() != out.last()
    {
        return Err(OmError::InvalidPath(
            "corresponding path lost its closure".into(),
        ));
    }
    Ok(out)
}

/// Deterministic harvest of directed simple walks from the cocircuit graph:
/// depth-first over forward and undirected arcs, recording walks that can no
/// longer extend (or hit the length cap) and carry a strict step.
pub fn harvest_directed_paths(
    prog: &Program,
    max_len: usize,
    max_paths: usize,
) -> Result<Vec<Vec<SignVector>>> {
    let graph = prog.build_graph()?;
    let n = graph.vertices.len();
    let mut arcs: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for e in &graph.edges {
        match e.dir {
            Sign::Zero => {
                arcs[e.a].push((e.b, false));
                arcs[e.b].push((e.a, false));
            }
            Sign::Plus => arcs[e.a].push((e.b, true)),
            Sign::Minus => arcs[e.b].push((e.a, true)),
        }
    }
    for list in &mut arcs {
        list.sort_unstable();
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut stack = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        if out.len() >= max_paths {
            break;
        }
        stack.push(start);
        on_path[start] = true;
        dfs_walks(&arcs, &mut stack, &mut on_path, 0, max_len.max(2), max_paths, &mut out);
        on_path[start] = false;
        stack.pop();
    }
    Ok(out
        .into_iter()
        .map(|idxs| idxs.into_iter().map(|i| graph.vertices[i].clone()).collect())
        .collect())
}

fn dfs_walks(
    arcs: &[Vec<(usize, bool)>],
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    strict: usize,
    max_len: usize,
    max_paths: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= max_paths {
        return;
    }
    let v = *stack.last().unwrap();
    let mut extended = false;
    if stack.len() < max_len {
        for &(w, s) in &arcs[v] {
            if on_path[w] {
                continue;
            }
            extended = true;
            stack.push(w);
            on_path[w] = true;
            dfs_walks(arcs, stack, on_path, strict + usize::from(s), max_len, max_paths, out);
            stack.pop();
            on_path[w] = false;
            if out.len() >= max_paths {
                return;
            }
        }
    }
    if !extended && strict > 0 && stack.len() >= 2 {
        out.push(stack.clone());
    }
}

/// The common value of the walk at `f` when it is constant and nonzero.
fn constant_nonzero_value(path: &[SignVector], f: usize) -> Option<Sign> {
    let v = path.first()?.get(f);
    if v.is_zero() || path.iter().any(|x| x.get(f) != v) {
        None
    } else {
        Some(v)
    }
}

/// Every eligible edge pair admits a detour: old interior, kept endpoints, a
/// walk along graph edges, directed like the replaced edge, entered and left
/// through provenance lifts.
pub fn scan_substitution(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let mut rep = ScanReport::new("edge-substitution");
    let om = &ext.extended;
    let p = ext.p();
    let Ok(prog) = Program::new(om, g, f) else {
        return Ok(rep);
    };
    let m = om.cocircuits().len();
    for yi in 0..m {
        if !ext.origins[yi].is_new() {
            continue;
        }
        let y = &om.cocircuits()[yi];
        if y.get(g) != Sign::Plus {
            continue;
        }
        for xi in 0..m {
            if xi == yi {
                continue;
            }
            let x = &om.cocircuits()[xi];
            if x.get(g) != Sign::Plus || !x.get(p).is_zero() {
                continue;
            }
            if !om.conformal_idx(xi, yi) || !om.comodular_idx(xi, yi) {
                continue;
            }
            if !substitution_applies(ext, &prog, x, y)? {
                rep.skip();
                continue;
            }
            let tuple = format!("g={} f={} x={x} y={y}", g + 1, f + 1);
            let path = match build_substitute_path(ext, &prog, x, y) {
                Ok(path) => path,
                Err(err) => {
                    rep.record(verbose, tuple, "detour".into(), format!("error: {err}"));
                    continue;
                }
            };
            rep.record(
                verbose,
                format!("{tuple} ends"),
                "kept".into(),
                if path.first() == Some(x) && path.last() == Some(y) {
                    "kept".into()
                } else {
                    "moved".into()
                },
            );
            let mut interior = "old".to_string();
            for v in &path[1..path.len().saturating_sub(1)] {
                if !ext.classify_old(v)? {
                    interior = format!("new {v}");
                    break;
                }
            }
            rep.record(verbose, format!("{tuple} interior"), "old".into(), interior);
            let mut chain = "walk".to_string();
            for w in path.windows(2) {
                let a = om.require_index(&w[0])?;
                let b = om.require_index(&w[1])?;
                if !om.conformal_idx(a, b)
                    || !om.comodular_idx(a, b)
                    || w[1].get(g) != Sign::Plus
                {
                    chain = format!("break at {}", w[1]);
                    break;
                }
            }
            rep.record(verbose, format!("{tuple} chain"), "walk".into(), chain);
            let edge_dir = prog.dir(x, y)?;
            let got = path_direction(&prog, &path)?;
            rep.record(
                verbose,
                format!("{tuple} direction"),
                edge_dir.to_string(),
                match got {
                    Some(d) => d.to_string(),
                    None => "mixed".into(),
                },
            );
            let (y1, y2) = ext.provenance(y)?;
            let before_y = &path[path.len() - 2];
            let mut shape = if path.len() >= 3 && (before_y == &y1 || before_y == &y2) {
                "lift".to_string()
            } else {
                format!("stray {before_y}")
            };
            if !ext.classify_old(x)? {
                let (x1, x2) = ext.provenance(x)?;
                if path.len() < 3 || (path[1] != x1 && path[1] != x2) {
                    shape = format!("stray {}", path[1]);
                }
            }
            rep.record(verbose, format!("{tuple} shape"), "lift".into(), shape);
        }
    }
    Ok(rep)
}

/// Harvested directed walks normalize within the violation budget, and the
/// results restate the guarantees checked inside [`normalize_path`].
pub fn scan_normalization(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let mut rep = ScanReport::new("path-normalization");
    let om = &ext.extended;
    let Ok(prog) = Program::new(om, g, f) else {
        return Ok(rep);
    };
    for path in harvest_directed_paths(&prog, 5, 24)? {
        let tuple = format!(
            "g={} f={} start={} len={}",
            g + 1,
            f + 1,
            path[0],
            path.len()
        );
        let observed = match normalize_path(ext, &prog, &path) {
            Ok(res) if res.prenormalized => "prenormalized".into(),
            Ok(_) => "violations left".into(),
            Err(err) => format!("error: {err}"),
        };
        rep.record(verbose, tuple, "prenormalized".into(), observed);
    }
    Ok(rep)
}

/// Direction expectation for one step of the corresponding path, given the
/// originals. Strict agreement holds for old pairs and for an old neighbor
/// of a new cocircuit when that neighbor keeps a nonzero value at the new
/// element (only then it sits on the provenance line, so the corresponding
/// edge shares its zero set with the provenance edge). Everything else only
/// promises agreement up to undirected.
fn corresponding_step_strict(
    ext: &ExtensionResult,
    g: usize,
    a: &SignVector,
    b: &SignVector,
    a_new: bool,
    b_new: bool,
) -> bool {
    let p = ext.p();
    match (a_new, b_new) {
        (false, false) => true,
        (true, false) => !b.get(p).is_zero(),
        (false, true) => !a.get(p).is_zero(),
        (true, true) => match classify_constellation(ext, g, a, b) {
            Ok(c) => !matches!(
                c.kind,
                ConstellationKind::Disjoint
                    | ConstellationKind::SharedLead
                    | ConstellationKind::IndexChange { .. }
            ),
            Err(_) => false,
        },
    }
}

/// The corresponding path of each harvested walk is an old walk of the base,
/// covers the old cocircuits, keeps directed steps aligned with the original
/// edges, and as a whole never runs against the original direction.
pub fn scan_corresponding(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let mut rep = ScanReport::new("corresponding-path");
    let om = &ext.extended;
    let Ok(prog) = Program::new(om, g, f) else {
        return Ok(rep);
    };
    for path in harvest_directed_paths(&prog, 5, 24)? {
        let tuple = format!(
            "g={} f={} start={} len={}",
            g + 1,
            f + 1,
            path[0],
            path.len()
        );
        let seq = corresponding_sequence(ext, &path)?;
        let corr = match corresponding_path(ext, &path) {
            Ok(corr) => corr,
            Err(err) => {
                rep.record(verbose, tuple, "path".into(), format!("error: {err}"));
                continue;
            }
        };
        let mut olds = "old".to_string();
        for v in &corr {
            if !ext.classify_old(v)? {
                olds = format!("new {v}");
                break;
            }
        }
        rep.record(verbose, format!("{tuple} members"), "old".into(), olds);
        let mut cover = "covered".to_string();
        for v in &path {
            if ext.classify_old(v)? && !corr.contains(v) {
                cover = format!("missing {v}");
                break;
            }
        }
        rep.record(verbose, format!("{tuple} cover"), "covered".into(), cover);
        let mut seen_minus = false;
        let mut whole = Some("follows");
        for t in 0..path.len() - 1 {
            let (qa, qb) = (&seq[t], &seq[t + 1]);
            if qa == qb {
                continue;
            }
            if (qa.get(f).is_zero() && qa.get(g).is_zero())
                || (qb.get(f).is_zero() && qb.get(g).is_zero())
            {
                rep.skip();
                whole = None;
                continue;
            }
            let e_dir = prog.dir(&path[t], &path[t + 1])?;
            let qi = om.require_index(qa)?;
            let qj = om.require_index(qb)?;
            let Some(f_dir) = dir_pair(om, g, f, qi, qj)? else {
                rep.skip();
                whole = None;
                continue;
            };
            if f_dir == Sign::Minus {
                seen_minus = true;
            }
            let a_new = !ext.classify_old(&path[t])?;
            let b_new = !ext.classify_old(&path[t + 1])?;
            let step = format!("{tuple} step {qa} {qb}");
            if corresponding_step_strict(ext, g, &path[t], &path[t + 1], a_new, b_new) {
                rep.record(verbose, step, e_dir.to_string(), f_dir.to_string());
            } else {
                let ok = f_dir.is_zero() || f_dir == e_dir;
                rep.record(
                    verbose,
                    step,
                    "follows".into(),
                    if ok {
                        "follows".into()
                    } else {
                        format!("{f_dir} against {e_dir}")
                    },
                );
            }
        }
        // A directed original walk never maps to a walk with a backward
        // strict step; undefined or flat steps renounce the whole-walk claim.
        if let Some(expected) = whole {
            rep.record(
                verbose,
                format!("{tuple} overall"),
                expected.into(),
                if seen_minus { "reversed".into() } else { "follows".into() },
            );
        }
    }
    Ok(rep)
}

/// In normalized walks with a constant nonzero objective value, aligned
/// provenance lifts of new cocircuits in one new piece are never flat on the
/// objective and at infinity at the same time.
pub fn scan_flat_provenance(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let mut rep = ScanReport::new("flat-provenance");
    let om = &ext.extended;
    let Ok(prog) = Program::new(om, g, f) else {
        return Ok(rep);
    };
    for path in harvest_directed_paths(&prog, 5, 24)? {
        let Ok(res) = normalize_path(ext, &prog, &path) else {
            rep.skip();
            continue;
        };
        if !res.normalized {
            rep.skip();
            continue;
        }
        let q = &res.vertices;
        if constant_nonzero_value(q, f).is_none() {
            rep.skip();
            continue;
        }
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut start = None;
        for (t, v) in q.iter().enumerate() {
            if !ext.classify_old(v)? {
                start.get_or_insert(t);
            } else if let Some(s) = start.take() {
                runs.push((s, t - 1));
            }
        }
        if let Some(s) = start.take() {
            runs.push((s, q.len() - 1));
        }
        for (lo, hi) in runs {
            for s in lo..=hi {
                for t in lo..=hi {
                    let (x1, _) = ext.provenance(&q[s])?;
                    let (y1, _) = ext.provenance(&q[t])?;
                    let tuple = format!("g={} f={} x={} y={}", g + 1, f + 1, q[s], q[t]);
                    let ok = !(x1.get(f).is_zero() && y1.get(g).is_zero());
                    rep.record(
                        verbose,
                        tuple,
                        "nonzero".into(),
                        if ok { "nonzero".into() } else { "flat".into() },
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// A normalized walk with constant nonzero objective value stays normalized
/// after exchanging infinity and objective, negated entrywise when the
/// constant value is negative.
pub fn scan_exchange(
    ext: &ExtensionResult,
    g: usize,
    f: usize,
    verbose: bool,
) -> Result<ScanReport> {
    let mut rep = ScanReport::new("exchange-normalized");
    let om = &ext.extended;
    let Ok(prog) = Program::new(om, g, f) else {
        return Ok(rep);
    };
    let Ok(swapped) = Program::new(om, f, g) else {
        return Ok(rep);
    };
    for path in harvest_directed_paths(&prog, 5, 24)? {
        let Ok(res) = normalize_path(ext, &prog, &path) else {
            rep.skip();
            continue;
        };
        if !res.normalized {
            rep.skip();
            continue;
        }
        let q = &res.vertices;
        let Some(vf) = constant_nonzero_value(q, f) else {
            rep.skip();
            continue;
        };
        let cand: Vec<SignVector> = if vf == Sign::Plus {
            q.clone()
        } else {
            q.iter().map(SignVector::negated).collect()
        };
        let tuple = format!("g={} f={} start={} len={}", g + 1, f + 1, q[0], q.len());
        let observed = match is_normalized(ext, &swapped, &cand) {
            Ok(b) => b.to_string(),
            Err(err) => format!("error: {err}"),
        };
        rep.record(verbose, tuple, "true".into(), observed);
    }
    Ok(rep)
}

/// Sweeps the walk-level scans over every ordered pair of base elements.
pub fn scan_path_lemmas(ext: &ExtensionResult, verbose: bool) -> Result<Vec<ScanReport>> {
    let p = ext.p();
    let mut merged: Vec<ScanReport> = Vec::new();
    let add = |r: ScanReport, merged: &mut Vec<ScanReport>| {
        if let Some(slot) = merged.iter_mut().find(|s| s.lemma == r.lemma) {
            slot.absorb(r);
        } else {
            merged.push(r);
        }
    };
    for g in 0..p {
        for f in 0..p {
            if f == g {
                continue;
            }
            add(scan_substitution(ext, g, f, verbose)?, &mut merged);
            add(scan_normalization(ext, g, f, verbose)?, &mut merged);
            add(scan_corresponding(ext, g, f, verbose)?, &mut merged);
            add(scan_flat_provenance(ext, g, f, verbose)?, &mut merged);
            add(scan_exchange(ext, g, f, verbose)?, &mut merged);
        }
    }
    Ok(merged)
}
