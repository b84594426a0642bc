//! Pairwise identities of the direction function: negation and reorientation
//! symmetry, the objective-order rule, separation splits, transitivity via a
//! shared infinity, role exchange of infinity and objective, and invariance
//! of Euclideanness under reorientation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matroid::OrientedMatroid;
use crate::program::{admissible_pairs, Program};
use crate::sign::{ElemSet, Sign, SignVector};

use super::ScanReport;

/// Ordered index pairs with a defined direction: comodular, not opposite at
/// `g`, not both vanishing at `g`.
fn defined_pairs(prog: &Program) -> Vec<(usize, usize)> {
    let om = prog.om();
    let m = om.cocircuits().len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || !om.comodular_idx(i, j) {
                continue;
            }
            let (a, b) = (
                om.cocircuits()[i].get(prog.g),
                om.cocircuits()[j].get(prog.g),
            );
            if (a.is_zero() && b.is_zero()) || (!a.is_zero() && !b.is_zero() && a != b) {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

/// Unordered comodular index pairs equal and nonzero at `g`.
fn equal_g_pairs(prog: &Program) -> Vec<(usize, usize)> {
    let om = prog.om();
    let m = om.cocircuits().len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let (a, b) = (
                om.cocircuits()[i].get(prog.g),
                om.cocircuits()[j].get(prog.g),
            );
            if !a.is_zero() && a == b && om.comodular_idx(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn pair_tuple(prog: &Program, x: &SignVector, y: &SignVector) -> String {
    format!("g={} f={} x={} y={}", prog.g + 1, prog.f + 1, x, y)
}

/// Reversing the pair reverses the direction.
pub fn scan_dir_antisymmetry(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-antisymmetry");
    for (i, j) in defined_pairs(prog) {
        if i > j {
            continue;
        }
        let d = prog.dir_idx(i, j)?;
        let back = prog.dir_idx(j, i)?;
        report.record(
            verbose,
            pair_tuple(prog, &om.cocircuits()[i], &om.cocircuits()[j]),
            (-d).to_char().into(),
            back.to_char().into(),
        );
    }
    Ok(report)
}

/// Negating both cocircuits and reversing the pair keeps the direction.
pub fn scan_dir_negation(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-negation");
    for (i, j) in defined_pairs(prog) {
        let d = prog.dir_idx(i, j)?;
        let neg = prog.dir_idx(om.negation_of(j), om.negation_of(i))?;
        report.record(
            verbose,
            pair_tuple(prog, &om.cocircuits()[i], &om.cocircuits()[j]),
            d.to_char().into(),
            neg.to_char().into(),
        );
    }
    Ok(report)
}

/// Reorienting `g` keeps every direction, reorienting `f` reverses it.
pub fn scan_dir_reorientation(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-reorientation");
    for e in [prog.g, prog.f] {
        let flip = ElemSet::singleton(e);
        let flipped = om.reorient(flip)?;
        let fprog = Program::new(&flipped, prog.g, prog.f)?;
        for (i, j) in equal_g_pairs(prog) {
            let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
            let d = prog.dir_idx(i, j)?;
            let moved = fprog.dir(&x.reoriented(flip), &y.reoriented(flip))?;
            let expected = if e == prog.g { d } else { -d };
            report.record(
                verbose,
                format!("{} flip={}", pair_tuple(prog, x, y), e + 1),
                expected.to_char().into(),
                moved.to_char().into(),
            );
        }
    }
    Ok(report)
}

/// Strictly increasing objective values force a forward direction, and a
/// pair vanishing on the objective is undirected.
pub fn scan_dir_objective_order(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-objective-order");
    for (i, j) in equal_g_pairs(prog) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        let (xf, yf) = (x.get(prog.f), y.get(prog.f));
        let expected = if xf < yf {
            Sign::Plus
        } else if yf < xf {
            Sign::Minus
        } else if xf.is_zero() {
            Sign::Zero
        } else {
            report.skip();
            continue;
        };
        report.record(
            verbose,
            pair_tuple(prog, x, y),
            expected.to_char().into(),
            prog.dir_idx(i, j)?.to_char().into(),
        );
    }
    Ok(report)
}

/// Eliminating a separating element inside a forward pair splits it into
/// two forward-or-undirected pairs that are not both undirected.
pub fn scan_dir_separation_split(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-separation-split");
    for (i, j) in equal_g_pairs(prog) {
        for (a, b) in [(i, j), (j, i)] {
            let (x, y) = (&om.cocircuits()[a], &om.cocircuits()[b]);
            if prog.dir_idx(a, b)? != Sign::Plus {
                continue;
            }
            for e in x.separation(y)?.iter() {
                let w = om.eliminate_idx(a, b, e)?;
                let tuple = format!("{} e={}", pair_tuple(prog, x, y), e + 1);
                let observed = if !om.comodular_idx(a, w) || !om.comodular_idx(w, b) {
                    "split left the line".into()
                } else {
                    let d1 = prog.dir_idx(a, w)?;
                    let d2 = prog.dir_idx(w, b)?;
                    if d1 >= Sign::Zero && d2 >= Sign::Zero && (d1, d2) != (Sign::Zero, Sign::Zero)
                    {
                        "forward".into()
                    } else {
                        format!("d1={} d2={}", d1.to_char(), d2.to_char())
                    }
                };
                report.record(verbose, tuple, "forward".into(), observed);
            }
        }
    }
    Ok(report)
}

/// Undirected pairs stay undirected after reorienting by any of the given
/// sets.
pub fn scan_dir_undirected_reorient(
    prog: &Program,
    masks: &[u32],
    verbose: bool,
) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-undirected-reorient");
    let undirected: Vec<(usize, usize)> = equal_g_pairs(prog)
        .into_iter()
        .filter(|&(i, j)| matches!(prog.dir_idx(i, j), Ok(Sign::Zero)))
        .collect();
    for &mask in masks {
        let flip = ElemSet(mask);
        let flipped = om.reorient(flip)?;
        let fprog = Program::new(&flipped, prog.g, prog.f)?;
        for &(i, j) in &undirected {
            let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
            let moved = fprog.dir(&x.reoriented(flip), &y.reoriented(flip))?;
            report.record(
                verbose,
                format!("{} S={:b}", pair_tuple(prog, x, y), mask),
                '0'.into(),
                moved.to_char().into(),
            );
        }
    }
    Ok(report)
}

/// A pair undirected for the objective `f` but tied at `f` transfers any
/// direction taken for a third objective from infinity `g` to infinity `f`.
pub fn scan_dir_transitivity(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-transitivity");
    for (i, j) in equal_g_pairs(prog) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        if x.get(prog.f).is_zero() || x.get(prog.f) != y.get(prog.f) {
            continue;
        }
        let z = &om.cocircuits()[om.eliminate_idx(om.negation_of(i), j, prog.g)?];
        if !z.get(prog.f).is_zero() {
            report.skip();
            continue;
        }
        let w = &om.cocircuits()[om.eliminate_idx(om.negation_of(i), j, prog.f)?];
        for h in 0..om.n() {
            if h == prog.g || h == prog.f || z.get(h).is_zero() {
                continue;
            }
            report.record(
                verbose,
                format!("{} h={}", pair_tuple(prog, x, y), h + 1),
                z.get(h).to_char().into(),
                w.get(h).to_char().into(),
            );
        }
    }
    Ok(report)
}

/// Swapping the roles of infinity and objective reverses the direction when
/// the pair agrees in sign at both, and keeps it when the signs differ.
pub fn scan_dir_role_exchange(prog: &Program, verbose: bool) -> Result<ScanReport> {
    let om = prog.om();
    let mut report = ScanReport::new("dir-role-exchange");
    for (i, j) in equal_g_pairs(prog) {
        let (x, y) = (&om.cocircuits()[i], &om.cocircuits()[j]);
        if x.get(prog.f).is_zero() || x.get(prog.f) != y.get(prog.f) {
            continue;
        }
        let d_gf = om.cocircuits()[om.eliminate_idx(om.negation_of(i), j, prog.g)?].get(prog.f);
        let d_fg = om.cocircuits()[om.eliminate_idx(om.negation_of(i), j, prog.f)?].get(prog.g);
        let expected = if x.get(prog.f) == x.get(prog.g) {
            -d_fg
        } else {
            d_fg
        };
        report.record(
            verbose,
            pair_tuple(prog, x, y),
            expected.to_char().into(),
            d_gf.to_char().into(),
        );
    }
    Ok(report)
}

/// Euclideanness does not depend on the order of infinity and objective.
pub fn check_euclidean_exchange(om: &OrientedMatroid, verbose: bool) -> Result<ScanReport> {
    let mut report = ScanReport::new("euclidean-exchange");
    for (g, f) in admissible_pairs(om) {
        if g > f || !admissible_pairs(om).contains(&(f, g)) {
            continue;
        }
        let forward = Program::new(om, g, f)?.is_euclidean()?;
        let swapped = Program::new(om, f, g)?.is_euclidean()?;
        report.record(
            verbose,
            format!("g={} f={}", g + 1, f + 1),
            forward.to_string(),
            swapped.to_string(),
        );
    }
    Ok(report)
}

/// Euclideanness of every admissible program survives reorienting by each
/// of the given sets.
pub fn scan_euclidean_invariance(
    om: &OrientedMatroid,
    masks: &[u32],
    verbose: bool,
) -> Result<ScanReport> {
    let mut report = ScanReport::new("euclidean-reorientation");
    for (g, f) in admissible_pairs(om) {
        let base = Program::new(om, g, f)?.is_euclidean()?;
        for &mask in masks {
            let flipped = om.reorient(ElemSet(mask))?;
            let moved = Program::new(&flipped, g, f)?.is_euclidean()?;
            report.record(
                verbose,
                format!("g={} f={} S={:b}", g + 1, f + 1, mask),
                base.to_string(),
                moved.to_string(),
            );
        }
    }
    Ok(report)
}

/// Singleton flips, the full flip, and `extra` seeded random flips.
pub fn reorientation_masks(n: usize, seed: u64, extra: usize) -> Vec<u32> {
    let full = if n >= 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut masks: Vec<u32> = (0..n).map(|e| 1u32 << e).collect();
    masks.push(full);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        masks.push(rng.gen_range(1..=full));
    }
    masks
}

/// Every direction identity over every admissible program of the instance,
/// merged into one report per identity.
pub fn scan_all_direction_props(
    om: &OrientedMatroid,
    seed: u64,
    verbose: bool,
) -> Result<Vec<ScanReport>> {
    let masks = reorientation_masks(om.n(), seed, 4);
    let mut merged: Vec<ScanReport> = Vec::new();
    let mut add = |r: ScanReport, merged: &mut Vec<ScanReport>| {
        if let Some(slot) = merged.iter_mut().find(|s| s.lemma == r.lemma) {
            slot.absorb(r);
        } else {
            merged.push(r);
        }
    };
    for (g, f) in admissible_pairs(om) {
        let prog = Program::new(om, g, f)?;
        add(scan_dir_antisymmetry(&prog, verbose)?, &mut merged);
        add(scan_dir_negation(&prog, verbose)?, &mut merged);
        add(scan_dir_reorientation(&prog, verbose)?, &mut merged);
        add(scan_dir_objective_order(&prog, verbose)?, &mut merged);
        add(scan_dir_separation_split(&prog, verbose)?, &mut merged);
        add(scan_dir_undirected_reorient(&prog, &masks, verbose)?, &mut merged);
        add(scan_dir_transitivity(&prog, verbose)?, &mut merged);
        add(scan_dir_role_exchange(&prog, verbose)?, &mut merged);
    }
    add(check_euclidean_exchange(om, verbose)?, &mut merged);
    add(scan_euclidean_invariance(om, &masks, verbose)?, &mut merged);
    Ok(merged)
}
