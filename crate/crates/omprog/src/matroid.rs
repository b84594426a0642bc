//! Oriented matroids represented by their full cocircuit sets.
//!
//! The cocircuit list is the single source of truth. Both signs of every
//! cocircuit pair are stored, in a canonical sorted order, so that all
//! iteration downstream is deterministic. Rank and closure come from the
//! underlying matroid, read off the cocircuit supports:
//!
//! * an element `e` lies in the closure of `S` iff every cocircuit support
//!   containing `e` meets `S`;
//! * a set `I` is independent iff each `e` in `I` has a cocircuit support
//!   meeting `I` only at `e`; rank is computed greedily from this test.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::{OmError, Result};
use crate::sign::{ElemSet, SignVector};

/// An oriented matroid given by ground size, rank and all cocircuits.
pub struct OrientedMatroid {
    n: usize,
    rank: usize,
    cocircuits: Vec<SignVector>,
    pos_mask: Vec<u32>,
    neg_mask: Vec<u32>,
    neg_idx: Vec<u32>,
    zero_at: Vec<Vec<u32>>,
    nonzero_at: Vec<Vec<u32>>,
    rank_memo: RwLock<HashMap<u32, u8>>,
}

impl Clone for OrientedMatroid {
    fn clone(&self) -> Self {
        OrientedMatroid {
            n: self.n,
            rank: self.rank,
            cocircuits: self.cocircuits.clone(),
            pos_mask: self.pos_mask.clone(),
            neg_mask: self.neg_mask.clone(),
            neg_idx: self.neg_idx.clone(),
            zero_at: self.zero_at.clone(),
            nonzero_at: self.nonzero_at.clone(),
            rank_memo: RwLock::new(self.rank_memo.read().unwrap().clone()),
        }
    }
}

impl PartialEq for OrientedMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rank == other.rank && self.cocircuits == other.cocircuits
    }
}

impl Eq for OrientedMatroid {}

impl fmt::Debug for OrientedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedMatroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("cocircuits", &self.cocircuits)
            .finish()
    }
}

impl OrientedMatroid {
    /// Builds a matroid from an explicit cocircuit list, kept exactly as
    /// given (deduplicated and sorted, but with no negations added). The
    /// declared rank is kept as well; `validate` reports any inconsistency.
    pub fn from_cocircuits(n: usize, rank: usize, cocircuits: Vec<SignVector>) -> Result<Self> {
        if n > 32 {
            return Err(OmError::GroundTooLarge { n });
        }
        for c in &cocircuits {
            if c.len() != n {
                return Err(OmError::GroundMismatch {
                    left: n,
                    right: c.len(),
                });
            }
        }
        let mut cocircuits = cocircuits;
        cocircuits.sort();
        cocircuits.dedup();
        let mut om = OrientedMatroid {
            n,
            rank,
            cocircuits,
            pos_mask: Vec::new(),
            neg_mask: Vec::new(),
            neg_idx: Vec::new(),
            zero_at: Vec::new(),
            nonzero_at: Vec::new(),
            rank_memo: RwLock::new(HashMap::new()),
        };
        om.rebuild_caches();
        Ok(om)
    }

    /// Builds a matroid from one representative per cocircuit pair; the
    /// negations are added automatically and the rank is computed from the
    /// cocircuit supports.
    pub fn from_representatives(n: usize, reps: Vec<SignVector>) -> Result<Self> {
        let mut all = Vec::with_capacity(reps.len() * 2);
        for r in reps {
            all.push(r.negated());
            all.push(r);
        }
        let mut om = Self::from_cocircuits(n, 0, all)?;
        om.rank = om.rank_mask(ElemSet::full(n).0);
        Ok(om)
    }

    fn rebuild_caches(&mut self) {
        let m = self.cocircuits.len();
        self.pos_mask = self.cocircuits.iter().map(|c| c.pos_set().0).collect();
        self.neg_mask = self.cocircuits.iter().map(|c| c.neg_set().0).collect();
        self.neg_idx = (0..m)
            .map(|i| {
                let neg = self.cocircuits[i].negated();
                self.cocircuits
                    .binary_search(&neg)
                    .map(|j| j as u32)
                    .unwrap_or(u32::MAX)
            })
            .collect();
        self.zero_at = vec![Vec::new(); self.n];
        self.nonzero_at = vec![Vec::new(); self.n];
        for i in 0..m {
            let supp = self.pos_mask[i] | self.neg_mask[i];
            for e in 0..self.n {
                if supp & (1 << e) == 0 {
                    self.zero_at[e].push(i as u32);
                } else {
                    self.nonzero_at[e].push(i as u32);
                }
            }
        }
        self.rank_memo = RwLock::new(HashMap::new());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cocircuits(&self) -> &[SignVector] {
        &self.cocircuits
    }

    pub fn ground(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// Index of a cocircuit equal to `v`, if present.
    pub fn cocircuit_index(&self, v: &SignVector) -> Option<usize> {
        self.cocircuits.binary_search(v).ok()
    }

    pub(crate) fn require_index(&self, v: &SignVector) -> Result<usize> {
        self.cocircuit_index(v)
            .ok_or_else(|| OmError::NotACocircuit(v.to_string()))
    }

    pub(crate) fn negation_of(&self, i: usize) -> usize {
        self.neg_idx[i] as usize
    }

    #[inline]
    pub(crate) fn supp_mask(&self, i: usize) -> u32 {
        self.pos_mask[i] | self.neg_mask[i]
    }

    #[inline]
    pub(crate) fn zero_mask(&self, i: usize) -> u32 {
        ElemSet::full(self.n).0 & !self.supp_mask(i)
    }

    #[inline]
    pub(crate) fn conformal_idx(&self, i: usize, j: usize) -> bool {
        self.pos_mask[i] & self.neg_mask[j] == 0 && self.neg_mask[i] & self.pos_mask[j] == 0
    }

    #[inline]
    pub(crate) fn sep_mask(&self, i: usize, j: usize) -> u32 {
        (self.pos_mask[i] & self.neg_mask[j]) | (self.neg_mask[i] & self.pos_mask[j])
    }

    pub(crate) fn zero_at(&self, e: usize) -> &[u32] {
        &self.zero_at[e]
    }

    fn check_set(&self, s: ElemSet) -> Result<()> {
        if !s.is_subset(self.ground()) {
            let bad = s.minus(self.ground()).iter().next().unwrap();
            return Err(OmError::UnknownElement {
                element: bad,
                n: self.n,
            });
        }
        Ok(())
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.n {
            return Err(OmError::UnknownElement { element: e, n: self.n });
        }
        Ok(())
    }

    /// True iff every member of `mask` has a cocircuit support meeting
    /// `mask` only at that member.
    fn is_independent_mask(&self, mask: u32) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut found = false;
            for &i in &self.nonzero_at[e] {
                if self.supp_mask(i as usize) & mask == 1 << e {
                    found = true;
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        true
    }

    pub(crate) fn rank_mask(&self, mask: u32) -> usize {
        if let Some(&r) = self.rank_memo.read().unwrap().get(&mask) {
            return r as usize;
        }
        let mut ind: u32 = 0;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            let cand = ind | (1 << e);
            if self.is_independent_mask(cand) {
                ind = cand;
            }
        }
        let r = ind.count_ones() as usize;
        self.rank_memo.write().unwrap().insert(mask, r as u8);
        r
    }

    /// Rank of a subset of the ground set.
    pub fn rank_of(&self, s: ElemSet) -> Result<usize> {
        self.check_set(s)?;
        Ok(self.rank_mask(s.0))
    }

    /// True iff `s` is independent in the underlying matroid.
    pub fn is_independent(&self, s: ElemSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(self.is_independent_mask(s.0))
    }

    pub(crate) fn closure_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        'elems: for e in 0..self.n {
            for &i in &self.nonzero_at[e] {
                if self.supp_mask(i as usize) & mask == 0 {
                    continue 'elems;
                }
            }
            out |= 1 << e;
        }
        out
    }

    /// Closure: every element whose cocircuit supports all meet `s`.
    pub fn closure(&self, s: ElemSet) -> Result<ElemSet> {
        self.check_set(s)?;
        Ok(ElemSet(self.closure_mask(s.0)))
    }

    pub fn is_flat(&self, s: ElemSet) -> Result<bool> {
        Ok(self.closure(s)? == s)
    }

    /// An edge is a covector whose zero set is a flat of rank `rank - 2`.
    pub fn is_edge(&self, f: &SignVector) -> Result<bool> {
        if f.len() != self.n {
            return Err(OmError::GroundMismatch {
                left: self.n,
                right: f.len(),
            });
        }
        if self.rank < 2 {
            return Ok(false);
        }
        let z = f.zero_set();
        Ok(self.rank_mask(z.0) == self.rank - 2 && ElemSet(self.closure_mask(z.0)) == z)
    }

    pub(crate) fn comodular_idx(&self, i: usize, j: usize) -> bool {
        if self.rank < 2 {
            return false;
        }
        let z = self.zero_mask(i) & self.zero_mask(j);
        self.rank_mask(z) == self.rank - 2
    }

    /// Two cocircuits are comodular iff their composition is an edge.
    pub fn comodular(&self, x: &SignVector, y: &SignVector) -> Result<bool> {
        let i = self.require_index(x)?;
        let j = self.require_index(y)?;
        Ok(self.comodular_idx(i, j))
    }

    /// Cocircuit elimination of `e` between cocircuits `i` and `j`: the
    /// unique stored cocircuit `Z` with `Z_e = 0`, support inside
    /// `supp(X o Y) - e`, and `Z_h = X_h o Y_h` outside the separation set.
    pub(crate) fn eliminate_idx(&self, i: usize, j: usize, e: usize) -> Result<usize> {
        let sep = self.sep_mask(i, j);
        if sep & (1 << e) == 0 {
            return Err(OmError::NotInSeparation { element: e });
        }
        if !self.comodular_idx(i, j) {
            return Err(OmError::NotComodular {
                x: self.cocircuits[i].to_string(),
                y: self.cocircuits[j].to_string(),
            });
        }
        let pos_c = self.pos_mask[i] | (self.pos_mask[j] & !self.supp_mask(i));
        let neg_c = self.neg_mask[i] | (self.neg_mask[j] & !self.supp_mask(i));
        let allowed = (pos_c | neg_c) & !(1 << e);
        let keep = !sep;
        let mut found = None;
        let mut count = 0usize;
        for &zi in &self.zero_at[e] {
            let z = zi as usize;
            if self.supp_mask(z) & !allowed != 0 {
                continue;
            }
            if (self.pos_mask[z] ^ pos_c) & keep != 0 || (self.neg_mask[z] ^ neg_c) & keep != 0 {
                continue;
            }
            found = Some(z);
            count += 1;
        }
        if count != 1 {
            return Err(OmError::EliminationAmbiguous { found: count });
        }
        Ok(found.unwrap())
    }

    /// Public cocircuit elimination; see `eliminate_idx`.
    pub fn eliminate(&self, x: &SignVector, y: &SignVector, e: usize) -> Result<SignVector> {
        self.check_element(e)?;
        let i = self.require_index(x)?;
        let j = self.require_index(y)?;
        Ok(self.cocircuits[self.eliminate_idx(i, j, e)?].clone())
    }

    /// Indices of all cocircuits vanishing on `line_zero` (a zero-set mask).
    pub(crate) fn on_line_idx(&self, line_zero: u32) -> Vec<usize> {
        (0..self.cocircuits.len())
            .filter(|&i| line_zero & !self.zero_mask(i) == 0)
            .collect()
    }

    /// All cocircuits lying on the line of an edge `f`, i.e. vanishing on
    /// `z(f)`.
    pub fn cocircuits_on_line(&self, f: &SignVector) -> Result<Vec<SignVector>> {
        if !self.is_edge(f)? {
            return Err(OmError::NotAnEdge(f.to_string()));
        }
        Ok(self
            .on_line_idx(f.zero_set().0)
            .into_iter()
            .map(|i| self.cocircuits[i].clone())
            .collect())
    }

    /// Reorientation: negates the listed coordinates in every cocircuit.
    pub fn reorient(&self, flip: ElemSet) -> Result<Self> {
        self.check_set(flip)?;
        let cocircuits = self
            .cocircuits
            .iter()
            .map(|c| c.reoriented(flip))
            .collect();
        Self::from_cocircuits(self.n, self.rank, cocircuits)
    }

    fn minor_keep(&self, remove: ElemSet) -> Result<Vec<usize>> {
        self.check_set(remove)?;
        let keep: Vec<usize> = (0..self.n).filter(|&e| !remove.contains(e)).collect();
        if keep.is_empty() {
            return Err(OmError::EmptyMinor);
        }
        Ok(keep)
    }

    /// Contraction: cocircuits vanishing on `a`, restricted to the rest.
    pub fn contract(&self, a: ElemSet) -> Result<Self> {
        let keep = self.minor_keep(a)?;
        if a.is_empty() {
            return Ok(self.clone());
        }
        let restricted: Vec<SignVector> = (0..self.cocircuits.len())
            .filter(|&i| a.0 & self.supp_mask(i) == 0)
            .map(|i| self.cocircuits[i].restrict(&keep))
            .collect();
        let rank = self.rank - self.rank_mask(a.0);
        Self::from_cocircuits(keep.len(), rank, restricted)
    }

    /// Deletion: support-minimal nonzero restrictions to the rest.
    pub fn delete(&self, a: ElemSet) -> Result<Self> {
        let keep = self.minor_keep(a)?;
        if a.is_empty() {
            return Ok(self.clone());
        }
        let mut restricted: Vec<SignVector> = self
            .cocircuits
            .iter()
            .map(|c| c.restrict(&keep))
            .filter(|c| !c.is_zero())
            .collect();
        restricted.sort();
        restricted.dedup();
        let minimal: Vec<SignVector> = restricted
            .iter()
            .filter(|c| {
                let supp = c.support();
                !restricted.iter().any(|d| {
                    let ds = d.support();
                    ds != supp && ds.is_subset(supp)
                })
            })
            .cloned()
            .collect();
        let keep_mask: ElemSet = keep.iter().copied().collect();
        let rank = self.rank_mask(keep_mask.0);
        Self::from_cocircuits(keep.len(), rank, minimal)
    }

    /// True iff `e` appears in no cocircuit support.
    pub fn is_loop(&self, e: usize) -> bool {
        e < self.n && self.nonzero_at[e].is_empty()
    }

    /// True iff some cocircuit has support exactly `{e}`.
    pub fn is_coloop(&self, e: usize) -> bool {
        e < self.n
            && self.nonzero_at[e]
                .iter()
                .any(|&i| self.supp_mask(i as usize) == 1 << e)
    }

    /// Axiom check. Violations are data, not errors: hard structural
    /// failures (zero vector, missing negation, nested supports, wrong rank)
    /// and elimination failures are reported separately with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let m = self.cocircuits.len();
        for i in 0..m {
            if self.cocircuits[i].is_zero() {
                violations.push(Violation::ZeroVector);
            }
            if self.neg_idx[i] == u32::MAX {
                violations.push(Violation::MissingNegation {
                    cocircuit: self.cocircuits[i].to_string(),
                });
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let (si, sj) = (self.supp_mask(i), self.supp_mask(j));
                if si != sj && (si & !sj == 0 || sj & !si == 0) {
                    violations.push(Violation::NestedSupports {
                        inner: self.cocircuits[if si & !sj == 0 { i } else { j }].to_string(),
                        outer: self.cocircuits[if si & !sj == 0 { j } else { i }].to_string(),
                    });
                }
            }
        }
        // Weak elimination: for X != -Y and e in sep(X,Y), some cocircuit Z
        // has Z_e = 0 with Z_h in {X_h, Y_h, 0} everywhere. (The sharper
        // form pinning Z to X o Y outside the separation set holds only for
        // comodular pairs; `eliminate` enforces it there.)
        for i in 0..m {
            for j in (i + 1)..m {
                if self.neg_idx[i] == j as u32 {
                    continue;
                }
                let sep = self.sep_mask(i, j);
                if sep == 0 {
                    continue;
                }
                let pos_allowed = self.pos_mask[i] | self.pos_mask[j];
                let neg_allowed = self.neg_mask[i] | self.neg_mask[j];
                let mut rest = sep;
                while rest != 0 {
                    let e = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let ok = self.zero_at[e].iter().any(|&zi| {
                        let z = zi as usize;
                        self.pos_mask[z] & !pos_allowed == 0
                            && self.neg_mask[z] & !neg_allowed == 0
                    });
                    if !ok {
                        violations.push(Violation::EliminationFailure {
                            x: self.cocircuits[i].to_string(),
                            y: self.cocircuits[j].to_string(),
                            element: e,
                        });
                    }
                }
            }
        }
        let computed = self.rank_mask(self.ground().0);
        if computed != self.rank {
            violations.push(Violation::RankMismatch {
                declared: self.rank,
                computed,
            });
        }
        ValidationReport { violations }
    }
}

/// A single axiom violation, with enough data to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    ZeroVector,
    MissingNegation { cocircuit: String },
    NestedSupports { inner: String, outer: String },
    EliminationFailure { x: String, y: String, element: usize },
    RankMismatch { declared: usize, computed: usize },
}

impl Violation {
    /// Hard structural failures, as opposed to elimination failures.
    pub fn is_hard(&self) -> bool {
        !matches!(self, Violation::EliminationFailure { .. })
    }
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn hard_failures(&self) -> usize {
        self.violations.iter().filter(|v| v.is_hard()).count()
    }

    pub fn elimination_failures(&self) -> usize {
        self.violations.len() - self.hard_failures()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l3, sv, u34};
    use crate::sign::Sign;

    #[test]
    fn l3_is_valid_rank_two() {
        let om = l3();
        assert_eq!(om.rank(), 2);
        assert_eq!(om.cocircuits().len(), 6);
        assert!(om.validate().is_valid());
    }

    #[test]
    fn u34_is_valid_rank_three() {
        let om = u34();
        assert_eq!(om.rank(), 3);
        assert_eq!(om.cocircuits().len(), 12);
        assert!(om.validate().is_valid());
    }

    #[test]
    fn closure_on_l3() {
        let om = l3();
        assert_eq!(
            om.closure(ElemSet::singleton(0)).unwrap(),
            ElemSet::singleton(0)
        );
        assert_eq!(om.closure(ElemSet::EMPTY).unwrap(), ElemSet::EMPTY);
        assert_eq!(
            om.closure(ElemSet::from_iter([0usize, 1])).unwrap(),
            om.ground()
        );
    }

    #[test]
    fn rank_oracle_on_examples() {
        let om = l3();
        assert_eq!(om.rank_of(ElemSet::EMPTY).unwrap(), 0);
        assert_eq!(om.rank_of(ElemSet::singleton(2)).unwrap(), 1);
        assert_eq!(om.rank_of(om.ground()).unwrap(), 2);
        let om = u34();
        assert_eq!(om.rank_of(ElemSet::from_iter([0usize, 1])).unwrap(), 2);
        assert_eq!(om.rank_of(om.ground()).unwrap(), 3);
    }

    #[test]
    fn edges_in_u34() {
        let om = u34();
        // Composition of the cocircuits vanishing on {1,2} resp. {1,4}
        // (1-based) lies on the line whose zero set is {element 0}.
        let f = sv("00++").compose(&sv("0+-0")).unwrap();
        assert_eq!(f, sv("0+++"));
        assert!(om.is_edge(&f).unwrap());
        let line = om.cocircuits_on_line(&f).unwrap();
        assert_eq!(line.len(), 6);
        assert!(line.iter().all(|c| c.get(0).is_zero()));
        // A full-support covector is not an edge in rank 3.
        let g = sv("00++").compose(&sv("+-00")).unwrap();
        assert!(!om.is_edge(&g).unwrap());
    }

    #[test]
    fn comodularity_in_l3() {
        let om = l3();
        assert!(om.comodular(&sv("+0+"), &sv("+-0")).unwrap());
        // Opposite cocircuits share their whole zero set: not comodular.
        assert!(!om.comodular(&sv("0++"), &sv("0--")).unwrap());
    }

    #[test]
    fn eliminate_on_l3() {
        let om = l3();
        // Eliminating element 0 between -(+0+) and (+-0).
        let z = om.eliminate(&sv("-0-"), &sv("+-0"), 0).unwrap();
        assert_eq!(z, sv("0--"));
        // Element outside the separation set is rejected.
        assert!(matches!(
            om.eliminate(&sv("-0-"), &sv("+-0"), 1),
            Err(OmError::NotInSeparation { element: 1 })
        ));
        // X = -Y is excluded by the comodularity precondition.
        assert!(matches!(
            om.eliminate(&sv("0++"), &sv("0--"), 1),
            Err(OmError::NotComodular { .. })
        ));
    }

    #[test]
    fn validate_detects_broken_symmetry() {
        // L3 with (0,+,+) kept but (0,-,-) removed.
        let mut cocircuits: Vec<SignVector> = l3().cocircuits().to_vec();
        cocircuits.retain(|c| *c != sv("0--"));
        let om = OrientedMatroid::from_cocircuits(3, 2, cocircuits).unwrap();
        let report = om.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::MissingNegation { .. })));
        assert!(report.hard_failures() > 0);
    }

    #[test]
    fn validate_detects_nested_supports() {
        let om = OrientedMatroid::from_cocircuits(
            3,
            2,
            vec![sv("0+0"), sv("0-0"), sv("0++"), sv("0--")],
        )
        .unwrap();
        let report = om.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NestedSupports { .. })));
    }

    #[test]
    fn validate_detects_elimination_failure() {
        // Two crossing pairs with the connecting cocircuits removed: the
        // elimination axiom has no candidate left.
        let om = OrientedMatroid::from_cocircuits(
            3,
            2,
            vec![sv("+0+"), sv("-0-"), sv("+0-"), sv("-0+")],
        )
        .unwrap();
        let report = om.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::EliminationFailure { .. })));
        assert!(report.elimination_failures() > 0);
    }

    #[test]
    fn validate_detects_rank_mismatch() {
        let om = OrientedMatroid::from_cocircuits(3, 1, l3().cocircuits().to_vec()).unwrap();
        let report = om.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::RankMismatch { declared: 1, computed: 2 })));
    }

    #[test]
    fn contract_l3_by_element() {
        let om = l3();
        let c = om.contract(ElemSet::singleton(2)).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.rank(), 1);
        // Cocircuits vanishing at element 2 are (+,-,0) and (-,+,0).
        assert_eq!(c.cocircuits().len(), 2);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn delete_keeps_minimal_restrictions() {
        let om = u34();
        let d = om.delete(ElemSet::singleton(3)).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.rank(), 3);
        assert!(d.validate().is_valid());
        // Deleting a point from U(3,4) leaves U(3,3): three coordinate
        // cocircuit pairs.
        assert_eq!(d.cocircuits().len(), 6);
    }

    #[test]
    fn reorient_is_involutive_and_valid() {
        let om = u34();
        let flip = ElemSet::from_iter([1usize, 3]);
        let r = om.reorient(flip).unwrap();
        assert!(r.validate().is_valid());
        assert_eq!(r.reorient(flip).unwrap(), om);
        assert_ne!(r, om);
    }

    #[test]
    fn loops_and_coloops() {
        let om = l3();
        assert!(!om.is_loop(0) && !om.is_coloop(0));
        // Add a loop as a fourth element: every cocircuit vanishes there.
        let padded: Vec<SignVector> = om.cocircuits().iter().map(|c| c.extended(Sign::Zero)).collect();
        let with_loop = OrientedMatroid::from_cocircuits(4, 2, padded).unwrap();
        assert!(with_loop.is_loop(3));
        assert!(with_loop.validate().is_valid());
    }
}
