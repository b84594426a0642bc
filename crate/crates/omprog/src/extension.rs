//! Single-element extensions by localizations, and lexicographic extensions.
//!
//! A localization assigns a sign to every cocircuit, oddly under negation.
//! The extended matroid on `E + {p}` (with `p` appended as the last element)
//! has one "old" cocircuit `(Y, sigma(Y))` per base cocircuit `Y`, plus one
//! "new" cocircuit `(Y1 o Y2, 0)` per conformal comodular pair with opposite
//! nonzero sigma values. Validity of sigma is certified a posteriori: the
//! constructed matroid must pass the axiom check.

use std::fmt;
use std::str::FromStr;

use crate::error::{OmError, Result};
use crate::matroid::OrientedMatroid;
use crate::sign::{ElemSet, Sign, SignVector};

/// A sign per cocircuit of a fixed base matroid, odd under negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    sigma: Vec<Sign>,
}

impl Localization {
    /// Builds a localization from a function on cocircuits, checking odd
    /// symmetry. (Whether it really describes an extension is certified
    /// later, when `extend` validates its output.)
    pub fn from_fn(om: &OrientedMatroid, f: impl Fn(&SignVector) -> Sign) -> Result<Localization> {
        let sigma: Vec<Sign> = om.cocircuits().iter().map(&f).collect();
        for (i, c) in om.cocircuits().iter().enumerate() {
            let j = om.negation_of(i);
            if j < om.cocircuits().len() && sigma[j] != -sigma[i] {
                return Err(OmError::NotALocalization(format!(
                    "sigma({}) = {} but sigma({}) = {}",
                    c,
                    sigma[i],
                    om.cocircuits()[j],
                    sigma[j]
                )));
            }
        }
        if sigma.iter().all(|s| s.is_zero()) {
            return Err(OmError::NotALocalization(
                "sigma vanishes on every cocircuit (the new element would be a loop)".into(),
            ));
        }
        Ok(Localization { sigma })
    }

    /// The lexicographic localization for `spec`: the sign of `Y` is
    /// `alpha_i * Y_{e_i}` where `i` is the index of `Y` along the spec.
    pub fn lexicographic(om: &OrientedMatroid, spec: &LexSpec) -> Result<Localization> {
        spec.check(om)?;
        Localization::from_fn(om, |y| spec.sigma(y))
    }

    pub fn sign_of(&self, cocircuit_index: usize) -> Sign {
        self.sigma[cocircuit_index]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.sigma
    }
}

/// An ordered independent subset `e_1, ..., e_k` with signs `alpha_i`,
/// describing the lexicographic extension `O[e_1^a1, ..., e_k^ak]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexSpec {
    pub elements: Vec<usize>,
    pub alphas: Vec<Sign>,
}

impl LexSpec {
    pub fn new(elements: Vec<usize>, alphas: Vec<Sign>) -> LexSpec {
        LexSpec { elements, alphas }
    }

    /// All-positive spec on the given elements.
    pub fn positive(elements: Vec<usize>) -> LexSpec {
        let alphas = vec![Sign::Plus; elements.len()];
        LexSpec { elements, alphas }
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    /// Checks the structural invariants against a base matroid: nonempty,
    /// distinct elements, nonzero signs, `k <= rank`, and independence.
    pub fn check(&self, om: &OrientedMatroid) -> Result<()> {
        if self.elements.is_empty() {
            return Err(OmError::InvalidLexSpec("element list is empty".into()));
        }
        if self.elements.len() != self.alphas.len() {
            return Err(OmError::InvalidLexSpec(
                "element and sign lists differ in length".into(),
            ));
        }
        if self.alphas.iter().any(|a| a.is_zero()) {
            return Err(OmError::InvalidLexSpec("signs must be + or -".into()));
        }
        let set: ElemSet = self.elements.iter().copied().collect();
        if set.len() != self.elements.len() {
            return Err(OmError::InvalidLexSpec("elements must be distinct".into()));
        }
        for &e in &self.elements {
            if e >= om.n() {
                return Err(OmError::UnknownElement { element: e, n: om.n() });
            }
        }
        if self.k() > om.rank() {
            return Err(OmError::InvalidLexSpec(format!(
                "{} elements exceed rank {}",
                self.k(),
                om.rank()
            )));
        }
        if !om.is_independent(set)? {
            return Err(OmError::InvalidLexSpec(format!(
                "elements {set:?} are dependent"
            )));
        }
        Ok(())
    }

    /// Index of `y` along the spec: the smallest 1-based `i` with
    /// `y_{e_i} != 0`, or `k + 1` if `y` vanishes on all spec elements.
    pub fn index_of(&self, y: &SignVector) -> usize {
        index_of(y, &self.elements)
    }

    /// The localization value `alpha_i * y_{e_i}` (zero at index `k + 1`).
    pub fn sigma(&self, y: &SignVector) -> Sign {
        let i = self.index_of(y);
        if i > self.k() {
            Sign::Zero
        } else {
            self.alphas[i - 1].times(y.get(self.elements[i - 1]))
        }
    }

    /// Elements whose sign is `-`; reorienting them reduces this spec to the
    /// all-positive one.
    pub fn negative_elements(&self) -> ElemSet {
        self.elements
            .iter()
            .zip(&self.alphas)
            .filter(|(_, &a)| a == Sign::Minus)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn is_positive(&self) -> bool {
        self.alphas.iter().all(|&a| a == Sign::Plus)
    }
}

/// Text form uses 1-based element ids: `[1+,3-,2+]`.
impl fmt::Display for LexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (&e, &a)) in self.elements.iter().zip(&self.alphas).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", e + 1, a.to_char())?;
        }
        write!(f, "]")
    }
}

impl FromStr for LexSpec {
    type Err = OmError;

    fn from_str(s: &str) -> Result<LexSpec> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| OmError::InvalidLexSpec(format!("expected [..] around {s:?}")))?;
        let mut elements = Vec::new();
        let mut alphas = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (num, sign) = part.split_at(part.len() - 1);
            let a = Sign::from_char(sign.chars().next().unwrap())
                .filter(|a| !a.is_zero())
                .ok_or_else(|| OmError::InvalidLexSpec(format!("bad sign in {part:?}")))?;
            let e: usize = num
                .trim()
                .parse()
                .map_err(|_| OmError::InvalidLexSpec(format!("bad element in {part:?}")))?;
            if e == 0 {
                return Err(OmError::InvalidLexSpec("element ids are 1-based".into()));
            }
            elements.push(e - 1);
            alphas.push(a);
        }
        if elements.is_empty() {
            return Err(OmError::InvalidLexSpec("element list is empty".into()));
        }
        Ok(LexSpec { elements, alphas })
    }
}

/// Index of `y` along an ordered element list (1-based; `len + 1` if `y`
/// vanishes on all listed elements).
pub fn index_of(y: &SignVector, elements: &[usize]) -> usize {
    for (i, &e) in elements.iter().enumerate() {
        if !y.get(e).is_zero() {
            return i + 1;
        }
    }
    elements.len() + 1
}

/// Where an extended cocircuit came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Lift `(Y, sigma(Y))` of the base cocircuit with this index.
    Old { source: usize },
    /// Composition of a provenance pair of base cocircuits; `pos` is the one
    /// with `sigma = +`, `neg` the one with `sigma = -`.
    New { pos: usize, neg: usize },
}

impl Origin {
    pub fn is_new(&self) -> bool {
        matches!(self, Origin::New { .. })
    }
}

/// A completed single-element extension with provenance bookkeeping.
#[derive(Clone, Debug)]
pub struct ExtensionResult {
    pub base: OrientedMatroid,
    pub extended: OrientedMatroid,
    pub localization: Localization,
    /// Spec used to build the localization, when lexicographic.
    pub spec: Option<LexSpec>,
    /// Parallel to `extended.cocircuits()`.
    pub origins: Vec<Origin>,
}

impl ExtensionResult {
    /// The new element (appended last).
    pub fn p(&self) -> usize {
        self.base.n()
    }

    pub fn origin_of(&self, z: &SignVector) -> Result<Origin> {
        let i = self.extended.require_index(z)?;
        Ok(self.origins[i])
    }

    /// True iff `z` is an old cocircuit, i.e. its restriction to the base
    /// ground set is a base cocircuit.
    pub fn classify_old(&self, z: &SignVector) -> Result<bool> {
        Ok(!self.origin_of(z)?.is_new())
    }

    /// The lift `(Y, sigma(Y))` of a base cocircuit index.
    fn lift(&self, source: usize) -> SignVector {
        self.base.cocircuits()[source].extended(self.localization.sign_of(source))
    }

    /// For a new cocircuit, its provenance pair as old cocircuits of the
    /// extension, `sigma = +` first.
    pub fn provenance(&self, z: &SignVector) -> Result<(SignVector, SignVector)> {
        match self.origin_of(z)? {
            Origin::New { pos, neg } => Ok((self.lift(pos), self.lift(neg))),
            Origin::Old { .. } => Err(OmError::MissingProvenance(z.to_string())),
        }
    }

    /// The corresponding cocircuit of a new cocircuit under a lexicographic
    /// extension: the provenance element with the higher index. Checks the
    /// expected index and sign relations before returning.
    pub fn corresponding_cocircuit(&self, y: &SignVector) -> Result<SignVector> {
        let spec = self
            .spec
            .as_ref()
            .ok_or_else(|| OmError::InvalidLexSpec("extension is not lexicographic".into()))?;
        let (a, b) = self.provenance(y)?;
        let (ia, ib) = (spec.index_of(&a), spec.index_of(&b));
        if ia == ib {
            return Err(OmError::MissingProvenance(format!(
                "provenance pair of {y} has equal index {ia}"
            )));
        }
        let k = spec.k();
        let (x, z, i, j) = if ia < ib { (a, b, ia, ib) } else { (b, a, ib, ia) };
        let (ei, ej) = (spec.elements[i - 1], spec.elements[j - 1]);
        debug_assert!(j <= k && i < k);
        debug_assert_eq!(spec.index_of(y), i);
        debug_assert!(!x.get(ei).is_zero());
        debug_assert_eq!(x.get(ei), y.get(ei));
        // Provenance pairs are conformal, so the composite keeps z's value at
        // e_j; opposition lives in the localization values.
        debug_assert_eq!(z.get(ej), y.get(ej));
        debug_assert_eq!(
            spec.alphas[i - 1].times(x.get(ei)),
            -spec.alphas[j - 1].times(z.get(ej))
        );
        Ok(z)
    }

    /// True iff the extension is principal on `cl(spec elements)`: each
    /// checked covector of the extension vanishes at `p` exactly when its
    /// base covector's zero set contains that closure. Cocircuits are checked
    /// exhaustively, longer compositions by deterministic sampling.
    pub fn is_principal_on(&self, spec: &LexSpec) -> Result<bool> {
        spec.check(&self.base)?;
        let set: ElemSet = spec.elements.iter().copied().collect();
        let flat = self.base.closure(set)?;
        let m = self.base.cocircuits().len();
        for (i, y) in self.base.cocircuits().iter().enumerate() {
            let vanishes = self.localization.sign_of(i).is_zero();
            if vanishes != flat.is_subset(y.zero_set()) {
                return Ok(false);
            }
        }
        // Sampled compositions: a fixed stride walk over cocircuit pairs and
        // triples keeps this deterministic and cheap.
        let mut combos: Vec<Vec<usize>> = Vec::new();
        for step in [1usize, 3, 7] {
            for s in 0..m.min(16) {
                let a = (s * 5 + 1) % m;
                let b = (a + step) % m;
                let c = (b + 2 * step + 1) % m;
                combos.push(vec![a, b]);
                combos.push(vec![a, b, c]);
            }
        }
        for combo in combos {
            let mut x = self.base.cocircuits()[combo[0]].clone();
            let mut sigma = self.localization.sign_of(combo[0]);
            for &i in &combo[1..] {
                x = x.compose(&self.base.cocircuits()[i])?;
                sigma = sigma.compose(self.localization.sign_of(i));
            }
            if sigma.is_zero() != flat.is_subset(x.zero_set()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the new element is in general position: no cocircuit of the
    /// extension vanishes at `p` on a zero set whose base part has rank
    /// below `rank - 1`.
    pub fn new_element_in_general_position(&self) -> bool {
        element_in_general_position(&self.extended, self.p())
    }
}

/// True iff every hyperplane through `f` is spanned only with `f`'s help:
/// no cocircuit vanishing at `f` keeps rank `rank - 1` after removing `f`
/// from its zero set.
pub fn element_in_general_position(om: &OrientedMatroid, f: usize) -> bool {
    if om.rank() == 0 {
        return false;
    }
    om.cocircuits().iter().all(|c| {
        !c.get(f).is_zero() || om.rank_mask(c.zero_set().without(f).0) < om.rank() - 1
    })
}

/// Builds the single-element extension described by a localization. The
/// result is validated; an invalid outcome reports the sign assignment as
/// not being a localization.
pub fn extend(om: &OrientedMatroid, loc: &Localization) -> Result<ExtensionResult> {
    extend_inner(om, loc.clone(), None)
}

/// Builds the lexicographic extension for `spec`.
pub fn extend_lexicographic(om: &OrientedMatroid, spec: &LexSpec) -> Result<ExtensionResult> {
    let loc = Localization::lexicographic(om, spec)?;
    extend_inner(om, loc, Some(spec.clone()))
}

fn extend_inner(
    om: &OrientedMatroid,
    loc: Localization,
    spec: Option<LexSpec>,
) -> Result<ExtensionResult> {
    let m = om.cocircuits().len();
    let mut vectors: Vec<SignVector> = Vec::with_capacity(m * 2);
    let mut origins: Vec<Origin> = Vec::new();
    let mut seen: std::collections::HashMap<SignVector, usize> = std::collections::HashMap::new();
    for (i, y) in om.cocircuits().iter().enumerate() {
        let lift = y.extended(loc.sign_of(i));
        seen.insert(lift.clone(), i);
        vectors.push(lift);
        origins.push(Origin::Old { source: i });
    }
    // New cocircuits: conformal comodular pairs with opposite nonzero sigma.
    // Each one arises from exactly one such pair (the endpoints of its arc on
    // the shared line); a second source marks the sign assignment as broken.
    for i in 0..m {
        if loc.sign_of(i) != Sign::Plus {
            continue;
        }
        for j in 0..m {
            if loc.sign_of(j) != Sign::Minus || !om.conformal_idx(i, j) {
                continue;
            }
            if !om.comodular_idx(i, j) {
                continue;
            }
            let z = om.cocircuits()[i]
                .compose(&om.cocircuits()[j])?
                .extended(Sign::Zero);
            if let Some(&at) = seen.get(&z) {
                let dup = match origins[at] {
                    Origin::New { pos, neg } => (pos, neg) != (i, j),
                    Origin::Old { .. } => true,
                };
                if dup {
                    return Err(OmError::NotALocalization(format!(
                        "cocircuit {z} arises from more than one source"
                    )));
                }
                continue;
            }
            seen.insert(z.clone(), vectors.len());
            vectors.push(z);
            origins.push(Origin::New { pos: i, neg: j });
        }
    }
    // Sort into canonical order, keeping origins aligned.
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]));
    let vectors_sorted: Vec<SignVector> = order.iter().map(|&i| vectors[i].clone()).collect();
    let origins_sorted: Vec<Origin> = order.iter().map(|&i| origins[i]).collect();
    let extended = OrientedMatroid::from_cocircuits(om.n() + 1, om.rank(), vectors_sorted)?;
    if extended.cocircuits().len() != origins_sorted.len() {
        return Err(OmError::NotALocalization(
            "duplicate cocircuits in the extension".into(),
        ));
    }
    let report = extended.validate();
    if !report.is_valid() {
        return Err(OmError::NotALocalization(format!(
            "extension fails validation: {:?}",
            report.violations.first().unwrap()
        )));
    }
    Ok(ExtensionResult {
        base: om.clone(),
        extended,
        localization: loc,
        spec,
        origins: origins_sorted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l3, u34};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn lexspec_parse_roundtrip() {
        let spec: LexSpec = "[1+,3-,2+]".parse().unwrap();
        assert_eq!(spec.elements, vec![0, 2, 1]);
        assert_eq!(spec.to_string(), "[1+,3-,2+]");
        assert!("[]".parse::<LexSpec>().is_err());
        assert!("[0+]".parse::<LexSpec>().is_err());
        assert!("1+,2-".parse::<LexSpec>().is_err());
    }

    #[test]
    fn lexspec_check_rejects_dependent_sets() {
        let om = l3();
        // Rank 2 admits at most two elements.
        let spec = LexSpec::positive(vec![0, 1, 2]);
        assert!(spec.check(&om).is_err());
        let spec = LexSpec::positive(vec![0, 0]);
        assert!(spec.check(&om).is_err());
        assert!(LexSpec::positive(vec![0, 1]).check(&om).is_ok());
    }

    #[test]
    fn index_along_spec() {
        let spec = LexSpec::positive(vec![0, 1]);
        assert_eq!(spec.index_of(&sv("0++")), 2);
        assert_eq!(spec.index_of(&sv("+0+")), 1);
        assert_eq!(spec.index_of(&sv("00+")), 3);
    }

    #[test]
    fn parallel_extension_of_l3_has_no_new_cocircuits() {
        let om = l3();
        let res = extend_lexicographic(&om, &LexSpec::positive(vec![0])).unwrap();
        assert_eq!(res.extended.n(), 4);
        assert_eq!(res.extended.rank(), 2);
        assert!(res.extended.validate().is_valid());
        assert!(res.origins.iter().all(|o| !o.is_new()));
        for rep in ["0++0", "+0++", "+-0+"] {
            assert!(res.extended.cocircuit_index(&sv(rep)).is_some());
        }
    }

    #[test]
    fn l3_two_element_extension_creates_one_new_pair() {
        let om = l3();
        let res = extend_lexicographic(&om, &LexSpec::positive(vec![0, 1])).unwrap();
        assert!(res.extended.validate().is_valid());
        let new: Vec<&SignVector> = res
            .extended
            .cocircuits()
            .iter()
            .zip(&res.origins)
            .filter(|(_, o)| o.is_new())
            .map(|(c, _)| c)
            .collect();
        assert_eq!(new.len(), 2);
        assert!(new.contains(&&sv("+--0")));
        let (pos, neg) = res.provenance(&sv("+--0")).unwrap();
        assert_eq!(pos, sv("+-0+"));
        assert_eq!(neg, sv("0---"));
    }

    #[test]
    fn corresponding_cocircuit_is_higher_index_side() {
        let om = l3();
        let res = extend_lexicographic(&om, &LexSpec::positive(vec![0, 1])).unwrap();
        let corr = res.corresponding_cocircuit(&sv("+--0")).unwrap();
        assert_eq!(corr, sv("0---"));
        // Old cocircuits have no provenance pair.
        assert!(res.corresponding_cocircuit(&sv("+0++")).is_err());
    }

    #[test]
    fn classification_matches_lex_index() {
        let om = u34();
        let spec = LexSpec::positive(vec![0, 1, 2]);
        let res = extend_lexicographic(&om, &spec).unwrap();
        for z in res.extended.cocircuits() {
            let old = res.classify_old(z).unwrap();
            if z.get(res.p()).is_zero() {
                let restricted = z.restrict(&[0, 1, 2, 3]);
                assert_eq!(old, spec.index_of(&restricted) == spec.k() + 1);
            } else {
                assert!(old);
            }
        }
    }

    #[test]
    fn extension_rank_and_validity_on_u34() {
        let om = u34();
        for elems in [vec![0], vec![1, 2], vec![0, 1, 2], vec![3, 0]] {
            let res = extend_lexicographic(&om, &LexSpec::positive(elems)).unwrap();
            assert_eq!(res.extended.rank(), 3);
            assert!(res.extended.validate().is_valid());
        }
    }

    #[test]
    fn general_alpha_equals_reorient_then_positive() {
        let om = u34();
        let spec: LexSpec = "[2-,3+,1-]".parse().unwrap();
        let res = extend_lexicographic(&om, &spec).unwrap();
        let flip = spec.negative_elements();
        let reoriented = om.reorient(flip).unwrap();
        let pos = extend_lexicographic(
            &reoriented,
            &LexSpec::positive(spec.elements.clone()),
        )
        .unwrap();
        let back = pos.extended.reorient(flip).unwrap();
        assert_eq!(back, res.extended);
    }

    #[test]
    fn zero_localization_is_rejected() {
        let om = l3();
        assert!(Localization::from_fn(&om, |_| Sign::Zero).is_err());
    }

    #[test]
    fn uneven_sign_assignment_is_rejected() {
        let om = l3();
        assert!(Localization::from_fn(&om, |_| Sign::Plus).is_err());
    }

    #[test]
    fn principal_check_accepts_lex_and_rejects_crossing_point() {
        let om = u34();
        let spec = LexSpec::positive(vec![0, 1]);
        let res = extend_lexicographic(&om, &spec).unwrap();
        assert!(res.is_principal_on(&spec).unwrap());

        // Place p on the lines through {e1,e2} and {e3,v4} at once: the
        // localization of the point (1,1,0). It is a genuine localization
        // but principal on no two-element flat.
        let vecs = [
            vec![1i64, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
            vec![1, 1, 0],
        ];
        let with_p = crate::ingest::om_from_vectors(&crate::ingest::VectorConfig {
            dim: 3,
            vectors: vecs.to_vec(),
        })
        .unwrap();
        let loc = Localization::from_fn(&om, |y| {
            let i = with_p
                .cocircuits()
                .iter()
                .position(|c| c.restrict(&[0, 1, 2, 3]) == *y)
                .expect("base cocircuit lifts");
            with_p.cocircuits()[i].get(4)
        })
        .unwrap();
        let res = extend(&om, &loc).unwrap();
        assert_eq!(res.extended, with_p);
        for elems in [vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3], vec![3, 1]] {
            assert!(!res.is_principal_on(&LexSpec::positive(elems)).unwrap());
        }
        assert!(!res.new_element_in_general_position());
    }

    #[test]
    fn basis_extension_is_in_general_position() {
        let om = u34();
        let res = extend_lexicographic(&om, &LexSpec::positive(vec![0, 1, 2])).unwrap();
        assert!(res.new_element_in_general_position());
        let res = extend_lexicographic(&om, &LexSpec::positive(vec![0])).unwrap();
        assert!(!res.new_element_in_general_position());
    }

    #[test]
    fn old_lift_restrictions_are_base_cocircuits() {
        let om = u34();
        let res = extend_lexicographic(&om, &LexSpec::positive(vec![1, 3])).unwrap();
        let keep: Vec<usize> = (0..om.n()).collect();
        for (z, o) in res.extended.cocircuits().iter().zip(&res.origins) {
            if !z.get(res.p()).is_zero() {
                assert!(!o.is_new());
                assert!(om.cocircuit_index(&z.restrict(&keep)).is_some());
            }
        }
    }
}
