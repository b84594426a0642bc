//! Instance sources and file I/O.
//!
//! Realizable instances come from integer vector configurations; all sign
//! decisions go through exact integer determinants (Bareiss elimination on
//! i128), never floating point. Chirotopes give a second, vector-free way in.
//! File formats are line-based text with `#` comments:
//!
//! * `om <n> <rank>` then one sign string per cocircuit pair,
//! * `vec <n> <d>` then one integer row per vector,
//! * `chi <n> <r>` then the basis sign string in colexicographic order.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OmError, Result};
use crate::extension::{ExtensionResult, LexSpec, Origin};
use crate::matroid::OrientedMatroid;
use crate::sign::{Sign, SignVector};

/// An integer point configuration: `n` vectors in dimension `dim`, one row
/// each. The oriented matroid it realizes is read off determinant signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig {
    pub dim: usize,
    pub vectors: Vec<Vec<i64>>,
}

impl VectorConfig {
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> VectorConfig {
        VectorConfig { dim, vectors }
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    fn check_shape(&self) -> Result<()> {
        if self.dim == 0 || self.vectors.is_empty() {
            return Err(OmError::InvalidVectors("empty configuration".into()));
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(OmError::InvalidVectors(format!(
                    "vector {} has {} entries, expected {}",
                    i + 1,
                    v.len(),
                    self.dim
                )));
            }
        }
        Ok(())
    }

    /// Rank of the configuration.
    pub fn rank(&self) -> usize {
        rank_rows(&self.vectors)
    }
}

/// Sign of the determinant of a square integer matrix (Bareiss fraction-free
/// elimination; all intermediates are minors of the input, exact on i128 for
/// the sizes this library handles).
pub fn det_sign(rows: &[Vec<i64>]) -> Sign {
    let n = rows.len();
    if n == 0 {
        return Sign::Plus;
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Sign::Zero;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Sign::from_i8((sign * m[n - 1][n - 1].signum()) as i8)
}

/// Rank of an arbitrary integer matrix, by the same fraction-free scheme
/// with column pivoting.
pub fn rank_rows(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut rank = 0usize;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in col + 1..cols {
                m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A maximal prefix-greedy choice of independent columns.
fn independent_columns(vectors: &[Vec<i64>], rank: usize) -> Vec<usize> {
    let mut selected: Vec<usize> = Vec::new();
    let dim = vectors[0].len();
    for c in 0..dim {
        if selected.len() == rank {
            break;
        }
        let mut cand = selected.clone();
        cand.push(c);
        let sub: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| cand.iter().map(|&j| v[j]).collect())
            .collect();
        if rank_rows(&sub) == cand.len() {
            selected = cand;
        }
    }
    selected
}

/// Rows restricted to a full-rank column basis. Row dependencies (and hence
/// the oriented matroid) are unchanged by this projection.
fn project_to_rank(cfg: &VectorConfig) -> Result<(Vec<Vec<i64>>, usize)> {
    cfg.check_shape()?;
    let r = rank_rows(&cfg.vectors);
    if r == 0 {
        return Err(OmError::InvalidVectors("all vectors are zero".into()));
    }
    let cols = independent_columns(&cfg.vectors, r);
    debug_assert_eq!(cols.len(), r);
    let projected = cfg
        .vectors
        .iter()
        .map(|v| cols.iter().map(|&j| v[j]).collect())
        .collect();
    Ok((projected, r))
}

/// The oriented matroid realized by a vector configuration: one cocircuit
/// pair per hyperplane spanned by the points, signs from determinants with
/// the spanning rows on top.
pub fn om_from_vectors(cfg: &VectorConfig) -> Result<OrientedMatroid> {
    let (rows, r) = project_to_rank(cfg)?;
    let n = rows.len();
    let mut reps: Vec<SignVector> = Vec::new();
    for subset in colex_subsets(n, r - 1) {
        let mut base: Vec<Vec<i64>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let signs: Vec<Sign> = (0..n)
            .map(|e| {
                base.push(rows[e].clone());
                let s = det_sign(&base);
                base.pop();
                s
            })
            .collect();
        let c = SignVector::new(signs);
        if !c.is_zero() {
            reps.push(c.canonical_representative());
        }
    }
    reps.sort();
    reps.dedup();
    let om = OrientedMatroid::from_representatives(n, reps)?;
    if om.rank() != r {
        return Err(OmError::InvalidVectors(format!(
            "cocircuit rank {} disagrees with matrix rank {}",
            om.rank(),
            r
        )));
    }
    Ok(om)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// All `r`-subsets of `0..n` in colexicographic order (compare largest
/// elements first). This is the storage order for chirotope signs.
pub fn colex_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::with_capacity(binomial(n, r));
    for t in (r - 1)..n {
        for mut s in colex_subsets(t, r - 1) {
            s.push(t);
            out.push(s);
        }
    }
    out
}

/// Position of a sorted `r`-subset in colexicographic order.
pub fn colex_index(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s, i + 1))
        .sum()
}

/// Basis signs of a rank-`r` structure on `n` points, stored per sorted
/// subset in colexicographic order; lookups on arbitrary tuples apply the
/// permutation sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    pub n: usize,
    pub r: usize,
    signs: Vec<Sign>,
}

impl Chirotope {
    /// Builds and checks a chirotope from signs in colexicographic order.
    pub fn new(n: usize, r: usize, signs: Vec<Sign>) -> Result<Chirotope> {
        if r == 0 || r > n {
            return Err(OmError::InvalidChirotope(format!(
                "rank {r} out of range for {n} points"
            )));
        }
        if signs.len() != binomial(n, r) {
            return Err(OmError::InvalidChirotope(format!(
                "expected {} signs, got {}",
                binomial(n, r),
                signs.len()
            )));
        }
        if signs.iter().all(|s| s.is_zero()) {
            return Err(OmError::InvalidChirotope("all basis signs are zero".into()));
        }
        let chi = Chirotope { n, r, signs };
        chi.check_three_term()?;
        Ok(chi)
    }

    /// Builds a chirotope from a function on ordered tuples, verifying that
    /// it is alternating before trusting its values on sorted subsets.
    pub fn from_fn(n: usize, r: usize, f: impl Fn(&[usize]) -> Sign) -> Result<Chirotope> {
        let mut signs = Vec::with_capacity(binomial(n, r));
        for subset in colex_subsets(n, r) {
            signs.push(f(&subset));
            if r >= 2 {
                // Check alternation on one transposition and repetition.
                let mut swapped = subset.clone();
                swapped.swap(0, r - 1);
                if f(&swapped) != -f(&subset) {
                    return Err(OmError::InvalidChirotope(format!(
                        "not alternating on {subset:?}"
                    )));
                }
                let mut repeated = subset.clone();
                repeated[0] = repeated[r - 1];
                if !f(&repeated).is_zero() {
                    return Err(OmError::InvalidChirotope(format!(
                        "nonzero on repeated tuple {repeated:?}"
                    )));
                }
            }
        }
        Chirotope::new(n, r, signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Value on an arbitrary tuple: zero on repetitions, otherwise the
    /// stored sign times the sorting permutation's sign.
    pub fn chi(&self, tuple: &[usize]) -> Sign {
        debug_assert_eq!(tuple.len(), self.r);
        let mut sorted = tuple.to_vec();
        // Insertion sort, counting inversions.
        let mut inversions = 0usize;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                inversions += 1;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Sign::Zero;
        }
        let base = self.signs[colex_index(&sorted)];
        if inversions % 2 == 0 {
            base
        } else {
            -base
        }
    }

    /// Three-term sign check: for every `(r-2)`-subset `x` and quadruple
    /// `a<b<c<d` outside it, the terms
    /// `chi(xab)chi(xcd), -chi(xac)chi(xbd), chi(xad)chi(xbc)`
    /// must contain both signs or vanish together.
    fn check_three_term(&self) -> Result<()> {
        if self.r < 2 {
            return Ok(());
        }
        for x in colex_subsets(self.n, self.r - 2) {
            let rest: Vec<usize> = (0..self.n).filter(|e| !x.contains(e)).collect();
            for q in colex_subsets(rest.len(), 4) {
                let (a, b, c, d) = (rest[q[0]], rest[q[1]], rest[q[2]], rest[q[3]]);
                let with = |u: usize, v: usize| -> Sign {
                    let mut t = x.clone();
                    t.push(u);
                    t.push(v);
                    self.chi(&t)
                };
                let terms = [
                    with(a, b).times(with(c, d)),
                    -(with(a, c).times(with(b, d))),
                    with(a, d).times(with(b, c)),
                ];
                let has_plus = terms.contains(&Sign::Plus);
                let has_minus = terms.contains(&Sign::Minus);
                if (has_plus || has_minus) && !(has_plus && has_minus) {
                    return Err(OmError::InvalidChirotope(format!(
                        "three-term check fails at {x:?} with ({a},{b},{c},{d})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The chirotope realized by a vector configuration (after projection to a
/// column basis; a different basis could flip the global sign, which leaves
/// the cocircuit set untouched because both negations are stored).
pub fn chirotope_from_vectors(cfg: &VectorConfig) -> Result<Chirotope> {
    let (rows, r) = project_to_rank(cfg)?;
    let signs: Vec<Sign> = colex_subsets(rows.len(), r)
        .into_iter()
        .map(|subset| {
            let sub: Vec<Vec<i64>> = subset.iter().map(|&i| rows[i].clone()).collect();
            det_sign(&sub)
        })
        .collect();
    Chirotope::new(rows.len(), r, signs)
}

/// The oriented matroid of a chirotope: for each `(r-1)`-subset `A`, the
/// sign vector `e -> chi(A, e)`, skipping non-spanning subsets. The result
/// must pass the axiom check (the three-term test alone is not conclusive).
pub fn om_from_chirotope(chi: &Chirotope) -> Result<OrientedMatroid> {
    let mut reps: Vec<SignVector> = Vec::new();
    for subset in colex_subsets(chi.n, chi.r - 1) {
        let mut tuple = subset.clone();
        let signs: Vec<Sign> = (0..chi.n)
            .map(|e| {
                tuple.push(e);
                let s = chi.chi(&tuple);
                tuple.pop();
                s
            })
            .collect();
        let c = SignVector::new(signs);
        if !c.is_zero() {
            reps.push(c.canonical_representative());
        }
    }
    reps.sort();
    reps.dedup();
    let om = OrientedMatroid::from_representatives(chi.n, reps)?;
    let report = om.validate();
    if !report.is_valid() {
        return Err(OmError::InvalidChirotope(format!(
            "cocircuits fail validation: {:?}",
            report.violations.first().unwrap()
        )));
    }
    if om.rank() != chi.r {
        return Err(OmError::InvalidChirotope(format!(
            "cocircuit rank {} disagrees with declared rank {}",
            om.rank(),
            chi.r
        )));
    }
    Ok(om)
}

/// On-disk formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Om,
    Vectors,
    Chirotope,
}

impl FromStr for FileFormat {
    type Err = OmError;

    fn from_str(s: &str) -> Result<FileFormat> {
        match s {
            "om" => Ok(FileFormat::Om),
            "vec" => Ok(FileFormat::Vectors),
            "chi" => Ok(FileFormat::Chirotope),
            _ => Err(OmError::Parse {
                line: 0,
                msg: format!("unknown format {s:?} (expected om|vec|chi)"),
            }),
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> OmError {
    OmError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Content lines with 1-based numbers, comments and blanks stripped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                None
            } else {
                Some((i + 1, line))
            }
        })
        .collect()
}

fn parse_header<'a>(
    lines: &'a [(usize, &'a str)],
    tag: &str,
) -> Result<(usize, usize, &'a [(usize, &'a str)])> {
    let Some(&(ln, first)) = lines.first() else {
        return Err(perr(0, "empty file"));
    };
    let mut it = first.split_whitespace();
    if it.next() != Some(tag) {
        return Err(perr(ln, format!("expected header `{tag} <n> <k>`")));
    }
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(ln, "bad element count in header"))?;
    let k: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(ln, "bad rank in header"))?;
    if it.next().is_some() {
        return Err(perr(ln, "trailing tokens in header"));
    }
    Ok((n, k, &lines[1..]))
}

/// Parses the `om` cocircuit format. Negations are generated, so files list
/// one representative per pair (both is harmless).
pub fn parse_om(text: &str) -> Result<OrientedMatroid> {
    let lines = content_lines(text);
    let (n, rank, body) = parse_header(&lines, "om")?;
    let mut cocircuits: Vec<SignVector> = Vec::new();
    for &(ln, line) in body {
        let token = line.split_whitespace().next().unwrap();
        let v: SignVector = token
            .parse()
            .map_err(|_| perr(ln, format!("invalid sign string {token:?}")))?;
        if v.len() != n {
            return Err(perr(
                ln,
                format!("sign string has length {}, expected {}", v.len(), n),
            ));
        }
        cocircuits.push(v.negated());
        cocircuits.push(v);
    }
    if cocircuits.is_empty() {
        return Err(perr(0, "no cocircuits"));
    }
    OrientedMatroid::from_cocircuits(n, rank, cocircuits)
}

/// Canonical `om` text: sorted representatives, one per pair.
pub fn format_om(om: &OrientedMatroid) -> String {
    let mut out = format!("om {} {}\n", om.n(), om.rank());
    let mut reps: Vec<SignVector> = om
        .cocircuits()
        .iter()
        .map(|c| c.canonical_representative())
        .collect();
    reps.sort();
    reps.dedup();
    for rep in reps {
        out.push_str(&rep.to_string());
        out.push('\n');
    }
    out
}

/// Extension output: the extended matroid in `om` format, each line
/// annotated with its origin.
pub fn format_extension(res: &ExtensionResult) -> String {
    let om = &res.extended;
    let mut out = format!("om {} {}\n", om.n(), om.rank());
    let mut reps: Vec<(SignVector, usize)> = Vec::new();
    for (i, c) in om.cocircuits().iter().enumerate() {
        let rep = c.canonical_representative();
        if rep == *c {
            reps.push((rep, i));
        }
    }
    reps.sort();
    for (rep, i) in reps {
        match res.origins[i] {
            Origin::Old { source } => {
                out.push_str(&format!(
                    "{rep} # tag: old # from: {}\n",
                    res.base.cocircuits()[source]
                ));
            }
            Origin::New { pos, neg } => {
                let a = res.base.cocircuits()[pos].extended(Sign::Plus);
                let b = res.base.cocircuits()[neg].extended(Sign::Minus);
                out.push_str(&format!("{rep} # tag: new # from: {a} {b}\n"));
            }
        }
    }
    out
}

/// Parses the `vec` format.
pub fn parse_vec(text: &str) -> Result<VectorConfig> {
    let lines = content_lines(text);
    let (n, d, body) = parse_header(&lines, "vec")?;
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    for &(ln, line) in body {
        let row: Vec<i64> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| perr(ln, format!("invalid integer {t:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != d {
            return Err(perr(
                ln,
                format!("row has {} entries, expected {}", row.len(), d),
            ));
        }
        vectors.push(row);
    }
    if vectors.len() != n {
        return Err(perr(0, format!("expected {} vectors, got {}", n, vectors.len())));
    }
    Ok(VectorConfig { dim: d, vectors })
}

pub fn format_vec(cfg: &VectorConfig) -> String {
    let mut out = format!("vec {} {}\n", cfg.n(), cfg.dim);
    for v in &cfg.vectors {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the `chi` format; the sign string may be split across lines.
pub fn parse_chi(text: &str) -> Result<Chirotope> {
    let lines = content_lines(text);
    let (n, r, body) = parse_header(&lines, "chi")?;
    let mut signs: Vec<Sign> = Vec::new();
    for &(ln, line) in body {
        for c in line.chars().filter(|c| !c.is_whitespace()) {
            signs.push(
                Sign::from_char(c).ok_or_else(|| perr(ln, format!("invalid sign {c:?}")))?,
            );
        }
    }
    if signs.is_empty() {
        return Err(perr(0, "no basis signs"));
    }
    Chirotope::new(n, r, signs)
}

pub fn format_chi(chi: &Chirotope) -> String {
    let s: String = chi.signs().iter().map(|s| s.to_char()).collect();
    format!("chi {} {}\n{}\n", chi.n, chi.r, s)
}

/// Reads an instance in any supported format, converting to cocircuits.
pub fn parse_instance(text: &str, format: Option<FileFormat>) -> Result<OrientedMatroid> {
    let format = match format {
        Some(f) => f,
        None => sniff_format(text)?,
    };
    match format {
        FileFormat::Om => parse_om(text),
        FileFormat::Vectors => om_from_vectors(&parse_vec(text)?),
        FileFormat::Chirotope => om_from_chirotope(&parse_chi(text)?),
    }
}

/// Guesses the format from the header tag.
pub fn sniff_format(text: &str) -> Result<FileFormat> {
    let lines = content_lines(text);
    let Some(&(ln, first)) = lines.first() else {
        return Err(perr(0, "empty file"));
    };
    first
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .map_err(|_| perr(ln, "unrecognized header tag (expected om|vec|chi)"))
}

pub fn load_instance(path: &Path, format: Option<FileFormat>) -> Result<OrientedMatroid> {
    parse_instance(&fs::read_to_string(path)?, format)
}

/// Which whole-module checks a scenario runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Validate,
    Extend,
    Euclid,
    Lemmas,
    Theorems,
}

impl FromStr for CheckKind {
    type Err = OmError;

    fn from_str(s: &str) -> Result<CheckKind> {
        match s {
            "validate" => Ok(CheckKind::Validate),
            "extend" => Ok(CheckKind::Extend),
            "euclid" => Ok(CheckKind::Euclid),
            "lemmas" => Ok(CheckKind::Lemmas),
            "theorems" => Ok(CheckKind::Theorems),
            _ => Err(OmError::InvalidScenario(format!("unknown check {s:?}"))),
        }
    }
}

/// A parsed scenario file: one input, at least one check, optional knobs.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub input: String,
    pub format: Option<FileFormat>,
    pub lex: Option<LexSpec>,
    pub checks: Vec<CheckKind>,
    /// 0-based (g, f).
    pub pair: Option<(usize, usize)>,
    pub all_pairs: bool,
    pub out: Option<String>,
    pub dot: Option<String>,
    pub seed: Option<u64>,
}

/// Parses a scenario file. Directives are `key value` lines: `input`,
/// `format`, `lex`, `check` (repeatable), `pair g,f` (1-based),
/// `all-pairs`, `out`, `dot`, `seed`.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut input: Option<String> = None;
    let mut format = None;
    let mut lex = None;
    let mut checks = Vec::new();
    let mut pair = None;
    let mut all_pairs = false;
    let mut out = None;
    let mut dot = None;
    let mut seed = None;
    for (ln, line) in content_lines(text) {
        let (key, value) = match line.split_once(char::is_whitespace) {
            Some((k, v)) => (k, v.trim()),
            None => (line, ""),
        };
        match key {
            "input" => {
                if input.is_some() {
                    return Err(perr(ln, "second input line (exactly one input source)"));
                }
                if value.is_empty() {
                    return Err(perr(ln, "input needs a path"));
                }
                input = Some(value.to_string());
            }
            "format" => format = Some(value.parse().map_err(|_| perr(ln, "bad format"))?),
            "lex" => lex = Some(value.parse().map_err(|e| perr(ln, format!("{e}")))?),
            "check" => {
                for word in value.split_whitespace() {
                    checks.push(word.parse().map_err(|e| perr(ln, format!("{e}")))?);
                }
            }
            "pair" => pair = Some(parse_pair(value).map_err(|e| perr(ln, format!("{e}")))?),
            "all-pairs" => all_pairs = true,
            "out" => out = Some(value.to_string()),
            "dot" => dot = Some(value.to_string()),
            "seed" => {
                seed = Some(value.parse().map_err(|_| perr(ln, "bad seed"))?);
            }
            _ => return Err(perr(ln, format!("unknown directive {key:?}"))),
        }
    }
    let Some(input) = input else {
        return Err(OmError::InvalidScenario("no input source".into()));
    };
    if checks.is_empty() {
        return Err(OmError::InvalidScenario("no checks selected".into()));
    }
    Ok(Scenario {
        input,
        format,
        lex,
        checks,
        pair,
        all_pairs,
        out,
        dot,
        seed,
    })
}

/// Parses a 1-based `g,f` pair into 0-based indices.
pub fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (g, f) = s
        .split_once(',')
        .ok_or_else(|| OmError::InvalidScenario(format!("expected g,f in {s:?}")))?;
    let g: usize = g
        .trim()
        .parse()
        .map_err(|_| OmError::InvalidScenario(format!("bad element {g:?}")))?;
    let f: usize = f
        .trim()
        .parse()
        .map_err(|_| OmError::InvalidScenario(format!("bad element {f:?}")))?;
    if g == 0 || f == 0 {
        return Err(OmError::InvalidScenario("element ids are 1-based".into()));
    }
    Ok((g - 1, f - 1))
}

/// Parameters for the seeded instance generator.
#[derive(Clone, Debug)]
pub struct CorpusParams {
    pub seed: u64,
    pub count: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    pub max_n: usize,
    pub entry_bound: i64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            seed: 1,
            count: 200,
            min_rank: 2,
            max_rank: 4,
            max_n: 8,
            entry_bound: 3,
        }
    }
}

/// Deterministic corpus of full-rank integer configurations. Same
/// parameters, same instances, in the same order.
pub fn generate_corpus(params: &CorpusParams) -> Vec<VectorConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.count);
    let mut attempts = 0usize;
    while out.len() < params.count && attempts < params.count * 1000 {
        attempts += 1;
        let r = rng.gen_range(params.min_rank..=params.max_rank);
        if r > params.max_n {
            continue;
        }
        let n = rng.gen_range(r.max(3).min(params.max_n)..=params.max_n);
        let vectors: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..r)
                    .map(|_| rng.gen_range(-params.entry_bound..=params.entry_bound))
                    .collect()
            })
            .collect();
        if rank_rows(&vectors) != r {
            continue;
        }
        out.push(VectorConfig {
            dim: r,
            vectors,
        });
    }
    out
}
