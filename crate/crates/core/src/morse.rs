//! Chain complexes with a Morse filtration, their Hodge form, and the
//! filtered complex rebuilt from level barcodes.

use std::collections::BTreeMap;

use crate::algebra::{self, Field, SparseMatrix};
use crate::bar::{Bar, BarKind, Barcode};
use crate::error::{Error, Result};
use crate::io::ChainComplexDocument;

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub degree: usize,
    pub value: f64,
    pub name: String,
}

/// Graded generators with critical values and boundary matrices
/// `∂_r : C_r → C_{r-1}`.
#[derive(Debug, Clone)]
pub struct ChainComplexData {
    field: Field,
    generators: Vec<Vec<Generator>>,
    /// `boundaries[r]` has `c_{r-1}` rows and `c_r` columns; `boundaries[0]`
    /// is the empty `0 × c_0` map.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    /// `entries[r]` lists `(row, col, coeff)` of `∂_r`.
    pub fn new(
        field: Field,
        generators: Vec<Generator>,
        entries: &BTreeMap<usize, Vec<(usize, usize, i64)>>,
    ) -> Result<Self> {
        let top = generators
            .iter()
            .map(|g| g.degree)
            .chain(entries.keys().copied())
            .max();
        let Some(top) = top else {
            return Ok(ChainComplexData {
                field,
                generators: Vec::new(),
                boundaries: Vec::new(),
            });
        };
        let mut graded: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
        for (k, g) in generators.into_iter().enumerate() {
            if !g.value.is_finite() {
                return Err(Error::validation(
                    format!("generators[{k}].value"),
                    "value is not finite",
                ));
            }
            graded[g.degree].push(g);
        }
        let mut boundaries = vec![SparseMatrix::zeros(0, graded[0].len())];
        for r in 1..=top {
            let (rows, cols) = (graded[r - 1].len(), graded[r].len());
            let list = entries.get(&r).map(Vec::as_slice).unwrap_or(&[]);
            for (k, &(row, col, _)) in list.iter().enumerate() {
                if row >= rows || col >= cols {
                    return Err(Error::validation(
                        format!("boundaries.{r}[{k}]"),
                        format!("entry ({row}, {col}) outside {rows}x{cols}"),
                    ));
                }
            }
            boundaries.push(SparseMatrix::from_triplets(
                field,
                rows,
                cols,
                list.iter().copied(),
            )?);
        }
        if entries.contains_key(&0) {
            return Err(Error::validation(
                "boundaries.0",
                "degree-0 boundary must be zero",
            ));
        }
        Ok(ChainComplexData {
            field,
            generators: graded,
            boundaries,
        })
    }

    pub fn from_document(doc: &ChainComplexDocument, field: Field) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (key, list) in &doc.boundaries {
            let r: usize = key.parse().map_err(|_| {
                Error::validation(format!("boundaries.{key}"), "key is not a degree")
            })?;
            entries.insert(r, list.clone());
        }
        let generators = doc
            .generators
            .iter()
            .map(|g| Generator {
                degree: g.degree,
                value: g.value,
                name: g.name.clone(),
            })
            .collect();
        ChainComplexData::new(field, generators, &entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of degrees represented (`top degree + 1`).
    pub fn degrees(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self, r: usize) -> &[Generator] {
        self.generators.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn boundary(&self, r: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(r)
    }

    pub fn rank(&self, r: usize) -> Result<usize> {
        match self.boundaries.get(r) {
            Some(m) => algebra::rank(m, self.field),
            None => Ok(0),
        }
    }

    /// The subcomplex spanned by generators of value `≤ t`.
    pub fn restrict(&self, t: f64) -> ChainComplexData {
        let keep: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|gs| (0..gs.len()).filter(|&i| gs[i].value <= t).collect())
            .collect();
        let generators = self
            .generators
            .iter()
            .zip(&keep)
            .map(|(gs, k)| k.iter().map(|&i| gs[i].clone()).collect())
            .collect();
        let boundaries = (0..self.boundaries.len())
            .map(|r| {
                let rows: Vec<Option<usize>> = if r == 0 {
                    Vec::new()
                } else {
                    let mut map = vec![None; self.generators[r - 1].len()];
                    for (new, &old) in keep[r - 1].iter().enumerate() {
                        map[old] = Some(new);
                    }
                    map
                };
                let nrows = if r == 0 { 0 } else { keep[r - 1].len() };
                let columns = keep[r]
                    .iter()
                    .map(|&j| {
                        self.boundaries[r]
                            .column(j)
                            .iter()
                            .filter_map(|&(i, v)| rows[i].map(|ni| (ni, v)))
                            .collect()
                    })
                    .collect();
                SparseMatrix::new(nrows, columns).expect("restriction keeps order")
            })
            .collect();
        ChainComplexData {
            field: self.field,
            generators,
            boundaries,
        }
    }

    pub fn betti(&self) -> Result<Vec<usize>> {
        (0..self.degrees())
            .map(|r| Ok(self.generators[r].len() - self.rank(r)? - self.rank(r + 1)?))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `∂_{r-1} ∂_r = 0` and that every boundary entry strictly lowers
/// the value. Reports the first violation.
pub fn validate(c: &ChainComplexData) -> ValidationReport {
    let field = c.field;
    for r in 2..c.degrees() {
        let product = c.boundaries[r - 1]
            .mul(field, &c.boundaries[r])
            .expect("shapes agree by construction");
        if let Some((col, entries)) = product
            .columns()
            .iter()
            .enumerate()
            .find(|(_, e)| !e.is_empty())
        {
            let row = entries[0].0;
            return ValidationReport {
                violation: Some(format!(
                    "∂_{}∂_{r} is nonzero: {} maps to {} with coefficient {}",
                    r - 1,
                    c.generators[r][col].name,
                    c.generators[r - 2][row].name,
                    entries[0].1
                )),
            };
        }
    }
    for r in 1..c.degrees() {
        for (j, col) in c.boundaries[r].columns().iter().enumerate() {
            for &(i, _) in col {
                let (x, y) = (&c.generators[r][j], &c.generators[r - 1][i]);
                if y.value >= x.value {
                    return ValidationReport {
                        violation: Some(format!(
                            "∂_{r}({}, {}) is nonzero but {} does not lie below {}",
                            x.name, y.name, y.value, x.value
                        )),
                    };
                }
            }
        }
    }
    ValidationReport { violation: None }
}

/// `c_r`, `β_r`, `ρ_r` per degree, with `ρ_r = rank ∂_{r+1}` so that
/// `c_r = β_r + ρ_r + ρ_{r-1}`. Trailing degrees with `c_r = 0` are trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HodgeSummary {
    pub c: Vec<usize>,
    pub beta: Vec<usize>,
    pub rho: Vec<usize>,
}

impl HodgeSummary {
    fn from_parts(mut c: Vec<usize>, mut beta: Vec<usize>, mut rho: Vec<usize>) -> Self {
        while c.last() == Some(&0) && beta.last() == Some(&0) && rho.last() == Some(&0) {
            c.pop();
            beta.pop();
            rho.pop();
        }
        HodgeSummary { c, beta, rho }
    }

    pub fn beta(&self, r: usize) -> usize {
        self.beta.get(r).copied().unwrap_or(0)
    }

    pub fn rho(&self, r: usize) -> usize {
        self.rho.get(r).copied().unwrap_or(0)
    }

    pub fn c(&self, r: usize) -> usize {
        self.c.get(r).copied().unwrap_or(0)
    }

    /// Whether `c_r = β_r + ρ_r + ρ_{r-1}` in every degree.
    pub fn identity_holds(&self) -> bool {
        (0..self.c.len()).all(|r| {
            let prev = if r == 0 { 0 } else { self.rho(r - 1) };
            self.c(r) == self.beta(r) + self.rho(r) + prev
        })
    }
}

pub fn hodge(c: &ChainComplexData) -> Result<HodgeSummary> {
    let report = validate(c);
    if let Some(v) = report.violation {
        return Err(Error::InvalidComplex(v));
    }
    let n = c.degrees();
    let dims: Vec<usize> = (0..n).map(|r| c.generators[r].len()).collect();
    let ranks: Vec<usize> = (0..=n).map(|r| c.rank(r)).collect::<Result<_>>()?;
    let beta = (0..n).map(|r| dims[r] - ranks[r] - ranks[r + 1]).collect();
    let rho = (0..n).map(|r| ranks[r + 1]).collect();
    let summary = HodgeSummary::from_parts(dims, beta, rho);
    assert!(
        summary.identity_holds(),
        "Hodge identity fails: {summary:?}"
    );
    Ok(summary)
}

fn degree_span(bars: &Barcode) -> usize {
    bars.max_degree().map_or(0, |d| d + 2)
}

/// `β_r = #closed_r + #open_{r-1}`, `ρ_r = #closed-open_r`.
pub fn counts_from_barcodes(bars: &Barcode) -> HodgeSummary {
    let n = degree_span(bars);
    let beta: Vec<usize> = (0..n)
        .map(|r| {
            bars.count(r, BarKind::Closed)
                + if r > 0 {
                    bars.count(r - 1, BarKind::Open)
                } else {
                    0
                }
        })
        .collect();
    let rho: Vec<usize> = (0..n).map(|r| bars.count(r, BarKind::ClosedOpen)).collect();
    let c = (0..n)
        .map(|r| beta[r] + rho[r] + if r > 0 { rho[r - 1] } else { 0 })
        .collect();
    HodgeSummary::from_parts(c, beta, rho)
}

/// Counts of the sub-level complex at `t` predicted from level barcodes.
pub fn counts_at(bars: &Barcode, t: f64) -> HodgeSummary {
    let n = degree_span(bars);
    let count = |keep: &dyn Fn(&Bar) -> bool| -> usize {
        bars.iter().filter(|(b, _)| keep(b)).map(|(_, m)| m).sum()
    };
    let beta: Vec<usize> = (0..n)
        .map(|r| {
            count(&|b| b.degree == r && b.kind() == BarKind::Closed && b.left <= t)
                + count(&|b| {
                    b.degree == r && b.kind() == BarKind::ClosedOpen && b.left <= t && t < b.right
                })
                + count(&|b| b.degree + 1 == r && b.kind() == BarKind::Open && b.right <= t)
        })
        .collect();
    let rho: Vec<usize> = (0..n)
        .map(|r| count(&|b| b.degree == r && b.kind() == BarKind::ClosedOpen && b.right <= t))
        .collect();
    let c = (0..n)
        .map(|r| beta[r] + rho[r] + if r > 0 { rho[r - 1] } else { 0 })
        .collect();
    HodgeSummary::from_parts(c, beta, rho)
}

/// Which part of the Hodge decomposition a generator belongs to at a stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Role {
    Homology,
    Plus,
    Minus,
}

/// A generator named by a bar. `minus` marks the degree-`r` partner of a
/// closed-open `(r-1)`-bar; otherwise the generator is the bar itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HodgeGenerator {
    pub bar: Bar,
    pub copy: usize,
    pub minus: bool,
}

#[derive(Debug, Clone)]
pub struct HodgeStage {
    pub threshold: f64,
    /// Per degree, sorted generators with their role at this threshold.
    pub generators: Vec<Vec<(HodgeGenerator, Role)>>,
    /// `boundaries[r] : C_r(t) → C_{r-1}(t)`, `boundaries[0]` empty.
    pub boundaries: Vec<SparseMatrix>,
}

impl HodgeStage {
    pub fn dim(&self, r: usize) -> usize {
        self.generators.get(r).map_or(0, Vec::len)
    }

    pub fn role_count(&self, r: usize, role: Role) -> usize {
        self.generators
            .get(r)
            .map_or(0, |g| g.iter().filter(|(_, x)| *x == role).count())
    }
}

/// The filtered Hodge complex read off from level barcodes, one stage per
/// bar endpoint.
#[derive(Debug, Clone)]
pub struct FilteredHodgeComplex {
    field: Field,
    degrees: usize,
    pub stages: Vec<HodgeStage>,
}

pub fn reconstruct(bars: &Barcode, field: Field) -> FilteredHodgeComplex {
    let degrees = degree_span(bars);
    let mut thresholds: Vec<f64> = bars
        .iter()
        .flat_map(|(b, _)| [b.left, b.right])
        .filter(|x| x.is_finite())
        .collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let stages = thresholds
        .iter()
        .map(|&t| {
            let mut generators: Vec<Vec<(HodgeGenerator, Role)>> = vec![Vec::new(); degrees];
            for (b, m) in bars.iter() {
                let r = b.degree;
                for copy in 0..m {
                    let gen = HodgeGenerator {
                        bar: *b,
                        copy,
                        minus: false,
                    };
                    match b.kind() {
                        BarKind::Closed if b.left <= t => generators[r].push((gen, Role::Homology)),
                        BarKind::Open if b.right <= t => {
                            generators[r + 1].push((gen, Role::Homology))
                        }
                        BarKind::ClosedOpen if b.left <= t && t < b.right => {
                            generators[r].push((gen, Role::Homology))
                        }
                        BarKind::ClosedOpen if b.right <= t => {
                            generators[r].push((gen, Role::Plus));
                            generators[r + 1]
                                .push((HodgeGenerator { minus: true, ..gen }, Role::Minus));
                        }
                        _ => {}
                    }
                }
            }
            for g in generators.iter_mut() {
                g.sort_by_key(|a| a.0);
            }
            let mut boundaries = vec![SparseMatrix::zeros(0, generators[0].len())];
            for r in 1..degrees {
                let rows: BTreeMap<HodgeGenerator, usize> = generators[r - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, (g, _))| (*g, i))
                    .collect();
                let columns = generators[r]
                    .iter()
                    .map(|(g, role)| match role {
                        Role::Minus => vec![(rows[&HodgeGenerator { minus: false, ..*g }], 1)],
                        _ => Vec::new(),
                    })
                    .collect();
                boundaries.push(
                    SparseMatrix::new(generators[r - 1].len(), columns)
                        .expect("one entry per column"),
                );
            }
            HodgeStage {
                threshold: t,
                generators,
                boundaries,
            }
        })
        .collect();
    FilteredHodgeComplex {
        field,
        degrees,
        stages,
    }
}

impl FilteredHodgeComplex {
    pub fn degrees(&self) -> usize {
        self.degrees
    }

    pub fn thresholds(&self) -> Vec<f64> {
        self.stages.iter().map(|s| s.threshold).collect()
    }

    /// Latest stage with threshold `≤ t`.
    pub fn stage_at(&self, t: f64) -> Option<&HodgeStage> {
        self.stages.iter().rev().find(|s| s.threshold <= t)
    }

    /// Generator inclusion `C_r(stage a) → C_r(stage b)` for `a ≤ b`.
    pub fn inclusion(&self, r: usize, a: usize, b: usize) -> Result<SparseMatrix> {
        let target: BTreeMap<HodgeGenerator, usize> = self.stages[b].generators[r]
            .iter()
            .enumerate()
            .map(|(i, (g, _))| (*g, i))
            .collect();
        let columns = self.stages[a].generators[r]
            .iter()
            .map(|(g, _)| {
                target.get(g).map(|&i| vec![(i, 1)]).ok_or_else(|| {
                    Error::InvalidComplex(format!("generator {:?} disappears", g.bar))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::new(target.len(), columns)
    }

    pub fn homology_dims(&self, stage: usize) -> Result<Vec<usize>> {
        let s = &self.stages[stage];
        let rank = |r: usize| -> Result<usize> {
            match s.boundaries.get(r) {
                Some(m) => algebra::rank(m, self.field),
                None => Ok(0),
            }
        };
        (0..self.degrees)
            .map(|r| Ok(s.dim(r) - rank(r)? - rank(r + 1)?))
            .collect()
    }

    /// Checks `∂² = 0` at every stage and that inclusions between consecutive
    /// stages intertwine the boundaries. Returns the first failure.
    pub fn check(&self) -> Result<Option<String>> {
        let f = self.field;
        for (k, s) in self.stages.iter().enumerate() {
            for r in 2..self.degrees {
                if !s.boundaries[r - 1].mul(f, &s.boundaries[r])?.is_zero() {
                    return Ok(Some(format!("∂² ≠ 0 in degree {r} at t = {}", s.threshold)));
                }
            }
            if k + 1 < self.stages.len() {
                let next = &self.stages[k + 1];
                for r in 1..self.degrees {
                    let lhs = self.inclusion(r - 1, k, k + 1)?.mul(f, &s.boundaries[r])?;
                    let rhs = next.boundaries[r].mul(f, &self.inclusion(r, k, k + 1)?)?;
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "inclusion does not intertwine ∂_{r} between t = {} and t = {}",
                            s.threshold, next.threshold
                        )));
                    }
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    /// Thresholds examined.
    pub thresholds: Vec<f64>,
    /// First `(degree, t, detail)` where the two disagree.
    pub mismatch: Option<(usize, f64, String)>,
}

impl CompareReport {
    pub fn matched(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares chain dimensions and Betti numbers of the Morse filtration of
/// `c` against the reconstruction at every threshold of either.
pub fn compare(c: &ChainComplexData, rebuilt: &FilteredHodgeComplex) -> Result<CompareReport> {
    if let Some(v) = validate(c).violation {
        return Err(Error::InvalidComplex(v));
    }
    let mut thresholds = rebuilt.thresholds();
    thresholds.extend(c.generators.iter().flatten().map(|g| g.value));
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();
    let degrees = c.degrees().max(rebuilt.degrees);
    for &t in &thresholds {
        let sub = c.restrict(t);
        let betti = sub.betti()?;
        let (dims, hom): (Vec<usize>, Vec<usize>) = match rebuilt.stage_at(t) {
            Some(stage) => {
                let idx = rebuilt
                    .stages
                    .iter()
                    .position(|s| std::ptr::eq(s, stage))
                    .unwrap();
                (
                    (0..degrees).map(|r| stage.dim(r)).collect(),
                    rebuilt.homology_dims(idx)?,
                )
            }
            None => (vec![0; degrees], vec![0; degrees]),
        };
        for r in 0..degrees {
            let morse_dim = sub.generators(r).len();
            let rebuilt_dim = dims.get(r).copied().unwrap_or(0);
            if morse_dim != rebuilt_dim {
                return Ok(CompareReport {
                    thresholds,
                    mismatch: Some((r, t, format!("dim C_{r}: {morse_dim} vs {rebuilt_dim}"))),
                });
            }
            let (mb, rb) = (
                betti.get(r).copied().unwrap_or(0),
                hom.get(r).copied().unwrap_or(0),
            );
            if mb != rb {
                return Ok(CompareReport {
                    thresholds,
                    mismatch: Some((r, t, format!("β_{r}: {mb} vs {rb}"))),
                });
            }
        }
    }
    Ok(CompareReport {
        thresholds,
        mismatch: None,
    })
}
