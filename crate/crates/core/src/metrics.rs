//! Corpus-level statistics over usage reports.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::model::{Coordinate, UsageLabel};
use crate::usage::{LabelCounts, UsageReport};

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ArtifactStats {
    pub coordinate: Coordinate,
    pub counts: LabelCounts,
    /// Share of each label in `ud, ui, ut, bd, bi, bt` order; zero when there
    /// are no dependencies.
    pub ratios: [f64; 6],
    pub height: usize,
    /// `(ut + bt) / total`
    pub transitive_ratio: f64,
    /// `(bd + bi + bt) / total`
    pub bloat_ratio: f64,
    pub multimodule: bool,
}

impl ArtifactStats {
    pub fn total(&self) -> usize {
        self.counts.total()
    }

    /// `bt / (ut + bt)`, undefined without transitive dependencies.
    pub fn bt_share_of_transitive(&self) -> Option<f64> {
        let transitive = self.counts.ut + self.counts.bt;
        (transitive > 0).then(|| self.counts.bt as f64 / transitive as f64)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CorpusStats {
    pub global_counts: LabelCounts,
    pub global_ratios: BTreeMap<String, f64>,
    pub per_artifact: Vec<ArtifactStats>,
}

fn ratios(counts: &LabelCounts) -> [f64; 6] {
    let total = counts.total();
    let mut out = [0.0; 6];
    if total > 0 {
        for (slot, (_, n)) in out.iter_mut().zip(counts.iter()) {
            *slot = n as f64 / total as f64;
        }
    }
    out
}

fn share(part: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        part as f64 / total as f64
    }
}

fn global_ratios(counts: &LabelCounts) -> BTreeMap<String, f64> {
    UsageLabel::ALL
        .iter()
        .zip(ratios(counts))
        .map(|(l, r)| (l.code().to_string(), r))
        .collect()
}

/// Aggregates per-artifact and global label statistics. Artifacts are
/// sorted by coordinate so the result does not depend on input order.
pub fn aggregate(reports: &[UsageReport]) -> CorpusStats {
    let mut global = LabelCounts::default();
    let mut per_artifact: Vec<ArtifactStats> = reports
        .iter()
        .map(|r| {
            for (l, n) in r.counts.iter() {
                global.add(l, n);
            }
            let c = r.counts;
            let total = c.total();
            ArtifactStats {
                coordinate: r.root.clone(),
                counts: c,
                ratios: ratios(&c),
                height: r.tree_height,
                transitive_ratio: share(c.ut + c.bt, total),
                bloat_ratio: share(c.bloated(), total),
                multimodule: r.multimodule,
            }
        })
        .collect();
    per_artifact.sort_by(|a, b| a.coordinate.cmp(&b.coordinate));
    CorpusStats {
        global_ratios: global_ratios(&global),
        global_counts: global,
        per_artifact,
    }
}

/// Global statistics of the single-module and multi-module subsets.
pub fn split_by_modularity(stats: &CorpusStats) -> (CorpusStats, CorpusStats) {
    let subset = |multi: bool| {
        let per_artifact: Vec<ArtifactStats> = stats
            .per_artifact
            .iter()
            .filter(|a| a.multimodule == multi)
            .cloned()
            .collect();
        let mut counts = LabelCounts::default();
        for a in &per_artifact {
            for (l, n) in a.counts.iter() {
                counts.add(l, n);
            }
        }
        CorpusStats {
            global_ratios: global_ratios(&counts),
            global_counts: counts,
            per_artifact,
        }
    };
    (subset(false), subset(true))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpearmanError {
    #[error("samples differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least two observations")]
    TooShort,
    #[error("all values of a sample are identical")]
    DegenerateInput,
    #[error("sample contains NaN or infinity")]
    NonFinite,
}

/// 1-based ranks; tied values share the average of their positions.
pub fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        // positions i..=j (0-based) share rank mean(i+1 ..= j+1)
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

/// Spearman's rank correlation: Pearson correlation of average ranks.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64, SpearmanError> {
    if x.len() != y.len() {
        return Err(SpearmanError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Err(SpearmanError::TooShort);
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(SpearmanError::NonFinite);
    }
    if x.iter().all(|&v| v == x[0]) || y.iter().all(|&v| v == y[0]) {
        return Err(SpearmanError::DegenerateInput);
    }
    Ok(pearson(&average_ranks(x), &average_ranks(y)))
}

/// The two corpus correlations: transitive ratio against bloat ratio, and
/// bloated-transitive count against tree size (non-omitted nodes).
#[derive(Debug, Clone, PartialEq)]
pub struct Correlations {
    pub transitive_vs_bloat: Result<f64, SpearmanError>,
    pub bt_vs_tree_size: Result<f64, SpearmanError>,
}

pub fn correlations(stats: &CorpusStats) -> Correlations {
    let with_deps: Vec<&ArtifactStats> = stats
        .per_artifact
        .iter()
        .filter(|a| a.total() > 0)
        .collect();
    let col = |f: fn(&ArtifactStats) -> f64| with_deps.iter().map(|a| f(a)).collect::<Vec<_>>();
    Correlations {
        transitive_vs_bloat: spearman_rho(&col(|a| a.transitive_ratio), &col(|a| a.bloat_ratio)),
        bt_vs_tree_size: spearman_rho(&col(|a| a.counts.bt as f64), &col(|a| a.total() as f64)),
    }
}

/// Five-number summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Quantile with linear interpolation between order statistics.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    Some(Summary {
        min: v[0],
        q1: quantile(&v, 0.25),
        median: quantile(&v, 0.5),
        q3: quantile(&v, 0.75),
        max: v[v.len() - 1],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightBucket {
    /// `"1"` .. `"cap-1"`, then `"≥cap"`.
    pub label: String,
    pub artifacts: usize,
    /// Distribution of `bt / (ut + bt)` over artifacts with transitive deps.
    pub bt_ratio: Option<Summary>,
}

/// Groups artifacts with at least one dependency by tree height; heights of
/// `cap` and above share the last bucket.
pub fn height_vs_bloat(stats: &CorpusStats, cap: usize) -> Vec<HeightBucket> {
    let cap = cap.max(2);
    let mut samples: Vec<(usize, Vec<f64>)> = (1..=cap).map(|_| (0, Vec::new())).collect();
    for a in stats
        .per_artifact
        .iter()
        .filter(|a| a.total() > 0 && a.height > 0)
    {
        let slot = &mut samples[a.height.min(cap) - 1];
        slot.0 += 1;
        if let Some(r) = a.bt_share_of_transitive() {
            slot.1.push(r);
        }
    }
    samples
        .into_iter()
        .enumerate()
        .map(|(i, (count, ratios))| HeightBucket {
            label: if i + 1 == cap {
                format!("≥{cap}")
            } else {
                (i + 1).to_string()
            },
            artifacts: count,
            bt_ratio: summarize(&ratios),
        })
        .collect()
}

#[derive(Serialize)]
struct CsvRow<'a> {
    coordinate: &'a Coordinate,
    ud: usize,
    ui: usize,
    ut: usize,
    bd: usize,
    bi: usize,
    bt: usize,
    height: usize,
    transitive_ratio: f64,
    bloat_ratio: f64,
    multimodule: bool,
}

/// One row per artifact.
pub fn write_csv<W: Write>(stats: &CorpusStats, out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for a in &stats.per_artifact {
        let c = &a.counts;
        w.serialize(CsvRow {
            coordinate: &a.coordinate,
            ud: c.ud,
            ui: c.ui,
            ut: c.ut,
            bd: c.bd,
            bi: c.bi,
            bt: c.bt,
            height: a.height,
            transitive_ratio: a.transitive_ratio,
            bloat_ratio: a.bloat_ratio,
            multimodule: a.multimodule,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(c: &str, counts: [usize; 6], height: usize, multimodule: bool) -> UsageReport {
        let [ud, ui, ut, bd, bi, bt] = counts;
        UsageReport {
            root: c.parse().unwrap(),
            usages: vec![],
            counts: LabelCounts {
                ud,
                ui,
                ut,
                bd,
                bi,
                bt,
            },
            actions: vec![],
            warnings: vec![],
            tree_height: height,
            multimodule,
        }
    }

    #[test]
    fn bloat_ratio_from_counts() {
        let s = aggregate(&[report("a:b:1", [2, 1, 3, 1, 1, 4], 3, true)]);
        let a = &s.per_artifact[0];
        assert_eq!(a.bloat_ratio, 0.5);
        assert_eq!(a.transitive_ratio, 7.0 / 12.0);
        assert!((a.ratios.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!((s.global_ratios.values().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn empty_corpus() {
        let s = aggregate(&[]);
        assert_eq!(s.global_counts, LabelCounts::default());
        assert!(s.per_artifact.is_empty());
        assert!(s.global_ratios.values().all(|&r| r == 0.0));
    }

    #[test]
    fn spearman_endpoints_and_errors() {
        assert_eq!(spearman_rho(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]), Ok(1.0));
        assert_eq!(spearman_rho(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Ok(-1.0));
        assert_eq!(
            spearman_rho(&[1.0, 2.0], &[1.0]),
            Err(SpearmanError::LengthMismatch(2, 1))
        );
        assert_eq!(spearman_rho(&[1.0], &[1.0]), Err(SpearmanError::TooShort));
        assert_eq!(
            spearman_rho(&[2.0, 2.0], &[1.0, 3.0]),
            Err(SpearmanError::DegenerateInput)
        );
        assert_eq!(
            spearman_rho(&[f64::NAN, 2.0], &[1.0, 3.0]),
            Err(SpearmanError::NonFinite)
        );
    }

    #[test]
    fn ties_get_average_ranks() {
        assert_eq!(
            average_ranks(&[10.0, 20.0, 10.0, 30.0]),
            [1.5, 3.0, 1.5, 4.0]
        );
    }

    #[test]
    fn height_buckets() {
        let s = aggregate(&[
            report("a:a:1", [1, 0, 1, 0, 0, 1], 4, false),
            report("a:b:1", [1, 0, 0, 0, 0, 0], 14, false),
            report("a:c:1", [1, 0, 0, 0, 0, 0], 4, false),
            report("a:d:1", [0, 0, 0, 0, 0, 0], 0, false),
        ]);
        let t = height_vs_bloat(&s, 10);
        assert_eq!(t.len(), 10);
        assert_eq!(t[3].label, "4");
        assert_eq!(t[3].artifacts, 2);
        // a:c has no transitive deps: counted but contributes no ratio
        assert_eq!(t[3].bt_ratio.unwrap().median, 0.5);
        assert_eq!(t[9].label, "≥10");
        assert_eq!(t[9].artifacts, 1);
        assert_eq!(t[9].bt_ratio, None);
        assert_eq!(t.iter().map(|b| b.artifacts).sum::<usize>(), 3);
    }

    #[test]
    fn quartiles_interpolate() {
        let s = summarize(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(
            (s.min, s.q1, s.median, s.q3, s.max),
            (1.0, 1.75, 2.5, 3.25, 4.0)
        );
    }

    #[test]
    fn split_keeps_every_artifact() {
        let s = aggregate(&[
            report("a:a:1", [1, 0, 2, 1, 0, 3], 2, false),
            report("a:b:1", [0, 2, 1, 0, 3, 1], 3, true),
        ]);
        let (single, multi) = split_by_modularity(&s);
        assert_eq!(single.per_artifact.len(), 1);
        assert_eq!(multi.global_counts.bi, 3);
        assert_eq!(
            single.global_counts.total() + multi.global_counts.total(),
            s.global_counts.total()
        );
    }

    #[test]
    fn csv_has_one_row_per_artifact() {
        let s = aggregate(&[report("a:b:1", [2, 1, 3, 1, 1, 4], 3, true)]);
        let mut out = Vec::new();
        write_csv(&s, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "coordinate,ud,ui,ut,bd,bi,bt,height,transitive_ratio,bloat_ratio,multimodule"
        );
        assert_eq!(
            lines.next().unwrap(),
            "a:b:1,2,1,3,1,1,4,3,0.5833333333333334,0.5,true"
        );
        assert!(lines.next().is_none());
    }
}
