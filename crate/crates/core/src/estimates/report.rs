use crate::norms::fmt17;

/// One measured instance of an inequality `lhs <= C rhs_scale`.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    pub estimate_id: String,
    /// `(j, k, j', k', j'', k'')`, unused slots `None`.
    pub indices: [Option<i32>; 6],
    pub signs: String,
    pub seed: u64,
    pub lhs: f64,
    pub rhs_scale: f64,
    pub ratio: f64,
}

impl EstimateReport {
    pub const CSV_HEADER: &'static str = "estimate_id,j,k,j',k',j'',k'',signs,seed,lhs,rhs_scale,ratio";

    pub fn new(estimate_id: &str, indices: [Option<i32>; 6], signs: &str, seed: u64, lhs: f64, rhs_scale: f64) -> Self {
        let ratio = if rhs_scale > 0.0 { lhs / rhs_scale } else { f64::NAN };
        Self { estimate_id: estimate_id.into(), indices, signs: signs.into(), seed, lhs, rhs_scale, ratio }
    }

    /// Index `j` only.
    pub fn shell(estimate_id: &str, j: i32, seed: u64, lhs: f64, rhs_scale: f64) -> Self {
        Self::new(estimate_id, [Some(j), None, None, None, None, None], "", seed, lhs, rhs_scale)
    }

    pub fn csv_row(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| i.map(|v| v.to_string()).unwrap_or_default()).collect();
        format!(
            "{},{},{},{},{},{},{}",
            self.estimate_id,
            idx.join(","),
            self.signs,
            self.seed,
            fmt17(self.lhs),
            fmt17(self.rhs_scale),
            fmt17(self.ratio)
        )
    }

    /// Sort key for deterministic merging.
    pub fn key(&self) -> (String, [Option<i32>; 6], String, u64) {
        (self.estimate_id.clone(), self.indices, self.signs.clone(), self.seed)
    }
}

pub fn reports_csv(reports: &[EstimateReport]) -> String {
    let mut sorted: Vec<&EstimateReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.key().cmp(&b.key()));
    let mut s = String::from(EstimateReport::CSV_HEADER);
    s.push('\n');
    for r in sorted {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

/// Envelope of the ratios per swept parameter value, and its spread.
#[derive(Clone, Debug, PartialEq)]
pub struct Plateau {
    /// `(parameter, max ratio over seeds, min ratio over seeds)`.
    pub envelope: Vec<(i32, f64, f64)>,
    /// `max_p sup / min_p sup` of the per-parameter suprema.
    pub spread: f64,
}

impl Plateau {
    /// Groups ratios by `param(report)` and compares the per-group suprema.
    pub fn from_reports(reports: &[EstimateReport], param: impl Fn(&EstimateReport) -> i32) -> Self {
        let mut groups: std::collections::BTreeMap<i32, (f64, f64)> = Default::default();
        for r in reports.iter().filter(|r| r.ratio.is_finite()) {
            let e = groups.entry(param(r)).or_insert((f64::NEG_INFINITY, f64::INFINITY));
            e.0 = e.0.max(r.ratio);
            e.1 = e.1.min(r.ratio);
        }
        let envelope: Vec<(i32, f64, f64)> = groups.into_iter().map(|(p, (hi, lo))| (p, hi, lo)).collect();
        let hi = envelope.iter().map(|e| e.1).fold(f64::NEG_INFINITY, f64::max);
        let lo = envelope.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
        let spread = if envelope.is_empty() { 1.0 } else { hi / lo };
        Self { envelope, spread }
    }

    pub fn octaves(&self) -> i32 {
        match (self.envelope.first(), self.envelope.last()) {
            (Some(a), Some(b)) => b.0 - a.0,
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_scale_gives_nan_ratio() {
        assert!(EstimateReport::shell("x", 0, 0, 1.0, 0.0).ratio.is_nan());
        assert_eq!(EstimateReport::shell("x", 0, 0, 3.0, 2.0).ratio, 1.5);
    }

    #[test]
    fn csv_is_sorted_and_blank_for_unused_indices() {
        let rows = [EstimateReport::shell("b", 1, 0, 1.0, 1.0), EstimateReport::shell("a", 2, 7, 1.0, 4.0)];
        let csv = reports_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], EstimateReport::CSV_HEADER);
        assert!(lines[1].starts_with("a,2,,,,,,,7,"));
        assert!(lines[2].starts_with("b,1,"));
        assert_eq!(lines[1].split(',').count(), lines[0].split(',').count());
    }

    #[test]
    fn plateau_uses_per_parameter_suprema() {
        let rows = [
            EstimateReport::shell("x", 0, 0, 1.0, 1.0),
            EstimateReport::shell("x", 0, 1, 3.0, 1.0),
            EstimateReport::shell("x", 4, 0, 6.0, 1.0),
            EstimateReport::shell("x", 4, 1, 0.0, 0.0),
        ];
        let p = Plateau::from_reports(&rows, |r| r.indices[0].unwrap());
        assert_eq!(p.envelope, vec![(0, 3.0, 1.0), (4, 6.0, 6.0)]);
        assert_eq!(p.spread, 2.0);
        assert_eq!(p.octaves(), 4);
    }
}
