//! Occupation-by-lag (or horizon) matrices with a significance mask, and
//! their CSV form.

use serde::{Deserialize, Serialize};

use super::granger::GrangerCell;
use super::oos::OosResult;
use super::LeadLagError;

const MISSING: &str = "NA";

/// `values[i][j]` is the displayed statistic, `p_values[i][j]` the
/// p-value that decides the mask. Skipped cells are `None` in both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapMatrix {
    pub statistic: String,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
    pub p_values: Vec<Vec<Option<f64>>>,
    pub alpha: f64,
}

impl HeatmapMatrix {
    pub fn significant(&self, i: usize, j: usize) -> bool {
        self.p_values[i][j].is_some_and(|p| p < self.alpha)
    }

    fn sorted(mut self) -> Self {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| self.rows[a].cmp(&self.rows[b]));
        self.rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        self.values = order.iter().map(|&i| self.values[i].clone()).collect();
        self.p_values = order.iter().map(|&i| self.p_values[i].clone()).collect();
        self
    }
}

/// Granger p-values by occupation (rows) and lag (columns).
pub fn granger_heatmap(grids: &[(String, Vec<GrangerCell>)], max_lag: usize, alpha: f64) -> HeatmapMatrix {
    let mut values = Vec::new();
    for (_, cells) in grids {
        let row: Vec<Option<f64>> = (1..=max_lag)
            .map(|lag| {
                cells
                    .iter()
                    .find(|c| c.lag == lag)
                    .and_then(|c| c.result.as_ref())
                    .map(|r| r.p_value)
            })
            .collect();
        values.push(row);
    }
    HeatmapMatrix {
        statistic: "granger_p".into(),
        rows: grids.iter().map(|(n, _)| n.clone()).collect(),
        columns: (1..=max_lag).map(|l| l.to_string()).collect(),
        p_values: values.clone(),
        values,
        alpha,
    }
    .sorted()
}

/// OOS R-squared by occupation and horizon, masked by the Clark-West
/// p-value.
pub fn oos_heatmap(rows: &[(String, Vec<Option<OosResult>>)], horizons: &[usize], alpha: f64) -> HeatmapMatrix {
    let pick = |results: &[Option<OosResult>], h: usize, f: &dyn Fn(&OosResult) -> f64| {
        results
            .iter()
            .flatten()
            .find(|r| r.horizon == h)
            .map(f)
    };
    HeatmapMatrix {
        statistic: "r2_oos".into(),
        rows: rows.iter().map(|(n, _)| n.clone()).collect(),
        columns: horizons.iter().map(|h| format!("h{h}")).collect(),
        values: rows
            .iter()
            .map(|(_, r)| horizons.iter().map(|&h| pick(r, h, &|o| o.r2_oos)).collect())
            .collect(),
        p_values: rows
            .iter()
            .map(|(_, r)| horizons.iter().map(|&h| pick(r, h, &|o| o.cw_p)).collect())
            .collect(),
        alpha,
    }
    .sorted()
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| MISSING.to_string(), |x| x.to_string())
}

/// `(values, mask)` CSV texts. Rows sorted by occupation; the mask holds
/// 1 where `p < alpha`.
pub fn emit_heatmap_data(matrix: &HeatmapMatrix) -> Result<(String, String), LeadLagError> {
    if matrix.rows.is_empty() {
        return Err(LeadLagError::Infeasible("heatmap has no rows".into()));
    }
    let matrix = matrix.clone().sorted();
    let header = format!("occupation,{}\n", matrix.columns.join(","));
    let mut values = header.clone();
    let mut mask = header;
    for (i, name) in matrix.rows.iter().enumerate() {
        let v: Vec<String> = matrix.values[i].iter().map(|x| cell(*x)).collect();
        let m: Vec<&str> = (0..matrix.columns.len())
            .map(|j| if matrix.significant(i, j) { "1" } else { "0" })
            .collect();
        values.push_str(&format!("{name},{}\n", v.join(",")));
        mask.push_str(&format!("{name},{}\n", m.join(",")));
    }
    Ok((values, mask))
}

/// Parsed heatmap CSV: header columns, row names and cells.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapTable {
    pub columns: Vec<String>,
    pub rows: Vec<String>,
    pub cells: Vec<Vec<Option<f64>>>,
}

pub fn parse_heatmap_csv(text: &str) -> Result<HeatmapTable, LeadLagError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let bad = |m: String| LeadLagError::Infeasible(format!("heatmap CSV: {m}"));
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let columns: Vec<String> = headers.iter().skip(1).map(String::from).collect();
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        rows.push(rec[0].to_string());
        let row = rec
            .iter()
            .skip(1)
            .map(|c| {
                if c == MISSING {
                    Ok(None)
                } else {
                    c.parse::<f64>().map(Some).map_err(|_| bad(format!("bad cell {c:?}")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        cells.push(row);
    }
    Ok(HeatmapTable { columns, rows, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(p: Vec<Vec<Option<f64>>>, alpha: f64) -> HeatmapMatrix {
        HeatmapMatrix {
            statistic: "granger_p".into(),
            rows: vec!["Sales".into(), "Arts".into()],
            columns: vec!["1".into(), "2".into()],
            values: p.clone(),
            p_values: p,
            alpha,
        }
    }

    #[test]
    fn insignificant_grid_all_zero_mask() {
        let m = matrix(vec![vec![Some(0.5), Some(0.2)], vec![Some(0.03), None]], 0.01);
        let (values, mask) = emit_heatmap_data(&m).unwrap();
        assert_eq!(mask, "occupation,1,2\nArts,0,0\nSales,0,0\n");
        assert_eq!(values, "occupation,1,2\nArts,0.03,NA\nSales,0.5,0.2\n");
    }

    #[test]
    fn csv_roundtrip_and_mask() {
        let m = matrix(vec![vec![Some(0.001234567891), Some(0.2)], vec![Some(0.03), None]], 0.05);
        let (values, mask) = emit_heatmap_data(&m).unwrap();
        let v = parse_heatmap_csv(&values).unwrap();
        let k = parse_heatmap_csv(&mask).unwrap();
        assert_eq!(v.rows, ["Arts", "Sales"]);
        assert_eq!(v.cells, [vec![Some(0.03), None], vec![Some(0.001234567891), Some(0.2)]]);
        assert_eq!(k.cells, [vec![Some(1.0), Some(0.0)], vec![Some(1.0), Some(0.0)]]);
    }

    #[test]
    fn empty_rejected() {
        let mut m = matrix(vec![], 0.01);
        m.rows.clear();
        assert!(emit_heatmap_data(&m).is_err());
    }
}
