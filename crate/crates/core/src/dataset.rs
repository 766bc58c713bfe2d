//! Two-class datasets: loading, class mapping and the correlation-signed
//! min-max transform that turns attribute values into node reliabilities.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Libsvm,
}

/// Where the class label sits on each line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelPosition {
    LastColumn,
    /// First token of the line (the LIBSVM layout; also accepted for CSV).
    Leading,
}

impl DataFormat {
    pub fn default_label_position(self) -> LabelPosition {
        match self {
            DataFormat::Csv => LabelPosition::LastColumn,
            DataFormat::Libsvm => LabelPosition::Leading,
        }
    }
}

/// Instances with their original, opaque class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    instances: Vec<Vec<f64>>,
    labels: Vec<String>,
    n_attributes: usize,
}

impl RawDataset {
    pub fn new(instances: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if instances.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if instances.len() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: instances.len(),
                got: labels.len(),
            });
        }
        let n_attributes = instances[0].len();
        if n_attributes == 0 {
            return Err(Error::InvalidParameter("instances have no attributes".into()));
        }
        if let Some(bad) = instances.iter().find(|x| x.len() != n_attributes) {
            return Err(Error::AttributeCount {
                expected: n_attributes,
                got: bad.len(),
            });
        }
        let distinct = distinct_labels(&labels);
        if distinct.len() > 2 {
            return Err(Error::TooManyClasses { found: distinct });
        }
        Ok(Self {
            instances,
            labels,
            n_attributes,
        })
    }

    pub fn instances(&self) -> &[Vec<f64>] {
        &self.instances
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_attributes(&self) -> usize {
        self.n_attributes
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Sorted distinct labels.
    pub fn distinct_labels(&self) -> Vec<String> {
        distinct_labels(&self.labels)
    }

    /// The instances at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let instances = indices.iter().map(|&i| self.instances[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(instances, labels)
    }
}

fn distinct_labels(labels: &[String]) -> Vec<String> {
    let mut v: Vec<String> = labels.to_vec();
    v.sort();
    v.dedup();
    v
}

pub fn load_dataset(path: &Path, format: DataFormat, position: LabelPosition) -> Result<RawDataset> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(&text, format, position)
}

pub fn parse_dataset(text: &str, format: DataFormat, position: LabelPosition) -> Result<RawDataset> {
    match format {
        DataFormat::Csv => {
            let (instances, labels) = parse_csv(text, Some(position))?;
            RawDataset::new(instances, labels)
        }
        DataFormat::Libsvm => {
            if position != LabelPosition::Leading {
                return Err(Error::InvalidParameter(
                    "LIBSVM files carry the label as the leading token".into(),
                ));
            }
            parse_libsvm(text)
        }
    }
}

struct SparseRows {
    rows: Vec<Vec<(usize, f64)>>,
    labels: Vec<String>,
    max_index: usize,
}

impl SparseRows {
    fn densify(self, width: usize) -> Vec<Vec<f64>> {
        self.rows
            .into_iter()
            .map(|entries| {
                let mut x = vec![0.0; width];
                for (idx, val) in entries {
                    x[idx - 1] = val;
                }
                x
            })
            .collect()
    }
}

fn parse_libsvm_rows(text: &str) -> Result<SparseRows> {
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut labels = Vec::new();
    let mut max_index = 0usize;

    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let label = tokens.next().expect("non-empty line has a token");
        let mut entries = Vec::new();
        let mut last = 0usize;
        for tok in tokens {
            let parse_err = |message: String| Error::Parse { line: lineno, message };
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(format!("expected <index>:<value>, got {tok:?}")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| parse_err(format!("bad feature index {idx:?}")))?;
            if idx == 0 {
                return Err(parse_err("feature indices are 1-based".into()));
            }
            if idx <= last {
                return Err(parse_err(format!("feature index {idx} is not increasing")));
            }
            let val: f64 = val
                .parse()
                .map_err(|_| parse_err(format!("bad feature value {val:?}")))?;
            if !val.is_finite() {
                return Err(parse_err(format!("non-finite feature value {val}")));
            }
            last = idx;
            entries.push((idx, val));
        }
        max_index = max_index.max(last);
        rows.push(entries);
        labels.push(label.to_string());
    }

    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if max_index == 0 {
        return Err(Error::InvalidParameter("no feature values in file".into()));
    }
    Ok(SparseRows { rows, labels, max_index })
}

fn parse_libsvm(text: &str) -> Result<RawDataset> {
    let mut sparse = parse_libsvm_rows(text)?;
    let labels = std::mem::take(&mut sparse.labels);
    let width = sparse.max_index;
    RawDataset::new(sparse.densify(width), labels)
}

/// Attribute vectors without labels, for prediction input.
///
/// CSV rows are all attributes. LIBSVM lines keep their leading token, which
/// is ignored; rows are padded with zeros to `min_width` when given.
pub fn load_instances(path: &Path, format: DataFormat, min_width: Option<usize>) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instances(&text, format, min_width)
}

pub fn parse_instances(text: &str, format: DataFormat, min_width: Option<usize>) -> Result<Vec<Vec<f64>>> {
    match format {
        DataFormat::Csv => parse_csv(text, None).map(|(x, _)| x),
        DataFormat::Libsvm => {
            let sparse = parse_libsvm_rows(text)?;
            let width = sparse.max_index.max(min_width.unwrap_or(0));
            Ok(sparse.densify(width))
        }
    }
}

type CsvRows = (Vec<Vec<f64>>, Vec<String>);

fn parse_csv(text: &str, position: Option<LabelPosition>) -> Result<CsvRows> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut instances = Vec::new();
    let mut labels = Vec::new();
    let mut width: Option<usize> = None;
    let mut first = true;

    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if position.is_some() && record.len() < 2 {
            return Err(Error::Parse {
                line,
                message: "need at least one attribute and a class column".into(),
            });
        }
        let fields: Vec<&str> = record.iter().collect();
        let (label, attrs) = match position {
            Some(LabelPosition::LastColumn) => {
                let (l, a) = fields.split_last().expect("len >= 2");
                (Some(*l), a)
            }
            Some(LabelPosition::Leading) => {
                let (l, a) = fields.split_first().expect("len >= 2");
                (Some(*l), a)
            }
            None => (None, fields.as_slice()),
        };
        let parsed: std::result::Result<Vec<f64>, _> = attrs.iter().map(|s| s.parse::<f64>()).collect();
        let values = match parsed {
            Ok(v) => v,
            // a non-numeric first row is a header
            Err(_) if first => {
                first = false;
                continue;
            }
            Err(e) => {
                return Err(Error::Parse {
                    line,
                    message: format!("non-numeric attribute value: {e}"),
                })
            }
        };
        first = false;
        if let Some(w) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line,
                message: format!("non-finite attribute value {w}"),
            });
        }
        match width {
            None => width = Some(values.len()),
            Some(w) if w != values.len() => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {w} attributes, found {}", values.len()),
                })
            }
            _ => {}
        }
        instances.push(values);
        if let Some(label) = label {
            labels.push(label.to_string());
        }
    }
    if instances.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok((instances, labels))
}

/// Mapping from the original labels onto {0, 1} plus the decision threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMap {
    pub label_for_one: String,
    /// `None` when the training data held a single label.
    pub label_for_zero: Option<String>,
    pub count_one: usize,
    pub total: usize,
    /// Ratio of class-1 instances, `count_one / total`.
    pub theta: f64,
}

impl ClassMap {
    pub fn class_of(&self, label: &str) -> Option<u8> {
        if label == self.label_for_one {
            Some(1)
        } else if self.label_for_zero.as_deref() == Some(label) {
            Some(0)
        } else {
            None
        }
    }

    pub fn label_of(&self, class: u8) -> Option<&str> {
        match class {
            1 => Some(&self.label_for_one),
            0 => self.label_for_zero.as_deref(),
            _ => None,
        }
    }

    pub fn encode(&self, labels: &[String]) -> Result<Vec<u8>> {
        labels
            .iter()
            .map(|l| {
                self.class_of(l).ok_or_else(|| {
                    Error::InvalidParameter(format!("label {l:?} is not part of the class map"))
                })
            })
            .collect()
    }
}

/// The majority label becomes class 1. Equal counts go to the byte-wise
/// larger label.
pub fn map_classes(raw: &RawDataset) -> Result<ClassMap> {
    if raw.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let distinct = raw.distinct_labels();
    let count = |l: &str| raw.labels().iter().filter(|x| x.as_str() == l).count();
    let total = raw.len();
    match distinct.as_slice() {
        [only] => {
            log::warn!("dataset holds a single class {only:?}; theta = 1");
            Ok(ClassMap {
                label_for_one: only.clone(),
                label_for_zero: None,
                count_one: total,
                total,
                theta: 1.0,
            })
        }
        [a, b] => {
            // distinct is sorted, so `b` wins ties
            let (ca, cb) = (count(a), count(b));
            let (one, zero, count_one) = if ca > cb { (a, b, ca) } else { (b, a, cb) };
            Ok(ClassMap {
                label_for_one: one.clone(),
                label_for_zero: Some(zero.clone()),
                count_one,
                total,
                theta: count_one as f64 / total as f64,
            })
        }
        _ => Err(Error::TooManyClasses { found: distinct }),
    }
}

/// Min-max parameters and correlation sign of one attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeScaling {
    pub min: f64,
    pub max: f64,
    pub flip: bool,
    pub spearman: f64,
}

impl AttributeScaling {
    pub fn apply(&self, x: f64) -> f64 {
        if self.max == self.min {
            return 0.5;
        }
        let t = (x - self.min) / (self.max - self.min);
        let t = if self.flip { 1.0 - t } else { t };
        t.clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub attributes: Vec<AttributeScaling>,
    pub class_map: ClassMap,
}

impl TransformSpec {
    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn theta(&self) -> f64 {
        self.class_map.theta
    }
}

/// Node reliabilities per instance with the {0,1} classes.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedDataset {
    pub node_rel: Vec<Vec<f64>>,
    pub y01: Vec<u8>,
    pub theta: f64,
}

impl TransformedDataset {
    pub fn len(&self) -> usize {
        self.node_rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_rel.is_empty()
    }

    pub fn n_attributes(&self) -> usize {
        self.node_rel.first().map_or(0, Vec::len)
    }
}

pub fn fit_transform(raw: &RawDataset, cmap: &ClassMap) -> Result<(TransformSpec, TransformedDataset)> {
    let y01 = cmap.encode(raw.labels())?;
    let y: Vec<f64> = y01.iter().map(|&c| f64::from(c)).collect();

    let attributes = (0..raw.n_attributes())
        .map(|j| {
            let column: Vec<f64> = raw.instances().iter().map(|x| x[j]).collect();
            let min = column.iter().copied().fold(f64::INFINITY, f64::min);
            let max = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let spearman = spearman(&column, &y);
            AttributeScaling {
                min,
                max,
                flip: spearman < 0.0,
                spearman,
            }
        })
        .collect();

    let spec = TransformSpec {
        attributes,
        class_map: cmap.clone(),
    };
    let node_rel = raw
        .instances()
        .iter()
        .map(|x| apply_transform(&spec, x))
        .collect::<Result<Vec<_>>>()?;
    let data = TransformedDataset {
        node_rel,
        y01,
        theta: cmap.theta,
    };
    Ok((spec, data))
}

pub fn apply_transform(spec: &TransformSpec, instance: &[f64]) -> Result<Vec<f64>> {
    if instance.len() != spec.n_attributes() {
        return Err(Error::AttributeCount {
            expected: spec.n_attributes(),
            got: instance.len(),
        });
    }
    Ok(spec
        .attributes
        .iter()
        .zip(instance)
        .map(|(a, &x)| a.apply(x))
        .collect())
}

/// 1-based ranks with ties given the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // ranks start+1 ..= end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = mean;
        }
        start = end;
    }
    ranks
}

/// Spearman rank correlation (Pearson on average ranks). Returns 0 when
/// either side is constant.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spearman: length mismatch");
    pearson(&average_ranks(a), &average_ranks(b))
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    if a.is_empty() {
        return 0.0;
    }
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return 0.0;
    }
    (sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn single_column(col: &[f64], y: &[&str]) -> RawDataset {
        RawDataset::new(col.iter().map(|&v| vec![v]).collect(), labels(y)).unwrap()
    }

    #[test]
    fn libsvm_fills_missing_features() {
        let raw = parse_dataset("+1 1:0.5 3:2.0\n-1 2:1\n", DataFormat::Libsvm, LabelPosition::Leading).unwrap();
        assert_eq!(raw.n_attributes(), 3);
        assert_eq!(raw.instances()[0], vec![0.5, 0.0, 2.0]);
        assert_eq!(raw.instances()[1], vec![0.0, 1.0, 0.0]);
        assert_eq!(raw.labels(), &labels(&["+1", "-1"]));
    }

    #[test]
    fn libsvm_reports_line_numbers() {
        let err = parse_dataset("+1 1:0.5\n\n-1 2:x\n", DataFormat::Libsvm, LabelPosition::Leading).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_dataset("+1 2:1 1:0\n", DataFormat::Libsvm, LabelPosition::Leading).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_dataset("+1 0:1\n", DataFormat::Libsvm, LabelPosition::Leading).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn csv_last_column_and_header() {
        let raw = parse_dataset("a,b,class\n1.0,2.0,yes\n3,4,no\n", DataFormat::Csv, LabelPosition::LastColumn).unwrap();
        assert_eq!(raw.instances(), &[vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(raw.labels(), &labels(&["yes", "no"]));

        let raw = parse_dataset("1.0,2.0,yes\n", DataFormat::Csv, LabelPosition::LastColumn).unwrap();
        assert_eq!(raw.instances(), &[vec![1.0, 2.0]]);

        let raw = parse_dataset("yes,1.0,2.0\n", DataFormat::Csv, LabelPosition::Leading).unwrap();
        assert_eq!(raw.labels(), &labels(&["yes"]));
        assert_eq!(raw.instances(), &[vec![1.0, 2.0]]);
    }

    #[test]
    fn unlabeled_instances() {
        let x = parse_instances("a,b\n1,2\n3,4\n", DataFormat::Csv, None).unwrap();
        assert_eq!(x, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let x = parse_instances("0 2:1.5\n", DataFormat::Libsvm, Some(4)).unwrap();
        assert_eq!(x, vec![vec![0.0, 1.5, 0.0, 0.0]]);
        assert!(parse_instances("", DataFormat::Csv, None).is_err());
    }

    #[test]
    fn csv_errors() {
        let err = parse_dataset("1,2,a\n1,x,b\n", DataFormat::Csv, LabelPosition::LastColumn).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_dataset("1,2,a\n1,b\n", DataFormat::Csv, LabelPosition::LastColumn).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_dataset("h1,h2,c\n", DataFormat::Csv, LabelPosition::LastColumn).unwrap_err();
        assert!(matches!(err, Error::EmptyDataset));
        let err = parse_dataset("1,a\n2,b\n3,c\n", DataFormat::Csv, LabelPosition::LastColumn).unwrap_err();
        assert!(matches!(err, Error::TooManyClasses { .. }));
        assert!(err.to_string().contains("more than two classes"));
    }

    #[test]
    fn majority_maps_to_one() {
        let raw = single_column(&[1., 2., 3., 4., 5.], &["+1", "+1", "+1", "-1", "-1"]);
        let cmap = map_classes(&raw).unwrap();
        assert_eq!(cmap.label_for_one, "+1");
        assert_eq!(cmap.label_for_zero.as_deref(), Some("-1"));
        assert_eq!(cmap.encode(raw.labels()).unwrap(), vec![1, 1, 1, 0, 0]);
        assert_eq!(cmap.theta, 0.6);
        assert_eq!((cmap.count_one, cmap.total), (3, 5));
    }

    #[test]
    fn tie_goes_to_larger_label() {
        let raw = single_column(&[1., 2.], &["b", "a"]);
        let cmap = map_classes(&raw).unwrap();
        assert_eq!(cmap.label_for_one, "b");
        assert_eq!(cmap.theta, 0.5);
    }

    #[test]
    fn single_label() {
        let raw = single_column(&[1., 2.], &["+1", "+1"]);
        let cmap = map_classes(&raw).unwrap();
        assert_eq!(cmap.label_for_one, "+1");
        assert_eq!(cmap.label_for_zero, None);
        assert_eq!(cmap.theta, 1.0);
    }

    #[test]
    fn average_ranks_with_ties() {
        assert_eq!(average_ranks(&[10., 20., 20., 5.]), vec![2.0, 3.5, 3.5, 1.0]);
        assert_eq!(average_ranks(&[0., 0., 1.]), vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn increasing_column() {
        let raw = single_column(&[2., 4., 6.], &["n", "n", "p"]);
        // class 1 is the majority "n"; transform against that orientation
        let cmap = map_classes(&raw).unwrap();
        let (spec, data) = fit_transform(&raw, &cmap).unwrap();
        // ranks (1,2,3) vs y ranks (2.5,2.5,1) -> -0.866; flipped
        assert!((spec.attributes[0].spearman + 0.8660254037844386).abs() < 1e-12);
        assert!(spec.attributes[0].flip);
        assert_eq!(data.node_rel, vec![vec![1.0], vec![0.5], vec![0.0]]);
    }

    #[test]
    fn column_examples_against_y01() {
        // y01 = [0,0,1]: ranks (1.5,1.5,3); column ranks (1,2,3)
        // Pearson on ranks: cov = 1.5, sd_a = sqrt(2), sd_b = sqrt(1.5) -> sqrt(3)/2
        let y = [0.0, 0.0, 1.0];
        let expected = 3f64.sqrt() / 2.0;
        assert!((spearman(&[2., 4., 6.], &y) - expected).abs() < 1e-12);
        assert!((spearman(&[6., 4., 2.], &y) + expected).abs() < 1e-12);

        let up = AttributeScaling { min: 2., max: 6., flip: false, spearman: expected };
        let down = AttributeScaling { min: 2., max: 6., flip: true, spearman: -expected };
        let t: Vec<f64> = [2., 4., 6.].iter().map(|&x| up.apply(x)).collect();
        assert_eq!(t, vec![0.0, 0.5, 1.0]);
        let t: Vec<f64> = [6., 4., 2.].iter().map(|&x| down.apply(x)).collect();
        assert_eq!(t, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn constant_column_is_half() {
        let raw = single_column(&[5., 5., 5.], &["a", "a", "b"]);
        let cmap = map_classes(&raw).unwrap();
        let (spec, data) = fit_transform(&raw, &cmap).unwrap();
        assert_eq!(spec.attributes[0].spearman, 0.0);
        assert!(!spec.attributes[0].flip);
        assert_eq!(data.node_rel, vec![vec![0.5]; 3]);
    }

    #[test]
    fn unseen_values_are_clamped() {
        let up = AttributeScaling { min: 2., max: 6., flip: false, spearman: 1.0 };
        let down = AttributeScaling { min: 2., max: 6., flip: true, spearman: -1.0 };
        assert_eq!(up.apply(8.0), 1.0);
        assert_eq!(down.apply(0.0), 1.0);
        assert_eq!(up.apply(-3.0), 0.0);
    }

    #[test]
    fn apply_rejects_wrong_length() {
        let raw = single_column(&[1., 2.], &["a", "b"]);
        let (spec, _) = fit_transform(&raw, &map_classes(&raw).unwrap()).unwrap();
        assert!(matches!(
            apply_transform(&spec, &[1.0, 2.0]),
            Err(Error::AttributeCount { expected: 1, got: 2 })
        ));
    }
}
