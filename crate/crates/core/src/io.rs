//! JSON and CSV formats, and barcode rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bipersistence::{rank_invariant, BiGrid, RankEntry};
use crate::complex::{default_id, FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::persistence::{Bar, Barcode};
use crate::sheaf::{CellularSheaf, SheafDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub vertices: Vec<u32>,
    #[serde(default)]
    pub entry: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default = "default_field")]
    pub field: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    pub simplices: Vec<SimplexFile>,
}

fn default_field() -> u32 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionFile {
    pub face: String,
    pub coface: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexFile>,
    /// Constant sheaf `F^d` on whatever complex it is read against.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<usize>,
    #[serde(default)]
    pub stalks: BTreeMap<String, usize>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexFile>,
    pub snapshots: Vec<SheafFile>,
    #[serde(default)]
    pub steps: Vec<BTreeMap<String, Vec<Vec<i64>>>>,
}

impl ComplexFile {
    /// Builds the complex; `field` overrides the file's modulus.
    pub fn build(&self, field: Option<Field>) -> Result<FilteredComplex> {
        let field = match field {
            Some(f) => f,
            None => Field::new(self.field)?,
        };
        let simplices: Vec<Simplex> = self
            .simplices
            .iter()
            .map(|s| Simplex {
                id: s.id.clone().unwrap_or_else(|| default_id(&s.vertices)),
                vertices: s.vertices.clone(),
                entry: s.entry,
            })
            .collect();
        let steps = self
            .steps
            .unwrap_or_else(|| simplices.iter().map(|s| s.entry + 1).max().unwrap_or(1));
        FilteredComplex::new(field, steps, simplices)
    }

    pub fn from_complex(c: &FilteredComplex) -> Self {
        ComplexFile {
            field: c.field().modulus(),
            steps: Some(c.steps()),
            simplices: c
                .simplices()
                .iter()
                .map(|s| SimplexFile {
                    id: (s.id != default_id(&s.vertices)).then(|| s.id.clone()),
                    vertices: s.vertices.clone(),
                    entry: s.entry,
                })
                .collect(),
        }
    }
}

fn signed_rows(m: &Matrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect()
}

impl SheafFile {
    pub fn build(&self, complex: Arc<FilteredComplex>) -> Result<CellularSheaf> {
        if let Some(d) = self.constant {
            if !self.stalks.is_empty() || !self.restrictions.is_empty() {
                return Err(Error::InvalidInput(
                    "constant sheaf given together with stalks or restrictions".into(),
                ));
            }
            return Ok(CellularSheaf::constant(complex, d));
        }
        CellularSheaf::from_ids(
            complex,
            self.stalks.iter().map(|(k, &v)| (k.as_str(), v)),
            self.restrictions
                .iter()
                .map(|r| (r.face.as_str(), r.coface.as_str(), r.matrix.clone())),
        )
    }

    pub fn from_sheaf(f: &CellularSheaf) -> Self {
        let c = f.complex();
        SheafFile {
            complex: None,
            constant: None,
            stalks: (0..c.len())
                .map(|i| (c.simplex(i).id.clone(), f.stalk(i)))
                .collect(),
            restrictions: f
                .restrictions()
                .iter()
                .map(|(&(s, t), m)| RestrictionFile {
                    face: c.simplex(s).id.clone(),
                    coface: c.simplex(t).id.clone(),
                    matrix: signed_rows(m),
                })
                .collect(),
        }
    }
}

impl DiagramFile {
    pub fn build(&self, complex: Arc<FilteredComplex>) -> Result<SheafDiagram> {
        let sheaves = self
            .snapshots
            .iter()
            .map(|s| s.build(complex.clone()))
            .collect::<Result<Vec<_>>>()?;
        let steps = self
            .steps
            .iter()
            .map(|m| m.iter().map(|(k, v)| (k.as_str(), v.clone())).collect())
            .collect();
        SheafDiagram::from_ids(sheaves, steps)
    }

    pub fn from_diagram(d: &SheafDiagram) -> Self {
        let c = d.complex();
        DiagramFile {
            complex: None,
            snapshots: d.sheaves().iter().map(|s| SheafFile::from_sheaf(s)).collect(),
            steps: d
                .morphisms()
                .iter()
                .map(|m| {
                    m.components()
                        .iter()
                        .enumerate()
                        .map(|(i, x)| (c.simplex(i).id.clone(), signed_rows(x)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// A filtered complex with a label per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledFile {
    pub complex: ComplexFile,
    pub labels: BTreeMap<u32, String>,
}

impl LabeledFile {
    pub fn build(&self, field: Option<Field>) -> Result<(FilteredComplex, BTreeMap<u32, String>)> {
        let c = self.complex.build(field)?;
        let verts = c.vertex_labels();
        if let Some(v) = verts.iter().find(|v| !self.labels.contains_key(v)) {
            return Err(Error::InvalidInput(format!("vertex {v} has no label")));
        }
        if let Some(v) = self.labels.keys().find(|v| verts.binary_search(v).is_err()) {
            return Err(Error::InvalidInput(format!("label given for unknown vertex {v}")));
        }
        Ok((c, self.labels.clone()))
    }
}

pub fn parse_labeled_str(s: &str, field: Option<Field>) -> Result<(FilteredComplex, BTreeMap<u32, String>)> {
    serde_json::from_str::<LabeledFile>(s)?.build(field)
}

pub fn labeled_to_json(c: &FilteredComplex, labels: &BTreeMap<u32, String>) -> String {
    let file = LabeledFile {
        complex: ComplexFile::from_complex(c),
        labels: labels.clone(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Resolves the complex: an explicit one wins over an embedded one.
fn pick_complex(
    explicit: Option<Arc<FilteredComplex>>,
    embedded: Option<&ComplexFile>,
    field: Option<Field>,
) -> Result<Arc<FilteredComplex>> {
    match (explicit, embedded) {
        (Some(c), _) => Ok(match field {
            Some(f) if f != c.field() => Arc::new(c.with_field(f)),
            _ => c,
        }),
        (None, Some(cf)) => Ok(Arc::new(cf.build(field)?)),
        (None, None) => Err(Error::InvalidInput(
            "no complex given and none embedded in the file".into(),
        )),
    }
}

pub fn parse_complex_str(s: &str, field: Option<Field>) -> Result<FilteredComplex> {
    serde_json::from_str::<ComplexFile>(s)?.build(field)
}

pub fn parse_sheaf_str(
    s: &str,
    complex: Option<Arc<FilteredComplex>>,
    field: Option<Field>,
) -> Result<CellularSheaf> {
    let file: SheafFile = serde_json::from_str(s)?;
    file.build(pick_complex(complex, file.complex.as_ref(), field)?)
}

pub fn parse_diagram_str(
    s: &str,
    complex: Option<Arc<FilteredComplex>>,
    field: Option<Field>,
) -> Result<SheafDiagram> {
    let file: DiagramFile = serde_json::from_str(s)?;
    file.build(pick_complex(complex, file.complex.as_ref(), field)?)
}

pub fn parse_complex(path: &Path, field: Option<Field>) -> Result<FilteredComplex> {
    parse_complex_str(&std::fs::read_to_string(path)?, field)
}

pub fn parse_sheaf(
    path: &Path,
    complex: Option<Arc<FilteredComplex>>,
    field: Option<Field>,
) -> Result<CellularSheaf> {
    parse_sheaf_str(&std::fs::read_to_string(path)?, complex, field)
}

pub fn parse_diagram(
    path: &Path,
    complex: Option<Arc<FilteredComplex>>,
    field: Option<Field>,
) -> Result<SheafDiagram> {
    parse_diagram_str(&std::fs::read_to_string(path)?, complex, field)
}

pub fn complex_to_json(c: &FilteredComplex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_complex(c)).expect("serializable")
}

pub fn sheaf_to_json(f: &CellularSheaf) -> String {
    serde_json::to_string_pretty(&SheafFile::from_sheaf(f)).expect("serializable")
}

pub fn diagram_to_json(d: &SheafDiagram) -> String {
    serde_json::to_string_pretty(&DiagramFile::from_diagram(d)).expect("serializable")
}

/// Points with a trailing label column. A first row whose coordinates do
/// not parse as numbers is taken as a header.
pub fn parse_points_csv(reader: impl std::io::Read) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() < 2 {
            return Err(Error::Parse(format!(
                "line {}: need coordinates and a label",
                line + 1
            )));
        }
        let coords: std::result::Result<Vec<f64>, _> =
            rec.iter().take(rec.len() - 1).map(str::parse::<f64>).collect();
        match coords {
            Ok(c) => {
                points.push(c);
                labels.push(rec[rec.len() - 1].to_string());
            }
            Err(_) if line == 0 => continue,
            Err(e) => return Err(Error::Parse(format!("line {}: {e}", line + 1))),
        }
    }
    if let Some(p) = points.iter().find(|p| p.len() != points[0].len()) {
        return Err(Error::Parse(format!(
            "rows have {} and {} coordinates",
            points[0].len(),
            p.len()
        )));
    }
    Ok((points, labels))
}

pub fn read_points_csv(path: &Path) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    parse_points_csv(std::fs::File::open(path)?)
}

/// Serializable barcode with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarcodeReport {
    pub degree: usize,
    /// `[a, b]` pairs; `b = null` is infinity.
    pub bars: Vec<(usize, Option<usize>)>,
    pub engine: String,
    pub field: u32,
    pub steps: usize,
}

impl BarcodeReport {
    pub fn new(bc: &Barcode, engine: &str, field: Field, steps: usize) -> Self {
        BarcodeReport {
            degree: bc.degree,
            bars: bc.bars().iter().map(|b| (b.birth, b.death)).collect(),
            engine: engine.to_string(),
            field: field.modulus(),
            steps,
        }
    }

    pub fn barcode(&self) -> Barcode {
        Barcode::new(
            self.degree,
            self.bars
                .iter()
                .map(|&(birth, death)| Bar { birth, death })
                .collect(),
        )
    }

    /// Infinite ends replaced by `steps - 1`.
    pub fn closed(&self) -> Self {
        BarcodeReport {
            bars: self
                .barcode()
                .closed(self.steps)
                .bars()
                .iter()
                .map(|b| (b.birth, b.death))
                .collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Svg,
}

pub fn render_text(reports: &[BarcodeReport]) -> String {
    let mut out = String::new();
    for r in reports {
        if r.bars.is_empty() {
            writeln!(out, "H^{}: (empty)", r.degree).unwrap();
        }
        for &(a, b) in &r.bars {
            match b {
                Some(b) => writeln!(out, "H^{}: [{a}, {b}]", r.degree).unwrap(),
                None => writeln!(out, "H^{}: [{a}, inf)", r.degree).unwrap(),
            }
        }
    }
    out
}

pub fn render_json(reports: &[BarcodeReport]) -> String {
    let mut s = match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("serializable");
    s.push('\n');
    s
}

/// Horizontal bars on an integer axis `0..steps`, one row per bar.
pub fn render_svg(reports: &[BarcodeReport]) -> String {
    const UNIT: usize = 40;
    const ROW: usize = 16;
    const LEFT: usize = 60;
    let steps = reports.iter().map(|r| r.steps).max().unwrap_or(1).max(1);
    let rows: usize = reports.iter().map(|r| r.bars.len().max(1)).sum();
    let axis_end = LEFT + steps * UNIT;
    let width = axis_end + 30;
    let height = 30 + rows * ROW + 30;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
    )
    .unwrap();
    let mut y = 20;
    for r in reports {
        writeln!(s, r#"<text x="4" y="{}">H^{}</text>"#, y + ROW / 2 + 4, r.degree).unwrap();
        if r.bars.is_empty() {
            y += ROW;
        }
        for &(a, b) in &r.bars {
            let x0 = LEFT + a * UNIT;
            let yy = y + ROW / 2;
            match b {
                Some(b) => {
                    let x1 = LEFT + (b + 1) * UNIT - 4;
                    writeln!(
                        s,
                        r#"<line x1="{x0}" y1="{yy}" x2="{x1}" y2="{yy}" stroke="black" stroke-width="4"/>"#
                    )
                    .unwrap();
                }
                None => {
                    let x1 = axis_end - 6;
                    writeln!(
                        s,
                        r#"<line x1="{x0}" y1="{yy}" x2="{x1}" y2="{yy}" stroke="black" stroke-width="4"/>"#
                    )
                    .unwrap();
                    writeln!(
                        s,
                        r#"<polygon points="{x1},{} {axis_end},{yy} {x1},{}" fill="black"/>"#,
                        yy - 5,
                        yy + 5
                    )
                    .unwrap();
                }
            }
            y += ROW;
        }
    }
    let ay = y + 8;
    writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{ay}" x2="{axis_end}" y2="{ay}" stroke="gray"/>"#
    )
    .unwrap();
    for i in 0..steps {
        let x = LEFT + i * UNIT;
        writeln!(
            s,
            r#"<line x1="{x}" y1="{ay}" x2="{x}" y2="{}" stroke="gray"/><text x="{}" y="{}">{i}</text>"#,
            ay + 4,
            x - 3,
            ay + 16
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

pub fn render(reports: &[BarcodeReport], format: Format, closed_end: bool) -> String {
    let owned: Vec<BarcodeReport>;
    let reports = if closed_end {
        owned = reports.iter().map(BarcodeReport::closed).collect();
        &owned
    } else {
        reports
    };
    match format {
        Format::Text => render_text(reports),
        Format::Json => render_json(reports),
        Format::Svg => render_svg(reports),
    }
}

/// JSON view of a bipersistence grid.
#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub degree: usize,
    pub field: u32,
    pub rows: usize,
    pub cols: usize,
    pub dims: Vec<Vec<usize>>,
    pub horizontal: Vec<Vec<Vec<Vec<u32>>>>,
    pub vertical: Vec<Vec<Vec<Vec<u32>>>>,
    pub commutative: bool,
    pub rank_invariant: Vec<RankEntry>,
}

impl GridReport {
    pub fn new(g: &BiGrid, degree: usize, commutative: bool) -> Self {
        let rows = |ms: &Vec<Vec<Matrix>>| ms.iter().map(|r| r.iter().map(Matrix::to_rows).collect()).collect();
        GridReport {
            degree,
            field: g.field().modulus(),
            rows: g.rows(),
            cols: g.cols(),
            dims: g.dims.clone(),
            horizontal: rows(&g.horizontal),
            vertical: rows(&g.vertical),
            commutative,
            rank_invariant: rank_invariant(g)
                .into_iter()
                .map(|((from, to), rank)| RankEntry { from, to, rank })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "H^{} grid ({} x {}), rows from the full complex down:", self.degree, self.rows, self.cols).unwrap();
        for row in &self.dims {
            let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            writeln!(s, "  {}", cells.join(" ")).unwrap();
        }
        writeln!(s, "commutative: {}", self.commutative).unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VERTEX: &str = r#"{"field": 2, "steps": 1, "simplices": [{"id": "v", "vertices": [0], "entry": 0}]}"#;

    #[test]
    fn minimal_complex() {
        let c = parse_complex_str(VERTEX, None).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.simplex(0).id, "v");
    }

    #[test]
    fn field_override_and_bad_field() {
        let c = parse_complex_str(VERTEX, Some(Field::new(5).unwrap())).unwrap();
        assert_eq!(c.field().modulus(), 5);
        let bad = VERTEX.replace("\"field\": 2", "\"field\": 4");
        assert!(matches!(parse_complex_str(&bad, None), Err(Error::InvalidField(4))));
        assert!(matches!(parse_complex_str("{", None), Err(Error::Parse(_))));
    }

    #[test]
    fn labeled_file() {
        let s = r#"{"complex": {"simplices": [{"vertices": [0, 1]}]}, "labels": {"0": "b", "1": "r"}}"#;
        assert!(parse_complex_str(r#"{"simplices": [{"vertices": [0, 1]}]}"#, None).is_err());
        let s2 = r#"{"complex": {"simplices": [{"vertices": [0]}, {"vertices": [1]}, {"vertices": [0, 1]}]}, "labels": {"0": "b", "1": "r"}}"#;
        let (c, l) = parse_labeled_str(s2, None).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(l[&1], "r");
        assert!(parse_labeled_str(s, None).is_err());
        let back = parse_labeled_str(&labeled_to_json(&c, &l), None).unwrap();
        assert_eq!(back, (c, l));
    }

    #[test]
    fn constant_shorthand() {
        let c = Arc::new(parse_complex_str(VERTEX, None).unwrap());
        let f = parse_sheaf_str(r#"{"constant": 2}"#, Some(c.clone()), None).unwrap();
        assert_eq!(f, CellularSheaf::constant(c.clone(), 2));
        let mixed = r#"{"constant": 1, "stalks": {"v": 1}}"#;
        assert!(parse_sheaf_str(mixed, Some(c), None).is_err());
    }

    #[test]
    fn text_rendering() {
        let f = Field::f2();
        let empty = BarcodeReport::new(&Barcode::empty(0), "pointwise", f, 3);
        assert_eq!(render_text(&[empty]), "H^0: (empty)\n");
        let bc = Barcode::new(0, vec![Bar::infinite(1), Bar::infinite(2), Bar::infinite(4)]);
        let r = BarcodeReport::new(&bc, "graded", f, 5);
        assert_eq!(render_text(std::slice::from_ref(&r)), "H^0: [1, inf)\nH^0: [2, inf)\nH^0: [4, inf)\n");
        assert_eq!(
            render(&[r], Format::Text, true),
            "H^0: [1, 4]\nH^0: [2, 4]\nH^0: [4, 4]\n"
        );
        let bc = Barcode::new(1, vec![Bar::finite(5, 5), Bar::finite(3, 5)]);
        let r = BarcodeReport::new(&bc, "pointwise", f, 7);
        assert_eq!(render_text(&[r]), "H^1: [3, 5]\nH^1: [5, 5]\n");
    }

    #[test]
    fn json_report_round_trip() {
        let bc = Barcode::new(0, vec![Bar::infinite(1), Bar::finite(0, 2)]);
        let r = BarcodeReport::new(&bc, "graded", Field::f2(), 4);
        let s = render_json(std::slice::from_ref(&r));
        assert!(s.contains("null"));
        let back: BarcodeReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.barcode(), bc);
    }

    #[test]
    fn svg_has_arrowheads_for_infinite_bars() {
        let bc = Barcode::new(0, vec![Bar::infinite(1), Bar::finite(0, 0)]);
        let r = BarcodeReport::new(&bc, "graded", Field::f2(), 3);
        let svg = render_svg(&[r]);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 1);
    }

    #[test]
    fn points_csv() {
        let data = "x,y,label\n0,0,b\n1.5,0,r\n";
        let (p, l) = parse_points_csv(data.as_bytes()).unwrap();
        assert_eq!(p, vec![vec![0.0, 0.0], vec![1.5, 0.0]]);
        assert_eq!(l, vec!["b", "r"]);
        assert!(parse_points_csv("0,0,b\nx,1,r\n".as_bytes()).is_err());
    }
}
