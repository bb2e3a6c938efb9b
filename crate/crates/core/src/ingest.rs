//! Patient CSV ingestion and transaction derivation.
//!
//! A patient table has a header row. The reserved columns `id`, `age`, `sex`,
//! `outcome` and `lab_result` are recognised by exact, case-sensitive name;
//! every other column is a binary symptom flag holding `0` or `1`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::itemset::{ItemCatalog, ItemId, Itemset};
use crate::transactions::TransactionSet;

pub const RESERVED_COLUMNS: [&str; 5] = ["id", "age", "sex", "outcome", "lab_result"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sex {
    Male,
    Female,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Recovered,
    Deceased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabResult {
    Positive,
    Negative,
}

impl Sex {
    pub fn code(self) -> &'static str {
        match self {
            Sex::Male => "M",
            Sex::Female => "F",
        }
    }

    pub fn item_name(self) -> &'static str {
        match self {
            Sex::Male => "Male",
            Sex::Female => "Female",
        }
    }
}

impl Outcome {
    pub fn code(self) -> &'static str {
        match self {
            Outcome::Recovered => "recovered",
            Outcome::Deceased => "deceased",
        }
    }

    pub fn item_name(self) -> &'static str {
        match self {
            Outcome::Recovered => "Recovery",
            Outcome::Deceased => "Death",
        }
    }
}

impl LabResult {
    pub fn code(self) -> &'static str {
        match self {
            LabResult::Positive => "pos",
            LabResult::Negative => "neg",
        }
    }

    pub fn item_name(self) -> &'static str {
        match self {
            LabResult::Positive => "Lab_Res_Pos",
            LabResult::Negative => "Lab_Res_Neg",
        }
    }
}

/// Half-open age groups: `[0,20)`, `[20,40)`, `[40,60)`, `[60,∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AgeBucket {
    Under20,
    From20To40,
    From40To60,
    Over60,
}

impl AgeBucket {
    pub const ALL: [AgeBucket; 4] = [
        AgeBucket::Under20,
        AgeBucket::From20To40,
        AgeBucket::From40To60,
        AgeBucket::Over60,
    ];

    pub fn of(age: u32) -> AgeBucket {
        match age {
            0..=19 => AgeBucket::Under20,
            20..=39 => AgeBucket::From20To40,
            40..=59 => AgeBucket::From40To60,
            _ => AgeBucket::Over60,
        }
    }

    pub fn item_name(self) -> &'static str {
        match self {
            AgeBucket::Under20 => "<20",
            AgeBucket::From20To40 => "20-40",
            AgeBucket::From40To60 => "40-60",
            AgeBucket::Over60 => ">60",
        }
    }

    /// Inclusive lower bound and exclusive upper bound (`None` = unbounded).
    pub fn bounds(self) -> (u32, Option<u32>) {
        match self {
            AgeBucket::Under20 => (0, Some(20)),
            AgeBucket::From20To40 => (20, Some(40)),
            AgeBucket::From40To60 => (40, Some(60)),
            AgeBucket::Over60 => (60, None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Column {
    Id,
    Age,
    Sex,
    Outcome,
    LabResult,
    Symptom(String),
}

impl Column {
    fn from_header(name: &str) -> Column {
        match name {
            "id" => Column::Id,
            "age" => Column::Age,
            "sex" => Column::Sex,
            "outcome" => Column::Outcome,
            "lab_result" => Column::LabResult,
            other => Column::Symptom(other.to_string()),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Column::Id => "id",
            Column::Age => "age",
            Column::Sex => "sex",
            Column::Outcome => "outcome",
            Column::LabResult => "lab_result",
            Column::Symptom(name) => name,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatientRecord {
    pub id: Option<String>,
    pub age: Option<u32>,
    pub sex: Option<Sex>,
    pub outcome: Option<Outcome>,
    pub lab_result: Option<LabResult>,
    /// One flag per symptom column, in column order.
    pub symptoms: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatientTable {
    columns: Vec<Column>,
    symptom_names: Vec<String>,
    rows: Vec<PatientRecord>,
}

impl PatientTable {
    pub fn new(columns: Vec<Column>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &columns {
            if c.name().is_empty() {
                return Err(Error::Schema("empty column name in header".into()));
            }
            if !seen.insert(c.name().to_string()) {
                return Err(Error::Schema(format!("duplicate column `{}`", c.name())));
            }
        }
        let symptom_names = columns
            .iter()
            .filter_map(|c| match c {
                Column::Symptom(name) => Some(name.clone()),
                _ => None,
            })
            .collect();
        Ok(PatientTable {
            columns,
            symptom_names,
            rows: Vec::new(),
        })
    }

    /// Appends a record. Fields for present reserved columns are required,
    /// except `lab_result`, which may be absent per row.
    pub fn push(&mut self, record: PatientRecord) -> Result<()> {
        if record.symptoms.len() != self.symptom_names.len() {
            return Err(Error::Schema(format!(
                "record has {} symptom flags, table has {} symptom columns",
                record.symptoms.len(),
                self.symptom_names.len()
            )));
        }
        let missing = |col: Column, present: bool| {
            if self.has_column(&col) && !present {
                Err(Error::Schema(format!("record is missing `{}`", col.name())))
            } else {
                Ok(())
            }
        };
        missing(Column::Age, record.age.is_some())?;
        missing(Column::Sex, record.sex.is_some())?;
        missing(Column::Outcome, record.outcome.is_some())?;
        self.rows.push(record);
        Ok(())
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn has_column(&self, column: &Column) -> bool {
        self.columns.contains(column)
    }

    pub fn symptom_names(&self) -> &[String] {
        &self.symptom_names
    }

    pub fn rows(&self) -> &[PatientRecord] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn with_rows(&self, rows: Vec<PatientRecord>) -> PatientTable {
        PatientTable {
            columns: self.columns.clone(),
            symptom_names: self.symptom_names.clone(),
            rows,
        }
    }

    /// Serializes back into the CSV dialect accepted by [`parse_patient_csv`].
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(Column::name).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut symptom = 0;
            let cells: Vec<String> = self
                .columns
                .iter()
                .map(|c| match c {
                    Column::Id => row.id.clone().unwrap_or_default(),
                    Column::Age => row.age.map(|a| a.to_string()).unwrap_or_default(),
                    Column::Sex => row.sex.map(|s| s.code().to_string()).unwrap_or_default(),
                    Column::Outcome => row.outcome.map(|o| o.code().to_string()).unwrap_or_default(),
                    Column::LabResult => row.lab_result.map(|l| l.code().to_string()).unwrap_or_default(),
                    Column::Symptom(_) => {
                        let v = if row.symptoms[symptom] { "1" } else { "0" };
                        symptom += 1;
                        v.to_string()
                    }
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Parses patient CSV text (header required, LF or CRLF line endings).
pub fn parse_patient_csv(text: &str) -> Result<PatientTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        None => return Err(Error::Schema("empty input: header row required".into())),
        Some(rec) => rec.map_err(|e| csv_error(e, "<header>"))?,
    };
    let columns: Vec<Column> = header.iter().map(Column::from_header).collect();
    let mut table = PatientTable::new(columns.clone())?;

    for rec in records {
        let rec = rec.map_err(|e| csv_error(e, "<record>"))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let mut record = PatientRecord::default();
        for (col, cell) in columns.iter().zip(rec.iter()) {
            let err = |message: String| Error::Parse {
                row: line,
                column: col.name().to_string(),
                message,
            };
            match col {
                Column::Id => record.id = (!cell.is_empty()).then(|| cell.to_string()),
                Column::Age => {
                    let age = cell
                        .parse::<u32>()
                        .map_err(|_| err(format!("expected a non-negative integer age, found `{cell}`")))?;
                    record.age = Some(age);
                }
                Column::Sex => {
                    record.sex = Some(match cell {
                        "M" => Sex::Male,
                        "F" => Sex::Female,
                        _ => return Err(err(format!("expected `M` or `F`, found `{cell}`"))),
                    })
                }
                Column::Outcome => {
                    record.outcome = Some(match cell {
                        "recovered" => Outcome::Recovered,
                        "deceased" => Outcome::Deceased,
                        _ => return Err(err(format!("expected `recovered` or `deceased`, found `{cell}`"))),
                    })
                }
                Column::LabResult => {
                    record.lab_result = match cell {
                        "" => None,
                        "pos" => Some(LabResult::Positive),
                        "neg" => Some(LabResult::Negative),
                        _ => return Err(err(format!("expected `pos`, `neg` or blank, found `{cell}`"))),
                    }
                }
                Column::Symptom(_) => record.symptoms.push(match cell {
                    "0" => false,
                    "1" => true,
                    _ => return Err(err(format!("symptom flags must be 0 or 1, found `{cell}`"))),
                }),
            }
        }
        table.rows.push(record);
    }
    Ok(table)
}

fn csv_error(e: csv::Error, what: &str) -> Error {
    let row = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        row,
        column: what.to_string(),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohortSelector {
    All,
    Deceased,
    Recovered,
    /// Ages in `[lo, hi)`.
    AgeRange {
        lo: u32,
        hi: u32,
    },
}

impl CohortSelector {
    pub fn age_range(lo: u32, hi: u32) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Config(format!("age range requires lo < hi, got {lo}..{hi}")));
        }
        Ok(CohortSelector::AgeRange { lo, hi })
    }

    fn required_column(self) -> Option<Column> {
        match self {
            CohortSelector::All => None,
            CohortSelector::Deceased | CohortSelector::Recovered => Some(Column::Outcome),
            CohortSelector::AgeRange { .. } => Some(Column::Age),
        }
    }

    fn matches(self, r: &PatientRecord) -> bool {
        match self {
            CohortSelector::All => true,
            CohortSelector::Deceased => r.outcome == Some(Outcome::Deceased),
            CohortSelector::Recovered => r.outcome == Some(Outcome::Recovered),
            CohortSelector::AgeRange { lo, hi } => r.age.is_some_and(|a| a >= lo && a < hi),
        }
    }
}

impl FromStr for CohortSelector {
    type Err = Error;

    /// `all`, `deceased`, `recovered` or `age:LO-HI` (half-open).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(CohortSelector::All),
            "deceased" => Ok(CohortSelector::Deceased),
            "recovered" => Ok(CohortSelector::Recovered),
            _ => {
                let bad = || Error::Config(format!("unrecognised cohort `{s}`"));
                let range = s.strip_prefix("age:").ok_or_else(bad)?;
                let (lo, hi) = range.split_once('-').ok_or_else(bad)?;
                let lo = lo.trim().parse().map_err(|_| bad())?;
                let hi = hi.trim().parse().map_err(|_| bad())?;
                CohortSelector::age_range(lo, hi)
            }
        }
    }
}

impl fmt::Display for CohortSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohortSelector::All => f.write_str("all"),
            CohortSelector::Deceased => f.write_str("deceased"),
            CohortSelector::Recovered => f.write_str("recovered"),
            CohortSelector::AgeRange { lo, hi } => write!(f, "age:{lo}-{hi}"),
        }
    }
}

/// Rows matching `sel`, in original order.
///
/// Selecting on a column the table does not have is a schema error rather
/// than a silently empty cohort.
pub fn filter_cohort(table: &PatientTable, sel: CohortSelector) -> Result<PatientTable> {
    if let Some(col) = sel.required_column() {
        if !table.has_column(&col) {
            return Err(Error::Schema(format!(
                "cohort `{sel}` requires a `{}` column",
                col.name()
            )));
        }
    }
    Ok(table.with_rows(table.rows.iter().filter(|r| sel.matches(r)).cloned().collect()))
}

/// Which demographic/outcome items to add to each transaction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DerivationConfig {
    pub age_buckets: bool,
    pub sex: bool,
    pub outcome: bool,
    pub lab: bool,
}

impl DerivationConfig {
    pub fn symptoms_only() -> Self {
        Self::default()
    }

    pub fn all() -> Self {
        DerivationConfig {
            age_buckets: true,
            sex: true,
            outcome: true,
            lab: true,
        }
    }

    /// Derived item names enabled by this config, in catalog order.
    pub fn item_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.age_buckets {
            names.extend(AgeBucket::ALL.iter().map(|b| b.item_name()));
        }
        if self.sex {
            names.extend([Sex::Male.item_name(), Sex::Female.item_name()]);
        }
        if self.outcome {
            names.extend([Outcome::Recovered.item_name(), Outcome::Deceased.item_name()]);
        }
        if self.lab {
            names.extend([LabResult::Positive.item_name(), LabResult::Negative.item_name()]);
        }
        names
    }
}

/// Symptom columns in CSV order, followed by the enabled derived items.
pub fn catalog_for(table: &PatientTable, cfg: &DerivationConfig) -> Result<ItemCatalog> {
    let mut catalog = ItemCatalog::from_names(table.symptom_names().iter().cloned())?;
    for name in cfg.item_names() {
        catalog.insert(name)?;
    }
    Ok(catalog)
}

/// Turns each patient into one transaction over `catalog`.
pub fn derive_items(table: &PatientTable, cfg: &DerivationConfig, catalog: &ItemCatalog) -> Result<TransactionSet> {
    let required = [
        (cfg.age_buckets, Column::Age),
        (cfg.sex, Column::Sex),
        (cfg.outcome, Column::Outcome),
        (cfg.lab, Column::LabResult),
    ];
    for (enabled, col) in required {
        if enabled && !table.has_column(&col) {
            return Err(Error::Schema(format!(
                "derivation needs a `{}` column, which the input does not have",
                col.name()
            )));
        }
    }

    let symptom_ids = table
        .symptom_names()
        .iter()
        .map(|n| catalog.id(n))
        .collect::<Result<Vec<_>>>()?;
    let derived = |name: &str| catalog.id(name);
    let bucket_ids = if cfg.age_buckets {
        AgeBucket::ALL
            .iter()
            .map(|b| derived(b.item_name()))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let sex_ids = if cfg.sex {
        Some((derived("Male")?, derived("Female")?))
    } else {
        None
    };
    let outcome_ids = if cfg.outcome {
        Some((derived("Recovery")?, derived("Death")?))
    } else {
        None
    };
    let lab_ids = if cfg.lab {
        Some((derived("Lab_Res_Pos")?, derived("Lab_Res_Neg")?))
    } else {
        None
    };

    let mut rows: Vec<Vec<ItemId>> = Vec::with_capacity(table.len());
    for r in table.rows() {
        let mut row: Vec<ItemId> = symptom_ids
            .iter()
            .zip(&r.symptoms)
            .filter(|(_, &present)| present)
            .map(|(&id, _)| id)
            .collect();
        if cfg.age_buckets {
            let age = r.age.ok_or_else(|| Error::Schema("record without age".into()))?;
            let pos = AgeBucket::ALL
                .iter()
                .position(|&b| b == AgeBucket::of(age))
                .expect("bucket");
            row.push(bucket_ids[pos]);
        }
        if let Some((male, female)) = sex_ids {
            match r.sex {
                Some(Sex::Male) => row.push(male),
                Some(Sex::Female) => row.push(female),
                None => return Err(Error::Schema("record without sex".into())),
            }
        }
        if let Some((recovery, death)) = outcome_ids {
            match r.outcome {
                Some(Outcome::Recovered) => row.push(recovery),
                Some(Outcome::Deceased) => row.push(death),
                None => return Err(Error::Schema("record without outcome".into())),
            }
        }
        if let Some((pos, neg)) = lab_ids {
            match r.lab_result {
                Some(LabResult::Positive) => row.push(pos),
                Some(LabResult::Negative) => row.push(neg),
                None => {}
            }
        }
        rows.push(row);
    }
    TransactionSet::from_rows(catalog.clone(), &rows)
}

/// Keeps transactions holding at least `min_count` of `clinical_items`.
///
/// Items outside `clinical_items` (demographics, outcomes) never count.
pub fn drop_sparse_patients(ts: &TransactionSet, clinical_items: &Itemset, min_count: usize) -> Result<TransactionSet> {
    if min_count < 1 {
        return Err(Error::Config("minimum clinical item count must be at least 1".into()));
    }
    let mut counts = vec![0usize; ts.n_transactions()];
    for id in clinical_items.iter() {
        let cover: &Cover = ts.cover(id)?;
        for t in cover.iter() {
            counts[t] += 1;
        }
    }
    let keep: Vec<usize> = (0..ts.n_transactions()).filter(|&t| counts[t] >= min_count).collect();
    ts.retain_transactions(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "id,age,sex,outcome,lab_result,fever,cough\n\
                          1,57,M,recovered,pos,1,0\n\
                          2,20,F,deceased,,1,1\n\
                          3,19,F,recovered,neg,0,0\n\
                          4,60,M,deceased,neg,0,1\n";

    #[test]
    fn parses_single_row() {
        let t = parse_patient_csv("age,sex,outcome,fever,cough\n57,M,recovered,1,0\n").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.symptom_names(), ["fever", "cough"]);
        let r = &t.rows()[0];
        assert_eq!(r.age, Some(57));
        assert_eq!(r.sex, Some(Sex::Male));
        assert_eq!(r.outcome, Some(Outcome::Recovered));
        assert_eq!(r.symptoms, vec![true, false]);
    }

    #[test]
    fn crlf_and_missing_trailing_newline() {
        let t = parse_patient_csv("age,fever\r\n30,1\r\n40,0").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.rows()[1].symptoms, vec![false]);
    }

    #[test]
    fn bad_symptom_cell_names_location() {
        let err =
            parse_patient_csv("age,sex,outcome,fever,cough\n57,M,recovered,1,0\n40,F,recovered,2,0\n").unwrap_err();
        match err {
            Error::Parse { row, column, .. } => {
                assert_eq!(row, 3);
                assert_eq!(column, "fever");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn blank_symptom_cell_is_an_error() {
        assert!(matches!(
            parse_patient_csv("fever,cough\n1,\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn duplicate_header_and_empty_input_are_schema_errors() {
        assert!(matches!(
            parse_patient_csv("age,fever,fever\n1,0,1\n"),
            Err(Error::Schema(_))
        ));
        assert!(matches!(parse_patient_csv(""), Err(Error::Schema(_))));
    }

    #[test]
    fn ragged_row_is_rejected() {
        assert!(matches!(
            parse_patient_csv("a,b\n1,0,1\n"),
            Err(Error::Parse { row: 2, .. })
        ));
    }

    #[test]
    fn csv_round_trip() {
        let t = parse_patient_csv(SAMPLE).unwrap();
        assert_eq!(parse_patient_csv(&t.to_csv()).unwrap(), t);
        assert_eq!(t.to_csv(), SAMPLE);
    }

    #[test]
    fn cohort_filters() {
        let t = parse_patient_csv(SAMPLE).unwrap();
        assert_eq!(filter_cohort(&t, CohortSelector::All).unwrap(), t);
        let dead = filter_cohort(&t, CohortSelector::Deceased).unwrap();
        assert_eq!(
            dead.rows().iter().map(|r| r.id.clone().unwrap()).collect::<Vec<_>>(),
            ["2", "4"]
        );
        let alive = filter_cohort(&t, CohortSelector::Recovered).unwrap();
        assert_eq!(dead.len() + alive.len(), t.len());
        let young = filter_cohort(&t, CohortSelector::age_range(20, 40).unwrap()).unwrap();
        assert_eq!(young.rows().iter().map(|r| r.age.unwrap()).collect::<Vec<_>>(), [20]);
    }

    #[test]
    fn cohort_on_missing_column_fails() {
        let t = parse_patient_csv("fever\n1\n").unwrap();
        assert!(filter_cohort(&t, CohortSelector::Deceased).is_err());
        assert!(CohortSelector::age_range(40, 40).is_err());
    }

    #[test]
    fn cohort_selector_parsing() {
        assert_eq!("deceased".parse::<CohortSelector>().unwrap(), CohortSelector::Deceased);
        assert_eq!(
            "age:20-40".parse::<CohortSelector>().unwrap(),
            CohortSelector::AgeRange { lo: 20, hi: 40 }
        );
        assert!("age:40-20".parse::<CohortSelector>().is_err());
        assert!("dead".parse::<CohortSelector>().is_err());
    }

    #[test]
    fn age_buckets_are_half_open() {
        assert_eq!(AgeBucket::of(19).item_name(), "<20");
        assert_eq!(AgeBucket::of(20).item_name(), "20-40");
        assert_eq!(AgeBucket::of(40).item_name(), "40-60");
        assert_eq!(AgeBucket::of(57).item_name(), "40-60");
        assert_eq!(AgeBucket::of(60).item_name(), ">60");
        // every age falls in exactly the bucket whose bounds contain it
        for age in 0..130 {
            let hits = AgeBucket::ALL
                .iter()
                .filter(|b| {
                    let (lo, hi) = b.bounds();
                    age >= lo && hi.is_none_or(|h| age < h)
                })
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn derived_items_per_patient() {
        let t = parse_patient_csv(SAMPLE).unwrap();
        let cfg = DerivationConfig::all();
        let cat = catalog_for(&t, &cfg).unwrap();
        let ts = derive_items(&t, &cfg, &cat).unwrap();
        let names = |i: usize| cat.render(&ts.row(i)).unwrap().join(",");
        assert_eq!(names(0), "fever,40-60,Male,Recovery,Lab_Res_Pos");
        assert_eq!(names(1), "fever,cough,20-40,Female,Death");
        assert_eq!(names(2), "<20,Female,Recovery,Lab_Res_Neg");
        assert_eq!(names(3), "cough,>60,Male,Death,Lab_Res_Neg");
        let death = cat.itemset(&["Death", "Recovery"]).unwrap();
        assert_eq!(ts.count_of(&death).unwrap(), 0);
    }

    #[test]
    fn derivation_needs_source_columns() {
        let t = parse_patient_csv("age,fever\n30,1\n").unwrap();
        let cfg = DerivationConfig {
            sex: true,
            ..Default::default()
        };
        let cat = catalog_for(&t, &cfg).unwrap();
        assert!(matches!(derive_items(&t, &cfg, &cat), Err(Error::Schema(_))));
    }

    #[test]
    fn derivation_needs_catalog_entries() {
        let t = parse_patient_csv("age,fever\n30,1\n").unwrap();
        let cat = ItemCatalog::from_names(["fever"]).unwrap();
        let cfg = DerivationConfig {
            age_buckets: true,
            ..Default::default()
        };
        assert!(matches!(derive_items(&t, &cfg, &cat), Err(Error::UnknownItemName(_))));
    }

    #[test]
    fn sparse_patients_are_dropped() {
        let ts = TransactionSet::from_named_rows(&[
            vec!["Fever"],
            vec!["Fever", "Cough"],
            vec!["Male", "20-40"],
            vec!["Cough", "Male"],
        ]);
        let clinical = ts.catalog().itemset(&["Fever", "Cough"]).unwrap();
        let kept = drop_sparse_patients(&ts, &clinical, 2).unwrap();
        assert_eq!(kept.n_transactions(), 1);
        assert_eq!(kept.catalog().render(&kept.row(0)).unwrap(), ["Fever", "Cough"]);
        let again = drop_sparse_patients(&kept, &clinical, 2).unwrap();
        assert_eq!(again, kept);
        assert!(matches!(drop_sparse_patients(&ts, &clinical, 0), Err(Error::Config(_))));
    }
}
