use std::io::{Read, Write};

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::analysis::BoundsAtSpeed;

/// Fixed CSV header of `sweep`.
pub const SWEEP_HEADER: [&str; 12] = [
    "s",
    "ub_bsp",
    "ub_half_chord",
    "ub_fast_chord",
    "lb_fes",
    "lb_bes_original",
    "lb_bes_improved",
    "lb_bes_antipodal",
    "lb_overall",
    "ub_overall",
    "ratio",
    "best_strategy",
];

/// One sweep row. Values are rounded to six decimals so that emitting and
/// parsing is lossless; `None` marks a bound outside its domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub s: f64,
    pub ub_bsp: Option<f64>,
    pub ub_half_chord: Option<f64>,
    pub ub_fast_chord: Option<f64>,
    pub lb_fes: Option<f64>,
    pub lb_bes_original: Option<f64>,
    pub lb_bes_improved: Option<f64>,
    pub lb_bes_antipodal: Option<f64>,
    pub lb_overall: Option<f64>,
    pub ub_overall: Option<f64>,
    pub ratio: Option<f64>,
    pub best_strategy: String,
}

pub fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

impl From<&BoundsAtSpeed> for SweepRow {
    fn from(b: &BoundsAtSpeed) -> Self {
        SweepRow {
            s: round6(b.s),
            ub_bsp: b.ub_bsp.map(round6),
            ub_half_chord: Some(round6(b.ub_half_chord)),
            ub_fast_chord: b.ub_fast_chord.map(round6),
            lb_fes: Some(round6(b.lb_fes)),
            lb_bes_original: Some(round6(b.lb_bes_original)),
            lb_bes_improved: Some(round6(b.lb_bes_improved)),
            lb_bes_antipodal: b.lb_bes_antipodal.map(round6),
            lb_overall: Some(round6(b.lb_overall)),
            ub_overall: Some(round6(b.ub_overall)),
            ratio: Some(round6(b.ratio)),
            best_strategy: b.best_strategy.name().to_string(),
        }
    }
}

pub fn fmt6(v: f64) -> String {
    // avoid "-0.000000"
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.6}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt6).unwrap_or_default()
}

impl SweepRow {
    fn fields(&self) -> [String; 12] {
        [
            fmt6(self.s),
            fmt_opt(self.ub_bsp),
            fmt_opt(self.ub_half_chord),
            fmt_opt(self.ub_fast_chord),
            fmt_opt(self.lb_fes),
            fmt_opt(self.lb_bes_original),
            fmt_opt(self.lb_bes_improved),
            fmt_opt(self.lb_bes_antipodal),
            fmt_opt(self.lb_overall),
            fmt_opt(self.ub_overall),
            fmt_opt(self.ratio),
            self.best_strategy.clone(),
        ]
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<SweepRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// A number printed with exactly six decimals in JSON.
pub(crate) struct Fixed(pub Option<f64>);

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) if v.is_finite() => RawValue::from_string(fmt6(v))
                .map_err(serde::ser::Error::custom)?
                .serialize(serializer),
            _ => serializer.serialize_none(),
        }
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    s: Fixed,
    ub_bsp: Fixed,
    ub_half_chord: Fixed,
    ub_fast_chord: Fixed,
    lb_fes: Fixed,
    lb_bes_original: Fixed,
    lb_bes_improved: Fixed,
    lb_bes_antipodal: Fixed,
    lb_overall: Fixed,
    ub_overall: Fixed,
    ratio: Fixed,
    best_strategy: &'a str,
}

pub fn to_json(rows: &[SweepRow]) -> serde_json::Result<String> {
    let view: Vec<JsonRow> = rows
        .iter()
        .map(|r| JsonRow {
            s: Fixed(Some(r.s)),
            ub_bsp: Fixed(r.ub_bsp),
            ub_half_chord: Fixed(r.ub_half_chord),
            ub_fast_chord: Fixed(r.ub_fast_chord),
            lb_fes: Fixed(r.lb_fes),
            lb_bes_original: Fixed(r.lb_bes_original),
            lb_bes_improved: Fixed(r.lb_bes_improved),
            lb_bes_antipodal: Fixed(r.lb_bes_antipodal),
            lb_overall: Fixed(r.lb_overall),
            ub_overall: Fixed(r.ub_overall),
            ratio: Fixed(r.ratio),
            best_strategy: &r.best_strategy,
        })
        .collect();
    serde_json::to_string_pretty(&view)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<SweepRow> {
        vec![
            SweepRow {
                s: 1.0,
                ub_bsp: Some(4.826446),
                ub_half_chord: Some(7.283185),
                ub_fast_chord: Some(4.826446),
                lb_fes: Some(7.283185),
                lb_bes_original: Some(4.826446),
                lb_bes_improved: Some(4.826446),
                lb_bes_antipodal: None,
                lb_overall: Some(4.826446),
                ub_overall: Some(4.826446),
                ratio: Some(1.0),
                best_strategy: "BSP".into(),
            },
            SweepRow {
                s: 4.5,
                ub_bsp: None,
                ub_half_chord: Some(2.0),
                ub_fast_chord: None,
                lb_fes: Some(2.0),
                lb_bes_original: Some(1.5),
                lb_bes_improved: Some(1.75),
                lb_bes_antipodal: Some(1.98399),
                lb_overall: Some(1.98399),
                ub_overall: Some(2.0),
                ratio: Some(1.008069),
                best_strategy: "Half-Chord".into(),
            },
        ]
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&SWEEP_HEADER.join(",")));
        assert!(text.contains("4.500000,,2.000000,,"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), sample());
    }

    #[test]
    fn json_has_six_decimals() {
        let json = to_json(&sample()).unwrap();
        assert!(json.contains("\"ratio\": 1.000000"));
        assert!(json.contains("\"ub_bsp\": null"));
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[1]["best_strategy"], "Half-Chord");
    }

    #[test]
    fn rounding_is_lossless() {
        for v in [2.163_223_4, 4.826_445_909, 1.0 / 3.0, 7.28] {
            let r = round6(v);
            assert_eq!(fmt6(r).parse::<f64>().unwrap(), r);
        }
        assert_eq!(fmt6(-0.0), "0.000000");
    }
}
