//! CSV tables: one row per sweep value, one column per curve, then a flags column.
//!
//! Flags are written as `label:token` pairs joined by `;`, e.g. `gv:saturated;gv:floored`.

use std::io::{Read, Write};

use super::curve::{CurvePoint, RateCurve};
use super::format::format_g;
use crate::rate::{Flags, Rate};
use crate::{Error, Result};

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes curves that share the same grid.
pub fn write_csv<W: Write>(out: W, x_label: &str, curves: &[RateCurve]) -> Result<()> {
    let rows = curves.first().map_or(0, |c| c.points.len());
    if curves.iter().any(|c| c.points.len() != rows) {
        return Err(Error::InvalidSpec("curves have different lengths".into()));
    }
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header = vec![x_label.to_string()];
    header.extend(curves.iter().map(|c| c.label.clone()));
    header.push("flags".to_string());
    writer.write_record(&header).map_err(csv_error)?;
    for k in 0..rows {
        let mut record = vec![format_g(curves[0].points[k].x)];
        let mut flags = Vec::new();
        for c in curves {
            let p = &c.points[k];
            record.push(format_g(p.rate.value));
            flags.extend(
                p.rate
                    .flags
                    .iter()
                    .map(|f| format!("{}:{}", c.label, f.token())),
            );
        }
        record.push(flags.join(";"));
        writer.write_record(&record).map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a table written by [`write_csv`]; returns the x label and the curves.
pub fn read_csv<R: Read>(input: R) -> Result<(String, Vec<RateCurve>)> {
    let mut reader = csv::ReaderBuilder::new().from_reader(input);
    let header = reader.headers().map_err(csv_error)?.clone();
    if header.len() < 3 || &header[header.len() - 1] != "flags" {
        return Err(Error::InvalidSpec(
            "expected x, curve columns and flags".into(),
        ));
    }
    let labels: Vec<String> = header
        .iter()
        .skip(1)
        .take(header.len() - 2)
        .map(str::to_string)
        .collect();
    let mut curves: Vec<RateCurve> = labels
        .iter()
        .map(|l| RateCurve {
            label: l.clone(),
            points: Vec::new(),
        })
        .collect();
    let number = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::InvalidSpec(format!("not a number: `{s}`")))
    };
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let x = number(&record[0])?;
        let mut flags = vec![Flags::none(); labels.len()];
        for item in record[record.len() - 1]
            .split(';')
            .filter(|s| !s.is_empty())
        {
            let (label, token) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidSpec(format!("bad flag `{item}`")))?;
            let i = labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::InvalidSpec(format!("flag for unknown curve `{label}`")))?;
            flags[i].extend(&token.parse()?);
        }
        for (i, curve) in curves.iter_mut().enumerate() {
            curve.points.push(CurvePoint {
                x,
                rate: Rate {
                    value: number(&record[i + 1])?,
                    flags: flags[i].clone(),
                },
            });
        }
    }
    Ok((header[0].to_string(), curves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rate::Flag;

    fn sample() -> Vec<RateCurve> {
        let point = |x: f64, v: f64, flags: Flags| CurvePoint {
            x,
            rate: Rate { value: v, flags },
        };
        vec![
            RateCurve {
                label: "gv".into(),
                points: vec![
                    point(0.0, 1.0, Flags::none().with(Flag::Diagonal)),
                    point(0.25, 1.0 / 3.0, Flags::none()),
                    point(
                        0.5,
                        0.0,
                        Flags::none().with(Flag::Saturated).with(Flag::Floored),
                    ),
                ],
            },
            RateCurve {
                label: "lb".into(),
                points: vec![
                    point(0.0, 0.5849625007211562, Flags::none()),
                    point(0.25, 0.0, Flags::none().with(Flag::Boundary)),
                    point(0.5, 0.0, Flags::none().with(Flag::Boundary)),
                ],
            },
        ]
    }

    #[test]
    fn layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, "beta", &sample()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "beta,gv,lb,flags\n\
                        0,1,0.584962500721,gv:diagonal\n\
                        0.25,0.333333333333,0,lb:boundary\n\
                        0.5,0,0,gv:saturated;gv:floored;lb:boundary\n";
        assert_eq!(text, expected);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn round_trip() {
        let mut buf = Vec::new();
        write_csv(&mut buf, "beta", &sample()).unwrap();
        let (label, curves) = read_csv(buf.as_slice()).unwrap();
        assert_eq!(label, "beta");
        for (a, b) in curves.iter().zip(sample()) {
            assert_eq!(a.label, b.label);
            for (p, q) in a.points.iter().zip(&b.points) {
                assert_eq!(p.x, q.x);
                assert_eq!(format_g(p.rate.value), format_g(q.rate.value));
                assert_eq!(p.rate.flags, q.rate.flags);
            }
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_csv("beta,gv\n0,1\n".as_bytes()).is_err());
        assert!(read_csv("beta,gv,flags\n0,x,\n".as_bytes()).is_err());
        assert!(read_csv("beta,gv,flags\n0,1,sp:floored\n".as_bytes()).is_err());
        let mut ragged = sample();
        ragged[1].points.pop();
        assert!(write_csv(Vec::new(), "beta", &ragged).is_err());
    }
}
