//! CSV and JSON serialization of sweep results.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::run::SweepResult;

pub const SCHEMA_VERSION: u32 = 1;

/// Column headers: `index`, every input key and output name with an `_SI`
/// suffix, then `error`.
pub fn header(result: &SweepResult) -> Vec<String> {
    let mut h = vec!["index".to_string()];
    h.extend(result.input_columns.iter().map(|c| format!("{c}_SI")));
    h.extend(result.output_columns.iter().map(|c| format!("{}_SI", c.name)));
    h.push("error".to_string());
    h
}

/// Twelve significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header(result))?;
    for row in &result.rows {
        let mut rec = vec![row.index.to_string()];
        rec.extend(row.inputs.iter().map(|v| format_number(*v)));
        rec.extend(row.outputs.iter().map(|v| v.map(format_number).unwrap_or_default()));
        rec.push(row.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

pub fn to_json(result: &SweepResult) -> Value {
    let cfg = &result.config;
    let mut params = Map::new();
    for k in cfg.scheme.keys() {
        params.insert(k.key.to_string(), number(cfg.params[k.key]));
    }
    let mut inputs = Map::new();
    inputs.insert("scheme".into(), json!(cfg.scheme.name()));
    inputs.insert("params".into(), Value::Object(params));
    if let Some(sw) = &cfg.sweep {
        inputs.insert(
            "sweep".into(),
            json!({
                "var": sw.var,
                "start": number(sw.start),
                "stop": number(sw.stop),
                "count": sw.count,
                "scale": sw.scale.name(),
            }),
        );
    }
    if let Some(se) = &cfg.series {
        let vals: Vec<Value> = se.values.iter().map(|v| number(*v)).collect();
        inputs.insert("series".into(), json!({ "var": se.var, "values": vals }));
    }
    let columns = header(result);
    let rows: Vec<Value> = result
        .rows
        .iter()
        .map(|row| {
            let mut vals = vec![json!(row.index)];
            vals.extend(row.inputs.iter().map(|v| number(*v)));
            vals.extend(row.outputs.iter().map(|v| v.map(number).unwrap_or(Value::Null)));
            vals.push(row.error.as_ref().map(|e| json!(e)).unwrap_or(Value::Null));
            Value::Object(columns.iter().cloned().zip(vals).collect())
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "inputs": inputs,
        "columns": columns,
        "rows": rows,
    })
}

pub fn write_json<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &to_json(result))?;
    out.write_all(b"\n")
}

/// Serializes in the requested format.
pub fn emit(result: &SweepResult, format: Format) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(result, &mut buf)?,
        Format::Json => write_json(result, &mut buf)?,
    }
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use crate::run::run;

    fn qsweep(count: usize) -> SweepResult {
        let cfg = parse_config(&format!(
            "scheme = qfactor\nosc.rho = 5110\nosc.r = 25e-6\nosc.nu_z = 10\n\
             sweep.var = osc.r\nsweep.start = 1e-6\nsweep.stop = 1e-4\nsweep.count = {count}\n"
        ))
        .unwrap();
        run(&cfg, Some(1)).unwrap()
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(183.4e-6), "1.83400000000e-4");
        assert_eq!(format_number(-2.0), "-2.00000000000e0");
    }

    #[test]
    fn three_rows_four_lines() {
        let text = String::from_utf8(emit(&qsweep(3), Format::Csv).unwrap()).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.ends_with('\n') && !text.contains('\r'));
        assert!(text.starts_with("index,osc.rho_SI,osc.r_SI,osc.nu_z_SI,gas.P_SI,gas.T_SI,gas.Mg_SI,q_SI,error\n"));
    }

    #[test]
    fn empty_result_is_header_only() {
        let mut res = qsweep(2);
        res.rows.clear();
        let text = String::from_utf8(emit(&res, Format::Csv).unwrap()).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn errors_are_quoted() {
        let mut res = qsweep(2);
        res.rows[0].error = Some("op: a, b \"c\"".into());
        let text = String::from_utf8(emit(&res, Format::Csv).unwrap()).unwrap();
        assert!(text.contains(",\"op: a, b \"\"c\"\"\"\n"));
    }

    #[test]
    fn json_shape() {
        let v = to_json(&qsweep(3));
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["inputs"]["scheme"], "qfactor");
        assert_eq!(v["inputs"]["sweep"]["count"], 3);
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
        assert_eq!(v["rows"][2]["osc.r_SI"], 1e-4);
        assert!(v["rows"][0]["error"].is_null());
        let keys: Vec<&String> = v["rows"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys.first().unwrap().as_str(), "index");
        assert_eq!(keys.last().unwrap().as_str(), "error");
    }
}
