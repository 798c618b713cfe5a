use serde_json::{Map, Value};

/// `x` with 9 significant digits, trailing zeros dropped. Non-finite values
/// print as `inf`, `-inf` and `nan`.
pub fn sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        trim(format!("{:.*}", (8 - exp) as usize, x))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// JSON number rounded to 9 significant digits; non-finite values become
/// strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(sig9(x).parse::<f64>().expect("formatted float"))
    } else {
        Value::from(sig9(x))
    }
}

/// Rounds every float inside `v` to 9 significant digits.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_floats(v))).collect()),
        other => other,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => sig9(x),
            _ => n.to_string(),
        },
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let s = scalar_text(v);
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// Tabular part of a report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub key: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

/// Command output: ordered scalar fields and an optional table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub fields: Map<String, Value>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        fields.insert("command".into(), Value::from(command));
        Report { fields, table: None }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), round_floats(value.into()));
        self
    }

    pub fn real(&mut self, key: &str, x: f64) -> &mut Self {
        self.fields.insert(key.into(), num(x));
        self
    }

    pub fn json(&self) -> String {
        let mut obj = self.fields.clone();
        if let Some(t) = &self.table {
            let rows = t
                .rows
                .iter()
                .map(|row| {
                    let o: Map<String, Value> = t.columns.iter().cloned().zip(row.iter().cloned()).collect();
                    Value::Object(o)
                })
                .collect();
            obj.insert(t.key.into(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        let width = self.fields.keys().map(String::len).max().unwrap_or(0);
        let mut s = String::new();
        for (k, v) in &self.fields {
            s.push_str(&format!("{k:<width$}  {}\n", scalar_text(v)));
        }
        if let Some(t) = &self.table {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(scalar_text).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([t.columns[j].len()]).max().unwrap_or(0))
                .collect();
            s.push('\n');
            let line = |items: Vec<&str>| {
                let parts: Vec<String> = items.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            s.push_str(&line(t.columns.iter().map(String::as_str).collect()));
            for r in &cells {
                s.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
        s
    }

    /// The table when there is one, otherwise the scalar fields as a single row.
    pub fn csv(&self) -> String {
        let (header, rows): (Vec<String>, Vec<Vec<Value>>) = match &self.table {
            Some(t) => (t.columns.clone(), t.rows.clone()),
            None => (
                self.fields.keys().cloned().collect(),
                vec![self.fields.values().cloned().collect()],
            ),
        };
        let mut s = header.join(",");
        s.push('\n');
        for r in rows {
            s.push_str(&r.iter().map(csv_cell).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(1.007_741_964_324_332_3), "1.00774196");
        assert_eq!(sig9(2.0), "2");
        assert_eq!(sig9(1.25), "1.25");
        assert_eq!(sig9(-0.000_123_456_789_123), "-0.000123456789");
        assert_eq!(sig9(1.234_567_891_2e-7), "1.23456789e-7");
        assert_eq!(sig9(123_456_789_012.0), "1.23456789e11");
        assert_eq!(sig9(f64::NEG_INFINITY), "-inf");
        assert_eq!(sig9(0.0), "0");
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(num(1.007_741_964_324_332_3).to_string(), "1.00774196");
        assert_eq!(num(2.0).to_string(), "2.0");
        assert_eq!(num(f64::NAN), Value::from("nan"));
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut r = Report::new("x");
        r.put("note", "a,b");
        let want = format!("version,command,note\n{},x,\"a,b\"\n", env!("CARGO_PKG_VERSION"));
        assert_eq!(r.csv(), want);
    }
}
