//! Plain-text rendering of reports. Rows keep the library's canonical order;
//! nested payloads are left to the JSON format.

use serde_json::Value;

use tworep::schema::Report;

fn cell(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("{{{}}}", items.iter().filter_map(cell).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(Value::is_array) => {
            Some(items.iter().filter_map(cell).collect::<Vec<_>>().join(" "))
        }
        Value::Object(map) if map.values().all(Value::is_boolean) => Some(
            map.iter()
                .filter(|(_, v)| v.as_bool() == Some(true))
                .map(|(k, _)| k.as_str())
                .collect::<Vec<_>>()
                .join(","),
        ),
        _ => None,
    }
}

fn rows_table(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for (k, v) in map {
                if cell(v).is_some() && !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|c| row.get(c).and_then(cell).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| body.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(&columns)];
    out.push(line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    out.extend(body.iter().map(|r| line(r)));
    out.join("\n") + "\n"
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let verb = report.command.get("verb").and_then(Value::as_str).unwrap_or("?");
    out += &format!("{verb}: {}\n", if report.ok { "ok" } else { "FAILED" });
    if let Value::Object(map) = &report.results {
        for (k, v) in map {
            if k == "rows" {
                continue;
            }
            if let Some(c) = cell(v) {
                out += &format!("{k}: {c}\n");
            }
        }
        if let Some(Value::Array(rows)) = map.get("rows") {
            // Sub-reports from `run` render recursively.
            if rows.iter().all(|r| r.get("schema").is_some()) && !rows.is_empty() {
                for r in rows {
                    if let Ok(sub) = serde_json::from_value::<Report>(r.clone()) {
                        out += "\n";
                        out += &render(&sub);
                    }
                }
            } else if !rows.is_empty() {
                out += "\n";
                out += &rows_table(rows);
            }
        }
    }
    if let Some(ms) = report.timing_ms {
        out += &format!("time: {ms:.1} ms\n");
    }
    out
}
