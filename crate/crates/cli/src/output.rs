use std::io::Write;

use serde_json::{json, Value};

use descff::Error;

use crate::args::Common;

pub const SCHEMA: &str = "descff/1";

/// Wraps a command result with the schema tag and the run configuration.
pub fn document(command: &str, common: &Common, extra: Value) -> Value {
    let mut doc = json!({
        "schema": SCHEMA,
        "command": command,
        "config": {
            "p": common.p,
            "seed": common.seed,
            "tol": common.tol,
            "precision": format!("{:?}", common.precision).to_lowercase(),
        },
    });
    if let (Some(map), Value::Object(more)) = (doc.as_object_mut(), extra) {
        map.extend(more);
    }
    doc
}

pub fn emit(doc: &Value, common: &Common) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    let mut out = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error of the computation
    let _ = writeln!(out, "{text}");
    if let Some(path) = &common.json_out {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
