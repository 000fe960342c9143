use artin3_core::Result;
use serde_json::Value;

/// Pretty JSON followed by a newline. Keys keep insertion order, so parsing
/// the output and printing it again reproduces it byte for byte.
pub fn json(value: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Re-emits JSON text produced by the library in the same pretty form.
pub fn reformat(text: &str) -> Result<String> {
    json(&serde_json::from_str(text)?)
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}
