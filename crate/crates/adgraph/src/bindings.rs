use adgraph_core::Bindings;

use crate::error::CliError;

/// Parses `--at` values: comma-separated `name=value` pairs, possibly spread
/// over several occurrences of the flag.
pub fn parse_bindings<S: AsRef<str>>(specs: &[S]) -> Result<Bindings, CliError> {
    let mut bindings = Bindings::new();
    for pair in specs
        .iter()
        .flat_map(|s| s.as_ref().split(','))
        .map(str::trim)
        .filter(|p| !p.is_empty())
    {
        let invalid = || CliError::Binding(pair.to_string());
        let (name, value) = pair.split_once('=').ok_or_else(invalid)?;
        let name = name.trim();
        let value: f64 = value.trim().parse().map_err(|_| invalid())?;
        if name.is_empty() || !value.is_finite() {
            return Err(invalid());
        }
        if bindings.insert(name.to_string(), value).is_some() {
            return Err(CliError::DuplicateBinding(name.to_string()));
        }
    }
    Ok(bindings)
}
