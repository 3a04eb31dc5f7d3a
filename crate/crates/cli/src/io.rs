use std::io::{Read, Write};
use std::path::Path;

use crate::{CliError, CliResult};

fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

pub fn read_text(path: &Path) -> CliResult<String> {
    if is_stdio(path) {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::invalid(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult {
    let result = if is_stdio(path) {
        let mut out = std::io::stdout().lock();
        match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            // A closed downstream pipe (e.g. `| head`) is not an error.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other,
        }
    } else {
        std::fs::write(path, text)
    };
    result.map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}
