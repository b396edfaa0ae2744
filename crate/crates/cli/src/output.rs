use std::path::Path;

use hyperrank::numfmt::sig;

use crate::error::CliError;

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Quotes a CSV field when it holds a delimiter, quote or line break.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `node,score` rows, highest score first; equal scores keep input order.
pub fn scores_csv(labels: &[String], scores: &[f64]) -> String {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&i, &j| scores[j].total_cmp(&scores[i]));
    let mut out = String::from("node,score\n");
    for i in order {
        out.push_str(&csv_field(&labels[i]));
        out.push(',');
        out.push_str(&sig(scores[i], 12));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_quoted() {
        let labels = vec!["a".to_string(), "b,c".to_string(), "d".to_string()];
        let csv = scores_csv(&labels, &[0.25, 0.5, 0.25]);
        assert_eq!(csv, "node,score\n\"b,c\",0.5\na,0.25\nd,0.25\n");
    }
}
