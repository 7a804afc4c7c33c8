use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::report::{render_report, Format, RunReport};

/// Creates `out/run-<unix seconds>`, with a numeric suffix when that
/// directory already exists.
pub fn run_dir(out: &Path) -> io::Result<PathBuf> {
    fs::create_dir_all(out)?;
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    for n in 0.. {
        let name = if n == 0 { format!("run-{secs}") } else { format!("run-{secs}-{n}") };
        let dir = out.join(name);
        match fs::create_dir(&dir) {
            Ok(()) => return Ok(dir),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial report.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(bytes)?;
    f.sync_all()?;
    fs::rename(tmp, path)
}

/// Saves `<name>.json`, which carries every witness and certificate, and
/// `<name>.md` next to it.
pub fn save_report(dir: &Path, report: &RunReport) -> io::Result<()> {
    let name = &report.experiment.name;
    write_atomic(&dir.join(format!("{name}.json")), render_report(report, Format::Json).as_bytes())?;
    write_atomic(&dir.join(format!("{name}.md")), render_report(report, Format::Markdown).as_bytes())
}

/// Reads every `*.json` report in a directory, or a single report file.
pub fn load_reports(path: &Path) -> io::Result<Vec<RunReport>> {
    let mut files = if path.is_dir() {
        fs::read_dir(path)?
            .map(|e| e.map(|e| e.path()))
            .collect::<io::Result<Vec<_>>>()?
            .into_iter()
            .filter(|p| p.extension().is_some_and(|x| x == "json") && p.file_name().is_some_and(|n| n != "timing.json"))
            .collect()
    } else {
        vec![path.to_path_buf()]
    };
    files.sort();
    files
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {e}", p.display())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_dirs_are_distinct() {
        let base = std::env::temp_dir().join(format!("lightchaos-persist-{}", std::process::id()));
        let a = run_dir(&base).unwrap();
        let b = run_dir(&base).unwrap();
        assert_ne!(a, b);
        write_atomic(&a.join("x.json"), b"{}").unwrap();
        assert_eq!(fs::read_to_string(a.join("x.json")).unwrap(), "{}");
        assert!(!a.join("x.tmp").exists());
        fs::remove_dir_all(base).unwrap();
    }
}
