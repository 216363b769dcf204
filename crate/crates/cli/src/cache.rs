//! CSV cache of enumerated cubic fields with a JSON metadata sidecar.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sextic_core::{BinaryCubicForm, CubicFieldRecord, EnumerationRange, RamifiedPrime, Sign};

use crate::error::{CliError, Result};

pub const HEADER: &str = "a,b,c,d,disc_k,cyclic,ram_profile";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheMetadata {
    pub format_version: u32,
    pub sign: String,
    pub lower: u64,
    pub upper: u64,
    pub count: u64,
    pub sha256: String,
}

impl CacheMetadata {
    pub fn range(&self) -> Result<EnumerationRange> {
        let sign = crate::parse::parse_sign(&self.sign)?;
        Ok(EnumerationRange::new(sign, self.lower, self.upper)?)
    }
}

pub fn format_profile(ram: &[RamifiedPrime]) -> String {
    ram.iter()
        .map(|r| format!("{}:{}:{}", r.p, r.e, if r.total { 'T' } else { 'P' }))
        .collect::<Vec<_>>()
        .join(";")
}

fn fields(r: &CubicFieldRecord) -> [String; 7] {
    let [a, b, c, d] = r.form.coeffs();
    [
        a.to_string(),
        b.to_string(),
        c.to_string(),
        d.to_string(),
        r.disc.to_string(),
        u8::from(r.cyclic).to_string(),
        format_profile(&r.ramification),
    ]
}

/// One cache row, without the line terminator.
pub fn format_record(r: &CubicFieldRecord) -> String {
    fields(r).join(",")
}

/// Parses one row and checks every stored field against a recomputation from the form.
pub fn parse_record(cols: &csv::StringRecord) -> std::result::Result<CubicFieldRecord, String> {
    if cols.len() != 7 {
        return Err(format!("expected 7 columns, found {}", cols.len()));
    }
    let line = cols.iter().collect::<Vec<_>>().join(",");
    let int = |s: &str| s.parse::<i64>().map_err(|_| format!("not an integer: {s:?}"));
    let form = BinaryCubicForm::new(int(&cols[0])?, int(&cols[1])?, int(&cols[2])?, int(&cols[3])?);
    let record = CubicFieldRecord::from_form(&form).map_err(|e| format!("{line}: {e}"))?;
    if record.form != form {
        return Err(format!("{line}: form is not canonical"));
    }
    let stored_cyclic = match &cols[5] {
        "0" => false,
        "1" => true,
        other => return Err(format!("cyclic flag must be 0 or 1, found {other:?}")),
    };
    if record.disc != int(&cols[4])? || record.cyclic != stored_cyclic || format_profile(&record.ramification) != cols[6] {
        return Err(format!("{line}: stored invariants disagree with the form"));
    }
    Ok(record)
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut s = csv.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn partial_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".partial");
    PathBuf::from(s)
}

/// Conventional cache file name inside a cache directory.
pub fn cache_file_name(range: &EnumerationRange) -> String {
    format!("cubic-{}-{}-{}.csv", range.sign.as_str(), range.lower, range.upper)
}

/// Forwards bytes to a file while hashing them.
struct HashingFile {
    out: BufWriter<fs::File>,
    hasher: Sha256,
}

impl Write for HashingFile {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.out.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}

/// Incremental cache writer. Data goes to `<path>.partial` until [`CacheWriter::finish`]
/// renames it, so an interrupted run never leaves an unmarked file.
pub struct CacheWriter {
    path: PathBuf,
    partial: PathBuf,
    out: csv::Writer<HashingFile>,
    range: EnumerationRange,
    count: u64,
    last: Option<(u64, BinaryCubicForm)>,
}

impl CacheWriter {
    pub fn create(path: &Path, range: EnumerationRange) -> Result<Self> {
        let partial = partial_path(path);
        let file = fs::File::create(&partial).map_err(|e| CliError::io(&partial, e))?;
        let sink = HashingFile { out: BufWriter::new(file), hasher: Sha256::new() };
        let mut w = Self {
            path: path.to_path_buf(),
            partial,
            out: csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink),
            range,
            count: 0,
            last: None,
        };
        w.write(HEADER.split(','))?;
        Ok(w)
    }

    fn write<I: IntoIterator<Item = T>, T: AsRef<[u8]>>(&mut self, row: I) -> Result<()> {
        let partial = &self.partial;
        self.out.write_record(row).map_err(|e| CliError::io(partial, e.into()))
    }

    pub fn push(&mut self, r: &CubicFieldRecord) -> Result<()> {
        if !self.range.contains(r.disc as i128) || self.last.is_some_and(|k| k >= r.sort_key()) {
            return Err(CliError::Verify(format!("record out of range or order: {}", format_record(r))));
        }
        self.last = Some(r.sort_key());
        self.count += 1;
        self.write(fields(r))
    }

    pub fn finish(self) -> Result<CacheMetadata> {
        let partial = self.partial.clone();
        let mut sink = self.out.into_inner().map_err(|e| CliError::io(&partial, e.into_error()))?;
        sink.flush().map_err(|e| CliError::io(&partial, e))?;
        let meta = CacheMetadata {
            format_version: FORMAT_VERSION,
            sign: self.range.sign.as_str().to_string(),
            lower: self.range.lower,
            upper: self.range.upper,
            count: self.count,
            sha256: hex::encode(sink.hasher.finalize()),
        };
        drop(sink.out);
        let side = sidecar_path(&self.path);
        let side_partial = partial_path(&side);
        let json = serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n";
        fs::write(&side_partial, json).map_err(|e| CliError::io(&side_partial, e))?;
        fs::rename(&partial, &self.path).map_err(|e| CliError::io(&self.path, e))?;
        fs::rename(&side_partial, &side).map_err(|e| CliError::io(&side, e))?;
        Ok(meta)
    }
}

pub fn write_cache<'a>(
    path: &Path,
    range: EnumerationRange,
    records: impl IntoIterator<Item = &'a CubicFieldRecord>,
) -> Result<CacheMetadata> {
    let mut w = CacheWriter::create(path, range)?;
    for r in records {
        w.push(r)?;
    }
    w.finish()
}

pub fn read_metadata(csv: &Path) -> Result<CacheMetadata> {
    let side = sidecar_path(csv);
    let text = fs::read_to_string(&side).map_err(|e| CliError::io(&side, e))?;
    let meta: CacheMetadata =
        serde_json::from_str(&text).map_err(|e| CliError::Cache { path: side.clone(), reason: e.to_string() })?;
    if meta.format_version != FORMAT_VERSION {
        return Err(CliError::Cache { path: side, reason: format!("unsupported format version {}", meta.format_version) });
    }
    Ok(meta)
}

/// Reads and fully validates a cache: checksum, header, record invariants, order and count.
pub fn read_cache(csv: &Path) -> Result<(CacheMetadata, Vec<CubicFieldRecord>)> {
    let meta = read_metadata(csv)?;
    let bytes = fs::read(csv).map_err(|e| CliError::io(csv, e))?;
    let bad = |reason: String| CliError::Cache { path: csv.to_path_buf(), reason };
    if hex::encode(Sha256::digest(&bytes)) != meta.sha256 {
        return Err(bad("checksum mismatch".into()));
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(&bytes[..]);
    let header = reader.headers().map_err(|e| bad(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != HEADER {
        return Err(bad("unexpected header".into()));
    }
    let range = meta.range()?;
    let mut records: Vec<CubicFieldRecord> = Vec::with_capacity(meta.count as usize);
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let r = parse_record(&row).map_err(|e| bad(format!("row {}: {e}", i + 2)))?;
        if !range.contains(r.disc as i128) || records.last().is_some_and(|p| p.sort_key() >= r.sort_key()) {
            return Err(bad(format!("row {}: out of range or order", i + 2)));
        }
        records.push(r);
    }
    if records.len() as u64 != meta.count {
        return Err(bad(format!("sidecar count {} but {} rows", meta.count, records.len())));
    }
    Ok((meta, records))
}

/// The smallest cache in `dir` for `sign` starting at 0 and reaching at least `required`.
pub fn find_cache(dir: &Path, sign: Sign, required: u64) -> Result<Option<(PathBuf, CacheMetadata)>> {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(CliError::io(dir, e)),
    };
    let mut best: Option<(PathBuf, CacheMetadata)> = None;
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        if !name.ends_with(".csv") {
            continue;
        }
        let Ok(meta) = read_metadata(&path) else { continue };
        if meta.sign == sign.as_str() && meta.lower == 0 && meta.upper >= required
            && best.as_ref().is_none_or(|(p, m)| (m.upper, p) > (meta.upper, &path))
        {
            best = Some((path, meta));
        }
    }
    Ok(best)
}

/// The largest cache bound available in `dir` for `sign`.
pub fn largest_cache(dir: &Path, sign: Sign) -> Result<u64> {
    Ok(find_cache_all(dir, sign)?.into_iter().map(|m| m.upper).max().unwrap_or(0))
}

fn find_cache_all(dir: &Path, sign: Sign) -> Result<Vec<CacheMetadata>> {
    let Ok(entries) = fs::read_dir(dir) else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    for entry in entries.flatten() {
        let path = entry.path();
        if path.extension().is_some_and(|e| e == "csv") {
            if let Ok(meta) = read_metadata(&path) {
                if meta.sign == sign.as_str() && meta.lower == 0 {
                    out.push(meta);
                }
            }
        }
    }
    Ok(out)
}
