//! On-disk cache of expensive series, one text file per entry.
//!
//! The file name is the SHA-256 of the entry key, which covers the series
//! id, its parameters, the order and the crate version. The body is one
//! term per line, `q^e * coeff * A^a B^b C^c D^d` (with ` z^e` appended
//! when present), closed by a checksum line over everything above it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use qlab_core::algebra::{Param, ParamMonomial, QSeries};
use qlab_core::identities::{IdentityError, SeriesCache};
use sha2::{Digest, Sha256};

pub struct FsCache {
    dir: PathBuf,
    version: String,
}

fn sha256(s: &str) -> String {
    format!("{:x}", Sha256::digest(s.as_bytes()))
}

impl FsCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        Self::with_version(dir, env!("CARGO_PKG_VERSION"))
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FsCache {
            dir,
            version: version.to_string(),
        })
    }

    fn entry_key(&self, key: &str, order: usize) -> String {
        format!("{}|order={}|version={}", key, order, self.version)
    }

    pub fn path_for(&self, key: &str, order: usize) -> PathBuf {
        self.dir.join(format!("{}.series", sha256(&self.entry_key(key, order))))
    }

    pub fn load(&self, key: &str, order: usize) -> Option<QSeries> {
        let path = self.path_for(key, order);
        let text = fs::read_to_string(&path).ok()?;
        match parse(&text, &self.entry_key(key, order), order) {
            Ok(s) => Some(s),
            Err(why) => {
                log::warn!("discarding corrupt cache entry {}: {}", path.display(), why);
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn store(&self, key: &str, order: usize, s: &QSeries) -> std::io::Result<()> {
        let body = serialize(s, &self.entry_key(key, order));
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(body.as_bytes())?;
        tmp.persist(self.path_for(key, order)).map_err(|e| e.error)?;
        Ok(())
    }
}

impl SeriesCache for FsCache {
    fn get_or_compute(
        &self,
        key: &str,
        order: usize,
        compute: &dyn Fn() -> Result<QSeries, IdentityError>,
    ) -> Result<QSeries, IdentityError> {
        if let Some(s) = self.load(key, order) {
            log::debug!("cache hit {} order {}", key, order);
            return Ok(s);
        }
        let s = compute()?;
        if let Err(e) = self.store(key, order, &s) {
            log::warn!("could not write cache entry for {}: {}", key, e);
        }
        Ok(s)
    }
}

fn monomial_text(m: &ParamMonomial) -> String {
    let mut parts: Vec<String> = Param::ABCD.iter().map(|&p| format!("{}^{}", p.name(), m.exp(p))).collect();
    let z = m.exp(Param::Z);
    if z != 0 {
        parts.push(format!("z^{}", z));
    }
    parts.join(" ")
}

pub fn serialize(s: &QSeries, entry_key: &str) -> String {
    let mut out = format!("key {}\norder {}\n", entry_key, s.order());
    for (e, m, c) in s.terms() {
        out.push_str(&format!("q^{} * {} * {}\n", e, c, monomial_text(m)));
    }
    let sum = sha256(&out);
    out.push_str(&format!("sha256 {}\n", sum));
    out
}

fn parse_monomial(s: &str) -> Result<ParamMonomial, String> {
    let mut exps = [0i32; 5];
    for tok in s.split_whitespace() {
        let (name, e) = tok.split_once('^').ok_or_else(|| format!("bad factor {:?}", tok))?;
        let p = Param::from_name(name).ok_or_else(|| format!("bad parameter {:?}", name))?;
        exps[p.index()] = e.parse().map_err(|_| format!("bad exponent {:?}", tok))?;
    }
    Ok(ParamMonomial::new(exps))
}

pub fn parse(text: &str, entry_key: &str, order: usize) -> Result<QSeries, String> {
    let (body, tail) = text
        .trim_end_matches('\n')
        .rsplit_once('\n')
        .ok_or("truncated entry")?;
    let body = format!("{}\n", body);
    let sum = tail.strip_prefix("sha256 ").ok_or("missing checksum")?;
    if sha256(&body) != sum {
        return Err("checksum mismatch".into());
    }
    let mut lines = body.lines();
    if lines.next() != Some(&format!("key {}", entry_key)) {
        return Err("key mismatch".into());
    }
    if lines.next() != Some(&format!("order {}", order)) {
        return Err("order mismatch".into());
    }
    let mut s = QSeries::zero(order);
    for line in lines {
        let mut f = line.splitn(3, " * ");
        let (q, c, m) = match (f.next(), f.next(), f.next()) {
            (Some(q), Some(c), Some(m)) => (q, c, m),
            _ => return Err(format!("bad term line {:?}", line)),
        };
        let e: usize = q
            .strip_prefix("q^")
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| format!("bad q-power {:?}", q))?;
        if e > order {
            return Err(format!("term beyond order: {:?}", line));
        }
        let c: BigInt = c.parse().map_err(|_| format!("bad coefficient {:?}", c))?;
        s.coeff_mut(e).add_term(parse_monomial(m)?, c);
    }
    Ok(s)
}

pub fn default_dir(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os("QLAB_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlab_core::identities::compute_s;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FsCache::new(dir.path()).unwrap();
        let s = compute_s(2, 12).unwrap();
        let got = cache.get_or_compute("S/m=2", 12, &|| Ok(s.clone())).unwrap();
        assert_eq!(got, s);
        assert_eq!(cache.load("S/m=2", 12), Some(s.clone()));
        // a different order or version misses
        assert_eq!(cache.load("S/m=2", 11), None);
        let bumped = FsCache::with_version(dir.path(), "0.0.0-other").unwrap();
        assert_eq!(bumped.load("S/m=2", 12), None);
        // a flipped digit is caught by the checksum and recomputed
        let path = cache.path_for("S/m=2", 12);
        let text = fs::read_to_string(&path).unwrap().replacen("q^", "q^1", 1);
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load("S/m=2", 12), None);
        assert!(!path.exists());
    }

    #[test]
    fn z_terms_survive() {
        let m = ParamMonomial::new([1, 0, -2, 0, 3]);
        let s = QSeries::monomial(m, 2, 4);
        let text = serialize(&s, "k");
        assert!(text.contains("q^2 * 1 * A^1 B^0 C^-2 D^0 z^3"));
        assert_eq!(parse(&text, "k", 4).unwrap(), s);
    }
}
