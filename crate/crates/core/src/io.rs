//! File formats.
//!
//! | file | header |
//! |------|--------|
//! | sweep | `q,ell,ratio` (ratio with 17 significant digits) |
//! | decomposition | `r,j,orbit_id,period,winding`, one row per state |
//! | young | `q,part_index,scaled_part_num,scaled_part_den` |
//! | portrait | binary PGM `P5`, maxval 65535, big-endian samples |
//!
//! Text output always uses `.` as decimal separator and `\n` line endings.

use std::collections::BTreeMap;
use std::io::{BufRead, Read, Write};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::analytics::{PortraitMode, PortraitRaster, SweepResult, YoungDiagram};
use crate::error::{Error, Result};
use crate::lattice::LatticeState;
use crate::orbit::{EscapeRecord, LabeledDecomposition, Orbit};

/// Positional decimal with 17 significant digits, e.g. `0.42219627390466524`.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".into();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            format!("{}{}", digits, "0".repeat(int_len - digits.len()))
        } else {
            format!("{}.{}", &digits[..int_len], &digits[int_len..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    };
    if x < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

fn csv_writer<W: Write>(w: W, header: &[&str]) -> Result<csv::Writer<W>> {
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(header).map_err(csv_err)?;
    Ok(out)
}

fn csv_err(e: csv::Error) -> Error {
    Error::parse(e.to_string())
}

fn check_header<R: Read>(rdr: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers().map_err(csv_err)?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::parse(format!(
            "expected header {:?}, found {:?}",
            expected.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct SweepRow {
    q: u64,
    ell: u64,
    ratio: String,
}

pub fn write_sweep_csv<W: Write>(w: W, sweep: &SweepResult) -> Result<()> {
    let mut out = csv_writer(w, &["q", "ell", "ratio"])?;
    for rec in &sweep.records {
        out.serialize(SweepRow { q: rec.q, ell: rec.ell, ratio: format_sig17(rec.ratio_f64()) })
            .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// Parses a sweep file; the `ratio` column must agree with `ell / q^2`.
pub fn read_sweep_csv<R: Read>(r: R) -> Result<SweepResult> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &["q", "ell", "ratio"])?;
    let mut records = Vec::new();
    for row in rdr.deserialize::<SweepRow>() {
        let row = row.map_err(csv_err)?;
        if row.q == 0 {
            return Err(Error::parse("q must be positive"));
        }
        let rec = EscapeRecord::new(row.q, row.ell);
        let stated: f64 = row.ratio.parse().map_err(|_| Error::parse(format!("bad ratio '{}'", row.ratio)))?;
        if stated != rec.ratio_f64() {
            return Err(Error::parse(format!("q={}: ratio {} disagrees with ell/q^2", row.q, row.ratio)));
        }
        records.push(rec);
    }
    SweepResult::from_records(records).map_err(|e| Error::parse(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct StateRow {
    r: u64,
    j: u64,
    orbit_id: u32,
    period: u64,
    winding: i64,
}

/// One row per state, level-major.
pub fn write_decomposition_csv<W: Write>(w: W, labeled: &LabeledDecomposition) -> Result<()> {
    let d = &labeled.decomposition;
    let bq = d.params.bq();
    let mut out = csv_writer(w, &["r", "j", "orbit_id", "period", "winding"])?;
    for j in 0..d.params.q() {
        for r in 0..bq {
            let id = labeled.labels[(j * bq + r) as usize];
            let o = &d.orbits[id as usize];
            out.serialize(StateRow { r, j, orbit_id: id, period: o.period, winding: o.winding })
                .map_err(csv_err)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Orbits recovered from a decomposition file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionSummary {
    pub width: u64,
    pub height: u64,
    /// Sorted by representative.
    pub orbits: Vec<Orbit>,
}

pub fn read_decomposition_csv<R: Read>(r: R) -> Result<DecompositionSummary> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &["r", "j", "orbit_id", "period", "winding"])?;
    // id -> (min state, period, winding, member count)
    let mut by_id: BTreeMap<u32, (LatticeState, u64, i64, u64)> = BTreeMap::new();
    let (mut width, mut height) = (0u64, 0u64);
    let mut rows = 0u64;
    for row in rdr.deserialize::<StateRow>() {
        let row = row.map_err(csv_err)?;
        rows += 1;
        width = width.max(row.r + 1);
        height = height.max(row.j + 1);
        let s = LatticeState::new(row.r, row.j);
        let e = by_id.entry(row.orbit_id).or_insert((s, row.period, row.winding, 0));
        if e.1 != row.period || e.2 != row.winding {
            return Err(Error::parse(format!("orbit {} has inconsistent rows", row.orbit_id)));
        }
        e.0 = e.0.min(s);
        e.3 += 1;
    }
    if rows != width * height {
        return Err(Error::parse(format!("{rows} rows do not cover a {width}x{height} torus")));
    }
    let mut orbits = Vec::with_capacity(by_id.len());
    for (id, (representative, period, winding, count)) in by_id {
        if count != period {
            return Err(Error::parse(format!("orbit {id}: {count} states but period {period}")));
        }
        orbits.push(Orbit { representative, period, winding });
    }
    orbits.sort_by_key(|o| o.representative);
    Ok(DecompositionSummary { width, height, orbits })
}

#[derive(Serialize, Deserialize)]
struct YoungRow {
    q: u64,
    part_index: usize,
    scaled_part_num: u64,
    scaled_part_den: u64,
}

pub fn write_young_csv<W: Write>(w: W, diagram: &YoungDiagram) -> Result<()> {
    let mut out = csv_writer(w, &["q", "part_index", "scaled_part_num", "scaled_part_den"])?;
    for (i, part) in diagram.parts.iter().enumerate() {
        out.serialize(YoungRow {
            q: diagram.q,
            part_index: i,
            scaled_part_num: *part.numer(),
            scaled_part_den: *part.denom(),
        })
        .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

/// Parses a Young diagram file. The file does not record whether escaping
/// orbits were excluded, so the caller supplies it. A diagram with no parts
/// carries no `q` and cannot be read back.
pub fn read_young_csv<R: Read>(r: R, bounded_only: bool) -> Result<YoungDiagram> {
    let mut rdr = csv::Reader::from_reader(r);
    check_header(&mut rdr, &["q", "part_index", "scaled_part_num", "scaled_part_den"])?;
    let mut q = None;
    let mut parts = Vec::new();
    for row in rdr.deserialize::<YoungRow>() {
        let row = row.map_err(csv_err)?;
        if *q.get_or_insert(row.q) != row.q {
            return Err(Error::parse("mixed q values"));
        }
        if row.part_index != parts.len() || row.scaled_part_den == 0 {
            return Err(Error::parse(format!("bad part row {}", row.part_index)));
        }
        parts.push(Ratio::new(row.scaled_part_num, row.scaled_part_den));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::parse("parts are not descending"));
    }
    let q = q.ok_or_else(|| Error::parse("empty diagram"))?;
    Ok(YoungDiagram { q, parts, bounded_only })
}

pub fn write_pgm<W: Write>(mut w: W, img: &PortraitRaster) -> Result<()> {
    write!(w, "P5\n{} {}\n65535\n", img.width, img.height)?;
    let mut buf = Vec::with_capacity(img.pixels.len() * 2);
    for p in &img.pixels {
        buf.extend_from_slice(&p.to_be_bytes());
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

/// Reads a 16-bit `P5` file as written by [`write_pgm`]. The mode is not
/// stored in the file.
pub fn read_pgm<R: BufRead>(mut r: R, mode: PortraitMode) -> Result<PortraitRaster> {
    let mut header = Vec::new();
    let mut fields = Vec::new();
    while fields.len() < 4 {
        let mut line = String::new();
        if r.read_line(&mut line)? == 0 {
            return Err(Error::parse("truncated PGM header"));
        }
        header.push(line.clone());
        fields.extend(line.split_whitespace().map(str::to_owned));
    }
    if fields[0] != "P5" || fields[3] != "65535" {
        return Err(Error::parse(format!("unsupported PGM header {:?}", header.concat())));
    }
    let parse = |s: &str| s.parse::<u64>().map_err(|_| Error::parse(format!("bad PGM dimension '{s}'")));
    let (width, height) = (parse(&fields[1])?, parse(&fields[2])?);
    let mut raw = Vec::new();
    r.read_to_end(&mut raw)?;
    if raw.len() as u64 != width * height * 2 {
        return Err(Error::parse(format!("expected {} sample bytes, found {}", width * height * 2, raw.len())));
    }
    let pixels = raw.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect();
    Ok(PortraitRaster { width, height, mode, pixels })
}
