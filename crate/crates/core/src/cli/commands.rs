use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{Format, Opts, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::analysis::{
    analysis_row, check_lower_bound, joint_densities, max_even_run, nonzero_density, odd_density,
    write_csv, Rational,
};
use crate::engines::{mod_values, parity_stream, PartitionParams};
use crate::error::{Error, Result};
use crate::period::{minimal_period, minimal_period_u64, verify_certificate, CertificateVerdict, PeriodCertificate};

/// Published odd densities of `p(n, k)` for k = 1..10.
const PUBLISHED_DENSITIES: [(u64, u64); 10] = [
    (1, 1),
    (1, 2),
    (5, 12),
    (11, 24),
    (1, 2),
    (29, 60),
    (23, 56),
    (1, 2),
    (27, 56),
    (1, 2),
];

pub fn reference_densities() -> Vec<Rational> {
    PUBLISHED_DENSITIES
        .iter()
        .map(|&(n, d)| Rational::new(n, d))
        .collect()
}

pub(super) fn parse_reference(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|t| t.parse()).collect()
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TableRow {
    k: u32,
    #[serde(rename = "L")]
    period: u64,
    odd_num: u64,
    odd_den: u64,
    reference: Option<Rational>,
    status: &'static str,
}

/// `table`: odd densities for `k = 1..=k_max`, compared with the published
/// row where it exists. Exit 2 on any mismatch.
pub fn cmd_table(opts: &Opts, out: &mut dyn Write) -> Result<i32> {
    let k_max = opts.k_max.or(opts.k).unwrap_or(10);
    if k_max == 0 {
        return Err(Error::InvalidParams("--k-max must be at least 1".into()));
    }
    let caps = opts.caps();
    let reference = match &opts.reference_table {
        Some(s) => parse_reference(s)?,
        None => reference_densities(),
    };

    let mut rows = Vec::new();
    for k in 1..=k_max {
        let density = odd_density(k, &caps)?;
        let expected = reference.get(k as usize - 1).copied();
        let status = match expected {
            Some(r) if r == density => "match",
            Some(_) => "MISMATCH",
            None => "beyond published table",
        };
        rows.push(TableRow {
            k,
            period: minimal_period_u64(k, 2)?,
            odd_num: density.numer(),
            odd_den: density.denom(),
            reference: expected,
            status,
        });
    }

    let format = opts.format.unwrap_or(Format::Text);
    let rendered = match format {
        Format::Text | Format::Raw => {
            let mut s = format!("{:>3}  {:>10}  {:>12}  {:>10}  status\n", "k", "L", "odd density", "published");
            for r in &rows {
                let d = Rational::new(r.odd_num, r.odd_den);
                let refd = r.reference.map_or("-".to_string(), |x| x.to_string());
                s += &format!("{:>3}  {:>10}  {:>12}  {:>10}  {}\n", r.k, r.period, d, refd, r.status);
            }
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                .expect("csv is utf-8")
        }
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    out.write_all(rendered.as_bytes())?;
    if let Some(dir) = &opts.out {
        ensure_dir(dir)?;
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "json",
            _ => "txt",
        };
        fs::write(dir.join(format!("table.{ext}")), &rendered)?;
    }

    Ok(if rows.iter().any(|r| r.status == "MISMATCH") {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}

/// `period`: minimal period with certificate; `--verify` re-loads and checks it.
pub fn cmd_period(opts: &Opts, out: &mut dyn Write) -> Result<i32> {
    let k = opts.require_k()?;
    let m = opts.modulus()?;
    let caps = opts.caps();
    let (period, cert) = minimal_period(k, m, &caps)?;

    let reloaded = match &opts.out {
        Some(dir) => {
            ensure_dir(dir)?;
            let path = dir.join(format!("period_k{k}_m{m}.json"));
            cert.write(&path)?;
            writeln!(out, "k={k} m={m} L={period} certificate={}", path.display())?;
            if opts.verify {
                Some(PeriodCertificate::read(&path)?)
            } else {
                None
            }
        }
        None => {
            let json = cert.to_json()?;
            writeln!(out, "{json}")?;
            if opts.verify {
                Some(PeriodCertificate::from_json(&json)?)
            } else {
                None
            }
        }
    };

    if let Some(c) = reloaded {
        match verify_certificate(&c, &caps)? {
            CertificateVerdict::Valid => writeln!(out, "verification: pass")?,
            CertificateVerdict::Invalid(why) => {
                writeln!(out, "verification: FAIL ({why})")?;
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

fn k_list(opts: &Opts) -> Result<Vec<u32>> {
    match (opts.k, opts.k_max) {
        (Some(k), None) => Ok(vec![k]),
        (lo, Some(hi)) => Ok((lo.unwrap_or(1)..=hi).collect()),
        (None, None) => Err(Error::InvalidParams("--k or --k-max is required".into())),
    }
}

#[derive(Debug, Serialize)]
struct DensityOutput {
    k: u32,
    m: u64,
    period: u64,
    /// "odd" for m = 2, otherwise "nonzero-residue (extra, not a parity statistic)".
    kind: &'static str,
    density: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    joint: Option<crate::analysis::DensityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower_bound: Option<crate::analysis::LowerBoundRecord>,
}

/// `density`: exact odd density per `k`, with joint densities and the lower
/// bound. For `m > 2` reports the nonzero-residue density instead.
pub fn cmd_density(opts: &Opts, out: &mut dyn Write) -> Result<i32> {
    let ks = k_list(opts)?;
    let m = opts.modulus()?;
    let caps = opts.caps();
    let format = opts.format.unwrap_or(Format::Text);

    if m == 2 && format == Format::Csv {
        let rows = ks.iter().map(|&k| analysis_row(k, &caps)).collect::<Result<Vec<_>>>()?;
        write_csv(&rows, &mut *out)?;
        return Ok(EXIT_OK);
    }

    let mut results = Vec::new();
    for &k in &ks {
        let r = if m == 2 {
            DensityOutput {
                k,
                m,
                period: minimal_period_u64(k, 2)?,
                kind: "odd",
                density: odd_density(k, &caps)?,
                joint: if k >= 2 { Some(joint_densities(k, &caps)?) } else { None },
                lower_bound: Some(check_lower_bound(k, &caps)?),
            }
        } else {
            DensityOutput {
                k,
                m,
                period: minimal_period_u64(k, m)?,
                kind: "nonzero-residue (extra, not a parity statistic)",
                density: nonzero_density(k, m, &caps)?,
                joint: None,
                lower_bound: None,
            }
        };
        results.push(r);
    }

    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&results)?)?,
        _ => {
            for r in &results {
                write!(out, "k={} m={} L={} {} density={}", r.k, r.m, r.period, r.kind, r.density)?;
                if let Some(j) = &r.joint {
                    write!(
                        out,
                        " joint(odd,odd)={} joint(even,odd)={} balanced={}",
                        j.joint.odd_odd, j.joint.even_odd, j.odd_column_balanced
                    )?;
                }
                if let Some(b) = &r.lower_bound {
                    write!(out, " bound={} bound_holds={}", b.bound, b.holds())?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// `runs`: longest run of even values per `k`. Exit 2 if the run length is
/// not `k(k+1)/2 - 1` at the end of the period.
pub fn cmd_runs(opts: &Opts, out: &mut dyn Write) -> Result<i32> {
    let ks = k_list(opts)?;
    let caps = opts.caps();
    let reports = ks.iter().map(|&k| max_even_run(k, &caps)).collect::<Result<Vec<_>>>()?;
    match opts.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        Format::Csv => {
            let rows = ks.iter().map(|&k| analysis_row(k, &caps)).collect::<Result<Vec<_>>>()?;
            write_csv(&rows, &mut *out)?;
        }
        _ => {
            for r in &reports {
                writeln!(
                    out,
                    "k={} L={} max_even_run={} expected={} starts={:?} at_period_end={}",
                    r.k, r.period, r.max_even_run, r.expected_max, r.run_starts, r.run_at_period_end
                )?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.holds()) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

#[derive(Debug, Serialize)]
struct StreamJson<'a> {
    k: u32,
    m: u64,
    start: u64,
    count: u64,
    order: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<&'a [u64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<&'a [u64]>,
    nonzero: u64,
}

const BIT_ORDER: &str = "value i is n = start + i; packed words hold 64 bits, least-significant bit = lowest n";

/// `stream`: parities (or residues with `--mod`) of `[start, start + count)`.
pub fn cmd_stream(opts: &Opts, out: &mut dyn Write) -> Result<i32> {
    let k = opts.require_k()?;
    let m = opts.modulus()?;
    let start = opts.start.unwrap_or(0);
    let count = opts
        .count
        .ok_or_else(|| Error::InvalidParams("--count is required".into()))?;
    let caps = opts.caps();
    let format = opts.format.unwrap_or(Format::Text);

    let mut buf: Vec<u8> = Vec::new();
    if m == 2 {
        let bits = parity_stream(k, start, count, &caps)?;
        let ones = bits.count_ones();
        match format {
            Format::Text => {
                writeln!(buf, "# p(n,{k}) mod 2, start={start} count={count}; {BIT_ORDER}")?;
                let line: String = bits.iter().map(|b| if b { '1' } else { '0' }).collect();
                writeln!(buf, "{line}")?;
                writeln!(buf, "# popcount={ones}")?;
            }
            Format::Csv => {
                writeln!(buf, "n,value")?;
                for (i, b) in bits.iter().enumerate() {
                    writeln!(buf, "{},{}", start + i as u64, b as u8)?;
                }
            }
            Format::Json => {
                let doc = StreamJson {
                    k,
                    m,
                    start,
                    count,
                    order: BIT_ORDER,
                    words: Some(bits.words()),
                    values: None,
                    nonzero: ones,
                };
                writeln!(buf, "{}", serde_json::to_string_pretty(&doc)?)?;
            }
            Format::Raw => {
                writeln!(
                    buf,
                    "pnk-raw k={k} start={start} count={count} words={} word_bits=64 byte_order=little bit_order=lsb-first",
                    bits.words().len()
                )?;
                for w in bits.words() {
                    buf.extend_from_slice(&w.to_le_bytes());
                }
            }
        }
    } else {
        let seq = mod_values(PartitionParams::new(k, m)?, start, count, &caps)?;
        let nonzero = seq.values().iter().filter(|&&v| v != 0).count() as u64;
        match format {
            Format::Text => {
                writeln!(buf, "# p(n,{k}) mod {m}, start={start} count={count}; value i is n = start + i")?;
                let line: Vec<String> = seq.values().iter().map(u64::to_string).collect();
                writeln!(buf, "{}", line.join(","))?;
                writeln!(buf, "# nonzero={nonzero}")?;
            }
            Format::Csv => {
                writeln!(buf, "n,value")?;
                for (i, v) in seq.values().iter().enumerate() {
                    writeln!(buf, "{},{v}", start + i as u64)?;
                }
            }
            Format::Json => {
                let doc = StreamJson {
                    k,
                    m,
                    start,
                    count,
                    order: "value i is n = start + i",
                    words: None,
                    values: Some(seq.values()),
                    nonzero,
                };
                writeln!(buf, "{}", serde_json::to_string_pretty(&doc)?)?;
            }
            Format::Raw => {
                return Err(Error::InvalidParams("raw format needs --mod 2".into()));
            }
        }
    }

    match &opts.out {
        Some(dir) => {
            ensure_dir(dir)?;
            let ext = match format {
                Format::Text => "txt",
                Format::Csv => "csv",
                Format::Json => "json",
                Format::Raw => "bin",
            };
            let path = dir.join(format!("stream_k{k}_m{m}.{ext}"));
            fs::write(&path, &buf)?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(&buf)?,
    }
    Ok(EXIT_OK)
}
