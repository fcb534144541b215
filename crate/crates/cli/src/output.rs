use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use bec::SamplePair;
use serde::Serialize;

use crate::args::Format;

#[derive(Serialize)]
struct Record {
    x: f64,
    y: f64,
}

/// Opens `path`, or stdout when absent.
pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes records using the shortest decimal text that parses back to the same `f64`.
pub fn write_pairs<W: Write + ?Sized>(out: &mut W, pairs: &[SamplePair], format: Format) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "x,y")?;
            for p in pairs {
                writeln!(out, "{},{}", p.x, p.y)?;
            }
        }
        Format::Jsonl => {
            for p in pairs {
                serde_json::to_writer(&mut *out, &Record { x: p.x, y: p.y })?;
                writeln!(out)?;
            }
        }
    }
    out.flush()
}
