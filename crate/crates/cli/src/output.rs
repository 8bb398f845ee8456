use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde_json::{Map, Value};

use crate::config::{Format, OutputArgs};
use crate::table::Table;

/// Everything one subcommand produces.
pub struct Product {
    pub main: Table,
    /// Secondary tables: CSV sidecar files, or named members of the JSON
    /// document.
    pub extras: Vec<(&'static str, Table)>,
    pub svg: Option<String>,
}

impl Product {
    pub fn new(main: Table) -> Self {
        Self {
            main,
            extras: Vec::new(),
            svg: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("columns".into(), serde_json::to_value(&self.main.columns).unwrap());
        doc.insert("rows".into(), serde_json::to_value(&self.main.rows).unwrap());
        for (name, t) in &self.extras {
            doc.insert((*name).into(), serde_json::to_value(t).unwrap());
        }
        Value::Object(doc)
    }
}

/// `dir/stem.csv` + `boundaries` -> `dir/stem.boundaries.csv`.
pub fn sidecar_path(out: &Path, name: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.{name}.csv"))
}

fn open(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn emit(args: &OutputArgs, product: Product) -> Result<()> {
    match args.format() {
        Format::Csv => {
            product.main.write_csv(open(&args.out)?)?;
            match &args.out {
                Some(out) => {
                    for (name, t) in &product.extras {
                        let path = sidecar_path(out, name);
                        t.write_csv(open(&Some(path))?)?;
                    }
                }
                None if !product.extras.is_empty() => {
                    let names: Vec<&str> = product.extras.iter().map(|e| e.0).collect();
                    eprintln!("note: {names:?} tables are written only with --out or --format json");
                }
                None => {}
            }
        }
        Format::Json => {
            let mut w = open(&args.out)?;
            serde_json::to_writer_pretty(&mut w, &product.to_json())?;
            writeln!(w)?;
            w.flush()?;
        }
        Format::Svg => {
            let Some(svg) = product.svg else {
                bail!("this subcommand has no SVG rendering for the given options");
            };
            let mut w = open(&args.out)?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}
