use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use sumrank::decoder::{Decoder, Engine};
use sumrank::quotient_rings::factor_cyclotomic;
use sumrank::srbch::{appendix_rows, table_row, SrBchCode, SrBchRecord, TableRow};
use sumrank::sum_rank::{min_sum_rank_distance_bruteforce, Extension, Partition};
use sumrank::{Elem, Tower};

use crate::args::{ConstructArgs, DecodeArgs, EncodeArgs, Metric, MindistArgs, Preset, TableArgs, TowerArgs};
use crate::error::{CliError, CliResult};

pub fn build_tower(a: &TowerArgs) -> CliResult<Tower> {
    let ell = match a.ell {
        Some(l) => l,
        None => {
            let q = (a.p as u128).checked_pow(a.e * a.s).ok_or_else(|| CliError::Usage("q is too large".into()))?;
            u64::try_from(q - 1).map_err(|_| CliError::Usage("q - 1 does not fit in 64 bits".into()))?
        }
    };
    Ok(Tower::new(a.p, a.e, a.m, a.s, ell)?)
}

fn is_appendix_shape(a: &TowerArgs) -> bool {
    a.p == 2 && a.e == 1 && a.m == 2 && (1..=7).contains(&a.s) && a.ell.is_none_or(|l| l == (1 << a.s) - 1)
}

pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

fn parse_elems(t: &Tower, items: &[String]) -> CliResult<Vec<Elem>> {
    items.iter().map(|s| Ok(t.parse(s.trim())?)).collect()
}

fn format_elems(t: &Tower, v: &[Elem]) -> Vec<String> {
    v.iter().map(|&x| t.format(x)).collect()
}

fn load_code(path: &Path) -> CliResult<SrBchCode> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let rec: SrBchRecord = serde_json::from_str(&text)?;
    Ok(SrBchCode::from_record(&rec)?)
}

#[derive(Serialize)]
struct TowerReport {
    description: String,
    p: u64,
    e: u32,
    m: u32,
    s: u32,
    ell: usize,
    q0: u128,
    q: u128,
    n: usize,
    field_size: u64,
    a: String,
    beta: String,
    cosets: Vec<Vec<usize>>,
}

pub fn tower(args: &TowerArgs) -> CliResult<String> {
    let t = build_tower(args)?;
    let a = t.primitive_root_of_unity();
    let fact = factor_cyclotomic(&t, a)?;
    let pr = t.params();
    let rep = TowerReport {
        description: t.describe(),
        p: pr.p,
        e: pr.e,
        m: pr.m,
        s: pr.s,
        ell: t.ell(),
        q0: pr.q0(),
        q: pr.q(),
        n: t.ell() * pr.m as usize,
        field_size: t.size(),
        a: t.format(a),
        beta: t.format(t.normal_element()),
        cosets: fact.cosets().to_vec(),
    };
    Ok(serde_json::to_string_pretty(&rep)? + "\n")
}

/// The `(δ, b)` rows a table invocation asks for.
pub fn table_rows(args: &TableArgs, t: &Tower) -> CliResult<Vec<(usize, usize)>> {
    let n = t.ell() * t.m() as usize;
    if args.preset == Some(Preset::Appendix) {
        if !is_appendix_shape(&args.tower) {
            return Err(CliError::Usage("the appendix preset needs p = 2, e = 1, m = 2, s in 1..=7, ell = 2^s - 1".into()));
        }
        if !args.delta.is_empty() || !args.b.is_empty() {
            return Err(CliError::Usage("--preset cannot be combined with --delta or --b".into()));
        }
        return Ok(appendix_rows(args.tower.s)?);
    }
    let bs = if args.b.is_empty() { vec![0, 1] } else { args.b.clone() };
    let deltas = if !args.delta.is_empty() {
        args.delta.clone()
    } else if is_appendix_shape(&args.tower) {
        return Ok(appendix_rows(args.tower.s)?.into_iter().filter(|(_, b)| bs.contains(b)).collect());
    } else {
        (2..=n).collect()
    };
    let mut rows: Vec<(usize, usize)> = deltas.iter().flat_map(|&d| bs.iter().map(move |&b| (d, b))).collect();
    rows.sort();
    rows.dedup();
    Ok(rows)
}

pub fn table(args: &TableArgs) -> CliResult<()> {
    let t = build_tower(&args.tower)?;
    let rows = table_rows(args, &t)?;
    let a = t.primitive_root_of_unity();
    sumrank::lrs::check_assumptions(&t, a, t.normal_element())?;
    let fact = factor_cyclotomic(&t, a)?;
    let beta = t.normal_element();
    let with_dim = !args.no_exact_dim;
    let out: Vec<TableRow> = rows
        .par_iter()
        .map(|&(d, b)| table_row(&t, &fact, beta, d, b, with_dim))
        .collect::<sumrank::Result<_>>()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &out {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io("<csv>", e.into_error()))?;
    emit(args.out.as_deref(), &String::from_utf8(bytes).expect("CSV is UTF-8"))
}

pub fn construct(args: &ConstructArgs) -> CliResult<()> {
    let t = Arc::new(build_tower(&args.tower)?);
    let code = SrBchCode::construct(t, args.b, args.delta)?;
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&code.to_record())? + "\n"))
}

pub fn encode(args: &EncodeArgs) -> CliResult<String> {
    let code = load_code(&args.code)?;
    let t = code.tower().clone();
    let msg = parse_elems(&t, &args.message)?;
    let c = code.encode(&msg)?;
    Ok(serde_json::json!({ "codeword": format_elems(&t, &c) }).to_string() + "\n")
}

pub fn decode(args: &DecodeArgs, budget: u128) -> CliResult<String> {
    let code = load_code(&args.code)?;
    let t = code.tower().clone();
    let y = parse_elems(&t, &args.received)?;
    let out = Decoder::with_budget(budget).decode(&code, &y)?;
    let engine = match out.engine {
        Engine::Parent => "parent",
        Engine::Subcode => "subcode",
        Engine::External => "external",
    };
    Ok(serde_json::json!({
        "codeword": format_elems(&t, &out.codeword),
        "message": format_elems(&t, &out.message),
        "error_weight": out.error_weight,
        "radius": Decoder::radius(&code),
        "engine": engine,
    })
    .to_string()
        + "\n")
}

pub fn mindist(args: &MindistArgs, budget: u128) -> CliResult<String> {
    let code = load_code(&args.code)?;
    let t = code.tower().clone();
    let ext = match args.metric {
        Metric::Inner => Extension::inner(&t),
        Metric::Outer => Extension { base: t.deg_q(), top: t.deg_f() },
    };
    let part = Partition::new(t.ell(), t.m() as usize);
    let d = min_sum_rank_distance_bruteforce(&t, code.generator_matrix(), part, ext, budget)?;
    Ok(serde_json::json!({
        "n": code.len(),
        "dim": code.exact_dim(),
        "delta": code.delta(),
        "metric": match args.metric { Metric::Inner => "inner", Metric::Outer => "outer" },
        "distance": d,
    })
    .to_string()
        + "\n")
}
