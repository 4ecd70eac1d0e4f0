//! The `sweep` subcommand: torsion data over a (p, k) grid of the twisted
//! torus family, fanned out to a bounded worker pool. Output order is
//! always p then k, independent of the number of jobs.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;
use upsilon_torsion::alexander::KnotSpec;
use upsilon_torsion::rational::fraction_string;
use upsilon_torsion::staircase::staircase_from_gaps;
use upsilon_torsion::upsilon::{extract_orders, upsilon_torsion};

#[derive(Serialize, Clone)]
pub struct SweepRow {
    pub p: u32,
    pub k: u32,
    pub ord: u64,
    pub ord_prime: String,
    pub breakpoints: usize,
}

pub fn parse_range(text: &str, field: &str) -> Result<(u32, u32), String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("{field}: expected the form a..b, got '{text}'"))?;
    let lo: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("{field}: '{a}' is not an integer"))?;
    let hi: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("{field}: '{b}' is not an integer"))?;
    if lo > hi {
        return Err(format!("{field}: empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn sweep_cell(p: u32, k: u32) -> Result<SweepRow, String> {
    let spec = KnotSpec::twisted(p, k).map_err(|e| e.to_string())?;
    let gaps = spec.gaps().map_err(|e| e.to_string())?;
    let u = upsilon_torsion(&staircase_from_gaps(&gaps)).map_err(|e| e.to_string())?;
    let orders = extract_orders(&u).map_err(|e| e.to_string())?;
    Ok(SweepRow {
        p,
        k,
        ord: orders.ord,
        ord_prime: fraction_string(&orders.ord_prime),
        breakpoints: u.breakpoints().len(),
    })
}

/// Runs every cell on at most `jobs` worker threads and returns the rows
/// in (p, k) order.
pub fn run(p_range: (u32, u32), k_range: (u32, u32), jobs: usize) -> Result<Vec<SweepRow>, String> {
    let cells: Vec<(u32, u32)> = (p_range.0..=p_range.1)
        .flat_map(|p| (k_range.0..=k_range.1).map(move |k| (p, k)))
        .collect();
    let jobs = jobs.max(1).min(cells.len().max(1));

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<SweepRow, String>>>> =
        Mutex::new(vec![None; cells.len()]);

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let (p, k) = cells[i];
                let row = sweep_cell(p, k);
                results.lock().expect("no poisoned workers")[i] = Some(row);
            });
        }
    });

    results
        .into_inner()
        .expect("workers joined")
        .into_iter()
        .map(|slot| slot.expect("every cell computed"))
        .collect()
}
