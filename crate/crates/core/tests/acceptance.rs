//! Runs every acceptance criterion and prints one line per criterion.
//!
//! The length-4 table as printed lists `s13 s24 s12 s13` twice and omits
//! `s13 s24 s12 s23`. Criterion 1 reports that as a failure; this driver
//! accepts exactly that failure and checks that the table matches the sphere
//! once the repeated entry is corrected. Any other failure fails the run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pj4::verify::{Criterion, Verifier, VerifyConfig, TABLE_LENGTH_4};

const DUPLICATE: &str = "s13 s24 s12 s13";
const OMITTED: &str = "s13 s24 s12 s23";
const TIME_LIMIT: Duration = Duration::from_secs(60);

fn known_table_defect(v: &Verifier, c: &Criterion) -> Result<(), String> {
    let failed: Vec<&String> = c.details.iter().filter(|d| d.starts_with("FAILED")).collect();
    let expected = [
        format!("FAILED: length-4 table: duplicated classes [\"{DUPLICATE} = {DUPLICATE}\"]"),
        format!("FAILED: length-4 table: sphere elements not listed [\"{OMITTED}\"]"),
    ];
    if failed.len() != 2 || failed.iter().zip(&expected).any(|(a, b)| *a != b) {
        return Err(format!("unexpected failures: {failed:?}"));
    }
    let mut corrected = TABLE_LENGTH_4.to_vec();
    let second = corrected.iter().rposition(|&e| e == DUPLICATE).ok_or("duplicate entry not in the table")?;
    corrected[second] = OMITTED;
    let sphere = v.rewriting().sphere(4).map_err(|e| e.to_string())?;
    let m = v.match_table(&corrected, &sphere).map_err(|e| e.to_string())?;
    if m.exact() {
        Ok(())
    } else {
        Err(format!("corrected table still differs: {m:?}"))
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let v = Verifier::new(VerifyConfig::default());
    let mut ok = true;
    for c in v.run_all() {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark}  {}", c.id, c.title);
        if c.passed {
            continue;
        }
        for d in c.details.iter().filter(|d| !d.starts_with("ok:")) {
            println!("    {d}");
        }
        if c.id == 1 {
            match known_table_defect(&v, &c) {
                Ok(()) => println!("    known defect in the printed length-4 table; corrected table matches exactly"),
                Err(e) => {
                    println!("    {e}");
                    ok = false;
                }
            }
        } else {
            ok = false;
        }
    }
    let elapsed = start.elapsed();
    println!("acceptance suite finished in {elapsed:.2?}");
    if elapsed > TIME_LIMIT {
        println!("over the {TIME_LIMIT:?} limit");
        ok = false;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
