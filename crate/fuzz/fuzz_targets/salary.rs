#![no_main]

use libfuzzer_sys::fuzz_target;
use rankshift_core::ingest::read::{read_salary_csv, read_salary_jsonl};

// A schedule that parses must only contain positive costs; that is the
// reader's contract, so it doubles as the fuzz oracle.
fuzz_target!(|data: &[u8]| {
    if let Ok(schedule) = read_salary_csv(data, "fuzz.csv") {
        assert!(schedule.iter().all(|(_, cost)| cost > 0.0));
    }
    if let Ok(schedule) = read_salary_jsonl(data, "fuzz.jsonl") {
        assert!(schedule.iter().all(|(_, cost)| cost > 0.0));
    }
});
