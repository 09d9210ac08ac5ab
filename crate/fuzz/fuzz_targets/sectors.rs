#![no_main]

use libfuzzer_sys::fuzz_target;
use rankshift_core::ingest::read::{read_sectors_csv, read_sectors_jsonl};

fuzz_target!(|data: &[u8]| {
    let _ = read_sectors_csv(data, "fuzz.csv");
    let _ = read_sectors_jsonl(data, "fuzz.jsonl");
});
