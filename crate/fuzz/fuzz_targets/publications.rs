#![no_main]

use libfuzzer_sys::fuzz_target;
use rankshift_core::ingest::read::{read_publications_csv, read_publications_jsonl};
use rankshift_core::ingest::ReconciliationMap;

// Both serializations of the publication list; parsing must never panic.
fuzz_target!(|data: &[u8]| {
    let mut map = ReconciliationMap::new();
    map.insert("Univ. A", "ua").unwrap();
    let _ = read_publications_csv(data, &map, "fuzz.csv");
    let _ = read_publications_jsonl(data, &map, "fuzz.jsonl");
});
