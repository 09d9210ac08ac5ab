#![no_main]

use libfuzzer_sys::fuzz_target;
use rankshift_core::ingest::read::{read_reconciliation_csv, read_reconciliation_jsonl};

// A map that parses must be idempotent: resolving a resolved name is a
// fixed point. Chains are rejected at insert time.
fn check(map: rankshift_core::ingest::ReconciliationMap, probes: &[&str]) {
    for probe in probes {
        let once = map.resolve(probe);
        assert_eq!(map.resolve(once), once);
    }
}

fuzz_target!(|data: &[u8]| {
    let probes: Vec<&str> = std::str::from_utf8(data)
        .map(|s| s.split([',', '\n']).take(16).collect())
        .unwrap_or_default();
    if let Ok(map) = read_reconciliation_csv(data, "fuzz.csv") {
        check(map, &probes);
    }
    if let Ok(map) = read_reconciliation_jsonl(data, "fuzz.jsonl") {
        check(map, &probes);
    }
});
