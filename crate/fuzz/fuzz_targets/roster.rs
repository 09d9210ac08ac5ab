#![no_main]

use libfuzzer_sys::fuzz_target;
use rankshift_core::ingest::read::{read_roster_csv, read_roster_jsonl};
use rankshift_core::model::{Sds, SectorRegistry, Uda};

fn registry() -> SectorRegistry {
    let mut r = SectorRegistry::new();
    r.add_uda(Uda {
        id: "d01".to_string(),
        name: "Area".to_string(),
    });
    r.add_sds(Sds {
        id: "s01".to_string(),
        name: "Sector".to_string(),
        uda: "d01".to_string(),
    });
    r
}

// Roster rows are checked against a registry while parsing; no input may
// panic, whatever the sector references look like.
fuzz_target!(|data: &[u8]| {
    let reg = registry();
    let _ = read_roster_csv(data, &reg, "fuzz.csv");
    let _ = read_roster_jsonl(data, &reg, "fuzz.jsonl");
});
