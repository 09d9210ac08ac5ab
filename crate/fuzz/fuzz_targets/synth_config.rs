#![no_main]

use libfuzzer_sys::fuzz_target;
use rankshift_core::synth::{self, SynthConfig};

/// Caps the corpus a fuzzed config may describe so generation stays fast.
fn small_enough(c: &SynthConfig) -> bool {
    c.n_universities <= 3
        && c.n_udas <= 2
        && c.n_sds_per_uda <= 2
        && c.staff_per_cell.max <= 3
        && c.publications_per_scientist_year.max <= 2
        && c.organizations_per_publication.max <= 4
        && c.categories_per_publication.max <= 4
        && c.window.1.saturating_sub(c.window.0) <= 2
}

// Config parsing must never panic, and any accepted small config must
// generate a corpus that passes validation or fail with a typed error.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(config) = SynthConfig::from_toml_str(text) else {
        return;
    };
    if config.validate().is_ok() && small_enough(&config) {
        if let Ok(corpus) = synth::generate(&config) {
            corpus.require_valid().expect("generated corpus validates");
        }
    }
});
