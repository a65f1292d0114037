#![no_main]

use libfuzzer_sys::fuzz_target;
use walkingtime::embedding::load_embeddings;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(e) = load_embeddings(text) {
        assert_eq!(e.values.len(), e.len() * e.dim);
        let back = load_embeddings(&e.to_text()).expect("written embeddings parse");
        assert_eq!(back, e);
    }
});
