#![no_main]

use libfuzzer_sys::fuzz_target;
use miquel_cli::report::construct;
use miquel_cli::scene::parse_scene;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(scene) = parse_scene(text) {
        let _ = construct(&scene);
    }
});
