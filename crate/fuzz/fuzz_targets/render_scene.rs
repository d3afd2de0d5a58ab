#![no_main]

use libfuzzer_sys::fuzz_target;
use miquel_cli::scene::parse_scene;
use miquel_cli::svg::{render_svg, FigureKind, RenderOptions};

// first byte picks the figure, the rest is the scene text
fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(scene) = parse_scene(text) else { return };
    let figure = FigureKind::ALL.get(pick as usize % (FigureKind::ALL.len() + 1)).copied();
    let svg = render_svg(&scene, &RenderOptions { figure, width: 800.0 });
    assert!(svg.ends_with("</svg>\n"));
});
