//! From a planar diagram code to faces, checkerboard shading and Tait graphs.

use goeritz::certify::link_det;
use goeritz::pd::{faces, parse_pd, to_tait, ColorChoice};

fn main() {
    let code = std::env::args().nth(1).unwrap_or_else(|| "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".to_string());
    let pd = parse_pd(&code).unwrap();
    println!("{pd}");
    for (i, f) in faces(&pd).unwrap().iter().enumerate() {
        let corners: Vec<String> = f.corners.iter().map(|c| format!("{}.{}", c.crossing, c.corner)).collect();
        println!("face {i}: {}", corners.join(" "));
    }
    for shade in [ColorChoice::ShadeA, ColorChoice::ShadeB] {
        let g = to_tait(&pd, shade).unwrap();
        println!("{shade:?}: {} det {}", g.to_json(), link_det(&g));
    }
}
