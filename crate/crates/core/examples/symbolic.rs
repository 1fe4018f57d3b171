//! Determinants over Z[b, c] of the single-twist family and its smoothings.

use goeritz::families::{symbolic_goeritz, FormulaId, ResolutionSpec};
use goeritz::poly_det;

fn main() {
    for f in FormulaId::all().into_iter().filter(|f| f.fixes_a()) {
        let spec = ResolutionSpec::new(1, 1, 1, f.eps()).unwrap();
        let det = poly_det(&symbolic_goeritz(&spec).unwrap()).unwrap();
        let want = f.polynomial(1);
        let mark = if det == want { "equal" } else if det.eq_up_to_sign(&want) { "equal up to sign" } else { "DIFFERENT" };
        println!("{:<22} {det}\n{:<22} {want}  ({mark})", f.to_string(), "");
    }
}
