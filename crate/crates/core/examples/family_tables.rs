//! Graph determinants of resolved family members against the closed forms.

use goeritz::certify::family_det;
use goeritz::families::{closed_form, FormulaId, ResolutionSpec};

fn main() {
    let (b, c) = (2, 3);
    for a in 1..=3 {
        println!("a = {a}, b = {b}, c = {c}");
        for f in FormulaId::all().into_iter().filter(|f| !f.fixes_a() || a == 1) {
            let spec = ResolutionSpec::new(a, b, c, f.eps()).unwrap();
            let got = family_det(&spec).unwrap();
            let want = closed_form(f, a, b, c).unwrap();
            println!("  {:<20} {:<26} {got:>8} {want:>8} {}", f.to_string(), spec.to_string(), if got == want { "ok" } else { "MISMATCH" });
        }
    }
}
