//! r-characters: evaluation, the permutation expansion and the orthogonality
//! relations.

use weak_moonshine::frobenius::{self, Tuple};
use weak_moonshine::CharacterTable;

fn main() -> weak_moonshine::Result<()> {
    let d4 = CharacterTable::bundled("D4")?;
    let g = d4.group();

    for text in ["s,s", "s,r2s", "r,r3", "r,r,r2"] {
        let t = Tuple::parse(g, text)?;
        let recursive = frobenius::r_char_recursive(&d4, 4, t.entries());
        let expanded = frobenius::r_char_cycle_formula(&d4, 4, t.entries())?;
        println!("chi5^({})({text}) = {recursive} (permutation expansion {expanded})", t.width());
    }

    // sum over G^r of chi_i^(r) conj(chi_j^(r)) against the closed form
    for r in 1..=3 {
        let lhs = frobenius::orthogonality_sum(&d4, 4, 4, r)?;
        let rhs = frobenius::orthogonality_constant(8, 2, r, true);
        println!("r={r}: <chi5, chi5> = {lhs}, closed form {rhs}");
    }

    let report = frobenius::verify_orthogonality(&d4, 3)?;
    println!("{}: {} sums, passed {}", report.identity, report.checked, report.passed());
    for report in frobenius::verify_lemmas(&d4, 3)? {
        println!("{}: {} instances, passed {}", report.identity, report.checked, report.passed());
    }
    Ok(())
}
