//! Run the shipped identity corpus, then check a few ad-hoc identities to
//! show the symbolic layer's API.

use faraday::algebra::{Signature, MINKOWSKI};
use faraday::symbolic::{
    parse_corpus, run_corpus, verify_identity, SymbolKind, SymbolTable, IDENTITY_CORPUS,
};

fn main() {
    // the corpus ships inside the crate; every stanza is exact
    let cases = parse_corpus(IDENTITY_CORPUS).expect("shipped corpus parses");
    let report = run_corpus(&cases);
    for o in &report.outcomes {
        println!(
            "{} {:40} Cl({},{})",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.sig.p(),
            o.sig.q()
        );
    }
    println!("{} / {} identities verified\n", report.passed(), report.outcomes.len());
    assert!(report.all_passed());

    // ad-hoc identities against the same engine: declare symbols, hand over
    // two expression strings, get an exact verdict
    let mut table = SymbolTable::default();
    table.declare("E", SymbolKind::Vector3).unwrap();
    table.declare("B", SymbolKind::Vector3).unwrap();
    let check = verify_identity(
        "(E + I B)**2",
        "<(E + I B)**2>_0 + <(E + I B)**2>_4",
        MINKOWSKI,
        &table,
    )
    .unwrap();
    println!("field square splits into scalar + pseudoscalar: {}", check.equal);
    println!("  canonical form: {}", check.lhs_canonical);
    assert!(check.equal);

    // a wrong identity reports exactly which blades disagree
    let wrong = verify_identity("g0 g1", "g1 g0", MINKOWSKI, &table).unwrap();
    println!("\ng0 g1 = g1 g0? {}", wrong.equal);
    for line in &wrong.mismatches {
        println!("  {line}");
    }

    // the split signature changes the verdicts: I^2 flips sign in Cl(2,2)
    let split = Signature::new(2, 2).unwrap();
    let empty = SymbolTable::default();
    let plus = verify_identity("I I", "1", split, &empty).unwrap();
    let minus = verify_identity("I I", "-1", MINKOWSKI, &empty).unwrap();
    println!("\nI^2 = +1 in Cl(2,2): {}, I^2 = -1 in Cl(1,3): {}", plus.equal, minus.equal);
}
