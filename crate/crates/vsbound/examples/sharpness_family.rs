//! The two sharp families.
//!
//! (x1, x1^a x2) over F_q attains the polytope bound exactly:
//! |V_f| = q^2 - (q-1) = q^2 - min{q, mu (q-1)} with mu = 1. The second
//! family, (x+1) x^(q-1) over F_{q^k}, is the classical extremal example
//! for the univariate degree bound; its often-printed cardinality formula
//! q^k - (q^k-1)/q is never an integer, so the brute-forced value is
//! recorded next to the formula and its floor.

use vsbound::poly::default_varnames;
use vsbound::valueset::{sharp_family, verify_bounds, SharpExpectation, SharpFamilyKind};
use vsbound::VerifyOptions;

fn main() {
    println!("polytope-sharp family (x1, x1^a x2):");
    println!(
        "{:>3} {:>3} {:>6} {:>6} {:>6}",
        "q", "a", "|V_f|", "bound", "sharp"
    );
    for q in [2u64, 3, 4, 5] {
        for a in [1u32, 2, 3] {
            let (f, spec, _) =
                sharp_family(&SharpFamilyKind::PolytopeSharp { q, a }, 1 << 20).unwrap();
            let report =
                verify_bounds(&f, &spec, &default_varnames(2), &VerifyOptions::default()).unwrap();
            println!(
                "{:>3} {:>3} {:>6} {:>6} {:>6}",
                q,
                a,
                report.vf_size.unwrap(),
                report.bound_polytope,
                report.flags.sharp.unwrap(),
            );
            assert_eq!(report.flags.sharp, Some(true));
        }
    }

    println!("\n(x+1) x^(q-1) family, brute force vs the printed formula:");
    println!(
        "{:>3} {:>3} {:>8} {:>12} {:>9}",
        "q", "k", "|V_f|", "formula", "integral"
    );
    for (q, k) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let (_, _, inst) = sharp_family(&SharpFamilyKind::CusickMuller { q, k }, 1 << 20).unwrap();
        let SharpExpectation::CusickMuller {
            vf_brute,
            printed_formula,
            printed_formula_integral,
            printed_formula_floor,
        } = inst.expectation
        else {
            unreachable!()
        };
        println!(
            "{:>3} {:>3} {:>8} {:>12} {:>9}",
            q,
            k,
            vf_brute,
            printed_formula.to_string(),
            printed_formula_integral
        );
        assert!(!printed_formula_integral);
        assert_eq!(vf_brute, printed_formula_floor);
    }
    println!("(the brute-forced cardinality matches the formula's floor each time)");
}
