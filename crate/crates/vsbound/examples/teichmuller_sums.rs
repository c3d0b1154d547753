//! Teichmueller lifts and the power-sum invariant U. The lift of a is the
//! unique root-of-unity-or-zero representative over a, obtained by
//! iterating the Q-power map; summing k-th powers of lifted values over
//! all points gives S_k, and U is the first k where S_k survives modulo
//! p^(1 + v_p(k)).

use vsbound::padic::{charsum_oracle, compute_u_traced, power_sum, WittRing};
use vsbound::poly::{construct_g, default_varnames, parse_vector};
use vsbound::ring::Ring;
use vsbound::{make_field, make_tower};

fn main() {
    // Lifts of F_3 into Z/9: {0, 1, 8}; 8 is the lift of 2 since 8^3 = 8 mod 9.
    let f3 = make_field(3, 1).unwrap();
    let ring = WittRing::lift_field(&f3, 2);
    print!("lifts of F_3 in Z/9:");
    for a in f3.elements() {
        print!(" {:?}", ring.teichmuller_base(&a).coeffs()[0]);
    }
    println!();

    // Monomial power sums collapse to the closed form 0 / q-1 / q.
    let tower1 = make_tower(&f3, 1).unwrap();
    let vars1 = default_varnames(1);
    let x = parse_vector("x1", &f3, &vars1).unwrap();
    let g = construct_g(&x, &tower1).unwrap();
    for k in 1..=4u64 {
        let s = power_sum(&g, &tower1, k, 1 << 20).unwrap();
        println!(
            "S_{k}(x) over L_3 = {:?} mod {}  (closed form: {})",
            s.value.coeffs()[0],
            s.ring.coeff_modulus(),
            charsum_oracle(3, k) % s.ring.coeff_modulus(),
        );
    }

    // U of a two-variable map, with the full scan trace.
    let f3v = default_varnames(2);
    let f = parse_vector("x1; x1^2*x2", &f3, &f3v).unwrap();
    let tower = make_tower(&f3, 2).unwrap();
    let mut trace = Vec::new();
    let result = compute_u_traced(&f, &tower, 512, Some(&mut trace)).unwrap();
    println!("\nscanning (x1, x1^2*x2) over F_3:");
    for record in &trace {
        println!(
            "  k = {}: S_k = {:?} mod 3^{}  -> {}",
            record.k,
            record.s_coeffs,
            record.precision,
            if record.nonzero {
                "nonzero, stop"
            } else {
                "vanishes"
            }
        );
    }
    println!(
        "U = {} (so |V_f| <= 9 - {} = {})",
        result.u,
        result.u,
        9 - result.u
    );

    // Sanity: the lift really is fixed by the Q-power map.
    let lift = ring.teichmuller_base(&f3.from_u64(2));
    assert_eq!(ring.pow(&lift, 3), lift);
}
