//! Field plumbing: building F_q with a deterministic modulus, extending it
//! to the tower F_{q^n}, and encoding a map f = (f_1, ..., f_n) as the
//! single polynomial g = f_1 e_1 + ... + f_n e_n over the tower. The
//! support of g equals the union of the component supports, so the map and
//! its encoding share one Newton polytope.

use vsbound::poly::{construct_g, default_varnames, format_poly, parse_vector};
use vsbound::{make_field, make_tower};

fn main() {
    let f4 = make_field(2, 2).expect("F_4");
    println!(
        "F_4 = F_2[t]/({}), elements: {:?}",
        modulus_text(f4.modulus()),
        f4.elements()
            .iter()
            .map(|a| f4.format_element(a))
            .collect::<Vec<_>>()
    );

    // Frobenius fixes every element: a^q = a.
    assert!(f4.elements().iter().all(|a| f4.pow(a, 4) == *a));
    println!("a^4 = a holds for all of F_4");

    // F_16 as a quadratic extension of F_4 with power basis {1, u}.
    let tower = make_tower(&f4, 2).expect("F_16 over F_4");
    let ext: Vec<String> = tower
        .ext_modulus()
        .iter()
        .map(|c| f4.format_element(c))
        .collect();
    println!("F_16 = F_4[u]/(u^2 + ({})u + ({}))", ext[1], ext[0]);
    assert_eq!(tower.order(), 16);
    assert!(tower.elements().iter().all(|a| tower.pow(a, 16) == *a));
    println!("a^16 = a holds for all of F_16");

    // Encode a self-map of F_4^2 over the tower.
    let f2 = make_field(2, 1).unwrap();
    let small_tower = make_tower(&f2, 2).unwrap();
    let vars = default_varnames(2);
    let f = parse_vector("x1; x1*x2", &f2, &vars).unwrap();
    let g = construct_g(&f, &small_tower).unwrap();
    println!("\nmap (x1, x1*x2) over F_2 encodes over F_4 with support:");
    for (mono, _) in g.terms() {
        println!("  exponent {:?}", mono.exponents());
    }
    assert_eq!(g.support(), f.support());
    println!("support(g) = support(f), as the basis is independent over F_2");

    let comp_text = format_poly(&f.components()[1], &f2, &vars);
    println!("second component prints canonically as: {comp_text}");
}

fn modulus_text(m: &[u64]) -> String {
    let mut parts = Vec::new();
    for (j, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        parts.push(match j {
            0 => format!("{c}"),
            1 => "t".to_string(),
            _ => format!("t^{j}"),
        });
    }
    parts.join(" + ")
}
