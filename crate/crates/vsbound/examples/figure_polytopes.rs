//! The two headline polynomials side by side: both have total degree 4,
//! but their Newton polytopes tell them apart. For f = x1 + x1^3 x2 the
//! contraction by 2/4 contains no strictly positive lattice point, while
//! for h = x1^4 + x2^4 it already contains (1,1); so mu_h = 1/2 < mu_f = 1
//! and h gets the stronger value-set bound.
//!
//! Writes `figure_polytopes.svg` next to the current directory.

use num_bigint::BigInt;
use num_rational::BigRational;
use vsbound::poly::{default_varnames, parse_poly};
use vsbound::polytope::newton_polytope_of;
use vsbound::svg::{render, PolytopePanel};
use vsbound::{make_field, ExtRat};

fn main() {
    let f5 = make_field(5, 1).expect("F_5");
    let vars = default_varnames(2);

    let f = parse_poly("x1 + x1^3*x2", &f5, &vars).unwrap();
    let h = parse_poly("x1^4 + x2^4", &f5, &vars).unwrap();

    let pf = newton_polytope_of(&f).unwrap();
    let ph = newton_polytope_of(&h).unwrap();

    let mu_f = pf.mu();
    let mu_h = ph.mu();
    println!(
        "mu(x1 + x1^3*x2) = {}   witness {:?}",
        mu_f.mu,
        mu_f.witness.as_ref().unwrap()
    );
    println!(
        "mu(x1^4 + x2^4)  = {}   witness {:?}",
        mu_h.mu,
        mu_h.witness.as_ref().unwrap()
    );
    assert_eq!(mu_f.mu, ExtRat::from_int(1));
    assert_eq!(mu_h.mu, ExtRat::ratio(1, 2));

    // The interesting dilation is 2/4 = nvars / degree for both.
    let contraction = BigRational::new(BigInt::from(1), BigInt::from(2));
    println!(
        "(1/2) Delta(f) positive point? gauge_f((1,1)) = {} (> 1/2, so no)",
        pf.gauge(&[1, 1]).unwrap()
    );
    println!(
        "(1/2) Delta(h) positive point? gauge_h((1,1)) = {} (= 1/2, so yes)",
        ph.gauge(&[1, 1]).unwrap()
    );

    let panels = [
        PolytopePanel {
            title: "f = x1 + x1^3*x2".into(),
            polytope: pf,
            dilation: Some(contraction.clone()),
            dilation_label: Some("dilation 1/2".into()),
            witness: mu_f.witness,
        },
        PolytopePanel {
            title: "h = x1^4 + x2^4".into(),
            polytope: ph,
            dilation: Some(contraction),
            dilation_label: Some("dilation 1/2".into()),
            witness: mu_h.witness,
        },
    ];
    let svg = render(&panels).unwrap();
    std::fs::write("figure_polytopes.svg", &svg).unwrap();
    println!("wrote figure_polytopes.svg ({} bytes)", svg.len());
}
