//! Direct gauge queries against a lattice polytope: the minimal dilation
//! factor k with v in k*P, solved as an exact rational linear program.
//! Also demonstrates the independent subset-enumeration oracle and the
//! CSV export of the generator table.

use vsbound::LatticePolytope;

fn main() {
    // Generators (1,0) and (3,1); the origin is always implicit.
    let p = LatticePolytope::new(2, vec![vec![1, 0], vec![3, 1]]).unwrap();

    println!("generators:\n{}", p.to_csv());
    for v in [[0u32, 0], [1, 0], [3, 1], [6, 2], [1, 1], [4, 1]] {
        println!("gauge({v:?}) = {}", p.gauge(&v).unwrap());
    }

    let mu = p.mu();
    println!(
        "\nmu = {} attained at {:?}",
        mu.mu,
        mu.witness.as_ref().unwrap()
    );
    println!("oracle agrees: {}", p.mu_oracle().unwrap() == mu.mu);

    // Homogeneity: scaling the query point scales the gauge.
    let g1 = p.gauge(&[3, 1]).unwrap();
    let g3 = p.gauge(&[9, 3]).unwrap();
    println!("gauge(3*(3,1)) = {} = 3 * {}", g3, g1);

    // A point outside the cone spanned by the generators has no dilation.
    let ray = LatticePolytope::new(2, vec![vec![1, 0]]).unwrap();
    println!(
        "\nsingle-ray polytope: gauge((1,1)) = {}",
        ray.gauge(&[1, 1]).unwrap()
    );
    println!(
        "and its mu = {} (no positive point is ever covered)",
        ray.mu().mu
    );
}
