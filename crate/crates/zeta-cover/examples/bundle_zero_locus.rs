//! Locate the twist angles where a unitary-bundle Laplacian loses
//! invertibility.  For a diagonal monodromy with phases φ_j the kernel
//! appears exactly at θ = −φ_j (mod 2π), one simple zero per phase.
//!
//! Run with:
//! ```bash
//! cargo run --release --example bundle_zero_locus
//! ```

use std::f64::consts::PI;

use zeta_cover::analysis::monodromy_zero_locus;
use zeta_cover::graph::{Monodromy, VoltageGraph};

fn main() {
    let g = VoltageGraph::new(1, vec![(0, 0, 1)]).unwrap();

    for phases in [vec![0.0, PI / 2.0], vec![0.4, 2.0, 5.0]] {
        let m = Monodromy::from_phases(&phases).unwrap();
        eprintln!("scanning the twist circle for a rank-{} bundle...", m.rank());
        let zeros = monodromy_zero_locus(&g, &m, 512).unwrap();
        println!("phases {phases:?}");
        println!("zero_index,theta,expected");
        let mut expected: Vec<f64> = phases
            .iter()
            .map(|&p| {
                let angle = (-p).rem_euclid(2.0 * PI);
                if angle == 0.0 {
                    0.0 // normalize the sign bit of -0.0
                } else {
                    angle
                }
            })
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, (z, e)) in zeros.iter().zip(&expected).enumerate() {
            println!("{i},{z:.12},{e:.12}");
            assert!((z - e).abs() < 1e-8, "zero off target");
        }
    }

    // Repeated monodromy eigenvalues merge kernel branches; the scan
    // refuses to certify a locus in that case.
    let repeated = Monodromy::identity(2);
    match monodromy_zero_locus(&g, &repeated, 512) {
        Err(e) => println!("# repeated phases are rejected: {e}"),
        Ok(_) => unreachable!("degenerate monodromy must be refused"),
    }
}
