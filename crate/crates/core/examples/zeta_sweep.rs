//! Coincidence probability after the spiral-phase-plate interferometer for a
//! few plate strengths, next to the infinite-aperture limit.

use biphoton::{delta_limit_oracle, MziGeometry, MziPhases, MziScheme, Source, SppParams};

fn main() -> biphoton::Result<()> {
    let scheme = MziScheme::prepare(&Source::default(), &MziGeometry::default())?;
    println!("{:>6} {:>10} {:>10} {:>10}", "zeta", "P_c", "limit", "throughput");
    for zeta in [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0] {
        let spp = SppParams::new(zeta);
        let r = scheme.evaluate(spp, MziPhases::default())?;
        let limit = delta_limit_oracle(spp, MziPhases::default())?;
        println!(
            "{zeta:>6} {:>10.5} {limit:>10.5} {:>10.4}",
            r.conditional_pc, r.throughput
        );
    }
    Ok(())
}
