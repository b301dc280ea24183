// Canonical cones: closed-form directions, Jordan values, the hypothesis
// check on sampled extremal sections, and products.
//
// ```text
// cargo run --example cone_zoo
// ```

use circumcone::zoo::{self, ConeDescriptor};
use circumcone::Error;

pub fn run() -> circumcone::Result<()> {
    let cones = [
        ConeDescriptor::Orthant(4),
        ConeDescriptor::Soc(5),
        ConeDescriptor::Psd(3),
        ConeDescriptor::Dnn(3),
        ConeDescriptor::Product(vec![ConeDescriptor::Orthant(1), ConeDescriptor::Soc(3), ConeDescriptor::Psd(2)]),
        ConeDescriptor::PCone { n: 3, p: 2.0 },
        ConeDescriptor::PCone { n: 3, p: 3.0 },
    ];
    println!("{:<40} {:>10} {:>10} {:>12}", "cone", "‖d‖²", "1/r", "hyp. dist");
    for c in &cones {
        let ns = match zoo::circum_direction(c) {
            Ok(circ) => format!("{:.6}", circ.norm_sq),
            Err(Error::HypothesisFails { .. }) => "fails".into(),
            Err(e) => return Err(e),
        };
        let jordan = zoo::jordan_value(c).map_or("-".into(), |v| format!("{v:.6}"));
        let h = zoo::hypothesis_check(&zoo::sample_extremal(c, 200, 1))?;
        println!("{:<40} {ns:>10} {jordan:>10} {:>12.3e}", c.name(), h.distance);
    }

    // the polar of the p-cone is still decidable exactly
    let pc = ConeDescriptor::PCone { n: 3, p: 3.0 };
    println!("(0.2, 0.2, -1) in polar of {}: {}", pc.name(), zoo::polar_membership(&pc, &[0.2, 0.2, -1.0])?);

    // DNN has no exact oracle; sampling can only falsify
    let dnn = ConeDescriptor::Dnn(3);
    let d = zoo::circum_direction(&dnn)?.d;
    let witness = zoo::polar_violation_sampled(&dnn, &d, 500, 3)?;
    println!("sampled DNN violation at d: {}", if witness.is_some() { "found" } else { "none found" });
    println!("exact DNN support: {}", zoo::support_on_extremal(&dnn, &d).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> circumcone::Result<()> {
    run()
}
