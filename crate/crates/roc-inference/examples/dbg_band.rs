use roc_inference::data::GridConfig;
use roc_inference::kernel::KernelConfig;
use roc_inference::logit::WeightLaw;
use roc_inference::resample::Scheme;
use roc_inference::simulation::{band_coverage_experiment, DgpSpec};

fn main() {
    let spec = DgpSpec::normal_logit(500);
    let grid_cfg =
        GridConfig { tau_l: 0.1, tau_u: 0.9, step: 0.01, alpha: 0.10, ..Default::default() };
    let big = band_coverage_experiment(
        &spec, &grid_cfg, &KernelConfig::default(), Scheme::Multiplier,
        WeightLaw::TwoPoint, 1000, 2500, 31_337, 10_000_000,
    )
    .unwrap();
    println!("R=2500 B=1000: coverage={:.4} (se {:.4})", big.rate, big.mc_se);
}
