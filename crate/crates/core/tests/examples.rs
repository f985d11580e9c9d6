mod packing_2d {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/packing_2d.rs"));
}

#[test]
fn packing_2d_runs() {
    packing_2d::run_example().expect("packing_2d example should run");
}

mod high_dim_packing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/high_dim_packing.rs"));
}

#[test]
fn high_dim_packing_runs() {
    high_dim_packing::run_example().expect("high_dim_packing example should run");
}

mod single_layer {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/single_layer.rs"));
}

#[test]
fn single_layer_runs() {
    single_layer::run_example().expect("single_layer example should run");
}

mod multi_layer {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/multi_layer.rs"));
}

#[test]
fn multi_layer_runs() {
    multi_layer::run_example().expect("multi_layer example should run");
}

mod universal_code {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/universal_code.rs"));
}

#[test]
fn universal_code_runs() {
    universal_code::run_example().expect("universal_code example should run");
}

mod rate_reliability {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rate_reliability.rs"));
}

#[test]
fn rate_reliability_runs() {
    rate_reliability::run_example().expect("rate_reliability example should run");
}

mod bounds_table {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bounds_table.rs"));
}

#[test]
fn bounds_table_runs() {
    bounds_table::run_example().expect("bounds_table example should run");
}

mod gaussian_tails {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gaussian_tails.rs"));
}

#[test]
fn gaussian_tails_runs() {
    gaussian_tails::run_example().expect("gaussian_tails example should run");
}

mod experiment {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/experiment.rs"));
}

#[test]
fn experiment_runs() {
    experiment::run_example().expect("experiment example should run");
}
