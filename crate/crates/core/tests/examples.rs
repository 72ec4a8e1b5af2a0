//! Every cargo example runs to completion.

#[allow(dead_code)]
#[path = "../examples/assemble_formulations.rs"]
mod assemble_formulations;

#[test]
fn example_assemble_formulations() {
    assemble_formulations::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/condition_numbers.rs"]
mod condition_numbers;

#[test]
fn example_condition_numbers() {
    condition_numbers::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/convergence_study.rs"]
mod convergence_study;

#[test]
fn example_convergence_study() {
    convergence_study::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/custom_operator.rs"]
mod custom_operator;

#[test]
fn example_custom_operator() {
    custom_operator::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/dimensionless_parameters.rs"]
mod dimensionless_parameters;

#[test]
fn example_dimensionless_parameters() {
    dimensionless_parameters::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/essential_sides.rs"]
mod essential_sides;

#[test]
fn example_essential_sides() {
    essential_sides::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/export_matrix.rs"]
mod export_matrix;

#[test]
fn example_export_matrix() {
    export_matrix::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/fractional_interface.rs"]
mod fractional_interface;

#[test]
fn example_fractional_interface() {
    fractional_interface::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/mesh_and_dofs.rs"]
mod mesh_and_dofs;

#[test]
fn example_mesh_and_dofs() {
    mesh_and_dofs::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/naive_vs_exact.rs"]
mod naive_vs_exact;

#[test]
fn example_naive_vs_exact() {
    naive_vs_exact::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/parameter_sweep.rs"]
mod parameter_sweep;

#[test]
fn example_parameter_sweep() {
    parameter_sweep::run_example().unwrap();
}

#[allow(dead_code)]
#[path = "../examples/solve_manufactured.rs"]
mod solve_manufactured;

#[test]
fn example_solve_manufactured() {
    solve_manufactured::run_example().unwrap();
}
