//! Criterion benchmarks for the gswwe toolkit, driven from `benches/pipeline.rs`.

use std::hint::black_box;

use criterion::Criterion;
use gswwe_core::pipeline::{
    build_ansatz, expand_ode, extract_system, homogeneous_balance, numeric_root_oracle, verify_solution_set,
    OracleConfig, OracleParams,
};
use gswwe_core::solutions::{ExpansionParams, ModelParams, PrimitiveTable, TravelingWave};
use gswwe_core::verifier::{linspace, ode_residual, pde_residual, Grid2D};
use gswwe_core::{CoefficientSystem, ReducedOde, SetId, SolutionSet};

pub fn derive_system() -> CoefficientSystem {
    let ode = ReducedOde::gswwe();
    let n = homogeneous_balance(&ode).expect("balance");
    extract_system(&expand_ode(&build_ansatz(n).expect("ansatz"), &ode)).expect("system")
}

/// The bounded wave at `B = 1, C = 0.1, k1 = k2 = 1`, `alpha = beta = gamma = 1`.
pub fn bounded_wave() -> TravelingWave {
    let e = ExpansionParams::new(0.0, 1.0, 0.1, 1.0, 1.0).expect("params");
    TravelingWave::new(SetId::Set1, ModelParams::unit(), e).expect("wave")
}

pub fn symbolic(c: &mut Criterion) {
    c.bench_function("derive_system", |b| b.iter(derive_system));
    let sys = derive_system();
    c.bench_function("verify_both_sets", |b| {
        b.iter(|| {
            for s in [SolutionSet::set1(), SolutionSet::set2()] {
                black_box(verify_solution_set(&sys, &s));
            }
        })
    });
}

pub fn numeric(c: &mut Criterion) {
    let sys = derive_system();
    let params = OracleParams { alpha: 1.0, beta: 1.0, b: 1.0, c: 0.1 };
    let mut group = c.benchmark_group("numeric");
    group.sample_size(10);
    group.bench_function("root_oracle_200_starts", |b| {
        b.iter(|| numeric_root_oracle(&sys, params, &OracleConfig::default()).expect("roots"))
    });
    let w = bounded_wave();
    let zetas = linspace(-10.0, 10.0, 2001);
    group.bench_function("ode_residual_2001", |b| b.iter(|| ode_residual(&w, &zetas).expect("report")));
    group.bench_function("pde_residual_201x201", |b| {
        b.iter(|| pde_residual(&w, &Grid2D::default_residual()).expect("report"))
    });
    group.bench_function("primitive_table_build", |b| {
        b.iter(|| PrimitiveTable::build(&w, -35.0, 35.0, 0.05))
    });
    group.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    symbolic(c);
    numeric(c);
}
