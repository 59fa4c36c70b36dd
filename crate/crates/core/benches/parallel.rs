use criterion::{criterion_group, criterion_main, Criterion};

use eulersum::check::{run_check, CheckOptions, IdentityFile};
use eulersum::par;
use eulersum::symbolic::{drinfeld_expand, relation_residual, Relation};
use eulersum::PrecisionContext;

fn database() -> IdentityFile {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/paper.ids");
    IdentityFile::parse(&std::fs::read_to_string(path).expect("identity database"))
}

fn check_database(c: &mut Criterion) {
    let file = database();
    let ctx = PrecisionContext::new(30);
    let opts = CheckOptions::default();
    let mut g = c.benchmark_group("check_database");
    g.sample_size(10);
    for (name, sequential) in [("parallel", false), ("sequential", true)] {
        g.bench_function(name, |b| {
            par::force_sequential(sequential);
            b.iter(|| run_check(&file, &ctx, &opts).unwrap());
        });
    }
    par::force_sequential(false);
    g.finish();
}

fn drinfeld_residuals(c: &mut Criterion) {
    let table = drinfeld_expand(4, 4).unwrap();
    let rels: Vec<Relation> = (0..=4).flat_map(|m| (0..=4).map(move |n| (m, n))).flat_map(|(m, n)| table.relation(m, n)).collect();
    let ctx = PrecisionContext::new(40);
    let mut g = c.benchmark_group("drinfeld_residuals");
    g.sample_size(10);
    for (name, sequential) in [("parallel", false), ("sequential", true)] {
        g.bench_function(name, |b| {
            par::force_sequential(sequential);
            b.iter(|| par::map(&rels, |r| relation_residual(r, &ctx).unwrap()));
        });
    }
    par::force_sequential(false);
    g.finish();
}

criterion_group!(benches, check_database, drinfeld_residuals);
criterion_main!(benches);
