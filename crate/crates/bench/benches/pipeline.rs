use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mindchange::corpus::random_moore_guesser;
use mindchange::diff_hierarchy::reroot_zero;
use mindchange::{
    chain_to_guesser, d_theta, divergence_witness, equivalent, guesser_to_chain, product_boolean, remainder_chain,
    synthesize, BoolOp,
};
use mindchange_bench::{chains, guessable_sets, sets};

fn remainder(c: &mut Criterion) {
    let mut group = c.benchmark_group("remainder_chain");
    for n in [4, 8, 16] {
        let input = sets(32, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &input, |b, input| {
            b.iter(|| input.iter().filter(|s| remainder_chain(black_box(s)).is_guessable()).count())
        });
    }
    group.finish();
}

fn synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    for n in [4, 8, 16] {
        let input = guessable_sets(32, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &input, |b, input| {
            b.iter(|| input.iter().filter_map(|s| synthesize(black_box(s)).ok()).count())
        });
    }
    group.finish();
}

fn product(c: &mut Criterion) {
    let input = sets(16, 6);
    c.bench_function("product_xor", |b| {
        b.iter(|| {
            input
                .windows(2)
                .map(|p| product_boolean(&p[0], &p[1], BoolOp::Xor).expect("same alphabet").num_states())
                .sum::<usize>()
        })
    });
}

fn witness(c: &mut Criterion) {
    let input = sets(16, 6);
    let mut rng = <rand_chacha::ChaCha8Rng as rand_chacha::rand_core::SeedableRng>::seed_from_u64(3);
    let guessers: Vec<_> = (0..16)
        .map(|_| random_moore_guesser(&mut rng, mindchange::Alphabet::binary(), 4))
        .collect();
    c.bench_function("divergence_witness", |b| {
        b.iter(|| {
            input
                .iter()
                .zip(&guessers)
                .filter(|(s, g)| divergence_witness(g, s).expect("same alphabet").is_some())
                .count()
        })
    });
}

fn round_trip(c: &mut Criterion) {
    let input = chains(16, 3, 4);
    c.bench_function("chain_round_trip", |b| {
        b.iter(|| {
            input
                .iter()
                .filter(|chain| {
                    let rg = chain_to_guesser(chain);
                    let rooted = reroot_zero(&rg).expect("finite codomain").expect("zero root");
                    let back = guesser_to_chain(&rooted).expect("valid bound");
                    equivalent(&d_theta(&back), &d_theta(chain)).expect("same alphabet")
                })
                .count()
        })
    });
}

criterion_group!(benches, remainder, synthesis, product, witness, round_trip);
criterion_main!(benches);
