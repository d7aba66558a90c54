#include <benchmark/benchmark.h>

#include "notaria/merkle.hpp"
#include "notaria/sim.hpp"
#include "notaria/verify.hpp"
#include "pipeline.hpp"

using namespace notaria;

namespace {

std::vector<Digest> leaves(std::size_t n) {
    std::vector<Digest> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(merkle::leaf_digest(to_bytes(std::to_string(i))));
    return out;
}

void BM_MerkleBuild(benchmark::State& state) {
    auto l = leaves(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(merkle::MerkleTree::build(l).root());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MerkleBuild)->RangeMultiplier(4)->Range(4, 4096);

void BM_MerklePathVerify(benchmark::State& state) {
    auto l = leaves(static_cast<std::size_t>(state.range(0)));
    auto tree = merkle::MerkleTree::build(l);
    auto path = tree.path(l.size() / 2);
    for (auto _ : state) benchmark::DoNotOptimize(merkle::verify_path(l[l.size() / 2], path, tree.root()));
}
BENCHMARK(BM_MerklePathVerify)->RangeMultiplier(4)->Range(4, 4096);

struct Evidence {
    fixture::Pipeline p{3, 4};
    verify::TrustAssumptions trust = p.pop.trust_all();
    const fixture::Pipeline::Item& item = p.items.at(5);
    AuxReceipt aux = p.aux_receipt(item);
    verify::Claim claim{crypto::hash(item.document)};
};

Evidence& evidence() {
    static Evidence e;
    return e;
}

void BM_VerifyLevel1(benchmark::State& state) {
    auto& e = evidence();
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify::verify_level1(e.item.tx, e.item.first, *e.p.pop.registry, e.trust, e.claim));
    }
}
BENCHMARK(BM_VerifyLevel1);

void BM_VerifyLevel2(benchmark::State& state) {
    auto& e = evidence();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            verify::verify_level2(e.p.receipt(e.item), e.p.header(e.item.k), *e.p.pop.registry, e.trust, e.claim));
    }
}
BENCHMARK(BM_VerifyLevel2);

void BM_VerifyLevel3(benchmark::State& state) {
    auto& e = evidence();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            verify::verify_level3(e.p.receipt(e.item), e.aux, e.p.ledger, *e.p.pop.registry, e.trust, e.claim));
    }
}
BENCHMARK(BM_VerifyLevel3);

void BM_SimHappyPath(benchmark::State& state) {
    sim::SimConfig c;
    c.num_clients = static_cast<std::uint32_t>(state.range(0));
    c.num_nodes = 3;
    c.txs_per_client = 3;
    for (auto _ : state) benchmark::DoNotOptimize(sim::run(c).blocks);
}
BENCHMARK(BM_SimHappyPath)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
