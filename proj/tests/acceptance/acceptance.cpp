// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Usage: acceptance [path-to-notaria-cli]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixture.hpp"
#include "notaria/baselines.hpp"
#include "notaria/error.hpp"
#include "notaria/io.hpp"
#include "notaria/merkle.hpp"
#include "notaria/sim.hpp"
#include "notaria/verify.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

using namespace notaria;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

verify::TrustAssumptions trust_everything(const Registry& registry) {
    verify::TrustAssumptions t;
    for (const auto& id : registry.identities(Role::Node)) t.trusted_validators.insert(id);
    t.trust_proxy_consensus = true;
    return t;
}

// Honest runs are shared by criteria 1 and 2.
struct HonestBatch {
    std::vector<sim::SimResult> runs;
    double elapsed = 0;
};

HonestBatch run_honest_batch() {
    HonestBatch batch;
    std::mt19937_64 rng(20240601);
    const std::uint64_t ms[] = {2, 3, 5};
    auto start = Clock::now();
    for (int i = 0; i < 100; ++i) {
        sim::SimConfig c;
        c.seed = rng();
        c.num_nodes = 1 + static_cast<std::uint32_t>(rng() % 5);
        c.num_clients = 1 + static_cast<std::uint32_t>(rng() % 10);
        c.txs_per_client = 1 + static_cast<std::uint32_t>(rng() % 5);
        c.m = ms[rng() % 3];
        c.delay_jitter_ms = rng() % 40;
        batch.runs.push_back(sim::run_with_artifacts(c));
    }
    batch.elapsed = seconds_since(start);
    return batch;
}

Outcome criterion_1(const HonestBatch& batch) {
    std::size_t bundles = 0, failures = 0;
    for (const auto& run : batch.runs) {
        const auto& art = run.artifacts;
        auto full = trust_everything(art.registry);
        verify::TrustAssumptions ledger_only;
        std::size_t active = 0;
        for (const auto& t : run.report.timelines) active += (!t.superseded && !t.abandoned) ? 1 : 0;
        std::size_t items = 0;
        for (const auto& client : art.clients) {
            for (const auto& item : client.items) {
                ++items;
                verify::Claim claim{crypto::hash(item.document)};
                bool ok = item.first_receipt && item.receipt && item.header && item.aux_receipt;
                ok = ok && verify::verify_level1(item.transaction, *item.first_receipt, art.registry, full, claim).accepted;
                ok = ok && verify::verify_level2(*item.receipt, *item.header, art.registry, full, claim).accepted;
                ok = ok && verify::verify_level3(*item.receipt, *item.aux_receipt, art.ledger, art.registry, ledger_only,
                                                 claim)
                               .accepted;
                failures += ok ? 0 : 1;
            }
        }
        bundles += items;
        if (items != active || !run.report.all_accepted()) ++failures;
    }
    std::ostringstream d;
    d << batch.runs.size() << " configs, " << bundles << " bundles, " << failures << " failures, " << batch.elapsed
      << " s";
    return {failures == 0 && bundles > 0 && batch.elapsed < 60.0, d.str()};
}

Outcome criterion_2(const HonestBatch& batch) {
    std::size_t checked = 0, violations = 0;
    for (const auto& run : batch.runs) {
        const auto& c = run.report.config;
        for (const auto& t : run.report.timelines) {
            if (t.superseded || t.abandoned) continue;
            ++checked;
            if (!t.t1 || !t.t2 || !t.t3) {
                ++violations;
                continue;
            }
            bool ok = *t.t1 < *t.t2 && *t.t2 < *t.t3 && t.t2->millis - t.t1->millis <= c.block_interval_ms &&
                      t.t3->millis - t.t2->millis <= c.m * c.block_interval_ms + c.public_block_interval_ms;
            violations += ok ? 0 : 1;
        }
    }
    std::ostringstream d;
    d << checked << " timelines, " << violations << " violations";
    return {violations == 0 && checked > 0, d.str()};
}

Outcome criterion_3() {
    std::size_t runs = 0, forged = 0, accepted = 0, not_failed = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        sim::SimConfig c;
        c.seed = seed;
        c.num_clients = 2 + seed % 3;
        c.num_nodes = 1 + seed % 3;
        c.m = 2 + seed % 2;
        auto r = sim::scenario_fake_owner(c);
        ++runs;
        if (!r.attack || r.attack->outcome != sim::AttackOutcome::Failed) ++not_failed;
        if (!r.attack) continue;
        for (const auto& f : r.attack->forged) {
            ++forged;
            accepted += f.verdict.accepted ? 1 : 0;
        }
    }
    std::ostringstream d;
    d << runs << " runs, " << forged << " forged bundles, " << accepted << " accepted, " << not_failed
      << " runs not failed";
    return {runs >= 100 && forged >= runs && accepted == 0 && not_failed == 0, d.str()};
}

Outcome criterion_4() {
    std::size_t runs = 0, attempts = 0, accepted = 0, not_failed = 0, short_runs = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        sim::SimConfig c;
        c.seed = seed;
        c.num_clients = 2 + seed % 3;
        c.num_nodes = 1 + seed % 2;
        c.m = seed % 2 == 0 ? 2 : 3;
        c.forgery_attempts = 1'000;
        auto r = sim::scenario_ghost_public(c);
        ++runs;
        if (!r.attack || r.attack->outcome != sim::AttackOutcome::Failed) ++not_failed;
        if (!r.attack) continue;
        auto random_attempts = r.attack->metrics.count("random_attempts") ? r.attack->metrics.at("random_attempts") : 0;
        if (random_attempts < 1'000) ++short_runs;
        attempts += r.attack->forgery_attempts;
        accepted += r.attack->forgery_acceptances;
    }
    std::ostringstream d;
    d << runs << " runs, " << attempts << " forgeries, " << accepted << " level-3 acceptances";
    return {not_failed == 0 && short_runs == 0 && accepted == 0, d.str()};
}

Outcome criterion_5() {
    std::size_t runs = 0, l2_accepted = 0, witnesses_ok = 0, stale = 0, stale_rejected = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        sim::SimConfig c;
        c.seed = seed;
        c.num_clients = 2 + seed % 4;
        c.num_nodes = 1 + seed % 3;
        c.m = 2 + seed % 3;
        c.rewrites = 1 + static_cast<std::uint32_t>(seed % 3);
        auto r = sim::scenario_ghost_proxy(c);
        ++runs;
        if (!r.attack) continue;
        bool forged_l2 = std::any_of(r.attack->forged.begin(), r.attack->forged.end(),
                                     [](const auto& f) { return f.verdict.level == 2 && f.verdict.accepted; });
        l2_accepted += forged_l2 ? 1 : 0;
        auto observers = r.observers(sim::AnomalyKind::HeaderRewrite);
        bool all = !r.attack->witnesses.empty() &&
                   std::all_of(r.attack->witnesses.begin(), r.attack->witnesses.end(), [&](const auto& w) {
                       return std::find(observers.begin(), observers.end(), w) != observers.end();
                   });
        witnesses_ok += all ? 1 : 0;
        stale += r.attack->metrics.at("stale_receipts");
        stale_rejected += r.attack->metrics.at("stale_receipts_rejected");
    }
    std::ostringstream d;
    d << runs << " runs, level-2 forgery accepted in " << l2_accepted << ", HeaderRewrite by all witnesses in "
      << witnesses_ok << ", stale receipts rejected " << stale_rejected << "/" << stale;
    return {l2_accepted == runs && witnesses_ok == runs && stale > 0 && stale == stale_rejected, d.str()};
}

// Criterion 6: single-byte mutations of each evidence component.
Outcome criterion_6() {
    fixture::Pipeline p(3, 3);
    auto trust = p.pop.trust_all();
    const auto& reg = *p.pop.registry;
    std::mt19937_64 rng(6);

    auto mutate = [&](Bytes b) {
        b[rng() % b.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
        return b;
    };
    // Decoding failures count as rejections.
    auto accepted_by = [](const std::function<bool()>& check) {
        try {
            return check();
        } catch (const Error&) {
            return false;
        }
    };

    const Bytes ledger_bytes = p.ledger.serialize();
    // Control: every unmutated bundle is accepted at every level.
    std::size_t controls = 0;
    auto reparsed = anchor::MockLedger::deserialize(ledger_bytes, p.ledger.block_interval_ms());
    for (const auto& it : p.items) {
        verify::Claim claim{crypto::hash(it.document)};
        controls += verify::verify_level1(it.tx, it.first, reg, trust, claim).accepted &&
                    verify::verify_level2(p.receipt(it), p.header(it.k), reg, trust, claim).accepted &&
                    verify::verify_level3(p.receipt(it), p.aux_receipt(it), reparsed, reg, trust, claim).accepted;
    }
    if (controls != p.items.size()) return {false, "unmutated evidence rejected"};
    const std::size_t per_target = 2'500;
    std::size_t total = 0, acceptances = 0;
    std::map<std::string, std::size_t> accepted_by_target;

    for (std::size_t i = 0; i < per_target * 5; ++i) {
        const auto& it = p.items[rng() % p.items.size()];
        verify::Claim claim{crypto::hash(it.document)};
        const auto& receipt = p.receipt(it);
        const auto& header = p.header(it.k);
        auto aux = p.aux_receipt(it);
        bool hit = false;
        std::string target;
        switch (i % 5) {
            case 0: {
                target = "transaction";
                auto tx_bytes = mutate(encode(it.tx));
                hit = accepted_by([&] {
                    auto tx = decode<Transaction>(tx_bytes);
                    return verify::verify_level1(tx, it.first, reg, trust, claim).accepted;
                });
                hit = hit || accepted_by([&] {
                    auto r = receipt;
                    auto pos = std::find(r.transactions.begin(), r.transactions.end(), it.tx);
                    *pos = decode<Transaction>(tx_bytes);
                    return verify::verify_level2(r, header, reg, trust, claim).accepted ||
                           verify::verify_level3(r, aux, p.ledger, reg, trust, claim).accepted;
                });
                break;
            }
            case 1: {
                target = "receipt";
                auto bytes = mutate(encode(receipt));
                hit = accepted_by([&] {
                    auto r = decode<Receipt>(bytes);
                    return verify::verify_level2(r, header, reg, trust, claim).accepted ||
                           verify::verify_level3(r, aux, p.ledger, reg, trust, claim).accepted;
                });
                break;
            }
            case 2: {
                target = "aux_receipt";
                auto bytes = mutate(encode(aux));
                hit = accepted_by([&] {
                    auto a = decode<AuxReceipt>(bytes);
                    return verify::verify_level3(receipt, a, p.ledger, reg, trust, claim).accepted;
                });
                break;
            }
            case 3: {
                target = "header";
                auto bytes = mutate(encode(header));
                hit = accepted_by([&] {
                    auto h = decode<BlockHeader>(bytes);
                    return verify::verify_level2(receipt, h, reg, trust, claim).accepted;
                });
                break;
            }
            case 4: {
                target = "pub_data";
                // One public block holding one record: u64 time, u32 count, u32 length, payload.
                auto bytes = ledger_bytes;
                const std::size_t offset = 8 + 4 + 4;
                bytes[offset + rng() % PubData::kEncodedSize] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                hit = accepted_by([&] {
                    auto ledger = anchor::MockLedger::deserialize(bytes, p.ledger.block_interval_ms());
                    return verify::verify_level3(receipt, aux, ledger, reg, trust, claim).accepted;
                });
                break;
            }
        }
        ++total;
        if (hit) {
            ++acceptances;
            ++accepted_by_target[target];
        }
    }
    std::ostringstream d;
    d << controls << " unmutated bundles accepted; " << total << " mutations over transaction, receipt, aux receipt, header, pub_data; " << acceptances
      << " acceptances";
    for (const auto& [t, n] : accepted_by_target) d << " [" << t << ": " << n << "]";
    bool layout_ok = p.ledger.blocks().size() == 1 && p.ledger.blocks()[0].payloads.size() == 1;
    return {layout_ok && total >= 10'000 && acceptances == 0, d.str()};
}

Outcome criterion_7() {
    std::size_t checks = 0, mismatches = 0;
    for (std::size_t n = 1; n <= 64; ++n) {
        std::vector<Digest> leaves;
        for (std::size_t i = 0; i < n; ++i) leaves.push_back(oracle::leaf(oracle::be64(n * 1'000 + i)));
        auto tree = merkle::MerkleTree::build(leaves);
        std::size_t bound = 0;
        while ((std::size_t{1} << bound) < n) ++bound;
        ++checks;
        if (tree.root() != oracle::merkle_root(leaves)) ++mismatches;
        for (std::size_t i = 0; i < n; ++i) {
            ++checks;
            auto path = tree.path(i);
            auto expected = oracle::merkle_path(leaves, i);
            bool same = path.size() == expected.size() && path.size() <= bound;
            for (std::size_t s = 0; same && s < expected.size(); ++s) {
                same = path.steps[s].sibling == expected[s].sibling &&
                       (path.steps[s].side == merkle::Side::Right) == expected[s].sibling_on_right;
            }
            if (!same) ++mismatches;
        }
    }
    std::ostringstream d;
    d << checks << " root/path comparisons for n = 1..64, " << mismatches << " mismatches";
    return {mismatches == 0, d.str()};
}

Outcome criterion_8() {
    std::mt19937_64 rng(8);
    auto signer = fixture::keys("container", 0);
    auto digest = [&] { return Digest::from(fixture::random_bytes(rng, 32)); };
    auto sig = [&] { return Signature::from(fixture::random_bytes(rng, 64)); };
    auto id = [&] { return Identity::from(fixture::random_bytes(rng, 32)); };
    auto path = [&] {
        merkle::MerklePath p;
        for (std::size_t s = 0, n = rng() % 8; s < n; ++s) {
            p.steps.push_back({digest(), rng() % 2 ? merkle::Side::Left : merkle::Side::Right});
        }
        return p;
    };
    auto tx = [&] { return Transaction{sig(), {rng()}, id(), {}}; };

    std::size_t checks = 0, failures = 0;
    auto check = [&](const Bytes& unsigned_body) {
        ++checks;
        auto signed_body = crypto::sign_container(signer.secret_key, unsigned_body);
        bool ok = crypto::verify_container(signer.public_key, signed_body);
        try {
            crypto::sign_container(signer.secret_key, signed_body);
            ok = false;
        } catch (const Error& e) {
            ok = ok && e.code() == ErrorCode::SlotNotZeroed;
        }
        failures += ok ? 0 : 1;
    };

    for (int i = 0; i < 250; ++i) {
        check(encode(tx()));
        check(encode(BlockHeader{digest(), rng(), {rng()}, digest(), id(), {}}));
        Receipt r;
        for (std::size_t t = 0, n = 1 + rng() % 4; t < n; ++t) r.transactions.push_back(tx());
        r.client_root = digest();
        r.path = path();
        r.committer = id();
        check(encode(r));
        AuxReceipt a{rng(), rng(), {id(), rng(), rng(), digest()}, {rng(), static_cast<std::uint32_t>(rng())}, path(), {}};
        check(encode(a));
        auto body = fixture::random_bytes(rng, rng() % 300);
        body.resize(body.size() + 64, 0);
        check(body);

        // Typed signing helpers produce the same container.
        ++checks;
        auto header = sign_header(signer, BlockHeader{digest(), rng(), {rng()}, digest(), id(), {}});
        failures += verify_header_sig(signer.public_key, header) ? 0 : 1;
    }
    std::ostringstream d;
    d << checks << " containers (transaction, header, receipt, aux receipt, raw), " << failures << " failures";
    return {failures == 0, d.str()};
}

Outcome criterion_9() {
    std::ostringstream d;
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        sim::SimConfig c;
        c.seed = seed;
        c.num_clients = 3 + seed % 3;
        c.num_nodes = 2 + seed % 2;
        c.m = 2 + seed % 2;
        c.txs_per_client = 2;

        for (auto v : {sim::DosVariant::Drop, sim::DosVariant::SilentValidator}) {
            auto r = sim::scenario_dos(c, v);
            bool late_ok = r.all_accepted();
            for (const auto& t : r.timelines) {
                if (!t.superseded && !t.abandoned && !t.t3) late_ok = false;
            }
            auto kind = v == sim::DosVariant::Drop ? sim::AnomalyKind::MissingFirstReceipt : sim::AnomalyKind::MissingReceipt;
            bool ok = r.attack && r.attack->detected && late_ok &&
                      (r.count(kind) > 0 || r.count(sim::AnomalyKind::ReceiptMismatch) > 0);
            if (!ok) {
                pass = false;
                d << (v == sim::DosVariant::Drop ? "drop" : "silent") << " seed " << seed << " failed; ";
            }
        }

        auto omission = sim::scenario_dos(c, sim::DosVariant::AuxOmission);
        auto obs = omission.observers(sim::AnomalyKind::AuxOmission);
        bool everyone = omission.attack && !omission.attack->witnesses.empty() &&
                        std::all_of(omission.attack->witnesses.begin(), omission.attack->witnesses.end(),
                                    [&](const auto& w) { return std::find(obs.begin(), obs.end(), w) != obs.end(); }) &&
                        omission.attack->witnesses.size() == c.num_nodes + c.num_clients;
        if (!everyone) {
            pass = false;
            d << "aux omission seed " << seed << " not flagged by all; ";
        }

        auto flood = sim::scenario_dos(c, sim::DosVariant::CaFlood);
        bool past_ok = flood.all_accepted();
        std::size_t refused = flood.attack ? flood.attack->metrics.at("refused_submissions") : 0;
        std::size_t registrations = flood.attack ? flood.attack->metrics.at("refused_registrations") : 0;
        if (!(flood.attack && flood.attack->detected && past_ok && refused == c.num_clients && registrations >= 1)) {
            pass = false;
            d << "ca flood seed " << seed << " failed; ";
        }
    }
    if (pass) d << "5 seeds x {drop, silent_validator, aux_omission, ca_flood}: late notarization, anomalies logged, "
                   "omission flagged by every observer, past evidence verifiable";
    return {pass, d.str()};
}

int run_cli(const std::string& cli, const std::string& args, std::string* out = nullptr) {
    std::string cmd = cli + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::string text;
    char buf[4096];
    while (auto n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
    int status = ::pclose(pipe);
    if (out) *out = text;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_10(const std::string& cli) {
    if (cli.empty() || !fs::exists(cli)) return {false, "CLI binary not supplied"};
    fixture::TempDir root("offline");
    auto ws = root.path / "workspace";
    auto offline = root.path / "offline";
    if (run_cli(cli, "-w " + ws.string() + " sim --seed 42 --clients 3 --nodes 2 --txs 2 --m 2") != 0) {
        return {false, "simulation failed"};
    }
    fs::create_directories(offline);
    fs::copy(ws / "clients" / "client-1", offline / "bundle", fs::copy_options::recursive);
    fs::copy_file(ws / "registry.bin", offline / "registry.bin");
    fs::copy_file(ws / "ledger.bin", offline / "ledger.bin");
    fs::remove_all(ws);

    std::size_t verified = 0, failed = 0;
    std::string last;
    for (int tx = 0; tx < 2; ++tx) {
        std::string args = "verify --level 3 --bundle " + (offline / "bundle").string() + " --tx " +
                           std::to_string(tx) + " --registry " + (offline / "registry.bin").string() + " --ledger " +
                           (offline / "ledger.bin").string();
        if (run_cli(cli, args, &last) == 0) {
            ++verified;
        } else {
            ++failed;
        }
    }
    std::ostringstream d;
    d << "workspace deleted; level 3 via CLI exit 0 for " << verified << "/" << verified + failed << " bundles";
    if (failed) d << " (" << last << ")";
    return {failed == 0 && verified > 0, d.str()};
}

Outcome criterion_11() {
    using namespace notaria::baselines;
    std::mt19937_64 rng(11);
    Repository repo;
    std::vector<LinkedRound> rounds;
    std::vector<LinkedReceipt> receipts;
    Digest expected_chain{};
    bool oracle_match = true;
    for (std::uint64_t l = 1; l <= 10; ++l) {
        std::vector<Bytes> requests;
        for (std::size_t i = 0, n = 1 + rng() % 16; i < n; ++i) requests.push_back(fixture::random_bytes(rng, 40));
        auto res = linked_round(l, requests, repo.roots().back(), {l * 1'000});
        repo.push(res.round.chained_root);
        rounds.push_back(res.round);
        receipts.insert(receipts.end(), res.receipts.begin(), res.receipts.end());

        std::vector<Digest> leaves;
        for (const auto& q : requests) leaves.push_back(oracle::leaf(q));
        expected_chain = oracle::sha256(oracle::cat({oracle::raw(expected_chain), oracle::raw(oracle::merkle_root(leaves))}));
        oracle_match = oracle_match && expected_chain == repo.at(l);
    }
    auto stored = Repository::deserialize(repo.serialize());
    bool replay = replay_chain(rounds, stored);
    std::size_t receipts_ok = 0;
    for (const auto& r : receipts) receipts_ok += verify_linked_receipt(r, stored) ? 1 : 0;

    auto authority = fixture::keys("authority", 0);
    std::size_t mutations = 0, mutation_accepts = 0, honest_ok = 0;
    for (int i = 0; i < 20; ++i) {
        auto d = Digest::from(fixture::random_bytes(rng, 32));
        Timestamp t{rng()};
        for (auto variant : {AuthorityVariant::Plain, AuthorityVariant::Rfc3161}) {
            auto r = authority_timestamp(authority, d, t, variant);
            honest_ok += verify_authority_receipt(authority.public_key, r, d, t) ? 1 : 0;
            auto bytes = encode(r);
            for (std::size_t b = 0; b < bytes.size(); ++b) {
                auto m = bytes;
                m[b] ^= static_cast<std::uint8_t>(1 + rng() % 255);
                ++mutations;
                try {
                    if (verify_authority_receipt(authority.public_key, decode_authority_receipt(m), d, t)) ++mutation_accepts;
                } catch (const Error&) {
                }
            }
        }
    }
    std::ostringstream d;
    d << "10 rounds replayed " << (replay ? "exactly" : "with mismatch") << ", oracle chain "
      << (oracle_match ? "matches" : "differs") << ", " << receipts_ok << "/" << receipts.size()
      << " linked receipts verify; authority " << honest_ok << "/40 verify, " << mutation_accepts << "/" << mutations
      << " mutations accepted";
    return {replay && oracle_match && receipts_ok == receipts.size() && honest_ok == 40 && mutation_accepts == 0,
            d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    int failed = 0;
    auto report = [&](int n, const std::string& name, const std::function<Outcome()>& fn) {
        Outcome o;
        auto start = Clock::now();
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2d %-28s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str(),
                    seconds_since(start));
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    };

    HonestBatch batch;
    report(1, "honest end-to-end", [&] {
        batch = run_honest_batch();
        return criterion_1(batch);
    });
    report(2, "incremental latency", [&] { return criterion_2(batch); });
    report(3, "fake owner", criterion_3);
    report(4, "ghost public", criterion_4);
    report(5, "ghost proxy", criterion_5);
    report(6, "mutation soundness", criterion_6);
    report(7, "merkle oracle", criterion_7);
    report(8, "signed containers", criterion_8);
    report(9, "denial of service", criterion_9);
    report(10, "offline CLI verification", [&] { return criterion_10(cli); });
    report(11, "baseline replay", criterion_11);

    std::printf("%d of 11 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
