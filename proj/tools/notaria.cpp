// notaria <keys|sim|verify|inspect> [flags]
//
// Exit codes: 0 accepted / success, 1 rejected, 2 malformed input or usage.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "notaria/error.hpp"
#include "notaria/io.hpp"
#include "notaria/nodes.hpp"
#include "notaria/registry.hpp"
#include "notaria/sim.hpp"
#include "notaria/verify.hpp"
#include "notaria/workspace.hpp"

namespace fs = std::filesystem;
using namespace notaria;

namespace {

constexpr int kAccepted = 0;
constexpr int kRejected = 1;
constexpr int kMalformed = 2;

struct Common {
    std::string workspace;

    workspace::Layout layout() const {
        return {workspace::resolve(workspace.empty() ? std::nullopt : std::optional<fs::path>(workspace))};
    }
};

// ---- keys ----------------------------------------------------------------

struct KeysGen {
    std::string role;
    std::string seed;
};

int cmd_keys_gen(const Common& common, const KeysGen& opts) {
    auto layout = common.layout();
    fs::create_directories(layout.root);
    auto ca = workspace::load_or_create_ca(layout);
    Registry registry;
    if (fs::exists(layout.registry())) registry = Registry::load(layout.registry(), ca.identity);

    auto role = role_from_string(opts.role);
    crypto::KeyPair keys;
    if (opts.seed.empty()) {
        keys = crypto::keygen_random();
    } else {
        auto raw = from_hex(opts.seed.starts_with("0x") ? opts.seed.substr(2) : opts.seed);
        if (raw.size() != crypto::Seed::size) throw Error(ErrorCode::MalformedEncoding, "seed must be 32 bytes of hex");
        keys = crypto::keygen(crypto::Seed::from(raw));
    }
    try {
        registry.add(keys.public_key, role);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DuplicateIdentity) throw;
        std::cerr << "error: " << e.what() << "\n";
        return kRejected;
    }
    workspace::save_keypair(layout.keys_dir() / (to_hex(keys.identity) + ".key"), keys);
    registry.save(layout.registry(), ca);
    std::cout << to_hex(keys.identity) << " " << to_string(role) << "\n";
    return kAccepted;
}

int cmd_keys_list(const Common& common, bool as_json) {
    auto layout = common.layout();
    auto registry = Registry::load(layout.registry());
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [id, entry] : registry.entries()) {
        if (as_json) {
            out.push_back({{"identity", to_hex(id)}, {"role", to_string(entry.role)}, {"public_key", to_hex(entry.public_key)}});
        } else {
            std::cout << to_hex(id) << "  " << to_string(entry.role) << "\n";
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return kAccepted;
}

// ---- sim -----------------------------------------------------------------

struct SimFlags {
    std::string scenario = "happy_path";
    std::string config_file;
    sim::SimConfig config;
    bool trace = false;
};

void apply_config_file(const fs::path& file, sim::SimConfig& c, std::string& scenario) {
    auto raw = io::read_file(file);
    auto j = nlohmann::json::parse(raw.begin(), raw.end(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::InvalidConfig, file.string() + ": not a JSON object");
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    get("scenario", scenario);
    get("seed", c.seed);
    get("clients", c.num_clients);
    get("nodes", c.num_nodes);
    get("txs", c.txs_per_client);
    get("m", c.m);
    get("block_interval_ms", c.block_interval_ms);
    get("public_block_interval_ms", c.public_block_interval_ms);
    get("delay_ms", c.message_delay_ms);
    get("jitter_ms", c.delay_jitter_ms);
    get("drop", c.drop_probability);
    get("quorum", c.quorum);
    get("rewrites", c.rewrites);
    get("forgery_attempts", c.forgery_attempts);
    get("trace", c.trace);
}

int cmd_sim(const Common& common, CLI::App& sub, SimFlags flags) {
    // Config file first, then every flag given on the command line wins.
    sim::SimConfig config;
    std::string scenario = "happy_path";
    if (!flags.config_file.empty()) apply_config_file(flags.config_file, config, scenario);
    auto given = [&](const char* name) { return sub.get_option(name)->count() > 0; };
    if (given("--scenario")) scenario = flags.scenario;
    if (given("--seed")) config.seed = flags.config.seed;
    if (given("--clients")) config.num_clients = flags.config.num_clients;
    if (given("--nodes")) config.num_nodes = flags.config.num_nodes;
    if (given("--txs")) config.txs_per_client = flags.config.txs_per_client;
    if (given("--m")) config.m = flags.config.m;
    if (given("--block-interval")) config.block_interval_ms = flags.config.block_interval_ms;
    if (given("--public-interval")) config.public_block_interval_ms = flags.config.public_block_interval_ms;
    if (given("--delay")) config.message_delay_ms = flags.config.message_delay_ms;
    if (given("--jitter")) config.delay_jitter_ms = flags.config.delay_jitter_ms;
    if (given("--drop")) config.drop_probability = flags.config.drop_probability;
    if (given("--quorum")) config.quorum = flags.config.quorum;
    if (given("--rewrites")) config.rewrites = flags.config.rewrites;
    if (given("--forgery-attempts")) config.forgery_attempts = flags.config.forgery_attempts;
    if (flags.trace) config.trace = true;
    config.scenario = sim::scenario_from_string(scenario);

    auto result = sim::run_with_artifacts(config);
    auto layout = common.layout();
    workspace::save_sim(layout, result);

    const auto& r = result.report;
    std::cout << "scenario " << sim::to_string(config.scenario) << ": " << r.blocks << " blocks, " << r.epochs
              << " epochs, " << r.anomalies.size() << " anomalies\n";
    for (const auto& l : r.levels) {
        std::cout << "  level " << l.level << ": " << l.accepted << "/" << l.checked << " accepted\n";
    }
    if (r.attack) {
        std::cout << "  attack " << sim::to_string(r.attack->outcome) << (r.attack->detected ? " (detected)" : "")
                  << ", forged acceptances " << r.attack->forgery_acceptances << "/" << r.attack->forgery_attempts
                  << "\n";
    }
    std::cout << "report written to " << layout.report().string() << "\n";
    if (!sim::is_adversarial(config.scenario) && !r.all_accepted()) return kRejected;
    return kAccepted;
}

// ---- verify --------------------------------------------------------------

struct VerifyFlags {
    int level = 3;
    std::string bundle;
    std::uint32_t tx = 0;
    std::string tx_file, first_file, receipt_file, header_file, aux_file;
    std::string registry, ledger, data;
    std::vector<std::string> trusted_validators;
    bool trust_all_validators = false;
    bool trust_consensus = false;
    std::string trusted_anchorer;
};

template <typename T>
T load_evidence(const std::string& path, const char* what) {
    if (path.empty()) throw Error(ErrorCode::MalformedEncoding, std::string("missing ") + what + " file");
    return decode<T>(io::read_file(path));
}

int cmd_verify(const Common& common, VerifyFlags f) {
    auto layout = common.layout();
    if (!f.bundle.empty()) {
        auto files = workspace::bundle_files(f.bundle, f.tx);
        auto fill = [](std::string& target, const fs::path& p) {
            if (target.empty()) target = p.string();
        };
        fill(f.tx_file, files.transaction);
        fill(f.first_file, files.first_receipt);
        fill(f.receipt_file, files.receipt);
        fill(f.header_file, files.header);
        fill(f.aux_file, files.aux_receipt);
        if (f.data.empty() && fs::exists(files.document)) f.data = files.document.string();
    }
    auto registry = Registry::load(f.registry.empty() ? layout.registry() : fs::path(f.registry));

    verify::TrustAssumptions trust;
    for (const auto& v : f.trusted_validators) trust.trusted_validators.insert(fixed_from_hex<Identity>(v));
    if (f.trust_all_validators) {
        for (const auto& id : registry.identities(Role::Node)) trust.trusted_validators.insert(id);
    }
    trust.trust_proxy_consensus = f.trust_consensus;
    if (!f.trusted_anchorer.empty()) trust.trusted_anchorer = fixed_from_hex<Identity>(f.trusted_anchorer);

    std::optional<verify::Claim> claim;
    if (!f.data.empty()) claim = verify::Claim{crypto::hash(io::read_file(f.data))};

    verify::Verdict verdict;
    switch (f.level) {
        case 1:
            verdict = verify::verify_level1(load_evidence<Transaction>(f.tx_file, "transaction"),
                                            load_evidence<FirstReceipt>(f.first_file, "first receipt"), registry,
                                            trust, claim);
            break;
        case 2:
            verdict = verify::verify_level2(load_evidence<Receipt>(f.receipt_file, "receipt"),
                                            load_evidence<BlockHeader>(f.header_file, "header"), registry, trust,
                                            claim);
            break;
        default: {
            auto ledger = anchor::MockLedger::load(f.ledger.empty() ? layout.ledger() : fs::path(f.ledger));
            verdict = verify::verify_level3(load_evidence<Receipt>(f.receipt_file, "receipt"),
                                            load_evidence<AuxReceipt>(f.aux_file, "auxiliary receipt"), ledger,
                                            registry, trust, claim);
            break;
        }
    }
    std::cout << verify::verdict_json(verdict) << "\n";
    return verdict.accepted ? kAccepted : kRejected;
}

// ---- inspect -------------------------------------------------------------

std::string short_hex(const auto& v) { return to_hex(v).substr(0, 16); }

int cmd_inspect_chain(const Common& common, std::string path, bool node_view, bool as_json) {
    fs::path p = path.empty() ? common.layout().node_dir(0) : fs::path(path);
    fs::path chain = fs::is_directory(p) ? p / "chain.log" : p;
    auto blocks = nodes::read_chain_log(chain);
    if (node_view) {
        auto phantom = nodes::read_phantom_log(chain.parent_path() / "phantom.log");
        for (auto& b : blocks) {
            if (auto it = phantom.find(b.header.index); it != phantom.end()) b.phantom = it->second;
        }
    }
    if (as_json) {
        auto out = nlohmann::ordered_json::array();
        for (const auto& b : blocks) out.push_back(nlohmann::ordered_json::parse(workspace::to_json(b, node_view)));
        std::cout << out.dump(2) << "\n";
        return kAccepted;
    }
    for (const auto& b : blocks) {
        const auto& h = b.header;
        std::cout << "block " << h.index << "  t=" << h.created_at.millis << "  root=" << short_hex(h.block_root)
                  << "  committer=" << short_hex(h.committer) << "  summaries=" << b.summaries.size() << "\n";
        for (const auto& s : b.summaries) std::cout << "    client_root " << to_hex(s.client_root) << "\n";
        if (!node_view) {
            std::cout << "    phantom: redacted\n";
            continue;
        }
        for (const auto& [client, txs] : b.phantom.transactions) {
            std::cout << "    phantom " << short_hex(client) << ": " << txs.size() << " transaction(s)\n";
            for (const auto& tx : txs) {
                std::cout << "      t=" << tx.claimed_time.millis << " data_sig=" << short_hex(tx.data_sig) << "\n";
            }
        }
    }
    return kAccepted;
}

int cmd_inspect_ledger(const Common& common, std::string path, bool as_json) {
    auto ledger = anchor::MockLedger::load(path.empty() ? common.layout().ledger() : fs::path(path));
    auto out = nlohmann::ordered_json::array();
    for (std::size_t height = 0; height < ledger.blocks().size(); ++height) {
        const auto& block = ledger.blocks()[height];
        if (!as_json) std::cout << "public block " << height << "  t=" << block.time.millis << "\n";
        for (std::size_t i = 0; i < block.payloads.size(); ++i) {
            nlohmann::ordered_json rec{{"block_height", height}, {"tx_index", i}, {"block_time", block.time.millis}};
            try {
                auto pub = decode<PubData>(block.payloads[i]);
                rec["pub_data"] = nlohmann::ordered_json::parse(workspace::to_json(pub));
                if (!as_json) {
                    std::cout << "  [" << i << "] pub_data anchorer=" << short_hex(pub.anchorer)
                              << " k0=" << pub.last_anchor_index << " m=" << pub.epoch_length
                              << " aux_root=" << to_hex(pub.aux_root) << "\n";
                }
            } catch (const Error&) {
                rec["payload"] = to_hex(block.payloads[i]);
                if (!as_json) std::cout << "  [" << i << "] opaque payload, " << block.payloads[i].size() << " bytes\n";
            }
            out.push_back(rec);
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return kAccepted;
}

int cmd_inspect_receipt(const Common& common, const std::string& path, std::string registry_path, bool as_json) {
    auto bytes = io::read_file(path);
    std::optional<Registry> registry;
    fs::path reg = registry_path.empty() ? common.layout().registry() : fs::path(registry_path);
    if (fs::exists(reg)) registry = Registry::load(reg);

    std::optional<Receipt> receipt;
    try {
        receipt = decode<Receipt>(bytes);
    } catch (const Error&) {
        auto aux = decode<AuxReceipt>(bytes);
        if (as_json) {
            std::cout << workspace::to_json(aux) << "\n";
        } else {
            std::cout << "auxiliary receipt for blocks " << aux.first_k << ".." << aux.last_k << "\n"
                      << "  ledger address " << aux.address.block_height << ":" << aux.address.tx_index << "\n"
                      << "  aux_root " << to_hex(aux.pub_data.aux_root) << "\n"
                      << "  path length " << aux.path.size() << "\n";
        }
        return kAccepted;
    }

    auto status = [&](const Transaction& tx) -> std::string {
        if (!registry) return "unknown (no registry)";
        auto pk = registry->key_for(tx.client, Role::Client);
        if (!pk) return "unknown client";
        return verify_transaction_sig(*pk, tx) ? "valid" : "INVALID";
    };
    if (as_json) {
        auto j = nlohmann::ordered_json::parse(workspace::to_json(*receipt));
        for (std::size_t i = 0; i < receipt->transactions.size(); ++i) {
            j["transactions"][i]["signature"] = status(receipt->transactions[i]);
        }
        std::cout << j.dump(2) << "\n";
        return kAccepted;
    }
    std::cout << "receipt from committer " << short_hex(receipt->committer) << "\n"
              << "  client_root " << to_hex(receipt->client_root) << "\n"
              << "  path length " << receipt->path.size() << "\n"
              << "  transactions (" << receipt->transactions.size() << "):\n";
    for (const auto& tx : receipt->transactions) {
        std::cout << "    t=" << tx.claimed_time.millis << " client=" << short_hex(tx.client)
                  << " signature " << status(tx) << "\n";
    }
    return kAccepted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier incremental-trust notarization: keys, simulation, verification, inspection"};
    app.require_subcommand(1);
    Common common;
    app.add_option("-w,--workspace", common.workspace, "Workspace directory (default: $NOTARIA_WORKSPACE)");

    // keys
    auto* keys = app.add_subcommand("keys", "Manage keys and the registry");
    keys->require_subcommand(1);
    KeysGen gen;
    auto* keys_gen = keys->add_subcommand("gen", "Generate a key and register it");
    keys_gen->add_option("--role", gen.role, "client | node | aux")->required();
    keys_gen->add_option("--seed", gen.seed, "32-byte hex seed for deterministic keys");
    bool list_json = false;
    auto* keys_list = keys->add_subcommand("list", "List registered identities");
    keys_list->add_flag("--json", list_json, "JSON output");

    // sim
    SimFlags sim_flags;
    auto* sim_cmd = app.add_subcommand("sim", "Run a simulation and write its artifacts to the workspace");
    auto& sc = sim_flags.config;
    sim_cmd->add_option("--scenario", sim_flags.scenario, "happy_path, fake_owner, ghost_proxy, ghost_public, "
                                                          "dos_drop, dos_silent_validator, dos_aux_omission, "
                                                          "dos_ca_flood");
    sim_cmd->add_option("--config", sim_flags.config_file, "JSON config file; flags override it");
    sim_cmd->add_option("--seed", sc.seed);
    sim_cmd->add_option("--clients", sc.num_clients);
    sim_cmd->add_option("--nodes", sc.num_nodes);
    sim_cmd->add_option("--txs", sc.txs_per_client, "Transactions per client");
    sim_cmd->add_option("--m", sc.m, "Epoch length in blocks");
    sim_cmd->add_option("--block-interval", sc.block_interval_ms, "Proxy block interval (ms)");
    sim_cmd->add_option("--public-interval", sc.public_block_interval_ms, "Public block interval (ms)");
    sim_cmd->add_option("--delay", sc.message_delay_ms, "Message delay (ms)");
    sim_cmd->add_option("--jitter", sc.delay_jitter_ms, "Uniform delay jitter (ms)");
    sim_cmd->add_option("--drop", sc.drop_probability, "Submission / first-receipt loss probability");
    sim_cmd->add_option("--quorum", sc.quorum, "Ack fraction needed to finalize a block");
    sim_cmd->add_option("--rewrites", sc.rewrites, "History rewrites (ghost_proxy)");
    sim_cmd->add_option("--forgery-attempts", sc.forgery_attempts, "Randomized forgeries (ghost_public)");
    sim_cmd->add_flag("--trace", sim_flags.trace, "Write trace.ndjson");

    // verify
    VerifyFlags vf;
    auto* verify_cmd = app.add_subcommand("verify", "Verify evidence offline");
    verify_cmd->add_option("--level", vf.level, "1, 2 or 3")->check(CLI::Range(1, 3));
    verify_cmd->add_option("--bundle", vf.bundle, "Client bundle directory");
    verify_cmd->add_option("--tx", vf.tx, "Transaction number inside the bundle");
    verify_cmd->add_option("--transaction", vf.tx_file);
    verify_cmd->add_option("--first-receipt", vf.first_file);
    verify_cmd->add_option("--receipt", vf.receipt_file);
    verify_cmd->add_option("--header", vf.header_file);
    verify_cmd->add_option("--aux-receipt", vf.aux_file);
    verify_cmd->add_option("--registry", vf.registry);
    verify_cmd->add_option("--ledger", vf.ledger);
    verify_cmd->add_option("--data", vf.data, "Document whose existence is claimed");
    verify_cmd->add_option("--trust-validator", vf.trusted_validators, "Trusted validator identity (repeatable)");
    verify_cmd->add_flag("--trust-all-validators", vf.trust_all_validators, "Trust every registered service node");
    verify_cmd->add_flag("--trust-consensus", vf.trust_consensus, "Trust the proxy-chain consensus");
    verify_cmd->add_option("--trust-anchorer", vf.trusted_anchorer, "Required auxiliary node identity");

    // inspect
    auto* inspect = app.add_subcommand("inspect", "Dump chains, ledgers and receipts");
    inspect->require_subcommand(1);
    bool node_view = false, inspect_json = false;
    std::string inspect_path, inspect_registry;
    auto* inspect_chain = inspect->add_subcommand("chain", "Show a node's chain log");
    inspect_chain->add_option("path", inspect_path, "chain.log or node directory");
    inspect_chain->add_flag("--node-view", node_view, "Show phantom parts");
    auto* inspect_ledger = inspect->add_subcommand("ledger", "Show the mock public ledger");
    inspect_ledger->add_option("path", inspect_path, "ledger file");
    auto* inspect_receipt = inspect->add_subcommand("receipt", "Show a receipt or auxiliary receipt");
    inspect_receipt->add_option("path", inspect_path, "receipt file")->required();
    inspect_receipt->add_option("--registry", inspect_registry);
    for (auto* s : {inspect_chain, inspect_ledger, inspect_receipt}) s->add_flag("--json", inspect_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kMalformed;
    }

    try {
        if (*keys_gen) return cmd_keys_gen(common, gen);
        if (*keys_list) return cmd_keys_list(common, list_json);
        if (*sim_cmd) return cmd_sim(common, *sim_cmd, sim_flags);
        if (*verify_cmd) return cmd_verify(common, vf);
        if (*inspect_chain) return cmd_inspect_chain(common, inspect_path, node_view, inspect_json);
        if (*inspect_ledger) return cmd_inspect_ledger(common, inspect_path, inspect_json);
        if (*inspect_receipt) return cmd_inspect_receipt(common, inspect_path, inspect_registry, inspect_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
    return kMalformed;
}
