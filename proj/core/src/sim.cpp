#include "notaria/sim.hpp"

#include <algorithm>

#include <json.hpp>

#include "notaria/anchor.hpp"
#include "notaria/codec.hpp"
#include "notaria/error.hpp"
#include "sim_world.hpp"

namespace notaria::sim {

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::HappyPath: return "happy_path";
        case Scenario::FakeOwner: return "fake_owner";
        case Scenario::GhostProxy: return "ghost_proxy";
        case Scenario::GhostPublic: return "ghost_public";
        case Scenario::DosDrop: return "dos_drop";
        case Scenario::DosSilentValidator: return "dos_silent_validator";
        case Scenario::DosAuxOmission: return "dos_aux_omission";
        case Scenario::DosCaFlood: return "dos_ca_flood";
    }
    return "unknown";
}

Scenario scenario_from_string(std::string_view name) {
    for (auto s : all_scenarios()) {
        if (to_string(s) == name) return s;
    }
    throw Error(ErrorCode::InvalidConfig, "unknown scenario '" + std::string(name) + "'");
}

std::vector<Scenario> all_scenarios() {
    return {Scenario::HappyPath,          Scenario::FakeOwner,      Scenario::GhostProxy,
            Scenario::GhostPublic,        Scenario::DosDrop,        Scenario::DosSilentValidator,
            Scenario::DosAuxOmission,     Scenario::DosCaFlood};
}

bool is_adversarial(Scenario s) { return s != Scenario::HappyPath; }

std::string_view to_string(AnomalyKind k) {
    switch (k) {
        case AnomalyKind::MissingFirstReceipt: return "MissingFirstReceipt";
        case AnomalyKind::MissingReceipt: return "MissingReceipt";
        case AnomalyKind::ReceiptMismatch: return "ReceiptMismatch";
        case AnomalyKind::HeaderRewrite: return "HeaderRewrite";
        case AnomalyKind::MissingBlock: return "MissingBlock";
        case AnomalyKind::AuxOmission: return "AuxOmission";
        case AnomalyKind::CAUnavailable: return "CAUnavailable";
    }
    return "Unknown";
}

std::string_view to_string(AttackOutcome o) {
    switch (o) {
        case AttackOutcome::Succeeded: return "succeeded";
        case AttackOutcome::Failed: return "failed";
        case AttackOutcome::Detected: return "detected";
    }
    return "unknown";
}

void SimConfig::validate() const {
    auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
    if (num_clients == 0) bad("at least one client required");
    if (num_nodes == 0) bad("at least one service node required");
    if (txs_per_client == 0) bad("txs_per_client must be positive");
    if (block_interval_ms < 100) bad("block interval must be at least 100 ms");
    if (m < 2) bad("epoch length m must be >= 2");
    if (public_block_interval_ms == 0) bad("public block interval must be positive");
    if (8 * (message_delay_ms + delay_jitter_ms) >= block_interval_ms) {
        bad("message delay must stay well below the block interval");
    }
    if (!(drop_probability >= 0.0 && drop_probability < 1.0)) bad("drop probability must lie in [0, 1)");
    nodes::ConsensusStub{quorum}.validate();
    switch (scenario) {
        case Scenario::FakeOwner:
        case Scenario::GhostProxy:
        case Scenario::GhostPublic:
            if (num_clients < 2) bad(std::string(to_string(scenario)) + " needs at least two clients");
            break;
        case Scenario::DosDrop:
        case Scenario::DosSilentValidator:
            if (num_nodes < 2) bad(std::string(to_string(scenario)) + " needs at least two service nodes");
            break;
        default: break;
    }
    if (scenario == Scenario::GhostProxy && rewrites == 0) bad("ghost_proxy needs at least one rewrite");
}

bool SimReport::all_accepted() const {
    if (levels.size() != 3) return false;
    return std::all_of(levels.begin(), levels.end(),
                       [](const LevelOutcome& l) { return l.checked > 0 && l.accepted == l.checked; });
}

std::size_t SimReport::count(AnomalyKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(anomalies.begin(), anomalies.end(), [&](const Anomaly& a) { return a.kind == kind; }));
}

std::vector<std::string> SimReport::observers(AnomalyKind kind) const {
    std::vector<std::string> out;
    for (const auto& a : anomalies) {
        if (a.kind == kind && std::find(out.begin(), out.end(), a.observer) == out.end()) out.push_back(a.observer);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using nlohmann::ordered_json;

ordered_json opt_time(const std::optional<Timestamp>& t) { return t ? ordered_json(t->millis) : ordered_json(); }

ordered_json config_json(const SimConfig& c) {
    return {{"scenario", to_string(c.scenario)},
            {"seed", c.seed},
            {"num_clients", c.num_clients},
            {"num_nodes", c.num_nodes},
            {"txs_per_client", c.txs_per_client},
            {"block_interval_ms", c.block_interval_ms},
            {"m", c.m},
            {"public_block_interval_ms", c.public_block_interval_ms},
            {"message_delay_ms", c.message_delay_ms},
            {"delay_jitter_ms", c.delay_jitter_ms},
            {"drop_probability", c.drop_probability},
            {"quorum", c.quorum},
            {"rewrites", c.rewrites},
            {"forgery_attempts", c.forgery_attempts}};
}

}  // namespace

std::string to_json(const SimReport& r) {
    ordered_json j;
    j["config"] = config_json(r.config);
    j["blocks"] = r.blocks;
    j["epochs"] = r.epochs;
    j["privacy_violations"] = r.privacy_violations;
    j["end_time"] = r.end_time.millis;
    j["all_accepted"] = r.all_accepted();
    j["levels"] = ordered_json::array();
    for (const auto& l : r.levels) {
        j["levels"].push_back(
            {{"level", l.level}, {"checked", l.checked}, {"accepted", l.accepted}, {"failures", l.failures}});
    }
    j["anomalies"] = ordered_json::array();
    for (const auto& a : r.anomalies) {
        j["anomalies"].push_back(
            {{"time", a.time.millis}, {"observer", a.observer}, {"kind", to_string(a.kind)}, {"details", a.details}});
    }
    j["timelines"] = ordered_json::array();
    for (const auto& t : r.timelines) {
        j["timelines"].push_back({{"client", t.client},
                                  {"tx", t.tx},
                                  {"attempt", t.attempt},
                                  {"claimed", t.claimed.millis},
                                  {"t1", opt_time(t.t1)},
                                  {"t2", opt_time(t.t2)},
                                  {"t3", opt_time(t.t3)},
                                  {"block", t.block ? ordered_json(*t.block) : ordered_json()},
                                  {"superseded", t.superseded},
                                  {"abandoned", t.abandoned}});
    }
    if (r.attack) {
        const auto& a = *r.attack;
        ordered_json aj;
        aj["outcome"] = to_string(a.outcome);
        aj["detected"] = a.detected;
        aj["forgery_attempts"] = a.forgery_attempts;
        aj["forgery_acceptances"] = a.forgery_acceptances;
        aj["forged"] = ordered_json::array();
        for (const auto& f : a.forged) {
            aj["forged"].push_back({{"strategy", f.strategy},
                                    {"level", f.verdict.level},
                                    {"accepted", f.verdict.accepted},
                                    {"established_time", f.verdict.established_time.millis},
                                    {"reason", f.verdict.accepted ? ordered_json()
                                                                  : ordered_json(verify::to_string(f.verdict.reason))}});
        }
        aj["witnesses"] = a.witnesses;
        aj["metrics"] = a.metrics;
        aj["notes"] = a.notes;
        j["attack"] = aj;
    } else {
        j["attack"] = nullptr;
    }
    return j.dump(2);
}

namespace detail {

namespace {

Bytes seed_material(std::uint64_t seed, std::uint64_t index) {
    Bytes b;
    codec::put_u64(b, seed);
    codec::put_u64(b, index);
    return b;
}

crypto::KeyPair derive_keys(std::string_view label, std::uint64_t seed, std::uint64_t index) {
    return crypto::keygen(crypto::derive_seed(label, seed_material(seed, index)));
}

AnomalyKind from_monitor(anchor::AnomalyKind k) {
    return k == anchor::AnomalyKind::HeaderRewrite ? AnomalyKind::HeaderRewrite : AnomalyKind::MissingBlock;
}

bool contains_tx(const Receipt& r, const Transaction& tx) {
    return std::find(r.transactions.begin(), r.transactions.end(), tx) != r.transactions.end();
}

}  // namespace

World::World(const SimConfig& config)
    : cfg(config), rng(config.seed), ledger(config.public_block_interval_ms, {kOrigin}), consensus{config.quorum} {
    cfg.validate();
    ca = derive_keys("notaria.sim.ca", cfg.seed, 0);
    registry = std::make_shared<Registry>();

    nodes::NodeConfig node_config;
    node_config.genesis_time = {kOrigin};
    for (std::uint32_t i = 0; i < cfg.num_nodes; ++i) {
        auto keys = derive_keys("notaria.sim.node", cfg.seed, i);
        registry->add(keys.public_key, Role::Node);
        node_ids.push_back(keys.identity);
        nodes.push_back({i, "node:" + std::to_string(i), nodes::ServiceNode(keys, registry, node_config), true});
    }
    std::sort(node_ids.begin(), node_ids.end());

    aux_keys = derive_keys("notaria.sim.aux", cfg.seed, 0);
    registry->add(aux_keys.public_key, Role::Auxiliary);
    aux = std::make_unique<anchor::AuxiliaryNode>(aux_keys, cfg.m);

    for (std::uint32_t i = 0; i < cfg.num_clients; ++i) {
        ClientActor c;
        c.index = i;
        c.keys = derive_keys("notaria.sim.client", cfg.seed, i);
        c.name = "client:" + std::to_string(i);
        registry->add(c.keys.public_key, Role::Client);
        clients.push_back(std::move(c));
    }
}

void World::schedule(Timestamp at, std::function<void()> fn) {
    queue_.push({std::max(at, now_).millis, seq_++, std::move(fn)});
}

std::uint64_t World::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (hi <= lo) return lo;
    return lo + rng() % (hi - lo + 1);
}

std::uint64_t World::delay() { return cfg.message_delay_ms + uniform(0, cfg.delay_jitter_ms); }

bool World::dropped() {
    if (cfg.drop_probability <= 0.0) return false;
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < cfg.drop_probability;
}

Timestamp World::cap() const {
    std::uint64_t ticks = 2 * static_cast<std::uint64_t>(cfg.txs_per_client) + 6 * cfg.m + 6 * kMaxAttempts + 20;
    return {kOrigin + ticks * cfg.block_interval_ms + 3 * cfg.public_block_interval_ms};
}

void World::run_loop() {
    schedule(tick_time(1), [this] { tick(1); });
    const auto limit = cap() + 10 * cfg.public_block_interval_ms;
    while (!queue_.empty()) {
        auto ev = queue_.top();
        queue_.pop();
        if (ev.time > limit.millis) break;
        now_ = {ev.time};
        ev.fn();
    }
}

std::vector<Submission> World::random_workload() {
    std::vector<Submission> subs;
    const std::uint64_t window = std::max<std::uint64_t>(2, cfg.txs_per_client);
    const auto bi = cfg.block_interval_ms;
    for (std::uint32_t c = 0; c < cfg.num_clients; ++c) {
        for (std::uint32_t j = 0; j < cfg.txs_per_client; ++j) {
            auto u = uniform(0, window - 1);
            auto offset = uniform(bi / 10, 7 * bi / 10);
            subs.push_back({c, j, tick_time(u) + offset});
        }
    }
    return subs;
}

void World::schedule_workload(const std::vector<Submission>& subs) {
    for (const auto& s : subs) {
        ++pending_submissions;
        schedule(s.at, [this, s] {
            --pending_submissions;
            client_submit(s.client, s.tx_index, 0, s.client % nodes.size(), document_for(s.client, s.tx_index));
        });
    }
}

Bytes World::document_for(std::uint32_t client, std::uint32_t tx_index, std::uint32_t salt) const {
    auto text = "document seed=" + std::to_string(cfg.seed) + " client=" + std::to_string(client) +
                " tx=" + std::to_string(tx_index) + " salt=" + std::to_string(salt);
    return to_bytes(text);
}

void World::trace(const std::string& event, const std::string& details) {
    if (!cfg.trace) return;
    nlohmann::ordered_json j{{"t", now_.millis}, {"event", event}, {"details", details}};
    trace_lines.push_back(j.dump());
}

void World::log(Timestamp t, const std::string& observer, AnomalyKind kind, const std::string& details) {
    anomalies.push_back({t, observer, kind, details});
    trace("anomaly", observer + " " + std::string(to_string(kind)) + ": " + details);
}

NodeActor& World::node_by_identity(const Identity& id) {
    for (auto& n : nodes) {
        if (n.node.identity() == id) return n;
    }
    throw Error(ErrorCode::UnknownIdentity, to_hex(id));
}

std::optional<std::uint32_t> World::client_index(const Identity& id) const {
    for (const auto& c : clients) {
        if (c.keys.identity == id) return c.index;
    }
    return std::nullopt;
}

verify::TrustAssumptions World::full_trust() const {
    verify::TrustAssumptions t;
    t.trusted_validators.insert(node_ids.begin(), node_ids.end());
    t.trust_proxy_consensus = true;
    t.trusted_anchorer = aux->identity();
    return t;
}

bool World::work_remaining() const {
    if (pending_submissions > 0 || (extra_work && extra_work())) return true;
    for (const auto& c : clients) {
        for (const auto& t : c.txs) {
            if (t.active() && !t.t3 && !t.unanchorable) return true;
        }
    }
    return false;
}

void World::client_submit(std::uint32_t ci, std::uint32_t tx_index, std::uint32_t attempt, std::size_t validator,
                          Bytes document) {
    auto& c = clients[ci];
    ClientTx rec;
    rec.tx_index = tx_index;
    rec.attempt = attempt;
    rec.data_hash = crypto::hash(document);
    rec.tx = make_transaction(c.keys, document, now_);
    rec.document = std::move(document);
    rec.validator = validator % nodes.size();
    c.txs.push_back(std::move(rec));
    const auto r = c.txs.size() - 1;
    const auto v = c.txs[r].validator;
    trace("submit", c.name + " tx " + std::to_string(tx_index) + " attempt " + std::to_string(attempt) + " to " +
                        nodes[v].name);

    after(4 * max_delay() + 500, [this, ci, r] { client_check_first(ci, r); });
    if (dropped()) {
        trace("drop", "submission from " + c.name);
        return;
    }
    after(delay(), [this, v, ci, r] { node_receive_tx(v, ci, r); });
}

void World::resubmit(std::uint32_t ci, std::size_t r, AnomalyKind why, const std::string& details) {
    auto& c = clients[ci];
    log(now_, c.name, why, details);
    auto& rec = c.txs[r];
    rec.superseded = true;
    if (rec.attempt + 1 >= kMaxAttempts) {
        rec.superseded = false;
        rec.abandoned = true;
        return;
    }
    auto tx_index = rec.tx_index;
    auto attempt = rec.attempt + 1;
    auto validator = (rec.validator + 1) % nodes.size();
    auto document = rec.document;
    client_submit(ci, tx_index, attempt, validator, std::move(document));
}

void World::node_receive_tx(std::size_t vi, std::uint32_t ci, std::size_t r) {
    if (adversary.drop_node && *adversary.drop_node == vi) {
        trace("ignore", nodes[vi].name + " drops transaction from " + clients[ci].name);
        return;
    }
    auto tx = clients[ci].txs[r].tx;
    auto& node = nodes[vi].node;
    FirstReceipt fr;
    try {
        fr = node.validate_transaction(tx, now_);
    } catch (const Error& e) {
        trace("reject", nodes[vi].name + ": " + e.what());
        auto code = e.code();
        after(delay(), [this, ci, r, code] { client_receive_reject(ci, r, code); });
        return;
    }
    if (adversary.silent_node && *adversary.silent_node == vi) {
        node.remove_from_mempool(tx);
    } else {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == vi) continue;
            after(delay(), [this, j, tx] {
                try {
                    nodes[j].node.accept_broadcast(tx, now_);
                } catch (const Error& e) {
                    trace("broadcast-reject", nodes[j].name + ": " + e.what());
                }
            });
        }
    }
    if (dropped()) {
        trace("drop", "first receipt to " + clients[ci].name);
        return;
    }
    after(delay(), [this, ci, r, fr] { client_receive_first(ci, r, fr); });
}

void World::client_receive_first(std::uint32_t ci, std::size_t r, const FirstReceipt& fr) {
    auto& rec = clients[ci].txs[r];
    auto pk = registry->key_for(fr.validator, Role::Node);
    if (!pk || !verify_first_receipt_sig(*pk, fr, rec.tx)) {
        trace("bad-first-receipt", clients[ci].name);
        return;
    }
    if (rec.first) return;
    rec.first = fr;
    rec.t1 = now_;
    auto deadline = rec.tx.claimed_time + (2 * cfg.block_interval_ms + 4 * max_delay() + 500);
    schedule(deadline, [this, ci, r] { client_check_receipt(ci, r); });
}

void World::client_receive_reject(std::uint32_t ci, std::size_t r, ErrorCode code) {
    auto& c = clients[ci];
    auto& rec = c.txs[r];
    if (!rec.active() || rec.first) return;
    if (code == ErrorCode::CAUnavailable) {
        log(now_, c.name, AnomalyKind::CAUnavailable, "validator cannot check revocation status");
        rec.abandoned = true;
        return;
    }
    resubmit(ci, r, AnomalyKind::MissingFirstReceipt, "validator refused: " + std::string(to_string(code)));
}

void World::client_check_first(std::uint32_t ci, std::size_t r) {
    const auto& rec = clients[ci].txs[r];
    if (!rec.active() || rec.first) return;
    resubmit(ci, r, AnomalyKind::MissingFirstReceipt, "no first receipt from " + nodes[rec.validator].name);
}

void World::client_check_receipt(std::uint32_t ci, std::size_t r) {
    const auto& rec = clients[ci].txs[r];
    if (!rec.active() || rec.block) return;
    resubmit(ci, r, AnomalyKind::MissingReceipt, "no receipt within two block intervals");
}

void World::tick(std::uint64_t j) {
    const auto k = nodes.front().node.next_index();
    auto& committer = node_by_identity(nodes::select_committer(node_ids, k));
    const bool epoch_open = k > 1 && (k - 1) % cfg.m != 0;
    try {
        auto result = committer.node.build_block(now_, aux->public_key(), epoch_open);
        ++blocks_built;
        trace("block", committer.name + " built block " + std::to_string(k) + " with " +
                           std::to_string(result.block.phantom.transaction_count()) + " transactions");
        propose(committer.index, std::move(result));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyMempool) throw;
    }
    if (work_remaining() && now_ < cap()) schedule(tick_time(j + 1), [this, j] { tick(j + 1); });
}

void World::propose(std::size_t committer, nodes::BuildResult result) {
    const auto k = result.block.header.index;
    auto shared = std::make_shared<nodes::BuildResult>(std::move(result));
    acks[k] = 1;
    if (consensus.reached(1, nodes.size())) {
        finalize(*shared);
        return;
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == committer) continue;
        after(delay(), [this, j, k, shared] {
            auto res = nodes[j].node.accept_block(shared->block);
            if (!res) {
                trace("block-reject", nodes[j].name + " " + std::string(nodes::to_string(res.reason)));
                return;
            }
            after(delay(), [this, k, shared] {
                if (finalized.contains(k) || !consensus.reached(++acks[k], nodes.size())) return;
                finalize(*shared);
            });
        });
    }
}

void World::finalize(nodes::BuildResult result) {
    finalized.insert(result.block.header.index);
    deliver_block(result);
}

void World::deliver_block(const nodes::BuildResult& result) {
    const auto& h = result.block.header;
    for (std::uint32_t ci = 0; ci < clients.size(); ++ci) {
        after(delay(), [this, ci, h] { client_receive_header(ci, h); });
    }
    for (const auto& [id, receipt] : result.receipts) {
        auto ci = client_index(id);
        if (!ci) continue;
        for (const auto& tx : receipt.transactions) {
            if (tx.client != id) ++privacy_violations;
        }
        after(delay(), [this, c = *ci, k = h.index, receipt] { client_receive_receipt(c, k, receipt); });
    }
    Block public_block{result.block.header, result.block.summaries, {}};
    after(delay(), [this, public_block] { aux_receive_block(public_block); });
}

void World::client_receive_header(std::uint32_t ci, const BlockHeader& h) {
    auto& c = clients[ci];
    auto it = c.headers.find(h.index);
    if (it != c.headers.end()) {
        if (it->second == h) return;
        log(now_, c.name, AnomalyKind::HeaderRewrite, "header for block " + std::to_string(h.index) + " re-signed");
        it->second = h;
    } else {
        c.headers.emplace(h.index, h);
    }
    after(4 * max_delay() + 200, [this, ci, k = h.index] { client_check_block(ci, k); });
}

void World::client_receive_receipt(std::uint32_t ci, std::uint64_t k, const Receipt& r) {
    auto& c = clients[ci];
    c.receipts[k].push_back(r);
    for (auto& rec : c.txs) {
        if (!contains_tx(r, rec.tx)) continue;
        if (!rec.t2) rec.t2 = now_;
        rec.block = k;
    }
}

void World::client_check_block(std::uint32_t ci, std::uint64_t k) {
    auto& c = clients[ci];
    const auto header = c.headers.at(k);
    auto rit = c.receipts.find(k);
    const bool have_receipt = rit != c.receipts.end();
    if (have_receipt) {
        auto v = verify::verify_level2(rit->second.back(), header, *registry, full_trust());
        if (!v.accepted) {
            log(now_, c.name, AnomalyKind::ReceiptMismatch,
                "receipt for block " + std::to_string(k) + " rejected: " + std::string(verify::to_string(v.reason)));
        }
    }
    const auto n = c.txs.size();
    for (std::size_t r = 0; r < n; ++r) {
        const auto& rec = c.txs[r];
        if (!rec.active() || !rec.first || rec.block || rec.tx.claimed_time >= header.created_at) continue;
        auto kind = have_receipt ? AnomalyKind::ReceiptMismatch : AnomalyKind::MissingReceipt;
        resubmit(ci, r, kind, "transaction claimed before t_" + std::to_string(k) + " missing from block");
    }
}

void World::aux_receive_block(const Block& public_block) {
    aux->observe_block(public_block);
    const auto& found = aux->anomalies();
    for (; aux_anomalies_seen < found.size(); ++aux_anomalies_seen) {
        const auto& a = found[aux_anomalies_seen];
        log(now_, "aux", from_monitor(a.kind), "block " + std::to_string(a.k) + ": " + a.details);
    }
    while (aux->epoch_ready()) try_anchor();
}

void World::try_anchor() {
    const auto k0 = aux->last_anchor();
    std::optional<std::uint64_t> omit;
    if (adversary.omit_block && *adversary.omit_block > k0 && *adversary.omit_block <= k0 + cfg.m) {
        omit = adversary.omit_block;
    }
    ledger.set_now(now_);
    auto receipts = aux->anchor_epoch(ledger, omit);
    const auto ei = aux->epochs().size() - 1;
    const auto& epoch = aux->epochs().back();
    const auto tbar = ledger.get(epoch.address).block_time;
    anchor_times[ei] = tbar;
    trace("anchor", "epoch " + std::to_string(ei) + " k0=" + std::to_string(k0) + " t-bar=" +
                        std::to_string(tbar.millis));
    for (const auto& [id, ar] : receipts) {
        auto ci = client_index(id);
        if (!ci) continue;
        schedule(tbar + delay(), [this, c = *ci, ar] { client_receive_aux(c, ar, false); });
    }
    schedule(tbar + max_delay() + 1, [this, ei] { reconcile_epoch(ei); });
    const auto first_k = k0 + 1;
    const auto last_k = k0 + cfg.m;
    schedule(tbar + 6 * max_delay() + 10, [this, first_k, last_k] {
        for (std::uint32_t ci = 0; ci < clients.size(); ++ci) client_reconcile_receipts(ci, first_k, last_k);
    });
}

std::optional<std::uint64_t> World::matching_block(const ClientActor& c, const AuxReceipt& ar,
                                                   const Receipt** matched) const {
    const auto trust = full_trust();
    for (auto k = ar.first_k; k <= ar.last_k; ++k) {
        auto it = c.receipts.find(k);
        if (it == c.receipts.end()) continue;
        for (auto v = it->second.rbegin(); v != it->second.rend(); ++v) {
            if (verify::verify_level3(*v, ar, ledger, *registry, trust).accepted) {
                if (matched) *matched = &*v;
                return k;
            }
        }
    }
    return std::nullopt;
}

void World::client_receive_aux(std::uint32_t ci, const AuxReceipt& ar, bool query) {
    auto& c = clients[ci];
    const Receipt* matched = nullptr;
    auto k = matching_block(c, ar, &matched);
    if (!k) {
        log(now_, c.name, AnomalyKind::ReceiptMismatch, "auxiliary receipt matches no held receipt");
        return;
    }
    for (auto& rec : c.txs) {
        if (contains_tx(*matched, rec.tx) && !rec.t3) rec.t3 = now_;
    }
    c.aux[*k].push_back(ar);
    if (query) return;
    for (auto k2 = ar.first_k; k2 <= ar.last_k; ++k2) {
        if (k2 == *k || !c.receipts.contains(k2) || c.aux.contains(k2)) continue;
        after(delay(), [this, ci, k2] {
            try {
                auto extra = aux->query_aux_receipt(clients[ci].keys.identity, k2);
                after(delay(), [this, ci, extra] { client_receive_aux(ci, extra, true); });
            } catch (const Error& e) {
                trace("aux-query-failed", clients[ci].name + ": " + e.what());
            }
        });
    }
}

void World::reconcile_epoch(std::size_t ei) {
    const auto& epoch = aux->epochs()[ei];
    auto pub = decode<PubData>(ledger.get(epoch.address).payload);
    const auto k0 = pub.last_anchor_index;
    const auto m = pub.epoch_length;
    auto check = [&](const std::string& observer, const std::map<std::uint64_t, BlockHeader>& headers) {
        try {
            if (anchor::build_aux_tree(headers, k0, m).root() != pub.aux_root) {
                log(now_, observer, AnomalyKind::AuxOmission,
                    "anchored root for blocks " + std::to_string(k0 + 1) + ".." + std::to_string(k0 + m) +
                        " does not match the chain");
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::MissingHeader) throw;
        }
    };
    if (!adversary.nodes_collude) {
        for (const auto& n : nodes) {
            std::map<std::uint64_t, BlockHeader> headers;
            for (const auto& b : n.node.chain()) headers.emplace(b.header.index, b.header);
            check(n.name, headers);
        }
    }
    for (const auto& c : clients) check(c.name, c.headers);
}

void World::client_reconcile_receipts(std::uint32_t ci, std::uint64_t first_k, std::uint64_t last_k) {
    auto& c = clients[ci];
    const auto trust = full_trust();
    for (auto k = first_k; k <= last_k; ++k) {
        auto it = c.receipts.find(k);
        if (it == c.receipts.end()) continue;
        auto ait = c.aux.find(k);
        for (const auto& version : it->second) {
            if (ait == c.aux.end()) {
                log(now_, c.name, AnomalyKind::AuxOmission,
                    "block " + std::to_string(k) + " absent from anchored epoch");
                for (auto& rec : c.txs) {
                    if (contains_tx(version, rec.tx)) rec.unanchorable = true;
                }
                break;
            }
            bool ok = std::any_of(ait->second.begin(), ait->second.end(), [&](const AuxReceipt& ar) {
                return verify::verify_level3(version, ar, ledger, *registry, trust).accepted;
            });
            if (!ok) {
                log(now_, c.name, AnomalyKind::ReceiptMismatch,
                    "receipt for block " + std::to_string(k) + " fails reconciliation with the anchored root");
            }
        }
    }
}

void World::verify_all() {
    const auto trust = full_trust();
    std::vector<LevelOutcome> levels{{1, 0, 0, {}}, {2, 0, 0, {}}, {3, 0, 0, {}}};
    auto record = [&](int level, const std::string& who, const verify::Verdict& v) {
        auto& l = levels[static_cast<std::size_t>(level - 1)];
        ++l.checked;
        if (v.accepted) {
            ++l.accepted;
        } else {
            l.failures.push_back(who + ": " + std::string(verify::to_string(v.reason)));
        }
    };

    for (const auto& c : clients) {
        ClientEvidence ce{c.index, c.keys.identity, {}};
        for (const auto& rec : c.txs) {
            report.timelines.push_back({c.index, rec.tx_index, rec.attempt, rec.tx.claimed_time, rec.t1, rec.t2,
                                        rec.t3, rec.block, rec.superseded, rec.abandoned});
            if (!rec.active()) continue;
            const auto who = c.name + " tx " + std::to_string(rec.tx_index);
            const verify::Claim claim{rec.data_hash};
            TxEvidence ev;
            ev.tx = rec.tx_index;
            ev.document = rec.document;
            ev.transaction = rec.tx;
            ev.first_receipt = rec.first;

            record(1, who,
                   rec.first ? verify::verify_level1(rec.tx, *rec.first, *registry, trust, claim)
                             : verify::Verdict::reject(1, verify::Reason::MalformedEvidence));

            // level 2: latest receipt version holding the transaction
            std::optional<std::uint64_t> k2;
            const Receipt* latest = nullptr;
            for (const auto& [k, versions] : c.receipts) {
                for (const auto& v : versions) {
                    if (contains_tx(v, rec.tx)) {
                        k2 = k;
                        latest = &v;
                    }
                }
            }
            if (latest && c.headers.contains(*k2)) {
                ev.block = k2;
                ev.receipt = *latest;
                ev.header = c.headers.at(*k2);
                record(2, who, verify::verify_level2(*latest, *ev.header, *registry, trust, claim));
            } else {
                record(2, who, verify::Verdict::reject(2, verify::Reason::MalformedEvidence));
            }

            // level 3: any receipt version reconciled with a held auxiliary receipt
            std::optional<verify::Verdict> best;
            for (const auto& [k, versions] : c.receipts) {
                auto ait = c.aux.find(k);
                if (ait == c.aux.end()) continue;
                for (const auto& v : versions) {
                    if (!contains_tx(v, rec.tx)) continue;
                    for (const auto& ar : ait->second) {
                        auto verdict = verify::verify_level3(v, ar, ledger, *registry, trust, claim);
                        if (verdict.accepted && !(best && best->accepted)) {
                            best = verdict;
                            ev.block = k;
                            ev.receipt = v;
                            ev.header = c.headers.at(k);
                            ev.aux_receipt = ar;
                        } else if (!best) {
                            best = verdict;
                        }
                    }
                }
            }
            record(3, who, best ? *best : verify::Verdict::reject(3, verify::Reason::MalformedEvidence));
            ce.items.push_back(std::move(ev));
        }
        evidence.push_back(std::move(ce));
    }
    report.levels = std::move(levels);
}

SimResult World::finish() {
    report.config = cfg;
    report.anomalies = anomalies;
    std::stable_sort(report.anomalies.begin(), report.anomalies.end(),
                     [](const Anomaly& a, const Anomaly& b) { return a.time < b.time; });
    report.attack = attack;
    report.blocks = nodes.front().node.chain().size();
    report.epochs = aux->epochs().size();
    report.privacy_violations = privacy_violations;
    report.end_time = now_;

    SimResult out{report, {ca, *registry, aux->identity(), ledger, {}, evidence, trace_lines}};
    for (const auto& n : nodes) out.artifacts.chains.push_back({n.node.identity(), n.node.chain()});
    return out;
}

}  // namespace detail

SimResult run_with_artifacts(const SimConfig& config) {
    detail::World w(config);
    switch (config.scenario) {
        case Scenario::HappyPath:
            w.schedule_workload(w.random_workload());
            w.run_loop();
            break;
        case Scenario::FakeOwner: detail::play_fake_owner(w); break;
        case Scenario::GhostProxy: detail::play_ghost_proxy(w); break;
        case Scenario::GhostPublic: detail::play_ghost_public(w); break;
        case Scenario::DosDrop: detail::play_dos(w, DosVariant::Drop); break;
        case Scenario::DosSilentValidator: detail::play_dos(w, DosVariant::SilentValidator); break;
        case Scenario::DosAuxOmission: detail::play_dos(w, DosVariant::AuxOmission); break;
        case Scenario::DosCaFlood: detail::play_dos(w, DosVariant::CaFlood); break;
    }
    w.verify_all();
    return w.finish();
}

SimReport run(const SimConfig& config) { return run_with_artifacts(config).report; }

SimReport scenario_fake_owner(SimConfig config) {
    config.scenario = Scenario::FakeOwner;
    return run(config);
}

SimReport scenario_ghost_proxy(SimConfig config) {
    config.scenario = Scenario::GhostProxy;
    return run(config);
}

SimReport scenario_ghost_public(SimConfig config) {
    config.scenario = Scenario::GhostPublic;
    return run(config);
}

SimReport scenario_dos(SimConfig config, DosVariant variant) {
    switch (variant) {
        case DosVariant::Drop: config.scenario = Scenario::DosDrop; break;
        case DosVariant::SilentValidator: config.scenario = Scenario::DosSilentValidator; break;
        case DosVariant::AuxOmission: config.scenario = Scenario::DosAuxOmission; break;
        case DosVariant::CaFlood: config.scenario = Scenario::DosCaFlood; break;
    }
    return run(config);
}

}  // namespace notaria::sim
