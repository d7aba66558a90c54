// Scripted adversarial runs. Each script drives the shared world, then
// assembles forged evidence and checks it with the ordinary verifier.

#include <algorithm>

#include "notaria/anchor.hpp"
#include "notaria/error.hpp"
#include "sim_world.hpp"

namespace notaria::sim::detail {

namespace {

struct Rewrite {
    Transaction ghost;
    Digest ghost_hash;
    nodes::BuildResult rebuilt;  // the rewritten block k
};

// Every node drops blocks >= k, then the original committers re-issue them
// with a backdated transaction of client 0 slipped into block k.
Rewrite rewrite_from(World& w, std::uint64_t k, std::uint32_t salt) {
    std::vector<Block> removed;
    for (auto& n : w.nodes) {
        auto dropped = n.node.truncate_from(k);
        if (removed.empty()) removed = std::move(dropped);
    }
    if (removed.empty()) throw Error(ErrorCode::InvalidConfig, "nothing to rewrite at block " + std::to_string(k));

    auto& c = w.clients[0];
    auto start = w.nodes.front().node.interval_start();
    auto doc = w.document_for(0, 1'000'000 + salt, salt);
    Rewrite out;
    out.ghost = make_transaction(c.keys, doc, start + w.cfg.block_interval_ms / 3);
    out.ghost_hash = crypto::hash(doc);

    for (const auto& b : removed) {
        auto& committer = w.node_by_identity(b.header.committer);
        for (const auto& [id, txs] : b.phantom.transactions) {
            for (const auto& tx : txs) committer.node.insert_unchecked(tx);
        }
        if (b.header.index == k) committer.node.insert_unchecked(out.ghost);
        auto result = committer.node.build_block(b.header.created_at, w.aux->public_key(), true);
        for (auto& n : w.nodes) {
            if (n.index != committer.index) n.node.accept_block(result.block);
        }
        w.trace("rewrite", committer.name + " re-issued block " + std::to_string(b.header.index));
        w.deliver_block(result);
        if (b.header.index == k) out.rebuilt = result;
    }
    return out;
}

void add_forged(AttackReport& a, const std::string& strategy, const verify::Verdict& v) {
    a.forged.push_back({strategy, v});
    ++a.forgery_attempts;
    if (v.accepted) ++a.forgery_acceptances;
}

std::vector<std::string> client_names(const World& w) {
    std::vector<std::string> out;
    for (const auto& c : w.clients) out.push_back(c.name);
    return out;
}

bool logged_by_all(const World& w, AnomalyKind kind, const std::vector<std::string>& who) {
    return std::all_of(who.begin(), who.end(), [&](const std::string& name) {
        return std::any_of(w.anomalies.begin(), w.anomalies.end(),
                           [&](const Anomaly& a) { return a.kind == kind && a.observer == name; });
    });
}

Digest random_digest(std::mt19937_64& rng) {
    Digest d;
    for (auto& b : d.bytes) b = static_cast<std::uint8_t>(rng());
    return d;
}

}  // namespace

void play_fake_owner(World& w) {
    w.schedule_workload(w.random_workload());
    w.run_loop();

    AttackReport a;
    auto& owner = w.clients[0];
    auto& thief = w.clients[1];
    const ClientTx* original = nullptr;
    for (const auto& rec : owner.txs) {
        if (rec.active() && rec.block && owner.headers.contains(*rec.block)) {
            original = &rec;
            break;
        }
    }
    if (!original) {
        a.notes.push_back("owner transaction never reached a block; nothing to steal");
        w.attack = a;
        return;
    }

    // Colluders: the validator, the committer and the auxiliary node.
    const auto& colluder = w.nodes.front().node.keys();
    const auto k = *original->block;
    const auto& real_header = owner.headers.at(k);
    const verify::Claim claim{original->data_hash};
    const auto trust = w.full_trust();

    struct Strategy {
        std::string name;
        Transaction tx;
    };
    std::vector<Strategy> strategies;
    {
        Transaction t = original->tx;
        t.client = thief.keys.identity;
        strategies.push_back({"reuse_data_sig", sign_transaction(thief.keys, t)});
    }
    {
        Transaction t = original->tx;
        t.client = thief.keys.identity;
        strategies.push_back({"swap_identity", t});
    }
    {
        Transaction t = original->tx;
        t.client = thief.keys.identity;
        strategies.push_back({"resign_by_nodes", sign_transaction(colluder, t)});
    }
    {
        Transaction t = original->tx;
        t.client = thief.keys.identity;
        for (auto& b : t.data_sig.bytes) b = static_cast<std::uint8_t>(w.rng());
        strategies.push_back({"random_data_sig", sign_transaction(thief.keys, t)});
    }

    const auto k0 = ((k - 1) / w.cfg.m) * w.cfg.m;
    for (const auto& s : strategies) {
        auto fr = make_first_receipt(colluder, s.tx);
        add_forged(a, s.name + "/level1", verify::verify_level1(s.tx, fr, *w.registry, trust, claim));

        Receipt receipt;
        receipt.transactions = {s.tx};
        receipt.client_root = nodes::client_root(receipt.transactions);
        auto root = nodes::block_root({receipt.client_root});
        receipt = sign_receipt(colluder, receipt);
        BlockHeader header = real_header;
        header.block_root = root;
        header = sign_header(colluder, header);
        add_forged(a, s.name + "/level2", verify::verify_level2(receipt, header, *w.registry, trust, claim));

        std::map<std::uint64_t, BlockHeader> headers;
        for (auto j = k0 + 1; j <= k0 + w.cfg.m; ++j) {
            headers[j] = j == k ? header : (owner.headers.contains(j) ? owner.headers.at(j) : header);
        }
        auto tree = anchor::build_aux_tree(headers, k0, w.cfg.m);
        auto pub = anchor::make_pub_data(w.aux_keys.identity, k0, w.cfg.m, tree.root());
        w.ledger.set_now(w.now());
        AuxReceipt ar;
        ar.first_k = k0 + 1;
        ar.last_k = k0 + w.cfg.m;
        ar.pub_data = pub;
        ar.address = anchor::commit(w.ledger, pub);
        ar.path = tree.path(anchor::aux_leaf_index(k, k0));
        ar = sign_aux_receipt(w.aux_keys, ar);
        add_forged(a, s.name + "/level3",
                   verify::verify_level3(receipt, ar, w.ledger, *w.registry, trust, claim));
    }

    a.outcome = a.forgery_acceptances == 0 ? AttackOutcome::Failed : AttackOutcome::Succeeded;
    a.notes.push_back("forged ownership rejected at the transaction check: the data signature binds the owner key");
    a.metrics["strategies"] = strategies.size();
    w.attack = a;
}

void play_ghost_proxy(World& w) {
    w.adversary.nodes_collude = true;
    const auto bi = w.cfg.block_interval_ms;
    std::vector<Submission> subs;
    for (std::uint32_t c = 0; c < w.cfg.num_clients; ++c) {
        subs.push_back({c, 0, w.tick_time(0) + w.uniform(bi / 10, 6 * bi / 10)});
        for (std::uint32_t j = 1; j < w.cfg.txs_per_client; ++j) {
            subs.push_back({c, j, w.tick_time(w.uniform(1, w.cfg.m - 1)) + w.uniform(bi / 2, 7 * bi / 10)});
        }
    }
    w.schedule_workload(subs);

    std::vector<Rewrite> rewrites;
    for (std::uint32_t i = 0; i < w.cfg.rewrites; ++i) {
        auto at = w.tick_time(1) + (bi / 5 + i * (bi / 5) / w.cfg.rewrites);
        w.schedule(at, [&w, &rewrites, i] { rewrites.push_back(rewrite_from(w, 1, i)); });
    }
    w.run_loop();

    AttackReport a;
    a.witnesses = client_names(w);
    const auto trust = w.full_trust();
    const auto& owner = w.clients[0];
    bool any_accepted = false;
    for (const auto& rw : rewrites) {
        const verify::Claim claim{rw.ghost_hash};
        auto fr = make_first_receipt(w.nodes.front().node.keys(), rw.ghost);
        auto v1 = verify::verify_level1(rw.ghost, fr, *w.registry, trust, claim);
        add_forged(a, "backdated_tx/level1", v1);

        const auto& receipt = rw.rebuilt.receipts.at(owner.keys.identity);
        auto v2 = verify::verify_level2(receipt, owner.headers.at(1), *w.registry, trust, claim);
        add_forged(a, "backdated_tx/level2", v2);
        any_accepted = any_accepted || v2.accepted;

        verify::Verdict v3 = verify::Verdict::reject(3, verify::Reason::MalformedEvidence);
        if (auto it = owner.aux.find(1); it != owner.aux.end()) {
            for (const auto& ar : it->second) {
                v3 = verify::verify_level3(receipt, ar, w.ledger, *w.registry, trust, claim);
                if (v3.accepted) break;
            }
        }
        add_forged(a, "backdated_tx/level3", v3);
    }

    // Receipts handed out before the rewrite must no longer reconcile.
    std::uint64_t stale = 0, stale_rejected = 0;
    for (const auto& c : w.clients) {
        auto it = c.receipts.find(1);
        if (it == c.receipts.end() || it->second.size() < 2) continue;
        auto ait = c.aux.find(1);
        for (std::size_t v = 0; v + 1 < it->second.size(); ++v) {
            ++stale;
            bool ok = ait != c.aux.end() &&
                      std::any_of(ait->second.begin(), ait->second.end(), [&](const AuxReceipt& ar) {
                          return verify::verify_level3(it->second[v], ar, w.ledger, *w.registry, trust).accepted;
                      });
            if (!ok) ++stale_rejected;
        }
    }
    a.metrics["stale_receipts"] = stale;
    a.metrics["stale_receipts_rejected"] = stale_rejected;
    a.detected = logged_by_all(w, AnomalyKind::HeaderRewrite, a.witnesses);
    a.outcome = any_accepted ? AttackOutcome::Succeeded : AttackOutcome::Failed;
    a.notes.push_back("colluding nodes can backdate before anchoring; header-caching clients see the rewrite");
    w.attack = a;
}

void play_ghost_public(World& w) {
    w.adversary.nodes_collude = true;
    const auto bi = w.cfg.block_interval_ms;
    const auto m = w.cfg.m;
    std::vector<Submission> subs;
    subs.push_back({1, 0, w.tick_time(0) + bi / 5});
    subs.push_back({0, 0, w.tick_time(m - 1) + bi / 5});
    for (std::uint32_t c = 0; c < w.cfg.num_clients; ++c) {
        for (std::uint32_t j = 0; j < w.cfg.txs_per_client; ++j) {
            if (j == 0 && c < 2) continue;
            subs.push_back({c, j, w.tick_time(w.uniform(0, m - 1)) + w.uniform(bi / 10, 7 * bi / 10)});
        }
    }
    w.schedule_workload(subs);

    AttackReport a;
    const auto attack_at = w.tick_time(m) + (w.cfg.public_block_interval_ms + 1000);
    w.schedule(attack_at, [&w, &a, m] {
        const auto trust = w.full_trust();
        auto& owner = w.clients[0];
        auto ait = owner.aux.find(m);
        if (ait == owner.aux.end() || !owner.headers.contains(m)) {
            a.notes.push_back("target block was not anchored before the attack window");
            return;
        }
        const auto honest_aux = ait->second.front();
        const auto original_tbar = w.ledger.get(honest_aux.address).block_time;
        std::map<std::uint64_t, BlockHeader> original_headers = owner.headers;

        auto rw = rewrite_from(w, m, 0);
        const verify::Claim claim{rw.ghost_hash};
        const auto& receipt = rw.rebuilt.receipts.at(owner.keys.identity);
        const auto k0 = honest_aux.pub_data.last_anchor_index;

        auto headers = original_headers;
        headers[m] = rw.rebuilt.block.header;
        auto new_tree = anchor::build_aux_tree(headers, k0, m);
        auto old_tree = anchor::build_aux_tree(original_headers, k0, m);
        const auto leaf = anchor::aux_leaf_index(m, k0);

        auto forge = [&](PubData pub, LedgerAddress addr, merkle::MerklePath path) {
            AuxReceipt ar = honest_aux;
            ar.pub_data = pub;
            ar.address = addr;
            ar.path = std::move(path);
            return sign_aux_receipt(w.aux_keys, ar);
        };
        auto backdated = [&](const verify::Verdict& v) { return v.accepted && v.established_time <= original_tbar; };

        std::size_t backdating = 0;
        auto try_strategy = [&](const std::string& name, const AuxReceipt& ar) {
            auto v = verify::verify_level3(receipt, ar, w.ledger, *w.registry, trust, claim);
            a.forged.push_back({name, v});
            ++a.forgery_attempts;
            if (backdated(v)) {
                ++a.forgery_acceptances;
                ++backdating;
            }
        };

        try_strategy("recomputed_tree_old_anchor",
                     forge(honest_aux.pub_data, honest_aux.address, new_tree.path(leaf)));
        auto substituted = honest_aux.pub_data;
        substituted.aux_root = new_tree.root();
        try_strategy("substituted_pub_data", forge(substituted, honest_aux.address, new_tree.path(leaf)));
        try_strategy("honest_aux_path", honest_aux);

        // Randomized path and root forgeries against the original anchor.
        const auto max_len = merkle::max_path_length(2 * m);
        std::vector<Digest> honest_nodes;
        for (const auto& level : old_tree.levels()) honest_nodes.insert(honest_nodes.end(), level.begin(), level.end());
        std::size_t random_accepted = 0;
        for (std::uint32_t i = 0; i < w.cfg.forgery_attempts; ++i) {
            auto pub = honest_aux.pub_data;
            merkle::MerklePath path;
            switch (w.rng() % 5) {
                case 0:
                    path = new_tree.path(leaf);
                    if (!path.empty()) path.steps[w.rng() % path.size()].sibling = random_digest(w.rng);
                    break;
                case 1: {
                    auto len = 1 + w.rng() % max_len;
                    for (std::size_t s = 0; s < len; ++s) {
                        path.steps.push_back({random_digest(w.rng), w.rng() % 2 ? merkle::Side::Right : merkle::Side::Left});
                    }
                    break;
                }
                case 2:
                    path = old_tree.path(leaf);
                    if (!path.empty()) path.steps[w.rng() % path.size()].sibling = honest_nodes[w.rng() % honest_nodes.size()];
                    break;
                case 3:
                    path = new_tree.path(leaf);
                    for (auto& step : path.steps) {
                        if (w.rng() % 2) step.side = step.side == merkle::Side::Left ? merkle::Side::Right : merkle::Side::Left;
                    }
                    break;
                default:
                    pub.aux_root = random_digest(w.rng);
                    path = new_tree.path(leaf);
                    break;
            }
            auto v = verify::verify_level3(receipt, forge(pub, honest_aux.address, path), w.ledger, *w.registry, trust,
                                           claim);
            ++a.forgery_attempts;
            if (backdated(v)) {
                ++a.forgery_acceptances;
                ++random_accepted;
            }
        }

        // Fresh anchoring of the rewritten epoch only proves a later time.
        auto late_pub = anchor::make_pub_data(w.aux_keys.identity, k0, m, new_tree.root());
        w.ledger.set_now(w.now());
        auto late_addr = anchor::commit(w.ledger, late_pub);
        try_strategy("late_reanchor", forge(late_pub, late_addr, new_tree.path(leaf)));

        a.metrics["random_attempts"] = w.cfg.forgery_attempts;
        a.metrics["random_acceptances"] = random_accepted;
        a.metrics["original_anchor_time"] = original_tbar.millis;
        a.outcome = backdating == 0 ? AttackOutcome::Failed : AttackOutcome::Succeeded;
        a.notes.push_back("anchored roots pin block roots; re-anchoring only establishes a later time");
    });
    w.run_loop();
    w.attack = a;
}

void play_dos(World& w, DosVariant variant) {
    AttackReport a;
    const auto bi = w.cfg.block_interval_ms;
    std::function<void()> poll;
    bool flooded = false;

    switch (variant) {
        case DosVariant::Drop:
        case DosVariant::SilentValidator:
            if (variant == DosVariant::Drop) {
                w.adversary.drop_node = 0;
            } else {
                w.adversary.silent_node = 0;
            }
            w.nodes[0].honest = false;
            for (const auto& c : w.clients) {
                if (c.index % w.nodes.size() == 0) a.witnesses.push_back(c.name);
            }
            w.schedule_workload(w.random_workload());
            break;
        case DosVariant::AuxOmission:
            w.adversary.omit_block = 1;
            for (const auto& n : w.nodes) a.witnesses.push_back(n.name);
            for (const auto& c : w.clients) a.witnesses.push_back(c.name);
            w.schedule_workload(w.random_workload());
            break;
        case DosVariant::CaFlood:
            w.schedule_workload(w.random_workload());
            w.extra_work = [&flooded] { return !flooded; };
            poll = [&] {
                bool phase_one_done = true;
                for (const auto& c : w.clients) {
                    for (const auto& t : c.txs) {
                        if (t.active() && !t.t3) phase_one_done = false;
                    }
                }
                if (!phase_one_done) {
                    w.after(bi, poll);
                    return;
                }
                flooded = true;
                w.trace("flood", "certificate authority unreachable");
                for (auto& n : w.nodes) n.node.set_ca_available(false);
                const auto newcomer = "client:" + std::to_string(w.clients.size());
                w.log(w.now(), newcomer, AnomalyKind::CAUnavailable, "registration refused: CA unreachable");
                a.witnesses.push_back(newcomer);
                for (std::uint32_t ci = 0; ci < w.clients.size(); ++ci) {
                    a.witnesses.push_back(w.clients[ci].name);
                    w.client_submit(ci, w.cfg.txs_per_client, 0, ci % w.nodes.size(),
                                    w.document_for(ci, w.cfg.txs_per_client));
                }
            };
            w.schedule(w.tick_time(1), poll);
            break;
    }
    w.run_loop();

    switch (variant) {
        case DosVariant::Drop:
            a.detected = logged_by_all(w, AnomalyKind::MissingFirstReceipt, a.witnesses);
            a.notes.push_back("clients of the dropping validator resubmit elsewhere");
            break;
        case DosVariant::SilentValidator: {
            bool all = std::all_of(a.witnesses.begin(), a.witnesses.end(), [&](const std::string& name) {
                return std::any_of(w.anomalies.begin(), w.anomalies.end(), [&](const Anomaly& an) {
                    return an.observer == name &&
                           (an.kind == AnomalyKind::MissingReceipt || an.kind == AnomalyKind::ReceiptMismatch);
                });
            });
            a.detected = all;
            a.notes.push_back("first receipt without inclusion is caught by the missing node receipt");
            break;
        }
        case DosVariant::AuxOmission:
            a.detected = logged_by_all(w, AnomalyKind::AuxOmission, a.witnesses);
            a.notes.push_back("every observer recomputes the anchored root from its own headers");
            break;
        case DosVariant::CaFlood: {
            a.detected = logged_by_all(w, AnomalyKind::CAUnavailable, a.witnesses);
            std::uint64_t refused = 0;
            for (const auto& c : w.clients) {
                for (const auto& t : c.txs) refused += t.abandoned ? 1 : 0;
            }
            a.metrics["refused_submissions"] = refused;
            a.metrics["refused_registrations"] = 1;
            a.notes.push_back("new registrations and submissions stall; existing evidence stays verifiable");
            break;
        }
    }
    a.outcome = a.detected ? AttackOutcome::Detected : AttackOutcome::Succeeded;
    w.attack = a;
}

}  // namespace notaria::sim::detail
