#pragma once

// Internal simulation engine shared by the honest protocol driver and the
// adversarial scenario scripts.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "notaria/anchor.hpp"
#include "notaria/error.hpp"
#include "notaria/nodes.hpp"
#include "notaria/sim.hpp"

namespace notaria::sim::detail {

inline constexpr std::uint64_t kOrigin = 1'700'000'000'000;
inline constexpr std::uint32_t kMaxAttempts = 6;

struct ClientTx {
    std::uint32_t tx_index = 0;
    std::uint32_t attempt = 0;
    Bytes document;
    Digest data_hash;
    Transaction tx;
    std::size_t validator = 0;
    std::optional<FirstReceipt> first;
    std::optional<Timestamp> t1, t2, t3;
    std::optional<std::uint64_t> block;
    bool superseded = false;
    bool abandoned = false;
    /// The block holding this transaction was left out of its anchored epoch.
    bool unanchorable = false;

    bool active() const { return !superseded && !abandoned; }
};

struct ClientActor {
    std::uint32_t index = 0;
    crypto::KeyPair keys;
    std::string name;
    std::vector<ClientTx> txs;
    std::map<std::uint64_t, BlockHeader> headers;
    std::map<std::uint64_t, std::vector<Receipt>> receipts;  // versions, latest last
    std::map<std::uint64_t, std::vector<AuxReceipt>> aux;
};

struct NodeActor {
    std::size_t index = 0;
    std::string name;
    nodes::ServiceNode node;
    bool honest = true;
};

struct Adversary {
    std::optional<std::size_t> drop_node;
    std::optional<std::size_t> silent_node;
    std::optional<std::uint64_t> omit_block;
    bool nodes_collude = false;
};

struct Submission {
    std::uint32_t client;
    std::uint32_t tx_index;
    Timestamp at;
};

class World {
public:
    explicit World(const SimConfig& config);

    // clock and events
    Timestamp now() const { return now_; }
    Timestamp tick_time(std::uint64_t j) const { return {kOrigin + j * cfg.block_interval_ms}; }
    void schedule(Timestamp at, std::function<void()> fn);
    void after(std::uint64_t delay_ms, std::function<void()> fn) { schedule(now_ + delay_ms, std::move(fn)); }
    std::uint64_t delay();
    std::uint64_t max_delay() const { return cfg.message_delay_ms + cfg.delay_jitter_ms; }
    bool dropped();
    void run_loop();

    // workload
    std::vector<Submission> random_workload();
    void schedule_workload(const std::vector<Submission>& subs);
    Bytes document_for(std::uint32_t client, std::uint32_t tx_index, std::uint32_t salt = 0) const;

    // protocol steps
    void client_submit(std::uint32_t ci, std::uint32_t tx_index, std::uint32_t attempt, std::size_t validator,
                       Bytes document);
    void resubmit(std::uint32_t ci, std::size_t rec, AnomalyKind why, const std::string& details);
    void node_receive_tx(std::size_t vi, std::uint32_t ci, std::size_t rec);
    void tick(std::uint64_t j);
    void propose(std::size_t committer, nodes::BuildResult result);
    void finalize(nodes::BuildResult result);
    void deliver_block(const nodes::BuildResult& result);
    void client_receive_header(std::uint32_t ci, const BlockHeader& h);
    void client_receive_receipt(std::uint32_t ci, std::uint64_t k, const Receipt& r);
    void client_receive_first(std::uint32_t ci, std::size_t rec, const FirstReceipt& fr);
    void client_receive_reject(std::uint32_t ci, std::size_t rec, ErrorCode code);
    void client_check_block(std::uint32_t ci, std::uint64_t k);
    void client_check_first(std::uint32_t ci, std::size_t rec);
    void client_check_receipt(std::uint32_t ci, std::size_t rec);
    void aux_receive_block(const Block& public_block);
    void try_anchor();
    void client_receive_aux(std::uint32_t ci, const AuxReceipt& aux, bool query);
    void reconcile_epoch(std::size_t epoch_index);
    void client_reconcile_receipts(std::uint32_t ci, std::uint64_t first_k, std::uint64_t last_k);

    // helpers
    std::optional<std::uint64_t> matching_block(const ClientActor& c, const AuxReceipt& aux,
                                                const Receipt** matched = nullptr) const;
    bool work_remaining() const;
    void log(Timestamp t, const std::string& observer, AnomalyKind kind, const std::string& details);
    void trace(const std::string& event, const std::string& details);
    NodeActor& node_by_identity(const Identity& id);
    std::optional<std::uint32_t> client_index(const Identity& id) const;
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
    verify::TrustAssumptions full_trust() const;
    Timestamp cap() const;

    // verification & reporting
    void verify_all();
    SimResult finish();

    SimConfig cfg;
    std::mt19937_64 rng;
    crypto::KeyPair ca;
    std::shared_ptr<Registry> registry;
    std::vector<NodeActor> nodes;
    std::vector<Identity> node_ids;
    crypto::KeyPair aux_keys;
    std::unique_ptr<anchor::AuxiliaryNode> aux;
    std::size_t aux_anomalies_seen = 0;
    anchor::MockLedger ledger;
    std::vector<ClientActor> clients;
    Adversary adversary;
    nodes::ConsensusStub consensus;

    std::vector<Anomaly> anomalies;
    std::vector<std::string> trace_lines;
    std::uint64_t privacy_violations = 0;
    std::uint64_t blocks_built = 0;
    std::size_t pending_submissions = 0;
    std::map<std::uint64_t, std::size_t> acks;
    std::set<std::uint64_t> finalized;
    std::map<std::uint64_t, Timestamp> anchor_times;  // epoch index -> t-bar
    /// Ticks continue while this returns true (scenario scripts extend runs).
    std::function<bool()> extra_work;
    std::optional<AttackReport> attack;

    SimReport report;
    std::vector<ClientEvidence> evidence;

private:
    struct Event {
        std::uint64_t time;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    Timestamp now_{kOrigin};
    std::uint64_t seq_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

// Scenario scripts: each schedules its workload, runs the event loop and
// fills `attack`.
void play_fake_owner(World& w);
void play_ghost_proxy(World& w);
void play_ghost_public(World& w);
void play_dos(World& w, DosVariant variant);

}  // namespace notaria::sim::detail
