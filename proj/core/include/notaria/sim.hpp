#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "notaria/crypto.hpp"
#include "notaria/ledger.hpp"
#include "notaria/model.hpp"
#include "notaria/registry.hpp"
#include "notaria/verify.hpp"

// Deterministic discrete-event simulation of clients, service nodes, the
// auxiliary node and the mock public ledger, with scripted adversarial
// scenarios. All durations are simulated milliseconds on a virtual clock.
namespace notaria::sim {

enum class Scenario {
    HappyPath,
    FakeOwner,
    GhostProxy,
    GhostPublic,
    DosDrop,
    DosSilentValidator,
    DosAuxOmission,
    DosCaFlood,
};

std::string_view to_string(Scenario s);
/// Throws InvalidConfig for unknown names.
Scenario scenario_from_string(std::string_view name);
std::vector<Scenario> all_scenarios();
bool is_adversarial(Scenario s);

struct SimConfig {
    std::uint64_t seed = 1;
    std::uint32_t num_clients = 2;
    std::uint32_t num_nodes = 1;
    std::uint32_t txs_per_client = 1;
    std::uint64_t block_interval_ms = 5'000;
    std::uint64_t m = 3;
    std::uint64_t public_block_interval_ms = 600'000;
    /// One-way message delay: base plus uniform jitter in [0, jitter].
    std::uint64_t message_delay_ms = 50;
    std::uint64_t delay_jitter_ms = 0;
    /// Probability that a client submission or its first receipt is lost.
    double drop_probability = 0.0;
    double quorum = 1.0;
    Scenario scenario = Scenario::HappyPath;
    /// Ghost-proxy history rewrites to perform.
    std::uint32_t rewrites = 1;
    /// Randomized path/root forgeries tried in the ghost-public scenario.
    std::uint32_t forgery_attempts = 1'000;
    /// Record an event trace (newline-delimited JSON).
    bool trace = false;

    /// Throws InvalidConfig.
    void validate() const;
};

enum class AnomalyKind {
    MissingFirstReceipt,
    MissingReceipt,
    ReceiptMismatch,
    HeaderRewrite,
    MissingBlock,
    AuxOmission,
    CAUnavailable,
};

std::string_view to_string(AnomalyKind k);

struct Anomaly {
    Timestamp time;
    std::string observer;  // "client:3", "node:0", "aux"
    AnomalyKind kind;
    std::string details;
};

struct TxTimeline {
    std::uint32_t client = 0;
    std::uint32_t tx = 0;
    std::uint32_t attempt = 0;
    Timestamp claimed;
    std::optional<Timestamp> t1;  // first receipt received
    std::optional<Timestamp> t2;  // node receipt received
    std::optional<Timestamp> t3;  // auxiliary receipt received
    std::optional<std::uint64_t> block;
    bool superseded = false;  // replaced by a resubmission
    bool abandoned = false;   // gave up (e.g. CA unavailable)
};

struct LevelOutcome {
    int level = 0;
    std::size_t checked = 0;
    std::size_t accepted = 0;
    std::vector<std::string> failures;
};

enum class AttackOutcome { Succeeded, Failed, Detected };

std::string_view to_string(AttackOutcome o);

struct ForgedVerdict {
    std::string strategy;
    verify::Verdict verdict;
};

struct AttackReport {
    AttackOutcome outcome = AttackOutcome::Failed;
    bool detected = false;
    std::vector<ForgedVerdict> forged;
    std::size_t forgery_attempts = 0;
    std::size_t forgery_acceptances = 0;
    /// Observers expected to log the attack's anomaly.
    std::vector<std::string> witnesses;
    std::map<std::string, std::uint64_t> metrics;
    std::vector<std::string> notes;
};

struct SimReport {
    SimConfig config;
    std::vector<TxTimeline> timelines;
    std::vector<LevelOutcome> levels;  // levels 1, 2, 3
    std::vector<Anomaly> anomalies;
    std::optional<AttackReport> attack;
    std::uint64_t blocks = 0;
    std::uint64_t epochs = 0;
    std::uint64_t privacy_violations = 0;
    Timestamp end_time;

    bool all_accepted() const;
    std::size_t count(AnomalyKind kind) const;
    /// Observers that logged the given anomaly kind.
    std::vector<std::string> observers(AnomalyKind kind) const;
};

std::string to_json(const SimReport& report);

/// Evidence a client holds for one transaction, as handed to a verifier.
struct TxEvidence {
    std::uint32_t tx = 0;
    Bytes document;
    Transaction transaction;
    std::optional<FirstReceipt> first_receipt;
    std::optional<std::uint64_t> block;
    std::optional<Receipt> receipt;
    std::optional<BlockHeader> header;
    std::optional<AuxReceipt> aux_receipt;
};

struct ClientEvidence {
    std::uint32_t index = 0;
    Identity identity;
    std::vector<TxEvidence> items;
};

struct NodeChain {
    Identity identity;
    std::vector<Block> blocks;  // phantom parts included
};

/// Everything a workspace needs to be verified offline.
struct SimArtifacts {
    crypto::KeyPair ca;
    Registry registry;
    Identity anchorer;
    anchor::MockLedger ledger;
    std::vector<NodeChain> chains;
    std::vector<ClientEvidence> clients;
    std::vector<std::string> trace;
};

struct SimResult {
    SimReport report;
    SimArtifacts artifacts;
};

/// Throws InvalidConfig.
SimResult run_with_artifacts(const SimConfig& config);
SimReport run(const SimConfig& config);

// Named scenario entry points; each forces the matching scenario.
SimReport scenario_fake_owner(SimConfig config);
SimReport scenario_ghost_proxy(SimConfig config);
SimReport scenario_ghost_public(SimConfig config);
enum class DosVariant { Drop, SilentValidator, AuxOmission, CaFlood };
SimReport scenario_dos(SimConfig config, DosVariant variant);

}  // namespace notaria::sim
