#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "notaria/crypto.hpp"
#include "notaria/registry.hpp"
#include "notaria/verify.hpp"

namespace fixture {

using namespace notaria;

inline crypto::KeyPair keys(const std::string& label, std::uint64_t i) {
    Bytes material(8);
    for (int b = 0; b < 8; ++b) material[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(i >> (8 * b));
    return crypto::keygen(crypto::derive_seed("test." + label, material));
}

/// Small deterministic population registered with a CA.
struct Population {
    crypto::KeyPair ca = keys("ca", 0);
    crypto::KeyPair aux = keys("aux", 0);
    std::vector<crypto::KeyPair> nodes;
    std::vector<crypto::KeyPair> clients;
    std::shared_ptr<Registry> registry = std::make_shared<Registry>();

    explicit Population(std::size_t n_nodes = 2, std::size_t n_clients = 3) {
        for (std::size_t i = 0; i < n_nodes; ++i) {
            nodes.push_back(keys("node", i));
            registry->add(nodes.back().public_key, Role::Node);
        }
        for (std::size_t i = 0; i < n_clients; ++i) {
            clients.push_back(keys("client", i));
            registry->add(clients.back().public_key, Role::Client);
        }
        registry->add(aux.public_key, Role::Auxiliary);
    }

    verify::TrustAssumptions trust_all() const {
        verify::TrustAssumptions t;
        for (const auto& n : nodes) t.trusted_validators.insert(n.identity);
        t.trust_proxy_consensus = true;
        t.trusted_anchorer = aux.identity;
        return t;
    }
};

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
    Bytes out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng());
    return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& name) {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("notaria-" + name + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixture
