#pragma once

#include "mobileba/core.hpp"
#include "mobileba/netgraph.hpp"
#include "mobileba/protocol.hpp"
#include "mobileba/relcomm.hpp"

#include <memory>

namespace mobileba::sim
{

enum class ProtocolKind
{
    Bare,   // complete network, one physical round per protocol round
    Lifted, // protocol rounds carried by a (T,K) scheme
};

/// Everything about a run except the adversary.
struct Setup
{
    ProtocolKind kind = ProtocolKind::Bare;
    net::Network network;
    mba::ProtocolParams params;
    std::shared_ptr<const relcomm::CommScheme> scheme; // lifted only
    Value source_value;
    int rounds = 0; // physical rounds

    int n() const { return params.n(); }
    int T() const { return kind == ProtocolKind::Lifted ? scheme->rounds() : 1; }
    int K() const { return kind == ProtocolKind::Lifted ? scheme->window() : 1; }
};

/// Bare protocol on K_n; rounds = 0 means 2n.
Setup bare_setup(const mba::ProtocolParams &params, Value source_value, int rounds = 0);
/// Lifted protocol; rounds = 0 means 2nT.
Setup lifted_setup(const relcomm::LiftedProtocol &lifted, Value source_value, int rounds = 0);

} // namespace mobileba::sim
