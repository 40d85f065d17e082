#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flagnet/codes.hpp"
#include "flagnet/flags.hpp"
#include "flagnet/rng.hpp"

namespace flagnet {

/// One in-flight unit: a length-(n+1) payload tagged with the sequence
/// number (1..n) that bounds which projections may touch it.
struct Packet {
    std::size_t seq;
    VectorF payload;
};

enum class NodeRole { source, relay, sink };

struct TopologyNode {
    std::string name;
    NodeRole role;
};

/// Directed link with independent per-packet loss and corruption.
struct TopologyEdge {
    std::size_t from;
    std::size_t to;
    double erasure_p;
    double corruption_p;
};

/// Directed acyclic network with exactly one source and at least one
/// sink. The source has no incoming edges and sinks have no outgoing
/// ones; relays sit in between.
class Topology {
public:
    Topology(std::vector<TopologyNode> nodes, std::vector<TopologyEdge> edges);

    /// source -> R1 -> ... -> Rk -> sink with identical edge settings.
    static Topology line(std::size_t relay_count, double erasure_p, double corruption_p);

    const std::vector<TopologyNode>& nodes() const { return nodes_; }
    const std::vector<TopologyEdge>& edges() const { return edges_; }
    std::size_t source() const { return source_; }
    const std::vector<std::size_t>& sinks() const { return sinks_; }

    /// Node indices in topological order; ties broken by index, so the
    /// processing order is deterministic.
    const std::vector<std::size_t>& order() const { return order_; }

    /// Edge indices leaving each node, in declaration order.
    const std::vector<std::vector<std::size_t>>& out_edges() const { return out_edges_; }

    bool is_lossless() const;

private:
    std::vector<TopologyNode> nodes_;
    std::vector<TopologyEdge> edges_;
    std::size_t source_ = 0;
    std::vector<std::size_t> sinks_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> out_edges_;
};

/// The n packets a source derives from a matrix: packet i carries row
/// i of (I_i | corner_slice(i)) embedded in K^{n+1} (unit coordinate
/// at position i, the slice row after it, zeros before).
std::vector<Packet> source_emit(const UpperTriangular& delta);

/// Coefficient lookup for a relay combination: the scalar applied to
/// the t-th held payload of sequence number j when forming output
/// step i. Called once per (i, j, t), i = 1..n ascending, then j =
/// 1..i ascending, then t ascending; random relays draw from their
/// generator in exactly this order.
using CoefficientFn =
    std::function<std::uint32_t(std::size_t i, std::size_t j, std::size_t t)>;

/// Relay recombination: output packet i is the sum over j <= i and
/// every held payload of seq j of coefficient * projected payload.
/// Always emits n packets (zero payloads when nothing was held).
///
/// Cost accounting, indexed [i-1], accumulated when the pointers are
/// non-null: ops_projected counts n-i+j multiply-adds per term, which
/// sums to i(n+1) - i(i+1)/2 for one payload per seq, while
/// ops_baseline charges the unprojected n+1 per term, i(n+1) total.
/// See the README note on the off-by-one in the per-term count.
std::vector<Packet> node_combine(const Field& field, std::size_t n,
                                 const std::vector<std::vector<VectorF>>& received_by_seq,
                                 const CoefficientFn& coefficient,
                                 std::vector<std::uint64_t>* ops_projected,
                                 std::vector<std::uint64_t>* ops_baseline);

/// Receiver-side span reconstruction: W_i is spanned by every held
/// payload of seq j <= i projected from level j to level i. The chain
/// property (projection of W_i lies in W_{i+1}) holds for any input
/// whatsoever and is re-checked on every call.
std::vector<Subspace> receiver_reconstruct(
    const Field& field, std::size_t n,
    const std::vector<std::vector<VectorF>>& received_by_seq);

enum class TrialResult { success, cell_failure, miscorrection };

/// What one transmission did. Extraction and decoding results are
/// absent when the received spans failed the cell check.
struct TrialOutcome {
    TrialResult result;
    UpperTriangular sent;
    std::optional<UpperTriangular> extracted;
    std::optional<UpperTriangular> recovered;
    /// Multiply-add tallies, indexed [node][step i-1]; nonzero only
    /// for relay nodes.
    std::vector<std::vector<std::uint64_t>> ops_projected;
    std::vector<std::vector<std::uint64_t>> ops_baseline;
};

/// Aggregated campaign results plus one row per trial. Rendering is
/// canonical: equal reports serialize to identical bytes.
struct SimReport {
    std::string code_desc;
    std::string topology_desc;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t cell_failures = 0;
    std::uint64_t miscorrections = 0;
    std::vector<std::string> node_names;
    std::vector<NodeRole> node_roles;
    /// Summed over trials, indexed [node][step i-1].
    std::vector<std::vector<std::uint64_t>> ops_projected;
    std::vector<std::vector<std::uint64_t>> ops_baseline;
    /// Closed-form per-trial costs of a relay holding one payload per
    /// seq: i(n+1) - i(i+1)/2 projected, i(n+1) baseline.
    std::vector<std::uint64_t> expected_projected;
    std::vector<std::uint64_t> expected_baseline;

    struct Row {
        std::uint64_t trial;
        TrialResult result;
        std::string sent;       // packed entries, comma separated
        std::string recovered;  // "-" on cell failure
        std::uint64_t ops_projected;
        std::uint64_t ops_baseline;
    };
    std::vector<Row> rows;

    /// Human-oriented structured text.
    std::string to_text() const;

    /// Machine-oriented tab-separated table, one row per trial.
    std::string to_table() const;
};

const char* to_string(TrialResult result);

/// Runs the full pipeline: source emission, relay recombination in
/// topological order with seeded coefficients, per-edge erasure and
/// corruption, reconstruction at every sink, cell check, extraction,
/// syndrome decoding. Immutable after construction; trials are pure
/// functions of (sent, seed).
class Simulator {
public:
    /// Builds the code's syndrome table once up front.
    Simulator(Topology topology, FlagRankCode code);

    const Topology& topology() const { return topology_; }
    const FlagRankCode& code() const { return code_; }
    const SyndromeTable& table() const { return table_; }

    /// One transmission of a given codeword. A trial never throws on
    /// channel behavior: losses and wrong decodings are outcomes.
    TrialOutcome run_trial(const UpperTriangular& sent, std::uint64_t seed) const;

    /// trials transmissions of uniformly drawn codewords; trial t uses
    /// the derived seed mix(seed, t), so reports are reproducible.
    SimReport run_campaign(std::uint64_t trials, std::uint64_t seed) const;

private:
    TrialOutcome run_trial_(const UpperTriangular& sent, Rng& rng) const;

    Topology topology_;
    FlagRankCode code_;
    SyndromeTable table_;
};

}  // namespace flagnet
