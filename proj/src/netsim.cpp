#include "flagnet/netsim.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "flagnet/errors.hpp"

namespace flagnet {

Topology::Topology(std::vector<TopologyNode> nodes, std::vector<TopologyEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    if (nodes_.empty()) throw DomainError("topology has no nodes");
    for (std::size_t a = 0; a < nodes_.size(); ++a) {
        if (nodes_[a].name.empty()) throw DomainError("node names must be nonempty");
        for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
            if (nodes_[a].name == nodes_[b].name)
                throw DomainError("duplicate node name \"" + nodes_[a].name + "\"");
        }
    }

    std::size_t sources = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].role == NodeRole::source) {
            source_ = i;
            ++sources;
        } else if (nodes_[i].role == NodeRole::sink) {
            sinks_.push_back(i);
        }
    }
    if (sources != 1)
        throw DomainError("topology needs exactly one source, found " + std::to_string(sources));
    if (sinks_.empty()) throw DomainError("topology needs at least one sink");

    out_edges_.assign(nodes_.size(), {});
    std::vector<std::size_t> indegree(nodes_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const TopologyEdge& edge = edges_[e];
        if (edge.from >= nodes_.size() || edge.to >= nodes_.size())
            throw DomainError("edge endpoint out of range");
        if (edge.from == edge.to) throw DomainError("self-loop edges are not allowed");
        if (edge.to == source_) throw DomainError("the source cannot have incoming edges");
        if (nodes_[edge.from].role == NodeRole::sink)
            throw DomainError("sinks cannot have outgoing edges");
        const auto valid_p = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!valid_p(edge.erasure_p) || !valid_p(edge.corruption_p))
            throw DomainError("probabilities must lie in [0, 1]");
        out_edges_[edge.from].push_back(e);
        ++indegree[edge.to];
    }

    // Kahn's algorithm, always taking the smallest ready index, so the
    // processing order is a pure function of the declaration.
    std::vector<bool> placed(nodes_.size(), false);
    for (std::size_t round = 0; round < nodes_.size(); ++round) {
        std::size_t pick = nodes_.size();
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!placed[i] && indegree[i] == 0) {
                pick = i;
                break;
            }
        }
        if (pick == nodes_.size()) throw DomainError("topology contains a cycle");
        placed[pick] = true;
        order_.push_back(pick);
        for (std::size_t e : out_edges_[pick]) --indegree[edges_[e].to];
    }
}

Topology Topology::line(std::size_t relay_count, double erasure_p, double corruption_p) {
    std::vector<TopologyNode> nodes;
    nodes.push_back({"S", NodeRole::source});
    for (std::size_t i = 1; i <= relay_count; ++i)
        nodes.push_back({"R" + std::to_string(i), NodeRole::relay});
    nodes.push_back({"T", NodeRole::sink});
    std::vector<TopologyEdge> edges;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        edges.push_back({i, i + 1, erasure_p, corruption_p});
    return Topology(std::move(nodes), std::move(edges));
}

bool Topology::is_lossless() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const TopologyEdge& e) {
        return e.erasure_p == 0.0 && e.corruption_p == 0.0;
    });
}

std::vector<Packet> source_emit(const UpperTriangular& delta) {
    const std::size_t n = delta.n();
    std::vector<Packet> packets;
    packets.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        VectorF payload(delta.field(), n + 1);
        payload.set_code(i - 1, 1);
        for (std::size_t c = i; c <= n; ++c) payload.set_code(c, delta.code_at(i - 1, c - 1));
        packets.push_back(Packet{i, std::move(payload)});
    }
    return packets;
}

std::vector<Packet> node_combine(const Field& field, std::size_t n,
                                 const std::vector<std::vector<VectorF>>& received_by_seq,
                                 const CoefficientFn& coefficient,
                                 std::vector<std::uint64_t>* ops_projected,
                                 std::vector<std::uint64_t>* ops_baseline) {
    if (received_by_seq.size() != n)
        throw DomainError("expected one payload list per sequence number");
    for (const std::vector<VectorF>& list : received_by_seq) {
        for (const VectorF& v : list) {
            if (v.field() != field || v.size() != n + 1)
                throw DomainError("payload has a different size or field");
        }
    }
    if (ops_projected && ops_projected->size() != n)
        throw DomainError("projected counter must have one slot per step");
    if (ops_baseline && ops_baseline->size() != n)
        throw DomainError("baseline counter must have one slot per step");

    std::vector<Packet> outputs;
    outputs.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        VectorF z(field, n + 1);
        for (std::size_t j = 1; j <= i; ++j) {
            const std::vector<VectorF>& held = received_by_seq[j - 1];
            for (std::size_t t = 0; t < held.size(); ++t) {
                const std::uint32_t a = coefficient(i, j, t);
                if (a >= field.order()) throw DomainError("coefficient code out of range");
                const VectorF& y = held[t];
                // The projection zeroes 0-based coordinates j..i-1;
                // only the survivors are touched.
                for (std::size_t c = 0; c < j; ++c)
                    z.set_code(c, field.add_code(z.code_at(c), field.mul_code(a, y.code_at(c))));
                for (std::size_t c = i; c <= n; ++c)
                    z.set_code(c, field.add_code(z.code_at(c), field.mul_code(a, y.code_at(c))));
                if (ops_projected) (*ops_projected)[i - 1] += n - i + j;
                if (ops_baseline) (*ops_baseline)[i - 1] += n + 1;
            }
        }
        outputs.push_back(Packet{i, std::move(z)});
    }
    return outputs;
}

std::vector<Subspace> receiver_reconstruct(
    const Field& field, std::size_t n,
    const std::vector<std::vector<VectorF>>& received_by_seq) {
    if (received_by_seq.size() != n)
        throw DomainError("expected one payload list per sequence number");

    std::vector<Subspace> components;
    components.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 1; j <= i; ++j) count += received_by_seq[j - 1].size();
        MatrixF rows(field, count, n + 1);
        std::size_t r = 0;
        for (std::size_t j = 1; j <= i; ++j) {
            for (const VectorF& v : received_by_seq[j - 1]) {
                if (v.field() != field || v.size() != n + 1)
                    throw DomainError("payload has a different size or field");
                rows.set_row(r++, project(v, j, i));
            }
        }
        components.push_back(Subspace::from_rows(rows));
    }

    // The chain property holds for arbitrary receptions; a violation
    // would be an implementation bug, not a channel effect.
    for (std::size_t i = 0; i + 1 < components.size(); ++i) {
        const Subspace image = project(components[i], i + 1, i + 2);
        if (subspace_sum(image, components[i + 1]).dim() != components[i + 1].dim())
            throw Error("reconstructed spans violate the chain property");
    }
    return components;
}

const char* to_string(TrialResult result) {
    switch (result) {
        case TrialResult::success: return "success";
        case TrialResult::cell_failure: return "cell-failure";
        case TrialResult::miscorrection: return "miscorrection";
    }
    return "unknown";
}

Simulator::Simulator(Topology topology, FlagRankCode code)
    : topology_(std::move(topology)), code_(std::move(code)), table_(code_) {}

TrialOutcome Simulator::run_trial(const UpperTriangular& sent, std::uint64_t seed) const {
    Rng rng(seed);
    return run_trial_(sent, rng);
}

/// Randomness is consumed in one pinned order per trial: nodes in
/// topological order; at a relay the coefficient draws in (i, j, t)
/// order; then per out-edge in declaration order and per packet in
/// seq order, the erasure draw, the corruption draw if delivered, and
/// the n+1 replacement codes if corrupted.
TrialOutcome Simulator::run_trial_(const UpperTriangular& sent, Rng& rng) const {
    const Field& field = code_.field();
    const std::size_t n = code_.n();
    const std::uint32_t q = field.order();
    if (sent.field() != field || sent.n() != n)
        throw DomainError("sent matrix has a different shape or field");

    const std::size_t node_count = topology_.nodes().size();
    TrialOutcome outcome{TrialResult::success,
                         sent,
                         std::nullopt,
                         std::nullopt,
                         std::vector<std::vector<std::uint64_t>>(
                             node_count, std::vector<std::uint64_t>(n, 0)),
                         std::vector<std::vector<std::uint64_t>>(
                             node_count, std::vector<std::uint64_t>(n, 0))};

    std::vector<std::vector<Packet>> inbox(node_count);
    for (std::size_t u : topology_.order()) {
        const NodeRole role = topology_.nodes()[u].role;
        std::vector<Packet> outputs;
        if (role == NodeRole::source) {
            outputs = source_emit(sent);
        } else if (role == NodeRole::relay) {
            std::vector<std::vector<VectorF>> by_seq(n);
            for (const Packet& p : inbox[u]) by_seq[p.seq - 1].push_back(p.payload);
            const CoefficientFn draw = [&](std::size_t i, std::size_t j, std::size_t) {
                return j == i ? 1 + rng.below(q - 1) : rng.below(q);
            };
            outputs = node_combine(field, n, by_seq, draw, &outcome.ops_projected[u],
                                   &outcome.ops_baseline[u]);
        }
        for (std::size_t e : topology_.out_edges()[u]) {
            const TopologyEdge& edge = topology_.edges()[e];
            for (const Packet& p : outputs) {
                if (rng.bernoulli(edge.erasure_p)) continue;
                Packet delivered = p;
                if (rng.bernoulli(edge.corruption_p)) {
                    for (std::size_t c = 0; c <= n; ++c)
                        delivered.payload.set_code(c, rng.below(q));
                }
                inbox[edge.to].push_back(std::move(delivered));
            }
        }
    }

    bool any_cell_failure = false;
    bool any_miscorrection = false;
    std::optional<UpperTriangular> extracted;
    std::optional<UpperTriangular> recovered;
    for (std::size_t s : topology_.sinks()) {
        std::vector<std::vector<VectorF>> by_seq(n);
        for (const Packet& p : inbox[s]) by_seq[p.seq - 1].push_back(p.payload);
        std::vector<Subspace> spans = receiver_reconstruct(field, n, by_seq);

        if (topology_.is_lossless()) {
            // Nonzero diagonal coefficients on a lossless network must
            // reproduce the sent flag exactly.
            if (spans != flag_from_matrix(sent).components())
                throw Error("lossless transmission did not reproduce the sent flag");
        }

        bool cell_ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (spans[i].dim() != i + 1 || !is_big_cell(spans[i])) {
                cell_ok = false;
                break;
            }
        }
        if (!cell_ok) {
            any_cell_failure = true;
            continue;
        }
        const UpperTriangular a = matrix_from_flag(DegenerateFlag(std::move(spans)));
        const UpperTriangular c = table_.decode(a);
        if (!extracted) {
            extracted = a;
            recovered = c;
        }
        if (c != sent) any_miscorrection = true;
    }

    if (any_cell_failure) {
        outcome.result = TrialResult::cell_failure;
    } else if (any_miscorrection) {
        outcome.result = TrialResult::miscorrection;
        outcome.extracted = std::move(extracted);
        outcome.recovered = std::move(recovered);
    } else {
        outcome.result = TrialResult::success;
        outcome.extracted = std::move(extracted);
        outcome.recovered = std::move(recovered);
    }
    return outcome;
}

namespace {

std::string packed_csv(const UpperTriangular& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.packed().size(); ++i) {
        if (i) out << ',';
        out << m.packed()[i];
    }
    return out.str();
}

}  // namespace

SimReport Simulator::run_campaign(std::uint64_t trials, std::uint64_t seed) const {
    if (trials < 1) throw DomainError("at least one trial is required");
    const std::size_t n = code_.n();
    const std::size_t node_count = topology_.nodes().size();

    SimReport report;
    report.code_desc = code_.field().to_string() + ", n=" + std::to_string(n) +
                       ", dim=" + std::to_string(code_.dim());
    report.topology_desc = "nodes=" + std::to_string(node_count) +
                           ", edges=" + std::to_string(topology_.edges().size());
    report.seed = seed;
    report.trials = trials;
    for (const TopologyNode& node : topology_.nodes()) {
        report.node_names.push_back(node.name);
        report.node_roles.push_back(node.role);
    }
    report.ops_projected.assign(node_count, std::vector<std::uint64_t>(n, 0));
    report.ops_baseline.assign(node_count, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 1; i <= n; ++i) {
        report.expected_projected.push_back(i * (n + 1) - i * (i + 1) / 2);
        report.expected_baseline.push_back(i * (n + 1));
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(Rng::mix(seed, t));
        std::vector<std::uint32_t> coeffs(code_.dim());
        for (std::uint32_t& c : coeffs) c = rng.below(code_.field().order());
        const UpperTriangular sent = code_.codeword(coeffs);
        const TrialOutcome outcome = run_trial_(sent, rng);

        switch (outcome.result) {
            case TrialResult::success: ++report.successes; break;
            case TrialResult::cell_failure: ++report.cell_failures; break;
            case TrialResult::miscorrection: ++report.miscorrections; break;
        }
        std::uint64_t row_proj = 0;
        std::uint64_t row_base = 0;
        for (std::size_t u = 0; u < node_count; ++u) {
            for (std::size_t i = 0; i < n; ++i) {
                report.ops_projected[u][i] += outcome.ops_projected[u][i];
                report.ops_baseline[u][i] += outcome.ops_baseline[u][i];
                row_proj += outcome.ops_projected[u][i];
                row_base += outcome.ops_baseline[u][i];
            }
        }
        report.rows.push_back(SimReport::Row{
            t, outcome.result, packed_csv(sent),
            outcome.recovered ? packed_csv(*outcome.recovered) : std::string("-"), row_proj,
            row_base});
    }
    return report;
}

std::string SimReport::to_text() const {
    std::ostringstream out;
    out << "flag transmission simulation\n";
    out << "code: " << code_desc << "\n";
    out << "topology: " << topology_desc << "\n";
    out << "seed: " << seed << "\n";
    out << "trials: " << trials << "\n";
    out << "successes: " << successes << "\n";
    out << "cell-failures: " << cell_failures << "\n";
    out << "miscorrections: " << miscorrections << "\n";
    out << "single-input relay cost per trial (multiply-adds):\n";
    for (std::size_t i = 0; i < expected_projected.size(); ++i) {
        out << "  step " << (i + 1) << ": projected=" << expected_projected[i]
            << ", baseline=" << expected_baseline[i] << "\n";
    }
    out << "measured relay cost (multiply-adds, summed over trials):\n";
    for (std::size_t u = 0; u < node_names.size(); ++u) {
        if (node_roles[u] != NodeRole::relay) continue;
        out << "  node " << node_names[u] << ":\n";
        for (std::size_t i = 0; i < ops_projected[u].size(); ++i) {
            out << "    step " << (i + 1) << ": projected=" << ops_projected[u][i]
                << ", baseline=" << ops_baseline[u][i] << "\n";
        }
    }
    return out.str();
}

std::string SimReport::to_table() const {
    std::ostringstream out;
    out << "trial\toutcome\tsent\trecovered\tops_projected\tops_baseline\n";
    for (const Row& row : rows) {
        out << row.trial << '\t' << to_string(row.result) << '\t' << row.sent << '\t'
            << row.recovered << '\t' << row.ops_projected << '\t' << row.ops_baseline << "\n";
    }
    return out.str();
}

}  // namespace flagnet
