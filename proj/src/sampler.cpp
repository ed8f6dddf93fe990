#include "infoaccess/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "infoaccess/disjoint_set.hpp"
#include "infoaccess/parallel.hpp"

namespace infoaccess {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

TransmissionProbability::TransmissionProbability(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument(
            fmt::format("alpha must lie strictly between 0 and 1 (got {})", alpha));
    }
}

double edge_coin(std::uint64_t seed, std::uint64_t sample, OriginalId a, OriginalId b) noexcept {
    if (a > b) std::swap(a, b);
    const std::uint64_t h = mix64(seed ^ mix64(sample ^ mix64(a ^ mix64(b))));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

AccessEstimate::AccessEstimate(std::vector<OriginalId> labels, std::uint32_t samples)
    : labels_(std::move(labels)), samples_(samples) {
    const std::size_t n = labels_.size();
    counters_.assign(n * (n - (n > 0 ? 1 : 0)) / 2, 0);
}

std::vector<NodeId> SampleEnsemble::component_members(std::uint32_t r, NodeId v) const {
    const std::size_t off = offset(r);
    std::vector<NodeId> members;
    NodeId x = v;
    do {
        members.push_back(x);
        x = next_[off + x];
    } while (x != v);
    std::sort(members.begin(), members.end());
    return members;
}

/// Shared sampling loop for build_ensemble and estimate_access.
struct EnsembleBuilder {
    const Graph& graph;
    double alpha;
    std::uint32_t samples;
    std::uint64_t seed;
    unsigned workers;
    SampleEnsemble* keep = nullptr;

    AccessEstimate run() const {
        const std::size_t n = graph.node_count();
        const auto labels = graph.labels();
        struct LiveEdgeCandidate {
            NodeId u, v;
            OriginalId a, b;
        };
        std::vector<LiveEdgeCandidate> edges;
        for (const EdgeKey& e : graph.edges()) {
            edges.push_back({e.u, e.v, labels[e.u], labels[e.v]});
        }

        AccessEstimate estimate(std::vector<OriginalId>(labels.begin(), labels.end()), samples);
        const std::size_t pairs = estimate.counters().size();

        // Per worker: signed partial (within-component increments minus
        // cross-component decrements) and the number of complement-mode samples.
        std::vector<std::vector<std::int32_t>> partial(workers);
        std::vector<std::int64_t> complement_samples(workers, 0);

        parallel_blocks(samples, workers, [&](std::size_t begin, std::size_t end, unsigned w) {
            auto& acc = partial[w];
            acc.assign(pairs, 0);
            DisjointSet ds(n);
            std::vector<std::uint32_t> comp_of(n);
            std::vector<std::uint32_t> rep_to_comp(n);
            std::vector<std::uint32_t> start;
            std::vector<NodeId> members(n);
            std::vector<NodeId> reps;

            for (std::size_t r = begin; r < end; ++r) {
                ds.reset(n);
                for (const auto& e : edges) {
                    if (edge_is_live(alpha, seed, r, e.a, e.b)) ds.unite(e.u, e.v);
                }

                // Group nodes by component, ascending within each component.
                reps.clear();
                std::fill(rep_to_comp.begin(), rep_to_comp.end(), UINT32_MAX);
                for (NodeId v = 0; v < n; ++v) {
                    const NodeId rep = ds.find(v);
                    if (rep_to_comp[rep] == UINT32_MAX) {
                        rep_to_comp[rep] = static_cast<std::uint32_t>(reps.size());
                        reps.push_back(rep);
                    }
                    comp_of[v] = rep_to_comp[rep];
                }
                const std::size_t k = reps.size();
                start.assign(k + 1, 0);
                for (NodeId v = 0; v < n; ++v) ++start[comp_of[v] + 1];
                for (std::size_t c = 0; c < k; ++c) start[c + 1] += start[c];
                {
                    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
                    for (NodeId v = 0; v < n; ++v) members[fill[comp_of[v]]++] = v;
                }

                double within = 0.0;
                for (std::size_t c = 0; c < k; ++c) {
                    const double s = start[c + 1] - start[c];
                    within += s * s;
                }
                if (within <= 0.5 * static_cast<double>(n) * static_cast<double>(n)) {
                    for (std::size_t c = 0; c < k; ++c) {
                        for (std::uint32_t x = start[c]; x < start[c + 1]; ++x) {
                            for (std::uint32_t y = x + 1; y < start[c + 1]; ++y) {
                                ++acc[estimate.pair_index(members[x], members[y])];
                            }
                        }
                    }
                } else {
                    ++complement_samples[w];
                    for (std::size_t c = 0; c < k; ++c) {
                        for (std::size_t d = c + 1; d < k; ++d) {
                            for (std::uint32_t x = start[c]; x < start[c + 1]; ++x) {
                                for (std::uint32_t y = start[d]; y < start[d + 1]; ++y) {
                                    --acc[estimate.pair_index(members[x], members[y])];
                                }
                            }
                        }
                    }
                }

                if (keep != nullptr) {
                    const std::size_t off = r * n;
                    for (std::size_t c = 0; c < k; ++c) {
                        const NodeId rep = reps[c];
                        const std::uint32_t first = start[c];
                        const std::uint32_t last = start[c + 1];
                        keep->size_[off + rep] = last - first;
                        for (std::uint32_t x = first; x < last; ++x) {
                            const NodeId v = members[x];
                            keep->label_[off + v] = rep;
                            keep->next_[off + v] = members[x + 1 < last ? x + 1 : first];
                        }
                    }
                }
            }
        });

        std::int64_t complement_total = 0;
        for (auto c : complement_samples) complement_total += c;
        auto out = estimate.counters();
        for (std::size_t p = 0; p < pairs; ++p) {
            std::int64_t total = complement_total;
            for (const auto& acc : partial) {
                if (!acc.empty()) total += acc[p];
            }
            out[p] = static_cast<std::uint32_t>(total);
        }
        return estimate;
    }
    static AccessEstimate build_into(SampleEnsemble& ens, Graph g, double alpha,
                                     std::uint32_t samples, std::uint64_t seed,
                                     unsigned workers) {
        ens.graph_ = std::move(g);
        ens.alpha_ = alpha;
        ens.samples_ = samples;
        ens.seed_ = seed;
        ens.workers_ = workers;
        const std::size_t cells = static_cast<std::size_t>(samples) * ens.graph_.node_count();
        ens.label_.assign(cells, 0);
        ens.next_.assign(cells, 0);
        ens.size_.assign(cells, 0);
        EnsembleBuilder builder{ens.graph_, ens.alpha_, samples, seed, ens.workers_, &ens};
        return builder.run();
    }
};

namespace {

void check_sampling_args(const Graph& g, std::uint32_t samples) {
    if (samples == 0) throw std::invalid_argument("sample count R must be at least 1");
    if (g.node_count() == 0) throw std::invalid_argument("graph is empty");
}

}  // namespace

EnsembleBuild build_ensemble(Graph g, TransmissionProbability alpha, std::uint32_t samples,
                             std::uint64_t seed, SamplerOptions options) {
    check_sampling_args(g, samples);
    EnsembleBuild result;
    result.estimate = EnsembleBuilder::build_into(result.ensemble, std::move(g), alpha.value(),
                                                  samples, seed, resolve_workers(options.workers));
    return result;
}

AccessEstimate estimate_access(const Graph& g, TransmissionProbability alpha,
                               std::uint32_t samples, std::uint64_t seed,
                               SamplerOptions options) {
    check_sampling_args(g, samples);
    EnsembleBuilder builder{g, alpha.value(), samples, seed, resolve_workers(options.workers)};
    return builder.run();
}

std::size_t SampleEnsemble::add_edge(AccessEstimate& estimate, EdgeKey e) {
    e = EdgeKey::make(e.u, e.v);
    const std::size_t n = graph_.node_count();
    if (e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (graph_.has_edge(e)) {
        throw std::invalid_argument(fmt::format("edge ({}, {}) already present",
                                                graph_.label(e.u), graph_.label(e.v)));
    }
    if (estimate.size() != n || estimate.samples() != samples_) {
        throw std::invalid_argument("estimate does not belong to this ensemble");
    }
    graph_.add_edge(e.u, e.v);
    const OriginalId a = graph_.label(e.u);
    const OriginalId b = graph_.label(e.v);

    auto counters = estimate.counters();
    const bool shared = workers_ > 1;
    std::vector<std::size_t> merges(workers_, 0);

    parallel_blocks(samples_, workers_, [&](std::size_t begin, std::size_t end, unsigned w) {
        std::vector<NodeId> left;
        std::vector<NodeId> right;
        for (std::size_t r = begin; r < end; ++r) {
            if (!edge_is_live(alpha_, seed_, r, a, b)) continue;
            const std::size_t off = r * n;
            NodeId ru = label_[off + e.u];
            NodeId rv = label_[off + e.v];
            if (ru == rv) continue;
            ++merges[w];

            auto collect = [&](NodeId start, std::vector<NodeId>& out) {
                out.clear();
                NodeId x = start;
                do {
                    out.push_back(x);
                    x = next_[off + x];
                } while (x != start);
            };
            collect(e.u, left);
            collect(e.v, right);
            for (NodeId x : left) {
                for (NodeId y : right) {
                    std::uint32_t& cell = counters[estimate.pair_index(x, y)];
                    if (shared) {
                        std::atomic_ref<std::uint32_t>(cell).fetch_add(1, std::memory_order_relaxed);
                    } else {
                        ++cell;
                    }
                }
            }

            // Relabel the smaller side and splice the two circular lists.
            if (left.size() < right.size()) {
                std::swap(left, right);
                std::swap(ru, rv);
            }
            for (NodeId y : right) label_[off + y] = ru;
            std::swap(next_[off + e.u], next_[off + e.v]);
            size_[off + ru] += size_[off + rv];
            size_[off + rv] = 0;
        }
    });

    std::size_t total = 0;
    for (auto m : merges) total += m;
    return total;
}

std::size_t add_edge_incremental(SampleEnsemble& ensemble, AccessEstimate& estimate, EdgeKey e) {
    return ensemble.add_edge(estimate, e);
}

StabilityReport stability_check_seeds(const Graph& g, TransmissionProbability alpha,
                                      std::uint32_t samples, std::span<const std::uint64_t> seeds,
                                      SamplerOptions options) {
    if (seeds.size() < 2) throw std::invalid_argument("stability check needs at least 2 repetitions");
    const std::size_t reps = seeds.size();
    std::vector<AccessEstimate> runs;
    runs.reserve(reps);
    for (std::uint64_t seed : seeds) runs.push_back(estimate_access(g, alpha, samples, seed, options));

    StabilityReport report;
    report.repetitions = reps;
    const std::size_t pairs = runs.front().counters().size();
    if (pairs == 0) return report;
    std::uint64_t spread_sum = 0;
    std::uint32_t worst = 0;
    double gini_sum = 0.0;
    std::vector<std::uint32_t> column(reps);
    for (std::size_t p = 0; p < pairs; ++p) {
        for (std::size_t r = 0; r < reps; ++r) column[r] = runs[r].counters()[p];
        std::sort(column.begin(), column.end());
        const std::uint32_t spread = column.back() - column.front();
        spread_sum += spread;
        worst = std::max(worst, spread);
        // Sum over run pairs of |x_a - x_b| from the sorted column.
        std::int64_t pair_sum = 0;
        for (std::size_t k = 0; k < reps; ++k) {
            pair_sum += (2 * static_cast<std::int64_t>(k) - static_cast<std::int64_t>(reps) + 1) *
                        static_cast<std::int64_t>(column[k]);
        }
        gini_sum += static_cast<double>(pair_sum);
    }
    const double R = samples;
    report.max_deviation = worst / R;
    report.mean_deviation = static_cast<double>(spread_sum) / static_cast<double>(pairs) / R;
    report.mean_pairwise_difference =
        gini_sum / (static_cast<double>(pairs) * static_cast<double>(reps * (reps - 1) / 2)) / R;
    return report;
}

StabilityReport stability_check(const Graph& g, TransmissionProbability alpha,
                                std::uint32_t samples, std::size_t repetitions,
                                std::uint64_t base_seed, SamplerOptions options) {
    std::vector<std::uint64_t> seeds(repetitions);
    for (std::size_t i = 0; i < repetitions; ++i) seeds[i] = base_seed + i;
    return stability_check_seeds(g, alpha, samples, seeds, options);
}

}  // namespace infoaccess
