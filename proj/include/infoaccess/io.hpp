#pragma once

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "json.hpp"

#include "infoaccess/advantage.hpp"
#include "infoaccess/augmentation.hpp"
#include "infoaccess/evaluation.hpp"
#include "infoaccess/sampler.hpp"

namespace infoaccess {

/// "i,j,p" over original ids with i < j; p printed with six decimals.
template <AccessMatrix A>
void write_access_csv(std::ostream& out, const A& access) {
    const auto labels = access.labels();
    out << "i,j,p\n";
    for (NodeId i = 0; i < access.size(); ++i) {
        for (NodeId j = i + 1; j < access.size(); ++j) {
            out << fmt::format("{},{},{:.6f}\n", labels[i], labels[j], access.probability(i, j));
        }
    }
}

/// An estimate read back from the binary dump, with the sampling parameters.
struct StoredEstimate {
    AccessEstimate estimate;
    double alpha = 0.0;
    std::uint64_t seed = 0;
};

/// Binary dump, all fields little-endian:
///   char[4]  magic "IAE1"
///   u32      format version (1)
///   u64      node count n
///   u32      sample count R
///   u32      reserved (0)
///   u64      seed
///   f64      alpha (IEEE-754 bits)
///   u64[n]   original node ids
///   u32[n(n-1)/2] co-occurrence counters, strict upper triangle, row-major
void write_estimate_binary(std::ostream& out, const AccessEstimate& estimate, double alpha,
                           std::uint64_t seed);
StoredEstimate read_estimate_binary(std::istream& in);

/// "node,broadcast,influence[,cent_star,max_pair_control]" over original ids.
void write_advantage_csv(std::ostream& out, std::span<const OriginalId> labels,
                         const AdvantageVector& adv);

/// min/max/argmin/argmax (original ids) per measure.
nlohmann::json advantage_summary_json(std::span<const OriginalId> labels,
                                      const AdvantageVector& adv);

/// "step,u,v,welfare,min_broadcast,min_influence"; one row per added edge.
void write_trace_csv(std::ostream& out, const Graph& g, const InterventionTrace& trace);
nlohmann::json trace_json(const Graph& g, const InterventionTrace& trace);

nlohmann::json to_json(const GapReport& gap);
nlohmann::json to_json(const DistributionSummary& s);
nlohmann::json to_json(const MetricsBundle& m);
nlohmann::json to_json(const DeltaReport& d);
MetricsBundle metrics_from_json(const nlohmann::json& j);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::string& path);

}  // namespace infoaccess
