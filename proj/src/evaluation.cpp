#include "infoaccess/evaluation.hpp"

#include <numeric>

#include <fmt/format.h>

namespace infoaccess {

GapReport gap_report(std::span<const double> values, std::string measure) {
    if (values.size() < 2) throw std::invalid_argument("gap report needs at least two values");
    GapReport r;
    r.measure = std::move(measure);
    const auto lo = std::min_element(values.begin(), values.end());
    const auto hi = std::max_element(values.begin(), values.end());
    r.min = *lo;
    r.max = *hi;
    r.argmin = static_cast<NodeId>(lo - values.begin());
    r.argmax = static_cast<NodeId>(hi - values.begin());
    r.absolute = r.max - r.min;
    if (r.min > 0.0) r.relative = r.absolute / r.min;
    return r;
}

double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("percentile of an empty range");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(pos));
    const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lower);
    return sorted[lower] + frac * (sorted[upper] - sorted[lower]);
}

DistributionSummary distribution_summary(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("distribution summary of an empty multiset");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    DistributionSummary s;
    s.count = sorted.size();
    s.min = sorted.front();
    s.max = sorted.back();
    s.p1 = percentile_sorted(sorted, 0.01);
    s.p5 = percentile_sorted(sorted, 0.05);
    s.p25 = percentile_sorted(sorted, 0.25);
    s.p50 = percentile_sorted(sorted, 0.50);
    s.p75 = percentile_sorted(sorted, 0.75);
    s.p95 = percentile_sorted(sorted, 0.95);
    s.p99 = percentile_sorted(sorted, 0.99);
    // Sum in sorted order so the mean does not depend on input order.
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.count);
    return s;
}

double signature_distance(std::span<const double> a, std::span<const double> b,
                          SignatureMetric metric) {
    double acc = 0.0;
    if (metric == SignatureMetric::L1) {
        for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
        return acc;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

const MetricDelta* DeltaReport::find(std::string_view name) const {
    for (const auto& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

DeltaReport compare_runs(const MetricsBundle& before, const MetricsBundle& after) {
    const auto& a = before.config;
    const auto& b = after.config;
    if (a.alpha != b.alpha || a.samples != b.samples || a.nodes != b.nodes ||
        a.input_hash != b.input_hash) {
        throw std::invalid_argument(fmt::format(
            "bundles are not comparable (alpha {} vs {}, R {} vs {}, n {} vs {}, input {} vs {})",
            a.alpha, b.alpha, a.samples, b.samples, a.nodes, b.nodes, a.input_hash,
            b.input_hash));
    }

    DeltaReport report;
    auto add = [&](std::string name, double x, double y) {
        MetricDelta d{std::move(name), x, y, y - x, std::nullopt};
        if (x != 0.0) d.percent_change = 100.0 * (y - x) / std::abs(x);
        report.entries.push_back(std::move(d));
    };
    auto add_optional = [&](std::string name, std::optional<double> x, std::optional<double> y) {
        if (x && y) {
            add(std::move(name), *x, *y);
        } else {
            report.undefined.push_back(std::move(name));
        }
    };
    auto add_summary = [&](const std::string& prefix, const DistributionSummary& x,
                           const DistributionSummary& y) {
        add(prefix + ".min", x.min, y.min);
        add(prefix + ".p1", x.p1, y.p1);
        add(prefix + ".p5", x.p5, y.p5);
        add(prefix + ".p25", x.p25, y.p25);
        add(prefix + ".p50", x.p50, y.p50);
        add(prefix + ".p75", x.p75, y.p75);
        add(prefix + ".p95", x.p95, y.p95);
        add(prefix + ".p99", x.p99, y.p99);
        add(prefix + ".max", x.max, y.max);
        add(prefix + ".mean", x.mean, y.mean);
    };

    add("welfare", before.welfare, after.welfare);
    add("min_broadcast", before.min_broadcast, after.min_broadcast);
    add("min_influence", before.min_influence, after.min_influence);
    add("broadcast_gap.absolute", before.broadcast_gap.absolute, after.broadcast_gap.absolute);
    add_optional("broadcast_gap.relative", before.broadcast_gap.relative,
                 after.broadcast_gap.relative);
    add("influence_gap.absolute", before.influence_gap.absolute, after.influence_gap.absolute);
    add_optional("influence_gap.relative", before.influence_gap.relative,
                 after.influence_gap.relative);
    add("signature.max_distance", before.signature.max_distance, after.signature.max_distance);
    add_summary("access", before.access, after.access);
    add_summary("signature", before.signature.summary, after.signature.summary);
    return report;
}

}  // namespace infoaccess
