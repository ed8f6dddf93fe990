#include "infoaccess/io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <sstream>

#include <openssl/evp.h>

namespace infoaccess {

namespace {

constexpr std::array<char, 4> kMagic{'I', 'A', 'E', '1'};
constexpr std::uint32_t kFormatVersion = 1;

template <class T>
void put_le(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw std::runtime_error("truncated estimate file");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= std::uint64_t{bytes[i]} << (8 * i);
    return static_cast<T>(value);
}

nlohmann::json measure_summary(std::span<const OriginalId> labels, std::span<const double> v) {
    const GapReport gap = gap_report(v, "");
    return {{"min", gap.min},
            {"max", gap.max},
            {"argmin", labels[gap.argmin]},
            {"argmax", labels[gap.argmax]}};
}

}  // namespace

void write_estimate_binary(std::ostream& out, const AccessEstimate& estimate, double alpha,
                           std::uint64_t seed) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kFormatVersion);
    put_le<std::uint64_t>(out, estimate.size());
    put_le<std::uint32_t>(out, estimate.samples());
    put_le<std::uint32_t>(out, 0);
    put_le<std::uint64_t>(out, seed);
    std::uint64_t alpha_bits = 0;
    std::memcpy(&alpha_bits, &alpha, sizeof alpha_bits);
    put_le<std::uint64_t>(out, alpha_bits);
    for (OriginalId id : estimate.labels()) put_le<std::uint64_t>(out, id);
    for (std::uint32_t c : estimate.counters()) put_le<std::uint32_t>(out, c);
}

StoredEstimate read_estimate_binary(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw std::runtime_error("not an access estimate file");
    if (get_le<std::uint32_t>(in) != kFormatVersion) {
        throw std::runtime_error("unsupported estimate file version");
    }
    const auto n = get_le<std::uint64_t>(in);
    if (n > std::numeric_limits<NodeId>::max()) throw std::runtime_error("corrupt node count");
    const auto samples = get_le<std::uint32_t>(in);
    (void)get_le<std::uint32_t>(in);
    StoredEstimate stored;
    stored.seed = get_le<std::uint64_t>(in);
    const auto alpha_bits = get_le<std::uint64_t>(in);
    std::memcpy(&stored.alpha, &alpha_bits, sizeof alpha_bits);
    std::vector<OriginalId> labels(n);
    for (auto& id : labels) id = get_le<std::uint64_t>(in);
    stored.estimate = AccessEstimate(std::move(labels), samples);
    for (auto& c : stored.estimate.counters()) {
        c = get_le<std::uint32_t>(in);
        if (c > samples) throw std::runtime_error("corrupt estimate file: counter exceeds R");
    }
    return stored;
}

void write_advantage_csv(std::ostream& out, std::span<const OriginalId> labels,
                         const AdvantageVector& adv) {
    const bool control = adv.cent_star && adv.max_pair_control;
    out << (control ? "node,broadcast,influence,cent_star,max_pair_control\n"
                    : "node,broadcast,influence\n");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << fmt::format("{},{:.6f},{:.6f}", labels[i], adv.broadcast[i], adv.influence[i]);
        if (control) {
            out << fmt::format(",{:.6f},{:.6f}", (*adv.cent_star)[i], (*adv.max_pair_control)[i]);
        }
        out << '\n';
    }
}

nlohmann::json advantage_summary_json(std::span<const OriginalId> labels,
                                      const AdvantageVector& adv) {
    nlohmann::json j;
    j["nodes"] = labels.size();
    j["broadcast"] = measure_summary(labels, adv.broadcast);
    j["influence"] = measure_summary(labels, adv.influence);
    if (adv.cent_star) j["cent_star"] = measure_summary(labels, *adv.cent_star);
    if (adv.max_pair_control) {
        j["max_pair_control"] = measure_summary(labels, *adv.max_pair_control);
    }
    return j;
}

void write_trace_csv(std::ostream& out, const Graph& g, const InterventionTrace& trace) {
    out << "step,u,v,welfare,min_broadcast,min_influence\n";
    for (const TraceStep& s : trace.steps) {
        for (const EdgeKey& e : s.edges) {
            out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f}\n", s.step, g.label(e.u),
                               g.label(e.v), s.welfare, s.min_broadcast, s.min_influence);
        }
    }
}

nlohmann::json trace_json(const Graph& g, const InterventionTrace& trace) {
    nlohmann::json j;
    j["heuristic"] = std::string(to_string(trace.heuristic));
    j["budget"] = trace.budget;
    j["center"] = trace.center ? nlohmann::json(g.label(*trace.center)) : nlohmann::json();
    j["edges_added"] = trace.edges_added();
    j["steps"] = trace.steps.size();
    j["initial"] = {{"welfare", trace.initial_welfare},
                    {"min_broadcast", trace.initial_min_broadcast},
                    {"min_influence", trace.initial_min_influence}};
    j["final"] = {{"welfare", trace.final_welfare()}};
    auto events = nlohmann::json::array();
    for (const auto& e : trace.events) {
        events.push_back({{"step", e.step}, {"kind", e.kind}, {"detail", e.detail}});
    }
    j["events"] = std::move(events);
    return j;
}

nlohmann::json to_json(const GapReport& gap) {
    nlohmann::json j{{"measure", gap.measure},
                     {"min", gap.min},
                     {"max", gap.max},
                     {"absolute", gap.absolute}};
    j["relative"] = gap.relative ? nlohmann::json(*gap.relative) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const DistributionSummary& s) {
    return {{"count", s.count}, {"min", s.min}, {"p1", s.p1},   {"p5", s.p5},
            {"p25", s.p25},     {"p50", s.p50}, {"p75", s.p75}, {"p95", s.p95},
            {"p99", s.p99},     {"max", s.max}, {"mean", s.mean}};
}

nlohmann::json to_json(const MetricsBundle& m) {
    nlohmann::json j;
    j["config"] = {{"alpha", m.config.alpha},         {"samples", m.config.samples},
                   {"seed", m.config.seed},           {"nodes", m.config.nodes},
                   {"input_hash", m.config.input_hash}, {"heuristic", m.config.heuristic},
                   {"budget", m.config.budget}};
    j["k"] = m.k;
    j["edges"] = m.edges;
    j["welfare"] = {{"value", m.welfare}, {"pair", {m.welfare_u, m.welfare_v}}};
    j["min_broadcast"] = m.min_broadcast;
    j["min_influence"] = m.min_influence;
    auto gap = [](const GapReport& g, OriginalId lo, OriginalId hi) {
        auto out = to_json(g);
        out["argmin"] = lo;
        out["argmax"] = hi;
        return out;
    };
    j["gaps"] = {{"broadcast", gap(m.broadcast_gap, m.broadcast_argmin, m.broadcast_argmax)},
                 {"influence", gap(m.influence_gap, m.influence_argmin, m.influence_argmax)}};
    j["access_distribution"] = to_json(m.access);
    j["signature_distance"] = {{"metric", "L1"},
                               {"sampled", m.signature.sampled},
                               {"pairs", m.signature.pairs},
                               {"max", m.signature.max_distance},
                               {"max_pair", {m.signature_max_u, m.signature_max_v}},
                               {"summary", to_json(m.signature.summary)}};
    return j;
}

namespace {

DistributionSummary summary_from_json(const nlohmann::json& j) {
    DistributionSummary s;
    s.count = j.at("count").get<std::size_t>();
    s.min = j.at("min").get<double>();
    s.p1 = j.at("p1").get<double>();
    s.p5 = j.at("p5").get<double>();
    s.p25 = j.at("p25").get<double>();
    s.p50 = j.at("p50").get<double>();
    s.p75 = j.at("p75").get<double>();
    s.p95 = j.at("p95").get<double>();
    s.p99 = j.at("p99").get<double>();
    s.max = j.at("max").get<double>();
    s.mean = j.at("mean").get<double>();
    return s;
}

GapReport gap_from_json(const nlohmann::json& j, OriginalId& lo, OriginalId& hi) {
    GapReport g;
    g.measure = j.at("measure").get<std::string>();
    g.min = j.at("min").get<double>();
    g.max = j.at("max").get<double>();
    g.absolute = j.at("absolute").get<double>();
    if (!j.at("relative").is_null()) g.relative = j.at("relative").get<double>();
    lo = j.at("argmin").get<OriginalId>();
    hi = j.at("argmax").get<OriginalId>();
    return g;
}

}  // namespace

MetricsBundle metrics_from_json(const nlohmann::json& j) {
    MetricsBundle m;
    const auto& c = j.at("config");
    m.config.alpha = c.at("alpha").get<double>();
    m.config.samples = c.at("samples").get<std::uint32_t>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.nodes = c.at("nodes").get<std::size_t>();
    m.config.input_hash = c.at("input_hash").get<std::string>();
    m.config.heuristic = c.at("heuristic").get<std::string>();
    m.config.budget = c.at("budget").get<std::size_t>();
    m.k = j.at("k").get<std::size_t>();
    m.edges = j.at("edges").get<std::size_t>();
    m.welfare = j.at("welfare").at("value").get<double>();
    m.welfare_u = j.at("welfare").at("pair").at(0).get<OriginalId>();
    m.welfare_v = j.at("welfare").at("pair").at(1).get<OriginalId>();
    m.min_broadcast = j.at("min_broadcast").get<double>();
    m.min_influence = j.at("min_influence").get<double>();
    m.broadcast_gap =
        gap_from_json(j.at("gaps").at("broadcast"), m.broadcast_argmin, m.broadcast_argmax);
    m.influence_gap =
        gap_from_json(j.at("gaps").at("influence"), m.influence_argmin, m.influence_argmax);
    m.access = summary_from_json(j.at("access_distribution"));
    const auto& sig = j.at("signature_distance");
    m.signature.sampled = sig.at("sampled").get<bool>();
    m.signature.pairs = sig.at("pairs").get<std::size_t>();
    m.signature.max_distance = sig.at("max").get<double>();
    m.signature_max_u = sig.at("max_pair").at(0).get<OriginalId>();
    m.signature_max_v = sig.at("max_pair").at(1).get<OriginalId>();
    m.signature.summary = summary_from_json(sig.at("summary"));
    return m;
}

nlohmann::json to_json(const DeltaReport& d) {
    nlohmann::json j;
    auto entries = nlohmann::json::object();
    for (const auto& e : d.entries) {
        entries[e.name] = {{"before", e.before},
                           {"after", e.after},
                           {"change", e.change},
                           {"percent_change", e.percent_change ? nlohmann::json(*e.percent_change)
                                                               : nlohmann::json()}};
    }
    j["deltas"] = std::move(entries);
    j["undefined"] = d.undefined;
    return j;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string sha256_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

}  // namespace infoaccess
