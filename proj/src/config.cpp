#include "nvi/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace nvi {

Point default_start(const ProblemInstance& problem) {
    if (problem.name == "zero_sum_game") return Point{{30.0, 20.0}};
    return problem.domain.center();
}

std::vector<Point> default_starts(const ProblemInstance& problem) {
    const BoxSet& box = problem.domain;
    std::vector<Point> starts;
    const auto d = box.dim();
    if (d <= 4) {
        // Bit i of the mask picks the upper bound in coordinate i; lowest
        // coordinate varies slowest to list (lo,lo), (lo,hi), (hi,lo), (hi,hi).
        const unsigned corners = 1u << d;
        for (unsigned mask = 0; mask < corners; ++mask) {
            Point c(d);
            for (Eigen::Index i = 0; i < d; ++i) {
                const bool up = (mask >> (d - 1 - i)) & 1u;
                c[i] = up ? box.upper()[i] : box.lower()[i];
            }
            starts.push_back(std::move(c));
        }
    }
    starts.push_back(box.center());
    return starts;
}

OuterConfig make_outer_config(const RunConfig& cfg, const ProblemInstance& problem) {
    OuterConfig out;
    out.alpha = cfg.alpha;
    out.eta = cfg.eta;
    out.epsbar = cfg.epsbar;
    out.outer_iters = cfg.outer_iters;
    out.theta = cfg.theta;
    out.delta = cfg.delta;
    out.w1 = cfg.start.value_or(default_start(problem));
    out.k_max = cfg.k_max;
    return out;
}

namespace {

double parse_double(std::string_view text, const std::string& what) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("cannot parse " + what + " from '" + std::string(text) + "'");
    }
    return value;
}

template <class Int>
Int parse_int(const std::string& text, const std::string& what) {
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument("cannot parse " + what + " from '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw InvalidArgument("cannot parse " + what + " from '" + text + "'");
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
    }
    return out;
}

std::string single(const CLI::ConfigItem& item) {
    if (item.inputs.size() != 1) {
        throw InvalidArgument("config key '" + item.name + "' expects a single value");
    }
    return item.inputs.front();
}

}  // namespace

Point parse_point(const std::string& text) {
    std::vector<double> coords;
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        coords.push_back(parse_double(rest.substr(0, comma), "point coordinate"));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    Point p(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) p[static_cast<Eigen::Index>(i)] = coords[i];
    if (!p.allFinite()) throw InvalidArgument("point '" + text + "' is not finite");
    return p;
}

DeltaModel parse_delta(const std::string& text, std::uint64_t seed) {
    if (text == "exact") return DeltaModel::exact();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        const double bound = parse_double(std::string_view(text).substr(colon + 1), "delta bound");
        if (!(bound >= 0.0)) throw InvalidArgument("delta bound must be >= 0");
        if (kind == "scaled") return DeltaModel::scaled_random(bound, seed);
        if (kind == "harmonic") return DeltaModel::harmonic(bound, seed, std::nullopt);
    }
    throw InvalidArgument("delta must be exact, scaled:<D> or harmonic:<D>, got '" + text + "'");
}

std::string format_delta(const DeltaModel& model) {
    std::ostringstream os;
    os.precision(17);
    switch (model.kind) {
        case DeltaKind::exact: return "exact";
        case DeltaKind::scaled_random: os << "scaled:" << model.bound; break;
        case DeltaKind::harmonic: os << "harmonic:" << model.bound; break;
    }
    return os.str();
}

SweepConfig parse_sweep_config(const std::string& text) {
    std::istringstream in(text);
    const std::vector<CLI::ConfigItem> items = CLI::ConfigTOML().from_config(in);

    SweepConfig cfg;
    RunConfig& run = cfg.base;
    std::string delta_text = "exact";
    std::uint64_t seed = 0;
    for (const auto& item : items) {
        if (!item.parents.empty()) {
            throw InvalidArgument("config sections are not supported (key '" + item.fullname() + "')");
        }
        const std::string& key = item.name;
        if (key == "problem") run.problem = single(item);
        else if (key == "alpha") run.alpha = parse_double(single(item), key);
        else if (key == "eta") run.eta = parse_double(single(item), key);
        else if (key == "epsbar") run.epsbar = parse_double(single(item), key);
        else if (key == "outer_iters") run.outer_iters = parse_int<int>(single(item), key);
        else if (key == "theta") run.theta = parse_double(single(item), key);
        else if (key == "start") run.start = parse_point(join(item.inputs));
        else if (key == "delta") delta_text = single(item);
        else if (key == "seed") seed = parse_int<std::uint64_t>(single(item), key);
        else if (key == "k_max") run.k_max = parse_int<long>(single(item), key);
        else if (key == "out") run.output = single(item);
        else if (key == "record_gap") run.record_gap = parse_bool(single(item), key);
        else if (key == "alphas") {
            cfg.alphas.clear();
            for (const auto& v : item.inputs) cfg.alphas.push_back(parse_double(v, key));
        } else if (key == "starts") {
            cfg.starts.clear();
            for (const auto& v : item.inputs) cfg.starts.push_back(parse_point(v));
        } else {
            throw InvalidArgument("unknown config key '" + key + "'");
        }
    }
    run.delta = parse_delta(delta_text, seed);
    auto given = [&](const char* key) {
        return std::any_of(items.begin(), items.end(), [&](const auto& i) { return i.name == key; });
    };
    // A lone alpha/start narrows the reproduction grid to that value.
    if (!given("alphas") && given("alpha")) cfg.alphas = {run.alpha};
    if (cfg.starts.empty() && run.start) cfg.starts = {*run.start};
    if (cfg.alphas.empty()) throw InvalidArgument("config: alphas must not be empty");
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str());
}

}  // namespace nvi
