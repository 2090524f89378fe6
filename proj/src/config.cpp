#include "migragent/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "migragent/error.hpp"

namespace migragent {

std::string_view to_string(IntakePolicy policy) {
    return policy == IntakePolicy::Literal ? "literal" : "calibrated";
}

IntakePolicy parse_intake_policy(std::string_view text) {
    if (text == "literal") return IntakePolicy::Literal;
    if (text == "calibrated") return IntakePolicy::Calibrated;
    throw Error(ErrorKind::Config, "intake_policy must be 'literal' or 'calibrated', got '" + std::string(text) + "'");
}

void validate(const SimParams& p) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::Config, msg); };
    if (p.number_local < 0) fail("number_local must be >= 0");
    if (p.number_migrant < 0) fail("number_migrant must be >= 0");
    if (!(p.conservatism_lower < p.conservatism_upper)) fail("conservatism_bounds must satisfy lower < upper");
    if (p.conservatism_local < p.conservatism_lower || p.conservatism_local > p.conservatism_upper)
        fail("conservatism_local must lie within conservatism_bounds");
    if (p.conservatism_migrant < p.conservatism_lower || p.conservatism_migrant > p.conservatism_upper)
        fail("conservatism_migrant must lie within conservatism_bounds");
    if (!(p.init_sd >= 0.0) || !std::isfinite(p.init_sd)) fail("init_sd must be a finite value >= 0");
    if (p.speed_intake < 1 || p.speed_intake > 100) fail("speed_intake must be in [1, 100]");
    if (p.ticks < 0) fail("ticks must be >= 0");
    if (p.grid_width < 2 || p.grid_width % 2 != 0) fail("grid_width must be an even number >= 2");
    if (p.grid_height < 1) fail("grid_height must be >= 1");
    if (!(p.happiness_threshold >= 0.0 && p.happiness_threshold <= 1.0)) fail("happiness_threshold must be in [0, 1]");
    if (!(p.neighbor_radius >= 1.0) || !std::isfinite(p.neighbor_radius)) fail("neighbor_radius must be >= 1");
}

GridDims effective_grid(const SimParams& p) {
    GridDims dims{p.grid_width, p.grid_height};
    const long peak = std::max<long>(static_cast<long>(p.number_local) + p.number_migrant, p.number_migrant);
    if (p.auto_scale_grid && static_cast<long>(dims.region_cells()) < 2 * peak) {
        // Grow both sides by the same factor so the aspect ratio is kept.
        const double scale = std::sqrt(2.0 * static_cast<double>(peak) / std::max(1, dims.region_cells()));
        int region_w = static_cast<int>(std::ceil(dims.width / 2 * scale));
        int h = static_cast<int>(std::ceil(dims.height * scale));
        while (static_cast<long>(region_w) * h < 2 * peak) {
            ++region_w;
            ++h;
        }
        dims.width = 2 * region_w;
        dims.height = h;
    }
    return dims;
}

double entry_probability(const SimParams& p) {
    const double fraction = p.speed_intake / 100.0;
    return p.intake_policy == IntakePolicy::Literal ? fraction : std::pow(fraction, kCalibratedIntakeExponent);
}

void validate(const SweepSpec& s) {
    if (s.conservatism_local_levels.empty()) throw Error(ErrorKind::Config, "conservatism_local_levels is empty");
    if (s.conservatism_migrant_levels.empty()) throw Error(ErrorKind::Config, "conservatism_migrant_levels is empty");
    if (s.speed_levels.empty()) throw Error(ErrorKind::Config, "speed_levels is empty");
    if (s.replications < 1) throw Error(ErrorKind::Config, "replications must be >= 1");
    if (s.parallelism < 1) throw Error(ErrorKind::Config, "parallelism must be >= 1");
    validate(s.base);
    for (const auto& c : enumerate_conditions(s)) validate(params_for(s, c));
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto end = comma == std::string_view::npos ? value.size() : comma;
        auto item = trim(value.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    const auto s = trim(text);
    T value{};
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (s.empty() || ec != std::errc() || ptr != end)
        throw Error(ErrorKind::Config, "invalid value '" + s + "' for key '" + std::string(key) + "'");
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    const auto s = trim(text);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw Error(ErrorKind::Config, "invalid boolean '" + s + "' for key '" + std::string(key) + "'");
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view value) {
    std::vector<T> out;
    for (const auto& item : split_list(value)) out.push_back(parse_number<T>(key, item));
    if (out.empty()) throw Error(ErrorKind::Config, "empty list for key '" + std::string(key) + "'");
    return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
    return os.str();
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

const std::vector<std::string> kKeys = {
    "number_local", "number_migrant", "conservatism_local", "conservatism_migrant", "init_sd", "speed_intake",
    "intake_policy", "ticks", "grid_width", "grid_height", "auto_scale_grid", "happiness_threshold",
    "neighbor_radius", "conservatism_bounds", "seed", "conservatism_local_levels", "conservatism_migrant_levels",
    "speed_levels", "replications", "parallelism",
};

} // namespace

std::vector<std::string> setting_keys() { return kKeys; }

void apply_setting(SweepSpec& spec, std::string_view raw_key, std::string_view value) {
    const auto key = trim(raw_key);
    auto& p = spec.base;
    if (key == "number_local") p.number_local = parse_number<int>(key, value);
    else if (key == "number_migrant") p.number_migrant = parse_number<int>(key, value);
    else if (key == "conservatism_local") p.conservatism_local = parse_number<double>(key, value);
    else if (key == "conservatism_migrant") p.conservatism_migrant = parse_number<double>(key, value);
    else if (key == "init_sd") p.init_sd = parse_number<double>(key, value);
    else if (key == "speed_intake") p.speed_intake = parse_number<int>(key, value);
    else if (key == "intake_policy") p.intake_policy = parse_intake_policy(trim(value));
    else if (key == "ticks") p.ticks = parse_number<int>(key, value);
    else if (key == "grid_width") p.grid_width = parse_number<int>(key, value);
    else if (key == "grid_height") p.grid_height = parse_number<int>(key, value);
    else if (key == "auto_scale_grid") p.auto_scale_grid = parse_bool(key, value);
    else if (key == "happiness_threshold") p.happiness_threshold = parse_number<double>(key, value);
    else if (key == "neighbor_radius") p.neighbor_radius = parse_number<double>(key, value);
    else if (key == "conservatism_bounds") {
        const auto bounds = parse_list<double>(key, value);
        if (bounds.size() != 2) throw Error(ErrorKind::Config, "conservatism_bounds needs exactly two values");
        p.conservatism_lower = bounds[0];
        p.conservatism_upper = bounds[1];
    } else if (key == "seed") p.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "conservatism_local_levels") spec.conservatism_local_levels = parse_list<double>(key, value);
    else if (key == "conservatism_migrant_levels") spec.conservatism_migrant_levels = parse_list<double>(key, value);
    else if (key == "speed_levels") spec.speed_levels = parse_list<int>(key, value);
    else if (key == "replications") spec.replications = parse_number<int>(key, value);
    else if (key == "parallelism") spec.parallelism = parse_number<int>(key, value);
    else throw Error(ErrorKind::Config, "unknown configuration key '" + key + "'");
}

std::string get_setting(const SweepSpec& spec, std::string_view key) {
    const auto& p = spec.base;
    if (key == "number_local") return std::to_string(p.number_local);
    if (key == "number_migrant") return std::to_string(p.number_migrant);
    if (key == "conservatism_local") return num(p.conservatism_local);
    if (key == "conservatism_migrant") return num(p.conservatism_migrant);
    if (key == "init_sd") return num(p.init_sd);
    if (key == "speed_intake") return std::to_string(p.speed_intake);
    if (key == "intake_policy") return std::string(to_string(p.intake_policy));
    if (key == "ticks") return std::to_string(p.ticks);
    if (key == "grid_width") return std::to_string(p.grid_width);
    if (key == "grid_height") return std::to_string(p.grid_height);
    if (key == "auto_scale_grid") return p.auto_scale_grid ? "true" : "false";
    if (key == "happiness_threshold") return num(p.happiness_threshold);
    if (key == "neighbor_radius") return num(p.neighbor_radius);
    if (key == "conservatism_bounds") return num(p.conservatism_lower) + ", " + num(p.conservatism_upper);
    if (key == "seed") return std::to_string(p.seed);
    if (key == "conservatism_local_levels") return join(spec.conservatism_local_levels);
    if (key == "conservatism_migrant_levels") return join(spec.conservatism_migrant_levels);
    if (key == "speed_levels") return join(spec.speed_levels);
    if (key == "replications") return std::to_string(spec.replications);
    if (key == "parallelism") return std::to_string(spec.parallelism);
    throw Error(ErrorKind::Config, "unknown configuration key '" + std::string(key) + "'");
}

void apply_config_text(SweepSpec& spec, std::string_view text, std::string_view origin) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!trim(line).empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw Error(ErrorKind::Config, std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
            try {
                apply_setting(spec, line.substr(0, eq), line.substr(eq + 1));
            } catch (const Error& e) {
                throw Error(e.kind(), std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

void load_config_file(SweepSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(spec, buffer.str(), path);
}

std::string dump_config(const SweepSpec& spec) {
    std::string out;
    for (const auto& key : kKeys) out += key + " = " + get_setting(spec, key) + "\n";
    return out;
}

} // namespace migragent
