#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cachenet::cli {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& message) {
    std::ostringstream os;
    os << source;
    if (line > 0) os << ":" << line;
    os << ": " << message;
    throw ConfigError(os.str());
}

double parse_double(const std::string& source, const RawConfig::Entry& e,
                    const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(source, e.line, "field '" + key + "': cannot parse '" + e.value + "' as a number");
    }
}

std::uint64_t parse_uint(const std::string& source, const RawConfig::Entry& e,
                         const std::string& key) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size() || v < 0) throw std::invalid_argument("not a count");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        fail(source, e.line, "field '" + key + "': cannot parse '" + e.value + "' as a count");
    }
}

bool parse_bool(const std::string& source, const RawConfig::Entry& e, const std::string& key) {
    std::string v = lower(e.value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(source, e.line, "field '" + key + "': cannot parse '" + e.value + "' as a boolean");
}

// key -> section it belongs to
const std::map<std::string, std::string>& key_sections() {
    static const std::map<std::string, std::string> table = {
        {"library_size", "catalog"},
        {"zipf_shape", "catalog"},
        {"user_capacity", "catalog"},
        {"helper_capacity", "catalog"},
        {"policy", "catalog"},
        {"helper_power_mw", "phy"},
        {"dc_power_mw", "phy"},
        {"r_sd", "phy"},
        {"r_su", "phy"},
        {"r_dcd", "phy"},
        {"r_dcu", "phy"},
        {"pathloss_exponent", "phy"},
        {"noise_w", "phy"},
        {"threshold_db", "phy"},
        {"p_sd_s", "links"},
        {"p_sd_s_dc", "links"},
        {"p_su_s", "links"},
        {"p_dc_dc", "links"},
        {"p_dc_s_dc", "links"},
        {"arrival_rate", "traffic"},
        {"tx_prob", "traffic"},
        {"helper_assist_prob", "traffic"},
        {"dc_availability", "traffic"},
        {"external_request_prob", "traffic"},
        {"helper_hit_prob", "traffic"},
        {"helper_retry_uses_su_link", "traffic"},
        {"weight", "traffic"},
        {"regime", "optimize"},
        {"grid_step", "optimize"},
        {"num_slots", "sim"},
        {"warmup_slots", "sim"},
        {"num_replications", "sim"},
        {"seed", "sim"},
        {"request_model", "sim"},
        {"axis", "sweep"},
        {"start", "sweep"},
        {"stop", "sweep"},
        {"step", "sweep"},
        {"values", "sweep"},
    };
    return table;
}

}  // namespace

std::vector<double> SweepSpec::points() const {
    if (axis == Axis::none) return {};
    if (!values.empty()) return values;
    if (!(step > 0.0)) throw ConfigError("sweep: step must be > 0");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
    if (out.empty()) throw ConfigError("sweep: empty range");
    return out;
}

void RawConfig::set(const std::string& section, const std::string& key,
                    const std::string& value, int line) {
    sections[section][key] = Entry{value, line};
}

RawConfig parse_raw_config(const std::string& text, const std::string& source_name) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(source_name, lineno, "unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) fail(source_name, lineno, "empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(source_name, lineno, "expected key = value");
        std::string key = lower(trim(line.substr(0, eq)));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(source_name, lineno, "empty key");
        if (section.empty()) fail(source_name, lineno, "key '" + key + "' outside any section");
        auto sect_it = key_sections().find(key);
        if (sect_it == key_sections().end()) fail(source_name, lineno, "unknown key '" + key + "'");
        if (sect_it->second != section) {
            fail(source_name, lineno,
                 "key '" + key + "' belongs to section [" + sect_it->second + "]");
        }
        raw.set(section, key, value, lineno);
    }
    return raw;
}

RawConfig load_raw_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_raw_config(buf.str(), path);
}

void apply_override(RawConfig& raw, const std::string& key, const std::string& value) {
    auto it = key_sections().find(lower(key));
    if (it == key_sections().end()) throw ConfigError("unknown override key '" + key + "'");
    raw.set(it->second, it->first, value, 0);
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& [key, section] : key_sections()) out.push_back(key);
        return out;
    }();
    return keys;
}

ExperimentSpec build_spec(const RawConfig& raw) {
    const std::string src = "config";
    ExperimentSpec spec;

    auto section = [&](const std::string& name) -> const std::map<std::string, RawConfig::Entry>* {
        auto it = raw.sections.find(name);
        return it == raw.sections.end() ? nullptr : &it->second;
    };
    auto entry = [&](const std::map<std::string, RawConfig::Entry>& sec, const std::string& key)
        -> const RawConfig::Entry* {
        auto it = sec.find(key);
        return it == sec.end() ? nullptr : &it->second;
    };

    if (const auto* sec = section("catalog")) {
        CatalogSpec cat;
        for (const auto& [key, e] : *sec) {
            if (key == "library_size") cat.library_size = parse_uint(src, e, key);
            else if (key == "zipf_shape") cat.zipf_shape = parse_double(src, e, key);
            else if (key == "user_capacity") cat.user_capacity = parse_uint(src, e, key);
            else if (key == "helper_capacity") cat.helper_capacity = parse_uint(src, e, key);
            else if (key == "policy") {
                std::string v = lower(e.value);
                if (v == "mpc") cat.policy = CachePolicy::MPC;
                else if (v == "cmpc") cat.policy = CachePolicy::CMPC;
                else fail(src, e.line, "field 'policy': expected mpc or cmpc");
            }
        }
        spec.catalog = cat;
    }

    if (const auto* sec = section("phy")) {
        NetworkGeometry g;
        for (const auto& [key, e] : *sec) {
            double v = parse_double(src, e, key);
            if (key == "helper_power_mw") g.helper_power_mw = v;
            else if (key == "dc_power_mw") g.dc_power_mw = v;
            else if (key == "r_sd") g.helper_dest_distance_m = v;
            else if (key == "r_su") g.helper_user_distance_m = v;
            else if (key == "r_dcd") g.dc_dest_distance_m = v;
            else if (key == "r_dcu") g.dc_user_distance_m = v;
            else if (key == "pathloss_exponent") g.pathloss_exponent = v;
            else if (key == "noise_w") g.noise_power_w = v;
            else if (key == "threshold_db") g.threshold_db = v;
        }
        spec.geometry = g;
    }

    if (const auto* sec = section("links")) {
        LinkProbabilities links;
        for (const auto& [key, e] : *sec) {
            double v = parse_double(src, e, key);
            if (key == "p_sd_s") links.p_sd_s = v;
            else if (key == "p_sd_s_dc") links.p_sd_s_dc = v;
            else if (key == "p_su_s") links.p_su_s = v;
            else if (key == "p_dc_dc") links.p_dc_dc = v;
            else if (key == "p_dc_s_dc") links.p_dc_s_dc = v;
        }
        spec.explicit_links = links;
    }

    if (const auto* sec = section("traffic")) {
        for (const auto& [key, e] : *sec) {
            if (key == "arrival_rate") spec.arrival_rate = parse_double(src, e, key);
            else if (key == "tx_prob") spec.tx_prob = parse_double(src, e, key);
            else if (key == "helper_assist_prob") spec.helper_assist_prob = parse_double(src, e, key);
            else if (key == "dc_availability") spec.dc_availability = parse_double(src, e, key);
            else if (key == "external_request_prob") spec.explicit_q_u = parse_double(src, e, key);
            else if (key == "helper_hit_prob") spec.explicit_p_h = parse_double(src, e, key);
            else if (key == "helper_retry_uses_su_link")
                spec.helper_retry_uses_su_link = parse_bool(src, e, key);
            else if (key == "weight") spec.weight = parse_double(src, e, key);
        }
    }

    if (const auto* sec = section("optimize")) {
        if (const auto* e = entry(*sec, "regime")) {
            std::string v = lower(e->value);
            if (v == "stable") spec.optimize_regime = Regime::stable;
            else if (v == "unstable") spec.optimize_regime = Regime::unstable;
            else fail(src, e->line, "field 'regime': expected stable or unstable");
        }
        if (const auto* e = entry(*sec, "grid_step")) spec.grid_step = parse_double(src, *e, "grid_step");
    }

    if (const auto* sec = section("sim")) {
        for (const auto& [key, e] : *sec) {
            if (key == "num_slots") spec.num_slots = parse_uint(src, e, key);
            else if (key == "warmup_slots") spec.warmup_slots = parse_uint(src, e, key);
            else if (key == "num_replications")
                spec.num_replications = static_cast<std::uint32_t>(parse_uint(src, e, key));
            else if (key == "seed") spec.seed = parse_uint(src, e, key);
            else if (key == "request_model") {
                std::string v = lower(e.value);
                if (v == "memoryless") spec.request_model = RequestModel::memoryless;
                else if (v == "persistent") spec.request_model = RequestModel::persistent;
                else fail(src, e.line, "field 'request_model': expected memoryless or persistent");
            }
        }
    }

    if (const auto* sec = section("sweep")) {
        for (const auto& [key, e] : *sec) {
            if (key == "axis") {
                std::string v = lower(e.value);
                if (v == "lambda") spec.sweep.axis = SweepSpec::Axis::lambda;
                else if (v == "alpha") spec.sweep.axis = SweepSpec::Axis::alpha;
                else if (v == "q_s") spec.sweep.axis = SweepSpec::Axis::q_s;
                else if (v == "m_u") spec.sweep.axis = SweepSpec::Axis::m_u;
                else if (v == "w") spec.sweep.axis = SweepSpec::Axis::w;
                else fail(src, e.line, "field 'axis': expected lambda, alpha, q_s, m_u or w");
            } else if (key == "start") spec.sweep.start = parse_double(src, e, key);
            else if (key == "stop") spec.sweep.stop = parse_double(src, e, key);
            else if (key == "step") spec.sweep.step = parse_double(src, e, key);
            else if (key == "values") {
                std::istringstream vs(e.value);
                std::string tok;
                while (std::getline(vs, tok, ',')) {
                    tok = trim(tok);
                    if (tok.empty()) continue;
                    try {
                        spec.sweep.values.push_back(std::stod(tok));
                    } catch (const std::exception&) {
                        fail(src, e.line, "field 'values': cannot parse '" + tok + "'");
                    }
                }
            }
        }
    }

    // A quantity must come from exactly one source.
    if (spec.catalog && (spec.explicit_q_u || spec.explicit_p_h)) {
        throw ConfigError(
            "config: external_request_prob/helper_hit_prob conflict with [catalog]; "
            "give either the catalog or the explicit probabilities");
    }
    if (spec.geometry && spec.explicit_links) {
        throw ConfigError("config: [links] conflicts with [phy]; give one of the two");
    }
    if (!spec.catalog && !(spec.explicit_q_u && spec.explicit_p_h)) {
        throw ConfigError(
            "config: need a [catalog] or explicit external_request_prob and helper_hit_prob");
    }
    if (!spec.geometry && !spec.explicit_links) {
        throw ConfigError("config: need a [phy] geometry or explicit [links] probabilities");
    }
    if (spec.sweep.axis == SweepSpec::Axis::m_u && !spec.catalog) {
        throw ConfigError("config: sweep over m_u requires a [catalog]");
    }
    return spec;
}

ScenarioParams ExperimentSpec::resolve_params() const {
    ScenarioParams params;
    params.arrival_rate = arrival_rate;
    params.tx_prob = tx_prob;
    params.helper_assist_prob = helper_assist_prob;
    params.dc_availability = dc_availability;
    params.helper_retry_uses_su_link = helper_retry_uses_su_link;

    if (catalog) {
        ZipfCatalog cat(catalog->library_size, catalog->zipf_shape);
        CacheConfig cache{catalog->user_capacity, catalog->helper_capacity, catalog->policy};
        params.external_request_prob = external_request_prob(cat, cache);
        params.helper_hit_prob = helper_hit_prob(cat, cache);
    } else {
        params.external_request_prob = *explicit_q_u;
        params.helper_hit_prob = *explicit_p_h;
    }
    params.links = explicit_links ? *explicit_links : build_link_probabilities(*geometry);
    params.validate();
    return params;
}

const std::string& default_config_text() {
    static const std::string text = R"(# Built-in reference scenario.
[catalog]
library_size = 10000
zipf_shape = 0.5
user_capacity = 200
helper_capacity = 2000
policy = mpc

[phy]
helper_power_mw = 1
dc_power_mw = 10
r_sd = 50
r_su = 40
r_dcd = 100
r_dcu = 80
pathloss_exponent = 4
noise_w = 1e-11
threshold_db = 0

[traffic]
arrival_rate = 0.2
tx_prob = 0.9
helper_assist_prob = 0.5
dc_availability = 0.7
weight = 0.5
helper_retry_uses_su_link = false

[sim]
num_slots = 100000
num_replications = 20
request_model = memoryless
seed = 1
)";
    return text;
}

}  // namespace cachenet::cli
