#include "dlsa/config_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dlsa {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw ConfigParseError("config line " + std::to_string(line_no) + ": " + what);
}

long long parse_int(const std::string& s, int line_no) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        fail(line_no, "expected integer, got '" + s + "'");
    return v;
}

double parse_real(const std::string& s, int line_no) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) fail(line_no, "expected number, got '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(line_no, "expected number, got '" + s + "'");
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

NetworkConfig parse_config_text(const std::string& text) {
    NetworkConfig cfg;
    std::set<std::string> seen;
    bool commodities_all = true;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (const auto eq = line.find('='); eq != std::string::npos) {
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) fail(line_no, "malformed key = value");
            if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

            if (key == "nodes") {
                cfg.node_count = static_cast<int>(parse_int(value, line_no));
            } else if (key == "out_degree_limit") {
                cfg.out_degree_limit = static_cast<int>(parse_int(value, line_no));
            } else if (key == "in_degree_limit") {
                cfg.in_degree_limit = static_cast<int>(parse_int(value, line_no));
            } else if (key == "admission_cap") {
                cfg.admission_cap = parse_real(value, line_no);
            } else if (key == "power_cap") {
                cfg.power_cap = parse_real(value, line_no);
            } else if (key == "avg_power_budget") {
                cfg.avg_power_budget = parse_real(value, line_no);
            } else if (key == "utility") {
                if (!utility_from_string(value, cfg.utility))
                    fail(line_no, "unknown utility '" + value + "'");
            } else if (key == "rate") {
                if (!rate_from_string(value, cfg.rate))
                    fail(line_no, "unknown rate '" + value + "'");
            } else if (key == "control_V") {
                cfg.control_V = parse_real(value, line_no);
            } else if (key == "horizon") {
                cfg.horizon = parse_int(value, line_no);
            } else if (key == "seed") {
                cfg.seed = static_cast<uint64_t>(parse_int(value, line_no));
            } else if (key == "commodities") {
                if (value == "all") {
                    commodities_all = true;
                } else {
                    commodities_all = false;
                    cfg.commodities.clear();
                    std::string item;
                    std::istringstream items(value);
                    while (std::getline(items, item, ',')) {
                        item = trim(item);
                        if (item.empty()) fail(line_no, "empty commodity entry");
                        cfg.commodities.push_back(
                            static_cast<int>(parse_int(item, line_no)));
                    }
                }
            } else {
                fail(line_no, "unknown key '" + key + "'");
            }
            continue;
        }

        const auto tok = split_ws(line);
        if (tok[0] == "link") {
            if (tok.size() != 3) fail(line_no, "expected: link <from> <to>");
            cfg.links.emplace_back(static_cast<int>(parse_int(tok[1], line_no)),
                                   static_cast<int>(parse_int(tok[2], line_no)));
        } else if (tok[0] == "state") {
            if (tok.size() != 4)
                fail(line_no, "expected: state <label> <alpha> <prob>");
            cfg.channel_states.push_back(
                {tok[1], parse_real(tok[2], line_no), parse_real(tok[3], line_no)});
        } else if (tok[0] == "admit") {
            if (tok.size() != 3) fail(line_no, "expected: admit <node> <commodity>");
            cfg.admitting_pairs.emplace_back(
                static_cast<int>(parse_int(tok[1], line_no)),
                static_cast<int>(parse_int(tok[2], line_no)));
        } else {
            fail(line_no, "unknown directive '" + tok[0] + "'");
        }
    }

    if (commodities_all) {
        cfg.commodities.clear();
        for (int i = 0; i < cfg.node_count; ++i) cfg.commodities.push_back(i);
    }
    return cfg;
}

NetworkConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace dlsa
