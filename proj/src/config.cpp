#include "vortexlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vortexlab/errors.hpp"

namespace vtx {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

struct ArrayParser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
    }

    double parse_number() {
        skip_ws();
        std::size_t end = pos;
        while (end < s.size() && std::string("+-0123456789.eE_").find(s[end]) !=
                                     std::string::npos) {
            ++end;
        }
        std::string tok = s.substr(pos, end - pos);
        tok.erase(std::remove(tok.begin(), tok.end(), '_'), tok.end());
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad number '" + tok + "'");
        }
        if (used != tok.size()) throw ConfigError("bad number '" + tok + "'");
        pos = end;
        return v;
    }

    // parse after '[': flat list or list of lists
    Config::Value parse_array() {
        skip_ws();
        if (pos < s.size() && s[pos] == '[') {
            std::vector<std::vector<double>> rows;
            while (true) {
                skip_ws();
                if (pos >= s.size()) throw ConfigError("unterminated array");
                if (s[pos] == ']') { ++pos; break; }
                if (s[pos] == ',') { ++pos; continue; }
                if (s[pos] != '[') throw ConfigError("expected nested array");
                ++pos;
                std::vector<double> row;
                while (true) {
                    skip_ws();
                    if (pos >= s.size()) throw ConfigError("unterminated array");
                    if (s[pos] == ']') { ++pos; break; }
                    if (s[pos] == ',') { ++pos; continue; }
                    row.push_back(parse_number());
                }
                rows.push_back(std::move(row));
            }
            return rows;
        }
        std::vector<double> flat;
        while (true) {
            skip_ws();
            if (pos >= s.size()) throw ConfigError("unterminated array");
            if (s[pos] == ']') { ++pos; break; }
            if (s[pos] == ',') { ++pos; continue; }
            flat.push_back(parse_number());
        }
        return flat;
    }
};

Config::Value parse_value(const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("missing value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') throw ConfigError("unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '[') {
        ArrayParser p{v, 1};
        Config::Value out = p.parse_array();
        p.skip_ws();
        if (p.pos != v.size()) throw ConfigError("trailing junk after array");
        return out;
    }
    ArrayParser p{v, 0};
    const double num = p.parse_number();
    p.skip_ws();
    if (p.pos != v.size()) throw ConfigError("trailing junk after value '" + v + "'");
    return num;
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": empty section name");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        }
        if (!section.empty()) key = section + "." + key;
        if (cfg.entries_.count(key)) {
            throw ConfigError("duplicate key '" + key + "'");
        }
        try {
            cfg.entries_[key] = parse_value(line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + " ('" + key +
                              "'): " + e.what());
        }
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

double Config::number(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    throw ConfigError("key '" + key + "' is not a number");
}

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

long Config::integer(const std::string& key) const {
    const double v = number(key);
    const long n = std::lround(v);
    if (std::fabs(v - static_cast<double>(n)) > 1e-9) {
        throw ConfigError("key '" + key + "' is not an integer");
    }
    return n;
}

long Config::integer_or(const std::string& key, long fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool Config::boolean_or(const std::string& key, bool fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (const bool* v = std::get_if<bool>(&it->second)) return *v;
    throw ConfigError("key '" + key + "' is not a boolean");
}

std::string Config::text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
    if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
    throw ConfigError("key '" + key + "' is not a string");
}

std::string Config::text_or(const std::string& key,
                            const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
}

std::vector<double> Config::list(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    throw ConfigError("key '" + key + "' is not a flat array");
}

std::vector<std::vector<double>> Config::table(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
    if (const auto* v =
            std::get_if<std::vector<std::vector<double>>>(&it->second)) {
        return *v;
    }
    throw ConfigError("key '" + key + "' is not an array of arrays");
}

void Config::require_known(const std::vector<std::string>& known) const {
    for (const auto& [key, value] : entries_) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

} // namespace vtx
