#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace vtx {

/// Flat dotted-key configuration in a TOML-compatible subset: [section]
/// headers, `key = value` lines, numbers, booleans, quoted strings, and
/// (nested) arrays of numbers.  Comments start with '#'.  Unknown keys are
/// rejected at validation time, not parse time.
class Config {
public:
    using Value = std::variant<double, bool, std::string,
                               std::vector<double>,
                               std::vector<std::vector<double>>>;

    static Config parse_file(const std::string& path);
    static Config parse(const std::string& text);

    bool has(const std::string& key) const;

    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    long integer(const std::string& key) const;
    long integer_or(const std::string& key, long fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> list(const std::string& key) const;
    std::vector<std::vector<double>> table(const std::string& key) const;

    /// Throws ConfigError naming the first key outside `known`.
    void require_known(const std::vector<std::string>& known) const;

    const std::map<std::string, Value>& entries() const { return entries_; }

private:
    std::map<std::string, Value> entries_;
};

} // namespace vtx
