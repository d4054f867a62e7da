/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mimocache/analysis/coverage_table.hpp"
#include "mimocache/errors.hpp"
#include "mimocache/network/params.hpp"
#include "mimocache/types.hpp"

namespace mimocache::harness {

/// Everything a CLI run depends on. Defaults reproduce the reference
/// scenario: 4000 m x 4000 m window, lambda = 5e-5, alpha = 4, N = 100,
/// M = 10, Zipf 0.9, K = L = 2.
struct ExperimentConfig {
    network::NetworkParams network;
    int library_size = 100;
    int cache_size = 10;
    double zipf_delta = 0.9;
    std::vector<Scheme> schemes{Scheme::MatchedFilter, Scheme::ZeroForcing};
    std::vector<double> gamma_db{-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 20260101;
    unsigned threads = 0;
    bool fast_interference = false;
    /// Coverage fed to the optimizer: upper, lower, exact.
    analysis::Method optimizer_coverage = analysis::Method::Upper;
    std::vector<int> sweep_antennas{2, 4};
    std::vector<double> sweep_delta{0.3, 0.6, 0.9, 1.2, 1.5, 2.0};
    std::string output_dir = "out";
    std::string level = "quick";
    bool plot_script = false;

    void validate() const;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text, int line)
{
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key), fmt::format("cannot parse '{}' as a number", text), line);
    }
    return value;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text, int line)
{
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        out.push_back(parse_number<T>(key, item, line));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline bool parse_bool(std::string_view key, std::string_view text, int line)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(std::string(key), fmt::format("expected true or false, got '{}'", text), line);
}

inline std::vector<Scheme> parse_schemes(std::string_view key, std::string_view text, int line)
{
    std::vector<Scheme> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        try {
            out.push_back(parse_scheme(item));
        } catch (const DomainError& e) {
            throw ConfigError(std::string(key), e.what(), line);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline analysis::Method parse_coverage_source(std::string_view key, std::string_view text, int line)
{
    text = trim(text);
    if (text == "upper") {
        return analysis::Method::Upper;
    }
    if (text == "lower") {
        return analysis::Method::Lower;
    }
    if (text == "exact") {
        return analysis::Method::Exact;
    }
    throw ConfigError(std::string(key), fmt::format("expected upper, lower or exact, got '{}'", text), line);
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, int)>;

inline const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = {
        {"lambda_b", [](auto& c, auto v, int l) { c.network.lambda_b = parse_number<double>("lambda_b", v, l); }},
        {"alpha", [](auto& c, auto v, int l) { c.network.alpha = parse_number<double>("alpha", v, l); }},
        {"antennas", [](auto& c, auto v, int l) { c.network.antennas = parse_number<int>("antennas", v, l); }},
        {"cluster_size",
         [](auto& c, auto v, int l) { c.network.cluster_size = parse_number<int>("cluster_size", v, l); }},
        {"region_half_width",
         [](auto& c, auto v, int l) { c.network.region_half_width = parse_number<double>("region_half_width", v, l); }},
        {"guard_radius",
         [](auto& c, auto v, int l) { c.network.guard_radius = parse_number<double>("guard_radius", v, l); }},
        {"library_size", [](auto& c, auto v, int l) { c.library_size = parse_number<int>("library_size", v, l); }},
        {"cache_size", [](auto& c, auto v, int l) { c.cache_size = parse_number<int>("cache_size", v, l); }},
        {"zipf_delta", [](auto& c, auto v, int l) { c.zipf_delta = parse_number<double>("zipf_delta", v, l); }},
        {"schemes", [](auto& c, auto v, int l) { c.schemes = parse_schemes("schemes", v, l); }},
        {"gamma_db", [](auto& c, auto v, int l) { c.gamma_db = parse_list<double>("gamma_db", v, l); }},
        {"trials", [](auto& c, auto v, int l) { c.trials = parse_number<std::uint64_t>("trials", v, l); }},
        {"seed", [](auto& c, auto v, int l) { c.seed = parse_number<std::uint64_t>("seed", v, l); }},
        {"threads", [](auto& c, auto v, int l) { c.threads = parse_number<unsigned>("threads", v, l); }},
        {"fast_interference",
         [](auto& c, auto v, int l) { c.fast_interference = parse_bool("fast_interference", v, l); }},
        {"optimizer_coverage",
         [](auto& c, auto v, int l) { c.optimizer_coverage = parse_coverage_source("optimizer_coverage", v, l); }},
        {"sweep_antennas",
         [](auto& c, auto v, int l) { c.sweep_antennas = parse_list<int>("sweep_antennas", v, l); }},
        {"sweep_delta", [](auto& c, auto v, int l) { c.sweep_delta = parse_list<double>("sweep_delta", v, l); }},
        {"output_dir", [](auto& c, auto v, int) { c.output_dir = std::string(trim(v)); }},
        {"level", [](auto& c, auto v, int) { c.level = std::string(trim(v)); }},
        {"plot_script", [](auto& c, auto v, int l) { c.plot_script = parse_bool("plot_script", v, l); }},
    };
    return table;
}

} // namespace detail

/// Applies one `key = value` assignment (line 0 for command-line input).
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value, int line = 0)
{
    const auto& table = detail::setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError(std::string(key), "unknown key", line);
    }
    it->second(cfg, value, line);
}

/// Parses `key = value` lines; '#' starts a comment. Later keys override
/// earlier ones. The result is validated.
inline ExperimentConfig parse_config(std::string_view text, ExperimentConfig cfg = {})
{
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
        ++line_no;
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", fmt::format("expected 'key = value', got '{}'", line), line_no);
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (value.empty()) {
            throw ConfigError(std::string(key), "missing value", line_no);
        }
        apply_setting(cfg, key, value, line_no);
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig cfg = {})
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(cfg));
}

inline void ExperimentConfig::validate() const
{
    try {
        network.validate();
    } catch (const DomainError& e) {
        throw ConfigError("network", e.what());
    }
    for (Scheme s : schemes) {
        try {
            network.validate(s);
        } catch (const DomainError& e) {
            throw ConfigError("schemes", e.what());
        }
    }
    if (schemes.empty()) {
        throw ConfigError("schemes", "at least one scheme is required");
    }
    if (library_size < 1) {
        throw ConfigError("library_size", "must be >= 1");
    }
    if (cache_size < 0) {
        throw ConfigError("cache_size", "must be >= 0");
    }
    if (!(zipf_delta >= 0.0)) {
        throw ConfigError("zipf_delta", "must be nonnegative");
    }
    if (gamma_db.empty()) {
        throw ConfigError("gamma_db", "at least one SIR target is required");
    }
    for (double g : gamma_db) {
        if (!std::isfinite(g)) {
            throw ConfigError("gamma_db", "targets must be finite");
        }
    }
    if (trials < 1) {
        throw ConfigError("trials", "must be >= 1");
    }
    for (int L : sweep_antennas) {
        if (L < 1) {
            throw ConfigError("sweep_antennas", "antenna counts must be >= 1");
        }
    }
    for (double d : sweep_delta) {
        if (!(d >= 0.0)) {
            throw ConfigError("sweep_delta", "skewness values must be nonnegative");
        }
    }
    if (level != "quick" && level != "full") {
        throw ConfigError("level", "expected quick or full, got '" + level + "'");
    }
    if (output_dir.empty()) {
        throw ConfigError("output_dir", "must not be empty");
    }
}

/// Fully resolved configuration in the same `key = value` syntax.
inline std::string render_config(const ExperimentConfig& c)
{
    std::vector<std::string> schemes;
    for (Scheme s : c.schemes) {
        schemes.emplace_back(to_string(s));
    }
    std::string out;
    auto put = [&out](std::string_view key, const auto& value) { out += fmt::format("{} = {}\n", key, value); };
    put("lambda_b", c.network.lambda_b);
    put("alpha", c.network.alpha);
    put("antennas", c.network.antennas);
    put("cluster_size", c.network.cluster_size);
    put("region_half_width", c.network.region_half_width);
    put("guard_radius", c.network.guard_radius);
    put("library_size", c.library_size);
    put("cache_size", c.cache_size);
    put("zipf_delta", c.zipf_delta);
    put("schemes", fmt::format("{}", fmt::join(schemes, ",")));
    put("gamma_db", fmt::format("{}", fmt::join(c.gamma_db, ",")));
    put("trials", c.trials);
    put("seed", c.seed);
    put("threads", c.threads);
    put("fast_interference", c.fast_interference);
    put("optimizer_coverage", analysis::to_string(c.optimizer_coverage));
    put("sweep_antennas", fmt::format("{}", fmt::join(c.sweep_antennas, ",")));
    put("sweep_delta", fmt::format("{}", fmt::join(c.sweep_delta, ",")));
    put("output_dir", c.output_dir);
    put("level", c.level);
    put("plot_script", c.plot_script);
    return out;
}

} // namespace mimocache::harness
