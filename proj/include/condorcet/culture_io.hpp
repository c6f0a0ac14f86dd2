#pragma once

// Culture serialization.
//
//   JSON: {"m": 3, "probs": [p0, ..., p5]}     (canonical index order)
//   CSV:  order,prob
//         0-1-2,0.16666666666666666
//         ...
//
// Both writers emit every probability with 17 significant digits, so a
// written culture reloads bit-identically.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "culture.hpp"
#include "errors.hpp"

namespace condorcet {

/// "0-2-1" for the order (0, 2, 1).
[[nodiscard]] inline std::string format_order(const RankOrder& o) {
    std::string s;
    for (int r = 0; r < o.size(); ++r) {
        if (r > 0)
            s += '-';
        s += std::to_string(o[r]);
    }
    return s;
}

[[nodiscard]] inline RankOrder parse_order(std::string_view text) {
    std::vector<Candidate> seq;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t dash = text.find('-', start);
        const std::string_view field =
            text.substr(start, dash == std::string_view::npos ? std::string_view::npos
                                                              : dash - start);
        if (field.empty())
            throw ParseError("empty candidate index in order '" + std::string(text) + "'");
        int v = 0;
        for (char ch : field) {
            if (ch < '0' || ch > '9')
                throw ParseError("non-numeric candidate index in order '" +
                                 std::string(text) + "'");
            v = v * 10 + (ch - '0');
            if (v > 1000)
                throw ParseError("candidate index too large in order '" +
                                 std::string(text) + "'");
        }
        seq.push_back(v);
        if (dash == std::string_view::npos)
            break;
        start = dash + 1;
    }
    try {
        return RankOrder(std::move(seq));
    } catch (const DomainError&) {
        throw ParseError("order '" + std::string(text) +
                         "' is not a permutation of 0..m-1");
    }
}

[[nodiscard]] inline std::string format_probability(double p) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

[[nodiscard]] inline nlohmann::json culture_to_json(const Culture& c) {
    nlohmann::json j;
    j["m"] = c.m();
    j["probs"] = std::vector<double>(c.probs().begin(), c.probs().end());
    return j;
}

[[nodiscard]] inline std::string culture_to_csv(const Culture& c) {
    std::string out = "order,prob\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        out += format_order(c.order(i));
        out += ',';
        out += format_probability(c.prob(i));
        out += '\n';
    }
    return out;
}

namespace detail {

// Culture construction with the DomainError rewrapped as a ParseError.
inline Culture checked_culture(int m, std::vector<double> probs, const std::string& where) {
    try {
        return Culture(m, std::move(probs));
    } catch (const DomainError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline double parse_double_field(const std::string& field, const std::string& where) {
    if (field.empty())
        throw ParseError(where + ": empty probability field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        throw ParseError(where + ": malformed probability '" + field + "'");
    return v;
}

inline std::string trim(std::string s) {
    const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

} // namespace detail

/// Parses the JSON culture format. `expected_m` of 0 accepts any m.
[[nodiscard]] inline Culture culture_from_json(const nlohmann::json& j, int expected_m = 0) {
    if (!j.is_object() || !j.contains("m") || !j.contains("probs"))
        throw ParseError("culture JSON: expected an object with fields \"m\" and \"probs\"");
    if (!j["m"].is_number_integer())
        throw ParseError("culture JSON: field \"m\" must be an integer");
    const int m = j["m"].get<int>();
    if (expected_m != 0 && m != expected_m)
        throw ParseError("culture JSON: field \"m\" is " + std::to_string(m) +
                         " but m = " + std::to_string(expected_m) + " was requested");
    if (m < kMinCandidates || m > kMaxCandidates)
        throw ParseError("culture JSON: field \"m\" must lie in [2, 8]");
    const auto& arr = j["probs"];
    if (!arr.is_array())
        throw ParseError("culture JSON: field \"probs\" must be an array");
    if (arr.size() != factorial(m))
        throw ParseError("culture JSON: field \"probs\" has " + std::to_string(arr.size()) +
                         " entries, expected " + std::to_string(factorial(m)));
    std::vector<double> probs;
    probs.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number())
            throw ParseError("culture JSON: probs[" + std::to_string(i) + "] is not a number");
        probs.push_back(arr[i].get<double>());
    }
    return detail::checked_culture(m, std::move(probs), "culture JSON");
}

/// Parses the CSV culture format. Every one of the m! orders must appear
/// exactly once. `expected_m` of 0 infers m from the first data row.
[[nodiscard]] inline Culture culture_from_csv(std::string_view text, int expected_m = 0,
                                              const std::string& source = "culture CSV") {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    int m = expected_m;
    std::vector<double> probs;
    std::vector<bool> seen;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (detail::trim(line).empty())
            continue;
        const std::string where = source + ":" + std::to_string(line_no);
        if (!header_seen) {
            if (detail::trim(line) != "order,prob")
                throw ParseError(where + ": expected header 'order,prob'");
            header_seen = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError(where + ": expected exactly two fields 'order,prob'");
        const std::string order_field = detail::trim(line.substr(0, comma));
        const std::string prob_field = detail::trim(line.substr(comma + 1));

        RankOrder order;
        try {
            order = parse_order(order_field);
        } catch (const ParseError& e) {
            throw ParseError(where + ": field 'order': " + e.what());
        }
        if (m == 0)
            m = order.size();
        if (m < kMinCandidates || m > kMaxCandidates)
            throw ParseError(where + ": field 'order': m must lie in [2, 8]");
        if (order.size() != m)
            throw ParseError(where + ": field 'order': expected " + std::to_string(m) +
                             " candidates, got " + std::to_string(order.size()));
        if (probs.empty()) {
            probs.assign(factorial(m), 0.0);
            seen.assign(factorial(m), false);
        }
        const double p = detail::parse_double_field(prob_field, where + ": field 'prob'");
        const std::size_t idx = rank_order_index(order);
        if (seen[idx])
            throw ParseError(where + ": field 'order': duplicate order " + order_field);
        seen[idx] = true;
        probs[idx] = p;
        ++rows;
    }
    if (!header_seen)
        throw ParseError(source + ": empty input, expected header 'order,prob'");
    if (rows == 0)
        throw ParseError(source + ": no data rows");
    if (rows != probs.size())
        throw ParseError(source + ": expected " + std::to_string(probs.size()) +
                         " rows for m = " + std::to_string(m) + ", got " + std::to_string(rows));
    return detail::checked_culture(m, std::move(probs), source);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open culture file '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Loads a culture file; ".json" selects JSON, anything else is read as CSV.
[[nodiscard]] inline Culture load_culture_file(const std::string& path, int expected_m = 0) {
    const std::string text = read_text_file(path);
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (is_json) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path + ": " + e.what());
        }
        try {
            return culture_from_json(j, expected_m);
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    return culture_from_csv(text, expected_m, path);
}

} // namespace condorcet
