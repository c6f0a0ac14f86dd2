#pragma once

// Command-line front end. run() does all the work against caller-supplied
// streams so it can be driven from tests; tools/condorcet.cpp is a thin main.
//
// Exit codes: 0 success, 1 computation or input-data error, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "condorcet.hpp"

namespace condorcet::cli {

enum class Format { Table, Csv, Json };

/// Parses "3,5,7", "3..10" and mixtures such as "3..10,19,20".
template <class Int>
std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](const std::string& s) -> Int {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty())
            throw CLI::ValidationError("list", "malformed integer '" + s + "' in '" + text + "'");
        return static_cast<Int>(v);
    };
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const Int lo = to_int(item.substr(0, dots));
        const Int hi = to_int(item.substr(dots + 2));
        if (hi < lo)
            throw CLI::ValidationError("list", "empty range '" + item + "'");
        for (Int v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    if (out.empty())
        throw CLI::ValidationError("list", "empty list");
    return out;
}

/// Named culture (`ic`, `cyclic`, `dc:<path>`) or a JSON/CSV culture file.
[[nodiscard]] inline Culture load_culture(const std::string& spec, int m) {
    if (spec == "ic")
        return impartial_culture(m);
    if (spec == "cyclic")
        return cyclic_minimizer_culture(m);
    if (spec.rfind("dc:", 0) == 0) {
        Culture c = load_culture_file(spec.substr(3), m);
        if (!is_dual_culture(c))
            throw ParseError(spec.substr(3) + ": culture is not dual (an order and its reversal differ)");
        return c;
    }
    return load_culture_file(spec, m);
}

namespace detail {

inline std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* mode_name(WinnerMode m) { return m == WinnerMode::Strong ? "strong" : "weak"; }

inline std::string signs_text(const std::array<int, 3>& s) {
    std::string out;
    for (int v : s)
        out += v > 0 ? '+' : (v < 0 ? '-' : '0');
    return out;
}

inline nlohmann::json winner_json(const WinnerProbability& p) {
    nlohmann::json j;
    j["value"] = p.value;
    j["method"] = method_name(p.method);
    if (p.stderr_value)
        j["stderr"] = *p.stderr_value;
    return j;
}

} // namespace detail

struct Options {
    int m = 0;
    std::string n_text;
    std::string m_text;
    std::string culture;
    std::string mode_text = "strong";
    double trials = 1e6;
    std::uint64_t seed = 20240101;
    double tol = kDefaultSignTolerance;
    std::string out_path;
    std::string format_text;
    std::string save_culture;
    double budget = 5e7;
    double samples = 1e7;
    bool table1 = false;
};

/// Runs one invocation. `stdout_is_tty` picks the default format (table on a
/// terminal, CSV otherwise) unless --format or --out is given.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err,
               bool stdout_is_tty = false) {
    CLI::App app{"Condorcet winner probabilities: exact, Monte Carlo and large-electorate limits"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);
    Options o;

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format_text, "Output format")
            ->check(CLI::IsMember({"csv", "json", "table"}));
        sub->add_option("--out", o.out_path, "Write results to this file instead of stdout");
    };
    const auto add_culture = [&](CLI::App* sub) {
        sub->add_option("--culture", o.culture, "ic | cyclic | dc:<path> | <path>.json | <path>.csv")
            ->required();
        sub->add_option("--m", o.m, "Number of candidates")->required()->check(CLI::Range(2, 8));
        sub->add_option("--save-culture", o.save_culture,
                        "Also write the loaded culture to this path (.json or CSV)");
    };

    auto* exact = app.add_subcommand("exact", "Exact probability by multinomial enumeration");
    add_culture(exact);
    exact->add_option("--n", o.n_text, "Voter count(s), e.g. 3,5 or 3..9")->required();
    exact->add_option("--mode", o.mode_text, "Winner definition")->check(CLI::IsMember({"strong", "weak"}));
    exact->add_option("--budget", o.budget, "Maximum number of profiles to enumerate");
    add_format(exact);

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate (one row per voter count)");
    add_culture(mc);
    mc->add_option("--n", o.n_text, "Ascending voter count(s)")->required();
    mc->add_option("--mode", o.mode_text, "Winner definition")->check(CLI::IsMember({"strong", "weak"}));
    mc->add_option("--trials", o.trials, "Profiles per estimate")->check(CLI::PositiveNumber);
    mc->add_option("--seed", o.seed, "RNG seed");
    add_format(mc);

    auto* limit = app.add_subcommand("limit", "Limit as the number of voters grows without bound");
    add_culture(limit);
    limit->add_option("--tol", o.tol, "Zero tolerance for lambda signs")->check(CLI::NonNegativeNumber);
    limit->add_option("--seed", o.seed, "Seed for Monte Carlo orthant terms (dimension >= 4 only)");
    add_format(limit);

    auto* classify = app.add_subcommand("classify", "Three-candidate table row and value");
    add_culture(classify);
    classify->add_option("--tol", o.tol, "Zero tolerance for lambda signs")->check(CLI::NonNegativeNumber);
    add_format(classify);

    auto* min_table = app.add_subcommand("min-table", "Minimum winner probability grid");
    min_table->add_option("--m", o.m_text, "Candidate counts, e.g. 3,4,5,10")->required();
    min_table->add_option("--n", o.n_text, "Voter counts, e.g. 3..10,19,20")->required();
    add_format(min_table);

    auto* ic_curve_cmd = app.add_subcommand("ic-curve", "Impartial-culture limit against m (plot data)");
    ic_curve_cmd->add_option("--m", o.m_text, "Candidate counts, e.g. 2..25")->required();
    add_format(ic_curve_cmd);

    auto* audit = app.add_subcommand("audit", "Audit the three-candidate table by Monte Carlo");
    audit->add_flag("--table1", o.table1, "Audit all 27 rows")->required();
    audit->add_option("--samples", o.samples, "Normal samples per orthant term (1e7 accepted)")
        ->check(CLI::PositiveNumber);
    audit->add_option("--seed", o.seed, "RNG seed");
    add_format(audit);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty())
        args.pop_back(); // program name
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (!app.get_subcommands().empty())
            err << "run with " << app.get_subcommands().front()->get_name() << " --help for usage\n";
        else
            err << "run with --help for usage\n";
        return 2;
    }

    std::vector<std::int64_t> ns;
    std::vector<int> ms;
    try {
        if (!o.n_text.empty())
            ns = parse_int_list<std::int64_t>(o.n_text);
        if (!o.m_text.empty())
            ms = parse_int_list<int>(o.m_text);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Format fmt = (stdout_is_tty && o.out_path.empty()) ? Format::Table : Format::Csv;
    if (o.format_text == "csv")
        fmt = Format::Csv;
    else if (o.format_text == "json")
        fmt = Format::Json;
    else if (o.format_text == "table")
        fmt = Format::Table;
    const WinnerMode mode = o.mode_text == "weak" ? WinnerMode::Weak : WinnerMode::Strong;
    const unsigned threads = thread_cap_from_env();

    std::ostringstream result;
    int status = 0;
    try {
        std::optional<Culture> culture;
        if (!o.culture.empty()) {
            culture = load_culture(o.culture, o.m);
            if (!o.save_culture.empty()) {
                std::ofstream f(o.save_culture, std::ios::binary);
                if (!f)
                    throw ParseError("cannot write culture file '" + o.save_culture + "'");
                const bool json = o.save_culture.size() >= 5 &&
                                  o.save_culture.compare(o.save_culture.size() - 5, 5, ".json") == 0;
                if (json)
                    f << culture_to_json(*culture).dump() << "\n";
                else
                    f << culture_to_csv(*culture);
            }
        }

        if (exact->parsed()) {
            for (auto n : ns)
                if (n < 1)
                    throw DomainError("--n values must be >= 1");
            ExactOptions eo;
            eo.budget = o.budget;
            eo.threads = threads;
            std::vector<WinnerProbability> values;
            for (auto n : ns)
                values.push_back(exact_winner_probability(*culture, n, mode, eo));
            if (fmt == Format::Json) {
                nlohmann::json j = nlohmann::json::array();
                for (std::size_t k = 0; k < ns.size(); ++k) {
                    nlohmann::json row = detail::winner_json(values[k]);
                    row["n"] = ns[k];
                    row["m"] = o.m;
                    row["mode"] = detail::mode_name(mode);
                    j.push_back(row);
                }
                result << j.dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << "n,probability\n";
                for (std::size_t k = 0; k < ns.size(); ++k)
                    result << ns[k] << "," << detail::full(values[k].value) << "\n";
            } else if (ns.size() == 1) {
                result << detail::fixed(values[0].value, 5) << "\n";
            } else {
                result << std::setw(8) << "n" << "  probability\n";
                for (std::size_t k = 0; k < ns.size(); ++k)
                    result << std::setw(8) << ns[k] << "  " << detail::fixed(values[k].value, 5) << "\n";
            }
        } else if (mc->parsed()) {
            McConfig cfg;
            if (o.trials != std::floor(o.trials) || o.trials > 9e18)
                throw DomainError("--trials must be a whole number");
            cfg.trials = static_cast<std::int64_t>(o.trials);
            cfg.seed = o.seed;
            cfg.mode = mode;
            cfg.threads = threads;
            const auto rows = mc_convergence_sweep(*culture, ns, cfg);
            if (fmt == Format::Json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : rows) {
                    nlohmann::json row = detail::winner_json(r.estimate);
                    row["n"] = r.n;
                    row["trials"] = cfg.trials;
                    row["seed"] = cfg.seed;
                    j.push_back(row);
                }
                result << j.dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << sweep_csv(rows, cfg);
            } else {
                result << std::setw(8) << "n" << "  estimate  stderr\n";
                for (const auto& r : rows)
                    result << std::setw(8) << r.n << "  " << detail::fixed(r.estimate.value, 5) << "   "
                           << detail::fixed(r.estimate.stderr_value.value_or(0.0), 5) << "\n";
            }
        } else if (limit->parsed()) {
            LimitOptions lo;
            lo.sign_tol = o.tol;
            lo.orthant.mc_seed = o.seed;
            const LimitBreakdown b = limit_breakdown_with_case(*culture, lo);
            if (fmt == Format::Json) {
                result << limit_breakdown_json(b).dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << "candidate,L,method,stderr\n";
                for (const auto& t : b.terms)
                    result << t.candidate << "," << detail::full(t.orthant.value) << ","
                           << orthant_method_name(t.orthant.method) << ","
                           << detail::full(t.orthant.stderr_value) << "\n";
                result << "total," << detail::full(b.value) << ",sum," << detail::full(b.stderr_value) << "\n";
            } else {
                result << detail::fixed(b.value, 5) << "\n";
            }
        } else if (classify->parsed()) {
            const Table1Classification cls = classify_m3(*culture, o.tol);
            if (fmt == Format::Json) {
                nlohmann::json j;
                j["case"] = cls.case_number;
                j["value"] = cls.value;
                j["signs"] = cls.signs;
                result << j.dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << "case,signs,value\n"
                       << cls.case_number << "," << detail::signs_text(cls.signs) << ","
                       << detail::full(cls.value) << "\n";
            } else {
                result << "case " << cls.case_number << " (" << detail::signs_text(cls.signs) << ")  "
                       << detail::fixed(cls.value, 5) << "\n";
            }
        } else if (min_table->parsed()) {
            for (int m : ms)
                if (m < 2)
                    throw DomainError("--m values must be >= 2");
            for (auto n : ns)
                if (n < 1)
                    throw DomainError("--n values must be >= 1");
            const auto rows = minimum_table(ms, ns);
            if (fmt == Format::Json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : rows)
                    j.push_back({{"n", r.n}, {"m", r.m}, {"probability", r.probability}});
                result << j.dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << minimum_table_csv(rows);
            } else {
                result << std::setw(6) << "n";
                for (int m : ms)
                    result << std::setw(9) << ("m=" + std::to_string(m));
                result << "\n";
                std::size_t k = 0;
                for (auto n : ns) {
                    result << std::setw(6) << n;
                    for (std::size_t c = 0; c < ms.size(); ++c)
                        result << std::setw(9) << detail::fixed(rows[k++].probability, 4);
                    result << "\n";
                }
            }
        } else if (ic_curve_cmd->parsed()) {
            const auto rows = ic_curve(ms);
            if (fmt == Format::Json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : rows)
                    j.push_back({{"m", r.m}, {"probability", r.probability}, {"may_bound", may_bound(r.m)}});
                result << j.dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << ic_curve_csv(rows);
            } else {
                result << std::setw(5) << "m" << "  probability\n";
                for (const auto& r : rows)
                    result << std::setw(5) << r.m << "  " << detail::fixed(r.probability, 5) << "\n";
            }
        } else if (audit->parsed()) {
            const auto samples = static_cast<std::int64_t>(o.samples);
            const auto rows = audit_table1(samples, o.seed);
            bool all = true;
            for (const auto& r : rows)
                all = all && r.pass;
            status = all ? 0 : 1;
            if (fmt == Format::Json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& r : rows)
                    j.push_back({{"case", r.case_number},
                                 {"signs", detail::signs_text(r.signs)},
                                 {"classified_case", r.classified_case},
                                 {"table_value", r.table_value},
                                 {"mc_value", r.mc_value},
                                 {"mc_stderr", r.mc_stderr},
                                 {"pass", r.pass}});
                result << j.dump(2) << "\n";
            } else if (fmt == Format::Csv) {
                result << "case,signs,classified_case,table_value,mc_value,mc_stderr,pass\n";
                for (const auto& r : rows)
                    result << r.case_number << "," << detail::signs_text(r.signs) << "," << r.classified_case
                           << "," << detail::full(r.table_value) << "," << detail::full(r.mc_value) << ","
                           << detail::full(r.mc_stderr) << "," << (r.pass ? "pass" : "FAIL") << "\n";
            } else {
                result << "case  signs  table     mc        stderr    result\n";
                for (const auto& r : rows)
                    result << std::setw(4) << r.case_number << "  " << detail::signs_text(r.signs) << "    "
                           << detail::fixed(r.table_value, 5) << "  " << detail::fixed(r.mc_value, 5) << "  "
                           << detail::fixed(r.mc_stderr, 5) << "   " << (r.pass ? "pass" : "FAIL") << "\n";
            }
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateVarianceError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const MatrixError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (!o.out_path.empty()) {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << o.out_path << "'\n";
            return 1;
        }
        f << result.str();
    } else {
        out << result.str();
    }
    return status;
}

} // namespace condorcet::cli
