#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Output is one JSON object per line (big integers as decimal strings), or an
// aligned text table with --format table. Exit codes: 0 ok, 1 domain error,
// 2 usage error.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "solver.hpp"
#include "tree_enum.hpp"
#include "verify.hpp"

namespace syracuse::cli {

using nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

namespace detail {

inline ordered_json big(const BigInt& x) { return x.str(); }

inline ordered_json gaps(const VTuple& t) { return t.v(); }

inline std::uint64_t small(const std::string& text, const char* flag) {
    try {
        return to_u64(parse_decimal(text), flag);
    } catch (const Error& e) {
        fail(ErrorCode::ParseError, std::string(flag) + ": " + e.what());
    }
}

inline std::vector<std::uint64_t> parse_list(const std::string& text, const char* flag) {
    std::vector<std::uint64_t> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty()) {
            fail(ErrorCode::ParseError, std::string(flag) + ": empty entry at position " + std::to_string(start));
        }
        const std::uint64_t v = small(item, flag);
        if (v == 0) fail(ErrorCode::ParseError, std::string(flag) + ": entries must be >= 1");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline OddInt odd(const std::string& text, const char* flag) {
    BigInt x;
    try {
        x = parse_decimal(text);
    } catch (const Error& e) {
        fail(ErrorCode::ParseError, std::string(flag) + ": " + e.what());
    }
    if (x < 1 || !is_odd(x)) fail(ErrorCode::ParseError, std::string(flag) + ": expected a positive odd integer");
    return OddInt(std::move(x));
}

/// Writes records either as JSON lines or, for --format table, buffers them
/// and prints aligned columns at the end.
class Printer {
public:
    Printer(std::ostream& out, bool table) : out_(out), table_(table) {}
    ~Printer() { flush(); }

    void emit(const ordered_json& record) {
        if (!table_) {
            out_ << record.dump() << '\n';
            return;
        }
        rows_.push_back(record);
    }

    void flush() {
        if (rows_.empty()) return;
        std::vector<std::string> keys;
        for (const auto& row : rows_) {
            for (const auto& [k, v] : row.items()) {
                if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
            }
        }
        std::vector<std::vector<std::string>> cells;
        std::vector<std::size_t> width(keys.size());
        for (std::size_t c = 0; c < keys.size(); ++c) width[c] = keys[c].size();
        for (const auto& row : rows_) {
            std::vector<std::string> line;
            for (std::size_t c = 0; c < keys.size(); ++c) {
                std::string cell;
                if (row.contains(keys[c])) {
                    const auto& v = row[keys[c]];
                    cell = v.is_string() ? v.get<std::string>() : v.dump();
                }
                width[c] = std::max(width[c], cell.size());
                line.push_back(std::move(cell));
            }
            cells.push_back(std::move(line));
        }
        auto print_line = [&](const std::vector<std::string>& line) {
            for (std::size_t c = 0; c < line.size(); ++c) {
                out_ << std::left << std::setw(static_cast<int>(width[c])) << line[c];
                out_ << (c + 1 < line.size() ? "  " : "\n");
            }
        };
        print_line(keys);
        for (const auto& line : cells) print_line(line);
        rows_.clear();
    }

private:
    std::ostream& out_;
    bool table_;
    std::vector<ordered_json> rows_;
};

inline ordered_json solve_record(std::size_t b, const std::vector<std::uint64_t>& tail, const OddInt& source,
                                 const SolveResult& r) {
    ordered_json j;
    j["b"] = b;
    j["tail"] = tail;
    j["source"] = source.str();
    j["a_class"] = big(r.a_class.value);
    j["modulus"] = big(r.a_class.modulus());
    j["v1_star"] = r.v1_star;
    j["n"] = r.n.str();
    return j;
}

inline ordered_json trajectory_record(const OddInt& n, const Trajectory& tr) {
    ordered_json j;
    j["n"] = n.str();
    j["b"] = tr.b;
    j["v"] = tr.v;
    ordered_json iterates = ordered_json::array();
    for (const auto& x : tr.odd_iterates) iterates.push_back(x.str());
    j["iterates"] = std::move(iterates);
    j["reached_one"] = tr.reached_one;
    return j;
}

} // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"Exact tools for the tuple representation of Collatz predecessors", "syracuse"};
    app.require_subcommand(1);

    std::string format = "jsonl";
    std::string cap_text;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "table"}));
    app.add_option("--seed-cap", cap_text, "Exponent cap in bits (overrides SYRACUSE_EXP_CAP)");

    // Shared flag storage; each subcommand registers the ones it uses.
    std::string n_text, tuple_text, source_text = "1", b_text, tail_text, t_text, s_text, k_cap_text,
                max_steps_text = std::to_string(kDefaultMaxSteps), x_text, k_text, p_text, q_text;
    std::string level = "quick";
    unsigned workers = 1;
    bool count_only = false, inject_fault = false;

    auto* traj = app.add_subcommand("traj", "Odd trajectory of n down to 1");
    traj->add_option("n", n_text, "Odd starting value")->required();
    traj->add_option("--max-steps", max_steps_text, "Odd-step cutoff");

    auto* dec = app.add_subcommand("decode", "Integer represented by a tuple b:v1,...,vb");
    dec->add_option("tuple", tuple_text, "Tuple, e.g. 3:4,3,2")->required();
    dec->add_option("--source", source_text, "Odd source not divisible by 3");

    auto* enc = app.add_subcommand("encode", "Tuple of the trajectory from n to the source");
    enc->add_option("n", n_text, "Odd starting value")->required();
    enc->add_option("--source", source_text, "Odd source on the trajectory");
    enc->add_option("--max-steps", max_steps_text, "Odd-step cutoff");

    auto* sv = app.add_subcommand("solve-v1", "First gap completing a tail v2..vb");
    sv->add_option("--b", b_text, "Tuple length")->required();
    sv->add_option("--tail", tail_text, "Comma-separated v2..vb");
    sv->add_option("--source", source_text, "Odd source not divisible by 3");

    auto* asc = app.add_subcommand("ascend", "Ascending-sequence families");
    asc->require_subcommand(1);
    auto* all_ones = asc->add_subcommand("all-ones", "All-ones tail of length b-1");
    all_ones->add_option("--b", b_text, "Tuple length (>= 2)")->required();
    auto* family = asc->add_subcommand("family", "Start of q rising steps followed by 1");
    family->add_option("--q", q_text, "Number of rising steps")->required();
    family->add_option("--p", p_text, "Family index (>= 0)")->required();
    auto* const_k = asc->add_subcommand("constant-k", "v1 class for the constant tail (k,...,k)");
    const_k->add_option("--b", b_text, "Tuple length")->required();
    const_k->add_option("--k", k_text, "Constant gap")->required();
    const_k->add_option("--source", source_text, "Odd source not divisible by 3");
    auto* targets = asc->add_subcommand("targets", "Pairs (n, m) joined by b steps of valuation k");
    targets->add_option("--b", b_text, "Number of steps")->required();
    targets->add_option("--p", p_text, "Family index")->required();
    targets->add_option("--k", k_text, "Valuation, 1 or 2")->required();
    auto* periodic = asc->add_subcommand("periodic", "Alternating (1,2) tail, odd b");
    periodic->add_option("--b", b_text, "Odd tuple length (>= 3)")->required();

    auto* en = app.add_subcommand("enum", "Bounded predecessor tree, one record per node");
    en->add_option("--t", t_text, "Depth bound")->required();
    en->add_option("--s", s_text, "Gap bound is 6s")->required();
    en->add_option("--source", source_text, "Root");
    en->add_option("--k-cap", k_cap_text, "Hard gap bound replacing 6s");
    en->add_option("--workers", workers, "Threads for frontier expansion")->check(CLI::Range(1u, 256u));
    en->add_flag("--count-only", count_only, "Print only the node count");

    auto* dl = app.add_subcommand("dlog", "Discrete log base 2 modulo 3^b");
    dl->add_option("x", x_text, "Residue coprime to 3")->required();
    dl->add_option("--b", b_text, "Level")->required();

    auto* ver = app.add_subcommand("verify", "Re-derive the reference tables and property suites");
    ver->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    ver->add_flag("--inject-fault", inject_fault, "Shift the v1 window to confirm the suite catches it");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };
    Printer printer(out, format == "table");
    auto finish = [&](ordered_json j) {
        ordered_json record{{"status", "ok"}};
        record.update(j);
        record["elapsed_ms"] = elapsed();
        printer.emit(record);
        return kOk;
    };

    try {
        std::optional<ScopedExponentCap> cap;
        if (!cap_text.empty()) {
            cap.emplace(small(cap_text, "--seed-cap"));
        } else if (const char* env = std::getenv("SYRACUSE_EXP_CAP"); env != nullptr && *env != '\0') {
            cap.emplace(small(env, "SYRACUSE_EXP_CAP"));
        }

        if (*traj) {
            const OddInt n = odd(n_text, "n");
            const Trajectory tr = trajectory(n, small(max_steps_text, "--max-steps"));
            ordered_json j = trajectory_record(n, tr);
            if (!tr.reached_one) {
                ordered_json record{{"status", "error"}, {"code", to_string(ErrorCode::CutoffReached)}};
                record.update(j);
                record["elapsed_ms"] = elapsed();
                printer.emit(record);
                return kDomainError;
            }
            return finish(std::move(j));
        }
        if (*dec) {
            const VTuple t = parse_tuple(tuple_text);
            const OddInt source = odd(source_text, "--source");
            const OddInt n = decode(t, source);
            return finish({{"b", t.b()}, {"v", gaps(t)}, {"source", source.str()}, {"n", n.str()}});
        }
        if (*enc) {
            const OddInt n = odd(n_text, "n");
            const OddInt source = odd(source_text, "--source");
            const VTuple t = encode(n, source, small(max_steps_text, "--max-steps"));
            return finish({{"n", n.str()}, {"source", source.str()}, {"b", t.b()}, {"v", gaps(t)},
                           {"tuple", format_tuple(t)}});
        }
        if (*sv) {
            const std::size_t b = small(b_text, "--b");
            const auto tail = parse_list(tail_text, "--tail");
            const OddInt source = odd(source_text, "--source");
            return finish(solve_record(b, tail, source, solve_v1(b, tail, source)));
        }
        if (*all_ones) {
            const std::size_t b = small(b_text, "--b");
            const SolveResult r = ascending_all_ones(b);
            return finish(solve_record(b, std::vector<std::uint64_t>(b - 1, 1), OddInt(1), r));
        }
        if (*family) {
            const auto q = small(q_text, "--q");
            if (q > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::InvalidArgument, "--q too large");
            const BigInt p = parse_decimal(p_text);
            const OddInt n = ascending_family(static_cast<std::uint32_t>(q), p);
            return finish({{"q", q}, {"p", big(p)}, {"n", n.str()}});
        }
        if (*const_k) {
            const std::size_t b = small(b_text, "--b");
            const std::uint64_t k = small(k_text, "--k");
            const OddInt source = odd(source_text, "--source");
            const ExpClass cls = solve_constant_k(b, k, source);
            return finish({{"b", b}, {"k", k}, {"source", source.str()}, {"v1_class", big(cls.value)},
                           {"modulus", big(cls.modulus())}});
        }
        if (*targets) {
            const std::size_t b = small(b_text, "--b");
            const std::uint64_t k = small(k_text, "--k");
            if (k != 1 && k != 2) fail(ErrorCode::InvalidArgument, "--k must be 1 or 2");
            const BigInt p = parse_decimal(p_text);
            const TargetPair pair = target_families(b, p, static_cast<unsigned>(k));
            return finish({{"b", b}, {"p", big(p)}, {"k", k}, {"n", pair.n.str()}, {"m", pair.m.str()}});
        }
        if (*periodic) {
            const std::size_t b = small(b_text, "--b");
            const PeriodicCheck pc = periodic_12_check(b);
            return finish({{"b", b}, {"v1_class", big(pc.v1_class.value)}, {"modulus", big(pc.v1_class.modulus())},
                           {"verified", pc.verified}});
        }
        if (*en) {
            EnumConfig cfg;
            cfg.source = odd(source_text, "--source");
            cfg.t = static_cast<std::uint32_t>(std::min<std::uint64_t>(small(t_text, "--t"), UINT32_MAX));
            cfg.s = static_cast<std::uint32_t>(std::min<std::uint64_t>(small(s_text, "--s"), UINT32_MAX));
            if (!k_cap_text.empty()) cfg.k_cap = small(k_cap_text, "--k-cap");
            cfg.workers = workers;
            if (count_only) {
                const std::uint64_t count = count_nodes(cfg);
                ordered_json j{{"source", cfg.source.str()}, {"t", cfg.t}, {"s", cfg.s}, {"count", count}};
                if (!cfg.k_cap) j["formula"] = big(count_formula(cfg.t, cfg.s));
                return finish(std::move(j));
            }
            enumerate_stream(cfg, [&](const TreeNode& node) {
                printer.emit({{"value", node.value.str()},
                              {"depth", node.depth},
                              {"tuple", format_tuple(node.tuple)},
                              {"fertile", node.fertile}});
            });
            return kOk;
        }
        if (*dl) {
            const std::uint64_t b = small(b_text, "--b");
            if (b < 1 || b > std::numeric_limits<Level>::max()) fail(ErrorCode::InvalidArgument, "--b out of range");
            const Residue x(parse_decimal(x_text), static_cast<Level>(b));
            const ExpClass e = dlog2(x);
            return finish({{"x", big(x.value)}, {"b", b}, {"log", big(e.value)}, {"modulus", big(e.modulus())}});
        }
        if (*ver) {
            verify::Options opt;
            opt.full = level == "full";
            opt.inject_window_fault = inject_fault;
            bool all = true;
            std::size_t count = 0;
            verify::run(opt, [&](const verify::CheckResult& r) {
                all = all && r.passed;
                ++count;
                printer.emit({{"criterion", r.criterion},
                              {"check", r.name},
                              {"anchor", r.anchor},
                              {"passed", r.passed},
                              {"elapsed_ms", r.elapsed_ms},
                              {"budget_ms", r.budget_ms},
                              {"detail", r.detail}});
            });
            printer.emit({{"status", all ? "ok" : "error"}, {"checks", count}, {"level", level},
                          {"elapsed_ms", elapsed()}});
            return all ? kOk : kDomainError;
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) {
            err << "usage error: " << e.what() << '\n';
            return kUsageError;
        }
        printer.emit({{"status", "error"}, {"code", to_string(e.code())}, {"message", e.what()},
                      {"elapsed_ms", elapsed()}});
        return kDomainError;
    }
    err << "usage error: no subcommand\n";
    return kUsageError;
}

} // namespace syracuse::cli
