// Command-line surface over the graphon library: graphon evaluation, degree
// tables, sampling, densities, weak-regularity partitions and refutations,
// and constraint checking.  Structured results go to stdout; an experiment
// record (command, config, input digest, wall time) goes to stderr so the
// primary output stays byte-identical across reruns on exact paths.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "graphonlab/cf.hpp"
#include "graphonlab/constraints.hpp"
#include "graphonlab/coords.hpp"
#include "graphonlab/errors.hpp"
#include "graphonlab/io.hpp"
#include "graphonlab/regularity.hpp"
#include "graphonlab/rng.hpp"
#include "graphonlab/sampling.hpp"
#include "graphonlab/svejk.hpp"

using json = nlohmann::ordered_json;
using namespace graphonlab;

namespace {

struct Config {
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    double tol = 1e-6;
    int tower_cap = kDefaultTowerCap;
    int tail_k = kDefaultTailK;
    std::string format = "json";
    bool decimal = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json config_json(const Config& cfg) {
    return json{{"seed", cfg.seed},         {"samples", cfg.samples},
                {"tol", cfg.tol},           {"tower_cap", cfg.tower_cap},
                {"tail_k", cfg.tail_k},     {"format", cfg.format},
                {"decimal", cfg.decimal}};
}

std::string num(const Config& cfg, bool is_exact, const Rational& exact, double value) {
    return format_number(is_exact, exact, value, cfg.decimal);
}

std::string render_set(const SetSpec& s) {
    std::string out;
    auto iv = s.is_blocks() ? s.to_intervals() : s.interval_list();
    for (const auto& [a, b] : iv) {
        if (!out.empty()) out += " ";
        out += rat_to_string(a) + ":" + rat_to_string(b);
    }
    return out.empty() ? "(empty)" : out;
}

// tower function t(n), capped to orders a CF graphon can hold
int tower_value(int n) {
    long t = 1;
    for (int i = 0; i < n; ++i) {
        if (t > 20) throw MTooLarge("t(n) exceeds the supported CF order");
        t = 1L << t;
    }
    if (t > 20) throw MTooLarge("t(n) exceeds the supported CF order");
    return int(t);
}

void emit(const Config& cfg, const json& out) {
    if (cfg.format == "csv" && out.contains("rows")) {
        const auto& rows = out["rows"];
        bool header = false;
        for (const auto& row : rows) {
            if (!header) {
                std::string h;
                for (auto it = row.begin(); it != row.end(); ++it) {
                    if (!h.empty()) h += ",";
                    h += it.key();
                }
                std::cout << h << "\n";
                header = true;
            }
            std::string line;
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (!line.empty()) line += ",";
                line += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
            }
            std::cout << line << "\n";
        }
        return;
    }
    std::cout << out.dump(2) << "\n";
}

json estimate_json(const Config& cfg, const DensityEstimate& e) {
    return json{{"value", format_double(e.value)},
                {"stderr", format_double(e.stderr_)},
                {"samples", e.samples}};
}

// ---- commands -------------------------------------------------------------

int cmd_eval(const Config& cfg, const std::string& desc, const std::string& xs,
             const std::string& ys) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    Rational xr = rat_from_string(xs), yr = rat_from_string(ys);
    double x = to_double(xr), y = to_double(yr);
    json out{{"command", "eval"}, {"kind", kind_name(g->kind())}, {"x", xs}, {"y", ys}};
    if (g->exact() && g->block_count() > 0) {
        Rational v = g->cell(g->block_of(x), g->block_of(y));
        out["value"] = num(cfg, true, v, to_double(v));
        out["exact"] = true;
    } else {
        out["value"] = format_double(g->value(x, y));
        out["exact"] = false;
    }
    emit(cfg, out);
    return 0;
}

int cmd_degrees(const Config& cfg, const std::string& desc, int points) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    json rows = json::array();
    bool mismatch = false;
    if (g->kind() == GraphonKind::Svejk) {
        auto table = PartTable::svejk();
        // part locations on the 13-scale: A..P at 0..7, Q = [8,12), R = [12,13)
        auto gen = substream(cfg.seed, "degrees");
        for (std::size_t p = 0; p < table.parts.size(); ++p) {
            double lo = p < 8 ? double(p) : (table.parts[p].name == "Q" ? 8.0 : 12.0);
            double width = table.parts[p].name == "Q" ? 4.0 : 1.0;
            double mn = 2, mx = -1, mean = 0;
            for (int i = 0; i < points; ++i) {
                double x = (lo + uniform01(gen) * width) / 13.0;
                double d = g->degree(x, cfg.tol);
                mn = std::min(mn, d);
                mx = std::max(mx, d);
                mean += d;
                if (table.parts[p].degree_is_lower_bound) {
                    if (d < table.parts[p].degree - 1e-12) mismatch = true;
                } else if (std::abs(d - table.parts[p].degree) > 1e-8) {
                    mismatch = true;
                }
            }
            rows.push_back(json{{"part", table.parts[p].name},
                                {"min", format_double(mn)},
                                {"max", format_double(mx)},
                                {"mean", format_double(mean / points)},
                                {"expected", format_double(table.parts[p].degree)},
                                {"bound_only", table.parts[p].degree_is_lower_bound}});
        }
    } else {
        double mn = 2, mx = -1, mean = 0;
        for (int i = 0; i < points; ++i) {
            double x = (i + 0.5) / points;
            double d = g->degree(x, cfg.tol);
            mn = std::min(mn, d);
            mx = std::max(mx, d);
            mean += d;
        }
        rows.push_back(json{{"part", "ALL"},
                            {"min", format_double(mn)},
                            {"max", format_double(mx)},
                            {"mean", format_double(mean / points)}});
    }
    emit(cfg, json{{"command", "degrees"}, {"mismatch", mismatch}, {"rows", rows}});
    return mismatch ? 2 : 0;
}

int cmd_sample(const Config& cfg, const std::string& desc, int k) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    std::cout << render_graph(w_random_graph(*g, k, cfg.seed));
    return 0;
}

int cmd_density(const Config& cfg, const std::string& desc, const std::string& graph_text) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    auto e = parse_expression(graph_text);
    if (e.kind != DensityExpression::Kind::Graph) throw SyntaxError("expected a single graph", 1);
    json out{{"command", "density"}, {"graph", render_graph(e.graph)}};
    bool exact_done = false;
    if (g->exact() && g->block_count() > 0) {
        try {
            Rational d = induced_density_exact(e.graph, *g);
            out["value"] = num(cfg, true, d, to_double(d));
            out["exact"] = true;
            exact_done = true;
        } catch (const BudgetExceeded&) {
        }
    }
    if (!exact_done) {
        auto est = induced_density_mc(e.graph, *g, cfg.samples, cfg.seed);
        out["value"] = format_double(est.value);
        out["stderr"] = format_double(est.stderr_);
        out["exact"] = false;
    }
    emit(cfg, out);
    return 0;
}

int cmd_partition(const Config& cfg, const std::string& desc, double eps,
                  const std::string& out_prefix) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    auto [P, trace] = fk_partition(*g, eps, 20, cfg.seed);
    json rows = json::array();
    for (const auto& r : trace)
        rows.push_back(json{{"step", r.step},
                            {"parts", r.part_count},
                            {"energy", format_double(r.energy)}});
    if (!out_prefix.empty()) {
        std::ofstream pf(out_prefix + ".partition");
        pf << render_partition(P);
        std::ofstream tf(out_prefix + ".trace.csv");
        tf << "step,parts,energy\n";
        for (const auto& r : trace)
            tf << r.step << "," << r.part_count << "," << format_double(r.energy) << "\n";
    }
    emit(cfg, json{{"command", "partition"},
                   {"epsilon", eps},
                   {"steps", trace.size() - 1},
                   {"parts", P.parts.size()},
                   {"final_energy", format_double(trace.back().energy)},
                   {"rows", rows}});
    return 0;
}

int cmd_deviation(const Config& cfg, const std::string& desc, const std::string& parts_file,
                  int restarts) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    PartitionSpec P =
        parts_file.empty() ? PartitionSpec::single() : parse_partition(slurp(parts_file));
    DeviationWitness w;
    std::string method;
    if (g->block_count() > 0 && g->block_count() <= 22 && restarts == 0) {
        w = deviation_exact(*g, P);
        method = "exact";
    } else {
        w = deviation_heuristic(*g, P, restarts > 0 ? restarts : 20, cfg.seed);
        method = "heuristic";
    }
    emit(cfg, json{{"command", "deviation"},
                   {"method", method},
                   {"deviation", num(cfg, w.is_exact, w.exact, w.deviation)},
                   {"A", render_set(w.A)},
                   {"B", render_set(w.B)}});
    return 0;
}

int cmd_refute(const Config& cfg, int m, const std::string& parts_file, int coords,
               const std::string& out_file) {
    PartitionSpec P = !parts_file.empty() ? parse_partition(slurp(parts_file))
                      : coords >= 0       ? PartitionSpec::coordinate_signs(m, coords)
                                          : PartitionSpec::single();
    auto rep = refute_cf(m, P);
    auto verdict = refute_verify(rep, m, P);
    json out{{"command", "refute"},
             {"m", m},
             {"parts", P.parts.size()},
             {"warn_small_m", rep.warn_small_m},
             {"i0", rep.i0},
             {"eq2_holds", rep.eq2_holds},
             {"useful_measure", rat_to_string(rep.useful_measure)},
             {"discrepancy", num(cfg, rep.is_exact, rep.discrepancy, rep.discrepancy_d)},
             {"implied_epsilon",
              num(cfg, rep.is_exact, rep.implied_epsilon(), rep.discrepancy_d / 2)},
             {"verified", verdict.ok},
             {"verify_message", verdict.message}};
    json parts = json::array();
    for (std::size_t t = 0; t < rep.S.size(); ++t)
        parts.push_back(json{{"S", rat_to_string(rep.S[t])},
                             {"M", rep.M[t]},
                             {"small", bool(rep.small_flags[t])}});
    out["per_part"] = parts;
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        f << out.dump(2) << "\n";
    }
    emit(cfg, out);
    return verdict.ok ? 0 : 2;
}

int cmd_constraint(const Config& cfg, const std::string& file, const std::string& desc,
                   const std::string& table_name) {
    auto g = parse_graphon(desc, cfg.tower_cap, cfg.tail_k);
    std::string text = slurp(file);
    json rows = json::array();
    bool violated = false;
    auto add_row = [&](const std::string& label, const SatisfactionVerdict& v) {
        violated = violated || v.status == Satisfaction::Violated;
        rows.push_back(json{{"constraint", label},
                            {"status", satisfaction_name(v.status)},
                            {"lhs", v.is_exact ? num(cfg, true, v.lhs_exact, v.lhs_value)
                                               : format_double(v.lhs_value)},
                            {"rhs", v.is_exact ? num(cfg, true, v.rhs_exact, v.rhs_value)
                                               : format_double(v.rhs_value)},
                            {"lhs_stderr", format_double(v.lhs_stderr)},
                            {"rhs_stderr", format_double(v.rhs_stderr)},
                            {"acceptance", format_double(v.acceptance)}});
    };
    if (text.find("parts:") != std::string::npos) {
        auto c = parse_decorated(text);
        PartTable table = table_name == "svejk"    ? PartTable::svejk()
                          : table_name == "single" ? PartTable::single()
                                                   : parse_part_table(slurp(table_name));
        std::uint64_t roots = std::max<std::uint64_t>(1, cfg.samples / 500);
        add_row("decorated", evaluate_decorated(c, *g, table, roots, 500, cfg.seed));
    } else {
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            try {
                auto c = parse_constraint(line);
                add_row(line, evaluate_ordinary(c, *g, cfg.samples, cfg.seed));
            } catch (const SyntaxError& e) {
                throw SyntaxError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
            }
        }
    }
    emit(cfg, json{{"command", "constraint"}, {"rows", rows}});
    return violated ? 2 : 0;
}

int cmd_extract_cf(const Config& cfg, int n, int pairs) {
    auto copy = extract_cf_copy(n, cfg.tower_cap, cfg.tail_k);
    auto cf = make_cf(tower_value(n));
    auto gen = substream(cfg.seed, "extract-cf");
    double maxdiff = 0;
    for (int i = 0; i < pairs; ++i) {
        double x = uniform01(gen), y = uniform01(gen);
        maxdiff = std::max(maxdiff, std::abs(copy->value(x, y) - cf->value(x, y)));
    }
    emit(cfg, json{{"command", "extract-cf"},
                   {"n", n},
                   {"m", tower_value(n)},
                   {"pairs", pairs},
                   {"max_abs_diff", format_double(maxdiff)}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphonlab: dense graph limit workbench"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags appear after the subcommand
    Config cfg;
    app.add_option("--seed", cfg.seed, "base seed for all substreams");
    app.add_option("--samples", cfg.samples, "Monte Carlo sample budget")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "numeric tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tower-cap", cfg.tower_cap, "tower cap for the svejk graphon");
    app.add_option("--tail-k", cfg.tail_k, "tail cutoff K for svejk row integrals");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--decimal", cfg.decimal, "force decimal output for exact values");

    std::string desc, xs, ys, graph_text, parts_file, out_prefix, out_file, table = "single",
                                                                             cfile;
    int k = 10, points = 200, m = 16, coords = -1, n = 1, restarts = 0, pairs = 10000;
    double eps = 0.1;

    auto* eval = app.add_subcommand("eval", "evaluate W(x,y)");
    eval->add_option("descriptor", desc)->required();
    eval->add_option("x", xs)->required();
    eval->add_option("y", ys)->required();

    auto* degrees = app.add_subcommand("degrees", "per-part degree table");
    degrees->add_option("descriptor", desc)->required();
    degrees->add_option("--points", points, "sample points per part");

    auto* sample = app.add_subcommand("sample", "W-random graph");
    sample->add_option("descriptor", desc)->required();
    sample->add_option("k", k, "number of vertices")->required();

    auto* density = app.add_subcommand("density", "induced subgraph density");
    density->add_option("descriptor", desc)->required();
    density->add_option("graph", graph_text, "graph alias or G{n;edges} literal")->required();

    auto* partition = app.add_subcommand("partition", "weak regularity refinement");
    partition->add_option("descriptor", desc)->required();
    partition->add_option("--eps", eps, "target regularity")->required();
    partition->add_option("--out", out_prefix, "output file prefix");

    auto* deviation = app.add_subcommand("deviation", "deviation witness for a partition");
    deviation->add_option("descriptor", desc)->required();
    deviation->add_option("--parts-file", parts_file, "partition file (default: single part)");
    deviation->add_option("--restarts", restarts, "force the heuristic with this many restarts");

    auto* refute = app.add_subcommand("refute", "constructive irregularity witness for W_CF^m");
    refute->add_option("m", m)->required();
    refute->add_option("--parts-file", parts_file, "partition file");
    refute->add_option("--coords", coords, "use the 2^c coordinate-sign partition");
    refute->add_option("--out", out_file, "also write the report here");

    auto* constraint = app.add_subcommand("constraint", "check constraints against a graphon");
    constraint->add_option("file", cfile)->required();
    constraint->add_option("descriptor", desc)->required();
    constraint->add_option("--table", table,
                           "part table for decorated constraints: single, svejk, or a file");

    auto* extract = app.add_subcommand("extract-cf", "compare the embedded CF copy with W_CF^t(n)");
    extract->add_option("n", n)->required();
    extract->add_option("--pairs", pairs, "sampled pairs");

    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (*eval) rc = cmd_eval(cfg, desc, xs, ys);
        else if (*degrees) rc = cmd_degrees(cfg, desc, points);
        else if (*sample) rc = cmd_sample(cfg, desc, k);
        else if (*density) rc = cmd_density(cfg, desc, graph_text);
        else if (*partition) rc = cmd_partition(cfg, desc, eps, out_prefix);
        else if (*deviation) rc = cmd_deviation(cfg, desc, parts_file, restarts);
        else if (*refute) rc = cmd_refute(cfg, m, parts_file, coords, out_file);
        else if (*constraint) rc = cmd_constraint(cfg, cfile, desc, table);
        else if (*extract) rc = cmd_extract_cf(cfg, n, pairs);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
    } catch (const PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 3;
    } catch (const MTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 3;
    } catch (const LevelTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 3;
    } catch (const TooManyBlocks& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 3;
    } catch (const MeasureMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 2;
    } catch (const DegreeUnassignable& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    std::string cmdline;
    for (int i = 1; i < argc; ++i) cmdline += std::string(i > 1 ? " " : "") + argv[i];
    json record{{"command", cmdline},
                {"config", config_json(cfg)},
                {"inputs_digest", stream_id(desc + "|" + cfile + "|" + parts_file)},
                {"wall_ms", ms},
                {"exit", rc}};
    std::cerr << record.dump() << "\n";
    return rc;
}
