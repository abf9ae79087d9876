#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pottszero/enumerate.hpp"
#include "pottszero/errors.hpp"
#include "pottszero/graph_io.hpp"
#include "pottszero/interpolation.hpp"
#include "pottszero/potts.hpp"
#include "pottszero/verify.hpp"
#include "pottszero/version.hpp"
#include "pottszero/zero_scan.hpp"

using namespace pottszero;
using nlohmann::json;

namespace {

enum Status { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3, kRegime = 4, kNumerical = 5 };

struct Common {
    int jobs = 1;
    std::string format = "json";
    std::string output;
    bool strict = false;
};

struct Output {
    const Common& common;
    std::ostringstream text;

    void emit() {
        if (common.output.empty())
            std::cout << text.str();
        else
            write_text_atomically(common.output, text.str());
    }
};

json envelope(const std::string& command, json config) {
    return {{"tool", "pottszero"}, {"version", kVersion}, {"command", command}, {"config", std::move(config)}};
}

void csv_preamble(std::ostream& out, const std::string& command, const json& config) {
    out << "# pottszero " << kVersion << ' ' << command << '\n' << "# config " << config.dump() << '\n';
}

std::vector<mpq_class> grid_from(const std::vector<std::string>& ws, int points) {
    if (ws.empty()) return uniform_grid(points);
    std::vector<mpq_class> out;
    for (const auto& w : ws) out.push_back(parse_rational(w));
    return out;
}

json grid_json(const std::vector<mpq_class>& grid) {
    json j = json::array();
    for (const auto& w : grid) j.push_back(to_string(w));
    return j;
}

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

// --- exact ------------------------------------------------------------------

struct ExactArgs {
    std::string input;
    std::optional<int> q;
    std::vector<std::string> w;
    int grid = 11;
};

int cmd_exact(const Common& common, const ExactArgs& a) {
    auto g = read_edge_list(a.input);
    if (a.q) g = g.with_num_colors(*a.q);
    const auto grid = grid_from(a.w, a.grid);
    const WPolynomial p = partition_poly(g);
    json config = {{"input", a.input}, {"q", g.num_colors()}, {"w", grid_json(grid)}};

    Output out{common, {}};
    if (common.format == "csv") {
        csv_preamble(out.text, "exact", config);
        out.text << "w,value\n";
        for (const auto& w : grid) out.text << to_string(w) << ',' << to_string(p.evaluate(w)) << '\n';
    } else {
        json j = envelope("exact", config);
        j["graph"] = describe(g);
        j["polynomial"] = p.to_json();
        j["evaluations"] = json::array();
        for (const auto& w : grid)
            j["evaluations"].push_back({{"w", to_string(w)}, {"value", to_string(p.evaluate(w))}});
        out.text << j.dump(2) << '\n';
    }
    out.emit();
    return kOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::vector<std::string> bounds;
    bool all = false;
    int n_max = 6;
    int delta = 3;
    std::vector<int> qs{6};
    std::string pins;
    std::vector<std::string> w;
    int grid = 11;
    int samples = 4;
    std::uint64_t seed = 1;
    bool no_witness = false;
    double eps2 = 0.19634954084936207;
};

int cmd_verify(const Common& common, const VerifyArgs& a) {
    std::vector<std::string> ids = a.all ? registered_bounds() : a.bounds;
    if (ids.empty()) throw DomainError("give --bound ID or --all");
    VerifyOptions o;
    o.family.n_max = a.n_max;
    o.family.delta = a.delta;
    o.family.qs = a.qs;
    if (!a.pins.empty()) o.family.pins = parse_pin_policy(a.pins);
    o.w_grid = grid_from(a.w, a.grid);
    o.jobs = common.jobs;
    o.include_witness = !a.no_witness;
    o.seed = a.seed;
    o.samples = a.samples;
    o.eps2 = a.eps2;
    for (const auto& id : ids) default_pin_policy(id);  // rejects unknown ids before any work

    json config = {{"bounds", ids},      {"nmax", a.n_max},   {"delta", a.delta},
                   {"q", a.qs},          {"pins", a.pins.empty() ? json(nullptr) : json(a.pins)},
                   {"w", grid_json(o.w_grid)}, {"samples", a.samples}, {"seed", a.seed},
                   {"witness", !a.no_witness}, {"eps2", a.eps2}};
    std::vector<BoundReport> reports;
    bool failed = false, out_of_regime = false;
    for (const auto& id : ids) {
        reports.push_back(verify_bound(id, o));
        const auto& r = reports.back();
        failed = failed || !r.passed();
        if (r.out_of_regime) {
            out_of_regime = true;
            warn(id + ": some q lies outside the statement's regime; failures there are flagged, not counted");
        }
    }

    Output out{common, {}};
    if (common.format == "csv") {
        csv_preamble(out.text, "verify", config);
        out.text << csv_header() << '\n';
        for (const auto& r : reports) out.text << to_csv_row(r) << '\n';
    } else {
        json j = envelope("verify", config);
        j["reports"] = json::array();
        for (const auto& r : reports) j["reports"].push_back(to_json(r));
        j["passed"] = !failed;
        out.text << j.dump(2) << '\n';
    }
    out.emit();
    if (failed) return kCheckFailed;
    if (out_of_regime && common.strict) return kRegime;
    return kOk;
}

// --- families shared by scan / gen ---------------------------------------------

struct FamilyArgs {
    std::string input;
    std::string family;  // "all" or a generator kind
    int n = 0;
    int n_max = 6;
    int delta = 3;
    int d = 0, a = 0, b = 0;
    std::uint64_t seed = 0;
    std::string pins = "none";
};

void add_family_options(CLI::App* sub, FamilyArgs& f) {
    sub->add_option("--input", f.input, "edge-list file");
    sub->add_option("--family", f.family, "all, or a generator: cycle clique path star random_regular "
                                          "complete_bipartite petersen");
    sub->add_option("--n", f.n, "vertex count (leaves for star)");
    sub->add_option("--nmax", f.n_max, "largest vertex count for --family all");
    sub->add_option("--delta", f.delta, "maximum degree");
    sub->add_option("--d", f.d, "degree for random_regular");
    sub->add_option("--a", f.a, "first side of complete_bipartite");
    sub->add_option("--b", f.b, "second side of complete_bipartite");
    sub->add_option("--graph-seed", f.seed, "seed for random_regular");
    sub->add_option("--pins", f.pins, "pin policy for --family all: none distinct all any");
}

json family_config(const FamilyArgs& f) {
    if (!f.input.empty()) return {{"input", f.input}};
    json j = {{"family", f.family}, {"delta", f.delta}};
    if (f.family == "all") {
        j["nmax"] = f.n_max;
        j["pins"] = f.pins;
    } else {
        j["n"] = f.n;
        if (f.d) j["d"] = f.d;
        if (f.a) j["a"] = f.a;
        if (f.b) j["b"] = f.b;
        j["graph_seed"] = f.seed;
    }
    return j;
}

std::vector<PartiallyColoredGraph> load_family(const FamilyArgs& f, int q) {
    if (!f.input.empty()) return {read_edge_list(f.input).with_num_colors(q)};
    if (f.family.empty()) throw DomainError("give --input FILE or --family");
    if (f.family == "all") return enumerate_graphs(f.n_max, f.delta, q, parse_pin_policy(f.pins));
    FamilyParams p;
    p.n = f.n;
    p.d = f.d;
    p.a = f.a;
    p.b = f.b;
    p.seed = f.seed;
    p.q = q;
    return {generate_family(parse_family_kind(f.family), p)};
}

// --- scan -------------------------------------------------------------------

struct ScanArgs {
    FamilyArgs family;
    int q = 6;
    double eta = 0.002;
    bool reports = false;
};

int cmd_scan(const Common& common, const ScanArgs& a) {
    const auto graphs = load_family(a.family, a.q);
    int delta = a.family.delta;
    for (const auto& g : graphs) delta = std::max(delta, g.max_degree());
    const auto s = zero_free_scan(graphs, a.q, delta, common.jobs, a.eta);
    json config = family_config(a.family);
    config["q"] = a.q;
    config["eta"] = a.eta;
    config["scan_delta"] = delta;

    Output out{common, {}};
    if (common.format == "csv") {
        csv_preamble(out.text, "scan", config);
        out.text << "graph_id,q,degree,min_dist,max_residual,max_relative_residual,degree_check,residual_check,"
                    "conjugate_check,used_fallback\n";
        for (const auto& r : s.reports)
            out.text << r.graph_id << ',' << r.q << ',' << r.degree << ','
                     << (std::isfinite(r.min_dist) ? to_decimal_string(r.min_dist) : "inf") << ','
                     << to_decimal_string(r.max_residual) << ',' << to_decimal_string(r.max_relative_residual) << ','
                     << r.degree_check << ',' << r.residual_check << ',' << r.conjugate_check << ','
                     << r.used_fallback << '\n';
    } else {
        json j = envelope("scan", config);
        j["summary"] = to_json(s, a.reports);
        out.text << j.dump(2) << '\n';
    }
    out.emit();
    std::cerr << "family min margin: " << (std::isfinite(s.min_dist) ? to_decimal_string(s.min_dist) : "inf")
              << " (" << s.argmin << ")\n";
    if (s.degree_failures || s.residual_failures || s.conjugate_failures) return kNumerical;
    if (!(s.min_dist > 0)) return kCheckFailed;
    if (!s.in_regime) {
        warn("q below (2 - eta) delta: scan is exploratory");
        if (common.strict) return kRegime;
    }
    return kOk;
}

// --- interpolate --------------------------------------------------------------

struct InterpolateArgs {
    FamilyArgs family;
    int q = 6;
    double eps = 0.01;
    std::string target = "0";
    bool check = false;
};

int cmd_interpolate(const Common& common, const InterpolateArgs& a) {
    const auto graphs = load_family(a.family, a.q);
    const mpq_class target = parse_rational(a.target);
    json config = family_config(a.family);
    config["q"] = a.q;
    config["eps"] = a.eps;
    config["target"] = to_string(target);
    config["check"] = a.check;

    std::vector<CountEstimate> estimates(graphs.size());
    bool ok = true;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        auto& e = estimates[i];
        e = approx_partition_function(graphs[i], target, a.eps);
        if (!a.check) continue;
        if (target == 0) {
            e.exact_value = exact_count_oracle(graphs[i], a.q);
            if (e.exact_zero) {
                ok = ok && sgn(*e.exact_value) == 0;
            } else {
                auto err = e.log_error();
                ok = ok && err && *err <= e.eps_achieved && e.eps_achieved <= a.eps;
            }
        } else {
            const double truth = partition_poly(graphs[i]).evaluate(target).get_d();
            ok = ok && std::abs(e.log_xi - std::log(truth)) <= e.eps_achieved && e.eps_achieved <= a.eps;
        }
    }

    Output out{common, {}};
    if (common.format == "csv") {
        csv_preamble(out.text, "interpolate", config);
        out.text << "graph_id,target,xi,eps_target,eps_achieved,steps,m,exact_value\n";
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            const auto j = to_json(estimates[i]);
            out.text << describe(graphs[i]) << ',' << j["target"].get<std::string>() << ','
                     << j["xi"].get<std::string>() << ',' << to_decimal_string(a.eps) << ','
                     << to_decimal_string(estimates[i].eps_achieved) << ',' << estimates[i].steps << ','
                     << estimates[i].max_order << ','
                     << (estimates[i].exact_value ? estimates[i].exact_value->get_str() : "") << '\n';
        }
    } else {
        json j = envelope("interpolate", config);
        j["estimates"] = json::array();
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            auto e = to_json(estimates[i]);
            e["graph"] = describe(graphs[i]);
            j["estimates"].push_back(e);
        }
        if (a.check) j["check_passed"] = ok;
        out.text << j.dump(2) << '\n';
    }
    out.emit();
    return ok ? kOk : kCheckFailed;
}

// --- gen --------------------------------------------------------------------

struct GenArgs {
    FamilyArgs family;
    int q = 3;
};

int cmd_gen(const Common& common, const GenArgs& a) {
    if (a.family.family.empty() || a.family.family == "all")
        throw DomainError("gen needs --family (or --kind) naming a generator");
    const auto graphs = load_family(a.family, a.q);
    json config = family_config(a.family);
    config["q"] = a.q;
    Output out{common, {}};
    out.text << "# pottszero " << kVersion << " gen " << config.dump() << '\n' << format_edge_list(graphs.front());
    out.emit();
    return kOk;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact Potts partition functions, marginal-bound verifiers, zero scans and interpolation"};
    app.set_version_flag("--version", std::string("pottszero ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--jobs", common.jobs, "worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("-o,--output", common.output, "output file (written atomically); stdout when absent");
    app.add_flag("--strict", common.strict, "exit with status 4 when parameters leave a statement's regime");

    ExactArgs exact;
    auto* exact_cmd = app.add_subcommand("exact", "partition polynomial of a graph file and its values on a w grid");
    exact_cmd->add_option("--input", exact.input, "edge-list file")->required();
    exact_cmd->add_option("--q", exact.q, "number of colors (default: the file's)");
    exact_cmd->add_option("--w", exact.w, "evaluation points (rationals); overrides --grid")->delimiter(',');
    exact_cmd->add_option("--grid", exact.grid, "uniform grid size on [0,1]")->capture_default_str();

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "check marginal bounds and identities over a graph family");
    verify_cmd->add_option("--bound", verify.bounds, "bound id (repeatable)");
    verify_cmd->add_flag("--all", verify.all, "every registered bound");
    verify_cmd->add_option("--nmax", verify.n_max)->capture_default_str();
    verify_cmd->add_option("--delta", verify.delta)->capture_default_str();
    verify_cmd->add_option("--q", verify.qs, "color counts")->delimiter(',')->capture_default_str();
    verify_cmd->add_option("--pins", verify.pins, "pin policy override: none distinct all any");
    verify_cmd->add_option("--w", verify.w, "w points (rationals); overrides --grid")->delimiter(',');
    verify_cmd->add_option("--grid", verify.grid)->capture_default_str();
    verify_cmd->add_option("--samples", verify.samples, "random vectors per instance")->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
    verify_cmd->add_flag("--no-witness", verify.no_witness, "skip the clique-neighborhood instance");
    verify_cmd->add_option("--eps2", verify.eps2)->capture_default_str();

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "complex zeros of Z_G(q; w) and their distance to [0,1]");
    add_family_options(scan_cmd, scan.family);
    scan_cmd->add_option("--q", scan.q)->capture_default_str();
    scan_cmd->add_option("--eta", scan.eta)->capture_default_str();
    scan_cmd->add_flag("--reports", scan.reports, "include per-graph root reports");

    InterpolateArgs interp;
    auto* interp_cmd = app.add_subcommand("interpolate", "approximate Z_G(q; target) by Taylor stepping from w = 1");
    add_family_options(interp_cmd, interp.family);
    interp_cmd->add_option("--q", interp.q)->capture_default_str();
    interp_cmd->add_option("--eps", interp.eps)->capture_default_str();
    interp_cmd->add_option("--target", interp.target, "w in [0,1]; 0 counts proper colorings")->capture_default_str();
    interp_cmd->add_flag("--check", interp.check, "compare against the exact value");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "write a generated graph as an edge list");
    add_family_options(gen_cmd, gen.family);
    gen_cmd->add_option("--kind", gen.family.family, "alias of --family");
    gen_cmd->add_option("--q", gen.q)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*exact_cmd) return cmd_exact(common, exact);
    if (*verify_cmd) return cmd_verify(common, verify);
    if (*scan_cmd) return cmd_scan(common, scan);
    if (*interp_cmd) return cmd_interpolate(common, interp);
    return cmd_gen(common, gen);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UnknownBoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const CannotInterpolateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRegime;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
