// rainbow: generate random graphs, certify and compute (k,l)-rainbow indices,
// run threshold sweeps and evaluate the closed-form bounds.
//
// Exit codes: 0 success / decided, 1 undecided or undefined, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rainbow/rainbow.hpp>

namespace {

using namespace rainbow;

constexpr int kExitOk = 0;
constexpr int kExitUndecided = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::string format;  // empty: csv for sweep, text elsewhere
    std::size_t threads = default_threads();
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ParameterError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Graph load_graph(const std::string& path) {
    if (path == "-") return read_edge_list(std::cin);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open graph file '" + path + "'");
    try {
        return read_edge_list(in);
    } catch (const rainbow::ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

EdgeColoring load_coloring(const std::string& path, const Graph& g) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open coloring file '" + path + "'");
    try {
        return read_coloring(in, g);
    } catch (const rainbow::ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

void announce_seed(const Common& c, const std::string& scheme) {
    std::cerr << "seed " << c.seed << "; " << scheme << '\n';
}

// ---------------------------------------------------------------------------

struct GenArgs {
    std::string model = "gnp";
    std::size_t n = 0;
    std::optional<double> p;
    std::optional<std::uint64_t> M;
};

int run_gen(const GenArgs& a, const Common& c) {
    const Model model = a.model == "gnp" ? Model::GNP : Model::GNM;
    GenSpec spec{model, a.n, a.p, a.M, c.seed};
    const Graph g = generate(spec);
    announce_seed(c, "graph stream = mt19937_64(derive(seed, {1}))");
    Output out(c.out);
    write_edge_list(out.stream(), g);
    return kExitOk;
}

struct ColorArgs {
    std::string graph;
    std::size_t t = 0;
    std::string check;
    std::size_t k = 3;
    std::size_t ell = 1;
};

int run_color(const ColorArgs& a, const Common& c) {
    const Graph g = load_graph(a.graph);
    if (!a.check.empty()) {
        const EdgeColoring col = load_coloring(a.check, g);
        const bool ok = check_coloring(g, col, a.k, a.ell, c.threads);
        Output out(c.out);
        out.stream() << (ok ? "valid" : "invalid") << '\n';
        return ok ? kExitOk : kExitUndecided;
    }
    if (a.t == 0) throw ParameterError("--t is required unless --check is given");
    const EdgeColoring col = random_coloring(g, a.t, c.seed);
    announce_seed(c, "coloring stream = mt19937_64(derive(seed, {2})), edges in lexicographic order");
    Output out(c.out);
    write_coloring(out.stream(), g, col);
    return kExitOk;
}

struct CertifyArgs {
    std::string graph;
    std::size_t k = 3;
    std::size_t ell = 1;
    std::size_t attempts = 100;
    std::string mode = "star";
};

int run_certify(const CertifyArgs& a, const Common& c) {
    const Graph g = load_graph(a.graph);
    if (auto lw = lower_certificate(g, a.k)) {
        Output out(c.out);
        write_certificate(out.stream(), g, *lw);
        std::cerr << "verdict: rx >= " << a.k + 1 << '\n';
        return kExitOk;
    }
    announce_seed(c, "attempt a colors with mt19937_64(derive(derive(seed, {a}), {2}))");
    const CertMode mode = a.mode == "full" ? CertMode::Full : CertMode::Star;
    if (auto up = upper_certificate(g, a.k, a.ell, a.attempts, c.seed, mode, c.threads)) {
        Output out(c.out);
        write_certificate(out.stream(), g, *up);
        std::cerr << "verdict: rx <= " << a.k << " (attempt " << up->attempt + 1 << " of " << a.attempts << ")\n";
        return kExitOk;
    }
    std::cerr << "verdict: undecided\n";
    return kExitUndecided;
}

struct RxArgs {
    std::string graph;
    std::size_t k = 3;
    std::size_t ell = 1;
    std::size_t tmax = 8;
    std::string witness;
};

int run_rx(const RxArgs& a, const Common& c) {
    const Graph g = load_graph(a.graph);
    const ExactOutcome res = exact_rx(g, a.k, a.ell, a.tmax);
    Output out(c.out);
    switch (res.status) {
    case ExactStatus::Found:
        out.stream() << "rx = " << res.t << '\n';
        if (!a.witness.empty()) {
            std::ofstream w(a.witness, std::ios::binary);
            if (!w) throw ParameterError("cannot open witness file '" + a.witness + "'");
            write_coloring(w, g, *res.coloring);
        }
        return kExitOk;
    case ExactStatus::ExceededTMax:
        out.stream() << "rx > " << a.tmax << '\n';
        return kExitUndecided;
    case ExactStatus::Undefined:
        out.stream() << "rx undefined (" << res.reason << ")\n";
        return kExitUndecided;
    }
    return kExitUndecided;
}

struct SweepArgs {
    std::string model = "gnp";
    std::size_t n = 0;
    std::size_t k = 3;
    std::size_t ell = 1;
    std::vector<double> grid;
    std::vector<double> coef_grid;
    std::size_t trials = 100;
    std::vector<std::string> checks{"BAD_SET", "STAR_CERT"};
    std::size_t common_samples = 100000;
};

// Pads each CSV column to a common width.
std::string csv_to_table(const std::string& csv) {
    std::vector<std::vector<std::string>> cells;
    std::istringstream in(csv);
    std::string line;
    std::vector<std::size_t> width;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            row.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], std::max<std::size_t>(row[i].size(), 1));
        }
        cells.push_back(std::move(row));
    }
    std::string out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string cell = row[i].empty() ? "-" : row[i];
            out += cell;
            if (i + 1 < row.size()) out += std::string(width[i] - cell.size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

int run_sweep_cmd(const SweepArgs& a, const Common& c) {
    SweepConfig cfg;
    cfg.model = a.model == "gnp" ? Model::GNP : Model::GNM;
    cfg.n = a.n;
    cfg.k = a.k;
    cfg.ell = a.ell;
    if (!a.grid.empty() && !a.coef_grid.empty()) throw ParameterError("give either --grid or --coef-grid, not both");
    cfg.grid_is_coefficient = !a.coef_grid.empty();
    cfg.grid = cfg.grid_is_coefficient ? a.coef_grid : a.grid;
    cfg.trials = a.trials;
    cfg.seed = c.seed;
    cfg.threads = c.threads;
    cfg.common_samples = a.common_samples;
    cfg.checks = 0;
    static const std::map<std::string, unsigned> names{{"BAD_SET", kCheckBadSet},
                                                       {"STAR_CERT", kCheckStarCert},
                                                       {"COMMON_NBRS", kCheckCommonNbrs},
                                                       {"EXACT", kCheckExact}};
    for (const auto& s : a.checks) {
        const auto it = names.find(s);
        if (it == names.end()) throw ParameterError("unknown check '" + s + "'");
        cfg.checks |= it->second;
    }
    const auto rows = run_sweep(cfg);
    announce_seed(c, "trial j at grid point i uses s = derive(seed, {i, j}); graph, coloring and k-set "
                     "sampling streams are derive(s, {1}), derive(derive(s, {0}), {2}) and derive(s, {3})");
    const std::string csv = sweep_csv(rows);
    Output out(c.out);
    out.stream() << (c.format == "text" ? csv_to_table(csv) : csv);
    return kExitOk;
}

struct BoundsArgs {
    std::optional<std::size_t> n;
    std::size_t k = 3;
    std::size_t ell = 1;
    std::optional<double> c1;
    std::optional<double> p;
    double x = 0;
};

int run_bounds(const BoundsArgs& a, const Common& c) {
    std::vector<std::pair<std::string, std::string>> rows;
    auto add = [&](const std::string& name, const std::string& value) { rows.emplace_back(name, value); };
    // Calculators whose preconditions fail report the reason instead of a value.
    auto attempt = [&](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const ParameterError& e) {
            add(name, std::string("n/a (") + e.what() + ")");
        }
    };
    add("k", std::to_string(a.k));
    add("a", fmt(base_a(a.k)));
    add("q", fmt(q_rainbow_star(a.k)));
    if (a.n) {
        const double n = static_cast<double>(*a.n);
        add("n", std::to_string(*a.n));
        attempt("threshold_p", [&] {
            add("log_a_n", fmt(log_a(n, a.k)));
            add("threshold_p", fmt(threshold_p(n, a.k, LogBase::A)));
            add("threshold_p_natural", fmt(threshold_p(n, a.k, LogBase::Natural)));
            add("threshold_M", fmt(threshold_M(n, a.k)));
        });
        if (a.p) attempt("M", [&] { add("M", std::to_string(p_to_M(*a.n, *a.p, a.x))); });
        if (a.c1)
            attempt("chernoff", [&] {
                const auto b = chernoff_tail_bound(*a.n, a.k, *a.c1);
                add("chernoff_delta", fmt(b.delta));
                add("chernoff_per_set", fmt(b.per_set));
                add("chernoff_union", fmt(b.union_bound));
                add("chernoff_edge_probability", fmt(b.edge_probability));
                add("chernoff_edge_probability_valid", b.edge_probability_valid ? "1" : "0");
            });
        attempt("claim2", [&] {
            const auto b = claim2_failure_bound(*a.n, a.k, a.ell);
            add("ell", std::to_string(a.ell));
            add("claim2_per_set", fmt(b.per_set));
            add("claim2_all_sets", fmt(b.all_sets));
        });
        if (a.p)
            attempt("lower_events", [&] {
                const auto b = lower_bound_event_probs(*a.n, a.k, *a.p);
                add("lower_h", std::to_string(b.h));
                add("lower_blocks", std::to_string(b.blocks));
                add("pr_e1", fmt(b.pr_e1));
                add("pr_e2", fmt(b.pr_e2));
            });
    }
    Output out(c.out);
    if (c.format == "csv") {
        out.stream() << "quantity,value\n";
        for (const auto& [k, v] : rows) out.stream() << k << ',' << v << '\n';
    } else {
        for (const auto& [k, v] : rows) out.stream() << k << " = " << v << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// Config file: "flag = value" per line, '#' comments. Entries whose flag is
// not already on the command line are appended to it, so explicit flags win.

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    auto present = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> extra;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw rainbow::ParseError(line_no, 1, path + ": expected 'flag = value'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) != 0) key = "--" + key;
        if (key == "--config" || present(key)) continue;
        if (value == "false") continue;
        extra.push_back(key);
        if (value != "true") extra.push_back(value);
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rainbow: (k,l)-rainbow index tools for random graphs"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--seed", common.seed, "Master seed (64-bit)")->capture_default_str();
    app.add_option("--out", common.out, "Output path (default stdout)");
    app.add_option("--format", common.format, "text or csv (sweep defaults to csv)")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--threads", common.threads, "Worker thread cap")->check(CLI::PositiveNumber)->capture_default_str();
    std::string config_path;
    app.add_option("--config", config_path, "Read 'flag = value' lines; command-line flags take precedence");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a G(n,p) or G(n,M) random graph as an edge list");
    gen_cmd->add_option("--model", gen.model)->check(CLI::IsMember({"gnp", "gnm"}))->capture_default_str();
    gen_cmd->add_option("--n", gen.n)->required();
    auto* p_opt = gen_cmd->add_option("--p", gen.p, "Edge probability (gnp)");
    auto* m_opt = gen_cmd->add_option("--M", gen.M, "Edge count (gnm)");
    p_opt->excludes(m_opt);

    ColorArgs color;
    auto* color_cmd = app.add_subcommand("color", "Draw a random coloring, or check one with --check");
    color_cmd->add_option("graph", color.graph, "Edge-list file ('-' for stdin)")->required();
    color_cmd->add_option("--t", color.t, "Palette size");
    color_cmd->add_option("--check", color.check, "Coloring file to verify");
    color_cmd->add_option("--k", color.k)->capture_default_str();
    color_cmd->add_option("--ell", color.ell)->capture_default_str();

    CertifyArgs cert;
    auto* cert_cmd = app.add_subcommand("certify", "Lower witness, else random upper certificate");
    cert_cmd->add_option("graph", cert.graph, "Edge-list file ('-' for stdin)")->required();
    cert_cmd->add_option("--k", cert.k)->capture_default_str();
    cert_cmd->add_option("--ell", cert.ell)->capture_default_str();
    cert_cmd->add_option("--attempts", cert.attempts)->capture_default_str();
    cert_cmd->add_option("--mode", cert.mode)->check(CLI::IsMember({"star", "full"}))->capture_default_str();

    RxArgs rx;
    auto* rx_cmd = app.add_subcommand("rx", "Exact rainbow index of a small graph");
    rx_cmd->add_option("graph", rx.graph, "Edge-list file ('-' for stdin)")->required();
    rx_cmd->add_option("--k", rx.k)->capture_default_str();
    rx_cmd->add_option("--ell", rx.ell)->capture_default_str();
    rx_cmd->add_option("--tmax", rx.tmax)->capture_default_str();
    rx_cmd->add_option("--witness", rx.witness, "Write the witness coloring here");

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over an edge-probability grid");
    sweep_cmd->add_option("--model", sw.model)->check(CLI::IsMember({"gnp", "gnm"}))->capture_default_str();
    sweep_cmd->add_option("--n", sw.n)->required();
    sweep_cmd->add_option("--k", sw.k)->capture_default_str();
    sweep_cmd->add_option("--ell", sw.ell)->capture_default_str();
    auto* grid_opt = sweep_cmd->add_option("--grid", sw.grid, "p values (gnp) or M values (gnm)")->delimiter(',');
    auto* coef_opt =
        sweep_cmd->add_option("--coef-grid", sw.coef_grid, "Multiples c of the threshold p(n)")->delimiter(',');
    grid_opt->excludes(coef_opt);
    sweep_cmd->add_option("--trials", sw.trials)->capture_default_str();
    sweep_cmd->add_option("--checks", sw.checks, "BAD_SET, STAR_CERT, COMMON_NBRS, EXACT")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--common-samples", sw.common_samples, "k-sets sampled for COMMON_NBRS when n > 60")
        ->capture_default_str();

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate threshold constants and bounds");
    bounds_cmd->add_option("--n", bounds.n);
    bounds_cmd->add_option("--k", bounds.k)->capture_default_str();
    bounds_cmd->add_option("--ell", bounds.ell)->capture_default_str();
    bounds_cmd->add_option("--c1", bounds.c1);
    bounds_cmd->add_option("--p", bounds.p);
    bounds_cmd->add_option("--x", bounds.x)->capture_default_str();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = apply_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*gen_cmd) {
            if (!gen.p && !gen.M) throw ParameterError(gen.model == "gnp" ? "--p is required" : "--M is required");
            return run_gen(gen, common);
        }
        if (*color_cmd) return run_color(color, common);
        if (*cert_cmd) return run_certify(cert, common);
        if (*rx_cmd) return run_rx(rx, common);
        if (*sweep_cmd) return run_sweep_cmd(sw, common);
        if (*bounds_cmd) return run_bounds(bounds, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
