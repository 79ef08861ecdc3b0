#include "nonlocal/cli.hpp"

#include "nonlocal/acceptance.hpp"
#include "nonlocal/currents.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/evolution.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

namespace nonlocal::cli {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double number(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("cannot parse " + what + " from '" + s + "'");
}

double param(const std::vector<std::string>& parts, std::size_t i, double def, const std::string& what) {
    return parts.size() > i && !parts[i].empty() ? number(parts[i], what) : def;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Result {
    Table table;
    json config = json::object();
    json error = json::object();
    std::vector<std::string> warnings;
};

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const std::string& command, const Result& r) {
    json j;
    j["command"] = command;
    j["version"] = library_version;
    j["config"] = r.config;
    j["error_estimate"] = r.error;
    j["warnings"] = r.warnings;
    j["columns"] = r.table.columns;
    json rows = json::array();
    for (const auto& row : r.table.rows) {
        json jr = json::array();
        // Strings keep all 17 digits regardless of the serializer's float format.
        for (double v : row) jr.push_back(std::isfinite(v) ? json(v) : json(format_number(v)));
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

struct Common {
    std::string out;
    std::string format = "csv";
    std::string config;
    int threads = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out,-o", c.out, "Output file (default: stdout)");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--config", c.config, "JSON file with option values (flags take precedence)");
    app->add_option("--threads", c.threads, "OpenMP threads (default: NONLOCAL_THREADS or runtime default)")
        ->check(CLI::NonNegativeNumber);
}

struct GridOpts {
    std::size_t n = 65536;
    double L = 3200.0;
    double xmax = 20.0;
    std::size_t stride = 0;
};

void add_grid(CLI::App* app, GridOpts& g) {
    app->add_option("--n", g.n, "Grid nodes (power of two)");
    app->add_option("--L", g.L, "Box half-length (radius cap for radial data)");
    app->add_option("--xmax", g.xmax, "Output window |x| <= xmax");
    app->add_option("--stride", g.stride, "Output every stride-th node (0: spacing near 0.05)");
}

std::size_t stride_for(const GridOpts& o, double dx) {
    return o.stride ? o.stride : std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.05 / dx)));
}

json grid_json(const GridOpts& g) { return {{"n", g.n}, {"L", g.L}, {"xmax", g.xmax}, {"stride", g.stride}}; }

InitialData initial_from(const std::string& spec) {
    try {
        return InitialData::parse(spec);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

bool same_symbol(const MultiplierSymbol& a, const MultiplierSymbol& b) { return a.describe() == b.describe(); }

// ---- evolve ----------------------------------------------------------------

struct EvolveOpts {
    std::string initial;
    std::string symbol = "stable:1";
    std::string times = "0,1,2,5";
    bool complex = false;
    bool r2rho_only = false;
    GridOpts grid;
};

Result run_evolve(const EvolveOpts& o) {
    const auto init = initial_from(o.initial);
    const auto F = parse_symbol(o.symbol);
    const auto times = parse_list(o.times);
    Result res;
    res.config = {{"initial", init.describe()}, {"symbol", F.describe()}, {"times", times}, {"complex", o.complex},
                  {"grid", grid_json(o.grid)}};
    const bool oracle = init.kind != InitialData::Kind::file && same_symbol(F, init.canonical_symbol());
    double oracle_gap = 0.0;
    std::vector<std::vector<std::vector<double>>> blocks(times.size());

    if (init.radial()) {
        const RadialGrid3D g(o.grid.n, o.grid.L);
        const auto psi0 = make_initial(init, g);
        const std::size_t st = stride_for(o.grid, g.dr());
        res.table.columns = o.r2rho_only ? std::vector<std::string>{"r", "t", "r2rho"}
                                         : std::vector<std::string>{"r", "t", "rho", "r2rho"};
#pragma omp parallel for schedule(dynamic) reduction(max : oracle_gap)
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double t = times[k];
            const auto psi = evolve_unitary(psi0, F, t);
            for (std::size_t i = st - 1; i < g.nodes() && g.r(i) <= o.grid.xmax; i += st) {
                const double r = g.r(i), rho = std::norm(psi.psi(i));
                if (o.r2rho_only)
                    blocks[k].push_back({r, t, r * r * rho});
                else
                    blocks[k].push_back({r, t, rho, r * r * rho});
                if (oracle) oracle_gap = std::max(oracle_gap, std::abs(rho - std::norm(oracle_solution(init, r, t))));
            }
        }
    } else {
        const Grid1D g(o.grid.n, o.grid.L);
        const auto psi0 = make_initial(init, g);
        Diagnostics diag;
        res.error["initial_spectral_tail"] = spectral_tail(g, psi0.values);
        if (res.error["initial_spectral_tail"].get<double>() > 1e-10)
            res.warnings.push_back("initial spectrum is not resolved on the grid");
        const std::size_t st = stride_for(o.grid, g.dx());
        res.table.columns = {"x", "t", "rho"};
        if (o.complex) {
            res.table.columns.push_back("re");
            res.table.columns.push_back("im");
        }
#pragma omp parallel for schedule(dynamic) reduction(max : oracle_gap)
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double t = times[k];
            const auto psi = evolve_unitary(psi0, F, t);
            for (std::size_t j = 0; j < g.n(); j += st) {
                const double x = g.x(j);
                if (std::abs(x) > o.grid.xmax) continue;
                const cplx z = psi.values[j];
                if (o.complex)
                    blocks[k].push_back({x, t, std::norm(z), z.real(), z.imag()});
                else
                    blocks[k].push_back({x, t, std::norm(z)});
                if (oracle) oracle_gap = std::max(oracle_gap, std::abs(std::norm(z) - std::norm(oracle_solution(init, x, t))));
            }
        }
    }
    for (auto& b : blocks)
        for (auto& row : b) res.table.rows.push_back(std::move(row));
    if (oracle)
        res.error["oracle_linf_rho"] = oracle_gap;
    else
        res.error["oracle_linf_rho"] = nullptr;
    return res;
}

// ---- kernel ----------------------------------------------------------------

struct KernelOpts {
    std::string family = "cauchy";
    int dim = 1;
    std::string times = "1";
    std::string xs;
    double xmin = -10.0, xmax = 10.0;
    std::size_t nx = 401;
};

std::vector<double> sample_points(const std::string& xs, double xmin, double xmax, std::size_t nx) {
    if (!xs.empty()) return parse_list(xs);
    if (nx < 2) throw UsageError("--nx must be at least 2");
    std::vector<double> out(nx);
    for (std::size_t i = 0; i < nx; ++i) out[i] = xmin + (xmax - xmin) * static_cast<double>(i) / (nx - 1);
    return out;
}

Result run_kernel(const KernelOpts& o) {
    const auto fam = parse_kernel_family(o.family, o.dim);
    const auto times = parse_list(o.times);
    const auto xs = sample_points(o.xs, o.xmin, o.xmax, o.nx);
    Result res;
    res.config = {{"family", o.family}, {"dim", o.dim}, {"times", times}, {"x", xs}};
    res.table.columns = {o.dim == 1 ? "x" : "r", "t", "k", "error"};
    std::vector<std::vector<std::vector<double>>> blocks(times.size());
    double err = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : err)
    for (std::size_t k = 0; k < times.size(); ++k)
        for (double x : xs) {
            const auto v = semigroup_kernel_eval(fam, x, times[k]);
            err = std::max(err, v.error);
            blocks[k].push_back({x, times[k], v.value, v.error});
        }
    for (auto& b : blocks)
        for (auto& row : b) res.table.rows.push_back(std::move(row));
    res.error["max_quadrature_error"] = err;
    return res;
}

// ---- propagate -------------------------------------------------------------

struct PropagateOpts {
    std::string family = "cauchy";
    int dim = 1;
    std::string times = "1";
    double eps = 0.0;
    std::string initial;
    std::string xs;
    double xmin = -10.0, xmax_tab = 10.0;
    std::size_t nx = 401;
    GridOpts grid{16384, 100.0, 20.0, 0};
};

Result run_propagate(const PropagateOpts& o) {
    const auto fam = parse_propagator_family(o.family, o.dim);
    const auto times = parse_list(o.times);
    Result res;
    res.config = {{"family", o.family}, {"dim", o.dim}, {"times", times}, {"eps", o.eps}};
    std::vector<std::vector<std::vector<double>>> blocks(times.size());

    if (o.initial.empty()) {
        const auto xs = sample_points(o.xs, o.xmin, o.xmax_tab, o.nx);
        res.config["x"] = xs;
        if (o.eps < 0.0) throw DomainError("propagate: eps must be non-negative");
        const Regularization reg{o.eps};
        res.table.columns = {o.dim == 1 ? "x" : "r", "t", "eps", "re", "im"};
        for (std::size_t k = 0; k < times.size(); ++k)
            for (double x : xs) {
                const cplx v = quantum_propagator(fam, x, times[k], reg);
                blocks[k].push_back({x, times[k], reg.eps, v.real(), v.imag()});
            }
    } else {
        const auto init = initial_from(o.initial);
        res.config["initial"] = init.describe();
        res.config["grid"] = grid_json(o.grid);
        std::vector<std::string> warnings;
        if (init.radial()) {
            if (fam.dim() != 3) throw DomainError("propagate: radial initial data needs --dim 3");
            const RadialGrid3D g(o.grid.n, o.grid.L);
            const auto psi0 = make_initial(init, g);
            const Regularization reg = o.eps > 0.0 ? Regularization{o.eps} : default_regularization(fam, g.dr());
            res.config["eps"] = reg.eps;
            const std::size_t st = stride_for(o.grid, g.dr());
            res.table.columns = {"r", "t", "re", "im", "rho"};
            for (std::size_t k = 0; k < times.size(); ++k) {
                Diagnostics diag;
                const auto psi = propagate_radial_with_kernel(psi0, fam, times[k], reg, &diag);
                warnings.insert(warnings.end(), diag.warnings.begin(), diag.warnings.end());
                for (std::size_t i = st - 1; i < g.nodes() && g.r(i) <= o.grid.xmax; i += st) {
                    const cplx z = psi.psi(i);
                    blocks[k].push_back({g.r(i), times[k], z.real(), z.imag(), std::norm(z)});
                }
            }
        } else {
            if (fam.dim() != 1) throw DomainError("propagate: 3D families need radial initial data");
            const Grid1D g(o.grid.n, o.grid.L);
            const auto psi0 = make_initial(init, g);
            const Regularization reg = o.eps > 0.0 || !fam.pole_family() ? Regularization{o.eps}
                                                                          : default_regularization(fam, g.dx());
            res.config["eps"] = reg.eps;
            const std::size_t st = stride_for(o.grid, g.dx());
            res.table.columns = {"x", "t", "re", "im", "rho"};
            for (std::size_t k = 0; k < times.size(); ++k) {
                Diagnostics diag;
                const auto psi = propagate_with_kernel(psi0, fam, times[k], reg, &diag);
                warnings.insert(warnings.end(), diag.warnings.begin(), diag.warnings.end());
                for (std::size_t j = 0; j < g.n(); j += st) {
                    const double x = g.x(j);
                    if (std::abs(x) > o.grid.xmax) continue;
                    const cplx z = psi.values[j];
                    blocks[k].push_back({x, times[k], z.real(), z.imag(), std::norm(z)});
                }
            }
        }
        std::sort(warnings.begin(), warnings.end());
        warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
        res.warnings = warnings;
    }
    for (auto& b : blocks)
        for (auto& row : b) res.table.rows.push_back(std::move(row));
    // The regularized kernel evolves to t - i eps: the deviation from the eps = 0 dynamics is O(eps).
    res.error["regularization_eps"] = res.config["eps"];
    return res;
}

// ---- current ---------------------------------------------------------------

struct CurrentOpts {
    std::string initial = "gaussian:1";
    std::string symbol = "cauchy";
    std::string times = "0,1,2,5";
    GridOpts grid;
};

PropagatorFamily current_family(const MultiplierSymbol& F, int dim) {
    if (F.kind == MultiplierSymbol::Kind::salpeter) return PropagatorFamily::salpeter(F.m, F.c, dim);
    if (F.kind == MultiplierSymbol::Kind::stable && F.mu == 1.0) return PropagatorFamily::cauchy(F.gamma, dim);
    throw UnsupportedRegime("current: a local current exists only for the Cauchy (mu = 1) and Salpeter symbols");
}

Result run_current(const CurrentOpts& o) {
    const auto init = initial_from(o.initial);
    const auto F = parse_symbol(o.symbol);
    const auto times = parse_list(o.times);
    Result res;
    res.config = {{"initial", init.describe()}, {"symbol", F.describe()}, {"times", times}, {"grid", grid_json(o.grid)}};
    std::vector<std::vector<std::vector<double>>> blocks(times.size());
    double residual = 0.0;
    if (init.radial()) {
        const auto fam = current_family(F, 3);
        const RadialGrid3D g(o.grid.n, o.grid.L);
        const auto psi0 = make_initial(init, g);
        const std::size_t st = stride_for(o.grid, g.dr());
        res.table.columns = {"r", "t", "j"};
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto psi = evolve_unitary(psi0, F, times[k]);
            const RVec j = quantum_current_field(psi, fam);
            for (std::size_t i = st - 1; i < g.nodes() && g.r(i) <= o.grid.xmax; i += st)
                blocks[k].push_back({g.r(i), times[k], j[i]});
        }
        res.error["continuity_linf"] = nullptr;
    } else {
        const auto fam = current_family(F, 1);
        const Grid1D g(o.grid.n, o.grid.L);
        const auto psi0 = make_initial(init, g);
        const std::size_t st = stride_for(o.grid, g.dx());
        res.table.columns = {"x", "t", "j"};
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto psi = evolve_unitary(psi0, F, times[k]);
            const RVec j = quantum_current_field(psi, fam);
            const RVec rate = density_rate(psi, F);
            const CVec dj = derivative(g, CVec(j.begin(), j.end()), 1);
            for (std::size_t i = 0; i < g.n(); ++i) residual = std::max(residual, std::abs(rate[i] + dj[i].real()));
            for (std::size_t i = 0; i < g.n(); i += st) {
                const double x = g.x(i);
                if (std::abs(x) <= o.grid.xmax) blocks[k].push_back({x, times[k], j[i]});
            }
        }
        res.error["continuity_linf"] = residual;
    }
    for (auto& b : blocks)
        for (auto& row : b) res.table.rows.push_back(std::move(row));
    return res;
}

// ---- output & config -------------------------------------------------------

int emit(const std::string& command, const Result& r, const Common& c) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!c.out.empty()) {
        file.open(c.out, std::ios::binary);
        if (!file) throw DomainError("cannot open output file '" + c.out + "'");
        os = &file;
    }
    if (c.format == "json")
        write_json(*os, command, r);
    else
        write_csv(*os, r.table);
    return 0;
}

std::string json_scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + json_scalar(v[i]);
        return s;
    }
    if (v.is_number_float()) return format_number(v.get<double>());
    return v.dump();
}

// Splices --config values in as flags; explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    // Option aliases share one config key.
    static const std::map<std::string, std::vector<std::string>> aliases = {{"--times", {"--t"}}, {"--out", {"-o"}}};
    auto given = [&](const std::string& flag) {
        std::vector<std::string> names = {flag};
        if (auto a = aliases.find(flag); a != aliases.end()) names.insert(names.end(), a->second.begin(), a->second.end());
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return std::any_of(names.begin(), names.end(),
                               [&](const std::string& n) { return a == n || a.rfind(n + "=", 0) == 0; });
        });
    };
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = "--" + it.key();
        if (it.key() == "config" || given(flag)) continue;
        if (it->is_boolean()) {
            if (it->get<bool>()) args.push_back(flag);
            continue;
        }
        args.push_back(flag);
        args.push_back(json_scalar(*it));
    }
    return args;
}

void set_threads(int requested) {
    int n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("NONLOCAL_THREADS")) {
            try {
                n = std::stoi(env);
            } catch (const std::exception&) {
                throw UsageError(std::string("NONLOCAL_THREADS must be a positive integer, got '") + env + "'");
            }
            if (n <= 0) throw UsageError("NONLOCAL_THREADS must be a positive integer");
        }
    }
    if (n > 0) omp_set_num_threads(n);
}

} // namespace

MultiplierSymbol parse_symbol(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw UsageError("empty symbol specification");
    const std::string& k = parts[0];
    if (k == "stable") return MultiplierSymbol::stable(param(parts, 1, 1.0, "mu"), param(parts, 2, 1.0, "gamma"));
    if (k == "cauchy") return MultiplierSymbol::stable(1.0, param(parts, 1, 1.0, "c"));
    if (k == "salpeter") return MultiplierSymbol::salpeter(param(parts, 1, 1.0, "m"), param(parts, 2, 1.0, "c"));
    if (k == "gaussian") return MultiplierSymbol::gaussian(param(parts, 1, 1.0, "D"));
    throw UsageError("unknown symbol '" + k + "' (stable, cauchy, salpeter, gaussian)");
}

KernelFamily parse_kernel_family(const std::string& spec, int dim) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw UsageError("empty kernel family");
    const std::string& k = parts[0];
    if (k == "heat") return KernelFamily::heat(param(parts, 1, 1.0, "D"), dim);
    if (k == "stable") return KernelFamily::stable(param(parts, 1, 1.0, "mu"), param(parts, 2, 1.0, "gamma"), dim);
    if (k == "cauchy") return KernelFamily::cauchy(param(parts, 1, 1.0, "c"), dim);
    if (k == "relativistic")
        return KernelFamily::relativistic(param(parts, 1, 1.0, "m"), param(parts, 2, 1.0, "c"), dim);
    throw UsageError("unknown kernel family '" + k + "' (heat, stable, cauchy, relativistic)");
}

PropagatorFamily parse_propagator_family(const std::string& spec, int dim) {
    const auto parts = split(spec, ':');
    if (parts.empty()) throw UsageError("empty propagator family");
    const std::string& k = parts[0];
    if (k == "gaussian" || k == "oscillator") {
        if (dim != 1) throw UsageError(k + " propagator is one-dimensional");
        return k == "gaussian" ? PropagatorFamily::gaussian_free() : PropagatorFamily::oscillator();
    }
    if (k == "cauchy") return PropagatorFamily::cauchy(param(parts, 1, 1.0, "c"), dim);
    if (k == "salpeter") return PropagatorFamily::salpeter(param(parts, 1, 1.0, "m"), param(parts, 2, 1.0, "c"), dim);
    throw UsageError("unknown propagator family '" + k + "' (gaussian, oscillator, cauchy, salpeter)");
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split(s, ','))
        if (!item.empty()) out.push_back(number(item, "list entry"));
    if (out.empty()) throw UsageError("empty list '" + s + "'");
    return out;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Nonlocal (Levy-generator) quantum and semigroup dynamics"};
    app.set_version_flag("--version", std::string(library_version));
    app.require_subcommand(1);

    Common common;
    EvolveOpts ev;
    KernelOpts ke;
    PropagateOpts pr;
    CurrentOpts cu;
    int figure_id = 0;
    std::string figure_times;
    bool full = false;

    auto* evolve = app.add_subcommand("evolve", "Pseudo-spectral unitary evolution of named initial data");
    evolve->add_option("--initial", ev.initial, "quad_lorentz:g, lorentz:g, gaussian:w, salpeter_bessel:g:m, "
                                                "radial3d:g, file:path")
        ->required();
    evolve->add_option("--symbol", ev.symbol, "stable:mu[:gamma], cauchy[:c], salpeter:m[:c], gaussian:D");
    evolve->add_option("--times", ev.times, "Comma-separated sample times");
    evolve->add_flag("--complex", ev.complex, "Add re,im columns (1D)");
    add_grid(evolve, ev.grid);
    add_common(evolve, common);

    auto* kernel = app.add_subcommand("kernel", "Tabulate a semigroup (transition) kernel");
    kernel->add_option("--family", ke.family, "heat:D, stable:mu[:gamma], cauchy[:c], relativistic:m[:c]");
    kernel->add_option("--dim", ke.dim, "1 or 3")->check(CLI::IsMember({1, 3}));
    kernel->add_option("--times,--t", ke.times, "Comma-separated times (> 0)");
    kernel->add_option("--x", ke.xs, "Comma-separated positions (overrides the range)");
    kernel->add_option("--xmin", ke.xmin, "Range start");
    kernel->add_option("--xmax", ke.xmax, "Range end");
    kernel->add_option("--nx", ke.nx, "Range samples");
    add_common(kernel, common);

    auto* propagate = app.add_subcommand("propagate", "Tabulate a regularized propagator or convolve initial data");
    propagate->add_option("--family", pr.family, "gaussian, oscillator, cauchy[:c], salpeter:m[:c]");
    propagate->add_option("--dim", pr.dim, "1 or 3")->check(CLI::IsMember({1, 3}));
    propagate->add_option("--times,--t", pr.times, "Comma-separated times");
    propagate->add_option("--eps", pr.eps, "Regularization (0: grid default when convolving)");
    propagate->add_option("--initial", pr.initial, "Convolve this initial datum instead of tabulating the kernel");
    propagate->add_option("--x", pr.xs, "Comma-separated positions for tabulation");
    propagate->add_option("--xmin", pr.xmin, "Tabulation range start");
    propagate->add_option("--xrange-max", pr.xmax_tab, "Tabulation range end");
    propagate->add_option("--nx", pr.nx, "Tabulation samples");
    add_grid(propagate, pr.grid);
    add_common(propagate, common);

    auto* current = app.add_subcommand("current", "Probability current of the Cauchy or Salpeter flow");
    current->add_option("--initial", cu.initial, "Initial datum (see evolve)");
    current->add_option("--symbol", cu.symbol, "cauchy[:c] or salpeter:m[:c]");
    current->add_option("--times", cu.times, "Comma-separated sample times");
    add_grid(current, cu.grid);
    add_common(current, common);

    auto* figure = app.add_subcommand("figure", "Emit the data series of a preset figure (1-4)");
    figure->add_option("--id", figure_id, "Figure number")->required()->check(CLI::Range(1, 4));
    figure->add_option("--times", figure_times, "Override the preset sample times");
    add_common(figure, common);

    auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
    selftest->add_flag("--full", full, "Run every acceptance criterion");
    selftest->add_option("--threads", common.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);

    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    try {
        std::vector<std::string> fwd(args.rbegin(), args.rend());
        fwd = expand_config(std::move(fwd));
        args.assign(fwd.rbegin(), fwd.rend());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        set_threads(common.threads);
        if (*evolve) return emit("evolve", run_evolve(ev), common);
        if (*kernel) return emit("kernel", run_kernel(ke), common);
        if (*propagate) return emit("propagate", run_propagate(pr), common);
        if (*current) return emit("current", run_current(cu), common);
        if (*figure) {
            // Sample times are not printed in the figures; these presets are reconstructed.
            Result r;
            if (figure_id == 1 || figure_id == 2) {
                EvolveOpts o;
                o.initial = figure_id == 1 ? "quad_lorentz:1" : "gaussian:1";
                o.times = figure_times.empty() ? "0,1,2,5" : figure_times;
                o.grid.xmax = 10.0;
                r = run_evolve(o);
            } else if (figure_id == 3) {
                CurrentOpts o;
                o.times = figure_times.empty() ? "0,1,2,5" : figure_times;
                o.grid.xmax = 10.0;
                r = run_current(o);
            } else {
                EvolveOpts o;
                o.initial = "radial3d:1";
                o.times = figure_times.empty() ? "1,2,5,10" : figure_times;
                o.r2rho_only = true;
                o.grid = {16384, 1000.0, 15.0, 0};
                r = run_evolve(o);
            }
            r.config["figure"] = figure_id;
            return emit("figure", r, common);
        }
        if (*selftest) {
            std::vector<int> ids;
            if (!full) ids = {3, 5, 6, 10, 11, 12, 13};
            bool ok = true;
            for (const auto& res : run_acceptance(ids)) {
                std::cout << format_result(res) << '\n';
                ok = ok && res.pass;
            }
            return ok ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const UnsupportedRegime& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const StepSizeError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace nonlocal::cli
