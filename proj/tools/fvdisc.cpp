// Command-line front end: point-set generation, discrepancy reports,
// dispersion curves, rate fits, and lattice verification.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fvdisc/fvdisc.hpp"

namespace {

using namespace fvd;

std::string hash_hex(const std::string& canonical) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical)));
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw argument_error("cannot open output file: " + out_path);
    os << text;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

// plain-text config: key = value, one per line, '#' starts a comment
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw argument_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw argument_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

WeightedPointSet load_points(const std::string& path) { return read_pointset_csv(path); }

void apply_weight_mode(WeightedPointSet& ps, const std::string& mode, int r,
                       const SearchSpec& search, double v) {
    if (mode == "native") return;
    if (mode == "equal") {
        const double w = ps.size() ? 1.0 / static_cast<double>(ps.size()) : 0.0;
        for (double& x : ps.weights) x = w;
        return;
    }
    if (mode == "optimized") {
        // constraint sample drawn from the same seed as the search
        SplitMix64 rng(search.seed);
        std::vector<HatSpec> sample;
        const int count = std::min(500, std::max(16, search.z_grid * search.u_samples));
        for (int i = 0; i < count; ++i) {
            HatSpec spec;
            spec.r = r;
            spec.z.resize(ps.d);
            spec.u.resize(ps.d);
            for (int j = 0; j < ps.d; ++j) {
                spec.z[j] = rng.next_double();
                const double umax = 0.5;
                const double umin = std::min(0.45, std::max(0.01, std::pow(v, 1.0)));
                spec.u[j] = umin + (umax - umin) * rng.next_double();
            }
            sample.push_back(std::move(spec));
        }
        const auto res = optimize_weights_minimax_periodic(ps.points, r, sample);
        ps.weights = res.weights;
        return;
    }
    throw argument_error("unknown weight mode: " + mode);
}

struct DiscOptions {
    std::string points, mode = "periodic", weight_mode = "native", out, v_list_str;
    int r = 2;
    double v = 0.0, V = 0.0;
    SearchSpec search;
};

int run_disc(const DiscOptions& o) {
    WeightedPointSet ps = load_points(o.points);
    const std::string canonical = "cmd=disc;points=" + o.points + ";mode=" + o.mode +
                                  ";weight_mode=" + o.weight_mode + ";r=" + std::to_string(o.r) +
                                  ";v=" + fmt17(o.v) + ";V=" + fmt17(o.V) + ";v_list=" + o.v_list_str +
                                  ";z_grid=" + std::to_string(o.search.z_grid) +
                                  ";u_samples=" + std::to_string(o.search.u_samples) +
                                  ";refine=" + std::to_string(o.search.refine_iters) +
                                  ";seed=" + std::to_string(o.search.seed);
    if (o.weight_mode == "optimized" && o.mode != "periodic")
        throw argument_error("weight mode 'optimized' is only available in periodic mode");
    apply_weight_mode(ps, o.weight_mode, o.r,
                      o.search, o.v > 0.0 ? o.v : std::pow(0.5, ps.d));

    nlohmann::json report;
    if (o.mode == "periodic") {
        if (!(o.v > 0.0)) throw argument_error("periodic mode requires --v > 0");
        report = periodic_fixed_volume_discrepancy(ps, o.r, o.v, o.search).to_json();
    } else if (o.mode == "fixed-volume") {
        if (!(o.V > 0.0)) throw argument_error("fixed-volume mode requires --V > 0");
        report = fixed_volume_discrepancy(ps, o.r, o.V, o.search).to_json();
    } else if (o.mode == "global") {
        std::vector<double> grid = parse_double_list(o.v_list_str);
        if (grid.empty())
            for (int j = 4; j >= 0; --j) grid.push_back(std::pow(0.5, ps.d + j));
        report = global_smooth_discrepancy(ps, o.r, o.search, grid).to_json();
    } else if (o.mode == "star") {
        report = {{"mode", "star"}, {"value", star_discrepancy_exact(ps)}};
    } else if (o.mode == "b_r") {
        report = b_r_discrepancy(ps, o.r, o.search).to_json();
    } else {
        throw argument_error("unknown discrepancy mode: " + o.mode);
    }
    report["weight_mode"] = o.weight_mode;
    report["points_file"] = o.points;
    report["config_hash"] = hash_hex(canonical);
    emit(report.dump(2) + "\n", o.out);
    return 0;
}

int run_gen(const std::string& kind, int d, double a, int n, int m, std::uint64_t seed,
            std::string out) {
    WeightedPointSet ps;
    if (kind == "frolov") {
        ps = frolov_pointset(d, a);
    } else if (kind == "frolov-periodized") {
        ps = periodized_frolov_pointset(d, a);
    } else if (kind == "fibonacci") {
        ps = fibonacci_pointset(n);
    } else if (kind == "random") {
        ps = random_pointset(static_cast<std::size_t>(m), d, seed);
    } else {
        throw argument_error("unknown point-set kind: " + kind);
    }
    const std::string canonical = "cmd=gen;kind=" + kind + ";d=" + std::to_string(d) +
                                  ";a=" + fmt17(a) + ";n=" + std::to_string(n) +
                                  ";m=" + std::to_string(m) + ";seed=" + std::to_string(seed);
    ps.meta["config_hash"] = hash_hex(canonical);
    ps.meta["seed"] = seed;
    if (out.empty()) out = kind;
    write_pointset(ps, out);
    std::cout << "wrote " << out << ".csv (" << ps.size() << " points) and " << out << ".json\n";
    return 0;
}

int run_disp(const std::vector<std::string>& files, const std::string& out) {
    std::string canonical = "cmd=disp";
    for (const auto& f : files) canonical += ";points=" + f;
    std::ostringstream os;
    os << "# config_hash=" << hash_hex(canonical) << "\n";
    os << "n,disp,n_times_disp\n";
    for (const auto& f : files) {
        const auto ps = load_points(f);
        const auto r = dispersion(ps.points, ps.d);
        os << ps.size() << "," << fmt17(r.volume) << ","
           << fmt17(static_cast<double>(ps.size()) * r.volume) << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int run_rates(const std::string& config_path, const std::string& out) {
    const auto kv = parse_config(config_path);
    auto get = [&](const std::string& key, const std::string& dflt) {
        auto it = kv.find(key);
        return it == kv.end() ? dflt : it->second;
    };
    auto require = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw argument_error("config missing required key: " + key);
        return it->second;
    };
    const std::string family = require("family");
    const std::string mode = get("mode", "periodic");
    const int d = std::stoi(get("d", "2"));
    const int r = std::stoi(get("r", "2"));
    const double v = std::stod(get("v", "0.25"));
    SearchSpec search;
    search.z_grid = std::stoi(get("z_grid", "16"));
    search.u_samples = std::stoi(get("u_samples", "16"));
    search.refine_iters = std::stoi(get("refine", "24"));
    search.seed = std::stoull(get("seed", "1"));

    std::vector<WeightedPointSet> family_sets;
    if (family == "periodized-frolov" || family == "frolov") {
        for (double a : parse_double_list(require("a_list")))
            family_sets.push_back(family == "frolov" ? frolov_pointset(d, a)
                                                     : periodized_frolov_pointset(d, a));
    } else if (family == "fibonacci") {
        std::stringstream ss(require("n_list"));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) family_sets.push_back(fibonacci_pointset(std::stoi(tok)));
    } else if (family == "random" || family == "zero") {
        std::stringstream ss(require("m_list"));
        std::string tok;
        std::uint64_t seed = search.seed;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) {
                auto ps = random_pointset(std::stoull(tok), d, seed++);
                if (family == "zero")
                    for (double& w : ps.weights) w = 0.0;
                family_sets.push_back(std::move(ps));
            }
    } else {
        throw argument_error("unknown family: " + family);
    }

    std::string canonical = "cmd=rates";
    for (const auto& [k, val] : kv) canonical += ";" + k + "=" + val;
    std::ostringstream os;
    os << "# config_hash=" << hash_hex(canonical) << " seed=" << search.seed << "\n";
    os << "m,value\n";
    std::vector<double> ms, values;
    try {
        for (const auto& ps : family_sets) {
            double value = 0.0;
            if (mode == "periodic")
                value = periodic_fixed_volume_discrepancy(ps, r, v, search).value;
            else if (mode == "fixed-volume")
                value = fixed_volume_discrepancy(ps, r, v, search).value;
            else if (mode == "star")
                value = star_discrepancy_exact(ps);
            else if (mode == "b_r")
                value = b_r_discrepancy(ps, r, search).value;
            else
                throw argument_error("unknown mode: " + mode);
            os << ps.size() << "," << fmt17(value) << "\n";
            ms.push_back(static_cast<double>(ps.size()));
            values.push_back(value);
        }
    } catch (...) {
        emit(os.str(), out); // partial CSV, then propagate for the exit code
        throw;
    }
    if (ms.size() >= 3) {
        bool positive = true;
        for (double y : values) positive = positive && y > 0.0;
        if (positive) {
            const RateFit fit = fit_log_log(ms, values);
            os << "# slope=" << fmt17(fit.slope) << " intercept=" << fmt17(fit.intercept)
               << " residual_rms=" << fmt17(fit.residual_rms) << " n=" << fit.n << "\n";
        } else {
            os << "# fit skipped: nonpositive values\n";
        }
    } else {
        os << "# fit skipped: fewer than 3 members\n";
    }
    emit(os.str(), out);
    return 0;
}

int run_verify_lattice(int d, double a, long long M, int boxes, std::uint64_t seed) {
    const auto lat = build_frolov_lattice(d, a);
    const auto nf = norm_form_min(lat, M);
    std::cout << "min_norm_form=" << fmt17(nf.min_abs) << "\n";
    bool pass = nf.min_abs >= 1.0 - 1e-6;

    SplitMix64 rng(seed);
    double worst_excess = -1e300;
    for (int i = 0; i < boxes; ++i) {
        Box box;
        box.lo.resize(d);
        box.hi.resize(d);
        for (int j = 0; j < d; ++j) {
            const double c = -5.0 + 10.0 * rng.next_double();
            const double w = 0.1 + 5.0 * rng.next_double();
            box.lo[j] = c;
            box.hi[j] = c + w;
        }
        const long long cnt = box_point_count(lat, box);
        worst_excess = std::max(worst_excess,
                                static_cast<double>(cnt) - box.volume() - 1.0);
    }
    std::cout << "worst_box_excess=" << fmt17(worst_excess) << "\n";
    pass = pass && worst_excess <= 1e-9;

    // every dyadic block below the first admissible level must be empty
    const int n0 = static_cast<int>(std::ceil(d * std::log2(a)));
    bool empties = true;
    long long worst_block = 0;
    std::vector<int> s(d, 0);
    for (int n = 0; n < n0 + 3 && d == 2; ++n)
        for (int s0 = 0; s0 <= n; ++s0) {
            const long long c = count_points_in_dyadic_block(lat, DyadicBlock{{s0, n - s0}});
            if (n < n0 && c != 0) empties = false;
            worst_block = std::max(worst_block, c);
        }
    std::cout << "blocks_below_n0_empty=" << (empties ? "pass" : "fail") << "\n";
    std::cout << "block_count_constant="
              << fmt17(static_cast<double>(worst_block) / std::max(1.0, std::ldexp(1.0, 3)))
              << "\n";
    pass = pass && empties;
    std::cout << "result=" << (pass ? "pass" : "fail") << "\n";
    return pass ? 0 : 4;
}

int run_curve(const std::string& points, int r, double v0, int levels, const SearchSpec& search,
              const std::string& out) {
    const auto ps = load_points(points);
    if (levels < 1) throw argument_error("fixed-volume-curve: need at least one level");
    const std::string canonical = "cmd=fixed-volume-curve;points=" + points +
                                  ";r=" + std::to_string(r) + ";v0=" + fmt17(v0) +
                                  ";levels=" + std::to_string(levels) +
                                  ";z_grid=" + std::to_string(search.z_grid) +
                                  ";u_samples=" + std::to_string(search.u_samples) +
                                  ";refine=" + std::to_string(search.refine_iters) +
                                  ";seed=" + std::to_string(search.seed);
    std::ostringstream os;
    os << "# config_hash=" << hash_hex(canonical) << " seed=" << search.seed << "\n";
    os << "v,value\n";
    std::vector<double> values;
    for (int j = 0; j < levels; ++j) {
        const double v = v0 * std::ldexp(1.0, j);
        if (v > std::pow(0.5, ps.d) + 1e-15)
            throw argument_error("fixed-volume-curve: v exceeds 2^-d at level " + std::to_string(j));
        const double value = periodic_fixed_volume_discrepancy(ps, r, v, search).value;
        os << fmt17(v) << "," << fmt17(value) << "\n";
        values.push_back(value);
    }
    if (values.size() >= 2 && values.front() > 0.0) {
        // fitted C in value <= C * base * log(2 v / v0)^{d-1}, base = value(v0)
        double c_fit = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j) {
            const double logs = std::pow(std::log(2.0 * std::ldexp(1.0, static_cast<int>(j))),
                                         ps.d - 1);
            c_fit = std::max(c_fit, values[j] / (values.front() * std::max(1.0, logs)));
        }
        os << "# C_fit=" << fmt17(c_fit) << "\n";
    } else {
        os << "# fit skipped\n";
    }
    emit(os.str(), out);
    return 0;
}

int run_weights(const std::string& points, int r, int samples, std::uint64_t seed,
                bool has_mass_bound, double mass_bound, const std::string& out) {
    const auto ps = load_points(points);
    if (samples < 1) throw argument_error("weights: need at least one constraint sample");
    SplitMix64 rng(seed);
    std::vector<HatSpec> sample;
    for (int i = 0; i < samples; ++i) {
        HatSpec spec;
        spec.r = r;
        spec.z.resize(ps.d);
        spec.u.resize(ps.d);
        for (int j = 0; j < ps.d; ++j) {
            spec.z[j] = rng.next_double();
            spec.u[j] = 0.05 + 0.45 * rng.next_double();
        }
        sample.push_back(std::move(spec));
    }
    const auto res = optimize_weights_minimax_periodic(ps.points, r, sample, has_mass_bound,
                                                       mass_bound);
    const std::string canonical = "cmd=weights;points=" + points + ";r=" + std::to_string(r) +
                                  ";samples=" + std::to_string(samples) +
                                  ";seed=" + std::to_string(seed) +
                                  ";mass_bound=" + (has_mass_bound ? fmt17(mass_bound) : "none");
    nlohmann::json j{{"weights", res.weights},
                     {"value", res.value},
                     {"iterations", res.iterations},
                     {"samples", samples},
                     {"seed", seed},
                     {"config_hash", hash_hex(canonical)}};
    if (has_mass_bound) j["mass_bound"] = mass_bound;
    emit(j.dump(2) + "\n", out);
    return 0;
}

void add_search_options(CLI::App* cmd, SearchSpec& search) {
    cmd->add_option("--z-grid", search.z_grid, "shift grid resolution per axis");
    cmd->add_option("--u-samples", search.u_samples, "width samples on the volume constraint");
    cmd->add_option("--refine", search.refine_iters, "pattern-search refinement iterations");
    cmd->add_option("--seed", search.seed, "search seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"point sets, smooth discrepancy, and dispersion"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a point set (CSV + JSON sidecar)");
    std::string gen_kind, gen_out;
    int gen_d = 2, gen_n = 5, gen_m = 100;
    double gen_a = 4.0;
    std::uint64_t gen_seed = 1;
    gen->add_option("kind", gen_kind, "frolov | frolov-periodized | fibonacci | random")
        ->required();
    gen->add_option("--d", gen_d, "dimension");
    gen->add_option("--a", gen_a, "lattice dilation (frolov kinds)");
    gen->add_option("--n", gen_n, "Fibonacci index (fibonacci kind)");
    gen->add_option("--m", gen_m, "point count (random kind)");
    gen->add_option("--seed", gen_seed, "seed (random kind)");
    gen->add_option("--out", gen_out, "output base path (default: the kind name)");

    // disc
    auto* disc = app.add_subcommand("disc", "discrepancy report (JSON)");
    DiscOptions dopt;
    disc->add_option("--points", dopt.points, "point-set CSV")->required();
    disc->add_option("--mode", dopt.mode, "periodic | fixed-volume | global | star | b_r");
    disc->add_option("--r", dopt.r, "smoothness order");
    disc->add_option("--v", dopt.v, "periodic volume constraint pr(u) = v");
    disc->add_option("--V", dopt.V, "non-periodic box volume");
    disc->add_option("--v-list", dopt.v_list_str, "comma-separated v grid (global mode)");
    disc->add_option("--weight-mode", dopt.weight_mode, "native | equal | optimized");
    disc->add_option("--out", dopt.out, "write the JSON report here instead of stdout");
    add_search_options(disc, dopt.search);

    // disp
    auto* disp = app.add_subcommand("disp", "dispersion curve (CSV: n, disp, n*disp)");
    std::vector<std::string> disp_files;
    std::string disp_out;
    disp->add_option("--points", disp_files, "point-set CSV files")->required();
    disp->add_option("--out", disp_out, "output CSV path (default stdout)");

    // rates
    auto* rates = app.add_subcommand("rates", "family sweep + log-log rate fit (CSV)");
    std::string rates_config, rates_out;
    rates->add_option("--config", rates_config, "key = value config file")->required();
    rates->add_option("--out", rates_out, "output CSV path (default stdout)");

    // verify-lattice
    auto* verify = app.add_subcommand("verify-lattice", "admissibility checks for a Frolov lattice");
    int vl_d = 2, vl_boxes = 1000;
    double vl_a = 8.0;
    long long vl_M = 50;
    std::uint64_t vl_seed = 1;
    verify->add_option("--d", vl_d, "dimension")->required();
    verify->add_option("--a", vl_a, "dilation")->required();
    verify->add_option("--M", vl_M, "norm-form scan radius");
    verify->add_option("--boxes", vl_boxes, "random boxes for the count bound");
    verify->add_option("--seed", vl_seed, "box sampling seed");

    // fixed-volume-curve
    auto* curve = app.add_subcommand("fixed-volume-curve", "discrepancy vs volume (CSV)");
    std::string cv_points, cv_out;
    int cv_r = 2, cv_levels = 7;
    double cv_v0 = 0.0;
    SearchSpec cv_search;
    curve->add_option("--points", cv_points, "point-set CSV")->required();
    curve->add_option("--r", cv_r, "smoothness order");
    curve->add_option("--v0", cv_v0, "base volume; levels are v0 * 2^j")->required();
    curve->add_option("--levels", cv_levels, "number of doubling levels");
    curve->add_option("--out", cv_out, "output CSV path (default stdout)");
    add_search_options(curve, cv_search);

    // weights
    auto* weights = app.add_subcommand("weights", "minimax cubature weights (JSON)");
    std::string w_points, w_out;
    int w_r = 2, w_samples = 64;
    std::uint64_t w_seed = 1;
    double w_bound = 0.0;
    bool w_has_bound = false;
    weights->add_option("--points", w_points, "point-set CSV")->required();
    weights->add_option("--r", w_r, "smoothness order");
    weights->add_option("--samples", w_samples, "constraint sample size");
    weights->add_option("--seed", w_seed, "constraint sampling seed");
    auto* bound_opt = weights->add_option("--mass-bound", w_bound, "bound on sum |lambda|");
    weights->add_option("--out", w_out, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_gen(gen_kind, gen_d, gen_a, gen_n, gen_m, gen_seed, gen_out);
        if (*disc) return run_disc(dopt);
        if (*disp) return run_disp(disp_files, disp_out);
        if (*rates) return run_rates(rates_config, rates_out);
        if (*verify) return run_verify_lattice(vl_d, vl_a, vl_M, vl_boxes, vl_seed);
        if (*curve) return run_curve(cv_points, cv_r, cv_v0, cv_levels, cv_search, cv_out);
        if (*weights) {
            w_has_bound = bound_opt->count() > 0;
            return run_weights(w_points, w_r, w_samples, w_seed, w_has_bound, w_bound, w_out);
        }
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
