#include "genipm/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genipm/composition.hpp"
#include "genipm/contamination.hpp"
#include "genipm/erm.hpp"
#include "genipm/experiments.hpp"
#include "genipm/io.hpp"
#include "genipm/ipm.hpp"
#include "genipm/parallel.hpp"

namespace genipm {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// grids: "a:b:xk" geometric, "a:b:+s" arithmetic, "v1,v2,..." explicit list
std::vector<double> parse_double_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::istringstream ss(text);
        std::string a, b, step;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, step))
            throw std::invalid_argument("bad grid '" + text + "' (want a:b:xk or a:b:+s)");
        const double lo = std::stod(a), hi = std::stod(b);
        if (step.size() < 2 || (step[0] != 'x' && step[0] != '+'))
            throw std::invalid_argument("bad grid step '" + step + "' (want xK or +S)");
        const double k = std::stod(step.substr(1));
        if (step[0] == 'x' && !(k > 1.0))
            throw std::invalid_argument("geometric grid needs a factor > 1");
        if (step[0] == '+' && !(k > 0.0))
            throw std::invalid_argument("arithmetic grid needs a positive step");
        for (double v = lo; v <= hi * (1.0 + 1e-12) && out.size() < 100000;
             v = step[0] == 'x' ? v * k : v + k)
            out.push_back(v);
    } else {
        std::istringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw std::invalid_argument("empty grid '" + text + "'");
    return out;
}

std::vector<std::size_t> parse_size_grid(const std::string& text) {
    std::vector<std::size_t> out;
    for (const double v : parse_double_grid(text)) {
        const auto n = static_cast<std::size_t>(v + 0.5);
        if (n == 0 || std::abs(v - static_cast<double>(n)) > 1e-9 * std::max(1.0, v))
            throw std::invalid_argument("grid value " + std::to_string(v) + " is not a size");
        out.push_back(n);
    }
    return out;
}

std::string csv_points(const std::string& param, const std::vector<SweepPoint>& rows) {
    std::string s = "param,value,mean,std_error,reps\n";
    for (const auto& r : rows)
        s += param + "," + format_double(r.value) + "," + format_double(r.mean) + "," +
             format_double(r.std_error) + "," + std::to_string(r.reps) + "\n";
    return s;
}

std::string csv_rate(const std::vector<RatePoint>& rows) {
    std::string s = "param,value,mean,std_error,reps\n";
    for (const auto& r : rows)
        s += "n," + std::to_string(r.n) + "," + format_double(r.mean) + "," +
             format_double(r.std_error) + "," + std::to_string(r.reps) + "\n";
    return s;
}

void write_manifest(const std::string& dir, const std::string& sub, const nlohmann::json& options,
                    unsigned workers) {
    nlohmann::json m;
    m["artifact_version"] = "1";
    m["tool_version"] = kVersion;
    m["subcommand"] = sub;
    m["created_utc"] = utc_now();
    m["workers"] = workers;
    m["options"] = options;
    atomic_write_file(dir + "/manifest.json", m.dump(2) + "\n");
}

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = {
        "ipm",         "rate",      "sweep-noise", "sweep-contamination", "lower-bound",
        "huber-check", "erm-fit",   "smoothness-constant", "synth"};
    return names;
}

// Expands `sub --manifest m.json <flags>` into `sub <manifest options> <flags>`;
// later flags win, so the command line still overrides the stored run.
std::vector<std::string> inject_manifest(std::vector<std::string> args) {
    std::size_t sub_at = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].empty() || args[i][0] == '-') continue;
        const auto& names = subcommand_names();
        if (std::find(names.begin(), names.end(), args[i]) != names.end()) sub_at = i;
        break;
    }
    if (sub_at == args.size()) return args;

    std::string path;
    for (std::size_t i = sub_at + 1; i < args.size(); ++i) {
        if (args[i] == "--manifest" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--manifest=", 0) == 0) {
            path = args[i].substr(std::string("--manifest=").size());
        }
    }
    if (path.empty()) return args;

    const auto m = nlohmann::json::parse(read_text_file(path));
    const std::string stored = m.at("subcommand").get<std::string>();
    if (stored != args[sub_at])
        throw std::invalid_argument("manifest " + path + " was written by '" + stored +
                                    "', not '" + args[sub_at] + "'");
    std::vector<std::string> out(args.begin(), args.begin() + sub_at + 1);
    for (const auto& [key, value] : m.at("options").items()) {
        out.push_back("--" + key);
        out.push_back(value.get<std::string>());
    }
    out.insert(out.end(), args.begin() + sub_at + 1, args.end());
    return out;
}

struct GenOpts {
    std::string family = "identity";
    std::string json_path;
    std::size_t d = 1;
    std::size_t D = 0;  // 0: same as d
    int alpha = 1;
    double lip = 2.0;
    double intercept = 0.25;
    double slope = 0.5;

    std::size_t ambient() const { return D == 0 ? d : D; }

    GeneratorSpec resolve() const {
        if (!json_path.empty()) return GeneratorSpec::parse_json(read_text_file(json_path));
        if (family == "identity") return GeneratorSpec::identity(d);
        if (family == "coordinate-trig")
            return GeneratorSpec::coordinate_trig(d, ambient(), alpha, lip);
        if (family == "affine") return GeneratorSpec::affine(1, 1, {intercept}, {slope});
        if (family == "constant")
            return GeneratorSpec::constant(1, std::vector<double>(ambient(), intercept));
        if (family == "corner-affine") {
            const std::size_t k = d;
            std::vector<double> c(k, 0.25), A(k * k, 0.0);
            for (std::size_t i = 0; i < k; ++i) A[i * k + i] = 0.5;
            return GeneratorSpec::affine(k, k, std::move(c), std::move(A));
        }
        throw std::invalid_argument("unknown generator family '" + family + "'");
    }

    void add_flags(CLI::App* sub) {
        sub->add_option("--generator", family,
                        "identity | coordinate-trig | affine | constant | corner-affine");
        sub->add_option("--generator-json", json_path, "path to a full generator JSON spec");
        sub->add_option("--d", d, "latent dimension");
        sub->add_option("--D", D, "ambient dimension (default: same as --d)");
        sub->add_option("--alpha", alpha, "smoothness order for trig generators");
        sub->add_option("--lip", lip, "smoothness scale for trig generators");
        sub->add_option("--intercept", intercept, "affine/constant level");
        sub->add_option("--slope", slope, "affine slope");
    }

    nlohmann::json options() const {
        nlohmann::json j;
        j["generator"] = family;
        if (!json_path.empty()) j["generator-json"] = json_path;
        j["d"] = std::to_string(d);
        j["D"] = std::to_string(D);
        j["alpha"] = std::to_string(alpha);
        j["lip"] = format_double(lip);
        j["intercept"] = format_double(intercept);
        j["slope"] = format_double(slope);
        return j;
    }
};

struct MetricOpts {
    std::string name = "w1";
    int walpha_alpha = 1;
    double walpha_lip = 1.0;
    int frequency_cap = 3;
    double grid_step = 0.1;

    IpmSpec resolve() const {
        IpmSpec spec;
        if (name == "w1") {
            spec.kind = IpmKind::W1Assignment;
        } else if (name == "projection") {
            spec.kind = IpmKind::ProjectionFirstAxis;
        } else if (name == "walpha") {
            spec.kind = IpmKind::WalphaDictionary;
        } else if (name == "lp-oracle") {
            spec.kind = IpmKind::BruteLpOracle;
        } else {
            spec.kind = ipm_kind_from_name(name);
        }
        spec.walpha.alpha = walpha_alpha;
        spec.walpha.lip = walpha_lip;
        spec.walpha.frequency_cap = frequency_cap;
        spec.grid_step = grid_step;
        return spec;
    }

    void add_flags(CLI::App* sub, const char* fallback) {
        name = fallback;
        sub->add_option("--metric", name,
                        "w1 | projection | walpha | lp-oracle (or a full metric name)");
        sub->add_option("--walpha-alpha", walpha_alpha, "dictionary smoothness order");
        sub->add_option("--walpha-lip", walpha_lip, "dictionary scale L");
        sub->add_option("--frequency-cap", frequency_cap, "dictionary max |k|_inf");
        sub->add_option("--grid-step", grid_step, "LP oracle lattice step h");
    }

    nlohmann::json options() const {
        nlohmann::json j;
        j["metric"] = name;
        j["walpha-alpha"] = std::to_string(walpha_alpha);
        j["walpha-lip"] = format_double(walpha_lip);
        j["frequency-cap"] = std::to_string(frequency_cap);
        j["grid-step"] = format_double(grid_step);
        return j;
    }
};

struct CommonOpts {
    std::string out;
    std::string manifest;
    std::uint64_t seed = 0;
    unsigned workers = 0;  // 0: auto

    void add_flags(CLI::App* sub, bool out_required) {
        auto* o = sub->add_option("--out", out, "output directory for artifacts")
                      ->envname("GENIPM_OUT");
        if (out_required) o->required();
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--workers", workers, "worker threads (0 = auto)");
        sub->add_option("--manifest", manifest, "reuse the options of a previous run's manifest");
    }

    unsigned resolve_workers(std::size_t bytes_per_task) const {
        const unsigned autod = default_workers(bytes_per_task);
        return workers == 0 ? autod : std::min(workers, autod);
    }
};

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset " + path);
    return read_dataset_csv(in);
}

nlohmann::json rate_json(const RateFit& f) {
    nlohmann::json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    j["slope_std_error"] = f.slope_std_error;
    auto rows = nlohmann::json::array();
    for (const auto& p : f.grid)
        rows.push_back({{"n", p.n}, {"mean", p.mean}, {"std_error", p.std_error}, {"reps", p.reps}});
    j["rows"] = rows;
    return j;
}

nlohmann::json sweep_json(const SweepResult& f) {
    nlohmann::json j;
    j["param"] = f.param;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r_squared"] = f.r_squared;
    j["slope_std_error"] = f.slope_std_error;
    auto rows = nlohmann::json::array();
    for (const auto& p : f.rows)
        rows.push_back(
            {{"value", p.value}, {"mean", p.mean}, {"std_error", p.std_error}, {"reps", p.reps}});
    j["rows"] = rows;
    return j;
}

}  // namespace

int run_cli(int argc, char** argv) {
    std::vector<std::string> raw(argv + 1, argv + argc);
    std::vector<std::string> args;
    try {
        args = inject_manifest(std::move(raw));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    CLI::App app{"pushforward generative models under IPM losses: studies and solvers"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_config("--config", "", "structured-text config; sections name subcommands");

    // ---- ipm ----------------------------------------------------------
    auto* c_ipm = app.add_subcommand("ipm", "metric between two dataset CSVs");
    std::string ipm_a, ipm_b;
    MetricOpts ipm_metric;
    CommonOpts ipm_common;
    c_ipm->add_option("--a", ipm_a, "first dataset CSV")->required();
    c_ipm->add_option("--b", ipm_b, "second dataset CSV")->required();
    ipm_metric.add_flags(c_ipm, "w1");
    ipm_common.add_flags(c_ipm, false);

    // ---- rate ---------------------------------------------------------
    auto* c_rate = app.add_subcommand("rate", "metric decay vs sample size, log-log fit");
    GenOpts rate_gen;
    MetricOpts rate_metric;
    CommonOpts rate_common;
    std::string rate_grid = "128:8192:x2";
    std::size_t rate_reps = 50;
    rate_gen.add_flags(c_rate);
    rate_metric.add_flags(c_rate, "w1");
    rate_common.add_flags(c_rate, true);
    c_rate->add_option("--n", rate_grid, "sample-size grid (a:b:xk, a:b:+s, or list)");
    c_rate->add_option("--reps", rate_reps, "replications per size");

    // ---- sweep-noise ----------------------------------------------------
    auto* c_noise = app.add_subcommand("sweep-noise", "metric vs noise level at zero outliers");
    MetricOpts noise_metric;
    CommonOpts noise_common;
    std::size_t noise_d = 1, noise_n = 4000, noise_reps = 200;
    std::string noise_grid = "0,0.1,0.2,0.3,0.4";
    std::string noise_model = "uniform-1d";
    noise_metric.add_flags(c_noise, "projection");
    noise_common.add_flags(c_noise, true);
    c_noise->add_option("--d", noise_d, "dimension of the diagonal test generator");
    c_noise->add_option("--n", noise_n, "sample size");
    c_noise->add_option("--reps", noise_reps, "replications");
    c_noise->add_option("--sigma-grid", noise_grid, "noise magnitudes, starting at 0");
    c_noise->add_option("--noise-model", noise_model, "sphere-fixed | gaussian-scaled | uniform-1d");

    // ---- sweep-contamination -------------------------------------------
    auto* c_contam =
        app.add_subcommand("sweep-contamination", "metric vs outlier fraction at zero noise");
    MetricOpts contam_metric;
    CommonOpts contam_common;
    std::size_t contam_d = 1, contam_n = 4000, contam_reps = 200;
    std::string contam_grid = "0,0.05,0.1,0.2";
    contam_metric.add_flags(c_contam, "projection");
    contam_common.add_flags(c_contam, true);
    c_contam->add_option("--d", contam_d, "dimension of the diagonal test generator");
    c_contam->add_option("--n", contam_n, "sample size");
    c_contam->add_option("--reps", contam_reps, "replications");
    c_contam->add_option("--eps-grid", contam_grid, "outlier fractions, starting at 0");

    // ---- lower-bound ----------------------------------------------------
    auto* c_lower = app.add_subcommand("lower-bound", "mean-deviation floor check");
    CommonOpts lower_common;
    std::string lower_grid = "1,10,100,1000,10000";
    std::size_t lower_reps = 10000;
    lower_common.add_flags(c_lower, true);
    c_lower->add_option("--n", lower_grid, "sample sizes");
    c_lower->add_option("--min-reps", lower_reps, "minimum replications per size");

    // ---- huber-check ----------------------------------------------------
    auto* c_huber = app.add_subcommand("huber-check", "contaminated-pair indistinguishability");
    CommonOpts huber_common;
    double huber_eps = 0.25;
    std::size_t huber_n = 100000;
    huber_common.add_flags(c_huber, true);
    c_huber->add_option("--epsilon", huber_eps, "contamination rate in (0,1)");
    c_huber->add_option("--n", huber_n, "sample size");

    // ---- erm-fit --------------------------------------------------------
    auto* c_erm = app.add_subcommand("erm-fit", "fit a generator family to a dataset CSV");
    MetricOpts erm_metric;
    CommonOpts erm_common;
    std::string erm_data, erm_family = "affine-1d";
    std::size_t erm_m = 2000, erm_evals = 4000, erm_restarts = 8;
    c_erm->add_option("--data", erm_data, "dataset CSV to fit")->required();
    c_erm->add_option("--family", erm_family, "affine-1d | constant");
    c_erm->add_option("--m", erm_m, "model sample size per objective evaluation");
    c_erm->add_option("--max-evals", erm_evals, "objective evaluation budget");
    c_erm->add_option("--restarts", erm_restarts, "direct-search restarts");
    erm_metric.add_flags(c_erm, "w1");
    erm_common.add_flags(c_erm, true);

    // ---- smoothness-constant ---------------------------------------------
    auto* c_smooth = app.add_subcommand("smoothness-constant", "composition-bound constant table");
    CommonOpts smooth_common;
    std::size_t smooth_D = 1, smooth_d = 1;
    int smooth_alpha = 1;
    c_smooth->add_option("--D", smooth_D, "outer dimension")->required();
    c_smooth->add_option("--d", smooth_d, "inner dimension")->required();
    c_smooth->add_option("--alpha", smooth_alpha, "smoothness order")->required();
    smooth_common.add_flags(c_smooth, false);

    // ---- synth ------------------------------------------------------------
    auto* c_synth = app.add_subcommand("synth", "contaminated pushforward dataset CSV");
    GenOpts synth_gen;
    CommonOpts synth_common;
    std::size_t synth_n = 1000;
    double synth_sigma = 0.0, synth_eps = 0.0;
    std::string synth_noise = "sphere-fixed", synth_policy = "corner";
    double synth_mix_lo = 0.0, synth_mix_hi = 1.0;
    std::string synth_mix_json;
    synth_gen.add_flags(c_synth);
    synth_common.add_flags(c_synth, true);
    c_synth->add_option("--n", synth_n, "sample size");
    c_synth->add_option("--sigma", synth_sigma, "noise magnitude");
    c_synth->add_option("--epsilon", synth_eps, "outlier fraction");
    c_synth->add_option("--noise-model", synth_noise, "sphere-fixed | gaussian-scaled | uniform-1d");
    c_synth->add_option("--outlier-policy", synth_policy, "corner | huber-mixture");
    c_synth->add_option("--mixture-lo", synth_mix_lo, "huber mixture law lower end (1-D uniform)");
    c_synth->add_option("--mixture-hi", synth_mix_hi, "huber mixture law upper end (1-D uniform)");
    c_synth->add_option("--mixture-json", synth_mix_json, "huber mixture generator JSON");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto noise_model_from = [](const std::string& s) {
        if (s == "sphere-fixed") return NoiseModel::SphereFixed;
        if (s == "gaussian-scaled") return NoiseModel::GaussianScaled;
        if (s == "uniform-1d") return NoiseModel::Uniform1d;
        throw std::invalid_argument("unknown noise model '" + s + "'");
    };

    try {
        if (c_ipm->parsed()) {
            const auto A = load_dataset(ipm_a);
            const auto B = load_dataset(ipm_b);
            const double v = evaluate_ipm(ipm_metric.resolve(), DiscreteMeasure::empirical(A.points),
                                          DiscreteMeasure::empirical(B.points));
            std::printf("%s\n", format_double(v).c_str());
            if (!ipm_common.out.empty()) {
                nlohmann::json j;
                j["value"] = v;
                j["metric"] = ipm_metric.name;
                atomic_write_file(ipm_common.out + "/ipm.json", j.dump(2) + "\n");
                nlohmann::json opts = ipm_metric.options();
                opts["a"] = ipm_a;
                opts["b"] = ipm_b;
                write_manifest(ipm_common.out, "ipm", opts, 1);
            }
            return 0;
        }

        if (c_rate->parsed()) {
            const auto grid = parse_size_grid(rate_grid);
            const std::size_t biggest = grid.empty() ? 0 : grid.back();
            const unsigned workers = rate_common.resolve_workers(biggest * biggest * 8);
            const auto fit = rate_study(rate_gen.resolve(), rate_metric.resolve(), grid, rate_reps,
                                        SeedPolicy{rate_common.seed, 0, 0}, workers);
            atomic_write_file(rate_common.out + "/rate.csv", csv_rate(fit.grid));
            atomic_write_file(rate_common.out + "/summary.json", rate_json(fit).dump(2) + "\n");
            nlohmann::json opts = rate_gen.options();
            opts.update(rate_metric.options());
            opts["n"] = rate_grid;
            opts["reps"] = std::to_string(rate_reps);
            opts["seed"] = std::to_string(rate_common.seed);
            write_manifest(rate_common.out, "rate", opts, workers);
            std::printf("slope=%s r_squared=%s\n", format_double(fit.slope).c_str(),
                        format_double(fit.r_squared).c_str());
            return 0;
        }

        if (c_noise->parsed()) {
            GenOpts g;
            g.family = "corner-affine";
            g.d = noise_d;
            const unsigned workers = noise_common.resolve_workers(noise_n * 64);
            const auto res = noise_sweep(g.resolve(), noise_metric.resolve(),
                                         parse_double_grid(noise_grid), noise_n, noise_reps,
                                         SeedPolicy{noise_common.seed, 0, 0},
                                         noise_model_from(noise_model), workers);
            atomic_write_file(noise_common.out + "/sweep.csv", csv_points(res.param, res.rows));
            atomic_write_file(noise_common.out + "/summary.json", sweep_json(res).dump(2) + "\n");
            nlohmann::json opts = noise_metric.options();
            opts["d"] = std::to_string(noise_d);
            opts["n"] = std::to_string(noise_n);
            opts["reps"] = std::to_string(noise_reps);
            opts["sigma-grid"] = noise_grid;
            opts["noise-model"] = noise_model;
            opts["seed"] = std::to_string(noise_common.seed);
            write_manifest(noise_common.out, "sweep-noise", opts, workers);
            std::printf("slope=%s r_squared=%s\n", format_double(res.slope).c_str(),
                        format_double(res.r_squared).c_str());
            return 0;
        }

        if (c_contam->parsed()) {
            GenOpts g;
            g.family = "corner-affine";
            g.d = contam_d;
            const unsigned workers = contam_common.resolve_workers(contam_n * 64);
            const auto res = contamination_sweep(g.resolve(), contam_metric.resolve(),
                                                 parse_double_grid(contam_grid), contam_n,
                                                 contam_reps, SeedPolicy{contam_common.seed, 0, 0},
                                                 workers);
            atomic_write_file(contam_common.out + "/sweep.csv", csv_points(res.param, res.rows));
            atomic_write_file(contam_common.out + "/summary.json", sweep_json(res).dump(2) + "\n");
            nlohmann::json opts = contam_metric.options();
            opts["d"] = std::to_string(contam_d);
            opts["n"] = std::to_string(contam_n);
            opts["reps"] = std::to_string(contam_reps);
            opts["eps-grid"] = contam_grid;
            opts["seed"] = std::to_string(contam_common.seed);
            write_manifest(contam_common.out, "sweep-contamination", opts, workers);
            std::printf("slope=%s r_squared=%s\n", format_double(res.slope).c_str(),
                        format_double(res.r_squared).c_str());
            return 0;
        }

        if (c_lower->parsed()) {
            const unsigned workers = lower_common.resolve_workers(1 << 16);
            const auto rep = lower_bound_check(parse_size_grid(lower_grid), lower_reps,
                                               SeedPolicy{lower_common.seed, 0, 0}, workers);
            std::string csv = "n,reps,estimate,std_error,threshold,asymptote,ok\n";
            auto rows = nlohmann::json::array();
            for (const auto& r : rep.rows) {
                csv += std::to_string(r.n) + "," + std::to_string(r.reps) + "," +
                       format_double(r.estimate) + "," + format_double(r.std_error) + "," +
                       format_double(r.threshold) + "," + format_double(r.asymptote) + "," +
                       (r.ok ? "1" : "0") + "\n";
                rows.push_back({{"n", r.n},
                                {"reps", r.reps},
                                {"estimate", r.estimate},
                                {"std_error", r.std_error},
                                {"threshold", r.threshold},
                                {"asymptote", r.asymptote},
                                {"ok", r.ok}});
            }
            atomic_write_file(lower_common.out + "/lower_bound.csv", csv);
            nlohmann::json j;
            j["all_ok"] = rep.all_ok;
            j["rows"] = rows;
            atomic_write_file(lower_common.out + "/summary.json", j.dump(2) + "\n");
            nlohmann::json opts;
            opts["n"] = lower_grid;
            opts["min-reps"] = std::to_string(lower_reps);
            opts["seed"] = std::to_string(lower_common.seed);
            write_manifest(lower_common.out, "lower-bound", opts, workers);
            std::printf("all_ok=%d\n", static_cast<int>(rep.all_ok));
            return rep.all_ok ? 0 : 2;
        }

        if (c_huber->parsed()) {
            const auto rep =
                huber_indistinguishability_check(huber_eps, huber_n, SeedPolicy{huber_common.seed, 0, 0});
            nlohmann::json j;
            j["epsilon"] = rep.epsilon;
            j["n"] = rep.n;
            j["ks_two_sample"] = rep.ks_two_sample;
            j["ks_two_sample_critical"] = rep.ks_two_sample_critical;
            j["ks_one_sample_a"] = rep.ks_one_sample_a;
            j["ks_one_sample_b"] = rep.ks_one_sample_b;
            j["ks_one_sample_critical"] = rep.ks_one_sample_critical;
            j["projection_gap"] = rep.projection_gap;
            j["mc_error"] = rep.mc_error;
            j["ks_ok"] = rep.ks_ok;
            j["gap_ok"] = rep.gap_ok;
            atomic_write_file(huber_common.out + "/huber.json", j.dump(2) + "\n");
            nlohmann::json opts;
            opts["epsilon"] = format_double(huber_eps);
            opts["n"] = std::to_string(huber_n);
            opts["seed"] = std::to_string(huber_common.seed);
            write_manifest(huber_common.out, "huber-check", opts, 1);
            std::printf("ks_ok=%d gap_ok=%d\n", static_cast<int>(rep.ks_ok),
                        static_cast<int>(rep.gap_ok));
            return rep.ks_ok && rep.gap_ok ? 0 : 2;
        }

        if (c_erm->parsed()) {
            const auto ds = load_dataset(erm_data);
            auto data = DiscreteMeasure::empirical(ds.points);
            ErmProblem prob = erm_family == "affine-1d"
                                  ? affine_1d_problem(std::move(data), erm_metric.resolve())
                                  : erm_family == "constant"
                                        ? constant_problem(ds.dim(), std::move(data),
                                                           erm_metric.resolve())
                                        : throw std::invalid_argument("unknown family '" +
                                                                      erm_family + "'");
            prob.m = erm_m;
            prob.max_evals = erm_evals;
            prob.restarts = erm_restarts;
            Stream stream = make_stream(erm_common.seed, 0, purpose_tag("erm-fit"));
            const ErmSolution sol = fit(prob, stream);
            nlohmann::json j;
            j["family"] = erm_family;
            j["metric"] = erm_metric.name;
            j["theta"] = sol.theta;
            j["value"] = sol.value;
            j["evaluations"] = sol.evaluations;
            j["winner_restart"] = sol.winner_restart;
            j["budget_exhausted"] = sol.budget_exhausted;
            atomic_write_file(erm_common.out + "/erm.json", j.dump(2) + "\n");
            nlohmann::json opts = erm_metric.options();
            opts["data"] = erm_data;
            opts["family"] = erm_family;
            opts["m"] = std::to_string(erm_m);
            opts["max-evals"] = std::to_string(erm_evals);
            opts["restarts"] = std::to_string(erm_restarts);
            opts["seed"] = std::to_string(erm_common.seed);
            write_manifest(erm_common.out, "erm-fit", opts, 1);
            std::string theta_str;
            for (const double t : sol.theta) theta_str += (theta_str.empty() ? "" : ",") + format_double(t);
            std::printf("theta=%s value=%s\n", theta_str.c_str(), format_double(sol.value).c_str());
            return 0;
        }

        if (c_smooth->parsed()) {
            const auto b = composition_constant(smooth_D, smooth_d, smooth_alpha);
            std::string csv = "D,d,alpha,value,exact\n";
            csv += std::to_string(b.D) + "," + std::to_string(b.d) + "," + std::to_string(b.alpha) +
                   "," + format_double(b.value) + "," + b.exact + "\n";
            std::fputs(csv.c_str(), stdout);
            if (!smooth_common.out.empty()) {
                atomic_write_file(smooth_common.out + "/constants.csv", csv);
                nlohmann::json opts;
                opts["D"] = std::to_string(smooth_D);
                opts["d"] = std::to_string(smooth_d);
                opts["alpha"] = std::to_string(smooth_alpha);
                write_manifest(smooth_common.out, "smoothness-constant", opts, 1);
            }
            return 0;
        }

        if (c_synth->parsed()) {
            DataSpec spec{synth_gen.resolve(),          synth_sigma, synth_eps,
                          noise_model_from(synth_noise), OutlierPolicy::Corner,
                          std::nullopt,                  nullptr};
            if (synth_policy == "corner") {
                spec.outlier_policy = OutlierPolicy::Corner;
            } else if (synth_policy == "huber-mixture") {
                spec.outlier_policy = OutlierPolicy::HuberMixture;
                if (!synth_mix_json.empty())
                    spec.mixture_law = GeneratorSpec::parse_json(read_text_file(synth_mix_json));
                else
                    spec.mixture_law = Uniform1dLaw{synth_mix_lo, synth_mix_hi};
            } else {
                throw std::invalid_argument("unknown outlier policy '" + synth_policy + "'");
            }
            Stream stream = make_stream(synth_common.seed, 0, purpose_tag("synth"));
            const Dataset ds = synthesize(spec, synth_n, stream);
            DatasetMeta meta{synth_n, ds.dim(), synth_sigma, synth_eps, synth_common.seed};
            std::ostringstream csv;
            write_dataset_csv(ds, meta, csv);
            atomic_write_file(synth_common.out + "/data.csv", csv.str());
            nlohmann::json opts = synth_gen.options();
            opts["n"] = std::to_string(synth_n);
            opts["sigma"] = format_double(synth_sigma);
            opts["epsilon"] = format_double(synth_eps);
            opts["noise-model"] = synth_noise;
            opts["outlier-policy"] = synth_policy;
            opts["mixture-lo"] = format_double(synth_mix_lo);
            opts["mixture-hi"] = format_double(synth_mix_hi);
            if (!synth_mix_json.empty()) opts["mixture-json"] = synth_mix_json;
            opts["seed"] = std::to_string(synth_common.seed);
            write_manifest(synth_common.out, "synth", opts, 1);
            std::printf("n=%zu D=%zu inliers=%zu\n", ds.n(), ds.dim(), ds.inlier_count());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

}  // namespace genipm
