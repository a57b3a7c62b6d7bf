#include "moscal/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "moscal/adversary.hpp"
#include "moscal/core.hpp"
#include "moscal/json_io.hpp"
#include "moscal/quality.hpp"
#include "moscal/rng.hpp"
#include "moscal/scalarize.hpp"
#include "moscal/support.hpp"

namespace moscal {

namespace {

std::vector<std::size_t> parse_one_based(const std::string& csv, const char* what) {
    std::vector<std::size_t> out;
    if (csv.empty()) return out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        long long v = 0;
        try {
            v = std::stoll(tok);
        } catch (const std::exception&) {
            raise("SchemaViolation", std::string(what) + " must be a comma list of integers");
        }
        if (v < 1) raise("SchemaViolation", std::string(what) + " indices are 1-based");
        out.push_back(static_cast<std::size_t>(v) - 1);
    }
    return out;
}

std::vector<std::string> parse_id_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

// Flags shared by every subcommand that names a scalarizer family.
struct FamilyOptions {
    std::string family = "wsum";
    double q = 2.0;
    double rho = 1.0;
    double eps = 0.5;
    bool q_is_inf = false;
    double inner_min_q = 1.0;
    double inner_max_q = 1.0;
    std::string gamma;
    std::string post = "identity";

    void attach(CLI::App* cmd, bool with_eps = true) {
        cmd->add_option("--family", family,
                        "wsum|maxorder|qnorm|augtcheb|harmonic|normdiff|composite|custom")
            ->required();
        cmd->add_option("--q", q, "q for the q-norm family");
        cmd->add_flag("--q-inf", q_is_inf, "use the infinity norm");
        cmd->add_option("--rho", rho, "rho for the augmented Tchebycheff family");
        if (with_eps) cmd->add_option("--eps", eps, "epsilon for the composite family");
        cmd->add_option("--inner-min-q", inner_min_q, "q of the MIN-block norm (normdiff)");
        cmd->add_option("--inner-max-q", inner_max_q, "q of the MAX-block norm (normdiff)");
        cmd->add_option("--gamma", gamma, "1-based indices flipped before evaluation");
        cmd->add_option("--post", post, "identity|neg_reciprocal");
    }

    ScalarizerSpec build(std::size_t p) const {
        std::vector<double> w(p, 1.0);
        ScalarizerSpec spec = [&]() {
            if (family == "wsum") return ScalarizerSpec::weighted_sum(w);
            if (family == "maxorder") return ScalarizerSpec::weighted_max_ordering(w);
            if (family == "qnorm") {
                return ScalarizerSpec::weighted_q_norm(
                    q_is_inf ? std::numeric_limits<double>::infinity() : q, w);
            }
            if (family == "augtcheb") return ScalarizerSpec::augmented_tchebycheff(rho, w);
            if (family == "harmonic") return ScalarizerSpec::harmonic_mean(w);
            if (family == "normdiff") {
                return ScalarizerSpec::norm_difference(NormFamily::q_norm(inner_min_q),
                                                       NormFamily::q_norm(inner_max_q), w);
            }
            if (family == "composite") return ScalarizerSpec::composite_min_max(eps, w);
            if (family == "custom") return ScalarizerSpec::custom_expression(w);
            raise("SchemaViolation", "unknown family '" + family + "'");
        }();
        if (!gamma.empty()) spec = spec.with_gamma(GammaSet(parse_one_based(gamma, "gamma")));
        if (post == "neg_reciprocal") {
            spec = spec.with_post(PostCompose::NegReciprocal);
        } else if (post != "identity") {
            raise("SchemaViolation", "post must be identity or neg_reciprocal");
        }
        return spec;
    }
};

Decomposition decomposition_from(std::size_t p, const std::string& max_csv) {
    std::vector<std::size_t> max_idx = parse_one_based(max_csv, "max");
    std::vector<std::size_t> min_idx;
    for (std::size_t i = 0; i < p; ++i) {
        if (std::find(max_idx.begin(), max_idx.end(), i) == max_idx.end()) {
            min_idx.push_back(i);
        }
    }
    return Decomposition::from_index_sets(p, min_idx, max_idx);
}

std::vector<double> parse_point(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            raise("SchemaViolation", "point must be a comma list of numbers");
        }
    }
    if (out.empty()) raise("SchemaViolation", "point must not be empty");
    return out;
}

void print_certificate(const QualityCertificate& cert, bool as_json, std::ostream& out) {
    if (as_json) {
        out << certificate_to_json(cert).dump() << "\n";
    } else if (cert.unbounded) {
        out << "inf\n";
    } else {
        out << format_double(cert.value) << "\n";
    }
}

// Weighted sums on a deterministic grid, for `adversary finite --count N`.
std::vector<ScalarizerSpec> finite_scalarization(std::size_t p, std::size_t count) {
    if (count < 1) raise("EmptyScalarization", "count must be at least 1");
    std::size_t m = std::max<std::size_t>(p, 2);
    auto grid_count = [&](std::size_t mm) {
        return weight_grid(p, mm).vectors.size();
    };
    while (grid_count(m) < count) ++m;
    WeightGrid grid = weight_grid(p, m);
    std::vector<ScalarizerSpec> specs;
    for (std::size_t i = 0; i < count; ++i) {
        specs.push_back(ScalarizerSpec::weighted_sum(grid.vectors[i]));
    }
    return specs;
}

struct SweepRow {
    std::size_t trial;
    std::size_t p;
    std::string decomposition;
    std::string family;
    std::size_t grid_m;
    double min_alpha_value;
    double bound;
    std::uint64_t seed;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"scalarization approximation toolkit"};
    app.require_subcommand(1);
    std::string report_path;
    app.add_option("--report", report_path, "write a JSON run report to this file");

    // validate
    auto* validate = app.add_subcommand("validate", "parse an instance and check invariants");
    std::string validate_path;
    validate->add_option("instance", validate_path, "instance JSON file")->required();

    // pareto
    auto* pareto = app.add_subcommand("pareto", "print the nondominated ids");
    std::string pareto_path;
    pareto->add_option("instance", pareto_path)->required();

    // quality
    auto* quality = app.add_subcommand("quality", "minimal alpha for a subset of ids");
    std::string quality_path, quality_subset;
    bool quality_json = false;
    quality->add_option("instance", quality_path)->required();
    quality->add_option("--subset", quality_subset, "comma list of ids")->required();
    quality->add_flag("--json", quality_json, "print the full certificate");

    // supported
    auto* supported = app.add_subcommand("supported", "grid-supported ids");
    std::string supported_path;
    std::size_t supported_grid = 128;
    bool one_per_function = false;
    double supported_tie = kDefaultTieTol;
    FamilyOptions supported_family;
    supported->add_option("instance", supported_path)->required();
    supported_family.attach(supported);
    supported->add_option("--grid", supported_grid, "simplex grid resolution");
    supported->add_flag("--one-per-function", one_per_function,
                        "keep one optimum per grid weight");
    supported->add_option("--tie-tol", supported_tie, "relative tie tolerance");

    // bound
    auto* bound = app.add_subcommand("bound", "closed-form norm quality bound");
    FamilyOptions bound_family;
    std::size_t bound_p = 2;
    bool bound_json = false;
    bound_family.attach(bound);
    bound->add_option("-p,--objectives", bound_p, "number of objectives")->required();
    bound->add_flag("--json", bound_json);

    // levelsup
    auto* levelsup = app.add_subcommand("levelsup", "level-set ratio supremum");
    FamilyOptions level_family;
    std::string level_ybar, level_max_idx;
    bool level_sampled = false, level_json = false;
    std::size_t level_budget = 10000;
    double level_cap = 1e6;
    std::uint64_t level_seed = 0;
    level_family.attach(levelsup);
    levelsup->add_option("--ybar", level_ybar, "reference point, comma separated")->required();
    levelsup->add_flag("--sampled", level_sampled, "sample instead of the closed form");
    levelsup->add_option("--budget", level_budget, "ray budget");
    levelsup->add_option("--cap", level_cap, "unboundedness threshold");
    auto* level_seed_opt = levelsup->add_option("--seed", level_seed, "sampling seed");
    levelsup->add_option("--max", level_max_idx, "1-based maximized objectives (sampled mode)");
    levelsup->add_flag("--json", level_json);

    // beta
    auto* beta = app.add_subcommand("beta", "weighted-scalarization bound estimate");
    FamilyOptions beta_family;
    std::size_t beta_p = 2;
    std::string beta_max_idx;
    std::size_t beta_ray_budget = 2000, beta_ybar_budget = 50;
    double beta_cap = 1e6;
    std::uint64_t beta_seed = 0;
    bool beta_json = false;
    beta_family.attach(beta);
    beta->add_option("-p,--objectives", beta_p)->required();
    beta->add_option("--max", beta_max_idx, "1-based maximized objectives");
    beta->add_option("--ray-budget", beta_ray_budget);
    beta->add_option("--ybar-budget", beta_ybar_budget);
    beta->add_option("--cap", beta_cap);
    beta->add_option("--seed", beta_seed)->required();
    beta->add_flag("--json", beta_json);

    // adversary
    auto* adversary = app.add_subcommand("adversary", "emit a counterexample certificate");
    adversary->require_subcommand(1);
    auto* adv_finite = adversary->add_subcommand("finite", "finite-scalarization instance");
    std::size_t finite_count = 1, finite_p = 2;
    double finite_alpha = 2.0;
    std::string finite_max_idx, finite_out;
    adv_finite->add_option("--count", finite_count, "number of weighted sums")->required();
    adv_finite->add_option("-p,--objectives", finite_p)->required();
    adv_finite->add_option("--alpha", finite_alpha)->required();
    adv_finite->add_option("--max", finite_max_idx, "1-based maximized objectives");
    adv_finite->add_option("-o,--output", finite_out, "certificate file")->required();

    auto* adv_normmin = adversary->add_subcommand("normmin", "norm tightness instance");
    FamilyOptions normmin_family;
    std::size_t normmin_p = 2;
    double normmin_eps = 0.5;
    std::string normmin_out;
    normmin_family.attach(adv_normmin, /*with_eps=*/false);
    adv_normmin->add_option("-p,--objectives", normmin_p)->required();
    adv_normmin->add_option("--eps", normmin_eps)->required();
    adv_normmin->add_option("-o,--output", normmin_out)->required();

    auto* adv_mixed = adversary->add_subcommand("mixedmax", "mixed/max impossibility instance");
    std::size_t mixed_k = 1, mixed_p = 2;
    double mixed_alpha = 2.0, mixed_min_q = 1.0, mixed_max_q = 1.0;
    std::string mixed_out;
    adv_mixed->add_option("-k,--min-count", mixed_k, "number of minimized objectives")
        ->required();
    adv_mixed->add_option("-p,--objectives", mixed_p)->required();
    adv_mixed->add_option("--alpha", mixed_alpha)->required();
    adv_mixed->add_option("--inner-min-q", mixed_min_q);
    adv_mixed->add_option("--inner-max-q", mixed_max_q);
    adv_mixed->add_option("-o,--output", mixed_out)->required();

    // transform
    auto* transform = app.add_subcommand("transform", "flip an instance");
    std::string transform_path, transform_gamma, transform_out;
    transform->add_option("instance", transform_path)->required();
    transform->add_option("--gamma", transform_gamma, "1-based indices to flip")->required();
    transform->add_option("-o,--output", transform_out)->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "random-instance quality sweep");
    FamilyOptions sweep_family;
    std::size_t sweep_pmin = 2, sweep_pmax = 4, sweep_trials = 10, sweep_grid = 128;
    std::size_t sweep_points = 50;
    double sweep_lo = 0.1, sweep_hi = 10.0;
    std::string sweep_decomp = "min", sweep_out;
    std::uint64_t sweep_seed = 0;
    sweep_family.attach(sweep);
    sweep->add_option("--pmin", sweep_pmin);
    sweep->add_option("--pmax", sweep_pmax);
    sweep->add_option("--trials", sweep_trials)->required();
    sweep->add_option("--grid", sweep_grid);
    sweep->add_option("--points-max", sweep_points, "points per instance, at most");
    sweep->add_option("--lo", sweep_lo, "image box lower bound");
    sweep->add_option("--hi", sweep_hi, "image box upper bound");
    sweep->add_option("--decomp", sweep_decomp, "min|max");
    sweep->add_option("--seed", sweep_seed)->required();
    sweep->add_option("-o,--output", sweep_out, "results CSV")->required();

    // plotdata
    auto* plotdata = app.add_subcommand("plotdata", "numeric columns from a results CSV");
    std::string plot_in, plot_out;
    plotdata->add_option("results", plot_in, "results CSV file")->required();
    plotdata->add_option("-o,--output", plot_out)->required();

    std::vector<std::string> cli_args(args.rbegin(), args.rend());
    try {
        app.parse(cli_args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    std::ostringstream captured;
    std::vector<std::string> written_files;
    int code = 0;
    try {
        if (*validate) {
            Instance inst = instance_from_json(load_json_file(validate_path));
            captured << "ok: p=" << inst.p() << " points=" << inst.size() << "\n";
        } else if (*pareto) {
            Instance inst = instance_from_json(load_json_file(pareto_path));
            for (const std::string& id : nondominated_set(inst)) captured << id << "\n";
        } else if (*quality) {
            Instance inst = instance_from_json(load_json_file(quality_path));
            QualityCertificate cert = min_alpha(parse_id_list(quality_subset), inst);
            print_certificate(cert, quality_json, captured);
        } else if (*supported) {
            Instance inst = instance_from_json(load_json_file(supported_path));
            ScalarizerSpec spec = supported_family.build(inst.p());
            WeightGrid grid = weight_grid(inst.p(), supported_grid);
            for (const std::string& id :
                 supported_set(inst, spec, grid, supported_tie, one_per_function)) {
                captured << id << "\n";
            }
        } else if (*bound) {
            ScalarizerSpec spec = bound_family.build(bound_p);
            print_certificate(theoretical_bound(spec, bound_p), bound_json, captured);
        } else if (*levelsup) {
            std::vector<double> ybar = parse_point(level_ybar);
            ScalarizerSpec spec = level_family.build(ybar.size());
            QualityCertificate cert;
            if (level_sampled) {
                if (level_seed_opt->count() == 0) {
                    err << "usage error: --seed is required with --sampled\n";
                    return 2;
                }
                Decomposition pi = decomposition_from(ybar.size(), level_max_idx);
                cert = level_ratio_sup_sampled(spec, pi, PointImage(ybar), level_budget,
                                               level_cap, level_seed);
            } else {
                cert = level_ratio_sup(spec, PointImage(ybar));
            }
            print_certificate(cert, level_json, captured);
        } else if (*beta) {
            ScalarizerSpec spec = beta_family.build(beta_p);
            Decomposition pi = decomposition_from(beta_p, beta_max_idx);
            QualityCertificate cert = weighted_bound_estimate(spec, pi, beta_ray_budget,
                                                              beta_ybar_budget, beta_cap,
                                                              beta_seed);
            print_certificate(cert, beta_json, captured);
        } else if (*adversary) {
            AdversarialCertificate cert = [&]() {
                if (*adv_finite) {
                    Decomposition pi = decomposition_from(finite_p, finite_max_idx);
                    return adversarial_finite(finite_scalarization(finite_p, finite_count), pi,
                                              finite_alpha);
                }
                if (*adv_normmin) {
                    return adversarial_norm_min(normmin_family.build(normmin_p), normmin_p,
                                                normmin_eps);
                }
                return adversarial_mixed_max(NormFamily::q_norm(mixed_min_q),
                                             NormFamily::q_norm(mixed_max_q), mixed_k, mixed_p,
                                             mixed_alpha);
            }();
            const std::string& path =
                *adv_finite ? finite_out : (*adv_normmin ? normmin_out : mixed_out);
            save_json_file(path, adversarial_to_json(cert));
            written_files.push_back(path);
            captured << "ok: unserved=" << cert.unserved_id
                     << " quality=" << format_double(cert.supported_quality)
                     << " checks=" << cert.checks.size() << "\n";
        } else if (*transform) {
            Instance inst = instance_from_json(load_json_file(transform_path));
            GammaSet gamma(parse_one_based(transform_gamma, "gamma"));
            save_json_file(transform_out, instance_to_json(transform_instance(inst, gamma)));
            written_files.push_back(transform_out);
            captured << "ok: wrote " << transform_out << "\n";
        } else if (*sweep) {
            if (sweep_decomp != "min" && sweep_decomp != "max") {
                err << "usage error: --decomp must be min or max\n";
                return 2;
            }
            if (sweep_pmin < 1 || sweep_pmax < sweep_pmin) {
                err << "usage error: need 1 <= pmin <= pmax\n";
                return 2;
            }
            std::ofstream csv(sweep_out);
            if (!csv) raise("FileError", "could not open '" + sweep_out + "' for writing");
            csv << "trial,p,decomposition,family,grid_m,min_alpha,closed_form_bound,seed\n";
            Rng rng(sweep_seed);
            for (std::size_t trial = 1; trial <= sweep_trials; ++trial) {
                const std::size_t p =
                    sweep_pmin + (trial - 1) % (sweep_pmax - sweep_pmin + 1);
                const std::size_t n =
                    2 + rng.index(std::max<std::size_t>(sweep_points, 2) - 1);
                Decomposition pi = sweep_decomp == "min" ? Decomposition::all_min(p)
                                                         : Decomposition::all_max(p);
                Instance inst = random_instance(pi, n, sweep_lo, sweep_hi, rng);
                ScalarizerSpec family = sweep_family.build(p);
                ScalarizerSpec swept = sweep_decomp == "min"
                                           ? family
                                           : gamma_transform(family, GammaSet::all(p));
                WeightGrid grid = weight_grid(p, sweep_grid);
                const double quality =
                    min_alpha(supported_set(inst, swept, grid), inst).value;
                const double bound_value = theoretical_bound(family, p).value;
                csv << trial << "," << p << "," << sweep_decomp << ","
                    << sweep_family.family << "," << sweep_grid << ","
                    << format_double(quality) << "," << format_double(bound_value) << ","
                    << sweep_seed << "\n";
            }
            written_files.push_back(sweep_out);
            captured << "ok: wrote " << sweep_trials << " rows to " << sweep_out << "\n";
        } else if (*plotdata) {
            std::ifstream in(plot_in);
            if (!in) raise("FileError", "could not open '" + plot_in + "'");
            std::ofstream dat(plot_out);
            if (!dat) raise("FileError", "could not open '" + plot_out + "' for writing");
            dat << "# trial p grid_m min_alpha closed_form_bound\n";
            std::string line;
            bool header = true;
            while (std::getline(in, line)) {
                if (header) {
                    header = false;
                    continue;
                }
                if (line.empty()) continue;
                std::vector<std::string> cols;
                std::stringstream ss(line);
                std::string tok;
                while (std::getline(ss, tok, ',')) cols.push_back(tok);
                if (cols.size() < 7) raise("SchemaViolation", "results CSV has too few columns");
                dat << cols[0] << " " << cols[1] << " " << cols[4] << " " << cols[5] << " "
                    << cols[6] << "\n";
            }
            written_files.push_back(plot_out);
            captured << "ok: wrote " << plot_out << "\n";
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        code = 1;
    }

    out << captured.str();
    if (!report_path.empty() && code == 0) {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        nlohmann::json report;
        std::string cmdline = "moscal";
        for (const std::string& a : args) cmdline += " " + a;
        report["command"] = cmdline;
        report["inputs"] = args;
        report["outputs"] = {{"stdout", captured.str()}, {"files", written_files}};
        report["timing_seconds"] = seconds;
        save_json_file(report_path, report);
    }
    return code;
}

}  // namespace moscal
