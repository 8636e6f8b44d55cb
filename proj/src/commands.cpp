#include "ri/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "ri/partition.hpp"
#include "ri/random_sets.hpp"
#include "ri/resolution.hpp"
#include "ri/shapley.hpp"
#include "ri/verify.hpp"

namespace ri {

namespace {

Json number_json(const Rational& r, bool exact) {
    if (exact)
        return Json(r.str());
    return Json(r.to_double());
}

struct GridSpec {
    double x1min = 0.01, x1max = 100.0;
    double x2min = 0.01, x2max = 100.0;
    int points = 64;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (text.empty())
        return g;
    double a, b, c, d;
    int p;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf,%d", &a, &b, &c, &d, &p) != 5)
        throw std::invalid_argument(
            "grid must be 'x1min,x1max,x2min,x2max,points'");
    if (!(a > 0.0 && c > 0.0) || !(b > a && d > c) || p < 2)
        throw std::invalid_argument(
            "grid needs 0 < min < max on both axes and at least 2 points");
    g = {a, b, c, d, p};
    return g;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
    std::vector<double> xs(points);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int k = 0; k < points; ++k)
        xs[k] = std::pow(10.0, llo + (lhi - llo) * k / (points - 1));
    return xs;
}

void write_f_grid_csv(const std::string& path, const OperatorRep& rep,
                      const GridSpec& grid) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + path);
    char line[256];
    std::snprintf(line, sizeof line,
                  "# geometric grid: x1 in [%g, %g], x2 in [%g, %g], %d points per axis\n",
                  grid.x1min, grid.x1max, grid.x2min, grid.x2max, grid.points);
    out << line;
    out << "x1,x2,re(F),im(F)\n";
    const auto xs1 = geometric_grid(grid.x1min, grid.x1max, grid.points);
    const auto xs2 = geometric_grid(grid.x2min, grid.x2max, grid.points);
    for (double x1 : xs1)
        for (double x2 : xs2) {
            const Complex v = rep.f(x1, x2);
            std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n", x1, x2,
                          v.real(), v.imag());
            out << line;
        }
}

void write_marginal_csv(const std::string& path, const OperatorRep& rep,
                        const GridSpec& grid) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + path);
    char line[128];
    out << "alpha,value\n";
    for (double alpha : geometric_grid(grid.x1min, grid.x1max, grid.points)) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", alpha,
                      rep.marginal(alpha));
        out << line;
    }
}

std::string marginal_path(const std::string& grid_path) {
    const auto dot = grid_path.rfind('.');
    if (dot == std::string::npos || grid_path.find('/', dot) != std::string::npos)
        return grid_path + "_marginal.csv";
    return grid_path.substr(0, dot) + "_marginal" + grid_path.substr(dot);
}

} // namespace

int cmd_shapley(const InputDocument& doc, const CommandOptions&,
                std::ostream& out) {
    if (!doc.family)
        throw std::invalid_argument("shapley needs a 'family' section");
    const SetFamily& family = *doc.family;
    const int n = family.n();
    const bool exact = doc.exact_mode();

    Json report;
    report["command"] = "shapley";
    report["mode"] = exact ? "exact" : "double";
    report["n"] = n;

    const auto& mu = family.cardinality_table();
    const auto overlaps = mobius_transform(mu);

    std::optional<RandomSetDistribution<Rational>> dist;
    if (doc.probabilities)
        dist = RandomSetDistribution<Rational>::build(*doc.probabilities);

    // Per-subset rows up to 2^16 entries; larger ground sets get the scalar
    // summary only.
    if (n <= 16) {
        Json table = Json::array();
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            const IndexSet a(m);
            Json row;
            row["mask"] = m;
            row["subset"] = subset_to_json(a);
            row["mu"] = mu[a];
            row["mobius"] = overlaps[a];
            if (dist) {
                row["p"] = number_json(dist->subset_probability()[a], exact);
                row["P"] = number_json(dist->superset_probability()[a], exact);
                row["P_not"] = number_json(dist->avoidance_probability()[a], exact);
            }
            table.push_back(std::move(row));
        }
        report["table"] = std::move(table);
    } else {
        report["table_omitted"] =
            "per-subset table suppressed for ground sets larger than 16";
    }

    const auto rep = increment_totals(family);
    Json shap = Json::array(), betas = Json::array(), rr = Json::array();
    for (const auto& v : rep.shapley)
        shap.push_back(number_json(v, exact));
    for (const auto& v : rep.beta)
        betas.push_back(number_json(v, exact));
    for (const auto& v : rep.increment_means)
        rr.push_back(number_json(v, exact));
    report["shapley"] = std::move(shap);
    report["beta"] = std::move(betas);
    report["increment_means"] = std::move(rr);
    report["lambda"] = rep.lambda;
    report["level_sums"] = rep.level_sums;

    if (dist) {
        report["average_index_cardinality"] =
            number_json(dist->average_index_cardinality(), exact);
        report["average_union_cardinality"] =
            number_json(dist->average_union_cardinality(family), exact);
    }

    out << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_resolution(const InputDocument& doc, const CommandOptions& opts,
                   std::ostream& out) {
    if (!doc.projectors)
        throw std::invalid_argument(
            "resolution needs a 'prebasis' or 'projectors' section");
    const ProjectorFamily& family = *doc.projectors;
    const int d = family.dimension();

    Json report;
    report["command"] = "resolution";
    report["dimension"] = d;
    report["n"] = family.count();
    report["source"] = family.source() == ProjectorFamily::Source::Computed
                           ? "computed"
                           : "explicit";
    if (doc.prebasis) {
        report["warnings"] = doc.prebasis->warnings();
        Json degenerate = Json::array();
        for (const auto& g : doc.prebasis->degenerate_subsets()) {
            Json e;
            e["subset"] = subset_to_json(g.subset);
            e["smallest_singular_value"] = g.smallest_singular_value;
            degenerate.push_back(std::move(e));
        }
        report["degenerate_subsets"] = std::move(degenerate);
    }

    const auto ops = dressed_operators(family);
    Json sigmas = Json::array();
    for (const auto& s : ops.densities)
        sigmas.push_back(matrix_to_json(s));
    report["sigma"] = std::move(sigmas);
    report["sigma_route_residual"] = ops.route_residual;
    // Frobenius size of each signed subset sum, indexed by mask; zero beyond
    // the singletons exactly when the directions are orthonormal.
    {
        Json norms = Json::array();
        for (std::uint32_t m = 0; m < (1u << family.count()); ++m)
            norms.push_back(ops.mobius[IndexSet(m)].frobenius_norm());
        report["mobius_norm"] = std::move(norms);
    }

    std::optional<ResolutionKernel> kernel;
    try {
        kernel = ResolutionKernel::build(ops);
    } catch (const std::exception& e) {
        report["kernel_error"] = e.what();
    }

    if (kernel) {
        Json rs = Json::array();
        for (const auto& r : kernel->increment_means())
            rs.push_back(matrix_to_json(r));
        report["increment_means"] = std::move(rs);
        report["identity_residual"] = kernel->identity_residual().frobenius_norm();

        Json tsamples = Json::array();
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            Json e;
            e["t"] = t;
            e["matrix"] = matrix_to_json(kernel->diagonal_resolution(t));
            e["trace"] = kernel->diagonal_resolution(t).trace().real();
            e["trace_formula"] = kernel->diagonal_trace(t);
            tsamples.push_back(std::move(e));
        }
        report["diagonal_resolution_samples"] = std::move(tsamples);

        Json xsamples = Json::array();
        for (double x : {0.0, 0.5, 1.0, 2.0, 10.0}) {
            Json e;
            e["x"] = x;
            e["matrix"] = matrix_to_json(kernel->semiaxis_kernel(x));
            xsamples.push_back(std::move(e));
        }
        report["semiaxis_kernel_samples"] = std::move(xsamples);

        Json residuals;
        residuals["diagonal_exact_beta"] =
            kernel->identity_residual().frobenius_norm();
        residuals["semiaxis_quadrature"] =
            (kernel->semiaxis_integral() - Matrix::identity(d)).frobenius_norm();
        if (doc.curve)
            residuals["curve_quadrature"] =
                (curve_resolution_integral(family, *doc.curve) -
                 Matrix::identity(d))
                    .frobenius_norm();
        report["resolution_integral_residuals"] = std::move(residuals);

        if (doc.rho) {
            const auto rep = OperatorRep::for_density(*kernel, *doc.rho);
            Json fj;
            Json coeff = Json::array();
            for (int a = 0; a < d; ++a) {
                Json row = Json::array();
                for (int b = 0; b < d; ++b) {
                    const Complex c =
                        rep.coefficients()(a, b) /
                        (kernel->betas()[a].to_double() *
                         kernel->betas()[b].to_double());
                    row.push_back(Json::array({c.real(), c.imag()}));
                }
                coeff.push_back(std::move(row));
            }
            fj["numerator_coefficients"] = std::move(coeff);
            const int max_order = kernel->count() - kernel->dimension();
            if (max_order >= 1) {
                fj["moment_x1"] = Json::array(
                    {rep.moment(1, 0).real(), rep.moment(1, 0).imag()});
                fj["moment_x2"] = Json::array(
                    {rep.moment(0, 1).real(), rep.moment(0, 1).imag()});
            }
            fj["marginal_at_1"] = rep.marginal(1.0);
            report["f_function"] = std::move(fj);

            if (!opts.out.empty()) {
                const GridSpec grid = parse_grid(opts.grid);
                write_f_grid_csv(opts.out, rep, grid);
                write_marginal_csv(marginal_path(opts.out), rep, grid);
                report["f_grid_csv"] = opts.out;
                report["marginal_csv"] = marginal_path(opts.out);
            }
        }
    }

    out << report.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const InputDocument& doc, const CommandOptions&,
               std::ostream& out) {
    const auto checks = run_verification(doc);
    if (checks.empty())
        throw std::invalid_argument(
            "nothing to verify: the document has no applicable sections");
    Json report;
    report["command"] = "verify";
    report["checks"] = checks_to_json(checks);
    report["passed"] = all_passed(checks);
    out << report.dump(2) << "\n";
    return all_passed(checks) ? kExitOk : kExitVerificationFailure;
}

int cmd_montecarlo(const InputDocument& doc, const CommandOptions& opts,
                   std::ostream& out) {
    if (opts.samples < 1)
        throw std::invalid_argument("sample count must be at least 1");
    if (!doc.probabilities)
        throw std::invalid_argument("montecarlo needs a 'probabilities' section");

    Json report;
    report["command"] = "montecarlo";
    report["seed"] = opts.seed;
    report["samples"] = opts.samples;
    report["rng"] = Xoshiro256::kName;

    const auto pd = doc.probabilities_double();

    {
        auto dist = RandomSetDistribution<double>::build(pd);
        const SetFamily* family = doc.family ? &*doc.family : nullptr;
        const auto summary = sample_random_sets(dist, family, opts.seed, opts.samples);

        Json sets;
        sets["mean_index_cardinality"] = summary.mean_index_cardinality;
        sets["se_index_cardinality"] = summary.se_index_cardinality;
        sets["analytic_index_cardinality"] = dist.average_index_cardinality();
        sets["index_frequency"] = summary.index_frequency;
        Json freq = Json::array();
        for (const auto& [mask, count] : summary.subset_counts) {
            Json e;
            e["mask"] = mask;
            e["subset"] = subset_to_json(IndexSet(mask));
            e["count"] = count;
            freq.push_back(std::move(e));
        }
        sets["subset_counts"] = std::move(freq);
        if (family) {
            sets["mean_union_cardinality"] = summary.mean_union_cardinality;
            sets["se_union_cardinality"] = summary.se_union_cardinality;
            sets["analytic_union_cardinality"] =
                dist.average_union_cardinality(*family);
            const double se = summary.se_union_cardinality;
            const double gap = std::abs(summary.mean_union_cardinality -
                                        dist.average_union_cardinality(*family));
            sets["union_sigma_distance"] = se > 0.0 ? gap / se : (gap > 0 ? 1e300 : 0.0);
        }
        report["sets"] = std::move(sets);
    }

    if (doc.projectors) {
        const auto summary =
            sample_random_projector(*doc.projectors, pd, opts.seed, opts.samples);
        const Matrix analytic = random_projector_average(*doc.projectors, pd);
        Json proj;
        proj["mean"] = matrix_to_json(summary.mean);
        proj["standard_error"] = matrix_to_json(summary.standard_error);
        proj["analytic"] = matrix_to_json(analytic);
        double worst_sigma = 0.0;
        for (int r = 0; r < analytic.rows(); ++r)
            for (int c = 0; c < analytic.cols(); ++c) {
                const double gre = std::abs(summary.mean(r, c).real() -
                                            analytic(r, c).real());
                const double gim = std::abs(summary.mean(r, c).imag() -
                                            analytic(r, c).imag());
                const double sre = summary.standard_error(r, c).real();
                const double sim = summary.standard_error(r, c).imag();
                worst_sigma = std::max(
                    worst_sigma, sre > 0 ? gre / sre : (gre > 0 ? 1e300 : 0.0));
                worst_sigma = std::max(
                    worst_sigma, sim > 0 ? gim / sim : (gim > 0 ? 1e300 : 0.0));
            }
        proj["max_sigma_distance"] = worst_sigma;
        report["projectors"] = std::move(proj);
    }

    out << report.dump(2) << "\n";
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Continuous resolutions of the identity from random sets and "
                 "random projectors"};
    app.require_subcommand(1);

    std::string input_path;
    std::string mode_text;
    CommandOptions opts;

    app.add_option("-i,--input", input_path, "Input JSON document")
        ->required();
    app.add_option("--mode", mode_text, "Numeric mode: exact or double")
        ->check(CLI::IsMember({"exact", "double"}));
    app.add_option("--seed", opts.seed, "RNG seed");
    app.add_option("--samples", opts.samples, "Monte Carlo sample count");
    app.add_option("--grid", opts.grid,
                   "Grid 'x1min,x1max,x2min,x2max,points' (geometric spacing)");
    app.add_option("--out", opts.out, "CSV output path for grids");
    app.add_flag("--strict-prebasis", opts.strict_prebasis,
                 "Reject pre-bases with dependent d-subsets");

    auto* shapley = app.add_subcommand("shapley", "Union-cardinality shares and level increments");
    auto* resolution = app.add_subcommand("resolution", "Projector family, kernel and resolutions");
    auto* verify = app.add_subcommand("verify", "Run every applicable invariant check");
    auto* montecarlo = app.add_subcommand("montecarlo", "Empirical sampling vs analytic values");
    for (auto* sub : {shapley, resolution, verify, montecarlo})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, msg, msg);
        err << msg.str();
        return code == 0 ? kExitOk : kExitValidationError;
    }

    try {
        if (!mode_text.empty())
            opts.mode = mode_text == "exact" ? NumericMode::Exact
                                             : NumericMode::Double;
        const InputDocument doc =
            InputDocument::parse_file(input_path, opts.mode, opts.strict_prebasis);
        if (shapley->parsed())
            return cmd_shapley(doc, opts, out);
        if (resolution->parsed())
            return cmd_resolution(doc, opts, out);
        if (verify->parsed())
            return cmd_verify(doc, opts, out);
        if (montecarlo->parsed())
            return cmd_montecarlo(doc, opts, out);
        err << "error: no subcommand selected\n";
        return kExitValidationError;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidationError;
    }
}

} // namespace ri
