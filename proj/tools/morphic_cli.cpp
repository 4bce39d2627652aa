#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morphic/dynatomic.hpp"
#include "morphic/errors.hpp"
#include "morphic/fp_polynomial.hpp"
#include "morphic/job.hpp"
#include "morphic/newton_polygon.hpp"
#include "morphic/padic.hpp"
#include "morphic/prime_power.hpp"
#include "morphic/rootfinder.hpp"
#include "morphic/verify.hpp"

using namespace morphic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct JobFlags {
    std::string config;
    std::string out;
    std::string map = "power";
    unsigned degree = 2;
    std::string poly;
    std::uint64_t prime = 0;
    std::string point = "3";
    std::string point_im = "0";
    std::vector<unsigned> depths;
    std::uint64_t seed = 1;
    unsigned precision_bits = 128;
    std::size_t samples = 10000;
    unsigned sample_depth = 40;
};

struct JobOptions {
    CLI::Option* map = nullptr;
    CLI::Option* degree = nullptr;
    CLI::Option* poly = nullptr;
    CLI::Option* prime = nullptr;
    CLI::Option* point = nullptr;
    CLI::Option* point_im = nullptr;
    CLI::Option* depths = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* precision = nullptr;
    CLI::Option* samples = nullptr;
    CLI::Option* sample_depth = nullptr;
};

JobOptions add_job_flags(CLI::App* cmd, JobFlags& flags) {
    JobOptions o;
    cmd->add_option("--config", flags.config, "JSON job configuration; other flags override its fields");
    cmd->add_option("--out", flags.out, "CSV output path (stdout when omitted)");
    o.map = cmd->add_option("--map", flags.map, "power, chebyshev, chebyshev-monic or explicit");
    o.degree = cmd->add_option("--degree", flags.degree, "degree of a gallery map");
    o.poly = cmd->add_option("--poly", flags.poly, "explicit map as a JSON array of coefficients, constant term first");
    o.prime = cmd->add_option("--prime", flags.prime, "place: a prime p, or 0 for the archimedean place");
    o.point = cmd->add_option("--point", flags.point, "rational point q (real part)");
    o.point_im = cmd->add_option("--point-im", flags.point_im, "imaginary part of q");
    o.depths = cmd->add_option("--depth", flags.depths, "depths n, comma separated")->delimiter(',');
    o.seed = cmd->add_option("--seed", flags.seed, "seed for the measure sample");
    o.precision = cmd->add_option("--precision-bits", flags.precision_bits, "working precision of the root finder");
    o.samples = cmd->add_option("--samples", flags.samples, "backward-iteration sample size (0 disables)");
    o.sample_depth = cmd->add_option("--sample-depth", flags.sample_depth, "backward-iteration depth");
    return o;
}

JobConfig resolve_job(const JobFlags& flags, const JobOptions& o) {
    JobConfig cfg;
    if (!flags.config.empty()) cfg = load_job_config(flags.config);
    if (o.poly->count()) {
        cfg.morphism.kind = "explicit";
        cfg.morphism.coeffs = parse_polynomial_json(flags.poly);
        cfg.morphism.degree = static_cast<unsigned>(std::max(0, cfg.morphism.coeffs.degree()));
    } else if (o.map->count() || o.degree->count()) {
        if (o.map->count()) cfg.morphism.kind = flags.map;
        if (cfg.morphism.kind == "explicit") throw InputError("--map explicit needs --poly");
        if (o.degree->count()) cfg.morphism.degree = flags.degree;
    }
    if (o.prime->count()) cfg.place.prime = flags.prime;
    if (o.point->count() || o.point_im->count()) {
        const Rational re = o.point->count() ? parse_rational(flags.point) : cfg.point.re;
        const Rational im = o.point_im->count() ? parse_rational(flags.point_im) : cfg.point.im;
        cfg.point = ComplexRational(re, im);
    } else if (flags.config.empty()) {
        cfg.point = ComplexRational(parse_rational(flags.point), parse_rational(flags.point_im));
    }
    if (o.depths->count()) cfg.depths = flags.depths;
    if (o.seed->count()) cfg.seed = flags.seed;
    if (o.precision->count()) cfg.precision_bits = flags.precision_bits;
    if (o.samples->count()) cfg.samples = flags.samples;
    if (o.sample_depth->count()) cfg.sample_depth = flags.sample_depth;
    if (!flags.out.empty()) cfg.output = flags.out;
    return parse_job_config(serialize_job_config(cfg));
}

void emit(const CsvTable& table, const std::string& out) { table.write(out); }

std::string reduction_text(const Polynomial& f, std::uint64_t p) { return reduce_mod_p(f, p).to_string(); }

std::uint64_t require_prime(std::uint64_t p) {
    if (p < 2 || !is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    return p;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

CsvTable newton_polygon_table(const Polynomial& f, std::uint64_t p) {
    const NewtonPolygon np = newton_polygon(f, p);
    CsvTable t({"segment", "slope", "length", "abs_value"});
    unsigned i = 0;
    for (const auto& s : np.segments) {
        t.add_row({std::to_string(++i), format_rational(s.slope), std::to_string(s.length),
                   std::to_string(p) + "^" + format_rational_short(s.slope)});
    }
    return t;
}

CsvTable small_points_table(const Polynomial& f, std::uint64_t p, const Rational& zeta, unsigned period, unsigned k_max) {
    CsvTable t({"k", "min_slope", "vertices", "segments"});
    for (const auto& rec : small_periodic_valuations(f, p, zeta, period, k_max)) {
        std::string vertices;
        for (const auto& v : rec.polygon.vertices) {
            if (!vertices.empty()) vertices += ' ';
            vertices += "(" + std::to_string(v.index) + "," + std::to_string(v.valuation) + ")";
        }
        std::string segments;
        for (const auto& s : rec.polygon.segments) {
            if (!segments.empty()) segments += ' ';
            segments += format_rational(s.slope) + "x" + std::to_string(s.length);
        }
        t.add_row({std::to_string(rec.k), format_rational(rec.min_slope), vertices, segments});
    }
    return t;
}

CsvTable dynatomic_table(const std::vector<DynatomicRecord>& records) {
    CsvTable t({"field", "point", "n", "a_n", "a_star_n", "least_period", "multiplier", "multiplier_order",
                "predicted_essential"});
    for (const auto& r : records) {
        t.add_row({r.field, r.point, std::to_string(r.n), std::to_string(r.a_n), std::to_string(r.a_star_n),
                   r.least_period ? std::to_string(*r.least_period) : "", r.multiplier,
                   r.multiplier_order ? std::to_string(*r.multiplier_order) : "", bool_text(r.predicted_essential)});
    }
    return t;
}

int run(int argc, char** argv) {
    CLI::App app{"Local heights of polynomial maps from periodic points"};
    app.require_subcommand(1);

    JobFlags height_flags;
    auto* height = app.add_subcommand("height", "every applicable height method at one place");
    const JobOptions height_opts = add_job_flags(height, height_flags);

    JobFlags sum_flags;
    auto* sum = app.add_subcommand("periodic-sum", "periodic-point sums for each depth");
    const JobOptions sum_opts = add_job_flags(sum, sum_flags);

    JobFlags conv_flags;
    auto* conv = app.add_subcommand("convergence", "method values against the best available reference");
    const JobOptions conv_opts = add_job_flags(conv, conv_flags);

    std::string np_poly;
    std::uint64_t np_prime = 0;
    std::string np_zeta;
    unsigned np_period = 1;
    unsigned np_k_max = 6;
    std::string np_out;
    auto* np = app.add_subcommand("newton-polygon", "Newton polygon of a polynomial, or small periodic points near zeta");
    np->add_option("--poly", np_poly, "JSON coefficient array, constant term first")->required();
    np->add_option("--prime", np_prime, "prime p")->required();
    auto* np_zeta_opt = np->add_option("--zeta", np_zeta, "repelling periodic point to recentre at");
    np->add_option("--period", np_period, "least period of zeta");
    np->add_option("--k-max", np_k_max, "largest k for the polygons of f^(k)");
    np->add_option("--out", np_out, "CSV output path");

    std::string dy_poly;
    std::string dy_field = "Q";
    std::string dy_point = "0";
    unsigned dy_n_max = 6;
    std::string dy_out;
    auto* dy = app.add_subcommand("dynatomic", "multiplicities a_n and a_n* of a point");
    dy->add_option("--poly", dy_poly, "JSON coefficient array, constant term first")->required();
    dy->add_option("--field", dy_field, "Q, or a prime p for F_p");
    dy->add_option("--point", dy_point, "the point xi");
    dy->add_option("--n-max", dy_n_max, "largest n");
    dy->add_option("--out", dy_out, "CSV output path");

    std::string gr_poly;
    std::uint64_t gr_prime = 0;
    std::vector<unsigned> gr_k;
    std::string gr_out;
    auto* gr = app.add_subcommand("good-reduction", "good-reduction test, with optional unit-product quotients");
    gr->add_option("--poly", gr_poly, "JSON coefficient array, constant term first")->required();
    gr->add_option("--prime", gr_prime, "prime p")->required();
    gr->add_option("--unit-product", gr_k, "k values for the quotient at 0 (needs f(0) = 0)")->delimiter(',');
    gr->add_option("--out", gr_out, "CSV output path");

    std::string scale = "quick";
    double tolerance_scale = 1.0;
    std::vector<unsigned> only;
    auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--scale", scale, "quick or full");
    verify->add_option("--tolerance-scale", tolerance_scale, "multiplies every numeric tolerance and runtime budget");
    verify->add_option("--criterion", only, "run only these criteria")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (height->parsed()) {
        JobConfig cfg = resolve_job(height_flags, height_opts);
        const std::string out = cfg.output;
        cfg.output.clear();
        emit(run_height_job(cfg).to_csv(), out);
    } else if (sum->parsed()) {
        const JobConfig cfg = resolve_job(sum_flags, sum_opts);
        emit(run_periodic_sum_job(cfg), cfg.output);
    } else if (conv->parsed()) {
        const JobConfig cfg = resolve_job(conv_flags, conv_opts);
        emit(run_convergence_job(cfg), cfg.output);
    } else if (np->parsed()) {
        const Polynomial f = parse_polynomial_json(np_poly);
        const std::uint64_t p = require_prime(np_prime);
        if (np_zeta_opt->count()) {
            emit(small_points_table(f, p, parse_rational(np_zeta), np_period, np_k_max), np_out);
        } else {
            emit(newton_polygon_table(f, p), np_out);
        }
    } else if (dy->parsed()) {
        const Polynomial f = parse_polynomial_json(dy_poly);
        if (dy_field == "Q" || dy_field == "q") {
            emit(dynatomic_table(dynatomic_records(f, parse_rational(dy_point), dy_n_max)), dy_out);
        } else {
            std::uint64_t p = 0;
            try {
                p = std::stoull(dy_field);
            } catch (const std::exception&) {
                throw InputError("--field must be Q or a prime, got '" + dy_field + "'");
            }
            require_prime(p);
            const Integer xi = reduce_mod(parse_rational(dy_point), Integer(static_cast<unsigned long>(p)));
            emit(dynatomic_table(dynatomic_records(reduce_mod_p(f, p), xi.get_ui(), dy_n_max)), dy_out);
        }
    } else if (gr->parsed()) {
        const Polynomial f = parse_polynomial_json(gr_poly);
        const std::uint64_t p = require_prime(gr_prime);
        const bool good = good_reduction(f, p);
        CsvTable t({"p", "good_reduction", "reduction", "k", "unit_product_constant", "unit_product_valuation"});
        if (gr_k.empty()) t.add_row({std::to_string(p), bool_text(good), good ? reduction_text(f, p) : "", "", "", ""});
        for (unsigned k : gr_k) {
            const UnitProductResult r = unit_product_check(f, p, k);
            t.add_row({std::to_string(p), bool_text(good), good ? reduction_text(f, p) : "", std::to_string(k),
                       format_rational(r.constant), r.valuation.to_string()});
        }
        emit(t, gr_out);
    } else if (verify->parsed()) {
        const VerifyScale s = parse_verify_scale(scale);
        VerifyReport report;
        if (only.empty()) {
            report = run_verify_suite(s, tolerance_scale);
        } else {
            for (unsigned id : only) report.criteria.push_back(run_criterion(id, s, tolerance_scale));
        }
        std::cout << report.str();
        return report.passed() ? kExitOk : kExitFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return kExitResource;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const BadReductionError& e) {
        std::cerr << "bad reduction: " << e.what() << '\n';
        return kExitInput;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kExitInput;
    } catch (const DegenerateInputError& e) {
        std::cerr << "degenerate input: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
