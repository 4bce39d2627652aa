#include "morphic/job.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "morphic/archimedean.hpp"
#include "morphic/errors.hpp"
#include "morphic/padic.hpp"

namespace morphic {

using nlohmann::json;

Polynomial MorphismSpec::polynomial() const {
    if (kind == "explicit") return coeffs;
    return build_gallery(parse_gallery_kind(kind), degree);
}

std::optional<GalleryKind> MorphismSpec::gallery() const {
    if (kind == "explicit") return std::nullopt;
    return parse_gallery_kind(kind);
}

std::string PlaceSpec::label() const { return is_archimedean() ? "inf" : std::to_string(prime); }

namespace {

Rational rational_field(const json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    throw InputError(std::string(what) + " must be a rational string such as \"5/2\"");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!ok.count(key)) throw InputError(std::string("unknown key '") + key + "' in " + where);
    }
}

MorphismSpec parse_morphism(const json& j) {
    if (!j.is_object()) throw InputError("morphism must be an object");
    reject_unknown(j, {"kind", "degree", "coeffs"}, "morphism");
    MorphismSpec m;
    m.kind = j.at("kind").get<std::string>();
    if (m.kind == "explicit") {
        if (!j.contains("coeffs")) throw InputError("explicit morphism needs coeffs");
        m.coeffs = parse_polynomial_json(j.at("coeffs").dump());
        if (m.coeffs.degree() < 2) throw InputError("explicit morphism must have degree >= 2");
        if (j.contains("degree") && j.at("degree").get<int>() != m.coeffs.degree()) {
            throw InputError("morphism degree does not match coeffs");
        }
        m.degree = static_cast<unsigned>(m.coeffs.degree());
    } else {
        parse_gallery_kind(m.kind);
        if (j.contains("coeffs")) throw InputError("coeffs are only allowed for explicit morphisms");
        const int d = j.value("degree", 2);
        if (d < 2) throw InputError("morphism degree must be >= 2");
        m.degree = static_cast<unsigned>(d);
    }
    return m;
}

PlaceSpec parse_place(const json& j) {
    PlaceSpec place;
    std::string kind;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else if (j.is_object()) {
        reject_unknown(j, {"kind", "p"}, "place");
        kind = j.at("kind").get<std::string>();
        if (kind == "prime") {
            const auto p = j.at("p").get<std::int64_t>();
            if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError(std::to_string(p) + " is not prime");
            place.prime = static_cast<std::uint64_t>(p);
            return place;
        }
    } else {
        throw InputError("place must be an object or \"archimedean\"");
    }
    if (kind != "archimedean" && kind != "inf") throw InputError("unknown place kind '" + kind + "'");
    return place;
}

ComplexRational parse_point(const json& j) {
    if (j.is_object()) {
        reject_unknown(j, {"re", "im"}, "point");
        return {rational_field(j.at("re"), "point.re"), j.contains("im") ? rational_field(j.at("im"), "point.im") : Rational(0)};
    }
    return {rational_field(j, "point"), 0};
}

json point_json(const ComplexRational& q) {
    if (q.is_real()) return format_rational(q.re);
    return json{{"re", format_rational(q.re)}, {"im", format_rational(q.im)}};
}

ResultRow make_row(const std::string& method, const PlaceSpec& place, unsigned n, double value, double err,
                   std::string exact = {}) {
    return {method, place.label(), n, value, err, std::move(exact)};
}

ResultRow padic_row(const std::string& method, const PlaceSpec& place, const PadicHeightResult& r) {
    return make_row(method, place, r.depth_n, r.value, 0.0, format_rational(r.value_in_valuation_units));
}

Rational require_real(const ComplexRational& q) {
    if (!q.is_real()) throw InputError("finite places need a rational point");
    return q.re;
}

unsigned max_depth(const JobConfig& cfg) {
    unsigned n = 0;
    for (unsigned k : cfg.depths) n = std::max(n, k);
    return n;
}

}  // namespace

JobConfig parse_job_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed config JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config must be a JSON object");
    try {
        reject_unknown(j, {"morphism", "place", "point", "depths", "precision_bits", "seed", "samples", "sample_depth",
                           "output"},
                       "config");
        JobConfig cfg;
        cfg.morphism = parse_morphism(j.at("morphism"));
        cfg.place = j.contains("place") ? parse_place(j.at("place")) : PlaceSpec{};
        cfg.point = parse_point(j.at("point"));
        if (!cfg.place.is_archimedean()) require_real(cfg.point);
        if (j.contains("depths")) {
            cfg.depths.clear();
            for (const auto& v : j.at("depths")) {
                const int n = v.get<int>();
                if (n < 1) throw InputError("depths must be positive");
                cfg.depths.push_back(static_cast<unsigned>(n));
            }
        }
        const int prec = j.value("precision_bits", 128);
        if (prec < 32 || prec > 4096) throw InputError("precision_bits must lie in [32, 4096]");
        cfg.precision_bits = static_cast<unsigned>(prec);
        cfg.seed = j.value("seed", std::uint64_t{1});
        const auto samples = j.value("samples", std::int64_t{10000});
        if (samples < 0) throw InputError("samples must be nonnegative");
        cfg.samples = static_cast<std::size_t>(samples);
        const int sd = j.value("sample_depth", 40);
        if (sd < 1) throw InputError("sample_depth must be positive");
        cfg.sample_depth = static_cast<unsigned>(sd);
        cfg.output = j.value("output", std::string{});
        return cfg;
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid config: ") + e.what());
    }
}

JobConfig load_job_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_job_config(buf.str());
}

std::string serialize_job_config(const JobConfig& cfg) {
    json m{{"kind", cfg.morphism.kind}, {"degree", cfg.morphism.degree}};
    if (cfg.morphism.kind == "explicit") m["coeffs"] = json::parse(format_polynomial_json(cfg.morphism.coeffs));
    json place = cfg.place.is_archimedean() ? json{{"kind", "archimedean"}} : json{{"kind", "prime"}, {"p", cfg.place.prime}};
    json j{{"morphism", m},
           {"place", place},
           {"point", point_json(cfg.point)},
           {"depths", cfg.depths},
           {"precision_bits", cfg.precision_bits},
           {"seed", cfg.seed},
           {"samples", cfg.samples},
           {"sample_depth", cfg.sample_depth}};
    if (!cfg.output.empty()) j["output"] = cfg.output;
    return j.dump(2);
}

CsvTable ResultTable::to_csv() const {
    CsvTable t({"method", "place", "n", "value", "error_hint", "value_exact"});
    for (const auto& r : rows) {
        t.add_row({r.method, r.place, std::to_string(r.n), format_double(r.value), format_double(r.error_hint),
                   r.value_exact});
    }
    return t;
}

ResultTable run_height_job(const JobConfig& cfg) {
    const Polynomial f = cfg.morphism.polynomial();
    const auto gallery = cfg.morphism.gallery();
    const unsigned d = static_cast<unsigned>(f.degree());
    ResultTable table;
    auto& rows = table.rows;

    if (cfg.place.is_archimedean()) {
        const std::complex<double> q = cfg.point.to_complex();
        const HeightEstimate it = height_iterate(f, q);
        rows.push_back(make_row("iterate", cfg.place, it.depth_n, it.value, it.error_hint));
        for (unsigned n : cfg.depths) {
            const HeightEstimate ps = height_periodic_sum(f, cfg.point, n, cfg.precision_bits);
            rows.push_back(make_row("periodic_sum", cfg.place, n, ps.value, ps.error_hint));
        }
        if (cfg.samples > 0) {
            const MeasureSample s = sample_maximal_measure(f, cfg.sample_depth, cfg.samples, cfg.seed);
            const HeightEstimate bi = height_backward_integral(f, q, s);
            rows.push_back(make_row("backward_integral", cfg.place, bi.depth_n, bi.value, bi.error_hint));
        }
        if (gallery) {
            HeightEstimate cf;
            switch (*gallery) {
                case GalleryKind::power: cf = power_map_height(d, q); break;
                case GalleryKind::chebyshev: cf = chebyshev_closed_form(d, q); break;
                case GalleryKind::chebyshev_monic: cf = chebyshev_closed_form(d, q / 2.0); break;
            }
            rows.push_back(make_row("closed_form", cfg.place, 1, cf.value, 0.0));
        }
    } else {
        const std::uint64_t p = cfg.place.prime;
        const Rational q = require_real(cfg.point);
        if (good_reduction(f, p)) {
            rows.push_back(padic_row("closed_form", cfg.place, local_height_padic(f, p, q)));
            const auto series = periodic_sum_padic_series(f, p, q, max_depth(cfg));
            for (unsigned n : cfg.depths) rows.push_back(padic_row("periodic_sum", cfg.place, series[n - 1]));
        }
        for (unsigned n : cfg.depths) rows.push_back(padic_row("iterate", cfg.place, padic_iterate_height(f, p, q, n)));
        if (gallery == GalleryKind::chebyshev) {
            // T_d at q matches its monic conjugate 2 T_d(x/2) at 2q.
            const Polynomial g = build_gallery(GalleryKind::chebyshev_monic, d);
            auto r = local_height_padic(g, p, 2 * q);
            rows.push_back(padic_row("conjugate", cfg.place, r));
        } else if (gallery == GalleryKind::chebyshev_monic) {
            const Polynomial t = chebyshev_polynomial(d);
            for (unsigned n : cfg.depths) {
                rows.push_back(padic_row("conjugate", cfg.place, padic_iterate_height(t, p, q / 2, n)));
            }
        }
    }
    if (!cfg.output.empty()) table.to_csv().write(cfg.output);
    return table;
}

CsvTable run_periodic_sum_job(const JobConfig& cfg) {
    const Polynomial f = cfg.morphism.polynomial();
    if (cfg.place.is_archimedean()) {
        CsvTable t({"n", "value", "error_hint", "excluded"});
        for (unsigned n : cfg.depths) {
            const HeightEstimate ps = height_periodic_sum(f, cfg.point, n, cfg.precision_bits);
            t.add_row({std::to_string(n), format_double(ps.value), format_double(ps.error_hint),
                       std::to_string(ps.excluded)});
        }
        return t;
    }
    const std::uint64_t p = cfg.place.prime;
    const Rational q = require_real(cfg.point);
    const auto series = periodic_sum_padic_series(f, p, q, max_depth(cfg));
    CsvTable t({"p", "q", "n", "v_p(f_n(q))", "value_rational", "value_real"});
    for (unsigned n : cfg.depths) {
        const auto& r = series[n - 1];
        t.add_row({std::to_string(p), format_rational(q), std::to_string(n), r.fn_valuation.get_str(),
                   format_rational(r.value_in_valuation_units), format_double(r.value)});
    }
    return t;
}

CsvTable run_convergence_job(const JobConfig& cfg) {
    JobConfig quiet = cfg;
    quiet.output.clear();
    const ResultTable table = run_height_job(quiet);
    const ResultRow* reference = nullptr;
    for (const char* method : {"closed_form", "conjugate", "iterate"}) {
        for (const auto& r : table.rows) {
            if (r.method == method && (!reference || r.method != reference->method || r.n > reference->n)) reference = &r;
        }
        if (reference) break;
    }
    CsvTable t({"n", "method", "value", "error_hint", "reference", "abs_error"});
    for (const auto& r : table.rows) {
        const double ref = reference ? reference->value : std::nan("");
        t.add_row({std::to_string(r.n), r.method, format_double(r.value), format_double(r.error_hint),
                   format_double(ref), format_double(std::fabs(r.value - ref))});
    }
    return t;
}

}  // namespace morphic
