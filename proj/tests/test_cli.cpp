#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "morphic/csv.hpp"
#include "morphic/errors.hpp"
#include "morphic/job.hpp"
#include "support.hpp"

using namespace morphic;
using test::P;
using test::R;

namespace {

const ResultRow* find_row(const ResultTable& t, const std::string& method, unsigned n) {
    for (const auto& r : t.rows) {
        if (r.method == method && r.n == n) return &r;
    }
    return nullptr;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("job config parsing") {
    const JobConfig cfg = parse_job_config(R"({
        "morphism": {"kind": "chebyshev", "degree": 2},
        "place": {"kind": "prime", "p": 5},
        "point": "5/2",
        "depths": [1, 2, 3],
        "precision_bits": 256,
        "seed": 9
    })");
    CHECK(cfg.morphism.polynomial() == P({"-1", "0", "2"}));
    CHECK(cfg.place.prime == 5);
    CHECK(cfg.point.re == R("5/2"));
    CHECK(cfg.depths == std::vector<unsigned>{1, 2, 3});
    CHECK(cfg.precision_bits == 256);
    CHECK(cfg.seed == 9);

    const JobConfig expl = parse_job_config(R"({"morphism": {"kind": "explicit", "coeffs": ["1", "0", "1"]},
        "place": "archimedean", "point": {"re": "1", "im": "1"}})");
    CHECK(expl.morphism.polynomial() == P({"1", "0", "1"}));
    CHECK(expl.place.is_archimedean());
    CHECK(expl.point.im == 1);
}

TEST_CASE("invalid configs") {
    CHECK_THROWS_AS(parse_job_config("{"), InputError);
    CHECK_THROWS_AS(parse_job_config(R"({"morphism": {"kind": "power"}, "place": {"kind": "prime", "p": 4},
        "point": "1"})"),
                    InputError);
    CHECK_THROWS_AS(parse_job_config(R"({"morphism": {"kind": "explicit", "coeffs": ["1", "1"]}, "point": "1"})"),
                    InputError);
    CHECK_THROWS_AS(parse_job_config(R"({"morphism": {"kind": "power"}, "point": "1", "colour": 3})"), InputError);
    CHECK_THROWS_AS(parse_job_config(R"({"morphism": {"kind": "power"}, "place": {"kind": "prime", "p": 3},
        "point": {"re": "1", "im": "1"}})"),
                    InputError);
    CHECK_THROWS_AS(load_job_config("/nonexistent/job.json"), InputError);
}

TEST_CASE("config round trip") {
    JobConfig cfg;
    cfg.morphism.kind = "explicit";
    cfg.morphism.coeffs = P({"1/3", "-2", "0", "5"});
    cfg.morphism.degree = 3;
    cfg.place.prime = 7;
    cfg.point = ComplexRational(R("-4/9"));
    cfg.depths = {1, 5};
    cfg.seed = 42;
    cfg.output = "out.csv";
    CHECK(parse_job_config(serialize_job_config(cfg)) == cfg);
}

TEST_CASE("power-map job converges to log 3") {
    JobConfig cfg;
    cfg.point = ComplexRational(R("3"));
    cfg.depths = {2, 4, 6, 8};
    cfg.samples = 2000;
    const ResultTable t = run_height_job(cfg);
    const double target = std::log(3.0);
    double previous = 1.0;
    for (unsigned n : cfg.depths) {
        const ResultRow* r = find_row(t, "periodic_sum", n);
        REQUIRE(r != nullptr);
        const double gap = std::fabs(r->value - target);
        CHECK((gap < previous || gap < 1e-14));
        previous = gap;
    }
    CHECK(previous < 1e-8);
    REQUIRE(find_row(t, "closed_form", 1) != nullptr);
    CHECK(find_row(t, "closed_form", 1)->value == doctest::Approx(target));
}

TEST_CASE("Chebyshev job") {
    JobConfig cfg;
    cfg.morphism.kind = "chebyshev";
    cfg.point = ComplexRational(R("2"));
    cfg.depths = {8};
    cfg.samples = 0;
    const ResultTable t = run_height_job(cfg);
    const ResultRow* cf = find_row(t, "closed_form", 1);
    REQUIRE(cf != nullptr);
    CHECK(cf->value == doctest::Approx(1.3169578969248167));
    CHECK(std::fabs(find_row(t, "periodic_sum", 8)->value - cf->value) <= 5e-2);
}

TEST_CASE("monic Chebyshev job at p = 2") {
    JobConfig cfg;
    cfg.morphism.kind = "chebyshev-monic";
    cfg.place.prime = 2;
    cfg.point = ComplexRational(R("1"));
    cfg.depths = {1, 2, 3, 4};
    const ResultTable t = run_height_job(cfg);
    CHECK(find_row(t, "closed_form", 1)->value_exact == "0/1");
    for (unsigned n : cfg.depths) {
        CHECK(find_row(t, "iterate", n)->value == 0.0);
        // T_2 at 1/2: d^-n max(0, -v_2(T_2^(n)(1/2))) = 2^-n.
        CHECK(find_row(t, "conjugate", n)->value_exact == format_rational(Rational(1) / Rational(1u << n)));
    }
}

TEST_CASE("periodic-sum and convergence tables") {
    JobConfig cfg;
    cfg.morphism.kind = "explicit";
    cfg.morphism.coeffs = P({"1", "0", "1"});
    cfg.place.prime = 5;
    cfg.point = ComplexRational(R("2"));
    cfg.depths = {1, 2, 3};
    const CsvTable t = run_periodic_sum_job(cfg);
    CHECK(t.header() == std::vector<std::string>{"p", "q", "n", "v_p(f_n(q))", "value_rational", "value_real"});
    REQUIRE(t.rows().size() == 3);
    CHECK(t.rows()[2][3] == "2");
    CHECK(t.rows()[2][4] == "-1/4");

    JobConfig arch;
    arch.point = ComplexRational(R("3"));
    arch.depths = {2, 4};
    arch.samples = 0;
    const CsvTable c = run_convergence_job(arch);
    CHECK(c.header().front() == "n");
    CHECK(c.rows().size() == 4);
}

TEST_CASE("CSV output is deterministic and quoted") {
    JobConfig cfg;
    cfg.morphism.kind = "chebyshev";
    cfg.point = ComplexRational(R("3/2"));
    cfg.depths = {2, 3};
    cfg.samples = 500;
    cfg.seed = 5;
    const std::string a = run_height_job(cfg).to_csv().str();
    const std::string b = run_height_job(cfg).to_csv().str();
    CHECK(a == b);

    cfg.output = "job_output_test.csv";
    run_height_job(cfg);
    CHECK(slurp(cfg.output) == a);
    std::remove(cfg.output.c_str());

    CsvTable t({"a", "b"});
    t.add_row({"1,2", "say \"hi\""});
    CHECK(t.str() == "a,b\n\"1,2\",\"say \"\"hi\"\"\"\n");
    CHECK(format_double(0.1) == "0.1");
}
