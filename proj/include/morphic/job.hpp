#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphic/complex_rational.hpp"
#include "morphic/csv.hpp"
#include "morphic/gallery.hpp"
#include "morphic/polynomial.hpp"

namespace morphic {

struct MorphismSpec {
    std::string kind = "power";  // power | chebyshev | chebyshev-monic | explicit
    unsigned degree = 2;
    Polynomial coeffs;           // explicit maps only

    Polynomial polynomial() const;
    std::optional<GalleryKind> gallery() const;
    friend bool operator==(const MorphismSpec&, const MorphismSpec&) = default;
};

struct PlaceSpec {
    std::uint64_t prime = 0;  // 0 is the archimedean place

    bool is_archimedean() const { return prime == 0; }
    std::string label() const;  // "inf" or the prime
    friend bool operator==(const PlaceSpec&, const PlaceSpec&) = default;
};

struct JobConfig {
    MorphismSpec morphism;
    PlaceSpec place;
    ComplexRational point;
    std::vector<unsigned> depths{2, 4, 6, 8};
    unsigned precision_bits = 128;
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
    unsigned sample_depth = 40;
    std::string output;

    friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Throws InputError on malformed or inconsistent configurations.
JobConfig parse_job_config(std::string_view json_text);
JobConfig load_job_config(const std::string& path);
std::string serialize_job_config(const JobConfig& cfg);

struct ResultRow {
    std::string method;
    std::string place;
    unsigned n = 1;
    double value = 0.0;
    double error_hint = 0.0;
    std::string value_exact;  // "num/den" in valuation units at finite places
};

struct ResultTable {
    std::vector<ResultRow> rows;
    CsvTable to_csv() const;
};

/// Every method applicable at the configured place. Writes the CSV when
/// cfg.output is set.
ResultTable run_height_job(const JobConfig& cfg);

/// Periodic-point sums only. Archimedean columns: n,value,error_hint,excluded;
/// finite places: p,q,n,v_p(f_n(q)),value_rational,value_real.
CsvTable run_periodic_sum_job(const JobConfig& cfg);

/// Columns n,method,value,error_hint,reference,abs_error, where the reference is
/// the closed form when one exists and the iterate value otherwise.
CsvTable run_convergence_job(const JobConfig& cfg);

}  // namespace morphic
