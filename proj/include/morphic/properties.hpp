#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace morphic {

struct PropertyOptions {
    std::size_t cases = 200;
    std::uint64_t seed = 1;
};

struct PropertyResult {
    std::string module;
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    double seconds = 0.0;

    bool passed() const { return cases > 0 && failures == 0; }
};

/// Randomized checks of the module invariants. Every property draws its
/// inputs from its own generator seeded by (options.seed, property name).
std::vector<PropertyResult> polynomial_properties(const PropertyOptions& options = {});
std::vector<PropertyResult> rootfinder_properties(const PropertyOptions& options = {});
std::vector<PropertyResult> archimedean_properties(const PropertyOptions& options = {});
std::vector<PropertyResult> padic_properties(const PropertyOptions& options = {});
std::vector<PropertyResult> dynatomic_properties(const PropertyOptions& options = {});
std::vector<PropertyResult> cli_properties(const PropertyOptions& options = {});

std::vector<PropertyResult> run_property_suites(const PropertyOptions& options = {});

}  // namespace morphic
