#pragma once

#include "nonlocal/kernels.hpp"
#include "nonlocal/propagators.hpp"
#include "nonlocal/symbols.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace nonlocal {

constexpr const char* library_version = "1.0.0";

namespace cli {

//! Malformed command-line value (exit code 2).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

//! "stable:1.5[:gamma]", "salpeter:m[:c]", "gaussian:D", "cauchy[:c]".
MultiplierSymbol parse_symbol(const std::string& spec);
//! "heat:D", "stable:mu[:gamma]", "cauchy[:c]", "relativistic:m[:c]".
KernelFamily parse_kernel_family(const std::string& spec, int dim);
//! "gaussian", "oscillator", "cauchy[:c]", "salpeter:m[:c]".
PropagatorFamily parse_propagator_family(const std::string& spec, int dim);
//! "0,1,2.5" -> {0, 1, 2.5}.
std::vector<double> parse_list(const std::string& s);

//! Entry point: 0 success, 1 domain error, 2 usage error.
int run(int argc, const char* const* argv);

} // namespace cli
} // namespace nonlocal
