#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "llrss/asymptotics.hpp"

namespace llrss::verify {

enum class Grid { small, full };

struct GridOptions {
    Grid grid = Grid::small;
    double tol = 1e-6;
    asym::SignVariant variant{};
};

/// Worst agreement between one closed form and its quadrature over a grid.
struct FormulaReport {
    std::string name;
    double max_rel_err = 0.0;
    std::string worst_config;
    std::size_t checks = 0;
    bool pass = true;
};

/// Which sign of an ambiguous term the oracle supports: "minus", "plus",
/// "both" or "neither", with the worst relative error under each choice.
struct SignFinding {
    std::string term;
    std::string validated;
    double err_minus = 0.0;
    double err_plus = 0.0;
};

struct GridReport {
    std::vector<FormulaReport> formulas;
    std::vector<SignFinding> signs;
    std::size_t configurations = 0;
    double seconds = 0.0;
    bool pass = true;
};

/// Compares integral_term, j_alpha, xi_alpha, j_beta, xi_beta and j_cross to
/// the quadrature oracle. The relative error denominator is floored at a
/// fraction (1e-3) of the integrand's L1 mass so values that vanish by
/// cancellation are judged on an absolute scale.
GridReport run_grid(const GridOptions& opt);

/// max_err is relative for identities with a non-zero target, absolute otherwise.
struct IdentityCheck {
    std::string name;
    double max_err = 0.0;
    bool pass = true;
};

/// tau = 0 identities that hold exactly in closed form.
std::vector<IdentityCheck> run_identities(double tol = 1e-10);

}  // namespace llrss::verify
