#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "rbfsbp/kernels.hpp"
#include "rbfsbp/sbp.hpp"

namespace rbfsbp {

/// {"family":"phs_odd","k":2} / {"family":"gaussian","epsilon":1.0}
nlohmann::json kernel_to_json(const Kernel& kernel);
Kernel kernel_from_json(const nlohmann::json& j);

/// Operator document:
///   {"grid": [...], "interval": [xL, xR], "grid_family": "...",
///    "weights": ["%.17g", ...], "Q": [[row 0], ...],
///    "metadata": {"kind", "kernel", "centers", "poly_degree", "domain"}}
/// D is not stored; the loader recomputes it from Q and the weights the same
/// way build_sbp does, so a round trip is bit-exact.
nlohmann::json operator_to_json(const SbpOperator& op);
SbpOperator operator_from_json(const nlohmann::json& j);

void save_operator(const SbpOperator& op, const std::filesystem::path& path);
SbpOperator load_operator(const std::filesystem::path& path);

}  // namespace rbfsbp
