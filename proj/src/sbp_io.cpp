#include "rbfsbp/sbp_io.hpp"

#include <cstdlib>
#include <fstream>

#include <fmt/core.h>

#include "rbfsbp/errors.hpp"

namespace rbfsbp {

using nlohmann::json;

json kernel_to_json(const Kernel& kernel) {
  switch (kernel.family()) {
    case KernelFamily::Gaussian:
      return {{"family", "gaussian"}, {"epsilon", kernel.epsilon()}};
    case KernelFamily::Multiquadric:
      return {{"family", "multiquadric"}, {"epsilon", kernel.epsilon()}};
    case KernelFamily::PhsOdd:
      return {{"family", "phs_odd"}, {"k", kernel.k()}};
    case KernelFamily::PhsEven:
      return {{"family", "phs_even"}, {"k", kernel.k()}};
  }
  return {};
}

Kernel kernel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ConfigError("kernel: expected an object with a \"family\" field");
  }
  const std::string family = j.at("family").get<std::string>();
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw ConfigError("kernel " + family + ": missing \"" + key + "\"");
    return j.at(key);
  };
  try {
    if (family == "gaussian") return Kernel::gaussian(need("epsilon").get<double>());
    if (family == "multiquadric") return Kernel::multiquadric(need("epsilon").get<double>());
    if (family == "phs_odd") return Kernel::phs_odd(need("k").get<int>());
    if (family == "phs_even") return Kernel::phs_even(need("k").get<int>());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
  throw ConfigError("kernel: unknown family \"" + family + "\"");
}

namespace {

std::string kind_name(OperatorKind kind) {
  return kind == OperatorKind::Sbp ? "rbfsbp" : "collocation (not SBP, unstable)";
}

double parse_exact(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ConfigError("operator: bad weight \"" + s + "\"");
  return v;
}

}  // namespace

json operator_to_json(const SbpOperator& op) {
  json weights = json::array();
  for (Eigen::Index i = 0; i < op.weights.size(); ++i) {
    weights.push_back(fmt::format("{:.17g}", op.weights(i)));
  }
  json Q = json::array();
  for (Eigen::Index i = 0; i < op.Q.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < op.Q.cols(); ++j) row.push_back(op.Q(i, j));
    Q.push_back(std::move(row));
  }
  const Interval& I = op.grid.interval();
  return {
      {"grid", op.grid.values()},
      {"interval", {I.left, I.right}},
      {"grid_family", to_string(op.grid.family())},
      {"weights", std::move(weights)},
      {"Q", std::move(Q)},
      {"metadata",
       {{"kind", kind_name(op.kind)},
        {"kernel", kernel_to_json(op.space.kernel)},
        {"centers", op.space.centers},
        {"poly_degree", op.space.poly_degree},
        {"domain", {op.space.domain.left, op.space.domain.right}}}},
  };
}

SbpOperator operator_from_json(const json& j) {
  try {
    SbpOperator op;
    const auto iv = j.at("interval").get<std::vector<double>>();
    if (iv.size() != 2) throw ConfigError("operator: interval must have two entries");
    op.grid = PointSet::from_points(j.at("grid").get<std::vector<double>>(), {iv[0], iv[1]},
                                    point_family_from_string(j.at("grid_family").get<std::string>()));
    const auto n = static_cast<Eigen::Index>(op.grid.size());
    const auto& w = j.at("weights");
    const auto& Q = j.at("Q");
    if (static_cast<Eigen::Index>(w.size()) != n || static_cast<Eigen::Index>(Q.size()) != n) {
      throw ConfigError("operator: weights/Q size does not match the grid");
    }
    op.weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) op.weights(i) = parse_exact(w[i].get<std::string>());
    op.Q.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(Q[i].size()) != n) throw ConfigError("operator: Q not square");
      for (Eigen::Index k = 0; k < n; ++k) op.Q(i, k) = Q[i][k].get<double>();
    }
    op.D = op.weights.cwiseInverse().asDiagonal() * op.Q;

    const auto& meta = j.at("metadata");
    op.kind = meta.at("kind").get<std::string>() == "rbfsbp" ? OperatorKind::Sbp
                                                              : OperatorKind::Collocation;
    op.space.kernel = kernel_from_json(meta.at("kernel"));
    op.space.centers = meta.at("centers").get<std::vector<double>>();
    op.space.poly_degree = meta.at("poly_degree").get<int>();
    const auto dom = meta.at("domain").get<std::vector<double>>();
    if (dom.size() != 2) throw ConfigError("operator: domain must have two entries");
    op.space.domain = {dom[0], dom[1]};
    return op;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("operator: malformed document: ") + e.what());
  }
}

void save_operator(const SbpOperator& op, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << operator_to_json(op).dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

SbpOperator load_operator(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return operator_from_json(j);
}

}  // namespace rbfsbp
