#pragma once

#include <Eigen/Dense>

namespace kursync {

using Real = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntMatrix = Eigen::MatrixXi;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

// Comparisons that gate a certificate are strict with a small slack so that
// borderline instances are treated as infeasible rather than certified.
inline constexpr Real kStrictSlack = 1e-12;

inline bool strictly_less(Real a, Real b) { return a < b - kStrictSlack; }

}  // namespace kursync
