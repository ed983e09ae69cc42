#pragma once

#include <string>
#include <vector>

#include "core/fn.hpp"
#include "core/hardy.hpp"

namespace hypsob {

// Operator description used by the CLI / C API and by the suites.
// Exponents alpha, beta in [0, n); T(m)/S(m) derive k and beta from m.
struct OperatorSpec {
  enum class Kind { P, Q, R, H, T, S, IterR, IterH, Compose };
  Kind kind = Kind::P;
  int n = 3;
  double alpha = 0.0;
  double beta = 0.0;
  int j = 0;
  int m = 1;
  std::vector<OperatorSpec> children; // Compose: applied right-to-left

  static OperatorSpec op_P(int n);
  static OperatorSpec op_Q(int n);
  static OperatorSpec op_R(double alpha, int n);
  static OperatorSpec op_H(double alpha, int n);
  static OperatorSpec op_T(int m, int n);
  static OperatorSpec op_S(int m, int n);
  static OperatorSpec iter_R(double beta, double alpha, int j, int n);
  static OperatorSpec iter_H(double alpha, int j, double beta, int n);
  static OperatorSpec compose(std::vector<OperatorSpec> children);

  std::string describe() const;
};

// Applies the operator.  Step/PwExpr inputs stay in the exact closed-form
// family; PowerLog/Grid inputs go through the sampled numeric path.
Fn apply_operator(const OperatorSpec& op, const Fn& f);

// Numeric primitives on the default grid (exposed for the verify suites).
GridFunction numeric_R(double alpha, const Fn& f, const Dimension& dim);
GridFunction numeric_H(double alpha, const Fn& f, const Dimension& dim);
GridFunction numeric_S(int m, const Fn& f, const Dimension& dim);

} // namespace hypsob
