#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace recsets {

using Rational = boost::multiprecision::cpp_rational;

/// max sum(x) s.t. A x <= rhs, x >= 0 integer. Coefficients are integers.
struct IlpModel {
  unsigned k = 0;
  std::vector<std::string> names;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> rhs;
};

/// The seven-type model for binary 2-subspaces: variables X1, X2, X3, Y3,
/// Y22, Y4, Y5 and right-hand sides 3, 2^k - 4, 2^k - 4.
IlpModel build_ilp_d2(unsigned k);

enum class IlpStatus { Optimal, Unbounded, Infeasible };

const char* to_string(IlpStatus s);

struct IlpResult {
  IlpStatus status = IlpStatus::Infeasible;
  std::int64_t optimum = 0;
  /// Lexicographically smallest optimal assignment in variable order.
  std::vector<std::int64_t> assignment;
  /// Value of the LP relaxation at the root.
  Rational lp_bound;
  /// Dual vertex attaining lp_bound.
  std::vector<Rational> lp_dual;
  std::uint64_t nodes = 0;
};

/// Exact branch and bound. The LP relaxation of every subproblem is solved
/// by enumerating the vertices of its dual polyhedron.
IlpResult solve_ilp(const IlpModel& m);

struct DualCheck {
  bool feasible = false;
  Rational objective;
  /// Indices of violated dual constraints (one per primal variable), or of
  /// negative components reported as names.size() + i.
  std::vector<std::size_t> violated;
};

/// Checks A^T z >= 1, z >= 0 exactly and returns rhs . z.
DualCheck check_dual(const IlpModel& m, const std::vector<Rational>& z);
DualCheck check_dual(const std::vector<Rational>& z, unsigned k);

/// CPLEX LP format listing, one constraint per line with integer coefficients.
std::string export_model(const IlpModel& m);

}  // namespace recsets
