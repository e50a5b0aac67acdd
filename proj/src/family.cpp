#include "recsets/family.hpp"

#include <numeric>
#include <stdexcept>

namespace recsets {

Subspace default_target(const FiniteField& f, unsigned k, unsigned d) {
  if (d > k) throw std::invalid_argument("target dimension exceeds ambient dimension");
  std::vector<std::size_t> axes(d);
  std::iota(axes.begin(), axes.end(), std::size_t{k - d});
  return Subspace::coordinate(f, k, axes);
}

RecoveryFamily transport(const RecoveryFamily& family, const Subspace& target) {
  const auto& f = family.field;
  const unsigned k = family.k;
  const unsigned d = family.d;
  if (target.ambient_dim() != k || target.dim() != d)
    throw std::invalid_argument("transport target must be a d-subspace of F_q^k");
  if (!(family.target == default_target(f, k, d)))
    throw std::invalid_argument("transport expects a family built for the default target");

  // Rows k-d.. of the change of basis are a basis of the new target; the
  // first k-d rows complete it with unit vectors.
  Matrix basis = target.basis();
  Matrix complement;
  for (unsigned i = 0; i < k && complement.size() + d < k; ++i) {
    FqVector e(k, 0);
    e[i] = 1;
    Matrix trial = basis;
    trial.insert(trial.end(), complement.begin(), complement.end());
    trial.push_back(e);
    if (rank(f, trial) == trial.size()) complement.push_back(std::move(e));
  }
  Matrix change = complement;
  change.insert(change.end(), basis.begin(), basis.end());

  RecoveryFamily out(f, k, d, target);
  out.method = family.method;
  out.formula_lower = family.formula_lower;
  out.notes = family.notes;
  out.sets.reserve(family.sets.size());
  for (const auto& s : family.sets) {
    RecoverySet t;
    for (const auto& p : s.points) t.points.push_back(canonical(f, row_times(f, p, change)));
    out.sets.push_back(std::move(t));
  }
  return out;
}

}  // namespace recsets
