#include "recsets/verifier.hpp"

#include <sstream>
#include <stdexcept>

#include "recsets/geometry.hpp"

namespace recsets {

namespace {

constexpr std::size_t kMaxProblems = 8;

// Empty string when p is a valid point of PG(k-1, q).
std::string universe_problem(const FiniteField& f, unsigned k, const FqVector& p) {
  if (p.size() != k) return "point has length " + std::to_string(p.size()) + ", expected " + std::to_string(k);
  for (auto c : p)
    if (c >= f.q()) return "coordinate " + std::to_string(c) + " is not an element of F_" + std::to_string(f.q());
  if (is_zero(p)) return "zero vector is not a point";
  return {};
}

}  // namespace

bool verify_recovery_set(const FiniteField& f, unsigned k, const Subspace& target,
                         const std::vector<FqVector>& points) {
  for (const auto& p : points) {
    auto why = universe_problem(f, k, p);
    if (!why.empty()) throw std::invalid_argument(why);
  }
  return span_contains(f, points, target);
}

Certificate verify_family(const RecoveryFamily& family) {
  const auto& f = family.field;
  Certificate c;
  c.q = f.q();
  c.k = family.k;
  c.d = family.d;
  c.family_size = family.sets.size();
  c.method = family.method;
  c.disjoint_ok = true;
  c.spanning_ok = true;
  c.universe_ok = true;
  auto note = [&](std::string s) {
    if (c.problems.size() < kMaxProblems) c.problems.push_back(std::move(s));
  };

  if (family.target.ambient_dim() != family.k || family.target.dim() != family.d) {
    c.universe_ok = false;
    note("target is not a d-subspace of F_q^k");
  }

  PointCodec codec(f, family.k);
  c.points_total = codec.size();
  // owner[i] = 1 + index of the set holding point i, 0 if unused.
  std::vector<std::uint32_t> owner(codec.size(), 0);

  for (std::size_t si = 0; si < family.sets.size(); ++si) {
    const auto& pts = family.sets[si].points;
    ++c.size_histogram[pts.size()];
    bool set_universe_ok = true;
    for (const auto& p : pts) {
      auto why = universe_problem(f, family.k, p);
      if (!why.empty()) {
        c.universe_ok = false;
        set_universe_ok = false;
        note("set " + std::to_string(si) + ": " + why);
        continue;
      }
      const auto idx = codec.index(p);
      if (owner[idx] != 0) {
        c.disjoint_ok = false;
        std::ostringstream os;
        os << "set " << si << " shares point #" << idx << " with set " << (owner[idx] - 1);
        note(os.str());
      } else {
        owner[idx] = static_cast<std::uint32_t>(si + 1);
        ++c.points_used;
      }
    }
    if (!set_universe_ok || family.target.ambient_dim() != family.k) {
      c.spanning_ok = false;
      continue;
    }
    if (!span_contains(f, pts, family.target)) {
      c.spanning_ok = false;
      note("set " + std::to_string(si) + " does not span the target");
    }
  }
  return c;
}

}  // namespace recsets
