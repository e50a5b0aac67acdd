#include "recsets/ilp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace recsets {

const char* to_string(IlpStatus s) {
  switch (s) {
    case IlpStatus::Optimal:
      return "optimal";
    case IlpStatus::Unbounded:
      return "unbounded";
    default:
      return "infeasible";
  }
}

IlpModel build_ilp_d2(unsigned k) {
  if (k < 2) throw std::invalid_argument("the d = 2 model needs k >= 2");
  if (k > 40) throw std::invalid_argument("the d = 2 model is limited to k <= 40");
  IlpModel m;
  m.k = k;
  m.names = {"X1", "X2", "X3", "Y3", "Y22", "Y4", "Y5"};
  const std::int64_t cap = (std::int64_t{1} << k) - 4;
  m.rows = {{2, 1, 1, 0, 0, 0, 0}, {0, 2, 3, 3, 4, 4, 5}, {0, 2, 0, 4, 4, 2, 0}};
  m.rhs = {3, cap, cap};
  return m;
}

namespace {

using Int = __int128;

// A nonnegative rational num/den with den > 0.
struct Frac {
  Int num;
  Int den;
  bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
  Int floor() const { return num / den; }
};

// Dual vertex as integer numerators over a common positive denominator.
struct Vertex {
  std::vector<Int> num;
  Int den;
  std::vector<Rational> exact;
};

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

Int to_int(const boost::multiprecision::cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("dual vertex coefficient exceeds 64 bits");
  return static_cast<Int>(static_cast<std::int64_t>(v));
}

// Vertices of {z >= 0 : sum_r a[r][j] z_r >= 1 for j in cols}. Empty when
// the polyhedron is empty, i.e. the primal over `cols` is unbounded.
std::vector<Vertex> dual_vertices(const IlpModel& m, const std::vector<std::size_t>& cols) {
  const std::size_t nr = m.rows.size();
  // Constraint list: first the column constraints, then z_r >= 0.
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  for (auto j : cols) {
    std::vector<Rational> row(nr);
    for (std::size_t r = 0; r < nr; ++r) row[r] = m.rows[r][j];
    lhs.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  for (std::size_t r = 0; r < nr; ++r) {
    std::vector<Rational> row(nr, Rational(0));
    row[r] = 1;
    lhs.push_back(std::move(row));
    rhs.emplace_back(0);
  }
  std::vector<Vertex> out;
  std::vector<std::vector<Rational>> seen;
  std::vector<std::size_t> pick(nr);
  const std::size_t total = lhs.size();
  // Enumerate all nr-subsets of constraints as tight.
  std::vector<bool> mask(total, false);
  std::fill(mask.end() - static_cast<std::ptrdiff_t>(nr), mask.end(), true);
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < total; ++i)
      if (mask[i]) {
        a.push_back(lhs[i]);
        b.push_back(rhs[i]);
      }
    auto z = solve_square(a, b);
    if (!z) continue;
    bool ok = true;
    for (std::size_t i = 0; i < total && ok; ++i) {
      Rational s = 0;
      for (std::size_t r = 0; r < nr; ++r) s += lhs[i][r] * (*z)[r];
      if (s < rhs[i]) ok = false;
    }
    if (!ok || std::find(seen.begin(), seen.end(), *z) != seen.end()) continue;
    seen.push_back(*z);
    boost::multiprecision::cpp_int den = 1;
    for (const auto& v : *z) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
    Vertex vx;
    vx.den = to_int(den);
    for (const auto& v : *z) vx.num.push_back(to_int(boost::multiprecision::numerator(v) * (den / boost::multiprecision::denominator(v))));
    vx.exact = *z;
    out.push_back(std::move(vx));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

class Solver {
 public:
  explicit Solver(const IlpModel& m) : m_(m), n_(m.names.size()) {
    for (std::size_t s = 0; s <= n_; ++s) {
      std::vector<std::size_t> cols;
      for (std::size_t j = s; j < n_; ++j) cols.push_back(j);
      verts_.push_back(dual_vertices(m_, cols));
    }
  }

  bool bounded() const { return !verts_[0].empty(); }

  // LP optimum over variables s.. with right-hand side b, and its dual vertex.
  std::pair<Frac, const Vertex*> lp(std::size_t s, const std::vector<std::int64_t>& b) const {
    Frac best{0, 1};
    const Vertex* arg = nullptr;
    for (const auto& v : verts_[s]) {
      Int num = 0;
      for (std::size_t r = 0; r < b.size(); ++r) num += static_cast<Int>(b[r]) * v.num[r];
      Frac f{num, v.den};
      if (!arg || f < best) {
        best = f;
        arg = &v;
      }
    }
    return {best, arg};
  }

  IlpResult run() {
    IlpResult res;
    for (auto r : m_.rhs)
      if (r < 0) {
        res.status = IlpStatus::Infeasible;
        return res;
      }
    if (!bounded()) {
      res.status = IlpStatus::Unbounded;
      return res;
    }
    auto [root, vx] = lp(0, m_.rhs);
    res.lp_bound = Rational(boost::multiprecision::cpp_int(static_cast<std::int64_t>(root.num)),
                            boost::multiprecision::cpp_int(static_cast<std::int64_t>(root.den)));
    res.lp_dual = vx->exact;

    std::vector<std::int64_t> b = m_.rhs;
    best_ = 0;
    search(0, b, 0);
    const std::int64_t opt = best_;
    x_.assign(n_, 0);
    b = m_.rhs;
    if (!lexicographic(0, b, 0, opt)) throw std::logic_error("optimum found but no assignment reaches it");
    res.status = IlpStatus::Optimal;
    res.optimum = opt;
    res.assignment = x_;
    res.nodes = nodes_;
    return res;
  }

 private:
  std::int64_t upper(std::size_t s, const std::vector<std::int64_t>& b) const {
    std::int64_t ub = std::numeric_limits<std::int64_t>::max();
    for (std::size_t r = 0; r < b.size(); ++r)
      if (m_.rows[r][s] > 0) ub = std::min(ub, b[r] / m_.rows[r][s]);
    return ub;
  }

  // v + LP(rest) after fixing variable s to v.
  Frac value(std::size_t s, std::vector<std::int64_t>& b, std::int64_t v) const {
    for (std::size_t r = 0; r < b.size(); ++r) b[r] -= v * m_.rows[r][s];
    Frac f = lp(s + 1, b).first;
    for (std::size_t r = 0; r < b.size(); ++r) b[r] += v * m_.rows[r][s];
    f.num += static_cast<Int>(v) * f.den;
    return f;
  }

  // Smallest maximizer of the concave function value(s, b, .) on [0, ub].
  std::int64_t argmax(std::size_t s, std::vector<std::int64_t>& b, std::int64_t ub) const {
    std::int64_t lo = 0, hi = ub;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (value(s, b, mid) < value(s, b, mid + 1)) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  }

  bool descend(std::size_t s, std::vector<std::int64_t>& b, std::int64_t v) const {
    for (std::size_t r = 0; r < b.size(); ++r) b[r] -= v * m_.rows[r][s];
    return true;
  }
  void ascend(std::size_t s, std::vector<std::int64_t>& b, std::int64_t v) const {
    for (std::size_t r = 0; r < b.size(); ++r) b[r] += v * m_.rows[r][s];
  }

  void search(std::size_t s, std::vector<std::int64_t>& b, std::int64_t partial) {
    ++nodes_;
    if (s == n_) {
      best_ = std::max(best_, partial);
      return;
    }
    const std::int64_t ub = upper(s, b);
    const std::int64_t peak = argmax(s, b, ub);
    // The bound is concave in v, so each direction can stop at the first
    // value that cannot beat the incumbent.
    for (std::int64_t v = peak; v <= ub; ++v) {
      if (partial + static_cast<std::int64_t>(value(s, b, v).floor()) <= best_) break;
      descend(s, b, v);
      search(s + 1, b, partial + v);
      ascend(s, b, v);
    }
    for (std::int64_t v = peak - 1; v >= 0; --v) {
      if (partial + static_cast<std::int64_t>(value(s, b, v).floor()) <= best_) break;
      descend(s, b, v);
      search(s + 1, b, partial + v);
      ascend(s, b, v);
    }
  }

  bool lexicographic(std::size_t s, std::vector<std::int64_t>& b, std::int64_t partial, std::int64_t target) {
    if (s == n_) return partial >= target;
    const std::int64_t ub = upper(s, b);
    const std::int64_t peak = argmax(s, b, ub);
    auto reaches = [&](std::int64_t v) { return partial + static_cast<std::int64_t>(value(s, b, v).floor()) >= target; };
    if (!reaches(peak)) return false;
    // First value in [0, peak] that can still reach the target.
    std::int64_t lo = 0, hi = peak;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (reaches(mid)) hi = mid;
      else lo = mid + 1;
    }
    for (std::int64_t v = lo; v <= ub && reaches(v); ++v) {
      x_[s] = v;
      descend(s, b, v);
      const bool found = lexicographic(s + 1, b, partial + v, target);
      ascend(s, b, v);
      if (found) return true;
    }
    return false;
  }

  const IlpModel& m_;
  std::size_t n_;
  std::vector<std::vector<Vertex>> verts_;
  std::int64_t best_ = 0;
  std::vector<std::int64_t> x_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

IlpResult solve_ilp(const IlpModel& m) {
  if (m.rows.size() != m.rhs.size() || m.rows.empty()) throw std::invalid_argument("malformed ILP model");
  for (const auto& r : m.rows)
    if (r.size() != m.names.size()) throw std::invalid_argument("malformed ILP model");
  if (m.rows.size() > 4 || m.names.size() > 16) throw std::invalid_argument("ILP model too large for vertex enumeration");
  for (const auto& r : m.rows)
    for (auto a : r)
      if (a < 0) throw std::invalid_argument("ILP solver expects nonnegative coefficients");
  Solver s(m);
  return s.run();
}

DualCheck check_dual(const IlpModel& m, const std::vector<Rational>& z) {
  if (z.size() != m.rows.size()) throw std::invalid_argument("dual vector has the wrong length");
  DualCheck out;
  for (std::size_t r = 0; r < z.size(); ++r) {
    if (z[r] < 0) out.violated.push_back(m.names.size() + r);
    out.objective += Rational(m.rhs[r]) * z[r];
  }
  for (std::size_t j = 0; j < m.names.size(); ++j) {
    Rational s = 0;
    for (std::size_t r = 0; r < z.size(); ++r) s += Rational(m.rows[r][j]) * z[r];
    if (s < 1) out.violated.push_back(j);
  }
  out.feasible = out.violated.empty();
  return out;
}

DualCheck check_dual(const std::vector<Rational>& z, unsigned k) { return check_dual(build_ilp_d2(k), z); }

std::string export_model(const IlpModel& m) {
  std::ostringstream os;
  os << "\\ recovery-set packing model, q = 2, d = 2, k = " << m.k << "\n";
  os << "Maximize\n obj:";
  for (std::size_t j = 0; j < m.names.size(); ++j) os << (j ? " + " : " ") << m.names[j];
  os << "\nSubject To\n";
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    os << " c" << (r + 1) << ":";
    bool first = true;
    for (std::size_t j = 0; j < m.names.size(); ++j) {
      if (m.rows[r][j] == 0) continue;
      os << (first ? " " : " + ") << m.rows[r][j] << " " << m.names[j];
      first = false;
    }
    if (first) os << " 0 " << m.names.front();
    os << " <= " << m.rhs[r] << "\n";
  }
  os << "General\n";
  for (const auto& n : m.names) os << " " << n;
  os << "\nEnd\n";
  return os.str();
}

}  // namespace recsets
