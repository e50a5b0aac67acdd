#include "recsets/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "recsets/geometry.hpp"
#include "recsets/verifier.hpp"

namespace recsets {

const char* to_string(OracleStatus s) { return s == OracleStatus::Exact ? "exact" : "lower-bound-only"; }

namespace {

// Row echelon basis grown one vector at a time.
class Echelon {
 public:
  Echelon(const FiniteField* f, std::size_t n) : f_(f), n_(n) {}

  std::size_t rank() const { return rows_.size(); }

  // Adds v if it is independent of the current rows; returns whether it was.
  bool insert(FqVector v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar c = v[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] = f_->sub(v[j], f_->mul(c, rows_[i][j]));
    }
    std::size_t p = 0;
    while (p < n_ && v[p] == 0) ++p;
    if (p == n_) return false;
    const Scalar inv = f_->inv(v[p]);
    for (auto& x : v) x = f_->mul(x, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  const FiniteField* f_;
  std::size_t n_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

struct Instance {
  FiniteField f;
  unsigned k, d;
  PointCodec codec;
  Subspace target;
  std::vector<FqVector> points;
  std::vector<FqVector> heads;  // first k - d coordinates of each point
  std::vector<bool> in_u;

  Instance(std::uint32_t q, unsigned k_, unsigned d_)
      : f(FiniteField::make(q)), k(k_), d(d_), codec(f, k_), target(default_target(f, k_, d_)) {
    if (codec.size() > kOracleMaxPoints)
      throw std::invalid_argument("instance has " + std::to_string(codec.size()) + " points; the oracle handles at most " +
                                  std::to_string(kOracleMaxPoints));
    for (std::uint64_t i = 0; i < codec.size(); ++i) {
      points.push_back(codec.point(i));
      heads.emplace_back(points.back().begin(), points.back().begin() + (k - d));
      in_u.push_back(is_zero(heads.back()));
    }
  }

  std::uint32_t n() const { return static_cast<std::uint32_t>(points.size()); }
};

void check_parameters(std::uint32_t q, unsigned k, unsigned d) {
  prime_power(q);
  if (d == 0 || d > k) throw std::invalid_argument("need 1 <= d <= k");
}

// Asserts the size-structure facts on an emitted set.
void check_structure(const Instance& in, const PointSet& s) {
  std::vector<FqVector> rows;
  for (auto p : s)
    if (!in.in_u[p]) {
      FqVector h = canonical(in.f, in.heads[p]);
      if (std::find(rows.begin(), rows.end(), h) == rows.end()) rows.push_back(std::move(h));
    }
  auto fail = [&](const char* what) {
    std::string msg = std::string("minimal recovery set breaks the size structure: ") + what + " {";
    for (auto p : s) msg += " " + std::to_string(p);
    throw std::logic_error(msg + " }");
  };
  if (s.size() < in.d) fail("fewer than d points");
  if (s.size() == in.d && !rows.empty()) fail("a size-d set leaves U");
  if (s.size() == in.d + 1 && rows.size() != 1) fail("a size-(d+1) set does not use exactly one row");
  if (rows.size() >= 2 && s.size() < in.d + 2) fail("a cross-row set is smaller than d+2");
}

class Enumerator {
 public:
  Enumerator(const Instance& in, std::function<bool(const PointSet&)> visit, std::uint64_t budget)
      : in_(in), visit_(std::move(visit)), budget_(budget) {}

  // Returns false when stopped early.
  bool run(unsigned cap) {
    for (unsigned size = in_.d; size <= cap; ++size) {
      PointSet cur;
      Echelon all(&in_.f, in_.k), heads(&in_.f, in_.k - in_.d);
      if (!level(size, 0, cur, all, heads)) return false;
    }
    return true;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // cur is independent and, unless it is complete, does not yet span U.
  bool level(unsigned size, std::uint32_t from, PointSet& cur, const Echelon& all, const Echelon& heads) {
    if (budget_ && nodes_ >= budget_) return false;
    ++nodes_;
    if (cur.size() == size) {
      if (!minimal(cur, heads.rank())) return true;
      check_structure(in_, cur);
      return visit_(cur);
    }
    // Not enough points left to finish the set.
    const std::uint32_t need = size - static_cast<std::uint32_t>(cur.size());
    for (std::uint32_t p = from; p + need <= in_.n(); ++p) {
      Echelon a = all;
      if (!a.insert(in_.points[p])) continue;
      Echelon h = heads;
      h.insert(in_.heads[p]);
      cur.push_back(p);
      // A proper subset already spanning U makes every extension non-minimal.
      const bool spans = cur.size() - h.rank() == in_.d;
      bool go = true;
      if (!spans || cur.size() == size) go = level(size, p + 1, cur, a, h);
      cur.pop_back();
      if (!go) return false;
    }
    return true;
  }

  // cur is independent, so it spans U exactly when |cur| - rank(heads) = d,
  // and dropping p still leaves U spanned exactly when p's head lies outside
  // the span of the other heads.
  bool minimal(const PointSet& cur, std::size_t head_rank) const {
    if (cur.size() - head_rank != in_.d) return false;
    for (std::size_t skip = 0; skip < cur.size(); ++skip) {
      Echelon h(&in_.f, in_.k - in_.d);
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (i != skip) h.insert(in_.heads[cur[i]]);
      if (h.rank() + 1 == head_rank) return false;
    }
    // Second route through the general span test.
    Matrix gens;
    for (auto p : cur) gens.push_back(in_.points[p]);
    if (!span_contains(in_.f, gens, in_.target))
      throw std::logic_error("rank criterion and span test disagree on a candidate set");
    return true;
  }

  const Instance& in_;
  std::function<bool(const PointSet&)> visit_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

using Clock = std::chrono::steady_clock;

// State of one packing branch.
struct Frame {
  std::vector<char> blocked;
  std::vector<std::uint32_t> chosen;  // indices into the candidate list
  std::uint32_t next = 0;             // every point below is decided
  std::uint64_t free_total = 0;
  std::uint64_t free_u = 0;
};

class Packer {
 public:
  Packer(const Instance& in, const std::vector<PointSet>& sets, const SearchConfig& cfg, std::uint64_t budget)
      : in_(in), sets_(sets), cfg_(cfg), budget_(budget), by_min_(in.n()) {
    for (std::uint32_t i = 0; i < sets_.size(); ++i) by_min_[sets_[i].front()].push_back(i);
    start_ = Clock::now();
  }

  void run() {
    Frame root;
    root.blocked.assign(in_.n(), 0);
    for (std::uint32_t p = 0; p < in_.n(); ++p) {
      ++root.free_total;
      if (in_.in_u[p]) ++root.free_u;
    }
    seed(root);
    const unsigned threads = std::max(1u, cfg_.threads);
    if (threads == 1) {
      dfs(root);
      return;
    }
    // Split the tree near the root; workers pull subtrees in order.
    std::vector<Frame> frontier{root};
    const std::size_t want = 32 * static_cast<std::size_t>(threads);
    for (unsigned level = 0; level < 4 && !frontier.empty() && frontier.size() < want; ++level) {
      auto next_level = expand(frontier);
      if (next_level.size() > 256 * want) break;
      frontier = std::move(next_level);
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < frontier.size() && !stop_; i = next++) dfs(frontier[i]);
      });
    for (auto& th : pool) th.join();
  }

  std::uint64_t best() const { return best_; }
  std::vector<std::uint32_t> witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }
  bool complete() const { return !stop_; }
  const std::string& reason() const { return reason_; }

 private:
  std::uint64_t bound(const Frame& fr) const {
    const std::uint64_t d = in_.d;
    if (!cfg_.split_bound) return fr.chosen.size() + fr.free_total / d;
    // Size-d sets lie inside U; every other set has at least d+1 points.
    const std::uint64_t small = fr.free_u / d;
    return fr.chosen.size() + small + (fr.free_total - small * d) / (d + 1);
  }

  // Greedy packing in candidate order gives the first incumbent.
  void seed(Frame& fr) {
    std::vector<std::uint32_t> taken;
    for (std::uint32_t s = 0; s < sets_.size(); ++s)
      if (fits(fr, s)) {
        take(fr, s);
        taken.push_back(s);
      }
    record(fr);
    for (auto it = taken.rbegin(); it != taken.rend(); ++it) give(fr, *it);
  }

  void record(const Frame& fr) {
    std::lock_guard<std::mutex> lock(mu_);
    if (fr.chosen.size() > best_) {
      best_ = fr.chosen.size();
      witness_ = fr.chosen;
    }
  }

  bool tick() {
    const std::uint64_t n = ++nodes_;
    if (budget_ && n > budget_) {
      halt("node limit reached");
      return false;
    }
    if (cfg_.time_limit > 0 && (n & 1023) == 0 &&
        std::chrono::duration<double>(Clock::now() - start_).count() > cfg_.time_limit) {
      halt("time limit reached");
      return false;
    }
    return !stop_;
  }

  void halt(const char* why) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!stop_) reason_ = why;
    stop_ = true;
  }

  void advance(Frame& fr) const {
    while (fr.next < in_.n() && fr.blocked[fr.next]) ++fr.next;
  }

  void take(Frame& fr, std::uint32_t s) const {
    for (auto p : sets_[s]) {
      fr.blocked[p] = 1;
      --fr.free_total;
      if (in_.in_u[p]) --fr.free_u;
    }
    fr.chosen.push_back(s);
  }

  void give(Frame& fr, std::uint32_t s) const {
    for (auto p : sets_[s]) {
      fr.blocked[p] = 0;
      ++fr.free_total;
      if (in_.in_u[p]) ++fr.free_u;
    }
    fr.chosen.pop_back();
  }

  bool fits(const Frame& fr, std::uint32_t s) const {
    for (auto p : sets_[s])
      if (fr.blocked[p]) return false;
    return true;
  }

  // Children of fr in search order: each fitting set through the smallest
  // free point, then leaving that point unused.
  template <class Visit>
  void children(Frame& fr, Visit&& visit) {
    advance(fr);
    const std::uint32_t p = fr.next;
    if (p == in_.n()) return;
    for (auto s : by_min_[p]) {
      if (!fits(fr, s)) continue;
      take(fr, s);
      visit(fr);
      fr.next = p;
      give(fr, s);
      if (stop_) return;
    }
    fr.blocked[p] = 1;
    --fr.free_total;
    if (in_.in_u[p]) --fr.free_u;
    fr.next = p + 1;
    visit(fr);
    fr.next = p;
    fr.blocked[p] = 0;
    ++fr.free_total;
    if (in_.in_u[p]) ++fr.free_u;
  }

  // One level of the tree below every frame, dropping pruned and finished frames.
  std::vector<Frame> expand(std::vector<Frame>& level) {
    std::vector<Frame> out;
    for (auto& fr : level) {
      record(fr);
      children(fr, [&](Frame& c) {
        if (cfg_.bound_pruning && bound(c) <= best_) return;
        Frame copy = c;
        advance(copy);
        if (copy.next == in_.n()) record(copy);
        else out.push_back(std::move(copy));
      });
    }
    return out;
  }

  void dfs(Frame& fr) {
    if (!tick()) return;
    if (fr.chosen.size() > best_) record(fr);
    if (cfg_.bound_pruning && bound(fr) <= best_) return;
    children(fr, [&](Frame& c) { dfs(c); });
  }

  const Instance& in_;
  const std::vector<PointSet>& sets_;
  const SearchConfig& cfg_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint32_t>> by_min_;
  Clock::time_point start_;

  std::atomic<std::uint64_t> best_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::mutex mu_;
  std::vector<std::uint32_t> witness_;
  std::string reason_;
};

}  // namespace

bool minimal_recovery_sets(std::uint32_t q, unsigned k, unsigned d, unsigned size_cap,
                           const std::function<bool(const PointSet&)>& visit, std::uint64_t node_budget,
                           std::uint64_t* nodes) {
  check_parameters(q, k, d);
  if (size_cap < d) throw std::invalid_argument("size cap below d");
  const Instance in(q, k, d);
  Enumerator e(in, visit, node_budget);
  const bool done = e.run(std::min(size_cap, k));
  if (nodes) *nodes = e.nodes();
  return done;
}

std::vector<PointSet> minimal_recovery_sets(std::uint32_t q, unsigned k, unsigned d, unsigned size_cap) {
  std::vector<PointSet> out;
  minimal_recovery_sets(q, k, d, size_cap, [&](const PointSet& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

OracleResult exact_N(std::uint32_t q, unsigned k, unsigned d, const SearchConfig& cfg) {
  check_parameters(q, k, d);
  const unsigned cap = cfg.max_set_size == 0 ? k : cfg.max_set_size;
  if (cap < d) throw std::invalid_argument("max set size below d");
  const Instance in(q, k, d);

  std::vector<PointSet> sets;
  Enumerator e(in, [&](const PointSet& s) {
    sets.push_back(s);
    return true;
  }, cfg.node_limit);
  const bool enumerated = e.run(std::min(cap, k));

  OracleResult res(RecoveryFamily(in.f, k, d, in.target));
  res.witness.method = "oracle";
  res.candidate_sets = sets.size();
  std::vector<std::uint32_t> chosen;

  if (enumerated) {
    const std::uint64_t left = cfg.node_limit ? cfg.node_limit - std::min(cfg.node_limit, e.nodes()) : 0;
    Packer pk(in, sets, cfg, cfg.node_limit ? std::max<std::uint64_t>(left, 1) : 0);
    pk.run();
    chosen = pk.witness();
    res.nodes = e.nodes() + pk.nodes();
    if (!pk.complete()) res.reason = pk.reason();
  } else {
    // Candidate list is partial; fall back to a greedy packing of what exists.
    std::vector<char> used(in.n(), 0);
    for (std::uint32_t i = 0; i < sets.size(); ++i) {
      bool ok = true;
      for (auto p : sets[i]) ok = ok && !used[p];
      if (!ok) continue;
      for (auto p : sets[i]) used[p] = 1;
      chosen.push_back(i);
    }
    res.nodes = e.nodes();
    res.reason = "node limit reached while enumerating minimal recovery sets";
  }
  if (res.reason.empty() && cap < k) res.reason = "set size capped below k";
  res.status = res.reason.empty() ? OracleStatus::Exact : OracleStatus::LowerBoundOnly;

  std::sort(chosen.begin(), chosen.end());
  for (auto i : chosen) {
    RecoverySet rs;
    for (auto p : sets[i]) rs.points.push_back(in.points[p]);
    res.witness.sets.push_back(std::move(rs));
  }
  res.value = res.witness.sets.size();
  res.witness.formula_lower = res.value;
  const Certificate cert = verify_family(res.witness);
  if (!cert.valid()) throw std::logic_error("oracle witness failed verification");
  return res;
}

}  // namespace recsets
