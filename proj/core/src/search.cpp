#include "nestkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "nestkit/error.hpp"
#include "nestkit/pairs.hpp"

namespace nestkit {

namespace {

using Clock = std::chrono::steady_clock;

// Shared between the workers of one run at one w.
struct Shared {
  std::atomic<int> best{INT_MAX};  // lowest root candidate index that succeeded
  std::atomic<bool> timed_out{false};
  std::optional<Clock::time_point> deadline;
};

class Solver {
 public:
  Solver(const Design& d, Mode mode, int w, bool symmetry_breaking)
      : d_(d),
        v_(d.v()),
        w_(w),
        cap_(d.params.lambda + 1),
        strong_(mode == Mode::strong),
        sb_(symmetry_breaking),
        counts_(pair_counts(d.blocks, w)),
        nested_(strong_ ? w : 0),
        phi_(d.blocks.size(), -1),
        new_use_(w - d.v(), 0) {}

  bool legal(std::size_t i, PointId p) const {
    const auto& b = d_.blocks[i];
    if (b.contains(p)) return false;
    for (auto x : b) {
      if (counts_.get(x, p) >= cap_) return false;
      if (strong_ && nested_.get(x, p) > 0) return false;
    }
    return true;
  }

  std::vector<PointId> candidates(std::size_t i) const {
    std::vector<PointId> out;
    for (int p = 0; p < v_; ++p)
      if (legal(i, p)) out.push_back(p);
    bool fresh_taken = false;
    for (int j = 0; j < w_ - v_; ++j) {
      const PointId p = v_ + j;
      if (sb_ && new_use_[j] == 0) {
        // new points are interchangeable: only the first unused one is tried
        if (fresh_taken) continue;
        fresh_taken = true;
      }
      if (legal(i, p)) out.push_back(p);
    }
    return out;
  }

  void assign(std::size_t i, PointId p) {
    phi_[i] = static_cast<int>(p);
    for (auto x : d_.blocks[i]) {
      counts_.add(x, p);
      if (strong_) nested_.add(x, p);
    }
    if (static_cast<int>(p) >= v_) ++new_use_[p - v_];
  }

  void unassign(std::size_t i) {
    const auto p = static_cast<PointId>(phi_[i]);
    for (auto x : d_.blocks[i]) {
      counts_.add(x, p, -1);
      if (strong_) nested_.add(x, p, -1);
    }
    if (static_cast<int>(p) >= v_) --new_use_[p - v_];
    phi_[i] = -1;
  }

  /// Most constrained unassigned block (ties: lowest index) and its
  /// candidates; nullopt when everything is assigned.
  std::optional<std::pair<std::size_t, std::vector<PointId>>> choose() const {
    std::optional<std::pair<std::size_t, std::vector<PointId>>> best;
    for (std::size_t i = 0; i < phi_.size(); ++i) {
      if (phi_[i] >= 0) continue;
      auto c = candidates(i);
      if (!best || c.size() < best->second.size()) {
        best.emplace(i, std::move(c));
        if (best->second.empty()) break;
      }
    }
    return best;
  }

  bool dfs(Shared& shared, int my_index) {
    ++nodes;
    if ((nodes & 1023) == 0 && shared.deadline && Clock::now() > *shared.deadline) shared.timed_out = true;
    if (shared.timed_out || shared.best.load() < my_index) return false;
    auto pick = choose();
    if (!pick) return true;
    auto& [i, cands] = *pick;
    for (auto p : cands) {
      assign(i, p);
      if (dfs(shared, my_index)) return true;
      unassign(i);
    }
    return false;
  }

  const std::vector<int>& phi() const { return phi_; }
  long long nodes = 0;

 private:
  const Design& d_;
  int v_, w_, cap_;
  bool strong_, sb_;
  PairCountTable counts_;
  PairCountTable nested_;
  std::vector<int> phi_;
  std::vector<int> new_use_;
};

Nesting make_nesting(const Design& d, int w, const std::vector<int>& phi) {
  Nesting n;
  n.universe.size = w;
  n.universe.old_count = d.v();
  for (int p = 0; p < d.v(); ++p) n.universe.labels.push_back(d.universe.label(p));
  for (int j = 1; j <= w - d.v(); ++j) n.universe.labels.push_back("∞" + std::to_string(j));
  for (int p : phi) n.assignment.push_back(static_cast<PointId>(p));
  return n;
}

struct Attempt {
  SearchStatus status = SearchStatus::exhausted;
  std::vector<int> phi;
  long long nodes = 0;
};

Attempt attempt(const Design& d, Mode mode, int w, const SearchOptions& opt, std::optional<Clock::time_point> deadline) {
  Attempt out;
  Solver root(d, mode, w, opt.symmetry_breaking);
  for (auto [i, p] : opt.fixed) {
    if (i >= d.blocks.size() || static_cast<int>(p) >= w) return out;
    if (!root.legal(i, p) || root.phi()[i] >= 0) return out;
    root.assign(i, p);
  }
  auto pick = root.choose();
  if (!pick) {
    out.status = SearchStatus::found;
    out.phi = root.phi();
    return out;
  }
  const auto [block, cands] = *pick;

  Shared shared;
  shared.deadline = deadline;
  std::vector<std::optional<std::vector<int>>> found(cands.size());
  std::atomic<std::size_t> next{0};
  std::atomic<long long> nodes{1};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= cands.size() || shared.best.load() < static_cast<int>(c) || shared.timed_out) return;
      Solver s = root;
      s.nodes = 0;
      s.assign(block, cands[c]);
      const bool ok = s.dfs(shared, static_cast<int>(c));
      nodes += s.nodes;
      if (ok) {
        found[c] = s.phi();
        int cur = shared.best.load();
        while (static_cast<int>(c) < cur && !shared.best.compare_exchange_weak(cur, static_cast<int>(c))) {
        }
      }
    }
  };
  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  out.nodes = nodes;
  const int best = shared.best.load();
  if (shared.timed_out) {
    // only trust a hit if every lower-indexed subtree finished
    out.status = SearchStatus::timed_out;
    return out;
  }
  if (best != INT_MAX) {
    out.status = SearchStatus::found;
    out.phi = *found[best];
  }
  return out;
}

}  // namespace

SearchResult find_min_nesting(const Design& design, Mode mode, int w_cap, const SearchOptions& options) {
  SearchResult result;
  result.cap = w_cap;
  std::optional<Clock::time_point> deadline;
  if (options.timeout) deadline = Clock::now() + *options.timeout;
  const int top = mode == Mode::minimal ? std::min(w_cap, design.v()) : w_cap;
  for (int w = design.v(); w <= top; ++w) {
    auto a = attempt(design, mode, w, options, deadline);
    result.nodes += a.nodes;
    if (a.status == SearchStatus::timed_out) {
      result.status = SearchStatus::timed_out;
      return result;
    }
    if (a.status == SearchStatus::found) {
      auto n = make_nesting(design, w, a.phi);
      auto cert = verify_nesting(design, n, mode);
      if (!cert.passed()) throw Error(ErrorCode::contract_violation, "search produced a nesting that fails verification");
      result.status = SearchStatus::found;
      result.nesting = std::move(n);
      return result;
    }
  }
  result.status = SearchStatus::exhausted;
  return result;
}

std::optional<BaseBlockSystem> nest_cyclic_base(const BaseBlockSystem& system, Mode mode) {
  const int m = system.modulus;
  std::vector<std::vector<int>> bases;
  for (const auto& b : system.bases) {
    if (b.orbit_length != 0 && b.orbit_length != m) return std::nullopt;
    std::vector<int> pts;
    const std::size_t width = system.nested ? b.entries.size() - 1 : b.entries.size();
    for (std::size_t e = 0; e < width; ++e) {
      if (b.entries[e].kind != BaseEntry::Kind::residue) return std::nullopt;
      pts.push_back(b.entries[e].value);
    }
    bases.push_back(std::move(pts));
  }
  auto cls = [m](int d) {
    d = ((d % m) + m) % m;
    return std::min(d, m - d);
  };
  std::vector<char> used(m / 2 + 1, 0);
  std::vector<int> offset(bases.size(), -1);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == bases.size()) return true;
    for (int c = 0; c < m; ++c) {
      if (std::find(bases[i].begin(), bases[i].end(), c) != bases[i].end()) continue;
      std::vector<int> mine;
      bool ok = true;
      for (int x : bases[i]) {
        int d = cls(c - x);
        // a difference of m/2 only yields m/2 pairs, so it cannot be used
        if (d == 0 || (m % 2 == 0 && d == m / 2) || used[d] ||
            std::find(mine.begin(), mine.end(), d) != mine.end()) {
          ok = false;
          break;
        }
        mine.push_back(d);
      }
      if (!ok) continue;
      for (int d : mine) used[d] = 1;
      offset[i] = c;
      if (rec(i + 1)) return true;
      for (int d : mine) used[d] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;

  BaseBlockSystem out = system;
  out.nested = true;
  for (std::size_t i = 0; i < out.bases.size(); ++i) {
    if (system.nested) out.bases[i].entries.pop_back();
    out.bases[i].entries.push_back(BaseEntry::residue(offset[i]));
  }
  auto dev = develop(out);
  if (!verify_nesting(dev.design, dev.nesting, mode).passed())
    throw Error(ErrorCode::contract_violation, "cyclic base nesting failed full verification");
  return out;
}

bool no_disjoint_blocks(const Design& design) {
  const auto& b = design.blocks;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (std::none_of(b[i].begin(), b[i].end(), [&](PointId p) { return b[j].contains(p); })) return false;
  return true;
}

std::vector<Design> enumerate_bibds(int v, int k, int lambda) {
  if (v > 8 || k < 2 || k > v || lambda < 1) throw Error(ErrorCode::invalid_input, "enumeration needs 2 <= k <= v <= 8");
  DesignParams params{v, k, lambda};
  if (!params.admissible()) return {};

  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int x = start; x < v; ++x) {
      cur.push_back(x);
      gen(x + 1);
      cur.pop_back();
    }
  };
  gen(0);
  // a pair can no longer change once its last subset has been decided
  std::vector<std::vector<std::pair<int, int>>> closing(subsets.size());
  for (int x = 0; x < v; ++x)
    for (int y = x + 1; y < v; ++y) {
      int last = -1;
      for (std::size_t s = 0; s < subsets.size(); ++s)
        if (std::count(subsets[s].begin(), subsets[s].end(), x) && std::count(subsets[s].begin(), subsets[s].end(), y))
          last = static_cast<int>(s);
      closing[last].emplace_back(x, y);
    }

  std::vector<std::vector<int>> count(v, std::vector<int>(v, 0));
  std::vector<int> mult(subsets.size(), 0);
  std::set<std::vector<std::vector<int>>> forms;

  auto canonical = [&]() {
    std::vector<int> perm(v);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> best;
    do {
      std::vector<std::vector<int>> blocks;
      for (std::size_t s = 0; s < subsets.size(); ++s)
        for (int r = 0; r < mult[s]; ++r) {
          std::vector<int> b;
          for (int x : subsets[s]) b.push_back(perm[x]);
          std::sort(b.begin(), b.end());
          blocks.push_back(std::move(b));
        }
      std::sort(blocks.begin(), blocks.end());
      if (best.empty() || blocks < best) best = std::move(blocks);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == subsets.size()) {
      forms.insert(canonical());
      return;
    }
    const auto& sub = subsets[s];
    for (int m = 0; m <= lambda; ++m) {
      bool ok = true;
      for (std::size_t a = 0; a < sub.size() && ok; ++a)
        for (std::size_t b = a + 1; b < sub.size(); ++b)
          if (count[sub[a]][sub[b]] + m > lambda) ok = false;
      if (!ok) break;
      for (std::size_t a = 0; a < sub.size(); ++a)
        for (std::size_t b = a + 1; b < sub.size(); ++b) count[sub[a]][sub[b]] += m;
      mult[s] = m;
      bool closed = std::all_of(closing[s].begin(), closing[s].end(),
                                [&](auto pr) { return count[pr.first][pr.second] == lambda; });
      if (closed) rec(s + 1);
      for (std::size_t a = 0; a < sub.size(); ++a)
        for (std::size_t b = a + 1; b < sub.size(); ++b) count[sub[a]][sub[b]] -= m;
      mult[s] = 0;
    }
  };
  rec(0);

  std::vector<Design> out;
  for (const auto& form : forms) {
    Design d;
    d.params = params;
    d.universe = PointUniverse::plain(v);
    for (const auto& b : form) d.blocks.emplace_back(std::vector<PointId>(b.begin(), b.end()));
    out.push_back(std::move(d));
  }
  return out;
}

const StrongBoundReport& strong_632_report() {
  static const StrongBoundReport report = [] {
    StrongBoundReport r;
    auto& cert = r.certificate;
    cert.params = DesignParams{6, 3, 2};
    auto designs = enumerate_bibds(6, 3, 2);
    cert.add("unique-up-to-isomorphism", designs.size() == 1,
             std::to_string(designs.size()) + " isomorphism classes");
    if (designs.empty()) throw Error(ErrorCode::contract_violation, "no (6,3,2)-BIBD found");
    const Design& d = designs.front();
    cert.design_hash = fingerprint(d);
    cert.add("no-disjoint-blocks", no_disjoint_blocks(d), "two blocks are disjoint");

    auto below = find_min_nesting(d, Mode::strong, 10);
    cert.add("strong-exhausted-at-10", below.status == SearchStatus::exhausted,
             below.nesting ? "found a strong nesting with w = " + std::to_string(below.nesting->w()) : "not exhausted");
    auto at = find_min_nesting(d, Mode::strong, 11);
    const bool hit = at.status == SearchStatus::found && at.nesting->w() == 11;
    cert.add("strong-found-at-11", hit, "no strong nesting on 11 points");
    if (hit) {
      r.witness = at.nesting;
      cert.nesting_hash = fingerprint(*at.nesting);
      cert.w = 11;
      long long old_nested = std::count_if(at.nesting->assignment.begin(), at.nesting->assignment.end(),
                                           [&](PointId p) { return at.nesting->universe.is_old(p); });
      // each old nested point uses three of the C(6,2) = 15 pairs once
      cert.add("old-nested-at-most-5", old_nested <= 5, std::to_string(old_nested) + " blocks nested by old points");
    }
    cert.provenance.push_back("exhaustive enumeration of (6,3,2)-BIBDs and strong nesting search");
    if (!cert.passed()) {
      std::string why;
      for (const auto& c : cert.checks)
        if (!c.passed) why += c.name + " (" + c.witness + ") ";
      throw Error(ErrorCode::contract_violation, "(6,3,2) strong bound argument failed: " + why);
    }
    r.value = 11;
    return r;
  }();
  return report;
}

int certify_632_strong_bound() { return strong_632_report().value; }

std::vector<CertifiedBound> certified_bounds() {
  return {CertifiedBound{DesignParams{6, 3, 2}, Mode::strong, certify_632_strong_bound(),
                         "exhaustive search: unique (6,3,2)-BIBD has no strong nesting on 10 points"}};
}

}  // namespace nestkit
