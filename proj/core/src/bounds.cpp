#include "nestkit/bounds.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "nestkit/error.hpp"

namespace nestkit {

namespace {

long long ceil_div(long long a, long long b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

DesignParams admissible(int v, int k, int lambda) {
  DesignParams p{v, k, lambda};
  if (v < 1 || k < 2 || lambda < 1) throw Error(ErrorCode::infeasible_params, "need v >= 1, k >= 2, λ >= 1");
  if (!p.replication_integral())
    throw Error(ErrorCode::infeasible_params, "r = λ(v-1)/(k-1) is not an integer for " + std::to_string(v) + "," +
                                                  std::to_string(k) + "," + std::to_string(lambda));
  if (!p.block_count_integral())
    throw Error(ErrorCode::infeasible_params, "b = λv(v-1)/(k(k-1)) is not an integer for " + std::to_string(v) +
                                                  "," + std::to_string(k) + "," + std::to_string(lambda));
  return p;
}

/// Residue-class refinements keyed on (k, λ). Each returns 0 when it has
/// nothing to add for this v.
struct Refinement {
  int k;
  int lambda;
  Mode mode;
  std::function<long long(int v)> value;
  const char* source;
};

const std::vector<Refinement>& refinements() {
  static const std::vector<Refinement> table = {
      {2, 1, Mode::weak, [](int v) { return ceil_div(5LL * v - 1, 4); }, "pairs: ceil((5v-1)/4)"},
      {3, 2, Mode::weak, [](int v) { return ceil_div(7LL * v - 1, 6); }, "triples, λ=2: ceil((7v-1)/6)"},
      {2, 1, Mode::strong, [](int v) { return ceil_div(3LL * v, 2); }, "pairs: ceil(3v/2)"},
      {3, 2, Mode::strong,
       [](int v) -> long long {
         switch (v % 6) {
           case 1:
           case 3: return (3LL * v + 1) / 2;
           case 4: return 3LL * v / 2 + 1;
           default: return 0;
         }
       },
       "triples, λ=2: residue refinement"},
  };
  return table;
}

LowerBound apply_refinements(LowerBound base, int v, int k, int lambda, Mode mode) {
  for (const auto& r : refinements()) {
    if (r.k != k || r.lambda != lambda || r.mode != mode) continue;
    long long value = r.value(v);
    if (value > base.value) base = {static_cast<int>(value), r.source};
  }
  return base;
}

}  // namespace

bool minimal_nesting_feasible(int k, int lambda) { return k >= 2 * lambda + 1; }

bool perfect_nesting_necessary(int v, int k) { return k > 0 && v % (2 * k) == 1 % (2 * k); }

LowerBound weak_bound(int v, int k, int lambda) {
  auto p = admissible(v, k, lambda);
  LowerBound out{v, "trivial: w >= v"};
  if (minimal_nesting_feasible(k, lambda)) return out;
  // w >= (2r + v + 2λv + 1) / (2(λ+1))
  long long general = ceil_div(2 * p.replication() + v + 2LL * lambda * v + 1, 2LL * (lambda + 1));
  if (general > out.value) out = {static_cast<int>(general), "weak counting bound"};
  return apply_refinements(out, v, k, lambda, Mode::weak);
}

LowerBound strong_bound(int v, int k, int lambda) {
  auto p = admissible(v, k, lambda);
  LowerBound out{v, "trivial: w >= v"};
  // w >= r + (v+1)/2
  long long general = ceil_div(2 * p.replication() + v + 1, 2);
  if (general > out.value) out = {static_cast<int>(general), "strong counting bound"};
  out = apply_refinements(out, v, k, lambda, Mode::strong);
  // A strong nesting is weak, so the weak bound applies too.
  auto weak = weak_bound(v, k, lambda);
  if (weak.value > out.value) out = weak;
  return out;
}

int weak_lower_bound(int v, int k, int lambda) { return weak_bound(v, k, lambda).value; }
int strong_lower_bound(int v, int k, int lambda) { return strong_bound(v, k, lambda).value; }

int lower_bound(int v, int k, int lambda, Mode mode) {
  if (mode == Mode::weak) return weak_lower_bound(v, k, lambda);
  if (mode == Mode::minimal) {
    admissible(v, k, lambda);
    return v;
  }
  return strong_lower_bound(v, k, lambda);
}

Certificate check_optimal(Certificate cert, Mode mode, std::span<const CertifiedBound> certified) {
  const auto& p = cert.params;
  LowerBound b = mode == Mode::weak ? weak_bound(p.v, p.k, p.lambda) : strong_bound(p.v, p.k, p.lambda);
  if (mode == Mode::minimal) b = {p.v, "minimal: w = v"};
  for (const auto& c : certified)
    if (c.params == p && c.mode == mode && c.value > b.value) b = {c.value, c.source};
  cert.bound = BoundInfo{b.value, cert.w && *cert.w == b.value, b.source};
  return cert;
}

}  // namespace nestkit
