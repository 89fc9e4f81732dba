#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "nestkit/bounds.hpp"
#include "nestkit/develop.hpp"
#include "nestkit/types.hpp"
#include "nestkit/verify.hpp"

namespace nestkit {

struct SearchOptions {
  int threads = 1;
  std::optional<std::chrono::milliseconds> timeout;
  /// Pre-assigned (block index, nested point) pairs; new points are ids >= v.
  std::vector<std::pair<std::size_t, PointId>> fixed;
  /// First-use ordering of new points. Off only for reference comparisons.
  bool symmetry_breaking = true;
};

enum class SearchStatus { found, exhausted, timed_out };

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<Nesting> nesting;  // set iff found; already re-verified
  int cap = 0;                     // the w_cap searched up to
  long long nodes = 0;             // search-tree nodes, summed over workers
};

/// Smallest w in [v, w_cap] admitting a nesting of the requested mode
/// (minimal: w = v only). New points are labelled ∞1, ∞2, ...
/// Identical output for every thread count.
SearchResult find_min_nesting(const Design& design, Mode mode, int w_cap, const SearchOptions& options = {});

/// Picks a nested residue for every base block so that the developed nesting
/// adds each difference class exactly once; the result is confirmed by full
/// verification. nullopt when no choice works (short orbits never do).
std::optional<BaseBlockSystem> nest_cyclic_base(const BaseBlockSystem& system, Mode mode = Mode::minimal);

bool no_disjoint_blocks(const Design& design);

/// Every (v,k,λ)-BIBD on points 0..v-1 up to isomorphism, one canonical
/// representative each (lexicographically least relabelling). v <= 8.
std::vector<Design> enumerate_bibds(int v, int k, int lambda);

struct StrongBoundReport {
  int value = 0;
  Certificate certificate;  // one check per step of the argument
  std::optional<Nesting> witness;
};

/// Recomputes the strong bound for (6,3,2): a unique design up to
/// isomorphism, no two blocks disjoint, no strong nesting on 10 points, one
/// on 11. Throws CONTRACT_VIOLATION if any step disagrees. Cached.
const StrongBoundReport& strong_632_report();
int certify_632_strong_bound();

/// Bounds established by exhaustive search, for check_optimal().
std::vector<CertifiedBound> certified_bounds();

}  // namespace nestkit
