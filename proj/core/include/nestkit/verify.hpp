#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nestkit/types.hpp"

namespace nestkit {

struct Check {
  std::string name;
  bool passed = false;
  std::string witness;  // empty on PASS; first violation in canonical order on FAIL

  friend bool operator==(const Check&, const Check&) = default;
};

struct Classification {
  bool weak = false;
  bool strong = false;
  bool minimal = false;
  bool perfect = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

struct BoundInfo {
  int value = 0;
  bool met = false;
  std::string source;

  friend bool operator==(const BoundInfo&, const BoundInfo&) = default;
};

/// What was checked, against which objects, and what came out.
struct Certificate {
  std::string design_hash;
  std::string nesting_hash;  // empty when no nesting is involved
  DesignParams params;
  std::vector<Check> checks;
  Classification classification;
  std::optional<int> w;
  std::optional<BoundInfo> bound;
  std::vector<std::string> provenance;  // ingredient names/hashes, construction notes

  bool passed() const;
  const Check* find(std::string_view name) const;
  void add(std::string name, bool passed, std::string witness = {});
  void append(const Certificate& other);

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

Certificate verify_bibd(const Design& design);
Check verify_partial(std::span<const Block> blocks, int w, int lambda_cap, const PointUniverse* labels = nullptr);
Certificate verify_gdd(const Design& design);
Check verify_resolution(const Design& design);

Certificate verify_weak_nesting(const Design& design, const Nesting& nesting);
Certificate verify_strong_nesting(const Design& design, const Nesting& nesting);

/// Nesting of a GDD into a 4-GDD-like structure: nested points are old, lie
/// in a group the block misses, and every cross-group pair appears exactly
/// λ+1 times in the augmented blocks (a perfectly nested GDD).
Certificate verify_gdd_nesting(const Design& design, const Nesting& nesting);

/// Runs weak and strong checks, sets every flag, and cross-checks the
/// implications between them and the arithmetic facts they force.
Certificate classify(const Design& design, const Nesting& nesting);

/// Either verify_weak_nesting or verify_strong_nesting; minimal additionally
/// requires w = v.
Certificate verify_nesting(const Design& design, const Nesting& nesting, Mode mode);

}  // namespace nestkit
