#pragma once

#include <span>
#include <string>

#include "nestkit/types.hpp"
#include "nestkit/verify.hpp"

namespace nestkit {

/// A minimal nesting can only exist when k >= 2λ+1.
bool minimal_nesting_feasible(int k, int lambda);

/// Necessary condition for a perfect nesting: v ≡ 1 (mod 2k).
bool perfect_nesting_necessary(int v, int k);

struct LowerBound {
  int value = 0;
  std::string source;  // which formula or refinement produced the value
};

/// Both throw INFEASIBLE_PARAMS when r or b is not an integer.
LowerBound weak_bound(int v, int k, int lambda);
LowerBound strong_bound(int v, int k, int lambda);

int weak_lower_bound(int v, int k, int lambda);
int strong_lower_bound(int v, int k, int lambda);

int lower_bound(int v, int k, int lambda, Mode mode);

/// A bound established by computation rather than by formula (e.g. an
/// exhaustive search), applied on top of the formula when parameters match.
struct CertifiedBound {
  DesignParams params;
  Mode mode = Mode::strong;
  int value = 0;
  std::string source;
};

/// Fills cert.bound with the mode's lower bound (formula, raised by any
/// matching certified bound) and whether cert.w meets it.
Certificate check_optimal(Certificate cert, Mode mode, std::span<const CertifiedBound> certified = {});

}  // namespace nestkit
