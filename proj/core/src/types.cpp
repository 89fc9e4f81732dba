#include "nestkit/types.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "nestkit/error.hpp"

namespace nestkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "INVALID_INPUT";
    case ErrorCode::residue_out_of_range: return "RESIDUE_OUT_OF_RANGE";
    case ErrorCode::undeclared_label: return "UNDECLARED_LABEL";
    case ErrorCode::orbit_not_closed: return "ORBIT_NOT_CLOSED";
    case ErrorCode::nested_point_inside_block: return "NESTED_POINT_INSIDE_BLOCK";
    case ErrorCode::infeasible_params: return "INFEASIBLE_PARAMS";
    case ErrorCode::no_cyclic_sts: return "NO_CYCLIC_STS";
    case ErrorCode::v_too_small: return "V_TOO_SMALL";
    case ErrorCode::unknown_fixture: return "UNKNOWN_FIXTURE";
    case ErrorCode::missing_ingredient: return "MISSING_INGREDIENT";
    case ErrorCode::unsupported_case: return "UNSUPPORTED_CASE";
    case ErrorCode::illegal_reuse: return "ILLEGAL_REUSE";
    case ErrorCode::not_strong: return "NOT_STRONG";
    case ErrorCode::not_harmonious: return "NOT_HARMONIOUS";
    case ErrorCode::contract_violation: return "CONTRACT_VIOLATION";
    case ErrorCode::malformed_file: return "MALFORMED_FILE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<std::size_t> blocks)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      blocks_(std::move(blocks)) {}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::weak: return "weak";
    case Mode::strong: return "strong";
    case Mode::minimal: return "minimal";
  }
  return "weak";
}

Mode parse_mode(std::string_view text) {
  if (text == "weak") return Mode::weak;
  if (text == "strong") return Mode::strong;
  if (text == "minimal") return Mode::minimal;
  throw Error(ErrorCode::invalid_input, "unknown mode '" + std::string(text) + "'");
}

bool DesignParams::replication_integral() const {
  return k >= 2 && (static_cast<long long>(lambda) * (v - 1)) % (k - 1) == 0;
}

bool DesignParams::block_count_integral() const {
  return k >= 2 &&
         (static_cast<long long>(lambda) * v * (v - 1)) % (static_cast<long long>(k) * (k - 1)) == 0;
}

long long DesignParams::replication() const {
  return static_cast<long long>(lambda) * (v - 1) / (k - 1);
}

long long DesignParams::block_count() const {
  return static_cast<long long>(lambda) * v * (v - 1) / (static_cast<long long>(k) * (k - 1));
}

std::string PointUniverse::label(PointId p) const {
  if (p < labels.size()) return labels[p];
  return std::to_string(p);
}

Block::Block(std::vector<PointId> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw Error(ErrorCode::invalid_input, "block repeats a point");
}

bool Block::contains(PointId p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::string group_type(const std::vector<Group>& groups) {
  // sizes in first-appearance order, run-length encoded
  std::vector<std::pair<std::size_t, int>> runs;
  for (const auto& g : groups) {
    auto it = std::find_if(runs.begin(), runs.end(), [&](auto& r) { return r.first == g.size(); });
    if (it == runs.end())
      runs.emplace_back(g.size(), 1);
    else
      ++it->second;
  }
  std::string out;
  for (const auto& [size, count] : runs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(size) + "^" + std::to_string(count);
  }
  return out;
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }
};

}  // namespace

std::string fingerprint(const Design& design) {
  Fnv f;
  f.add(design.params.v);
  f.add(design.params.k);
  f.add(design.params.lambda);
  auto blocks = design.blocks;
  std::sort(blocks.begin(), blocks.end());
  for (const auto& b : blocks) {
    f.add(b.size());
    for (auto p : b) f.add(p);
  }
  if (design.groups) {
    for (const auto& g : *design.groups) {
      f.add(0xFFFFFFFFULL);
      for (auto p : g) f.add(p);
    }
  }
  return f.hex();
}

std::string fingerprint(const Nesting& nesting) {
  Fnv f;
  f.add(nesting.universe.size);
  f.add(nesting.universe.old_count);
  for (auto p : nesting.assignment) f.add(p);
  return f.hex();
}

}  // namespace nestkit
