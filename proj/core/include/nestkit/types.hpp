#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nestkit {

/// Dense point identifier. Old points (the design's point set) come first,
/// new points introduced by a nesting follow.
using PointId = std::uint32_t;

enum class Mode { weak, strong, minimal };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

struct DesignParams {
  int v = 0;
  int k = 0;
  int lambda = 0;

  bool replication_integral() const;
  bool block_count_integral() const;
  bool admissible() const { return replication_integral() && block_count_integral(); }

  // Only meaningful when the corresponding *_integral() holds; otherwise the
  // value is truncated.
  long long replication() const;
  long long block_count() const;

  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// Points 0..size-1; ids below old_count are the design's own points.
struct PointUniverse {
  int size = 0;
  int old_count = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` entries

  static PointUniverse plain(int v) { return PointUniverse{v, v, {}}; }

  bool is_old(PointId p) const { return static_cast<int>(p) < old_count; }
  std::string label(PointId p) const;

  friend bool operator==(const PointUniverse&, const PointUniverse&) = default;
};

class Block {
 public:
  Block() = default;
  /// Sorts the points; throws Error(invalid_input) on a repeated point.
  explicit Block(std::vector<PointId> points);
  Block(std::initializer_list<PointId> points) : Block(std::vector<PointId>(points)) {}

  std::span<const PointId> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(PointId p) const;
  PointId operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend auto operator<=>(const Block&, const Block&) = default;
  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<PointId> points_;
};

using Group = std::vector<PointId>;

struct ResolutionClass {
  std::vector<std::size_t> blocks;
  std::optional<int> hole;  // nullopt: a full parallel class

  friend bool operator==(const ResolutionClass&, const ResolutionClass&) = default;
};

struct Resolution {
  std::vector<ResolutionClass> classes;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// A block multiset over a point universe. Repeated blocks are kept.
struct Design {
  DesignParams params;
  PointUniverse universe;
  std::vector<Block> blocks;
  std::optional<std::vector<Group>> groups;
  std::optional<Resolution> resolution;

  int v() const { return params.v; }
  std::size_t block_count() const { return blocks.size(); }

  friend bool operator==(const Design&, const Design&) = default;
};

/// phi: block index -> point of the (extended) universe.
struct Nesting {
  PointUniverse universe;
  std::vector<PointId> assignment;

  int w() const { return universe.size; }

  friend bool operator==(const Nesting&, const Nesting&) = default;
};

/// Group type string such as "3^5" or "4^6 10^1", groups ordered as given.
std::string group_type(const std::vector<Group>& groups);

/// 64-bit FNV-1a over the canonical block listing, rendered as hex.
std::string fingerprint(const Design& design);
std::string fingerprint(const Nesting& nesting);

}  // namespace nestkit
