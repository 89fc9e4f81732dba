#pragma once

#include <string>
#include <vector>

#include "nestkit/types.hpp"

namespace nestkit {

/// One coordinate of an augmented base block.
struct BaseEntry {
  enum class Kind { residue, fixed, indexed };

  Kind kind = Kind::residue;
  int value = 0;       // the residue, or the starting subscript of an indexed point
  std::string label;   // fixed-point label, or the prefix of an indexed family
  bool develop_index = true;  // indexed only: subscript moves with the development

  static BaseEntry residue(int r) { return {Kind::residue, r, {}, true}; }
  static BaseEntry fixed(std::string label) { return {Kind::fixed, 0, std::move(label), true}; }
  static BaseEntry indexed(std::string prefix, int start, bool develop = true) {
    return {Kind::indexed, start, std::move(prefix), develop};
  }
};

struct FixedPoint {
  std::string label;
  bool old = false;
};

/// A family of points prefix0, prefix1, ..., prefix(m-1).
struct IndexedFamily {
  std::string prefix;
  bool old = false;
};

/// The last entry is the nested point. orbit_length 0 means a full orbit;
/// a short orbit must be declared with its length.
struct BaseBlock {
  std::vector<BaseEntry> entries;
  int orbit_length = 0;
};

/// With nested = false the bases carry k entries and develop() returns an
/// empty nesting.
struct BaseBlockSystem {
  int modulus = 0;
  int k = 0;
  int lambda = 1;
  bool nested = true;
  std::vector<FixedPoint> fixed_points;
  std::vector<IndexedFamily> families;
  std::vector<BaseBlock> bases;
};

struct Developed {
  Design design;
  Nesting nesting;
};

/// Old ids: residues 0..m-1, then old fixed points, then old indexed families.
/// New ids are handed out in order of first appearance while developing.
Developed develop(const BaseBlockSystem& system);

/// Label given to subscript i of an indexed family.
std::string indexed_label(const std::string& prefix, int i);

}  // namespace nestkit
