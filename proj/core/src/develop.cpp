#include "nestkit/develop.hpp"

#include <map>

#include "nestkit/error.hpp"

namespace nestkit {

std::string indexed_label(const std::string& prefix, int i) { return prefix + std::to_string(i); }

namespace {

int mod(long long a, int m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

class PointAllocator {
 public:
  explicit PointAllocator(const BaseBlockSystem& s) : s_(s) {
    const int m = s.modulus;
    for (int r = 0; r < m; ++r) push(std::to_string(r));
    for (const auto& f : s.fixed_points) {
      declared_fixed_[f.label] = f.old;
      if (f.old) push(f.label);
    }
    for (const auto& fam : s.families) {
      declared_family_[fam.prefix] = fam.old;
      if (fam.old)
        for (int i = 0; i < m; ++i) push(indexed_label(fam.prefix, i));
    }
    old_count_ = static_cast<int>(labels_.size());
  }

  int old_count() const { return old_count_; }
  const std::vector<std::string>& labels() const { return labels_; }

  PointId resolve(const BaseEntry& e, int shift) {
    const int m = s_.modulus;
    switch (e.kind) {
      case BaseEntry::Kind::residue:
        return static_cast<PointId>(mod(static_cast<long long>(e.value) + shift, m));
      case BaseEntry::Kind::fixed: {
        if (!declared_fixed_.count(e.label))
          throw Error(ErrorCode::undeclared_label, "fixed point '" + e.label + "' is not declared");
        return lookup_or_add(e.label);
      }
      case BaseEntry::Kind::indexed: {
        if (!declared_family_.count(e.label))
          throw Error(ErrorCode::undeclared_label, "indexed family '" + e.label + "' is not declared");
        int i = e.develop_index ? mod(static_cast<long long>(e.value) + shift, m) : mod(e.value, m);
        return lookup_or_add(indexed_label(e.label, i));
      }
    }
    throw Error(ErrorCode::invalid_input, "bad base entry");
  }

 private:
  void push(const std::string& label) {
    ids_[label] = static_cast<PointId>(labels_.size());
    labels_.push_back(label);
  }
  PointId lookup_or_add(const std::string& label) {
    auto it = ids_.find(label);
    if (it != ids_.end()) return it->second;
    push(label);
    return ids_[label];
  }

  const BaseBlockSystem& s_;
  std::map<std::string, bool> declared_fixed_;
  std::map<std::string, bool> declared_family_;
  std::map<std::string, PointId> ids_;
  std::vector<std::string> labels_;
  int old_count_ = 0;
};

}  // namespace

Developed develop(const BaseBlockSystem& system) {
  const int m = system.modulus;
  if (m <= 0) throw Error(ErrorCode::invalid_input, "modulus must be positive");
  PointAllocator alloc(system);
  const int v = alloc.old_count();

  std::vector<Block> blocks;
  std::vector<PointId> phi;
  for (std::size_t bi = 0; bi < system.bases.size(); ++bi) {
    const auto& base = system.bases[bi];
    const std::size_t width = system.nested ? system.k + 1 : system.k;
    if (base.entries.size() != width)
      throw Error(ErrorCode::invalid_input, "base block " + std::to_string(bi) + " must have " +
                                                std::to_string(width) + " entries");
    for (const auto& e : base.entries)
      if (e.kind == BaseEntry::Kind::residue && (e.value < 0 || e.value >= m))
        throw Error(ErrorCode::residue_out_of_range,
                    "residue " + std::to_string(e.value) + " outside 0.." + std::to_string(m - 1));
    int len = base.orbit_length == 0 ? m : base.orbit_length;
    if (len <= 0 || m % len != 0)
      throw Error(ErrorCode::orbit_not_closed, "orbit length " + std::to_string(len) + " does not divide " +
                                                   std::to_string(m));

    auto underlying = [&](int shift) {
      std::vector<PointId> pts;
      for (std::size_t i = 0; i < static_cast<std::size_t>(system.k); ++i)
        pts.push_back(alloc.resolve(base.entries[i], shift));
      for (auto p : pts)
        if (static_cast<int>(p) >= v)
          throw Error(ErrorCode::invalid_input, "base block " + std::to_string(bi) + " uses a new point");
      return Block(std::move(pts));
    };
    if (len != m && underlying(len) != underlying(0))
      throw Error(ErrorCode::orbit_not_closed,
                  "base block " + std::to_string(bi) + " is not fixed by +" + std::to_string(len));
    for (int shift = 0; shift < len; ++shift) {
      blocks.push_back(underlying(shift));
      if (system.nested) phi.push_back(alloc.resolve(base.entries.back(), shift));
    }
  }

  const auto& labels = alloc.labels();
  const int w = static_cast<int>(labels.size());
  Developed out;
  out.design.params = DesignParams{v, system.k, system.lambda};
  out.design.universe = PointUniverse{v, v, std::vector<std::string>(labels.begin(), labels.begin() + v)};
  out.design.blocks = std::move(blocks);
  out.nesting.universe = PointUniverse{w, v, labels};
  out.nesting.assignment = std::move(phi);
  return out;
}

}  // namespace nestkit
