#include "nestkit/verify.hpp"

#include <algorithm>

#include "nestkit/pairs.hpp"

namespace nestkit {

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* Certificate::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Certificate::add(std::string name, bool passed, std::string witness) {
  checks.push_back(Check{std::move(name), passed, passed ? std::string{} : std::move(witness)});
}

void Certificate::append(const Certificate& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
}

namespace {

std::string pair_text(const PointUniverse* u, PointId x, PointId y) {
  auto name = [&](PointId p) { return u ? u->label(p) : std::to_string(p); };
  return "{" + name(x) + "," + name(y) + "}";
}

/// First pair (canonical order) whose count differs from `want(x,y)`.
template <class Want>
std::optional<std::string> first_pair_mismatch(const PairCountTable& t, int n, const PointUniverse* u, Want want) {
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      int got = t.get(x, y);
      int expect = want(x, y);
      if (got != expect)
        return pair_text(u, x, y) + " occurs " + std::to_string(got) + " times, expected " + std::to_string(expect);
    }
  return std::nullopt;
}

void check_block_shape(Certificate& cert, const Design& d, const std::string& prefix) {
  std::string bad;
  for (std::size_t i = 0; i < d.blocks.size() && bad.empty(); ++i) {
    const auto& b = d.blocks[i];
    if (static_cast<int>(b.size()) != d.params.k)
      bad = "block " + std::to_string(i) + " has size " + std::to_string(b.size());
    else if (b.size() > 0 && static_cast<int>(b[b.size() - 1]) >= d.params.v)
      bad = "block " + std::to_string(i) + " uses point " + std::to_string(b[b.size() - 1]) + " >= v";
  }
  cert.add(prefix + "block-size", bad.empty(), bad);
}

void check_block_count(Certificate& cert, const Design& d, const std::string& prefix) {
  const auto& p = d.params;
  if (!p.block_count_integral()) {
    cert.add(prefix + "block-count", false, "b = λv(v-1)/(k(k-1)) is not an integer");
    return;
  }
  bool ok = static_cast<long long>(d.blocks.size()) == p.block_count();
  cert.add(prefix + "block-count", ok,
           std::to_string(d.blocks.size()) + " blocks, expected " + std::to_string(p.block_count()));
}

std::vector<int> group_index(const Design& d, std::string* problem) {
  std::vector<int> gid(d.params.v, -1);
  if (!d.groups) return gid;
  for (std::size_t g = 0; g < d.groups->size(); ++g)
    for (auto p : (*d.groups)[g]) {
      if (static_cast<int>(p) >= d.params.v) {
        if (problem->empty()) *problem = "group " + std::to_string(g) + " contains point " + std::to_string(p);
        continue;
      }
      if (gid[p] != -1 && problem->empty()) *problem = "point " + std::to_string(p) + " lies in two groups";
      gid[p] = static_cast<int>(g);
    }
  for (int p = 0; p < d.params.v && problem->empty(); ++p)
    if (gid[p] == -1) *problem = "point " + std::to_string(p) + " lies in no group";
  return gid;
}

/// The design-level part of a nesting check: BIBD when there are no groups,
/// GDD otherwise.
Certificate underlying_checks(const Design& d) {
  Certificate c = d.groups ? verify_gdd(d) : verify_bibd(d);
  for (auto& ch : c.checks) ch.name = "design:" + ch.name;
  return c;
}

bool check_nesting_shape(Certificate& cert, const Design& d, const Nesting& n) {
  std::string bad;
  if (n.assignment.size() != d.blocks.size())
    bad = "assignment has " + std::to_string(n.assignment.size()) + " entries for " +
          std::to_string(d.blocks.size()) + " blocks";
  else if (n.universe.old_count != d.params.v)
    bad = "universe has " + std::to_string(n.universe.old_count) + " old points, design has v = " +
          std::to_string(d.params.v);
  else if (n.universe.size < n.universe.old_count)
    bad = "w < v";
  else
    for (std::size_t i = 0; i < n.assignment.size() && bad.empty(); ++i)
      if (static_cast<int>(n.assignment[i]) >= n.universe.size)
        bad = "block " + std::to_string(i) + " nested by point outside universe";
  cert.add("nesting-total", bad.empty(), bad);
  return bad.empty();
}

Certificate base_certificate(const Design& d, const Nesting* n) {
  Certificate c;
  c.design_hash = fingerprint(d);
  c.params = d.params;
  if (n) {
    c.nesting_hash = fingerprint(*n);
    c.w = n->w();
  }
  return c;
}

/// Weak nesting checks shared by every nesting mode. Returns the augmented
/// pair table when the nesting is well formed.
std::optional<PairCountTable> weak_checks(Certificate& cert, const Design& d, const Nesting& n) {
  cert.append(underlying_checks(d));
  if (!check_nesting_shape(cert, d, n)) return std::nullopt;
  std::string inside;
  for (std::size_t i = 0; i < d.blocks.size() && inside.empty(); ++i)
    if (d.blocks[i].contains(n.assignment[i]))
      inside = "block " + std::to_string(i) + " contains its nested point " + n.universe.label(n.assignment[i]);
  cert.add("nested-point-outside-block", inside.empty(), inside);
  if (!inside.empty()) return std::nullopt;
  Design aug = augment(d, n);
  auto cap = verify_partial(aug.blocks, n.universe.size, d.params.lambda + 1, &n.universe);
  cap.name = "augmented-partial";
  cert.checks.push_back(cap);
  return pair_counts(aug.blocks, n.universe.size);
}

PairCountTable nested_pair_table(const Design& d, const Nesting& n) {
  PairCountTable t(n.universe.size);
  for (std::size_t i = 0; i < d.blocks.size(); ++i)
    for (auto x : d.blocks[i])
      if (x != n.assignment[i]) t.add(x, n.assignment[i]);
  return t;
}

void strong_checks(Certificate& cert, const Design& d, const Nesting& n) {
  auto t = nested_pair_table(d, n);
  std::string repeat;
  for (int x = 0; x < n.universe.size && repeat.empty(); ++x)
    for (int y = x + 1; y < n.universe.size && repeat.empty(); ++y)
      if (t.get(x, y) > 1)
        repeat = "pair " + pair_text(&n.universe, x, y) + " arises from " + std::to_string(t.get(x, y)) +
                 " blocks";
  cert.add("nested-pairs-distinct", repeat.empty(), repeat);

  // Redundant: distinct nested pairs force every new point into at most
  // floor(v/k) blocks.
  std::vector<int> degree(n.universe.size, 0);
  for (auto p : n.assignment) ++degree[p];
  std::string heavy;
  const int cap = d.params.k > 0 ? d.params.v / d.params.k : 0;
  for (int y = n.universe.old_count; y < n.universe.size && heavy.empty(); ++y)
    if (degree[y] > cap)
      heavy = "new point " + n.universe.label(y) + " nests " + std::to_string(degree[y]) + " blocks, cap " +
              std::to_string(cap);
  cert.add("new-point-degree", heavy.empty(), heavy);
}

}  // namespace

Certificate verify_bibd(const Design& design) {
  Certificate cert = base_certificate(design, nullptr);
  cert.add("no-groups", !design.groups.has_value(), "design carries groups; use the GDD check");
  check_block_shape(cert, design, "");
  if (!cert.checks.back().passed) return cert;
  check_block_count(cert, design, "");
  auto t = pair_counts(design.blocks, design.params.v);
  auto bad = first_pair_mismatch(t, design.params.v, &design.universe,
                                 [&](int, int) { return design.params.lambda; });
  cert.add("pair-balance", !bad, bad.value_or(""));
  return cert;
}

Check verify_partial(std::span<const Block> blocks, int w, int lambda_cap, const PointUniverse* labels) {
  auto t = pair_counts(blocks, w);
  for (int x = 0; x < w; ++x)
    for (int y = x + 1; y < w; ++y)
      if (t.get(x, y) > lambda_cap)
        return Check{"partial-cap", false,
                     pair_text(labels, x, y) + " occurs " + std::to_string(t.get(x, y)) + " times, cap " +
                         std::to_string(lambda_cap)};
  return Check{"partial-cap", true, {}};
}

Certificate verify_gdd(const Design& design) {
  Certificate cert = base_certificate(design, nullptr);
  std::string problem;
  if (!design.groups) problem = "design has no groups";
  auto gid = group_index(design, &problem);
  cert.add("groups-partition", problem.empty(), problem);
  check_block_shape(cert, design, "");
  if (!cert.passed()) return cert;

  std::string twice;
  for (std::size_t i = 0; i < design.blocks.size() && twice.empty(); ++i) {
    const auto& b = design.blocks[i];
    for (std::size_t a = 0; a < b.size() && twice.empty(); ++a)
      for (std::size_t c = a + 1; c < b.size() && twice.empty(); ++c)
        if (gid[b[a]] == gid[b[c]])
          twice = "block " + std::to_string(i) + " meets group " + std::to_string(gid[b[a]]) + " twice";
  }
  cert.add("block-meets-group-once", twice.empty(), twice);

  auto t = pair_counts(design.blocks, design.params.v);
  const int lam = design.params.lambda;
  auto bad = first_pair_mismatch(t, design.params.v, &design.universe,
                                 [&](int x, int y) { return gid[x] == gid[y] ? 0 : lam; });
  cert.add("pair-balance", !bad, bad.value_or(""));
  return cert;
}

Check verify_resolution(const Design& design) {
  auto fail = [](std::string why) { return Check{"resolution", false, std::move(why)}; };
  if (!design.resolution) return fail("design has no resolution");
  const auto& classes = design.resolution->classes;
  const int v = design.params.v;
  std::vector<int> owner(design.blocks.size(), -1);
  std::vector<int> per_group(design.groups ? design.groups->size() : 0, 0);
  bool holey = false;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<int> seen(v, 0);
    for (auto bi : classes[c].blocks) {
      if (bi >= design.blocks.size()) return fail("class " + std::to_string(c) + " names block " + std::to_string(bi));
      if (owner[bi] != -1) return fail("block " + std::to_string(bi) + " lies in two classes");
      owner[bi] = static_cast<int>(c);
      for (auto p : design.blocks[bi]) {
        if (static_cast<int>(p) >= v) return fail("block " + std::to_string(bi) + " leaves the point set");
        if (seen[p]++) return fail("class " + std::to_string(c) + " covers point " + design.universe.label(p) + " twice");
      }
    }
    std::vector<int> expect(v, 1);
    if (classes[c].hole) {
      holey = true;
      int h = *classes[c].hole;
      if (!design.groups || h < 0 || h >= static_cast<int>(design.groups->size()))
        return fail("class " + std::to_string(c) + " names hole " + std::to_string(h));
      ++per_group[h];
      for (auto p : (*design.groups)[h]) expect[p] = 0;
    }
    for (int p = 0; p < v; ++p)
      if (seen[p] != expect[p])
        return fail("class " + std::to_string(c) + (expect[p] ? " misses point " : " covers hole point ") +
                    design.universe.label(p));
  }
  for (std::size_t i = 0; i < owner.size(); ++i)
    if (owner[i] == -1) return fail("block " + std::to_string(i) + " lies in no class");
  if (holey) {
    for (std::size_t g = 0; g < per_group.size(); ++g) {
      auto want = static_cast<int>((*design.groups)[g].size() / 2);
      if (per_group[g] != want)
        return fail("group " + std::to_string(g) + " has " + std::to_string(per_group[g]) + " holey classes, expected " +
                    std::to_string(want));
    }
  }
  return Check{"resolution", true, {}};
}

Certificate verify_weak_nesting(const Design& design, const Nesting& nesting) {
  Certificate cert = base_certificate(design, &nesting);
  weak_checks(cert, design, nesting);
  cert.classification.weak = cert.passed();
  return cert;
}

Certificate verify_strong_nesting(const Design& design, const Nesting& nesting) {
  Certificate cert = base_certificate(design, &nesting);
  bool shaped = weak_checks(cert, design, nesting).has_value();
  cert.classification.weak = cert.passed();
  if (shaped) strong_checks(cert, design, nesting);
  cert.classification.strong = cert.passed();
  return cert;
}

Certificate verify_gdd_nesting(const Design& design, const Nesting& nesting) {
  Certificate cert = base_certificate(design, &nesting);
  cert.append(underlying_checks(design));
  if (!check_nesting_shape(cert, design, nesting) || !cert.passed()) return cert;
  std::string problem;
  auto gid = group_index(design, &problem);
  std::string bad;
  for (std::size_t i = 0; i < design.blocks.size() && bad.empty(); ++i) {
    auto p = nesting.assignment[i];
    if (!nesting.universe.is_old(p)) {
      bad = "block " + std::to_string(i) + " nested by new point";
      break;
    }
    for (auto x : design.blocks[i])
      if (gid[x] == gid[p]) bad = "block " + std::to_string(i) + " nested inside the group of one of its points";
  }
  cert.add("nested-point-off-groups", bad.empty(), bad);
  if (!bad.empty()) return cert;
  Design aug = augment(design, nesting);
  auto t = pair_counts(aug.blocks, design.params.v);
  const int lam = design.params.lambda + 1;
  auto mismatch = first_pair_mismatch(t, design.params.v, &design.universe,
                                      [&](int x, int y) { return gid[x] == gid[y] ? 0 : lam; });
  cert.add("augmented-gdd", !mismatch, mismatch.value_or(""));
  if (cert.passed()) cert.classification = Classification{true, true, true, true};
  return cert;
}

Certificate classify(const Design& design, const Nesting& nesting) {
  Certificate cert = base_certificate(design, &nesting);
  auto table = weak_checks(cert, design, nesting);
  auto& flags = cert.classification;
  flags.weak = cert.passed();
  if (flags.weak) {
    Certificate strong;
    strong_checks(strong, design, nesting);
    flags.strong = strong.passed();
  }
  const auto& p = design.params;
  const int w = nesting.w();
  flags.minimal = flags.strong && w == p.v;
  if (flags.minimal && table) {
    auto bad = first_pair_mismatch(*table, w, nullptr, [&](int, int) { return p.lambda + 1; });
    flags.perfect = !bad;
  }

  // Consistency with the arithmetic the definitions force. A failure here
  // means the checker or the input contradicts known results.
  cert.add("contract:minimal-is-strong", !(flags.weak && w == p.v) || flags.strong,
           "weak nesting with w = v is not strong");
  cert.add("contract:minimal-needs-k>=2λ+1", !flags.minimal || p.k >= 2 * p.lambda + 1,
           "minimal nesting with k < 2λ+1");
  if (flags.minimal) {
    bool k_form = p.k == 2 * p.lambda + 1;
    bool v_form = p.replication_integral() && p.v == 2 * p.replication() + 1;
    cert.add("contract:perfect-equivalence", flags.perfect == k_form && k_form == v_form,
             "perfect/k=2λ+1/v=2r+1 disagree");
  }
  cert.add("contract:perfect-residue", !flags.perfect || p.v % (2 * p.k) == 1, "perfect nesting with v ≢ 1 mod 2k");
  return cert;
}

Certificate verify_nesting(const Design& design, const Nesting& nesting, Mode mode) {
  switch (mode) {
    case Mode::weak: return verify_weak_nesting(design, nesting);
    case Mode::strong: return verify_strong_nesting(design, nesting);
    case Mode::minimal: {
      auto cert = verify_strong_nesting(design, nesting);
      cert.add("minimal", nesting.w() == design.params.v,
               "w = " + std::to_string(nesting.w()) + " exceeds v = " + std::to_string(design.params.v));
      cert.classification.minimal = cert.passed();
      return cert;
    }
  }
  return {};
}

}  // namespace nestkit
