#include "nestkit/recursive.hpp"

#include <algorithm>
#include <set>

#include "nestkit/bounds.hpp"
#include "nestkit/develop.hpp"
#include "nestkit/direct.hpp"
#include "nestkit/error.hpp"
#include "nestkit/fixtures.hpp"
#include "nestkit/io.hpp"
#include "nestkit/pairs.hpp"
#include "nestkit/search.hpp"

namespace nestkit {

namespace fs = std::filesystem;

std::string_view to_string(IngredientKind kind) {
  switch (kind) {
    case IngredientKind::nested_gdd: return "NESTED_GDD";
    case IngredientKind::resolvable_gdd: return "RESOLVABLE_GDD";
    case IngredientKind::frame: return "FRAME";
    case IngredientKind::kts: return "KTS";
    case IngredientKind::nested_bibd: return "NESTED_BIBD";
    case IngredientKind::hanani_ts: return "HANANI_TS";
    case IngredientKind::master_gdd: return "MASTER_GDD";
  }
  return "?";
}

std::string_view to_string(SourceTier tier) {
  switch (tier) {
    case SourceTier::fixture: return "FIXTURE";
    case SourceTier::search: return "SEARCH";
    case SourceTier::file: return "FILE";
  }
  return "?";
}

std::string IngredientRequest::describe() const {
  std::string tiers;
  for (auto t : preference) tiers += (tiers.empty() ? "" : "|") + std::string(to_string(t));
  return std::string(to_string(kind)) + " " + signature + " (" + name + ", " + tiers + ")";
}

namespace {

std::string file_stem(std::string s) {
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

IngredientRequest request(IngredientKind kind, std::string signature, std::string name,
                          std::vector<SourceTier> tiers = {SourceTier::fixture, SourceTier::file}) {
  return IngredientRequest{kind, std::move(signature), std::move(tiers), file_stem(std::move(name))};
}

std::string triple(int v, int k, int lambda) {
  return "(" + std::to_string(v) + "," + std::to_string(k) + "," + std::to_string(lambda) + ")";
}

std::string power(int size, int count) { return std::to_string(size) + "^" + std::to_string(count); }

}  // namespace

IngredientRequest nested_gdd_request(const std::string& type) {
  return request(IngredientKind::nested_gdd, type, "nested-GDD-" + type);
}
IngredientRequest resolvable_gdd_request(const std::string& type) {
  return request(IngredientKind::resolvable_gdd, type, "resolvable-GDD-" + type);
}
IngredientRequest frame_request(const std::string& type) {
  return request(IngredientKind::frame, type, "frame-" + type);
}
IngredientRequest master_gdd_request(const std::string& type) {
  return request(IngredientKind::master_gdd, type, "GDD4-" + type);
}
IngredientRequest kts_request(int v) { return request(IngredientKind::kts, triple(v, 3, 1), "KTS" + std::to_string(v)); }
IngredientRequest nested_sts_request(int v) {
  return request(IngredientKind::nested_bibd, triple(v, 3, 1), "nested-STS-" + std::to_string(v),
                 {SourceTier::fixture, SourceTier::search, SourceTier::file});
}
IngredientRequest hanani_request(int v) {
  return request(IngredientKind::hanani_ts, triple(v, 3, 1), "hanani-TS-" + std::to_string(v));
}
IngredientRequest example_request(const std::string& fixture_name) {
  return request(IngredientKind::nested_bibd, fixture_name, fixture_name, {SourceTier::fixture});
}

// ---------------------------------------------------------------------------
// providers

namespace {

std::string hash_of(const Design& d, const std::optional<Nesting>& n) {
  return fingerprint(d) + (n ? "/" + fingerprint(*n) : "");
}

Check hanani_check(const Design& d) {
  auto fail = [](std::string why) { return Check{"hanani-classes", false, std::move(why)}; };
  const int v = d.v();
  if (v % 6 != 1 || !d.resolution) return fail("needs v ≡ 1 mod 6 and a list of classes");
  const auto& classes = d.resolution->classes;
  if (static_cast<int>(classes.size()) != (v + 1) / 2) return fail("expected " + std::to_string((v + 1) / 2) + " classes");
  std::vector<int> owner(d.blocks.size(), 0);
  int partial = 0;
  for (const auto& c : classes) {
    std::set<PointId> seen;
    for (auto bi : c.blocks) {
      if (bi >= d.blocks.size() || owner[bi]++) return fail("classes do not partition the blocks");
      for (auto p : d.blocks[bi])
        if (!seen.insert(p).second) return fail("a class repeats point " + d.universe.label(p));
    }
    const int size = static_cast<int>(c.blocks.size());
    if (size == (v - 1) / 6) ++partial;
    else if (size != (v - 1) / 3) return fail("class of " + std::to_string(size) + " blocks");
  }
  if (partial != 1) return fail("expected exactly one partial class");
  if (std::count(owner.begin(), owner.end(), 1) != static_cast<long>(owner.size()))
    return fail("some block lies in no class");
  return Check{"hanani-classes", true, {}};
}

/// Checks an ingredient read from a file against what its kind promises.
Certificate check_ingredient(IngredientKind kind, const Design& d, const std::optional<Nesting>& n) {
  Certificate cert;
  switch (kind) {
    case IngredientKind::nested_gdd:
      if (!n) cert.add("nesting-present", false, "file has no \"phi\"");
      else cert = verify_gdd_nesting(d, *n);
      break;
    case IngredientKind::resolvable_gdd:
    case IngredientKind::frame:
      cert = verify_gdd(d);
      cert.checks.push_back(verify_resolution(d));
      break;
    case IngredientKind::master_gdd:
      cert = verify_gdd(d);
      break;
    case IngredientKind::kts:
      cert = verify_bibd(d);
      cert.checks.push_back(verify_resolution(d));
      break;
    case IngredientKind::nested_bibd:
      if (!n) cert.add("nesting-present", false, "file has no \"phi\"");
      else cert = verify_weak_nesting(d, *n);
      break;
    case IngredientKind::hanani_ts:
      cert = verify_bibd(d);
      cert.checks.push_back(hanani_check(d));
      break;
  }
  return cert;
}

std::optional<Ingredient> from_search(const IngredientRequest& req) {
  if (req.kind != IngredientKind::nested_bibd || req.name.rfind("nested-STS-", 0) != 0) return std::nullopt;
  const int v = std::stoi(req.name.substr(11));
  BaseBlockSystem sts;
  try {
    sts = cyclic_sts(v);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto nested = nest_cyclic_base(sts, Mode::minimal);
  if (!nested) return std::nullopt;
  auto dev = develop(*nested);
  Ingredient ing{req, dev.design, dev.nesting, "search nest_cyclic_base on a cyclic STS(" + std::to_string(v) + ")", {}};
  ing.hash = hash_of(ing.design, ing.nesting);
  return ing;
}

}  // namespace

std::optional<Ingredient> Providers::find(const IngredientRequest& req) const {
  for (auto tier : req.preference) {
    if (tier == SourceTier::fixture && use_fixtures) {
      if (!fs::exists(fixture_dir() / (req.name + ".json"))) continue;
      auto fx = fixture(req.name);
      if (!verify_fixture(fx).passed()) continue;
      Ingredient ing{req, fx.design, fx.nesting, "fixture " + fx.name, {}};
      ing.hash = hash_of(ing.design, ing.nesting);
      return ing;
    }
    if (tier == SourceTier::search && use_search) {
      if (auto ing = from_search(req)) return ing;
    }
    if (tier == SourceTier::file && use_files) {
      auto dirs = extra_dirs;
      auto env = ingredient_path();
      dirs.insert(dirs.end(), env.begin(), env.end());
      for (const auto& dir : dirs) {
        auto path = dir / (req.name + ".json");
        if (!fs::exists(path)) continue;
        auto file = load_design(read_text_file(path));
        if (!check_ingredient(req.kind, file.design, file.nesting).passed()) continue;
        Ingredient ing{req, std::move(file.design), std::move(file.nesting), "file " + path.string(), {}};
        ing.hash = hash_of(ing.design, ing.nesting);
        return ing;
      }
    }
  }
  return std::nullopt;
}

Ingredient Providers::require(const IngredientRequest& req) const {
  if (auto ing = find(req)) return std::move(*ing);
  throw Error(ErrorCode::missing_ingredient, req.describe());
}

// ---------------------------------------------------------------------------
// composition

int ClassAssignment::load(int point) const {
  return static_cast<int>(std::count(point_of_class.begin(), point_of_class.end(), point));
}

ClassAssignment assign_classes(const Resolution& resolution, int cap, const std::vector<int>& dedicated_holes) {
  if (cap < 1) throw Error(ErrorCode::invalid_input, "class cap must be positive");
  ClassAssignment out;
  out.cap = cap;
  out.point_of_class.assign(resolution.classes.size(), -1);
  auto dedicated = [&](const ResolutionClass& c) {
    return c.hole && std::find(dedicated_holes.begin(), dedicated_holes.end(), *c.hole) != dedicated_holes.end();
  };
  auto fill_pool = [&](auto&& member) {
    std::vector<std::size_t> members;
    for (std::size_t c = 0; c < resolution.classes.size(); ++c)
      if (member(resolution.classes[c])) members.push_back(c);
    const int pool = static_cast<int>((members.size() + cap - 1) / cap);
    for (std::size_t j = 0; j < members.size(); ++j) out.point_of_class[members[j]] = out.points + static_cast<int>(j) % pool;
    std::vector<int> ids(pool);
    for (int p = 0; p < pool; ++p) ids[p] = out.points + p;
    out.points += pool;
    return ids;
  };
  fill_pool([&](const ResolutionClass& c) { return !dedicated(c); });
  std::vector<int> holes = dedicated_holes;
  std::sort(holes.begin(), holes.end());
  holes.erase(std::unique(holes.begin(), holes.end()), holes.end());
  for (int h : holes) out.hole_points[h] = fill_pool([&](const ResolutionClass& c) { return c.hole && *c.hole == h; });
  return out;
}

namespace {

struct BlowUp {
  std::vector<int> group_of;  // filler point -> filler group index
  std::vector<int> ordinal;   // filler point -> position inside its group
};

BlowUp filler_layout(const Design& filler, int weight, int k) {
  if (!filler.groups || static_cast<int>(filler.groups->size()) != k)
    throw Error(ErrorCode::invalid_input, "filler needs " + std::to_string(k) + " groups");
  BlowUp b{std::vector<int>(filler.v(), -1), std::vector<int>(filler.v(), -1)};
  for (std::size_t g = 0; g < filler.groups->size(); ++g) {
    auto grp = (*filler.groups)[g];
    if (static_cast<int>(grp.size()) != weight) throw Error(ErrorCode::invalid_input, "filler group of wrong size");
    std::sort(grp.begin(), grp.end());
    for (std::size_t c = 0; c < grp.size(); ++c) {
      b.group_of[grp[c]] = static_cast<int>(g);
      b.ordinal[grp[c]] = static_cast<int>(c);
    }
  }
  return b;
}

std::vector<Group> blown_groups(const Design& master, int weight) {
  if (!master.groups) throw Error(ErrorCode::invalid_input, "master design has no groups");
  std::vector<Group> out;
  for (const auto& g : *master.groups) {
    Group grp;
    for (auto x : g)
      for (int c = 0; c < weight; ++c) grp.push_back(x * weight + c);
    std::sort(grp.begin(), grp.end());
    out.push_back(std::move(grp));
  }
  return out;
}

int master_k(const Design& master) {
  if (master.blocks.empty()) return master.params.k;
  return static_cast<int>(master.blocks.front().size());
}

}  // namespace

NestedGdd wfc_weight(const Design& master, int weight, const Providers& providers) {
  const int k = master_k(master);
  auto groups = blown_groups(master, weight);
  const int n = master.v() * weight;
  NestedGdd out;
  out.design.universe = PointUniverse::plain(n);
  out.design.groups = groups;
  out.nesting.universe = PointUniverse::plain(n);
  if (master.blocks.empty()) {
    out.design.params = DesignParams{n, 3, 1};
    return out;
  }
  auto filler = providers.require(nested_gdd_request(power(weight, k)));
  if (!filler.nesting) throw Error(ErrorCode::invalid_input, "nested GDD filler carries no nesting");
  out.design.params = DesignParams{n, filler.design.params.k, filler.design.params.lambda};
  const auto layout = filler_layout(filler.design, weight, k);
  for (const auto& mb : master.blocks) {
    auto to_out = [&](PointId p) -> PointId {
      if (!filler.nesting->universe.is_old(p)) throw Error(ErrorCode::invalid_input, "filler nests with a new point");
      return mb[layout.group_of[p]] * weight + layout.ordinal[p];
    };
    for (std::size_t i = 0; i < filler.design.blocks.size(); ++i) {
      std::vector<PointId> pts;
      for (auto p : filler.design.blocks[i]) pts.push_back(to_out(p));
      out.design.blocks.emplace_back(std::move(pts));
      out.nesting.assignment.push_back(to_out(filler.nesting->assignment[i]));
    }
  }
  if (!verify_gdd_nesting(out.design, out.nesting).passed())
    throw Error(ErrorCode::contract_violation, "weighted construction did not give a nested GDD");
  return out;
}

Design frame_construction(const Design& master, int weight, const Providers& providers) {
  const int k = master_k(master);
  auto groups = blown_groups(master, weight);
  const int n = master.v() * weight;
  Design out;
  out.universe = PointUniverse::plain(n);
  out.groups = groups;
  out.params = DesignParams{n, 3, 1};
  if (master.blocks.empty()) {
    out.resolution = Resolution{};
    return out;
  }
  auto filler = providers.require(frame_request(power(weight, k)));
  const auto& fd = filler.design;
  if (!fd.resolution) throw Error(ErrorCode::invalid_input, "frame filler has no holey classes");
  out.params = DesignParams{n, fd.params.k, fd.params.lambda};
  const auto layout = filler_layout(fd, weight, k);

  // ordinal of each filler class among the classes sharing its hole
  std::vector<int> class_ordinal;
  std::vector<int> per_hole(k, 0);
  for (const auto& c : fd.resolution->classes) {
    if (!c.hole) throw Error(ErrorCode::invalid_input, "frame filler class without a hole");
    class_ordinal.push_back(per_hole[*c.hole]++);
  }
  const int per_point = weight / 2;
  std::vector<int> hole_of_point(master.v(), -1);
  for (std::size_t g = 0; g < master.groups->size(); ++g)
    for (auto x : (*master.groups)[g]) hole_of_point[x] = static_cast<int>(g);

  Resolution res;
  for (int x = 0; x < master.v(); ++x)
    for (int q = 0; q < per_point; ++q) res.classes.push_back(ResolutionClass{{}, hole_of_point[x]});
  for (const auto& mb : master.blocks) {
    const std::size_t first = out.blocks.size();
    for (const auto& b : fd.blocks) {
      std::vector<PointId> pts;
      for (auto p : b) pts.push_back(mb[layout.group_of[p]] * weight + layout.ordinal[p]);
      out.blocks.emplace_back(std::move(pts));
    }
    for (std::size_t c = 0; c < fd.resolution->classes.size(); ++c) {
      const auto& fc = fd.resolution->classes[c];
      const PointId x = mb[*fc.hole];
      auto& target = res.classes[x * per_point + class_ordinal[c]];
      for (auto bi : fc.blocks) target.blocks.push_back(first + bi);
    }
  }
  out.resolution = std::move(res);
  auto cert = verify_gdd(out);
  cert.checks.push_back(verify_resolution(out));
  if (!cert.passed()) throw Error(ErrorCode::contract_violation, "frame construction did not give a frame");
  return out;
}

void fill_groups(Design& design, Nesting& nesting, const std::vector<Group>& groups,
                 const std::vector<GroupFiller>& fillers, Mode mode) {
  if (groups.size() != fillers.size()) throw Error(ErrorCode::invalid_input, "one filler per group");
  const int w = nesting.w();
  const int cap = design.params.lambda + 1;
  const bool strong = mode != Mode::weak;
  auto augmented = augment(design, nesting);
  PairCountTable counts = pair_counts(augmented.blocks, w);
  PairCountTable nested(w);
  for (std::size_t i = 0; i < design.blocks.size(); ++i)
    for (auto x : design.blocks[i]) nested.add(x, nesting.assignment[i]);

  auto name = [&](PointId p) { return nesting.universe.label(p); };
  std::vector<Block> blocks;
  std::vector<PointId> phi;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& f = fillers[g];
    const int fv = f.design.v();
    if (static_cast<int>(groups[g].size()) != fv)
      throw Error(ErrorCode::invalid_input, f.name + " has " + std::to_string(fv) + " points, group " +
                                                std::to_string(g) + " has " + std::to_string(groups[g].size()));
    if (static_cast<int>(f.new_points.size()) != f.nesting.w() - fv)
      throw Error(ErrorCode::invalid_input, f.name + " needs " + std::to_string(f.nesting.w() - fv) + " new points");
    auto map = [&](PointId p) { return static_cast<int>(p) < fv ? groups[g][p] : f.new_points[p - fv]; };
    for (std::size_t i = 0; i < f.design.blocks.size(); ++i) {
      std::vector<PointId> pts;
      for (auto p : f.design.blocks[i]) pts.push_back(map(p));
      Block b(std::move(pts));
      const PointId q = map(f.nesting.assignment[i]);
      if (b.contains(q)) throw Error(ErrorCode::illegal_reuse, name(q) + " lands inside its own block in group " + std::to_string(g));
      for (auto x : b) {
        if (counts.get(x, q) + 1 > cap)
          throw Error(ErrorCode::illegal_reuse, "point " + name(q) + " in group " + std::to_string(g) + ": pair {" +
                                                    name(x) + "," + name(q) + "} would exceed " + std::to_string(cap));
        if (strong && nested.get(x, q) > 0)
          throw Error(ErrorCode::illegal_reuse, "point " + name(q) + " in group " + std::to_string(g) +
                                                    ": nested pair {" + name(x) + "," + name(q) + "} repeats");
        counts.add(x, q);
        nested.add(x, q);
      }
      for (std::size_t a = 0; a < b.size(); ++a)
        for (std::size_t c = a + 1; c < b.size(); ++c) counts.add(b[a], b[c]);
      blocks.push_back(std::move(b));
      phi.push_back(q);
    }
  }
  design.blocks.insert(design.blocks.end(), blocks.begin(), blocks.end());
  nesting.assignment.insert(nesting.assignment.end(), phi.begin(), phi.end());
}

// ---------------------------------------------------------------------------
// pipelines

namespace {

enum class Route {
  fixture,
  cyclic,             // nested STS + cyclic STS, one new point per orbit
  hanani,             // nested STS + Hanani system, one new point per class
  kts,                // KTS as resolvable GDD 3^n + nested GDD, doubled groups
  resolvable6,        // nested GDD 6^t + resolvable GDD 6^t, (6,3,2) fillers
  resolvable12,       // WFC nested GDD 12^t + resolvable GDD 12^t, (12,3,2) fillers
  frame,              // WFC nested GDD + frame from one 4-GDD master
};

struct Recipe {
  Route route = Route::fixture;
  std::string fixture;
  int t = 0;
  std::string master_type;
};

Recipe recipe_for(int v, Mode mode, PipelinePlan& plan) {
  if (v % 3 == 2) throw Error(ErrorCode::infeasible_params, "no (v,3,2)-BIBD unless v ≡ 0 or 1 mod 3");
  auto unsupported = [&](const std::string& why) {
    throw Error(ErrorCode::unsupported_case, "v = " + std::to_string(v) + " " + std::string(to_string(mode)) + ": " + why);
  };
  if (mode == Mode::minimal) unsupported("a (v,3,2)-BIBD has no minimal nesting (k < 2λ+1)");
  if (v < 4) unsupported("below the smallest construction");
  const bool weak = mode == Mode::weak;
  Recipe r;
  auto from_fixture = [&](const std::string& name, int w) {
    r.route = Route::fixture;
    r.fixture = name;
    plan.construction = "fixture " + name;
    plan.expected_w = w;
    plan.ingredients = {example_request(name)};
    return r;
  };

  if (v % 6 == 1) {
    if (weak) {
      r.route = Route::cyclic;
      plan.construction = "nested STS(v) plus a cyclic STS(v) with one new point per orbit";
      plan.expected_w = (7 * v - 1) / 6;
      plan.ingredients = {nested_sts_request(v)};
      return r;
    }
    if (v == 7) return from_fixture("E7strong", 11);
    if (v == 13) unsupported("no construction for v = 13");
    r.route = Route::hanani;
    plan.construction = "nested STS(v) plus a Hanani triple system with one new point per class";
    plan.expected_w = (3 * v + 1) / 2;
    plan.ingredients = {nested_sts_request(v), hanani_request(v)};
    return r;
  }
  if (v % 6 == 3) {
    const int t = (v - 3) / 6;
    if (v == 9) return weak ? from_fixture("E9", 11) : from_fixture("E9strong", 14);
    r.route = Route::kts;
    r.t = t;
    plan.construction = "KTS(v) as a resolvable GDD 3^" + std::to_string(2 * t + 1) + " plus a nested GDD, doubled groups";
    plan.expected_w = weak ? 7 * t + 4 : 9 * t + 5;
    plan.ingredients = {kts_request(v), nested_gdd_request(power(3, 2 * t + 1))};
    return r;
  }
  if (v % 6 == 0) {
    const int t = v / 6;
    if (v == 6) return weak ? from_fixture("E6", 7) : from_fixture("strongE6", 11);
    if (v == 12) return weak ? from_fixture("E12", 14) : from_fixture("E12strong", 18);
    if (!weak && v % 12 == 0 && v / 12 >= 5) {
      const int u = v / 12;
      r.route = Route::resolvable12;
      r.t = u;
      plan.construction = "weighted 4-GDD 6^" + std::to_string(u) + " nested GDD plus resolvable GDD 12^" +
                          std::to_string(u) + ", (12,3,2) fillers";
      plan.expected_w = 18 * u;
      plan.ingredients = {master_gdd_request(power(6, u)), nested_gdd_request("2^4"),
                          resolvable_gdd_request(power(12, u)), example_request("E12strong")};
      return r;
    }
    if (t == 3 || t == 6) unsupported("t = " + std::to_string(t) + " is excluded");
    r.route = Route::resolvable6;
    r.t = t;
    plan.construction = "nested GDD 6^" + std::to_string(t) + " plus resolvable GDD 6^" + std::to_string(t) +
                        ", (6,3,2) fillers";
    plan.expected_w = weak ? 7 * t : 9 * t + 2;
    plan.ingredients = {nested_gdd_request(power(6, t)), resolvable_gdd_request(power(6, t)),
                        example_request(weak ? "E6" : "strongE6")};
    return r;
  }
  // v ≡ 4 mod 6
  if (v % 12 == 4) {
    const int t = (v - 4) / 12;
    if (v == 4) return weak ? from_fixture("E4", 5) : from_fixture("E4strong", 7);
    if (t < 2) unsupported("t = 1 is excluded");
    r.route = Route::frame;
    r.t = t;
    r.master_type = power(2, 3 * t + 1);
    plan.expected_w = weak ? 14 * t + 6 : 18 * t + 7;
    plan.ingredients = {master_gdd_request(r.master_type), nested_gdd_request("2^4"), frame_request("2^4"),
                        example_request(weak ? "E4" : "E4strong")};
  } else {
    const int t = (v - 10) / 12;
    if (v == 10) return weak ? from_fixture("E10", 12) : from_fixture("E10strong", 16);
    if (t < 2) unsupported("t = 1 is excluded");
    r.route = Route::frame;
    r.t = t;
    r.master_type = power(2, 3 * t) + " 5^1";
    plan.expected_w = weak ? 14 * t + 13 : 18 * t + 16;
    plan.ingredients = {master_gdd_request(r.master_type), nested_gdd_request("2^4"), frame_request("2^4"),
                        example_request(weak ? "E4" : "E4strong"), example_request(weak ? "E10" : "E10strong")};
  }
  plan.construction = "weighted 4-GDD " + r.master_type + ": nested GDD plus frame, groups filled";
  return r;
}

/// The design under construction: old points 0..v-1, new points appended.
struct Assembly {
  Design design;
  Nesting nesting;

  explicit Assembly(int v) {
    design.params = DesignParams{v, 3, 2};
    for (int p = 0; p < v; ++p) design.universe.labels.push_back(std::to_string(p));
    design.universe.size = design.universe.old_count = v;
    nesting.universe = design.universe;
  }

  PointId add_point(const std::string& label) {
    nesting.universe.labels.push_back(label);
    return static_cast<PointId>(nesting.universe.size++);
  }
  std::vector<PointId> add_points(int count, const std::string& prefix, int first = 1) {
    std::vector<PointId> out;
    for (int i = 0; i < count; ++i) out.push_back(add_point(prefix + std::to_string(first + i)));
    return out;
  }
  void add(const Block& b, PointId phi) {
    design.blocks.push_back(b);
    nesting.assignment.push_back(phi);
  }
  /// Blocks of a (possibly nested) ingredient on the same old points.
  void add_nested(const Design& d, const Nesting& n) {
    for (std::size_t i = 0; i < d.blocks.size(); ++i) add(d.blocks[i], n.assignment[i]);
  }
  /// Resolution blocks, each nested by its class's point.
  void add_classes(const Design& d, const ClassAssignment& a, const std::vector<PointId>& points) {
    for (std::size_t c = 0; c < d.resolution->classes.size(); ++c)
      for (auto bi : d.resolution->classes[c].blocks) add(d.blocks[bi], points[a.point_of_class[c]]);
  }
};

/// Relabels `d` so its groups become `target` (group i onto group i, points
/// in sorted order).
Design align_groups(const Design& d, const std::vector<Group>& target) {
  if (!d.groups || d.groups->size() != target.size())
    throw Error(ErrorCode::invalid_input, "cannot align groups: different group counts");
  std::vector<PointId> map(d.v());
  for (std::size_t g = 0; g < target.size(); ++g) {
    auto from = (*d.groups)[g], to = target[g];
    if (from.size() != to.size()) throw Error(ErrorCode::invalid_input, "cannot align groups: different sizes");
    std::sort(from.begin(), from.end());
    std::sort(to.begin(), to.end());
    for (std::size_t i = 0; i < from.size(); ++i) map[from[i]] = to[i];
  }
  Design out = d;
  out.universe = PointUniverse::plain(d.v());
  out.groups = target;
  for (auto& b : out.blocks) {
    std::vector<PointId> pts;
    for (auto p : b) pts.push_back(map[p]);
    b = Block(std::move(pts));
  }
  return out;
}

/// A KTS with its first parallel class turned into the groups `target`.
Design kts_as_gdd(const Design& kts, const std::vector<Group>& target) {
  const auto& classes = kts.resolution->classes;
  const auto& first = classes.front().blocks;
  if (first.size() != target.size()) throw Error(ErrorCode::invalid_input, "KTS class does not match the group count");
  Design with_groups = kts;
  std::vector<Group> groups;
  for (auto bi : first) groups.emplace_back(kts.blocks[bi].begin(), kts.blocks[bi].end());
  with_groups.groups = groups;
  Design aligned = align_groups(with_groups, target);

  Design out;
  out.params = DesignParams{kts.v(), 3, 1};
  out.universe = PointUniverse::plain(kts.v());
  out.groups = target;
  Resolution res;
  for (std::size_t c = 1; c < classes.size(); ++c) {
    ResolutionClass rc;
    for (auto bi : classes[c].blocks) {
      rc.blocks.push_back(out.blocks.size());
      out.blocks.push_back(aligned.blocks[bi]);
    }
    res.classes.push_back(std::move(rc));
  }
  out.resolution = std::move(res);
  return out;
}

GroupFiller filler_from(const Ingredient& ing, std::vector<PointId> new_points) {
  return GroupFiller{ing.design, *ing.nesting, std::move(new_points), ing.request.name};
}

/// Two copies of a 3-point group as blocks: nested by one point (weak) or
/// by two different points (strong).
GroupFiller doubled_group(std::vector<PointId> new_points) {
  GroupFiller f;
  f.name = "doubled group";
  f.design.params = DesignParams{3, 3, 2};
  f.design.universe = PointUniverse::plain(3);
  f.design.blocks = {Block{0, 1, 2}, Block{0, 1, 2}};
  const int extra = static_cast<int>(new_points.size());
  f.nesting.universe = PointUniverse{3 + extra, 3, {}};
  f.nesting.assignment = {3, static_cast<PointId>(extra == 1 ? 3 : 4)};
  f.new_points = std::move(new_points);
  return f;
}

}  // namespace

PipelinePlan plan_pipeline(int v, Mode mode) {
  PipelinePlan plan;
  plan.v = v;
  plan.mode = mode;
  recipe_for(v, mode, plan);
  return plan;
}

std::vector<IngredientRequest> unmet_ingredients(const PipelinePlan& plan, const Providers& providers) {
  std::vector<IngredientRequest> out;
  for (const auto& req : plan.ingredients)
    if (!providers.find(req)) out.push_back(req);
  return out;
}

PipelineResult pipeline(int v, Mode mode, const Providers& providers) {
  PipelineResult result;
  result.plan.v = v;
  result.plan.mode = mode;
  const Recipe recipe = recipe_for(v, mode, result.plan);
  const auto& plan = result.plan;
  if (auto unmet = unmet_ingredients(plan, providers); !unmet.empty()) {
    std::string list;
    for (const auto& req : unmet) list += (list.empty() ? "" : "; ") + req.describe();
    throw Error(ErrorCode::missing_ingredient, list);
  }
  const bool weak = mode == Mode::weak;
  std::vector<std::string> provenance;
  auto need = [&](const IngredientRequest& req) {
    auto ing = providers.require(req);
    provenance.push_back(req.name + " <- " + ing.source + " [" + ing.hash + "]");
    return ing;
  };

  Assembly a(v);
  switch (recipe.route) {
    case Route::fixture: {
      auto ing = need(plan.ingredients.front());
      result.design = ing.design;
      result.nesting = *ing.nesting;
      break;
    }
    case Route::cyclic: {
      auto sts = need(nested_sts_request(v));
      a.add_nested(sts.design, *sts.nesting);
      auto system = cyclic_sts(v);
      auto cyc = develop(system);
      auto orbits = nest_cyclic_orbits(system);
      auto points = a.add_points(orbit_count(system), "∞");
      for (std::size_t i = 0; i < cyc.design.blocks.size(); ++i)
        a.add(cyc.design.blocks[i], points[orbits.assignment[i] - v]);
      provenance.push_back("cyclic STS(" + std::to_string(v) + ") from difference triples, " +
                           std::to_string(orbit_count(system)) + " orbits");
      break;
    }
    case Route::hanani: {
      auto sts = need(nested_sts_request(v));
      a.add_nested(sts.design, *sts.nesting);
      auto hts = need(hanani_request(v));
      auto assign = assign_classes(*hts.design.resolution, 1);
      a.add_classes(hts.design, assign, a.add_points(assign.points, "∞"));
      break;
    }
    case Route::kts: {
      auto gdd = need(plan.ingredients[1]);
      auto kts = need(plan.ingredients[0]);
      a.add_nested(gdd.design, *gdd.nesting);
      auto resolvable = kts_as_gdd(kts.design, *gdd.design.groups);
      auto assign = assign_classes(*resolvable.resolution, weak ? 3 : 1);
      a.add_classes(resolvable, assign, a.add_points(assign.points, "∞"));
      std::vector<PointId> shared{a.add_point("∞")};
      if (!weak) shared.push_back(a.add_point("∞′"));
      std::vector<GroupFiller> fillers(gdd.design.groups->size(), doubled_group(shared));
      fill_groups(a.design, a.nesting, *gdd.design.groups, fillers, mode);
      break;
    }
    case Route::resolvable6: {
      auto gdd = need(plan.ingredients[0]);
      auto res = need(plan.ingredients[1]);
      auto filler = need(plan.ingredients[2]);
      const auto& groups = *gdd.design.groups;
      a.add_nested(gdd.design, *gdd.nesting);
      auto resolvable = align_groups(res.design, groups);
      auto assign = assign_classes(*resolvable.resolution, weak ? 3 : 1);
      a.add_classes(resolvable, assign, a.add_points(assign.points, "∞"));
      auto shared = weak ? std::vector<PointId>{a.add_point("∞")} : a.add_points(5, "α");
      std::vector<GroupFiller> fillers(groups.size(), filler_from(filler, shared));
      fill_groups(a.design, a.nesting, groups, fillers, mode);
      break;
    }
    case Route::resolvable12: {
      auto master = need(plan.ingredients[0]);
      auto nested = wfc_weight(master.design, 2, providers);
      provenance.push_back("nested GDD " + group_type(*nested.design.groups) + " by weighting " + master.request.name);
      auto res = need(plan.ingredients[2]);
      auto filler = need(plan.ingredients[3]);
      const auto& groups = *nested.design.groups;
      a.add_nested(nested.design, nested.nesting);
      auto resolvable = align_groups(res.design, groups);
      auto assign = assign_classes(*resolvable.resolution, 1);
      a.add_classes(resolvable, assign, a.add_points(assign.points, "∞"));
      auto shared = a.add_points(6, "α");
      std::vector<GroupFiller> fillers(groups.size(), filler_from(filler, shared));
      fill_groups(a.design, a.nesting, groups, fillers, mode);
      break;
    }
    case Route::frame: {
      auto master = need(plan.ingredients[0]);
      auto nested = wfc_weight(master.design, 2, providers);
      auto frame = frame_construction(master.design, 2, providers);
      provenance.push_back("nested GDD and frame " + group_type(*frame.groups) + " by weighting " + master.request.name);
      need(plan.ingredients[1]);
      need(plan.ingredients[2]);
      const auto& groups = *frame.groups;
      if (groups != *nested.design.groups) throw Error(ErrorCode::contract_violation, "frame and nested GDD groups differ");
      a.add_nested(nested.design, nested.nesting);

      // the big group (size 10) keeps its own class points so they can be reused inside it
      int big = -1;
      for (std::size_t g = 0; g < groups.size(); ++g)
        if (groups[g].size() == 10) big = static_cast<int>(g);
      std::vector<int> dedicated;
      if (weak) {
        if (big >= 0) dedicated.push_back(big);
      } else {
        for (std::size_t g = 0; g < groups.size(); ++g) dedicated.push_back(static_cast<int>(g));
      }
      auto assign = assign_classes(*frame.resolution, weak ? 3 : 1, dedicated);
      auto points = a.add_points(assign.points, "∞");
      a.add_classes(frame, assign, points);
      const PointId inf = a.add_point("∞");

      auto small = need(plan.ingredients[3]);
      std::optional<Ingredient> large;
      if (big >= 0) large = need(plan.ingredients[4]);
      std::vector<GroupFiller> fillers;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<PointId> reuse;
        if (auto it = assign.hole_points.find(static_cast<int>(g)); it != assign.hole_points.end())
          for (int p : it->second) reuse.push_back(points[p]);
        if (static_cast<int>(g) == big) {
          if (!weak) reuse.push_back(inf);
          fillers.push_back(filler_from(*large, reuse));
        } else {
          reuse.push_back(inf);
          fillers.push_back(filler_from(small, reuse));
        }
      }
      fill_groups(a.design, a.nesting, groups, fillers, mode);
      break;
    }
  }
  if (recipe.route != Route::fixture) {
    result.design = std::move(a.design);
    result.nesting = std::move(a.nesting);
  }

  auto cert = verify_nesting(result.design, result.nesting, mode);
  cert.add("stated-w", result.nesting.w() == plan.expected_w,
           "w = " + std::to_string(result.nesting.w()) + ", construction states " + std::to_string(plan.expected_w));
  auto certified = certified_bounds();
  cert = check_optimal(std::move(cert), mode, certified);
  cert.provenance.push_back(plan.construction);
  cert.provenance.insert(cert.provenance.end(), provenance.begin(), provenance.end());
  result.certificate = std::move(cert);
  return result;
}

}  // namespace nestkit
