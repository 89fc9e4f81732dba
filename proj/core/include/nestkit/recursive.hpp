#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nestkit/types.hpp"
#include "nestkit/verify.hpp"

namespace nestkit {

enum class IngredientKind { nested_gdd, resolvable_gdd, frame, kts, nested_bibd, hanani_ts, master_gdd };
enum class SourceTier { fixture, search, file };

std::string_view to_string(IngredientKind kind);
std::string_view to_string(SourceTier tier);

/// What a construction needs, by kind and type signature. The name doubles
/// as the fixture name and the file stem looked up on the ingredient path:
/// "nested-GDD-3^5", "resolvable-GDD-6^4", "frame-2^4", "GDD4-2^7", "KTS15",
/// "nested-STS-13", "hanani-TS-19", or an example name such as "E4strong".
struct IngredientRequest {
  IngredientKind kind = IngredientKind::nested_gdd;
  std::string signature;  // group type such as "3^5", or "(v,k,λ)"
  std::vector<SourceTier> preference{SourceTier::fixture, SourceTier::search, SourceTier::file};
  std::string name;

  std::string describe() const;
};

IngredientRequest nested_gdd_request(const std::string& type);
IngredientRequest resolvable_gdd_request(const std::string& type);
IngredientRequest frame_request(const std::string& type);
IngredientRequest master_gdd_request(const std::string& type);  // block size 4
IngredientRequest kts_request(int v);
IngredientRequest nested_sts_request(int v);
IngredientRequest hanani_request(int v);
IngredientRequest example_request(const std::string& fixture_name);

struct Ingredient {
  IngredientRequest request;
  Design design;
  std::optional<Nesting> nesting;
  std::string source;  // "fixture E4", "search nest_cyclic_base", "file /path"
  std::string hash;    // fingerprint of the design (and nesting)
};

/// The three-tier chain: built-in fixtures, then bounded search, then files
/// on the ingredient path. Every ingredient is verified before it is handed
/// out; one that fails verification counts as unavailable.
class Providers {
 public:
  bool use_fixtures = true;
  bool use_search = true;
  bool use_files = true;
  std::vector<std::filesystem::path> extra_dirs;  // searched before $NESTKIT_INGREDIENT_PATH

  std::optional<Ingredient> find(const IngredientRequest& request) const;
  /// Throws MISSING_INGREDIENT naming the request.
  Ingredient require(const IngredientRequest& request) const;
};

/// Per class: which new point (0-based, local to the assignment) nests it.
struct ClassAssignment {
  std::vector<int> point_of_class;
  int points = 0;
  int cap = 1;
  std::map<int, std::vector<int>> hole_points;  // points used only by classes of that hole

  int load(int point) const;
};

/// Round-robin over classes in order, ceil(n/cap) points. Classes whose hole
/// is listed in `dedicated_holes` draw from a separate pool per hole, so those
/// points meet nothing outside that hole's complement and stay reusable
/// inside its filling.
ClassAssignment assign_classes(const Resolution& resolution, int cap, const std::vector<int>& dedicated_holes = {});

struct NestedGdd {
  Design design;  // with groups
  Nesting nesting;
};

/// Blows every master point up into `weight` points (x -> x*weight + c) and
/// places a copy of the nested 3-GDD weight^k on every master block. Throws
/// MISSING_INGREDIENT when no such filler is available.
NestedGdd wfc_weight(const Design& master, int weight, const Providers& providers);

/// Same blow-up with 3-frames weight^k as fillers; master point x collects
/// the filler classes whose hole is x's copy, giving one holey class per
/// master point (and filler class ordinal).
Design frame_construction(const Design& master, int weight, const Providers& providers);

/// A nested design placed on one group: filler old point j -> group[j],
/// filler new point n -> new_points[n - filler v].
struct GroupFiller {
  Design design;
  Nesting nesting;
  std::vector<PointId> new_points;
  std::string name;
};

/// Appends every filler's blocks and nested points. Before anything is added
/// each filler is checked against what is already there: in weak mode no
/// augmented pair may pass λ+1, in strong mode no nested pair may repeat.
/// Throws ILLEGAL_REUSE naming the point and the pair.
void fill_groups(Design& design, Nesting& nesting, const std::vector<Group>& groups,
                 const std::vector<GroupFiller>& fillers, Mode mode);

struct PipelinePlan {
  int v = 0;
  Mode mode = Mode::weak;
  std::string construction;
  int expected_w = 0;
  std::vector<IngredientRequest> ingredients;
};

/// The residue-appropriate construction for a (v,3,2)-BIBD and everything it
/// needs. Throws INFEASIBLE_PARAMS (v ≢ 0,1 mod 3) or UNSUPPORTED_CASE.
PipelinePlan plan_pipeline(int v, Mode mode);

/// Requests in the plan that no tier can satisfy.
std::vector<IngredientRequest> unmet_ingredients(const PipelinePlan& plan, const Providers& providers);

struct PipelineResult {
  PipelinePlan plan;
  Design design;
  Nesting nesting;
  Certificate certificate;  // verification, stated w, bound, ingredient provenance
};

/// Throws MISSING_INGREDIENT (listing every unmet request) before doing any
/// work; the result's certificate is checked from scratch.
PipelineResult pipeline(int v, Mode mode, const Providers& providers = {});

}  // namespace nestkit
