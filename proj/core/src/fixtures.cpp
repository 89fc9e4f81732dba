#include "nestkit/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "nestkit/develop.hpp"
#include "nestkit/error.hpp"

namespace nestkit {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path fixture_dir() {
  if (const char* env = std::getenv("NESTKIT_FIXTURE_DIR"); env && *env) return env;
  fs::path source = NESTKIT_SOURCE_FIXTURE_DIR;
  if (fs::is_directory(source)) return source;
  return NESTKIT_INSTALLED_FIXTURE_DIR;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(fixture_dir(), ec))
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

[[noreturn]] void malformed(const fs::path& path, const std::string& why) {
  throw Error(ErrorCode::malformed_file, path.string() + ": " + why);
}

std::vector<std::string> label_list(const json& j) {
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<int>()));
  return out;
}

/// Develop parts are expanded through develop() and read back as labels.
std::vector<std::vector<std::string>> expand_develop(const json& part, const std::set<std::string>& old,
                                                     int k, bool nested) {
  BaseBlockSystem s;
  s.modulus = part.at("modulus").get<int>();
  s.k = k;
  s.nested = nested;
  std::set<std::string> fixed, families;
  for (const auto& base : part.at("bases")) {
    BaseBlock b;
    for (const auto& e : base) {
      if (e.is_number_integer()) {
        b.entries.push_back(BaseEntry::residue(e.get<int>()));
      } else if (e.is_string()) {
        auto label = e.get<std::string>();
        if (fixed.insert(label).second) s.fixed_points.push_back({label, old.count(label) > 0});
        b.entries.push_back(BaseEntry::fixed(label));
      } else {
        auto prefix = e.at("indexed").get<std::string>();
        if (families.insert(prefix).second)
          s.families.push_back({prefix, old.count(indexed_label(prefix, 0)) > 0});
        b.entries.push_back(BaseEntry::indexed(prefix, e.at("start").get<int>()));
      }
    }
    b.orbit_length = 0;
    s.bases.push_back(std::move(b));
  }
  auto dev = develop(s);
  const auto& u = nested ? dev.nesting.universe : dev.design.universe;
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < dev.design.blocks.size(); ++i) {
    // keep the stored coordinate order: underlying points, then nested point
    std::vector<std::string> labels;
    for (auto p : dev.design.blocks[i]) labels.push_back(u.label(p));
    if (nested) labels.push_back(u.label(dev.nesting.assignment[i]));
    out.push_back(std::move(labels));
  }
  return out;
}

}  // namespace

Fixture load_fixture_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::unknown_fixture, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    malformed(path, e.what());
  }
  try {
    Fixture fx;
    fx.name = j.at("name").get<std::string>();
    fx.title = j.value("title", "");
    fx.role = j.value("role", "example");
    fx.kind = j.value("kind", "nested_bibd");
    const int k = j.at("k").get<int>();
    const int lambda = j.at("lambda").get<int>();
    const bool nested = j.value("nested", true);

    auto old = label_list(j.at("old"));
    auto fresh = j.contains("new") ? label_list(j.at("new")) : std::vector<std::string>{};
    std::map<std::string, PointId> id;
    for (const auto& l : old) id.emplace(l, static_cast<PointId>(id.size()));
    for (const auto& l : fresh) id.emplace(l, static_cast<PointId>(id.size()));
    if (id.size() != old.size() + fresh.size()) malformed(path, "repeated point label");
    std::set<std::string> old_set(old.begin(), old.end());

    std::vector<std::vector<std::string>> rows;
    if (j.contains("develop"))
      for (const auto& part : j.at("develop")) {
        auto expanded = expand_develop(part, old_set, k, nested);
        rows.insert(rows.end(), expanded.begin(), expanded.end());
      }
    if (j.contains("blocks"))
      for (const auto& b : j.at("blocks")) rows.push_back(label_list(b));

    const int v = static_cast<int>(old.size());
    fx.design.params = DesignParams{v, k, lambda};
    fx.design.universe = PointUniverse{v, v, old};
    std::vector<PointId> phi;
    const std::size_t width = nested ? k + 1 : k;
    for (const auto& row : rows) {
      if (row.size() != width) malformed(path, "block of wrong width");
      std::vector<PointId> pts;
      for (std::size_t i = 0; i < row.size(); ++i) {
        auto it = id.find(row[i]);
        if (it == id.end()) malformed(path, "undeclared point label '" + row[i] + "'");
        if (i < static_cast<std::size_t>(k)) {
          if (static_cast<int>(it->second) >= v) malformed(path, "new point '" + row[i] + "' inside a block");
          pts.push_back(it->second);
        } else {
          phi.push_back(it->second);
        }
      }
      fx.design.blocks.emplace_back(std::move(pts));
    }
    if (j.contains("groups") && !j.at("groups").is_null()) {
      std::vector<Group> groups;
      for (const auto& g : j.at("groups")) {
        Group grp;
        for (const auto& l : label_list(g)) {
          auto it = id.find(l);
          if (it == id.end() || static_cast<int>(it->second) >= v) malformed(path, "bad group label '" + l + "'");
          grp.push_back(it->second);
        }
        groups.push_back(std::move(grp));
      }
      fx.design.groups = std::move(groups);
    }
    if (j.contains("classes") && !j.at("classes").is_null()) {
      Resolution r;
      for (const auto& c : j.at("classes")) {
        ResolutionClass rc;
        rc.blocks = c.at("blocks").get<std::vector<std::size_t>>();
        if (!c.at("hole").is_null()) rc.hole = c.at("hole").get<int>();
        r.classes.push_back(std::move(rc));
      }
      fx.design.resolution = std::move(r);
    }
    if (nested) {
      std::vector<std::string> all = old;
      all.insert(all.end(), fresh.begin(), fresh.end());
      fx.nesting = Nesting{PointUniverse{static_cast<int>(all.size()), v, all}, std::move(phi)};
      auto mode = j.value("mode", "weak");
      if (mode == "perfect") {
        fx.perfect = true;
        fx.mode = Mode::minimal;
      } else {
        fx.mode = parse_mode(mode);
      }
    }
    if (j.contains("w")) fx.claimed_w = j.at("w").get<int>();
    return fx;
  } catch (const json::exception& e) {
    malformed(path, e.what());
  }
}

Fixture fixture(const std::string& name) {
  auto path = fixture_dir() / (name + ".json");
  if (!fs::exists(path)) throw Error(ErrorCode::unknown_fixture, "no fixture named '" + name + "'");
  return load_fixture_file(path);
}

Certificate verify_fixture(const Fixture& fx) {
  Certificate cert;
  const auto& d = fx.design;
  if (fx.kind == "nested_gdd") {
    cert = verify_gdd_nesting(d, *fx.nesting);
  } else if (fx.nesting) {
    cert = verify_nesting(d, *fx.nesting, *fx.mode);
  } else if (fx.kind == "kts") {
    cert = verify_bibd(d);
  } else {
    cert = verify_gdd(d);
  }
  if (d.resolution) cert.checks.push_back(verify_resolution(d));
  if (fx.claimed_w) {
    int w = fx.nesting ? fx.nesting->w() : d.v();
    cert.add("claimed-w", w == *fx.claimed_w,
             "w = " + std::to_string(w) + ", stated " + std::to_string(*fx.claimed_w));
  }
  cert.provenance.push_back("fixture " + fx.name);
  return cert;
}

}  // namespace nestkit
