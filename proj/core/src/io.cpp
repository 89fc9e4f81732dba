#include "nestkit/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "nestkit/error.hpp"

namespace nestkit {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::malformed_file, why); }

bool is_row_array(const ojson& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const ojson& x) {
           return x.is_array() || x.is_object();
         });
}

// Top-level keys one per line; lists of rows one row per line; everything
// else compact. Stable across runs, so files diff cleanly.
std::string pretty(const ojson& j) {
  std::string out = "{\n";
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    out += "  " + ojson(it.key()).dump() + ": ";
    const auto& value = it.value();
    if (is_row_array(value)) {
      out += "[\n";
      for (std::size_t r = 0; r < value.size(); ++r)
        out += "    " + value[r].dump() + (r + 1 < value.size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += value.dump();
    }
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

ojson parse(std::string_view text) {
  try {
    return ojson::parse(text.begin(), text.end());
  } catch (const ojson::exception& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
}

int get_int(const ojson& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) malformed(std::string("missing integer \"") + key + "\"");
  return j.at(key).get<int>();
}

std::vector<PointId> id_list(const ojson& j, int bound, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " is not a list");
  std::vector<PointId> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) malformed(std::string(what) + " holds a non-integer");
    auto id = x.get<long long>();
    if (id < 0 || id >= bound) malformed(std::string(what) + " holds point " + std::to_string(id) + " out of range");
    out.push_back(static_cast<PointId>(id));
  }
  return out;
}

ojson labels_json(const std::vector<std::string>& labels) {
  if (labels.empty()) return nullptr;
  return labels;
}

std::vector<std::string> labels_from(const ojson& j, int w) {
  if (!j.contains("labels") || j.at("labels").is_null()) return {};
  const auto& l = j.at("labels");
  if (!l.is_array() || static_cast<int>(l.size()) != w) malformed("\"labels\" must list exactly w labels");
  std::vector<std::string> out;
  for (const auto& x : l) {
    if (!x.is_string()) malformed("label is not a string");
    out.push_back(x.get<std::string>());
  }
  return out;
}

ojson checks_json(const std::vector<Check>& checks) {
  ojson arr = ojson::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  return arr;
}

std::vector<Check> checks_from(const ojson& j) {
  std::vector<Check> out;
  if (!j.is_array()) malformed("\"checks\" is not a list");
  for (const auto& c : j) out.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                                         c.value("witness", std::string{})});
  return out;
}

}  // namespace

std::string save_design(const Design& design, const Nesting* nesting) {
  ojson j;
  j["v"] = design.params.v;
  j["k"] = design.params.k;
  j["lambda"] = design.params.lambda;
  j["w"] = nesting ? nesting->w() : design.v();
  j["labels"] = labels_json(nesting ? nesting->universe.labels : design.universe.labels);
  if (design.groups) {
    ojson g = ojson::array();
    for (const auto& grp : *design.groups) g.push_back(grp);
    j["groups"] = g;
  } else {
    j["groups"] = nullptr;
  }
  ojson blocks = ojson::array();
  for (const auto& b : design.blocks) blocks.push_back(std::vector<PointId>(b.begin(), b.end()));
  j["blocks"] = blocks;
  if (design.resolution) {
    ojson classes = ojson::array();
    for (const auto& c : design.resolution->classes) {
      ojson hole = c.hole ? ojson(*c.hole) : ojson(nullptr);
      classes.push_back({{"hole", hole}, {"blocks", c.blocks}});
    }
    j["classes"] = classes;
  } else {
    j["classes"] = nullptr;
  }
  if (nesting) j["phi"] = nesting->assignment;
  return pretty(j);
}

DesignFile load_design(std::string_view text) {
  ojson j = parse(text);
  if (!j.is_object()) malformed("design file is not an object");
  DesignFile out;
  auto& d = out.design;
  d.params = DesignParams{get_int(j, "v"), get_int(j, "k"), get_int(j, "lambda")};
  const int v = d.params.v;
  if (v < 0) malformed("negative v");
  const int w = j.contains("w") ? get_int(j, "w") : v;
  if (w < v) malformed("w is smaller than v");
  auto labels = labels_from(j, w);
  d.universe = PointUniverse{v, v, labels.empty() ? labels : std::vector<std::string>(labels.begin(), labels.begin() + v)};

  if (!j.contains("blocks") || !j.at("blocks").is_array()) malformed("missing \"blocks\" list");
  try {
    for (const auto& b : j.at("blocks")) d.blocks.emplace_back(id_list(b, v, "block"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::malformed_file) throw;
    malformed(std::string("bad block: ") + e.what());
  }
  if (j.contains("groups") && !j.at("groups").is_null()) {
    std::vector<Group> groups;
    for (const auto& g : j.at("groups")) groups.push_back(id_list(g, v, "group"));
    d.groups = std::move(groups);
  }
  if (j.contains("classes") && !j.at("classes").is_null()) {
    Resolution r;
    for (const auto& c : j.at("classes")) {
      if (!c.is_object() || !c.contains("blocks")) malformed("class without \"blocks\"");
      ResolutionClass rc;
      for (auto idx : id_list(c.at("blocks"), static_cast<int>(d.blocks.size()), "class")) rc.blocks.push_back(idx);
      if (c.contains("hole") && !c.at("hole").is_null()) {
        if (!c.at("hole").is_number_integer()) malformed("class hole is not an integer");
        rc.hole = c.at("hole").get<int>();
      }
      r.classes.push_back(std::move(rc));
    }
    d.resolution = std::move(r);
  }
  if (j.contains("phi")) {
    Nesting n{PointUniverse{w, v, labels}, id_list(j.at("phi"), w, "phi")};
    if (n.assignment.size() != d.blocks.size()) malformed("\"phi\" does not match the block count");
    out.nesting = std::move(n);
  }
  return out;
}

std::string save_nesting(const Nesting& nesting) {
  ojson j;
  j["v"] = nesting.universe.old_count;
  j["w"] = nesting.w();
  j["labels"] = labels_json(nesting.universe.labels);
  j["phi"] = nesting.assignment;
  return pretty(j);
}

Nesting load_nesting(std::string_view text) {
  ojson j = parse(text);
  if (!j.is_object()) malformed("nesting file is not an object");
  const int v = get_int(j, "v"), w = get_int(j, "w");
  if (v < 0 || w < v) malformed("need 0 <= v <= w");
  if (!j.contains("phi")) malformed("missing \"phi\"");
  return Nesting{PointUniverse{w, v, labels_from(j, w)}, id_list(j.at("phi"), w, "phi")};
}

std::string save_certificate(const Certificate& cert) {
  ojson j;
  j["passed"] = cert.passed();
  j["design_hash"] = cert.design_hash;
  j["nesting_hash"] = cert.nesting_hash;
  j["params"] = {{"v", cert.params.v}, {"k", cert.params.k}, {"lambda", cert.params.lambda}};
  j["w"] = cert.w ? ojson(*cert.w) : ojson(nullptr);
  const auto& c = cert.classification;
  j["classification"] = {{"weak", c.weak}, {"strong", c.strong}, {"minimal", c.minimal}, {"perfect", c.perfect}};
  if (cert.bound)
    j["bound"] = {{"value", cert.bound->value}, {"met", cert.bound->met}, {"source", cert.bound->source}};
  else
    j["bound"] = nullptr;
  j["checks"] = checks_json(cert.checks);
  j["provenance"] = cert.provenance;
  return pretty(j);
}

Certificate load_certificate(std::string_view text) {
  ojson j = parse(text);
  try {
    Certificate cert;
    cert.design_hash = j.at("design_hash").get<std::string>();
    cert.nesting_hash = j.at("nesting_hash").get<std::string>();
    const auto& p = j.at("params");
    cert.params = DesignParams{p.at("v").get<int>(), p.at("k").get<int>(), p.at("lambda").get<int>()};
    if (!j.at("w").is_null()) cert.w = j.at("w").get<int>();
    const auto& c = j.at("classification");
    cert.classification = {c.at("weak").get<bool>(), c.at("strong").get<bool>(), c.at("minimal").get<bool>(),
                           c.at("perfect").get<bool>()};
    if (!j.at("bound").is_null()) {
      const auto& b = j.at("bound");
      cert.bound = BoundInfo{b.at("value").get<int>(), b.at("met").get<bool>(), b.at("source").get<std::string>()};
    }
    cert.checks = checks_from(j.at("checks"));
    cert.provenance = j.at("provenance").get<std::vector<std::string>>();
    return cert;
  } catch (const ojson::exception& e) {
    malformed(std::string("bad certificate: ") + e.what());
  }
}

std::string save_colouring(const HarmoniousColouring& colouring, int points, const std::vector<Check>& checks) {
  if (points < 0 || points > static_cast<int>(colouring.colour.size()))
    throw Error(ErrorCode::invalid_input, "point count exceeds the colouring");
  ojson j;
  j["palette"] = colouring.palette;
  j["labels"] = labels_json(colouring.labels);
  j["point_colours"] = std::vector<int>(colouring.colour.begin(), colouring.colour.begin() + points);
  j["block_colours"] = std::vector<int>(colouring.colour.begin() + points, colouring.colour.end());
  j["checks"] = checks_json(checks);
  return pretty(j);
}

HarmoniousColouring load_colouring(std::string_view text) {
  ojson j = parse(text);
  try {
    HarmoniousColouring c;
    c.palette = j.at("palette").get<int>();
    c.labels = labels_from(j, c.palette);
    c.colour = j.at("point_colours").get<std::vector<int>>();
    auto blocks = j.at("block_colours").get<std::vector<int>>();
    c.colour.insert(c.colour.end(), blocks.begin(), blocks.end());
    return c;
  } catch (const ojson::exception& e) {
    malformed(std::string("bad colouring: ") + e.what());
  }
}

std::string certificate_text(const Certificate& cert) {
  std::ostringstream out;
  for (const auto& c : cert.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed && !c.witness.empty()) out << "  -- " << c.witness;
    out << '\n';
  }
  const auto& cl = cert.classification;
  out << "params (" << cert.params.v << "," << cert.params.k << "," << cert.params.lambda << ")";
  if (cert.w) out << "  w=" << *cert.w;
  out << "  class:";
  if (cl.weak) out << " weak";
  if (cl.strong) out << " strong";
  if (cl.minimal) out << " minimal";
  if (cl.perfect) out << " perfect";
  if (!cl.weak && !cl.strong && !cl.minimal && !cl.perfect) out << " -";
  out << '\n';
  if (cert.bound)
    out << "bound " << cert.bound->value << " (" << cert.bound->source << ")" << (cert.bound->met ? " met" : " not met")
        << '\n';
  for (const auto& p : cert.provenance) out << "from " << p << '\n';
  out << (cert.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

void canonicalize(Design& design, Nesting* nesting) {
  const std::size_t b = design.blocks.size();
  std::vector<std::size_t> order(b);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (design.blocks[x] != design.blocks[y]) return design.blocks[x] < design.blocks[y];
    return nesting && nesting->assignment[x] < nesting->assignment[y];
  });
  std::vector<std::size_t> where(b);
  std::vector<Block> blocks;
  std::vector<PointId> phi;
  for (std::size_t i = 0; i < b; ++i) {
    where[order[i]] = i;
    blocks.push_back(design.blocks[order[i]]);
    if (nesting) phi.push_back(nesting->assignment[order[i]]);
  }
  design.blocks = std::move(blocks);
  if (nesting) nesting->assignment = std::move(phi);
  if (design.resolution)
    for (auto& c : design.resolution->classes) {
      for (auto& idx : c.blocks) idx = where[idx];
      std::sort(c.blocks.begin(), c.blocks.end());
    }
}

bool is_canonical(const Design& design) { return std::is_sorted(design.blocks.begin(), design.blocks.end()); }

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path.string());
  out << text;
}

std::vector<fs::path> ingredient_path() {
  std::vector<fs::path> dirs;
  const char* env = std::getenv("NESTKIT_INGREDIENT_PATH");
  if (!env) return dirs;
  std::string_view rest(env);
  while (!rest.empty()) {
    auto colon = rest.find(':');
    auto part = rest.substr(0, colon);
    if (!part.empty()) dirs.emplace_back(std::string(part));
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  return dirs;
}

std::optional<fs::path> find_ingredient_file(const std::string& name) {
  for (const auto& dir : ingredient_path()) {
    auto p = dir / (name + ".json");
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

}  // namespace nestkit
