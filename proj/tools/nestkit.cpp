// nestkit command-line driver. Exit codes: 0 pass, 1 fail, 2 unsupported or
// missing (case, ingredient, fixture, file), 3 malformed input.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nestkit/bounds.hpp"
#include "nestkit/direct.hpp"
#include "nestkit/error.hpp"
#include "nestkit/fixtures.hpp"
#include "nestkit/io.hpp"
#include "nestkit/levi.hpp"
#include "nestkit/recursive.hpp"
#include "nestkit/search.hpp"
#include "nestkit/verify.hpp"

namespace fs = std::filesystem;
using namespace nestkit;

namespace {

enum Exit { pass = 0, fail = 1, unsupported = 2, malformed = 3 };

struct ExitWith {
  int code;
  std::string message;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::unsupported_case:
    case ErrorCode::missing_ingredient:
    case ErrorCode::unknown_fixture:
    case ErrorCode::v_too_small:
    case ErrorCode::no_cyclic_sts:
    case ErrorCode::infeasible_params:
      return unsupported;
    case ErrorCode::malformed_file:
    case ErrorCode::invalid_input:
    case ErrorCode::residue_out_of_range:
    case ErrorCode::undeclared_label:
    case ErrorCode::orbit_not_closed:
      return malformed;
    default:
      return fail;
  }
}

struct Globals {
  std::uint64_t seed = 0;  // nothing randomized yet; accepted for scripting stability
  int threads = 1;
  std::string format = "text";
  bool json() const { return format == "json"; }
};

std::string load(const std::string& path) {
  if (!fs::exists(path)) throw ExitWith{unsupported, "no such file: " + path};
  return read_text_file(path);
}

/// A design file, with its nesting either inline ("phi") or from a second file.
DesignFile load_pair(const std::string& design_path, const std::string& nesting_path) {
  auto file = load_design(load(design_path));
  if (!nesting_path.empty()) {
    auto n = load_nesting(load(nesting_path));
    // the design file's labels only cover the old points; take the nesting's
    if (n.universe.old_count != file.design.v())
      throw Error(ErrorCode::malformed_file, "nesting has v = " + std::to_string(n.universe.old_count) +
                                                 ", design has v = " + std::to_string(file.design.v()));
    file.nesting = std::move(n);
  }
  return file;
}

void report(const Globals& g, const Certificate& cert) {
  std::cout << (g.json() ? save_certificate(cert) : certificate_text(cert));
}

void write_outputs(const fs::path& dir, Design design, std::optional<Nesting> nesting, const Certificate& cert) {
  canonicalize(design, nesting ? &*nesting : nullptr);
  write_text_file(dir / "design.json", save_design(design));
  if (nesting) write_text_file(dir / "nesting.json", save_nesting(*nesting));
  write_text_file(dir / "certificate.json", save_certificate(cert));
  std::cerr << "wrote " << (dir / "design.json").string() << (nesting ? ", nesting.json" : "")
            << ", certificate.json\n";
}

Certificate with_stated_w(Certificate cert, int w, int stated) {
  cert.add("stated-w", w == stated, "w = " + std::to_string(w) + ", construction states " + std::to_string(stated));
  return cert;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// ---------------------------------------------------------------------------

struct ConstructArgs {
  int v = 0;
  std::string mode = "weak";
  std::string name;
  std::string out = ".";
  bool require_optimal = false;
};

int cmd_construct(const Globals& g, const std::string& what, const ConstructArgs& a) {
  Design design;
  std::optional<Nesting> nesting;
  Certificate cert;
  Mode mode = parse_mode(a.mode);
  if (what == "pairs-weak") {
    auto dev = weak_nest_pairs(a.v);
    mode = Mode::weak;
    cert = with_stated_w(verify_nesting(dev.design, dev.nesting, mode), dev.nesting.w(), ceil_div(5 * a.v - 1, 4));
    cert.provenance.push_back("base-block family for v = " + std::to_string(a.v));
    design = std::move(dev.design);
    nesting = std::move(dev.nesting);
  } else if (what == "pairs-strong") {
    if (a.v % 4 != 1)
      throw Error(ErrorCode::unsupported_case, "strongification is implemented for v ≡ 1 mod 4 only");
    auto sp = strong_nest_pairs_1mod4(a.v);
    mode = Mode::strong;
    cert = with_stated_w(verify_nesting(sp.nested.design, sp.nested.nesting, mode), sp.nested.nesting.w(),
                         (3 * a.v + 1) / 2);
    cert.provenance.push_back("weak family recoloured with " + std::to_string(sp.colours) + " edge colours");
    design = std::move(sp.nested.design);
    nesting = std::move(sp.nested.nesting);
  } else if (what == "k3l2") {
    auto r = pipeline(a.v, mode);
    design = std::move(r.design);
    nesting = std::move(r.nesting);
    cert = std::move(r.certificate);
  } else {
    auto fx = fixture(a.name);
    cert = verify_fixture(fx);
    design = fx.design;
    nesting = fx.nesting;
    if (fx.mode) mode = *fx.mode;
  }
  if (nesting && !cert.bound && design.params.admissible() && mode != Mode::minimal && !design.groups)
    cert = check_optimal(std::move(cert), mode, certified_bounds());
  write_outputs(a.out, design, nesting, cert);
  report(g, cert);
  if (!cert.passed()) return fail;
  if (a.require_optimal && (!cert.bound || !cert.bound->met)) return fail;
  return pass;
}

int cmd_verify(const Globals& g, const std::string& design_path, const std::string& nesting_path,
               const std::string& mode_text, const std::string& cert_path) {
  auto file = load_pair(design_path, nesting_path);
  Certificate cert;
  if (file.nesting) {
    const Mode mode = parse_mode(mode_text);
    cert = file.design.groups ? verify_gdd_nesting(file.design, *file.nesting)
                              : verify_nesting(file.design, *file.nesting, mode);
    if (!file.design.groups && file.design.params.admissible() && mode != Mode::minimal)
      cert = check_optimal(std::move(cert), mode, certified_bounds());
  } else {
    cert = file.design.groups ? verify_gdd(file.design) : verify_bibd(file.design);
    if (file.design.resolution) cert.checks.push_back(verify_resolution(file.design));
  }
  if (!cert_path.empty()) write_text_file(cert_path, save_certificate(cert));
  report(g, cert);
  return cert.passed() ? pass : fail;
}

int cmd_bound(const Globals& g, int v, int k, int lambda, const std::string& mode_text) {
  const Mode mode = parse_mode(mode_text);
  LowerBound b = mode == Mode::strong ? strong_bound(v, k, lambda) : weak_bound(v, k, lambda);
  if (mode == Mode::minimal) b = LowerBound{v, minimal_nesting_feasible(k, lambda) ? "w = v" : "no minimal nesting: k < 2λ+1"};
  for (const auto& c : certified_bounds())
    if (c.mode == mode && c.params == DesignParams{v, k, lambda} && c.value > b.value) b = {c.value, c.source};
  if (g.json())
    std::cout << "{\"v\": " << v << ", \"k\": " << k << ", \"lambda\": " << lambda << ", \"mode\": \"" << mode_text
              << "\", \"bound\": " << b.value << ", \"source\": \"" << b.source << "\"}\n";
  else
    std::cout << b.value << "\n";
  if (mode == Mode::minimal && !minimal_nesting_feasible(k, lambda)) return fail;
  return pass;
}

struct SearchArgs {
  std::string design;
  std::string mode = "weak";
  int cap = 0;
  long timeout_ms = 0;
  std::string out;
  bool no_symmetry_breaking = false;
  bool certify_632 = false;
};

int cmd_search(const Globals& g, const SearchArgs& a) {
  if (a.certify_632) {
    const auto& rep = strong_632_report();
    report(g, rep.certificate);
    return rep.value == 11 ? pass : fail;
  }
  if (a.design.empty()) throw ExitWith{malformed, "search needs a design file"};
  auto file = load_design(load(a.design));
  const Mode mode = parse_mode(a.mode);
  SearchOptions opt;
  opt.threads = g.threads;
  opt.symmetry_breaking = !a.no_symmetry_breaking;
  if (a.timeout_ms > 0) opt.timeout = std::chrono::milliseconds(a.timeout_ms);
  const int cap = a.cap > 0 ? a.cap : file.design.v() + static_cast<int>(file.design.blocks.size());
  auto r = find_min_nesting(file.design, mode, cap, opt);
  const char* status = r.status == SearchStatus::found       ? "FOUND"
                       : r.status == SearchStatus::exhausted ? "EXHAUSTED"
                                                             : "TIMED_OUT";
  if (r.nesting && !a.out.empty()) write_text_file(a.out, save_nesting(*r.nesting));
  if (g.json()) {
    std::cout << "{\"status\": \"" << status << "\", \"cap\": " << cap
              << ", \"w\": " << (r.nesting ? std::to_string(r.nesting->w()) : "null") << ", \"nodes\": " << r.nodes
              << "}\n";
  } else {
    std::cout << status;
    if (r.nesting) std::cout << " w=" << r.nesting->w();
    else std::cout << " cap=" << cap;
    std::cout << " nodes=" << r.nodes << "\n";
    if (r.nesting && a.out.empty()) std::cout << save_nesting(*r.nesting);
  }
  if (r.status == SearchStatus::found) return pass;
  return r.status == SearchStatus::exhausted ? fail : unsupported;
}

int cmd_convert(const Globals& g, const std::string& to, const std::string& design_path, const std::string& other,
                const std::string& out) {
  auto emit = [&](const std::string& text) {
    if (out.empty()) std::cout << text;
    else write_text_file(out, text);
  };
  (void)g;
  if (to == "colouring") {
    auto file = load_pair(design_path, other);
    if (!file.nesting) throw ExitWith{malformed, "need a nesting to convert"};
    auto c = nesting_to_colouring(file.design, *file.nesting);
    auto violation = harmonious_violation(levi_graph(file.design), c);
    std::vector<Check> checks{{"harmonious", !violation, violation.value_or("")},
                              {"exact", is_exact_colouring(file.design, c), ""}};
    emit(save_colouring(c, file.design.v(), checks));
    return pass;
  }
  if (to == "nesting") {
    auto file = load_design(load(design_path));
    if (other.empty()) throw ExitWith{malformed, "need a colouring file"};
    auto c = load_colouring(load(other));
    emit(save_nesting(colouring_to_nesting(file.design, c)));
    return pass;
  }
  // canonical
  auto file = load_pair(design_path, other);
  canonicalize(file.design, file.nesting ? &*file.nesting : nullptr);
  emit(save_design(file.design, file.nesting ? &*file.nesting : nullptr));
  return pass;
}

int cmd_catalog(const Globals& g, const std::string& action, const std::string& name, const std::string& out) {
  if (action == "list") {
    bool all = true;
    if (g.json()) std::cout << "[\n";
    auto names = fixture_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto fx = fixture(names[i]);
      const bool ok = verify_fixture(fx).passed();
      all = all && ok;
      const int w = fx.nesting ? fx.nesting->w() : fx.design.v();
      const std::string mode = fx.perfect ? "perfect" : fx.mode ? std::string(to_string(*fx.mode)) : "-";
      if (g.json()) {
        std::cout << "  {\"name\": \"" << fx.name << "\", \"role\": \"" << fx.role << "\", \"kind\": \"" << fx.kind
                  << "\", \"mode\": \"" << mode << "\", \"w\": " << w << ", \"verified\": " << (ok ? "true" : "false")
                  << "}" << (i + 1 < names.size() ? "," : "") << "\n";
      } else {
        std::cout << (ok ? "PASS " : "FAIL ") << fx.name << "  " << fx.role << "/" << fx.kind << "  mode=" << mode
                  << "  v=" << fx.design.v() << "  w=" << w << "  " << fx.title << "\n";
      }
    }
    if (g.json()) std::cout << "]\n";
    return all ? pass : fail;
  }
  auto fx = fixture(name);
  if (action == "show") {
    std::cout << save_design(fx.design, fx.nesting ? &*fx.nesting : nullptr);
    return pass;
  }
  // export
  auto cert = verify_fixture(fx);
  write_outputs(out, fx.design, fx.nesting, cert);
  return cert.passed() ? pass : fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nestkit: construct, verify, search and certify nestings of BIBDs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the verb
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized tie-breaks (none are randomized at present)");
  app.add_option("--threads", g.threads, "Worker threads for search")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}));

  std::function<int()> run;

  auto* construct = app.add_subcommand("construct", "Build a nested design and write design/nesting/certificate files");
  construct->require_subcommand(1);
  construct->fallthrough();
  ConstructArgs ca;
  for (const char* what : {"pairs-weak", "pairs-strong", "k3l2", "fixture"}) {
    auto* sub = construct->add_subcommand(what);
    std::string kind = what;
    if (kind == "fixture") {
      sub->add_option("--name", ca.name, "Fixture name")->required();
    } else {
      sub->add_option("--v", ca.v, "Number of points")->required();
    }
    if (kind == "k3l2") sub->add_option("--mode", ca.mode)->check(CLI::IsMember({"weak", "strong"}));
    sub->add_option("--out", ca.out, "Output directory");
    sub->add_flag("--require-optimal", ca.require_optimal, "Fail unless w meets the lower bound");
    sub->callback([&, kind] { run = [&, kind] { return cmd_construct(g, kind, ca); }; });
  }

  auto* verify = app.add_subcommand("verify", "Check a design, or a nesting of it, from scratch");
  std::string v_design, v_nesting, v_mode = "weak", v_cert;
  verify->add_option("design", v_design)->required();
  verify->add_option("nesting", v_nesting);
  verify->add_option("--mode", v_mode)->check(CLI::IsMember({"weak", "strong", "minimal"}));
  verify->add_option("--cert", v_cert, "Also write the certificate here");
  verify->callback([&] { run = [&] { return cmd_verify(g, v_design, v_nesting, v_mode, v_cert); }; });

  auto* bound = app.add_subcommand("bound", "Lower bound on w");
  int b_v = 0, b_k = 0, b_lambda = 0;
  std::string b_mode = "weak";
  bound->add_option("--v", b_v)->required();
  bound->add_option("--k", b_k)->required();
  bound->add_option("--lambda", b_lambda)->required();
  bound->add_option("--mode", b_mode)->check(CLI::IsMember({"weak", "strong", "minimal"}));
  bound->callback([&] { run = [&] { return cmd_bound(g, b_v, b_k, b_lambda, b_mode); }; });

  auto* search = app.add_subcommand("search", "Exact search for a nesting with minimum w");
  SearchArgs sa;
  search->add_option("design", sa.design);
  search->add_option("--mode", sa.mode)->check(CLI::IsMember({"weak", "strong", "minimal"}));
  search->add_option("--cap", sa.cap, "Largest w to try (default v + b)");
  search->add_option("--timeout", sa.timeout_ms, "Milliseconds");
  search->add_option("--out", sa.out, "Write the nesting here");
  search->add_flag("--no-symmetry-breaking", sa.no_symmetry_breaking);
  search->add_flag("--certify-632", sa.certify_632, "Recompute the (6,3,2) strong bound");
  search->callback([&] { run = [&] { return cmd_search(g, sa); }; });

  auto* convert = app.add_subcommand("convert", "Nesting <-> harmonious colouring, or canonical form");
  std::string c_to, c_design, c_other, c_out;
  convert->add_option("--to", c_to)->required()->check(CLI::IsMember({"colouring", "nesting", "canonical"}));
  convert->add_option("design", c_design)->required();
  convert->add_option("other", c_other, "Nesting (to colouring/canonical) or colouring (to nesting)");
  convert->add_option("-o,--out", c_out);
  convert->callback([&] { run = [&] { return cmd_convert(g, c_to, c_design, c_other, c_out); }; });

  auto* catalog = app.add_subcommand("catalog", "Built-in fixtures and ingredients");
  std::string k_action, k_name, k_out = ".";
  catalog->add_option("action", k_action)->required()->check(CLI::IsMember({"list", "show", "export"}));
  catalog->add_option("name", k_name);
  catalog->add_option("--out", k_out);
  catalog->callback([&] { run = [&] { return cmd_catalog(g, k_action, k_name, k_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? pass : malformed;
  }
  try {
    return run ? run() : malformed;
  } catch (const ExitWith& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return malformed;
  }
}
