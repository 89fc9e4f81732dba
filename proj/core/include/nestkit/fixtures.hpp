#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nestkit/types.hpp"
#include "nestkit/verify.hpp"

namespace nestkit {

/// A worked example or a built-in ingredient, exactly as stored on disk.
struct Fixture {
  std::string name;
  std::string title;
  std::string role;  // "example" or "ingredient"
  std::string kind;  // examples: "nested_bibd"; ingredients: kts, gdd, frame, nested_gdd, resolvable_gdd
  Design design;
  std::optional<Nesting> nesting;
  std::optional<Mode> mode;  // claimed nesting mode, if nested
  bool perfect = false;      // claimed perfect (nested GDD ingredients)
  std::optional<int> claimed_w;
};

/// Search order: $NESTKIT_FIXTURE_DIR, the source tree, the install prefix.
std::filesystem::path fixture_dir();

/// Names of every fixture in fixture_dir(), sorted.
std::vector<std::string> fixture_names();

/// Throws UNKNOWN_FIXTURE when there is no such file, MALFORMED_FILE when it
/// does not parse.
Fixture fixture(const std::string& name);
Fixture load_fixture_file(const std::filesystem::path& path);

/// The fixture's own claim, checked from scratch: the nesting in its mode
/// (and w equal to the stated value), or the structure its kind names.
Certificate verify_fixture(const Fixture& fx);

}  // namespace nestkit
