#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nestkit/levi.hpp"
#include "nestkit/types.hpp"
#include "nestkit/verify.hpp"

namespace nestkit {

// File formats. All loaders throw MALFORMED_FILE on anything they cannot
// read back into a well-formed object; load(save(x)) == x for every saver.

/// {"v","k","lambda","w","labels","groups","blocks","classes"}, plus "phi"
/// when a nesting rides along (ingredient files carry their nesting this way).
std::string save_design(const Design& design, const Nesting* nesting = nullptr);

struct DesignFile {
  Design design;
  std::optional<Nesting> nesting;  // present iff the file has "phi"
};
DesignFile load_design(std::string_view text);

/// {"v","w","labels","phi"}
std::string save_nesting(const Nesting& nesting);
Nesting load_nesting(std::string_view text);

std::string save_certificate(const Certificate& cert);
Certificate load_certificate(std::string_view text);

/// {"palette","labels","point_colours","block_colours","checks"}; `points` is
/// the number of point vertices at the front of colouring.colour.
std::string save_colouring(const HarmoniousColouring& colouring, int points, const std::vector<Check>& checks = {});
HarmoniousColouring load_colouring(std::string_view text);

/// Human-readable report: one line per check, then the summary.
std::string certificate_text(const Certificate& cert);

/// Sorts blocks lexicographically, carrying the nesting and the class block
/// indices along. Saving the result is byte-reproducible.
void canonicalize(Design& design, Nesting* nesting = nullptr);
bool is_canonical(const Design& design);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Directories listed in $NESTKIT_INGREDIENT_PATH (':'-separated), in order.
std::vector<std::filesystem::path> ingredient_path();
/// First `<dir>/<name>.json` on the ingredient path.
std::optional<std::filesystem::path> find_ingredient_file(const std::string& name);

}  // namespace nestkit
