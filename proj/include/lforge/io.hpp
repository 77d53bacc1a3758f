#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lforge/graded_snt.hpp"
#include "lforge/newton.hpp"
#include "lforge/rector_bs3.hpp"
#include "lforge/tower.hpp"

namespace lforge {

inline const std::vector<int> kDefaultPrimes{2, 3, 5};

/// Contents of a structure file (format "lforge-structure/1"); see
/// docs/file-formats.md.
struct StructureFile {
  /// Main presentation; null for files carrying only a KO block.
  PresentationPtr presentation;
  /// Set for "grading": "graded" files; presentation is then its base.
  std::optional<GradedPresentation> graded;
  std::optional<AdamsFamily> adams;
  std::optional<LambdaFamily> lambda;
  std::vector<int> primes = kDefaultPrimes;
  int exponent_bound = kDefaultExponentBound;
  std::optional<KOModelStructure> ko;

  /// The K model reading: integers, one generator of filtration 4 and an
  /// Adams table. Throws MalformedStructure when the shape does not apply.
  KModelStructure k_model() const;
  bool has_k_model_shape() const;
};

enum class FileKind { Structure, Tower };

/// Reads the "format" key. Throws ParseError / InputError.
FileKind detect_file_kind(std::string_view text);

/// JSON syntax errors and polynomial errors are ParseErrors carrying the
/// line and column inside `text`.
StructureFile parse_structure(std::string_view text);
/// Canonical form: fixed key order, canonical polynomials, two-space indent,
/// trailing newline.
std::string print_structure(const StructureFile& file);

/// Structure file of a K model with psi^k for every installed k.
StructureFile structure_from_k_model(const KModelStructure& s, int exponent_bound);
/// Structure file with only a KO block.
StructureFile structure_from_ko(const KOModelStructure& s);

struct TowerFile {
  FiniteGroupTower tower;
  std::string description;
};

TowerFile parse_tower(std::string_view text);
/// Canonical form with explicit multiplication tables and map tables.
std::string print_tower(const TowerFile& file);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace lforge
