#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dynlab/rational.hpp"
#include "dynlab/system_map.hpp"

namespace dynlab {

/// Parsed form of a .dyn system description. The space is given either by
/// line/circle coordinates (`point <label> <rational>` plus `metric
/// line|circle`) or by an explicit symmetric table (`dist <a> <b>
/// <rational>` for every unordered pair); the map by `map <from> <to>`
/// lines, one per point.
struct SystemDocument {
  enum class MetricKind { Line, Circle, Explicit };

  int format_version = 1;
  MetricKind metric = MetricKind::Line;
  std::vector<std::pair<std::string, Rat>> points;                  // coordinate form
  std::vector<std::tuple<std::string, std::string, Rat>> dists;     // explicit form
  std::vector<std::pair<std::string, std::string>> map_entries;
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

struct ParsedSystem {
  SystemDocument doc;
  System system;
};

/// Parses and fully validates a system description; throws ParseError with
/// a line number on syntax problems and on any metric or map violation.
ParsedSystem parse_system_file(const std::string& text);

/// Deterministic rendering; parse(serialize(doc)) reproduces the document up
/// to line ordering.
std::string serialize_system(const SystemDocument& doc);

/// Explicit-table document for an arbitrary system (used for cones and other
/// non-embedded spaces).
SystemDocument document_from_system(const System& system);

/// Coordinate-form document; labels must be the coordinate strings, as the
/// grid and cantor builders produce.
SystemDocument document_from_line_system(const System& system, bool circle);

System system_from_document(const SystemDocument& doc);

}  // namespace dynlab
