#include "dynlab/system_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dynlab/builders.hpp"
#include "dynlab/metric_space.hpp"

namespace dynlab {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

Rat parse_rational_or_throw(const std::string& text, int line) {
  if (auto value = parse_rational(text)) return *value;
  throw ParseError(line, "invalid rational '" + text + "'");
}

}  // namespace

ParsedSystem parse_system_file(const std::string& text) {
  SystemDocument doc;
  bool metric_declared = false;
  bool format_declared = false;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::map<std::string, int> label_lines;  // for duplicate diagnostics
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (keyword == "format") {
      if (format_declared) throw ParseError(line_no, "duplicate format line");
      if (tokens.size() != 2) throw ParseError(line_no, "expected: format <version>");
      try {
        doc.format_version = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "invalid format version '" + tokens[1] + "'");
      }
      if (doc.format_version != 1) {
        throw ParseError(line_no, "unsupported format version " + tokens[1]);
      }
      format_declared = true;
    } else if (keyword == "metric") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected: metric line|circle");
      if (metric_declared) throw ParseError(line_no, "duplicate metric line");
      if (tokens[1] == "line") {
        doc.metric = SystemDocument::MetricKind::Line;
      } else if (tokens[1] == "circle") {
        doc.metric = SystemDocument::MetricKind::Circle;
      } else {
        throw ParseError(line_no, "unknown metric '" + tokens[1] + "'");
      }
      metric_declared = true;
    } else if (keyword == "point") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected: point <label> <rational>");
      if (!doc.dists.empty()) throw ParseError(line_no, "point lines cannot mix with dist lines");
      if (label_lines.count(tokens[1])) throw ParseError(line_no, "duplicate label '" + tokens[1] + "'");
      label_lines[tokens[1]] = line_no;
      doc.points.emplace_back(tokens[1], parse_rational_or_throw(tokens[2], line_no));
    } else if (keyword == "dist") {
      if (tokens.size() != 4) throw ParseError(line_no, "expected: dist <a> <b> <rational>");
      if (!doc.points.empty()) throw ParseError(line_no, "dist lines cannot mix with point lines");
      if (tokens[1] == tokens[2]) {
        throw ParseError(line_no, "diagonal distances are implicit; remove 'dist " + tokens[1] +
                                      " " + tokens[2] + "'");
      }
      doc.dists.emplace_back(tokens[1], tokens[2], parse_rational_or_throw(tokens[3], line_no));
    } else if (keyword == "map") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected: map <from> <to>");
      doc.map_entries.emplace_back(tokens[1], tokens[2]);
    } else {
      throw ParseError(line_no, "unknown directive '" + keyword + "'");
    }
  }

  if (!doc.dists.empty()) doc.metric = SystemDocument::MetricKind::Explicit;
  if (doc.points.empty() && doc.dists.empty()) throw ParseError(line_no, "no points declared");
  if (!doc.points.empty() && !metric_declared) {
    throw ParseError(line_no, "point form requires a 'metric line|circle' directive");
  }

  ParsedSystem parsed{std::move(doc), {}};
  parsed.system = system_from_document(parsed.doc);
  return parsed;
}

System system_from_document(const SystemDocument& doc) {
  FiniteMetricSpace space;

  if (doc.metric != SystemDocument::MetricKind::Explicit) {
    std::vector<Rat> coords;
    coords.reserve(doc.points.size());
    std::vector<std::string> labels;
    for (const auto& [label, coord] : doc.points) {
      labels.push_back(label);
      coords.push_back(coord);
    }
    space = doc.metric == SystemDocument::MetricKind::Circle ? circle_space(coords)
                                                             : line_space(coords);
    space.labels = std::move(labels);  // keep user labels over coordinate strings
  } else {
    // Collect labels in first-mention order.
    std::vector<std::string> labels;
    auto remember = [&](const std::string& label) {
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    };
    for (const auto& [a, b, d] : doc.dists) {
      remember(a);
      remember(b);
    }
    const int n = static_cast<int>(labels.size());
    if (n > max_point_budget()) throw ParseError(0, "space exceeds the configured point budget");
    space.labels = labels;
    space.dist.assign(static_cast<size_t>(n) * n, Rat(0));
    std::set<std::pair<int, int>> filled;
    for (const auto& [a, b, d] : doc.dists) {
      const int i = space.require_index(a);
      const int j = space.require_index(b);
      const auto key = std::minmax(i, j);
      if (!filled.insert(key).second) {
        throw ParseError(0, "duplicate dist entry for (" + a + ", " + b + ")");
      }
      space.at(i, j) = d;
      space.at(j, i) = d;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!filled.count({i, j})) {
          throw ParseError(0, "missing dist entry for (" + space.labels[i] + ", " +
                                  space.labels[j] + ")");
        }
      }
    }
  }

  if (auto violation = validate_metric(space)) {
    throw ParseError(0, "metric violation: " + violation->message);
  }

  SystemMap map;
  map.image.assign(space.size(), -1);
  for (const auto& [from, to] : doc.map_entries) {
    const auto i = space.index_of(from);
    if (!i) throw ParseError(0, "map references unknown label '" + from + "'");
    const auto j = space.index_of(to);
    if (!j) throw ParseError(0, "map references unknown label '" + to + "'");
    if (map.image[*i] >= 0) throw ParseError(0, "duplicate map entry for '" + from + "'");
    map.image[*i] = *j;
  }
  for (int i = 0; i < space.size(); ++i) {
    if (map.image[i] < 0) {
      throw ParseError(0, "map is not total: no image for '" + space.labels[i] + "'");
    }
  }

  return System{std::move(space), std::move(map)};
}

std::string serialize_system(const SystemDocument& doc) {
  std::ostringstream out;
  out << "format " << doc.format_version << "\n";
  switch (doc.metric) {
    case SystemDocument::MetricKind::Line:
      out << "metric line\n";
      break;
    case SystemDocument::MetricKind::Circle:
      out << "metric circle\n";
      break;
    case SystemDocument::MetricKind::Explicit:
      break;
  }
  for (const auto& [label, coord] : doc.points) {
    out << "point " << label << " " << rat_to_string(coord) << "\n";
  }
  for (const auto& [a, b, d] : doc.dists) {
    out << "dist " << a << " " << b << " " << rat_to_string(d) << "\n";
  }
  for (const auto& [from, to] : doc.map_entries) {
    out << "map " << from << " " << to << "\n";
  }
  return out.str();
}

SystemDocument document_from_system(const System& system) {
  SystemDocument doc;
  doc.metric = SystemDocument::MetricKind::Explicit;
  for (int i = 0; i < system.size(); ++i) {
    for (int j = i + 1; j < system.size(); ++j) {
      doc.dists.emplace_back(system.space.labels[i], system.space.labels[j], system.space.at(i, j));
    }
  }
  for (int i = 0; i < system.size(); ++i) {
    doc.map_entries.emplace_back(system.space.labels[i], system.space.labels[system.step(i)]);
  }
  return doc;
}

SystemDocument document_from_line_system(const System& system, bool circle) {
  SystemDocument doc;
  doc.metric = circle ? SystemDocument::MetricKind::Circle : SystemDocument::MetricKind::Line;
  for (int i = 0; i < system.size(); ++i) {
    const auto coord = parse_rational(system.space.labels[i]);
    if (!coord) {
      throw std::invalid_argument("document_from_line_system: label '" + system.space.labels[i] +
                                  "' is not a coordinate");
    }
    doc.points.emplace_back(system.space.labels[i], *coord);
  }
  for (int i = 0; i < system.size(); ++i) {
    doc.map_entries.emplace_back(system.space.labels[i], system.space.labels[system.step(i)]);
  }
  return doc;
}

}  // namespace dynlab
