#include "dynlab/dot_export.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dynlab {

namespace {

std::string quoted(const std::string& label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<int> label_order(const System& f) {
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return f.space.labels[a] < f.space.labels[b]; });
  return order;
}

void emit_edges(std::ostringstream& out, const System& f, const StepGraph& graph,
                const std::vector<int>& order) {
  for (int x : order) {
    std::vector<int> targets = set_to_indices(graph.successors[x]);
    std::sort(targets.begin(), targets.end(),
              [&](int a, int b) { return f.space.labels[a] < f.space.labels[b]; });
    for (int y : targets) {
      out << "  " << quoted(f.space.labels[x]) << " -> " << quoted(f.space.labels[y]) << ";\n";
    }
  }
}

}  // namespace

std::string export_dot(const System& f, const StepGraph& graph) {
  std::ostringstream out;
  out << "digraph step_graph {\n";
  out << "  label=" << quoted("delta = " + rat_to_string(graph.delta)) << ";\n";
  const auto order = label_order(f);
  for (int x : order) out << "  " << quoted(f.space.labels[x]) << ";\n";
  emit_edges(out, f, graph, order);
  out << "}\n";
  return out.str();
}

std::string export_dot(const System& f, const StepGraph& graph,
                       const std::vector<ChainClass>& classes) {
  std::ostringstream out;
  out << "digraph chain_classes {\n";
  out << "  label=" << quoted("delta = " + rat_to_string(graph.delta)) << ";\n";
  const auto order = label_order(f);

  std::vector<int> class_of(f.size(), -1);
  for (size_t c = 0; c < classes.size(); ++c) {
    for (int p : classes[c].members) class_of[p] = static_cast<int>(c);
  }
  // Deterministic cluster order: by least label inside the class.
  std::vector<size_t> class_order(classes.size());
  std::iota(class_order.begin(), class_order.end(), 0);
  std::sort(class_order.begin(), class_order.end(), [&](size_t a, size_t b) {
    const auto least = [&](const ChainClass& cls) {
      std::string best = f.space.labels[cls.members.front()];
      for (int p : cls.members) best = std::min(best, f.space.labels[p]);
      return best;
    };
    return least(classes[a]) < least(classes[b]);
  });
  int cluster_id = 0;
  for (size_t c : class_order) {
    out << "  subgraph cluster_" << cluster_id++ << " {\n";
    out << "    label=" << quoted((classes[c].minimal ? "minimal class" : "chain class")) << ";\n";
    std::vector<int> members = classes[c].members;
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return f.space.labels[a] < f.space.labels[b]; });
    for (int p : members) out << "    " << quoted(f.space.labels[p]) << ";\n";
    out << "  }\n";
  }
  for (int x : order) {
    if (class_of[x] < 0) out << "  " << quoted(f.space.labels[x]) << ";\n";
  }
  emit_edges(out, f, graph, order);
  out << "}\n";
  return out.str();
}

}  // namespace dynlab
