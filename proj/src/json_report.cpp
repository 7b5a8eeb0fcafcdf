#include "dynlab/json_report.hpp"

namespace dynlab {

namespace {

Json labels_of(const System& f, const std::vector<int>& points) {
  Json out = Json::array();
  for (int p : points) out.push_back(f.space.labels[p]);
  return out;
}

}  // namespace

Json lasso_to_json(const System& f, const LassoPseudoOrbit& po) {
  return Json{{"stem", labels_of(f, po.stem)},
              {"cycle", labels_of(f, po.cycle)},
              {"delta", rat_to_string(po.delta)}};
}

Json map_to_json(const System& f, const SystemMap& map) {
  Json out = Json::object();
  for (int x = 0; x < map.size(); ++x) {
    out[f.space.labels[x]] = f.space.labels[map(x)];
  }
  return out;
}

Json verdict_to_json(const System& f, const ShadowingVerdict& verdict) {
  Json out{{"verdict", verdict.yes ? "yes" : "no"}};
  if (verdict.yes) {
    out["certificate"] = Json{{"reachable_states", verdict.reachable_states}};
  } else {
    out["witness"] = lasso_to_json(f, *verdict.witness);
    out["witness"]["failing_prefix_len"] = *verdict.failing_prefix_len;
  }
  return out;
}

Json verdict_to_json(const System& f, const CgVerdict& verdict, const Rat&, const Rat&) {
  Json out{{"verdict", verdict.yes ? "yes" : "no"}};
  if (verdict.yes) {
    out["certificate"] = Json{{"maps_checked", verdict.maps_checked}};
  } else {
    out["witness"] = Json{{"map", map_to_json(f, *verdict.witness_map)},
                          {"start", f.space.labels[*verdict.witness_start]}};
  }
  return out;
}

Json verdict_to_json(const System& f, const EventualVerdict& verdict, const Rat&, const Rat&) {
  Json out{{"verdict", verdict.yes ? "yes" : "no"}};
  if (verdict.yes) {
    out["certificate"] = Json{{"reachable_states", verdict.reachable_states}};
  } else {
    out["witness"] = lasso_to_json(f, *verdict.witness);
  }
  return out;
}

Json classification_to_json(const System& f, const ClassificationReport& report) {
  Json out{{"is_permutation", report.is_perm},
           {"horizon", report.horizon},
           {"rigidity_defect", rat_to_string(report.defect)}};
  if (report.period) out["period"] = report.period->str();
  Json iterates{{"tail_len", report.iterates.tail_len},
                {"cycle_len", report.iterates.cycle_len.str()},
                {"idempotent_exp", report.iterates.idempotent_exp.str()},
                {"eventual_image", labels_of(f, set_to_indices(report.iterates.eventual_image))}};
  if (report.iterates.limit_constant) {
    iterates["limit_constant"] = f.space.labels[*report.iterates.limit_constant];
  }
  out["iterates"] = iterates;
  Json summary = Json::array();
  for (const auto& row : report.class_summary) {
    summary.push_back(Json{{"delta", rat_to_string(row.delta)},
                           {"classes", row.class_count},
                           {"minimal", row.minimal_count},
                           {"covered_points", row.covered_points}});
  }
  out["chain_classes"] = summary;
  out["theorem_notes"] = report.theorem_notes;
  return out;
}

Json study_to_json(const StudyTable& table) {
  Json rows = Json::array();
  for (const StudyRow& row : table.rows) {
    Json entry{{"family", row.family},
               {"level", row.level},
               {"epsilon", rat_to_string(row.epsilon)},
               {"notes", row.notes}};
    if (row.result) {
      entry["max_delta"] = rat_to_string(row.result->value);
      entry["attained"] = row.result->attained;
      entry["unbounded"] = row.result->unbounded;
    }
    rows.push_back(std::move(entry));
  }
  return Json{{"rows", rows}};
}

Json make_report(const std::string& operation, Json inputs, Json body, long long timing_us) {
  Json out{{"operation", operation}, {"inputs", std::move(inputs)}, {"timing_us", timing_us}};
  out.update(body);
  return out;
}

}  // namespace dynlab
