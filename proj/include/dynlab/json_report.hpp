#pragma once

#include <json.hpp>

#include "dynlab/pseudo_orbit.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/shadowing.hpp"
#include "dynlab/study.hpp"

namespace dynlab {

using Json = nlohmann::json;

/// Lasso as {stem: [labels], cycle: [labels], delta: "p/q"}.
Json lasso_to_json(const System& f, const LassoPseudoOrbit& po);

Json map_to_json(const System& f, const SystemMap& map);

Json verdict_to_json(const System& f, const ShadowingVerdict& verdict);
Json verdict_to_json(const System& f, const CgVerdict& verdict, const Rat& epsilon,
                     const Rat& delta);
Json verdict_to_json(const System& f, const EventualVerdict& verdict, const Rat& epsilon,
                     const Rat& delta);
Json classification_to_json(const System& f, const ClassificationReport& report);
Json study_to_json(const StudyTable& table);

/// Standard report envelope: {operation, inputs, verdict, ..., timing_us}.
Json make_report(const std::string& operation, Json inputs, Json body, long long timing_us);

}  // namespace dynlab
