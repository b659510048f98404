#include "cohen/json_io.hpp"

#include "cohen/errors.hpp"

namespace cohen::io {

namespace {

Label label_from_json(const json& j) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    return Label(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return Label(j.get<std::string>());
  throw DomainError("label must be a string or an integer, got " + j.dump());
}

json require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw DomainError(std::string("missing field \"") + key + "\" in " + j.dump());
  }
  return j.at(key);
}

}  // namespace

json to_json(const BitString& bits) { return bits.str(); }

BitString bitstring_from_json(const json& j) {
  if (!j.is_string()) throw DomainError("bit string must be JSON text, got " + j.dump());
  return BitString::parse(j.get<std::string>());
}

json to_json(const IndexSet& set) {
  json out = json::array();
  for (const Label& l : set) out.push_back(l.text());
  return out;
}

IndexSet index_set_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("index set must be an array, got " + j.dump());
  std::vector<Label> labels;
  for (const auto& item : j) labels.push_back(label_from_json(item));
  IndexSet out(labels);
  if (out.size() != j.size()) throw DomainError("index set has repeated labels: " + j.dump());
  return out;
}

json to_json(const MatrixCondition& cond) {
  json columns = json::object();
  for (const auto& [label, bits] : cond.columns()) columns[label.text()] = bits.str();
  return json{{"index_set", to_json(cond.index_set())}, {"columns", columns}};
}

MatrixCondition matrix_from_json(const json& j) {
  IndexSet coords = index_set_from_json(require(j, "index_set"));
  MatrixCondition out(coords);
  if (j.contains("columns")) {
    for (const auto& [key, value] : j.at("columns").items()) {
      out.set_column(Label(key), bitstring_from_json(value));
    }
  }
  return out;
}

json to_json(const FiniteName& name) {
  json entries = json::array();
  for (const auto& [cond, value] : name.entries) {
    entries.push_back(json::array({to_json(cond), value}));
  }
  return json{{"coordinates", to_json(name.coordinates)}, {"entries", entries}};
}

FiniteName name_from_json(const json& j) {
  FiniteName name;
  name.coordinates = index_set_from_json(require(j, "coordinates"));
  for (const auto& entry : require(j, "entries")) {
    if (!entry.is_array() || entry.size() != 2) {
      throw DomainError("name entry must be [condition, value]: " + entry.dump());
    }
    name.entries.emplace_back(matrix_from_json(entry.at(0)), entry.at(1).get<std::uint64_t>());
  }
  return FiniteName(name.coordinates, name.entries);
}

DenseRequirement requirement_from_json(const json& j) {
  std::string kind = require(j, "kind").get<std::string>();
  IndexSet coords;
  if (j.contains("coordinates")) coords = index_set_from_json(j.at("coordinates"));
  if (kind == "MinLength") {
    return min_length(coords, require(j, "n").get<std::size_t>());
  }
  if (kind == "ContainsPattern") {
    return contains_pattern(coords, bitstring_from_json(require(j, "pattern")),
                            label_from_json(require(j, "column")));
  }
  if (kind == "DecidesName") {
    return decides_name(name_from_json(require(j, "name")), require(j, "k").get<std::uint64_t>());
  }
  if (kind == "SplitsColumns") {
    return splits_columns(coords, label_from_json(require(j, "i")),
                          label_from_json(require(j, "j")));
  }
  if (kind == "MarkerChaff") {
    return marker_chaff(coords);
  }
  throw DomainError("unknown requirement kind \"" + kind + "\"");
}

json to_json(const DenseRequirement& d) {
  if (d.serialized.empty()) {
    throw DomainError("requirement " + d.description + " has no serialized form");
  }
  return json::parse(d.serialized);
}

json to_json(const ObstacleFamily& family) {
  json obstacles = json::array();
  for (const IndexSet& b : family.obstacles()) obstacles.push_back(to_json(b));
  return json{{"I", to_json(family.ground())}, {"B", obstacles}};
}

ObstacleFamily family_from_json(const json& j) {
  IndexSet ground = index_set_from_json(require(j, "I"));
  std::vector<IndexSet> obstacles;
  for (const auto& b : require(j, "B")) obstacles.push_back(index_set_from_json(b));
  return ObstacleFamily(ground, obstacles);
}

json to_json(const RequirementSchedule& schedule) {
  json steps = json::array();
  for (const auto& step : schedule.steps) {
    if (const auto* dense = std::get_if<DenseStep>(&step)) {
      steps.push_back(json{{"kind", "dense"},
                           {"A", to_json(dense->coords)},
                           {"requirement", to_json(dense->requirement)}});
    } else if (const auto* obstacle = std::get_if<ObstacleStep>(&step)) {
      steps.push_back(json{{"kind", "obstacle"}, {"B", to_json(obstacle->obstacle)}});
    } else {
      const auto& sep = std::get<SeparationStep>(step);
      steps.push_back(json{{"kind", "separation"},
                           {"A", to_json(sep.a)},
                           {"A2", to_json(sep.a_prime)},
                           {"sigma", to_json(sep.sigma)},
                           {"tau", to_json(sep.tau)}});
    }
  }
  return json{{"steps", steps}};
}

RequirementSchedule schedule_from_json(const json& j) {
  RequirementSchedule schedule;
  for (const auto& step : require(j, "steps")) {
    std::string kind = require(step, "kind").get<std::string>();
    if (kind == "dense") {
      IndexSet coords = index_set_from_json(require(step, "A"));
      json req = require(step, "requirement");
      if (!req.contains("coordinates")) req["coordinates"] = to_json(coords);
      schedule.steps.push_back(DenseStep{coords, requirement_from_json(req)});
    } else if (kind == "obstacle") {
      schedule.steps.push_back(ObstacleStep{index_set_from_json(require(step, "B"))});
    } else if (kind == "separation") {
      schedule.steps.push_back(SeparationStep{
          index_set_from_json(require(step, "A")), index_set_from_json(require(step, "A2")),
          name_from_json(require(step, "sigma")), name_from_json(require(step, "tau"))});
    } else {
      throw DomainError("unknown schedule step kind \"" + kind + "\"");
    }
  }
  return schedule;
}

json to_json(const BlockchainResult& result) {
  json marker_log = json::array();
  for (const auto& [coded_set, records] : result.marker_log) {
    json recs = json::array();
    for (const auto& rec : records) {
      recs.push_back(json{{"marker_row", rec.marker_row},
                          {"bit_row", rec.bit_row},
                          {"payload_index", rec.payload_index},
                          {"bit", rec.bit}});
    }
    marker_log.push_back(json{{"columns", to_json(coded_set)}, {"records", recs}});
  }
  json step_log = json::array();
  for (const auto& step : result.step_log) {
    step_log.push_back(json{{"step_index", step.step_index},
                            {"kind", step.kind},
                            {"detail", step.detail},
                            {"row_begin", step.row_begin},
                            {"row_end", step.row_end},
                            {"active", to_json(step.active)}});
  }
  json separation_log = json::array();
  for (const auto& rec : result.separation_log) {
    separation_log.push_back(json{{"step_index", rec.step_index},
                                  {"separated", rec.separated},
                                  {"outcome", rec.outcome},
                                  {"test_value", rec.test_value}});
  }
  return json{{"matrix", to_json(result.matrix)},
              {"marker_log", marker_log},
              {"step_log", step_log},
              {"separation_log", separation_log}};
}

BlockchainResult blockchain_result_from_json(const json& j) {
  BlockchainResult result;
  result.matrix = matrix_from_json(require(j, "matrix"));
  for (const auto& entry : require(j, "marker_log")) {
    IndexSet coded_set = index_set_from_json(require(entry, "columns"));
    for (const auto& rec : require(entry, "records")) {
      result.marker_log[coded_set].push_back(
          MarkerRecord{require(rec, "marker_row").get<std::size_t>(),
                       require(rec, "bit_row").get<std::size_t>(),
                       require(rec, "payload_index").get<std::size_t>(),
                       require(rec, "bit").get<int>()});
    }
  }
  for (const auto& step : require(j, "step_log")) {
    result.step_log.push_back(StepRecord{require(step, "step_index").get<std::size_t>(),
                                         require(step, "kind").get<std::string>(),
                                         require(step, "detail").get<std::string>(),
                                         require(step, "row_begin").get<std::size_t>(),
                                         require(step, "row_end").get<std::size_t>(),
                                         index_set_from_json(require(step, "active"))});
  }
  if (j.contains("separation_log")) {
    for (const auto& rec : j.at("separation_log")) {
      result.separation_log.push_back(SeparationRecord{
          require(rec, "step_index").get<std::size_t>(), require(rec, "separated").get<bool>(),
          require(rec, "outcome").get<std::string>(),
          require(rec, "test_value").get<std::uint64_t>()});
    }
  }
  return result;
}

json to_json(const SessionRecord& record) {
  return json{{"family", to_json(record.family)},
              {"schedule", to_json(record.schedule)},
              {"payload", record.payload.str()},
              {"result", to_json(record.result)}};
}

SessionRecord session_record_from_json(const json& j) {
  SessionRecord record;
  record.family = family_from_json(require(j, "family"));
  record.schedule = schedule_from_json(require(j, "schedule"));
  record.payload = bitstring_from_json(require(j, "payload"));
  record.result = blockchain_result_from_json(require(j, "result"));
  return record;
}

json to_json(const Tower& tower) {
  json columns = json::array();
  for (const auto& col : tower.columns) columns.push_back(col.str());
  return json{{"columns", columns}, {"provenance", tower.provenance}};
}

Tower tower_from_json(const json& j) {
  Tower tower;
  for (const auto& col : require(j, "columns")) tower.columns.push_back(bitstring_from_json(col));
  if (j.contains("provenance")) tower.provenance = j.at("provenance").get<std::string>();
  return tower;
}

json to_json(const ExactPairResult& result) {
  json diag = json::array();
  for (const auto& outcome : result.diag_log) {
    diag.push_back(json{{"pair_index", outcome.pair_index},
                        {"diagonalized", outcome.diagonalized},
                        {"k", outcome.k},
                        {"decisions", outcome.decisions},
                        {"filled_columns", outcome.filled_columns}});
  }
  auto almost = [](const std::map<Label, std::vector<std::size_t>>& log) {
    json out = json::object();
    for (const auto& [label, positions] : log) out[label.text()] = positions;
    return out;
  };
  return json{{"d0", to_json(result.d0)},
              {"d1", to_json(result.d1)},
              {"diag_log", diag},
              {"almost_d0", almost(result.almost_d0)},
              {"almost_d1", almost(result.almost_d1)}};
}

ExactPairResult exact_pair_result_from_json(const json& j) {
  ExactPairResult result;
  result.d0 = matrix_from_json(require(j, "d0"));
  result.d1 = matrix_from_json(require(j, "d1"));
  for (const auto& outcome : require(j, "diag_log")) {
    result.diag_log.push_back(PairOutcome{require(outcome, "pair_index").get<std::size_t>(),
                                          require(outcome, "diagonalized").get<bool>(),
                                          require(outcome, "k").get<std::uint64_t>(),
                                          require(outcome, "decisions").get<std::string>(),
                                          require(outcome, "filled_columns").get<std::size_t>()});
  }
  auto almost = [](const json& log) {
    std::map<Label, std::vector<std::size_t>> out;
    for (const auto& [key, value] : log.items()) {
      out[Label(key)] = value.get<std::vector<std::size_t>>();
    }
    return out;
  };
  result.almost_d0 = almost(require(j, "almost_d0"));
  result.almost_d1 = almost(require(j, "almost_d1"));
  return result;
}

json to_json(const FinitePoset& poset) {
  json le = json::array();
  for (std::size_t i = 0; i < poset.size(); ++i) {
    for (std::size_t j2 = 0; j2 < poset.size(); ++j2) {
      if (i != j2 && poset.le(i, j2)) {
        le.push_back(json::array({poset.elements()[i], poset.elements()[j2]}));
      }
    }
  }
  return json{{"elements", poset.elements()}, {"le", le}};
}

FinitePoset poset_from_json(const json& j) {
  std::vector<std::string> elements;
  for (const auto& e : require(j, "elements")) elements.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> below;
  if (j.contains("le")) {
    for (const auto& pair : j.at("le")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw DomainError("poset relation entries must be pairs: " + pair.dump());
      }
      below.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
  }
  return FinitePoset(std::move(elements), std::move(below));
}

json to_json(const SatWitness& witness) {
  json assignment = json::array();
  for (const auto& set : witness.assignment) assignment.push_back(to_json(set));
  return json{{"family", to_json(witness.family)}, {"assignment", assignment}};
}

json to_json(const Report& report) {
  return json{{"pass", report.pass()}, {"failures", report.failures}, {"notes", report.notes}};
}

json to_json(const std::vector<std::pair<FiniteName, FiniteName>>& pairs) {
  json out = json::array();
  for (const auto& [sigma, tau] : pairs) {
    out.push_back(json::array({to_json(sigma), to_json(tau)}));
  }
  return out;
}

std::vector<std::pair<FiniteName, FiniteName>> name_pairs_from_json(const json& j) {
  std::vector<std::pair<FiniteName, FiniteName>> pairs;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw DomainError("name pairs must be [sigma, tau] arrays");
    }
    pairs.emplace_back(name_from_json(pair.at(0)), name_from_json(pair.at(1)));
  }
  return pairs;
}

std::vector<DenseRequirement> requirements_from_json(const json& j) {
  std::vector<DenseRequirement> out;
  for (const auto& item : j) out.push_back(requirement_from_json(item));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cohen::io
