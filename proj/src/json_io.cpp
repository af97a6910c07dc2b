#include "eprgames/json_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace eprgames {

namespace {

using nlohmann::json;

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument(std::string("malformed JSON for ") + what);
  return j;
}

}  // namespace

BimatrixGame game_from_json(const std::string& text) {
  json j = parse(text, "game");
  if (!j.contains("cells")) throw std::invalid_argument("game JSON needs \"cells\"");
  const json& cells = j["cells"];
  if (!cells.is_array() || cells.size() != 2 || cells[0].size() != 2 ||
      cells[1].size() != 2)
    throw std::invalid_argument("game cells must be a 2x2 array of payoff pairs");
  BimatrixGame::Cells c;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      const json& pair = cells[i][k];
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("each game cell must be [payoffA, payoffB]");
      c[i][k] = {pair[0].get<double>(), pair[1].get<double>()};
    }
  std::array<std::string, 2> rows{"1", "2"}, cols{"1", "2"};
  if (j.contains("labels")) {
    const json& labels = j["labels"];
    if (labels.contains("rows"))
      for (int i = 0; i < 2; ++i) rows[i] = labels["rows"][i].get<std::string>();
    if (labels.contains("cols"))
      for (int i = 0; i < 2; ++i) cols[i] = labels["cols"][i].get<std::string>();
  }
  return BimatrixGame(c, rows, cols);
}

std::string game_to_json(const BimatrixGame& game) {
  json cells = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int k = 0; k < 2; ++k) {
      const PayoffPair& p = game.cell({i, k});
      row.push_back(json::array({p.a, p.b}));
    }
    cells.push_back(row);
  }
  json j{{"cells", cells},
         {"labels",
          {{"rows", {game.row_label(0), game.row_label(1)}},
           {"cols", {game.col_label(0), game.col_label(1)}}}}};
  return j.dump();
}

GFunction gfunction_from_json(const std::string& text) {
  json j = parse(text, "g-function");
  if (!j.contains("pieces"))
    throw std::invalid_argument("g-function JSON needs \"pieces\"");
  std::vector<GSegment> segs;
  for (const json& piece : j["pieces"]) {
    GSegment s;
    s.th0 = piece.at("from").get<double>();
    s.th1 = piece.at("to").get<double>();
    s.v0 = piece.at("v_from").get<double>();
    s.v1 = piece.at("v_to").get<double>();
    s.closed_left = piece.value("closed_left", true);
    segs.push_back(s);
  }
  std::string name = j.value("name", "custom");
  return GFunction::from_segments(std::move(segs), name);
}

std::string gfunction_to_json(const GFunction& g) {
  json pieces = json::array();
  for (const GSegment& s : g.segments())
    pieces.push_back({{"from", s.th0},
                      {"to", s.th1},
                      {"v_from", s.v0},
                      {"v_to", s.v1},
                      {"closed_left", s.closed_left}});
  return json{{"name", g.name()}, {"pieces", pieces}}.dump();
}

LhvMeasure measure_from_json(const std::string& text) {
  json j = parse(text, "measure");
  if (!j.is_array() || j.size() != 16)
    throw std::invalid_argument("a measure is a JSON array of 16 numbers");
  LhvMeasure m;
  for (int i = 0; i < 16; ++i) m.m[i] = j[i].get<double>();
  return m;
}

std::string measure_to_json(const LhvMeasure& measure) {
  return json(measure.m).dump();
}

}  // namespace eprgames
