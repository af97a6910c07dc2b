#pragma once

#include <string>

#include "eprgames/bimatrix.hpp"
#include "eprgames/gfunction.hpp"
#include "eprgames/lhv.hpp"

namespace eprgames {

// JSON wire formats:
//   game:      {"cells": [[[aA,aB],[bA,bB]], [[cA,cB],[dA,dB]]],
//               "labels": {"rows": ["C","D"], "cols": ["C","D"]}}  (labels optional)
//   gfunction: {"pieces": [{"from":0, "to":0.785, "v_from":0.5, "v_to":0.0,
//               "closed_left":true}, ...]}  (or a builtin address string)
//   measure:   [m1, ..., m16]
// All throw std::invalid_argument with a parse diagnostic on malformed input.

BimatrixGame game_from_json(const std::string& text);
std::string game_to_json(const BimatrixGame& game);

GFunction gfunction_from_json(const std::string& text);
std::string gfunction_to_json(const GFunction& g);

LhvMeasure measure_from_json(const std::string& text);
std::string measure_to_json(const LhvMeasure& measure);

}  // namespace eprgames
