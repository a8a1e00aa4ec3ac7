#pragma once

#include <string>

#include "nlpol/config.hpp"
#include "nlpol/scenario.hpp"

namespace test {

struct Loaded {
  nlpol::Scenario scenario;
  nlpol::Derived derived;
};

inline Loaded preset(const std::string& name) {
  Loaded p{nlpol::load_preset(name), {}};
  p.derived = nlpol::derive(p.scenario);
  return p;
}

}  // namespace test
