#pragma once

#include <functional>
#include <string>
#include <vector>

namespace logiclab::acceptance {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria();

}  // namespace logiclab::acceptance
