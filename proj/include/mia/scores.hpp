// Copyright 2026 The mia-llr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIA_SCORES_HPP
#define MIA_SCORES_HPP

#include <string>
#include <vector>

#include "mia/errors.hpp"

namespace mia {

/* One membership score per dataset point, higher meaning more IN-like,
   tagged with the producing method and its configuration. */
struct ScoreVector {
  std::string method;
  std::string config;
  std::vector<std::string> point_ids;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/* Per-point failures collected by scorers that keep going (ELSA). */
struct ScoreFailure {
  std::string point_id;
  std::string message;
};

struct ScoreReport {
  ScoreVector scores;
  std::vector<ScoreFailure> failures;
  std::vector<std::string> notes;
};

}  // namespace mia

#endif  // MIA_SCORES_HPP
