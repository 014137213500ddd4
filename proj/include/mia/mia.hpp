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

#ifndef MIA_MIA_HPP
#define MIA_MIA_HPP

#include "mia/base_scores.hpp"
#include "mia/bavaria.hpp"
#include "mia/dataset.hpp"
#include "mia/diagnostics.hpp"
#include "mia/elsa.hpp"
#include "mia/errors.hpp"
#include "mia/families.hpp"
#include "mia/kv.hpp"
#include "mia/math.hpp"
#include "mia/metrics.hpp"
#include "mia/parallel.hpp"
#include "mia/scores.hpp"
#include "mia/statistic.hpp"
#include "mia/synth.hpp"

#endif  // MIA_MIA_HPP
