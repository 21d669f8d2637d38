/*
 * Copyright 2026 The Blindfold Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "blindfold/table.hpp"

namespace blindfold {

/// Deterministic synthetic tables with planted dependencies. Copy-of
/// corrupts the source symmetrically (probability eps of a uniformly
/// random *other* label), so Bayes-optimal accuracy has a closed form.
struct SynthColumnSpec {
  enum class Kind { UniformCategorical, CopyOf, FunctionOf, LognormalNumeric };

  std::string name;
  Kind kind = Kind::UniformCategorical;
  int labels = 0;                              // uniform-categorical
  std::string source;                          // copy-of
  std::vector<std::string> sources;            // function-of
  std::map<std::string, std::string> mapping;  // function-of: "a|b" -> label
  double noise = 0.0;                          // copy-of / function-of
  double mu = 0.0, sigma = 1.0;                // lognormal-numeric
};

struct SynthSpec {
  std::size_t rows = 0;
  std::uint64_t seed = 0;
  std::vector<SynthColumnSpec> columns;

  static SynthSpec from_json(const nlohmann::json& j);
  static SynthSpec load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// Generate the table. Columns draw from independent pcg32 streams keyed
/// by (spec seed, column name), in declaration order; sources must be
/// declared before their dependents.
Table generate(const SynthSpec& spec);

/// Bayes-optimal accuracy (percent) implied by the spec, for targets with
/// a closed form: a copy-of target is 100*(1-eps) while its source is
/// visible and chance (100/L) once the source is in `blinded`; an
/// uninformed uniform-categorical target is chance. Errors otherwise.
double oracle_bayes_accuracy(const SynthSpec& spec, std::string_view target,
                             const std::vector<std::string>& blinded = {});

}  // namespace blindfold
