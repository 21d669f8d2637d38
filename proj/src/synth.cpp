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
#include "blindfold/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "blindfold/rng.hpp"

namespace blindfold {

namespace {

std::string kind_name(SynthColumnSpec::Kind k) {
  switch (k) {
    case SynthColumnSpec::Kind::UniformCategorical: return "uniform-categorical";
    case SynthColumnSpec::Kind::CopyOf: return "copy-of";
    case SynthColumnSpec::Kind::FunctionOf: return "function-of";
    case SynthColumnSpec::Kind::LognormalNumeric: return "lognormal-numeric";
  }
  return "?";
}

SynthColumnSpec::Kind kind_from_name(std::string_view s) {
  if (s == "uniform-categorical") return SynthColumnSpec::Kind::UniformCategorical;
  if (s == "copy-of") return SynthColumnSpec::Kind::CopyOf;
  if (s == "function-of") return SynthColumnSpec::Kind::FunctionOf;
  if (s == "lognormal-numeric") return SynthColumnSpec::Kind::LognormalNumeric;
  throw ConfigError("unknown synth generator '" + std::string(s) + "'");
}

}  // namespace

SynthSpec SynthSpec::from_json(const nlohmann::json& j) {
  SynthSpec spec;
  spec.rows = j.at("rows").get<std::size_t>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& jc : j.at("columns")) {
    SynthColumnSpec c;
    c.name = jc.at("name").get<std::string>();
    c.kind = kind_from_name(jc.at("generator").get<std::string>());
    switch (c.kind) {
      case SynthColumnSpec::Kind::UniformCategorical:
        c.labels = jc.at("labels").get<int>();
        break;
      case SynthColumnSpec::Kind::CopyOf:
        c.source = jc.at("source").get<std::string>();
        c.noise = jc.value("noise", 0.0);
        break;
      case SynthColumnSpec::Kind::FunctionOf:
        c.sources = jc.at("sources").get<std::vector<std::string>>();
        for (const auto& [k, v] : jc.at("mapping").items())
          c.mapping[k] = v.get<std::string>();
        c.noise = jc.value("noise", 0.0);
        break;
      case SynthColumnSpec::Kind::LognormalNumeric:
        c.mu = jc.at("mu").get<double>();
        c.sigma = jc.at("sigma").get<double>();
        break;
    }
    spec.columns.push_back(std::move(c));
  }
  return spec;
}

SynthSpec SynthSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read synth spec '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("synth spec '" + path.string() + "': " + e.what());
  }
  try {
    return from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("synth spec '" + path.string() + "': " + e.what());
  }
}

nlohmann::json SynthSpec::to_json() const {
  nlohmann::json j;
  j["rows"] = rows;
  j["seed"] = seed;
  j["columns"] = nlohmann::json::array();
  for (const auto& c : columns) {
    nlohmann::json jc;
    jc["name"] = c.name;
    jc["generator"] = kind_name(c.kind);
    switch (c.kind) {
      case SynthColumnSpec::Kind::UniformCategorical:
        jc["labels"] = c.labels;
        break;
      case SynthColumnSpec::Kind::CopyOf:
        jc["source"] = c.source;
        jc["noise"] = c.noise;
        break;
      case SynthColumnSpec::Kind::FunctionOf:
        jc["sources"] = c.sources;
        jc["mapping"] = c.mapping;
        jc["noise"] = c.noise;
        break;
      case SynthColumnSpec::Kind::LognormalNumeric:
        jc["mu"] = c.mu;
        jc["sigma"] = c.sigma;
        break;
    }
    j["columns"].push_back(std::move(jc));
  }
  return j;
}

namespace {

struct GeneratedCats {
  std::vector<std::string> label_universe;
  std::vector<std::int32_t> values;  // index into label_universe
};

std::int32_t corrupt(std::int32_t original, std::int32_t universe, Pcg32& rng) {
  std::int32_t other = static_cast<std::int32_t>(rng.uniform_below(universe - 1));
  return other >= original ? other + 1 : other;
}

}  // namespace

Table generate(const SynthSpec& spec) {
  if (spec.columns.empty()) throw ConfigError("synth spec has no columns");
  std::unordered_set<std::string> seen_names;
  std::unordered_map<std::string, GeneratedCats> cat_columns;

  Table table;
  table.name = "synthetic";

  for (const auto& cs : spec.columns) {
    if (!seen_names.insert(cs.name).second)
      throw ConfigError("synth spec: duplicate column '" + cs.name + "'");
    if (cs.noise < 0.0 || cs.noise >= 1.0)
      throw ConfigError("synth spec: noise for '" + cs.name + "' must be in [0, 1)");

    Pcg32 rng(spec.seed, fnv1a64(cs.name));

    switch (cs.kind) {
      case SynthColumnSpec::Kind::UniformCategorical: {
        if (cs.labels < 1) throw ConfigError("synth spec: '" + cs.name + "' needs labels >= 1");
        GeneratedCats g;
        for (int l = 0; l < cs.labels; ++l) g.label_universe.push_back("v" + std::to_string(l));
        g.values.reserve(spec.rows);
        for (std::size_t r = 0; r < spec.rows; ++r)
          g.values.push_back(static_cast<std::int32_t>(
              rng.uniform_below(static_cast<std::uint32_t>(cs.labels))));
        cat_columns.emplace(cs.name, std::move(g));
        break;
      }
      case SynthColumnSpec::Kind::CopyOf: {
        auto it = cat_columns.find(cs.source);
        if (it == cat_columns.end())
          throw ConfigError("synth spec: '" + cs.name + "' copies unknown or later column '" +
                            cs.source + "'");
        const GeneratedCats& src = it->second;
        auto universe = static_cast<std::int32_t>(src.label_universe.size());
        if (universe < 2)
          throw ConfigError("synth spec: copy-of source '" + cs.source +
                            "' needs at least 2 labels");
        GeneratedCats g;
        g.label_universe = src.label_universe;
        g.values.reserve(spec.rows);
        for (std::size_t r = 0; r < spec.rows; ++r) {
          std::int32_t v = src.values[r];
          if (cs.noise > 0.0 && rng.next_double() < cs.noise) v = corrupt(v, universe, rng);
          g.values.push_back(v);
        }
        cat_columns.emplace(cs.name, std::move(g));
        break;
      }
      case SynthColumnSpec::Kind::FunctionOf: {
        std::vector<const GeneratedCats*> srcs;
        for (const auto& s : cs.sources) {
          auto it = cat_columns.find(s);
          if (it == cat_columns.end())
            throw ConfigError("synth spec: '" + cs.name + "' uses unknown or later column '" +
                              s + "'");
          srcs.push_back(&it->second);
        }
        if (cs.mapping.empty())
          throw ConfigError("synth spec: '" + cs.name + "' has an empty mapping");
        GeneratedCats g;
        std::unordered_map<std::string, std::int32_t> out_index;
        for (const auto& [key, value] : cs.mapping) {
          if (out_index.emplace(value, static_cast<std::int32_t>(g.label_universe.size()))
                  .second)
            g.label_universe.push_back(value);
        }
        auto universe = static_cast<std::int32_t>(g.label_universe.size());
        g.values.reserve(spec.rows);
        for (std::size_t r = 0; r < spec.rows; ++r) {
          std::string key;
          for (std::size_t s = 0; s < srcs.size(); ++s) {
            if (s) key.push_back('|');
            key += srcs[s]->label_universe[srcs[s]->values[r]];
          }
          auto it = cs.mapping.find(key);
          if (it == cs.mapping.end()) {
            it = cs.mapping.find("default");
            if (it == cs.mapping.end())
              throw DataError("synth spec: '" + cs.name + "' mapping lacks key '" + key +
                              "' and no default");
          }
          std::int32_t v = out_index.at(it->second);
          if (cs.noise > 0.0 && universe > 1 && rng.next_double() < cs.noise)
            v = corrupt(v, universe, rng);
          g.values.push_back(v);
        }
        cat_columns.emplace(cs.name, std::move(g));
        break;
      }
      case SynthColumnSpec::Kind::LognormalNumeric: {
        if (!(cs.sigma >= 0.0))
          throw ConfigError("synth spec: '" + cs.name + "' needs sigma >= 0");
        Column col = Column::numeric(cs.name);
        col.numbers.reserve(spec.rows);
        for (std::size_t r = 0; r < spec.rows; ++r)
          col.push_number(std::exp(cs.mu + cs.sigma * rng.next_normal()));
        table.add_column(std::move(col));
        continue;
      }
    }

    // Materialize the categorical column just generated.
    const GeneratedCats& g = cat_columns.at(cs.name);
    Column col = Column::categorical(cs.name);
    for (const auto& label : g.label_universe) col.intern(label);
    col.codes.assign(g.values.begin(), g.values.end());
    table.add_column(std::move(col));
  }
  return table;
}

double oracle_bayes_accuracy(const SynthSpec& spec, std::string_view target,
                             const std::vector<std::string>& blinded) {
  const SynthColumnSpec* tspec = nullptr;
  for (const auto& c : spec.columns)
    if (c.name == target) tspec = &c;
  if (!tspec) throw DataError("oracle: unknown target '" + std::string(target) + "'");

  auto references = [&](const SynthColumnSpec& c, std::string_view name) {
    if (c.kind == SynthColumnSpec::Kind::CopyOf) return c.source == name;
    if (c.kind == SynthColumnSpec::Kind::FunctionOf)
      return std::find(c.sources.begin(), c.sources.end(), name) != c.sources.end();
    return false;
  };
  auto is_blinded = [&](const std::string& name) {
    return std::find(blinded.begin(), blinded.end(), name) != blinded.end();
  };

  if (tspec->kind == SynthColumnSpec::Kind::UniformCategorical) {
    for (const auto& c : spec.columns) {
      if (c.name != target && references(c, target) && !is_blinded(c.name))
        throw DataError("oracle: '" + std::string(target) +
                        "' has visible dependents; no closed form");
    }
    return 100.0 / static_cast<double>(tspec->labels);
  }

  if (tspec->kind == SynthColumnSpec::Kind::CopyOf) {
    const SynthColumnSpec* source = nullptr;
    for (const auto& c : spec.columns)
      if (c.name == tspec->source) source = &c;
    if (!source || source->kind != SynthColumnSpec::Kind::UniformCategorical)
      throw DataError("oracle: copy-of target needs a uniform-categorical source");
    auto labels = static_cast<double>(source->labels);
    if (tspec->noise >= (labels - 1.0) / labels)
      throw DataError("oracle: noise too high for the copy rule to stay Bayes-optimal");
    for (const auto& c : spec.columns) {
      if (c.name == target || c.name == source->name) continue;
      if ((references(c, target) || references(c, source->name)) && !is_blinded(c.name))
        throw DataError("oracle: extra visible dependents of '" + std::string(target) +
                        "' or its source; no closed form");
    }
    if (is_blinded(source->name)) return 100.0 / labels;
    return 100.0 * (1.0 - tspec->noise);
  }

  throw DataError("oracle: no closed form for generator '" + kind_name(tspec->kind) + "'");
}

}  // namespace blindfold
