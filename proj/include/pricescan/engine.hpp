//------------------------------------------------------------------------------
//
//   Copyright 2026 pricescan authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pricescan/config.hpp"
#include "pricescan/prompts.hpp"

namespace pricescan {

struct FilterVerdict {
  std::string group_id;
  bool keep = true;
  std::string access_control;
  std::string economic_intent;
  std::string mitigation;
  std::string raw_response;
  bool undetermined = false;  // set when a response stayed unparseable
};

struct SimulationVerdict {
  std::string group_id;
  bool vulnerable = false;
  std::vector<std::string> vulnerable_functions;
  std::vector<std::string> vulnerable_paths;
  std::string attack_explanation;
  std::string price_source;
  std::string attack_scenario;
  std::string cash_out;
  std::string defense_check;
  std::string raw_response;
  bool undetermined = false;
};

struct EngineConfig {
  enum class Mode { Remote, Offline };
  Mode mode = Mode::Offline;
  std::string endpoint;     // full URL of a chat-completion style endpoint
  std::string model;
  std::string api_key_env;  // name of the environment variable holding the key
  int timeout_secs = 60;
  int max_retries = 2;
  int batch_size = 8;       // filter instances concatenated per request
  int concurrency = 1;      // in-flight requests ceiling
  double temperature = 0.0;

  void validate() const;  // throws EngineError on bad remote config
};

struct EngineError : std::runtime_error {
  explicit EngineError(const std::string &what)
      : std::runtime_error("engine-unreachable: " + what) {}
};
struct UnparseableResponse : std::runtime_error {
  explicit UnparseableResponse(const std::string &what)
      : std::runtime_error("unparseable-response: " + what) {}
};

// Raw request/response transcript, persisted when stage dumps are on.
struct Transcript {
  Stage stage = Stage::PathFiltering;
  std::vector<std::string> group_ids;
  std::string request;
  std::string response;
};

// Extracts the first well-formed JSON document from a possibly prose- and
// fence-wrapped response and maps it to a stage verdict. Throws
// UnparseableResponse.
FilterVerdict parse_filter_verdict(const std::string &raw);
SimulationVerdict parse_simulation_verdict(const std::string &raw);

// Offline rule engine: a deterministic, hermetic stand-in for a live model.
FilterVerdict offline_filter_verdict(const PromptInstance &prompt,
                                     const AnalysisConfig &config);
SimulationVerdict offline_simulation_verdict(const PromptInstance &prompt,
                                             const AnalysisConfig &config);

// Stage runners: one verdict per prompt, input order preserved. Remote mode
// batches filter prompts (batch_size per request) and retries per request;
// after retries are exhausted a filter group defaults to keep=true and a
// simulation group to vulnerable=false, both flagged undetermined.
std::vector<FilterVerdict> run_filter_stage(
    const std::vector<PromptInstance> &prompts, const EngineConfig &engine,
    const AnalysisConfig &config, std::vector<Transcript> *transcripts = nullptr);

std::vector<SimulationVerdict> run_simulation_stage(
    const std::vector<PromptInstance> &prompts, const EngineConfig &engine,
    const AnalysisConfig &config, std::vector<Transcript> *transcripts = nullptr);

}  // namespace pricescan
