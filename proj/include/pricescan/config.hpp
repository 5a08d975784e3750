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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pricescan {

// Transfer-shaped callee: argument positions of (recipient, amount).
// recipient < 0 means the function has no recipient argument.
struct TransferSignature {
  int recipient = 0;
  int amount = 1;
};

// Tunable name sets and engine caps. Every list override replaces the
// default wholesale so a run is reproducible from its config echo alone.
struct AnalysisConfig {
  // Known DEX / oracle getters whose returns are taint sources.
  std::set<std::string> dex_source_functions = {
      "getAmountsOut", "getAmountsIn", "getAmountOut",    "getAmountIn",
      "getReserves",   "quote",        "latestAnswer",    "latestRoundData",
  };

  // Callee names recognized as value transfers, with argument positions.
  std::map<std::string, TransferSignature> transfer_functions = {
      {"transfer", {0, 1}},      {"transferFrom", {1, 2}},
      {"safeTransfer", {0, 1}},  {"safeTransferFrom", {1, 2}},
      {"_transfer", {1, 2}},     {"mint", {0, 1}},
  };

  // Access-control modifier names recognized by the privilege defense.
  std::set<std::string> privileged_modifiers = {
      "onlyOwner", "onlyAdmin", "onlyGovernance", "onlyRole",
      "onlyOperator", "auth", "authorized",
  };

  // Mapping base names treated as balance ledgers by the fee-on-transfer rule.
  std::set<std::string> balance_mapping_names = {
      "balance", "balances", "_balances", "balanceOf",
  };

  // Callees accepted as known DEX-router interactions by the fee-on-transfer
  // rule: router getters plus the common swap entry points.
  std::set<std::string> router_callees = {
      "getAmountsOut",
      "getAmountsIn",
      "getAmountOut",
      "getAmountIn",
      "getReserves",
      "quote",
      "swapExactTokensForTokens",
      "swapTokensForExactTokens",
      "swapExactETHForTokens",
      "swapExactTokensForETH",
      "swapExactTokensForTokensSupportingFeeOnTransferTokens",
      "addLiquidity",
      "removeLiquidity",
  };

  int max_fixpoint_iterations = 10000;
  int max_paths_per_pair = 256;    // reconstructed paths per (source, sink)
  int provenance_revisit_bound = 2;
  int excerpt_max_lines = 120;     // prompt body excerpts

  bool is_transfer_callee(const std::string &name, int argc,
                          TransferSignature *sig_out = nullptr) const {
    auto it = transfer_functions.find(name);
    if (it == transfer_functions.end()) return false;
    if (argc <= it->second.amount) return false;
    if (sig_out) *sig_out = it->second;
    return true;
  }
};

}  // namespace pricescan
