// Copyright 2026 The qbsat authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qbsat/util.hpp"

namespace qbsat {

enum class NodeKind { Const, Var, Not, And, Or, Xor };

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

// Immutable AST node. Not has exactly one child; And/Or/Xor have at least
// two. Variable indices are dense 0..n-1 in order of first appearance.
struct BoolExpr {
  NodeKind kind;
  bool value = false;                 // Const
  int var = -1;                       // Var
  std::vector<BoolExprPtr> children;  // Not/And/Or/Xor
};

BoolExprPtr make_const(bool value);
BoolExprPtr make_var(int index);
BoolExprPtr make_not(BoolExprPtr child);
BoolExprPtr make_nary(NodeKind kind, std::vector<BoolExprPtr> children);

// A parsed formula: the AST plus the variable-name table that fixes the
// variable-to-qubit index mapping.
struct Formula {
  BoolExprPtr root;
  std::vector<std::string> vars;  // index -> name
  int n() const { return static_cast<int>(vars.size()); }
};

// Parses the ASCII grammar
//   var := [a-z][a-z0-9_]* ; literals "0","1"; unary "~" or "!";
//   binary "&", "^", "|"; parentheses; whitespace insignificant.
// The Unicode connectives U+2227/U+2228/U+00AC/U+2295 are aliases of
// "&", "|", "~", "^". Precedence: NOT > AND > XOR > OR.
//
// `seed_vars` optionally pre-assigns indices 0..k-1 to the given names;
// remaining variables continue in order of first appearance.
//
// Throws ParseError (with byte offset) and CapError (more than kMaxVars
// variables).
Formula parse(std::string_view text,
              const std::vector<std::string>& seed_vars = {});

// Prints the AST back to the ASCII grammar with minimal parentheses.
// Round trip guarantee: truth_table(parse(unparse(f))) == truth_table(f).
std::string unparse(const Formula& f);

// Fast evaluation at the assignment whose bit j is the value of variable j.
bool eval_mask(const BoolExprPtr& e, std::uint32_t x);

// Checked evaluation; `bits[j]` is the value of variable j.
// Throws WidthError when bits.size() != f.n().
int eval_assignment(const Formula& f, const std::vector<int>& bits);

struct TruthTable {
  int n = 0;
  std::vector<std::uint8_t> bits;  // 2^n entries, bits[x] = f(x)
};

// Exhaustive evaluation over all 2^n assignments. Throws CapError when
// n > kMaxVars.
TruthTable truth_table(const Formula& f);

}  // namespace qbsat
