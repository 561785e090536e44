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
#include <string>
#include <string_view>
#include <vector>

#include "qbsat/boolexpr.hpp"

namespace qbsat {

// A product term over n variables. Bit j of pos/neg marks variable j as a
// positive/negated literal; pos & neg == 0. The empty cube (both masks 0)
// is the constant-1 term.
struct Cube {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;

  bool operator==(const Cube&) const = default;
  int literal_count() const;
  // True when the assignment x satisfies every literal of the cube.
  bool matches(std::uint32_t x) const {
    return (x & pos) == pos && (x & neg) == 0;
  }
};

// An exclusive-or of product terms. `disjoint` records a verified pairwise
// non-overlap check: when set, XOR of the cubes equals their OR.
struct EsopForm {
  int n = 0;
  std::vector<Cube> cubes;
  bool disjoint = false;
};

// Synthesizes a disjoint cover of the table's onset. Exact minimum-cube
// search for n <= 4 (canonical branch and bound); greedy largest-cube cover
// for larger n. Deterministic: cubes are ordered by size descending, then
// (pos, neg) mask value ascending. An all-false table yields an empty form.
EsopForm dsop_synthesize(const TruthTable& table);

// XOR over cubes of [x satisfies cube]; bit j of x = variable j.
bool esop_evaluate(const EsopForm& form, std::uint32_t x);

// Checked variant; throws WidthError when bits.size() != form.n.
int esop_evaluate(const EsopForm& form, const std::vector<int>& bits);

// True iff no assignment satisfies two distinct cubes (pairwise
// literal-conflict test, exact for cubes).
bool check_disjoint(const EsopForm& form);

// Parses the cube-list grammar: cubes separated by "^" (U+2295 accepted);
// a cube is a concatenation of literals, "~v" negates; a variable is one
// letter [a-z] followed by optional digits. The empty string is the
// constant-0 form; a lone "1" is the constant-1 cube. Variable indices are
// assigned by first appearance (after `seed_vars`). Disjointness of the
// result is checked, not assumed.
struct ParsedCubes {
  EsopForm form;
  std::vector<std::string> vars;
};
ParsedCubes parse_cubes(std::string_view text,
                        const std::vector<std::string>& seed_vars = {});

// Renders a form back to the cube-list grammar ("" for the empty form).
std::string format_cubes(const EsopForm& form,
                         const std::vector<std::string>& vars);

}  // namespace qbsat
