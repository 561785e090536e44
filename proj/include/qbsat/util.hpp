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
#include <stdexcept>
#include <string>

namespace qbsat {

// Hard cap on problem width: truth tables, diagonals and statevectors are
// dense arrays of 2^n entries.
inline constexpr int kMaxVars = 16;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in a formula or cube list; `offset` is a byte offset into the
// source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

// Assignment width does not match the variable count.
class WidthError : public Error {
 public:
  using Error::Error;
};

// More variables (or qubits) than kMaxVars.
class CapError : public Error {
 public:
  using Error::Error;
};

// Boolean-oracle shape the structural builder cannot realize.
class UnsupportedStructureError : public Error {
 public:
  using Error::Error;
};

// Boolean oracle violates the phase-transformation precondition.
class TransformError : public Error {
 public:
  using Error::Error;
};

// The problem has no satisfying assignment.
class UnsatError : public Error {
 public:
  using Error::Error;
};

// Renders an assignment as a measurement bitstring: qubit 0 is the
// rightmost character.
std::string render_bitstring(std::uint32_t x, int n);

// Inverse of render_bitstring; throws ParseError on bad characters.
std::uint32_t parse_bitstring(const std::string& s);

// SplitMix64 step; advances `state` and returns the next value.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives an independent stream seed from a base seed and a tag.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);

}  // namespace qbsat
