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

#include "qbsat/synth.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace qbsat {

int Cube::literal_count() const {
  return std::popcount(pos) + std::popcount(neg);
}

namespace {

// Canonical cube order: larger cubes (fewer literals) first, ties by
// ascending (pos, neg) mask value. This fixes synthesizer output and all
// downstream circuits and reports.
bool canonical_less(const Cube& a, const Cube& b) {
  int la = a.literal_count(), lb = b.literal_count();
  if (la != lb) return la < lb;
  if (a.pos != b.pos) return a.pos < b.pos;
  return a.neg < b.neg;
}

// ---- exact search (n <= 4): 2^n minterms fit in a uint32_t mask ----

struct Candidate {
  Cube cube;
  std::uint32_t covered;  // minterm set
};

std::uint32_t covered_minterms(const Cube& c, int n) {
  std::uint32_t free_mask =
      ((n == 32 ? 0xffffffffu : ((1u << n) - 1u))) & ~(c.pos | c.neg);
  std::uint32_t covered = 0;
  std::uint32_t sub = 0;
  do {
    covered |= 1u << (c.pos | sub);
    sub = (sub - 1) & free_mask;
  } while (sub != 0);
  return covered;
}

bool dfs_cover(const std::vector<std::vector<const Candidate*>>& by_anchor,
               std::uint32_t target, std::uint32_t covered, int cubes_left,
               std::vector<Cube>& chosen) {
  if (covered == target) return true;
  if (cubes_left == 0) return false;
  int anchor = std::countr_zero(target & ~covered);
  for (const Candidate* cand : by_anchor[static_cast<std::size_t>(anchor)]) {
    if (cand->covered & covered) continue;
    chosen.push_back(cand->cube);
    if (dfs_cover(by_anchor, target, covered | cand->covered, cubes_left - 1,
                  chosen))
      return true;
    chosen.pop_back();
  }
  return false;
}

std::vector<Cube> synthesize_exact(std::uint32_t onset, int n) {
  if (onset == 0) return {};
  std::uint32_t var_mask = (1u << n) - 1u;
  std::vector<Candidate> cands;
  for (std::uint32_t pos = 0; pos <= var_mask; ++pos) {
    std::uint32_t rest = var_mask & ~pos;
    // Enumerate neg over subsets of the variables not already positive.
    std::uint32_t neg = 0;
    while (true) {
      Cube c{pos, neg};
      std::uint32_t cov = covered_minterms(c, n);
      if ((cov & ~onset) == 0) cands.push_back({c, cov});
      if (neg == rest) break;
      neg = (neg - rest) & rest;  // next subset of rest
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return canonical_less(a.cube, b.cube);
  });
  std::vector<std::vector<const Candidate*>> by_anchor(std::size_t{1} << n);
  for (const Candidate& c : cands)
    for (int m = 0; m < (1 << n); ++m)
      if (c.covered >> m & 1u) by_anchor[static_cast<std::size_t>(m)].push_back(&c);

  int max_cubes = std::popcount(onset);  // minterm cover always works
  std::vector<Cube> chosen;
  for (int k = 1; k <= max_cubes; ++k) {
    chosen.clear();
    if (dfs_cover(by_anchor, onset, 0, k, chosen)) return chosen;
  }
  return {};  // unreachable: the minterm cover succeeds at k = |onset|
}

// ---- greedy cover (5 <= n <= 16): dense bitset over 2^n minterms ----

class MintermSet {
 public:
  explicit MintermSet(int n) : words_((std::size_t{1} << n) / 64 + 1, 0) {}
  void set(std::uint32_t x) { words_[x >> 6] |= 1ull << (x & 63); }
  void clear(std::uint32_t x) { words_[x >> 6] &= ~(1ull << (x & 63)); }
  bool test(std::uint32_t x) const { return words_[x >> 6] >> (x & 63) & 1ull; }
  int lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w])
        return static_cast<int>(w * 64 +
                                static_cast<std::size_t>(std::countr_zero(words_[w])));
    return -1;
  }

 private:
  std::vector<std::uint64_t> words_;
};

template <typename Fn>
bool for_each_minterm(const Cube& c, std::uint32_t var_mask, Fn&& fn) {
  std::uint32_t free_mask = var_mask & ~(c.pos | c.neg);
  std::uint32_t sub = 0;
  do {
    if (!fn(c.pos | sub)) return false;
    sub = (sub - 1) & free_mask;
  } while (sub != 0);
  return true;
}

std::vector<Cube> synthesize_greedy(const TruthTable& t) {
  int n = t.n;
  std::uint32_t var_mask = (1u << n) - 1u;
  MintermSet avail(n);
  bool any = false;
  for (std::uint32_t x = 0; x < t.bits.size(); ++x)
    if (t.bits[x]) {
      avail.set(x);
      any = true;
    }
  if (!any) return {};

  std::vector<Cube> cubes;
  for (int m = avail.lowest(); m >= 0; m = avail.lowest()) {
    std::uint32_t mm = static_cast<std::uint32_t>(m);
    Cube cube{mm, var_mask & ~mm};
    // Widen greedily: drop one literal at a time (lowest variable first)
    // while the widened cube stays inside the uncovered onset.
    for (int j = 0; j < n; ++j) {
      Cube wide = cube;
      wide.pos &= ~(1u << j);
      wide.neg &= ~(1u << j);
      if (wide == cube) continue;
      bool ok = for_each_minterm(wide, var_mask,
                                 [&](std::uint32_t x) { return avail.test(x); });
      if (ok) cube = wide;
    }
    for_each_minterm(cube, var_mask, [&](std::uint32_t x) {
      avail.clear(x);
      return true;
    });
    cubes.push_back(cube);
  }
  return cubes;
}

}  // namespace

EsopForm dsop_synthesize(const TruthTable& table) {
  if (table.n > kMaxVars)
    throw CapError("synthesis limited to " + std::to_string(kMaxVars) +
                   " variables");
  EsopForm form;
  form.n = table.n;
  if (table.n <= 4) {
    std::uint32_t onset = 0;
    for (std::uint32_t x = 0; x < table.bits.size(); ++x)
      if (table.bits[x]) onset |= 1u << x;
    form.cubes = synthesize_exact(onset, table.n);
  } else {
    form.cubes = synthesize_greedy(table);
  }
  std::sort(form.cubes.begin(), form.cubes.end(), canonical_less);
  form.disjoint = true;  // by construction; verified in tests
  return form;
}

bool esop_evaluate(const EsopForm& form, std::uint32_t x) {
  bool acc = false;
  for (const Cube& c : form.cubes) acc ^= c.matches(x);
  return acc;
}

int esop_evaluate(const EsopForm& form, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != form.n)
    throw WidthError("assignment width " + std::to_string(bits.size()) +
                     " does not match variable count " + std::to_string(form.n));
  std::uint32_t x = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) x |= 1u << j;
  return esop_evaluate(form, x) ? 1 : 0;
}

bool check_disjoint(const EsopForm& form) {
  for (std::size_t i = 0; i < form.cubes.size(); ++i)
    for (std::size_t j = i + 1; j < form.cubes.size(); ++j) {
      const Cube& a = form.cubes[i];
      const Cube& b = form.cubes[j];
      // Cubes intersect unless some variable is positive in one and
      // negated in the other.
      if ((a.pos & b.neg) == 0 && (b.pos & a.neg) == 0) return false;
    }
  return true;
}

ParsedCubes parse_cubes(std::string_view text,
                        const std::vector<std::string>& seed_vars) {
  std::vector<std::string> names;
  std::map<std::string, int, std::less<>> index;
  auto intern = [&](std::string_view name, std::size_t at) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (static_cast<int>(names.size()) >= kMaxVars)
      throw CapError("too many variables (limit " + std::to_string(kMaxVars) +
                     "), offending variable '" + std::string(name) +
                     "' at byte " + std::to_string(at));
    int idx = static_cast<int>(names.size());
    names.emplace_back(name);
    index.emplace(names.back(), idx);
    return idx;
  };
  for (const auto& name : seed_vars) intern(name, 0);

  std::vector<Cube> cubes;
  Cube cur;
  bool cur_has_tokens = false;
  bool cur_is_one = false;
  bool any_tokens = false;
  std::size_t pos = 0;

  auto finalize = [&](std::size_t at) {
    if (!cur_has_tokens) {
      if (any_tokens) throw ParseError("empty cube", at);
      return;  // wholly empty input: the constant-0 form
    }
    cubes.push_back(cur);
    cur = Cube{};
    cur_has_tokens = false;
    cur_is_one = false;
  };

  while (pos < text.size()) {
    char c = text[pos];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos;
      continue;
    }
    if (c == '^' || text.substr(pos, 3) == "⊕") {
      if (!cur_has_tokens) throw ParseError("empty cube", pos);
      finalize(pos);
      any_tokens = true;  // a separator implies another cube must follow
      cur_has_tokens = false;
      pos += (c == '^') ? 1 : 3;
      continue;
    }
    bool negate = false;
    if (c == '~' || c == '!' || text.substr(pos, 2) == "¬") {
      negate = true;
      pos += (c == '~' || c == '!') ? 1 : 2;
      if (pos >= text.size()) throw ParseError("dangling negation", pos);
      c = text[pos];
    }
    if (c == '1') {
      if (negate) throw ParseError("cannot negate constant 1", pos);
      if (cur_has_tokens) throw ParseError("constant 1 must stand alone", pos);
      cur_is_one = true;
      cur_has_tokens = true;
      any_tokens = true;
      ++pos;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      if (cur_is_one) throw ParseError("constant 1 must stand alone", pos);
      std::size_t start = pos;
      ++pos;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
      int idx = intern(text.substr(start, pos - start), start);
      std::uint32_t bit = 1u << idx;
      if (negate) {
        if (cur.pos & bit) throw ParseError("contradictory literal", start);
        cur.neg |= bit;
      } else {
        if (cur.neg & bit) throw ParseError("contradictory literal", start);
        cur.pos |= bit;
      }
      cur_has_tokens = true;
      any_tokens = true;
      continue;
    }
    throw ParseError("unexpected character in cube list", pos);
  }
  finalize(text.size());

  ParsedCubes out;
  out.form.n = static_cast<int>(names.size());
  out.form.cubes = std::move(cubes);
  out.form.disjoint = check_disjoint(out.form);
  out.vars = std::move(names);
  return out;
}

std::string format_cubes(const EsopForm& form,
                         const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < form.cubes.size(); ++i) {
    if (i) out += " ^ ";
    const Cube& c = form.cubes[i];
    if (c.pos == 0 && c.neg == 0) {
      out += '1';
      continue;
    }
    for (int j = 0; j < form.n; ++j) {
      if (c.neg >> j & 1u) {
        out += '~';
        out += vars.at(static_cast<std::size_t>(j));
      } else if (c.pos >> j & 1u) {
        out += vars.at(static_cast<std::size_t>(j));
      }
    }
  }
  return out;
}

}  // namespace qbsat
