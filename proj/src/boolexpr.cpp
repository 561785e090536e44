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

#include "qbsat/boolexpr.hpp"

#include <map>
#include <utility>

namespace qbsat {

BoolExprPtr make_const(bool value) {
  auto e = std::make_shared<BoolExpr>();
  e->kind = NodeKind::Const;
  e->value = value;
  return e;
}

BoolExprPtr make_var(int index) {
  if (index < 0) throw Error("variable index must be non-negative");
  auto e = std::make_shared<BoolExpr>();
  e->kind = NodeKind::Var;
  e->var = index;
  return e;
}

BoolExprPtr make_not(BoolExprPtr child) {
  if (!child) throw Error("Not requires a child");
  auto e = std::make_shared<BoolExpr>();
  e->kind = NodeKind::Not;
  e->children.push_back(std::move(child));
  return e;
}

BoolExprPtr make_nary(NodeKind kind, std::vector<BoolExprPtr> children) {
  if (kind != NodeKind::And && kind != NodeKind::Or && kind != NodeKind::Xor)
    throw Error("make_nary expects And/Or/Xor");
  if (children.size() < 2)
    throw Error("And/Or/Xor require at least 2 children");
  auto e = std::make_shared<BoolExpr>();
  e->kind = kind;
  e->children = std::move(children);
  return e;
}

namespace {

// Recursive-descent parser over raw bytes. Unicode connectives are matched
// as their UTF-8 byte sequences.
class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& seed_vars)
      : text_(text) {
    for (const auto& name : seed_vars) intern(name, 0);
  }

  Formula run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty input", pos_);
    BoolExprPtr root = parse_or();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected trailing input", pos_);
    return Formula{std::move(root), names_};
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;

  int intern(std::string_view name, std::size_t at) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    if (static_cast<int>(names_.size()) >= kMaxVars)
      throw CapError("too many variables (limit " +
                     std::to_string(kMaxVars) + "), offending variable '" +
                     std::string(name) + "' at byte " + std::to_string(at));
    int idx = static_cast<int>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), idx);
    return idx;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool eat(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  // Returns true and consumes one connective of the given class, where
  // `ascii` is '&', '|', '~' or '^'.
  bool eat_op(char ascii) {
    skip_ws();
    switch (ascii) {
      case '&': return eat("&") || eat("∧");
      case '|': return eat("|") || eat("∨");
      case '^': return eat("^") || eat("⊕");
      case '~': return eat("~") || eat("!") || eat("¬");
    }
    return false;
  }

  BoolExprPtr parse_or() {
    std::vector<BoolExprPtr> kids;
    kids.push_back(parse_xor());
    while (eat_op('|')) kids.push_back(parse_xor());
    if (kids.size() == 1) return kids[0];
    return make_nary(NodeKind::Or, std::move(kids));
  }

  BoolExprPtr parse_xor() {
    std::vector<BoolExprPtr> kids;
    kids.push_back(parse_and());
    while (eat_op('^')) kids.push_back(parse_and());
    if (kids.size() == 1) return kids[0];
    return make_nary(NodeKind::Xor, std::move(kids));
  }

  BoolExprPtr parse_and() {
    std::vector<BoolExprPtr> kids;
    kids.push_back(parse_unary());
    while (eat_op('&')) kids.push_back(parse_unary());
    if (kids.size() == 1) return kids[0];
    return make_nary(NodeKind::And, std::move(kids));
  }

  BoolExprPtr parse_unary() {
    if (eat_op('~')) return make_not(parse_unary());
    return parse_atom();
  }

  BoolExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      BoolExprPtr inner = parse_or();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return make_const(c == '1');
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
              (text_[pos_] >= '0' && text_[pos_] <= '9') ||
              text_[pos_] == '_'))
        ++pos_;
      return make_var(intern(text_.substr(start, pos_ - start), start));
    }
    throw ParseError("unexpected character", pos_);
  }
};

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Or: return 1;
    case NodeKind::Xor: return 2;
    case NodeKind::And: return 3;
    case NodeKind::Not: return 4;
    default: return 5;  // Var/Const are atoms
  }
}

void unparse_rec(const BoolExprPtr& e, const std::vector<std::string>& names,
                 std::string& out) {
  auto child = [&](const BoolExprPtr& c, int parent_prec) {
    if (precedence(c->kind) < parent_prec) {
      out += '(';
      unparse_rec(c, names, out);
      out += ')';
    } else {
      unparse_rec(c, names, out);
    }
  };
  switch (e->kind) {
    case NodeKind::Const:
      out += e->value ? '1' : '0';
      return;
    case NodeKind::Var:
      out += names.at(static_cast<std::size_t>(e->var));
      return;
    case NodeKind::Not:
      out += '~';
      child(e->children[0], precedence(NodeKind::Not));
      return;
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      const char* sep = e->kind == NodeKind::And  ? " & "
                        : e->kind == NodeKind::Or ? " | "
                                                  : " ^ ";
      int prec = precedence(e->kind);
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i) out += sep;
        child(e->children[i], prec);
      }
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text, const std::vector<std::string>& seed_vars) {
  return Parser(text, seed_vars).run();
}

std::string unparse(const Formula& f) {
  std::string out;
  unparse_rec(f.root, f.vars, out);
  return out;
}

bool eval_mask(const BoolExprPtr& e, std::uint32_t x) {
  switch (e->kind) {
    case NodeKind::Const:
      return e->value;
    case NodeKind::Var:
      return (x >> e->var) & 1u;
    case NodeKind::Not:
      return !eval_mask(e->children[0], x);
    case NodeKind::And:
      for (const auto& c : e->children)
        if (!eval_mask(c, x)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& c : e->children)
        if (eval_mask(c, x)) return true;
      return false;
    case NodeKind::Xor: {
      bool acc = false;
      for (const auto& c : e->children) acc ^= eval_mask(c, x);
      return acc;
    }
  }
  return false;  // unreachable
}

int eval_assignment(const Formula& f, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != f.n())
    throw WidthError("assignment width " + std::to_string(bits.size()) +
                     " does not match variable count " + std::to_string(f.n()));
  std::uint32_t x = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) x |= 1u << j;
  return eval_mask(f.root, x) ? 1 : 0;
}

TruthTable truth_table(const Formula& f) {
  if (f.n() > kMaxVars)
    throw CapError("truth table limited to " + std::to_string(kMaxVars) +
                   " variables");
  TruthTable t;
  t.n = f.n();
  t.bits.resize(std::size_t{1} << t.n);
  for (std::uint32_t x = 0; x < t.bits.size(); ++x)
    t.bits[x] = eval_mask(f.root, x) ? 1 : 0;
  return t;
}

}  // namespace qbsat
