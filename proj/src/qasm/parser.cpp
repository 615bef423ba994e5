// Copyright 2026 The qbench Authors
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

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_map>
#include <variant>

#include "qbench/error.hpp"
#include "qbench/qasm/qasm.hpp"

namespace qbench::qasm {
namespace {

using circuit::BigUint;
using circuit::Circuit;
using circuit::GateId;
using circuit::GateKind;
using circuit::Instruction;
using circuit::ParameterExpr;
using circuit::Qubit;
using Kind = QasmError::Kind;

// Definitions that real-world files expect from qelib1.inc but that are not
// primitives here. They expand like user gates.
constexpr std::string_view kQelibExtras = R"(
gate u(theta,phi,lambda) q { U(theta,phi,lambda) q; }
gate p(lambda) q { u1(lambda) q; }
gate cp(lambda) a,b { cu1(lambda) a,b; }
gate rzz(theta) a,b { cx a,b; u1(theta) b; cx a,b; }
gate cry(lambda) a,b { ry(lambda/2) b; cx a,b; ry(-lambda/2) b; cx a,b; }
gate crx(lambda) a,b { u1(pi/2) b; cx a,b; u3(-lambda/2,0,0) b; cx a,b; u3(lambda/2,-pi/2,0) b; }
gate cswap a,b,c { cx c,b; ccx a,b,c; cx c,b; }
)";

// ---------------------------------------------------------------- lexing

enum class Tok { Ident, Integer, Real, String, Symbol, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.type = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          t.text += advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(t);
      } else if (c == '"') {
        t.type = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"') {
          if (src_[pos_] == '\n') throw QasmError(Kind::Syntax, "unterminated string", t.line, t.column);
          t.text += advance();
        }
        if (pos_ >= src_.size()) throw QasmError(Kind::Syntax, "unterminated string", t.line, t.column);
        advance();
      } else {
        t.type = Tok::Symbol;
        if (match("->") || match("==")) {
          t.text = std::string(src_.substr(pos_ - 2, 2));
        } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
          t.text = std::string(1, advance());
        } else {
          throw QasmError(Kind::Syntax, std::string("unexpected character '") + c + "'", t.line, t.column);
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  bool match(std::string_view s) {
    if (src_.substr(pos_, s.size()) != s) return false;
    for (std::size_t i = 0; i < s.size(); ++i) advance();
    return true;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        const std::size_t l = line_, col = column_;
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) throw QasmError(Kind::Syntax, "unterminated comment", l, col);
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    bool real = false;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      real = true;
      t.text += advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      const std::size_t l = line_, col = column_;
      std::string exp(1, advance());
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) exp += advance();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        real = true;
        t.text += exp;
        digits();
      } else {
        pos_ = save;
        line_ = l;
        column_ = col;
      }
    }
    t.type = real ? Tok::Real : Tok::Integer;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

double to_double(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) {
    // Integers wider than a double can represent still evaluate, just inexactly.
    v = BigUint(t.text).convert_to<double>();
  } else if (ec != std::errc() || ptr != last) {
    throw QasmError(Kind::Syntax, "malformed number '" + t.text + "'", t.line, t.column);
  }
  return v;
}

// ---------------------------------------------------------- expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Op { Number, Formal, Neg, Add, Sub, Mul, Div, Pow, Call } op = Op::Number;
  double number = 0.0;
  std::size_t formal = 0;
  std::string function;
  ExprPtr lhs, rhs;
};

double evaluate(const Expr& e, const std::vector<double>& formals) {
  switch (e.op) {
    case Expr::Op::Number: return e.number;
    case Expr::Op::Formal: return formals.at(e.formal);
    case Expr::Op::Neg: return -evaluate(*e.lhs, formals);
    case Expr::Op::Add: return evaluate(*e.lhs, formals) + evaluate(*e.rhs, formals);
    case Expr::Op::Sub: return evaluate(*e.lhs, formals) - evaluate(*e.rhs, formals);
    case Expr::Op::Mul: return evaluate(*e.lhs, formals) * evaluate(*e.rhs, formals);
    case Expr::Op::Div: return evaluate(*e.lhs, formals) / evaluate(*e.rhs, formals);
    case Expr::Op::Pow: return std::pow(evaluate(*e.lhs, formals), evaluate(*e.rhs, formals));
    case Expr::Op::Call: {
      const double x = evaluate(*e.lhs, formals);
      if (e.function == "sin") return std::sin(x);
      if (e.function == "cos") return std::cos(x);
      if (e.function == "tan") return std::tan(x);
      if (e.function == "exp") return std::exp(x);
      if (e.function == "ln") return std::log(x);
      return std::sqrt(x);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------- gate tables

struct BodyStatement {
  std::string gate;
  std::vector<ExprPtr> params;
  std::vector<std::size_t> args;  // indices into the formal qubit list
  bool barrier = false;
  std::size_t line = 0, column = 0;
};

struct GateDefinition {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> qubits;
  std::vector<BodyStatement> body;
  bool opaque = false;
};

// A register argument: whole register or single element.
struct Operand {
  std::string reg;
  std::optional<std::size_t> index;
  std::size_t line = 0, column = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options) : tokens_(std::move(tokens)), options_(options) {}

  Circuit run() {
    parse_header();
    while (!at_end()) statement();
    return std::move(circuit_);
  }

 private:
  // --- token helpers
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().type == Tok::End; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool is_symbol(std::string_view s) const { return peek().type == Tok::Symbol && peek().text == s; }
  bool accept(std::string_view s) {
    if (!is_symbol(s)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(Kind kind, const std::string& message, const Token& at) const {
    throw QasmError(kind, message, at.line, at.column);
  }
  void expect(std::string_view s) {
    if (!accept(s)) {
      const Token& t = peek();
      fail(Kind::Syntax, "expected '" + std::string(s) + "' but found " + describe(t), t);
    }
  }
  static std::string describe(const Token& t) {
    if (t.type == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }
  const Token& expect_ident() {
    if (peek().type != Tok::Ident) fail(Kind::Syntax, "expected identifier but found " + describe(peek()), peek());
    return next();
  }
  std::size_t expect_size() {
    const Token& t = peek();
    if (t.type != Tok::Integer) fail(Kind::Syntax, "expected integer but found " + describe(t), t);
    next();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail(Kind::Syntax, "integer too large: " + t.text, t);
    return v;
  }

  // --- header
  void parse_header() {
    const Token& kw = peek();
    if (kw.type != Tok::Ident || kw.text != "OPENQASM") fail(Kind::Syntax, "missing OPENQASM version header", kw);
    next();
    const Token& v = next();
    if ((v.type == Tok::Integer || v.type == Tok::Real) && (v.text == "3" || v.text.rfind("3.", 0) == 0)) {
      fail(Kind::UnsupportedVersion3, "OpenQASM 3 is not supported", v);
    }
    if (v.type != Tok::Real || to_double(v) != 2.0) fail(Kind::Version, "unsupported OpenQASM version " + describe(v), v);
    expect(";");
  }

  // --- statements
  void statement() {
    const Token& t = peek();
    if (t.type != Tok::Ident) fail(Kind::Syntax, "expected statement but found " + describe(t), t);
    if (t.text == "include") return include();
    if (t.text == "qreg") return qreg();
    if (t.text == "creg") return creg();
    if (t.text == "gate") return gate_definition(false);
    if (t.text == "opaque") return gate_definition(true);
    if (t.text == "if") return conditional();
    quantum_operation(std::nullopt);
  }

  void include() {
    next();
    const Token& f = peek();
    if (f.type != Tok::String) fail(Kind::Syntax, "expected file name after include", f);
    next();
    expect(";");
    if (f.text != "qelib1.inc") fail(Kind::Semantic, "cannot include '" + f.text + "': only qelib1.inc is built in", f);
    if (qelib_included_) return;
    qelib_included_ = true;
    Lexer lexer(kQelibExtras);
    Parser extras(lexer.run(), options_);
    extras.qelib_included_ = true;
    while (!extras.at_end()) extras.gate_definition(false);
    for (auto& [name, def] : extras.definitions_) {
      overridable_.insert(name);
      definitions_.emplace(name, std::move(def));
    }
  }

  void check_fresh(const Token& name) const {
    if (qregs_.count(name.text) || circuit_.find_creg(name.text) || definitions_.count(name.text)) {
      fail(Kind::Semantic, "redefinition of '" + name.text + "'", name);
    }
  }

  void qreg() {
    next();
    const Token& name = expect_ident();
    check_fresh(name);
    expect("[");
    const std::size_t size = expect_size();
    expect("]");
    expect(";");
    if (size == 0) fail(Kind::Semantic, "zero-size register '" + name.text + "'", name);
    qregs_.emplace(name.text, std::make_pair(circuit_.num_qubits(), size));
    circuit_.add_qubits(size);
  }

  void creg() {
    next();
    const Token& name = expect_ident();
    check_fresh(name);
    expect("[");
    const Token& size_tok = peek();
    const std::size_t size = expect_size();
    expect("]");
    expect(";");
    if (size == 0) fail(Kind::Semantic, "zero-size register '" + name.text + "'", name);
    if (size > options_.max_creg_width) {
      fail(Kind::RegisterWidthLimit,
           "classical register '" + name.text + "' has " + std::to_string(size) + " bits; the limit is " +
               std::to_string(options_.max_creg_width),
           size_tok);
    }
    circuit_.add_creg(name.text, size);
  }

  void gate_definition(bool opaque) {
    next();
    const Token& name = expect_ident();
    if (overridable_.erase(name.text)) {
      definitions_.erase(name.text);
    } else if (lookup_builtin(name.text) || definitions_.count(name.text)) {
      fail(Kind::Semantic, "redefinition of gate '" + name.text + "'", name);
    }
    GateDefinition def;
    def.name = name.text;
    def.opaque = opaque;
    if (accept("(")) {
      if (!is_symbol(")")) {
        do def.params.push_back(expect_ident().text);
        while (accept(","));
      }
      expect(")");
    }
    do def.qubits.push_back(expect_ident().text);
    while (accept(","));
    if (opaque) {
      expect(";");
    } else {
      expect("{");
      while (!accept("}")) {
        if (at_end()) fail(Kind::Syntax, "unterminated gate body", name);
        def.body.push_back(body_statement(def));
      }
    }
    definitions_.emplace(def.name, std::move(def));
  }

  BodyStatement body_statement(const GateDefinition& def) {
    const Token& g = expect_ident();
    BodyStatement s;
    s.gate = g.text;
    s.line = g.line;
    s.column = g.column;
    s.barrier = g.text == "barrier";
    if (!s.barrier) {
      if (!lookup_builtin(g.text) && !definitions_.count(g.text)) fail(Kind::UnknownGate, "unknown gate '" + g.text + "'", g);
      if (accept("(")) {
        if (!is_symbol(")")) {
          do s.params.push_back(expression(&def.params));
          while (accept(","));
        }
        expect(")");
      }
    }
    do {
      const Token& a = expect_ident();
      auto it = std::find(def.qubits.begin(), def.qubits.end(), a.text);
      if (it == def.qubits.end()) fail(Kind::Semantic, "'" + a.text + "' is not an argument of gate " + def.name, a);
      s.args.push_back(static_cast<std::size_t>(it - def.qubits.begin()));
    } while (accept(","));
    expect(";");
    if (!s.barrier) check_arity(s.gate, s.params.size(), s.args.size(), g);
    return s;
  }

  void conditional() {
    const Token& kw = next();
    expect("(");
    const Token& reg = expect_ident();
    const auto* creg = circuit_.find_creg(reg.text);
    if (!creg) fail(Kind::Semantic, "unknown classical register '" + reg.text + "'", reg);
    expect("==");
    const Token& value_tok = peek();
    if (value_tok.type != Tok::Integer) fail(Kind::Syntax, "expected integer in condition", value_tok);
    next();
    expect(")");
    BigUint value(value_tok.text);
    if (!circuit::fits_in_bits(value, creg->width)) {
      fail(Kind::RegisterOverflow,
           "condition value needs more than the " + std::to_string(creg->width) + " bits of '" + creg->name + "'",
           value_tok);
    }
    if (peek().type == Tok::Ident && (peek().text == "if" || peek().text == "gate")) {
      fail(Kind::Syntax, "invalid statement after if", kw);
    }
    quantum_operation(circuit::ClassicalCondition{creg->name, std::move(value)});
  }

  // --- operands
  Operand operand() {
    const Token& r = expect_ident();
    Operand op{r.text, std::nullopt, r.line, r.column};
    if (accept("[")) {
      op.index = expect_size();
      expect("]");
    }
    return op;
  }

  std::vector<Qubit> qubits_of(const Operand& op) const {
    auto it = qregs_.find(op.reg);
    if (it == qregs_.end()) throw QasmError(Kind::Semantic, "unknown quantum register '" + op.reg + "'", op.line, op.column);
    const auto [offset, size] = it->second;
    if (op.index) {
      if (*op.index >= size) {
        throw QasmError(Kind::Semantic, "index " + std::to_string(*op.index) + " out of range for " + op.reg, op.line,
                        op.column);
      }
      return {static_cast<Qubit>(offset + *op.index)};
    }
    std::vector<Qubit> all(size);
    for (std::size_t i = 0; i < size; ++i) all[i] = static_cast<Qubit>(offset + i);
    return all;
  }

  std::vector<circuit::Clbit> clbits_of(const Operand& op) const {
    const auto* reg = circuit_.find_creg(op.reg);
    if (!reg) throw QasmError(Kind::Semantic, "unknown classical register '" + op.reg + "'", op.line, op.column);
    const std::size_t offset = circuit_.creg_offset(op.reg);
    if (op.index) {
      if (*op.index >= reg->width) {
        throw QasmError(Kind::Semantic, "index " + std::to_string(*op.index) + " out of range for " + op.reg, op.line,
                        op.column);
      }
      return {static_cast<circuit::Clbit>(offset + *op.index)};
    }
    std::vector<circuit::Clbit> all(reg->width);
    for (std::size_t i = 0; i < reg->width; ++i) all[i] = static_cast<circuit::Clbit>(offset + i);
    return all;
  }

  // Expands register broadcasting: all whole-register operands must agree in size.
  std::vector<std::vector<Qubit>> broadcast(const std::vector<std::vector<Qubit>>& operands, const Token& at) const {
    std::size_t n = 1;
    for (const auto& o : operands) {
      if (o.size() == 1) continue;
      if (n != 1 && o.size() != n) fail(Kind::Semantic, "register size mismatch in broadcast", at);
      n = o.size();
    }
    std::vector<std::vector<Qubit>> calls(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& o : operands) calls[i].push_back(o.size() == 1 ? o[0] : o[i]);
    }
    return calls;
  }

  void quantum_operation(const std::optional<circuit::ClassicalCondition>& condition) {
    const Token& g = expect_ident();
    if (g.text == "measure") {
      const Operand q = operand();
      expect("->");
      const Operand c = operand();
      expect(";");
      const auto qs = qubits_of(q);
      const auto cs = clbits_of(c);
      if (qs.size() != cs.size()) fail(Kind::Semantic, "measure register sizes differ", g);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        Instruction ins = circuit::make_instruction(GateId::Measure, {qs[i]});
        ins.clbits = {cs[i]};
        ins.condition = condition;
        append(std::move(ins), g);
      }
      return;
    }
    if (g.text == "barrier") {
      if (condition) fail(Kind::Syntax, "barrier cannot be conditioned", g);
      std::vector<Qubit> all;
      do {
        for (Qubit q : qubits_of(operand())) all.push_back(q);
      } while (accept(","));
      expect(";");
      Instruction ins;
      ins.gate = circuit::barrier_kind(static_cast<std::uint32_t>(all.size()));
      ins.qubits = std::move(all);
      append(std::move(ins), g);
      return;
    }
    if (g.text == "reset") {
      const Operand q = operand();
      expect(";");
      for (Qubit qb : qubits_of(q)) {
        Instruction ins = circuit::make_instruction(GateId::Reset, {qb});
        ins.condition = condition;
        append(std::move(ins), g);
      }
      return;
    }

    std::vector<double> params;
    if (accept("(")) {
      if (!is_symbol(")")) {
        do params.push_back(evaluate(*expression(nullptr), {}));
        while (accept(","));
      }
      expect(")");
    }
    std::vector<std::vector<Qubit>> operands;
    do operands.push_back(qubits_of(operand()));
    while (accept(","));
    expect(";");

    if (!lookup_builtin(g.text) && !definitions_.count(g.text)) fail(Kind::UnknownGate, "unknown gate '" + g.text + "'", g);
    check_arity(g.text, params.size(), operands.size(), g);
    for (const auto& qubits : broadcast(operands, g)) apply_gate(g.text, params, qubits, condition, g);
  }

  void append(Instruction ins, const Token& at) {
    try {
      circuit_.append(std::move(ins));
    } catch (const InvalidCircuit& e) {
      fail(Kind::Semantic, e.what(), at);
    }
  }

  std::optional<GateKind> lookup_builtin(const std::string& name) const {
    if (name == "U") return circuit::standard_gate(GateId::U3);
    if (name == "CX") return circuit::standard_gate(GateId::CX);
    if (!qelib_included_) return std::nullopt;
    auto kind = circuit::find_standard_gate(name);
    if (kind && circuit::is_directive(kind->id)) return std::nullopt;
    return kind;
  }

  void check_arity(const std::string& gate, std::size_t nparams, std::size_t nargs, const Token& at) const {
    std::size_t want_params = 0, want_args = 0;
    if (auto kind = lookup_builtin(gate)) {
      want_params = kind->param_count;
      want_args = kind->arity;
    } else {
      const auto& def = definitions_.at(gate);
      want_params = def.params.size();
      want_args = def.qubits.size();
    }
    if (nparams != want_params || nargs != want_args) {
      fail(Kind::Semantic,
           "gate '" + gate + "' takes " + std::to_string(want_params) + " parameters and " +
               std::to_string(want_args) + " qubits",
           at);
    }
  }

  void apply_gate(const std::string& gate, const std::vector<double>& params, const std::vector<Qubit>& qubits,
                  const std::optional<circuit::ClassicalCondition>& condition, const Token& at) {
    if (auto kind = lookup_builtin(gate)) {
      Instruction ins;
      ins.gate = *kind;
      ins.qubits = qubits;
      ins.params.assign(params.begin(), params.end());
      ins.condition = condition;
      append(std::move(ins), at);
      return;
    }
    const auto& def = definitions_.at(gate);
    if (def.opaque || !options_.inline_user_gates) {
      Instruction ins;
      ins.gate = circuit::opaque_kind(def.name, static_cast<std::uint32_t>(def.qubits.size()),
                                      static_cast<std::uint32_t>(def.params.size()));
      ins.qubits = qubits;
      ins.params.assign(params.begin(), params.end());
      ins.condition = condition;
      append(std::move(ins), at);
      return;
    }
    for (const auto& s : def.body) {
      std::vector<Qubit> actual;
      for (std::size_t a : s.args) actual.push_back(qubits[a]);
      if (s.barrier) {
        Instruction ins;
        ins.gate = circuit::barrier_kind(static_cast<std::uint32_t>(actual.size()));
        ins.qubits = std::move(actual);
        append(std::move(ins), at);
        continue;
      }
      std::vector<double> values;
      for (const auto& e : s.params) values.push_back(evaluate(*e, params));
      apply_gate(s.gate, values, actual, condition, at);
    }
  }

  // --- expressions: formals == nullptr outside gate bodies
  ExprPtr expression(const std::vector<std::string>* formals) {
    ExprPtr lhs = term(formals);
    while (is_symbol("+") || is_symbol("-")) {
      const bool add = next().text == "+";
      lhs = binary(add ? Expr::Op::Add : Expr::Op::Sub, lhs, term(formals));
    }
    return lhs;
  }

  ExprPtr term(const std::vector<std::string>* formals) {
    ExprPtr lhs = power(formals);
    while (is_symbol("*") || is_symbol("/")) {
      const bool mul = next().text == "*";
      lhs = binary(mul ? Expr::Op::Mul : Expr::Op::Div, lhs, power(formals));
    }
    return lhs;
  }

  ExprPtr power(const std::vector<std::string>* formals) {
    ExprPtr base = unary(formals);
    if (accept("^")) return binary(Expr::Op::Pow, base, power(formals));
    return base;
  }

  ExprPtr unary(const std::vector<std::string>* formals) {
    if (accept("-")) {
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::Neg;
      e->lhs = unary(formals);
      return e;
    }
    if (accept("+")) return unary(formals);
    return primary(formals);
  }

  ExprPtr primary(const std::vector<std::string>* formals) {
    const Token& t = peek();
    auto e = std::make_shared<Expr>();
    if (t.type == Tok::Integer || t.type == Tok::Real) {
      next();
      e->number = to_double(t);
      return e;
    }
    if (accept("(")) {
      ExprPtr inner = expression(formals);
      expect(")");
      return inner;
    }
    if (t.type == Tok::Ident) {
      next();
      if (t.text == "pi") {
        e->number = std::numbers::pi;
        return e;
      }
      static const std::vector<std::string> functions = {"sin", "cos", "tan", "exp", "ln", "sqrt"};
      if (std::find(functions.begin(), functions.end(), t.text) != functions.end()) {
        expect("(");
        e->op = Expr::Op::Call;
        e->function = t.text;
        e->lhs = expression(formals);
        expect(")");
        return e;
      }
      if (formals) {
        auto it = std::find(formals->begin(), formals->end(), t.text);
        if (it != formals->end()) {
          e->op = Expr::Op::Formal;
          e->formal = static_cast<std::size_t>(it - formals->begin());
          return e;
        }
      }
      fail(Kind::Semantic, "unknown identifier '" + t.text + "' in expression", t);
    }
    fail(Kind::Syntax, "expected expression but found " + describe(t), t);
  }

  static ExprPtr binary(Expr::Op op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions options_;
  Circuit circuit_;
  bool qelib_included_ = false;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> qregs_;
  std::unordered_map<std::string, GateDefinition> definitions_;
  std::set<std::string> overridable_;
};

}  // namespace

Circuit parse_qasm(std::string_view text, const ParseOptions& options) {
  Lexer lexer(text);
  Parser parser(lexer.run(), options);
  return parser.run();
}

LoadedQasm load_qasm_file(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open QASM file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto start = std::chrono::steady_clock::now();
  Circuit c = parse_qasm(text, options);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(c), elapsed.count()};
}

}  // namespace qbench::qasm
