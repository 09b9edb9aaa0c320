// Copyright (c) qcmark contributors.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "qcmark/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qcmark {

bool ParseResult::ok() const {
    if (!circuit) return false;
    for (const auto& d : diagnostics)
        if (d.severity == ParseDiagnostic::Severity::Error) return false;
    return true;
}

const Circuit& ParseResult::value() const {
    if (!ok()) {
        std::string msg = "parse failed";
        for (const auto& d : diagnostics)
            if (d.severity == ParseDiagnostic::Severity::Error) {
                msg = "parse error at " + std::to_string(d.line) + ":" +
                      std::to_string(d.column) + ": " + d.message;
                break;
            }
        throw std::runtime_error(msg);
    }
    return *circuit;
}

namespace {

enum class TokKind { Ident, Number, String, Symbol, Arrow, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;
    double number = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= src_.size()) return tok; // End
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok.kind = TokKind::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                tok.text += advance();
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            tok.kind = TokKind::Number;
            while (pos_ < src_.size() &&
                   (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                tok.text += advance();
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                tok.text += advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                    tok.text += advance();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    tok.text += advance();
            }
            try {
                tok.number = std::stod(tok.text);
            } catch (const std::exception&) {
                tok.kind = TokKind::Symbol; // malformed number surfaces as a syntax error
            }
            return tok;
        }
        if (c == '"') {
            tok.kind = TokKind::String;
            advance();
            while (pos_ < src_.size() && src_[pos_] != '"') tok.text += advance();
            if (pos_ < src_.size()) advance(); // closing quote
            return tok;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            tok.kind = TokKind::Arrow;
            tok.text = "->";
            advance();
            advance();
            return tok;
        }
        tok.kind = TokKind::Symbol;
        tok.text = advance();
        return tok;
    }

private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

struct Register {
    int offset = 0;
    int size = 0;
};

class Parser {
public:
    explicit Parser(const QasmSource& src) : lexer_(src.text) { advance(); }

    ParseResult run() {
        parse_header();
        while (cur_.kind != TokKind::End && errors_ < kMaxErrors) parse_statement();
        ParseResult result;
        result.diagnostics = std::move(diags_);
        Circuit circuit(num_qubits(), num_clbits());
        // replay recorded instructions; re-validate against final sizes
        bool all_ok = true;
        for (auto& inst : pending_) {
            try {
                circuit.add(std::move(inst));
            } catch (const std::exception& e) {
                all_ok = false;
                result.diagnostics.push_back({1, 1, e.what(), ParseDiagnostic::Severity::Error});
            }
        }
        bool has_error = !all_ok;
        for (const auto& d : result.diagnostics)
            if (d.severity == ParseDiagnostic::Severity::Error) has_error = true;
        if (!has_error) result.circuit = std::move(circuit);
        return result;
    }

private:
    static constexpr int kMaxErrors = 50;

    void advance() { cur_ = lexer_.next(); }

    void error_at(const Token& tok, std::string msg) {
        ++errors_;
        diags_.push_back({tok.line, tok.col, std::move(msg), ParseDiagnostic::Severity::Error});
    }

    void warn_at(const Token& tok, std::string msg) {
        diags_.push_back({tok.line, tok.col, std::move(msg), ParseDiagnostic::Severity::Warning});
    }

    /// skip to just past the next ';' (error recovery)
    void synchronize() {
        while (cur_.kind != TokKind::End && !(cur_.kind == TokKind::Symbol && cur_.text == ";"))
            advance();
        if (cur_.kind != TokKind::End) advance();
    }

    bool expect_symbol(const std::string& sym) {
        if (cur_.kind == TokKind::Symbol && cur_.text == sym) {
            advance();
            return true;
        }
        error_at(cur_, "expected '" + sym + "'");
        return false;
    }

    void parse_header() {
        if (cur_.kind == TokKind::Ident && cur_.text == "OPENQASM") {
            advance();
            if (cur_.kind != TokKind::Number || cur_.text != "2.0") {
                error_at(cur_, "unsupported OPENQASM version (expected 2.0)");
                synchronize();
                return;
            }
            advance();
            if (!expect_symbol(";")) synchronize();
        } else {
            error_at(cur_, "first statement must be 'OPENQASM 2.0;'");
        }
    }

    int num_qubits() const {
        int n = 0;
        for (const auto& [name, reg] : qregs_) n = std::max(n, reg.offset + reg.size);
        return n;
    }

    int num_clbits() const {
        int n = 0;
        for (const auto& [name, reg] : cregs_) n = std::max(n, reg.offset + reg.size);
        return n;
    }

    void parse_statement() {
        if (cur_.kind == TokKind::Symbol && cur_.text == ";") { // stray semicolon
            advance();
            return;
        }
        if (cur_.kind != TokKind::Ident) {
            error_at(cur_, "expected statement");
            synchronize();
            return;
        }
        const std::string word = cur_.text;
        if (word == "include") return parse_include();
        if (word == "qreg" || word == "creg") return parse_register(word == "qreg");
        if (word == "barrier") return parse_barrier();
        if (word == "measure") return parse_measure();
        if (word == "gate") {
            error_at(cur_, "user-defined gates are not supported");
            // skip the whole definition: through the brace body if present
            while (cur_.kind != TokKind::End &&
                   !(cur_.kind == TokKind::Symbol && (cur_.text == "{" || cur_.text == ";")))
                advance();
            if (cur_.kind == TokKind::Symbol && cur_.text == "{") {
                while (cur_.kind != TokKind::End &&
                       !(cur_.kind == TokKind::Symbol && cur_.text == "}"))
                    advance();
            }
            if (cur_.kind != TokKind::End) advance();
            return;
        }
        if (word == "opaque") return fail_statement("opaque gates are not supported");
        if (word == "if" || word == "reset")
            return fail_statement("'" + word + "' statements are not supported");
        parse_gate_application();
    }

    void fail_statement(std::string msg) {
        error_at(cur_, std::move(msg));
        synchronize();
    }

    void parse_include() {
        advance();
        if (cur_.kind != TokKind::String) {
            error_at(cur_, "expected include file string");
            synchronize();
            return;
        }
        if (cur_.text != "qelib1.inc")
            warn_at(cur_, "unrecognized include '" + cur_.text + "' (treated as qelib1.inc)");
        advance();
        if (!expect_symbol(";")) synchronize();
    }

    void parse_register(bool quantum) {
        advance();
        if (cur_.kind != TokKind::Ident) {
            error_at(cur_, "expected register name");
            synchronize();
            return;
        }
        const std::string name = cur_.text;
        const Token name_tok = cur_;
        advance();
        if (!expect_symbol("[")) return synchronize();
        if (cur_.kind != TokKind::Number || cur_.number < 1 ||
            cur_.number != std::floor(cur_.number)) {
            error_at(cur_, "expected positive register size");
            synchronize();
            return;
        }
        const int size = static_cast<int>(cur_.number);
        advance();
        if (!expect_symbol("]")) return synchronize();
        if (!expect_symbol(";")) return synchronize();
        auto& table = quantum ? qregs_ : cregs_;
        if (table.count(name)) {
            error_at(name_tok, "register '" + name + "' already declared");
            return;
        }
        const int offset = quantum ? num_qubits() : num_clbits();
        table[name] = Register{offset, size};
    }

    struct Operand {
        std::string reg;
        int index = -1; // -1 = whole register
        Token tok;
    };

    std::optional<Operand> parse_operand(bool quantum) {
        if (cur_.kind != TokKind::Ident) {
            error_at(cur_, "expected register operand");
            return std::nullopt;
        }
        Operand op;
        op.reg = cur_.text;
        op.tok = cur_;
        advance();
        const auto& table = quantum ? qregs_ : cregs_;
        auto it = table.find(op.reg);
        if (it == table.end()) {
            error_at(op.tok, std::string("undeclared ") + (quantum ? "qreg '" : "creg '") +
                                 op.reg + "'");
            return std::nullopt;
        }
        if (cur_.kind == TokKind::Symbol && cur_.text == "[") {
            advance();
            if (cur_.kind != TokKind::Number || cur_.number != std::floor(cur_.number)) {
                error_at(cur_, "expected integer index");
                return std::nullopt;
            }
            op.index = static_cast<int>(cur_.number);
            const Token idx_tok = cur_;
            advance();
            if (!expect_symbol("]")) return std::nullopt;
            if (op.index < 0 || op.index >= it->second.size) {
                error_at(idx_tok, "index out of bounds for register '" + op.reg + "' of size " +
                                      std::to_string(it->second.size));
                return std::nullopt;
            }
        }
        return op;
    }

    int flat_index(const Operand& op, bool quantum) const {
        const auto& table = quantum ? qregs_ : cregs_;
        return table.at(op.reg).offset + op.index;
    }

    void parse_barrier() {
        advance();
        std::vector<int> qubits;
        while (true) {
            auto op = parse_operand(true);
            if (!op) return synchronize();
            if (op->index < 0) {
                const auto& reg = qregs_.at(op->reg);
                for (int i = 0; i < reg.size; ++i) qubits.push_back(reg.offset + i);
            } else {
                qubits.push_back(flat_index(*op, true));
            }
            if (cur_.kind == TokKind::Symbol && cur_.text == ",") {
                advance();
                continue;
            }
            break;
        }
        if (!expect_symbol(";")) return synchronize();
        pending_.push_back(Instruction::barrier(std::move(qubits)));
    }

    void parse_measure() {
        advance();
        auto q = parse_operand(true);
        if (!q) return synchronize();
        if (cur_.kind != TokKind::Arrow) {
            error_at(cur_, "expected '->'");
            return synchronize();
        }
        advance();
        auto c = parse_operand(false);
        if (!c) return synchronize();
        if (!expect_symbol(";")) return synchronize();
        if (q->index >= 0 && c->index >= 0) {
            pending_.push_back(Instruction::measure(flat_index(*q, true), flat_index(*c, false)));
        } else if (q->index < 0 && c->index < 0) {
            const auto& qreg = qregs_.at(q->reg);
            const auto& creg = cregs_.at(c->reg);
            if (qreg.size != creg.size) {
                error_at(q->tok, "register sizes differ in broadcast measure");
                return;
            }
            for (int i = 0; i < qreg.size; ++i)
                pending_.push_back(Instruction::measure(qreg.offset + i, creg.offset + i));
        } else {
            error_at(q->tok, "measure operands must both be indexed or both whole registers");
        }
    }

    void parse_gate_application() {
        const Token name_tok = cur_;
        auto kind = gate_kind_from_name(cur_.text);
        if (!kind) {
            error_at(name_tok, "unknown gate '" + cur_.text + "'");
            return synchronize();
        }
        advance();
        std::vector<double> params;
        if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
            advance();
            if (!(cur_.kind == TokKind::Symbol && cur_.text == ")")) {
                while (true) {
                    auto v = parse_expression();
                    if (!v) return synchronize();
                    params.push_back(*v);
                    if (cur_.kind == TokKind::Symbol && cur_.text == ",") {
                        advance();
                        continue;
                    }
                    break;
                }
            }
            if (!expect_symbol(")")) return synchronize();
        }
        if (static_cast<int>(params.size()) != param_arity(*kind)) {
            error_at(name_tok, "gate '" + std::string(gate_name(*kind)) + "' expects " +
                                   std::to_string(param_arity(*kind)) + " parameter(s), got " +
                                   std::to_string(params.size()));
            return synchronize();
        }
        std::vector<Operand> operands;
        while (true) {
            auto op = parse_operand(true);
            if (!op) return synchronize();
            operands.push_back(*op);
            if (cur_.kind == TokKind::Symbol && cur_.text == ",") {
                advance();
                continue;
            }
            break;
        }
        if (!expect_symbol(";")) return synchronize();

        const int arity = qubit_arity(*kind);
        if (arity == 1 && operands.size() == 1 && operands[0].index < 0) {
            // whole-register broadcast for single-qubit gates
            const auto& reg = qregs_.at(operands[0].reg);
            for (int i = 0; i < reg.size; ++i)
                pending_.push_back(Instruction::gate(*kind, {reg.offset + i}, params));
            return;
        }
        if (static_cast<int>(operands.size()) != arity) {
            error_at(name_tok, "gate '" + std::string(gate_name(*kind)) + "' expects " +
                                   std::to_string(arity) + " qubit argument(s)");
            return;
        }
        std::vector<int> qubits;
        for (const auto& op : operands) {
            if (op.index < 0) {
                error_at(op.tok, "expected indexed qubit operand");
                return;
            }
            qubits.push_back(flat_index(op, true));
        }
        if (arity == 2 && qubits[0] == qubits[1]) {
            error_at(name_tok, "two-qubit gate requires distinct qubits");
            return;
        }
        pending_.push_back(Instruction::gate(*kind, std::move(qubits), std::move(params)));
    }

    // expression grammar: expr := term (('+'|'-') term)*
    //                     term := factor (('*'|'/') factor)*
    //                     factor := '-' factor | number | 'pi' | '(' expr ')'
    std::optional<double> parse_expression() {
        auto v = parse_term();
        if (!v) return std::nullopt;
        while (cur_.kind == TokKind::Symbol && (cur_.text == "+" || cur_.text == "-")) {
            const bool add = cur_.text == "+";
            advance();
            auto rhs = parse_term();
            if (!rhs) return std::nullopt;
            v = add ? *v + *rhs : *v - *rhs;
        }
        return v;
    }

    std::optional<double> parse_term() {
        auto v = parse_factor();
        if (!v) return std::nullopt;
        while (cur_.kind == TokKind::Symbol && (cur_.text == "*" || cur_.text == "/")) {
            const bool mul = cur_.text == "*";
            const Token op_tok = cur_;
            advance();
            auto rhs = parse_factor();
            if (!rhs) return std::nullopt;
            if (!mul && *rhs == 0.0) {
                error_at(op_tok, "division by zero in parameter expression");
                return std::nullopt;
            }
            v = mul ? *v * *rhs : *v / *rhs;
        }
        return v;
    }

    std::optional<double> parse_factor() {
        if (cur_.kind == TokKind::Symbol && cur_.text == "-") {
            advance();
            auto v = parse_factor();
            if (!v) return std::nullopt;
            return -*v;
        }
        if (cur_.kind == TokKind::Number) {
            double v = cur_.number;
            advance();
            return v;
        }
        if (cur_.kind == TokKind::Ident && cur_.text == "pi") {
            advance();
            return M_PI;
        }
        if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
            advance();
            auto v = parse_expression();
            if (!v) return std::nullopt;
            if (!expect_symbol(")")) return std::nullopt;
            return v;
        }
        error_at(cur_, "expected parameter expression");
        return std::nullopt;
    }

    Lexer lexer_;
    Token cur_;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::vector<Instruction> pending_;
    std::vector<ParseDiagnostic> diags_;
    int errors_ = 0;
};

} // namespace

ParseResult parse(const QasmSource& src) { return Parser(src).run(); }

std::string format_angle(double value) {
    if (std::abs(value) < 1e-12) return "0";
    const double step = M_PI / 12.0;
    const double k_real = value / step;
    const long long k = std::llround(k_real);
    if (k != 0 && std::llabs(k) <= 1000 && std::abs(value - static_cast<double>(k) * step) <= 1e-12) {
        const long long g = std::gcd(std::llabs(k), 12LL);
        const long long num = k / g;
        const long long den = 12 / g;
        std::string s;
        if (num == 1) s = "pi";
        else if (num == -1) s = "-pi";
        else s = std::to_string(num) + "*pi";
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

QasmSource emit(const Circuit& circuit) {
    std::string out;
    out += "OPENQASM 2.0;\n";
    out += "include \"qelib1.inc\";\n";
    if (circuit.num_qubits > 0)
        out += "qreg q[" + std::to_string(circuit.num_qubits) + "];\n";
    if (circuit.num_clbits > 0)
        out += "creg c[" + std::to_string(circuit.num_clbits) + "];\n";
    for (const auto& inst : circuit.instructions) {
        switch (inst.type) {
        case OpType::Barrier: {
            out += "barrier ";
            for (size_t i = 0; i < inst.qubits.size(); ++i) {
                if (i) out += ",";
                out += "q[" + std::to_string(inst.qubits[i]) + "]";
            }
            out += ";\n";
            break;
        }
        case OpType::Measure:
            out += "measure q[" + std::to_string(inst.qubits[0]) + "] -> c[" +
                   std::to_string(inst.clbit) + "];\n";
            break;
        case OpType::Gate: {
            out += std::string(gate_name(inst.kind));
            if (!inst.params.empty()) {
                out += "(";
                for (size_t i = 0; i < inst.params.size(); ++i) {
                    if (i) out += ",";
                    out += format_angle(inst.params[i]);
                }
                out += ")";
            }
            out += " ";
            for (size_t i = 0; i < inst.qubits.size(); ++i) {
                if (i) out += ",";
                out += "q[" + std::to_string(inst.qubits[i]) + "]";
            }
            out += ";\n";
            break;
        }
        }
    }
    return QasmSource{std::move(out), "<emitted>"};
}

} // namespace qcmark
