// Copyright 2026 The Lightsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "lightsim/CircuitIO.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "lightsim/Error.hpp"
#include "lightsim/Gates.hpp"

namespace Lightsim::IO {

using Util::ParseError;

namespace {

/**
 * @brief Character cursor over one source line with 1-based columns.
 */
class LineCursor {
  public:
    LineCursor(std::string_view line, std::size_t line_no)
        : line_{line}, line_no_{line_no} {}

    [[nodiscard]] auto column() const -> std::size_t { return pos_ + 1; }
    [[nodiscard]] auto atEnd() const -> bool { return pos_ >= line_.size(); }
    [[nodiscard]] auto peek() const -> char {
        return atEnd() ? '\0' : line_[pos_];
    }
    [[nodiscard]] auto startsWith(std::string_view s) const -> bool {
        return line_.substr(pos_).starts_with(s);
    }
    void advance(std::size_t n = 1) { pos_ += n; }

    /// Skip blanks; returns whether any were skipped.
    auto skipSpace() -> bool {
        const std::size_t start = pos_;
        while (!atEnd() && (line_[pos_] == ' ' || line_[pos_] == '\t')) {
            pos_++;
        }
        return pos_ != start;
    }

    [[noreturn]] void fail(const std::string &msg) const { failAt(msg, column()); }
    [[noreturn]] void failAt(const std::string &msg, std::size_t column) const {
        throw ParseError(msg, line_no_, column, std::string(line_));
    }

    void expect(char c, const std::string &what) {
        if (peek() != c) {
            fail("expected " + what);
        }
        advance();
    }

    auto identifier() -> std::string_view {
        const std::size_t start = pos_;
        while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                            peek() == '_')) {
            pos_++;
        }
        return line_.substr(start, pos_ - start);
    }

    auto integer(const std::string &what) -> std::size_t {
        const std::size_t start = pos_;
        while (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) {
            pos_++;
        }
        if (start == pos_) {
            failAt("expected " + what, start + 1);
        }
        std::size_t value = 0;
        const auto *first = line_.data() + start;
        const auto [ptr, ec] = std::from_chars(first, line_.data() + pos_, value);
        if (ec != std::errc{}) {
            failAt(what + " is too large", start + 1);
        }
        return value;
    }

    auto number() -> double {
        const std::size_t start = pos_;
        const char *first = line_.data() + pos_;
        const char *last = line_.data() + line_.size();
        if (first != last && *first == '+') {
            first++;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            failAt("expected a number", start + 1);
        }
        if (!std::isfinite(value)) {
            failAt("number must be finite", start + 1);
        }
        pos_ = static_cast<std::size_t>(ptr - line_.data());
        return value;
    }

    [[nodiscard]] auto text() const -> std::string_view { return line_; }

  private:
    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_{0};
};

struct SourceLine {
    std::string_view text; ///< with any trailing comment removed
    std::string_view full;
    std::size_t number;
};

/// Split into lines, drop comments, check any `# format:` header.
auto sourceLines(std::string_view text) -> std::vector<SourceLine> {
    std::vector<SourceLine> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view full = text.substr(start, end - start);
        if (!full.empty() && full.back() == '\r') {
            full.remove_suffix(1);
        }
        line_no++;
        std::string_view body = full;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            std::string_view comment = body.substr(hash + 1);
            while (!comment.empty() && comment.front() == ' ') {
                comment.remove_prefix(1);
            }
            if (comment.starts_with("format:")) {
                LineCursor cur(full, line_no);
                cur.advance(hash + 1);
                cur.skipSpace();
                cur.advance(7);
                cur.skipSpace();
                const std::size_t col = cur.column();
                if (cur.integer("format version") !=
                    static_cast<std::size_t>(format_version)) {
                    cur.failAt("unsupported format version", col);
                }
            }
            body = body.substr(0, hash);
        }
        if (body.find_first_not_of(" \t") != std::string_view::npos) {
            out.push_back({body, full, line_no});
        }
        if (end == text.size()) {
            break;
        }
        start = end + 1;
    }
    return out;
}

void parseHeader(const SourceLine &line, std::size_t &n_qubits) {
    LineCursor cur(line.full, line.number);
    cur.skipSpace();
    const std::size_t col = cur.column();
    if (cur.identifier() != "qubits") {
        cur.failAt("expected header `qubits N`", col);
    }
    if (!cur.skipSpace()) {
        cur.fail("expected whitespace after `qubits`");
    }
    const std::size_t ncol = cur.column();
    n_qubits = cur.integer("qubit count");
    if (n_qubits == 0 || n_qubits > Util::max_qubits) {
        cur.failAt("qubit count must be in 1.." +
                       std::to_string(Util::max_qubits),
                   ncol);
    }
    cur.skipSpace();
    if (cur.column() <= line.text.size()) {
        cur.fail("unexpected text after header");
    }
}

auto parseOperation(const SourceLine &line, std::size_t n_qubits)
    -> Operation {
    LineCursor cur(line.full, line.number);
    const std::size_t body_end = line.text.size() + 1; // column past the body
    auto atBodyEnd = [&] { return cur.column() >= body_end; };
    cur.skipSpace();
    Operation op;
    std::vector<std::size_t> ctrl_cols;

    if (cur.startsWith("CTRL")) {
        cur.advance(4);
        cur.expect('[', "'[' after CTRL");
        while (true) {
            cur.skipSpace();
            ctrl_cols.push_back(cur.column());
            op.ctrls.push_back(cur.integer("control wire"));
            cur.skipSpace();
            if (cur.peek() == ',') {
                cur.advance();
                continue;
            }
            break;
        }
        if (cur.peek() == '=') {
            cur.advance();
            const std::size_t col = cur.column();
            while (cur.peek() == '0' || cur.peek() == '1') {
                op.ctrl_values.push_back(cur.peek() == '1');
                cur.advance();
            }
            if (op.ctrl_values.size() != op.ctrls.size()) {
                cur.failAt("control values must give one bit per control",
                           col);
            }
        }
        cur.expect(']', "',' or ']' in control list");
        if (!cur.skipSpace()) {
            cur.fail("expected whitespace after control list");
        }
    }

    const std::size_t gate_col = cur.column();
    const std::string name(cur.identifier());
    if (name.empty()) {
        cur.failAt("expected a gate name", gate_col);
    }
    auto kind = Gates::parseGateName(name);
    if (!kind) {
        cur.failAt("unknown gate `" + name + "`", gate_col);
    }
    op.kind = *kind;
    if (op.kind == Gates::GateKind::Matrix && !op.ctrls.empty()) {
        op.kind = Gates::GateKind::ControlledMatrix;
    }

    std::vector<double> values;
    if (cur.peek() == '(') {
        cur.advance();
        cur.skipSpace();
        while (true) {
            values.push_back(cur.number());
            cur.skipSpace();
            if (cur.peek() == ',') {
                cur.advance();
                cur.skipSpace();
                continue;
            }
            break;
        }
        cur.expect(')', "',' or ')'");
    }

    std::vector<std::size_t> wire_cols;
    while (true) {
        const bool spaced = cur.skipSpace();
        if (atBodyEnd() || !std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            if (!atBodyEnd() && !spaced) {
                cur.fail("expected whitespace");
            }
            break;
        }
        if (!spaced) {
            cur.fail("expected whitespace before wire");
        }
        wire_cols.push_back(cur.column());
        op.wires.push_back(cur.integer("wire"));
    }
    if (op.wires.empty()) {
        cur.fail("expected at least one wire");
    }

    std::vector<std::size_t> train_idx;
    bool train_all = false;
    std::size_t train_col = 0;
    if (!atBodyEnd()) {
        train_col = cur.column();
        if (cur.identifier() != "train") {
            cur.failAt("expected a wire or `train`", train_col);
        }
        if (cur.peek() == '[') {
            cur.advance();
            while (true) {
                cur.skipSpace();
                train_idx.push_back(cur.integer("parameter index"));
                cur.skipSpace();
                if (cur.peek() == ',') {
                    cur.advance();
                    continue;
                }
                break;
            }
            cur.expect(']', "',' or ']' in train list");
        } else {
            train_all = true;
        }
        cur.skipSpace();
        if (!atBodyEnd()) {
            cur.fail("unexpected text after `train`");
        }
    }

    if (Gates::isMatrixGate(op.kind)) {
        const std::size_t dim = Util::exp2(std::min<std::size_t>(op.wires.size(), 31));
        if (values.size() != 2 * dim * dim) {
            cur.failAt(name + " expects " + std::to_string(2 * dim * dim) +
                           " numbers (re,im pairs) for " +
                           std::to_string(op.wires.size()) + " wire(s), got " +
                           std::to_string(values.size()),
                       gate_col);
        }
        op.matrix.resize(dim * dim);
        for (std::size_t i = 0; i < dim * dim; i++) {
            op.matrix[i] = {values[2 * i], values[2 * i + 1]};
        }
    } else {
        op.params = std::move(values);
        if (op.params.size() != Gates::numParams(op.kind)) {
            cur.failAt(name + " takes " +
                           std::to_string(Gates::numParams(op.kind)) +
                           " parameter(s), got " +
                           std::to_string(op.params.size()),
                       gate_col);
        }
        if (op.wires.size() != Gates::numWires(op.kind)) {
            cur.failAt(name + " acts on " +
                           std::to_string(Gates::numWires(op.kind)) +
                           " wire(s), got " + std::to_string(op.wires.size()),
                       gate_col);
        }
    }
    for (std::size_t i = 0; i < op.wires.size(); i++) {
        if (op.wires[i] >= n_qubits) {
            cur.failAt("wire " + std::to_string(op.wires[i]) +
                           " out of range for " + std::to_string(n_qubits) +
                           " qubit(s)",
                       wire_cols[i]);
        }
    }
    for (std::size_t i = 0; i < op.ctrls.size(); i++) {
        if (op.ctrls[i] >= n_qubits) {
            cur.failAt("control wire " + std::to_string(op.ctrls[i]) +
                           " out of range",
                       ctrl_cols[i]);
        }
    }
    if (train_all || !train_idx.empty()) {
        if (op.params.empty()) {
            cur.failAt(name + " has no parameters to train", train_col);
        }
        op.trainable.assign(op.params.size(), train_all);
        for (std::size_t idx : train_idx) {
            if (idx >= op.params.size()) {
                cur.failAt("train index " + std::to_string(idx) +
                               " out of range",
                           train_col);
            }
            op.trainable[idx] = true;
        }
    }
    try {
        validateOperation(op, n_qubits);
    } catch (const Util::ValidationError &e) {
        cur.failAt(e.what(), gate_col);
    }
    return op;
}

void appendList(std::string &out, const std::vector<std::size_t> &xs) {
    for (std::size_t i = 0; i < xs.size(); i++) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(xs[i]);
    }
}

} // namespace

auto formatDouble(double value) -> std::string {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return {buf, ptr};
}

auto parseCircuit(std::string_view text) -> Circuit {
    const auto lines = sourceLines(text);
    if (lines.empty()) {
        throw ParseError("expected header `qubits N`", 1, 1);
    }
    std::size_t n_qubits = 0;
    parseHeader(lines.front(), n_qubits);
    Circuit circuit(n_qubits);
    for (std::size_t i = 1; i < lines.size(); i++) {
        circuit.add(parseOperation(lines[i], n_qubits));
    }
    return circuit;
}

auto serializeCircuit(const Circuit &circuit) -> std::string {
    std::string out = "# format: " + std::to_string(format_version) + "\n";
    out += "qubits " + std::to_string(circuit.getNumQubits()) + "\n";
    for (const auto &op : circuit.operations()) {
        if (!op.ctrls.empty()) {
            out += "CTRL[";
            appendList(out, op.ctrls);
            const bool all_ones = std::all_of(op.ctrl_values.begin(),
                                              op.ctrl_values.end(),
                                              [](bool b) { return b; });
            if (!all_ones) {
                out += '=';
                for (bool b : op.ctrl_values) {
                    out += b ? '1' : '0';
                }
            }
            out += "] ";
        }
        const bool matrix = Gates::isMatrixGate(op.kind);
        out += matrix ? std::string("Matrix")
                      : std::string(Gates::gateName(op.kind));
        std::vector<double> values = op.params;
        if (matrix) {
            for (const auto &z : op.matrix) {
                values.push_back(z.real());
                values.push_back(z.imag());
            }
        }
        if (!values.empty()) {
            out += '(';
            for (std::size_t i = 0; i < values.size(); i++) {
                if (i > 0) {
                    out += ',';
                }
                out += formatDouble(values[i]);
            }
            out += ')';
        }
        for (std::size_t w : op.wires) {
            out += ' ' + std::to_string(w);
        }
        const auto n_train = static_cast<std::size_t>(
            std::count(op.trainable.begin(), op.trainable.end(), true));
        if (n_train == op.params.size() && n_train > 0) {
            out += " train";
        } else if (n_train > 0) {
            std::vector<std::size_t> idx;
            for (std::size_t p = 0; p < op.params.size(); p++) {
                if (op.trainable[p]) {
                    idx.push_back(p);
                }
            }
            out += " train[";
            appendList(out, idx);
            out += ']';
        }
        out += '\n';
    }
    return out;
}

auto parseHamiltonian(std::string_view text) -> Observables::Hamiltonian {
    using Observables::Pauli;
    Observables::Hamiltonian h;
    for (const auto &line : sourceLines(text)) {
        LineCursor cur(line.full, line.number);
        cur.skipSpace();
        const double coeff = cur.number();
        cur.skipSpace();
        cur.expect('[', "'[' opening the Pauli word");
        Observables::PauliWord word;
        std::vector<std::size_t> seen;
        while (true) {
            cur.skipSpace();
            if (cur.peek() == ']') {
                cur.advance();
                break;
            }
            const std::size_t col = cur.column();
            const char p = cur.peek();
            if (p != 'X' && p != 'Y' && p != 'Z' && p != 'I') {
                cur.failAt("malformed Pauli token; expected X, Y, Z or I "
                           "followed by a wire",
                           col);
            }
            cur.advance();
            if (!std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                cur.failAt("malformed Pauli token; missing wire index", col);
            }
            const std::size_t wire = cur.integer("wire");
            if (wire >= Util::max_qubits) {
                cur.failAt("wire out of range", col);
            }
            if (std::find(seen.begin(), seen.end(), wire) != seen.end()) {
                cur.failAt("duplicate wire " + std::to_string(wire) +
                               " within a term",
                           col);
            }
            seen.push_back(wire);
            if (p != 'I') {
                word.factors.emplace_back(wire, static_cast<Pauli>(p));
            }
            const char next = cur.peek();
            if (next != ' ' && next != '\t' && next != ']') {
                cur.fail("malformed Pauli token");
            }
        }
        cur.skipSpace();
        if (cur.column() <= line.text.size()) {
            cur.fail("unexpected text after the Pauli word");
        }
        h.coeffs.push_back(coeff);
        h.terms.push_back(std::move(word));
    }
    return h;
}

auto serializeHamiltonian(const Observables::Hamiltonian &h) -> std::string {
    std::string out = "# format: " + std::to_string(format_version) + "\n";
    for (std::size_t t = 0; t < h.terms.size(); t++) {
        out += formatDouble(h.coeffs[t]) + " [";
        bool first = true;
        for (const auto &[wire, p] : h.terms[t].factors) {
            if (!first) {
                out += ' ';
            }
            first = false;
            out += static_cast<char>(p);
            out += std::to_string(wire);
        }
        out += "]\n";
    }
    return out;
}

auto hamiltonianQubits(const Observables::Hamiltonian &h) -> std::size_t {
    std::size_t n = 1;
    for (const auto &term : h.terms) {
        for (const auto &[wire, p] : term.factors) {
            n = std::max(n, wire + 1);
        }
    }
    return n;
}

auto readFile(const std::string &path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Util::ValidationError("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace Lightsim::IO
