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
/**
 * @file Circuit.hpp
 * Ordered gate lists with flattened parameter access.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "Error.hpp"
#include "GateApply.hpp"
#include "Operation.hpp"
#include "StateVector.hpp"

namespace Lightsim {

/// Location of one flattened parameter inside a circuit.
struct ParamRef {
    std::size_t op;
    std::size_t param;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t n_qubits) : n_qubits_{n_qubits} {
        LS_ABORT_IF(n_qubits == 0, "Circuit: n_qubits must be >= 1");
        LS_ABORT_IF(n_qubits > Util::max_qubits,
                    "Circuit: n_qubits exceeds the supported maximum");
    }

    /// Validate, normalize and append an operation.
    auto add(Operation op) -> Circuit & {
        validateOperation(op, n_qubits_);
        ops_.push_back(normalized(std::move(op)));
        return *this;
    }

    [[nodiscard]] auto getNumQubits() const -> std::size_t { return n_qubits_; }
    [[nodiscard]] auto operations() const -> const std::vector<Operation> & {
        return ops_;
    }
    [[nodiscard]] auto size() const -> std::size_t { return ops_.size(); }

    [[nodiscard]] auto numParams() const -> std::size_t {
        std::size_t n = 0;
        for (const auto &op : ops_) {
            n += op.params.size();
        }
        return n;
    }

    /// Flattened parameter index -> (operation, parameter) in circuit order.
    [[nodiscard]] auto paramRefs() const -> std::vector<ParamRef> {
        std::vector<ParamRef> refs;
        for (std::size_t i = 0; i < ops_.size(); i++) {
            for (std::size_t p = 0; p < ops_[i].params.size(); p++) {
                refs.push_back({i, p});
            }
        }
        return refs;
    }

    [[nodiscard]] auto getParams() const -> std::vector<double> {
        std::vector<double> out;
        for (const auto &op : ops_) {
            out.insert(out.end(), op.params.begin(), op.params.end());
        }
        return out;
    }

    void setParams(const std::vector<double> &params) {
        LS_ABORT_IF(params.size() != numParams(),
                    "setParams: expected " + std::to_string(numParams()) +
                        " values, got " + std::to_string(params.size()));
        std::size_t k = 0;
        for (auto &op : ops_) {
            for (auto &p : op.params) {
                p = params[k++];
            }
        }
    }

    void setParam(std::size_t index, double value) {
        const auto refs = paramRefs();
        LS_ABORT_IF(index >= refs.size(), "setParam: index out of range");
        ops_[refs[index].op].params[refs[index].param] = value;
    }

    /// Flattened indices of parameters flagged trainable.
    [[nodiscard]] auto trainableParams() const -> std::vector<std::size_t> {
        std::vector<std::size_t> out;
        std::size_t k = 0;
        for (const auto &op : ops_) {
            for (std::size_t p = 0; p < op.params.size(); p++, k++) {
                if (op.isTrainable(p)) {
                    out.push_back(k);
                }
            }
        }
        return out;
    }

    auto operator==(const Circuit &) const -> bool = default;

  private:
    std::size_t n_qubits_{0};
    std::vector<Operation> ops_;
};

template <class PrecisionT>
void applyCircuit(StateVector<PrecisionT> &sv, const Circuit &circuit,
                  const KernelConfig &config = {}) {
    LS_ABORT_IF(sv.getNumQubits() != circuit.getNumQubits(),
                "applyCircuit: register size mismatch");
    for (const auto &op : circuit.operations()) {
        applyOperation(sv, op, false, config);
    }
}

/// Run `circuit` on |0...0>.
template <class PrecisionT = double>
auto runCircuit(const Circuit &circuit, const KernelConfig &config = {})
    -> StateVector<PrecisionT> {
    StateVector<PrecisionT> sv(circuit.getNumQubits());
    applyCircuit(sv, circuit, config);
    return sv;
}

} // namespace Lightsim
