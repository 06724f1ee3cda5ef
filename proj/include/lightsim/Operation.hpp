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
 * @file Operation.hpp
 * A single gate application: kind, wires, parameters and controls.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "Error.hpp"
#include "Gates.hpp"

namespace Lightsim {

struct Operation {
    Gates::GateKind kind{Gates::GateKind::I};
    /// Target wires; for CNOT/CZ the first entry is the control.
    std::vector<std::size_t> wires;
    std::vector<double> params;
    std::vector<std::size_t> ctrls;
    std::vector<bool> ctrl_values; ///< empty means all ones
    std::vector<bool> trainable;   ///< per parameter; empty means none
    Gates::Matrix matrix;          ///< only for Matrix / ControlledMatrix

    auto operator==(const Operation &) const -> bool = default;

    [[nodiscard]] auto isTrainable(std::size_t param) const -> bool {
        return param < trainable.size() && trainable[param];
    }
    [[nodiscard]] auto ctrlValue(std::size_t i) const -> bool {
        return ctrl_values.empty() || ctrl_values[i];
    }
};

inline auto makeOp(Gates::GateKind kind, std::vector<std::size_t> wires,
                   std::vector<double> params = {}, bool trainable = false)
    -> Operation {
    Operation op;
    op.kind = kind;
    op.wires = std::move(wires);
    op.params = std::move(params);
    if (trainable) {
        op.trainable.assign(op.params.size(), true);
    }
    return op;
}

inline auto makeControlledOp(Gates::GateKind kind,
                             std::vector<std::size_t> ctrls,
                             std::vector<bool> ctrl_values,
                             std::vector<std::size_t> wires,
                             std::vector<double> params = {}) -> Operation {
    Operation op = makeOp(kind, std::move(wires), std::move(params));
    op.ctrls = std::move(ctrls);
    op.ctrl_values = std::move(ctrl_values);
    return op;
}

/// Fill defaulted control values and trainable flags explicitly.
inline auto normalized(Operation op) -> Operation {
    if (op.ctrl_values.empty()) {
        op.ctrl_values.assign(op.ctrls.size(), true);
    }
    if (op.trainable.empty()) {
        op.trainable.assign(op.params.size(), false);
    }
    return op;
}

/// Throws ValidationError when `op` is malformed for an n-qubit register.
inline void validateOperation(const Operation &op, std::size_t n_qubits) {
    using Gates::GateKind;
    const std::string name(Gates::gateName(op.kind));
    if (Gates::isMatrixGate(op.kind)) {
        LS_ABORT_IF(op.wires.empty(), name + ": no target wires");
        LS_ABORT_IF(op.wires.size() > Util::max_qubits,
                    name + ": too many target wires");
        const std::size_t dim = Util::exp2(op.wires.size());
        LS_ABORT_IF(op.matrix.size() != dim * dim,
                    name + ": matrix size does not match the wires");
        LS_ABORT_IF(op.kind == GateKind::ControlledMatrix && op.ctrls.empty(),
                    name + ": requires at least one control");
        LS_ABORT_IF(op.kind == GateKind::Matrix && !op.ctrls.empty(),
                    name + ": use ControlledMatrix for controlled matrices");
        LS_ABORT_IF(!op.params.empty(), name + ": takes no parameters");
    } else {
        LS_ABORT_IF(op.wires.size() != Gates::numWires(op.kind),
                    name + ": expected " +
                        std::to_string(Gates::numWires(op.kind)) +
                        " wire(s), got " + std::to_string(op.wires.size()));
        LS_ABORT_IF(op.params.size() != Gates::numParams(op.kind),
                    name + ": expected " +
                        std::to_string(Gates::numParams(op.kind)) +
                        " parameter(s), got " +
                        std::to_string(op.params.size()));
        LS_ABORT_IF(!op.matrix.empty(), name + ": unexpected matrix");
    }
    LS_ABORT_IF(!op.ctrl_values.empty() &&
                    op.ctrl_values.size() != op.ctrls.size(),
                name + ": control values must match the controls");
    LS_ABORT_IF(!op.trainable.empty() && op.trainable.size() != op.params.size(),
                name + ": trainable flags must match the parameters");
    std::vector<std::size_t> all = op.wires;
    all.insert(all.end(), op.ctrls.begin(), op.ctrls.end());
    for (std::size_t w : all) {
        LS_ABORT_IF(w >= n_qubits, name + ": wire " + std::to_string(w) +
                                       " out of range");
    }
    std::sort(all.begin(), all.end());
    LS_ABORT_IF(std::adjacent_find(all.begin(), all.end()) != all.end(),
                name + ": wires and controls must be distinct");
}

} // namespace Lightsim
