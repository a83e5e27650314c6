// Copyright 2026 The gsim Authors
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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "gsim/circuit.h"
#include "gsim/gen_stab_state.h"
#include "gsim/noise.h"
#include "gsim/oracle.h"
#include "gsim/rng.h"
#include "gsim/sampler.h"

namespace py = pybind11;
using namespace gsim;

namespace {

py::object from_json(const std::string &text) {
    return py::module_::import("json").attr("loads")(text);
}

Gate gate_or_throw(const std::string &name) {
    auto g = gate_from_name(name);
    if (!g) {
        throw std::invalid_argument("unknown gate '" + name + "'");
    }
    return *g;
}

py::dict stats_dict(const CircuitStats &s) {
    py::dict d;
    d["total_qubits"] = s.total_qubits;
    d["total_gates"] = s.total_gates;
    d["depth"] = s.depth;
    d["two_qubit_gates"] = s.two_qubit_gates;
    d["measurements"] = s.measurements;
    d["t_count"] = s.t_count;
    d["t_support_size"] = s.t_support_size;
    d["t_depth"] = s.t_depth;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Generalized stabilizer sampler for noisy Clifford+T circuits.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CapacityExceeded>(m, "CapacityExceeded", PyExc_RuntimeError);

    py::class_<CircuitProgram>(m, "Circuit")
        .def(py::init([](const std::string &text) { return parse_circuit(text); }), py::arg("text") = "")
        .def_static("from_file", &parse_circuit_file, py::arg("path"))
        .def_readonly("num_qubits", &CircuitProgram::num_qubits)
        .def_readonly("num_measurements", &CircuitProgram::num_measurements)
        .def_readonly("num_detectors", &CircuitProgram::num_detectors)
        .def_readonly("num_observables", &CircuitProgram::num_observables)
        .def("has_noise", &CircuitProgram::has_noise)
        .def("stats", [](const CircuitProgram &p) { return stats_dict(compute_stats(p)); })
        .def("with_noise", &apply_noise_model, py::arg("p"), "Uniform depolarizing noise model of strength p.")
        .def("__str__", &CircuitProgram::str)
        .def("__eq__", [](const CircuitProgram &a, const CircuitProgram &b) { return a == b; })
        .def("__repr__", [](const CircuitProgram &p) { return "gsim.Circuit(" + py::repr(py::str(p.str())).cast<std::string>() + ")"; });

    m.def(
        "sample",
        [](const CircuitProgram &prog, uint64_t shots, uint64_t seed, size_t threads, size_t batch_size,
           bool postselect, size_t entry_capacity) {
            SamplerConfig cfg;
            cfg.shots = shots;
            cfg.master_seed = seed;
            cfg.threads = threads;
            cfg.batch_size = batch_size;
            cfg.postselect = postselect;
            cfg.entry_capacity = entry_capacity;
            RunStats s;
            {
                py::gil_scoped_release release;
                s = run_batch(prog, cfg);
            }
            return from_json(s.to_json());
        },
        py::arg("circuit"), py::arg("shots"), py::arg("seed") = 0, py::arg("threads") = 1,
        py::arg("batch_size") = 1024, py::arg("postselect") = false, py::arg("entry_capacity") = kDefaultEntryCapacity,
        "Samples shots and returns the run statistics as a dict.");

    m.def(
        "crosscheck",
        [](const CircuitProgram &prog, uint64_t shots, uint64_t seed, double tolerance) {
            return from_json(crosscheck(prog, shots, seed, tolerance).to_json());
        },
        py::arg("circuit"), py::arg("shots") = 10, py::arg("seed") = 0, py::arg("tolerance") = 1e-10,
        "Lockstep comparison against the dense reference simulator.");

    m.def(
        "random_circuit",
        [](uint64_t seed, size_t max_qubits, size_t max_gates, size_t max_t) {
            std::mt19937_64 rng(seed);
            RandomCircuitOptions opts;
            opts.max_qubits = max_qubits;
            opts.max_gates = max_gates;
            opts.max_t = max_t;
            return parse_circuit(random_circuit_text(opts, rng));
        },
        py::arg("seed"), py::arg("max_qubits") = 10, py::arg("max_gates") = 40, py::arg("max_t") = 8);

    m.def("bayes_interval", &bayes_interval, py::arg("k"), py::arg("n"), py::arg("factor") = 1000.0);
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("shot_index"));

    py::class_<GenStabState>(m, "GenStabState")
        .def(py::init<size_t, size_t>(), py::arg("num_qubits"), py::arg("capacity") = kDefaultEntryCapacity)
        .def_property_readonly("num_qubits", &GenStabState::num_qubits)
        .def("__len__", &GenStabState::size)
        .def(
            "apply_gate",
            [](GenStabState &s, const std::string &name, const std::vector<uint32_t> &targets) {
                s.apply_clifford(gate_or_throw(name), targets);
            },
            py::arg("gate"), py::arg("targets"))
        .def("apply_t", &GenStabState::apply_t, py::arg("qubit"), py::arg("dagger") = false)
        .def(
            "apply_pauli", [](GenStabState &s, const std::string &p) { s.apply_pauli(PauliString::from_str(p)); },
            py::arg("pauli"))
        .def(
            "measure",
            [](GenStabState &s, const std::string &p, double u) {
                MeasurementOutcome m = s.measure_pauli(PauliString::from_str(p), u);
                return py::make_tuple(m.sign, m.prob_plus);
            },
            py::arg("pauli"), py::arg("u"), "Returns (sign, P(+1)); the outcome is +1 iff u < P(+1).")
        .def(
            "coset_bound",
            [](const GenStabState &s, const std::vector<uint32_t> &support) {
                CosetAnalysis c = s.coset_bound(support);
                return py::make_tuple(c.r_q, c.bound());
            },
            py::arg("support"), "Returns (r_Q, 2^(|Q| - r_Q)).")
        .def("statevector", &GenStabState::dense_statevector)
        .def("norm_squared", &GenStabState::norm_squared)
        .def("__str__", &GenStabState::str);
}
