#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qam/am_core.hpp"
#include "qam/homogeneity.hpp"
#include "qam/pointer_matrix.hpp"

namespace qam {

/// Fixed-length register of classical qubits. Every bit is 0 or 1; there is
/// no superposed state.
class BitRegister {
  public:
    BitRegister() = default;
    explicit BitRegister(std::size_t width, bool fill = false) : bits_(width, fill ? 1 : 0) {}

    /// "011" or "0 1 1".
    static BitRegister parse(std::string_view text);
    template <class Tag>
    static BitRegister from_bits(const VariableBits<Tag>& bits) {
        BitRegister out(bits.width());
        for (std::size_t i = 0; i < bits.width(); ++i) out.set(i, bits.test(i));
        return out;
    }

    std::size_t size() const { return bits_.size(); }
    bool at(std::size_t i) const { return bits_.at(i) != 0; }
    void set(std::size_t i, bool on) { bits_.at(i) = on ? 1 : 0; }
    bool all() const;
    std::string to_string() const;

    friend bool operator==(const BitRegister&, const BitRegister&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

BitRegister gate_not(BitRegister r);

/// Toffoli: the target flips iff both controls are 1.
bool gate_ccnot(bool a, bool b, bool target);

enum class GateKind : std::uint8_t { Not, Cnot, Ccnot };

/// A primitive gate on machine qubits. Operands are listed controls first;
/// the last operand in use is the target. Every primitive is its own inverse.
struct Gate {
    GateKind kind = GateKind::Not;
    std::array<std::size_t, 3> qubits{};

    static Gate x(std::size_t target) { return {GateKind::Not, {target, 0, 0}}; }
    static Gate cx(std::size_t control, std::size_t target) { return {GateKind::Cnot, {control, target, 0}}; }
    static Gate ccx(std::size_t a, std::size_t b, std::size_t target) { return {GateKind::Ccnot, {a, b, target}}; }

    std::size_t arity() const { return static_cast<std::size_t>(kind) + 1; }
    std::size_t target() const { return qubits[arity() - 1]; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

using Circuit = std::vector<Gate>;

/// Gates in reverse order; valid because every primitive is self-inverse.
Circuit inverse(const Circuit& circuit);

using QubitSpan = std::span<const std::size_t>;

// Circuit builders. Qubits are indices into a Machine's state.

/// chain[k] ^= controls[k] AND chain[k-1], with chain[-1] = trigger.
/// With chain preset to zeros and trigger 1, chain.back() ends as the AND of
/// all controls. Every position is visited; there is no early exit.
void append_and_chain(Circuit& circuit, QubitSpan controls, std::size_t trigger, QubitSpan chain);

/// IDENTITY: flips `flag` iff u == v (and ancilla is 1). With flag preset to
/// 1 the flag ends as 1 for "different" and 0 for "same". Scratch and chain
/// (each as wide as u) are computed and uncomputed inside.
void append_identity(Circuit& circuit, QubitSpan u, QubitSpan v, std::size_t ancilla, std::size_t flag,
                     QubitSpan scratch, QubitSpan chain);

/// INCLUSION: flips `flag` iff mask AND d is all zeros (and ancilla is 1).
/// Applying it a second time with the same operands is INCLUSION⁻¹.
void append_inclusion(Circuit& circuit, QubitSpan mask, QubitSpan d, std::size_t ancilla, std::size_t flag,
                      QubitSpan scratch, QubitSpan chain);

enum class RegisterRole : std::uint8_t { Input, Output, Ancilla, Scratch };

using RegisterId = std::size_t;

struct RegisterInfo {
    std::string name;
    std::size_t offset = 0;
    std::size_t width = 0;
    bool preset = false;
    RegisterRole role = RegisterRole::Scratch;
};

struct TraceStep {
    Gate gate;
    bool before = false;  // target value before the gate
    bool after = false;
};

/// Log of applied gates with the machine state at either end.
struct GateTrace {
    std::vector<std::uint8_t> initial_state;
    std::vector<std::uint8_t> final_state;
    std::vector<TraceStep> steps;
    std::vector<std::string> qubit_labels;  // indexed by qubit
    bool truncated = false;

    /// Applying the steps to initial_state reproduces final_state.
    bool replay_forward() const;
    /// Applying the steps in reverse to final_state restores initial_state.
    bool replay_inverse() const;
};

/// Flat store of named classical qubit registers with presets.
class Machine {
  public:
    RegisterId allocate(std::string name, std::size_t width, bool preset, RegisterRole role);

    const RegisterInfo& info(RegisterId id) const { return registers_.at(id); }
    std::size_t register_count() const { return registers_.size(); }
    std::size_t qubit(RegisterId id, std::size_t i) const;
    std::vector<std::size_t> qubits(RegisterId id) const;
    std::size_t size() const { return state_.size(); }
    const std::vector<std::uint8_t>& state() const { return state_; }

    void load(RegisterId id, const BitRegister& value);
    BitRegister read(RegisterId id) const;
    bool bit(std::size_t qubit) const { return state_.at(qubit) != 0; }

    void apply(const Gate& gate);
    void run(const Circuit& circuit);

    bool at_preset(RegisterId id) const;
    /// Every ancilla and scratch register holds its preset.
    bool ancillas_restored() const;

    /// e.g. "C2[7]".
    std::string label(std::size_t qubit) const;

    /// Starts recording up to `max_steps` gates from the current state.
    void start_trace(std::size_t max_steps);
    GateTrace finish_trace();

  private:
    std::vector<RegisterInfo> registers_;
    std::vector<std::uint8_t> state_;
    std::optional<GateTrace> trace_;
    std::size_t max_trace_steps_ = 0;
};

struct GateFlags {
    bool ancilla = true;
    bool flag = true;
    bool scratch_restored = true;
};

GateFlags gate_identity(const BitRegister& u, const BitRegister& v, bool ancilla = true, bool flag = true);
GateFlags gate_inclusion(const BitRegister& mask, const BitRegister& d, bool ancilla = true, bool flag = false);
GateFlags gate_inclusion_inverse(const BitRegister& mask, const BitRegister& d, bool ancilla, bool flag);

struct OnesResult {
    bool flag = false;  // last chain qubit: 1 iff every input bit is 1
    BitRegister scan;   // final F² chain, row-major
    bool trigger = true;
};

/// ONES over a negated H²: F_k = H_k AND F_{k-1}, F_0 = trigger.
OnesResult gate_ones(const PointerMatrix& h_negated, bool trigger = true);

PointerMatrix build_containment_array(const Dataset& dataset, const FeatureVector& given,
                                      const SupracontextMask& mask);
PointerMatrix build_heterogeneity_array(const PointerMatrix& c2, const PointerMatrix& p2);
PointerMatrix build_analogy_array(const PointerMatrix& c2, bool homogeneous);

struct CircuitOptions {
    std::size_t variable_cap = kDefaultVariableCap;
    bool trace = false;
    std::size_t max_trace_steps = std::size_t{1} << 16;  // per trace
};

struct SupracontextCircuitResult {
    SupracontextMask mask;
    PointerMatrix c2;
    PointerMatrix h2;
    PointerMatrix f2;         // ONES chain before it is uncomputed
    bool homogeneous = false;  // F²_{m,m}; 1 means no heterogeneous pointer
    PointerMatrix a2;
    bool ancillas_restored = false;
    std::optional<GateTrace> trace;
};

struct CircuitRun {
    PointerMatrix v2;
    PointerMatrix w2;
    PointerMatrix p2;
    bool prelude_restored = false;
    std::optional<GateTrace> prelude_trace;
    std::size_t gates_per_supracontext = 0;
    std::vector<SupracontextCircuitResult> supracontexts;  // lattice order
};

/// Builds V², W², P² once, then applies one fixed gate sequence to every
/// supracontext: containment, heterogeneity, NOT, ONES, conditional copy into
/// A², and uncomputation of everything except C² and A².
CircuitRun run_qam_circuit(const Dataset& dataset, const FeatureVector& given, const CircuitOptions& options = {});

/// Analogical set read off the circuit: members from the C² diagonal,
/// verdicts from the homogeneity flag, counts from the ones of each A².
AnalogicalSet to_analogical_set(const CircuitRun& run, const Dataset& dataset);

}  // namespace qam
