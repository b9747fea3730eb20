#include "qam/qgates.hpp"

#include <algorithm>
#include <bit>

namespace qam {

BitRegister BitRegister::parse(std::string_view text) {
    std::size_t width = 0;
    for (char c : text) {
        if (c == '0' || c == '1') {
            ++width;
        } else if (c != ' ') {
            throw FormatError("register text may only contain 0, 1 and spaces: '" + std::string(text) + "'");
        }
    }
    BitRegister out(width);
    std::size_t i = 0;
    for (char c : text) {
        if (c != ' ') out.set(i++, c == '1');
    }
    return out;
}

bool BitRegister::all() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; });
}

std::string BitRegister::to_string() const {
    std::string out;
    for (std::uint8_t b : bits_) out += b ? '1' : '0';
    return out;
}

BitRegister gate_not(BitRegister r) {
    for (std::size_t i = 0; i < r.size(); ++i) r.set(i, !r.at(i));
    return r;
}

bool gate_ccnot(bool a, bool b, bool target) { return target != (a && b); }

Circuit inverse(const Circuit& circuit) { return Circuit(circuit.rbegin(), circuit.rend()); }

void append_and_chain(Circuit& circuit, QubitSpan controls, std::size_t trigger, QubitSpan chain) {
    if (controls.size() != chain.size()) throw ShapeError("chain width differs from control width");
    for (std::size_t k = 0; k < controls.size(); ++k) {
        circuit.push_back(Gate::ccx(controls[k], k == 0 ? trigger : chain[k - 1], chain[k]));
    }
}

namespace {

void require_width(QubitSpan span, std::size_t width, const char* what) {
    if (span.size() < width) {
        throw ShapeError(std::string(what) + " register is narrower than its operands");
    }
}

// Computes into the scratch, copies chain.back() onto the flag, and
// uncomputes in reverse so only the flag changes.
void append_compute_copy_uncompute(Circuit& circuit, const Circuit& prepare, QubitSpan scratch,
                                   std::size_t ancilla, std::size_t flag, QubitSpan chain) {
    Circuit compute = prepare;
    append_and_chain(compute, scratch, ancilla, chain);
    circuit.insert(circuit.end(), compute.begin(), compute.end());
    circuit.push_back(Gate::cx(chain.back(), flag));
    const Circuit undo = inverse(compute);
    circuit.insert(circuit.end(), undo.begin(), undo.end());
}

}  // namespace

void append_identity(Circuit& circuit, QubitSpan u, QubitSpan v, std::size_t ancilla, std::size_t flag,
                     QubitSpan scratch, QubitSpan chain) {
    if (u.size() != v.size()) throw ShapeError("IDENTITY operands differ in width");
    if (u.empty()) throw ShapeError("IDENTITY needs at least one bit");
    require_width(scratch, u.size(), "IDENTITY scratch");
    require_width(chain, u.size(), "IDENTITY chain");
    const QubitSpan s = scratch.first(u.size());
    Circuit prepare;
    for (std::size_t i = 0; i < u.size(); ++i) {
        // s_i = NOT (u_i XOR v_i), i.e. 1 where the operands agree.
        prepare.push_back(Gate::cx(u[i], s[i]));
        prepare.push_back(Gate::cx(v[i], s[i]));
        prepare.push_back(Gate::x(s[i]));
    }
    append_compute_copy_uncompute(circuit, prepare, s, ancilla, flag, chain.first(u.size()));
}

void append_inclusion(Circuit& circuit, QubitSpan mask, QubitSpan d, std::size_t ancilla, std::size_t flag,
                      QubitSpan scratch, QubitSpan chain) {
    if (mask.size() != d.size()) throw ShapeError("INCLUSION operands differ in width");
    if (mask.empty()) throw ShapeError("INCLUSION needs at least one bit");
    require_width(scratch, mask.size(), "INCLUSION scratch");
    require_width(chain, mask.size(), "INCLUSION chain");
    const QubitSpan t = scratch.first(mask.size());
    Circuit prepare;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        // t_i = NOT (S_i AND D_i), i.e. 1 where variable i does not exclude.
        prepare.push_back(Gate::ccx(mask[i], d[i], t[i]));
        prepare.push_back(Gate::x(t[i]));
    }
    append_compute_copy_uncompute(circuit, prepare, t, ancilla, flag, chain.first(mask.size()));
}

bool GateTrace::replay_forward() const {
    if (truncated) return false;
    std::vector<std::uint8_t> state = initial_state;
    for (const TraceStep& step : steps) {
        const Gate& g = step.gate;
        if (state.at(g.target()) != step.before) return false;
        bool fire = true;
        for (std::size_t c = 0; c + 1 < g.arity(); ++c) fire = fire && state.at(g.qubits[c]);
        state[g.target()] ^= fire ? 1 : 0;
        if (state[g.target()] != step.after) return false;
    }
    return state == final_state;
}

bool GateTrace::replay_inverse() const {
    if (truncated) return false;
    std::vector<std::uint8_t> state = final_state;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        const Gate& g = it->gate;
        if (state.at(g.target()) != it->after) return false;
        bool fire = true;
        for (std::size_t c = 0; c + 1 < g.arity(); ++c) fire = fire && state.at(g.qubits[c]);
        state[g.target()] ^= fire ? 1 : 0;
    }
    return state == initial_state;
}

RegisterId Machine::allocate(std::string name, std::size_t width, bool preset, RegisterRole role) {
    registers_.push_back(RegisterInfo{std::move(name), state_.size(), width, preset, role});
    state_.resize(state_.size() + width, preset ? 1 : 0);
    return registers_.size() - 1;
}

std::size_t Machine::qubit(RegisterId id, std::size_t i) const {
    const RegisterInfo& r = registers_.at(id);
    if (i >= r.width) throw ShapeError("qubit " + std::to_string(i) + " outside register " + r.name);
    return r.offset + i;
}

std::vector<std::size_t> Machine::qubits(RegisterId id) const {
    const RegisterInfo& r = registers_.at(id);
    std::vector<std::size_t> out(r.width);
    for (std::size_t i = 0; i < r.width; ++i) out[i] = r.offset + i;
    return out;
}

void Machine::load(RegisterId id, const BitRegister& value) {
    const RegisterInfo& r = registers_.at(id);
    if (value.size() != r.width) {
        throw ShapeError("loading " + std::to_string(value.size()) + " bits into " + r.name + " of width " +
                         std::to_string(r.width));
    }
    for (std::size_t i = 0; i < r.width; ++i) state_[r.offset + i] = value.at(i) ? 1 : 0;
}

BitRegister Machine::read(RegisterId id) const {
    const RegisterInfo& r = registers_.at(id);
    BitRegister out(r.width);
    for (std::size_t i = 0; i < r.width; ++i) out.set(i, state_[r.offset + i] != 0);
    return out;
}

void Machine::apply(const Gate& gate) {
    const std::size_t target = gate.target();
    if (target >= state_.size()) throw ShapeError("gate target outside the machine");
    bool fire = true;
    for (std::size_t c = 0; c + 1 < gate.arity(); ++c) {
        if (gate.qubits[c] == target) throw ShapeError("gate control equals its target");
        fire = fire && state_.at(gate.qubits[c]) != 0;
    }
    const bool before = state_[target] != 0;
    if (fire) state_[target] ^= 1;
    if (trace_) {
        if (trace_->steps.size() < max_trace_steps_) {
            trace_->steps.push_back(TraceStep{gate, before, state_[target] != 0});
        } else {
            trace_->truncated = true;
        }
    }
}

void Machine::run(const Circuit& circuit) {
    for (const Gate& g : circuit) apply(g);
}

bool Machine::at_preset(RegisterId id) const {
    const RegisterInfo& r = registers_.at(id);
    const std::uint8_t preset = r.preset ? 1 : 0;
    return std::all_of(state_.begin() + static_cast<std::ptrdiff_t>(r.offset),
                       state_.begin() + static_cast<std::ptrdiff_t>(r.offset + r.width),
                       [&](std::uint8_t b) { return b == preset; });
}

bool Machine::ancillas_restored() const {
    for (RegisterId id = 0; id < registers_.size(); ++id) {
        const RegisterRole role = registers_[id].role;
        if ((role == RegisterRole::Ancilla || role == RegisterRole::Scratch) && !at_preset(id)) return false;
    }
    return true;
}

std::string Machine::label(std::size_t qubit) const {
    for (const RegisterInfo& r : registers_) {
        if (qubit >= r.offset && qubit < r.offset + r.width) {
            return r.width == 1 ? r.name : r.name + "[" + std::to_string(qubit - r.offset) + "]";
        }
    }
    return "q" + std::to_string(qubit);
}

void Machine::start_trace(std::size_t max_steps) {
    trace_ = GateTrace{};
    trace_->initial_state = state_;
    max_trace_steps_ = max_steps;
}

GateTrace Machine::finish_trace() {
    GateTrace out = trace_ ? std::move(*trace_) : GateTrace{};
    out.final_state = state_;
    out.qubit_labels.reserve(state_.size());
    for (std::size_t q = 0; q < state_.size(); ++q) out.qubit_labels.push_back(label(q));
    trace_.reset();
    return out;
}

namespace {

bool inputs_unchanged(const Machine& machine, const std::vector<std::uint8_t>& before) {
    for (RegisterId id = 0; id < machine.register_count(); ++id) {
        const RegisterInfo& r = machine.info(id);
        if (r.role != RegisterRole::Input) continue;
        for (std::size_t i = 0; i < r.width; ++i) {
            if (machine.state()[r.offset + i] != before[r.offset + i]) return false;
        }
    }
    return true;
}

struct ComparatorMachine {
    Machine machine;
    RegisterId u, v, ancilla, flag, scratch, chain;

    ComparatorMachine(const BitRegister& left, const BitRegister& right, bool ancilla_bit, bool flag_bit) {
        if (left.size() != right.size()) throw ShapeError("operands differ in width");
        u = machine.allocate("u", left.size(), false, RegisterRole::Input);
        v = machine.allocate("v", right.size(), false, RegisterRole::Input);
        ancilla = machine.allocate("X", 1, ancilla_bit, RegisterRole::Ancilla);
        flag = machine.allocate("flag", 1, flag_bit, RegisterRole::Output);
        scratch = machine.allocate("scratch", left.size(), false, RegisterRole::Scratch);
        chain = machine.allocate("chain", left.size(), false, RegisterRole::Scratch);
        machine.load(u, left);
        machine.load(v, right);
    }

    GateFlags run(const Circuit& circuit) {
        const std::vector<std::uint8_t> before = machine.state();
        machine.run(circuit);
        return GateFlags{machine.bit(machine.qubit(ancilla, 0)), machine.bit(machine.qubit(flag, 0)),
                         machine.ancillas_restored() && inputs_unchanged(machine, before)};
    }

    Circuit inclusion() const {
        Circuit c;
        append_inclusion(c, machine.qubits(u), machine.qubits(v), machine.qubit(ancilla, 0), machine.qubit(flag, 0),
                         machine.qubits(scratch), machine.qubits(chain));
        return c;
    }
};

}  // namespace

GateFlags gate_identity(const BitRegister& u, const BitRegister& v, bool ancilla, bool flag) {
    ComparatorMachine cm(u, v, ancilla, flag);
    Circuit c;
    append_identity(c, cm.machine.qubits(cm.u), cm.machine.qubits(cm.v), cm.machine.qubit(cm.ancilla, 0),
                    cm.machine.qubit(cm.flag, 0), cm.machine.qubits(cm.scratch), cm.machine.qubits(cm.chain));
    return cm.run(c);
}

GateFlags gate_inclusion(const BitRegister& mask, const BitRegister& d, bool ancilla, bool flag) {
    ComparatorMachine cm(mask, d, ancilla, flag);
    return cm.run(cm.inclusion());
}

GateFlags gate_inclusion_inverse(const BitRegister& mask, const BitRegister& d, bool ancilla, bool flag) {
    ComparatorMachine cm(mask, d, ancilla, flag);
    return cm.run(inverse(cm.inclusion()));
}

namespace {

void append_elementwise_ccnot(Circuit& circuit, QubitSpan a, QubitSpan b, QubitSpan target) {
    for (std::size_t k = 0; k < target.size(); ++k) circuit.push_back(Gate::ccx(a[k], b[k], target[k]));
}

void append_not_all(Circuit& circuit, QubitSpan target) {
    for (std::size_t q : target) circuit.push_back(Gate::x(q));
}

// Registers used by the doubly nested INCLUSION / CCNOT containment loop.
struct ContainmentQubits {
    std::vector<std::size_t> mask;
    std::vector<std::vector<std::size_t>> differences;
    std::vector<std::size_t> c2;
    std::size_t x, y, w, z;
    std::vector<std::size_t> scratch, chain;
};

void append_containment(Circuit& circuit, const ContainmentQubits& q) {
    const std::size_t m = q.differences.size();
    for (std::size_t j = 0; j < m; ++j) {
        Circuit outer;
        append_inclusion(outer, q.mask, q.differences[j], q.x, q.y, q.scratch, q.chain);
        circuit.insert(circuit.end(), outer.begin(), outer.end());
        for (std::size_t k = 0; k < m; ++k) {
            Circuit inner;
            append_inclusion(inner, q.mask, q.differences[k], q.w, q.z, q.scratch, q.chain);
            circuit.insert(circuit.end(), inner.begin(), inner.end());
            circuit.push_back(Gate::ccx(q.y, q.z, q.c2[j * m + k]));
            const Circuit inner_undo = inverse(inner);
            circuit.insert(circuit.end(), inner_undo.begin(), inner_undo.end());
        }
        const Circuit outer_undo = inverse(outer);
        circuit.insert(circuit.end(), outer_undo.begin(), outer_undo.end());
    }
}

PointerMatrix to_matrix(const BitRegister& bits, std::size_t m) {
    PointerMatrix out(m);
    for (std::size_t k = 0; k < bits.size(); ++k) out.set(k / m, k % m, bits.at(k));
    return out;
}

BitRegister to_register(const PointerMatrix& matrix) {
    const std::size_t m = matrix.dimension();
    BitRegister out(m * m);
    for (std::size_t k = 0; k < m * m; ++k) out.set(k, matrix.linear(k));
    return out;
}

std::size_t outcome_width(std::size_t alphabet_size) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(alphabet_size - 1)));
}

BitRegister outcome_register(std::size_t code, std::size_t width) {
    BitRegister out(width);
    for (std::size_t i = 0; i < width; ++i) out.set(i, (code >> (width - 1 - i)) & 1U);
    return out;
}

// Per-supracontext machine layout shared by every mask.
struct SupracontextLayout {
    Machine machine;
    std::size_t m = 0;
    RegisterId s, p2, c2, h2, f0, f2, a2;
    Circuit containment, heterogeneity, negate, ones, copy, uncompute;

    SupracontextLayout(const Query& query, const PointerMatrix& p2_value) : m(query.size()) {
        const std::size_t n = query.variable_count();
        const std::size_t cells = m * m;
        s = machine.allocate("S", n, false, RegisterRole::Input);
        std::vector<RegisterId> d;
        for (std::size_t j = 0; j < m; ++j) {
            d.push_back(machine.allocate("D" + std::to_string(j + 1), n, false, RegisterRole::Input));
            machine.load(d.back(), BitRegister::from_bits(query.difference(j)));
        }
        p2 = machine.allocate("P2", cells, false, RegisterRole::Input);
        machine.load(p2, to_register(p2_value));
        c2 = machine.allocate("C2", cells, false, RegisterRole::Output);
        h2 = machine.allocate("H2", cells, false, RegisterRole::Scratch);
        f0 = machine.allocate("F0", 1, true, RegisterRole::Ancilla);
        f2 = machine.allocate("F2", cells, false, RegisterRole::Scratch);
        a2 = machine.allocate("A2", cells, false, RegisterRole::Output);
        const RegisterId x = machine.allocate("X", 1, true, RegisterRole::Ancilla);
        const RegisterId y = machine.allocate("Y", 1, false, RegisterRole::Ancilla);
        const RegisterId w = machine.allocate("W", 1, true, RegisterRole::Ancilla);
        const RegisterId z = machine.allocate("Z", 1, false, RegisterRole::Ancilla);
        const RegisterId scratch = machine.allocate("T", n, false, RegisterRole::Scratch);
        const RegisterId chain = machine.allocate("G", n, false, RegisterRole::Scratch);

        ContainmentQubits q{machine.qubits(s), {}, machine.qubits(c2), machine.qubit(x, 0), machine.qubit(y, 0),
                            machine.qubit(w, 0), machine.qubit(z, 0), machine.qubits(scratch), machine.qubits(chain)};
        for (RegisterId id : d) q.differences.push_back(machine.qubits(id));
        append_containment(containment, q);

        const auto c2q = machine.qubits(c2), h2q = machine.qubits(h2), f2q = machine.qubits(f2);
        const auto p2q = machine.qubits(p2), a2q = machine.qubits(a2);
        append_elementwise_ccnot(heterogeneity, c2q, p2q, h2q);
        append_not_all(negate, h2q);
        append_and_chain(ones, h2q, machine.qubit(f0, 0), f2q);
        for (std::size_t k = 0; k < cells; ++k) copy.push_back(Gate::ccx(c2q[k], f2q.back(), a2q[k]));

        Circuit forward = heterogeneity;
        forward.insert(forward.end(), negate.begin(), negate.end());
        forward.insert(forward.end(), ones.begin(), ones.end());
        uncompute = inverse(forward);
    }

    std::size_t gate_count() const {
        return containment.size() + heterogeneity.size() + negate.size() + ones.size() + copy.size() +
               uncompute.size();
    }
};

// V², W², P² built once with IDENTITY comparators.
struct PreludeLayout {
    Machine machine;
    RegisterId v2, w2, p2;
    Circuit circuit;

    explicit PreludeLayout(const Query& query) {
        const std::size_t m = query.size();
        const std::size_t n = query.variable_count();
        const std::size_t b = outcome_width(query.alphabet_size());
        const std::size_t cells = m * m;
        std::vector<RegisterId> d, omega;
        for (std::size_t j = 0; j < m; ++j) {
            d.push_back(machine.allocate("D" + std::to_string(j + 1), n, false, RegisterRole::Input));
            machine.load(d.back(), BitRegister::from_bits(query.difference(j)));
        }
        for (std::size_t j = 0; j < m; ++j) {
            omega.push_back(machine.allocate("Omega" + std::to_string(j + 1), b, false, RegisterRole::Input));
            machine.load(omega.back(), outcome_register(query.outcome_code(j), b));
        }
        v2 = machine.allocate("V2", cells, true, RegisterRole::Output);
        w2 = machine.allocate("W2", cells, true, RegisterRole::Output);
        p2 = machine.allocate("P2", cells, false, RegisterRole::Output);
        const RegisterId x = machine.allocate("X2", 1, true, RegisterRole::Ancilla);
        const RegisterId y = machine.allocate("Y2", 1, true, RegisterRole::Ancilla);
        const RegisterId scratch = machine.allocate("T", std::max(n, b), false, RegisterRole::Scratch);
        const RegisterId chain = machine.allocate("G", std::max(n, b), false, RegisterRole::Scratch);

        const auto v2q = machine.qubits(v2), w2q = machine.qubits(w2), p2q = machine.qubits(p2);
        const auto sq = machine.qubits(scratch), gq = machine.qubits(chain);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                append_identity(circuit, machine.qubits(d[j]), machine.qubits(d[k]), machine.qubit(x, 0),
                                v2q[j * m + k], sq, gq);
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                append_identity(circuit, machine.qubits(omega[j]), machine.qubits(omega[k]), machine.qubit(y, 0),
                                w2q[j * m + k], sq, gq);
            }
        }
        append_elementwise_ccnot(circuit, v2q, w2q, p2q);
    }
};

}  // namespace

OnesResult gate_ones(const PointerMatrix& h_negated, bool trigger) {
    const std::size_t cells = h_negated.dimension() * h_negated.dimension();
    if (cells == 0) throw ShapeError("ONES needs a non-empty array");
    Machine machine;
    const RegisterId h = machine.allocate("H2", cells, false, RegisterRole::Input);
    const RegisterId f0 = machine.allocate("F0", 1, trigger, RegisterRole::Ancilla);
    const RegisterId f2 = machine.allocate("F2", cells, false, RegisterRole::Scratch);
    machine.load(h, to_register(h_negated));
    Circuit circuit;
    append_and_chain(circuit, machine.qubits(h), machine.qubit(f0, 0), machine.qubits(f2));
    machine.run(circuit);
    const BitRegister scan = machine.read(f2);
    return OnesResult{scan.at(cells - 1), scan, machine.bit(machine.qubit(f0, 0))};
}

PointerMatrix build_containment_array(const Dataset& dataset, const FeatureVector& given,
                                      const SupracontextMask& mask) {
    const Query query(dataset, given);
    if (mask.width() != query.variable_count()) throw ShapeError("mask width differs from variable count");
    const std::size_t m = query.size(), n = query.variable_count();
    Machine machine;
    const RegisterId s = machine.allocate("S", n, false, RegisterRole::Input);
    machine.load(s, BitRegister::from_bits(mask));
    ContainmentQubits q;
    q.mask = machine.qubits(s);
    for (std::size_t j = 0; j < m; ++j) {
        const RegisterId d = machine.allocate("D" + std::to_string(j + 1), n, false, RegisterRole::Input);
        machine.load(d, BitRegister::from_bits(query.difference(j)));
        q.differences.push_back(machine.qubits(d));
    }
    const RegisterId c2 = machine.allocate("C2", m * m, false, RegisterRole::Output);
    q.c2 = machine.qubits(c2);
    q.x = machine.qubit(machine.allocate("X", 1, true, RegisterRole::Ancilla), 0);
    q.y = machine.qubit(machine.allocate("Y", 1, false, RegisterRole::Ancilla), 0);
    q.w = machine.qubit(machine.allocate("W", 1, true, RegisterRole::Ancilla), 0);
    q.z = machine.qubit(machine.allocate("Z", 1, false, RegisterRole::Ancilla), 0);
    q.scratch = machine.qubits(machine.allocate("T", n, false, RegisterRole::Scratch));
    q.chain = machine.qubits(machine.allocate("G", n, false, RegisterRole::Scratch));
    Circuit circuit;
    append_containment(circuit, q);
    machine.run(circuit);
    return to_matrix(machine.read(c2), m);
}

PointerMatrix build_heterogeneity_array(const PointerMatrix& c2, const PointerMatrix& p2) {
    if (c2.dimension() != p2.dimension()) {
        throw ShapeError("C2 and P2 differ in dimension (" + std::to_string(c2.dimension()) + " vs " +
                         std::to_string(p2.dimension()) + ")");
    }
    const std::size_t m = c2.dimension();
    Machine machine;
    const RegisterId c = machine.allocate("C2", m * m, false, RegisterRole::Input);
    const RegisterId p = machine.allocate("P2", m * m, false, RegisterRole::Input);
    const RegisterId h = machine.allocate("H2", m * m, false, RegisterRole::Output);
    machine.load(c, to_register(c2));
    machine.load(p, to_register(p2));
    Circuit circuit;
    append_elementwise_ccnot(circuit, machine.qubits(c), machine.qubits(p), machine.qubits(h));
    machine.run(circuit);
    return to_matrix(machine.read(h), m);
}

PointerMatrix build_analogy_array(const PointerMatrix& c2, bool homogeneous) {
    const std::size_t m = c2.dimension();
    Machine machine;
    const RegisterId c = machine.allocate("C2", m * m, false, RegisterRole::Input);
    const RegisterId flag = machine.allocate("F", 1, homogeneous, RegisterRole::Input);
    const RegisterId a = machine.allocate("A2", m * m, false, RegisterRole::Output);
    machine.load(c, to_register(c2));
    const auto cq = machine.qubits(c), aq = machine.qubits(a);
    Circuit circuit;
    for (std::size_t k = 0; k < m * m; ++k) circuit.push_back(Gate::ccx(cq[k], machine.qubit(flag, 0), aq[k]));
    machine.run(circuit);
    return to_matrix(machine.read(a), m);
}

CircuitRun run_qam_circuit(const Dataset& dataset, const FeatureVector& given, const CircuitOptions& options) {
    const std::vector<SupracontextMask> lattice = supracontext_lattice(dataset.variable_count(), options.variable_cap);
    const Query query(dataset, given);
    const std::size_t m = query.size();

    CircuitRun run;
    PreludeLayout prelude(query);
    {
        const std::vector<std::uint8_t> before = prelude.machine.state();
        if (options.trace) prelude.machine.start_trace(options.max_trace_steps);
        prelude.machine.run(prelude.circuit);
        if (options.trace) run.prelude_trace = prelude.machine.finish_trace();
        run.prelude_restored = prelude.machine.ancillas_restored() && inputs_unchanged(prelude.machine, before);
    }
    run.v2 = to_matrix(prelude.machine.read(prelude.v2), m);
    run.w2 = to_matrix(prelude.machine.read(prelude.w2), m);
    run.p2 = to_matrix(prelude.machine.read(prelude.p2), m);

    const SupracontextLayout layout(query, run.p2);
    run.gates_per_supracontext = layout.gate_count();
    run.supracontexts.reserve(lattice.size());
    for (const SupracontextMask& mask : lattice) {
        Machine machine = layout.machine;
        machine.load(layout.s, BitRegister::from_bits(mask));
        const std::vector<std::uint8_t> before = machine.state();
        if (options.trace) machine.start_trace(options.max_trace_steps);

        SupracontextCircuitResult result;
        result.mask = mask;
        machine.run(layout.containment);
        result.c2 = to_matrix(machine.read(layout.c2), m);
        machine.run(layout.heterogeneity);
        result.h2 = to_matrix(machine.read(layout.h2), m);
        machine.run(layout.negate);
        machine.run(layout.ones);
        result.f2 = to_matrix(machine.read(layout.f2), m);
        result.homogeneous = machine.bit(machine.qubits(layout.f2).back());
        machine.run(layout.copy);
        result.a2 = to_matrix(machine.read(layout.a2), m);
        machine.run(layout.uncompute);

        if (options.trace) result.trace = machine.finish_trace();
        result.ancillas_restored = machine.ancillas_restored() && inputs_unchanged(machine, before);
        run.supracontexts.push_back(std::move(result));
    }
    return run;
}

AnalogicalSet to_analogical_set(const CircuitRun& run, const Dataset& dataset) {
    const std::size_t m = dataset.size();
    AnalogicalSet set;
    set.alphabet = dataset.outcome_alphabet();
    set.outcome_counts.assign(set.alphabet.size(), 0);
    for (std::size_t j = 0; j < m; ++j) set.exemplar_outcomes.push_back(dataset.outcome_code(j));
    for (const SupracontextCircuitResult& r : run.supracontexts) {
        if (r.c2.dimension() != m) throw ShapeError("circuit run does not match the dataset size");
        SupracontextVerdict verdict{r.mask, {}, r.homogeneous, m};
        for (std::size_t j = 0; j < m; ++j) {
            if (r.c2.at(j, j)) verdict.members.push_back(j);
        }
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                if (!r.a2.at(j, k)) continue;
                ++set.outcome_counts[dataset.outcome_code(k)];
                ++set.total_pointers;
            }
        }
        set.verdicts.push_back(std::move(verdict));
    }
    return set;
}

}  // namespace qam
