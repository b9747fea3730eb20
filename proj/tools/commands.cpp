#include "commands.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qam/am_core.hpp"
#include "qam/homogeneity.hpp"
#include "qam/qgates.hpp"
#include "qam/rational.hpp"
#include "qam/uncertainty.hpp"

namespace qam::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Engine { Fast, Gates };
enum class Format { Text, Json };

struct RunConfig {
    std::string dataset_path;
    std::string given;
    Engine engine = Engine::Fast;
    std::optional<std::uint64_t> seed;
    Format format = Format::Text;
    std::size_t n_cap = kDefaultVariableCap;
    bool trace = false;
    std::string distribution;
    std::string density_path;
};

struct Problem {
    Dataset dataset;
    FeatureVector given;
};

Problem load_problem(const RunConfig& cfg) {
    if (cfg.dataset_path.empty()) throw UsageError("--dataset is required");
    if (cfg.given.empty()) throw UsageError("--given is required");
    Problem p{load_dataset(cfg.dataset_path), FeatureVector::parse(cfg.given)};
    if (p.given.size() != p.dataset.variable_count()) {
        throw FormatError("--given has " + std::to_string(p.given.size()) + " features but the dataset has " +
                          std::to_string(p.dataset.variable_count()));
    }
    return p;
}

AnalogicalSet compute_set(const RunConfig& cfg, const Problem& p) {
    if (cfg.engine == Engine::Fast) return analogical_set(p.dataset, p.given, cfg.n_cap);
    CircuitOptions options;
    options.variable_cap = cfg.n_cap;
    return to_analogical_set(run_qam_circuit(p.dataset, p.given, options), p.dataset);
}

std::string format_double(double value) {
    std::ostringstream s;
    s.precision(15);
    s << value;
    return s.str();
}

std::string exemplar_label(const Dataset& ds, std::size_t j) {
    return display_context(ds, ds[j].context) + " / " + ds[j].outcome.label;
}

std::uint64_t supracontext_pointers(const SupracontextVerdict& v) {
    return v.homogeneous ? static_cast<std::uint64_t>(v.members.size()) * v.members.size() : 0;
}

Json one_based(const Dataset& ds, const std::vector<std::size_t>& members) {
    Json out = Json::array();
    for (std::size_t j : members) out.push_back(ds[j].index);
    return out;
}

void write_distribution_line(std::ostream& out, const OutcomeDistribution& dist, const AnalogicalSet& set) {
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        out << (i ? ", " : "") << dist.outcomes[i].label << ' ' << to_string(dist.probabilities[i]);
    }
    out << " (" << set.total_pointers << (set.total_pointers == 1 ? " pointer)\n" : " pointers)\n");
}

Json distribution_json(const OutcomeDistribution& dist, const AnalogicalSet& set) {
    Json outcomes = Json::array();
    for (std::size_t i = 0; i < dist.outcomes.size(); ++i) {
        outcomes.push_back({{"outcome", dist.outcomes[i].label},
                            {"probability", to_string(dist.probabilities[i])},
                            {"pointers", set.outcome_counts[i]}});
    }
    return outcomes;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out) {
    const Problem p = load_problem(cfg);
    const AnalogicalSet set = compute_set(cfg, p);
    const OutcomeDistribution dist = predict_distribution(set);
    if (cfg.format == Format::Text) {
        write_distribution_line(out, dist, set);
        out << "counts:";
        for (std::size_t i = 0; i < set.alphabet.size(); ++i) {
            out << (i ? ", " : " ") << set.alphabet[i].label << ' ' << set.outcome_counts[i];
        }
        out << '\n';
        return kExitOk;
    }
    Json supracontexts = Json::array();
    for (const SupracontextVerdict& v : set.verdicts) {
        supracontexts.push_back({{"mask", v.mask.to_string()},
                                 {"members", one_based(p.dataset, v.members)},
                                 {"homogeneous", v.homogeneous},
                                 {"pointers", supracontext_pointers(v)}});
    }
    const Json report = {{"schema_version", kSchemaVersion},
                         {"command", "predict"},
                         {"given", p.given.to_string()},
                         {"total_pointers", set.total_pointers},
                         {"distribution", distribution_json(dist, set)},
                         {"supracontexts", supracontexts}};
    out << report.dump(2) << '\n';
    return kExitOk;
}

struct Explanation {
    std::map<DifferenceVector, std::vector<std::size_t>> subcontexts;
    bool pointer = true;
    bool plurality = true;
    bool determinism = true;
    bool disagreement = true;
    std::vector<std::pair<std::size_t, std::size_t>> offending;  // positions, first < second
};

Explanation explain_members(const Query& query, const std::vector<std::size_t>& members) {
    Explanation e;
    for (std::size_t j : members) e.subcontexts[subcontext_key(query.difference(j))].push_back(j);
    e.pointer = is_homogeneous_pointer(query, members);
    e.plurality = is_homogeneous_plurality(query, members);
    e.determinism = is_homogeneous_determinism(query, members);
    e.disagreement = is_homogeneous_disagreement(query, members);
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            const std::size_t j = members[a], k = members[b];
            if (query.outcome_code(j) != query.outcome_code(k) && query.difference(j) != query.difference(k)) {
                e.offending.emplace_back(j, k);
            }
        }
    }
    return e;
}

const char* verdict_word(bool homogeneous) { return homogeneous ? "homogeneous" : "heterogeneous"; }

void explain_text(std::ostream& out, const Dataset& ds, const SupracontextVerdict& v, const Explanation& e) {
    if (v.members.empty()) {
        out << "supracontext " << v.mask.to_string() << ": empty, homogeneous, 0 pointers\n";
        return;
    }
    out << "supracontext " << v.mask.to_string() << '\n';
    out << "  members:";
    for (std::size_t i = 0; i < v.members.size(); ++i) {
        out << (i ? ", " : " ") << ds[v.members[i]].index << ' ' << exemplar_label(ds, v.members[i]);
    }
    out << "\n  subcontexts:";
    bool first = true;
    for (const auto& [difference, group] : e.subcontexts) {
        out << (first ? " " : "; ") << difference.to_string() << " {";
        for (std::size_t i = 0; i < group.size(); ++i) out << (i ? ", " : "") << ds[group[i]].index;
        out << '}';
        first = false;
    }
    out << "\n  criteria: pointer " << verdict_word(e.pointer) << ", plurality " << verdict_word(e.plurality)
        << ", determinism " << verdict_word(e.determinism) << ", disagreement " << verdict_word(e.disagreement)
        << '\n';
    const std::uint64_t n = supracontext_pointers(v);
    out << "  " << verdict_word(v.homogeneous) << ", " << n << (n == 1 ? " pointer\n" : " pointers\n");
    if (!e.offending.empty()) {
        out << "  offending pairs:";
        for (std::size_t i = 0; i < e.offending.size(); ++i) {
            out << (i ? ", " : " ") << '(' << ds[e.offending[i].first].index << ','
                << ds[e.offending[i].second].index << ')';
        }
        out << '\n';
    }
    if (v.homogeneous) {
        for (std::size_t j : v.members) {
            for (std::size_t k : v.members) {
                out << "  " << exemplar_label(ds, j) << " -> " << exemplar_label(ds, k) << '\n';
            }
        }
    }
}

Json explain_json(const Dataset& ds, const SupracontextVerdict& v, const Explanation& e) {
    Json subcontexts = Json::array();
    for (const auto& [difference, group] : e.subcontexts) {
        subcontexts.push_back({{"difference", difference.to_string()}, {"members", one_based(ds, group)}});
    }
    Json offending = Json::array();
    for (const auto& [j, k] : e.offending) offending.push_back({ds[j].index, ds[k].index});
    Json pointers = Json::array();
    if (v.homogeneous) {
        for (std::size_t j : v.members) {
            for (std::size_t k : v.members) {
                pointers.push_back({{"source", ds[j].index}, {"target", ds[k].index}, {"outcome", ds[k].outcome.label}});
            }
        }
    }
    return {{"mask", v.mask.to_string()},
            {"members", one_based(ds, v.members)},
            {"subcontexts", subcontexts},
            {"criteria",
             {{"pointer", e.pointer},
              {"plurality", e.plurality},
              {"determinism", e.determinism},
              {"disagreement", e.disagreement}}},
            {"homogeneous", v.homogeneous},
            {"offending_pairs", offending},
            {"pointers", pointers}};
}

int cmd_explain(const RunConfig& cfg, std::ostream& out) {
    const Problem p = load_problem(cfg);
    const AnalogicalSet set = compute_set(cfg, p);
    const Query query(p.dataset, p.given);
    Json blocks = Json::array();
    for (const SupracontextVerdict& v : set.verdicts) {
        const Explanation e = explain_members(query, v.members);
        if (cfg.format == Format::Text) {
            explain_text(out, p.dataset, v, e);
        } else {
            blocks.push_back(explain_json(p.dataset, v, e));
        }
    }
    const OutcomeDistribution dist = predict_distribution(set);
    if (cfg.format == Format::Text) {
        out << "prediction: ";
        write_distribution_line(out, dist, set);
        return kExitOk;
    }
    const Json report = {{"schema_version", kSchemaVersion},
                         {"command", "explain"},
                         {"given", p.given.to_string()},
                         {"supracontexts", blocks},
                         {"total_pointers", set.total_pointers},
                         {"distribution", distribution_json(dist, set)}};
    out << report.dump(2) << '\n';
    return kExitOk;
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return "NOT";
        case GateKind::Cnot: return "CNOT";
        case GateKind::Ccnot: return "CCNOT";
    }
    return "?";
}

void write_matrix(std::ostream& out, const char* name, const PointerMatrix& m) {
    out << name << '\n';
    for (const std::string& row : m.row_strings()) out << row << '\n';
}

void write_trace(std::ostream& out, const GateTrace& trace) {
    out << "trace: " << trace.steps.size() << " gates" << (trace.truncated ? " (truncated)" : "")
        << ", forward replay " << (trace.replay_forward() ? "ok" : "failed") << ", inverse replay "
        << (trace.replay_inverse() ? "ok" : "failed") << '\n';
    for (const TraceStep& step : trace.steps) {
        out << "  " << gate_name(step.gate.kind);
        for (std::size_t i = 0; i + 1 < step.gate.arity(); ++i) out << ' ' << trace.qubit_labels[step.gate.qubits[i]];
        out << " -> " << trace.qubit_labels[step.gate.target()] << ": " << step.before << " -> " << step.after << '\n';
    }
}

Json trace_json(const GateTrace& trace) {
    Json steps = Json::array();
    for (const TraceStep& step : trace.steps) {
        Json operands = Json::array();
        for (std::size_t i = 0; i < step.gate.arity(); ++i) operands.push_back(trace.qubit_labels[step.gate.qubits[i]]);
        steps.push_back({{"gate", gate_name(step.gate.kind)},
                         {"operands", operands},
                         {"before", static_cast<int>(step.before)},
                         {"after", static_cast<int>(step.after)}});
    }
    return {{"truncated", trace.truncated},
            {"replay_forward", trace.replay_forward()},
            {"replay_inverse", trace.replay_inverse()},
            {"steps", steps}};
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_gates(const RunConfig& cfg, std::ostream& out) {
    const Problem p = load_problem(cfg);
    CircuitOptions options;
    options.variable_cap = cfg.n_cap;
    options.trace = cfg.trace;
    const CircuitRun run = run_qam_circuit(p.dataset, p.given, options);
    std::size_t a2_ones = 0;
    for (const auto& r : run.supracontexts) a2_ones += r.a2.count();

    if (cfg.format == Format::Text) {
        write_matrix(out, "V2", run.v2);
        write_matrix(out, "W2", run.w2);
        write_matrix(out, "P2", run.p2);
        out << "prelude ancillas restored: " << yes_no(run.prelude_restored) << '\n';
        if (run.prelude_trace) write_trace(out, *run.prelude_trace);
        for (const auto& r : run.supracontexts) {
            out << "\nsupracontext " << r.mask.to_string() << '\n';
            write_matrix(out, "C2", r.c2);
            write_matrix(out, "H2", r.h2);
            out << "flag " << (r.homogeneous ? 1 : 0) << ' ' << verdict_word(r.homogeneous) << '\n';
            write_matrix(out, "A2", r.a2);
            out << "ancillas restored: " << yes_no(r.ancillas_restored) << '\n';
            if (r.trace) write_trace(out, *r.trace);
        }
        out << "\nA2 ones: " << a2_ones << '\n';
        out << "gates per supracontext: " << run.gates_per_supracontext << '\n';
        return kExitOk;
    }
    Json supracontexts = Json::array();
    for (const auto& r : run.supracontexts) {
        Json block = {{"mask", r.mask.to_string()},
                      {"c2", r.c2.to_nested()},
                      {"h2", r.h2.to_nested()},
                      {"homogeneous", r.homogeneous},
                      {"a2", r.a2.to_nested()},
                      {"ancillas_restored", r.ancillas_restored}};
        if (r.trace) block["trace"] = trace_json(*r.trace);
        supracontexts.push_back(std::move(block));
    }
    Json report = {{"schema_version", kSchemaVersion},
                   {"command", "gates"},
                   {"given", p.given.to_string()},
                   {"v2", run.v2.to_nested()},
                   {"w2", run.w2.to_nested()},
                   {"p2", run.p2.to_nested()},
                   {"prelude_restored", run.prelude_restored}};
    if (run.prelude_trace) report["prelude_trace"] = trace_json(*run.prelude_trace);
    report["gates_per_supracontext"] = run.gates_per_supracontext;
    report["supracontexts"] = supracontexts;
    report["a2_ones"] = a2_ones;
    out << report.dump(2) << '\n';
    return kExitOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.seed) throw UsageError("sample requires --seed");
    const Problem p = load_problem(cfg);
    const OutcomeDistribution dist = predict_distribution(compute_set(cfg, p));
    const Outcome& drawn = sample_outcome(dist, *cfg.seed);
    if (cfg.format == Format::Text) {
        out << drawn.label << '\n';
    } else {
        const Json report = {
            {"schema_version", kSchemaVersion}, {"command", "sample"}, {"seed", *cfg.seed}, {"outcome", drawn.label}};
        out << report.dump(2) << '\n';
    }
    return kExitOk;
}

/// "y:0.5 x:1/2"; labels are everything before the last colon.
std::vector<std::pair<Outcome, Rational>> parse_distribution(const std::string& text) {
    std::vector<std::pair<Outcome, Rational>> out;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto colon = token.rfind(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) {
            throw FormatError("expected label:probability, got '" + token + "'");
        }
        const std::string label = token.substr(0, colon);
        if (!seen.insert(label).second) throw FormatError("outcome '" + label + "' listed twice");
        out.emplace_back(Outcome{label}, parse_rational(token.substr(colon + 1)));
    }
    if (out.empty()) throw FormatError("empty distribution");
    return out;
}

int cmd_measures(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::pair<Outcome, Rational>> dist;
    if (!cfg.distribution.empty()) {
        dist = parse_distribution(cfg.distribution);
    } else if (!cfg.dataset_path.empty()) {
        const Problem p = load_problem(cfg);
        const OutcomeDistribution predicted = predict_distribution(compute_set(cfg, p));
        for (std::size_t i = 0; i < predicted.outcomes.size(); ++i) {
            dist.emplace_back(predicted.outcomes[i], predicted.probabilities[i]);
        }
    } else if (cfg.density_path.empty()) {
        throw UsageError("measures needs --dist, --dataset with --given, or --density");
    }

    Json report = {{"schema_version", kSchemaVersion}, {"command", "measures"}};
    if (!dist.empty()) {
        std::vector<std::pair<Outcome, double>> weights;
        std::vector<Rational> exact;
        Rational sum = 0;
        for (const auto& [outcome, p] : dist) {
            weights.emplace_back(outcome, to_double(p));
            exact.push_back(p);
            sum += p;
        }
        const DiscreteDistribution approximate(weights);
        const double h = entropy(approximate);
        std::string q, z;
        Json q_json, z_json;
        if (sum == 1) {
            q = to_string(disagreement(exact));
            z = to_string(agreement(exact));
            q_json = q;
            z_json = z;
        } else {
            q = format_double(disagreement(approximate));
            z = format_double(agreement(approximate));
            q_json = disagreement(approximate);
            z_json = agreement(approximate);
        }
        if (cfg.format == Format::Text) {
            out << "H " << format_double(h) << "\nQ " << q << "\nZ " << z << '\n';
        }
        Json outcomes = Json::array();
        for (const auto& [outcome, p] : dist) outcomes.push_back({{"outcome", outcome.label}, {"probability", to_string(p)}});
        report["distribution"] = outcomes;
        report["exact"] = sum == 1;
        report["entropy"] = h;
        report["disagreement"] = q_json;
        report["agreement"] = z_json;
    }
    if (!cfg.density_path.empty()) {
        std::ifstream in(cfg.density_path);
        if (!in) throw FormatError("cannot open density file " + cfg.density_path);
        const double zprime = agreement_density(TabulatedDensity::parse(in));
        if (cfg.format == Format::Text) out << "Z' " << format_double(zprime) << '\n';
        report["agreement_density"] = zprime;
    }
    if (cfg.format == Format::Json) out << report.dump(2) << '\n';
    return kExitOk;
}

void add_problem_options(CLI::App& sub, RunConfig& cfg, CLI::Option*& seed_option, bool with_engine) {
    sub.add_option("--dataset", cfg.dataset_path, "Dataset file: <outcome>TAB<f1> <f2> ... per line");
    sub.add_option("--given", cfg.given, "Given context as one space-separated argument");
    if (with_engine) {
        sub.add_option("--engine", cfg.engine, "Evaluation engine")
            ->transform(CLI::CheckedTransformer(std::map<std::string, Engine>{{"fast", Engine::Fast},
                                                                              {"gates", Engine::Gates}}));
    }
    seed_option = sub.add_option("--seed", cfg.seed, "Seed for sampling");
    sub.add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}}));
    sub.add_option("--n-cap", cfg.n_cap, "Largest accepted number of variables")->check(CLI::Range(1, 63));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Analogical Modeling prediction with homogeneous pointers", "qam"};
    app.require_subcommand(1);

    CLI::Option* seed = nullptr;
    CLI::App* predict = app.add_subcommand("predict", "Outcome distribution for the given context");
    add_problem_options(*predict, cfg, seed, true);
    CLI::App* explain = app.add_subcommand("explain", "Per-supracontext members, verdicts and pointers");
    add_problem_options(*explain, cfg, seed, true);
    CLI::App* gates = app.add_subcommand("gates", "Dump the reversible-gate pipeline");
    add_problem_options(*gates, cfg, seed, false);
    gates->add_flag("--trace", cfg.trace, "Record and print every applied gate");
    CLI::App* sample = app.add_subcommand("sample", "Draw one outcome from the prediction");
    add_problem_options(*sample, cfg, seed, true);
    CLI::App* measures = app.add_subcommand("measures", "Entropy, disagreement and agreement");
    add_problem_options(*measures, cfg, seed, true);
    measures->add_option("--dist", cfg.distribution, "Distribution as \"label:prob label:prob ...\"");
    measures->add_option("--density", cfg.density_path, "Two-column file of x and f(x)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (predict->parsed()) return cmd_predict(cfg, out);
        if (explain->parsed()) return cmd_explain(cfg, out);
        if (gates->parsed()) return cmd_gates(cfg, out);
        if (sample->parsed()) return cmd_sample(cfg, out);
        return cmd_measures(cfg, out);
    } catch (const UsageError& e) {
        err << "qam: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedSizeError& e) {
        err << "qam: unsupported size: " << e.what() << '\n';
        return kExitUnsupportedSize;
    } catch (const NoAnalogicalSupportError& e) {
        err << "qam: " << e.what() << '\n';
        return kExitNoSupport;
    } catch (const Error& e) {
        err << "qam: " << e.what() << '\n';
        return kExitFormat;
    } catch (const std::exception& e) {
        err << "qam: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace qam::cli
