#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "qpg/pipeline.hpp"
#include "qpg/version.hpp"

namespace {

using namespace qpg;

constexpr int kExitInconclusive = 2;
constexpr int kExitBudgetExceeded = 3;
constexpr int kExitCapExceeded = 4;

void stage_log(const std::string& msg) { std::cerr << "[qpg] " << msg << "\n"; }

void emit_report(Pipeline& pipe) {
    for (const auto& s : pipe.report().stages)
        stage_log("stage " + s.name + (s.from_cache ? " (cache)" : "") + " " +
                  std::to_string(s.seconds) + "s " + s.artifact_path);
    for (const auto& w : pipe.report().warnings) stage_log("warning: " + w);
}

MonomialOrder load_order(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read order file " + path);
    Json j = Json::parse(in);
    return order_from_json(j);
}

int cmd_gb(const PipelineConfig& cfg) {
    Pipeline pipe(cfg);
    const GroebnerBasis& gb = pipe.groebner();
    Json out = gb_to_json(gb);
    out["summary"] = Json{{"rule_count", gb.rules().size()},
                          {"max_lead_degree", gb.max_lead_degree()},
                          {"terminated", gb.terminated()}};
    out["report"] = pipe.report().to_json();
    std::cout << out.dump(2) << "\n";
    emit_report(pipe);
    return 0;
}

int cmd_automaton(const PipelineConfig& cfg, const std::string& dot_file, int count_m, bool growth) {
    Pipeline pipe(cfg);
    const Dfa& dfa = pipe.automaton();
    Json out = dfa_to_json(dfa);
    if (!dot_file.empty()) {
        write_artifact(dot_file, export_dot(dfa));
        stage_log("wrote " + dot_file);
    }
    if (count_m >= 0) {
        LengthCounts lc = count_by_length(dfa, count_m);
        Json counts = Json::array(), cumulative = Json::array();
        for (const auto& c : lc.counts) counts.push_back(c.str());
        for (const auto& c : lc.cumulative) cumulative.push_back(c.str());
        out["counts"] = counts;
        out["cumulative"] = cumulative;
    }
    if (growth) {
        GrowthResult g = growth_rate(dfa);
        out["growth"] = g.rate;
        out["growth_kind"] = g.kind == GrowthKind::finite       ? "finite"
                             : g.kind == GrowthKind::polynomial ? "polynomial"
                                                                : "exponential";
    }
    out["report"] = pipe.report().to_json();
    std::cout << out.dump(2) << "\n";
    emit_report(pipe);
    return 0;
}

int cmd_growth(const PipelineConfig& cfg, double tol) {
    Pipeline pipe(cfg);
    GrowthResult g = growth_rate(pipe.automaton(), tol);
    Json out{{"n", cfg.n},
             {"growth", g.rate},
             {"kind", g.kind == GrowthKind::finite       ? "finite"
                      : g.kind == GrowthKind::polynomial ? "polynomial"
                                                         : "exponential"},
             {"iterations", g.iterations}};
    std::cout << out.dump(2) << "\n";
    emit_report(pipe);
    return 0;
}

int cmd_characters(const PipelineConfig& cfg, const std::string& out_file) {
    std::string csv = characters_csv(character_table(build_M()));
    if (!out_file.empty()) {
        write_artifact(out_file, csv);
        stage_log("wrote " + out_file);
    } else {
        std::string path = (std::filesystem::path(cfg.resolved_out_dir()) / "characters.csv").string();
        write_artifact(path, csv);
        stage_log("wrote " + path);
    }
    std::cout << csv;
    return 0;
}

int cmd_certify(PipelineConfig cfg, int m, bool with_oracle, const std::string& out_file) {
    Pipeline pipe(cfg);
    Certificate cert = pipe.run_certify(m);
    if (with_oracle) {
        stage_log("running the exact rank oracle");
        ValueColumns vals = build_psi_values(pipe.model(), pipe.automaton(), m);
        Int exact = exact_rank_oracle(vals);
        stage_log("exact rank " + exact.str() + ", structural bound " +
                  cert.rank_lower_bound.str());
        if (exact < cert.rank_lower_bound)
            throw ModelViolationError("structural bound exceeds the exact rank");
    }
    Json out = certificate_to_json(cert);
    std::string text = out.dump(2) + "\n";
    if (!out_file.empty()) {
        write_artifact(out_file, text);
        stage_log("wrote " + out_file);
    }
    std::cout << text;
    emit_report(pipe);
    return cert.verdict == Verdict::no_separating_polynomial ? 0 : kExitInconclusive;
}

int cmd_dims(const PipelineConfig& cfg, int k, int l, long cap, const std::string& out_file) {
    Pipeline pipe(cfg);
    const Dfa& dfa = pipe.automaton();
    std::optional<long> crossing = dimension_gap(dfa, k, l, cap);

    std::ostringstream csv;
    csv << "m,basis_cumulative,image_bound,crossed\n";
    const int S = dfa.states();
    std::vector<Int> v(S, 0);
    v[dfa.initial] = 1;
    Int cumulative = 0;
    long stop = crossing ? *crossing : cap;
    for (long mm = 0; mm <= stop; ++mm) {
        if (mm > 0) {
            std::vector<Int> w(S, 0);
            for (int s = 0; s < S; ++s)
                for (int a = 0; a < dfa.n * dfa.n && v[s] != 0; ++a)
                    if (dfa.next[s][a] >= 0) w[dfa.next[s][a]] += v[s];
            v = std::move(w);
        }
        for (int s = 0; s < S; ++s)
            if (dfa.is_final[s]) cumulative += v[s];
        Int bound = int_pow(Int(2 * mm + 1), static_cast<unsigned long>(k) * l);
        csv << mm << ',' << cumulative.str() << ',' << bound.str() << ','
            << (cumulative > bound ? 1 : 0) << '\n';
    }
    std::string path = out_file.empty()
                           ? (std::filesystem::path(cfg.resolved_out_dir()) /
                              ("dims-n" + std::to_string(cfg.n) + "-k" + std::to_string(k) + "-l" +
                               std::to_string(l) + ".csv"))
                                 .string()
                           : out_file;
    write_artifact(path, csv.str());
    stage_log("wrote " + path);
    std::cout << csv.str();
    if (crossing)
        stage_log("crossing at m=" + std::to_string(*crossing));
    else
        stage_log("no crossing up to cap " + std::to_string(cap));
    emit_report(pipe);
    return 0;
}

int cmd_check(PipelineConfig cfg);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"magic unitary quotient pipeline: relations, quotient automata, exact models, rank certificates"};
    app.set_version_flag("--version", std::string("qpg ") + qpg::kToolVersion + " (certificate format " +
                                          qpg::kCertificateFormat + ")");

    PipelineConfig cfg;
    std::string order_file, dot_file, out_file;
    int count_m = -1;
    bool growth = false, with_oracle = false;
    int dims_k = 1, dims_l = 1;
    long dims_cap = 100;
    double tol = 1e-10;
    long max_memory = -1;

    auto add_common = [&](CLI::App* cmd, bool with_n = true) {
        if (with_n) cmd->add_option("--n", cfg.n, "matrix size")->check(CLI::Range(1, 8));
        cmd->add_option("--degree-cap", cfg.degree_cap, "completion degree cap");
        cmd->add_option("--order", order_file, "variable order file (JSON permutation)");
        cmd->add_option("--out-dir", cfg.out_dir, "artifact/cache directory (default $QPG_OUT_DIR or ./qpg-out)");
        cmd->add_option("--threads", cfg.threads, "worker threads for matrix construction");
    };

    CLI::App* gb = app.add_subcommand("gb", "compute the reduced rewriting system for the relations ideal");
    add_common(gb);

    CLI::App* automaton = app.add_subcommand("automaton", "build and minimize the quotient-basis automaton");
    add_common(automaton);
    automaton->add_option("--dot", dot_file, "write Graphviz output to this file");
    automaton->add_option("--count", count_m, "also count accepted words up to this length");
    automaton->add_flag("--growth", growth, "also estimate the growth rate");

    CLI::App* growth_cmd = app.add_subcommand("growth", "dominant growth rate of the accepted language");
    add_common(growth_cmd);
    growth_cmd->add_option("--tol", tol, "power iteration tolerance");

    CLI::App* characters = app.add_subcommand("characters", "character table of the bundled model as CSV");
    add_common(characters, false);
    characters->add_option("--out", out_file, "CSV output file");

    CLI::App* certify = app.add_subcommand("certify", "build the evaluation matrix and certify its rank");
    add_common(certify);
    int certify_m = 10;
    certify->add_option("--m", certify_m, "degree bound")->required();
    certify->add_flag("--oracle", with_oracle, "cross-check with the exact rank oracle");
    certify->add_option("--max-memory", max_memory, "memory budget in bytes");
    certify->add_option("--out", out_file, "certificate output file");

    CLI::App* dims = app.add_subcommand("dims", "compare basis growth against the image dimension bound");
    add_common(dims);
    dims->add_option("--k", dims_k, "tensor legs")->required();
    dims->add_option("--l", dims_l, "entry word length")->required();
    dims->add_option("--cap", dims_cap, "search cap")->required();
    dims->add_option("--out", out_file, "CSV output file");

    CLI::App* check = app.add_subcommand("check", "run the full invariant suite");
    add_common(check);

    app.require_subcommand(1);

    try {
        CLI11_PARSE(app, argc, argv);
        if (!order_file.empty()) cfg.order = load_order(order_file);
        if (max_memory > 0) cfg.max_memory_bytes = static_cast<size_t>(max_memory);

        if (gb->parsed()) return cmd_gb(cfg);
        if (automaton->parsed()) return cmd_automaton(cfg, dot_file, count_m, growth);
        if (growth_cmd->parsed()) return cmd_growth(cfg, tol);
        if (characters->parsed()) return cmd_characters(cfg, out_file);
        if (certify->parsed()) return cmd_certify(cfg, certify_m, with_oracle, out_file);
        if (dims->parsed()) return cmd_dims(cfg, dims_k, dims_l, dims_cap, out_file);
        if (check->parsed()) return cmd_check(cfg);
    } catch (const qpg::BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n  progress: " << e.progress << "\n";
        return kExitBudgetExceeded;
    } catch (const qpg::CapExceededError& e) {
        std::cerr << "degree cap exceeded: " << e.what() << "\n  partial rules: " << e.partial.rules().size()
                  << "\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

namespace {

int check_line(const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    return ok ? 0 : 1;
}

int cmd_check(PipelineConfig cfg) {
    int failures = 0;
    {
        cfg.n = 4;
        Pipeline pipe(cfg);
        const GroebnerBasis& gb = pipe.groebner();
        failures += check_line("gb.terminated", gb.terminated());
        const Dfa& dfa = pipe.automaton();
        failures += check_line("automaton.states.17", dfa.states() == 17);
        LengthCounts lc = count_by_length(dfa, 30);
        bool counts_ok = true;
        for (int m = 0; m <= 30; ++m) {
            counts_ok = counts_ok && lc.counts[m] == Int(2 * m + 1) * (2 * m + 1) &&
                        lc.cumulative[m] == binomial(2 * m + 3, 3);
        }
        failures += check_line("counts.quadratic.binomial", counts_ok);

        failures += check_line("slice.oracle.d2",
                               quotient_slice_dimension_oracle(magic_ideal_generators(4), 2,
                                                               gb.order()) == Int(35));

        // Acceptance agrees with normal forms on sampled words.
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> len_dist(0, 5), var_dist(0, 15);
        bool agree = true;
        for (int trial = 0; trial < 2000 && agree; ++trial) {
            int len = len_dist(rng);
            std::vector<uint16_t> w(len);
            for (auto& a : w) a = static_cast<uint16_t>(var_dist(rng));
            Monomial mono(4, w);
            bool accepted = dfa.accepts(mono);
            Polynomial nf = reduce(Polynomial(mono), gb);
            bool normal = nf == Polynomial(mono);
            agree = accepted == normal;
        }
        failures += check_line("language.matches.normal.forms", agree);

        const MagicModel& model = pipe.model();
        failures += check_line("model.magic.unitary", is_magic_unitary(model));
        failures += check_line("model.spectrum.24", spectrum(model).size() == 24);

        Certificate cert = pipe.run_certify(6);
        failures += check_line("certify.m6.full.rank",
                               cert.verdict == Verdict::no_separating_polynomial &&
                                   cert.columns == binomial(15, 3));
        ValueColumns vals = build_psi_values(model, dfa, 6);
        failures += check_line("oracle.m6.matches", exact_rank_oracle(vals) == cert.columns);

        PsiMatrix psi = build_psi(model, dfa, 4);
        failures += check_line("pattern.mirror", psi.pattern.mirror_ok());
    }
    std::cout << (failures == 0 ? "all checks passed\n" : "checks failed\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace
