#include "qpg/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qpg/version.hpp"

namespace qpg {

namespace fs = std::filesystem;

MonomialOrder PipelineConfig::effective_order() const {
    return order ? *order : MonomialOrder::row_major(n);
}

std::string PipelineConfig::resolved_out_dir() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("QPG_OUT_DIR"); env && *env) return env;
    return "qpg-out";
}

Json PipelineConfig::to_json() const {
    return Json{{"n", n},
                {"order", order_to_json(effective_order())},
                {"degree_cap", degree_cap},
                {"certify_m", certify_m},
                {"max_memory_bytes", max_memory_bytes},
                {"threads", threads},
                {"out_dir", resolved_out_dir()}};
}

PipelineConfig PipelineConfig::from_json(const Json& j) {
    PipelineConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.order = order_from_json(j.at("order"));
    cfg.degree_cap = j.at("degree_cap").get<int>();
    cfg.certify_m = j.at("certify_m").get<int>();
    cfg.max_memory_bytes = j.at("max_memory_bytes").get<size_t>();
    cfg.threads = j.at("threads").get<int>();
    cfg.out_dir = j.at("out_dir").get<std::string>();
    return cfg;
}

Json RunReport::to_json() const {
    Json st = Json::array();
    for (const auto& s : stages)
        st.push_back(Json{{"name", s.name},
                          {"seconds", s.seconds},
                          {"from_cache", s.from_cache},
                          {"artifact", s.artifact_path},
                          {"sha256", s.artifact_sha256}});
    return Json{{"stages", st}, {"warnings", warnings}};
}

std::string write_artifact(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    out.close();
    return sha256_hex(text);
}

namespace {

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void PipelineConfig::validate() const {
    if (n < 1) throw InvalidSizeError("matrix size must be at least 1");
    if (degree_cap < 2) throw InvalidSizeError("degree cap below the relation degree");
    if (certify_m < 0) throw InvalidSizeError("negative certification degree");
    if (threads < 1) throw InvalidSizeError("thread count must be at least 1");
    if (order && order->n() != n) throw AlphabetMismatchError("variable order size differs from n");
}

Pipeline::Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    // Config snapshot next to the artifacts, for provenance.
    Json j = cfg_.to_json();
    std::string text = j.dump(2) + "\n";
    fs::path path = fs::path(cfg_.resolved_out_dir()) /
                    ("config-" + sha256_hex(text).substr(0, 16) + ".json");
    if (!fs::exists(path)) write_artifact(path, text);
    config_path_ = path.string();
}

fs::path Pipeline::cache_dir() const { return fs::path(cfg_.resolved_out_dir()) / "cache"; }

std::string Pipeline::gb_cache_key() const {
    Json key{{"stage", "gb"},
             {"format", kCertificateFormat},
             {"n", cfg_.n},
             {"degree_cap", cfg_.degree_cap},
             {"order", order_to_json(cfg_.effective_order())}};
    return sha256_hex(key.dump()).substr(0, 16);
}

std::string Pipeline::automaton_cache_key() const {
    Json key{{"stage", "automaton"}, {"gb", gb_cache_key()}};
    return sha256_hex(key.dump()).substr(0, 16);
}

const GroebnerBasis& Pipeline::groebner() {
    if (gb_) return *gb_;
    auto t0 = std::chrono::steady_clock::now();
    fs::path path = cache_dir() / ("gb-n" + std::to_string(cfg_.n) + "-" + gb_cache_key() + ".json");
    StageReport stage;
    stage.name = "gb";
    if (auto text = read_file(path)) {
        gb_ = gb_from_json(Json::parse(*text));
        stage.from_cache = true;
        stage.artifact_sha256 = sha256_hex(*text);
    } else {
        gb_ = complete(magic_ideal_generators(cfg_.n), cfg_.effective_order(), cfg_.degree_cap);
        stage.artifact_sha256 = write_artifact(path, gb_to_json(*gb_).dump(2) + "\n");
    }
    stage.artifact_path = path.string();
    stage.seconds = seconds_since(t0);
    report_.stages.push_back(stage);
    return *gb_;
}

const Dfa& Pipeline::automaton() {
    if (dfa_) return *dfa_;
    const GroebnerBasis& gb = groebner();
    auto t0 = std::chrono::steady_clock::now();
    fs::path path =
        cache_dir() / ("automaton-n" + std::to_string(cfg_.n) + "-" + automaton_cache_key() + ".json");
    StageReport stage;
    stage.name = "automaton";
    if (auto text = read_file(path)) {
        dfa_ = dfa_from_json(Json::parse(*text));
        stage.from_cache = true;
        stage.artifact_sha256 = sha256_hex(*text);
    } else {
        dfa_ = minimize(forbidden_factor_dfa(gb.leading_terms(), gb.n(), gb.order()));
        stage.artifact_sha256 = write_artifact(path, dfa_to_json(*dfa_).dump(2) + "\n");
    }
    stage.artifact_path = path.string();
    stage.seconds = seconds_since(t0);
    report_.stages.push_back(stage);

    static const std::map<int, int> expected_states{{4, 17}, {5, 26}, {6, 37}};
    auto it = expected_states.find(cfg_.n);
    if (it != expected_states.end() && dfa_->states() != it->second)
        report_.warnings.push_back(
            "state count " + std::to_string(dfa_->states()) + " for n=" + std::to_string(cfg_.n) +
            " differs from the reference count " + std::to_string(it->second) +
            "; counts are sensitive to the variable order");
    return *dfa_;
}

const MagicModel& Pipeline::model() {
    if (model_) return *model_;
    if (cfg_.n != 4)
        throw MissingModelError("no bundled model for n=" + std::to_string(cfg_.n));
    auto t0 = std::chrono::steady_clock::now();
    model_ = build_M();
    StageReport stage;
    stage.name = "model";
    stage.seconds = seconds_since(t0);
    stage.artifact_sha256 = sha256_hex(model_to_json(*model_).dump());
    report_.stages.push_back(stage);
    return *model_;
}

Certificate Pipeline::run_certify(int m) {
    const Dfa& dfa = automaton();
    const MagicModel& mod = model();
    auto t0 = std::chrono::steady_clock::now();
    PsiOptions opts;
    opts.max_memory_bytes = cfg_.max_memory_bytes;
    opts.threads = cfg_.threads;
    Certificate cert = certify(mod, dfa, cfg_.n, m, opts);
    StageReport stage;
    stage.name = "certify";
    stage.seconds = seconds_since(t0);
    report_.stages.push_back(stage);
    return cert;
}

}  // namespace qpg
