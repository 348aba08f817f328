#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qpg/serialize.hpp"

namespace qpg {

struct PipelineConfig {
    int n = 4;
    std::optional<MonomialOrder> order;  // row-major when unset
    int degree_cap = 12;
    int certify_m = 10;
    size_t max_memory_bytes = size_t(6) << 30;
    int threads = 1;
    std::string out_dir;  // QPG_OUT_DIR or "qpg-out" when empty

    MonomialOrder effective_order() const;
    std::string resolved_out_dir() const;
    /// Rejects inconsistent fields; every stage runner calls this first.
    void validate() const;
    Json to_json() const;
    static PipelineConfig from_json(const Json& j);
};

struct StageReport {
    std::string name;
    double seconds = 0;
    bool from_cache = false;
    std::string artifact_path;
    std::string artifact_sha256;
};

struct RunReport {
    std::vector<StageReport> stages;
    std::vector<std::string> warnings;
    Json to_json() const;
};

/// Staged runner with on-disk caching keyed by a hash of the relevant config
/// fields; reruns with an intact cache reuse byte-identical artifacts.
class Pipeline {
public:
    explicit Pipeline(PipelineConfig cfg);

    const PipelineConfig& config() const { return cfg_; }
    const GroebnerBasis& groebner();
    const Dfa& automaton();
    const MagicModel& model();  // bundled model, n = 4 only
    Certificate run_certify(int m);

    RunReport& report() { return report_; }
    const std::string& config_path() const { return config_path_; }
    std::string gb_cache_key() const;
    std::string automaton_cache_key() const;

private:
    std::filesystem::path cache_dir() const;
    PipelineConfig cfg_;
    RunReport report_;
    std::string config_path_;
    std::optional<GroebnerBasis> gb_;
    std::optional<Dfa> dfa_;
    std::optional<MagicModel> model_;
};

/// Writes text and returns its hash; creates parent directories as needed.
std::string write_artifact(const std::filesystem::path& path, const std::string& text);

}  // namespace qpg
