#pragma once

#include <string>

#include "evento/linking.hpp"

namespace evento {

/// Declarative pipeline configuration; every subcommand validates it before
/// touching the corpus. Paths are resolved relative to the config file's
/// directory.
struct PipelineConfig {
    std::string gazetteer_per;
    std::string gazetteer_loc;
    std::string gazetteer_org;
    std::string semantic_types;
    std::string pattern_dictionary;
    std::string class_registry;
    std::string embeddings;
    std::string person_patterns;

    int knn_k = 9; // odd, >= 1
    double knn_categorical_weight = 6.0 / 7.0;
    double knn_embedding_weight = 1.0 / 7.0;
    double similarity_threshold = 0.4; // in [-1, 1]
    int max_disambiguation_iterations = 10;
    AssociationScorer association_scorer = AssociationScorer::AverageNormalized;
    int default_hops = 2;

    /// Throws LoadError on out-of-range values.
    void validate() const;
};

PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& config, const std::string& path);

} // namespace evento
