#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "evento/config.hpp"
#include "evento/corpus.hpp"
#include "evento/extraction.hpp"
#include "evento/linking.hpp"
#include "evento/resources.hpp"
#include "evento/typing.hpp"

namespace evento {

/// All knowledge resources named by a config, loaded and validated.
struct Resources {
    Gazetteers gazetteers;
    SemanticTypeDictionary semantic_types;
    PatternDictionary patterns;
    EmbeddingStore embeddings;
    std::vector<std::string> person_templates;
};

Resources load_resources(const PipelineConfig& config);

struct LinkStageResult {
    std::vector<EntityMention> mentions;
    nlohmann::ordered_json stats; // sidecar: counts per status/class, iterations
};

/// Mention finding, direct linking, cross-class training, association
/// statistics and iterative disambiguation, in that order. When fewer
/// direct-linked training samples than k exist the cross-class step is
/// skipped with a notice in the stats sidecar.
LinkStageResult run_link(const PipelineConfig& config, const Resources& resources,
                         const std::vector<Document>& docs);

struct ExtractStageResult {
    ExtractionResult extraction;
    std::string summary_tsv;
};

/// Semantic typing plus event extraction over a linked corpus.
ExtractStageResult run_extract(const PipelineConfig& config, const Resources& resources,
                               const std::vector<Document>& docs,
                               const std::vector<EntityMention>& mentions);

/// Parses one or more CoNLL-U files into a single corpus; parse
/// diagnostics go to `diag_out` when non-null.
std::vector<Document> load_corpus(const std::vector<std::string>& paths,
                                  const std::string& subcorpus, std::ostream* diag_out);

} // namespace evento
