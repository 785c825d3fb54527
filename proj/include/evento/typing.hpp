#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evento/corpus.hpp"
#include "evento/resources.hpp"

namespace evento {

/// Nearest-centroid classifier over word embeddings: one centroid per
/// semantic type (arithmetic mean of the member vectors found in the
/// store), cosine similarity at query time, OTHER below the threshold.
struct CentroidModel {
    int dimension = 0;
    double threshold = 0.4; // minimum cosine similarity
    std::map<std::string, std::vector<float>> centroids;
};

struct CentroidBuildReport {
    std::vector<std::string> dropped_types; // no in-vocabulary member or zero mean
};

/// Throws LoadError when every type drops out after vocabulary
/// intersection. Types whose mean degenerates to the zero vector are
/// dropped with a warning (cosine is undefined there).
CentroidModel build_centroids(const SemanticTypeDictionary& types, const EmbeddingStore& store,
                              double threshold, CentroidBuildReport* report = nullptr);

struct TypeAssignment {
    std::string type; // semantic type, NE/temporal label, or OTHER
    std::optional<double> similarity; // unset for overrides and OTHER-by-oov
};

/// An argument head labeled with its semantic type.
struct TypedArgument {
    Span span;
    std::string head_lemma;
    std::string assigned_type;
    std::optional<double> similarity;
};

/// Override (linked mention or NE/TIMEX tag) wins unconditionally; then
/// lemma is looked up with the surface form as fallback; out-of-vocabulary
/// or below-threshold queries yield OTHER. Argmax ties resolve to the
/// lexicographically smallest type label.
TypeAssignment tag_argument(const CentroidModel& model, const EmbeddingStore& store,
                            const std::string& head_lemma, const std::string& head_surface,
                            const std::optional<std::string>& ne_override);

/// Full centroid ranking by descending cosine (ties by label), truncated
/// to k. No threshold is applied; evaluation harness use.
std::vector<std::pair<std::string, double>> tag_top_k(const CentroidModel& model,
                                                      const EmbeddingStore& store,
                                                      const std::string& head_lemma,
                                                      const std::string& head_surface,
                                                      size_t k);

/// TSV dump `type<TAB>v1<TAB>...<TAB>vd` for external plotting.
void dump_centroids_tsv(const CentroidModel& model, std::ostream& out);

inline const char* kOtherType = "OTHER";

} // namespace evento
