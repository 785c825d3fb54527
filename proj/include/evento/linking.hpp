#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evento/corpus.hpp"
#include "evento/resources.hpp"

namespace evento {

// ---------------------------------------------------------------------------
// Surface forms and mentions

/// Expands a PER entry into its surface forms by instantiating the template
/// list over the available identity fields. Templates use the placeholders
/// N (name), S (surname), K (nickname); any other template token is a
/// literal. Templates referencing a missing field are skipped. Output forms
/// are space-joined token sequences.
std::set<std::string> generate_person_patterns(const GazetteerEntry& entry,
                                               const std::vector<std::string>& templates);

/// One template per line, `#` comments. The shipped file holds the 26
/// person-name combinations.
std::vector<std::string> load_person_pattern_templates(const std::string& path);

enum class MentionStatus { Linked, Ambiguous, UnlinkedNe };

std::string to_string(MentionStatus s);

/// A located entity mention. Linked mentions resolve to one gazetteer
/// entry; ambiguous ones carry the candidate set; unlinked_ne mentions come
/// from upstream NE/TIMEX annotations with no gazetteer match.
struct EntityMention {
    std::string doc_id;
    Span span;
    std::string surface;
    MentionStatus status = MentionStatus::Ambiguous;
    std::string entity_id;                // linked only
    std::vector<std::string> candidates;  // sorted, ambiguous only
    std::optional<EntityClass> entity_class;
    std::string ne_label; // unlinked_ne only: PER/LOC/ORG or DATE/TIME/DURATION/SET

    bool cross_class_ambiguous(const Gazetteers& g) const;
};

/// Leftmost-longest, non-overlapping token-aligned matching of all
/// gazetteer surface forms (LOC/ORG names + variants, generated PER
/// patterns + variants). Sentence-initial capitalization is folded; all
/// other matching is literal. Upstream NE/TIMEX token runs not covered by
/// a gazetteer match become unlinked_ne mentions.
std::vector<EntityMention> find_mentions(const Document& doc, const Gazetteers& gazetteers,
                                         const std::vector<std::string>& person_templates);

// ---------------------------------------------------------------------------
// Association statistics

/// Corpus-wide mention frequency and sentence-level co-occurrence counts
/// over linked mentions.
struct AssociationStats {
    std::map<std::string, int> freq;          // entity -> mention count
    std::map<std::string, int> sentence_freq; // entity -> sentences with >=1 mention
    std::map<std::pair<std::string, std::string>, int> cooccur; // key: (min,max)
    long total_sentences = 0;

    int frequency(const std::string& entity_id) const;
    int cooccurrence(const std::string& a, const std::string& b) const;
};

AssociationStats compute_association_stats(const std::vector<Document>& docs,
                                           const std::vector<EntityMention>& mentions);

/// co_occur(a,b) / ((f_a + f_b) / 2); symmetric, in [0,1], 0 when the pair
/// never co-occurs. Throws QueryError for unknown entities or a == b.
double association_score(const AssociationStats& stats, const std::string& a,
                         const std::string& b);

/// Pointwise mutual information over sentence-level counts; rank-only
/// alternative scorer, 0 when the pair never co-occurs.
double pmi_score(const AssociationStats& stats, const std::string& a, const std::string& b);

// ---------------------------------------------------------------------------
// Cross-class disambiguation (k-NN)

/// Feature vector for classifying an ambiguous mention as PER/LOC/ORG:
/// lexical context, POS context, context embedding, and the mention's
/// syntactic link to its governing verb.
struct CrossClassSample {
    std::string word_before;
    std::array<std::string, 2> pos_before; // [w-2, w-1]
    std::array<std::string, 2> pos_after;  // [w+1, w+2]
    std::vector<float> context_embedding;  // mean of the 2 words before; empty = none
    std::string verb_deprel;   // "" when the mention head is not governed by a verb
    std::string verb_category; // movement | membership | conflict | ""
    EntityClass label = EntityClass::PER;
};

struct KnnConfig {
    int k = 9;
    double categorical_weight = 6.0 / 7.0;
    double embedding_weight = 1.0 / 7.0;
};

/// Lazy k-NN under a mixed distance: the 7 categorical features contribute
/// a normalized Hamming distance, the embedding feature a scaled cosine
/// distance. Ties among neighbor labels resolve by smallest summed
/// distance, then by label order PER < LOC < ORG.
class CrossClassModel {
public:
    CrossClassModel(std::vector<CrossClassSample> samples, KnnConfig config);

    EntityClass predict(const CrossClassSample& query) const;

    /// Prediction restricted to `allowed` (vote counted over the k nearest;
    /// if none of them carries an allowed label, the nearest allowed sample
    /// decides).
    EntityClass predict_among(const CrossClassSample& query,
                              const std::set<EntityClass>& allowed) const;

    static double distance(const CrossClassSample& a, const CrossClassSample& b,
                           const KnnConfig& config);

    const KnnConfig& config() const { return config_; }
    size_t size() const { return samples_.size(); }

private:
    std::vector<CrossClassSample> samples_;
    KnnConfig config_;

    EntityClass vote(const CrossClassSample& query, const std::set<EntityClass>* allowed) const;
};

/// Builds the feature vector for a mention span. The governing verb is the
/// span head's direct governor when that governor is verbal; otherwise the
/// verb features stay unset.
CrossClassSample make_cross_class_sample(const Sentence& sentence, const Span& span,
                                         const PatternDictionary& dictionary,
                                         const EmbeddingStore& embeddings);

/// Training samples from direct-linked mentions, restricted to sentences
/// containing at least one modeled lexical unit.
std::vector<CrossClassSample> extract_training_samples(const std::vector<Document>& docs,
                                                       const std::vector<EntityMention>& mentions,
                                                       const PatternDictionary& dictionary,
                                                       const EmbeddingStore& embeddings);

// ---------------------------------------------------------------------------
// Iterative disambiguation

enum class AssociationScorer { AverageNormalized, Pmi };

struct DisambiguationConfig {
    int max_iterations = 10;
    AssociationScorer scorer = AssociationScorer::AverageNormalized;
};

struct DisambiguationResult {
    std::vector<EntityMention> mentions;
    int iterations = 0;
    int cross_class_resolved = 0;
    int newly_linked = 0;
};

/// Two-stage resolution: (1) cross-class ambiguous mentions are class-
/// labeled by the k-NN model (may be null) and their candidate sets
/// filtered to that class; (2) remaining ambiguous mentions are scored
/// against the linked entities of their sentence — candidate score is the
/// summed association score — and the unique positive argmax is linked.
/// Stage 2 iterates against per-iteration snapshots until a fixed point or
/// max_iterations; the linked set grows monotonically and ties or all-zero
/// scores leave a mention ambiguous.
DisambiguationResult disambiguate(const std::vector<Document>& docs,
                                  std::vector<EntityMention> mentions,
                                  const AssociationStats& stats,
                                  const Gazetteers& gazetteers,
                                  const CrossClassModel* model,
                                  const PatternDictionary& dictionary,
                                  const EmbeddingStore& embeddings,
                                  const DisambiguationConfig& config);

} // namespace evento
