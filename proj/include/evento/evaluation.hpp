#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evento/extraction.hpp"
#include "evento/linking.hpp"

namespace evento {

/// Precision/recall style report. Undefined ratios (zero denominator) stay
/// unset and print as n/a.
struct MetricReport {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> true_negative_rate; // extraction only
    long true_positives = 0;
    long false_positives = 0;
    long false_negatives = 0;
    long true_negatives = 0;
    long support = 0; // gold records contributing
};

MetricReport from_confusion(long tp, long fp, long fn, long tn = 0);

// ---------------------------------------------------------------------------
// Gold records (JSON-lines; same schema as system output with gold_ fields)

struct LinkingGold {
    std::string doc_id;
    std::string sentence_id;
    int first_token = 0;
    int last_token = 0;
    std::string entity_id;
    EntityClass entity_class = EntityClass::PER;
};

struct TypingGold {
    std::string key; // opaque record key (doc:sentence:token or word id)
    std::string gold_type;
};

/// System side of one typing decision: thresholded top-1 plus the raw
/// centroid ranking.
struct TypingPrediction {
    std::string key;
    std::string top1; // post-threshold answer (may be OTHER)
    std::vector<std::string> ranking; // raw centroid ranking, best first
};

struct ExtractionGold {
    std::string doc_id;
    std::string sentence_id;
    bool denotes_event = false;
};

struct ClassificationGold {
    std::string doc_id;
    std::string sentence_id;
    int anchor_first = 0;
    int anchor_last = 0;
    std::string gold_class;
};

struct LinkingReport {
    std::map<EntityClass, MetricReport> per_class;
    long linked_mentions = 0;
    long ambiguous_mentions = 0;
};

/// A predicted link is correct iff span and entity id both match gold.
LinkingReport eval_linking(const std::vector<EntityMention>& system,
                           const std::vector<LinkingGold>& gold);

struct TypingReport {
    double accuracy_at_1 = 0.0;
    double accuracy_at_3 = 0.0;
    long correct_at_1 = 0;
    long correct_at_3 = 0;
    long total = 0;
};

/// accuracy@k: hit iff gold is in the top-k of the raw ranking; gold OTHER
/// is matched by the thresholded top-1 only. Throws QueryError when a gold
/// key has no system record.
TypingReport eval_typing(const std::vector<TypingPrediction>& system,
                         const std::vector<TypingGold>& gold);

/// Sentence-level binary evaluation: a sentence is predicted positive when
/// the system extracted at least one event mention in it.
MetricReport eval_extraction(const std::vector<EventMention>& system,
                             const std::vector<ExtractionGold>& gold);

struct ClassificationReport {
    std::optional<double> precision_high;
    std::optional<double> precision_low;
    long correct_high = 0, total_high = 0;
    long correct_low = 0, total_low = 0;
};

/// Class-match precision over system-extracted mentions, split by
/// confidence. Gold records that match no system mention are errors;
/// system mentions without gold are skipped (gold may sample a subset).
ClassificationReport eval_classification(const std::vector<EventMention>& system,
                                         const std::vector<ClassificationGold>& gold);

// Human-readable / TSV rendering.
void print_linking_report(const LinkingReport& r, std::ostream& out);
void print_typing_report(const TypingReport& r, std::ostream& out);
void print_extraction_report(const MetricReport& r, std::ostream& out);
void print_classification_report(const ClassificationReport& r, std::ostream& out);

} // namespace evento
