#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evento/corpus.hpp"
#include "evento/linking.hpp"
#include "evento/resources.hpp"
#include "evento/typing.hpp"

namespace evento {

/// An occurrence of a lexical unit: the token span that triggers event
/// classification. Multiword anchors cover the full lemma sequence; their
/// dependency head is the sequence's verb token.
struct Anchor {
    Span span;
    size_t unit_index = 0; // into PatternDictionary::units
    LuKind kind = LuKind::Verbal;
    int head_token = 0;
};

/// Longest-match-first over lemma sequences: contiguous multiword runs
/// take precedence over single-lemma units inside them; single-lemma units
/// require POS agreement (VERB for verbal, NOUN for nominal). Anchors never
/// overlap.
std::vector<Anchor> detect_anchors(const Sentence& sentence, const PatternDictionary& dictionary);

struct ExtractedArgument {
    Span span;
    int head_token = 0;
    std::string head_lemma;
    std::string head_surface;
    std::string deprel;
    std::optional<std::string> preposition; // nmod case marker
    std::string sem_type;
    std::optional<double> similarity;
    std::optional<std::string> entity_id; // when covered by a linked mention
    std::optional<std::string> role;      // set by classify on matched arguments
    bool matched = false;
};

enum class Confidence { High, Low };
std::string to_string(Confidence c);

/// A classified event anchor with role-labeled arguments. High confidence
/// requires at least two matched arguments, Low exactly one.
struct EventMention {
    std::string doc_id;
    Anchor anchor;
    std::string lemma; // lexical unit display form
    std::string event_class;
    Confidence confidence = Confidence::Low;
    int match_score = 0;
    std::vector<ExtractedArgument> arguments;
};

/// Dependents of the anchor head under {nsubj, nsubjpass, dobj, nmod,
/// nummod} (verbal/multiword) or {nmod} (nominal), in surface order. Typing
/// precedence: linked mention class, then NE tag, then TIMEX tag, then
/// centroid classification of the head lemma.
std::vector<ExtractedArgument> extract_arguments(const Sentence& sentence, const Anchor& anchor,
                                                 const PatternDictionary& dictionary,
                                                 const std::vector<EntityMention>& sentence_mentions,
                                                 const CentroidModel& model,
                                                 const EmbeddingStore& embeddings);

struct ClassScore {
    std::string event_class;
    int score = 0;
    /// argument index -> role from its most specific matching pattern
    /// (preposition-bearing beats bare, ties by dictionary file order).
    std::map<size_t, std::string> roles;
};

/// Scores every candidate class of the unit: one point per argument whose
/// (deprel, preposition, semantic type) matches some pattern of the class.
/// Ranked by descending score, ties by class label.
std::vector<ClassScore> match_class(const std::vector<ExtractedArgument>& arguments,
                                    const LexicalUnit& unit);

/// Single-candidate units emit when the score is at least 1; multi-
/// candidate units emit the unique top scorer (a tie for the top emits
/// nothing). Matched arguments receive the class's roles; the rest are
/// carried with no role.
std::optional<EventMention> classify(const std::string& doc_id, const Anchor& anchor,
                                     std::vector<ExtractedArgument> arguments,
                                     const PatternDictionary& dictionary);

struct ExtractionCounts {
    long anchors = 0;
    long high = 0;
    long low = 0;
    long events() const { return high + low; }
};

struct ExtractionSummary {
    std::map<LuKind, ExtractionCounts> by_kind;
    ExtractionCounts total() const;
};

struct ExtractionResult {
    std::vector<EventMention> events;
    ExtractionSummary summary;
};

/// Runs anchor detection, argument extraction and classification over every
/// sentence; mention list provides entity overrides.
ExtractionResult extract_corpus(const std::vector<Document>& docs,
                                const PatternDictionary& dictionary,
                                const std::vector<EntityMention>& mentions,
                                const CentroidModel& model, const EmbeddingStore& embeddings);

/// Summary TSV: one row per LU kind (anchors, high, low, events) plus a
/// total row.
std::string summary_tsv(const ExtractionSummary& summary);

} // namespace evento
