#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace evento {

enum class EntityClass { PER, LOC, ORG };

std::string to_string(EntityClass c);
std::optional<EntityClass> entity_class_from_string(const std::string& s);

/// Semantic type labels reserved for upstream annotations; they may not
/// carry centroid word lists.
const std::set<std::string>& reserved_type_labels();
bool is_ne_label(const std::string& s);
bool is_temporal_label(const std::string& s);

// ---------------------------------------------------------------------------
// Gazetteers

/// A unique domain entity with its lexical variants. PER entries combine
/// name/surname/nickname; LOC and ORG use name plus literal variants.
struct GazetteerEntry {
    std::string entity_id;
    EntityClass entity_class = EntityClass::PER;
    std::string name;     // empty = absent
    std::string surname;  // PER only
    std::string nickname; // PER only
    std::vector<std::string> variants;

    /// Canonical human-readable label ("name surname", falling back to
    /// whichever identity field exists).
    std::string display_name() const;
};

struct Gazetteers {
    std::vector<GazetteerEntry> entries;

    const GazetteerEntry* find(const std::string& entity_id) const;
    int count(EntityClass c) const;

private:
    mutable std::unordered_map<std::string, size_t> index_;
    void ensure_index() const;
};

/// Loads and validates the three gazetteer TSV files. Duplicate entity ids
/// (across all three files) and rows with no identity field are load errors.
Gazetteers load_gazetteers(const std::string& per_path, const std::string& loc_path,
                           const std::string& org_path);

void save_gazetteers(const Gazetteers& g, const std::string& per_path,
                     const std::string& loc_path, const std::string& org_path);

// ---------------------------------------------------------------------------
// Semantic types

struct SemanticTypeDictionary {
    std::map<std::string, std::set<std::string>> entries; // type label -> words

    size_t total_words() const;
};

/// TSV of (type_label, word) rows. Reserved labels are rejected; duplicate
/// rows deduplicate silently.
SemanticTypeDictionary load_semantic_types(const std::string& path);
void save_semantic_types(const SemanticTypeDictionary& d, const std::string& path);

// ---------------------------------------------------------------------------
// Event-predicate pattern dictionary

enum class LuKind { Verbal, Nominal, MultiwordVerbal };

std::string to_string(LuKind k);
std::optional<LuKind> lu_kind_from_string(const std::string& s);

/// A (dependency, optional preposition, semantic type) triple carrying the
/// semantic role it induces under one event class.
struct ArgumentPattern {
    std::string deprel; // nsubj | nsubjpass | dobj | nmod | nummod
    std::optional<std::string> preposition; // nmod only
    std::string semantic_type;
    std::string role;

    bool operator==(const ArgumentPattern& other) const = default;
};

struct EventClassPatterns {
    std::string event_class;
    std::vector<ArgumentPattern> patterns; // file order preserved
};

struct LexicalUnit {
    std::vector<std::string> lemma_sequence; // 1 for verbs/nouns, >=2 for multiword
    LuKind kind = LuKind::Verbal;
    std::vector<EventClassPatterns> classes;

    std::string display() const; // lemmas joined with spaces
    const EventClassPatterns* find_class(const std::string& event_class) const;
};

struct PatternDictionary {
    std::vector<LexicalUnit> units;
    std::map<std::string, std::string> class_registry; // class -> category

    /// Indexes of units whose first lemma equals `lemma` (lowercased).
    std::vector<size_t> units_for_first_lemma(const std::string& lemma) const;

    size_t root_count() const { return units.size(); }
    size_t class_count() const { return class_registry.size(); }
    size_t count_kind(LuKind k) const;

    /// Category (conflict | movement | membership) for the classes of one
    /// unit: majority over the unit's classes, ties by smallest label.
    std::string unit_category(const LexicalUnit& lu) const;

    void rebuild_index();

private:
    std::unordered_map<std::string, std::vector<size_t>> by_first_lemma_;
};

/// Class registry TSV: `event_class<TAB>category` with category one of
/// conflict | movement | membership.
std::map<std::string, std::string> load_class_registry(const std::string& path);
void save_class_registry(const std::map<std::string, std::string>& registry,
                         const std::string& path);

/// Parses the line-based pattern DSL:
///
///   LU <lemma[+lemma...]> <verbal|nominal|multiword_verbal>
///     CLASS <EVENT_CLASS>
///       <deprel> :: <TYPE> -> <Role>
///       <deprel> :: [<prep> [<TYPE>]] -> <Role>
///
/// Types must exist in the semantic-type dictionary or be NE/temporal
/// labels; every referenced class must exist in the registry and every
/// registry class must be referenced; nominal units may use only
/// nmod/nummod patterns.
PatternDictionary load_pattern_dictionary(const std::string& path,
                                          const SemanticTypeDictionary& types,
                                          const std::map<std::string, std::string>& registry);

void save_pattern_dictionary(const PatternDictionary& d, const std::string& path);

// ---------------------------------------------------------------------------
// Word embeddings

class EmbeddingStore {
public:
    int dimension() const { return dimension_; }
    size_t size() const { return vectors_.size(); }

    /// Lookup by word, lowercased. Absent words yield an empty optional,
    /// never a zero vector.
    const std::vector<float>* get(const std::string& word) const;

    void insert(const std::string& word, std::vector<float> v);

    const std::unordered_map<std::string, std::vector<float>>& vectors() const {
        return vectors_;
    }

private:
    int dimension_ = 0;
    std::unordered_map<std::string, std::vector<float>> vectors_;
};

/// Text vectors: optional `<count> <dim>` header, then `word v1 ... vd`
/// lines. Words are lowercased at load; the first occurrence wins. A
/// vocabulary filter restricts what is kept in memory.
EmbeddingStore load_embeddings(const std::string& path,
                               const std::optional<std::set<std::string>>& vocabulary_filter = std::nullopt);

void save_embeddings(const EmbeddingStore& store, const std::string& path);

// ---------------------------------------------------------------------------

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b);

} // namespace evento
