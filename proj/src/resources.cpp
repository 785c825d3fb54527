#include "evento/resources.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "evento/corpus.hpp"
#include "evento/error.hpp"

namespace evento {

std::string to_string(EntityClass c) {
    switch (c) {
        case EntityClass::PER: return "PER";
        case EntityClass::LOC: return "LOC";
        case EntityClass::ORG: return "ORG";
    }
    return "PER";
}

std::optional<EntityClass> entity_class_from_string(const std::string& s) {
    if (s == "PER") return EntityClass::PER;
    if (s == "LOC") return EntityClass::LOC;
    if (s == "ORG") return EntityClass::ORG;
    return std::nullopt;
}

const std::set<std::string>& reserved_type_labels() {
    static const std::set<std::string> labels = {"PER",  "LOC",      "ORG", "DATE",
                                                 "TIME", "DURATION", "SET", "OTHER"};
    return labels;
}

bool is_ne_label(const std::string& s) { return s == "PER" || s == "LOC" || s == "ORG"; }

bool is_temporal_label(const std::string& s) {
    return s == "DATE" || s == "TIME" || s == "DURATION" || s == "SET";
}

namespace {

std::vector<std::string> split_tab(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, '\t')) out.push_back(field);
    if (!line.empty() && line.back() == '\t') out.push_back("");
    return out;
}

std::string unescape_blank(const std::string& s) { return s == "_" ? "" : s; }
std::string escape_blank(const std::string& s) { return s.empty() ? "_" : s; }

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(s);
    while (std::getline(ss, field, sep))
        if (!field.empty()) out.push_back(field);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Gazetteers

std::string GazetteerEntry::display_name() const {
    if (!name.empty() && !surname.empty()) return name + " " + surname;
    if (!surname.empty()) return surname;
    if (!name.empty()) return name;
    if (!nickname.empty()) return nickname;
    if (!variants.empty()) return variants.front();
    return entity_id;
}

void Gazetteers::ensure_index() const {
    if (index_.size() == entries.size()) return;
    index_.clear();
    for (size_t i = 0; i < entries.size(); ++i) index_[entries[i].entity_id] = i;
}

const GazetteerEntry* Gazetteers::find(const std::string& entity_id) const {
    ensure_index();
    auto it = index_.find(entity_id);
    return it == index_.end() ? nullptr : &entries[it->second];
}

int Gazetteers::count(EntityClass c) const {
    return static_cast<int>(
        std::count_if(entries.begin(), entries.end(),
                      [c](const GazetteerEntry& e) { return e.entity_class == c; }));
}

namespace {

void load_gazetteer_file(const std::string& path, EntityClass expected, Gazetteers& out,
                         std::set<std::string>& seen_ids) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open gazetteer file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tab(line);
        if (fields.size() != 6)
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": expected 6 columns (entity_id, class, name, surname, nickname, "
                            "variants), got " +
                            std::to_string(fields.size()));
        GazetteerEntry e;
        e.entity_id = fields[0];
        auto cls = entity_class_from_string(fields[1]);
        if (!cls)
            throw LoadError(path + ":" + std::to_string(line_no) + ": unknown entity class '" +
                            fields[1] + "'");
        if (*cls != expected)
            throw LoadError(path + ":" + std::to_string(line_no) + ": entity class " +
                            fields[1] + " in the " + to_string(expected) + " gazetteer");
        e.entity_class = *cls;
        e.name = unescape_blank(fields[2]);
        e.surname = unescape_blank(fields[3]);
        e.nickname = unescape_blank(fields[4]);
        e.variants = split_on(unescape_blank(fields[5]), '|');
        if (expected != EntityClass::PER && (!e.surname.empty() || !e.nickname.empty()))
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": surname/nickname are PER-only fields");
        if (e.name.empty() && e.surname.empty() && e.nickname.empty() && e.variants.empty())
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": entry has no identity field");
        if (!seen_ids.insert(e.entity_id).second)
            throw LoadError(path + ":" + std::to_string(line_no) + ": duplicate entity id '" +
                            e.entity_id + "'");
        out.entries.push_back(std::move(e));
    }
}

} // namespace

Gazetteers load_gazetteers(const std::string& per_path, const std::string& loc_path,
                           const std::string& org_path) {
    Gazetteers g;
    std::set<std::string> seen;
    load_gazetteer_file(per_path, EntityClass::PER, g, seen);
    load_gazetteer_file(loc_path, EntityClass::LOC, g, seen);
    load_gazetteer_file(org_path, EntityClass::ORG, g, seen);
    return g;
}

namespace {

void save_gazetteer_file(const Gazetteers& g, EntityClass cls, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write gazetteer file: " + path);
    for (const auto& e : g.entries) {
        if (e.entity_class != cls) continue;
        std::string variants;
        for (const auto& v : e.variants) {
            if (!variants.empty()) variants += '|';
            variants += v;
        }
        out << e.entity_id << '\t' << to_string(e.entity_class) << '\t' << escape_blank(e.name)
            << '\t' << escape_blank(e.surname) << '\t' << escape_blank(e.nickname) << '\t'
            << escape_blank(variants) << '\n';
    }
}

} // namespace

void save_gazetteers(const Gazetteers& g, const std::string& per_path,
                     const std::string& loc_path, const std::string& org_path) {
    save_gazetteer_file(g, EntityClass::PER, per_path);
    save_gazetteer_file(g, EntityClass::LOC, loc_path);
    save_gazetteer_file(g, EntityClass::ORG, org_path);
}

// ---------------------------------------------------------------------------
// Semantic types

size_t SemanticTypeDictionary::total_words() const {
    size_t n = 0;
    for (const auto& [label, words] : entries) n += words.size();
    return n;
}

SemanticTypeDictionary load_semantic_types(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open semantic-type file: " + path);
    SemanticTypeDictionary d;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tab(line);
        if (fields.size() != 2)
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": expected 2 columns (type_label, word)");
        const std::string& label = fields[0];
        if (reserved_type_labels().count(label))
            throw LoadError(path + ":" + std::to_string(line_no) + ": reserved type label '" +
                            label + "'");
        if (fields[1].empty())
            throw LoadError(path + ":" + std::to_string(line_no) + ": empty word");
        d.entries[label].insert(fields[1]);
    }
    for (const auto& [label, words] : d.entries)
        if (words.empty())
            throw LoadError(path + ": type '" + label + "' has no words");
    return d;
}

void save_semantic_types(const SemanticTypeDictionary& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write semantic-type file: " + path);
    for (const auto& [label, words] : d.entries)
        for (const auto& w : words) out << label << '\t' << w << '\n';
}

// ---------------------------------------------------------------------------
// Pattern dictionary

std::string to_string(LuKind k) {
    switch (k) {
        case LuKind::Verbal: return "verbal";
        case LuKind::Nominal: return "nominal";
        case LuKind::MultiwordVerbal: return "multiword_verbal";
    }
    return "verbal";
}

std::optional<LuKind> lu_kind_from_string(const std::string& s) {
    if (s == "verbal") return LuKind::Verbal;
    if (s == "nominal") return LuKind::Nominal;
    if (s == "multiword_verbal") return LuKind::MultiwordVerbal;
    return std::nullopt;
}

std::string LexicalUnit::display() const {
    std::string out;
    for (const auto& l : lemma_sequence) {
        if (!out.empty()) out += ' ';
        out += l;
    }
    return out;
}

const EventClassPatterns* LexicalUnit::find_class(const std::string& event_class) const {
    for (const auto& c : classes)
        if (c.event_class == event_class) return &c;
    return nullptr;
}

std::vector<size_t> PatternDictionary::units_for_first_lemma(const std::string& lemma) const {
    auto it = by_first_lemma_.find(lowercase_ascii(lemma));
    return it == by_first_lemma_.end() ? std::vector<size_t>{} : it->second;
}

size_t PatternDictionary::count_kind(LuKind k) const {
    return static_cast<size_t>(std::count_if(units.begin(), units.end(),
                                             [k](const LexicalUnit& u) { return u.kind == k; }));
}

std::string PatternDictionary::unit_category(const LexicalUnit& lu) const {
    std::map<std::string, int> votes;
    for (const auto& c : lu.classes) {
        auto it = class_registry.find(c.event_class);
        if (it != class_registry.end()) ++votes[it->second];
    }
    std::string best;
    int best_votes = 0;
    for (const auto& [category, n] : votes) {
        if (n > best_votes) {
            best = category;
            best_votes = n;
        }
    }
    return best;
}

void PatternDictionary::rebuild_index() {
    by_first_lemma_.clear();
    for (size_t i = 0; i < units.size(); ++i)
        by_first_lemma_[lowercase_ascii(units[i].lemma_sequence.front())].push_back(i);
}

std::map<std::string, std::string> load_class_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open class registry: " + path);
    std::map<std::string, std::string> registry;
    static const std::set<std::string> categories = {"conflict", "movement", "membership"};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tab(line);
        if (fields.size() != 2)
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": expected 2 columns (event_class, category)");
        if (!categories.count(fields[1]))
            throw LoadError(path + ":" + std::to_string(line_no) + ": unknown category '" +
                            fields[1] + "'");
        if (registry.count(fields[0]))
            throw LoadError(path + ":" + std::to_string(line_no) + ": duplicate class '" +
                            fields[0] + "'");
        registry[fields[0]] = fields[1];
    }
    return registry;
}

void save_class_registry(const std::map<std::string, std::string>& registry,
                         const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write class registry: " + path);
    for (const auto& [cls, category] : registry) out << cls << '\t' << category << '\n';
}

namespace {

const std::set<std::string> kPatternDeprels = {"nsubj", "nsubjpass", "dobj", "nmod", "nummod"};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

bool valid_semantic_type(const std::string& label, const SemanticTypeDictionary& types) {
    return types.entries.count(label) || is_ne_label(label) || is_temporal_label(label);
}

// `<deprel> :: <TYPE>` or `<deprel> :: [<prep> [<TYPE>]]`
ArgumentPattern parse_pattern_line(const std::string& body, const std::string& where,
                                   const SemanticTypeDictionary& types) {
    auto sep = body.find("::");
    if (sep == std::string::npos)
        throw LoadError(where + ": pattern line without '::'");
    ArgumentPattern p;
    p.deprel = trim(body.substr(0, sep));
    if (!kPatternDeprels.count(p.deprel))
        throw LoadError(where + ": unknown dependency relation '" + p.deprel + "'");
    std::string rhs = trim(body.substr(sep + 2));
    if (!rhs.empty() && rhs.front() == '[') {
        // [prep [TYPE]]
        if (rhs.size() < 2 || rhs.back() != ']')
            throw LoadError(where + ": malformed bracketed pattern '" + rhs + "'");
        std::string inner = trim(rhs.substr(1, rhs.size() - 2));
        auto open = inner.find('[');
        if (open == std::string::npos || inner.back() != ']')
            throw LoadError(where + ": malformed bracketed pattern '" + rhs + "'");
        p.preposition = trim(inner.substr(0, open));
        p.semantic_type = trim(inner.substr(open + 1, inner.size() - open - 2));
        if (p.preposition->empty())
            throw LoadError(where + ": empty preposition");
        if (p.deprel != "nmod")
            throw LoadError(where + ": preposition on non-nmod relation '" + p.deprel + "'");
    } else {
        p.semantic_type = rhs;
    }
    if (!valid_semantic_type(p.semantic_type, types))
        throw LoadError(where + ": unknown semantic type label '" + p.semantic_type + "'");
    return p;
}

} // namespace

PatternDictionary load_pattern_dictionary(const std::string& path,
                                          const SemanticTypeDictionary& types,
                                          const std::map<std::string, std::string>& registry) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open pattern dictionary: " + path);

    PatternDictionary dict;
    dict.class_registry = registry;

    LexicalUnit* unit = nullptr;
    EventClassPatterns* cls = nullptr;
    std::set<std::pair<std::string, std::string>> seen_units; // (display, kind)

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string where = path + ":" + std::to_string(line_no);
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;

        if (body.rfind("LU ", 0) == 0) {
            auto parts = split_ws(body.substr(3));
            if (parts.size() != 2)
                throw LoadError(where + ": expected 'LU <lemmas> <kind>'");
            LexicalUnit lu;
            lu.lemma_sequence = split_on(parts[0], '+');
            if (lu.lemma_sequence.empty())
                throw LoadError(where + ": empty lemma sequence");
            for (auto& l : lu.lemma_sequence) l = lowercase_ascii(l);
            auto kind = lu_kind_from_string(parts[1]);
            if (!kind)
                throw LoadError(where + ": unknown LU kind '" + parts[1] + "'");
            lu.kind = *kind;
            if (lu.kind == LuKind::MultiwordVerbal && lu.lemma_sequence.size() < 2)
                throw LoadError(where + ": multiword_verbal unit needs at least 2 lemmas");
            if (lu.kind != LuKind::MultiwordVerbal && lu.lemma_sequence.size() != 1)
                throw LoadError(where + ": " + parts[1] + " unit must have exactly 1 lemma");
            if (!seen_units.insert({lu.display(), parts[1]}).second)
                throw LoadError(where + ": duplicate lexical unit '" + parts[0] + "' (" +
                                parts[1] + ")");
            dict.units.push_back(std::move(lu));
            unit = &dict.units.back();
            cls = nullptr;
        } else if (body.rfind("CLASS ", 0) == 0) {
            if (!unit) throw LoadError(where + ": CLASS before any LU");
            std::string label = trim(body.substr(6));
            if (label.empty()) throw LoadError(where + ": empty class label");
            if (!dict.class_registry.count(label))
                throw LoadError(where + ": event class '" + label +
                                "' missing from the class registry");
            if (unit->find_class(label))
                throw LoadError(where + ": duplicate class '" + label + "' under LU '" +
                                unit->display() + "'");
            unit->classes.push_back({label, {}});
            cls = &unit->classes.back();
        } else {
            if (!cls) throw LoadError(where + ": pattern line before any CLASS");
            auto arrow = body.rfind("->");
            if (arrow == std::string::npos)
                throw LoadError(where + ": pattern line without '-> <Role>'");
            ArgumentPattern p = parse_pattern_line(trim(body.substr(0, arrow)), where, types);
            p.role = trim(body.substr(arrow + 2));
            if (p.role.empty()) throw LoadError(where + ": empty role");
            if (unit->kind == LuKind::Nominal && p.deprel != "nmod" && p.deprel != "nummod")
                throw LoadError(where + ": nominal unit with '" + p.deprel +
                                "' pattern (only nmod/nummod allowed)");
            for (const auto& existing : cls->patterns)
                if (existing.deprel == p.deprel && existing.preposition == p.preposition &&
                    existing.semantic_type == p.semantic_type)
                    throw LoadError(where + ": duplicate pattern in class '" + cls->event_class +
                                    "'");
            cls->patterns.push_back(std::move(p));
        }
    }

    for (const auto& u : dict.units) {
        if (u.classes.empty())
            throw LoadError(path + ": LU '" + u.display() + "' has no classes");
        for (const auto& c : u.classes)
            if (c.patterns.empty())
                throw LoadError(path + ": class '" + c.event_class + "' of LU '" + u.display() +
                                "' has no patterns");
    }

    // Registry and dictionary must reference the same class set.
    std::set<std::string> referenced;
    for (const auto& u : dict.units)
        for (const auto& c : u.classes) referenced.insert(c.event_class);
    for (const auto& [cls_label, category] : dict.class_registry)
        if (!referenced.count(cls_label))
            throw LoadError(path + ": registry class '" + cls_label +
                            "' is referenced by no lexical unit");

    dict.rebuild_index();
    return dict;
}

void save_pattern_dictionary(const PatternDictionary& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write pattern dictionary: " + path);
    for (const auto& u : d.units) {
        std::string lemmas;
        for (const auto& l : u.lemma_sequence) {
            if (!lemmas.empty()) lemmas += '+';
            lemmas += l;
        }
        out << "LU " << lemmas << ' ' << to_string(u.kind) << '\n';
        for (const auto& c : u.classes) {
            out << "  CLASS " << c.event_class << '\n';
            for (const auto& p : c.patterns) {
                out << "    " << p.deprel << " :: ";
                if (p.preposition)
                    out << '[' << *p.preposition << " [" << p.semantic_type << "]]";
                else
                    out << p.semantic_type;
                out << " -> " << p.role << '\n';
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Embeddings

const std::vector<float>* EmbeddingStore::get(const std::string& word) const {
    auto it = vectors_.find(lowercase_ascii(word));
    return it == vectors_.end() ? nullptr : &it->second;
}

void EmbeddingStore::insert(const std::string& word, std::vector<float> v) {
    if (dimension_ == 0) dimension_ = static_cast<int>(v.size());
    vectors_.emplace(lowercase_ascii(word), std::move(v));
}

EmbeddingStore load_embeddings(const std::string& path,
                               const std::optional<std::set<std::string>>& vocabulary_filter) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open embeddings file: " + path);

    std::optional<std::set<std::string>> filter;
    if (vocabulary_filter) {
        filter.emplace();
        for (const auto& w : *vocabulary_filter) filter->insert(lowercase_ascii(w));
    }

    EmbeddingStore store;
    std::string line;
    bool first_line = true;
    int dim = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        std::vector<float> v;
        float x;
        while (ss >> x) v.push_back(x);
        if (first_line) {
            first_line = false;
            // optional `<count> <dim>` header
            bool numeric_word = !word.empty() && word.find_first_not_of("0123456789") ==
                                                     std::string::npos;
            if (numeric_word && v.size() == 1) continue;
        }
        if (v.empty()) throw LoadError(path + ": no vector components for word '" + word + "'");
        if (dim == 0)
            dim = static_cast<int>(v.size());
        else if (static_cast<int>(v.size()) != dim)
            throw LoadError(path + ": ragged dimensions at word '" + word + "' (" +
                            std::to_string(v.size()) + " vs " + std::to_string(dim) + ")");
        std::string key = lowercase_ascii(word);
        if (filter && !filter->count(key)) continue;
        if (!store.get(key)) store.insert(key, std::move(v));
    }
    return store;
}

void save_embeddings(const EmbeddingStore& store, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write embeddings file: " + path);
    out.precision(std::numeric_limits<float>::max_digits10); // exact float round-trip
    std::vector<std::string> words;
    words.reserve(store.size());
    for (const auto& [w, v] : store.vectors()) words.push_back(w);
    std::sort(words.begin(), words.end());
    out << words.size() << ' ' << store.dimension() << '\n';
    for (const auto& w : words) {
        out << w;
        for (float x : *store.get(w)) out << ' ' << x;
        out << '\n';
    }
}

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b) {
    if (a.size() != b.size() || a.empty()) return 0.0;
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace evento
