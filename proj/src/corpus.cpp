#include "evento/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace evento {

std::string lowercase_ascii(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::vector<const Token*> dependents_of(const Sentence& sentence, int governor,
                                        const std::set<std::string>& relations) {
    std::vector<const Token*> out;
    for (const auto& t : sentence.tokens) {
        if (t.head == governor && relations.count(t.deprel)) out.push_back(&t);
    }
    return out;
}

namespace {

// The nine articulated-preposition families; any other lemma passes through.
const std::unordered_map<std::string, std::string>& articulated_table() {
    static const std::unordered_map<std::string, std::string> table = [] {
        std::unordered_map<std::string, std::string> m;
        auto add = [&m](const std::string& base, std::initializer_list<const char*> forms) {
            m[base] = base;
            for (const char* f : forms) m[f] = base;
        };
        add("di", {"del", "dello", "della", "dell'", "dei", "degli", "delle"});
        add("a", {"al", "allo", "alla", "all'", "ai", "agli", "alle"});
        add("da", {"dal", "dallo", "dalla", "dall'", "dai", "dagli", "dalle"});
        add("in", {"nel", "nello", "nella", "nell'", "nei", "negli", "nelle"});
        add("con", {"col", "collo", "colla", "coi", "cogli", "colle"});
        add("su", {"sul", "sullo", "sulla", "sull'", "sui", "sugli", "sulle"});
        add("per", {"pel", "pei"});
        add("tra", {});
        add("fra", {});
        return m;
    }();
    return table;
}

} // namespace

std::string normalize_preposition(const std::string& lemma) {
    std::string lower = lowercase_ascii(lemma);
    auto it = articulated_table().find(lower);
    return it == articulated_table().end() ? lower : it->second;
}

std::optional<std::string> case_marker(const Sentence& sentence, int head) {
    for (const auto& t : sentence.tokens) {
        if (t.head == head && t.deprel == "case") {
            const std::string& raw = t.lemma.empty() || t.lemma == "_" ? t.surface : t.lemma;
            return normalize_preposition(raw);
        }
    }
    return std::nullopt;
}

} // namespace evento
