#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace evento {

/// One syntactic token of a dependency-parsed sentence.
/// `head` is the 1-based index of the governor, 0 for the root.
/// `misc` carries upstream annotations, notably NE=PER|LOC|ORG and
/// TIMEX=DATE|TIME|DURATION|SET.
struct Token {
    int index = 0; // 1-based position in the sentence
    std::string surface;
    std::string lemma;
    std::string upos;
    int head = 0;
    std::string deprel;
    std::map<std::string, std::string> misc;

    bool has_misc(const std::string& key) const { return misc.count(key) > 0; }
    std::string misc_value(const std::string& key) const {
        auto it = misc.find(key);
        return it == misc.end() ? std::string() : it->second;
    }
};

struct Sentence {
    std::string id;
    std::vector<Token> tokens; // indices contiguous from 1
    std::string text;          // reconstructed surface string

    const Token* find(int index) const {
        if (index < 1 || index > static_cast<int>(tokens.size())) return nullptr;
        return &tokens[static_cast<size_t>(index) - 1];
    }
    int size() const { return static_cast<int>(tokens.size()); }
};

struct Document {
    std::string id;
    std::vector<Sentence> sentences;
    std::string subcorpus; // memoirs | bio | wiki | test | other

    const Sentence* find_sentence(const std::string& sentence_id) const {
        for (const auto& s : sentences)
            if (s.id == sentence_id) return &s;
        return nullptr;
    }
};

/// Contiguous token range inside one sentence (both ends inclusive, 1-based).
struct Span {
    std::string sentence_id;
    int first_token = 0;
    int last_token = 0;

    bool contains(int token_index) const {
        return token_index >= first_token && token_index <= last_token;
    }
    bool operator==(const Span& other) const = default;
};

/// All tokens governed by `governor` through a relation in `relations`,
/// in surface order. Empty when nothing matches.
std::vector<const Token*> dependents_of(const Sentence& sentence, int governor,
                                        const std::set<std::string>& relations);

/// Lowercased lemma of the leftmost `case` dependent of `head` (the
/// preposition governed by a nominal head), reduced to its base form for
/// articulated Italian prepositions. Empty optional when the head carries
/// no case marker.
std::optional<std::string> case_marker(const Sentence& sentence, int head);

/// Maps articulated Italian prepositions (dal, nella, sull'...) onto their
/// base lemma (da, in, su). Anything outside the nine articulated families
/// is returned unchanged.
std::string normalize_preposition(const std::string& lemma);

std::string lowercase_ascii(const std::string& s);

} // namespace evento
