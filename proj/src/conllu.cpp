#include "evento/conllu.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "evento/error.hpp"

namespace evento {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::map<std::string, std::string> parse_misc(const std::string& misc) {
    std::map<std::string, std::string> out;
    if (misc == "_" || misc.empty()) return out;
    for (const auto& item : split(misc, '|')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            out[item] = "";
        else
            out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::string canonical_deprel(std::string deprel) {
    // The pattern inventory predates the UD v2 renames.
    if (deprel == "obj") return "dobj";
    if (deprel == "nsubj:pass") return "nsubjpass";
    return deprel;
}

// Single root, no self-heads, heads in range, no cycles, ids contiguous.
std::optional<std::string> tree_defect(const Sentence& s) {
    int n = s.size();
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const Token& t = s.tokens[static_cast<size_t>(i)];
        if (t.index != i + 1) return "token ids are not contiguous from 1";
        if (t.head == t.index)
            return "token " + std::to_string(t.index) + " is its own head";
        if (t.head < 0 || t.head > n)
            return "token " + std::to_string(t.index) + " has dangling head " +
                   std::to_string(t.head);
        if (t.head == 0) ++roots;
    }
    if (roots == 0) return "no root token";
    if (roots > 1) return "multiple root tokens";
    // Cycle check: every token must reach the root.
    for (int i = 1; i <= n; ++i) {
        int cur = i, steps = 0;
        while (cur != 0) {
            cur = s.tokens[static_cast<size_t>(cur) - 1].head;
            if (++steps > n)
                return "cycle involving token " + std::to_string(i);
        }
    }
    return std::nullopt;
}

std::string reconstruct_text(const Sentence& s) {
    std::string out;
    for (size_t i = 0; i < s.tokens.size(); ++i) {
        out += s.tokens[i].surface;
        bool last = i + 1 == s.tokens.size();
        bool glue = s.tokens[i].misc_value("SpaceAfter") == "No";
        if (!last && !glue) out += ' ';
    }
    return out;
}

} // namespace

ParseResult parse_conllu(std::istream& in, const std::string& subcorpus) {
    ParseResult result;
    Document* doc = nullptr;

    std::string pending_sent_id;
    std::string pending_text;
    Sentence current;
    int sentence_first_line = 0;
    bool in_sentence = false;

    int line_no = 0;
    std::string line;

    auto flush_sentence = [&]() {
        if (!in_sentence) return;
        if (!doc)
            throw ParseError("line " + std::to_string(sentence_first_line) +
                             ": token rows before any '# newdoc id' comment");
        if (current.id.empty())
            throw ParseError("line " + std::to_string(sentence_first_line) +
                             ": sentence without a '# sent_id' comment");
        if (auto defect = tree_defect(current)) {
            result.rejected.push_back(
                {doc->id, current.id, sentence_first_line, *defect});
        } else {
            current.text = pending_text.empty() ? reconstruct_text(current) : pending_text;
            doc->sentences.push_back(std::move(current));
        }
        current = Sentence{};
        pending_text.clear();
        in_sentence = false;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (line.empty()) {
            flush_sentence();
            continue;
        }
        if (line[0] == '#') {
            std::string comment = line.substr(1);
            auto eq = comment.find('=');
            std::string key = comment.substr(0, eq == std::string::npos ? comment.size() : eq);
            auto trim = [](std::string s) {
                size_t b = s.find_first_not_of(" \t");
                size_t e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            key = trim(key);
            std::string value = eq == std::string::npos ? "" : trim(comment.substr(eq + 1));
            if (key == "newdoc id") {
                flush_sentence();
                result.documents.push_back(Document{value, {}, subcorpus});
                doc = &result.documents.back();
            } else if (key == "sent_id") {
                flush_sentence();
                current.id = value;
            } else if (key == "text") {
                pending_text = value;
            }
            continue;
        }

        auto fields = split(line, '\t');
        if (fields.size() != 10)
            throw ParseError("line " + std::to_string(line_no) + ": expected 10 columns, got " +
                             std::to_string(fields.size()));

        const std::string& id = fields[0];
        if (id.find('-') != std::string::npos) continue; // multiword token range
        if (id.find('.') != std::string::npos) continue; // empty node
        if (!is_integer(id))
            throw ParseError("line " + std::to_string(line_no) + ": non-numeric token id '" +
                             id + "'");
        if (!is_integer(fields[6]))
            throw ParseError("line " + std::to_string(line_no) + ": non-numeric head '" +
                             fields[6] + "'");

        if (!in_sentence) {
            in_sentence = true;
            sentence_first_line = line_no;
        }
        Token t;
        t.index = std::stoi(id);
        t.surface = fields[1];
        t.lemma = fields[2] == "_" ? "" : fields[2];
        t.upos = fields[3];
        t.head = std::stoi(fields[6]);
        t.deprel = canonical_deprel(fields[7]);
        t.misc = parse_misc(fields[9]);
        current.tokens.push_back(std::move(t));
    }
    flush_sentence();
    return result;
}

ParseResult parse_conllu_file(const std::string& path, const std::string& subcorpus) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    return parse_conllu(in, subcorpus);
}

void write_conllu(const Document& doc, std::ostream& out) {
    out << "# newdoc id = " << doc.id << "\n";
    for (const auto& s : doc.sentences) {
        out << "# sent_id = " << s.id << "\n";
        out << "# text = " << s.text << "\n";
        for (const auto& t : s.tokens) {
            std::string misc;
            for (const auto& [k, v] : t.misc) {
                if (!misc.empty()) misc += '|';
                misc += v.empty() ? k : k + "=" + v;
            }
            out << t.index << '\t' << t.surface << '\t' << (t.lemma.empty() ? "_" : t.lemma)
                << '\t' << t.upos << '\t' << "_" << '\t' << "_" << '\t' << t.head << '\t'
                << t.deprel << '\t' << "_" << '\t' << (misc.empty() ? "_" : misc) << "\n";
        }
        out << "\n";
    }
}

std::string to_conllu(const Document& doc) {
    std::ostringstream ss;
    write_conllu(doc, ss);
    return ss.str();
}

} // namespace evento
