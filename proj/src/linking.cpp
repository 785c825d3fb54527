#include "evento/linking.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "evento/error.hpp"

namespace evento {

std::string to_string(MentionStatus s) {
    switch (s) {
        case MentionStatus::Linked: return "linked";
        case MentionStatus::Ambiguous: return "ambiguous";
        case MentionStatus::UnlinkedNe: return "unlinked_ne";
    }
    return "ambiguous";
}

// ---------------------------------------------------------------------------
// Person surface patterns

std::vector<std::string> load_person_pattern_templates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open person pattern file: " + path);
    std::vector<std::string> templates;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        size_t e = line.find_last_not_of(" \t");
        templates.push_back(line.substr(b, e - b + 1));
    }
    return templates;
}

std::set<std::string> generate_person_patterns(const GazetteerEntry& entry,
                                               const std::vector<std::string>& templates) {
    if (entry.entity_class != EntityClass::PER)
        throw QueryError("person patterns requested for a non-PER entry: " + entry.entity_id);
    std::set<std::string> out;
    for (const auto& tmpl : templates) {
        std::istringstream ss(tmpl);
        std::string tok, form;
        bool ok = true;
        while (ss >> tok) {
            std::string piece;
            if (tok == "N")
                piece = entry.name;
            else if (tok == "S")
                piece = entry.surname;
            else if (tok == "K")
                piece = entry.nickname;
            else
                piece = tok; // literal template token
            if (piece.empty()) {
                ok = false; // template references a missing field
                break;
            }
            if (!form.empty()) form += ' ';
            form += piece;
        }
        if (ok && !form.empty()) out.insert(form);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mention matching

namespace {

std::vector<std::string> whitespace_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::string fold_initial(const std::string& s) {
    if (s.empty()) return s;
    std::string out = s;
    out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
    return out;
}

struct FormTable {
    // token sequence -> candidate entity ids
    std::map<std::vector<std::string>, std::set<std::string>> forms;
    // first token -> form sequences starting with it
    std::unordered_map<std::string, std::vector<const std::vector<std::string>*>> by_first;
    // folded first token -> forms (consulted at sentence start only)
    std::unordered_map<std::string, std::vector<const std::vector<std::string>*>> by_first_folded;

    void index() {
        for (const auto& [tokens, ids] : forms) {
            by_first[tokens.front()].push_back(&tokens);
            by_first_folded[fold_initial(tokens.front())].push_back(&tokens);
        }
    }
};

FormTable build_form_table(const Gazetteers& gazetteers,
                           const std::vector<std::string>& person_templates) {
    FormTable table;
    for (const auto& entry : gazetteers.entries) {
        std::set<std::string> surface_forms(entry.variants.begin(), entry.variants.end());
        if (entry.entity_class == EntityClass::PER) {
            auto generated = generate_person_patterns(entry, person_templates);
            surface_forms.insert(generated.begin(), generated.end());
        } else if (!entry.name.empty()) {
            surface_forms.insert(entry.name);
        }
        for (const auto& form : surface_forms) {
            auto tokens = whitespace_tokens(form);
            if (!tokens.empty()) table.forms[tokens].insert(entry.entity_id);
        }
    }
    table.index();
    return table;
}

// Does `form` match the sentence tokens starting at `start` (1-based)?
// Sentence-initial capitalization is folded on the first token only.
bool form_matches_at(const Sentence& s, int start, const std::vector<std::string>& form) {
    if (start + static_cast<int>(form.size()) - 1 > s.size()) return false;
    for (size_t j = 0; j < form.size(); ++j) {
        const std::string& surface = s.tokens[static_cast<size_t>(start) - 1 + j].surface;
        if (surface == form[j]) continue;
        if (j == 0 && start == 1 && fold_initial(surface) == fold_initial(form[j])) continue;
        return false;
    }
    return true;
}

std::string join_surfaces(const Sentence& s, int first, int last) {
    std::string out;
    for (int i = first; i <= last; ++i) {
        if (!out.empty()) out += ' ';
        out += s.tokens[static_cast<size_t>(i) - 1].surface;
    }
    return out;
}

} // namespace

bool EntityMention::cross_class_ambiguous(const Gazetteers& g) const {
    if (status != MentionStatus::Ambiguous) return false;
    std::set<EntityClass> classes;
    for (const auto& id : candidates) {
        const auto* e = g.find(id);
        if (e) classes.insert(e->entity_class);
    }
    return classes.size() > 1;
}

std::vector<EntityMention> find_mentions(const Document& doc, const Gazetteers& gazetteers,
                                         const std::vector<std::string>& person_templates) {
    FormTable table = build_form_table(gazetteers, person_templates);
    std::vector<EntityMention> mentions;

    for (const auto& sentence : doc.sentences) {
        std::vector<bool> covered(static_cast<size_t>(sentence.size()) + 1, false);

        int i = 1;
        while (i <= sentence.size()) {
            const std::string& surface = sentence.tokens[static_cast<size_t>(i) - 1].surface;

            // Candidate forms by first token; the folded index applies at
            // sentence start only.
            std::vector<const std::vector<std::string>*> heads;
            if (auto it = table.by_first.find(surface); it != table.by_first.end())
                heads.insert(heads.end(), it->second.begin(), it->second.end());
            if (i == 1) {
                auto it = table.by_first_folded.find(fold_initial(surface));
                if (it != table.by_first_folded.end())
                    for (const auto* f : it->second)
                        if (std::find(heads.begin(), heads.end(), f) == heads.end())
                            heads.push_back(f);
            }

            size_t best_len = 0;
            std::set<std::string> candidates;
            for (const auto* form : heads) {
                if (form->size() < best_len) continue;
                if (!form_matches_at(sentence, i, *form)) continue;
                const auto& ids = table.forms.at(*form);
                if (form->size() > best_len) {
                    best_len = form->size();
                    candidates = ids;
                } else {
                    candidates.insert(ids.begin(), ids.end());
                }
            }

            if (best_len == 0) {
                ++i;
                continue;
            }

            EntityMention m;
            m.doc_id = doc.id;
            m.span = {sentence.id, i, i + static_cast<int>(best_len) - 1};
            m.surface = join_surfaces(sentence, m.span.first_token, m.span.last_token);
            m.candidates.assign(candidates.begin(), candidates.end());
            if (m.candidates.size() == 1) {
                m.status = MentionStatus::Linked;
                m.entity_id = m.candidates.front();
                m.entity_class = gazetteers.find(m.entity_id)->entity_class;
                m.candidates.clear();
            } else {
                m.status = MentionStatus::Ambiguous;
                std::set<EntityClass> classes;
                for (const auto& id : m.candidates) classes.insert(gazetteers.find(id)->entity_class);
                if (classes.size() == 1) m.entity_class = *classes.begin();
            }
            for (int t = m.span.first_token; t <= m.span.last_token; ++t)
                covered[static_cast<size_t>(t)] = true;
            mentions.push_back(std::move(m));
            i += static_cast<int>(best_len);
        }

        // Upstream NE/TIMEX runs not covered by a gazetteer match.
        auto run_label = [&](int t) -> std::string {
            const Token& tok = sentence.tokens[static_cast<size_t>(t) - 1];
            std::string ne = tok.misc_value("NE");
            if (!ne.empty()) return ne;
            return tok.misc_value("TIMEX");
        };
        int t = 1;
        while (t <= sentence.size()) {
            std::string label = run_label(t);
            if (label.empty() || covered[static_cast<size_t>(t)]) {
                ++t;
                continue;
            }
            int end = t;
            while (end + 1 <= sentence.size() && !covered[static_cast<size_t>(end) + 1] &&
                   run_label(end + 1) == label)
                ++end;
            EntityMention m;
            m.doc_id = doc.id;
            m.span = {sentence.id, t, end};
            m.surface = join_surfaces(sentence, t, end);
            m.status = MentionStatus::UnlinkedNe;
            m.ne_label = label;
            m.entity_class = entity_class_from_string(label);
            mentions.push_back(std::move(m));
            t = end + 1;
        }
    }

    // Deterministic order: sentence appearance, then span.
    std::stable_sort(mentions.begin(), mentions.end(),
                     [&doc](const EntityMention& a, const EntityMention& b) {
                         if (a.span.sentence_id != b.span.sentence_id) {
                             const Sentence* sa = doc.find_sentence(a.span.sentence_id);
                             const Sentence* sb = doc.find_sentence(b.span.sentence_id);
                             return sa - sb < 0;
                         }
                         return a.span.first_token < b.span.first_token;
                     });
    return mentions;
}

// ---------------------------------------------------------------------------
// Association statistics

int AssociationStats::frequency(const std::string& entity_id) const {
    auto it = freq.find(entity_id);
    return it == freq.end() ? 0 : it->second;
}

int AssociationStats::cooccurrence(const std::string& a, const std::string& b) const {
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = cooccur.find(key);
    return it == cooccur.end() ? 0 : it->second;
}

AssociationStats compute_association_stats(const std::vector<Document>& docs,
                                           const std::vector<EntityMention>& mentions) {
    AssociationStats stats;
    for (const auto& d : docs) stats.total_sentences += static_cast<long>(d.sentences.size());

    // (doc, sentence) -> entity set
    std::map<std::pair<std::string, std::string>, std::set<std::string>> per_sentence;
    for (const auto& m : mentions) {
        if (m.status != MentionStatus::Linked) continue;
        ++stats.freq[m.entity_id];
        per_sentence[{m.doc_id, m.span.sentence_id}].insert(m.entity_id);
    }
    for (const auto& [key, entities] : per_sentence) {
        for (auto a = entities.begin(); a != entities.end(); ++a) {
            ++stats.sentence_freq[*a];
            for (auto b = std::next(a); b != entities.end(); ++b)
                ++stats.cooccur[{*a, *b}]; // *a < *b by set order
        }
    }
    return stats;
}

double association_score(const AssociationStats& stats, const std::string& a,
                         const std::string& b) {
    if (a == b) throw QueryError("association score of an entity with itself: " + a);
    if (!stats.freq.count(a)) throw QueryError("unknown entity: " + a);
    if (!stats.freq.count(b)) throw QueryError("unknown entity: " + b);
    double co = stats.cooccurrence(a, b);
    if (co == 0.0) return 0.0;
    double fa = stats.frequency(a);
    double fb = stats.frequency(b);
    return co / ((fa + fb) / 2.0);
}

double pmi_score(const AssociationStats& stats, const std::string& a, const std::string& b) {
    if (a == b) throw QueryError("association score of an entity with itself: " + a);
    if (!stats.freq.count(a)) throw QueryError("unknown entity: " + a);
    if (!stats.freq.count(b)) throw QueryError("unknown entity: " + b);
    double co = stats.cooccurrence(a, b);
    if (co == 0.0 || stats.total_sentences == 0) return 0.0;
    auto sent = [&stats](const std::string& e) {
        auto it = stats.sentence_freq.find(e);
        return it == stats.sentence_freq.end() ? 0.0 : static_cast<double>(it->second);
    };
    double n = static_cast<double>(stats.total_sentences);
    return std::log((co / n) / ((sent(a) / n) * (sent(b) / n)));
}

// ---------------------------------------------------------------------------
// Cross-class k-NN

CrossClassModel::CrossClassModel(std::vector<CrossClassSample> samples, KnnConfig config)
    : samples_(std::move(samples)), config_(config) {
    if (config_.k < 1) throw LoadError("k must be >= 1");
    if (static_cast<int>(samples_.size()) < config_.k)
        throw LoadError("cross-class training needs at least k=" + std::to_string(config_.k) +
                        " samples, got " + std::to_string(samples_.size()));
}

double CrossClassModel::distance(const CrossClassSample& a, const CrossClassSample& b,
                                 const KnnConfig& config) {
    int mismatches = 0;
    mismatches += a.word_before != b.word_before;
    mismatches += a.pos_before[0] != b.pos_before[0];
    mismatches += a.pos_before[1] != b.pos_before[1];
    mismatches += a.pos_after[0] != b.pos_after[0];
    mismatches += a.pos_after[1] != b.pos_after[1];
    mismatches += a.verb_deprel != b.verb_deprel;
    mismatches += a.verb_category != b.verb_category;
    double hamming = mismatches / 7.0;

    double cos_dist;
    bool a_empty = a.context_embedding.empty();
    bool b_empty = b.context_embedding.empty();
    if (a_empty && b_empty)
        cos_dist = 0.0;
    else if (a_empty || b_empty)
        cos_dist = 1.0;
    else
        cos_dist = (1.0 - cosine_similarity(a.context_embedding, b.context_embedding)) / 2.0;

    return config.categorical_weight * hamming + config.embedding_weight * cos_dist;
}

EntityClass CrossClassModel::vote(const CrossClassSample& query,
                                  const std::set<EntityClass>* allowed) const {
    std::vector<std::pair<double, size_t>> by_distance;
    by_distance.reserve(samples_.size());
    for (size_t i = 0; i < samples_.size(); ++i)
        by_distance.emplace_back(distance(query, samples_[i], config_), i);
    std::sort(by_distance.begin(), by_distance.end());

    const size_t k = static_cast<size_t>(config_.k);
    std::map<EntityClass, int> votes;
    std::map<EntityClass, double> summed;
    for (size_t i = 0; i < k && i < by_distance.size(); ++i) {
        EntityClass label = samples_[by_distance[i].second].label;
        if (allowed && !allowed->count(label)) continue;
        ++votes[label];
        summed[label] += by_distance[i].first;
    }
    if (votes.empty()) {
        if (allowed) {
            // None of the k nearest carries an allowed label; the nearest
            // allowed sample decides.
            for (const auto& [dist, idx] : by_distance)
                if (allowed->count(samples_[idx].label)) return samples_[idx].label;
            return *allowed->begin();
        }
        return EntityClass::PER;
    }
    // Majority; ties by smallest summed distance, then PER < LOC < ORG
    // (the map iteration order).
    EntityClass best = votes.begin()->first;
    for (const auto& [label, n] : votes) {
        if (n > votes[best] || (n == votes[best] && summed[label] < summed[best])) best = label;
    }
    return best;
}

EntityClass CrossClassModel::predict(const CrossClassSample& query) const {
    return vote(query, nullptr);
}

EntityClass CrossClassModel::predict_among(const CrossClassSample& query,
                                           const std::set<EntityClass>& allowed) const {
    if (allowed.empty()) throw QueryError("empty label restriction");
    return vote(query, &allowed);
}

// ---------------------------------------------------------------------------
// Feature extraction

namespace {

int span_head_token(const Sentence& sentence, const Span& span) {
    for (int i = span.first_token; i <= span.last_token; ++i) {
        const Token* t = sentence.find(i);
        if (t && (t->head == 0 || !span.contains(t->head))) return i;
    }
    return span.first_token;
}

bool sentence_has_modeled_lu(const Sentence& sentence, const PatternDictionary& dictionary) {
    for (const auto& t : sentence.tokens)
        if (!dictionary.units_for_first_lemma(t.lemma).empty()) return true;
    return false;
}

} // namespace

CrossClassSample make_cross_class_sample(const Sentence& sentence, const Span& span,
                                         const PatternDictionary& dictionary,
                                         const EmbeddingStore& embeddings) {
    CrossClassSample s;
    auto surface_at = [&sentence](int i) -> std::string {
        const Token* t = sentence.find(i);
        return t ? t->surface : std::string();
    };
    auto pos_at = [&sentence](int i) -> std::string {
        const Token* t = sentence.find(i);
        return t ? t->upos : std::string();
    };

    s.word_before = lowercase_ascii(surface_at(span.first_token - 1));
    s.pos_before = {pos_at(span.first_token - 2), pos_at(span.first_token - 1)};
    s.pos_after = {pos_at(span.last_token + 1), pos_at(span.last_token + 2)};

    std::vector<double> sum;
    int found = 0;
    for (int i = span.first_token - 2; i <= span.first_token - 1; ++i) {
        std::string w = surface_at(i);
        if (w.empty()) continue;
        const auto* v = embeddings.get(w);
        if (!v) continue;
        if (sum.empty()) sum.assign(v->size(), 0.0);
        for (size_t d = 0; d < v->size(); ++d) sum[d] += (*v)[d];
        ++found;
    }
    if (found > 0) {
        s.context_embedding.resize(sum.size());
        for (size_t d = 0; d < sum.size(); ++d)
            s.context_embedding[d] = static_cast<float>(sum[d] / found);
    }

    int head = span_head_token(sentence, span);
    const Token* head_token = sentence.find(head);
    if (head_token && head_token->head != 0) {
        const Token* governor = sentence.find(head_token->head);
        if (governor && governor->upos == "VERB") {
            s.verb_deprel = head_token->deprel;
            for (size_t idx : dictionary.units_for_first_lemma(governor->lemma)) {
                const LexicalUnit& lu = dictionary.units[idx];
                if (lu.kind == LuKind::Verbal) {
                    s.verb_category = dictionary.unit_category(lu);
                    break;
                }
            }
        }
    }
    return s;
}

std::vector<CrossClassSample> extract_training_samples(const std::vector<Document>& docs,
                                                       const std::vector<EntityMention>& mentions,
                                                       const PatternDictionary& dictionary,
                                                       const EmbeddingStore& embeddings) {
    std::map<std::pair<std::string, std::string>, const Sentence*> sentences;
    for (const auto& d : docs)
        for (const auto& s : d.sentences) sentences[{d.id, s.id}] = &s;

    std::vector<CrossClassSample> samples;
    for (const auto& m : mentions) {
        if (m.status != MentionStatus::Linked || !m.entity_class) continue;
        auto it = sentences.find({m.doc_id, m.span.sentence_id});
        if (it == sentences.end()) continue;
        if (!sentence_has_modeled_lu(*it->second, dictionary)) continue;
        CrossClassSample s = make_cross_class_sample(*it->second, m.span, dictionary, embeddings);
        s.label = *m.entity_class;
        samples.push_back(std::move(s));
    }
    return samples;
}

// ---------------------------------------------------------------------------
// Iterative disambiguation

namespace {

double safe_score(const AssociationStats& stats, AssociationScorer scorer, const std::string& a,
                  const std::string& b) {
    if (a == b) return 0.0;
    if (!stats.freq.count(a) || !stats.freq.count(b)) return 0.0;
    return scorer == AssociationScorer::Pmi ? pmi_score(stats, a, b)
                                            : association_score(stats, a, b);
}

} // namespace

DisambiguationResult disambiguate(const std::vector<Document>& docs,
                                  std::vector<EntityMention> mentions,
                                  const AssociationStats& stats,
                                  const Gazetteers& gazetteers,
                                  const CrossClassModel* model,
                                  const PatternDictionary& dictionary,
                                  const EmbeddingStore& embeddings,
                                  const DisambiguationConfig& config) {
    DisambiguationResult result;

    std::map<std::pair<std::string, std::string>, const Sentence*> sentences;
    for (const auto& d : docs)
        for (const auto& s : d.sentences) sentences[{d.id, s.id}] = &s;

    auto link_to = [&](EntityMention& m, const std::string& entity_id) {
        m.status = MentionStatus::Linked;
        m.entity_id = entity_id;
        m.candidates.clear();
        const auto* e = gazetteers.find(entity_id);
        m.entity_class = e ? std::optional<EntityClass>(e->entity_class) : std::nullopt;
    };

    // Stage 1: cross-class mentions are class-labeled and filtered.
    if (model) {
        for (auto& m : mentions) {
            if (!m.cross_class_ambiguous(gazetteers)) continue;
            auto it = sentences.find({m.doc_id, m.span.sentence_id});
            if (it == sentences.end()) continue;
            std::set<EntityClass> allowed;
            for (const auto& id : m.candidates)
                if (const auto* e = gazetteers.find(id)) allowed.insert(e->entity_class);
            CrossClassSample query =
                make_cross_class_sample(*it->second, m.span, dictionary, embeddings);
            EntityClass label = model->predict_among(query, allowed);
            std::vector<std::string> filtered;
            for (const auto& id : m.candidates) {
                const auto* e = gazetteers.find(id);
                if (e && e->entity_class == label) filtered.push_back(id);
            }
            m.candidates = std::move(filtered);
            m.entity_class = label;
            ++result.cross_class_resolved;
            if (m.candidates.size() == 1) link_to(m, m.candidates.front());
        }
    }

    // Stage 2: iterative ranking against per-iteration snapshots of the
    // linked set. The linked set grows monotonically; ties and all-zero
    // scores leave a mention ambiguous.
    for (int iter = 0; iter < config.max_iterations; ++iter) {
        std::map<std::pair<std::string, std::string>, std::set<std::string>> context;
        for (const auto& m : mentions)
            if (m.status == MentionStatus::Linked)
                context[{m.doc_id, m.span.sentence_id}].insert(m.entity_id);

        std::vector<std::pair<size_t, std::string>> links; // mention index -> entity
        for (size_t i = 0; i < mentions.size(); ++i) {
            EntityMention& m = mentions[i];
            if (m.status != MentionStatus::Ambiguous || m.candidates.empty()) continue;
            auto ctx_it = context.find({m.doc_id, m.span.sentence_id});
            if (ctx_it == context.end()) continue; // no linked context in this sentence
            const auto& ctx = ctx_it->second;

            std::string best_candidate;
            double best = 0.0;
            bool tie = false;
            for (const auto& candidate : m.candidates) {
                double score = 0.0;
                for (const auto& e : ctx)
                    score += safe_score(stats, config.scorer, candidate, e);
                if (score > best) {
                    best = score;
                    best_candidate = candidate;
                    tie = false;
                } else if (score == best && best > 0.0) {
                    tie = true;
                }
            }
            if (best > 0.0 && !tie) links.emplace_back(i, best_candidate);
        }

        if (links.empty()) break;
        result.iterations = iter + 1;
        for (const auto& [idx, entity_id] : links) {
            link_to(mentions[idx], entity_id);
            ++result.newly_linked;
        }
    }

    result.mentions = std::move(mentions);
    return result;
}

} // namespace evento
