#include "evento/typing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "evento/error.hpp"

namespace evento {

namespace {

bool is_zero(const std::vector<float>& v) {
    for (float x : v)
        if (x != 0.0f) return false;
    return true;
}

const std::vector<float>* query_vector(const EmbeddingStore& store, const std::string& lemma,
                                       const std::string& surface) {
    // Lemma first; surface form as fallback.
    if (const auto* v = store.get(lemma)) return v;
    if (!surface.empty()) return store.get(surface);
    return nullptr;
}

} // namespace

CentroidModel build_centroids(const SemanticTypeDictionary& types, const EmbeddingStore& store,
                              double threshold, CentroidBuildReport* report) {
    if (threshold < -1.0 || threshold > 1.0)
        throw LoadError("similarity threshold out of [-1, 1]");
    CentroidModel model;
    model.threshold = threshold;
    model.dimension = store.dimension();
    for (const auto& [label, words] : types.entries) {
        std::vector<double> sum(static_cast<size_t>(store.dimension()), 0.0);
        int found = 0;
        for (const auto& w : words) {
            const auto* v = store.get(w);
            if (!v) continue;
            ++found;
            for (size_t i = 0; i < v->size(); ++i) sum[i] += (*v)[i];
        }
        if (found == 0) {
            if (report) report->dropped_types.push_back(label);
            continue;
        }
        std::vector<float> centroid(sum.size());
        for (size_t i = 0; i < sum.size(); ++i)
            centroid[i] = static_cast<float>(sum[i] / found);
        if (is_zero(centroid)) {
            // Degenerate mean: cosine against it is undefined.
            if (report) report->dropped_types.push_back(label);
            continue;
        }
        model.centroids[label] = std::move(centroid);
    }
    if (model.centroids.empty())
        throw LoadError("no semantic type survives the embedding vocabulary intersection");
    return model;
}

TypeAssignment tag_argument(const CentroidModel& model, const EmbeddingStore& store,
                            const std::string& head_lemma, const std::string& head_surface,
                            const std::optional<std::string>& ne_override) {
    if (ne_override) return {*ne_override, std::nullopt};
    const auto* v = query_vector(store, head_lemma, head_surface);
    if (!v || is_zero(*v)) return {kOtherType, std::nullopt};

    std::string best_label;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [label, centroid] : model.centroids) {
        double sim = cosine_similarity(*v, centroid);
        if (sim > best) { // map order makes ties resolve to the smallest label
            best = sim;
            best_label = label;
        }
    }
    if (best < model.threshold) return {kOtherType, best};
    return {best_label, best};
}

std::vector<std::pair<std::string, double>> tag_top_k(const CentroidModel& model,
                                                      const EmbeddingStore& store,
                                                      const std::string& head_lemma,
                                                      const std::string& head_surface,
                                                      size_t k) {
    const auto* v = query_vector(store, head_lemma, head_surface);
    if (!v || is_zero(*v)) return {};
    std::vector<std::pair<std::string, double>> ranking;
    ranking.reserve(model.centroids.size());
    for (const auto& [label, centroid] : model.centroids)
        ranking.emplace_back(label, cosine_similarity(*v, centroid));
    std::stable_sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranking.size() > k) ranking.resize(k);
    return ranking;
}

void dump_centroids_tsv(const CentroidModel& model, std::ostream& out) {
    out.precision(std::numeric_limits<float>::max_digits10);
    for (const auto& [label, centroid] : model.centroids) {
        out << label;
        for (float x : centroid) out << '\t' << x;
        out << '\n';
    }
}

} // namespace evento
