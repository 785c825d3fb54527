#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "evento/evaluation.hpp"
#include "evento/extraction.hpp"
#include "evento/linking.hpp"

namespace evento {

// JSON-lines codecs for the stage artifacts. One record per line; field
// layout is stable so stage outputs are diffable and byte-reproducible.

nlohmann::ordered_json mention_to_json(const EntityMention& m);
EntityMention mention_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json event_to_json(const EventMention& e);
EventMention event_from_json(const nlohmann::ordered_json& j);

void write_mentions_jsonl(const std::vector<EntityMention>& mentions, std::ostream& out);
std::vector<EntityMention> read_mentions_jsonl(std::istream& in);
std::vector<EntityMention> read_mentions_file(const std::string& path);
void write_mentions_file(const std::vector<EntityMention>& mentions, const std::string& path);

void write_events_jsonl(const std::vector<EventMention>& events, std::ostream& out);
std::vector<EventMention> read_events_jsonl(std::istream& in);
std::vector<EventMention> read_events_file(const std::string& path);
void write_events_file(const std::vector<EventMention>& events, const std::string& path);

std::vector<LinkingGold> read_linking_gold(const std::string& path);
std::vector<TypingGold> read_typing_gold(const std::string& path);
std::vector<TypingPrediction> read_typing_predictions(const std::string& path);
void write_typing_predictions(const std::vector<TypingPrediction>& preds, std::ostream& out);
std::vector<ExtractionGold> read_extraction_gold(const std::string& path);
std::vector<ClassificationGold> read_classification_gold(const std::string& path);

} // namespace evento
