#include "scifex/patterns.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "scifex/text.hpp"
#include "json_util.hpp"

namespace scifex {

namespace {

constexpr std::array<std::pair<PatternSlot, std::string_view>, 10> kSlotIds = {{
    {PatternSlot::Subj, "subj"},
    {PatternSlot::Root, "root"},
    {PatternSlot::Obj, "obj"},
    {PatternSlot::AdjAdv, "adj_adv"},
    {PatternSlot::RelClVerb, "rel_cl_verb"},
    {PatternSlot::RootNumber, "root_number"},
    {PatternSlot::AdjClNumber, "adj_cl_number"},
    {PatternSlot::HasReference, "has_reference"},
    {PatternSlot::HasFootnoteUrl, "has_footnote_url"},
    {PatternSlot::GazetteerName, "gazetteer_name"},
}};

std::string lower_lemma(const Token& tok) { return text::to_lower(tok.lemma); }

bool deprel_contains(const Token& tok, std::string_view needle) {
    return tok.deprel.find(needle) != std::string::npos;
}

int find_root(const std::vector<Token>& tokens) {
    for (const auto& tok : tokens) {
        if (tok.head == -1) return tok.index;
    }
    return -1;
}

std::vector<std::string> split_words(std::string_view entry) {
    std::vector<std::string> words;
    std::istringstream in{std::string(entry)};
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

bool subtree_contains_num(const std::vector<Token>& tokens, int head) {
    // Tokens are a tree, so a single pass over descendants suffices.
    std::vector<int> stack = {head};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        if (tokens[cur].upos == "NUM") return true;
        for (const auto& tok : tokens) {
            if (tok.head == cur) stack.push_back(tok.index);
        }
    }
    return false;
}

}  // namespace

std::string_view pattern_slot_id(PatternSlot slot) {
    for (auto [s, id] : kSlotIds) {
        if (s == slot) return id;
    }
    return "";
}

std::optional<PatternSlot> pattern_slot_from_id(std::string_view id) {
    for (auto [s, sid] : kSlotIds) {
        if (sid == id) return s;
    }
    return std::nullopt;
}

int PatternMatchReport::count(PatternSlot slot) const {
    auto it = slots.find(slot);
    return it == slots.end() ? 0 : it->second.count;
}

const std::vector<int>* PatternMatchReport::tokens(PatternSlot slot) const {
    auto it = slots.find(slot);
    return it == slots.end() ? nullptr : &it->second.token_indices;
}

PatternConfig default_pattern_config() {
    PatternConfig config;
    config.source_code.facet = Facet::SourceCode;
    config.source_code.lexicons = {
        {PatternSlot::Subj,
         {"it", "we", "model", "implementation", "source code", "supplementary material"}},
        {PatternSlot::Root, {"is", "are", "find", "release"}},
        {PatternSlot::Obj,
         {"github", "website", "open-source", "implementation", "project page",
          "supplementary material"}},
        {PatternSlot::AdjAdv,
         {"publicly", "available", "online", "opensource", "open-source", "supplementary"}},
    };
    config.dataset.facet = Facet::Dataset;
    config.dataset.lexicons = {
        {PatternSlot::Subj, {"performance", "paper", "we", "dataset", "experiment"}},
        {PatternSlot::Root,
         {"make",      "utilize",  "adopt",   "create", "construct", "include",   "consist",
          "perform",   "introduce", "contain", "feed",   "is",        "use",       "implement",
          "evaluate",  "release",  "focus",   "conduct", "constitute"}},
        {PatternSlot::Obj,
         {"database", "dataset", "github", "website", "repository", "online", "collection",
          "benchmark", "numerical study"}},
        {PatternSlot::AdjAdv,
         {"publicly", "available", "online", "large-scale", "constructed", "synthetic", "dataset",
          "popular"}},
        {PatternSlot::RelClVerb,
         {"generate", "provide", "utilize", "adopt", "create", "construct", "include", "consist",
          "introduce", "contain", "feed", "use", "release"}},
        {PatternSlot::RootNumber,
         {"include", "consist", "contain", "constitute", "compose", "comprise"}},
        {PatternSlot::AdjClNumber, {"compose", "consist", "comprise"}},
        {PatternSlot::HasReference, {}},
        {PatternSlot::HasFootnoteUrl, {}},
        {PatternSlot::GazetteerName, {}},
    };
    config.exclusion_lemmas = {"figure", "table", "fig", "tab", "section", "equation"};
    config.material_lemmas = {"dataset", "corpus", "database", "benchmark", "collection"};
    config.gazetteer = {"MNIST",   "CIFAR",    "CIFAR-10", "CIFAR-100",     "ImageNet",
                        "COCO",    "SQuAD",    "WikiText", "Penn Treebank", "SemEval",
                        "IMDB",    "Kinetics", "Cityscapes"};
    return config;
}

PatternMatchReport match_rules(const Sentence& sentence, const FacetRules& rules,
                               const DocumentRecord& doc, const PatternConfig& config) {
    if (!sentence.has_tokens) throw ValidationError("parse required for sentence " + sentence.sentence_id);
    const auto& tokens = sentence.tokens;
    PatternMatchReport report;

    auto record = [&](PatternSlot slot, std::vector<int> indices, int occurrences) {
        if (occurrences <= 0) return;
        SlotMatch& match = report.slots[slot];
        match.count += occurrences;
        match.token_indices.insert(match.token_indices.end(), indices.begin(), indices.end());
    };

    for (const auto& [slot, lexicon] : rules.lexicons) {
        switch (slot) {
            case PatternSlot::Subj:
                for (const auto& tok : tokens) {
                    if (deprel_contains(tok, "subj") && lexicon.count(lower_lemma(tok))) {
                        record(slot, {tok.index}, 1);
                    }
                }
                break;
            case PatternSlot::Root: {
                int root = find_root(tokens);
                if (root >= 0 && lexicon.count(lower_lemma(tokens[root]))) {
                    record(slot, {root}, 1);
                }
                break;
            }
            case PatternSlot::Obj:
                for (const auto& tok : tokens) {
                    if (deprel_contains(tok, "obj") && lexicon.count(lower_lemma(tok))) {
                        record(slot, {tok.index}, 1);
                    }
                }
                break;
            case PatternSlot::AdjAdv:
                for (const auto& entry : lexicon) {
                    auto words = split_words(entry);
                    if (words.empty()) continue;
                    for (std::size_t i = 0; i + words.size() <= tokens.size();) {
                        bool ok = true;
                        for (std::size_t k = 0; k < words.size(); ++k) {
                            const Token& tok = tokens[i + k];
                            if ((tok.upos != "ADJ" && tok.upos != "ADV") ||
                                lower_lemma(tok) != words[k]) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok) {
                            std::vector<int> idx;
                            for (std::size_t k = 0; k < words.size(); ++k) {
                                idx.push_back(static_cast<int>(i + k));
                            }
                            record(slot, idx, 1);
                            i += words.size();
                        } else {
                            ++i;
                        }
                    }
                }
                break;
            case PatternSlot::RelClVerb:
                for (const auto& tok : tokens) {
                    if (tok.upos == "VERB" && tok.deprel == "acl:relcl" &&
                        lexicon.count(lower_lemma(tok))) {
                        record(slot, {tok.index}, 1);
                    }
                }
                break;
            case PatternSlot::RootNumber: {
                int root = find_root(tokens);
                if (root < 0 || !lexicon.count(lower_lemma(tokens[root]))) break;
                std::vector<int> nums;
                for (const auto& tok : tokens) {
                    if (tok.upos == "NUM") nums.push_back(tok.index);
                }
                if (!nums.empty()) {
                    std::vector<int> idx = {root};
                    idx.insert(idx.end(), nums.begin(), nums.end());
                    record(slot, idx, 1);
                }
                break;
            }
            case PatternSlot::AdjClNumber:
                // Verb heading a plain adjectival clause whose subtree holds a
                // number (relative clauses are RelClVerb's business).
                for (const auto& tok : tokens) {
                    bool is_acl = tok.deprel == "acl" ||
                                  (tok.deprel.rfind("acl:", 0) == 0 && tok.deprel != "acl:relcl");
                    if (is_acl && lexicon.count(lower_lemma(tok)) &&
                        subtree_contains_num(tokens, tok.index)) {
                        record(slot, {tok.index}, 1);
                    }
                }
                break;
            case PatternSlot::HasReference:
                if (!sentence.citation_marks.empty()) record(slot, {}, 1);
                break;
            case PatternSlot::HasFootnoteUrl: {
                bool has_url = !sentence.urls.empty();
                for (const auto& mark : sentence.footnote_marks) {
                    const FootnoteEntry* fn = doc.find_footnote(mark);
                    if (fn && !fn->urls.empty()) has_url = true;
                }
                if (has_url) record(slot, {}, 1);
                break;
            }
            case PatternSlot::GazetteerName:
                for (const auto& name : config.gazetteer) {
                    if (text::contains_word(sentence.text, name, /*case_sensitive=*/true)) {
                        record(slot, {}, 1);
                    }
                }
                break;
        }
    }

    for (const auto& [slot, match] : report.slots) {
        report.total_occurrences += match.count;
        if (match.count > 0) ++report.distinct_slots;
    }
    return report;
}

namespace {

bool sentence_has_url_evidence(const Sentence& sentence, const DocumentRecord& doc) {
    if (!sentence.urls.empty()) return true;
    for (const auto& mark : sentence.footnote_marks) {
        const FootnoteEntry* fn = doc.find_footnote(mark);
        if (fn && !fn->urls.empty()) return true;
    }
    for (const auto& mark : sentence.citation_marks) {
        const ReferenceEntry* ref = doc.find_reference(mark);
        if (ref && !ref->urls.empty()) return true;
    }
    return false;
}

bool contains_exclusion_lemma(const Sentence& sentence, const PatternConfig& config) {
    for (const auto& tok : sentence.tokens) {
        if (config.exclusion_lemmas.count(text::to_lower(tok.lemma))) return true;
    }
    return false;
}

bool meets_thresholds(const PatternMatchReport& report, const PatternConfig& config) {
    return report.distinct_slots >= config.min_distinct_slots &&
           report.total_occurrences >= config.min_total_occurrences;
}

}  // namespace

std::vector<CandidateSentence> source_code_candidates(const DocumentRecord& doc,
                                                      const PatternConfig& config,
                                                      ScanStats* stats) {
    std::vector<CandidateSentence> out;
    for (const Section* section : doc.all_sections()) {
        for (const auto& sentence : section->sentences) {
            if (stats) ++stats->sentences_seen;
            if (!sentence.has_tokens) {
                if (stats) ++stats->sentences_unparsed;
                continue;
            }
            if (!sentence_has_url_evidence(sentence, doc)) continue;
            if (contains_exclusion_lemma(sentence, config)) continue;
            PatternMatchReport report = match_rules(sentence, config.source_code, doc, config);
            if (!meets_thresholds(report, config)) continue;
            if (config.require_adj_or_obj_for_source && report.count(PatternSlot::AdjAdv) == 0 &&
                report.count(PatternSlot::Obj) == 0) {
                continue;
            }
            out.push_back({doc.doc_id, sentence.sentence_id, Facet::SourceCode, std::move(report), 0});
        }
    }
    return out;
}

std::vector<CandidateSentence> dataset_candidates(const DocumentRecord& doc,
                                                  const PatternConfig& config, ScanStats* stats) {
    std::vector<CandidateSentence> out;
    std::unordered_map<std::string, std::size_t> emitted;  // sentence_id -> index in out

    for (const Section* section : doc.all_sections()) {
        const auto& sentences = section->sentences;
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (stats) ++stats->sentences_seen;
            const Sentence& trigger = sentences[i];
            if (!trigger.has_tokens) {
                if (stats) ++stats->sentences_unparsed;
                continue;
            }
            bool has_material = false;
            for (const auto& tok : trigger.tokens) {
                if (config.material_lemmas.count(text::to_lower(tok.lemma))) {
                    has_material = true;
                    break;
                }
            }
            if (!has_material) continue;

            // The trigger plus the lookahead window, truncated at section end.
            std::size_t last = std::min(i + static_cast<std::size_t>(config.dataset_lookahead),
                                        sentences.size() - 1);
            for (std::size_t j = i; j <= last; ++j) {
                const Sentence& candidate = sentences[j];
                if (!candidate.has_tokens) continue;
                PatternMatchReport report = match_rules(candidate, config.dataset, doc, config);
                if (!meets_thresholds(report, config)) continue;
                int distance = static_cast<int>(j - i);
                auto it = emitted.find(candidate.sentence_id);
                if (it != emitted.end()) {
                    // Same sentence reachable from several triggers: keep the
                    // closest one.
                    out[it->second].trigger_distance =
                        std::min(out[it->second].trigger_distance, distance);
                    continue;
                }
                emitted.emplace(candidate.sentence_id, out.size());
                out.push_back(
                    {doc.doc_id, candidate.sentence_id, Facet::Dataset, std::move(report), distance});
            }
        }
    }
    return out;
}

int shortest_dependency_path(const std::vector<Token>& tokens, int i, int j) {
    if (i == j) return 0;
    std::unordered_map<int, int> depth_of;  // ancestor -> distance from i
    int cur = i;
    int d = 0;
    while (true) {
        depth_of[cur] = d;
        if (tokens[cur].head == -1) break;
        cur = tokens[cur].head;
        ++d;
    }
    cur = j;
    d = 0;
    while (true) {
        auto it = depth_of.find(cur);
        if (it != depth_of.end()) return it->second + d;
        cur = tokens[cur].head;
        ++d;
    }
}

std::vector<ScoredSpan> dataset_entity_candidates(const Sentence& sentence,
                                                  const PatternMatchReport& report,
                                                  const PatternConfig& config) {
    const auto& tokens = sentence.tokens;
    std::vector<ScoredSpan> out;
    if (tokens.empty()) return out;

    std::vector<int> anchors;
    for (PatternSlot slot : {PatternSlot::Root, PatternSlot::Obj}) {
        if (const auto* idx = report.tokens(slot)) {
            anchors.insert(anchors.end(), idx->begin(), idx->end());
        }
    }
    if (anchors.empty()) return out;

    auto is_np_pos = [](const Token& tok) {
        return tok.upos == "NOUN" || tok.upos == "PROPN" || tok.upos == "NUM" || tok.upos == "ADJ";
    };
    auto is_core_pos = [](const Token& tok) {
        return tok.upos == "NOUN" || tok.upos == "PROPN" || tok.upos == "NUM";
    };

    int n = static_cast<int>(tokens.size());
    int i = 0;
    while (i < n) {
        if (!is_np_pos(tokens[i])) {
            ++i;
            continue;
        }
        int run_end = i;
        while (run_end + 1 < n && is_np_pos(tokens[run_end + 1])) ++run_end;
        int start = i;
        i = run_end + 1;

        // ADJ tokens may only appear inside a span, never on its edges.
        while (start <= run_end && !is_core_pos(tokens[start])) ++start;
        while (run_end >= start && !is_core_pos(tokens[run_end])) --run_end;
        if (start > run_end) continue;

        // Group the run by the last in-run ancestor of each token; each
        // contiguous block with a single local root becomes one span.
        auto local_root = [&](int t) {
            int cur = t;
            while (tokens[cur].head >= start && tokens[cur].head <= run_end) cur = tokens[cur].head;
            return cur;
        };
        int block_start = start;
        while (block_start <= run_end) {
            int root_of_block = local_root(block_start);
            int block_end = block_start;
            while (block_end + 1 <= run_end && local_root(block_end + 1) == root_of_block) {
                ++block_end;
            }

            const Token& first = tokens[block_start];
            bool capital_ok =
                !first.surface.empty() && std::isupper(static_cast<unsigned char>(first.surface[0]));
            if (block_start == 0) capital_ok = capital_ok && first.upos == "PROPN";
            if (capital_ok) {
                int d = -1;
                for (int anchor : anchors) {
                    int dist = shortest_dependency_path(tokens, root_of_block, anchor);
                    if (d < 0 || dist < d) d = dist;
                }
                double score = 1.0 / (1.0 + static_cast<double>(d));
                if (score >= config.span_score_threshold) {
                    std::string surface;
                    for (int t = block_start; t <= block_end; ++t) {
                        surface += tokens[t].surface;
                        if (tokens[t].space_after && t < block_end) surface += ' ';
                    }
                    out.push_back({block_start, block_end, std::move(surface), score});
                }
            }
            block_start = block_end + 1;
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const ScoredSpan& a, const ScoredSpan& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.token_start < b.token_start;
    });
    return out;
}

// --- config and candidate serialization ---

namespace {

using detail::json;

json lexicons_to_json(const FacetRules& rules) {
    json slots = json::object();
    for (const auto& [slot, lexicon] : rules.lexicons) {
        slots[std::string(pattern_slot_id(slot))] = lexicon;
    }
    return slots;
}

void lexicons_from_json(const json& slots, FacetRules& rules, const std::string& context) {
    rules.lexicons.clear();
    for (auto it = slots.begin(); it != slots.end(); ++it) {
        auto slot = pattern_slot_from_id(it.key());
        if (!slot) throw ValidationError(context + ": unknown pattern slot \"" + it.key() + "\"");
        std::set<std::string> lexicon;
        for (const auto& entry : it.value()) {
            lexicon.insert(text::to_lower(entry.get<std::string>()));
        }
        rules.lexicons[*slot] = std::move(lexicon);
    }
}

}  // namespace

std::string serialize_pattern_config(const PatternConfig& config) {
    json obj{{"source_code", lexicons_to_json(config.source_code)},
             {"dataset", lexicons_to_json(config.dataset)},
             {"exclusion_lemmas", config.exclusion_lemmas},
             {"material_lemmas", config.material_lemmas},
             {"gazetteer", config.gazetteer},
             {"span_score_threshold", config.span_score_threshold},
             {"min_distinct_slots", config.min_distinct_slots},
             {"min_total_occurrences", config.min_total_occurrences},
             {"require_adj_or_obj_for_source", config.require_adj_or_obj_for_source},
             {"dataset_lookahead", config.dataset_lookahead}};
    return obj.dump(2) + "\n";
}

PatternConfig load_pattern_config(const std::filesystem::path& file) {
    const std::string context = file.string();
    json obj = detail::parse_json(detail::read_file(file), context);
    PatternConfig config = default_pattern_config();
    if (obj.contains("source_code")) lexicons_from_json(obj["source_code"], config.source_code, context);
    if (obj.contains("dataset")) lexicons_from_json(obj["dataset"], config.dataset, context);
    auto read_set = [&](const char* key, std::set<std::string>& target) {
        if (!obj.contains(key)) return;
        target.clear();
        for (const auto& e : obj[key]) target.insert(text::to_lower(e.get<std::string>()));
    };
    read_set("exclusion_lemmas", config.exclusion_lemmas);
    read_set("material_lemmas", config.material_lemmas);
    if (obj.contains("gazetteer")) {
        config.gazetteer.clear();
        for (const auto& e : obj["gazetteer"]) config.gazetteer.push_back(e.get<std::string>());
    }
    if (obj.contains("span_score_threshold")) config.span_score_threshold = obj["span_score_threshold"];
    if (obj.contains("min_distinct_slots")) config.min_distinct_slots = obj["min_distinct_slots"];
    if (obj.contains("min_total_occurrences")) {
        config.min_total_occurrences = obj["min_total_occurrences"];
    }
    if (obj.contains("require_adj_or_obj_for_source")) {
        config.require_adj_or_obj_for_source = obj["require_adj_or_obj_for_source"];
    }
    if (obj.contains("dataset_lookahead")) config.dataset_lookahead = obj["dataset_lookahead"];
    return config;
}

std::string candidate_to_jsonl(const CandidateSentence& candidate) {
    json slots = json::object();
    for (const auto& [slot, match] : candidate.report.slots) {
        if (match.count == 0) continue;
        slots[std::string(pattern_slot_id(slot))] =
            json{{"count", match.count}, {"tokens", match.token_indices}};
    }
    json obj{{"doc_id", candidate.doc_id},
             {"sentence_id", candidate.sentence_id},
             {"facet", std::string(facet_id(candidate.facet))},
             {"trigger_distance", candidate.trigger_distance},
             {"report",
              json{{"total_occurrences", candidate.report.total_occurrences},
                   {"distinct_slots", candidate.report.distinct_slots},
                   {"slots", std::move(slots)}}}};
    return obj.dump();
}

CandidateSentence candidate_from_json(const std::string& line, const std::string& context) {
    json obj = detail::parse_json(line, context);
    CandidateSentence c;
    c.doc_id = detail::require_string(obj, "doc_id", context);
    c.sentence_id = detail::require_string(obj, "sentence_id", context);
    auto facet = facet_from_id(detail::require_string(obj, "facet", context));
    if (!facet) throw ValidationError(context + ": unknown facet");
    c.facet = *facet;
    c.trigger_distance = obj.value("trigger_distance", 0);
    const json& report = detail::require_field(obj, "report", context);
    c.report.total_occurrences = report.value("total_occurrences", 0);
    c.report.distinct_slots = report.value("distinct_slots", 0);
    if (report.contains("slots")) {
        for (auto it = report["slots"].begin(); it != report["slots"].end(); ++it) {
            auto slot = pattern_slot_from_id(it.key());
            if (!slot) throw ValidationError(context + ": unknown slot \"" + it.key() + "\"");
            SlotMatch match;
            match.count = it.value().value("count", 0);
            if (it.value().contains("tokens")) {
                match.token_indices = it.value()["tokens"].get<std::vector<int>>();
            }
            c.report.slots[*slot] = std::move(match);
        }
    }
    return c;
}

std::vector<CandidateSentence> load_candidates(const std::filesystem::path& file) {
    std::vector<CandidateSentence> out;
    detail::for_each_jsonl_line(file, [&](const json& obj, std::size_t lineno) {
        out.push_back(candidate_from_json(obj.dump(), file.string() + ":" + std::to_string(lineno)));
    });
    return out;
}

}  // namespace scifex
