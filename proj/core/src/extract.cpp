#include "scifex/extract.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json_util.hpp"
#include "scifex/biluo.hpp"
#include "scifex/text.hpp"

namespace scifex {
namespace {

// Union-find over mention indices.
struct DisjointSet {
    std::vector<std::size_t> parent;

    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::string span_surface(const Sentence& sentence, int start, int end) {
    std::string out;
    for (int i = start; i <= end; ++i) {
        const Token& token = sentence.tokens[static_cast<std::size_t>(i)];
        out += token.surface;
        if (i < end && token.space_after) out += " ";
    }
    return out;
}

const FacetRules* rules_for(Facet facet, const PatternConfig* config) {
    if (config == nullptr) return nullptr;
    if (facet == Facet::SourceCode) return &config->source_code;
    if (facet == Facet::Dataset) return &config->dataset;
    return nullptr;
}

bool classify_with_optional_report(const SentClassifierModel& model, const Sentence& sentence,
                                   const DocumentRecord& doc, Facet facet,
                                   const PatternConfig* config) {
    const FacetRules* rules = rules_for(facet, config);
    if (rules != nullptr && sentence.has_tokens && config != nullptr) {
        const PatternMatchReport report = match_rules(sentence, *rules, doc, *config);
        return classify(model, sentence, &report);
    }
    return classify(model, sentence);
}

nlohmann::ordered_json cluster_to_json(const EntityCluster& cluster) {
    nlohmann::ordered_json out;
    out["canonical"] = cluster.canonical;
    nlohmann::ordered_json members = nlohmann::ordered_json::object();
    for (const auto& [surface, count] : cluster.members) members[surface] = count;
    out["members"] = std::move(members);
    return out;
}

EntityCluster cluster_from_json(const nlohmann::json& value, const std::string& where) {
    EntityCluster cluster;
    cluster.canonical = detail::require_string(value, "canonical", where);
    for (const auto& [surface, count] : detail::require_field(value, "members", where).items()) {
        cluster.members[surface] = count.get<int>();
    }
    if (cluster.members.count(cluster.canonical) == 0) {
        throw ValidationError(where + ": canonical missing from members");
    }
    return cluster;
}

}  // namespace

int EntityCluster::total_mentions() const {
    int total = 0;
    for (const auto& [surface, count] : members) total += count;
    return total;
}

std::vector<EntityCluster> cluster_entities(const std::vector<std::string>& mentions,
                                            double threshold) {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw ValidationError("cluster threshold must be in (0, 1]");
    }
    std::map<std::string, int> counts;
    for (const std::string& mention : mentions) ++counts[mention];
    std::vector<std::string> distinct;
    for (const auto& [surface, count] : counts) distinct.push_back(surface);

    DisjointSet components(distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        for (std::size_t j = i + 1; j < distinct.size(); ++j) {
            if (similarity(distinct[i], distinct[j]) >= threshold) components.unite(i, j);
        }
    }

    std::map<std::size_t, EntityCluster> by_root;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        by_root[components.find(i)].members[distinct[i]] = counts[distinct[i]];
    }
    std::vector<EntityCluster> out;
    for (auto& [root, cluster] : by_root) {
        int best_count = -1;
        for (const auto& [surface, count] : cluster.members) {
            const bool better =
                count > best_count ||
                (count == best_count && surface.size() > cluster.canonical.size()) ||
                (count == best_count && surface.size() == cluster.canonical.size() &&
                 surface < cluster.canonical);
            if (better) {
                cluster.canonical = surface;
                best_count = count;
            }
        }
        out.push_back(std::move(cluster));
    }
    std::sort(out.begin(), out.end(), [](const EntityCluster& a, const EntityCluster& b) {
        return a.canonical < b.canonical;
    });
    return out;
}

FacetPipelineResult run_facet_pipeline(const DocumentRecord& doc, Facet facet,
                                       const SentClassifierModel& sent_model,
                                       const CrfModel& crf_model,
                                       const PatternConfig* pattern_config,
                                       double cluster_threshold, ScanStats* stats) {
    if (sent_model.template_version != kSentenceTemplateVersion) {
        throw ValidationError("sentence model template mismatch: " + sent_model.template_version);
    }
    if (crf_model.featurizer.template_version != kCrfTemplateVersion) {
        throw ValidationError("crf model template mismatch: " +
                              crf_model.featurizer.template_version);
    }
    const std::vector<std::string>& wanted_labels = entity_labels_for(facet);
    const std::set<std::string> label_set(wanted_labels.begin(), wanted_labels.end());

    FacetPipelineResult result;
    std::vector<std::string> mentions;
    for (const Section* section : doc.all_sections()) {
        for (const Sentence& sentence : section->sentences) {
            if (stats) ++stats->sentences_seen;
            if (!sentence.has_tokens) {
                if (stats) ++stats->sentences_unparsed;
                continue;
            }
            if (!classify_with_optional_report(sent_model, sentence, doc, facet,
                                               pattern_config)) {
                continue;
            }
            const TaggedSentence tagged = viterbi(crf_model, sentence);
            const DecodeResult decoded = decode_biluo(tagged.tags);
            bool contributed = false;
            for (const LabeledSpan& span : decoded.spans) {
                if (label_set.count(span.label) == 0) continue;
                mentions.push_back(span_surface(sentence, span.start, span.end));
                contributed = true;
            }
            if (contributed) result.provenance.push_back(sentence.sentence_id);
        }
    }
    result.clusters = cluster_entities(mentions, cluster_threshold);
    return result;
}

std::vector<std::pair<std::string, std::string>> extract_source_urls(
    const DocumentRecord& doc, const SentClassifierModel& sent_model,
    const PatternConfig* pattern_config) {
    std::vector<std::pair<std::string, std::string>> out;
    std::set<std::string> seen;
    auto emit = [&](const std::string& url, const std::string& sentence_id) {
        if (seen.insert(url).second) out.emplace_back(url, sentence_id);
    };
    for (const Section* section : doc.all_sections()) {
        for (const Sentence& sentence : section->sentences) {
            if (!classify_with_optional_report(sent_model, sentence, doc, Facet::SourceCode,
                                               pattern_config)) {
                continue;
            }
            for (const std::string& url : sentence.urls) emit(url, sentence.sentence_id);
            for (const std::string& mark : sentence.footnote_marks) {
                const FootnoteEntry* footnote = doc.find_footnote(mark);
                if (footnote == nullptr) continue;
                for (const std::string& url : footnote->urls) emit(url, sentence.sentence_id);
            }
            for (const std::string& mark : sentence.citation_marks) {
                const ReferenceEntry* reference = doc.find_reference(mark);
                if (reference == nullptr) continue;
                for (const std::string& url : reference->urls) emit(url, sentence.sentence_id);
            }
        }
    }
    return out;
}

std::vector<RelationGraphDoc> load_relation_graphs(const std::filesystem::path& file) {
    static const std::set<std::string> mention_types = {"Task", "Method", "Material", "Metric",
                                                        "Generic"};
    static const std::set<std::string> relation_types = {"USED-FOR", "PART-OF", "FEATURE-OF",
                                                         "HYPONYM-OF"};
    std::vector<RelationGraphDoc> out;
    detail::for_each_jsonl_line(file, [&](const nlohmann::json& line, std::size_t line_no) {
        const std::string where = file.string() + ":" + std::to_string(line_no);
        RelationGraphDoc graph;
        graph.doc_id = detail::require_string(line, "doc_id", where);
        for (const auto& mention : detail::require_field(line, "mentions", where)) {
            RelationMention m;
            m.text = detail::require_string(mention, "text", where);
            m.type = detail::require_string(mention, "type", where);
            m.section_id = detail::require_string(mention, "section_id", where);
            m.sentence_id = detail::require_string(mention, "sentence_id", where);
            if (mention_types.count(m.type) == 0) {
                throw ValidationError(where + ": unknown mention type " + m.type);
            }
            graph.mentions.push_back(std::move(m));
        }
        for (const auto& relation : detail::require_field(line, "relations", where)) {
            if (!relation.is_array() || relation.size() != 3) {
                throw ValidationError(where + ": relation must be [i, j, type]");
            }
            RelationEdge edge;
            edge.from = relation[0].get<int>();
            edge.to = relation[1].get<int>();
            edge.type = relation[2].get<std::string>();
            if (relation_types.count(edge.type) == 0) {
                throw ValidationError(where + ": unknown relation type " + edge.type);
            }
            const int n = static_cast<int>(graph.mentions.size());
            if (edge.from < 0 || edge.from >= n || edge.to < 0 || edge.to >= n) {
                throw ValidationError(where + ": relation endpoint out of range");
            }
            graph.relations.push_back(std::move(edge));
        }
        out.push_back(std::move(graph));
    });
    return out;
}

TaskMethodResult select_task_method(const RelationGraphDoc& relgraph, const DocumentRecord& doc,
                                    int max_path_len, double cluster_threshold) {
    if (relgraph.doc_id != doc.doc_id) {
        throw ValidationError("relation graph doc_id " + relgraph.doc_id +
                              " does not match document " + doc.doc_id);
    }
    std::set<std::string> allowed_sections;
    for (const Section* section : doc.all_sections()) {
        if (section->kind == SectionKind::Abstract || section->kind == SectionKind::Introduction ||
            section->kind == SectionKind::Conclusion) {
            allowed_sections.insert(section->section_id);
        }
    }

    const std::size_t n = relgraph.mentions.size();
    std::vector<bool> restricted(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        restricted[i] = allowed_sections.count(relgraph.mentions[i].section_id) > 0;
    }

    std::vector<std::vector<std::size_t>> adjacency(n);
    for (const RelationEdge& edge : relgraph.relations) {
        adjacency[static_cast<std::size_t>(edge.from)].push_back(
            static_cast<std::size_t>(edge.to));
        adjacency[static_cast<std::size_t>(edge.to)].push_back(
            static_cast<std::size_t>(edge.from));
    }

    std::set<std::size_t> tasks;
    std::set<std::size_t> methods;
    for (const RelationEdge& edge : relgraph.relations) {
        if (edge.type != "USED-FOR") continue;
        const std::size_t a = static_cast<std::size_t>(edge.from);
        const std::size_t b = static_cast<std::size_t>(edge.to);
        for (const auto& [t, m] : {std::pair{a, b}, std::pair{b, a}}) {
            if (restricted[t] && restricted[m] && relgraph.mentions[t].type == "Task" &&
                relgraph.mentions[m].type == "Method") {
                tasks.insert(t);
                methods.insert(m);
            }
        }
    }

    if (tasks.empty() && methods.empty()) {
        // Fallback: breadth-first over every edge type; only the endpoints
        // must sit in an allowed section.
        for (std::size_t start = 0; start < n; ++start) {
            if (!restricted[start] || relgraph.mentions[start].type != "Task") continue;
            std::vector<int> depth(n, -1);
            std::deque<std::size_t> queue{start};
            depth[start] = 0;
            while (!queue.empty()) {
                const std::size_t at = queue.front();
                queue.pop_front();
                if (depth[at] >= max_path_len) continue;
                for (std::size_t next : adjacency[at]) {
                    if (depth[next] >= 0) continue;
                    depth[next] = depth[at] + 1;
                    queue.push_back(next);
                    if (restricted[next] && relgraph.mentions[next].type == "Method") {
                        tasks.insert(start);
                        methods.insert(next);
                    }
                }
            }
        }
    }

    std::map<std::string, int> frequency;
    for (const RelationMention& mention : relgraph.mentions) ++frequency[mention.text];

    auto build = [&](const std::set<std::size_t>& indices) {
        std::vector<std::string> texts;
        for (std::size_t i : indices) texts.push_back(relgraph.mentions[i].text);
        std::vector<EntityCluster> clusters = cluster_entities(texts, cluster_threshold);
        // Salience order: most frequent member anywhere in the document
        // first; canonical string breaks ties.
        std::stable_sort(clusters.begin(), clusters.end(),
                         [&](const EntityCluster& a, const EntityCluster& b) {
                             int fa = 0;
                             int fb = 0;
                             for (const auto& [surface, count] : a.members) {
                                 fa = std::max(fa, frequency[surface]);
                             }
                             for (const auto& [surface, count] : b.members) {
                                 fb = std::max(fb, frequency[surface]);
                             }
                             if (fa != fb) return fa > fb;
                             return a.canonical < b.canonical;
                         });
        return clusters;
    };
    TaskMethodResult result;
    result.tasks = build(tasks);
    result.methods = build(methods);
    return result;
}

PaperExtraction merge_document_extractions(const std::vector<PaperExtraction>& parts) {
    if (parts.empty()) throw ValidationError("nothing to merge");
    PaperExtraction merged;
    merged.doc_id = parts.front().doc_id;
    std::set<std::string> seen_urls;
    for (const PaperExtraction& part : parts) {
        if (part.doc_id != merged.doc_id) {
            throw ValidationError("conflicting doc_id in merge: " + part.doc_id + " vs " +
                                  merged.doc_id);
        }
        if (merged.year == 0) merged.year = part.year;
        if (merged.category_tags.empty()) merged.category_tags = part.category_tags;
        for (const auto& [facet, clusters] : part.facet_entities) {
            if (merged.facet_entities.count(facet) > 0) {
                throw ValidationError("facet present in two parts: " + facet);
            }
            merged.facet_entities[facet] = clusters;
        }
        for (const auto& [url, sentence_id] : part.source_code_urls) {
            if (seen_urls.insert(url).second) merged.source_code_urls.emplace_back(url, sentence_id);
        }
        for (const auto& [facet, sentences] : part.provenance) {
            std::vector<std::string>& target = merged.provenance[facet];
            target.insert(target.end(), sentences.begin(), sentences.end());
        }
    }
    return merged;
}

void write_extractions(const std::vector<PaperExtraction>& extractions,
                       const std::filesystem::path& file) {
    std::string body;
    for (const PaperExtraction& record : extractions) {
        nlohmann::ordered_json line;
        line["doc_id"] = record.doc_id;
        line["year"] = record.year;
        line["category_tags"] = record.category_tags;
        nlohmann::ordered_json facets = nlohmann::ordered_json::object();
        for (const auto& [facet, clusters] : record.facet_entities) {
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const EntityCluster& cluster : clusters) list.push_back(cluster_to_json(cluster));
            facets[facet] = std::move(list);
        }
        line["facets"] = std::move(facets);
        nlohmann::ordered_json urls = nlohmann::ordered_json::array();
        for (const auto& [url, sentence_id] : record.source_code_urls) {
            urls.push_back(nlohmann::ordered_json::array({url, sentence_id}));
        }
        line["source_code_urls"] = std::move(urls);
        nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
        for (const auto& [facet, sentences] : record.provenance) provenance[facet] = sentences;
        line["provenance"] = std::move(provenance);
        body += line.dump();
        body += "\n";
    }
    detail::write_file(file, body);
}

std::vector<PaperExtraction> load_extractions(const std::filesystem::path& file) {
    std::vector<PaperExtraction> out;
    detail::for_each_jsonl_line(file, [&](const nlohmann::json& line, std::size_t line_no) {
        const std::string where = file.string() + ":" + std::to_string(line_no);
        PaperExtraction record;
        record.doc_id = detail::require_string(line, "doc_id", where);
        record.year = detail::require_field(line, "year", where).get<int>();
        for (const auto& tag : detail::require_field(line, "category_tags", where)) {
            record.category_tags.push_back(tag.get<std::string>());
        }
        for (const auto& [facet, clusters] : detail::require_field(line, "facets", where).items()) {
            std::vector<EntityCluster>& list = record.facet_entities[facet];
            for (const auto& cluster : clusters) list.push_back(cluster_from_json(cluster, where));
        }
        for (const auto& pair : detail::require_field(line, "source_code_urls", where)) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ValidationError(where + ": source_code_urls entries are [url, sentence_id]");
            }
            record.source_code_urls.emplace_back(pair[0].get<std::string>(),
                                                 pair[1].get<std::string>());
        }
        for (const auto& [facet, sentences] :
             detail::require_field(line, "provenance", where).items()) {
            std::vector<std::string>& list = record.provenance[facet];
            for (const auto& sentence : sentences) list.push_back(sentence.get<std::string>());
        }
        out.push_back(std::move(record));
    });
    return out;
}

}  // namespace scifex
