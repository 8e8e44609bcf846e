#include "support/fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "scifex/biluo.hpp"
#include "scifex/conllu.hpp"
#include "scifex/corpus_io.hpp"
#include "scifex/facets.hpp"
#include "scifex/text.hpp"

namespace fixtures {

namespace {

scifex::Section section(std::string id, std::string header, scifex::SectionKind kind,
                        std::vector<scifex::Sentence> sentences) {
    scifex::Section out;
    out.section_id = std::move(id);
    out.header = std::move(header);
    out.kind = kind;
    out.sentences = std::move(sentences);
    return out;
}

scifex::DocumentRecord doc(std::string doc_id, int year, std::vector<std::string> tags,
                           scifex::Sentence abstract_sentence,
                           std::vector<scifex::Section> sections,
                           std::vector<scifex::FootnoteEntry> footnotes = {},
                           std::vector<scifex::ReferenceEntry> references = {}) {
    scifex::DocumentRecord out;
    out.doc_id = std::move(doc_id);
    out.title = "Fixture " + out.doc_id;
    out.year = year;
    out.category_tags = std::move(tags);
    out.abstract = section(out.doc_id + "_abs", "Abstract", scifex::SectionKind::Abstract,
                           {std::move(abstract_sentence)});
    out.sections = std::move(sections);
    out.footnotes = std::move(footnotes);
    out.references = std::move(references);
    scifex::validate_document(out);
    return out;
}

scifex::FootnoteEntry footnote(std::string id, std::string text) {
    scifex::FootnoteEntry out;
    out.id = std::move(id);
    out.text = std::move(text);
    out.urls = scifex::detect_urls(out.text);
    return out;
}

scifex::ReferenceEntry reference(std::string id, std::string text) {
    scifex::ReferenceEntry out;
    out.id = std::move(id);
    out.text = std::move(text);
    out.urls = scifex::detect_urls(out.text);
    return out;
}

scifex::EntityCluster cluster_of(std::vector<std::pair<std::string, int>> members) {
    scifex::EntityCluster out;
    out.canonical = members.front().first;
    for (auto& [surface, count] : members) out.members[std::move(surface)] = count;
    return out;
}

scifex::PaperExtraction paper(std::string doc_id, int year, std::string tag) {
    scifex::PaperExtraction out;
    out.doc_id = std::move(doc_id);
    out.year = year;
    out.category_tags = {std::move(tag)};
    return out;
}

}  // namespace

scifex::Token tok(std::string surface, std::string lemma, std::string upos, int head,
                  std::string deprel, bool space_after) {
    scifex::Token out;
    out.surface = std::move(surface);
    out.lemma = std::move(lemma);
    out.upos = std::move(upos);
    out.head = head;
    out.deprel = std::move(deprel);
    out.space_after = space_after;
    return out;
}

scifex::Sentence sentence(std::string id, std::vector<scifex::Token> tokens,
                          std::vector<std::string> footnote_marks,
                          std::vector<std::string> citation_marks) {
    scifex::Sentence out;
    out.sentence_id = std::move(id);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        tokens[i].index = static_cast<int>(i);
        out.text += tokens[i].surface;
        if (tokens[i].space_after && i + 1 < tokens.size()) out.text += ' ';
    }
    out.tokens = std::move(tokens);
    out.has_tokens = true;
    out.footnote_marks = std::move(footnote_marks);
    out.citation_marks = std::move(citation_marks);
    out.urls = scifex::detect_urls(out.text);
    return out;
}

scifex::Sentence unparsed(std::string id, std::string text) {
    scifex::Sentence out;
    out.sentence_id = std::move(id);
    out.text = std::move(text);
    out.urls = scifex::detect_urls(out.text);
    return out;
}

PlantedCorpus planted_corpus() {
    PlantedCorpus corpus;

    // fx01: source-code sentence with the URL in the sentence itself.
    corpus.docs.push_back(doc(
        "fx01", 2019, {"cs.LG"},
        sentence("fx01_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("study", "study", "VERB", -1, "root"),
                             tok("widgets", "widget", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx01_s", "Introduction", scifex::SectionKind::Introduction,
                 {sentence("fx01_s1",
                           {tok("We", "we", "PRON", 1, "nsubj"),
                            tok("release", "release", "VERB", -1, "root"),
                            tok("our", "our", "PRON", 3, "nmod:poss"),
                            tok("implementation", "implementation", "NOUN", 1, "obj"),
                            tok("at", "at", "ADP", 5, "case"),
                            tok("https://github.com/acme/widget",
                                "https://github.com/acme/widget", "X", 1, "obl"),
                            tok("and", "and", "CCONJ", 10, "cc"),
                            tok("it", "it", "PRON", 10, "nsubj"),
                            tok("is", "is", "AUX", 10, "cop"),
                            tok("publicly", "publicly", "ADV", 10, "advmod"),
                            tok("available", "available", "ADJ", 1, "conj"),
                            tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx01_s2", {tok("Results", "result", "NOUN", 2, "nsubj"),
                                       tok("are", "be", "AUX", 2, "aux"),
                                       tok("shown", "show", "VERB", -1, "root"),
                                       tok("below", "below", "ADV", 2, "advmod"),
                                       tok(".", ".", "PUNCT", 2, "punct")})})}));
    corpus.source_code.insert({"fx01", "fx01_s1"});

    // fx02: the URL evidence sits in a referenced footnote.
    corpus.docs.push_back(doc(
        "fx02", 2019, {"cs.LG"},
        sentence("fx02_a0", {tok("Neural", "neural", "ADJ", 1, "amod"),
                             tok("models", "model", "NOUN", 2, "nsubj"),
                             tok("improve", "improve", "VERB", -1, "root"),
                             tok("accuracy", "accuracy", "NOUN", 2, "obj"),
                             tok(".", ".", "PUNCT", 2, "punct")}),
        {section("fx02_s", "Implementation", scifex::SectionKind::Other,
                 {sentence("fx02_s1",
                           {tok("Our", "our", "PRON", 1, "nmod:poss"),
                            tok("model", "model", "NOUN", 4, "nsubj"),
                            tok("is", "is", "AUX", 4, "cop"),
                            tok("publicly", "publicly", "ADV", 4, "advmod"),
                            tok("available", "available", "ADJ", -1, "root"),
                            tok("online", "online", "ADV", 4, "advmod"),
                            tok("1", "1", "NUM", 4, "dep"),
                            tok(".", ".", "PUNCT", 4, "punct")},
                           {"1"}),
                  sentence("fx02_s2", {tok("Training", "training", "NOUN", 1, "nsubj"),
                                       tok("takes", "take", "VERB", -1, "root"),
                                       tok("two", "two", "NUM", 3, "nummod"),
                                       tok("days", "day", "NOUN", 1, "obj"),
                                       tok(".", ".", "PUNCT", 1, "punct")})})},
        {footnote("1", "Code at https://github.com/acme/demo")}));
    corpus.source_code.insert({"fx02", "fx02_s1"});

    // fx03: URL evidence through a cited reference.
    corpus.docs.push_back(doc(
        "fx03", 2019, {"cs.CL"},
        sentence("fx03_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("present", "present", "VERB", -1, "root"),
                             tok("a", "a", "DET", 4, "det"),
                             tok("fast", "fast", "ADJ", 4, "amod"),
                             tok("solver", "solver", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx03_s", "Code", scifex::SectionKind::Other,
                 {sentence("fx03_s1",
                           {tok("Our", "our", "PRON", 1, "nmod:poss"),
                            tok("implementation", "implementation", "NOUN", 2, "nsubj"),
                            tok("is", "is", "AUX", -1, "root"),
                            tok("available", "available", "ADJ", 2, "acomp"),
                            tok("online", "online", "ADV", 3, "advmod"),
                            tok("[", "[", "PUNCT", 6, "punct"),
                            tok("5", "5", "NUM", 2, "dep"),
                            tok("]", "]", "PUNCT", 6, "punct"),
                            tok(".", ".", "PUNCT", 2, "punct")},
                           {}, {"5"})})},
        {}, {reference("5", "ACME widget toolkit. https://github.com/acme/toolkit")}));
    corpus.source_code.insert({"fx03", "fx03_s1"});

    // fx04: sentences that pass every source-code test except the exclusion
    // lemma. Neither may be flagged.
    corpus.docs.push_back(doc(
        "fx04", 2020, {"cs.CV"},
        sentence("fx04_a0", {tok("This", "this", "DET", 1, "det"),
                             tok("work", "work", "NOUN", 2, "nsubj"),
                             tok("studies", "study", "VERB", -1, "root"),
                             tok("parsing", "parsing", "NOUN", 2, "obj"),
                             tok(".", ".", "PUNCT", 2, "punct")}),
        {section("fx04_s", "Results", scifex::SectionKind::Experiment,
                 {sentence("fx04_s1",
                           {tok("Figure", "figure", "PROPN", 2, "nsubj"),
                            tok("2", "2", "NUM", 0, "nummod"),
                            tok("shows", "show", "VERB", -1, "root"),
                            tok("that", "that", "SCONJ", 8, "mark"),
                            tok("our", "our", "PRON", 5, "nmod:poss"),
                            tok("implementation", "implementation", "NOUN", 8, "nsubj"),
                            tok("is", "is", "AUX", 8, "cop"),
                            tok("publicly", "publicly", "ADV", 8, "advmod"),
                            tok("available", "available", "ADJ", 2, "ccomp"),
                            tok("at", "at", "ADP", 10, "case"),
                            tok("https://github.com/acme/fig", "https://github.com/acme/fig",
                                "X", 8, "obl"),
                            tok(".", ".", "PUNCT", 2, "punct")}),
                  sentence("fx04_s2",
                           {tok("Table", "table", "PROPN", 2, "nsubj"),
                            tok("1", "1", "NUM", 0, "nummod"),
                            tok("lists", "list", "VERB", -1, "root"),
                            tok("our", "our", "PRON", 4, "nmod:poss"),
                            tok("implementation", "implementation", "NOUN", 2, "obj"),
                            tok(",", ",", "PUNCT", 7, "punct"),
                            tok("publicly", "publicly", "ADV", 7, "advmod"),
                            tok("available", "available", "ADJ", 4, "amod"),
                            tok("online", "online", "ADV", 7, "advmod"),
                            tok("at", "at", "ADP", 10, "case"),
                            tok("https://github.com/acme/tab", "https://github.com/acme/tab",
                                "X", 7, "obl"),
                            tok(".", ".", "PUNCT", 2, "punct")})})}));
    corpus.with_exclusion_lemma.insert({"fx04", "fx04_s1"});
    corpus.with_exclusion_lemma.insert({"fx04", "fx04_s2"});

    // fx05: dataset trigger and candidate in the same sentence.
    corpus.docs.push_back(doc(
        "fx05", 2020, {"cs.CV"},
        sentence("fx05_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("propose", "propose", "VERB", -1, "root"),
                             tok("a", "a", "DET", 4, "det"),
                             tok("new", "new", "ADJ", 4, "amod"),
                             tok("classifier", "classifier", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx05_s", "Experiments", scifex::SectionKind::Experiment,
                 {sentence("fx05_s1",
                           {tok("We", "we", "PRON", 1, "nsubj"),
                            tok("evaluate", "evaluate", "VERB", -1, "root"),
                            tok("our", "our", "PRON", 3, "nmod:poss"),
                            tok("model", "model", "NOUN", 1, "obj"),
                            tok("on", "on", "ADP", 7, "case"),
                            tok("the", "the", "DET", 7, "det"),
                            tok("MNIST", "mnist", "PROPN", 7, "compound"),
                            tok("dataset", "dataset", "NOUN", 1, "obl"),
                            tok(",", ",", "PUNCT", 10, "punct"),
                            tok("which", "which", "PRON", 10, "nsubj"),
                            tok("contains", "contain", "VERB", 7, "acl:relcl"),
                            tok("70000", "70000", "NUM", 12, "nummod"),
                            tok("images", "image", "NOUN", 10, "obj"),
                            tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx05_s2", {tok("Accuracy", "accuracy", "NOUN", 1, "nsubj"),
                                       tok("improves", "improve", "VERB", -1, "root"),
                                       tok("with", "with", "ADP", 3, "case"),
                                       tok("depth", "depth", "NOUN", 1, "obl"),
                                       tok(".", ".", "PUNCT", 1, "punct")})})}));
    corpus.dataset[{"fx05", "fx05_s1"}] = 0;
    corpus.dataset_names[{"fx05", "fx05_s1"}] = {"MNIST dataset"};

    // fx06: trigger sentence, filler, then the candidate two sentences later.
    corpus.docs.push_back(doc(
        "fx06", 2020, {"cs.CV"},
        sentence("fx06_a0", {tok("Robust", "robust", "ADJ", 1, "amod"),
                             tok("training", "training", "NOUN", 2, "nsubj"),
                             tok("remains", "remain", "VERB", -1, "root"),
                             tok("hard", "hard", "ADJ", 2, "xcomp"),
                             tok(".", ".", "PUNCT", 2, "punct")}),
        {section("fx06_s", "Evaluation", scifex::SectionKind::Experiment,
                 {sentence("fx06_s1", {tok("We", "we", "PRON", 1, "nsubj"),
                                       tok("evaluate", "evaluate", "VERB", -1, "root"),
                                       tok("on", "on", "ADP", 5, "case"),
                                       tok("a", "a", "DET", 5, "det"),
                                       tok("public", "public", "ADJ", 5, "amod"),
                                       tok("dataset", "dataset", "NOUN", 1, "obl"),
                                       tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx06_s2", {tok("Results", "result", "NOUN", 1, "nsubj"),
                                       tok("improve", "improve", "VERB", -1, "root"),
                                       tok("steadily", "steadily", "ADV", 1, "advmod"),
                                       tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx06_s3",
                           {tok("We", "we", "PRON", 1, "nsubj"),
                            tok("use", "use", "VERB", -1, "root"),
                            tok("MNIST", "mnist", "PROPN", 1, "obj"),
                            tok(",", ",", "PUNCT", 5, "punct"),
                            tok("which", "which", "PRON", 5, "nsubj"),
                            tok("contains", "contain", "VERB", 2, "acl:relcl"),
                            tok("70000", "70000", "NUM", 7, "nummod"),
                            tok("images", "image", "NOUN", 5, "obj"),
                            tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx06_s4", {tok("Latency", "latency", "NOUN", 1, "nsubj"),
                                       tok("stays", "stay", "VERB", -1, "root"),
                                       tok("low", "low", "ADJ", 1, "xcomp"),
                                       tok(".", ".", "PUNCT", 1, "punct")})})}));
    corpus.dataset[{"fx06", "fx06_s3"}] = 2;
    corpus.dataset_names[{"fx06", "fx06_s3"}] = {"MNIST"};

    // fx07: the trigger is the final sentence, so the lookahead truncates.
    corpus.docs.push_back(doc(
        "fx07", 2020, {"cs.CV"},
        sentence("fx07_a0", {tok("Image", "image", "NOUN", 1, "compound"),
                             tok("recognition", "recognition", "NOUN", 2, "nsubj"),
                             tok("advances", "advance", "VERB", -1, "root"),
                             tok("quickly", "quickly", "ADV", 2, "advmod"),
                             tok(".", ".", "PUNCT", 2, "punct")}),
        {section("fx07_s", "Setup", scifex::SectionKind::Other,
                 {sentence("fx07_s1", {tok("Hyperparameters", "hyperparameter", "NOUN", 1, "nsubj"),
                                       tok("follow", "follow", "VERB", -1, "root"),
                                       tok("standard", "standard", "ADJ", 3, "amod"),
                                       tok("practice", "practice", "NOUN", 1, "obj"),
                                       tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx07_s2",
                           {tok("Our", "our", "PRON", 1, "nmod:poss"),
                            tok("experiments", "experiment", "NOUN", 2, "nsubj"),
                            tok("use", "use", "VERB", -1, "root"),
                            tok("the", "the", "DET", 5, "det"),
                            tok("CIFAR-10", "cifar-10", "PROPN", 5, "compound"),
                            tok("benchmark", "benchmark", "NOUN", 2, "obj"),
                            tok(",", ",", "PUNCT", 8, "punct"),
                            tok("which", "which", "PRON", 8, "nsubj"),
                            tok("consists", "consist", "VERB", 5, "acl:relcl"),
                            tok("of", "of", "ADP", 11, "case"),
                            tok("60000", "60000", "NUM", 11, "nummod"),
                            tok("images", "image", "NOUN", 8, "obl"),
                            tok(".", ".", "PUNCT", 2, "punct")})})}));
    corpus.dataset[{"fx07", "fx07_s2"}] = 0;
    corpus.dataset_names[{"fx07", "fx07_s2"}] = {"CIFAR-10 benchmark"};

    // fx08: material triggers whose windows contain nothing that qualifies,
    // including an exclusion-lemma sentence that fails the slot thresholds.
    corpus.docs.push_back(doc(
        "fx08", 2020, {"cs.CL"},
        sentence("fx08_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("analyze", "analyze", "VERB", -1, "root"),
                             tok("data", "data", "NOUN", 3, "compound"),
                             tok("pipelines", "pipeline", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx08_s", "Data", scifex::SectionKind::Other,
                 {sentence("fx08_s1", {tok("The", "the", "DET", 1, "det"),
                                       tok("dataset", "dataset", "NOUN", 3, "nsubj"),
                                       tok("is", "is", "AUX", 3, "cop"),
                                       tok("large", "large", "ADJ", -1, "root"),
                                       tok(".", ".", "PUNCT", 3, "punct")}),
                  sentence("fx08_s2", {tok("Table", "table", "PROPN", 2, "nsubj"),
                                       tok("2", "2", "NUM", 0, "nummod"),
                                       tok("summarizes", "summarize", "VERB", -1, "root"),
                                       tok("the", "the", "DET", 5, "det"),
                                       tok("dataset", "dataset", "NOUN", 5, "compound"),
                                       tok("statistics", "statistic", "NOUN", 2, "obj"),
                                       tok(".", ".", "PUNCT", 2, "punct")}),
                  sentence("fx08_s3", {tok("Preprocessing", "preprocessing", "NOUN", 1, "nsubj"),
                                       tok("removes", "remove", "VERB", -1, "root"),
                                       tok("noise", "noise", "NOUN", 1, "obj"),
                                       tok(".", ".", "PUNCT", 1, "punct")})})}));
    corpus.with_exclusion_lemma.insert({"fx08", "fx08_s2"});

    // fx09: URL without pattern support, plus a sentence left unparsed.
    {
        scifex::DocumentRecord d = doc(
            "fx09", 2021, {"cs.LG"},
            sentence("fx09_a0", {tok("Sparse", "sparse", "ADJ", 1, "amod"),
                                 tok("methods", "method", "NOUN", 2, "nsubj"),
                                 tok("scale", "scale", "VERB", -1, "root"),
                                 tok("well", "well", "ADV", 2, "advmod"),
                                 tok(".", ".", "PUNCT", 2, "punct")}),
            {section("fx09_s", "Notes", scifex::SectionKind::Other,
                     {sentence("fx09_s1",
                               {tok("See", "see", "VERB", -1, "root"),
                                tok("https://github.com/acme/notes",
                                    "https://github.com/acme/notes", "X", 0, "obj"),
                                tok(".", ".", "PUNCT", 0, "punct")}),
                      unparsed("fx09_s2",
                               "This sentence is intentionally left without a parse.")})});
        corpus.docs.push_back(std::move(d));
    }

    // fx10: two scored dataset spans in one candidate sentence.
    corpus.docs.push_back(doc(
        "fx10", 2021, {"cs.CV"},
        sentence("fx10_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("study", "study", "VERB", -1, "root"),
                             tok("detection", "detection", "NOUN", 3, "compound"),
                             tok("heads", "head", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx10_s", "Training Data", scifex::SectionKind::Other,
                 {sentence("fx10_s1",
                           {tok("We", "we", "PRON", 1, "nsubj"),
                            tok("use", "use", "VERB", -1, "root"),
                            tok("the", "the", "DET", 4, "det"),
                            tok("ImageNet", "imagenet", "PROPN", 4, "compound"),
                            tok("database", "database", "NOUN", 1, "obj"),
                            tok("and", "and", "CCONJ", 8, "cc"),
                            tok("the", "the", "DET", 8, "det"),
                            tok("COCO", "coco", "PROPN", 8, "compound"),
                            tok("collection", "collection", "NOUN", 4, "conj"),
                            tok(",", ",", "PUNCT", 11, "punct"),
                            tok("which", "which", "PRON", 11, "nsubj"),
                            tok("include", "include", "VERB", 8, "acl:relcl"),
                            tok("330000", "330000", "NUM", 13, "nummod"),
                            tok("images", "image", "NOUN", 11, "obj"),
                            tok(".", ".", "PUNCT", 1, "punct")}),
                  sentence("fx10_s2", {tok("Augmentation", "augmentation", "NOUN", 1, "nsubj"),
                                       tok("helps", "help", "VERB", -1, "root"),
                                       tok("generalization", "generalization", "NOUN", 1, "obj"),
                                       tok(".", ".", "PUNCT", 1, "punct")})})}));
    corpus.dataset[{"fx10", "fx10_s1"}] = 0;
    corpus.dataset_names[{"fx10", "fx10_s1"}] = {"ImageNet database", "COCO collection"};

    // fx11: nothing to find.
    corpus.docs.push_back(doc(
        "fx11", 2021, {"cs.CL"},
        sentence("fx11_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("use", "use", "VERB", -1, "root"),
                             tok("many", "many", "ADJ", 3, "amod"),
                             tok("resources", "resource", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx11_s", "Discussion", scifex::SectionKind::Conclusion,
                 {sentence("fx11_s1", {tok("Future", "future", "ADJ", 1, "amod"),
                                       tok("work", "work", "NOUN", 2, "nsubj"),
                                       tok("includes", "include", "VERB", -1, "root"),
                                       tok("better", "better", "ADJ", 4, "amod"),
                                       tok("tuning", "tuning", "NOUN", 2, "obj"),
                                       tok(".", ".", "PUNCT", 2, "punct")})})}));

    // fx12: one source-code and one dataset sentence in the same document.
    corpus.docs.push_back(doc(
        "fx12", 2021, {"cs.CL"},
        sentence("fx12_a0", {tok("We", "we", "PRON", 1, "nsubj"),
                             tok("build", "build", "VERB", -1, "root"),
                             tok("a", "a", "DET", 5, "det"),
                             tok("question", "question", "NOUN", 4, "compound"),
                             tok("answering", "answering", "NOUN", 5, "compound"),
                             tok("system", "system", "NOUN", 1, "obj"),
                             tok(".", ".", "PUNCT", 1, "punct")}),
        {section("fx12_s", "Resources", scifex::SectionKind::Other,
                 {sentence("fx12_s1",
                           {tok("Our", "our", "PRON", 1, "nmod:poss"),
                            tok("implementation", "implementation", "NOUN", 4, "nsubj"),
                            tok("is", "is", "AUX", 4, "cop"),
                            tok("publicly", "publicly", "ADV", 4, "advmod"),
                            tok("available", "available", "ADJ", -1, "root"),
                            tok("at", "at", "ADP", 6, "case"),
                            tok("https://github.com/acme/final",
                                "https://github.com/acme/final", "X", 4, "obl"),
                            tok(".", ".", "PUNCT", 4, "punct")}),
                  sentence("fx12_s2",
                           {tok("Our", "our", "PRON", 1, "nmod:poss"),
                            tok("benchmark", "benchmark", "NOUN", 2, "nsubj"),
                            tok("uses", "use", "VERB", -1, "root"),
                            tok("the", "the", "DET", 5, "det"),
                            tok("SQuAD", "squad", "PROPN", 5, "compound"),
                            tok("dataset", "dataset", "NOUN", 2, "obj"),
                            tok(",", ",", "PUNCT", 8, "punct"),
                            tok("which", "which", "PRON", 8, "nsubj"),
                            tok("contains", "contain", "VERB", 5, "acl:relcl"),
                            tok("100000", "100000", "NUM", 10, "nummod"),
                            tok("questions", "question", "NOUN", 8, "obj"),
                            tok(".", ".", "PUNCT", 2, "punct")}),
                  sentence("fx12_s3", {tok("We", "we", "PRON", 1, "nsubj"),
                                       tok("thank", "thank", "VERB", -1, "root"),
                                       tok("our", "our", "PRON", 3, "nmod:poss"),
                                       tok("colleagues", "colleague", "NOUN", 1, "obj"),
                                       tok(".", ".", "PUNCT", 1, "punct")})})}));
    corpus.source_code.insert({"fx12", "fx12_s1"});
    corpus.dataset[{"fx12", "fx12_s2"}] = 0;
    corpus.dataset_names[{"fx12", "fx12_s2"}] = {"SQuAD dataset"};

    return corpus;
}

void write_raw_corpus(const std::vector<scifex::DocumentRecord>& docs,
                      const std::filesystem::path& raw_dir,
                      const std::filesystem::path& conllu_dir) {
    std::filesystem::create_directories(raw_dir);
    std::filesystem::create_directories(conllu_dir);
    for (const scifex::DocumentRecord& doc : docs) {
        {
            std::ofstream out(raw_dir / (doc.doc_id + ".json"), std::ios::binary);
            out << scifex::serialize_document(doc);
        }
        const std::string parses = scifex::write_conllu(doc);
        if (!parses.empty()) {
            std::ofstream out(conllu_dir / (doc.doc_id + ".conllu"), std::ios::binary);
            out << parses;
        }
    }
}

std::vector<scifex::CorllRecord> lexical_ner_records(int n_sentences, std::uint64_t seed) {
    static const std::vector<std::string> languages = {"Python", "Java",    "Matlab",
                                                       "Julia",  "Fortran", "Scala"};
    static const std::vector<std::string> libraries = {"PyTorch", "TensorFlow", "Keras",
                                                       "NumPy", "Pandas"};
    // Two-token entities so B-/L- tags occur, not just U-.
    static const std::vector<std::vector<std::string>> long_libraries = {
        {"Apache", "Spark"}, {"scikit", "learn"}};
    static const std::vector<std::string> filler = {"we",   "train", "the",  "model", "with",
                                                    "code", "in",    "runs", "fast",  "here"};

    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    scifex::LabelScheme scheme({"ProgrammingLanguage", "ProgrammingLibrary"});
    std::vector<scifex::CorllRecord> records;
    for (int s = 0; s < n_sentences; ++s) {
        scifex::CorllRecord record;
        std::vector<scifex::LabeledSpan> spans;
        const int units = 3 + static_cast<int>(pick(4));
        for (int u = 0; u < units; ++u) {
            const std::size_t kind = pick(5);
            const int at = static_cast<int>(record.tokens.size());
            if (kind == 0) {
                record.tokens.push_back(languages[pick(languages.size())]);
                spans.push_back({at, at, "ProgrammingLanguage"});
            } else if (kind == 1) {
                record.tokens.push_back(libraries[pick(libraries.size())]);
                spans.push_back({at, at, "ProgrammingLibrary"});
            } else if (kind == 2) {
                const auto& words = long_libraries[pick(long_libraries.size())];
                for (const std::string& word : words) record.tokens.push_back(word);
                spans.push_back({at, at + static_cast<int>(words.size()) - 1,
                                 "ProgrammingLibrary"});
            } else {
                record.tokens.push_back(filler[pick(filler.size())]);
            }
        }
        record.tokens.push_back(".");
        for (std::size_t i = 0; i < record.tokens.size(); ++i) {
            record.text += record.tokens[i];
            if (i + 1 < record.tokens.size()) record.text += ' ';
        }
        record.spans = spans;
        record.biluo = scifex::encode_biluo(spans, static_cast<int>(record.tokens.size()), scheme);
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<scifex::CorllRecord> corll_distribution_records() {
    static const std::map<std::string, std::vector<std::string>> surfaces = {
        {"ComputePlatform", {"AWS", "Azure", "Colab", "cluster"}},
        {"ComputeTime", {"hours", "days", "weeks"}},
        {"HardwareResource", {"GPU", "CPU", "TPU", "RAM"}},
        {"ProgrammingLanguage", {"Python", "Java", "Matlab"}},
        {"ProgrammingLibrary", {"PyTorch", "TensorFlow", "Keras"}},
    };
    static const std::map<std::string, int> wanted = {
        {"ComputePlatform", 181}, {"ComputeTime", 51},         {"HardwareResource", 576},
        {"ProgrammingLanguage", 367}, {"ProgrammingLibrary", 168},
    };

    // Queue of (label, surface) pairs, then packed three spans per sentence.
    std::vector<std::pair<std::string, std::string>> queue;
    for (const auto& [label, count] : wanted) {
        const auto& pool = surfaces.at(label);
        for (int i = 0; i < count; ++i) {
            queue.emplace_back(label, pool[static_cast<std::size_t>(i) % pool.size()]);
        }
    }

    std::vector<std::string> labels;
    for (std::string_view label : scifex::kCorllLabels) labels.emplace_back(label);
    const scifex::LabelScheme scheme(labels);

    std::vector<scifex::CorllRecord> records;
    std::size_t at = 0;
    while (at < queue.size()) {
        const std::size_t take = std::min<std::size_t>(3, queue.size() - at);
        scifex::CorllRecord record;
        record.tokens = {"We", "used"};
        std::vector<scifex::LabeledSpan> spans;
        for (std::size_t i = 0; i < take; ++i) {
            if (i > 0) record.tokens.push_back("and");
            const int start = static_cast<int>(record.tokens.size());
            record.tokens.push_back(queue[at + i].second);
            spans.push_back({start, start, queue[at + i].first});
        }
        record.tokens.push_back(".");
        for (std::size_t i = 0; i < record.tokens.size(); ++i) {
            record.text += record.tokens[i];
            if (i + 1 < record.tokens.size()) record.text += ' ';
        }
        record.spans = spans;
        record.biluo = scifex::encode_biluo(spans, static_cast<int>(record.tokens.size()), scheme);
        records.push_back(std::move(record));
        at += take;
    }
    return records;
}

std::vector<scifex::PaperExtraction> analytics_records() {
    std::vector<scifex::PaperExtraction> out;
    auto add = [&](scifex::PaperExtraction paper) { out.push_back(std::move(paper)); };
    const std::string ds = "dataset";
    const std::string ll = "language_library";
    const std::string co = "compute";
    const std::string tk = "task";

    // 2017, cs.CV
    {
        auto p = paper("p01", 2017, "cs.CV");
        p.source_code_urls = {{"https://github.com/acme/widget", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"TensorFlow", 1}})};
        p.facet_entities[co] = {cluster_of({{"NVIDIA GTX 1080", 1}}),
                                cluster_of({{"8 GB GPU", 1}})};
        p.facet_entities[tk] = {cluster_of({{"image classification", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p02", 2017, "cs.CV");
        p.source_code_urls = {{"https://gitlab.com/acme/widget", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"ImageNet", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"TensorFlow", 1}})};
        p.facet_entities[co] = {cluster_of({{"Intel Xeon CPU", 1}})};
        p.facet_entities[tk] = {cluster_of({{"object detection", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p03", 2017, "cs.CV");
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"TensorFlow", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p04", 2017, "cs.CV");
        p.facet_entities[ds] = {cluster_of({{"ImageNet", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p05", 2017, "cs.CV");
        p.facet_entities[ds] = {cluster_of({{"CIFAR-10", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Java", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p06", 2017, "cs.CV");
        p.facet_entities[tk] = {cluster_of({{"sentiment analysis", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p07", 2017, "cs.CV");
        p.facet_entities[ll] = {cluster_of({{"C", 1}})};
        add(std::move(p));
    }
    add(paper("p08", 2017, "cs.CV"));
    add(paper("p09", 2017, "cs.CV"));
    add(paper("p10", 2017, "cs.CV"));

    // 2018, cs.CL
    {
        auto p = paper("p11", 2018, "cs.CL");
        p.source_code_urls = {{"https://github.com/u1/r1", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"TensorFlow", 1}})};
        p.facet_entities[co] = {cluster_of({{"NVIDIA Tesla V100", 1}}),
                                cluster_of({{"16 GB GPU", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p12", 2018, "cs.CL");
        p.source_code_urls = {{"https://github.com/u2/r2", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"ImageNet", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"TensorFlow", 1}})};
        p.facet_entities[co] = {cluster_of({{"8 GB RAM", 1}}), cluster_of({{"16GB V100", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p13", 2018, "cs.CL");
        p.source_code_urls = {{"https://bitbucket.org/u3/r3", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {
            cluster_of({{"Intel Core i7 and NVIDIA GTX 1080 Ti with 11 GiB", 1}}),
            cluster_of({{"32 GB memory", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p14", 2018, "cs.CL");
        p.source_code_urls = {{"https://github.com/u4/r4", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"CIFAR-10", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {cluster_of({{"NVIDIA GPU", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p15", 2018, "cs.CL");
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {cluster_of({{"NVIDIA RTX 2080", 1}})};
        p.facet_entities[tk] = {cluster_of({{"sentiment analysis", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p16", 2018, "cs.CL");
        p.facet_entities[ds] = {cluster_of({{"SQuAD", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Java", 1}})};
        p.facet_entities[co] = {cluster_of({{"AMD Ryzen CPU", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p17", 2018, "cs.CL");
        p.facet_entities[ds] = {cluster_of({{"SQuAD", 1}})};
        p.facet_entities[co] = {cluster_of({{"Intel i9 CPU", 1}})};
        p.facet_entities[tk] = {cluster_of({{"sentiment analysis", 1}})};
        add(std::move(p));
    }
    add(paper("p18", 2018, "cs.CL"));
    add(paper("p19", 2018, "cs.CL"));
    add(paper("p20", 2018, "cs.CL"));

    // 2019, cs.LG
    {
        auto p = paper("p21", 2019, "cs.LG");
        p.source_code_urls = {{"https://github.com/u5/r5", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"CUDA", 1}})};
        p.facet_entities[co] = {cluster_of({{"NVIDIA T4", 1}}), cluster_of({{"2048 MB GPU", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p22", 2019, "cs.LG");
        p.source_code_urls = {{"https://github.com/u6/r6", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"ImageNet", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {cluster_of({{"NVIDIA P100", 1}}), cluster_of({{"12 GB", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p23", 2019, "cs.LG");
        p.source_code_urls = {{"https://github.com/u7/r7", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {cluster_of({{"24 GB TPU v3", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p24", 2019, "cs.LG");
        p.source_code_urls = {{"https://github.com/u8/r8", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"ImageNet", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {cluster_of({{"48 G RAM", 1}}), cluster_of({{"Intel Xeon", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p25", 2019, "cs.LG");
        p.source_code_urls = {{"https://sourceforge.net/projects/x", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"MNIST", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        p.facet_entities[co] = {cluster_of({{"AMD EPYC", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p26", 2019, "cs.LG");
        p.source_code_urls = {{"https://gitlab.com/u9/r9", "s1"}};
        p.facet_entities[ds] = {cluster_of({{"ImageNet", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Java", 1}}), cluster_of({{"TensorFlow", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p27", 2019, "cs.LG");
        p.facet_entities[ds] = {cluster_of({{"CIFAR-10", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"TensorFlow", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p28", 2019, "cs.LG");
        p.facet_entities[ds] = {cluster_of({{"CIFAR10", 1}})};
        p.facet_entities[ll] = {cluster_of({{"Python", 1}}), cluster_of({{"PyTorch", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p29", 2019, "cs.LG");
        p.facet_entities[tk] = {cluster_of({{"Sentiment Analysis", 1}})};
        add(std::move(p));
    }
    {
        auto p = paper("p30", 2019, "cs.LG");
        p.facet_entities[tk] = {cluster_of({{"sentiment analysis", 1}})};
        add(std::move(p));
    }
    return out;
}

std::string slurp(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        out[std::filesystem::relative(entry.path(), root).generic_string()] =
            slurp(entry.path());
    }
    return out;
}

}  // namespace fixtures
