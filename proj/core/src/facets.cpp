#include "scifex/facets.hpp"

#include <algorithm>

namespace scifex {

std::string_view facet_id(Facet facet) {
    switch (facet) {
        case Facet::SourceCode: return "source_code";
        case Facet::Dataset: return "dataset";
        case Facet::Task: return "task";
        case Facet::Method: return "method";
        case Facet::Compute: return "compute";
        case Facet::LanguageLibrary: return "language_library";
    }
    return "";
}

std::optional<Facet> facet_from_id(std::string_view id) {
    for (Facet f : kAllFacets) {
        if (facet_id(f) == id) return f;
    }
    return std::nullopt;
}

bool is_corll_label(std::string_view label) {
    return std::find(kCorllLabels.begin(), kCorllLabels.end(), label) != kCorllLabels.end();
}

const std::vector<std::string>& entity_labels_for(Facet facet) {
    static const std::vector<std::string> dataset = {"Dataset"};
    static const std::vector<std::string> compute = {"ComputePlatform", "ComputeTime",
                                                     "HardwareResource"};
    static const std::vector<std::string> langlib = {"ProgrammingLanguage", "ProgrammingLibrary"};
    static const std::vector<std::string> none;
    switch (facet) {
        case Facet::Dataset: return dataset;
        case Facet::Compute: return compute;
        case Facet::LanguageLibrary: return langlib;
        default: return none;
    }
}

}  // namespace scifex
