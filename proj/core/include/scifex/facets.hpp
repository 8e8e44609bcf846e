#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scifex {

/// The six extraction facets. SourceCode yields URLs, Task/Method come from
/// an external relation graph, the rest yield entity clusters.
enum class Facet {
    SourceCode,
    Dataset,
    Task,
    Method,
    Compute,
    LanguageLibrary,
};

inline constexpr std::array<Facet, 6> kAllFacets = {
    Facet::SourceCode, Facet::Dataset,  Facet::Task,
    Facet::Method,     Facet::Compute,  Facet::LanguageLibrary,
};

std::string_view facet_id(Facet facet);
std::optional<Facet> facet_from_id(std::string_view id);

/// Entity labels of the CORLL annotation scheme.
inline constexpr std::array<std::string_view, 5> kCorllLabels = {
    "ComputePlatform",
    "ComputeTime",
    "HardwareResource",
    "ProgrammingLanguage",
    "ProgrammingLibrary",
};

bool is_corll_label(std::string_view label);

/// Entity type labels decoded for a facet's NER model.
/// Dataset -> {Dataset}; Compute and LanguageLibrary -> their CORLL labels.
/// Facets without an NER stage return an empty list.
const std::vector<std::string>& entity_labels_for(Facet facet);

}  // namespace scifex
