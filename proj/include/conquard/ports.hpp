#pragma once

namespace conquard::ports {

// Port type names shared by the processor catalog and the report renderer.
inline constexpr const char* kResourceTree = "resource-tree";
inline constexpr const char* kTokenCorpus = "token-corpus";
inline constexpr const char* kCloneReport = "clone-report";
inline constexpr const char* kArchReport = "arch-report";
inline constexpr const char* kTrendResult = "trend-result";
inline constexpr const char* kTreemapLayout = "treemap-layout";
inline constexpr const char* kNumber = "number";

}  // namespace conquard::ports
