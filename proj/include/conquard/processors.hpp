#pragma once

#include "conquard/registry.hpp"

namespace conquard {

/// The shipped processor catalog: sources, sensors, filters, assessors and
/// renderers wired to the analysis modules.
Registry default_registry();

}  // namespace conquard
