#pragma once

// Umbrella header: connected-component labeling on triangular grids via
// cubical coordinates.

#include "tricubo/components.hpp"
#include "tricubo/components_io.hpp"
#include "tricubo/cubulation.hpp"
#include "tricubo/cubulation_io.hpp"
#include "tricubo/errors.hpp"
#include "tricubo/field.hpp"
#include "tricubo/field_io.hpp"
#include "tricubo/grid.hpp"
#include "tricubo/grid_io.hpp"
#include "tricubo/hex_patch.hpp"
#include "tricubo/random_mask.hpp"
#include "tricubo/report.hpp"
#include "tricubo/union_find.hpp"

namespace tricubo {
inline constexpr const char* version = "1.0.0";
}
