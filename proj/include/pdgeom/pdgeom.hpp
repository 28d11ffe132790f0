#pragma once

// Umbrella header for the diagram-space geometry toolkit.

#include "curvature.hpp"   // IWYU pragma: export
#include "diagram.hpp"     // IWYU pragma: export
#include "exponent.hpp"    // IWYU pragma: export
#include "frechet.hpp"     // IWYU pragma: export
#include "generate.hpp"    // IWYU pragma: export
#include "geodesic.hpp"    // IWYU pragma: export
#include "gh.hpp"          // IWYU pragma: export
#include "json_io.hpp"     // IWYU pragma: export
#include "matching.hpp"    // IWYU pragma: export
#include "metric_pair.hpp" // IWYU pragma: export
#include "point.hpp"       // IWYU pragma: export
#include "probe.hpp"       // IWYU pragma: export
#include "rng.hpp"         // IWYU pragma: export
