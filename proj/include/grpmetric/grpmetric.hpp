#pragma once

// Library headers only; cli.hpp is separate because it pulls in CLI11 and nlohmann/json.
#include "common.hpp"
#include "groups.hpp"
#include "metrics.hpp"
#include "weights.hpp"
#include "maps.hpp"
#include "isometry.hpp"
#include "embeddings.hpp"
#include "checks.hpp"
