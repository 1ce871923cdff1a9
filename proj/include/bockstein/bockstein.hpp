#pragma once

#include "bockstein/prime.hpp"
#include "bockstein/matrix.hpp"
#include "bockstein/field_linalg.hpp"
#include "bockstein/module_linalg.hpp"
#include "bockstein/bockstein_map.hpp"
#include "bockstein/rng.hpp"
#include "bockstein/statistics.hpp"
#include "bockstein/distribution.hpp"
#include "bockstein/report_io.hpp"
