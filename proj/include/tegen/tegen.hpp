#pragma once

#include "tegen/cli.hpp"
#include "tegen/config.hpp"
#include "tegen/csv.hpp"
#include "tegen/electro.hpp"
#include "tegen/error.hpp"
#include "tegen/explore.hpp"
#include "tegen/kv.hpp"
#include "tegen/layout.hpp"
#include "tegen/materials.hpp"
#include "tegen/reference.hpp"
#include "tegen/units.hpp"
