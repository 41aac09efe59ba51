#pragma once

#include "entcat/catalysis.hpp"
#include "entcat/error.hpp"
#include "entcat/experiments.hpp"
#include "entcat/fixtures.hpp"
#include "entcat/kway_merge.hpp"
#include "entcat/majorization.hpp"
#include "entcat/osc_vector.hpp"
#include "entcat/region.hpp"
#include "entcat/rng.hpp"
#include "entcat/search.hpp"
#include "entcat/spectrum.hpp"
#include "entcat/tolerance.hpp"
