#pragma once

#include "sif/analysis.hpp"
#include "sif/asymptotic.hpp"
#include "sif/load_scenario.hpp"
#include "sif/mapping.hpp"
#include "sif/matrix.hpp"
#include "sif/norm.hpp"
#include "sif/properties.hpp"
#include "sif/solvers.hpp"
#include "sif/spectral.hpp"
#include "sif/vector.hpp"
