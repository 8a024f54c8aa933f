#pragma once

// Umbrella header for the PFCM incomplete-data clustering library.

#include "pfcm/config.hpp"
#include "pfcm/csv.hpp"
#include "pfcm/dataset.hpp"
#include "pfcm/distance.hpp"
#include "pfcm/engine.hpp"
#include "pfcm/errors.hpp"
#include "pfcm/experiment.hpp"
#include "pfcm/imputation.hpp"
#include "pfcm/injection.hpp"
#include "pfcm/matrix.hpp"
#include "pfcm/mixture.hpp"
#include "pfcm/parameters.hpp"
#include "pfcm/partition.hpp"
#include "pfcm/report.hpp"
#include "pfcm/rng.hpp"
#include "pfcm/validity.hpp"
