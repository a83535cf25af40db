#pragma once

#include "hrod/errors.hpp"
#include "hrod/initial_data.hpp"
#include "hrod/integrators.hpp"
#include "hrod/invariants.hpp"
#include "hrod/log.hpp"
#include "hrod/norms.hpp"
#include "hrod/observables.hpp"
#include "hrod/source_terms.hpp"
#include "hrod/state.hpp"
#include "hrod/vector_field.hpp"
