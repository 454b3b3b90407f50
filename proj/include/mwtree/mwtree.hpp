#pragma once

// Umbrella header for the mwtree library (everything except the CLI).

#include "mwtree/closed_forms.hpp"
#include "mwtree/error.hpp"
#include "mwtree/graph.hpp"
#include "mwtree/instance_gen.hpp"
#include "mwtree/io.hpp"
#include "mwtree/linalg.hpp"
#include "mwtree/operators.hpp"
#include "mwtree/random.hpp"
