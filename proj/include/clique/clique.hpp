#pragma once

#include "clique/bits.hpp"
#include "clique/bounds.hpp"
#include "clique/engine.hpp"
#include "clique/errors.hpp"
#include "clique/experiment.hpp"
#include "clique/generators.hpp"
#include "clique/graph.hpp"
#include "clique/guard.hpp"
#include "clique/input.hpp"
#include "clique/oracle.hpp"
#include "clique/partition.hpp"
#include "clique/primitives.hpp"
#include "clique/vertex_set.hpp"
#include "clique/algorithms/drivers.hpp"
#include "clique/nondet/alternation.hpp"
#include "clique/nondet/edge_labelling.hpp"
#include "clique/nondet/labelling.hpp"
#include "clique/nondet/normal_form.hpp"
#include "clique/nondet/sigma2.hpp"
#include "clique/nondet/verifiers.hpp"
