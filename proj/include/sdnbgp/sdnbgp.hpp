#ifndef SDNBGP_SDNBGP_HPP
#define SDNBGP_SDNBGP_HPP

// Umbrella header: analytic bounds and chain model, topology machinery,
// Monte-Carlo simulator, and the experiment harness.

#include "sdnbgp/centrality.hpp"
#include "sdnbgp/controlplane.hpp"
#include "sdnbgp/dataplane.hpp"
#include "sdnbgp/errors.hpp"
#include "sdnbgp/experiments.hpp"
#include "sdnbgp/graph.hpp"
#include "sdnbgp/logmath.hpp"
#include "sdnbgp/random.hpp"
#include "sdnbgp/routing.hpp"
#include "sdnbgp/simulator.hpp"
#include "sdnbgp/time_model.hpp"

#endif
