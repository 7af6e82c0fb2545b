#pragma once

// Umbrella header for the ppfim toolkit: federated frequent-itemset and
// association-rule mining over deterministically encrypted, horizontally
// partitioned transaction databases, simulated in one process.

#include "ppfim/bench.hpp"
#include "ppfim/crypto.hpp"
#include "ppfim/dataset.hpp"
#include "ppfim/errors.hpp"
#include "ppfim/federation.hpp"
#include "ppfim/miner.hpp"
#include "ppfim/report.hpp"
#include "ppfim/splitter.hpp"
