#pragma once

#include "vtrm/chain_miner.hpp"
#include "vtrm/distance.hpp"
#include "vtrm/eval.hpp"
#include "vtrm/fusion.hpp"
#include "vtrm/io.hpp"
#include "vtrm/rerank.hpp"
#include "vtrm/synth.hpp"
#include "vtrm/types.hpp"
