#pragma once

#include "mimicnet/bench.hpp"
#include "mimicnet/camouflage.hpp"
#include "mimicnet/classify.hpp"
#include "mimicnet/covert.hpp"
#include "mimicnet/equivalence.hpp"
#include "mimicnet/error.hpp"
#include "mimicnet/gate_kind.hpp"
#include "mimicnet/hungarian.hpp"
#include "mimicnet/levelize.hpp"
#include "mimicnet/matcher.hpp"
#include "mimicnet/netlist.hpp"
#include "mimicnet/parallel.hpp"
#include "mimicnet/ppa.hpp"
#include "mimicnet/rng.hpp"
#include "mimicnet/sbox.hpp"
#include "mimicnet/sidechannel.hpp"
#include "mimicnet/simulate.hpp"
#include "mimicnet/synth.hpp"
#include "mimicnet/truth_table.hpp"
#include "mimicnet/version.hpp"
