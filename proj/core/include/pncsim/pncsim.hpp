#pragma once

#include "pncsim/channel.hpp"
#include "pncsim/constellation.hpp"
#include "pncsim/geometry.hpp"
#include "pncsim/montecarlo.hpp"
#include "pncsim/network_map.hpp"
#include "pncsim/random.hpp"
#include "pncsim/selection.hpp"
#include "pncsim/transceiver.hpp"
