#pragma once

// Umbrella header for the channelkit library.

#include "channelkit/appendix.hpp"
#include "channelkit/channel.hpp"
#include "channelkit/distribution.hpp"
#include "channelkit/errors.hpp"
#include "channelkit/json_io.hpp"
#include "channelkit/matrix.hpp"
#include "channelkit/predicate.hpp"
#include "channelkit/predictive.hpp"
#include "channelkit/rational.hpp"
#include "channelkit/rng.hpp"
#include "channelkit/scenario.hpp"
#include "channelkit/space.hpp"
#include "channelkit/updates.hpp"
#include "channelkit/verify.hpp"
